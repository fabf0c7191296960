//! Exhaustive verification suites.
//!
//! Each suite checks one stated property over a group (or a whole corpus)
//! for one π and reports a [`SuiteOutcome`]. Suites that quantify over
//! Fitting sets report once per Fitting set. Claims with hypotheses are only
//! asserted when the hypotheses hold; otherwise the outcome is skipped with
//! the failed hypothesis.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cell::OnceCell;

use crate::dnormal::Dnormality;
use crate::error::{Error, Result};
use crate::fitting::{
    conjugacy_witness, dnormal_intersection_check, dsubnormal_failures, injectors_bruteforce, injectors_pruned,
    maximal_set, radical, radical_forms, validate, validate_npi_fitting_class, ClassCounterexample, FittingSet,
    Validation, Violation,
};
use crate::group::Group;
use crate::injector::injectors_constructive;
use crate::pi::{is_piprime_soluble, o_pi_over, sylow_subgroups, ClassSpec, PrimeSet};
use crate::projector::{projector_report, projectors, ProjectorReport};
use crate::quotient::QuotientView;
use crate::structure::Lattice;

/// Failures listed per outcome before the rest are summarized.
const WITNESS_LIMIT: usize = 8;

/// Every suite id, in run order.
pub const SUITES: &[&str] = &[
    "prop-1.2",
    "lemma-1.4.1",
    "lemma-1.4.2",
    "lemma-1.4.3",
    "lemma-1.4.4",
    "lemma-1.4.5",
    "lemma-1.4.6",
    "lemma-1.5.1",
    "lemma-1.5.2",
    "lemma-1.5.3",
    "lemma-1.6",
    "lemma-2.4",
    "lemma-radical",
    "lemma-2.5",
    "prop-cor1",
    "lemma-teo1",
    "lemma-teo2",
    "lemma-2.8a",
    "lemma-2.8b",
    "theorem-2.9",
    "corollary-2.11",
    "remark-2",
    "remark-3",
    "observe-dsubnormal-injectors",
];

/// Suites whose scope is the whole corpus rather than one group.
pub const CORPUS_SUITES: &[&str] = &["remark-2", "remark-3"];

pub fn is_corpus_suite(suite: &str) -> bool {
    CORPUS_SUITES.contains(&suite)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The named hypothesis does not hold, so nothing was asserted.
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scope {
    /// Group name, or `"corpus"`.
    pub group: String,
    pub pi: PrimeSet,
    /// Fitting set or class the outcome is about, if any.
    pub class: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub scope: Scope,
    pub status: Status,
    pub witnesses: Vec<String>,
}

/// A group with its lattice and its quotients by every normal subgroup,
/// shared by all π.
pub struct GroupAnalysis {
    name: String,
    lattice: Lattice,
    views: Vec<QuotientView>,
}

impl GroupAnalysis {
    pub fn new(name: impl Into<String>, group: &Group) -> Result<GroupAnalysis> {
        let lattice = Lattice::new(group)?;
        let views = lattice
            .normal_in(lattice.top())
            .iter()
            .map(|k| QuotientView::new(&lattice, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupAnalysis {
            name: name.into(),
            lattice,
            views,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn views(&self) -> &[QuotientView] {
        &self.views
    }

    pub fn context(&self, pi: &PrimeSet) -> Result<Dnormality<'_>> {
        Dnormality::new(&self.lattice, pi)
    }
}

/// A Fitting set under test, with its label and validation.
pub struct LabelledFittingSet {
    pub label: String,
    pub set: FittingSet,
    pub validation: Validation,
}

/// The Fitting sets every set-level suite runs over: the traces of `N^π`,
/// `E_π` and all groups, and the closures of one Sylow `p`-subgroup for
/// each prime `p` dividing the order.
pub fn standard_fitting_sets(dn: &Dnormality) -> Result<Vec<LabelledFittingSet>> {
    let lat = dn.lattice();
    let pi = dn.pi();
    let mut out = Vec::new();
    for spec in [ClassSpec::Npi(pi.clone()), ClassSpec::PiGroups(pi.clone()), ClassSpec::All] {
        out.push((format!("trace {spec}"), FittingSet::trace(lat, &spec)));
    }
    for (p, _) in crate::pi::prime_factors(lat.order(lat.top())) {
        let seed = sylow_subgroups(lat, lat.top(), p)[0];
        out.push((format!("closure sylow-{p}"), FittingSet::closure(dn, &[seed])?));
    }
    Ok(out
        .into_iter()
        .map(|(label, set)| LabelledFittingSet {
            validation: validate(lat, &set, Some(dn)),
            label,
            set,
        })
        .collect())
}

/// Collects failures, keeping the first few as witnesses.
#[derive(Default)]
struct Check {
    witnesses: Vec<String>,
    failures: usize,
}

impl Check {
    fn fail(&mut self, witness: impl FnOnce() -> String) {
        self.failures += 1;
        if self.witnesses.len() < WITNESS_LIMIT {
            self.witnesses.push(witness());
        }
    }

    fn ensure(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.fail(witness);
        }
    }

    fn finish(mut self) -> (Status, Vec<String>) {
        if self.failures == 0 {
            return (Status::Pass, self.witnesses);
        }
        if self.failures > self.witnesses.len() {
            self.witnesses
                .push(format!("... {} further failures", self.failures - self.witnesses.len()));
        }
        (Status::Fail, self.witnesses)
    }
}

fn sub(lat: &Lattice, i: usize) -> String {
    format!("{:?}", lat.subgroup(i))
}

fn element(lat: &Lattice, g: usize) -> String {
    lat.group().element(g).to_cycle_string()
}

/// One line naming the members involved in `v`.
pub fn describe_violation(lat: &Lattice, v: &Violation) -> String {
    match *v {
        Violation::Descent { member, sub: t } => {
            format!("{} lies under member {} but is not a member", sub(lat, t), sub(lat, member))
        }
        Violation::Join { left, right, join } => format!(
            "members {} and {} generate non-member {}",
            sub(lat, left),
            sub(lat, right),
            sub(lat, join)
        ),
        Violation::Conjugate { member, element: g, image } => format!(
            "conjugate of member {} by {} is non-member {}",
            sub(lat, member),
            element(lat, g),
            sub(lat, image)
        ),
    }
}

/// Every failed axiom of `v`, or `""` if none failed.
pub fn describe_validation(lat: &Lattice, v: &Validation) -> String {
    if !v.nonempty {
        return "empty set".into();
    }
    let mut parts: Vec<String> = Vec::new();
    for (level, axioms) in [("classical", Some(&v.classical)), ("N^pi", v.npi.as_ref())] {
        if let Some(ax) = axioms {
            for (name, viol) in [("FS1", &ax.fs1), ("FS2", &ax.fs2), ("FS3", &ax.fs3)] {
                if let Some(viol) = viol {
                    parts.push(format!("{level} {name}: {}", describe_violation(lat, viol)));
                }
            }
        }
    }
    parts.join("; ")
}

/// Per-(group, π) state shared by the suites of one run.
struct Run<'a> {
    an: &'a GroupAnalysis,
    lat: &'a Lattice,
    dn: Dnormality<'a>,
    soluble: bool,
    fitting: OnceCell<Result<Vec<LabelledFittingSet>>>,
    projectors: OnceCell<Result<ProjectorReport>>,
    quotients: OnceCell<Result<Vec<Dnormality<'a>>>>,
}

impl<'a> Run<'a> {
    fn scope(&self, class: Option<String>) -> Scope {
        Scope {
            group: self.an.name.clone(),
            pi: self.dn.pi().clone(),
            class,
        }
    }

    fn outcome(&self, suite: &'static str, class: Option<String>, check: Check) -> SuiteOutcome {
        let (status, witnesses) = check.finish();
        SuiteOutcome {
            suite,
            scope: self.scope(class),
            status,
            witnesses,
        }
    }

    fn skipped(&self, suite: &'static str, class: Option<String>, why: String) -> SuiteOutcome {
        SuiteOutcome {
            suite,
            scope: self.scope(class),
            status: Status::Skipped(why),
            witnesses: Vec::new(),
        }
    }

    fn errored(&self, suite: &'static str, class: Option<String>, err: &Error) -> SuiteOutcome {
        SuiteOutcome {
            suite,
            scope: self.scope(class),
            status: Status::Fail,
            witnesses: alloc::vec![err.to_string()],
        }
    }

    fn not_soluble(&self) -> String {
        format!("group is not {}'-soluble", self.dn.pi())
    }

    fn fitting(&self) -> core::result::Result<&[LabelledFittingSet], &Error> {
        self.fitting
            .get_or_init(|| standard_fitting_sets(&self.dn))
            .as_ref()
            .map(Vec::as_slice)
    }

    fn projector_report(&self) -> core::result::Result<&ProjectorReport, &Error> {
        self.projectors
            .get_or_init(|| projector_report(&self.dn, &self.an.views))
            .as_ref()
    }

    fn quotients(&self) -> core::result::Result<&[Dnormality<'a>], &Error> {
        let an = self.an;
        let pi = self.dn.pi();
        self.quotients
            .get_or_init(|| an.views.iter().map(|v| Dnormality::new(v.lattice(), pi)).collect())
            .as_ref()
            .map(Vec::as_slice)
    }

    fn run(&self, suite: &'static str) -> Vec<SuiteOutcome> {
        match suite {
            "prop-1.2" => alloc::vec![self.dnormal_definition_agrees()],
            "lemma-1.4.1" => alloc::vec![self.conjugates_stay_dnormal()],
            "lemma-1.4.2" => alloc::vec![self.dnormal_in_intermediate()],
            "lemma-1.4.3" | "lemma-1.4.4" | "lemma-1.4.5" => alloc::vec![self.quotient_transfer(suite)],
            "lemma-1.4.6" => alloc::vec![self.npi_members_dsubnormal()],
            "lemma-1.5.1" => alloc::vec![self.upper_residue_bound()],
            "lemma-1.5.2" => alloc::vec![self.core_quotient_is_pi()],
            "lemma-1.5.3" => alloc::vec![self.meets_stay_dnormal()],
            "lemma-1.6" => alloc::vec![self.maximal_dnormal_contain_residual()],
            "lemma-2.4" => alloc::vec![self.joins_stay_dnormal()],
            "lemma-teo1" => alloc::vec![self.projectors_cover()],
            "lemma-teo2" => alloc::vec![self.projector_characterization()],
            _ => self.per_fitting_set(suite),
        }
    }

    fn dnormal_definition_agrees(&self) -> SuiteOutcome {
        let lat = self.lat;
        let mut c = Check::default();
        for j in 0..lat.len() {
            for i in lat.below(j).iter() {
                let def = self.dn.is_dnormal_def_in(i, j);
                let prop = self.dn.is_dnormal_in(i, j);
                c.ensure(def == prop, || {
                    format!(
                        "{} in {}: definition {def}, characterization {prop}",
                        sub(lat, i),
                        sub(lat, j)
                    )
                });
            }
        }
        self.outcome("prop-1.2", None, c)
    }

    fn conjugates_stay_dnormal(&self) -> SuiteOutcome {
        let lat = self.lat;
        let mut c = Check::default();
        for j in 0..lat.len() {
            let gens: Vec<usize> = lat.subgroup(j).generators().collect();
            for i in self.dn.dnormal_in(j).iter() {
                for &g in &gens {
                    let image = lat.conjugate(i, g);
                    c.ensure(self.dn.is_dnormal_in(image, j), || {
                        format!(
                            "{} Dnormal in {} but its conjugate by {} is not",
                            sub(lat, i),
                            sub(lat, j),
                            element(lat, g)
                        )
                    });
                }
            }
        }
        self.outcome("lemma-1.4.1", None, c)
    }

    fn dnormal_in_intermediate(&self) -> SuiteOutcome {
        let lat = self.lat;
        let mut c = Check::default();
        for j in 0..lat.len() {
            for i in self.dn.dnormal_in(j).iter() {
                for l in lat.above(i).intersection(lat.below(j)).iter() {
                    c.ensure(self.dn.is_dnormal_in(i, l), || {
                        format!(
                            "{} Dnormal in {} but not in {}",
                            sub(lat, i),
                            sub(lat, j),
                            sub(lat, l)
                        )
                    });
                }
            }
        }
        self.outcome("lemma-1.4.2", None, c)
    }

    fn quotient_transfer(&self, suite: &'static str) -> SuiteOutcome {
        let lat = self.lat;
        let quotients = match self.quotients() {
            Ok(q) => q,
            Err(e) => return self.errored(suite, None, e),
        };
        let mut c = Check::default();
        for (view, qdn) in self.an.views.iter().zip(quotients) {
            let n = view.kernel();
            let ql = view.lattice();
            match suite {
                "lemma-1.4.3" => {
                    for h in self.dn.dnormal_in(lat.top()).iter() {
                        c.ensure(qdn.is_dnormal(view.image(h)), || {
                            format!("{} Dnormal but its image mod {} is not", sub(lat, h), sub(lat, n))
                        });
                    }
                }
                "lemma-1.4.4" => {
                    for q in qdn.dnormal_in(ql.top()).iter() {
                        let h = view.preimage(q);
                        c.ensure(self.dn.is_dnormal(h), || {
                            format!("{} / {} Dnormal in the quotient, {} is not", sub(lat, h), sub(lat, n), sub(lat, h))
                        });
                    }
                }
                _ => {
                    for q in qdn.dsubnormal_in(ql.top()).iter() {
                        let h = view.preimage(q);
                        c.ensure(self.dn.is_dsubnormal(h), || {
                            format!("{} / {} Dsubnormal in the quotient, {} is not", sub(lat, h), sub(lat, n), sub(lat, h))
                        });
                    }
                }
            }
        }
        self.outcome(suite, None, c)
    }

    fn npi_members_dsubnormal(&self) -> SuiteOutcome {
        let lat = self.lat;
        let mut c = Check::default();
        for j in (0..lat.len()).filter(|&j| self.dn.in_npi(j)) {
            for h in lat.below(j).iter() {
                c.ensure(self.dn.is_dsubnormal_in(h, j), || {
                    format!("{} in N^pi but {} is not Dsubnormal in it", sub(lat, j), sub(lat, h))
                });
            }
        }
        self.outcome("lemma-1.4.6", None, c)
    }

    fn upper_residue_bound(&self) -> SuiteOutcome {
        let lat = self.lat;
        let mut c = Check::default();
        for j in 0..lat.len() {
            for h in self.dn.dnormal_in(j).iter() {
                let o = self.dn.opi(h);
                if !lat.is_normal_in(o, j) {
                    c.fail(|| format!("O^pi of {} is not normal in {}", sub(lat, h), sub(lat, j)));
                    continue;
                }
                let top = o_pi_over(lat, j, o, self.dn.pi());
                c.ensure(lat.contains(top, h), || {
                    format!(
                        "{} not inside the O_pi preimage {} over its O^pi in {}",
                        sub(lat, h),
                        sub(lat, top),
                        sub(lat, j)
                    )
                });
            }
        }
        self.outcome("lemma-1.5.1", None, c)
    }

    fn core_quotient_is_pi(&self) -> SuiteOutcome {
        let lat = self.lat;
        let mut c = Check::default();
        for j in 0..lat.len() {
            let normal = lat.normal_in(j);
            for h in self.dn.dnormal_in(j).iter() {
                let core = normal.intersection(lat.below(h)).iter().last().expect("trivial is normal");
                let closure = normal.intersection(lat.above(h)).first().expect("j is normal in j");
                c.ensure(self.dn.pi().is_number(lat.order(closure) / lat.order(core)), || {
                    format!(
                        "{} in {}: normal closure {} over core {} is not a pi-group",
                        sub(lat, h),
                        sub(lat, j),
                        sub(lat, closure),
                        sub(lat, core)
                    )
                });
            }
        }
        self.outcome("lemma-1.5.2", None, c)
    }

    fn meets_stay_dnormal(&self) -> SuiteOutcome {
        let lat = self.lat;
        let mut c = Check::default();
        for j in 0..lat.len() {
            for h in self.dn.dnormal_in(j).iter() {
                for v in lat.below(j).iter() {
                    let m = lat.meet(h, v);
                    c.ensure(self.dn.is_dnormal_in(m, v), || {
                        format!(
                            "{} Dnormal in {} but its meet with {} is not Dnormal there",
                            sub(lat, h),
                            sub(lat, j),
                            sub(lat, v)
                        )
                    });
                }
            }
        }
        self.outcome("lemma-1.5.3", None, c)
    }

    fn maximal_dnormal_contain_residual(&self) -> SuiteOutcome {
        let lat = self.lat;
        let maximal = match self.dn.maximal_dnormal_subgroups() {
            Ok(m) => m,
            Err(_) => return self.skipped("lemma-1.6", None, self.not_soluble()),
        };
        let r = self.dn.residual(lat.top());
        let mut c = Check::default();
        for m in maximal {
            c.ensure(lat.contains(m, r), || {
                format!("maximal Dnormal {} misses the residual {}", sub(lat, m), sub(lat, r))
            });
        }
        self.outcome("lemma-1.6", None, c)
    }

    fn joins_stay_dnormal(&self) -> SuiteOutcome {
        let lat = self.lat;
        let mut c = Check::default();
        for j in 0..lat.len() {
            let dnormal: Vec<usize> = self.dn.dnormal_in(j).iter().collect();
            for (a, &h) in dnormal.iter().enumerate() {
                for &k in &dnormal[a + 1..] {
                    let join = lat.join(h, k);
                    c.ensure(self.dn.is_dnormal_in(join, j), || {
                        format!(
                            "{} and {} Dnormal in {}, their join {} is not",
                            sub(lat, h),
                            sub(lat, k),
                            sub(lat, j),
                            sub(lat, join)
                        )
                    });
                }
            }
        }
        self.outcome("lemma-2.4", None, c)
    }

    fn projectors_cover(&self) -> SuiteOutcome {
        let lat = self.lat;
        if !self.soluble {
            return self.skipped("lemma-teo1", None, self.not_soluble());
        }
        let report = match self.projector_report() {
            Ok(r) => r,
            Err(e) => return self.errored("lemma-teo1", None, e),
        };
        let mut c = Check::default();
        let proj = &report.projectors;
        c.ensure(!proj.is_empty(), || "no projectors".into());
        c.ensure(*proj == report.covering, || {
            format!("projectors {} differ from covering subgroups {}", list(lat, proj), list(lat, &report.covering))
        });
        if let Some(&first) = proj.first() {
            let class = &lat.conjugacy_classes()[lat.class_of(first)];
            c.ensure(class == proj, || {
                format!("projectors {} are not the conjugacy class {}", list(lat, proj), list(lat, class))
            });
        }
        self.outcome("lemma-teo1", None, c)
    }

    fn projector_characterization(&self) -> SuiteOutcome {
        let lat = self.lat;
        if !self.soluble {
            return self.skipped("lemma-teo2", None, self.not_soluble());
        }
        let report = match self.projector_report() {
            Ok(r) => r,
            Err(e) => return self.errored("lemma-teo2", None, e),
        };
        let mut c = Check::default();
        for ch in &report.characterization {
            let is_proj = report.projectors.contains(&ch.subgroup);
            c.ensure(ch.holds() == is_proj, || {
                format!(
                    "{}: projector {is_proj}, in N^pi {}, self-Dnormalizing {}, (*) {}",
                    sub(lat, ch.subgroup),
                    ch.in_npi,
                    ch.self_dnormalizing,
                    ch.star
                )
            });
        }
        self.outcome("lemma-teo2", None, c)
    }

    fn per_fitting_set(&self, suite: &'static str) -> Vec<SuiteOutcome> {
        let sets = match self.fitting() {
            Ok(s) => s,
            Err(e) => return alloc::vec![self.errored(suite, None, e)],
        };
        sets.iter()
            .map(|fs| {
                let class = Some(fs.label.clone());
                let needs_npi = suite != "lemma-radical";
                let valid = if needs_npi {
                    fs.validation.is_npi_fitting_set()
                } else {
                    fs.validation.is_fitting_set()
                };
                if !valid {
                    let level = if needs_npi { "an N^pi-Fitting set" } else { "a Fitting set" };
                    return self.skipped(
                        suite,
                        class,
                        format!("not {level}: {}", describe_validation(self.lat, &fs.validation)),
                    );
                }
                let needs_soluble = matches!(
                    suite,
                    "lemma-2.8a" | "lemma-2.8b" | "theorem-2.9" | "corollary-2.11" | "observe-dsubnormal-injectors"
                );
                if needs_soluble && !self.soluble {
                    return self.skipped(suite, class, self.not_soluble());
                }
                if suite == "corollary-2.11" && !matches!(fs.set.provenance(), crate::fitting::Provenance::Trace(_)) {
                    return self.skipped(suite, class, "not the trace of a class".into());
                }
                let check = match suite {
                    "lemma-radical" => self.radical_conjugation(&fs.set),
                    "lemma-2.5" => self.radical_of_dnormal(&fs.set),
                    "prop-cor1" => self.radical_forms_agree(&fs.set),
                    "lemma-2.8a" => self.injectors_from_projectors(&fs.set),
                    "lemma-2.8b" => self.overgroups_conjugate(&fs.set),
                    "theorem-2.9" => self.injectors_exist(&fs.set),
                    "corollary-2.11" => self.class_injectors(&fs.set),
                    "observe-dsubnormal-injectors" => self.observe_dsubnormal(&fs.set),
                    _ => unreachable!("suite ids are checked before dispatch"),
                };
                match check {
                    Ok(c) => self.outcome(suite, class, c),
                    Err(e) => self.errored(suite, class, &e),
                }
            })
            .collect()
    }

    fn radical_conjugation(&self, fs: &FittingSet) -> Result<Check> {
        let lat = self.lat;
        let mut c = Check::default();
        let gens: Vec<usize> = lat.group().generators().collect();
        for h in 0..lat.len() {
            let r = radical(lat, fs, h);
            for &g in &gens {
                let lhs = radical(lat, fs, lat.conjugate(h, g));
                let rhs = lat.conjugate(r, g);
                c.ensure(lhs == rhs, || {
                    format!(
                        "radical of {} conjugated by {} is {}, radical of the conjugate is {}",
                        sub(lat, h),
                        element(lat, g),
                        sub(lat, rhs),
                        sub(lat, lhs)
                    )
                });
            }
        }
        Ok(c)
    }

    fn radical_of_dnormal(&self, fs: &FittingSet) -> Result<Check> {
        let lat = self.lat;
        let mut c = Check::default();
        for j in 0..lat.len() {
            for h in self.dn.dnormal_in(j).iter() {
                let r = radical(lat, fs, h);
                c.ensure(self.dn.is_dnormal_in(r, j), || {
                    format!(
                        "{} Dnormal in {} but its radical {} is not",
                        sub(lat, h),
                        sub(lat, j),
                        sub(lat, r)
                    )
                });
            }
        }
        Ok(c)
    }

    fn radical_forms_agree(&self, fs: &FittingSet) -> Result<Check> {
        let lat = self.lat;
        let mut c = Check::default();
        for h in 0..lat.len() {
            let r = radical_forms(&self.dn, fs, h);
            c.ensure(r.iter().all(|&x| x == r[0]), || {
                format!(
                    "radicals of {} by normal, subnormal, Dnormal, Dsubnormal members: {}",
                    sub(lat, h),
                    list(lat, &r)
                )
            });
        }
        Ok(c)
    }

    /// Normal subgroups of the whole group containing its residual.
    fn residual_overgroups(&self) -> Vec<usize> {
        let lat = self.lat;
        let r = self.dn.residual(lat.top());
        lat.normal_in(lat.top()).intersection(lat.above(r)).iter().collect()
    }

    fn injectors_from_projectors(&self, fs: &FittingSet) -> Result<Check> {
        let lat = self.lat;
        let projs = projectors(&self.dn);
        let top_max = maximal_set(lat, fs.members(), lat.top());
        let mut c = Check::default();
        for k in self.residual_overgroups() {
            let w = radical(lat, fs, k);
            if !maximal_set(lat, fs.members(), k).contains(w) {
                continue;
            }
            for v in top_max.intersection(lat.above(w)).iter() {
                let found = projs.iter().any(|&p| radical(lat, fs, lat.join(w, p)) == v);
                c.ensure(found, || {
                    format!(
                        "K = {}, W = {}: no projector P with (WP)_F = {}",
                        sub(lat, k),
                        sub(lat, w),
                        sub(lat, v)
                    )
                });
            }
        }
        Ok(c)
    }

    fn overgroups_conjugate(&self, fs: &FittingSet) -> Result<Check> {
        let lat = self.lat;
        let top_max = maximal_set(lat, fs.members(), lat.top());
        let mut c = Check::default();
        for k in self.residual_overgroups() {
            for w in maximal_set(lat, fs.members(), k).iter() {
                let vs: Vec<usize> = top_max.intersection(lat.above(w)).iter().collect();
                for &v in &vs {
                    for &v1 in &vs {
                        let star = lat.join(v, v1);
                        let r = self.dn.residual(star);
                        let found = conjugacy_witness(lat, v1, v, star, r).is_some_and(|x| x.in_residual);
                        c.ensure(found, || {
                            format!(
                                "K = {}, W = {}: {} not conjugate to {} by the residual of their join",
                                sub(lat, k),
                                sub(lat, w),
                                sub(lat, v1),
                                sub(lat, v)
                            )
                        });
                    }
                }
            }
        }
        Ok(c)
    }

    fn injector_claims(&self, fs: &FittingSet, c: &mut Check) -> Result<()> {
        let lat = self.lat;
        let top = lat.top();
        let report = injectors_constructive(&self.dn, fs)?;
        let inj = &report.injectors;
        c.ensure(!inj.is_empty(), || "no injectors".into());
        let pruned = injectors_pruned(lat, fs, top);
        c.ensure(pruned == *inj, || {
            format!("pruned search found {}, full search {}", list(lat, &pruned), list(lat, inj))
        });
        if let Some(&first) = inj.first() {
            let class = &lat.conjugacy_classes()[lat.class_of(first)];
            c.ensure(class == inj, || {
                format!("injectors {} are not the conjugacy class {}", list(lat, inj), list(lat, class))
            });
        }
        for &(from, to) in &report.unconjugated {
            c.fail(|| format!("injectors {} and {} are not conjugate", sub(lat, from), sub(lat, to)));
        }
        for w in &report.witnesses {
            c.ensure(w.in_residual, || {
                format!(
                    "{} conjugated to {} only by {}, outside the residual",
                    sub(lat, w.from),
                    sub(lat, w.to),
                    element(lat, w.element)
                )
            });
        }
        for v in dnormal_intersection_check(&self.dn, fs, top, inj) {
            c.ensure(v.holds, || {
                format!(
                    "{} meets Dnormal {} in {}, which is not an injector of it",
                    sub(lat, v.injector),
                    sub(lat, v.dnormal),
                    sub(lat, v.meet)
                )
            });
        }
        Ok(())
    }

    fn injectors_exist(&self, fs: &FittingSet) -> Result<Check> {
        let mut c = Check::default();
        self.injector_claims(fs, &mut c)?;
        Ok(c)
    }

    fn class_injectors(&self, fs: &FittingSet) -> Result<Check> {
        let lat = self.lat;
        let mut c = Check::default();
        if let crate::fitting::Provenance::Trace(spec) = fs.provenance() {
            if let Some(ce) = validate_npi_fitting_class(spec, &[&self.dn]) {
                c.fail(|| describe_counterexample(&[self.an.name.as_str()], &[lat], &ce));
            }
        }
        self.injector_claims(fs, &mut c)?;
        Ok(c)
    }

    fn observe_dsubnormal(&self, fs: &FittingSet) -> Result<Check> {
        let lat = self.lat;
        let mut c = Check::default();
        let dsub = self.dn.dsubnormal_in(lat.top()).count();
        for v in injectors_bruteforce(lat, fs, lat.top()) {
            let bad = dsubnormal_failures(&self.dn, fs, v);
            c.witnesses.push(if bad.is_empty() {
                format!("{}: F-maximal meet with all {dsub} Dsubnormal subgroups", sub(lat, v))
            } else {
                format!(
                    "{}: meet not F-maximal in {} of {dsub} Dsubnormal subgroups, first {}",
                    sub(lat, v),
                    bad.len(),
                    sub(lat, bad[0])
                )
            });
        }
        Ok(c)
    }
}

fn list(lat: &Lattice, items: &[usize]) -> String {
    let parts: Vec<String> = items.iter().map(|&i| sub(lat, i)).collect();
    format!("[{}]", parts.join(", "))
}

/// `names` and `lats` are indexed by the counterexample's `source`.
pub fn describe_counterexample(names: &[&str], lats: &[&Lattice], ce: &ClassCounterexample) -> String {
    match *ce {
        ClassCounterexample::Descent { source, ambient, sub: s } => {
            let lat = lats[source];
            format!(
                "{}: {} is in the class, its Dnormal subgroup {} is not",
                names[source],
                sub(lat, ambient),
                sub(lat, s)
            )
        }
        ClassCounterexample::Join {
            source,
            ambient,
            left,
            right,
        } => {
            let lat = lats[source];
            format!(
                "{}: {} and {} are in the class and Dnormal in the group {} they generate, which is not",
                names[source],
                sub(lat, left),
                sub(lat, right),
                sub(lat, ambient)
            )
        }
    }
}

fn check_suite(suite: &str) -> Result<&'static str> {
    SUITES
        .iter()
        .copied()
        .find(|&s| s == suite)
        .ok_or_else(|| Error::Precondition(format!("unknown suite {suite:?}")))
}

/// Runs group-scoped suites on one group for one π, in the order given.
pub fn run_group(an: &GroupAnalysis, pi: &PrimeSet, suites: &[&str]) -> Result<Vec<SuiteOutcome>> {
    let suites = suites.iter().map(|s| check_suite(s)).collect::<Result<Vec<_>>>()?;
    if let Some(s) = suites.iter().find(|s| is_corpus_suite(s)) {
        return Err(Error::Precondition(format!("suite {s} runs on a whole corpus")));
    }
    let lat = &an.lattice;
    let dn = an.context(pi)?;
    let run = Run {
        an,
        lat,
        soluble: is_piprime_soluble(lat, lat.top(), pi),
        dn,
        fitting: OnceCell::new(),
        projectors: OnceCell::new(),
        quotients: OnceCell::new(),
    };
    Ok(suites.into_iter().flat_map(|s| run.run(s)).collect())
}

/// Runs a corpus-scoped suite for one π.
pub fn run_corpus(suite: &str, corpus: &[GroupAnalysis], pi: &PrimeSet) -> Result<SuiteOutcome> {
    let suite = check_suite(suite)?;
    let contexts = corpus.iter().map(|an| an.context(pi)).collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Dnormality> = contexts.iter().collect();
    let names: Vec<&str> = corpus.iter().map(|an| an.name()).collect();
    let lats: Vec<&Lattice> = corpus.iter().map(|an| an.lattice()).collect();
    let wide = pi.size().is_none_or(|s| s >= 2);

    let (spec, expect_counterexample) = match suite {
        "remark-2" => (ClassSpec::Nilpotent, wide),
        "remark-3" => (ClassSpec::Npi(pi.clone()), false),
        _ => return Err(Error::Precondition(format!("suite {suite} runs on a single group"))),
    };
    let found = validate_npi_fitting_class(&spec, &refs);
    let witnesses: Vec<String> = found
        .iter()
        .map(|ce| describe_counterexample(&names, &lats, ce))
        .collect();
    let status = match (expect_counterexample, found.is_some()) {
        (false, false) | (true, true) => Status::Pass,
        (false, true) => Status::Fail,
        (true, false) => Status::Skipped("no counterexample inside this corpus".into()),
    };
    Ok(SuiteOutcome {
        suite,
        scope: Scope {
            group: "corpus".into(),
            pi: pi.clone(),
            class: Some(spec.to_string()),
        },
        status,
        witnesses,
    })
}

/// Every suite over every group of `corpus` and every π, sequentially.
pub fn run_all(corpus: &[GroupAnalysis], pis: &[PrimeSet]) -> Result<Vec<SuiteOutcome>> {
    let group_suites: Vec<&str> = SUITES.iter().copied().filter(|s| !is_corpus_suite(s)).collect();
    let mut out = Vec::new();
    for pi in pis {
        for an in corpus {
            out.extend(run_group(an, pi, &group_suites)?);
        }
        for s in CORPUS_SUITES {
            out.push(run_corpus(s, corpus, pi)?);
        }
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{parse_permutation, Perm};

    fn group(degree: usize, gens: &[&str]) -> Group {
        let gens: Vec<Perm> = gens.iter().map(|g| parse_permutation(g, degree).unwrap()).collect();
        Group::generate(&gens, degree).unwrap()
    }

    fn pset(p: &[usize]) -> PrimeSet {
        PrimeSet::new(p.iter().copied()).unwrap()
    }

    #[test]
    fn all_group_suites_pass_on_s4() {
        let an = GroupAnalysis::new("S4", &group(4, &["(1 2)", "(1 2 3 4)"])).unwrap();
        let group_suites: Vec<&str> = SUITES.iter().copied().filter(|s| !is_corpus_suite(s)).collect();
        for pi in [pset(&[]), pset(&[2, 3]), pset(&[3, 5])] {
            for o in run_group(&an, &pi, &group_suites).unwrap() {
                assert_ne!(o.status, Status::Fail, "{o:?}");
            }
        }
    }

    #[test]
    fn non_soluble_hypotheses_are_skipped() {
        let an = GroupAnalysis::new("A5", &group(5, &["(1 2 3 4 5)", "(1 2 3)"])).unwrap();
        let out = run_group(&an, &pset(&[2]), &["lemma-teo1", "theorem-2.9"]).unwrap();
        assert!(out.iter().all(|o| matches!(o.status, Status::Skipped(_))));
    }

    #[test]
    fn wide_pi_counterexample_in_s3() {
        let corpus = [GroupAnalysis::new("S3", &group(3, &["(1 2)", "(1 2 3)"])).unwrap()];
        let o = run_corpus("remark-2", &corpus, &pset(&[2, 3])).unwrap();
        assert_eq!(o.status, Status::Pass);
        assert!(o.witnesses[0].starts_with("S3: "));
        let o = run_corpus("remark-2", &corpus, &pset(&[])).unwrap();
        assert_eq!(o.status, Status::Pass);
        assert!(o.witnesses.is_empty());
        let o = run_corpus("remark-3", &corpus, &pset(&[2, 3])).unwrap();
        assert_eq!(o.status, Status::Pass);
    }

    #[test]
    fn unknown_and_misplaced_suites_are_errors() {
        let an = GroupAnalysis::new("S3", &group(3, &["(1 2)", "(1 2 3)"])).unwrap();
        assert!(run_group(&an, &pset(&[]), &["no-such-suite"]).is_err());
        assert!(run_group(&an, &pset(&[]), &["remark-2"]).is_err());
        assert!(run_corpus("prop-1.2", core::slice::from_ref(&an), &pset(&[])).is_err());
    }
}
