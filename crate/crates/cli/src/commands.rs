//! Command implementations. Each returns both renderings of its result.

use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{anyhow, bail, Context as _, Result};
use pigroups_core::fitting::{
    f_maximal, injectors_bruteforce, radical_by, validate, Axioms, FittingSet, RadicalForm, Validation,
};
use pigroups_core::injector::injectors_constructive;
use pigroups_core::pi::{class_residual, hall_subgroups, is_piprime_soluble, o_pi, upper_pi};
use pigroups_core::projector::projector_report;
use pigroups_core::suites::{
    describe_violation, is_corpus_suite, run_corpus, run_group, GroupAnalysis, CORPUS_SUITES, SUITES,
};
use pigroups_core::{ClassSpec, Dnormality, Error as CoreError, Group, Lattice, PrimeSet, QuotientView};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::corpus::{load_corpus, NamedGroup};
use crate::parse::{parse_class, parse_pi, parse_subgroup, parse_subgroups};
use crate::report::{SubgroupRecord, SuiteRecord, Summary};

/// The π values `verify` runs over when none are given.
pub const DEFAULT_PIS: &[&str] = &["", "2", "3", "2,3", "3,5", "2,3,5"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Lattice,
    Halls,
    Opi,
    Oupperpi,
    Residual,
    Dnormal,
    Dsubnormal,
    Radical,
    Fmaximal,
    Injectors,
    Projectors,
    Closure,
    ValidateFitting,
    Verify,
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Corpus path, or `default`.
    pub corpus: String,
    pub group: Option<String>,
    /// Every `--pi` given, unparsed.
    pub pi: Vec<String>,
    pub class: Option<String>,
    pub subgroup: Option<String>,
    pub seed_subgroups: Option<String>,
    pub suites: Vec<String>,
    pub jobs: Option<usize>,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            corpus: "default".into(),
            group: None,
            pi: Vec::new(),
            class: None,
            subgroup: None,
            seed_subgroups: None,
            suites: Vec::new(),
            jobs: None,
            timing: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub text: String,
    /// Whether anything checked failed; drives the exit code.
    pub failed: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Output {
        Output {
            json,
            text,
            failed: false,
        }
    }
}

pub fn run(command: Command, opts: &Options) -> Result<Output> {
    if command == Command::Verify {
        return verify(opts);
    }
    let target = Target::load(opts)?;
    let pi = single_pi(opts)?;
    match command {
        Command::Lattice => Ok(target.lattice_report()),
        Command::Halls => Ok(target.halls(&pi)),
        Command::Opi => Ok(target.opi(&pi, false)),
        Command::Oupperpi => Ok(target.opi(&pi, true)),
        Command::Residual => target.residual(opts, &pi),
        Command::Dnormal => target.dnormal(opts, &pi, false),
        Command::Dsubnormal => target.dnormal(opts, &pi, true),
        Command::Radical => target.radical(opts, &pi),
        Command::Fmaximal => target.fmaximal(opts, &pi),
        Command::Injectors => target.injectors(opts, &pi),
        Command::Projectors => target.projectors(&pi),
        Command::Closure => target.closure(opts, &pi),
        Command::ValidateFitting => target.validate_fitting(opts, &pi),
        Command::Verify => unreachable!("handled above"),
    }
}

fn single_pi(opts: &Options) -> Result<PrimeSet> {
    match opts.pi.as_slice() {
        [] => Ok(PrimeSet::empty()),
        [one] => Ok(parse_pi(one)?),
        _ => bail!("this command takes a single --pi"),
    }
}

fn find_group(groups: Vec<NamedGroup>, name: &str) -> Result<NamedGroup> {
    let names: Vec<String> = groups.iter().map(|g| g.name.clone()).collect();
    groups
        .into_iter()
        .find(|g| g.name == name)
        .ok_or_else(|| anyhow!("unknown group {name:?}; the corpus has {}", names.join(", ")))
}

struct Target {
    name: String,
    group: Group,
    lattice: Lattice,
}

fn rec(lat: &Lattice, i: usize) -> Value {
    json!(SubgroupRecord::new(lat.subgroup(i)))
}

fn recs(lat: &Lattice, items: impl IntoIterator<Item = usize>) -> Value {
    Value::Array(items.into_iter().map(|i| rec(lat, i)).collect())
}

fn show(lat: &Lattice, i: usize) -> String {
    format!("{:?}", lat.subgroup(i))
}

fn show_list(lat: &Lattice, items: &[usize]) -> String {
    let mut out = String::new();
    for &i in items {
        let _ = writeln!(out, "  {}", show(lat, i));
    }
    out
}

fn axioms_json(lat: &Lattice, ax: &Axioms) -> Value {
    let one = |v: &Option<_>| v.as_ref().map(|v| describe_violation(lat, v));
    json!({ "fs1": one(&ax.fs1), "fs2": one(&ax.fs2), "fs3": one(&ax.fs3) })
}

fn axioms_text(lat: &Lattice, level: &str, ax: &Axioms) -> String {
    let mut out = String::new();
    for (name, v) in [("FS1", &ax.fs1), ("FS2", &ax.fs2), ("FS3", &ax.fs3)] {
        let verdict = v.as_ref().map_or("holds".to_string(), |v| format!("fails: {}", describe_violation(lat, v)));
        let _ = writeln!(out, "  {level} {name} {verdict}");
    }
    out
}

fn fitting_label(fs: &FittingSet, lat: &Lattice) -> String {
    use pigroups_core::fitting::Provenance;
    match fs.provenance() {
        Provenance::Trace(spec) => format!("trace {spec}"),
        Provenance::Explicit => "explicit".into(),
        Provenance::Closure { seeds, pi } => {
            let seeds: Vec<String> = seeds.iter().map(|&s| show(lat, s)).collect();
            format!("closure under {pi} of {}", seeds.join("; "))
        }
    }
}

impl Target {
    fn load(opts: &Options) -> Result<Target> {
        let name = opts.group.as_deref().context("--group is required")?;
        let g = find_group(load_corpus(&opts.corpus)?, name)?;
        let lattice = Lattice::new(&g.group).with_context(|| format!("group {}", g.name))?;
        Ok(Target {
            name: g.name,
            group: g.group,
            lattice,
        })
    }

    fn context(&self, pi: &PrimeSet) -> Result<Dnormality<'_>> {
        Ok(Dnormality::new(&self.lattice, pi)?)
    }

    fn index(&self, text: &str) -> Result<usize> {
        let s = parse_subgroup(&self.group, text)?;
        Ok(self.lattice.index_of(&s)?)
    }

    /// `--subgroup`, defaulting to the whole group.
    fn subject(&self, opts: &Options) -> Result<usize> {
        opts.subgroup
            .as_deref()
            .map_or(Ok(self.lattice.top()), |t| self.index(t))
    }

    fn seeds(&self, opts: &Options) -> Result<Option<Vec<usize>>> {
        let Some(text) = opts.seed_subgroups.as_deref() else {
            return Ok(None);
        };
        let subs = parse_subgroups(&self.group, text)?;
        Ok(Some(
            subs.iter()
                .map(|s| self.lattice.index_of(s))
                .collect::<pigroups_core::Result<Vec<_>>>()?,
        ))
    }

    fn class(&self, opts: &Options, pi: &PrimeSet) -> Result<ClassSpec> {
        Ok(parse_class(opts.class.as_deref().unwrap_or("npi"), pi)?)
    }

    /// The closure of `--seed-subgroups` if given, else the trace of `--class`.
    fn fitting_set(&self, dn: &Dnormality, opts: &Options, pi: &PrimeSet) -> Result<FittingSet> {
        match self.seeds(opts)? {
            Some(seeds) => Ok(FittingSet::closure(dn, &seeds)?),
            None => Ok(FittingSet::trace(&self.lattice, &self.class(opts, pi)?)),
        }
    }

    fn lattice_report(&self) -> Output {
        let lat = &self.lattice;
        let classes = lat.conjugacy_classes();
        let subgroups: Vec<Value> = (0..lat.len())
            .map(|i| {
                let mut v = rec(lat, i);
                v["class"] = json!(lat.class_of(i));
                v
            })
            .collect();
        let mut text = format!(
            "{}: order {}, {} subgroups in {} conjugacy classes\n",
            self.name,
            self.group.order(),
            lat.len(),
            classes.len()
        );
        for i in 0..lat.len() {
            let _ = writeln!(text, "  [{}] {}", lat.class_of(i), show(lat, i));
        }
        Output::ok(
            json!({
                "group": self.name,
                "order": self.group.order(),
                "conjugacy_classes": classes.len(),
                "subgroups": subgroups,
            }),
            text,
        )
    }

    fn halls(&self, pi: &PrimeSet) -> Output {
        let lat = &self.lattice;
        let halls = hall_subgroups(lat, lat.top(), pi);
        let text = format!("{} Hall {pi}-subgroups of {}:\n{}", halls.len(), self.name, show_list(lat, &halls));
        Output::ok(
            json!({ "group": self.name, "pi": pi.to_string(), "halls": recs(lat, halls.iter().copied()) }),
            text,
        )
    }

    fn opi(&self, pi: &PrimeSet, upper: bool) -> Output {
        let lat = &self.lattice;
        let (i, label) = if upper {
            let s = upper_pi(lat.subgroup(lat.top()), pi);
            (lat.index_of(&s).expect("O^pi is a subgroup"), format!("O^{pi}"))
        } else {
            (o_pi(lat, lat.top(), pi), format!("O_{pi}"))
        };
        Output::ok(
            json!({ "group": self.name, "pi": pi.to_string(), "subgroup": rec(lat, i) }),
            format!("{label}({}) = {}\n", self.name, show(lat, i)),
        )
    }

    fn residual(&self, opts: &Options, pi: &PrimeSet) -> Result<Output> {
        let lat = &self.lattice;
        let spec = self.class(opts, pi)?;
        let h = self.subject(opts)?;
        let r = class_residual(lat, h, &spec)?;
        Ok(Output::ok(
            json!({ "group": self.name, "class": spec.to_string(), "subgroup": rec(lat, h), "residual": rec(lat, r) }),
            format!("{spec}-residual of {} = {}\n", show(lat, h), show(lat, r)),
        ))
    }

    fn dnormal(&self, opts: &Options, pi: &PrimeSet, sub: bool) -> Result<Output> {
        let lat = &self.lattice;
        let dn = self.context(pi)?;
        let word = if sub { "Dsubnormal" } else { "Dnormal" };
        let Some(text) = opts.subgroup.as_deref() else {
            let top = lat.top();
            let all: Vec<usize> = if sub { dn.dsubnormal_in(top) } else { dn.dnormal_in(top) }
                .iter()
                .collect();
            return Ok(Output::ok(
                json!({ "group": self.name, "pi": pi.to_string(), word.to_lowercase(): recs(lat, all.iter().copied()) }),
                format!("{} {word} subgroups of {} for pi={pi}:\n{}", all.len(), self.name, show_list(lat, &all)),
            ));
        };
        let h = self.index(text)?;
        if sub {
            let chain = dn.dsubnormal_chain(h, lat.top());
            let mut out = format!("{}\n", chain.is_some());
            if let Some(c) = &chain {
                out.push_str(&show_list(lat, c));
            }
            Ok(Output::ok(
                json!({
                    "group": self.name,
                    "pi": pi.to_string(),
                    "subgroup": rec(lat, h),
                    "dsubnormal": chain.is_some(),
                    "chain": chain.map(|c| recs(lat, c)),
                }),
                out,
            ))
        } else {
            let value = dn.is_dnormal(h);
            let definition = dn.is_dnormal_def(h);
            if value != definition {
                return Err(CoreError::Mismatch(format!(
                    "Dnormality of {} differs between the definition and its characterization",
                    show(lat, h)
                ))
                .into());
            }
            Ok(Output::ok(
                json!({ "group": self.name, "pi": pi.to_string(), "subgroup": rec(lat, h), "dnormal": value }),
                format!("{value}\n"),
            ))
        }
    }

    fn radical(&self, opts: &Options, pi: &PrimeSet) -> Result<Output> {
        let lat = &self.lattice;
        let dn = self.context(pi)?;
        let fs = self.fitting_set(&dn, opts, pi)?;
        let validation = validate(lat, &fs, Some(&dn));
        if !validation.is_fitting_set() {
            bail!(
                "{} is not a Fitting set: {}",
                fitting_label(&fs, lat),
                pigroups_core::suites::describe_validation(lat, &validation)
            );
        }
        let h = self.subject(opts)?;
        let forms: Vec<(&str, usize)> = RadicalForm::ALL
            .iter()
            .map(|&f| (form_name(f), radical_by(&dn, &fs, h, f)))
            .collect();
        let r = forms[0].1;
        let mut text = format!("radical of {} in {} = {}\n", show(lat, h), fitting_label(&fs, lat), show(lat, r));
        for (name, x) in &forms[1..] {
            if *x != r {
                let _ = writeln!(text, "  by {name} members: {}", show(lat, *x));
            }
        }
        let forms_json: serde_json::Map<String, Value> =
            forms.iter().map(|(n, x)| (n.to_string(), rec(lat, *x))).collect();
        Ok(Output::ok(
            json!({
                "group": self.name,
                "pi": pi.to_string(),
                "fitting_set": fitting_label(&fs, lat),
                "npi_fitting_set": validation.is_npi_fitting_set(),
                "subgroup": rec(lat, h),
                "radical": rec(lat, r),
                "forms": forms_json,
            }),
            text,
        ))
    }

    fn fmaximal(&self, opts: &Options, pi: &PrimeSet) -> Result<Output> {
        let lat = &self.lattice;
        let dn = self.context(pi)?;
        let fs = self.fitting_set(&dn, opts, pi)?;
        let h = self.subject(opts)?;
        let max = f_maximal(lat, &fs, h);
        Ok(Output::ok(
            json!({
                "group": self.name,
                "pi": pi.to_string(),
                "fitting_set": fitting_label(&fs, lat),
                "subgroup": rec(lat, h),
                "maximal": recs(lat, max.iter().copied()),
            }),
            format!(
                "{} maximal members of {} in {}:\n{}",
                max.len(),
                fitting_label(&fs, lat),
                show(lat, h),
                show_list(lat, &max)
            ),
        ))
    }

    fn injectors(&self, opts: &Options, pi: &PrimeSet) -> Result<Output> {
        let lat = &self.lattice;
        let dn = self.context(pi)?;
        let fs = self.fitting_set(&dn, opts, pi)?;
        let label = fitting_label(&fs, lat);
        let base = json!({ "group": self.name, "pi": pi.to_string(), "fitting_set": label });
        let report = match injectors_constructive(&dn, &fs) {
            Ok(r) => r,
            Err(CoreError::Precondition(why)) => {
                let inj = injectors_bruteforce(lat, &fs, lat.top());
                let mut json = base;
                json["method"] = json!("bruteforce");
                json["note"] = json!(why);
                json["injectors"] = recs(lat, inj.iter().copied());
                return Ok(Output::ok(
                    json,
                    format!(
                        "{} injectors of {label} in {} (definition only: {why}):\n{}",
                        inj.len(),
                        self.name,
                        show_list(lat, &inj)
                    ),
                ));
            }
            Err(e) => return Err(e.into()),
        };
        let group = &self.group;
        let witnesses: Vec<Value> = report
            .witnesses
            .iter()
            .map(|w| {
                json!({
                    "from": rec(lat, w.from),
                    "to": rec(lat, w.to),
                    "element": group.element(w.element).to_cycle_string(),
                    "in_residual": w.in_residual,
                })
            })
            .collect();
        let trace: Vec<Value> = report
            .trace
            .iter()
            .map(|s| {
                json!({
                    "group": rec(lat, s.group),
                    "residual": rec(lat, s.residual),
                    "base": rec(lat, s.base),
                    "injectors": recs(lat, s.injectors.iter().copied()),
                })
            })
            .collect();
        let mut text = format!(
            "{} injectors of {label} in {}, one conjugacy class: {}\n{}",
            report.injectors.len(),
            self.name,
            report.unconjugated.is_empty(),
            show_list(lat, &report.injectors)
        );
        for w in &report.witnesses {
            let _ = writeln!(
                text,
                "  {} ^ {} = {}{}",
                show(lat, w.from),
                group.element(w.element),
                show(lat, w.to),
                if w.in_residual { " (in residual)" } else { "" }
            );
        }
        let mut json = base;
        json["method"] = json!("constructive");
        json["injectors"] = recs(lat, report.injectors.iter().copied());
        json["witnesses"] = Value::Array(witnesses);
        json["trace"] = Value::Array(trace);
        Ok(Output::ok(json, text))
    }

    fn projectors(&self, pi: &PrimeSet) -> Result<Output> {
        let lat = &self.lattice;
        let dn = self.context(pi)?;
        let views = lat
            .normal_in(lat.top())
            .iter()
            .map(|k| QuotientView::new(lat, k))
            .collect::<pigroups_core::Result<Vec<_>>>()?;
        let report = projector_report(&dn, &views)?;
        let characterized: Vec<usize> = report
            .characterization
            .iter()
            .filter(|c| c.holds())
            .map(|c| c.subgroup)
            .collect();
        let soluble = is_piprime_soluble(lat, lat.top(), pi);
        let text = format!(
            "{} projectors of {} for pi={pi}{}:\n{}covering subgroups equal: {}\ncharacterized subgroups equal: {}\n",
            report.projectors.len(),
            self.name,
            if soluble { "" } else { " (group is not pi'-soluble)" },
            show_list(lat, &report.projectors),
            report.covering == report.projectors,
            characterized == report.projectors,
        );
        Ok(Output::ok(
            json!({
                "group": self.name,
                "pi": pi.to_string(),
                "piprime_soluble": soluble,
                "projectors": recs(lat, report.projectors.iter().copied()),
                "covering": recs(lat, report.covering.iter().copied()),
                "characterized": recs(lat, characterized.iter().copied()),
            }),
            text,
        ))
    }

    fn closure(&self, opts: &Options, pi: &PrimeSet) -> Result<Output> {
        let lat = &self.lattice;
        let dn = self.context(pi)?;
        let seeds = self.seeds(opts)?.context("closure needs --seed-subgroups")?;
        let fs = FittingSet::closure(&dn, &seeds)?;
        let members: Vec<usize> = fs.members().iter().collect();
        Ok(Output::ok(
            json!({
                "group": self.name,
                "pi": pi.to_string(),
                "seeds": recs(lat, seeds.iter().copied()),
                "members": recs(lat, members.iter().copied()),
            }),
            format!("{} members:\n{}", members.len(), show_list(lat, &members)),
        ))
    }

    fn validate_fitting(&self, opts: &Options, pi: &PrimeSet) -> Result<Output> {
        let lat = &self.lattice;
        let dn = self.context(pi)?;
        let fs = match self.seeds(opts)? {
            Some(seeds) => FittingSet::explicit(lat, seeds),
            None => FittingSet::trace(lat, &self.class(opts, pi)?),
        };
        let v: Validation = validate(lat, &fs, Some(&dn));
        let npi = v.npi.as_ref().expect("a context was supplied");
        let label = fitting_label(&fs, lat);
        let text = format!(
            "{label} in {} ({} members), pi={pi}\n  nonempty {}\n{}{}",
            self.name,
            fs.len(),
            v.nonempty,
            axioms_text(lat, "classical", &v.classical),
            axioms_text(lat, "N^pi", npi),
        );
        Ok(Output::ok(
            json!({
                "group": self.name,
                "pi": pi.to_string(),
                "fitting_set": label,
                "members": fs.len(),
                "nonempty": v.nonempty,
                "classical": axioms_json(lat, &v.classical),
                "npi": axioms_json(lat, npi),
                "is_fitting_set": v.is_fitting_set(),
                "is_npi_fitting_set": v.is_npi_fitting_set(),
            }),
            text,
        ))
    }
}

fn form_name(f: RadicalForm) -> &'static str {
    match f {
        RadicalForm::Normal => "normal",
        RadicalForm::Subnormal => "subnormal",
        RadicalForm::Dnormal => "dnormal",
        RadicalForm::Dsubnormal => "dsubnormal",
    }
}

fn selected_suites(opts: &Options) -> Result<Vec<&'static str>> {
    if opts.suites.is_empty() || opts.suites.iter().any(|s| s == "all") {
        return Ok(SUITES.to_vec());
    }
    opts.suites
        .iter()
        .map(|s| {
            SUITES
                .iter()
                .copied()
                .find(|k| k == s)
                .ok_or_else(|| anyhow!("unknown suite {s:?}; known suites: {}", SUITES.join(", ")))
        })
        .collect()
}

fn verify(opts: &Options) -> Result<Output> {
    let mut groups = load_corpus(&opts.corpus)?;
    if let Some(name) = &opts.group {
        groups = vec![find_group(groups, name)?];
    }
    let pis: Vec<PrimeSet> = if opts.pi.is_empty() {
        DEFAULT_PIS.iter().map(|p| parse_pi(p)).collect::<Result<_, _>>()?
    } else {
        opts.pi.iter().map(|p| parse_pi(p)).collect::<Result<_, _>>()?
    };
    let suites = selected_suites(opts)?;
    let (corpus_suites, group_suites): (Vec<&str>, Vec<&str>) = suites.iter().partition(|s| is_corpus_suite(s));

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.unwrap_or(0))
        .build()?;
    let records = pool.install(|| -> Result<Vec<SuiteRecord>> {
        let analyses = groups
            .par_iter()
            .map(|g| GroupAnalysis::new(g.name.clone(), &g.group).with_context(|| format!("group {}", g.name)))
            .collect::<Result<Vec<_>>>()?;
        let mut records = Vec::new();
        for pi in &pis {
            let items: Vec<(&GroupAnalysis, &str)> = analyses
                .iter()
                .flat_map(|an| group_suites.iter().map(move |&s| (an, s)))
                .collect();
            let batches = items
                .par_iter()
                .map(|&(an, suite)| {
                    let start = Instant::now();
                    let outcomes = run_group(an, pi, &[suite])
                        .with_context(|| format!("suite {suite} on {} with pi={pi}", an.name()))?;
                    let ms = opts.timing.then(|| start.elapsed().as_millis() as u64);
                    Ok(outcomes.into_iter().map(|o| SuiteRecord::new(o, ms)).collect::<Vec<_>>())
                })
                .collect::<Result<Vec<_>>>()?;
            records.extend(batches.into_iter().flatten());
            for &suite in CORPUS_SUITES.iter().filter(|s| corpus_suites.contains(s)) {
                let start = Instant::now();
                let outcome = run_corpus(suite, &analyses, pi)?;
                let ms = opts.timing.then(|| start.elapsed().as_millis() as u64);
                records.push(SuiteRecord::new(outcome, ms));
            }
        }
        Ok(records)
    })?;

    let summary = Summary::of(&records);
    let mut text = String::new();
    for r in &records {
        let _ = writeln!(text, "{}", r.text());
    }
    let _ = writeln!(text, "{} pass, {} fail, {} skipped", summary.pass, summary.fail, summary.skipped);
    Ok(Output {
        json: serde_json::to_value(&records)?,
        text,
        failed: summary.fail > 0,
    })
}
