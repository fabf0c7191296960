//! Fitting sets of a fixed group: the classical and `N^π` axioms, closures,
//! radicals, maximal members and injectors.
//!
//! A Fitting set is a set of lattice indices. Classical notions use
//! normality and subnormality; the `N^π` ones use the relations tabulated in
//! [`Dnormality`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::dnormal::Dnormality;
use crate::error::{Error, Result};
use crate::group::ElementId;
use crate::pi::{subgroup_in_class, ClassSpec, PrimeSet};
use crate::structure::Lattice;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// All subgroups lying in a class.
    Trace(ClassSpec),
    Explicit,
    /// Least `N^π`-Fitting set containing the seeds.
    Closure { seeds: Vec<usize>, pi: PrimeSet },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingSet {
    members: BitSet,
    provenance: Provenance,
}

impl FittingSet {
    /// `Tr(G)`: the members of `lat` lying in `spec`.
    pub fn trace(lat: &Lattice, spec: &ClassSpec) -> FittingSet {
        let n = lat.len();
        FittingSet {
            members: BitSet::from_indices(n, (0..n).filter(|&i| subgroup_in_class(lat.subgroup(i), spec))),
            provenance: Provenance::Trace(spec.clone()),
        }
    }

    pub fn explicit(lat: &Lattice, members: impl IntoIterator<Item = usize>) -> FittingSet {
        FittingSet {
            members: BitSet::from_indices(lat.len(), members),
            provenance: Provenance::Explicit,
        }
    }

    /// Least fixpoint of: add Dsubnormal subgroups of members, add joins of
    /// two members Dnormal in that join, add conjugates. With `|π| ≤ 1` this
    /// is the classical Fitting set closure.
    pub fn closure(dn: &Dnormality, seeds: &[usize]) -> Result<FittingSet> {
        if seeds.is_empty() {
            return Err(Error::Precondition("closure of an empty seed".into()));
        }
        let lat = dn.lattice();
        let mut members = BitSet::from_indices(lat.len(), seeds.iter().copied());
        let gens: Vec<ElementId> = lat.group().generators().collect();
        loop {
            let mut grown = members.clone();
            for s in members.iter() {
                grown.union_with(dn.dsubnormal_in(s));
                for &g in &gens {
                    grown.insert(lat.conjugate(s, g));
                }
            }
            let list: Vec<usize> = grown.iter().collect();
            for (a, &s) in list.iter().enumerate() {
                for &t in &list[a + 1..] {
                    let j = lat.join(s, t);
                    if dn.is_dnormal_in(s, j) && dn.is_dnormal_in(t, j) {
                        grown.insert(j);
                    }
                }
            }
            if grown == members {
                break;
            }
            members = grown;
        }
        let mut seeds = seeds.to_vec();
        seeds.sort_unstable();
        seeds.dedup();
        Ok(FittingSet {
            members,
            provenance: Provenance::Closure {
                seeds,
                pi: dn.pi().clone(),
            },
        })
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Members contained in `h`, i.e. the Fitting set restricted to `h`.
    pub fn within(&self, lat: &Lattice, h: usize) -> BitSet {
        self.members.intersection(lat.below(h))
    }
}

/// A failure of one Fitting-set axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `sub` is (D)subnormal in the member `member` but is not a member.
    Descent { member: usize, sub: usize },
    /// `left` and `right` are (D)normal members of `join`, which is not.
    Join { left: usize, right: usize, join: usize },
    /// The conjugate `image` of `member` by `element` is not a member.
    Conjugate {
        member: usize,
        element: ElementId,
        image: usize,
    },
}

/// First violation found for each axiom, if any.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Axioms {
    pub fs1: Option<Violation>,
    pub fs2: Option<Violation>,
    pub fs3: Option<Violation>,
}

impl Axioms {
    pub fn hold(&self) -> bool {
        self.fs1.is_none() && self.fs2.is_none() && self.fs3.is_none()
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        [&self.fs1, &self.fs2, &self.fs3].into_iter().flatten()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub nonempty: bool,
    pub classical: Axioms,
    /// Present when a π was supplied.
    pub npi: Option<Axioms>,
}

impl Validation {
    pub fn is_fitting_set(&self) -> bool {
        self.nonempty && self.classical.hold()
    }

    pub fn is_npi_fitting_set(&self) -> bool {
        self.is_fitting_set() && self.npi.as_ref().is_some_and(Axioms::hold)
    }
}

fn check_axioms<'s>(
    lat: &Lattice,
    members: &BitSet,
    descend: impl Fn(usize) -> &'s BitSet,
    normal_in: impl Fn(usize, usize) -> bool,
) -> Axioms {
    let fs1 = members.iter().find_map(|s| {
        descend(s)
            .iter()
            .find(|&t| !members.contains(t))
            .map(|t| Violation::Descent { member: s, sub: t })
    });

    let list: Vec<usize> = members.iter().collect();
    let fs2 = list.iter().enumerate().find_map(|(a, &s)| {
        list[a + 1..].iter().find_map(|&t| {
            let j = lat.join(s, t);
            (!members.contains(j) && normal_in(s, j) && normal_in(t, j)).then_some(Violation::Join {
                left: s,
                right: t,
                join: j,
            })
        })
    });

    let fs3 = list.iter().find_map(|&s| {
        lat.group().generators().find_map(|g| {
            let image = lat.conjugate(s, g);
            (!members.contains(image)).then_some(Violation::Conjugate {
                member: s,
                element: g,
                image,
            })
        })
    });
    Axioms { fs1, fs2, fs3 }
}

/// Checks the classical axioms and, given a context, the `N^π` ones.
pub fn validate(lat: &Lattice, fs: &FittingSet, dn: Option<&Dnormality>) -> Validation {
    let members = fs.members();
    let classical = check_axioms(lat, members, |s| lat.subnormal_in(s), |i, j| lat.is_normal_in(i, j));
    let npi = dn.map(|dn| check_axioms(lat, members, |s| dn.dsubnormal_in(s), |i, j| dn.is_dnormal_in(i, j)));
    Validation {
        nonempty: !members.is_empty(),
        classical,
        npi,
    }
}

/// Which relation to `h` selects the members joined into a radical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RadicalForm {
    Normal,
    Subnormal,
    Dnormal,
    Dsubnormal,
}

impl RadicalForm {
    pub const ALL: [RadicalForm; 4] = [
        RadicalForm::Normal,
        RadicalForm::Subnormal,
        RadicalForm::Dnormal,
        RadicalForm::Dsubnormal,
    ];
}

/// `h_F`: the join of the members of `fs` normal in `h`. Meaningful when
/// `fs` is a Fitting set.
pub fn radical(lat: &Lattice, fs: &FittingSet, h: usize) -> usize {
    lat.join_all(fs.members().intersection(lat.normal_in(h)).iter())
}

pub fn radical_by(dn: &Dnormality, fs: &FittingSet, h: usize, form: RadicalForm) -> usize {
    let lat = dn.lattice();
    let rel = match form {
        RadicalForm::Normal => lat.normal_in(h),
        RadicalForm::Subnormal => lat.subnormal_in(h),
        RadicalForm::Dnormal => dn.dnormal_in(h),
        RadicalForm::Dsubnormal => dn.dsubnormal_in(h),
    };
    lat.join_all(fs.members().intersection(rel).iter())
}

/// The radical of `h` computed in each [`RadicalForm`], in that order.
pub fn radical_forms(dn: &Dnormality, fs: &FittingSet, h: usize) -> [usize; 4] {
    RadicalForm::ALL.map(|form| radical_by(dn, fs, h, form))
}

/// Members of `fs` contained in `h` and maximal among those.
pub fn f_maximal(lat: &Lattice, fs: &FittingSet, h: usize) -> Vec<usize> {
    maximal_set(lat, fs.members(), h).iter().collect()
}

pub(crate) fn maximal_set(lat: &Lattice, members: &BitSet, h: usize) -> BitSet {
    let cands = members.intersection(lat.below(h));
    let mut out = BitSet::new(lat.len());
    for c in cands.iter() {
        if lat.above(c).intersection_count(&cands) == 1 {
            out.insert(c);
        }
    }
    out
}

/// Injectors of member `j` by definition: `V ≤ j` such that `V ∩ K` is
/// `F`-maximal in `K` for every subnormal `K` of `j`. Every subgroup of `j`
/// is tried.
pub fn injectors_bruteforce(lat: &Lattice, fs: &FittingSet, j: usize) -> Vec<usize> {
    injectors_among(lat, fs, j, lat.below(j).iter())
}

/// As [`injectors_bruteforce`], trying only subgroups that contain the
/// radical of `j`; an injector meets `j_F` in an `F`-maximal subgroup of
/// `j_F`, which is `j_F` itself.
pub fn injectors_pruned(lat: &Lattice, fs: &FittingSet, j: usize) -> Vec<usize> {
    let r = radical(lat, fs, j);
    injectors_among(lat, fs, j, lat.below(j).intersection(lat.above(r)).iter())
}

fn injectors_among(lat: &Lattice, fs: &FittingSet, j: usize, cands: impl Iterator<Item = usize>) -> Vec<usize> {
    // `j` itself first: it rejects most candidates.
    let mut tests: Vec<(usize, BitSet)> = lat
        .subnormal_in(j)
        .iter()
        .map(|k| (k, maximal_set(lat, fs.members(), k)))
        .collect();
    tests.sort_by_key(|(k, _)| core::cmp::Reverse(*k));
    cands
        .filter(|&v| tests.iter().all(|(k, max)| max.contains(lat.meet(v, *k))))
        .collect()
}

/// Subgroups `K` Dsubnormal in the whole group for which `v ∩ K` is not
/// `F`-maximal in `K`. Reported, never asserted on.
pub fn dsubnormal_failures(dn: &Dnormality, fs: &FittingSet, v: usize) -> Vec<usize> {
    let lat = dn.lattice();
    dn.dsubnormal_in(lat.top())
        .iter()
        .filter(|&k| !maximal_set(lat, fs.members(), k).contains(lat.meet(v, k)))
        .collect()
}

/// An element `g` with `from^g = to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjugacyWitness {
    pub from: usize,
    pub to: usize,
    pub element: ElementId,
    /// Whether `element` was found inside the searched residual.
    pub in_residual: bool,
}

/// Searches `residual` first, then `ambient`, for `g` with `from^g = to`.
pub fn conjugacy_witness(
    lat: &Lattice,
    from: usize,
    to: usize,
    ambient: usize,
    residual: usize,
) -> Option<ConjugacyWitness> {
    if lat.order(from) != lat.order(to) || lat.class_of(from) != lat.class_of(to) {
        return None;
    }
    let src = lat.subgroup(from);
    let dst = lat.subgroup(to).members();
    let search = |stratum: usize, in_residual: bool| {
        lat.subgroup(stratum)
            .elements()
            .find(|&g| src.conjugate(g).members() == dst)
            .map(|element| ConjugacyWitness {
                from,
                to,
                element,
                in_residual,
            })
    };
    search(residual, true).or_else(|| search(ambient, false))
}

/// Whether `injector ∩ dnormal` is an injector of `dnormal`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntersectionVerdict {
    pub injector: usize,
    pub dnormal: usize,
    pub meet: usize,
    pub holds: bool,
}

/// For every given injector `I` and every `N` Dnormal in `j`, whether
/// `I ∩ N` is an injector of `N` for the members of `fs` inside `N`.
pub fn dnormal_intersection_check(
    dn: &Dnormality,
    fs: &FittingSet,
    j: usize,
    injectors: &[usize],
) -> Vec<IntersectionVerdict> {
    let lat = dn.lattice();
    let mut memo: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut out = Vec::new();
    for &i in injectors {
        for n in dn.dnormal_in(j).iter() {
            let inj = memo.entry(n).or_insert_with(|| injectors_bruteforce(lat, fs, n));
            let meet = lat.meet(i, n);
            out.push(IntersectionVerdict {
                injector: i,
                dnormal: n,
                meet,
                holds: inj.contains(&meet),
            });
        }
    }
    out
}

/// A concrete failure of the `N^π`-Fitting class conditions inside one
/// group of a corpus. Indices refer to that group's lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassCounterexample {
    /// `sub` is Dnormal in the class member `ambient` but is not in the class.
    Descent { source: usize, ambient: usize, sub: usize },
    /// `left` and `right` lie in the class, are Dnormal in `ambient` and
    /// generate it, but `ambient` is not in the class.
    Join {
        source: usize,
        ambient: usize,
        left: usize,
        right: usize,
    },
}

/// Checks both `N^π`-Fitting class conditions with every member of every
/// lattice as the ambient group. `source` in a counterexample indexes
/// `groups`. Finding none says nothing about the class beyond the corpus.
pub fn validate_npi_fitting_class(spec: &ClassSpec, groups: &[&Dnormality]) -> Option<ClassCounterexample> {
    groups.iter().enumerate().find_map(|(source, dn)| {
        let lat = dn.lattice();
        let tr = FittingSet::trace(lat, spec);
        (0..lat.len()).find_map(|x| {
            let dnormal = dn.dnormal_in(x);
            if tr.contains(x) {
                if let Some(sub) = dnormal.iter().find(|&n| !tr.contains(n)) {
                    return Some(ClassCounterexample::Descent {
                        source,
                        ambient: x,
                        sub,
                    });
                }
                return None;
            }
            let inside: Vec<usize> = dnormal.intersection(tr.members()).iter().collect();
            inside.iter().enumerate().find_map(|(a, &m)| {
                inside[a..].iter().find_map(|&n| {
                    (lat.join(m, n) == x).then_some(ClassCounterexample::Join {
                        source,
                        ambient: x,
                        left: m,
                        right: n,
                    })
                })
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::perm::{parse_permutation, Perm};

    fn group(degree: usize, gens: &[&str]) -> Group {
        let gens: Vec<Perm> = gens.iter().map(|g| parse_permutation(g, degree).unwrap()).collect();
        Group::generate(&gens, degree).unwrap()
    }

    fn pset(p: &[usize]) -> PrimeSet {
        PrimeSet::new(p.iter().copied()).unwrap()
    }

    fn s4() -> Group {
        group(4, &["(1 2)", "(1 2 3 4)"])
    }

    fn f21() -> Group {
        group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"])
    }

    fn orders(lat: &Lattice, v: &[usize]) -> Vec<usize> {
        v.iter().map(|&i| lat.order(i)).collect()
    }

    #[test]
    fn nilpotent_trace_of_s4() {
        let g = s4();
        let lat = Lattice::new(&g).unwrap();
        let fs = FittingSet::trace(&lat, &ClassSpec::Nilpotent);
        assert_eq!(fs.len(), 24);
        let v = validate(&lat, &fs, None);
        assert!(v.is_fitting_set());
        assert_eq!(lat.order(radical(&lat, &fs, lat.top())), 4);
        assert_eq!(orders(&lat, &injectors_bruteforce(&lat, &fs, lat.top())), vec![8, 8, 8]);
        let a4 = lat.chief_series()[2];
        let mut fm = orders(&lat, &f_maximal(&lat, &fs, a4));
        fm.sort_unstable();
        assert_eq!(fm, vec![3, 3, 3, 3, 4]);
    }

    #[test]
    fn trivial_and_all() {
        let g = s4();
        let lat = Lattice::new(&g).unwrap();
        let dn = Dnormality::new(&lat, &pset(&[2, 3])).unwrap();
        let all = FittingSet::trace(&lat, &ClassSpec::All);
        assert!(validate(&lat, &all, Some(&dn)).is_npi_fitting_set());
        assert_eq!(radical(&lat, &all, lat.top()), lat.top());
        assert_eq!(f_maximal(&lat, &all, lat.top()), vec![lat.top()]);
        assert_eq!(injectors_bruteforce(&lat, &all, lat.top()), vec![lat.top()]);

        let one = FittingSet::closure(&dn, &[0]).unwrap();
        assert_eq!(one.members().iter().collect::<Vec<_>>(), vec![0]);
        assert!(FittingSet::closure(&dn, &[]).is_err());
    }

    #[test]
    fn frobenius_npi_trace() {
        let g = f21();
        let lat = Lattice::new(&g).unwrap();
        let pi = pset(&[3, 5]);
        let dn = Dnormality::new(&lat, &pi).unwrap();
        let fs = FittingSet::trace(&lat, &ClassSpec::Npi(pi.clone()));
        let mut o = orders(&lat, &fs.members().iter().collect::<Vec<_>>());
        o.sort_unstable();
        assert_eq!(o, vec![1, 3, 3, 3, 3, 3, 3, 3, 7]);
        assert!(validate(&lat, &fs, Some(&dn)).is_npi_fitting_set());
        assert_eq!(lat.order(radical(&lat, &fs, lat.top())), 7);
        assert_eq!(f_maximal(&lat, &fs, lat.top()).len(), 8);
        let inj = injectors_bruteforce(&lat, &fs, lat.top());
        assert_eq!(orders(&lat, &inj), vec![7]);

        let c7 = inj[0];
        let closed = FittingSet::closure(&dn, &[c7]).unwrap();
        assert_eq!(closed.members().iter().collect::<Vec<_>>(), vec![0, c7]);

        for v in dnormal_intersection_check(&dn, &fs, lat.top(), &inj) {
            assert!(v.holds);
        }
    }

    #[test]
    fn wide_pi_counterexample_in_s3() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let lat = Lattice::new(&s3).unwrap();
        let dn = Dnormality::new(&lat, &pset(&[2, 3])).unwrap();
        let fs = FittingSet::trace(&lat, &ClassSpec::Nilpotent);
        let v = validate(&lat, &fs, Some(&dn));
        assert!(v.is_fitting_set());
        assert!(matches!(
            v.npi.as_ref().unwrap().fs2,
            Some(Violation::Join { join, .. }) if join == lat.top()
        ));
        let found = validate_npi_fitting_class(&ClassSpec::Nilpotent, &[&dn]);
        let Some(ClassCounterexample::Join { ambient, left, right, .. }) = found else {
            panic!("expected a join counterexample, got {found:?}");
        };
        assert_eq!(ambient, lat.top());
        assert_eq!((lat.order(left), lat.order(right)), (2, 2));
        assert_eq!(validate_npi_fitting_class(&ClassSpec::Npi(pset(&[2, 3])), &[&dn]), None);
    }

    #[test]
    fn closure_of_sylow_two_in_s4() {
        let g = s4();
        let lat = Lattice::new(&g).unwrap();
        let dn = Dnormality::new(&lat, &PrimeSet::empty()).unwrap();
        let p = lat.of_order_in(lat.top(), 8)[0];
        let closed = FittingSet::closure(&dn, &[p]).unwrap();
        let twos = FittingSet::trace(&lat, &ClassSpec::PiGroups(pset(&[2])));
        assert_eq!(closed.members(), twos.members());
        assert!(validate(&lat, &closed, Some(&dn)).is_npi_fitting_set());
    }

    #[test]
    fn radical_forms_coincide_and_pruning_agrees() {
        let g = s4();
        let lat = Lattice::new(&g).unwrap();
        for pi in [PrimeSet::empty(), pset(&[2, 3]), pset(&[3, 5])] {
            let dn = Dnormality::new(&lat, &pi).unwrap();
            let fs = FittingSet::trace(&lat, &ClassSpec::Npi(pi.clone()));
            for h in 0..lat.len() {
                let r = radical_forms(&dn, &fs, h);
                assert!(r.iter().all(|&x| x == r[0]));
                assert_eq!(injectors_bruteforce(&lat, &fs, h), injectors_pruned(&lat, &fs, h));
            }
        }
    }

    #[test]
    fn witnesses() {
        let g = s4();
        let lat = Lattice::new(&g).unwrap();
        let a4 = lat.chief_series()[2];
        let d8 = lat.of_order_in(lat.top(), 8);
        for &a in &d8 {
            for &b in &d8 {
                let w = conjugacy_witness(&lat, a, b, lat.top(), a4).unwrap();
                assert!(w.in_residual);
                assert_eq!(lat.conjugate(a, w.element), b);
            }
        }
        assert_eq!(conjugacy_witness(&lat, d8[0], d8[0], lat.top(), a4).unwrap().element, 0);
        let c3 = lat.of_order_in(lat.top(), 3)[0];
        assert_eq!(conjugacy_witness(&lat, c3, d8[0], lat.top(), a4), None);
    }

    #[test]
    fn violations_carry_witnesses() {
        let g = s4();
        let lat = Lattice::new(&g).unwrap();
        let d8 = lat.of_order_in(lat.top(), 8)[0];
        let fs = FittingSet::explicit(&lat, [0, d8]);
        let v = validate(&lat, &fs, None);
        assert!(!v.is_fitting_set());
        assert!(matches!(v.classical.fs1, Some(Violation::Descent { member, .. }) if member == d8));
        match v.classical.fs3 {
            Some(Violation::Conjugate { member, element, image }) => {
                assert_eq!(member, d8);
                assert_eq!(lat.conjugate(d8, element), image);
                assert!(!fs.contains(image));
            }
            other => panic!("expected a conjugation witness, got {other:?}"),
        }
    }
}
