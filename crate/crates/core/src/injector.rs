//! Injectors built by descending through `N^π` residuals.
//!
//! For `j ≠ 1` with residual `K < j`: take an injector `W` of `K`, then the
//! `F`-maximal subgroups of `j` containing `W`, closed under conjugation in
//! `j`. The result is checked against the definition before it is returned.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::dnormal::Dnormality;
use crate::error::{Error, Result};
use crate::fitting::{conjugacy_witness, injectors_bruteforce, maximal_set, radical, validate, ConjugacyWitness, FittingSet};
use crate::group::ElementId;
use crate::pi::is_piprime_soluble;
use crate::projector::projectors;
use crate::structure::Lattice;

/// One level of the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub group: usize,
    /// `group^{N^π}`.
    pub residual: usize,
    /// The injector of `residual` the level starts from.
    pub base: usize,
    /// `F`-maximal subgroups of `group` containing `base`.
    pub maximal: Vec<usize>,
    pub injectors: Vec<usize>,
}

/// `V = (WP)_F` for an injector `V`, with `W` the radical of the residual.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectorMatch {
    pub injector: usize,
    /// A projector `P` realizing `V`, if any does.
    pub projector: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectorReport {
    pub injectors: Vec<usize>,
    /// Outermost level first.
    pub trace: Vec<TraceStep>,
    /// For each pair of injectors `(V, V*)`, an element `g` with `V*^g = V`,
    /// searched in the residual first.
    pub witnesses: Vec<ConjugacyWitness>,
    /// Pairs `(V*, V)` for which no conjugating element exists.
    pub unconjugated: Vec<(usize, usize)>,
    /// Present when the radical of the residual is `F`-maximal in it.
    pub projector_matches: Option<Vec<ProjectorMatch>>,
}

struct Builder<'a, 'b> {
    dn: &'b Dnormality<'a>,
    lat: &'a Lattice,
    members: &'b BitSet,
    memo: BTreeMap<usize, Vec<usize>>,
    trace: Vec<TraceStep>,
}

impl Builder<'_, '_> {
    fn injectors(&mut self, j: usize) -> Result<Vec<usize>> {
        if let Some(done) = self.memo.get(&j) {
            return Ok(done.clone());
        }
        let out = if self.lat.order(j) == 1 {
            vec![j]
        } else {
            let k = self.dn.residual(j);
            if k == j {
                return Err(Error::Precondition(format!(
                    "subgroup of order {} equals its N^π-residual",
                    self.lat.order(j)
                )));
            }
            let base = *self
                .injectors(k)?
                .first()
                .ok_or_else(|| Error::Mismatch(format!("no injector in the residual of order {}", self.lat.order(k))))?;
            let maximal: Vec<usize> = maximal_set(self.lat, self.members, j)
                .intersection(self.lat.above(base))
                .iter()
                .collect();
            let injectors = self.conjugacy_closure(j, &maximal);
            self.trace.push(TraceStep {
                group: j,
                residual: k,
                base,
                maximal,
                injectors: injectors.clone(),
            });
            injectors
        };
        self.memo.insert(j, out.clone());
        Ok(out)
    }

    fn conjugacy_closure(&self, j: usize, start: &[usize]) -> Vec<usize> {
        let gens: Vec<ElementId> = self.lat.subgroup(j).generators().collect();
        let mut set = BitSet::from_indices(self.lat.len(), start.iter().copied());
        let mut stack = start.to_vec();
        while let Some(v) = stack.pop() {
            for &g in &gens {
                let c = self.lat.conjugate(v, g);
                if set.insert(c) {
                    stack.push(c);
                }
            }
        }
        set.iter().collect()
    }
}

/// Constructs the injectors of the whole group. Requires the group to be
/// π'-soluble and `fs` to be an `N^π`-Fitting set; a disagreement with
/// [`injectors_bruteforce`] is reported as [`Error::Mismatch`].
pub fn injectors_constructive(dn: &Dnormality, fs: &FittingSet) -> Result<InjectorReport> {
    let lat = dn.lattice();
    let top = lat.top();
    if !is_piprime_soluble(lat, top, dn.pi()) {
        return Err(Error::Precondition(format!("group is not {}'-soluble", dn.pi())));
    }
    if !validate(lat, fs, Some(dn)).is_npi_fitting_set() {
        return Err(Error::Precondition(format!("not an N^π-Fitting set for π = {}", dn.pi())));
    }
    let mut b = Builder {
        dn,
        lat,
        members: fs.members(),
        memo: BTreeMap::new(),
        trace: Vec::new(),
    };
    let injectors = b.injectors(top)?;
    let mut trace = b.trace;
    trace.reverse();

    let brute = injectors_bruteforce(lat, fs, top);
    if brute != injectors {
        return Err(Error::Mismatch(format!(
            "constructed injectors {injectors:?} differ from the definition's {brute:?}"
        )));
    }

    let residual = dn.residual(top);
    let mut witnesses = Vec::new();
    let mut unconjugated = Vec::new();
    for (a, &v) in injectors.iter().enumerate() {
        for &w in &injectors[a + 1..] {
            match conjugacy_witness(lat, w, v, top, residual) {
                Some(found) => witnesses.push(found),
                None => unconjugated.push((w, v)),
            }
        }
    }

    let w = radical(lat, fs, residual);
    let projector_matches = maximal_set(lat, fs.members(), residual).contains(w).then(|| {
        let projs = projectors(dn);
        injectors
            .iter()
            .map(|&v| ProjectorMatch {
                injector: v,
                projector: projs.iter().copied().find(|&p| radical(lat, fs, lat.join(w, p)) == v),
            })
            .collect()
    });

    Ok(InjectorReport {
        injectors,
        trace,
        witnesses,
        unconjugated,
        projector_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, Group};
    use crate::perm::{parse_permutation, Perm};
    use crate::pi::{ClassSpec, PrimeSet};

    fn group(degree: usize, gens: &[&str]) -> Group {
        let gens: Vec<Perm> = gens.iter().map(|g| parse_permutation(g, degree).unwrap()).collect();
        Group::generate(&gens, degree).unwrap()
    }

    #[test]
    fn nilpotent_injectors_of_s4() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&g).unwrap();
        let dn = Dnormality::new(&lat, &PrimeSet::empty()).unwrap();
        let fs = FittingSet::trace(&lat, &ClassSpec::Nilpotent);
        let report = injectors_constructive(&dn, &fs).unwrap();
        assert_eq!(report.injectors, lat.of_order_in(lat.top(), 8));
        assert_eq!(report.witnesses.len(), 3);
        assert!(report.witnesses.iter().all(|w| w.in_residual));
        assert!(report.unconjugated.is_empty());

        let levels: Vec<(usize, usize, usize)> = report
            .trace
            .iter()
            .map(|s| (lat.order(s.group), lat.order(s.residual), lat.order(s.base)))
            .collect();
        assert_eq!(levels, vec![(24, 12, 4), (12, 4, 4), (4, 1, 1)]);

        let matches = report.projector_matches.unwrap();
        assert!(matches.iter().all(|m| m.projector.is_some()));
    }

    #[test]
    fn frobenius_21() {
        let g = group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]);
        let lat = Lattice::new(&g).unwrap();
        let pi = PrimeSet::new([3, 5]).unwrap();
        let dn = Dnormality::new(&lat, &pi).unwrap();
        let fs = FittingSet::trace(&lat, &ClassSpec::Npi(pi));
        let report = injectors_constructive(&dn, &fs).unwrap();
        assert_eq!(report.injectors.len(), 1);
        assert_eq!(lat.order(report.injectors[0]), 7);
    }

    #[test]
    fn a5_times_c7_hall_injector() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let c7 = group(7, &["(1 2 3 4 5 6 7)"]);
        let g = direct_product(&a5, &c7).unwrap();
        let lat = Lattice::new(&g).unwrap();
        let pi = PrimeSet::new([2, 3, 5]).unwrap();
        let dn = Dnormality::new(&lat, &pi).unwrap();
        let fs = FittingSet::trace(&lat, &ClassSpec::PiGroups(pi));
        let report = injectors_constructive(&dn, &fs).unwrap();
        assert_eq!(report.injectors.len(), 1);
        let v = lat.subgroup(report.injectors[0]);
        assert_eq!(v.order(), 60);
        assert!(v.elements().all(|x| (5..12).all(|p| g.element(x).apply(p) == p)));
    }

    #[test]
    fn preconditions() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let lat = Lattice::new(&a5).unwrap();
        let dn = Dnormality::new(&lat, &PrimeSet::empty()).unwrap();
        let fs = FittingSet::trace(&lat, &ClassSpec::Nilpotent);
        assert!(matches!(injectors_constructive(&dn, &fs), Err(Error::Precondition(_))));

        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let lat = Lattice::new(&s3).unwrap();
        let dn = Dnormality::new(&lat, &PrimeSet::new([2, 3]).unwrap()).unwrap();
        let fs = FittingSet::trace(&lat, &ClassSpec::Nilpotent);
        assert!(matches!(injectors_constructive(&dn, &fs), Err(Error::Precondition(_))));
    }
}
