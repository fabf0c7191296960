//! `N^π`-projectors and covering subgroups.
//!
//! Two independent routes to projectors: inside the parent, reading `Y/K`
//! membership off [`Dnormality::npi`]; and through [`QuotientView`]s, where
//! each `G/K` is a permutation group of its own.

use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::dnormal::Dnormality;
use crate::error::{Error, Result};
use crate::pi::{subgroup_in_class, ClassSpec};
use crate::quotient::QuotientView;
use crate::structure::Lattice;

fn maximal_of(lat: &Lattice, set: &BitSet) -> BitSet {
    let mut out = BitSet::new(lat.len());
    for c in set.iter() {
        if lat.above(c).intersection_count(set) == 1 {
            out.insert(c);
        }
    }
    out
}

/// Members `Y` of `j` with `Y/k` an `N^π`-maximal subgroup of `j/k`.
fn npi_maximal_over(dn: &Dnormality, j: usize, k: usize) -> BitSet {
    let lat = dn.lattice();
    maximal_of(lat, &dn.npi().over(k).intersection(lat.below(j)))
}

/// Projectors of member `j`: `U ≤ j` with `UK/K` `N^π`-maximal in `j/K`
/// for every `K ⊴ j`.
pub fn projectors_in(dn: &Dnormality, j: usize) -> Vec<usize> {
    let lat = dn.lattice();
    let tests: Vec<(usize, BitSet)> = lat
        .normal_in(j)
        .iter()
        .map(|k| (k, npi_maximal_over(dn, j, k)))
        .collect();
    lat.below(j)
        .iter()
        .filter(|&u| tests.iter().all(|(k, max)| max.contains(lat.join(u, *k))))
        .collect()
}

pub fn projectors(dn: &Dnormality) -> Vec<usize> {
    projectors_in(dn, dn.lattice().top())
}

/// Projectors of the whole group computed in the quotients themselves.
/// `views` must contain a view for every normal subgroup.
pub fn projectors_via_quotients(dn: &Dnormality, views: &[QuotientView]) -> Result<Vec<usize>> {
    let lat = dn.lattice();
    let spec = ClassSpec::Npi(dn.pi().clone());
    for k in lat.normal_in(lat.top()).iter() {
        if !views.iter().any(|v| v.kernel() == k) {
            return Err(Error::Precondition(alloc::format!(
                "no quotient view for the normal subgroup of order {}",
                lat.order(k)
            )));
        }
    }
    let tests: Vec<(usize, BitSet)> = views
        .iter()
        .map(|view| {
            let q = view.lattice();
            let members = BitSet::from_indices(q.len(), (0..q.len()).filter(|&x| subgroup_in_class(q.subgroup(x), &spec)));
            let pre = BitSet::from_indices(lat.len(), maximal_of(q, &members).iter().map(|x| view.preimage(x)));
            (view.kernel(), pre)
        })
        .collect();
    Ok((0..lat.len())
        .filter(|&u| tests.iter().all(|(k, pre)| pre.contains(lat.join(u, *k))))
        .collect())
}

/// Covering subgroups: `E` that is a projector of every `H` with `E ≤ H`.
pub fn covering_subgroups(dn: &Dnormality) -> Vec<usize> {
    let lat = dn.lattice();
    let proj: Vec<BitSet> = (0..lat.len())
        .map(|j| BitSet::from_indices(lat.len(), projectors_in(dn, j)))
        .collect();
    (0..lat.len())
        .filter(|&e| lat.above(e).iter().all(|h| proj[h].contains(e)))
        .collect()
}

/// The three conditions characterizing projectors of π'-soluble groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Characterization {
    pub subgroup: usize,
    pub in_npi: bool,
    pub self_dnormalizing: bool,
    /// `H ∩ X^{N^π} ≤ (X^{N^π})'` for every `X ≥ H`.
    pub star: bool,
}

impl Characterization {
    pub fn holds(&self) -> bool {
        self.in_npi && self.self_dnormalizing && self.star
    }
}

pub fn characterize(dn: &Dnormality, h: usize) -> Characterization {
    let lat = dn.lattice();
    Characterization {
        subgroup: h,
        in_npi: dn.in_npi(h),
        self_dnormalizing: dn.is_self_dnormalizing(h),
        star: lat.above(h).iter().all(|x| {
            let r = dn.residual(x);
            lat.contains(lat.derived(r), lat.meet(h, r))
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorReport {
    pub projectors: Vec<usize>,
    pub covering: Vec<usize>,
    /// One entry per lattice member.
    pub characterization: Vec<Characterization>,
}

/// Projectors by the quotient route, checked against the in-parent route,
/// with covering subgroups and the characterization of every member.
pub fn projector_report(dn: &Dnormality, views: &[QuotientView]) -> Result<ProjectorReport> {
    let lat = dn.lattice();
    let projectors = projectors_via_quotients(dn, views)?;
    if projectors != self::projectors(dn) {
        return Err(Error::Mismatch("projectors differ between the quotient and in-parent routes".into()));
    }
    Ok(ProjectorReport {
        projectors,
        covering: covering_subgroups(dn),
        characterization: (0..lat.len()).map(|h| characterize(dn, h)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::perm::{parse_permutation, Perm};
    use crate::pi::PrimeSet;

    fn group(degree: usize, gens: &[&str]) -> Group {
        let gens: Vec<Perm> = gens.iter().map(|g| parse_permutation(g, degree).unwrap()).collect();
        Group::generate(&gens, degree).unwrap()
    }

    fn views(lat: &Lattice) -> Vec<QuotientView> {
        lat.normal_in(lat.top())
            .iter()
            .map(|k| QuotientView::new(lat, k).unwrap())
            .collect()
    }

    #[test]
    fn frobenius_21_projectors_are_the_c3s() {
        let g = group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]);
        let lat = Lattice::new(&g).unwrap();
        let dn = Dnormality::new(&lat, &PrimeSet::new([3, 5]).unwrap()).unwrap();
        let report = projector_report(&dn, &views(&lat)).unwrap();
        assert_eq!(report.projectors.len(), 7);
        assert!(report.projectors.iter().all(|&p| lat.order(p) == 3));
        assert_eq!(report.covering, report.projectors);
        let passing: Vec<usize> = report
            .characterization
            .iter()
            .filter(|c| c.holds())
            .map(|c| c.subgroup)
            .collect();
        assert_eq!(passing, report.projectors);
    }

    #[test]
    fn carter_subgroups_of_s4() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&g).unwrap();
        let dn = Dnormality::new(&lat, &PrimeSet::empty()).unwrap();
        let report = projector_report(&dn, &views(&lat)).unwrap();
        assert_eq!(report.projectors, lat.of_order_in(lat.top(), 8));
        assert_eq!(report.covering, report.projectors);
    }

    #[test]
    fn npi_group_is_its_own_projector() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&g).unwrap();
        let dn = Dnormality::new(&lat, &PrimeSet::new([2, 3]).unwrap()).unwrap();
        assert_eq!(projectors(&dn), vec![lat.top()]);
        assert_eq!(projectors_via_quotients(&dn, &views(&lat)).unwrap(), vec![lat.top()]);
    }

    #[test]
    fn missing_views_are_rejected() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&g).unwrap();
        let dn = Dnormality::new(&lat, &PrimeSet::empty()).unwrap();
        assert!(matches!(projectors_via_quotients(&dn, &[]), Err(Error::Precondition(_))));
    }
}
