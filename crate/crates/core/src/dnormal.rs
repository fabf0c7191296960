//! `N^π`-Dnormality over a subgroup lattice.
//!
//! The relation is tabulated once per `(lattice, π)` from the characterization
//! through `O^π`: for `|π| ≥ 2`, `H` is Dnormal in `J` iff `O^π(H) ⊴ J` and
//! `O^π(J)` normalizes `H`; for `|π| ≤ 1` it is plain normality. The Sylow
//! form of the definition is kept alongside, evaluated on demand, so the two
//! can be compared.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::pi::{is_piprime_soluble, prime_factors, sylow_subgroups, upper_pi, ClassSections, ClassSpec, PrimeSet};
use crate::structure::Lattice;

pub struct Dnormality<'a> {
    lat: &'a Lattice,
    pi: PrimeSet,
    wide: bool,
    opi: Vec<usize>,
    dnormal_in: Vec<BitSet>,
    dsubnormal_in: Vec<BitSet>,
    npi: ClassSections,
}

impl<'a> Dnormality<'a> {
    /// Tabulates the relation and the `N^π` sections of `lat`. Fails only if
    /// the `N^π` residuals are inconsistent, which would be a bug.
    pub fn new(lat: &'a Lattice, pi: &PrimeSet) -> Result<Dnormality<'a>> {
        let n = lat.len();
        let wide = pi.size().is_none_or(|s| s >= 2);
        let opi: Vec<usize> = lat
            .subgroups()
            .iter()
            .map(|s| {
                lat.index_of(&upper_pi(s, pi))
                    .expect("O^π of a member is a member")
            })
            .collect();

        let dnormal_in: Vec<BitSet> = (0..n)
            .map(|j| {
                if !wide {
                    return lat.normal_in(j).clone();
                }
                let mut set = BitSet::new(n);
                for i in lat.below(j).iter() {
                    if lat.is_normal_in(opi[i], j) && lat.is_normal_in(i, lat.join(i, opi[j])) {
                        set.insert(i);
                    }
                }
                set
            })
            .collect();

        let dsubnormal_in = (0..n)
            .map(|j| {
                let mut set = BitSet::new(n);
                set.insert(j);
                let mut stack = vec![j];
                while let Some(k) = stack.pop() {
                    for i in dnormal_in[k].iter() {
                        if set.insert(i) {
                            stack.push(i);
                        }
                    }
                }
                set
            })
            .collect();

        Ok(Dnormality {
            lat,
            pi: pi.clone(),
            wide,
            opi,
            dnormal_in,
            dsubnormal_in,
            npi: ClassSections::new(lat, &ClassSpec::Npi(pi.clone()))?,
        })
    }

    /// `N^π` membership of sections and the `N^π` residuals.
    pub fn npi(&self) -> &ClassSections {
        &self.npi
    }

    /// Index of `x^{N^π}`.
    pub fn residual(&self, x: usize) -> usize {
        self.npi.residual(x)
    }

    pub fn in_npi(&self, x: usize) -> bool {
        self.npi.contains(x)
    }

    pub fn lattice(&self) -> &'a Lattice {
        self.lat
    }

    pub fn pi(&self) -> &PrimeSet {
        &self.pi
    }

    /// Whether `|π| ≥ 2`, i.e. whether Dnormality differs from normality.
    pub fn is_wide(&self) -> bool {
        self.wide
    }

    /// Index of `O^π(i)`.
    pub fn opi(&self, i: usize) -> usize {
        self.opi[i]
    }

    /// Members Dnormal in `j`.
    pub fn dnormal_in(&self, j: usize) -> &BitSet {
        &self.dnormal_in[j]
    }

    /// Members Dsubnormal in `j`.
    pub fn dsubnormal_in(&self, j: usize) -> &BitSet {
        &self.dsubnormal_in[j]
    }

    pub fn is_dnormal_in(&self, i: usize, j: usize) -> bool {
        self.dnormal_in[j].contains(i)
    }

    pub fn is_dnormal(&self, i: usize) -> bool {
        self.is_dnormal_in(i, self.lat.top())
    }

    pub fn is_dsubnormal_in(&self, i: usize, j: usize) -> bool {
        self.dsubnormal_in[j].contains(i)
    }

    pub fn is_dsubnormal(&self, i: usize) -> bool {
        self.is_dsubnormal_in(i, self.lat.top())
    }

    /// The definition itself: every Sylow `p`-subgroup of `j` that reduces
    /// into `i` normalizes `i`, or normalizes `O^π(i)` when `p ∈ π` and
    /// `|π| ≥ 2`. Primes not dividing `|j|` have trivial Sylow subgroups and
    /// impose nothing.
    pub fn is_dnormal_def_in(&self, i: usize, j: usize) -> bool {
        let lat = self.lat;
        if !lat.contains(j, i) {
            return false;
        }
        let h = lat.subgroup(i);
        prime_factors(lat.order(j)).into_iter().all(|(p, _)| {
            let target = if self.wide && self.pi.contains(p) {
                lat.subgroup(self.opi[i])
            } else {
                h
            };
            let p_part = PrimeSet::single(p).part(h.order());
            sylow_subgroups(lat, j, p).into_iter().all(|s| {
                let sylow = lat.subgroup(s);
                sylow.members().intersection_count(h.members()) != p_part
                    || sylow.generators().all(|g| target.is_normalized_by(g))
            })
        })
    }

    pub fn is_dnormal_def(&self, i: usize) -> bool {
        self.is_dnormal_def_in(i, self.lat.top())
    }

    /// A shortest chain `i = s_0 < s_1 < … < s_k = j` with each term Dnormal
    /// in the next, or `None` if `i` is not Dsubnormal in `j`.
    pub fn dsubnormal_chain(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        if !self.is_dsubnormal_in(i, j) {
            return None;
        }
        let n = self.lat.len();
        let mut prev = vec![usize::MAX; n];
        prev[i] = i;
        let mut queue = VecDeque::from([i]);
        while let Some(k) = queue.pop_front() {
            if k == j {
                break;
            }
            for m in self.lat.above(k).iter() {
                if m != k && prev[m] == usize::MAX && self.lat.contains(j, m) && self.is_dnormal_in(k, m) {
                    prev[m] = k;
                    queue.push_back(m);
                }
            }
        }
        let mut chain = vec![j];
        let mut k = j;
        while k != i {
            k = prev[k];
            chain.push(k);
        }
        chain.reverse();
        Some(chain)
    }

    /// `i` is Dnormal in no member of `j` strictly containing it.
    pub fn is_self_dnormalizing_in(&self, i: usize, j: usize) -> bool {
        self.lat
            .above(i)
            .iter()
            .filter(|&k| k != i && self.lat.contains(j, k))
            .all(|k| !self.is_dnormal_in(i, k))
    }

    pub fn is_self_dnormalizing(&self, i: usize) -> bool {
        self.is_self_dnormalizing_in(i, self.lat.top())
    }

    /// Maximal members among the proper Dnormal subgroups of `j`. Requires
    /// `j` to be π'-soluble.
    pub fn maximal_dnormal_subgroups_in(&self, j: usize) -> Result<Vec<usize>> {
        if !is_piprime_soluble(self.lat, j, &self.pi) {
            return Err(Error::Precondition(format!(
                "group of order {} is not {}'-soluble",
                self.lat.order(j),
                self.pi
            )));
        }
        let mut proper = self.dnormal_in[j].clone();
        proper.remove(j);
        Ok(proper
            .iter()
            .filter(|&c| {
                self.lat
                    .above(c)
                    .iter()
                    .all(|d| d == c || !proper.contains(d))
            })
            .collect())
    }

    pub fn maximal_dnormal_subgroups(&self) -> Result<Vec<usize>> {
        self.maximal_dnormal_subgroups_in(self.lat.top())
    }

    /// Dnormality of an arbitrary subgroup of the lattice's group, via the
    /// tabulated relation.
    pub fn is_dnormal_subgroup(&self, h: &Subgroup) -> Result<bool> {
        Ok(self.is_dnormal(self.lat.index_of(h)?))
    }

    pub fn is_dsubnormal_subgroup(&self, h: &Subgroup) -> Result<bool> {
        Ok(self.is_dsubnormal(self.lat.index_of(h)?))
    }
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

    fn sub(lat: &Lattice, gens: &[&str]) -> usize {
        let g = lat.group();
        let perms: Vec<Perm> = gens
            .iter()
            .map(|s| parse_permutation(s, g.degree()).unwrap())
            .collect();
        lat.index_of(&g.subgroup_from_perms(&perms).unwrap()).unwrap()
    }

    fn f21() -> Group {
        group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"])
    }

    #[test]
    fn s3_transposition() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let lat = Lattice::new(&s3).unwrap();
        let t = sub(&lat, &["(1 2)"]);

        let d = Dnormality::new(&lat, &pset(&[2, 3])).unwrap();
        assert!(d.is_dnormal_def(t));
        assert!(d.is_dnormal(t));
        assert!((0..lat.len()).all(|i| d.is_dnormal(i)));
        assert!(!d.is_self_dnormalizing(t));

        let d = Dnormality::new(&lat, &pset(&[3, 5])).unwrap();
        assert!(!d.is_dnormal_def(t));
        assert!(!d.is_dnormal(t));
    }

    #[test]
    fn frobenius_21_with_three_five() {
        let g = f21();
        let lat = Lattice::new(&g).unwrap();
        let d = Dnormality::new(&lat, &pset(&[3, 5])).unwrap();
        let c3 = sub(&lat, &["(2 3 5)(4 7 6)"]);
        let c7 = sub(&lat, &["(1 2 3 4 5 6 7)"]);
        assert!(!d.is_dnormal(c3));
        assert!(d.is_dnormal(c7));
        assert!(!d.is_dsubnormal(c3));
        assert!(d.is_self_dnormalizing(c3));
        assert_eq!(d.maximal_dnormal_subgroups().unwrap(), vec![c7]);
        assert_eq!(d.opi(lat.top()), c7);
    }

    #[test]
    fn normal_subgroups_are_dnormal_for_every_pi() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&s4).unwrap();
        for pi in [pset(&[]), pset(&[2]), pset(&[3]), pset(&[2, 3]), pset(&[3, 5])] {
            let d = Dnormality::new(&lat, &pi).unwrap();
            for i in lat.normal_in(lat.top()).iter() {
                assert!(d.is_dnormal(i) && d.is_dnormal_def(i));
            }
            for i in lat.subnormal_in(lat.top()).iter() {
                assert!(d.is_dsubnormal(i));
            }
        }
    }

    #[test]
    fn narrow_pi_is_normality() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&s4).unwrap();
        for pi in [pset(&[]), pset(&[2]), pset(&[3])] {
            let d = Dnormality::new(&lat, &pi).unwrap();
            for j in 0..lat.len() {
                assert_eq!(d.dnormal_in(j), lat.normal_in(j));
                assert_eq!(d.dsubnormal_in(j), lat.subnormal_in(j));
            }
        }
    }

    #[test]
    fn pi_group_makes_everything_dsubnormal() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&s4).unwrap();
        let d = Dnormality::new(&lat, &pset(&[2, 3])).unwrap();
        for i in 0..lat.len() {
            let chain = d.dsubnormal_chain(i, lat.top()).unwrap();
            assert_eq!(chain.first(), Some(&i));
            assert_eq!(chain.last(), Some(&lat.top()));
            for w in chain.windows(2) {
                assert!(d.is_dnormal_in(w[0], w[1]));
            }
        }
    }

    #[test]
    fn cached_upper_pi_matches_recomputation() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&s4).unwrap();
        let pi = pset(&[2]);
        let d = Dnormality::new(&lat, &pi).unwrap();
        for (i, s) in lat.subgroups().iter().enumerate() {
            assert_eq!(lat.subgroup(d.opi(i)), &upper_pi(s, &pi));
        }
        assert_eq!(lat.order(d.opi(lat.top())), 12);
    }

    #[test]
    fn maximal_dnormal_requires_piprime_solubility() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let lat = Lattice::new(&a5).unwrap();
        let d = Dnormality::new(&lat, &pset(&[2])).unwrap();
        assert!(matches!(d.maximal_dnormal_subgroups(), Err(Error::Precondition(_))));
        let d = Dnormality::new(&lat, &pset(&[2, 3, 5])).unwrap();
        assert!(d.maximal_dnormal_subgroups().is_ok());
    }

    #[test]
    fn trivial_group_has_no_proper_dnormal_subgroups() {
        let g = group(2, &[]);
        let lat = Lattice::new(&g).unwrap();
        let d = Dnormality::new(&lat, &pset(&[2, 3])).unwrap();
        assert!(d.maximal_dnormal_subgroups().unwrap().is_empty());
    }
}
