//! Brute-force reference implementations.
//!
//! Everything here works on plain sets of permutations and shares no code
//! with the lattice, so agreement between the two is meaningful. Only
//! usable on small groups.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::perm::Perm;
use crate::pi::{prime_factors, PrimeSet};

pub type PermSet = BTreeSet<Perm>;

/// The subgroup generated by `gens`, by multiplying until nothing new appears.
pub fn closure(gens: &[Perm], degree: usize) -> PermSet {
    let mut set = PermSet::new();
    set.insert(Perm::identity(degree));
    let mut frontier: Vec<Perm> = set.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.then(g);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

fn degree_of(g: &PermSet) -> usize {
    g.iter().next().map_or(0, Perm::degree)
}

fn join(a: &PermSet, b: &PermSet) -> PermSet {
    let gens: Vec<Perm> = a.union(b).cloned().collect();
    closure(&gens, degree_of(a))
}

/// Every subgroup of `g`: cyclic subgroups, then pairwise joins until no
/// new subgroup appears.
pub fn subgroups(g: &PermSet) -> BTreeSet<PermSet> {
    let degree = degree_of(g);
    let mut all: BTreeSet<PermSet> = g.iter().map(|x| closure(core::slice::from_ref(x), degree)).collect();
    loop {
        let current: Vec<&PermSet> = all.iter().collect();
        let mut fresh = BTreeSet::new();
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                let j = join(a, b);
                if !all.contains(&j) {
                    fresh.insert(j);
                }
            }
        }
        if fresh.is_empty() {
            return all;
        }
        all.extend(fresh);
    }
}

pub fn conjugate(h: &PermSet, g: &Perm) -> PermSet {
    let inv = g.inverse();
    h.iter().map(|x| inv.then(x).then(g)).collect()
}

pub fn normalizes(g: &Perm, h: &PermSet) -> bool {
    conjugate(h, g) == *h
}

pub fn is_normal_in(h: &PermSet, g: &PermSet) -> bool {
    h.is_subset(g) && g.iter().all(|x| normalizes(x, h))
}

/// `[G, G]`, generated by all commutators.
pub fn derived(g: &PermSet) -> PermSet {
    let comms: Vec<Perm> = g
        .iter()
        .flat_map(|a| g.iter().map(move |b| a.inverse().then(&b.inverse()).then(a).then(b)))
        .collect();
    closure(&comms, degree_of(g))
}

/// `O^π(G)` as the smallest normal subgroup with π-quotient, found among
/// all normal subgroups.
pub fn upper_pi_by_normals(g: &PermSet, pi: &PrimeSet) -> PermSet {
    upper_pi_among(g, &subgroups(g), pi)
}

/// As [`upper_pi_by_normals`], with `subs` any set of subgroups containing
/// those of `g`.
pub fn upper_pi_among(g: &PermSet, subs: &BTreeSet<PermSet>, pi: &PrimeSet) -> PermSet {
    subs.iter()
        .filter(|n| is_normal_in(n, g) && pi.is_number(g.len() / n.len()))
        .min_by_key(|n| n.len())
        .expect("G itself qualifies")
        .clone()
}

/// Whether a chain `h = s_0 ⊴ s_1 ⊴ … ⊴ g` exists, by depth-first search
/// through all subgroups.
pub fn is_subnormal_by_chain(h: &PermSet, g: &PermSet, subs: &BTreeSet<PermSet>) -> bool {
    if h == g {
        return true;
    }
    subs.iter()
        .filter(|s| s.len() > h.len() && s.is_subset(g) && is_normal_in(h, s))
        .any(|s| is_subnormal_by_chain(s, g, subs))
}

/// The Dnormality definition on raw sets: every Sylow `p`-subgroup of `g`
/// meeting `h` in a Sylow subgroup of `h` normalizes `h`, or `O^π(h)` when
/// `p ∈ π` and π has at least two primes. `subs` holds the subgroups of `g`.
pub fn is_dnormal_by_definition(h: &PermSet, g: &PermSet, subs: &BTreeSet<PermSet>, pi: &PrimeSet) -> bool {
    let wide = pi.size().is_none_or(|n| n >= 2);
    let opi = upper_pi_among(h, subs, pi);
    prime_factors(g.len()).into_iter().all(|(p, _)| {
        let single = PrimeSet::single(p);
        let sylow_order = single.part(g.len());
        let h_part = single.part(h.len());
        let target = if wide && pi.contains(p) { &opi } else { h };
        subs.iter()
            .filter(|s| s.len() == sylow_order)
            .filter(|s| s.intersection(h).count() == h_part)
            .all(|s| s.iter().all(|x| normalizes(x, target)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dnormal::Dnormality;
    use crate::group::{direct_product, Group};
    use crate::perm::parse_permutation;
    use crate::pi::upper_pi;
    use crate::structure::{derived_subgroup, Lattice};

    fn group(degree: usize, gens: &[&str]) -> Group {
        let gens: Vec<Perm> = gens.iter().map(|g| parse_permutation(g, degree).unwrap()).collect();
        Group::generate(&gens, degree).unwrap()
    }

    fn small_groups() -> Vec<Group> {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        alloc::vec![
            group(1, &[]),
            s3.clone(),
            group(4, &["(1 2)", "(1 2 3 4)"]),
            group(4, &["(1 2 3)", "(1 2)(3 4)"]),
            group(4, &["(1 2 3 4)", "(1 3)"]),
            group(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]),
            group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]),
            group(7, &["(1 2 3 4)(5 6 7)"]),
            direct_product(&s3, &s3).unwrap(),
        ]
    }

    fn as_set(s: &crate::group::Subgroup) -> PermSet {
        s.elements().map(|x| s.group().element(x).clone()).collect()
    }

    fn pis() -> Vec<PrimeSet> {
        alloc::vec![
            PrimeSet::empty(),
            PrimeSet::single(2),
            PrimeSet::new([2, 3]).unwrap(),
            PrimeSet::new([3, 5]).unwrap(),
            PrimeSet::new([3]).unwrap().complement(),
        ]
    }

    #[test]
    fn lattice_matches_naive_enumeration() {
        for g in small_groups() {
            let lat = Lattice::new(&g).unwrap();
            let ours: BTreeSet<PermSet> = lat.subgroups().iter().map(as_set).collect();
            assert_eq!(ours, subgroups(&as_set(&g.whole())), "{g:?}");
            assert_eq!(ours.len(), lat.len());
        }
    }

    #[test]
    fn subgroup_counts() {
        let counts: Vec<usize> = small_groups().iter().map(|g| subgroups(&as_set(&g.whole())).len()).collect();
        assert_eq!(counts[..5], [1, 6, 30, 10, 10]);
    }

    #[test]
    fn upper_pi_matches_normal_minimum() {
        for g in small_groups() {
            let lat = Lattice::new(&g).unwrap();
            for pi in pis() {
                for s in lat.subgroups() {
                    assert_eq!(as_set(&upper_pi(s, &pi)), upper_pi_by_normals(&as_set(s), &pi));
                }
            }
        }
    }

    #[test]
    fn derived_matches_commutators() {
        for g in small_groups() {
            let lat = Lattice::new(&g).unwrap();
            for s in lat.subgroups() {
                assert_eq!(as_set(&derived_subgroup(s)), derived(&as_set(s)));
            }
        }
    }

    #[test]
    fn subnormality_matches_chain_search() {
        for g in small_groups() {
            let lat = Lattice::new(&g).unwrap();
            let subs: BTreeSet<PermSet> = lat.subgroups().iter().map(as_set).collect();
            for j in 0..lat.len() {
                let gj = as_set(lat.subgroup(j));
                for i in lat.below(j).iter() {
                    let expected = is_subnormal_by_chain(&as_set(lat.subgroup(i)), &gj, &subs);
                    assert_eq!(lat.is_subnormal_in(i, j), expected);
                }
            }
        }
    }

    #[test]
    fn dnormality_matches_raw_definition() {
        for g in small_groups() {
            let lat = Lattice::new(&g).unwrap();
            let whole = as_set(&g.whole());
            let subs = subgroups(&whole);
            for pi in pis() {
                let dn = Dnormality::new(&lat, &pi).unwrap();
                for i in 0..lat.len() {
                    let expected = is_dnormal_by_definition(&as_set(lat.subgroup(i)), &whole, &subs, &pi);
                    assert_eq!(dn.is_dnormal(i), expected, "{g:?} {pi} {:?}", lat.subgroup(i));
                }
            }
        }
    }
}
