//! Subgroup lattices and the structural predicates quantified over them.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{ElementId, Group, Subgroup};
use crate::pi::prime_factors;

/// Default bound on the order of groups whose lattice may be enumerated.
pub const DEFAULT_LATTICE_CAP: usize = 1000;

/// `true` iff `h ⊴ ambient`. `h` must lie in `ambient`.
pub fn is_normal(ambient: &Subgroup, h: &Subgroup) -> Result<bool> {
    h.is_normal_in(ambient)
}

/// Smallest normal subgroup of `ambient` containing `h`.
pub fn normal_closure(ambient: &Subgroup, h: &Subgroup) -> Result<Subgroup> {
    if !h.is_subgroup_of(ambient)? {
        return Err(Error::NotContained);
    }
    let mut n = h.clone();
    loop {
        let mut changed = false;
        for g in ambient.generators() {
            if !n.is_normalized_by(g) {
                n = n.join(&n.conjugate(g))?;
                changed = true;
            }
        }
        if !changed {
            return Ok(n);
        }
    }
}

/// Largest normal subgroup of `ambient` contained in `h`.
pub fn core(ambient: &Subgroup, h: &Subgroup) -> Result<Subgroup> {
    if !h.is_subgroup_of(ambient)? {
        return Err(Error::NotContained);
    }
    let mut c = h.clone();
    loop {
        let mut changed = false;
        for g in ambient.generators() {
            if !c.is_normalized_by(g) {
                c = c.intersect(&c.conjugate(g))?;
                changed = true;
            }
        }
        if !changed {
            return Ok(c);
        }
    }
}

/// Subnormality via the descending series of successive normal closures:
/// `X_0 = ambient`, `X_{i+1} = ⟨h^{X_i}⟩`, which stalls at `h` exactly when
/// `h` is subnormal.
pub fn is_subnormal(ambient: &Subgroup, h: &Subgroup) -> Result<bool> {
    let mut x = ambient.clone();
    loop {
        if x == *h {
            return Ok(true);
        }
        let y = normal_closure(&x, h)?;
        if y == x {
            return Ok(false);
        }
        x = y;
    }
}

/// `[x, x]`, as the normal closure of the commutators of generators.
pub fn derived_subgroup(x: &Subgroup) -> Subgroup {
    let grp = x.group();
    let gens: Vec<ElementId> = x.generators().collect();
    let mut comms = Vec::new();
    for (k, &a) in gens.iter().enumerate() {
        for &b in &gens[k + 1..] {
            comms.push(grp.commutator(a, b));
        }
    }
    let d = grp.subgroup(&comms);
    normal_closure(x, &d).expect("commutators lie in x")
}

/// Nilpotent iff, for every prime `p`, the `p`-elements form a subgroup of
/// order the `p`-part of `|x|` (i.e. every Sylow subgroup is normal).
pub fn is_nilpotent(x: &Subgroup) -> bool {
    let grp = x.group();
    prime_factors(x.order()).into_iter().all(|(p, e)| {
        let count = x
            .elements()
            .filter(|&g| is_power_of(grp.element_order(g), p))
            .count();
        count == p.pow(e)
    })
}

pub(crate) fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// The complete subgroup lattice of a group, with conjugacy classes and the
/// containment, normality and subnormality relations between members.
///
/// Members are sorted by order, then by sorted member-id list; index `0` is
/// the trivial subgroup and the last index is the whole group.
pub struct Lattice {
    group: Group,
    subs: Vec<Subgroup>,
    index: BTreeMap<BitSet, usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    below: Vec<BitSet>,
    above: Vec<BitSet>,
    normal_in: Vec<BitSet>,
    subnormal_in: Vec<BitSet>,
    derived: Vec<usize>,
}

impl Lattice {
    pub fn new(group: &Group) -> Result<Lattice> {
        Self::with_cap(group, DEFAULT_LATTICE_CAP)
    }

    pub fn with_cap(group: &Group, cap: usize) -> Result<Lattice> {
        if group.order() > cap {
            return Err(Error::LatticeCapExceeded {
                order: group.order(),
                cap,
            });
        }
        let subs = enumerate_subgroups(group);
        Ok(Self::from_subgroups(group, subs))
    }

    fn from_subgroups(group: &Group, mut subs: Vec<Subgroup>) -> Lattice {
        subs.sort();
        let n = subs.len();
        let index: BTreeMap<BitSet, usize> = subs
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members().clone(), i))
            .collect();

        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut orbit = vec![i];
            class_of[i] = c;
            let mut head = 0;
            while head < orbit.len() {
                let s = &subs[orbit[head]];
                head += 1;
                for g in group.generators() {
                    let t = index[s.conjugate(g).members()];
                    if class_of[t] == usize::MAX {
                        class_of[t] = c;
                        orbit.push(t);
                    }
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }

        let mut below = vec![BitSet::new(n); n];
        let mut above = vec![BitSet::new(n); n];
        for j in 0..n {
            for i in 0..=j {
                let (a, b) = (&subs[i], &subs[j]);
                if b.order() % a.order() == 0 && a.members().is_subset(b.members()) {
                    below[j].insert(i);
                    above[i].insert(j);
                }
            }
        }

        let mut normal_in = vec![BitSet::new(n); n];
        for j in 0..n {
            let gens: Vec<ElementId> = subs[j].generators().collect();
            for i in below[j].iter() {
                if gens.iter().all(|&g| subs[i].is_normalized_by(g)) {
                    normal_in[j].insert(i);
                }
            }
        }

        let mut subnormal_in = vec![BitSet::new(n); n];
        for (j, set) in subnormal_in.iter_mut().enumerate() {
            set.insert(j);
            let mut stack = vec![j];
            while let Some(k) = stack.pop() {
                for i in normal_in[k].iter() {
                    if set.insert(i) {
                        stack.push(i);
                    }
                }
            }
        }

        let derived = subs
            .iter()
            .map(|s| index[derived_subgroup(s).members()])
            .collect();

        Lattice {
            group: group.clone(),
            subs,
            index,
            classes,
            class_of,
            below,
            above,
            normal_in,
            subnormal_in,
            derived,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subs
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subs[i]
    }

    pub fn order(&self, i: usize) -> usize {
        self.subs[i].order()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.subs.len() - 1
    }

    pub fn index_of(&self, s: &Subgroup) -> Result<usize> {
        if !s.group().ptr_eq(&self.group) {
            return Err(Error::MixedParents);
        }
        self.index_of_members(s.members()).ok_or(Error::NotInLattice)
    }

    pub fn index_of_members(&self, members: &BitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Members contained in `j` (including `j`).
    pub fn below(&self, j: usize) -> &BitSet {
        &self.below[j]
    }

    /// Members containing `i` (including `i`).
    pub fn above(&self, i: usize) -> &BitSet {
        &self.above[i]
    }

    pub fn contains(&self, outer: usize, inner: usize) -> bool {
        self.below[outer].contains(inner)
    }

    /// Members normal in `j`.
    pub fn normal_in(&self, j: usize) -> &BitSet {
        &self.normal_in[j]
    }

    /// Members subnormal in `j`.
    pub fn subnormal_in(&self, j: usize) -> &BitSet {
        &self.subnormal_in[j]
    }

    pub fn is_normal_in(&self, i: usize, j: usize) -> bool {
        self.normal_in[j].contains(i)
    }

    pub fn is_subnormal_in(&self, i: usize, j: usize) -> bool {
        self.subnormal_in[j].contains(i)
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.is_normal_in(i, self.top())
    }

    pub fn is_subnormal(&self, i: usize) -> bool {
        self.is_subnormal_in(i, self.top())
    }

    /// `⟨i, j⟩`: the smallest member containing both.
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.above[i]
            .first_common(&self.above[j])
            .expect("whole group contains everything")
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(0, |acc, i| self.join(acc, i))
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        if self.contains(j, i) {
            return i;
        }
        if self.contains(i, j) {
            return j;
        }
        let m = self.subs[i].members().intersection(self.subs[j].members());
        self.index[&m]
    }

    pub fn conjugate(&self, i: usize, g: ElementId) -> usize {
        self.index[self.subs[i].conjugate(g).members()]
    }

    /// Index of `[i, i]`.
    pub fn derived(&self, i: usize) -> usize {
        self.derived[i]
    }

    /// Members of `j` of order `n`.
    pub fn of_order_in(&self, j: usize, n: usize) -> Vec<usize> {
        self.below[j].iter().filter(|&k| self.order(k) == n).collect()
    }

    /// Chief series of member `j`: a maximal chain of normal subgroups of
    /// `j`, starting at the trivial subgroup and ending at `j`. At each step
    /// the smallest (then first) normal subgroup strictly above is chosen.
    pub fn chief_series_of(&self, j: usize) -> Vec<usize> {
        let mut series = vec![0];
        let mut cur = 0;
        while cur != j {
            cur = self.normal_in[j]
                .iter()
                .find(|&k| k != cur && self.contains(k, cur))
                .expect("j is normal in itself");
            series.push(cur);
        }
        series
    }

    pub fn chief_series(&self) -> Vec<usize> {
        self.chief_series_of(self.top())
    }

    /// Minimal normal subgroups of the whole group.
    pub fn minimal_normals(&self) -> Vec<usize> {
        let top = self.top();
        self.normal_in[top]
            .iter()
            .filter(|&k| {
                k != 0
                    && self.normal_in[top]
                        .iter()
                        .all(|m| m == 0 || m == k || !self.contains(k, m))
            })
            .collect()
    }

    /// Order of each element modulo member `k`, indexed by element id.
    pub fn orders_modulo(&self, k: usize) -> Vec<u32> {
        let members = self.subs[k].members();
        (0..self.group.order())
            .map(|x| self.group.order_modulo(x, members) as u32)
            .collect()
    }
}

/// Cyclic-extension enumeration: start from all cyclic subgroups and extend
/// every newly found subgroup by every cyclic generator until nothing new
/// appears.
fn enumerate_subgroups(group: &Group) -> Vec<Subgroup> {
    let mut found: BTreeMap<BitSet, Subgroup> = BTreeMap::new();
    let trivial = group.trivial();
    found.insert(trivial.members().clone(), trivial);

    let mut cyclic_gens = Vec::new();
    let mut layer = Vec::new();
    for x in 1..group.order() {
        let c = group.subgroup(&[x]);
        if !found.contains_key(c.members()) {
            cyclic_gens.push(x);
            found.insert(c.members().clone(), c.clone());
            layer.push(c);
        }
    }

    while !layer.is_empty() {
        let mut next = Vec::new();
        for s in &layer {
            for &c in &cyclic_gens {
                if s.contains(c) {
                    continue;
                }
                let j = s.extend(&[c]);
                if !found.contains_key(j.members()) {
                    found.insert(j.members().clone(), j.clone());
                    next.push(j);
                }
            }
        }
        layer = next;
    }
    found.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{parse_permutation, Perm};

    fn group(degree: usize, gens: &[&str]) -> Group {
        let gens: Vec<Perm> = gens.iter().map(|g| parse_permutation(g, degree).unwrap()).collect();
        Group::generate(&gens, degree).unwrap()
    }

    fn sub(g: &Group, gens: &[&str]) -> Subgroup {
        let perms: Vec<Perm> = gens.iter().map(|s| parse_permutation(s, g.degree()).unwrap()).collect();
        g.subgroup_from_perms(&perms).unwrap()
    }

    #[test]
    fn s3_lattice() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let lat = Lattice::new(&s3).unwrap();
        assert_eq!(lat.len(), 6);
        assert_eq!(lat.conjugacy_classes().len(), 4);
        let orders: Vec<usize> = (0..6).map(|i| lat.order(i)).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(lat.class_of(1), lat.class_of(3));
    }

    #[test]
    fn s4_lattice() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&s4).unwrap();
        assert_eq!(lat.len(), 30);
        assert_eq!(lat.conjugacy_classes().len(), 11);
        let chief: Vec<usize> = lat.chief_series().iter().map(|&i| lat.order(i)).collect();
        assert_eq!(chief, vec![1, 4, 12, 24]);
        assert_eq!(lat.minimal_normals().len(), 1);
    }

    #[test]
    fn trivial_lattice() {
        let t = Group::generate(&[], 2).unwrap();
        let lat = Lattice::new(&t).unwrap();
        assert_eq!(lat.len(), 1);
        assert_eq!(lat.top(), lat.bottom());
        assert_eq!(lat.chief_series(), vec![0]);
    }

    #[test]
    fn lattice_cap() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        assert!(matches!(
            Lattice::with_cap(&s4, 10),
            Err(Error::LatticeCapExceeded { order: 24, cap: 10 })
        ));
    }

    #[test]
    fn core_and_normal_closure() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let t = sub(&s3, &["(1 2)"]);
        assert!(core(&s3.whole(), &t).unwrap().is_trivial());
        assert_eq!(normal_closure(&s3.whole(), &t).unwrap(), s3.whole());

        let c3 = sub(&s3, &["(1 2 3)"]);
        assert_eq!(core(&s3.whole(), &c3).unwrap(), c3);
        assert_eq!(normal_closure(&s3.whole(), &c3).unwrap(), c3);

        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let d = sub(&s4, &["(1 2)(3 4)"]);
        assert_eq!(normal_closure(&s4.whole(), &d).unwrap().order(), 4);
    }

    #[test]
    fn subnormality() {
        let q8 = group(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]);
        assert_eq!(q8.order(), 8);
        let lat = Lattice::new(&q8).unwrap();
        for s in lat.subgroups() {
            assert!(is_subnormal(&q8.whole(), s).unwrap());
            assert!(is_normal(&q8.whole(), s).unwrap());
        }

        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let t = sub(&s3, &["(1 2)"]);
        assert!(!is_subnormal(&s3.whole(), &t).unwrap());
        assert!(is_subnormal(&s3.whole(), &s3.whole()).unwrap());
        assert!(is_subnormal(&s3.whole(), &s3.trivial()).unwrap());

        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let c2 = sub(&s4, &["(1 2)(3 4)"]);
        assert!(is_subnormal(&s4.whole(), &c2).unwrap());
        assert!(!is_normal(&s4.whole(), &c2).unwrap());
    }

    #[test]
    fn derived_subgroups() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let d = derived_subgroup(&s4.whole());
        assert_eq!(d.order(), 12);
        assert_eq!(derived_subgroup(&d).order(), 4);
        let c12 = group(7, &["(1 2 3 4)(5 6 7)"]);
        assert!(derived_subgroup(&c12.whole()).is_trivial());
    }

    #[test]
    fn nilpotence() {
        let q8 = group(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]);
        assert!(is_nilpotent(&q8.whole()));
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        assert!(!is_nilpotent(&s3.whole()));
        assert!(is_nilpotent(&s3.trivial()));
    }
}
