//! Permutation groups with a fully enumerated, canonically ordered element
//! table, and subgroups identified by their element-id sets.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default bound on the order of a generated group.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Groups up to this order get a precomputed multiplication table.
const TABLE_LIMIT: usize = 1024;

/// Index of an element in its group's canonical element table.
pub type ElementId = usize;

/// A finite permutation group.
///
/// Elements are stored sorted by their image lists, so element `0` is always
/// the identity. Cloning is cheap; clones compare equal as the same parent.
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

struct GroupData {
    name: Option<String>,
    degree: usize,
    generators: Vec<u32>,
    elements: Vec<Perm>,
    /// Points whose images determine an element uniquely.
    base: Vec<usize>,
    /// Base images of every element, sorted, with the owning element id.
    keys: Vec<(Vec<u32>, u32)>,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
}

impl Group {
    /// Closes `generators` under composition. All generators must share one
    /// degree; an empty list yields the trivial group on `degree` points.
    pub fn generate(generators: &[Perm], degree: usize) -> Result<Group> {
        Self::generate_with_cap(generators, degree, DEFAULT_ORDER_CAP)
    }

    pub fn generate_with_cap(generators: &[Perm], degree: usize, cap: usize) -> Result<Group> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gens: Vec<&Perm> = generators.iter().filter(|g| !g.is_identity()).collect();
        let identity = Perm::identity(degree);
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        seen.insert(identity.clone());
        let mut queue = vec![identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            for g in &gens {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    seen.insert(y.clone());
                    queue.push(y);
                }
            }
        }
        Ok(Self::from_sorted_elements(
            seen.into_iter().collect(),
            generators,
            degree,
        ))
    }

    /// Builds a group from its complete, sorted, duplicate-free element list.
    pub(crate) fn from_sorted_elements(elements: Vec<Perm>, generators: &[Perm], degree: usize) -> Group {
        let n = elements.len();
        debug_assert!(elements[0].is_identity());

        let mut base = Vec::new();
        let mut stab: Vec<usize> = (1..n).collect();
        while let Some(&e) = stab.first() {
            let moved = (0..degree)
                .find(|&x| stab.iter().any(|&i| elements[i].apply(x) != x))
                .unwrap_or_else(|| panic!("non-identity element {e} fixes every point"));
            base.push(moved);
            stab.retain(|&i| elements[i].apply(moved) == moved);
        }

        let mut keys: Vec<(Vec<u32>, u32)> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (base.iter().map(|&b| p.images()[b]).collect(), i as u32))
            .collect();
        keys.sort_unstable();

        let mut data = GroupData {
            name: None,
            degree,
            generators: Vec::new(),
            elements,
            base,
            keys,
            table: None,
            inverses: Vec::new(),
            orders: Vec::new(),
        };
        data.generators = generators
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| data.lookup(g).expect("generator in closure") as u32)
            .collect();
        data.generators.sort_unstable();
        data.generators.dedup();

        if n <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(n * n);
            let mut key = vec![0u32; data.base.len()];
            for a in &data.elements {
                for b in &data.elements {
                    for (k, &x) in data.base.iter().enumerate() {
                        key[k] = b.images()[a.apply(x)];
                    }
                    table.push(data.id_of_key(&key));
                }
            }
            data.table = Some(table);
        }
        data.inverses = data
            .elements
            .iter()
            .map(|p| data.lookup(&p.inverse()).expect("inverse in group") as u32)
            .collect();
        data.orders = (0..n)
            .map(|i| {
                let mut x = i;
                let mut k = 1;
                while x != 0 {
                    x = data.mul(x, i);
                    k += 1;
                }
                k
            })
            .collect();
        Group(Arc::new(data))
    }

    pub fn with_name(self, name: impl Into<String>) -> Group {
        let mut data = Arc::try_unwrap(self.0).unwrap_or_else(|arc| GroupData {
            name: arc.name.clone(),
            degree: arc.degree,
            generators: arc.generators.clone(),
            elements: arc.elements.clone(),
            base: arc.base.clone(),
            keys: arc.keys.clone(),
            table: arc.table.clone(),
            inverses: arc.inverses.clone(),
            orders: arc.orders.clone(),
        });
        data.name = Some(name.into());
        Group(Arc::new(data))
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn order(&self) -> usize {
        self.0.elements.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.0.generators.iter().map(|&g| g as usize)
    }

    pub fn element(&self, id: ElementId) -> &Perm {
        &self.0.elements[id]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.0.elements
    }

    /// Id of a permutation, or `None` if it is not in the group.
    pub fn id_of(&self, p: &Perm) -> Option<ElementId> {
        if p.degree() != self.degree() {
            return None;
        }
        self.0.lookup(p)
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.0.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.0.inverses[a] as usize
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: ElementId, g: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: ElementId) -> usize {
        self.0.orders[a] as usize
    }

    pub fn pow(&self, a: ElementId, e: usize) -> ElementId {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    /// Smallest `e >= 1` with `a^e` in `k`. `k` must contain the identity.
    pub fn order_modulo(&self, a: ElementId, k: &BitSet) -> usize {
        let mut x = a;
        let mut e = 1;
        while !k.contains(x) {
            x = self.mul(x, a);
            e += 1;
        }
        e
    }

    pub fn ptr_eq(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            group: self.clone(),
            members: BitSet::full(self.order()),
            order: self.order(),
            gens: self.0.generators.clone(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup {
            group: self.clone(),
            members: BitSet::from_indices(self.order(), [0]),
            order: 1,
            gens: Vec::new(),
        }
    }

    /// Subgroup generated by the given element ids.
    pub fn subgroup(&self, gens: &[ElementId]) -> Subgroup {
        let mut members = BitSet::new(self.order());
        members.insert(0);
        let mut list = vec![0];
        self.close(&mut members, &mut list, gens);
        let mut g: Vec<u32> = gens.iter().filter(|&&x| x != 0).map(|&x| x as u32).collect();
        g.sort_unstable();
        g.dedup();
        Subgroup {
            group: self.clone(),
            order: list.len(),
            members,
            gens: g,
        }
    }

    /// Subgroup generated by permutations, which must lie in the group.
    pub fn subgroup_from_perms(&self, perms: &[Perm]) -> Result<Subgroup> {
        let ids = perms
            .iter()
            .map(|p| self.id_of(p).ok_or(Error::NotContained))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup(&ids))
    }

    /// Builds a subgroup from a member set already known to be closed.
    pub(crate) fn subgroup_from_members(&self, members: BitSet) -> Subgroup {
        let gens = self.greedy_generators(&members);
        Subgroup {
            group: self.clone(),
            order: members.count(),
            members,
            gens: gens.into_iter().map(|x| x as u32).collect(),
        }
    }

    /// Subgroup with the given member set, or `None` if the set is not closed.
    pub fn subgroup_if_closed(&self, members: &BitSet) -> Option<Subgroup> {
        if !members.contains(0) {
            return None;
        }
        let target = members.count();
        let mut closure = BitSet::new(self.order());
        closure.insert(0);
        let mut list = vec![0];
        let mut gens = Vec::new();
        for x in members.iter() {
            if closure.contains(x) {
                continue;
            }
            gens.push(x);
            self.close(&mut closure, &mut list, &gens);
            if list.len() > target || !closure.is_subset(members) {
                return None;
            }
        }
        Some(Subgroup {
            group: self.clone(),
            order: list.len(),
            members: closure,
            gens: gens.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Extends `members`/`list` (a set containing the identity) to its
    /// closure under right multiplication by `gens`.
    fn close(&self, members: &mut BitSet, list: &mut Vec<usize>, gens: &[ElementId]) {
        // Previously processed elements must be revisited for new generators.
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    list.push(y);
                }
            }
        }
    }

    /// Deterministic irredundant generating set of a closed member set:
    /// elements are tried by decreasing order, then increasing id.
    pub fn greedy_generators(&self, members: &BitSet) -> Vec<ElementId> {
        let mut candidates: Vec<usize> = members.iter().filter(|&x| x != 0).collect();
        candidates.sort_by_key(|&x| (core::cmp::Reverse(self.element_order(x)), x));
        let target = members.count();
        let mut closure = BitSet::new(self.order());
        closure.insert(0);
        let mut list = vec![0];
        let mut gens = Vec::new();
        for x in candidates {
            if list.len() == target {
                break;
            }
            if closure.contains(x) {
                continue;
            }
            gens.push(x);
            self.close(&mut closure, &mut list, &gens);
        }
        gens.sort_unstable();
        gens
    }
}

impl GroupData {
    fn id_of_key(&self, key: &[u32]) -> u32 {
        let pos = self
            .keys
            .binary_search_by(|(k, _)| k.as_slice().cmp(key))
            .expect("product stays in group");
        self.keys[pos].1
    }

    fn lookup(&self, p: &Perm) -> Option<usize> {
        let key: Vec<u32> = self.base.iter().map(|&b| p.images()[b]).collect();
        let pos = self
            .keys
            .binary_search_by(|(k, _)| k.as_slice().cmp(&key))
            .ok()?;
        let id = self.keys[pos].1 as usize;
        (self.elements[id] == *p).then_some(id)
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        let n = self.elements.len();
        match &self.table {
            Some(t) => t[a * n + b] as usize,
            None => {
                let (pa, pb) = (&self.elements[a], &self.elements[b]);
                let key: Vec<u32> = self.base.iter().map(|&x| pb.images()[pa.apply(x)]).collect();
                self.id_of_key(&key) as usize
            }
        }
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name())
            .field("degree", &self.degree())
            .field("order", &self.order())
            .finish()
    }
}

/// Direct product acting on `G1.degree() + G2.degree()` points, the first
/// factor on the leading block.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    direct_product_with_cap(a, b, DEFAULT_ORDER_CAP)
}

pub fn direct_product_with_cap(a: &Group, b: &Group, cap: usize) -> Result<Group> {
    if a.order().saturating_mul(b.order()) > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let (da, db) = (a.degree(), b.degree());
    let degree = da + db;
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<u32> = a.element(g).images().to_vec();
        images.extend((da..degree).map(|x| x as u32));
        gens.push(Perm::from_images_unchecked(images));
    }
    for g in b.generators() {
        let mut images: Vec<u32> = (0..da as u32).collect();
        images.extend(b.element(g).images().iter().map(|&x| x + da as u32));
        gens.push(Perm::from_images_unchecked(images));
    }
    Group::generate_with_cap(&gens, degree, cap)
}

/// A subgroup of a fixed parent group.
///
/// Equality is equality of member sets within the same parent. The order is
/// by subgroup order, then lexicographically by sorted member ids.
#[derive(Clone)]
pub struct Subgroup {
    group: Group,
    members: BitSet,
    order: usize,
    gens: Vec<u32>,
}

impl Subgroup {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.contains(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.iter()
    }

    /// A generating set (not necessarily minimal) of the subgroup.
    pub fn generators(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.gens.iter().map(|&g| g as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.group.order()
    }

    /// Deterministic irredundant generating set, used for reports.
    pub fn canonical_generators(&self) -> Vec<Perm> {
        self.group
            .greedy_generators(&self.members)
            .into_iter()
            .map(|g| self.group.element(g).clone())
            .collect()
    }

    fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.group.ptr_eq(&other.group) {
            Ok(())
        } else {
            Err(Error::MixedParents)
        }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        self.check_parent(other)?;
        Ok(self.order <= other.order
            && other.order.is_multiple_of(self.order)
            && self.members.is_subset(&other.members))
    }

    /// Smallest subgroup containing both operands.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        if other.members.is_subset(&self.members) {
            return Ok(self.clone());
        }
        if self.members.is_subset(&other.members) {
            return Ok(other.clone());
        }
        Ok(self.extend(&other.gens.iter().map(|&g| g as usize).collect::<Vec<_>>()))
    }

    /// `⟨self, extra⟩`.
    pub fn extend(&self, extra: &[ElementId]) -> Subgroup {
        let extra: Vec<usize> = extra.iter().copied().filter(|&x| !self.contains(x)).collect();
        if extra.is_empty() {
            return self.clone();
        }
        let mut gens: Vec<usize> = self.generators().collect();
        gens.extend(extra);
        let mut members = self.members.clone();
        let mut list: Vec<usize> = self.members.iter().collect();
        self.group.close(&mut members, &mut list, &gens);
        gens.sort_unstable();
        gens.dedup();
        Subgroup {
            group: self.group.clone(),
            order: list.len(),
            members,
            gens: gens.into_iter().map(|x| x as u32).collect(),
        }
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        if self.members.is_subset(&other.members) {
            return Ok(self.clone());
        }
        if other.members.is_subset(&self.members) {
            return Ok(other.clone());
        }
        Ok(self.group.subgroup_from_members(self.members.intersection(&other.members)))
    }

    /// `self^g = g⁻¹ self g`.
    pub fn conjugate(&self, g: ElementId) -> Subgroup {
        let grp = &self.group;
        let mut members = BitSet::new(grp.order());
        for x in self.members.iter() {
            members.insert(grp.conj(x, g));
        }
        Subgroup {
            group: grp.clone(),
            members,
            order: self.order,
            gens: self.gens.iter().map(|&x| grp.conj(x as usize, g) as u32).collect(),
        }
    }

    /// Whether `g` normalizes `self`.
    pub fn is_normalized_by(&self, g: ElementId) -> bool {
        self.gens
            .iter()
            .all(|&x| self.members.contains(self.group.conj(x as usize, g)))
    }

    /// `N_ambient(self) = {g ∈ ambient : self^g = self}`.
    pub fn normalizer_in(&self, ambient: &Subgroup) -> Result<Subgroup> {
        self.check_parent(ambient)?;
        let mut members = BitSet::new(self.group.order());
        for g in ambient.elements() {
            if self.is_normalized_by(g) {
                members.insert(g);
            }
        }
        Ok(self.group.subgroup_from_members(members))
    }

    /// Whether every generator of `ambient` normalizes `self`.
    pub fn is_normal_in(&self, ambient: &Subgroup) -> Result<bool> {
        if !self.is_subgroup_of(ambient)? {
            return Err(Error::NotContained);
        }
        Ok(ambient.generators().all(|g| self.is_normalized_by(g)))
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group.ptr_eq(&other.group) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.iter().cmp(other.members.iter()))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, g) in self.canonical_generators().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> (order {})", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    fn perms(degree: usize, gens: &[&str]) -> Vec<Perm> {
        gens.iter().map(|g| parse_permutation(g, degree).unwrap()).collect()
    }

    fn sym(n: usize) -> Group {
        let cycle: String = {
            let mut s = String::from("(");
            for i in 1..=n {
                if i > 1 {
                    s.push(' ');
                }
                s.push_str(&alloc::format!("{i}"));
            }
            s.push(')');
            s
        };
        Group::generate(&perms(n, &["(1 2)", &cycle]), n).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        assert_eq!(sym(3).order(), 6);
        assert_eq!(sym(4).order(), 24);
        let s3 = Group::generate(&perms(3, &["(1 2)", "(1 2 3)"]), 3).unwrap();
        assert_eq!(s3.order(), 6);
    }

    #[test]
    fn trivial_generation() {
        assert_eq!(Group::generate(&[], 3).unwrap().order(), 1);
        assert_eq!(Group::generate(&perms(3, &["()"]), 3).unwrap().order(), 1);
    }

    #[test]
    fn identity_is_element_zero_and_table_consistent() {
        let g = sym(4);
        assert!(g.element(0).is_identity());
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..g.order() {
                let expect = g.element(a).then(g.element(b));
                assert_eq!(g.element(g.mul(a, b)), &expect);
            }
        }
    }

    #[test]
    fn order_cap_is_enforced() {
        let gens = perms(5, &["(1 2)", "(1 2 3 4 5)"]);
        assert!(matches!(
            Group::generate_with_cap(&gens, 5, 100),
            Err(Error::OrderCapExceeded { cap: 100 })
        ));
    }

    #[test]
    fn degree_mismatch() {
        let gens = [parse_permutation("(1 2)", 2).unwrap(), parse_permutation("(1 2 3)", 3).unwrap()];
        assert!(matches!(Group::generate(&gens, 3), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn join_of_two_transpositions_is_s3() {
        let s3 = sym(3);
        let a = s3.subgroup_from_perms(&perms(3, &["(1 2)"])).unwrap();
        let b = s3.subgroup_from_perms(&perms(3, &["(1 3)"])).unwrap();
        assert_eq!(a.join(&b).unwrap(), s3.whole());
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.conjugate(0), a);
        assert!(a.intersect(&b).unwrap().is_trivial());
    }

    #[test]
    fn sylow_two_of_s4_is_self_normalizing() {
        let s4 = sym(4);
        let d8 = s4
            .subgroup_from_perms(&perms(4, &["(1 2)", "(3 4)", "(1 3 2 4)"]))
            .unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.normalizer_in(&s4.whole()).unwrap(), d8);
    }

    #[test]
    fn direct_products() {
        let c2 = Group::generate(&perms(2, &["(1 2)"]), 2).unwrap();
        let c3 = Group::generate(&perms(3, &["(1 2 3)"]), 3).unwrap();
        let p = direct_product(&c2, &c3).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.degree(), 5);
        let a5 = Group::generate(&perms(5, &["(1 2 3 4 5)", "(1 2 3)"]), 5).unwrap();
        let c7 = Group::generate(&perms(7, &["(1 2 3 4 5 6 7)"]), 7).unwrap();
        assert_eq!(direct_product(&a5, &c7).unwrap().order(), 420);
        let triv = Group::generate(&[], 1).unwrap();
        assert_eq!(direct_product(&sym(4), &triv).unwrap().order(), 24);
    }

    #[test]
    fn mixed_parents_rejected() {
        let a = sym(3);
        let b = sym(3);
        assert!(matches!(a.whole().join(&b.whole()), Err(Error::MixedParents)));
        assert!(matches!(a.whole().intersect(&b.trivial()), Err(Error::MixedParents)));
        assert_eq!(a.trivial().is_subgroup_of(&b.whole()), Err(Error::MixedParents));
    }

    #[test]
    fn subgroup_if_closed_detects_non_subgroups() {
        let s3 = sym(3);
        let t = s3.id_of(&parse_permutation("(1 2)", 3).unwrap()).unwrap();
        let u = s3.id_of(&parse_permutation("(1 3)", 3).unwrap()).unwrap();
        assert!(s3.subgroup_if_closed(&BitSet::from_indices(6, [0, t])).is_some());
        assert!(s3.subgroup_if_closed(&BitSet::from_indices(6, [0, t, u])).is_none());
        assert!(s3.subgroup_if_closed(&BitSet::from_indices(6, [t])).is_none());
    }

    #[test]
    fn subgroup_ordering_is_by_order_then_members() {
        let s3 = sym(3);
        let t = s3.subgroup_from_perms(&perms(3, &["(1 2)"])).unwrap();
        let c3 = s3.subgroup_from_perms(&perms(3, &["(1 2 3)"])).unwrap();
        assert!(s3.trivial() < t);
        assert!(t < c3);
        assert!(c3 < s3.whole());
    }
}
