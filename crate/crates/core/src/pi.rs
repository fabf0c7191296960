//! Prime sets and everything indexed by them: π-parts, `O_π`, `O^π`, Hall
//! subgroups, π-separability, the class `N^π` and its residual.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::structure::{is_power_of, Lattice};

/// Prime factorization as `(p, e)` pairs in increasing `p`.
pub fn prime_factors(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && prime_factors(n) == [(n, 1)]
}

/// A set of primes `π`, or the complement `π'` of a finite one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSet {
    primes: Vec<usize>,
    complement: bool,
}

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = usize>) -> Result<PrimeSet> {
        let mut primes: Vec<usize> = primes.into_iter().collect();
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::Precondition(alloc::format!("{bad} is not prime")));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(PrimeSet {
            primes,
            complement: false,
        })
    }

    pub fn empty() -> PrimeSet {
        PrimeSet {
            primes: Vec::new(),
            complement: false,
        }
    }

    pub fn single(p: usize) -> PrimeSet {
        assert!(is_prime(p), "{p} is not prime");
        PrimeSet {
            primes: alloc::vec![p],
            complement: false,
        }
    }

    /// `π'` for `π`, and back.
    pub fn complement(&self) -> PrimeSet {
        PrimeSet {
            primes: self.primes.clone(),
            complement: !self.complement,
        }
    }

    pub fn is_complement(&self) -> bool {
        self.complement
    }

    /// The listed primes: `π` itself, or the `π` whose complement this is.
    pub fn listed(&self) -> &[usize] {
        &self.primes
    }

    /// `|π|`, or `None` for a cofinite set.
    pub fn size(&self) -> Option<usize> {
        (!self.complement).then_some(self.primes.len())
    }

    pub fn contains(&self, p: usize) -> bool {
        self.primes.binary_search(&p).is_ok() != self.complement
    }

    /// Every prime divisor of `n` lies in the set.
    pub fn is_number(&self, n: usize) -> bool {
        prime_factors(n).iter().all(|&(p, _)| self.contains(p))
    }

    /// Largest divisor of `n` that is a number over this set.
    pub fn part(&self, n: usize) -> usize {
        prime_factors(n)
            .iter()
            .filter(|&&(p, _)| self.contains(p))
            .map(|&(p, e)| p.pow(e))
            .product()
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.primes.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")?;
        if self.complement {
            f.write_str("'")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn is_pi_number(n: usize, pi: &PrimeSet) -> bool {
    pi.is_number(n)
}

pub fn pi_part(n: usize, pi: &PrimeSet) -> usize {
    pi.part(n)
}

/// A group class with a closed-form membership test.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClassSpec {
    All,
    Trivial,
    Nilpotent,
    /// `E_π`: all π-groups.
    PiGroups(PrimeSet),
    /// `N_{π'}`: nilpotent π'-groups, for the given `π`.
    NilpotentPiPrime(PrimeSet),
    /// `N^π = E_π × N_{π'}`.
    Npi(PrimeSet),
    Intersection(Vec<ClassSpec>),
    /// Groups `A × B` with `A` the normal Hall π-subgroup lying in the first
    /// class and `B` the normal Hall π'-subgroup lying in the second.
    Product(PrimeSet, Box<ClassSpec>, Box<ClassSpec>),
}

impl ClassSpec {
    /// `N^π` spelled out as a product.
    pub fn npi_as_product(pi: &PrimeSet) -> ClassSpec {
        ClassSpec::Product(
            pi.clone(),
            Box::new(ClassSpec::PiGroups(pi.clone())),
            Box::new(ClassSpec::NilpotentPiPrime(pi.clone())),
        )
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::All => f.write_str("all"),
            ClassSpec::Trivial => f.write_str("trivial"),
            ClassSpec::Nilpotent => f.write_str("nilpotent"),
            ClassSpec::PiGroups(pi) => write!(f, "epi{pi}"),
            ClassSpec::NilpotentPiPrime(pi) => write!(f, "npiprime{pi}"),
            ClassSpec::Npi(pi) => write!(f, "npi{pi}"),
            ClassSpec::Intersection(parts) => {
                f.write_str("meet(")?;
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            ClassSpec::Product(pi, a, b) => write!(f, "product{pi}({a};{b})"),
        }
    }
}

/// The section `top / bottom` of a group, described by the member set of
/// `top` and the order of each element modulo `bottom`.
pub(crate) struct Section<'a> {
    pub group: &'a Group,
    pub top: &'a BitSet,
    pub top_order: usize,
    pub bottom_order: usize,
    pub orders: &'a [u32],
}

impl Section<'_> {
    fn index(&self) -> usize {
        self.top_order / self.bottom_order
    }

    /// Number of cosets whose order satisfies `pred`.
    fn count_cosets(&self, pred: impl Fn(usize) -> bool) -> usize {
        self.top
            .iter()
            .filter(|&x| pred(self.orders[x] as usize))
            .count()
            / self.bottom_order
    }

    fn is_nilpotent(&self) -> bool {
        prime_factors(self.index())
            .into_iter()
            .all(|(p, e)| self.count_cosets(|o| is_power_of(o, p)) == p.pow(e))
    }

    pub fn in_class(&self, spec: &ClassSpec) -> bool {
        let idx = self.index();
        match spec {
            ClassSpec::All => true,
            ClassSpec::Trivial => idx == 1,
            ClassSpec::Nilpotent => self.is_nilpotent(),
            ClassSpec::PiGroups(pi) => pi.is_number(idx),
            ClassSpec::NilpotentPiPrime(pi) => pi.complement().is_number(idx) && self.is_nilpotent(),
            ClassSpec::Npi(pi) => self.in_class(&ClassSpec::npi_as_product(pi)),
            ClassSpec::Intersection(parts) => parts.iter().all(|p| self.in_class(p)),
            ClassSpec::Product(pi, a, b) => {
                let Some(hall_pi) = self.normal_hall(pi) else {
                    return false;
                };
                let Some(hall_pi_prime) = self.normal_hall(&pi.complement()) else {
                    return false;
                };
                self.restricted(&hall_pi).in_class(a) && self.restricted(&hall_pi_prime).in_class(b)
            }
        }
    }

    fn restricted<'b>(&'b self, top: &'b BitSet) -> Section<'b> {
        Section {
            group: self.group,
            top,
            top_order: top.count(),
            bottom_order: self.bottom_order,
            orders: self.orders,
        }
    }

    /// Preimage of the normal Hall ρ-subgroup of the section, if the
    /// ρ-elements form one.
    fn normal_hall(&self, rho: &PrimeSet) -> Option<BitSet> {
        let mut set = BitSet::new(self.group.order());
        for x in self.top.iter() {
            if rho.is_number(self.orders[x] as usize) {
                set.insert(x);
            }
        }
        if set.count() != rho.part(self.index()) * self.bottom_order {
            return None;
        }
        self.group.subgroup_if_closed(&set).map(|s| s.members().clone())
    }
}

fn element_orders(group: &Group) -> Vec<u32> {
    (0..group.order()).map(|x| group.element_order(x) as u32).collect()
}

/// Whether the whole group lies in the class.
pub fn class_membership(group: &Group, spec: &ClassSpec) -> bool {
    subgroup_in_class(&group.whole(), spec)
}

pub fn subgroup_in_class(s: &Subgroup, spec: &ClassSpec) -> bool {
    let orders = element_orders(s.group());
    Section {
        group: s.group(),
        top: s.members(),
        top_order: s.order(),
        bottom_order: 1,
        orders: &orders,
    }
    .in_class(spec)
}

/// Whether `top / bottom` lies in the class; `bottom` must be normal in `top`.
pub fn section_in_class(top: &Subgroup, bottom: &Subgroup, spec: &ClassSpec) -> Result<bool> {
    if !bottom.is_normal_in(top)? {
        return Err(Error::NotNormal);
    }
    let grp = top.group();
    let orders: Vec<u32> = (0..grp.order())
        .map(|x| {
            if top.contains(x) {
                grp.order_modulo(x, bottom.members()) as u32
            } else {
                0
            }
        })
        .collect();
    Ok(Section {
        group: grp,
        top: top.members(),
        top_order: top.order(),
        bottom_order: bottom.order(),
        orders: &orders,
    }
    .in_class(spec))
}

/// `O^π(x)`: the subgroup generated by the π'-elements of `x`.
pub fn upper_pi(x: &Subgroup, pi: &PrimeSet) -> Subgroup {
    let grp = x.group();
    let pi_prime = pi.complement();
    let gens: Vec<usize> = x
        .elements()
        .filter(|&g| g != 0 && pi_prime.is_number(grp.element_order(g)))
        .collect();
    grp.subgroup(&gens)
}

/// `O_ρ` of member `j`: its largest normal ρ-subgroup.
pub fn o_pi(lat: &Lattice, j: usize, rho: &PrimeSet) -> usize {
    o_pi_over(lat, j, 0, rho)
}

/// Largest normal subgroup `M` of member `j` with `bottom ≤ M` and
/// `|M : bottom|` a ρ-number, i.e. the preimage of `O_ρ(j / bottom)`.
/// `bottom` must be normal in `j`.
pub fn o_pi_over(lat: &Lattice, j: usize, bottom: usize, rho: &PrimeSet) -> usize {
    let b = lat.order(bottom);
    lat.normal_in(j)
        .iter()
        .filter(|&k| lat.contains(k, bottom) && rho.is_number(lat.order(k) / b))
        .last()
        .expect("bottom itself qualifies")
}

/// Hall ρ-subgroups of member `j`: its subgroups of order `ρ-part(|j|)`.
pub fn hall_subgroups(lat: &Lattice, j: usize, rho: &PrimeSet) -> Vec<usize> {
    lat.of_order_in(j, rho.part(lat.order(j)))
}

pub fn sylow_subgroups(lat: &Lattice, j: usize, p: usize) -> Vec<usize> {
    hall_subgroups(lat, j, &PrimeSet::single(p))
}

/// `P ↘ H`: `|P ∩ H|` is the ρ-part of `|H|`.
pub fn reduces_into(p: &Subgroup, h: &Subgroup, rho: &PrimeSet) -> Result<bool> {
    let meet = p.intersect(h)?;
    Ok(meet.order() == rho.part(h.order()))
}

/// π-separability of member `j` via the upper π'π-series
/// `1 ≤ O_{π'} ≤ O_{π',π} ≤ …`, which reaches `j` iff it is π-separable.
pub fn is_pi_separable(lat: &Lattice, j: usize, pi: &PrimeSet) -> bool {
    let pi_prime = pi.complement();
    let mut n = 0;
    loop {
        let a = o_pi_over(lat, j, n, &pi_prime);
        let b = o_pi_over(lat, j, a, pi);
        if b == n {
            return n == j;
        }
        n = b;
    }
}

/// π-separability read off the chief factors of member `j`.
pub fn is_pi_separable_by_chief_factors(lat: &Lattice, j: usize, pi: &PrimeSet) -> bool {
    let pi_prime = pi.complement();
    chief_factor_orders(lat, j)
        .into_iter()
        .all(|n| pi.is_number(n) || pi_prime.is_number(n))
}

/// Every chief factor of member `j` is a π-group or a `p`-group, `p ∈ π'`.
pub fn is_piprime_soluble(lat: &Lattice, j: usize, pi: &PrimeSet) -> bool {
    chief_factor_orders(lat, j).into_iter().all(|n| {
        if pi.is_number(n) {
            return true;
        }
        let f = prime_factors(n);
        f.len() == 1 && !pi.contains(f[0].0)
    })
}

fn chief_factor_orders(lat: &Lattice, j: usize) -> Vec<usize> {
    lat.chief_series_of(j)
        .windows(2)
        .map(|w| lat.order(w[1]) / lat.order(w[0]))
        .collect()
}

/// Smallest normal subgroup of member `j` whose quotient lies in `spec`,
/// computed as the intersection of all such and then checked to qualify.
pub fn class_residual(lat: &Lattice, j: usize, spec: &ClassSpec) -> Result<usize> {
    let grp = lat.group();
    let top = lat.subgroup(j);
    let mut meet = top.members().clone();
    for n in lat.normal_in(j).iter() {
        let orders = lat.orders_modulo(n);
        let section = Section {
            group: grp,
            top: top.members(),
            top_order: top.order(),
            bottom_order: lat.order(n),
            orders: &orders,
        };
        if section.in_class(spec) {
            meet.intersect_with(lat.subgroup(n).members());
        }
    }
    let r = lat
        .index_of_members(&meet)
        .ok_or_else(|| Error::Mismatch(alloc::format!("residual intersection for {spec} is not a subgroup")))?;
    let orders = lat.orders_modulo(r);
    let ok = Section {
        group: grp,
        top: top.members(),
        top_order: top.order(),
        bottom_order: lat.order(r),
        orders: &orders,
    }
    .in_class(spec);
    if !ok {
        return Err(Error::Mismatch(alloc::format!(
            "quotient by the {spec} residual is not in the class"
        )));
    }
    Ok(r)
}

/// `j^{N^π}`: smallest normal subgroup with quotient in `N^π`.
pub fn npi_residual(lat: &Lattice, j: usize, pi: &PrimeSet) -> Result<usize> {
    class_residual(lat, j, &ClassSpec::Npi(pi.clone()))
}

/// For one class, every section `Y / K` of a lattice with `K ⊴ Y` that lies
/// in the class, and the class residual of every member.
pub struct ClassSections {
    spec: ClassSpec,
    over: Vec<BitSet>,
    residual: Vec<usize>,
}

impl ClassSections {
    pub fn new(lat: &Lattice, spec: &ClassSpec) -> Result<ClassSections> {
        let n = lat.len();
        let grp = lat.group();
        let over: Vec<BitSet> = (0..n)
            .map(|k| {
                let mut set = BitSet::new(n);
                set.insert(k);
                let tops: Vec<usize> = lat
                    .above(k)
                    .iter()
                    .filter(|&y| y != k && lat.is_normal_in(k, y))
                    .collect();
                if tops.is_empty() {
                    return set;
                }
                let orders = lat.orders_modulo(k);
                for y in tops {
                    let top = lat.subgroup(y);
                    let section = Section {
                        group: grp,
                        top: top.members(),
                        top_order: top.order(),
                        bottom_order: lat.order(k),
                        orders: &orders,
                    };
                    if section.in_class(spec) {
                        set.insert(y);
                    }
                }
                set
            })
            .collect();

        let mut residual = Vec::with_capacity(n);
        for x in 0..n {
            let mut meet = lat.subgroup(x).members().clone();
            for k in lat.normal_in(x).iter() {
                if over[k].contains(x) {
                    meet.intersect_with(lat.subgroup(k).members());
                }
            }
            let r = lat
                .index_of_members(&meet)
                .filter(|&r| over[r].contains(x))
                .ok_or_else(|| {
                    Error::Mismatch(alloc::format!(
                        "{spec} quotients of a subgroup of order {} are not intersection-closed",
                        lat.order(x)
                    ))
                })?;
            residual.push(r);
        }
        Ok(ClassSections {
            spec: spec.clone(),
            over,
            residual,
        })
    }

    pub fn spec(&self) -> &ClassSpec {
        &self.spec
    }

    /// Members `Y ≥ k` with `k ⊴ Y` and `Y / k` in the class (`k` included
    /// whenever the trivial group is).
    pub fn over(&self, k: usize) -> &BitSet {
        &self.over[k]
    }

    /// Whether member `x`, as a group, lies in the class.
    pub fn contains(&self, x: usize) -> bool {
        self.over[0].contains(x)
    }

    /// Whether `y / k` lies in the class; `k ⊴ y` is part of the condition.
    pub fn section_in_class(&self, y: usize, k: usize) -> bool {
        self.over[k].contains(y)
    }

    /// Smallest normal subgroup of `x` with quotient in the class.
    pub fn residual(&self, x: usize) -> usize {
        self.residual[x]
    }
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
    fn pi_numbers_and_parts() {
        assert!(is_pi_number(24, &pset(&[2, 3])));
        assert_eq!(pi_part(24, &pset(&[2, 3])), 24);
        assert!(!is_pi_number(24, &pset(&[2])));
        assert_eq!(pi_part(24, &pset(&[2])), 8);
        assert!(is_pi_number(1, &PrimeSet::empty()));
        assert_eq!(pi_part(1, &pset(&[5])), 1);
        assert_eq!(pset(&[2]).complement().part(24), 3);
        assert!(PrimeSet::new([4]).is_err());
    }

    #[test]
    fn prime_set_semantics() {
        let p = pset(&[3, 2, 3]);
        assert_eq!(p.listed(), &[2, 3]);
        assert_eq!(p.size(), Some(2));
        assert!(p.complement().contains(7));
        assert!(!p.complement().contains(2));
        assert_eq!(p.complement().size(), None);
        assert_eq!(alloc::format!("{}", p.complement()), "{2,3}'");
    }

    #[test]
    fn radicals_of_s4() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&s4).unwrap();
        let top = lat.top();
        assert_eq!(lat.order(o_pi(&lat, top, &pset(&[2]))), 4);
        assert_eq!(o_pi(&lat, top, &pset(&[2, 3])), top);
        assert_eq!(lat.order(o_pi(&lat, top, &pset(&[3]))), 1);
    }

    #[test]
    fn upper_pi_examples() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        assert_eq!(upper_pi(&s4.whole(), &pset(&[2])).order(), 12);
        assert!(upper_pi(&s4.whole(), &pset(&[2, 3])).is_trivial());
        let f21 = group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]);
        assert_eq!(upper_pi(&f21.whole(), &pset(&[3, 5])).order(), 7);
    }

    #[test]
    fn halls_and_sylows() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&s4).unwrap();
        let top = lat.top();
        let syl2 = hall_subgroups(&lat, top, &pset(&[2]));
        assert_eq!(syl2.len(), 3);
        assert!(syl2.iter().all(|&i| lat.order(i) == 8));
        assert_eq!(hall_subgroups(&lat, top, &pset(&[2, 3])), vec![top]);
        assert_eq!(sylow_subgroups(&lat, top, 3).len(), 4);

        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let lat5 = Lattice::new(&a5).unwrap();
        assert_eq!(hall_subgroups(&lat5, lat5.top(), &pset(&[2, 3])).len(), 5);
        assert!(hall_subgroups(&lat5, lat5.top(), &pset(&[3, 5])).is_empty());
    }

    #[test]
    fn reduction() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let p = s4
            .subgroup_from_perms(&[
                parse_permutation("(1 2)", 4).unwrap(),
                parse_permutation("(3 4)", 4).unwrap(),
                parse_permutation("(1 3 2 4)", 4).unwrap(),
            ])
            .unwrap();
        let two = pset(&[2]);
        assert!(reduces_into(&p, &s4.whole(), &two).unwrap());
        let c3 = s4.subgroup_from_perms(&[parse_permutation("(1 2 3)", 4).unwrap()]).unwrap();
        assert!(reduces_into(&p, &c3, &two).unwrap());
        let other = p.conjugate(s4.id_of(&parse_permutation("(2 3)", 4).unwrap()).unwrap());
        assert_ne!(other, p);
        assert!(!reduces_into(&p, &other, &two).unwrap());
    }

    #[test]
    fn separability() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let lat = Lattice::new(&a5).unwrap();
        let top = lat.top();
        assert!(!is_pi_separable(&lat, top, &pset(&[2])));
        assert!(!is_pi_separable_by_chief_factors(&lat, top, &pset(&[2])));
        assert!(is_pi_separable(&lat, top, &pset(&[2, 3, 5])));
        assert!(is_piprime_soluble(&lat, top, &pset(&[2, 3, 5])));
        assert!(!is_piprime_soluble(&lat, top, &PrimeSet::empty()));
    }

    #[test]
    fn npi_membership() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        assert!(class_membership(&s4, &ClassSpec::Npi(pset(&[2, 3]))));
        assert!(!class_membership(&s4, &ClassSpec::Nilpotent));
        let f21 = group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]);
        assert!(!class_membership(&f21, &ClassSpec::Npi(pset(&[3, 5]))));
        assert!(class_membership(&f21, &ClassSpec::All));
        assert!(!class_membership(&f21, &ClassSpec::Trivial));
    }

    #[test]
    fn residuals() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&s4).unwrap();
        let r = npi_residual(&lat, lat.top(), &PrimeSet::empty()).unwrap();
        assert_eq!(lat.order(r), 12);
        assert_eq!(npi_residual(&lat, lat.top(), &pset(&[2, 3])).unwrap(), 0);

        let f21 = group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]);
        let lat = Lattice::new(&f21).unwrap();
        assert_eq!(lat.order(npi_residual(&lat, lat.top(), &pset(&[3, 5])).unwrap()), 7);
    }

    #[test]
    fn sections() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&s4).unwrap();
        let v4 = lat.subgroup(lat.chief_series()[1]);
        // S4/V4 ≅ S3
        assert!(!section_in_class(&s4.whole(), v4, &ClassSpec::Nilpotent).unwrap());
        assert!(section_in_class(&s4.whole(), v4, &ClassSpec::Npi(pset(&[2, 3]))).unwrap());
        let a4 = lat.subgroup(lat.chief_series()[2]);
        assert!(section_in_class(&s4.whole(), a4, &ClassSpec::Nilpotent).unwrap());
    }

    #[test]
    fn class_sections_agree_with_direct_residuals() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&s4).unwrap();
        for spec in [
            ClassSpec::Nilpotent,
            ClassSpec::Npi(pset(&[2, 3])),
            ClassSpec::Npi(pset(&[3, 5])),
            ClassSpec::PiGroups(pset(&[2])),
        ] {
            let cs = ClassSections::new(&lat, &spec).unwrap();
            for x in 0..lat.len() {
                assert_eq!(cs.residual(x), class_residual(&lat, x, &spec).unwrap());
                assert_eq!(cs.contains(x), subgroup_in_class(lat.subgroup(x), &spec));
            }
        }
    }
}
