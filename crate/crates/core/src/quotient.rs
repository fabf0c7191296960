//! Quotients realized as permutation groups on right cosets.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{ElementId, Group, Subgroup};
use crate::perm::Perm;
use crate::structure::Lattice;

/// `numerator / kernel`, acting faithfully by right multiplication on the
/// right cosets of `kernel`.
#[derive(Clone, Debug)]
pub struct QuotientHandle {
    numerator: Subgroup,
    kernel: Subgroup,
    quotient: Group,
    /// Quotient element of each parent element in `numerator`.
    projection: Vec<Option<u32>>,
}

/// Builds `numerator / kernel`; `kernel` must be normal in `numerator`.
pub fn quotient(numerator: &Subgroup, kernel: &Subgroup) -> Result<QuotientHandle> {
    if !kernel.is_normal_in(numerator)? {
        return Err(Error::NotNormal);
    }
    let grp = numerator.group();

    // Cosets numbered by their least element id.
    let mut coset_of = vec![u32::MAX; grp.order()];
    let mut reps = Vec::new();
    for x in numerator.elements() {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for k in kernel.elements() {
            coset_of[grp.mul(k, x)] = c;
        }
    }
    let m = reps.len();
    let action = |g: ElementId| -> Perm {
        let images = reps
            .iter()
            .map(|&r| coset_of[grp.mul(r, g)])
            .collect::<Vec<u32>>();
        Perm::from_images(images).expect("coset action is a permutation")
    };

    let mut elements: Vec<Perm> = reps.iter().map(|&r| action(r)).collect();
    elements.sort();
    let generators: Vec<Perm> = numerator.generators().map(action).collect();
    let quotient = Group::from_sorted_elements(elements, &generators, m.max(1));

    let rep_ids: Vec<u32> = reps
        .iter()
        .map(|&r| quotient.id_of(&action(r)).expect("coset image in quotient") as u32)
        .collect();
    let mut projection = vec![None; grp.order()];
    for x in numerator.elements() {
        projection[x] = Some(rep_ids[coset_of[x] as usize]);
    }

    Ok(QuotientHandle {
        numerator: numerator.clone(),
        kernel: kernel.clone(),
        quotient,
        projection,
    })
}

impl QuotientHandle {
    pub fn numerator(&self) -> &Subgroup {
        &self.numerator
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn group(&self) -> &Group {
        &self.quotient
    }

    /// Image of a parent element of the numerator.
    pub fn project(&self, x: ElementId) -> Option<ElementId> {
        self.projection.get(x).copied().flatten().map(|q| q as usize)
    }

    /// `h·kernel / kernel` for `h ≤ numerator`.
    pub fn image(&self, h: &Subgroup) -> Result<Subgroup> {
        if !h.is_subgroup_of(&self.numerator)? {
            return Err(Error::NotContained);
        }
        let mut members = BitSet::new(self.quotient.order());
        for x in h.elements() {
            members.insert(self.project(x).expect("x in numerator"));
        }
        Ok(self
            .quotient
            .subgroup_if_closed(&members)
            .expect("image of a subgroup is a subgroup"))
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, q: &Subgroup) -> Result<Subgroup> {
        if !q.group().ptr_eq(&self.quotient) {
            return Err(Error::MixedParents);
        }
        let grp = self.numerator.group();
        let mut members = BitSet::new(grp.order());
        for x in self.numerator.elements() {
            if q.contains(self.project(x).expect("x in numerator")) {
                members.insert(x);
            }
        }
        Ok(grp
            .subgroup_if_closed(&members)
            .expect("preimage of a subgroup is a subgroup"))
    }
}

/// A quotient of a lattice's group by a normal member, with the quotient's
/// own lattice and the correspondence between the two lattices.
pub struct QuotientView {
    kernel: usize,
    handle: QuotientHandle,
    lattice: Lattice,
    image: Vec<usize>,
    preimage: Vec<usize>,
}

impl QuotientView {
    /// `lat.group() / kernel`; `kernel` must be a normal member of `lat`.
    pub fn new(lat: &Lattice, kernel: usize) -> Result<QuotientView> {
        let handle = quotient(&lat.group().whole(), lat.subgroup(kernel))?;
        let lattice = Lattice::new(handle.group())?;
        let image = lat
            .subgroups()
            .iter()
            .map(|h| lattice.index_of(&handle.image(h)?))
            .collect::<Result<Vec<_>>>()?;
        let preimage = lattice
            .subgroups()
            .iter()
            .map(|q| lat.index_of(&handle.preimage(q)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientView {
            kernel,
            handle,
            lattice,
            image,
            preimage,
        })
    }

    pub fn kernel(&self) -> usize {
        self.kernel
    }

    pub fn handle(&self) -> &QuotientHandle {
        &self.handle
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Quotient-lattice index of `hK/K` for parent member `h`.
    pub fn image(&self, h: usize) -> usize {
        self.image[h]
    }

    /// Parent-lattice index of the full preimage of quotient member `q`.
    pub fn preimage(&self, q: usize) -> usize {
        self.preimage[q]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;
    use crate::structure::Lattice;

    fn group(degree: usize, gens: &[&str]) -> Group {
        let gens: Vec<Perm> = gens.iter().map(|g| parse_permutation(g, degree).unwrap()).collect();
        Group::generate(&gens, degree).unwrap()
    }

    #[test]
    fn s4_mod_v4_looks_like_s3() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let v4 = s4
            .subgroup_from_perms(&[
                parse_permutation("(1 2)(3 4)", 4).unwrap(),
                parse_permutation("(1 3)(2 4)", 4).unwrap(),
            ])
            .unwrap();
        let q = quotient(&s4.whole(), &v4).unwrap();
        assert_eq!(q.group().order(), 6);
        assert_eq!(q.group().degree(), 6);
        let lat = Lattice::new(q.group()).unwrap();
        let orders: Vec<usize> = lat.subgroups().iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn degenerate_quotients() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let q1 = quotient(&s3.whole(), &s3.trivial()).unwrap();
        assert_eq!(q1.group().order(), 6);
        let qg = quotient(&s3.whole(), &s3.whole()).unwrap();
        assert_eq!(qg.group().order(), 1);
    }

    #[test]
    fn frobenius_21_mod_c7() {
        let f = group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]);
        assert_eq!(f.order(), 21);
        let c7 = f
            .subgroup_from_perms(&[parse_permutation("(1 2 3 4 5 6 7)", 7).unwrap()])
            .unwrap();
        let q = quotient(&f.whole(), &c7).unwrap();
        assert_eq!(q.group().order(), 3);
    }

    #[test]
    fn requires_normal_kernel() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let t = s3
            .subgroup_from_perms(&[parse_permutation("(1 2)", 3).unwrap()])
            .unwrap();
        assert!(matches!(quotient(&s3.whole(), &t), Err(Error::NotNormal)));
    }

    #[test]
    fn projection_is_homomorphism_and_preimage_of_image_is_product() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&s4).unwrap();
        for n in lat.normal_in(lat.top()).iter() {
            let kernel = lat.subgroup(n);
            let q = quotient(&s4.whole(), kernel).unwrap();
            assert_eq!(q.group().order() * kernel.order(), 24);
            for a in 0..24 {
                for b in 0..24 {
                    let lhs = q.project(s4.mul(a, b)).unwrap();
                    let rhs = q.group().mul(q.project(a).unwrap(), q.project(b).unwrap());
                    assert_eq!(lhs, rhs);
                }
                assert_eq!(q.project(a) == Some(0), kernel.contains(a));
            }
            for h in lat.subgroups() {
                let back = q.preimage(&q.image(h).unwrap()).unwrap();
                assert_eq!(back, h.join(kernel).unwrap());
            }
        }
    }

    #[test]
    fn view_correspondence() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lat = Lattice::new(&s4).unwrap();
        for k in lat.normal_in(lat.top()).iter() {
            let view = QuotientView::new(&lat, k).unwrap();
            assert_eq!(view.lattice().group().order() * lat.order(k), 24);
            for q in 0..view.lattice().len() {
                let pre = view.preimage(q);
                assert!(lat.contains(pre, k));
                assert_eq!(view.image(pre), q);
            }
            for h in 0..lat.len() {
                assert_eq!(view.preimage(view.image(h)), lat.join(h, k));
            }
        }
        let t = lat.of_order_in(lat.top(), 2)[0];
        assert!(!lat.is_normal(t));
        assert!(matches!(QuotientView::new(&lat, t), Err(Error::NotNormal)));
    }
}
