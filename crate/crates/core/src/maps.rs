//! Restriction, transfer, norm and conjugation on the Burnside Tambara functor.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::burnside::{Burnside, BurnsideElement};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::lattice::double_cosets;

impl Burnside {
    /// Mark of `x` at an arbitrary subgroup `s` of its level.
    pub fn mark_at(&self, x: &BurnsideElement, s: Subgroup) -> BigInt {
        let ring = self.ring(x.level());
        self.marks(x)[ring.lattice().class_of(s)].clone()
    }

    fn check_contained(&self, sub: Subgroup, sup: Subgroup) -> Result<()> {
        if sub.is_subset_of(sup) {
            Ok(())
        } else {
            Err(self.not_contained(sub, sup))
        }
    }

    /// `res^H_K`, computed by restricting the mark vector.
    pub fn res(&self, x: &BurnsideElement, k: Subgroup) -> Result<BurnsideElement> {
        self.check_contained(k, x.level())?;
        let h_marks = self.marks(x);
        let h_lat = self.ring(x.level()).lattice();
        let ghost: Vec<BigInt> =
            self.ring(k).lattice().classes().iter().map(|c| h_marks[h_lat.class_of(c.rep)].clone()).collect();
        self.unmark(k, &ghost).map_err(|e| Error::Internal(format!("restriction: {e}")))
    }

    /// `res^H_K` via `[H/L]↓K = Σ_{K\H/L} [K/(K ∩ gLg⁻¹)]`.
    pub fn res_orbitwise(&self, x: &BurnsideElement, k: Subgroup) -> Result<BurnsideElement> {
        self.check_contained(k, x.level())?;
        let g = self.group();
        let h = x.level();
        let h_lat = self.ring(h).lattice();
        let k_lat = self.ring(k).lattice();
        let mut coeffs = self.zero(k).coeffs().to_vec();
        for (i, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let l = h_lat.rep(i);
            for d in double_cosets(g, h, k, l) {
                let stab = k.intersect(g.conjugate(d, l));
                coeffs[k_lat.class_of(stab)] += c;
            }
        }
        Ok(self.element(k, coeffs))
    }

    /// `tr_K^H`: `[K/L] ↦ [H/L]`.
    pub fn tr(&self, x: &BurnsideElement, h: Subgroup) -> Result<BurnsideElement> {
        self.check_contained(x.level(), h)?;
        let k_lat = self.ring(x.level()).lattice();
        let h_lat = self.ring(h).lattice();
        let mut coeffs = self.zero(h).coeffs().to_vec();
        for (i, c) in x.coeffs().iter().enumerate() {
            coeffs[h_lat.class_of(k_lat.rep(i))] += c;
        }
        Ok(self.element(h, coeffs))
    }

    /// `nm_K^H`, with ghost component at `L` equal to
    /// `Π_{g ∈ L\H/K} mark_{K ∩ g⁻¹Lg}(x)`.
    pub fn nm(&self, x: &BurnsideElement, h: Subgroup) -> Result<BurnsideElement> {
        let k = x.level();
        self.check_contained(k, h)?;
        let g = self.group();
        let x_marks = self.marks(x);
        let k_lat = self.ring(k).lattice();
        let ghost: Vec<BigInt> = self
            .ring(h)
            .lattice()
            .classes()
            .iter()
            .map(|c| {
                let l = c.rep;
                double_cosets(g, h, l, k)
                    .into_iter()
                    .map(|d| &x_marks[k_lat.class_of(k.intersect(g.conjugate(g.inv(d), l)))])
                    .fold(BigInt::one(), |acc, m| acc * m)
            })
            .collect();
        self.unmark(h, &ghost).map_err(|e| Error::Internal(format!("norm is not a virtual set: {e}")))
    }

    /// `c_g`: moves `x` from `K` to `gKg⁻¹`.
    pub fn conj(&self, x: &BurnsideElement, g: usize) -> BurnsideElement {
        let grp = self.group();
        let k = x.level();
        let target = grp.conjugate(g, k);
        let k_lat = self.ring(k).lattice();
        let t_lat = self.ring(target).lattice();
        let mut coeffs = self.zero(target).coeffs().to_vec();
        for (i, c) in x.coeffs().iter().enumerate() {
            coeffs[t_lat.class_of(grp.conjugate(g, k_lat.rep(i)))] += c;
        }
        self.element(target, coeffs)
    }

    /// Moves `x` to the representative of its level's conjugacy class.
    pub fn to_rep_level(&self, x: &BurnsideElement) -> BurnsideElement {
        let gamma = self.lattice().to_rep(x.level());
        self.conj(x, gamma)
    }

    /// Moves `x` from a class representative to the conjugate subgroup `s`.
    pub fn from_rep_level(&self, x: &BurnsideElement, s: Subgroup) -> BurnsideElement {
        let gamma = self.lattice().to_rep(s);
        let y = self.conj(x, self.group().inv(gamma));
        debug_assert_eq!(y.level(), s);
        y
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::Group;

    fn setup(name: &str) -> Arc<Burnside> {
        Burnside::new(Group::builtin(name).unwrap())
    }

    fn show(b: &Burnside, r: Result<BurnsideElement>) -> String {
        b.format(&r.unwrap())
    }

    #[test]
    fn norms_from_c2_to_c4() {
        let b = setup("C4");
        let c2 = b.subgroup("C2").unwrap();
        let c4 = b.group().whole();
        assert_eq!(show(&b, b.nm(&b.parse(c2, "t - 2").unwrap(), c4)), "-[C4/e] + 3[C4/C2] - 2");
        assert_eq!(show(&b, b.nm(&b.integer(c2, 2), c4)), "[C4/C2] + 2");
        assert_eq!(show(&b, b.nm(&b.integer(c2, -1), c4)), "[C4/C2] - 1");
        assert_eq!(b.nm(&b.zero(c2), c4).unwrap(), b.zero(c4));
        assert_eq!(b.nm(&b.one(c2), c4).unwrap(), b.one(c4));
    }

    #[test]
    fn norms_into_q8() {
        let b = setup("Q8");
        let q = b.group().whole();
        let c2 = b.subgroup("C2").unwrap();
        let i = b.subgroup("I").unwrap();
        let x = b.parse(c2, "t - 2").unwrap();
        assert_eq!(show(&b, b.nm(&x, q)), "-2[Q8/e] + 3[Q8/I] + 3[Q8/J] + 3[Q8/K] - 2");
        assert_eq!(show(&b, b.nm(&b.parse(i, "[I/e]").unwrap(), q)), "2[Q8/e]");
        assert_eq!(show(&b, b.nm(&b.parse(i, "[I/C2]").unwrap(), q)), "[Q8/J] + [Q8/K]");
    }

    #[test]
    fn norm_of_two_from_trivial_group() {
        let b = setup("C2");
        assert_eq!(show(&b, b.nm(&b.integer(b.group().trivial(), 2), b.group().whole())), "[C2/e] + 2");
    }

    #[test]
    fn transfers() {
        let q = setup("Q8");
        let x = q.parse(q.subgroup("C2").unwrap(), "t - 2").unwrap();
        assert_eq!(show(&q, q.tr(&x, q.group().whole())), "[Q8/e] - 2[Q8/C2]");
        let c = setup("C4");
        let y = c.parse(c.subgroup("C2").unwrap(), "t - 2").unwrap();
        assert_eq!(show(&c, c.tr(&y, c.group().whole())), "[C4/e] - 2[C4/C2]");
        assert_eq!(c.tr(&y, y.level()).unwrap(), y);
    }

    #[test]
    fn restrictions() {
        let b = setup("C2");
        let x = b.parse(b.group().whole(), "t - 2").unwrap();
        assert!(b.res(&x, b.group().trivial()).unwrap().is_zero());
        assert_eq!(b.res(&x, x.level()).unwrap(), x);

        let q = setup("Q8");
        let c2 = q.subgroup("C2").unwrap();
        let qi = q.parse(q.group().whole(), "[Q8/I]").unwrap();
        assert_eq!(q.res(&qi, c2).unwrap(), q.integer(c2, 2));
        assert_eq!(q.res_orbitwise(&qi, c2).unwrap(), q.integer(c2, 2));
        assert!(matches!(q.res(&q.one(c2), q.group().whole()), Err(Error::NotContained { .. })));
    }

    #[test]
    fn restriction_paths_agree_on_basis() {
        for name in ["C4", "C2xC2", "D8", "Q8"] {
            let b = setup(name);
            for &h in b.group().subgroups() {
                for i in 0..b.ring(h).rank() {
                    let mut c = vec![BigInt::from(0); b.ring(h).rank()];
                    c[i] = BigInt::one();
                    let x = b.element(h, c);
                    for &k in b.group().subgroups().iter().filter(|k| k.is_subset_of(h)) {
                        assert_eq!(b.res(&x, k).unwrap(), b.res_orbitwise(&x, k).unwrap(), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_is_trivial_in_q8() {
        let b = setup("Q8");
        let c2 = b.subgroup("C2").unwrap();
        let x = b.parse(c2, "t - 2").unwrap();
        for g in 0..8 {
            assert_eq!(b.conj(&x, g), x);
        }
    }

    #[test]
    fn conjugation_swaps_reflection_classes_in_d8() {
        let b = setup("D8");
        let g = b.group();
        // r normalizes V4a = {1, r^2, s, r^2 s} and swaps its two reflection subgroups
        let v4 = b.subgroup("V4a").unwrap();
        let r = g.element_by_name("r").unwrap();
        let lat = b.ring(v4).lattice();
        let non_normal: Vec<usize> = (0..lat.len()).filter(|&i| !g.is_normal(lat.rep(i))).collect();
        assert_eq!(non_normal.len(), 2);
        let mut c = vec![BigInt::from(0); lat.len()];
        c[non_normal[0]] = BigInt::from(3);
        let x = b.element(v4, c);
        let y = b.conj(&x, r);
        assert_eq!(y.level(), v4);
        assert_eq!(y.coeffs()[non_normal[1]], BigInt::from(3));
        assert_eq!(y.coeffs()[non_normal[0]], BigInt::from(0));
        assert_eq!(b.conj(&x, 0), x);
    }
}
