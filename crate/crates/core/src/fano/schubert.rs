//! Schubert calculus on Gr(2,6).
//!
//! Classes are rational combinations of `sigma_{a,b}` with `4 >= a >= b >= 0`
//! (two-row partitions in the 2x4 box). Products are generated by the Pieri
//! rule: multiplication by a single-row class adds a horizontal strip, and
//! multiplication by `sigma_{1,1}` adds a box to each row. Classes leaving
//! the box die, which is the correct quotient for the Grassmannian.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::{rat_i, Rat};

/// A cohomology class on Gr(2,6) in the Schubert basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GrClass {
    terms: BTreeMap<(u8, u8), Rat>,
}

impl GrClass {
    pub fn zero() -> Self {
        GrClass::default()
    }

    pub fn one() -> Self {
        GrClass::sigma(0, 0)
    }

    /// The Schubert class `sigma_{a,b}`; panics outside the 2x4 box.
    pub fn sigma(a: u8, b: u8) -> Self {
        assert!(a <= 4 && b <= a, "sigma_({a},{b}) outside the 2x4 box");
        let mut terms = BTreeMap::new();
        terms.insert((a, b), rat_i(1));
        GrClass { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, u8, &Rat)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn add(&self, other: &GrClass) -> GrClass {
        let mut terms = self.terms.clone();
        for (&k, c) in &other.terms {
            let entry = terms.entry(k).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        GrClass { terms }
    }

    pub fn scale(&self, s: &Rat) -> GrClass {
        if s.is_zero() {
            return GrClass::zero();
        }
        GrClass {
            terms: self.terms.iter().map(|(&k, c)| (k, c * s)).collect(),
        }
    }

    /// Pieri multiplication by the single-row class `sigma_k`.
    pub fn mul_row(&self, k: u8) -> GrClass {
        let mut out = GrClass::zero();
        for (&(a, b), c) in &self.terms {
            for bp in b..=(a.min(b + k)) {
                let ap = a + b + k - bp;
                if ap <= 4 {
                    let entry = out.terms.entry((ap, bp)).or_insert_with(Rat::zero);
                    *entry += c;
                }
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Multiplication by `sigma_{1,1}` (one box in each row).
    pub fn mul_sigma11(&self) -> GrClass {
        let mut out = GrClass::zero();
        for (&(a, b), c) in &self.terms {
            if a < 4 {
                out.terms.insert((a + 1, b + 1), c.clone());
            }
        }
        out
    }

    /// Full product, bilinear over the Giambelli factorization
    /// `sigma_{c,d} = sigma_{1,1}^d * sigma_{c-d}`.
    pub fn mul(&self, other: &GrClass) -> GrClass {
        let mut acc = GrClass::zero();
        for (&(c, d), coeff) in &other.terms {
            let mut part = self.clone();
            for _ in 0..d {
                part = part.mul_sigma11();
            }
            part = part.mul_row(c - d);
            acc = acc.add(&part.scale(coeff));
        }
        acc
    }

    /// Coefficient of the point class `sigma_{4,4}`.
    pub fn gr_integrate(&self) -> Rat {
        self.terms.get(&(4, 4)).cloned().unwrap_or_else(Rat::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pieri_basics() {
        let s1 = GrClass::sigma(1, 0);
        let sq = s1.mul(&s1);
        assert_eq!(sq, GrClass::sigma(2, 0).add(&GrClass::sigma(1, 1)));
        assert_eq!(GrClass::sigma(4, 4).mul(&s1), GrClass::zero());
    }

    #[test]
    fn sigma11_lane() {
        assert_eq!(
            GrClass::sigma(1, 1).mul(&GrClass::sigma(1, 1)),
            GrClass::sigma(2, 2)
        );
        assert_eq!(
            GrClass::sigma(2, 0).mul(&GrClass::sigma(1, 1)),
            GrClass::sigma(3, 1)
        );
    }

    #[test]
    fn degree_of_the_grassmannian() {
        // sigma_1^8 integrates to the number of standard tableaux of shape (4,4)
        let s1 = GrClass::sigma(1, 0);
        let mut p = GrClass::one();
        for _ in 0..8 {
            p = p.mul(&s1);
        }
        assert_eq!(p.gr_integrate(), rat_i(14));
    }

    #[test]
    fn integrate_is_graded() {
        let s = GrClass::sigma(2, 0).mul(&GrClass::sigma(2, 2));
        assert_eq!(s.gr_integrate(), rat_i(0));
    }

    #[test]
    fn duality_pairs() {
        // complementary partitions pair to 1
        for (a, b) in [(4u8, 4u8), (3, 1), (2, 2), (4, 0)] {
            let dual = (4 - b, 4 - a);
            let p = GrClass::sigma(a, b).mul(&GrClass::sigma(dual.0, dual.1));
            assert_eq!(p.gr_integrate(), rat_i(1), "pairing ({a},{b})");
        }
        let p = GrClass::sigma(3, 1).mul(&GrClass::sigma(2, 2));
        assert_eq!(p.gr_integrate(), rat_i(0));
    }
}
