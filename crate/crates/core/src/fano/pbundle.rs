//! The projective bundle `P(Sym^2 U_F)` and the degeneracy surface of the
//! residuation self-map.
//!
//! Classes on the bundle are reduced to `a0 + a1 h + a2 h^2` with `h` the
//! relative hyperplane class, using the cubic relation
//! `h^3 = 3 H h^2 - (2 H^2 + 4 c) h + (5/3) H^3` as the sole reduction rule.
//! Pushforward along the bundle projection keeps the `h^2` coefficient.
//!
//! On a very general Fano fourfold the degree-3 and degree-4 Hodge spaces
//! are one-dimensional, so reduced coefficients are normalized to multiples
//! of `H^3` and `H^4` (see [`normalize_on_f`]); the relation's constant term
//! `(5/3) H^3` is itself the normalized form of `4 H c`.

use super::poly::{chern_classes, fano_integrate, normalize_on_f, FanoError, FanoPoly};
use crate::criterion::{self, BetaClass};
use crate::rational::{rat, rat_i, Rat};

/// A class `a0 + a1 h + a2 h^2` on `P(Sym^2 U_F)`, fully reduced in `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PBClass {
    pub coeffs: [FanoPoly; 3],
}

impl PBClass {
    pub fn scalar(p: FanoPoly) -> Self {
        PBClass {
            coeffs: [p, FanoPoly::zero(), FanoPoly::zero()],
        }
    }

    pub fn zero() -> Self {
        PBClass::scalar(FanoPoly::zero())
    }

    pub fn add(&self, other: &PBClass) -> PBClass {
        PBClass {
            coeffs: [
                self.coeffs[0].add(&other.coeffs[0]),
                self.coeffs[1].add(&other.coeffs[1]),
                self.coeffs[2].add(&other.coeffs[2]),
            ],
        }
    }

    /// Multiplies by a class pulled back from the base.
    pub fn scale_poly(&self, p: &FanoPoly) -> PBClass {
        PBClass {
            coeffs: [
                self.coeffs[0].mul(p),
                self.coeffs[1].mul(p),
                self.coeffs[2].mul(p),
            ],
        }
    }

    /// Multiplies by `h` and reduces the arising `h^3`.
    pub fn mul_h(&self) -> PBClass {
        let (r2, r1, r0) = h_cubed_rule();
        let a2 = &self.coeffs[2];
        PBClass {
            coeffs: [
                a2.mul(&r0),
                self.coeffs[0].add(&a2.mul(&r1)),
                self.coeffs[1].add(&a2.mul(&r2)),
            ],
        }
    }

    /// Pushforward along the bundle projection: `h^2 -> 1`, lower powers die.
    pub fn pushforward(&self) -> FanoPoly {
        self.coeffs[2].clone()
    }
}

/// The reduction rule `h^3 = 3 H h^2 - (2 H^2 + 4 c) h + (5/3) H^3`.
pub fn h_cubed_rule() -> (FanoPoly, FanoPoly, FanoPoly) {
    let h = FanoPoly::h();
    let c = FanoPoly::c();
    (
        h.scale(&rat_i(3)),
        h.pow(2).scale(&rat_i(-2)).sub(&c.scale(&rat_i(4))),
        h.pow(3).scale(&rat(5, 3)),
    )
}

/// The class of the degeneracy surface inside `P(Sym^2 U_F)`: the top Chern
/// class of `Q_F^* ⊗ O(h)`, reduced and normalized. Hard-fails if it does
/// not reproduce the pinned expansion
/// `5 (H^2 - c) h^2 - (35/6) H^3 h + (10/3) H^4`.
pub fn surface_class() -> Result<PBClass, FanoError> {
    let ch = chern_classes();
    // sum_i c_i(Q*) h^{4-i} by Horner in h
    let mut acc = PBClass::scalar(ch.q_dual.graded_part(0));
    for i in 1..=4u32 {
        acc = acc.mul_h().add(&PBClass::scalar(ch.q_dual.graded_part(i)));
    }
    let computed = PBClass {
        coeffs: [
            normalize_on_f(&acc.coeffs[0]),
            normalize_on_f(&acc.coeffs[1]),
            normalize_on_f(&acc.coeffs[2]),
        ],
    };
    let h = FanoPoly::h();
    let c = FanoPoly::c();
    let expected = PBClass {
        coeffs: [
            h.pow(4).scale(&rat(10, 3)),
            h.pow(3).scale(&rat(-35, 6)),
            h.pow(2).sub(&c).scale(&rat_i(5)),
        ],
    };
    if computed != expected {
        return Err(FanoError::SurfaceClassMismatch {
            computed: format!(
                "({}) h^2 + ({}) h + ({})",
                computed.coeffs[2], computed.coeffs[1], computed.coeffs[0]
            ),
            expected: format!(
                "({}) h^2 + ({}) h + ({})",
                expected.coeffs[2], expected.coeffs[1], expected.coeffs[0]
            ),
        });
    }
    Ok(computed)
}

/// The three self-intersection numbers of the degeneracy surface:
/// integrals of the surface class against `H^2`, `H h` and `h^2`.
pub fn surface_numbers() -> Result<(Rat, Rat, Rat), FanoError> {
    let s = surface_class()?;
    let h = FanoPoly::h();
    let hh = fano_integrate(&s.scale_poly(&h.pow(2)).pushforward())?;
    let hx = fano_integrate(&s.mul_h().scale_poly(&h).pushforward())?;
    let xx = fano_integrate(&s.mul_h().mul_h().pushforward())?;
    Ok((hh, hx, xx))
}

/// The intersection-number chain determining the Lagrangian eigenvalue of
/// the rational-curve correspondence on the Fano fourfold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvalueChain {
    /// Coefficient in `p_* pull(H)^2 = 15 H_S` on the surface, computed from
    /// `pull(H) = 7 p*H_S + 3 xi` and `c_1(N) = 3 H_S` on the P^1-bundle.
    pub pushforward_coefficient: Rat,
    /// `15^2 * 315`
    pub n70875: Rat,
    /// `70875 * (int c^2) / (int H^2 c)`
    pub n42525: Rat,
    /// `42525 / (int H^2 c)`: the eigenvalue on the Lagrangian line.
    pub n945: Rat,
}

pub fn eigenvalue_chain() -> Result<EigenvalueChain, FanoError> {
    // On P(N) over the surface: (7 p*H + 3 xi)^2 pushes to
    // 2*7*3 H_S + 9 * s_1(N) with s_1(N) = -c_1(N) = -3 H_S.
    let pull_base = rat_i(7);
    let pull_fiber = rat_i(3);
    let c1_normal = rat_i(3);
    let pushforward_coefficient =
        rat_i(2) * &pull_base * &pull_fiber - &pull_fiber * &pull_fiber * c1_normal;

    let (surface_h2, _, _) = surface_numbers()?;
    let n70875 = &pushforward_coefficient * &pushforward_coefficient * surface_h2;

    let h = FanoPoly::h();
    let c = FanoPoly::c();
    let int_h2c = fano_integrate(&h.pow(2).mul(&c))?;
    let int_c2 = fano_integrate(&c.pow(2))?;
    let n42525 = &n70875 * &int_c2 / &int_h2c;
    let n945 = &n42525 / &int_h2c;
    Ok(EigenvalueChain {
        pushforward_coefficient,
        n70875,
        n42525,
        n945,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyCheck {
    pub name: &'static str,
    pub lhs: Rat,
    pub rhs: Rat,
}

impl ConsistencyCheck {
    pub fn passes(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checks: Vec<ConsistencyCheck>,
}

impl ConsistencyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(ConsistencyCheck::passes)
    }
}

/// Cross-checks between the series route and the classical route:
///
/// 1. the divisor pushforward: multiplicity 120 at norm 3/2 times the dual
///    coefficient 1/2 reproduces the classical 60;
/// 2. the Lagrangian eigenvector `v = (5 H^2 - c_2(F))/4 = 2c` squares to
///    `48 * (3/2)^2 = 108`;
/// 3. the series eigenvalue at norm 3/2 equals the chain's 945.
pub fn consistency_web() -> Result<ConsistencyReport, FanoError> {
    let mut checks = Vec::new();

    let beta = BetaClass::new(2, rat(3, 2), 1).expect("the Fano class is admissible");
    let mult = criterion::multiplicity(&beta);
    checks.push(ConsistencyCheck {
        name: "divisor-pushforward-60H",
        lhs: &mult * rat(1, 2),
        rhs: rat_i(60),
    });

    let ch = chern_classes();
    let h = FanoPoly::h();
    let c = FanoPoly::c();
    let v = h
        .pow(2)
        .scale(&rat_i(5))
        .sub(&ch.tangent.graded_part(2))
        .scale(&rat(1, 4));
    debug_assert_eq!(v, c.scale(&rat_i(2)));
    let v_squared = fano_integrate(&v.pow(2))?;
    checks.push(ConsistencyCheck {
        name: "lagrangian-class-square",
        lhs: v_squared,
        rhs: rat_i(48) * rat(3, 2) * rat(3, 2),
    });

    let (_, lambda2) = criterion::eigenvalues(&beta).expect("norm 3/2 is nonzero");
    let chain = eigenvalue_chain()?;
    checks.push(ConsistencyCheck {
        name: "eigenvalue-945",
        lhs: lambda2,
        rhs: chain.n945,
    });

    Ok(ConsistencyReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn pushforward_of_h_powers() {
        // p_*(1) = p_*(h) = 0, p_*(h^2) = 1, p_*(h^3) = 3H (Segre consistency)
        let one = PBClass::scalar(FanoPoly::one());
        assert!(one.pushforward().is_zero());
        assert!(one.mul_h().pushforward().is_zero());
        assert_eq!(one.mul_h().mul_h().pushforward(), FanoPoly::one());
        assert_eq!(
            one.mul_h().mul_h().mul_h().pushforward(),
            FanoPoly::h().scale(&rat_i(3))
        );
    }

    #[test]
    fn reduction_rule_matches_sym2_chern_classes() {
        // the pinned rule is the Grothendieck relation for Sym^2 U after
        // normalizing its constant term 4 H c to (5/3) H^3
        let ch = chern_classes();
        let (r2, r1, r0) = h_cubed_rule();
        assert_eq!(r2, ch.sym2_u.graded_part(1).scale(&rat_i(-1)));
        assert_eq!(r1, ch.sym2_u.graded_part(2).scale(&rat_i(-1)));
        assert_eq!(
            r0,
            normalize_on_f(&ch.sym2_u.graded_part(3).scale(&rat_i(-1)))
        );
    }

    #[test]
    fn surface_class_matches_pinned_expansion() {
        let s = surface_class().unwrap();
        let h = FanoPoly::h();
        let c = FanoPoly::c();
        assert_eq!(s.coeffs[2], h.pow(2).sub(&c).scale(&rat_i(5)));
        assert_eq!(s.coeffs[1], h.pow(3).scale(&rat(-35, 6)));
        assert_eq!(s.coeffs[0], h.pow(4).scale(&rat(10, 3)));
    }

    #[test]
    fn surface_numbers_all_315() {
        let (a, b, c) = surface_numbers().unwrap();
        assert_eq!(a, rat_i(315));
        assert_eq!(b, rat_i(315));
        assert_eq!(c, rat_i(315));
        // Hodge-index input: the difference class squares to zero
        assert_eq!(&a - rat_i(2) * &b + &c, Rat::zero());
    }

    #[test]
    fn chain_values() {
        let chain = eigenvalue_chain().unwrap();
        assert_eq!(chain.pushforward_coefficient, rat_i(15));
        assert_eq!(chain.n70875, rat_i(70875));
        assert_eq!(chain.n42525, rat_i(42525));
        assert_eq!(chain.n945, rat_i(945));
    }

    #[test]
    fn web_all_pass() {
        let report = consistency_web().unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.checks.len(), 3);
    }
}
