//! Polynomials in the hyperplane class `H` and the tautological class
//! `c = c_2(U_F^*)` on the Fano fourfold, with integration through the
//! Schubert oracle.
//!
//! Degrees here are complex: `H` has degree 1, `c` degree 2, and anything
//! above degree 4 vanishes on the fourfold. Integration is defined for
//! homogeneous degree-4 input (`H^4`, `H^2 c`, `c^2`) by substituting
//! `H -> sigma_1`, `c -> sigma_{1,1}` and cutting with the Euler class
//! `c_4(Sym^3 U*) = 9 c_2 (2 c_1^2 + c_2)` of the defining section.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use super::schubert::GrClass;
use crate::rational::{rat_i, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanoError {
    #[error(
        "integration needs a homogeneous class of complex degree 4, found degree {found} monomial"
    )]
    DegreeMismatch { found: u32 },
    #[error("degeneracy surface class disagrees with the pinned expansion: computed {computed}, expected {expected}")]
    SurfaceClassMismatch { computed: String, expected: String },
}

/// A polynomial in `H` (degree 1) and `c` (degree 2), truncated above
/// complex degree 4. Keys are exponent pairs `(i, j)` for `H^i c^j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FanoPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl FanoPoly {
    pub fn zero() -> Self {
        FanoPoly::default()
    }

    pub fn one() -> Self {
        FanoPoly::monomial(0, 0, rat_i(1))
    }

    pub fn h() -> Self {
        FanoPoly::monomial(1, 0, rat_i(1))
    }

    pub fn c() -> Self {
        FanoPoly::monomial(0, 1, rat_i(1))
    }

    /// `coeff * H^i c^j`; silently drops monomials above degree 4.
    pub fn monomial(i: u32, j: u32, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() && i + 2 * j <= 4 {
            terms.insert((i, j), coeff);
        }
        FanoPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rat)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn add(&self, other: &FanoPoly) -> FanoPoly {
        let mut terms = self.terms.clone();
        for (&k, c) in &other.terms {
            let entry = terms.entry(k).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        FanoPoly { terms }
    }

    pub fn sub(&self, other: &FanoPoly) -> FanoPoly {
        self.add(&other.scale(&rat_i(-1)))
    }

    pub fn scale(&self, s: &Rat) -> FanoPoly {
        if s.is_zero() {
            return FanoPoly::zero();
        }
        FanoPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &FanoPoly) -> FanoPoly {
        let mut terms: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let (i, j) = (i1 + i2, j1 + j2);
                if i + 2 * j > 4 {
                    continue;
                }
                let entry = terms.entry((i, j)).or_insert_with(Rat::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        FanoPoly { terms }
    }

    pub fn pow(&self, k: u32) -> FanoPoly {
        let mut acc = FanoPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// The degree-`k` graded piece.
    pub fn graded_part(&self, k: u32) -> FanoPoly {
        FanoPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + 2 * j == k)
                .map(|(&key, c)| (key, c.clone()))
                .collect(),
        }
    }

    /// Flips the sign of odd-degree pieces: `c_k(E*) = (-1)^k c_k(E)`.
    pub fn dualize(&self) -> FanoPoly {
        FanoPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| {
                    let s = if (i + 2 * j) % 2 == 1 {
                        -c.clone()
                    } else {
                        c.clone()
                    };
                    ((i, j), s)
                })
                .collect(),
        }
    }

    /// Inverse of a total class with constant term 1.
    pub fn invert_total(&self) -> FanoPoly {
        assert_eq!(
            self.terms.get(&(0, 0)),
            Some(&rat_i(1)),
            "total class must start with 1"
        );
        let x = self.sub(&FanoPoly::one());
        let mut acc = FanoPoly::one();
        let mut pow = FanoPoly::one();
        for _ in 1..=4 {
            pow = pow.mul(&x).scale(&rat_i(-1));
            acc = acc.add(&pow);
        }
        acc
    }
}

impl fmt::Display for FanoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            match i {
                0 => {}
                1 => write!(f, "*H")?,
                _ => write!(f, "*H^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "*c")?,
                _ => write!(f, "*c^{j}")?,
            }
        }
        Ok(())
    }
}

/// Integral over the Fano fourfold of a homogeneous degree-4 class:
/// substitutes `H -> sigma_1`, `c -> sigma_{1,1}`, multiplies by the Euler
/// class of `Sym^3 U*` and integrates over Gr(2,6).
pub fn fano_integrate(p: &FanoPoly) -> Result<Rat, FanoError> {
    let euler = euler_class();
    let mut total = Rat::zero();
    for (i, j, coeff) in p.terms() {
        if i + 2 * j != 4 {
            return Err(FanoError::DegreeMismatch { found: i + 2 * j });
        }
        let mut cls = GrClass::one();
        for _ in 0..i {
            cls = cls.mul_row(1);
        }
        for _ in 0..j {
            cls = cls.mul_sigma11();
        }
        total += coeff * cls.mul(&euler).gr_integrate();
    }
    Ok(total)
}

/// `c_4(Sym^3 U*) = 18 c_1^2 c_2 + 9 c_2^2` as a Schubert class.
fn euler_class() -> GrClass {
    let c1sq_c2 = GrClass::sigma(1, 1).mul_row(1).mul_row(1);
    let c2sq = GrClass::sigma(2, 2);
    c1sq_c2.scale(&rat_i(18)).add(&c2sq.scale(&rat_i(9)))
}

/// Rewrites degree-3 and degree-4 pieces as the multiple of `H^3` / `H^4`
/// they equal in the cohomology of a very general Fano fourfold, where those
/// Hodge spaces are one-dimensional. Constants come from the Schubert
/// pairing, e.g. `H c = (45/108) H^3`.
pub fn normalize_on_f(p: &FanoPoly) -> FanoPoly {
    let int_h4 = fano_integrate(&FanoPoly::h().pow(4)).expect("H^4 is top degree");
    let mut out = p
        .graded_part(0)
        .add(&p.graded_part(1))
        .add(&p.graded_part(2));
    let deg3 = p.graded_part(3);
    if !deg3.is_zero() {
        let lambda = fano_integrate(&deg3.mul(&FanoPoly::h())).expect("degree 4") / &int_h4;
        out = out.add(&FanoPoly::monomial(3, 0, lambda));
    }
    let deg4 = p.graded_part(4);
    if !deg4.is_zero() {
        let lambda = fano_integrate(&deg4).expect("degree 4") / &int_h4;
        out = out.add(&FanoPoly::monomial(4, 0, lambda));
    }
    out
}

/// Total Chern classes of the bundles in play, as polynomials in `H`, `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    /// `c(Q_F^*)` for the rank-4 tautological quotient.
    pub q_dual: FanoPoly,
    /// `c(Sym^3 U_F^*)`; its top piece is the Euler class used for integration.
    pub sym3_u_dual: FanoPoly,
    /// `c(Sym^2 U_F)`, the bundle whose projectivization carries the surface.
    pub sym2_u: FanoPoly,
    /// `c(T_F) = c(U_F^* ⊗ Q_F) / c(Sym^3 U_F^*)`.
    pub tangent: FanoPoly,
}

/// Symmetric polynomials in the two Chern roots of a rank-2 bundle, with
/// coefficients in the `H, c` ring. Used to expand symmetric powers and the
/// tensor with the quotient bundle, then eliminated into `e1, e2`.
#[derive(Debug, Clone, Default)]
struct RootsPoly {
    // (p, q) -> coefficient of a1^p a2^q
    terms: BTreeMap<(u32, u32), FanoPoly>,
}

impl RootsPoly {
    fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), FanoPoly::one());
        RootsPoly { terms }
    }

    /// The linear factor `1 + x a1 + y a2`.
    fn linear(x: i64, y: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), FanoPoly::one());
        if x != 0 {
            terms.insert((1, 0), FanoPoly::monomial(0, 0, rat_i(x)));
        }
        if y != 0 {
            terms.insert((0, 1), FanoPoly::monomial(0, 0, rat_i(y)));
        }
        RootsPoly { terms }
    }

    fn insert_add(&mut self, key: (u32, u32), val: FanoPoly) {
        let entry = self.terms.entry(key).or_insert_with(FanoPoly::zero);
        *entry = entry.add(&val);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn mul(&self, other: &RootsPoly) -> RootsPoly {
        let mut out = RootsPoly::default();
        for (&(p1, q1), c1) in &self.terms {
            for (&(p2, q2), c2) in &other.terms {
                let (p, q) = (p1 + p2, q1 + q2);
                if p + q > 4 {
                    continue;
                }
                out.insert_add((p, q), c1.mul(c2));
            }
        }
        out
    }

    /// Eliminates the roots into `e1 = a1 + a2`, `e2 = a1 a2`. The input must
    /// be symmetric; monomial pairs reduce via `a1^p a2^q + a1^q a2^p =
    /// e2^q P_{p-q}` with `P_k` the Newton power sums.
    fn reduce(&self, e1: &FanoPoly, e2: &FanoPoly) -> FanoPoly {
        // Newton recurrence: P_0 = 2, P_1 = e1, P_k = e1 P_{k-1} - e2 P_{k-2}
        let mut power_sums = vec![FanoPoly::monomial(0, 0, rat_i(2)), e1.clone()];
        for k in 2..=4usize {
            let next = e1.mul(&power_sums[k - 1]).sub(&e2.mul(&power_sums[k - 2]));
            power_sums.push(next);
        }
        let mut out = FanoPoly::zero();
        for (&(p, q), coeff) in &self.terms {
            match p.cmp(&q) {
                std::cmp::Ordering::Greater => {
                    let partner = self.terms.get(&(q, p)).cloned().unwrap_or_default();
                    assert_eq!(coeff, &partner, "roots polynomial is not symmetric");
                    out = out.add(&coeff.mul(&e2.pow(q)).mul(&power_sums[(p - q) as usize]));
                }
                std::cmp::Ordering::Equal => {
                    out = out.add(&coeff.mul(&e2.pow(p)));
                }
                std::cmp::Ordering::Less => {} // handled with its partner
            }
        }
        out
    }
}

/// `c(Sym^k E)` for a rank-2 bundle with `c_1 = e1`, `c_2 = e2`: the roots of
/// the symmetric power are `(k - t) a1 + t a2`.
fn sym_power_chern(k: u32, e1: &FanoPoly, e2: &FanoPoly) -> FanoPoly {
    let mut acc = RootsPoly::one();
    for t in 0..=k {
        acc = acc.mul(&RootsPoly::linear((k - t) as i64, t as i64));
    }
    acc.reduce(e1, e2)
}

/// Total Chern classes of `Q_F^*`, `Sym^3 U_F^*`, `Sym^2 U_F` and `T_F`.
pub fn chern_classes() -> ChernData {
    let h = FanoPoly::h();
    let c = FanoPoly::c();
    // c(U) = 1 - H + c, c(Q) = c(U)^{-1}
    let u_total = FanoPoly::one().sub(&h).add(&c);
    let q_total = u_total.invert_total();
    let q_dual = q_total.dualize();

    let sym3_u_dual = sym_power_chern(3, &h, &c);
    let sym2_u = sym_power_chern(2, &h.scale(&rat_i(-1)), &c);

    // c(U* ⊗ Q): roots a_i + b_j, folded as prod_i sum_s c_s(Q) (1 + a_i)^{4-s}
    let factor_in = |var: usize| -> RootsPoly {
        let mut acc = RootsPoly::default();
        for s in 0..=4u32 {
            let cs = q_total.graded_part(s);
            if cs.is_zero() {
                continue;
            }
            // (1 + a)^{4-s} expanded in the chosen root
            for t in 0..=(4 - s) {
                let binom = binomial(4 - s, t);
                let key = if var == 0 { (t, 0) } else { (0, t) };
                acc.insert_add(key, cs.scale(&rat_i(binom)));
            }
        }
        acc
    };
    let tangent_ambient = factor_in(0).mul(&factor_in(1)).reduce(&h, &c);
    let tangent = tangent_ambient.mul(&sym3_u_dual.invert_total());

    ChernData {
        q_dual,
        sym3_u_dual,
        sym2_u,
        tangent,
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}
