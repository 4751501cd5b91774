//! Named (quasi-)Jacobi forms and coefficient extraction by norm and residue.
//!
//! Forms are built as exact q-expansions. The index of a form governs which
//! `(d, r)` coefficients agree: for an index-`m` form, the coefficient of
//! `q^d y^r` depends only on the invariant `2d - r^2/(2m)` and on `r` up to
//! sign modulo `2m`. That well-definedness is a testable invariant here, and
//! [`jcoeff`] relies on it to pick the minimal representative.
//!
//! The index is stored doubled (`index2 = 2m`) so that theta, whose square
//! has index 1, fits the same bookkeeping. Weight is metadata only.
//!
//! Everything on the production path is built theta-first: `phi` comes from
//! `D_y^2(T) T - D_y(T)^2`, and the Weierstrass factor is eliminated through
//! `wp * T^2 = (E2/12) T^2 - phi`. The direct windowed Weierstrass expansion
//! exists only as a cross-check, because its q^0 row has infinite y-support.

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::qseries::{QYSeries, SeriesError};
use crate::rational::{rat, rat_i, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobiError {
    #[error("form has doubled index {form_index2} but the residue set has modulus {modulus}")]
    IndexMismatch { form_index2: i64, modulus: i64 },
    #[error(
        "no integer residue representative makes (norm + r^2/2m)/2 an integer for norm {norm}"
    )]
    InadmissiblePair { norm: Rat },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A q-expansion tagged with weight and (doubled) index bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiElement {
    pub series: QYSeries,
    /// Weight metadata; multiplication adds weights.
    pub weight: i64,
    /// Doubled index `2m`; multiplication adds indices.
    pub index2: i64,
}

impl JacobiElement {
    pub fn new(series: QYSeries, weight: i64, index2: i64) -> Self {
        JacobiElement {
            series,
            weight,
            index2,
        }
    }

    /// Integral index `m`, if the doubled index is even.
    pub fn index(&self) -> Option<i64> {
        (self.index2 % 2 == 0).then_some(self.index2 / 2)
    }

    pub fn mul(&self, other: &JacobiElement) -> JacobiElement {
        JacobiElement::new(
            self.series.mul(&other.series),
            self.weight + other.weight,
            self.index2 + other.index2,
        )
    }

    pub fn pow(&self, k: u32) -> JacobiElement {
        JacobiElement::new(
            self.series.pow(k),
            self.weight * k as i64,
            self.index2 * k as i64,
        )
    }

    pub fn add(&self, other: &JacobiElement) -> JacobiElement {
        assert_eq!(self.index2, other.index2, "index mismatch in sum");
        assert_eq!(self.weight, other.weight, "weight mismatch in sum");
        JacobiElement::new(self.series.add(&other.series), self.weight, self.index2)
    }

    pub fn sub(&self, other: &JacobiElement) -> JacobiElement {
        self.add(&other.scale(&rat_i(-1)))
    }

    pub fn scale(&self, s: &Rat) -> JacobiElement {
        JacobiElement::new(self.series.scale(s), self.weight, self.index2)
    }

    pub fn invert_q_unit(&self) -> Result<JacobiElement, SeriesError> {
        assert_eq!(self.index2, 0, "only index-0 forms are inverted");
        Ok(JacobiElement::new(
            self.series.invert_q_unit()?,
            -self.weight,
            0,
        ))
    }

    pub fn heat(&self, m: u32) -> JacobiElement {
        JacobiElement::new(self.series.heat(m), self.weight + 2, self.index2)
    }
}

/// The residue pair `{rho, -rho}` in `Z/(2m)Z`; modulus 0 collapses to `{0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    modulus: i64,
    values: BTreeSet<i64>,
}

impl ResidueSet {
    /// Normalizes a single representative into the closed `{rho, -rho}` set.
    pub fn new(modulus: i64, representative: i64) -> Self {
        assert!(modulus >= 0);
        if modulus == 0 {
            return ResidueSet {
                modulus: 0,
                values: BTreeSet::from([0]),
            };
        }
        let r = representative.rem_euclid(modulus);
        ResidueSet {
            modulus,
            values: BTreeSet::from([r, (modulus - r) % modulus]),
        }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.iter().copied()
    }

    pub fn contains(&self, x: i64) -> bool {
        if self.modulus == 0 {
            x == 0
        } else {
            self.values.contains(&x.rem_euclid(self.modulus))
        }
    }

    /// Representative of minimal absolute value, ties resolved to `r >= 0`.
    pub fn min_abs_representative(&self) -> i64 {
        if self.modulus == 0 {
            return 0;
        }
        self.values
            .iter()
            .map(|&v| {
                if v <= self.modulus - v {
                    v
                } else {
                    v - self.modulus
                }
            })
            .min_by_key(|&r| (r.abs(), r < 0))
            .expect("residue set is nonempty")
    }
}

/// The Jacobi theta function
/// `(y^{1/2} + y^{-1/2}) prod_{m>=1} (1 + y q^m)(1 + y^{-1} q^m)/(1 - q^m)^2`
/// expanded to q-precision `q_prec`. Weight -1; doubled index 1.
pub fn theta(q_prec: i64) -> JacobiElement {
    assert!(q_prec >= 1);
    let mut s = QYSeries::from_terms(0, q_prec, [((0, 1), rat_i(1)), ((0, -1), rat_i(1))]);
    for m in 1..q_prec {
        let up = QYSeries::from_terms(0, q_prec, [((0, 0), rat_i(1)), ((m, 2), rat_i(1))]);
        let down = QYSeries::from_terms(0, q_prec, [((0, 0), rat_i(1)), ((m, -2), rat_i(1))]);
        s = s.mul(&up).mul(&down);
        // 1/(1-q^m)^2 = sum_j (j+1) q^{mj}
        let geo = QYSeries::from_terms(
            0,
            q_prec,
            (0..)
                .map(|j| ((m * j, 0), rat_i(j + 1)))
                .take_while(|&((d, _), _)| d < q_prec),
        );
        s = s.mul(&geo);
    }
    JacobiElement::new(s, -1, 1)
}

/// `prod_{m>=1} (1 - q^m)` to the given precision (y-free).
fn euler_product(q_prec: i64) -> QYSeries {
    let mut s = QYSeries::one(q_prec);
    for m in 1..q_prec {
        let f = QYSeries::from_terms(0, q_prec, [((0, 0), rat_i(1)), ((m, 0), rat_i(-1))]);
        s = s.mul(&f);
    }
    s
}

/// Eisenstein series `E_k = 1 - (2k/B_k) sum sigma_{k-1}(m) q^m`, `k` in {2, 4, 6}.
pub fn eisenstein(k: u32, q_prec: i64) -> JacobiElement {
    let mult: i64 = match k {
        2 => -24,
        4 => 240,
        6 => -504,
        _ => panic!("Eisenstein weight must be 2, 4 or 6"),
    };
    let mut sigma = vec![0i128; q_prec.max(1) as usize];
    for d in 1..q_prec {
        let dk = (d as i128).pow(k - 1);
        let mut m = d;
        while m < q_prec {
            sigma[m as usize] += dk;
            m += d;
        }
    }
    let mut terms = vec![((0, 0), rat_i(1))];
    for m in 1..q_prec {
        let c = Rat::from_integer(sigma[m as usize].into()) * rat_i(mult);
        terms.push(((m, 0), c));
    }
    JacobiElement::new(QYSeries::from_terms(0, q_prec, terms), k as i64, 0)
}

/// The modular discriminant `q prod_{m>=1} (1 - q^m)^24`. Weight 12, index 0.
pub fn delta(q_prec: i64) -> JacobiElement {
    assert!(q_prec >= 2);
    let p = euler_product(q_prec);
    let p2 = p.mul(&p);
    let p4 = p2.mul(&p2);
    let p8 = p4.mul(&p4);
    let p16 = p8.mul(&p8);
    let p24 = p16.mul(&p8);
    JacobiElement::new(p24.shift_q(1).truncate(q_prec), 12, 0)
}

/// The Weierstrass expansion
/// `1/12 - y/(1+y)^2 + sum_{m>=1} sum_{d|m} d((-y)^d - 2 + (-y)^{-d}) q^m`,
/// with y-support truncated to `|r| <= w`. Weight 2, index 0, windowed.
///
/// The q^0 row has infinite y-support, which is why this constructor is the
/// only windowed one; production paths eliminate it via theta derivatives.
pub fn wp_windowed(q_prec: i64, w: i64) -> JacobiElement {
    assert!(w >= 1);
    let mut terms: Vec<((i64, i64), Rat)> = vec![((0, 0), rat(1, 12))];
    // -y/(1+y)^2 = sum_{d>=1} (-1)^d d y^d
    for d in 1..=w {
        let sign = if d % 2 == 0 { 1 } else { -1 };
        terms.push(((0, 2 * d), rat_i(sign * d)));
    }
    for m in 1..q_prec {
        let mut constant = 0i64;
        for d in 1..=m {
            if m % d != 0 {
                continue;
            }
            constant -= 2 * d;
            if d <= w {
                let sign = if d % 2 == 0 { 1 } else { -1 };
                terms.push(((m, 2 * d), rat_i(sign * d)));
                terms.push(((m, -2 * d), rat_i(sign * d)));
            }
        }
        terms.push(((m, 0), rat_i(constant)));
    }
    let series = QYSeries::from_terms_windowed(0, q_prec, w, terms);
    JacobiElement::new(series, 2, 0)
}

/// The weight-0, index-1 form `phi = (-wp + E2/12) T^2`, built wp-free as
/// `D_y^2(T) T - D_y(T)^2`. All coefficients are nonnegative and every row
/// has finite, complete y-support.
pub fn phi(q_prec: i64) -> JacobiElement {
    let th = theta(q_prec).series;
    let dy1 = th.dy();
    let dy2 = dy1.dy();
    let series = dy2.mul(&th).sub(&dy1.mul(&dy1));
    JacobiElement::new(series, 0, 2)
}

/// Independent oracle for [`phi`]: the symmetrized convolution
/// `[phi]_{q^n y^k} = 1/2 sum c(n1,k1) c(n2,k2) (k1 - k2)^2`
/// computed directly from the theta coefficients.
pub fn phi_via_convolution(q_prec: i64) -> JacobiElement {
    let th = theta(q_prec).series;
    let terms: Vec<(i64, i64, Rat)> = th.terms().map(|(d, r2, c)| (d, r2, c.clone())).collect();
    let mut map = std::collections::BTreeMap::<(i64, i64), Rat>::new();
    for (d1, r21, c1) in &terms {
        for (d2, r22, c2) in &terms {
            let d = d1 + d2;
            if d >= q_prec {
                continue;
            }
            // (k1 - k2)^2 = ((r21 - r22)/2)^2, halved
            let k_diff2 = rat((r21 - r22) * (r21 - r22), 8);
            if k_diff2.is_zero() {
                continue;
            }
            let entry = map.entry((d, r21 + r22)).or_insert_with(Rat::zero);
            *entry += c1 * c2 * k_diff2;
        }
    }
    map.retain(|_, c| !c.is_zero());
    JacobiElement::new(QYSeries::from_terms(0, q_prec, map), 0, 2)
}

/// The named forms surfaced to callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedForm {
    /// theta itself (half-integral y-exponents)
    Theta,
    E2,
    E4,
    E6,
    Delta,
    /// `phi_{-2,1} = T^2`
    PhiM21,
    /// `phi_{0,1} = E2 T^2 - 12 phi` (the wp-free reformulation)
    Phi01,
    Phi,
    /// `f = phi / Delta`
    F,
    /// `g = (12 phi - 6 E2 T^2) / (5 Delta)`
    G,
    /// `phi^{n-1} / Delta` for K3^[n]
    PhiPowOverDelta(u32),
}

/// Builds a named form at the given q-precision.
pub fn named_form(name: NamedForm, q_prec: i64) -> JacobiElement {
    match name {
        NamedForm::Theta => theta(q_prec),
        NamedForm::E2 => eisenstein(2, q_prec),
        NamedForm::E4 => eisenstein(4, q_prec),
        NamedForm::E6 => eisenstein(6, q_prec),
        NamedForm::Delta => delta(q_prec),
        NamedForm::PhiM21 => {
            let th = theta(q_prec);
            JacobiElement::new(th.series.pow(2), -2, 2)
        }
        NamedForm::Phi01 => {
            let th2 = named_form(NamedForm::PhiM21, q_prec);
            let e2 = eisenstein(2, q_prec);
            e2.mul(&th2).sub(&phi(q_prec).scale(&rat_i(12)))
        }
        NamedForm::Phi => phi(q_prec),
        NamedForm::F => {
            let inv = delta(q_prec).invert_q_unit().expect("Delta is a q-unit");
            phi(q_prec).mul(&inv)
        }
        NamedForm::G => {
            let th2 = named_form(NamedForm::PhiM21, q_prec);
            let e2 = eisenstein(2, q_prec);
            let numerator = phi(q_prec)
                .scale(&rat_i(12))
                .sub(&e2.mul(&th2).scale(&rat_i(6)));
            let inv = delta(q_prec)
                .scale(&rat_i(5))
                .invert_q_unit()
                .expect("5 Delta is a q-unit");
            numerator.mul(&inv)
        }
        NamedForm::PhiPowOverDelta(n) => {
            assert!(n >= 1);
            let inv = delta(q_prec).invert_q_unit().expect("Delta is a q-unit");
            phi(q_prec).pow(n - 1).mul(&inv)
        }
    }
}

/// Coefficient of an index-`m` form at prescribed norm and residue set:
/// picks the residue representative `r` of minimal `|r|` (ties toward
/// `r >= 0`), sets `d = (norm + r^2/(2m))/2` and reads the coefficient of
/// `q^d y^r`. Index-0 forms read the plain coefficient of `q^{norm/2}`.
///
/// Exponents below the form's Laurent valuation floor return exact zero.
pub fn jcoeff(form: &JacobiElement, norm: &Rat, rho: &ResidueSet) -> Result<Rat, JacobiError> {
    if form.index2 != rho.modulus() {
        return Err(JacobiError::IndexMismatch {
            form_index2: form.index2,
            modulus: rho.modulus(),
        });
    }
    let (d, r2) = if form.index2 == 0 {
        let d_rat = norm / rat_i(2);
        if !d_rat.is_integer() {
            return Err(JacobiError::InadmissiblePair { norm: norm.clone() });
        }
        (rat_to_i64(&d_rat), 0)
    } else {
        let two_m = form.index2;
        let r = rho.min_abs_representative();
        let d_rat = (norm + rat(r * r, two_m)) / rat_i(2);
        if !d_rat.is_integer() {
            return Err(JacobiError::InadmissiblePair { norm: norm.clone() });
        }
        (rat_to_i64(&d_rat), 2 * r)
    };
    if d < form.series.q_min() {
        // below the valuation floor every coefficient vanishes
        return Ok(Rat::zero());
    }
    Ok(form.series.coeff_at(d, r2)?)
}

fn rat_to_i64(x: &Rat) -> i64 {
    x.to_integer().to_i64().expect("exponent fits in i64")
}

/// Checks the coefficient dependence property of an integral-index form:
/// within precision, the coefficient of `q^d y^r` may depend only on the
/// invariant `2d - r^2/(2m)` and on `r` up to sign modulo `2m`. Returns a
/// description of the first violation, or `None` when the property holds
/// (including agreement with absent, i.e. zero, representatives).
pub fn well_definedness_violation(form: &JacobiElement) -> Option<String> {
    let two_m = form.index2;
    if two_m < 2 || two_m % 2 != 0 {
        return Some(format!(
            "doubled index {two_m} is not a positive even integer"
        ));
    }
    let canonical = |r: i64| -> i64 {
        let v = r.rem_euclid(two_m);
        v.min((two_m - v) % two_m)
    };
    let series = &form.series;
    let mut classes: std::collections::BTreeMap<(Rat, i64), Rat> = Default::default();
    for (d, r2, c) in series.terms() {
        if r2 % 2 != 0 {
            return Some(format!("half-integral exponent r = {r2}/2 at q^{d}"));
        }
        let r = r2 / 2;
        let invariant = rat_i(2 * d) - rat(r * r, two_m);
        if let Some(prev) = classes.insert((invariant.clone(), canonical(r)), c.clone()) {
            if &prev != c {
                return Some(format!(
                    "conflicting coefficients {prev} and {c} at invariant {invariant}, residue {r}"
                ));
            }
        }
    }
    for ((invariant, res), value) in &classes {
        // representatives with d < q_prec satisfy r^2 < 2m (2 q_prec - invariant)
        let lim = (rat_i(2 * series.q_prec()) - invariant) * rat_i(two_m);
        let r_bound = if lim <= Rat::zero() {
            0
        } else {
            2 + lim.ceil().to_integer().to_i64().unwrap_or(0).isqrt()
        };
        for r in -r_bound..=r_bound {
            if canonical(r) != *res {
                continue;
            }
            let d_rat = (invariant + rat(r * r, two_m)) / rat_i(2);
            if !d_rat.is_integer() {
                continue;
            }
            let d = rat_to_i64(&d_rat);
            if d < series.q_min() || d >= series.q_prec() {
                continue;
            }
            let c = series.coeff_at(d, 2 * r).expect("within precision");
            if &c != value {
                return Some(format!(
                    "representative (d, r) = ({d}, {r}) carries {c}, class value is {value}"
                ));
            }
        }
    }
    None
}
