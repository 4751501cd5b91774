//! Truncated Laurent series in `q` and `y` over exact rationals.
//!
//! A [`QYSeries`] stores finitely many coefficients of `q^d y^r`. The
//! y-exponent `r` can be a half-integer (the theta function forces this), so
//! it is kept as the doubled integer `r2 = 2r` and all keys stay integral.
//!
//! Exactness contract: every coefficient with `q_min <= d < q_prec` is the
//! true coefficient of the modelled function, and coefficients below `q_min`
//! vanish. Products propagate the guarantee via
//! `q_prec_out = min(a.q_prec + b.q_min, b.q_prec + a.q_min)`, so a returned
//! coefficient is never approximate.
//!
//! Series built from theta have provably finite, complete y-support at every
//! q-order. The one construction that does not (the direct Weierstrass
//! expansion, whose q^0 row has infinite y-support) is quarantined behind an
//! explicit `y_window`: coefficients with `|r| <= y_window` are guaranteed,
//! everything wider is dropped. Windowed series can only be multiplied by
//! unwindowed ones, shrinking the window by the partner's y-width.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{rat, rat_i, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("requested y-window {requested} cannot be guaranteed (window {window} shrunk by partner width {partner_width})")]
    WindowUnderflow {
        requested: i64,
        window: i64,
        partner_width: i64,
    },
    #[error("series is not invertible as a q-unit: {reason}")]
    NotInvertible { reason: String },
    #[error("coefficient of q^{d} is outside the guaranteed range {q_min} <= d < {q_prec}")]
    PrecisionExceeded { d: i64, q_min: i64, q_prec: i64 },
    #[error("y-exponent {r2}/2 is outside the guaranteed window |r| <= {window}")]
    WindowExceeded { r2: i64, window: i64 },
}

/// Truncated Laurent series in `q`, `y` with exact rational coefficients.
///
/// Keys are `(d, r2)` for the monomial `q^d y^(r2/2)`. No zero coefficients
/// are ever stored; the zero series is an empty map with `q_min = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QYSeries {
    q_min: i64,
    q_prec: i64,
    terms: BTreeMap<(i64, i64), Rat>,
    y_window: Option<i64>,
}

impl QYSeries {
    /// The zero series, guaranteed exact below `q_prec`.
    pub fn zero(q_prec: i64) -> Self {
        QYSeries {
            q_min: 0,
            q_prec,
            terms: BTreeMap::new(),
            y_window: None,
        }
    }

    /// The constant series 1.
    pub fn one(q_prec: i64) -> Self {
        Self::monomial(0, 0, rat_i(1), q_prec)
    }

    /// The single term `c * q^d y^(r2/2)`; `q_min` is set to the valuation `d`.
    pub fn monomial(d: i64, r2: i64, c: Rat, q_prec: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() && d < q_prec {
            terms.insert((d, r2), c);
        }
        QYSeries {
            q_min: d.min(q_prec),
            q_prec,
            terms,
            y_window: None,
        }
    }

    /// Builds a windowed series: coefficients with `|r| <= window` are
    /// guaranteed exact, wider terms are dropped.
    pub fn from_terms_windowed<I>(q_min: i64, q_prec: i64, window: i64, iter: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), Rat)>,
    {
        Self::from_terms(q_min, q_prec, iter).with_window(Some(window))
    }

    /// Builds a series from `(d, r2) -> coefficient` pairs, dropping zeros.
    ///
    /// Panics if a key lies outside `[q_min, q_prec)`.
    pub fn from_terms<I>(q_min: i64, q_prec: i64, iter: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), Rat)>,
    {
        let mut terms = BTreeMap::new();
        for ((d, r2), c) in iter {
            assert!(
                q_min <= d && d < q_prec,
                "term q^{d} outside [{q_min}, {q_prec})"
            );
            if !c.is_zero() {
                let old = terms.insert((d, r2), c);
                assert!(old.is_none(), "duplicate key ({d}, {r2})");
            }
        }
        QYSeries {
            q_min,
            q_prec,
            terms,
            y_window: None,
        }
    }

    pub fn q_min(&self) -> i64 {
        self.q_min
    }

    pub fn q_prec(&self) -> i64 {
        self.q_prec
    }

    pub fn y_window(&self) -> Option<i64> {
        self.y_window
    }

    pub fn is_zero_series(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored terms in `(d, r2)` order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &Rat)> {
        self.terms.iter().map(|(&(d, r2), c)| (d, r2, c))
    }

    /// Largest `|r2|` over stored terms (0 for the zero series).
    pub fn max_abs_r2(&self) -> i64 {
        self.terms
            .keys()
            .map(|&(_, r2)| r2.abs())
            .max()
            .unwrap_or(0)
    }

    fn with_window(mut self, w: Option<i64>) -> Self {
        if let Some(w) = w {
            self.terms.retain(|&(_, r2), _| r2.abs() <= 2 * w);
        }
        self.y_window = w;
        self
    }

    /// Drops guarantees (and terms) at or above `q_prec`.
    pub fn truncate(&self, q_prec: i64) -> Self {
        let q_prec = q_prec.min(self.q_prec);
        let mut out = self.clone();
        out.q_prec = q_prec;
        out.q_min = out.q_min.min(q_prec);
        out.terms.retain(|&(d, _), _| d < q_prec);
        out
    }

    /// Multiplies by `q^k` (exponent shift).
    pub fn shift_q(&self, k: i64) -> Self {
        QYSeries {
            q_min: self.q_min + k,
            q_prec: self.q_prec + k,
            terms: self
                .terms
                .iter()
                .map(|(&(d, r2), c)| ((d + k, r2), c.clone()))
                .collect(),
            y_window: self.y_window,
        }
    }

    /// Exact coefficient of `q^d y^(r2/2)`; zero if absent.
    pub fn coeff_at(&self, d: i64, r2: i64) -> Result<Rat, SeriesError> {
        if d < self.q_min || d >= self.q_prec {
            return Err(SeriesError::PrecisionExceeded {
                d,
                q_min: self.q_min,
                q_prec: self.q_prec,
            });
        }
        if let Some(w) = self.y_window {
            if r2.abs() > 2 * w {
                return Err(SeriesError::WindowExceeded { r2, window: w });
            }
        }
        Ok(self.terms.get(&(d, r2)).cloned().unwrap_or_else(Rat::zero))
    }

    pub fn add(&self, other: &QYSeries) -> QYSeries {
        let q_prec = self.q_prec.min(other.q_prec);
        let q_min = self.q_min.min(other.q_min);
        let window = match (self.y_window, other.y_window) {
            (None, None) => None,
            (Some(w), None) | (None, Some(w)) => Some(w),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let mut terms = self.terms.clone();
        terms.retain(|&(d, _), _| d < q_prec);
        for (&(d, r2), c) in &other.terms {
            if d >= q_prec {
                continue;
            }
            let entry = terms.entry((d, r2)).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        QYSeries {
            q_min,
            q_prec,
            terms,
            y_window: None,
        }
        .with_window(window)
    }

    pub fn neg(&self) -> QYSeries {
        self.scale(&rat_i(-1))
    }

    pub fn sub(&self, other: &QYSeries) -> QYSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rat) -> QYSeries {
        if s.is_zero() {
            let mut out = QYSeries::zero(self.q_prec);
            out.q_min = self.q_min;
            out.y_window = self.y_window;
            return out;
        }
        QYSeries {
            q_min: self.q_min,
            q_prec: self.q_prec,
            terms: self.terms.iter().map(|(&k, c)| (k, c * s)).collect(),
            y_window: self.y_window,
        }
    }

    /// Cauchy product of two unwindowed series.
    ///
    /// Exactness propagates as `q_prec = min(a.q_prec + b.q_min, b.q_prec + a.q_min)`;
    /// panics if either operand carries a y-window (use [`QYSeries::mul_windowed`]).
    pub fn mul(&self, other: &QYSeries) -> QYSeries {
        assert!(
            self.y_window.is_none() && other.y_window.is_none(),
            "windowed operands require mul_windowed with an explicit target window"
        );
        self.mul_raw(other, None)
    }

    /// Product where exactly one operand carries a y-window.
    ///
    /// The result is guaranteed on `|r| <= w_out`, which must satisfy
    /// `w_out <= W_in - S` with `S` the y-width of the unwindowed factor.
    pub fn mul_windowed(&self, other: &QYSeries, w_out: i64) -> Result<QYSeries, SeriesError> {
        let (window, partner) = match (self.y_window, other.y_window) {
            (Some(w), None) => (w, other),
            (None, Some(w)) => (w, self),
            (Some(a), Some(b)) => {
                return Err(SeriesError::WindowUnderflow {
                    requested: w_out,
                    window: a.min(b),
                    partner_width: 0,
                })
            }
            (None, None) => {
                return Err(SeriesError::WindowUnderflow {
                    requested: w_out,
                    window: 0,
                    partner_width: 0,
                })
            }
        };
        // partner width in r-units, rounded up for half-integer support
        let partner_width = (partner.max_abs_r2() + 1) / 2;
        if w_out < 0 || w_out > window - partner_width {
            return Err(SeriesError::WindowUnderflow {
                requested: w_out,
                window,
                partner_width,
            });
        }
        Ok(self.mul_raw(other, Some(w_out)))
    }

    fn mul_raw(&self, other: &QYSeries, w_out: Option<i64>) -> QYSeries {
        let q_min = self.q_min + other.q_min;
        let q_prec = (self.q_prec + other.q_min).min(other.q_prec + self.q_min);
        let mut terms: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for (&(da, ra), ca) in &self.terms {
            for (&(db, rb), cb) in &other.terms {
                let d = da + db;
                if d >= q_prec {
                    // keys are sorted by (d, r2), so later db only grow
                    break;
                }
                let r2 = ra + rb;
                if let Some(w) = w_out {
                    if r2.abs() > 2 * w {
                        continue;
                    }
                }
                let entry = terms.entry((d, r2)).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        QYSeries {
            q_min,
            q_prec,
            terms,
            y_window: w_out,
        }
    }

    /// `k`-th power by repeated multiplication; `pow(0)` is the constant 1.
    pub fn pow(&self, k: u32) -> QYSeries {
        assert!(
            self.y_window.is_none(),
            "powers of windowed series are not supported"
        );
        let mut acc = QYSeries::one(self.q_prec);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverts a y-free series whose leading coefficient sits at `q_min`.
    ///
    /// Factoring `a = q^v * u` with `u` a unit power series, the inverse is
    /// `q^{-v} * u^{-1}` computed by the standard recurrence, exact to the
    /// propagated precision `a.q_prec - 2 q_min`.
    pub fn invert_q_unit(&self) -> Result<QYSeries, SeriesError> {
        if self.terms.keys().any(|&(_, r2)| r2 != 0) {
            return Err(SeriesError::NotInvertible {
                reason: "series depends on y".into(),
            });
        }
        let v = self.q_min;
        let n = self.q_prec - v;
        if n < 1 {
            return Err(SeriesError::NotInvertible {
                reason: "no guaranteed coefficients".into(),
            });
        }
        let lead = self.terms.get(&(v, 0)).cloned().unwrap_or_else(Rat::zero);
        if lead.is_zero() {
            return Err(SeriesError::NotInvertible {
                reason: format!("leading coefficient at q^{v} is zero"),
            });
        }
        let u = |j: i64| -> Rat {
            self.terms
                .get(&(v + j, 0))
                .cloned()
                .unwrap_or_else(Rat::zero)
        };
        let lead_inv = rat_i(1) / &lead;
        let mut inv: Vec<Rat> = Vec::with_capacity(n as usize);
        inv.push(lead_inv.clone());
        for j in 1..n {
            let mut s = Rat::zero();
            for i in 1..=j {
                let ui = u(i);
                if ui.is_zero() {
                    continue;
                }
                s += ui * &inv[(j - i) as usize];
            }
            inv.push(-(&lead_inv * s));
        }
        let terms = inv
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| ((-v + j as i64, 0), c))
            .collect();
        Ok(QYSeries {
            q_min: -v,
            q_prec: -v + n,
            terms,
            y_window: None,
        })
    }

    /// The derivation `y d/dy`: multiplies the `(d, r)` coefficient by `r`.
    pub fn dy(&self) -> QYSeries {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .filter(|(&(_, r2), _)| r2 != 0)
            .map(|(&(d, r2), c)| ((d, r2), c * rat(r2, 2)))
            .collect();
        out
    }

    /// The derivation `q d/dq`: multiplies the `(d, r)` coefficient by `d`.
    pub fn dq(&self) -> QYSeries {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .filter(|(&(d, _), _)| d != 0)
            .map(|(&(d, r2), c)| ((d, r2), c * rat_i(d)))
            .collect();
        out
    }

    /// The heat operator `2 q d/dq - (1/2m)(y d/dy)^2` for index `m >= 1`.
    ///
    /// A single term `q^d y^r` is scaled by exactly `2d - r^2/(2m)`.
    pub fn heat(&self, m: u32) -> QYSeries {
        assert!(m >= 1, "heat operator index must be >= 1");
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .filter_map(|(&(d, r2), c)| {
                let factor = rat_i(2 * d) - rat(r2 * r2, 8 * m as i64);
                if factor.is_zero() {
                    None
                } else {
                    Some(((d, r2), c * factor))
                }
            })
            .collect();
        out
    }

    /// Structural equality of the stored coefficient maps.
    pub fn same_terms(&self, other: &QYSeries) -> bool {
        self.terms == other.terms
    }
}

/// Signed check used by callers that only trust nonnegative series.
pub fn all_coefficients_nonnegative(s: &QYSeries) -> bool {
    s.terms().all(|(_, _, c)| !c.is_negative())
}
