//! Decision procedures for uniruled divisors in primitive curve classes on
//! holomorphic symplectic varieties of K3^[n] type.
//!
//! A primitive class is modelled by its deformation invariants: the half
//! dimension `n`, the Beauville–Bogomolov norm, and the residue set in
//! `Z/(2n-2)Z`. The multiplicity of the uniruled divisor swept out by
//! rational curves in the class is the corresponding coefficient of
//! `phi^{n-1}/Delta`; existence is equivalent to that coefficient being
//! positive, and since every coefficient of the series is nonnegative,
//! nonexistence is exactly multiplicity zero.
//!
//! The combinatorial route enumerates explicit witnesses `(d_i, r_i)` with
//! `2 d_i - r_i^2/2 >= 0` reproducing the norm and residue. The series route
//! is ground truth: witness search is bounded and its absence within bounds
//! proves nothing by itself.

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::jacobi::{self, jcoeff, JacobiError, NamedForm, ResidueSet};
use crate::rational::{rat, rat_i, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("n must be >= 1, got {0}")]
    InvalidDimension(u32),
    #[error("norm {norm} has denominator not dividing 2n-2 = {two_m}")]
    NormDenominator { norm: Rat, two_m: i64 },
    #[error("class (n = {n}, norm {norm}, residue {rep}) is inadmissible: no integer r in the residue set makes norm + r^2/(2n-2) an even integer")]
    Inadmissible { n: u32, norm: Rat, rep: i64 },
    #[error("eigenvalues are only defined for n = 2, got n = {0}")]
    EigenvaluesNeedK3Two(u32),
    #[error("the norm-0 eigenvalue case is unsupported (the correspondence degenerates)")]
    ZeroNormUnsupported,
    #[error(transparent)]
    Jacobi(#[from] JacobiError),
}

/// Deformation invariants of a primitive curve class on a K3^[n]-type variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaClass {
    n: u32,
    norm: Rat,
    residue: ResidueSet,
}

impl BetaClass {
    /// Validates the invariants: the norm denominator divides `2n-2`, and
    /// some integer in the residue class satisfies the parity condition
    /// `norm + r^2/(2n-2) in 2Z`. For `n = 1` the residue collapses to 0 and
    /// admissibility means the norm is an even integer.
    pub fn new(n: u32, norm: Rat, residue_rep: i64) -> Result<Self, CriterionError> {
        if n < 1 {
            return Err(CriterionError::InvalidDimension(n));
        }
        let two_m = 2 * (n as i64 - 1);
        if n == 1 {
            if !(norm.clone() / rat_i(2)).is_integer() {
                return Err(CriterionError::Inadmissible {
                    n,
                    norm,
                    rep: residue_rep,
                });
            }
            return Ok(BetaClass {
                n,
                norm,
                residue: ResidueSet::new(0, 0),
            });
        }
        if !(norm.clone() * rat_i(two_m)).is_integer() {
            return Err(CriterionError::NormDenominator { norm, two_m });
        }
        let residue = ResidueSet::new(two_m, residue_rep);
        // the parity of norm + r^2/(2n-2) is constant on the closed residue set
        let r = residue.min_abs_representative();
        let parity = (&norm + rat(r * r, two_m)) / rat_i(2);
        if !parity.is_integer() {
            return Err(CriterionError::Inadmissible {
                n,
                norm,
                rep: residue_rep,
            });
        }
        Ok(BetaClass { n, norm, residue })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn norm(&self) -> &Rat {
        &self.norm
    }

    pub fn residue(&self) -> &ResidueSet {
        &self.residue
    }

    /// q-exponent the class reads from the index-(n-1) series.
    fn q_exponent(&self) -> i64 {
        let d_rat = if self.n == 1 {
            self.norm.clone() / rat_i(2)
        } else {
            let r = self.residue.min_abs_representative();
            (&self.norm + rat(r * r, 2 * (self.n as i64 - 1))) / rat_i(2)
        };
        d_rat.to_integer().to_i64().expect("q-exponent fits in i64")
    }
}

/// Precision large enough that the coefficient of `q^d` in `phi^{n-1}/Delta`
/// is inside the guaranteed range (division by Delta costs two orders).
fn q_prec_for(d: i64) -> i64 {
    12.max(d + 4)
}

/// The automatic q-precision a coefficient query for this class needs.
pub fn auto_prec_for(beta: &BetaClass) -> i64 {
    q_prec_for(beta.q_exponent())
}

/// The multiplicity of the uniruled divisor in the class: the coefficient of
/// `phi^{n-1}/Delta` at the class's norm and residue. Always nonnegative.
pub fn multiplicity(beta: &BetaClass) -> Rat {
    multiplicity_with_prec(beta, 0)
}

/// Like [`multiplicity`], with the precision raised to at least `min_qprec`.
pub fn multiplicity_with_prec(beta: &BetaClass, min_qprec: i64) -> Rat {
    let q = auto_prec_for(beta).max(min_qprec);
    let form = jacobi::named_form(NamedForm::PhiPowOverDelta(beta.n), q);
    jcoeff(&form, &beta.norm, &beta.residue)
        .expect("validated class is admissible and precision was auto-raised")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniruledDecision {
    pub exists: bool,
    pub multiplicity: Rat,
}

/// Decides existence of a uniruled divisor swept out by rational curves in
/// the class. Since every coefficient of `phi^{n-1}/Delta` is nonnegative,
/// existence is equivalent to positive multiplicity.
pub fn decide_uniruled(beta: &BetaClass) -> UniruledDecision {
    decide_uniruled_with_prec(beta, 0)
}

/// Like [`decide_uniruled`], with the precision raised to at least `min_qprec`.
pub fn decide_uniruled_with_prec(beta: &BetaClass, min_qprec: i64) -> UniruledDecision {
    let m = multiplicity_with_prec(beta, min_qprec);
    UniruledDecision {
        exists: m.is_positive(),
        multiplicity: m,
    }
}

/// An explicit decomposition certifying existence: `n - 1` pairs `(d_i, r_i)`
/// with `2 d_i - r_i^2/2 >= 0` such that
/// `norm = -2 + sum 2 d_i - (sum r_i)^2/(2n-2)` and the residue set contains
/// `sum r_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub pairs: Vec<(i64, i64)>,
}

impl Witness {
    /// Norm and residue sum reproduced by the pairs (for `n >= 2`).
    pub fn reproduces(&self, n: u32) -> (Rat, i64) {
        assert!(n >= 2);
        let two_m = 2 * (n as i64 - 1);
        let r_sum: i64 = self.pairs.iter().map(|&(_, r)| r).sum();
        let d_sum: i64 = self.pairs.iter().map(|&(d, _)| d).sum();
        let norm = rat_i(-2) + rat_i(2 * d_sum) - rat(r_sum * r_sum, two_m);
        (norm, r_sum)
    }

    pub fn is_valid(&self) -> bool {
        self.pairs.iter().all(|&(d, r)| 4 * d - r * r >= 0)
    }
}

/// Bounded exhaustive search for a witness.
///
/// Enumerates nondecreasing r-vectors with `|r_i| <= r_bound` (smallest total
/// displacement first), checks that `T = norm + 2 + (sum r_i)^2/(2n-2)` is an
/// even integer at least `sum 2 ceil(r_i^2/4)` with the residue condition,
/// and distributes the slack into `d_i <= d_bound`.
///
/// Absence within bounds is NOT a proof of nonexistence; [`decide_uniruled`]
/// is ground truth. For `n = 1` the display degenerates to the K3 case:
/// the empty witness exists exactly when the norm is an even integer >= -2.
pub fn search_witness(beta: &BetaClass, r_bound: i64, d_bound: i64) -> Option<Witness> {
    assert!(r_bound >= 0 && d_bound >= 0);
    if beta.n == 1 {
        let ok = beta.norm >= rat_i(-2) && (beta.norm.clone() / rat_i(2)).is_integer();
        return ok.then(|| Witness { pairs: vec![] });
    }
    let k = (beta.n - 1) as usize;
    let two_m = 2 * (beta.n as i64 - 1);

    let mut vectors: Vec<Vec<i64>> = Vec::new();
    let mut current = vec![0i64; k];
    enumerate_nondecreasing(&mut current, 0, -r_bound, r_bound, &mut vectors);
    vectors.sort_by_key(|v| {
        let sum_abs: i64 = v.iter().map(|r| r.abs()).sum();
        let negatives = v.iter().filter(|&&r| r < 0).count();
        (sum_abs, negatives, v.clone())
    });

    for rs in vectors {
        let r_sum: i64 = rs.iter().sum();
        if !beta.residue.contains(r_sum) {
            continue;
        }
        let t = &beta.norm + rat_i(2) + rat(r_sum * r_sum, two_m);
        if !(t.clone() / rat_i(2)).is_integer() {
            continue;
        }
        let t = t.to_integer().to_i64().expect("witness budget fits in i64");
        if t < 0 {
            continue;
        }
        let mins: Vec<i64> = rs.iter().map(|&r| (r * r + 3) / 4).collect();
        let base: i64 = mins.iter().map(|&m| 2 * m).sum();
        if t < base {
            continue;
        }
        let mut slack = (t - base) / 2;
        let mut ds = mins.clone();
        for d in ds.iter_mut() {
            if slack == 0 {
                break;
            }
            let room = (d_bound - *d).max(0);
            let take = room.min(slack);
            *d += take;
            slack -= take;
        }
        if slack > 0 || ds.iter().any(|&d| d > d_bound) {
            continue;
        }
        let witness = Witness {
            pairs: ds.into_iter().zip(rs).collect(),
        };
        debug_assert!(witness.is_valid());
        return Some(witness);
    }
    None
}

fn enumerate_nondecreasing(
    current: &mut Vec<i64>,
    idx: usize,
    lo: i64,
    hi: i64,
    out: &mut Vec<Vec<i64>>,
) {
    if idx == current.len() {
        out.push(current.clone());
        return;
    }
    let start = if idx == 0 { lo } else { current[idx - 1] };
    for r in start..=hi {
        current[idx] = r;
        enumerate_nondecreasing(current, idx + 1, lo, hi, out);
    }
}

/// Eigenvalues of the genus-0 two-pointed Gromov–Witten correspondence on a
/// K3^[2]-type variety with primitive class of nonzero norm:
/// `lambda_1 = norm * f_beta`, `lambda_2 = norm * g_beta`.
pub fn eigenvalues(beta: &BetaClass) -> Result<(Rat, Rat), CriterionError> {
    eigenvalues_with_prec(beta, 0)
}

/// Like [`eigenvalues`], with the precision raised to at least `min_qprec`.
pub fn eigenvalues_with_prec(
    beta: &BetaClass,
    min_qprec: i64,
) -> Result<(Rat, Rat), CriterionError> {
    if beta.n != 2 {
        return Err(CriterionError::EigenvaluesNeedK3Two(beta.n));
    }
    if beta.norm.is_zero() {
        return Err(CriterionError::ZeroNormUnsupported);
    }
    let q = auto_prec_for(beta).max(min_qprec);
    let f = jacobi::named_form(NamedForm::F, q);
    let g = jacobi::named_form(NamedForm::G, q);
    let l1 = &beta.norm * jcoeff(&f, &beta.norm, &beta.residue)?;
    let l2 = &beta.norm * jcoeff(&g, &beta.norm, &beta.residue)?;
    Ok((l1, l2))
}

/// Verifies the heat-operator identity `25 g = 48 f + 12 H_1(T^2/Delta)`
/// term by term up to q-precision `q_prec`.
pub fn verify_psi_identity(q_prec: i64) -> bool {
    assert!(q_prec >= 3);
    let q = q_prec + 2;
    let f = jacobi::named_form(NamedForm::F, q).series;
    let g = jacobi::named_form(NamedForm::G, q).series;
    let th2 = jacobi::named_form(NamedForm::PhiM21, q).series;
    let inv_delta = jacobi::delta(q)
        .series
        .invert_q_unit()
        .expect("Delta is a q-unit");
    let heat_term = th2.mul(&inv_delta).heat(1);
    let lhs = g.scale(&rat_i(25)).truncate(q_prec);
    let rhs = f
        .scale(&rat_i(48))
        .add(&heat_term.scale(&rat_i(12)))
        .truncate(q_prec);
    lhs.same_terms(&rhs)
}

/// A vanishing coefficient found by [`sweep_low_n`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepZero {
    pub n: u32,
    pub d: i64,
    pub r: i64,
    /// The invariant `2d - r^2/(2n-2)` of the vanishing coefficient.
    pub invariant: Rat,
}

/// Report of the small-`n` positivity sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub max_d: i64,
    /// Conservative lower cutoff on the invariant; zeros below it are not
    /// reported. The effectivity range of the positivity claim is an open
    /// modelling question, so the cutoff is a stand-in, not a theorem.
    pub invariant_floor: Rat,
    /// Vanishing coefficients of `phi^{n-1}/Delta`, `n` in 2..=7, with
    /// `-1 <= d <= max_d`, `|r| <= n-1` and invariant above the floor.
    pub zeros: Vec<SweepZero>,
    /// The coefficient of `phi^7/Delta` at `(d, r) = (1, 5)`: the smallest
    /// positive-invariant vanishing, appearing first at n = 8.
    pub k3n8_coefficient: Rat,
}

/// Sweeps `phi^{n-1}/Delta` for `n` in 2..=7 over the grid
/// `-1 <= d <= max_d`, `|r| <= n-1` and reports every zero coefficient whose
/// invariant `2d - r^2/(2n-2)` is at least -2; also reports the n = 8
/// coefficient at `(d, r) = (1, 5)`.
pub fn sweep_low_n(max_d: i64) -> SweepReport {
    assert!(max_d >= 2);
    let q = q_prec_for(max_d);
    let mut zeros = Vec::new();
    for n in 2..=7u32 {
        let form = jacobi::named_form(NamedForm::PhiPowOverDelta(n), q);
        let two_m = 2 * (n as i64 - 1);
        for d in -1..=max_d {
            for r in -(n as i64 - 1)..=(n as i64 - 1) {
                let invariant = rat_i(2 * d) - rat(r * r, two_m);
                if invariant < rat_i(-2) {
                    continue;
                }
                let c = form
                    .series
                    .coeff_at(d, 2 * r)
                    .expect("sweep stays within precision");
                if c.is_zero() {
                    zeros.push(SweepZero { n, d, r, invariant });
                }
            }
        }
    }
    let n8 = jacobi::named_form(NamedForm::PhiPowOverDelta(8), q_prec_for(1));
    let k3n8_coefficient = n8
        .series
        .coeff_at(1, 10)
        .expect("n = 8 coefficient within precision");
    SweepReport {
        max_d,
        invariant_floor: rat_i(-2),
        zeros,
        k3n8_coefficient,
    }
}
