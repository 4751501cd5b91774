//! Exact arithmetic for quasi-Jacobi form q-expansions and the intersection
//! theory built on top of them.
//!
//! The crate has four layers:
//!
//! - [`qseries`]: truncated bivariate Laurent series in `q` and `y` over exact
//!   rationals, with derivations, unit inversion in `q` and the heat operator;
//! - [`jacobi`]: the named forms (theta, Eisenstein series, the modular
//!   discriminant, the Weierstrass expansion) and coefficient extraction
//!   indexed by Beauville–Bogomolov norm and residue set;
//! - [`criterion`]: the decision procedure for the existence of uniruled
//!   divisors in a primitive curve class on a holomorphic symplectic variety
//!   of K3^[n] type, together with the genus-zero Gromov–Witten eigenvalues
//!   in the K3^[2] case;
//! - [`fano`]: Schubert calculus on Gr(2,6) and Chern-class algebra for the
//!   Fano variety of lines in a cubic fourfold, cross-checking the series
//!   route against classical intersection numbers.
//!
//! All scalars are arbitrary-precision rationals; every returned coefficient
//! is exact within the stated precision window.

pub mod criterion;
pub mod fano;
pub mod jacobi;
pub mod qseries;
pub mod rational;

pub use rational::{parse_rat, rat, rat_i, Rat};
