//! Intersection theory for the Fano variety of lines in a cubic fourfold.
//!
//! The Fano fourfold `F` sits in Gr(2,6) as the zero locus of a section of
//! `Sym^3 U*`, so integrals over `F` reduce to Schubert calculus on the
//! Grassmannian against the Euler class `c_4(Sym^3 U*) = 9 c_2 (2 c_1^2 + c_2)`.
//! On top of that sit the Chern-class identities for the tautological
//! bundles, the degeneracy surface of the residuation self-map inside the
//! bundle `P(Sym^2 U_F)`, and the eigenvalue chain that cross-checks the
//! series route from [`crate::criterion`] against classical geometry.

mod pbundle;
mod poly;
mod schubert;

pub use pbundle::{
    consistency_web, eigenvalue_chain, surface_class, surface_numbers, ConsistencyCheck,
    ConsistencyReport, EigenvalueChain, PBClass,
};
pub use poly::{chern_classes, fano_integrate, normalize_on_f, ChernData, FanoError, FanoPoly};
pub use schubert::GrClass;
