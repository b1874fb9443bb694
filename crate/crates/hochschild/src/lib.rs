//! Exact-arithmetic engine for the Hochschild (co)homology of small
//! finite-dimensional algebras, with the operator zoo living on it: the
//! cyclic operators on chains and dual-coefficient cochains, cup products
//! through structural maps, Gerstenhaber brackets, BV operators for
//! symmetric and Frobenius algebras, and the subpath calculus of monomial
//! path algebras. Every identity these operators are claimed to satisfy can
//! be machine-verified, with exact witnesses emitted on failure.
//!
//! All arithmetic is exact (arbitrary-precision rationals or a prime field);
//! there is no floating point anywhere, and all computations are
//! deterministic: identical inputs produce byte-identical reports.

pub mod algebra;
pub mod bv;
pub mod catalog;
pub mod cli;
pub mod complex;
pub mod error;
pub mod frobenius;
pub mod input;
pub mod linalg;
pub mod quiver;
pub mod report;
pub mod scalar;

pub use algebra::{
    dual_bimodule, h_zero_invariants, regular_bimodule, twisted_bimodule, validate_algebra,
    Algebra, AlgebraEndo, Bimodule, BimoduleKind,
};
pub use bv::{
    bar_b, bracket_psi, circle_product, cup_psi, phi_pairing, validate_structural_map,
    verify_gerstenhaber_bv, verify_pairing_adjunction, BracketSign, CohomologyClass,
    StructuralMap,
};
pub use complex::{
    boundary, coboundary, cohomology_space, connes_b, homology_space, Chain,
    ChainComplexSpaces, Cochain, CochainComplex,
};
pub use error::{EngineError, Result};
pub use frobenius::{
    frobenius_psi, nakayama, semisimplicity_check, symmetric_psi, tradler_delta, twisted_connes_b,
    validate_form, verify_symmetric_transport, z_isomorphism, BilinearForm,
};
pub use linalg::{image_complement, kernel_basis, solve, Matrix};
pub use quiver::{
    dual_action_bimodule, enumerate_path_basis, left_quotient, monomial_psi, path_algebra,
    right_quotient, MonomialPresentation, Path, PathBasis, Quiver,
};
pub use report::{Check, VerificationReport, Witness};
pub use scalar::{GroundField, Scalar};
