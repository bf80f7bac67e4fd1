//! Exact computation in free metabelian groups `M_n`.
//!
//! Group elements are represented faithfully through the Magnus embedding as an
//! abelianization vector together with a row of Fox derivatives in `Z A_n`.
//! On top of that the crate provides endomorphisms and their Jacobians, the
//! Andreadakis filtration depth, the graded quotients `gr_c(M_n)` with their
//! basic-commutator bases, and a harness that checks explicit identities.

pub mod depth;
pub mod endo;
pub mod error;
pub mod expr;
pub mod graded;
pub mod harness;
pub mod intmat;
pub mod laurent;
pub mod lmatrix;
pub mod magnus;
pub mod span;
pub mod zoo;

pub use depth::Depth;
pub use endo::{star_act, tame_lift, Coset, Endomorphism};
pub use error::{Error, Result};
pub use graded::{
    basis, bullet, coordinates, gl_act, lie_normal_form, rank_gr, BasicCommutator, GrTuple, GradedVector,
};
pub use intmat::IntMatrix;
pub use laurent::{ExpVec, LaurentPoly, LeadingForm, MAX_RANK};
pub use lmatrix::LaurentMatrix;
pub use magnus::{GroupContext, MagnusElement};
pub use span::span_dim;
