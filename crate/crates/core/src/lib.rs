//! Exact arithmetic for the mod-2 Milnor K-theory and quadratic form theory
//! of the rationals, with just enough number field support to restrict
//! symbols, transfer them back, and specialize points on norm quadrics.

pub mod error;
mod factor;
pub mod milnor;
mod mpoly;
pub mod numfield;
mod poly;
pub mod quadform;
mod qsearch;
pub mod quadric;
pub mod squareclass;

pub use error::{Error, Result};
pub use milnor::{
    kernel_member, parse_kelement, parse_symbol_tuple, residue_at_p, FiniteFieldKClass,
    KElement, ResidueOutcome, Symbol,
};
pub use numfield::{parse_element, parse_field, FieldElement, NumberField, RestrictedKElement};
pub use quadric::{specialize, GenericWitness, NormQuadric, QuadricPoint, SpecializedElement};
pub use quadform::{parse_form, phi, DiagonalForm, GrWittClass, IDegree, WittInvariants};
pub use squareclass::{
    hilbert_symbol, legendre, relevant_places, squarefree_reduce, Place, SquareClass,
};
