//! uekit: a finite-model toolkit for Kripke and neighborhood semantics.
//!
//! The crate provides modal formulas over `[]`, `<>`, `?` (contingency) and
//! `#` (non-contingency); finite Kripke and neighborhood models with set
//! algebra over state bitmasks; ultrafilter machinery over finite bases;
//! five ultrafilter-extension constructions; and exact logical-equivalence
//! oracles (definable-set closure, bisimilarity, depth-bounded fragments)
//! used to verify the constructions' truth-preservation and transfer
//! properties. The `uekit` binary exposes the same operations on the command
//! line.

pub mod cli;
pub mod equivalence;
pub mod models;
pub mod setops;
pub mod suite;
pub mod syntax;
pub mod ue;
pub mod ultrafilters;

pub use equivalence::{
    check_delta_saturation, check_nabla_saturation, distinguishing_formula, enumerate_fragment,
    equivalence_transfer, kripke_bisimilar, logically_equivalent, DefinableClosure, Lang,
};
pub use models::{disjoint_union, KripkeModel, Model, ModelKind, NeighborhoodModel, StateSet};
pub use setops::{extension, m_box, m_c, m_delta, m_n, m_nabla, satisfies};
pub use syntax::Formula;
pub use ue::{build_ue, build_ue_via, canonical_map_check, MembershipRoute, UeKind, UeModel};
pub use ultrafilters::{
    all_ultrafilters, check_ultrafilter, extend_to_ultrafilter, has_fip, hat, principal,
    principal_list, SetFamily, Ultrafilter,
};
