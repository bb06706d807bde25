//! Building blocks for the constructions: finite fields, skew-Hadamard
//! designs, mutually orthogonal Latin squares, strongly regular graphs and
//! difference schemes.

pub mod ds;
pub mod field;
pub mod mols;
pub mod skew;
pub mod srg;

pub use ds::{
    ds_compose, ds_field, ds_search, ds_sylvester, ds_verify, group_permutation, DifferenceScheme, DsReport, Group,
};
pub use field::FiniteField;
pub use mols::{mols, MolsSet};
pub use skew::{skew_hadamard_design, SkewHadamardDesign};
pub use srg::{paley_srg, srg_verify, SrgGraph};
