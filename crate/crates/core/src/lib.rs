//! Rectangular designs: construction, verification, classification and analysis.
//!
//! A rectangular design (RD) is a block design on `v = mn` treatments laid out
//! in an `m × n` array, where two treatments concur `λ1` times if they share
//! an array row, `λ2` times if they share an array column and `λ3` times
//! otherwise. This crate builds such designs from skew-Hadamard designs,
//! circulants, mutually orthogonal Latin squares, strongly regular graphs and
//! difference schemes, checks every result exactly, and classifies designs by
//! the eigenvalues of `N Nᵀ`.
//!
//! ```
//! use rectdesign::construct;
//!
//! let d = construct::thm6(1).unwrap();
//! let p = d.params();
//! assert_eq!((p.v, p.k, p.lambdas()), (15, 5, (0, 1, 2)));
//! assert_eq!(d.classify().unwrap().tag.abbrev(), "SR");
//! ```
//!
//! Modules, bottom up:
//!
//! - [`binmat`]: exact 0/1 and integer matrices.
//! - [`design`]: parameters, spectrum, classification, verification.
//! - [`algebra`]: finite fields, skew-Hadamard designs, MOLS, strongly
//!   regular graphs, difference schemes.
//! - [`construct`]: the construction methods and text recipes for them.
//! - [`analyze`]: resolvability, decompositions, efficiency.
//! - [`search`]: parameter feasibility search for symmetric designs.
//! - [`tables`]: bundled parameter tables and the runner that rebuilds them.

pub mod algebra;
pub mod analyze;
pub mod binmat;
pub mod cli;
pub mod construct;
pub mod design;
pub mod error;
pub mod search;
pub mod tables;

pub use binmat::{BinaryMatrix, IntMatrix};
pub use design::{ClassTag, Design, DesignClass, RDParams, Reduction, Spectrum};
pub use error::{Error, Result};

// The guide under book/ is compiled here so its snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/designs.md")]
    mod designs {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/difference-schemes.md")]
    mod difference_schemes {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    mod analysis {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
