//! The construction methods. Each returns a [`Design`] that has already been
//! checked against its predicted parameters.
//!
//! - [`method1`]: Kronecker-type constructions from symmetric 2-designs.
//! - [`circulant`]: block circulants over skew-Hadamard designs and `α^i + α^{p−i}`.
//! - [`mols`]: mutually orthogonal Latin squares and circulant powers.
//! - [`srg`]: strongly regular graphs with `μ = λ + 1`.
//! - [`ds`]: difference schemes.
//! - [`recipe`]: one-line text descriptions of all of the above.

pub mod circulant;
pub mod ds;
pub mod method1;
pub mod mols;
pub mod recipe;
pub mod srg;

pub use circulant::{example2, example3, example4, remark7, thm6};
pub use ds::{cor12_truncated, thm10_lsr, thm9_gdd};
pub use method1::{
    ag23, bibd_params, corollary_preset, fano, lemma1_kronecker, sbibd_params, thm3, thm3_t, thm4, thm5_latin_regular,
    BibdParams, Corollary,
};
pub use mols::{cor10, cor11_circulant, cor8, cor9, cor9_shifted, thm7_from_mols};
pub use recipe::{build, build_str, Recipe, RecipeContext};
pub use srg::{thm8, Variant};

use crate::design::Design;
use crate::error::Result;

/// The `n × n` rows-and-columns design (each block is one array row or one array column).
pub fn example1(n: u64) -> Result<Design> {
    crate::design::rows_and_columns_design(n)
}

/// The three small circulant examples: `which` is 2, 3 or 4.
pub fn circulant_examples(which: u32) -> Result<Design> {
    match which {
        2 => example2(),
        3 => example3(),
        4 => example4(),
        _ => Err(crate::error::Error::Recipe(format!("no circulant example {which}"))),
    }
}
