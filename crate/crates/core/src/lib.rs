//! Word calculus for the free monoids and free groups attached to the
//! Hawaiian pants space: reduction and conjugacy, the deletion and
//! substitution homomorphisms between levels, stabilized word sequences,
//! the injection into an inverse limit of monoids, and conjugate
//! factorization witnesses.
//!
//! Words are written in a small text grammar: `l3` is `ℓ₃`, `L3` its inverse,
//! `r2.1` is `ρ_{2,1}`, `R2.1` its inverse, and `e` the empty word.
//!
//! ```
//! use pants_calculus::{limits, words::Word};
//!
//! let x = limits::PantsElement::finite(1, &Word::parse("l1").unwrap()).unwrap();
//! assert_eq!(limits::chi(&x, 1).unwrap().to_string(), "r1.1 R1.1 r1.2 R1.2");
//! ```

pub mod cli;
pub mod error;
pub mod exec;
pub mod homs;
pub mod limits;
pub mod rewrite;
pub mod sample;
pub mod words;

pub use error::{Error, Result};
pub use exec::Exec;
pub use rewrite::ReducedWord;
pub use words::{AlphabetBound, Letter, Word};
