//! Exact computations with the free dendriform trialgebra on one generator,
//! realized inside the algebra of packed words (`M_u` basis).
//!
//! The crate is organized bottom-up:
//!
//! - [`words`]: packing, packed and parking words, ordered set partitions.
//! - [`trees`]: plane trees and the word-to-tree map.
//! - [`linalg`]: exact rational linear combinations and rank.
//! - [`ncqsym`]: the four products, coproduct, `MM_T`, free closure of `M_1`.
//! - [`polyoracle`]: the same products computed word by word on polynomials.
//! - [`qsym`]: quasi-symmetric monomials, target of abelianization.
//! - [`tits`]: the face product on packed words of one length.
//! - [`sylvester`]: sylvester classes and the quotient map.
//! - [`verify`]: exhaustive and seeded verification suites.

pub mod error;
pub mod limits;
pub mod linalg;
pub mod ncqsym;
pub mod polyoracle;
pub mod qsym;
pub mod serial;
pub mod sylvester;
pub mod tits;
pub mod trees;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use limits::Limits;
pub use linalg::{Coeff, Element, TensorElement};
pub use ncqsym::{NcqElement, TriOp};
pub use trees::PlaneTree;
pub use words::{Composition, OrderedSetPartition, PackedWord, ParkingWord, Word};
