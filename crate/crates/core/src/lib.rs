//! Circulant digraphs Circ(n, S) over Z_n: construction, automorphism
//! groups, multiplier groups Aut(C, S), and classification of the
//! arc-transitive ones.

pub mod circulant;
pub mod classify;
pub mod cyclic;
pub mod error;
pub mod multiplier;
pub mod perm_group;

pub use circulant::{CirculantGraph, ConnectionSet};
pub use classify::{
    classify, decompose, verify_range, AgreementReport, ClassificationReport, Decomposition,
    OracleVerdict, Variant, VerifyOptions,
};
pub use cyclic::{CrtFrame, Residue, Subgroup};
pub use error::{Error, Result};
pub use multiplier::{Multiplier, MultiplierSet};
pub use perm_group::{GroupHandle, Permutation};
