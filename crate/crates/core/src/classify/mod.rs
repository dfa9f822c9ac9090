//! Classification predicates for arc-transitive circulants, the canonical
//! decomposition (Γ₀ × K_{n₁} × … × K_{n_r})[K̄_b], and the exhaustive
//! agreement harness that checks each criterion against the brute-force
//! oracle.

mod decompose;
mod report;
mod verify;

pub use decompose::{decompose, structural_decomposition, Decomposition};
pub use report::{classify, ClassificationReport, OracleVerdict};
pub use verify::{
    arc_invariants_constant, audit_prime_powers, connected_representatives, verify_range,
    AgreementReport, ClaimStatus, ClaimTally, ClaimVerdict, Counterexample, Evidence,
    PrimePowerAudit, ThresholdRow, VerifyOptions,
};

use serde::{Deserialize, Serialize};

use crate::circulant::CirculantGraph;
use crate::cyclic::{self, gcd};
use crate::error::{Error, Result};
use crate::multiplier::aut_c_s;
use crate::perm_group;

/// Every element of S has order n, i.e. is a unit.
pub fn all_full_order(g: &CirculantGraph) -> bool {
    let n = g.order() as u64;
    g.connection_set().iter().all(|s| gcd(s as u64, n) == 1)
}

/// Whether C ⋊ Aut(C, S) is arc-transitive, which amounts to Aut(C, S)
/// being transitive on S.
pub fn is_normal_arc_transitive(g: &CirculantGraph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected(g.to_string()));
    }
    Ok(aut_c_s(g).is_transitive_on(g.connection_set()))
}

/// Whether S contains a full coset t + H of a nontrivial subgroup H. It is
/// enough to look at subgroups of prime order, since any coset of H contains
/// a coset of each prime-order subgroup of H.
pub fn contains_full_coset(g: &CirculantGraph) -> bool {
    let n = g.order();
    let set = g.connection_set();
    cyclic::factorize(n).primes().any(|p| {
        let step = n / p;
        (0..n).any(|t| (0..p).all(|j| set.contains((t + j * step) % n)))
    })
}

/// Whether S contains a punctured coset t + (H ∖ {0}) for some subgroup H
/// of order at least `min_order`. The point t itself may or may not lie in S.
pub fn contains_punctured_coset(g: &CirculantGraph, min_order: u32) -> bool {
    assert!(min_order >= 2, "min_order must be at least 2");
    let n = g.order();
    let set = g.connection_set();
    cyclic::divisors(n)
        .into_iter()
        .filter(|&d| d >= min_order)
        .any(|d| {
            let step = n / d;
            (0..n).any(|t| (1..d).all(|j| set.contains((t + j * step) % n)))
        })
}

/// Which reading of the coset criterion to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// S contains no full coset of a nontrivial subgroup.
    Literal,
    /// Additionally, S contains no punctured coset of a subgroup of order ≥ 4.
    Extended,
}

pub const PUNCTURED_THRESHOLD: u32 = 4;

/// The coset criterion without its preconditions.
pub fn coset_criterion(g: &CirculantGraph, variant: Variant) -> bool {
    let literal = !contains_full_coset(g);
    match variant {
        Variant::Literal => literal,
        Variant::Extended => literal && !contains_punctured_coset(g, PUNCTURED_THRESHOLD),
    }
}

/// Predicts normality of a connected arc-transitive circulant from S alone.
/// Arc-transitivity is checked with the oracle.
pub fn normal_circulant_predicate(g: &CirculantGraph, variant: Variant) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected(g.to_string()));
    }
    if !perm_group::is_arc_transitive(g)? {
        return Err(Error::NotArcTransitive(g.to_string()));
    }
    Ok(coset_criterion(g, variant))
}
