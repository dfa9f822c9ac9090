//! Aut(Z_n) as the units mod n, and the subgroup Aut(C, S) of multipliers
//! that fix a connection set.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::circulant::{CirculantGraph, ConnectionSet};
use crate::cyclic::{gcd, prime_set};
use crate::error::{Error, Result};
use crate::perm_group::Permutation;

/// The automorphism x ↦ kx of Z_n, gcd(k, n) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Multiplier {
    modulus: u32,
    k: u32,
}

impl Multiplier {
    pub fn new(k: u32, modulus: u32) -> Result<Self> {
        let k = k % modulus;
        if gcd(k as u64, modulus as u64) != 1 {
            return Err(Error::NotAUnit { k, m: modulus });
        }
        Ok(Multiplier { modulus, k })
    }

    pub fn value(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        (x as u64 * self.k as u64 % self.modulus as u64) as u32
    }

    pub fn compose(&self, other: &Multiplier) -> Multiplier {
        assert_eq!(self.modulus, other.modulus, "mixed-modulus multipliers");
        Multiplier {
            modulus: self.modulus,
            k: self.apply(other.k),
        }
    }

    /// The vertex permutation x ↦ kx.
    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_images_unchecked((0..self.modulus).map(|x| self.apply(x)).collect())
    }
}

/// Units of Z_n, ascending. For n = 1 this is {0}, the identity of Z_1.
pub fn units(n: u32) -> impl Iterator<Item = u32> {
    (0..n).filter(move |&k| gcd(k as u64, n as u64) == 1)
}

/// Aut(C, S): the multipliers k with kS = S.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierSet {
    modulus: u32,
    units: Vec<u32>,
}

impl MultiplierSet {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn units(&self) -> &[u32] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn contains(&self, k: u32) -> bool {
        self.units.binary_search(&k).is_ok()
    }

    pub fn multipliers(&self) -> impl Iterator<Item = Multiplier> + '_ {
        self.units.iter().map(|&k| Multiplier {
            modulus: self.modulus,
            k,
        })
    }

    /// The orbit {ks : k ∈ self}. The set is a group, so this is the orbit
    /// of s under it.
    pub fn orbit_of(&self, s: u32) -> BTreeSet<u32> {
        self.multipliers().map(|m| m.apply(s)).collect()
    }

    /// Whether the multipliers act transitively on `s`.
    pub fn is_transitive_on(&self, s: &ConnectionSet) -> bool {
        match s.as_slice().first() {
            None => false,
            Some(&first) => self.orbit_of(first).into_iter().eq(s.iter()),
        }
    }

    pub fn is_regular_on(&self, s: &ConnectionSet) -> bool {
        self.is_transitive_on(s) && self.len() == s.len()
    }
}

pub fn aut_c_s(g: &CirculantGraph) -> MultiplierSet {
    let n = g.order();
    let set = g.connection_set();
    let units = units(n)
        .filter(|&k| {
            set.iter()
                .all(|s| set.contains((s as u64 * k as u64 % n as u64) as u32))
        })
        .collect();
    MultiplierSet { modulus: n, units }
}

pub fn is_transitive_on_s(ms: &MultiplierSet, s: &ConnectionSet) -> bool {
    ms.is_transitive_on(s)
}

pub fn is_regular_on_s(ms: &MultiplierSet, s: &ConnectionSet) -> bool {
    ms.is_regular_on(s)
}

/// |C ⋊ Aut(C, S)| = n·|Aut(C, S)|, the order of the normalizer of the
/// translation subgroup in Aut Γ.
pub fn normalizer_order(g: &CirculantGraph) -> u128 {
    g.order() as u128 * aut_c_s(g).len() as u128
}

/// Lifts the unit `k_bar` of Z_m to the smallest unit k of Z_n with
/// k ≡ k_bar (mod m). Requires m | n and π(m) = π(n).
pub fn lift_through_quotient(n: u32, m: u32, k_bar: u32) -> Result<Multiplier> {
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::InvalidDivisor { n, d: m });
    }
    if prime_set(m) != prime_set(n) {
        return Err(Error::HypothesisViolation { n, m });
    }
    let k_bar = k_bar % m;
    if gcd(k_bar as u64, m as u64) != 1 {
        return Err(Error::NotAUnit { k: k_bar, m });
    }
    // With π(m) = π(n) every lift of a unit is a unit, so the first
    // candidate already works.
    (0..n / m)
        .map(|j| k_bar + j * m)
        .find(|&k| gcd(k as u64, n as u64) == 1)
        .map(|k| Multiplier { modulus: n, k })
        .ok_or(Error::NotAUnit { k: k_bar, m })
}

/// Whether `k` lies in the product of the Hall p′-subgroups of the
/// Sylow components of Aut(Z_n), i.e. k^(p−1) ≡ 1 mod p^e for every p^e ∥ n.
pub fn in_hall_complement(k: u32, n: u32) -> bool {
    crate::cyclic::factorize(n).factors().iter().all(|&(p, e)| {
        let pe = p.pow(e) as u64;
        crate::cyclic::pow_mod(k as u64, (p - 1) as u64, pe) == 1 % pe
    })
}
