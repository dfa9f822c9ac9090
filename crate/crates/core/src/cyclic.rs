//! Arithmetic in the cyclic group Z_n.
//!
//! Moduli are bounded by 2^31 so every product of two residues fits in a
//! `u64`. Subgroups of Z_n are keyed by their order alone: there is exactly
//! one subgroup for each divisor of n.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible modulus.
pub const MAX_MODULUS: u32 = 1 << 31;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

/// An element of Z_n. The modulus travels with the value; combining residues
/// of different moduli panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u32,
    modulus: u32,
}

impl Residue {
    /// Reduces `value` modulo `modulus`. Panics if `modulus` is 0 or above [`MAX_MODULUS`].
    pub fn new(value: u64, modulus: u32) -> Self {
        assert!(
            (1..=MAX_MODULUS).contains(&modulus),
            "modulus {modulus} out of range"
        );
        Residue {
            value: (value % modulus as u64) as u32,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        Residue::new((self.modulus - self.value) as u64, self.modulus)
    }

    /// The action of the multiplier `k`: x ↦ kx.
    pub fn scale(self, k: u64) -> Self {
        Residue::new(self.value as u64 * (k % self.modulus as u64), self.modulus)
    }

    pub fn order(self) -> u32 {
        element_order(self)
    }
}

impl Add for Residue {
    type Output = Residue;

    fn add(self, rhs: Residue) -> Residue {
        assert_eq!(
            self.modulus, rhs.modulus,
            "mixed-modulus residue arithmetic"
        );
        Residue::new(self.value as u64 + rhs.value as u64, self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Additive order of `r`, i.e. n / gcd(value, n).
pub fn element_order(r: Residue) -> u32 {
    (r.modulus as u64 / gcd(r.value as u64, r.modulus as u64)) as u32
}

/// Euler's totient. `euler_phi(1) = 1`.
pub fn euler_phi(n: u32) -> u32 {
    factorize(n)
        .factors()
        .iter()
        .fold(1u32, |acc, &(p, e)| acc * (p - 1) * p.pow(e - 1))
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    n: u32,
    factors: Vec<(u32, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// The prime-power components p^e, in ascending prime order.
    pub fn prime_powers(&self) -> Vec<u32> {
        self.factors.iter().map(|&(p, e)| p.pow(e)).collect()
    }

    /// `Some((p, e))` when n = p^e with e ≥ 1.
    pub fn as_prime_power(&self) -> Option<(u32, u32)> {
        match self.factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }
}

/// Trial division.
pub fn factorize(n: u32) -> Factorization {
    assert!(n >= 1, "factorize(0)");
    let mut factors = Vec::new();
    let mut m = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p as u32, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m as u32, 1));
    }
    Factorization { n, factors }
}

/// π(n), the set of prime divisors of n.
pub fn prime_set(n: u32) -> BTreeSet<u32> {
    factorize(n).primes().collect()
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && factorize(n).factors() == [(n, 1)]
}

/// Product of the distinct primes dividing n.
pub fn radical(n: u32) -> u32 {
    factorize(n).primes().product()
}

/// Order of the Frattini subgroup of Z_n, namely n / rad(n).
pub fn frattini_order(n: u32) -> u32 {
    n / radical(n)
}

pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            small.push(d as u32);
            if d * d != n as u64 {
                large.push((n as u64 / d) as u32);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Divisors d of n with gcd(d, n/d) = 1, ascending.
pub fn unitary_divisors(n: u32) -> Vec<u32> {
    divisors(n)
        .into_iter()
        .filter(|&d| gcd(d as u64, (n / d) as u64) == 1)
        .collect()
}

/// The unique subgroup of Z_n of a given order; its elements are the
/// multiples of n / order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    modulus: u32,
    order: u32,
}

impl Subgroup {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The canonical generator n / order, reduced mod n (0 for the trivial
    /// subgroup).
    pub fn step(&self) -> u32 {
        (self.modulus / self.order) % self.modulus
    }

    pub fn contains(&self, x: u32) -> bool {
        x < self.modulus && x.is_multiple_of(self.modulus / self.order)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        let step = self.modulus / self.order;
        (0..self.order).map(move |i| i * step)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.modulus == other.modulus && other.order.is_multiple_of(self.order)
    }
}

pub fn subgroup_of_order(n: u32, d: u32) -> Result<Subgroup> {
    if n == 0 || d == 0 || !n.is_multiple_of(d) {
        return Err(Error::InvalidDivisor { n, d });
    }
    Ok(Subgroup {
        modulus: n,
        order: d,
    })
}

/// Chinese-remainder coordinates for pairwise coprime moduli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtFrame {
    moduli: Vec<u32>,
    n: u32,
    /// `basis[i] ≡ 1 (mod moduli[i])` and `≡ 0` modulo every other modulus.
    basis: Vec<u64>,
}

impl CrtFrame {
    pub fn new(moduli: &[u32]) -> Result<Self> {
        if moduli.contains(&0) {
            return Err(Error::InvalidFrame("zero modulus".into()));
        }
        let mut n: u64 = 1;
        for (i, &a) in moduli.iter().enumerate() {
            for &b in &moduli[i + 1..] {
                if gcd(a as u64, b as u64) != 1 {
                    return Err(Error::InvalidFrame(format!("{a} and {b} are not coprime")));
                }
            }
            n *= a as u64;
            if n > MAX_MODULUS as u64 {
                return Err(Error::InvalidFrame("product exceeds 2^31".into()));
            }
        }
        let basis = moduli
            .iter()
            .map(|&m| {
                let rest = n / m as u64;
                let inv = mod_inverse(rest % m as u64, m as u64).expect("coprime moduli");
                rest * inv % n
            })
            .collect();
        Ok(CrtFrame {
            moduli: moduli.to_vec(),
            n: n as u32,
            basis,
        })
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn split(&self, x: u32) -> Vec<u32> {
        self.moduli.iter().map(|&m| x % m).collect()
    }

    /// Inverse of [`split`](Self::split). Panics on a tuple of the wrong length.
    pub fn combine(&self, parts: &[u32]) -> u32 {
        assert_eq!(parts.len(), self.moduli.len(), "tuple length mismatch");
        let n = self.n as u64;
        parts
            .iter()
            .zip(&self.moduli)
            .zip(&self.basis)
            .fold(0u64, |acc, ((&x, &m), &e)| (acc + (x % m) as u64 * e) % n) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn element_orders() {
        assert_eq!(element_order(Residue::new(1, 9)), 9);
        assert_eq!(element_order(Residue::new(0, 6)), 1);
        assert_eq!(element_order(Residue::new(10, 15)), 3);
    }

    #[test]
    fn totients() {
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(15), 8);
    }

    #[test]
    fn factorizations() {
        assert_eq!(factorize(12).factors(), &[(2, 2), (3, 1)]);
        assert_eq!(prime_set(12), BTreeSet::from([2, 3]));
        assert!(factorize(1).factors().is_empty());
        assert!(prime_set(1).is_empty());
        assert_eq!(factorize(360).factors(), &[(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(2_147_483_647).factors(), &[(2_147_483_647, 1)]);
    }

    #[test]
    fn subgroups() {
        let els = |n, d| {
            subgroup_of_order(n, d)
                .unwrap()
                .elements()
                .collect::<Vec<_>>()
        };
        assert_eq!(els(6, 3), vec![0, 2, 4]);
        assert_eq!(els(6, 1), vec![0]);
        assert_eq!(els(8, 4), vec![0, 2, 4, 6]);
        assert_eq!(
            subgroup_of_order(6, 4),
            Err(Error::InvalidDivisor { n: 6, d: 4 })
        );
    }

    #[test]
    fn frattini_and_unitary() {
        assert_eq!(frattini_order(12), 2);
        assert_eq!(frattini_order(30), 1);
        assert_eq!(frattini_order(8), 4);
        assert_eq!(unitary_divisors(12), vec![1, 3, 4, 12]);
        assert_eq!(unitary_divisors(15), vec![1, 3, 5, 15]);
        assert_eq!(unitary_divisors(8), vec![1, 8]);
    }

    #[test]
    fn crt_examples() {
        let frame = CrtFrame::new(&[3, 5]).unwrap();
        assert_eq!(frame.split(7), vec![1, 2]);
        assert_eq!(frame.combine(&[1, 1]), 1);
        // brute-force scan for x ≡ 2 (3), x ≡ 1 (5)
        let scanned = (0..15).find(|x| x % 3 == 2 && x % 5 == 1).unwrap();
        assert_eq!(scanned, 11);
        assert_eq!(frame.combine(&[2, 1]), scanned);
        assert!(matches!(
            CrtFrame::new(&[4, 6]),
            Err(Error::InvalidFrame(_))
        ));
    }

    #[test]
    #[should_panic(expected = "mixed-modulus")]
    fn mixed_moduli_panic() {
        let _ = Residue::new(1, 4) + Residue::new(1, 5);
    }

    #[test]
    fn totient_sum_over_divisors() {
        for n in 1..=1000u32 {
            let total: u32 = divisors(n).into_iter().map(euler_phi).sum();
            assert_eq!(total, n);
            let units = (0..n).filter(|&x| gcd(x as u64, n as u64) == 1).count() as u32;
            assert_eq!(units, euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn crt_round_trip_small_frames() {
        for n in 1..=10_000u32 {
            let powers = factorize(n).prime_powers();
            if powers.len() < 2 {
                continue;
            }
            let frame = CrtFrame::new(&powers).unwrap();
            for x in 0..n {
                assert_eq!(frame.combine(&frame.split(x)), x);
            }
        }
    }

    proptest! {
        #[test]
        fn order_divides_modulus(n in 1u32..5000, v in 0u64..1_000_000) {
            let r = Residue::new(v, n);
            let ord = element_order(r);
            prop_assert_eq!(n % ord, 0);
            prop_assert_eq!(ord == n, gcd(r.value() as u64, n as u64) == 1);
            // least k with k·value ≡ 0
            let least = (1..=n).find(|&k| (k as u64 * r.value() as u64).is_multiple_of(n as u64)).unwrap();
            prop_assert_eq!(least, ord);
        }

        #[test]
        fn subgroup_lattice(n in 1u32..120) {
            let divs = divisors(n);
            for &d in &divs {
                let h = subgroup_of_order(n, d).unwrap();
                let els: Vec<u32> = h.elements().collect();
                prop_assert_eq!(els.len() as u32, d);
                for &a in &els {
                    prop_assert!(h.contains((n - a) % n));
                    for &b in &els {
                        prop_assert!(h.contains((a + b) % n));
                    }
                }
                for &d2 in &divs {
                    if d2 % d == 0 {
                        let k = subgroup_of_order(n, d2).unwrap();
                        prop_assert!(els.iter().all(|&x| k.contains(x)));
                    }
                }
            }
        }

        #[test]
        fn crt_inverse_on_tuples(a in 0u32..7, b in 0u32..9, c in 0u32..10) {
            let frame = CrtFrame::new(&[7, 9, 10]).unwrap();
            let x = frame.combine(&[a, b, c]);
            prop_assert_eq!(frame.split(x), vec![a, b, c]);
        }
    }
}
