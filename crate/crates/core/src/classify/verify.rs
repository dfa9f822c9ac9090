//! Exhaustive agreement harness.
//!
//! Every connected circulant of order 2..=n_max is visited once per
//! multiplier class {kS : k a unit}, since kS and S give isomorphic
//! circulants with identical classifications. Each claim is tallied over the
//! instances satisfying its hypothesis; counterexamples are listed in full.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{Analysis, ClassificationReport, OracleVerdict};
use super::{contains_punctured_coset, coset_criterion, Variant};
use crate::circulant::CirculantGraph;
use crate::cyclic::{self, factorize, gcd};
use crate::error::{Error, Result};
use crate::multiplier::{in_hall_complement, units};
use crate::perm_group;

pub const MAX_EXHAUSTIVE_ORDER: u32 = 16;
const SENSITIVITY_THRESHOLDS: [u32; 4] = [2, 3, 4, 5];

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Skip instances that cannot be arc-transitive. Candidates are screened
    /// with [`arc_invariants_constant`] and then decided by the oracle.
    pub arc_transitive_only: bool,
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
    /// Also audit the prime-power valency claims over all p^e ≤ this bound.
    pub prime_power_max: Option<u32>,
}

/// Oracle data attached to a counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub valency: usize,
    pub arc_transitive: bool,
    pub aut_order: u128,
    pub normalizer_order: u128,
    pub c_normal_oracle: bool,
    pub normal_circulant_oracle: OracleVerdict,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: u32,
    pub s: Vec<u32>,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimTally {
    pub id: String,
    pub claim: String,
    pub checked: u64,
    pub agree: u64,
    pub agreement_pct: f64,
    pub counterexamples: Vec<Counterexample>,
}

impl ClaimTally {
    fn new(id: &str, claim: &str) -> Self {
        ClaimTally {
            id: id.into(),
            claim: claim.into(),
            checked: 0,
            agree: 0,
            agreement_pct: 100.0,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, r: &ClassificationReport, holds: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if holds {
            self.agree += 1;
        } else {
            self.counterexamples.push(Counterexample {
                n: r.n,
                s: r.s.clone(),
                evidence: Evidence {
                    valency: r.s.len(),
                    arc_transitive: r.arc_transitive,
                    aut_order: r.aut_order,
                    normalizer_order: r.normalizer_order,
                    c_normal_oracle: r.c_normal_oracle,
                    normal_circulant_oracle: r.normal_circulant_oracle,
                    detail: detail(),
                },
            });
        }
        self.agreement_pct = 100.0 * self.agree as f64 / self.checked as f64;
    }

    pub fn counterexample(&self, n: u32, s: &[u32]) -> Option<&Counterexample> {
        self.counterexamples.iter().find(|c| c.n == n && c.s == s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub threshold: u32,
    pub checked: u64,
    pub agree: u64,
    pub agreement_pct: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    /// Checked on at least one instance, no counterexamples.
    Vindicated,
    /// At least one counterexample.
    Refuted,
    /// No instance satisfied the hypothesis.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub id: String,
    pub status: ClaimStatus,
    pub checked: u64,
    pub counterexamples: usize,
}

impl From<&ClaimTally> for ClaimVerdict {
    fn from(t: &ClaimTally) -> Self {
        let status = if t.checked == 0 {
            ClaimStatus::Vacuous
        } else if t.counterexamples.is_empty() {
            ClaimStatus::Vindicated
        } else {
            ClaimStatus::Refuted
        };
        ClaimVerdict {
            id: t.id.clone(),
            status,
            checked: t.checked,
            counterexamples: t.counterexamples.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimePowerAudit {
    pub max_order: u32,
    pub orders: Vec<u32>,
    /// Multiplier classes that passed the arc-invariant screen and went to
    /// the oracle.
    pub oracle_calls: u64,
    pub arc_transitive_instances: u64,
    pub tallies: Vec<ClaimTally>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub n_min: u32,
    pub n_max: u32,
    pub arc_transitive_only: bool,
    pub instances: u64,
    pub arc_transitive_instances: u64,
    /// Instances whose group was too large for the element-enumerating oracle.
    pub partial_oracle_instances: u64,
    pub tallies: Vec<ClaimTally>,
    pub punctured_sensitivity: Vec<ThresholdRow>,
    pub prime_power_audit: Option<PrimePowerAudit>,
    pub verdicts: Vec<ClaimVerdict>,
}

impl AgreementReport {
    pub fn tally(&self, id: &str) -> Option<&ClaimTally> {
        self.tallies
            .iter()
            .chain(self.prime_power_audit.iter().flat_map(|a| &a.tallies))
            .find(|t| t.id == id)
    }
}

/// Whether `elems` is the lexicographically smallest of its images under
/// the units of Z_n.
fn is_multiplier_canonical(n: u32, elems: &[u32]) -> bool {
    let mut img = Vec::with_capacity(elems.len());
    units(n).all(|k| {
        img.clear();
        img.extend(
            elems
                .iter()
                .map(|&s| (s as u64 * k as u64 % n as u64) as u32),
        );
        img.sort_unstable();
        img.as_slice() >= elems
    })
}

fn elems_of_mask(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn mask_connected(mask: u64, n: u32) -> bool {
    elems_of_mask(mask)
        .into_iter()
        .fold(n as u64, |g, s| gcd(g, s as u64))
        == 1
}

/// One connected representative per multiplier class, sorted
/// lexicographically by connection set. Requires n ≤ 32.
pub fn connected_representatives(n: u32) -> Vec<CirculantGraph> {
    assert!((1..=32).contains(&n), "exhaustive enumeration needs n ≤ 32");
    let mut reps: Vec<Vec<u32>> = (0u64..1 << (n - 1))
        .map(|m| m << 1)
        .filter(|&mask| mask_connected(mask, n))
        .map(elems_of_mask)
        .filter(|elems| is_multiplier_canonical(n, elems))
        .collect();
    reps.sort();
    reps.into_iter()
        .map(|s| CirculantGraph::new(n, s).expect("valid by construction"))
        .collect()
}

#[inline]
fn rotate(mask: u64, s: u32, n: u32, full: u64) -> u64 {
    if s == 0 {
        return mask;
    }
    ((mask << s) | (mask >> (n - s))) & full
}

/// Cheap necessary condition for arc-transitivity on a bitmask (n ≤ 63).
///
/// For an arc (0, s) the four counts |S ∩ (S+s)|, |S ∩ (s−S)|,
/// |(−S) ∩ (s−S)| and |(−S) ∩ (S+s)| (common out-neighbours, 2-paths
/// 0→x→s, common in-neighbours, 2-paths s→x→0) are preserved by every
/// automorphism, so they must not depend on s ∈ S.
fn mask_invariants_constant(mask: u64, n: u32) -> bool {
    let full = (1u64 << n) - 1;
    let mut bits = mask;
    let first = bits.trailing_zeros();
    let c1 = (mask & rotate(mask, first, n, full)).count_ones();
    bits &= bits - 1;
    while bits != 0 {
        let s = bits.trailing_zeros();
        if (mask & rotate(mask, s, n, full)).count_ones() != c1 {
            return false;
        }
        bits &= bits - 1;
    }
    let mut neg = 0u64;
    let mut bits = mask;
    while bits != 0 {
        let s = bits.trailing_zeros();
        neg |= 1 << ((n - s) % n);
        bits &= bits - 1;
    }
    let counts = |s: u32| {
        let plus = rotate(mask, s, n, full);
        let minus = rotate(neg, s, n, full);
        (
            (mask & minus).count_ones(),
            (neg & minus).count_ones(),
            (neg & plus).count_ones(),
        )
    };
    let reference = counts(first);
    let mut bits = mask & (mask - 1);
    while bits != 0 {
        if counts(bits.trailing_zeros()) != reference {
            return false;
        }
        bits &= bits - 1;
    }
    true
}

/// Necessary condition for arc-transitivity; see the mask version for the
/// invariants used. Graphs without arcs pass trivially.
pub fn arc_invariants_constant(g: &CirculantGraph) -> bool {
    let n = g.order();
    let set = g.connection_set();
    if set.is_empty() {
        return true;
    }
    if let Some(mask) = set.mask().filter(|_| n < 64) {
        return mask_invariants_constant(mask, n);
    }
    let count = |s: u32| {
        let mut c = [0u32; 4];
        for x in 0..n {
            let out0 = set.contains(x);
            let in0 = set.contains((n - x) % n);
            let out_s = set.contains((x + n - s) % n);
            let in_s = set.contains((s + n - x) % n);
            c[0] += (out0 && out_s) as u32;
            c[1] += (out0 && in_s) as u32;
            c[2] += (in0 && in_s) as u32;
            c[3] += (in0 && out_s) as u32;
        }
        c
    };
    let reference = count(set.as_slice()[0]);
    set.iter().all(|s| count(s) == reference)
}

/// Per-instance data beyond the classification report.
struct Record {
    report: ClassificationReport,
    multipliers_in_hall: bool,
    punctured: Vec<bool>,
    reconstructs: Option<bool>,
    sigma_aut_order: Option<u128>,
    gamma0_is_c4: bool,
    gamma0_extended: Option<bool>,
}

impl Record {
    fn new(g: &CirculantGraph) -> Self {
        let analysis = Analysis::new(g);
        let n = g.order();
        let multipliers_in_hall = analysis
            .multipliers
            .units()
            .iter()
            .all(|&k| in_hall_complement(k, n));
        let punctured = SENSITIVITY_THRESHOLDS
            .iter()
            .map(|&t| contains_punctured_coset(g, t))
            .collect();
        let mut record = Record {
            report: analysis.report,
            multipliers_in_hall,
            punctured,
            reconstructs: None,
            sigma_aut_order: None,
            gamma0_is_c4: false,
            gamma0_extended: None,
        };
        if let Some(dec) = &record.report.decomposition {
            record.reconstructs = Some(
                dec.reconstruct()
                    .map(|h| h == analysis.graph)
                    .unwrap_or(false),
            );
            if dec.b > 1 {
                record.sigma_aut_order = dec
                    .quotient()
                    .ok()
                    .map(|sigma| perm_group::automorphisms(&sigma).order());
            }
            record.gamma0_is_c4 = dec.gamma0.order() == 4
                && perm_group::are_isomorphic(&dec.gamma0, &CirculantGraph::cycle(4));
            record.gamma0_extended = Some(coset_criterion(&dec.gamma0, Variant::Extended));
        }
        record
    }
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

fn factorial(k: u32) -> u128 {
    (1..=k as u128).product()
}

fn divides(d: u64, m: u64) -> bool {
    d != 0 && m.is_multiple_of(d)
}

fn prime_minus_one_product(n: u32) -> u64 {
    factorize(n).primes().map(|p| (p - 1) as u64).product()
}

/// Runs the exhaustive sweep over 2 ≤ n ≤ n_max.
pub fn verify_range(n_max: u32, options: &VerifyOptions) -> Result<AgreementReport> {
    if !(3..=MAX_EXHAUSTIVE_ORDER).contains(&n_max) {
        return Err(Error::GuardExceeded(n_max));
    }
    let n_min = 2;
    let instances: Vec<CirculantGraph> = (n_min..=n_max)
        .flat_map(connected_representatives)
        .filter(|g| !options.arc_transitive_only || arc_invariants_constant(g))
        .collect();
    let records: Vec<Record> = in_pool(options.jobs, || {
        instances.par_iter().map(Record::new).collect()
    });
    let records: Vec<Record> = if options.arc_transitive_only {
        records
            .into_iter()
            .filter(|r| r.report.arc_transitive)
            .collect()
    } else {
        records
    };

    let tallies = sweep_tallies(&records);
    let punctured_sensitivity = sensitivity_table(&records);
    let prime_power_audit = options
        .prime_power_max
        .map(|max| audit_prime_powers(max, options.jobs));
    let verdicts = tallies
        .iter()
        .chain(prime_power_audit.iter().flat_map(|a| &a.tallies))
        .map(ClaimVerdict::from)
        .collect();

    Ok(AgreementReport {
        n_min,
        n_max,
        arc_transitive_only: options.arc_transitive_only,
        instances: records.len() as u64,
        arc_transitive_instances: records.iter().filter(|r| r.report.arc_transitive).count() as u64,
        partial_oracle_instances: records
            .iter()
            .filter(|r| r.report.normal_circulant_oracle.decided().is_none())
            .count() as u64,
        tallies,
        punctured_sensitivity,
        prime_power_audit,
        verdicts,
    })
}

fn normality_detail(predicted: bool, r: &ClassificationReport) -> String {
    format!(
        "predicted normal = {predicted}, oracle: |Aut| = {}, |C ⋊ Aut(C,S)| = {}, translation subgroup normal = {}",
        r.aut_order, r.normalizer_order, r.c_normal_oracle
    )
}

fn sweep_tallies(records: &[Record]) -> Vec<ClaimTally> {
    let mut headline = ClaimTally::new(
        "generators-iff-transitive",
        "connected arc-transitive: every element of S has order n iff Aut(C,S) is transitive on S",
    );
    let mut at_iff_nat = ClaimTally::new(
        "generators-at-iff-nat",
        "connected, every element of S of order n: arc-transitive iff normal-arc-transitive",
    );
    let mut nat_at = ClaimTally::new(
        "nat-implies-at",
        "connected: Aut(C,S) transitive on S implies arc-transitive",
    );
    let mut nat_structure = ClaimTally::new(
        "nat-decomposition-structure",
        "normal-arc-transitive: complete factors have prime order and pi(b) lies in pi(n0) ∪ {p_i}",
    );
    let mut coset_literal = ClaimTally::new(
        "coset-literal",
        "connected arc-transitive: normal iff S contains no coset of a nontrivial subgroup",
    );
    let mut coset_extended = ClaimTally::new(
        "coset-extended",
        "connected arc-transitive: normal iff S contains no coset and no punctured coset of a subgroup of order >= 4",
    );
    let mut full_coset = ClaimTally::new(
        "full-coset-not-normal",
        "connected arc-transitive with a full coset in S: not normal",
    );
    let mut hall = ClaimTally::new(
        "multipliers-in-hall-complement",
        "connected arc-transitive: normal iff Aut(C,S) lies in Z_{p1-1} x ... x Z_{pt-1}",
    );
    let mut prime_power = ClaimTally::new(
        "prime-power-valency",
        "arc-transitive Circ(p^e, S), p^e > 3: normal iff |S| divides p-1",
    );
    let mut coprime_valency = ClaimTally::new(
        "coprime-valency-normal",
        "connected arc-transitive with gcd(|S|, n) = 1: normal",
    );
    let mut normal_valency = ClaimTally::new(
        "normal-valency-divides",
        "connected arc-transitive normal: |S| divides (p1-1)...(pr-1)",
    );
    let mut valency_all = ClaimTally::new(
        "normal-valency-divides-all",
        "connected normal (arc-transitive or not): |S| divides (p1-1)...(pr-1)",
    );
    let mut normal_order = ClaimTally::new(
        "normal-order-is-normalizer",
        "connected normal: |Aut| equals the normalizer order n|Aut(C,S)|",
    );
    let mut divides_t =
        ClaimTally::new("normalizer-divides", "connected: n|Aut(C,S)| divides |Aut|");
    let mut roundtrip = ClaimTally::new(
        "decomposition-roundtrip",
        "connected arc-transitive: lex_blowup(tensor(gamma0, K_n1, ...), b) reproduces S",
    );
    let mut gamma0 = ClaimTally::new(
        "gamma0-extended",
        "connected arc-transitive: gamma0 satisfies the extended coset criterion",
    );
    let mut wreath = ClaimTally::new(
        "wreath-order",
        "connected arc-transitive, b > 1, gamma0 not C4: |Aut| = (b!)^(n/b) |Aut Sigma|",
    );
    let mut oracles = ClaimTally::new(
        "oracle-agreement",
        "translation subgroup normal iff some regular cyclic subgroup is normal (where decidable)",
    );

    for rec in records {
        let r = &rec.report;
        if !r.connected {
            continue;
        }
        let n = r.n;
        let valency = r.s.len() as u64;
        let normal = r.c_normal_oracle;

        divides_t.record(r, r.aut_order % r.normalizer_order == 0, || {
            format!("{} does not divide {}", r.normalizer_order, r.aut_order)
        });
        if r.multiplier_transitive {
            nat_at.record(r, r.arc_transitive, || {
                "Aut(C,S) transitive on S but Aut not arc-transitive".into()
            });
        }
        if r.all_full_order {
            at_iff_nat.record(r, r.arc_transitive == r.normal_arc_transitive, || {
                format!(
                    "arc-transitive = {}, normal-arc-transitive = {}",
                    r.arc_transitive, r.normal_arc_transitive
                )
            });
        }
        if normal {
            normal_order.record(r, r.aut_order == r.normalizer_order, || {
                format!(
                    "|Aut| = {} vs normalizer {}",
                    r.aut_order, r.normalizer_order
                )
            });
            let bound = prime_minus_one_product(n);
            valency_all.record(r, divides(valency, bound), || {
                format!("|S| = {valency} does not divide {bound}")
            });
        }
        if let Some(exists) = r.normal_circulant_oracle.decided() {
            oracles.record(r, exists == normal, || {
                format!(
                    "translation subgroup normal = {normal}, some regular cyclic normal = {exists}"
                )
            });
        }

        if !r.arc_transitive {
            continue;
        }

        headline.record(r, r.all_full_order == r.multiplier_transitive, || {
            format!(
                "all of order n = {}, Aut(C,S) transitive = {}",
                r.all_full_order, r.multiplier_transitive
            )
        });
        let literal = !r.contains_full_coset;
        coset_literal.record(r, literal == normal, || normality_detail(literal, r));
        let extended = literal && !r.contains_punctured_coset_ge4;
        coset_extended.record(r, extended == normal, || normality_detail(extended, r));
        if r.contains_full_coset {
            full_coset.record(r, !normal, || normality_detail(false, r));
        }
        hall.record(r, rec.multipliers_in_hall == normal, || {
            normality_detail(rec.multipliers_in_hall, r)
        });
        if let Some((p, _)) = factorize(n).as_prime_power().filter(|_| n > 3) {
            let predicted = divides(valency, (p - 1) as u64);
            prime_power.record(r, predicted == normal, || normality_detail(predicted, r));
        }
        if gcd(valency, n as u64) == 1 {
            coprime_valency.record(r, normal, || normality_detail(true, r));
        }
        if normal {
            let bound = prime_minus_one_product(n);
            normal_valency.record(r, divides(valency, bound), || {
                format!("|S| = {valency} does not divide {bound}")
            });
        }

        let dec = r
            .decomposition
            .as_ref()
            .expect("arc-transitive instances are decomposed");
        roundtrip.record(r, rec.reconstructs == Some(true), || {
            format!("decomposition {dec:?}")
        });
        gamma0.record(r, rec.gamma0_extended == Some(true), || {
            format!("gamma0 = {} fails the extended criterion", dec.gamma0)
        });
        if r.normal_arc_transitive {
            let primes_ok = dec
                .complete_factor_orders
                .iter()
                .all(|&d| cyclic::is_prime(d));
            let mut allowed = cyclic::prime_set(dec.gamma0.order());
            allowed.extend(dec.complete_factor_orders.iter().copied());
            let b_ok = cyclic::prime_set(dec.b).is_subset(&allowed);
            nat_structure.record(r, primes_ok && b_ok, || format!("decomposition {dec:?}"));
        }
        if dec.b > 1 && !rec.gamma0_is_c4 {
            if let Some(sigma) = rec.sigma_aut_order {
                let blocks = n / dec.b;
                let expected =
                    (0..blocks).try_fold(sigma, |acc, _| acc.checked_mul(factorial(dec.b)));
                wreath.record(r, expected == Some(r.aut_order), || {
                    format!(
                        "b = {}, |Aut Sigma| = {sigma}, (b!)^(n/b)|Aut Sigma| = {expected:?}, |Aut| = {}",
                        dec.b, r.aut_order
                    )
                });
            }
        }
    }

    vec![
        headline,
        at_iff_nat,
        nat_at,
        nat_structure,
        coset_literal,
        coset_extended,
        full_coset,
        hall,
        prime_power,
        coprime_valency,
        normal_valency,
        valency_all,
        normal_order,
        divides_t,
        roundtrip,
        gamma0,
        wreath,
        oracles,
    ]
}

fn sensitivity_table(records: &[Record]) -> Vec<ThresholdRow> {
    SENSITIVITY_THRESHOLDS
        .iter()
        .enumerate()
        .map(|(i, &threshold)| {
            let relevant = records
                .iter()
                .filter(|r| r.report.connected && r.report.arc_transitive);
            let (mut checked, mut agree) = (0u64, 0u64);
            for rec in relevant {
                checked += 1;
                let predicted = !rec.report.contains_full_coset && !rec.punctured[i];
                agree += (predicted == rec.report.c_normal_oracle) as u64;
            }
            ThresholdRow {
                threshold,
                checked,
                agree,
                agreement_pct: if checked == 0 {
                    100.0
                } else {
                    100.0 * agree as f64 / checked as f64
                },
            }
        })
        .collect()
}

/// Prime powers p^e with 3 < p^e ≤ max_order.
fn prime_powers_up_to(max_order: u32) -> Vec<u32> {
    (4..=max_order)
        .filter(|&n| factorize(n).as_prime_power().is_some())
        .collect()
}

/// The prime-power valency claims over every arc-transitive Circ(p^e, S) with
/// 3 < p^e ≤ max_order (max_order ≤ 32). Candidates are screened with the
/// arc invariants before the oracle is consulted.
pub fn audit_prime_powers(max_order: u32, jobs: Option<usize>) -> PrimePowerAudit {
    assert!(
        max_order <= 32,
        "prime-power audit supports orders up to 32"
    );
    let orders = prime_powers_up_to(max_order);
    let mut candidates: Vec<CirculantGraph> = Vec::new();
    for &n in &orders {
        let p = factorize(n).factors()[0].0;
        let coprime_bits: u64 = (1..n).filter(|x| x % p != 0).fold(0, |m, x| m | 1 << x);
        let found: Vec<u64> = in_pool(jobs, || {
            (0u64..1 << (n - 1))
                .into_par_iter()
                .map(|m| m << 1)
                .filter(|&mask| mask & coprime_bits != 0 && mask_invariants_constant(mask, n))
                .collect()
        });
        let mut reps: Vec<Vec<u32>> = found
            .into_iter()
            .map(elems_of_mask)
            .filter(|e| is_multiplier_canonical(n, e))
            .collect();
        reps.sort();
        candidates.extend(reps.into_iter().map(|s| CirculantGraph::new(n, s).unwrap()));
    }
    let oracle_calls = candidates.len() as u64;
    let reports: Vec<ClassificationReport> = in_pool(jobs, || {
        candidates
            .par_iter()
            .map(|g| {
                let group = perm_group::automorphisms(g);
                let arc_transitive = perm_group::is_arc_transitive_in(g, &group).unwrap_or(false);
                let ms = crate::multiplier::aut_c_s(g);
                ClassificationReport {
                    n: g.order(),
                    s: g.connection_set().as_slice().to_vec(),
                    connected: true,
                    undirected: g.is_undirected(),
                    arc_transitive,
                    all_full_order: super::all_full_order(g),
                    multiplier_transitive: ms.is_transitive_on(g.connection_set()),
                    normal_arc_transitive: arc_transitive
                        && ms.is_transitive_on(g.connection_set()),
                    contains_full_coset: super::contains_full_coset(g),
                    contains_punctured_coset_ge4: contains_punctured_coset(
                        g,
                        super::PUNCTURED_THRESHOLD,
                    ),
                    c_normal_oracle: perm_group::translation_normal_in(&group),
                    normal_circulant_oracle: match perm_group::normal_regular_cyclic_in(&group) {
                        Ok(b) => OracleVerdict::Decided(b),
                        Err(_) => OracleVerdict::PARTIAL,
                    },
                    decomposition: None,
                    aut_order: group.order(),
                    normalizer_order: g.order() as u128 * ms.len() as u128,
                }
            })
            .collect()
    });

    let mut prime_power = ClaimTally::new(
        "prime-power-valency-audit",
        "arc-transitive Circ(p^e, S), p^e > 3: normal iff |S| divides p-1",
    );
    let mut coprime_valency = ClaimTally::new(
        "prime-power-coprime-audit",
        "arc-transitive Circ(p^e, S), p^e > 3, p not dividing |S|: normal",
    );
    let mut at = 0;
    for r in reports.iter().filter(|r| r.arc_transitive) {
        at += 1;
        let (p, _) = factorize(r.n).as_prime_power().unwrap();
        let valency = r.s.len() as u64;
        let predicted = divides(valency, (p - 1) as u64);
        prime_power.record(r, predicted == r.c_normal_oracle, || {
            normality_detail(predicted, r)
        });
        if !valency.is_multiple_of(p as u64) {
            coprime_valency.record(r, r.c_normal_oracle, || normality_detail(true, r));
        }
    }
    PrimePowerAudit {
        max_order,
        orders,
        oracle_calls,
        arc_transitive_instances: at,
        tallies: vec![prime_power, coprime_valency],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representatives_cover_every_connected_set() {
        for n in 2..=10u32 {
            let reps = connected_representatives(n);
            let mut covered = std::collections::BTreeSet::new();
            for g in &reps {
                for k in units(n) {
                    covered.insert(g.scaled(k).connection_set().as_slice().to_vec());
                }
            }
            let connected = (0u64..1 << (n - 1))
                .map(|m| m << 1)
                .filter(|&m| mask_connected(m, n))
                .count();
            assert_eq!(covered.len(), connected, "n = {n}");
        }
        let reps8 = connected_representatives(8);
        assert!(reps8.contains(&CirculantGraph::cycle(8)));
    }

    #[test]
    fn invariant_screen_never_rejects_arc_transitive() {
        for n in 2..=12u32 {
            for g in connected_representatives(n) {
                let at = perm_group::is_arc_transitive(&g).unwrap();
                if at {
                    assert!(arc_invariants_constant(&g), "{g}");
                }
            }
        }
    }

    #[test]
    fn generic_and_mask_screens_agree() {
        for n in 2..=12u32 {
            for m in 0u64..1 << (n - 1) {
                let mask = m << 1;
                if mask == 0 {
                    continue;
                }
                let g = CirculantGraph::new(n, elems_of_mask(mask)).unwrap();
                let set = g.connection_set();
                let count = |s: u32| {
                    let mut c = [0u32; 4];
                    for x in 0..n {
                        let out0 = set.contains(x);
                        let in0 = set.contains((n - x) % n);
                        let out_s = set.contains((x + n - s) % n);
                        let in_s = set.contains((s + n - x) % n);
                        c[0] += (out0 && out_s) as u32;
                        c[1] += (out0 && in_s) as u32;
                        c[2] += (in0 && in_s) as u32;
                        c[3] += (in0 && out_s) as u32;
                    }
                    c
                };
                let reference = count(set.as_slice()[0]);
                let generic = set.iter().all(|s| count(s) == reference);
                assert_eq!(mask_invariants_constant(mask, n), generic, "{g}");
            }
        }
    }

    #[test]
    fn guard() {
        assert_eq!(
            verify_range(40, &VerifyOptions::default()).unwrap_err(),
            Error::GuardExceeded(40)
        );
        assert_eq!(
            verify_range(2, &VerifyOptions::default()).unwrap_err(),
            Error::GuardExceeded(2)
        );
    }

    #[test]
    fn small_sweep_is_consistent() {
        let report = verify_range(8, &VerifyOptions::default()).unwrap();
        let headline = report.tally("generators-iff-transitive").unwrap();
        assert!(headline.checked > 0);
        assert!(headline.counterexamples.is_empty());
        for t in &report.tallies {
            assert_eq!(
                t.checked,
                t.agree + t.counterexamples.len() as u64,
                "{}",
                t.id
            );
        }
        let json = serde_json::to_string(&report).unwrap();
        let back: AgreementReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
