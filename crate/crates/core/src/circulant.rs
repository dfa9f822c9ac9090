//! Circulant digraphs Circ(n, S): v → w is an arc iff w − v ∈ S.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cyclic::{self, gcd, CrtFrame, Subgroup, MAX_MODULUS};
use crate::error::{Error, Result};

/// A subset of Z_n ∖ {0}, kept both as an ascending list and as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    n: u32,
    elems: Vec<u32>,
    bits: Vec<u64>,
}

impl ConnectionSet {
    pub fn new(n: u32, elems: impl IntoIterator<Item = u32>) -> Result<Self> {
        if n == 0 || n > MAX_MODULUS {
            return Err(Error::InvalidConnectionSet {
                n,
                reason: "modulus must lie in 1..=2^31".into(),
            });
        }
        let mut elems: Vec<u32> = elems.into_iter().collect();
        for &s in &elems {
            if s == 0 {
                return Err(Error::InvalidConnectionSet {
                    n,
                    reason: "0 is not allowed".into(),
                });
            }
            if s >= n {
                return Err(Error::InvalidConnectionSet {
                    n,
                    reason: format!("{s} is out of range"),
                });
            }
        }
        elems.sort_unstable();
        elems.dedup();
        Ok(Self::from_sorted(n, elems))
    }

    fn from_sorted(n: u32, elems: Vec<u32>) -> Self {
        let mut bits = vec![0u64; (n as usize).div_ceil(64)];
        for &s in &elems {
            bits[s as usize / 64] |= 1 << (s % 64);
        }
        ConnectionSet { n, elems, bits }
    }

    /// Builds from an arbitrary iterator of residues, dropping 0.
    fn collect_nonzero(n: u32, it: impl IntoIterator<Item = u32>) -> Self {
        let mut elems: Vec<u32> = it.into_iter().filter(|&x| x != 0).collect();
        elems.sort_unstable();
        elems.dedup();
        Self::from_sorted(n, elems)
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.elems.iter().copied()
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        x < self.n && self.bits[x as usize / 64] >> (x % 64) & 1 == 1
    }

    /// Bit i set iff i ∈ S. Only defined for n ≤ 64.
    pub fn mask(&self) -> Option<u64> {
        (self.n <= 64).then(|| self.bits.first().copied().unwrap_or(0))
    }

    /// True iff S + h = S.
    pub fn is_translate_invariant(&self, h: u32) -> bool {
        let n = self.n as u64;
        self.elems
            .iter()
            .all(|&s| self.contains(((s as u64 + h as u64) % n) as u32))
    }

    /// The set k·S. `k` need not be a unit, but then the image may shrink.
    pub fn scaled(&self, k: u32) -> Self {
        let n = self.n as u64;
        Self::collect_nonzero(
            self.n,
            self.elems.iter().map(|&s| (s as u64 * k as u64 % n) as u32),
        )
    }

    pub fn negated(&self) -> Self {
        self.scaled(self.n - 1)
    }
}

impl fmt::Debug for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.elems).finish()
    }
}

/// Circ(n, S). Equality is equality of the labeled digraph.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCirculant", into = "RawCirculant")]
pub struct CirculantGraph {
    set: ConnectionSet,
}

#[derive(Serialize, Deserialize)]
struct RawCirculant {
    n: u32,
    s: Vec<u32>,
}

impl TryFrom<RawCirculant> for CirculantGraph {
    type Error = Error;

    fn try_from(raw: RawCirculant) -> Result<Self> {
        CirculantGraph::new(raw.n, raw.s)
    }
}

impl From<CirculantGraph> for RawCirculant {
    fn from(g: CirculantGraph) -> Self {
        RawCirculant {
            n: g.order(),
            s: g.set.elems,
        }
    }
}

impl CirculantGraph {
    /// Validates and normalizes (sorts, removes duplicates) the connection set.
    pub fn new(n: u32, s: impl IntoIterator<Item = u32>) -> Result<Self> {
        Ok(CirculantGraph {
            set: ConnectionSet::new(n, s)?,
        })
    }

    pub fn from_set(set: ConnectionSet) -> Self {
        CirculantGraph { set }
    }

    /// K_n = Circ(n, Z_n ∖ {0}); K_1 = Circ(1, ∅) is the trivial circulant.
    pub fn complete(n: u32) -> Self {
        Self::from_set(ConnectionSet::from_sorted(n, (1..n).collect()))
    }

    /// The undirected n-cycle Circ(n, {1, n−1}).
    pub fn cycle(n: u32) -> Self {
        Self::from_set(ConnectionSet::collect_nonzero(n, [1 % n, n - 1]))
    }

    /// Circ(n, units mod n).
    pub fn unit_circulant(n: u32) -> Self {
        Self::from_set(ConnectionSet::collect_nonzero(
            n,
            (1..n).filter(|&k| gcd(k as u64, n as u64) == 1),
        ))
    }

    pub fn order(&self) -> u32 {
        self.set.n
    }

    pub fn connection_set(&self) -> &ConnectionSet {
        &self.set
    }

    pub fn valency(&self) -> usize {
        self.set.len()
    }

    #[inline]
    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        let n = self.set.n;
        self.set
            .contains(((v as u64 + n as u64 - u as u64) % n as u64) as u32)
    }

    /// Out-neighbours of `v`, ascending.
    pub fn out_neighbors(&self, v: u32) -> Vec<u32> {
        let n = self.set.n as u64;
        let mut out: Vec<u32> = self
            .set
            .iter()
            .map(|s| ((v as u64 + s as u64) % n) as u32)
            .collect();
        out.sort_unstable();
        out
    }

    /// All arcs (u, v), ascending by u then v.
    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.order()).flat_map(move |u| self.out_neighbors(u).into_iter().map(move |v| (u, v)))
    }

    /// ⟨S⟩ = Z_n, i.e. gcd(S ∪ {n}) = 1.
    pub fn is_connected(&self) -> bool {
        self.set
            .iter()
            .fold(self.order() as u64, |g, s| gcd(g, s as u64))
            == 1
    }

    /// S = −S.
    pub fn is_undirected(&self) -> bool {
        let n = self.order();
        self.set.iter().all(|s| self.set.contains(n - s))
    }

    pub fn scaled(&self, k: u32) -> Self {
        Self::from_set(self.set.scaled(k))
    }

    /// The subgroup {h : S + h = S}.
    pub fn translation_kernel(&self) -> Subgroup {
        let n = self.order();
        let order = cyclic::divisors(n)
            .into_iter()
            .rev()
            .find(|&d| self.set.is_translate_invariant(n / d % n))
            .unwrap_or(1);
        cyclic::subgroup_of_order(n, order).expect("divisor")
    }

    /// Collapses the cosets of `kernel`, labeling x + K as x mod (n / |K|).
    pub fn quotient_by(&self, kernel: &Subgroup) -> Result<Self> {
        let n = self.order();
        if kernel.modulus() != n || !self.set.is_translate_invariant(kernel.step()) {
            return Err(Error::InvalidQuotient {
                order: kernel.order(),
            });
        }
        let m = n / kernel.order();
        Ok(Self::from_set(ConnectionSet::collect_nonzero(
            m,
            self.set.iter().map(|s| s % m),
        )))
    }

    /// Σ[K̄_b]: S′ = {x ∈ Z_{mb} : x mod m ∈ S}.
    pub fn lex_blowup(&self, b: u32) -> Self {
        assert!(b >= 1, "blowup multiplicity must be positive");
        let m = self.order();
        let nb = m.checked_mul(b).expect("order overflow");
        Self::from_set(ConnectionSet::from_sorted(
            nb,
            (0..nb).filter(|&x| self.set.contains(x % m)).collect(),
        ))
    }

    /// Tensor (direct) product: connection set S₁ × S₂ in CRT coordinates.
    /// K₁ acts as the identity factor.
    pub fn tensor_product(&self, other: &Self) -> Result<Self> {
        let (n1, n2) = (self.order(), other.order());
        if n2 == 1 {
            return Ok(self.clone());
        }
        if n1 == 1 {
            return Ok(other.clone());
        }
        let frame = CrtFrame::new(&[n1, n2]).map_err(|_| Error::NotACirculant(n1, n2))?;
        let frame = &frame;
        let set = ConnectionSet::collect_nonzero(
            frame.modulus(),
            self.set
                .iter()
                .flat_map(|a| other.set.iter().map(move |b| frame.combine(&[a, b]))),
        );
        Ok(Self::from_set(set))
    }

    pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a CirculantGraph>) -> Result<Self> {
        factors
            .into_iter()
            .try_fold(CirculantGraph::complete(1), |acc, g| acc.tensor_product(g))
    }

    /// Plain-text arc list, one "u v" line per arc.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.arcs() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Graphviz rendering: `graph` with `--` edges (u < v) when S = −S,
    /// otherwise `digraph` with `->` arcs.
    pub fn to_dot(&self) -> String {
        let undirected = self.is_undirected();
        let mut out = String::new();
        let (kind, op) = if undirected {
            ("graph", "--")
        } else {
            ("digraph", "->")
        };
        writeln!(out, "{kind} \"{self}\" {{").unwrap();
        for v in 0..self.order() {
            writeln!(out, "  {v};").unwrap();
        }
        for (u, v) in self.arcs() {
            if !undirected || u < v {
                writeln!(out, "  {u} {op} {v};").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for CirculantGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Circ({},{{", self.order())?;
        for (i, s) in self.set.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("})")
    }
}

impl fmt::Debug for CirculantGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::VecDeque;

    fn circ(n: u32, s: &[u32]) -> CirculantGraph {
        CirculantGraph::new(n, s.iter().copied()).unwrap()
    }

    fn bfs_connected(g: &CirculantGraph) -> bool {
        // weak connectivity of the underlying graph; for a circulant this
        // coincides with strong connectivity
        let n = g.order() as usize;
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for w in 0..n as u32 {
                if (g.has_arc(v, w) || g.has_arc(w, v)) && !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().all(|&b| b)
    }

    fn scan_kernel(g: &CirculantGraph) -> Vec<u32> {
        let n = g.order();
        (0..n)
            .filter(|&h| {
                g.connection_set()
                    .iter()
                    .all(|s| g.connection_set().contains((s + h) % n))
            })
            .collect()
    }

    #[test]
    fn constructors() {
        assert_eq!(CirculantGraph::complete(4), circ(4, &[1, 2, 3]));
        assert_eq!(
            CirculantGraph::unit_circulant(9),
            circ(9, &[1, 2, 4, 5, 7, 8])
        );
        assert_eq!(CirculantGraph::cycle(6), circ(6, &[1, 5]));
        assert_eq!(CirculantGraph::cycle(2), circ(2, &[1]));
        assert!(matches!(
            CirculantGraph::new(5, [0, 2]),
            Err(Error::InvalidConnectionSet { .. })
        ));
        assert!(matches!(
            CirculantGraph::new(5, [2, 5]),
            Err(Error::InvalidConnectionSet { .. })
        ));
        assert_eq!(CirculantGraph::complete(1).valency(), 0);
        assert_eq!(circ(7, &[3, 1, 3]).connection_set().as_slice(), &[1, 3]);
    }

    #[test]
    fn connectivity() {
        assert!(!circ(6, &[2, 4]).is_connected());
        assert!(circ(6, &[1, 5]).is_connected());
        // gcd(4, 6, 12) = 2; the bfs oracle must agree
        let g = circ(12, &[4, 6]);
        assert!(!g.is_connected());
        assert!(!bfs_connected(&g));
    }

    #[test]
    fn connectivity_matches_bfs_exhaustively() {
        for n in 1..=12u32 {
            for mask in 0u32..(1 << (n - 1)) {
                let g = circ(
                    n,
                    &(1..n)
                        .filter(|s| mask >> (s - 1) & 1 == 1)
                        .collect::<Vec<_>>(),
                );
                assert_eq!(g.is_connected(), bfs_connected(&g), "{g}");
            }
        }
    }

    #[test]
    fn undirected() {
        assert!(circ(8, &[1, 7]).is_undirected());
        assert!(!circ(3, &[1]).is_undirected());
        for n in 1..20 {
            assert!(CirculantGraph::complete(n).is_undirected());
        }
    }

    #[test]
    fn tensor_examples() {
        let k = CirculantGraph::complete;
        // crt_combine({1,2} × {1}) computed directly: x ≡ a (3), x ≡ 1 (2)
        let direct: Vec<u32> = (0..6).filter(|x| x % 3 != 0 && x % 2 == 1).collect();
        assert_eq!(direct, vec![1, 5]);
        assert_eq!(k(3).tensor_product(&k(2)).unwrap(), circ(6, &direct));
        let units15 = circ(15, &[1, 2, 4, 7, 8, 11, 13, 14]);
        assert_eq!(k(3).tensor_product(&k(5)).unwrap(), units15);
        assert_eq!(units15, CirculantGraph::unit_circulant(15));
        let g = circ(7, &[1, 2, 4]);
        assert_eq!(g.tensor_product(&k(1)).unwrap(), g);
        assert_eq!(k(1).tensor_product(&g).unwrap(), g);
        assert_eq!(k(4).tensor_product(&k(6)), Err(Error::NotACirculant(4, 6)));
    }

    #[test]
    fn tensor_commutes_and_multiplies_valency() {
        let pieces = [
            circ(4, &[1, 3]),
            circ(5, &[1, 2]),
            circ(9, &[1, 3, 8]),
            circ(7, &[1, 2, 4]),
        ];
        for a in &pieces {
            for b in &pieces {
                if gcd(a.order() as u64, b.order() as u64) != 1 {
                    continue;
                }
                let ab = a.tensor_product(b).unwrap();
                assert_eq!(ab, b.tensor_product(a).unwrap());
                assert_eq!(ab.valency(), a.valency() * b.valency());
            }
        }
    }

    #[test]
    fn blowup_examples() {
        let k2 = CirculantGraph::complete(2);
        assert_eq!(k2.lex_blowup(2), circ(4, &[1, 3]));
        assert_eq!(k2.lex_blowup(4), circ(8, &[1, 3, 5, 7]));
        let g = circ(7, &[1, 2, 4]);
        assert_eq!(g.lex_blowup(1), g);
        assert_eq!(g.lex_blowup(3).valency(), 9);
    }

    #[test]
    fn kernel_examples() {
        let elems = |g: &CirculantGraph| g.translation_kernel().elements().collect::<Vec<_>>();
        for (g, want) in [
            (circ(4, &[1, 3]), vec![0, 2]),
            (CirculantGraph::complete(4), vec![0]),
            (circ(8, &[1, 3, 5, 7]), vec![0, 2, 4, 6]),
        ] {
            assert_eq!(scan_kernel(&g), want);
            assert_eq!(elems(&g), want);
        }
    }

    #[test]
    fn quotient_examples() {
        let k2 = CirculantGraph::complete(2);
        let c4 = circ(4, &[1, 3]);
        let k = c4.translation_kernel();
        assert_eq!(c4.quotient_by(&k).unwrap(), k2);
        let g = circ(7, &[1, 2, 4]);
        let trivial = cyclic::subgroup_of_order(7, 1).unwrap();
        assert_eq!(g.quotient_by(&trivial).unwrap(), g);
        let odd = circ(8, &[1, 3, 5, 7]);
        assert_eq!(
            odd.quotient_by(&cyclic::subgroup_of_order(8, 4).unwrap())
                .unwrap(),
            k2
        );
        assert_eq!(
            g.quotient_by(&cyclic::subgroup_of_order(7, 7).unwrap()),
            Err(Error::InvalidQuotient { order: 7 })
        );
    }

    #[test]
    fn blowup_of_quotient_round_trip() {
        for n in 1..=14u32 {
            for mask in 0u32..(1 << (n - 1)) {
                let g = circ(
                    n,
                    &(1..n)
                        .filter(|s| mask >> (s - 1) & 1 == 1)
                        .collect::<Vec<_>>(),
                );
                if !g.is_connected() {
                    continue;
                }
                let kernel = g.translation_kernel();
                assert_eq!(scan_kernel(&g), kernel.elements().collect::<Vec<_>>());
                for d in cyclic::divisors(kernel.order()) {
                    let sub = cyclic::subgroup_of_order(n, d).unwrap();
                    let q = g.quotient_by(&sub).unwrap();
                    assert_eq!(q.lex_blowup(d), g);
                }
            }
        }
    }

    #[test]
    fn exports() {
        assert_eq!(circ(3, &[1]).edge_list(), "0 1\n1 2\n2 0\n");
        assert_eq!(
            circ(4, &[1, 3]).to_dot(),
            "graph \"Circ(4,{1,3})\" {\n  0;\n  1;\n  2;\n  3;\n  0 -- 1;\n  0 -- 3;\n  1 -- 2;\n  2 -- 3;\n}\n"
        );
        assert_eq!(
            circ(3, &[1]).to_dot(),
            "digraph \"Circ(3,{1})\" {\n  0;\n  1;\n  2;\n  0 -> 1;\n  1 -> 2;\n  2 -> 0;\n}\n"
        );
    }

    #[test]
    fn serde_validates() {
        let g: CirculantGraph = serde_json::from_str(r#"{"n":5,"s":[1,4]}"#).unwrap();
        assert_eq!(g, CirculantGraph::cycle(5));
        assert!(serde_json::from_str::<CirculantGraph>(r#"{"n":5,"s":[0]}"#).is_err());
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"n":5,"s":[1,4]}"#);
    }
}
