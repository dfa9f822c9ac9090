//! Backtracking search for digraph isomorphisms with colour refinement.
//!
//! Both digraphs are coloured jointly, as the two halves of their disjoint
//! union, so colour ids are directly comparable between the sides. A search
//! node individualizes matching pairs (x, y) and refines to a stable
//! colouring; it is pruned as soon as some colour class has different sizes
//! on the two sides.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chain::GroupHandle;
use super::perm::{orbit, Permutation};
use crate::circulant::CirculantGraph;

/// Adjacency lists plus a dense arc matrix.
#[derive(Debug, Clone)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    adj: Vec<bool>,
}

impl Digraph {
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut adj = vec![false; n * n];
        for (u, v) in arcs {
            if !adj[u as usize * n + v as usize] {
                adj[u as usize * n + v as usize] = true;
                out[u as usize].push(v);
                inn[v as usize].push(u);
            }
        }
        Digraph { n, out, inn, adj }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize * self.n + v as usize]
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n
            && (0..self.n as u32).all(|u| {
                self.out[u as usize]
                    .iter()
                    .all(|&v| self.has_arc(p.apply(u), p.apply(v)))
            })
    }
}

impl From<&CirculantGraph> for Digraph {
    fn from(g: &CirculantGraph) -> Self {
        Digraph::from_arcs(g.order() as usize, g.arcs())
    }
}

/// Vertex ordering policy for the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchOrder {
    /// Candidates in ascending vertex order, target vertices the smallest in
    /// their cell.
    #[default]
    Ascending,
    /// Candidates and target vertices drawn from a seeded RNG.
    Randomized(u64),
}

struct Search<'a> {
    left: &'a Digraph,
    right: &'a Digraph,
    n: usize,
    rng: Option<ChaCha8Rng>,
}

type Colouring = Vec<u32>;

impl<'a> Search<'a> {
    fn new(left: &'a Digraph, right: &'a Digraph, order: SearchOrder) -> Self {
        assert_eq!(left.n, right.n);
        let rng = match order {
            SearchOrder::Ascending => None,
            SearchOrder::Randomized(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        Search {
            left,
            right,
            n: left.n,
            rng,
        }
    }

    fn neighbours(&self, v: usize) -> (&[u32], &[u32], u32) {
        if v < self.n {
            (&self.left.out[v], &self.left.inn[v], 0)
        } else {
            let w = v - self.n;
            (&self.right.out[w], &self.right.inn[w], self.n as u32)
        }
    }

    /// Refines to a stable colouring; returns false if the two sides stop
    /// matching.
    fn refine(&self, colours: &mut Colouring) -> bool {
        let total = 2 * self.n;
        let mut classes = count_classes(colours);
        let mut sigs: Vec<Vec<u32>> = vec![Vec::new(); total];
        let mut idx: Vec<usize> = (0..total).collect();
        loop {
            for (v, sig) in sigs.iter_mut().enumerate() {
                let (out, inn, offset) = self.neighbours(v);
                sig.clear();
                sig.push(colours[v]);
                let start = sig.len();
                sig.extend(out.iter().map(|&w| colours[(w + offset) as usize]));
                sig[start..].sort_unstable();
                sig.push(u32::MAX);
                let start = sig.len();
                sig.extend(inn.iter().map(|&w| colours[(w + offset) as usize]));
                sig[start..].sort_unstable();
            }
            idx.sort_unstable_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut next = 0u32;
            for k in 0..total {
                if k > 0 && sigs[idx[k]] != sigs[idx[k - 1]] {
                    next += 1;
                }
                colours[idx[k]] = next;
            }
            let now = next as usize + 1;
            if !self.sides_match(colours) {
                return false;
            }
            if now == classes {
                return true;
            }
            classes = now;
        }
    }

    fn sides_match(&self, colours: &Colouring) -> bool {
        let mut balance = vec![0i32; 2 * self.n];
        for v in 0..self.n {
            balance[colours[v] as usize] += 1;
            balance[colours[v + self.n] as usize] -= 1;
        }
        balance.iter().all(|&b| b == 0)
    }

    fn individualize(&self, colours: &Colouring, x: u32, y: u32) -> Option<Colouring> {
        let mut c = colours.clone();
        let fresh = 2 * self.n as u32;
        c[x as usize] = fresh;
        c[y as usize + self.n] = fresh;
        self.refine(&mut c).then_some(c)
    }

    /// Left vertices of the first non-singleton cell, or None if discrete.
    fn target_cell(&self, colours: &Colouring) -> Option<Vec<u32>> {
        let mut size = vec![0u32; 2 * self.n + 1];
        for v in 0..self.n {
            size[colours[v] as usize] += 1;
        }
        let c = (0..size.len()).find(|&c| size[c] > 1)? as u32;
        Some(
            (0..self.n as u32)
                .filter(|&v| colours[v as usize] == c)
                .collect(),
        )
    }

    fn pick(&mut self, cell: &[u32]) -> u32 {
        match &mut self.rng {
            None => cell[0],
            Some(rng) => cell[rng.gen_range(0..cell.len())],
        }
    }

    fn candidates(&mut self, colours: &Colouring, x: u32) -> Vec<u32> {
        let c = colours[x as usize];
        let mut ys: Vec<u32> = (0..self.n as u32)
            .filter(|&y| colours[y as usize + self.n] == c)
            .collect();
        if let Some(rng) = &mut self.rng {
            ys.shuffle(rng);
        }
        ys
    }

    fn finish(&self, colours: &Colouring) -> Option<Permutation> {
        let mut by_colour = vec![u32::MAX; 2 * self.n + 1];
        for y in 0..self.n {
            by_colour[colours[y + self.n] as usize] = y as u32;
        }
        let img: Vec<u32> = (0..self.n)
            .map(|x| by_colour[colours[x] as usize])
            .collect();
        let p = Permutation::from_images(img).ok()?;
        let preserves = (0..self.n as u32).all(|u| {
            self.left.out[u as usize]
                .iter()
                .all(|&v| self.right.has_arc(p.apply(u), p.apply(v)))
        });
        (preserves && self.left.arc_count() == self.right.arc_count()).then_some(p)
    }

    /// Depth-first search below a refined, side-matching colouring.
    fn extend(&mut self, colours: &Colouring) -> Option<Permutation> {
        let cell = match self.target_cell(colours) {
            None => return self.finish(colours),
            Some(cell) => cell,
        };
        let x = self.pick(&cell);
        for y in self.candidates(colours, x) {
            if let Some(next) = self.individualize(colours, x, y) {
                if let Some(p) = self.extend(&next) {
                    return Some(p);
                }
            }
        }
        None
    }

    fn root(&self) -> Option<Colouring> {
        let mut c = vec![0; 2 * self.n];
        self.refine(&mut c).then_some(c)
    }
}

fn count_classes(colours: &Colouring) -> usize {
    let mut seen: Vec<u32> = colours.clone();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// An isomorphism `left → right`, if one exists.
pub fn find_isomorphism(left: &Digraph, right: &Digraph) -> Option<Permutation> {
    if left.n != right.n || left.arc_count() != right.arc_count() {
        return None;
    }
    let mut s = Search::new(left, right, SearchOrder::Ascending);
    let root = s.root()?;
    s.extend(&root)
}

/// Full automorphism group of `g`, with `known` automorphisms used to prune
/// the search. Every entry of `known` must be an automorphism.
pub fn automorphism_group(g: &Digraph, known: &[Permutation], order: SearchOrder) -> GroupHandle {
    let n = g.n;
    let mut s = Search::new(g, g, order);
    let root = s.root().expect("a digraph matches itself");

    // First path: individualize until discrete. The individualized vertices
    // form the base.
    let mut nodes = vec![root];
    let mut base = Vec::new();
    while let Some(cell) = s.target_cell(nodes.last().unwrap()) {
        let b = s.pick(&cell);
        let next = s
            .individualize(nodes.last().unwrap(), b, b)
            .expect("identity branch always matches");
        base.push(b);
        nodes.push(next);
    }

    let mut strong: Vec<Vec<Permutation>> = vec![Vec::new(); base.len()];
    for h in known {
        assert!(g.is_automorphism(h), "seed {h:?} is not an automorphism");
        if let Some(level) = base.iter().position(|&b| h.apply(b) != b) {
            strong[level].push(h.clone());
        }
    }

    for i in (0..base.len()).rev() {
        let b = base[i];
        let mut gens: Vec<Permutation> = strong[i..].iter().flatten().cloned().collect();
        let mut reached = orbit(b, &gens);
        let mut refuted = vec![false; n];
        for y in s.candidates(&nodes[i], b) {
            if reached.contains(&y) || refuted[y as usize] {
                continue;
            }
            let found = s.individualize(&nodes[i], b, y).and_then(|c| s.extend(&c));
            match found {
                Some(p) => {
                    debug_assert!(g.is_automorphism(&p));
                    strong[i].push(p.clone());
                    gens.push(p);
                    reached = orbit(b, &gens);
                }
                None => {
                    // nothing maps b to y, hence nothing maps b into the
                    // orbit of y under the stabilizer found so far
                    for z in orbit(y, &gens) {
                        refuted[z as usize] = true;
                    }
                }
            }
        }
    }
    GroupHandle::from_strong_generators(n, &base, &strong)
}
