//! Stabilizer chains.
//!
//! A [`GroupHandle`] stores a base (β₁, …, β_k) and, for each level i, the
//! orbit of βᵢ under the pointwise stabilizer G⁽ⁱ⁾ of β₁, …, βᵢ₋₁ together
//! with a transversal element for every orbit point. The group order is the
//! product of the orbit lengths.

use super::perm::Permutation;

#[derive(Debug, Clone)]
struct Level {
    base: u32,
    /// Strong generators that fix every earlier base point.
    gens: Vec<Permutation>,
    /// `transversal[x]` maps `base` to `x` when x is in the orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<u32>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base as usize] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }

    /// Recomputes the orbit and transversal from `gens`.
    fn rebuild(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base as usize] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y as usize].is_none() {
                    let t = g.compose(self.transversal[x as usize].as_ref().unwrap());
                    self.transversal[y as usize] = Some(t);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

/// An immutable permutation group with exact order and membership testing.
#[derive(Debug, Clone)]
pub struct GroupHandle {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: u128,
}

impl GroupHandle {
    /// Deterministic Schreier–Sims. New base points are the smallest point
    /// moved by the element that forced the extension.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Self {
        let mut levels: Vec<Level> = Vec::new();
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
        }

        for g in &gens {
            let (h, depth) = sift(&levels, g);
            if !h.is_identity() {
                insert(&mut levels, h, depth, degree);
            }
        }

        // Close the chain: every Schreier generator must sift to the identity.
        'outer: loop {
            for i in (0..levels.len()).rev() {
                for &x in &levels[i].orbit.clone() {
                    for s in levels[i].gens.clone() {
                        let ux = levels[i].transversal[x as usize].clone().unwrap();
                        let y = s.apply(x);
                        let uy = levels[i].transversal[y as usize].as_ref().unwrap();
                        let schreier = uy.inverse().compose(&s.compose(&ux));
                        let (h, depth) = sift_from(&levels, &schreier, i + 1);
                        if !h.is_identity() {
                            insert(&mut levels, h, depth, degree);
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }

        let order = levels.iter().map(|l| l.orbit.len() as u128).product();
        GroupHandle {
            degree,
            generators: gens,
            levels,
            order,
        }
    }

    /// Builds the chain from a base and a strong generating set that is
    /// already known to be one, e.g. the output of the automorphism search.
    /// `strong[i]` holds the generators first introduced at level i; they fix
    /// all earlier base points.
    pub(crate) fn from_strong_generators(
        degree: usize,
        base: &[u32],
        strong: &[Vec<Permutation>],
    ) -> Self {
        let mut levels = Vec::new();
        for (i, &b) in base.iter().enumerate() {
            let mut level = Level::new(b, degree);
            level.gens = strong[i..].iter().flatten().cloned().collect();
            level.rebuild();
            levels.push(level);
        }
        // Trailing levels with trivial orbits add nothing.
        while levels.last().is_some_and(|l| l.orbit.len() == 1) {
            levels.pop();
        }
        let order = levels.iter().map(|l| l.orbit.len() as u128).product();
        GroupHandle {
            degree,
            generators: strong.iter().flatten().cloned().collect(),
            levels,
            order,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && sift(&self.levels, p).0.is_identity()
    }

    /// Calls `f` on every element. The caller is responsible for keeping the
    /// group small enough.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        fn walk(levels: &[Level], prefix: &Permutation, f: &mut dyn FnMut(&Permutation)) {
            match levels.split_first() {
                None => f(prefix),
                Some((level, rest)) => {
                    for &x in &level.orbit {
                        let t = level.transversal[x as usize].as_ref().unwrap();
                        walk(rest, &prefix.compose(t), f);
                    }
                }
            }
        }
        walk(&self.levels, &Permutation::identity(self.degree), &mut f);
    }
}

fn sift(levels: &[Level], g: &Permutation) -> (Permutation, usize) {
    sift_from(levels, g, 0)
}

/// Strips `g` through the levels starting at `start`. Returns the residue and
/// the level at which stripping stopped (`levels.len()` if it went through).
fn sift_from(levels: &[Level], g: &Permutation, start: usize) -> (Permutation, usize) {
    let mut h = g.clone();
    for (i, level) in levels.iter().enumerate().skip(start) {
        let y = h.apply(level.base);
        match &level.transversal[y as usize] {
            Some(u) => h = u.inverse().compose(&h),
            None => return (h, i),
        }
    }
    (h, levels.len())
}

/// Adds the non-identity residue `h` as a strong generator at every level in
/// `1..=depth` below the one it was produced for, creating a new base point
/// when it sifted through the whole chain.
fn insert(levels: &mut Vec<Level>, h: Permutation, depth: usize, degree: usize) {
    if depth == levels.len() {
        let b = h.first_moved().expect("non-identity residue");
        levels.push(Level::new(b, degree));
    }
    // h fixes the base points of levels 0..depth, so it belongs to the
    // stabilizers G^(0) ⊇ … ⊇ G^(depth).
    for level in levels.iter_mut().take(depth + 1) {
        level.gens.push(h.clone());
        level.rebuild();
    }
}
