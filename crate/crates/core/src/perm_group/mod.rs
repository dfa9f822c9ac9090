//! Brute-force ground truth: explicit permutation groups, the full
//! automorphism group of a circulant digraph, and arc-transitivity and
//! normality tests computed from it.

mod chain;
mod perm;
mod search;

pub use chain::GroupHandle;
pub use perm::{orbit, Permutation};
pub use search::{automorphism_group, find_isomorphism, Digraph, SearchOrder};

use crate::circulant::CirculantGraph;
use crate::error::{Error, Result};
use crate::multiplier::aut_c_s;

/// Largest group the element-enumerating oracle will walk.
pub const ENUMERATION_GUARD: u128 = 1_000_000;

/// Schreier–Sims on an explicit generating set.
pub fn stabilizer_chain(degree: usize, gens: &[Permutation]) -> GroupHandle {
    GroupHandle::from_generators(degree, gens)
}

/// Aut Γ, computed by search. The translation and the multipliers in
/// Aut(C, S) are supplied as known automorphisms; the search completes them
/// to the full group.
pub fn automorphisms(g: &CirculantGraph) -> GroupHandle {
    let n = g.order() as usize;
    let mut known = vec![Permutation::translation(n, 1 % n.max(1))];
    known.extend(aut_c_s(g).multipliers().map(|m| m.to_permutation()));
    automorphism_group(&Digraph::from(g), &known, SearchOrder::Ascending)
}

/// Aut Γ from a search that knows nothing about the circulant structure and
/// explores vertices in a seeded random order.
pub fn automorphisms_randomized(g: &CirculantGraph, seed: u64) -> GroupHandle {
    automorphism_group(&Digraph::from(g), &[], SearchOrder::Randomized(seed))
}

/// Generators of Aut Γ; the first one is always the translation x ↦ x + 1.
pub fn automorphism_generators(g: &CirculantGraph) -> Vec<Permutation> {
    let n = g.order() as usize;
    let rho = Permutation::translation(n, 1 % n.max(1));
    let group = automorphisms(g);
    let mut gens = vec![rho.clone()];
    gens.extend(group.generators().iter().filter(|p| **p != rho).cloned());
    gens
}

/// Whether Aut Γ is transitive on arcs: the orbit of the arc (0, min S)
/// must contain all n·|S| arcs.
pub fn is_arc_transitive(g: &CirculantGraph) -> Result<bool> {
    is_arc_transitive_in(g, &automorphisms(g))
}

pub fn is_arc_transitive_in(g: &CirculantGraph, group: &GroupHandle) -> Result<bool> {
    let s0 = *g
        .connection_set()
        .as_slice()
        .first()
        .ok_or(Error::EmptyArcSet)?;
    let n = g.order() as usize;
    let mut seen = vec![false; n * n];
    let mut stack = vec![(0u32, s0)];
    seen[s0 as usize] = true;
    let mut size = 1usize;
    while let Some((u, v)) = stack.pop() {
        for a in group.generators() {
            let (x, y) = (a.apply(u), a.apply(v));
            let slot = &mut seen[x as usize * n + y as usize];
            if !*slot {
                *slot = true;
                size += 1;
                stack.push((x, y));
            }
        }
    }
    Ok(size == n * g.valency())
}

/// Whether the standard translation subgroup ⟨ρ⟩ is normal in Aut Γ.
pub fn is_translation_subgroup_normal(g: &CirculantGraph) -> bool {
    translation_normal_in(&automorphisms(g))
}

/// a ρ a⁻¹ must be a translation for every generator a.
pub fn translation_normal_in(group: &GroupHandle) -> bool {
    let n = group.degree();
    let rho = Permutation::translation(n, 1 % n.max(1));
    group.generators().iter().all(|a| {
        let c = rho.conjugate_by(a);
        let k = c.apply(0) as usize;
        (0..n).all(|x| c.apply(x as u32) as usize == (x + k) % n)
    })
}

/// Whether Aut Γ has some normal regular cyclic subgroup, by walking every
/// element. Fails with [`Error::OracleTooLarge`] above [`ENUMERATION_GUARD`].
pub fn exists_normal_regular_cyclic(g: &CirculantGraph) -> Result<bool> {
    normal_regular_cyclic_in(&automorphisms(g))
}

pub fn normal_regular_cyclic_in(group: &GroupHandle) -> Result<bool> {
    if translation_normal_in(group) {
        return Ok(true);
    }
    if group.order() > ENUMERATION_GUARD {
        return Err(Error::OracleTooLarge {
            order: group.order(),
            guard: ENUMERATION_GUARD,
        });
    }
    let n = group.degree();
    let mut found = false;
    let mut pos = vec![0usize; n];
    group.for_each_element(|x| {
        if found || !is_full_cycle(x, &mut pos) {
            return;
        }
        // pos[x^k(0)] = k; ⟨x⟩ is normal iff every conjugate a x a⁻¹ is some x^k
        found = group.generators().iter().all(|a| {
            let c = x.conjugate_by(a);
            let k = pos[c.apply(0) as usize];
            (0..n).all(|y| pos[c.apply(y as u32) as usize] == (pos[y] + k) % n)
        });
    });
    Ok(found)
}

/// True iff `x` is a single n-cycle; fills `pos` with the cycle positions
/// measured from 0.
fn is_full_cycle(x: &Permutation, pos: &mut [usize]) -> bool {
    let n = x.degree();
    let mut v = 0u32;
    for k in 0..n {
        if k > 0 && v == 0 {
            return false;
        }
        pos[v as usize] = k;
        v = x.apply(v);
    }
    v == 0
}

pub fn are_isomorphic(g1: &CirculantGraph, g2: &CirculantGraph) -> bool {
    find_isomorphism(&Digraph::from(g1), &Digraph::from(g2)).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(n: u32, s: &[u32]) -> CirculantGraph {
        CirculantGraph::new(n, s.iter().copied()).unwrap()
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(automorphisms(&CirculantGraph::cycle(6)).order(), 12);
        assert_eq!(automorphisms(&CirculantGraph::complete(5)).order(), 120);
        let u15 = CirculantGraph::unit_circulant(15);
        assert_eq!(automorphisms(&u15).order(), 720);
        assert_eq!(automorphisms_randomized(&u15, 7).order(), 720);
        assert_eq!(automorphisms(&CirculantGraph::complete(1)).order(), 1);
    }

    #[test]
    fn generators_start_with_translation() {
        for g in [
            CirculantGraph::cycle(8),
            circ(7, &[1, 2, 4]),
            CirculantGraph::complete(6),
        ] {
            let gens = automorphism_generators(&g);
            assert_eq!(gens[0], Permutation::translation(g.order() as usize, 1));
            let d = Digraph::from(&g);
            assert!(gens.iter().all(|p| d.is_automorphism(p)));
            // Schreier–Sims on the bare generators recovers the same group
            let chain = stabilizer_chain(g.order() as usize, &gens);
            assert_eq!(chain.order(), automorphisms(&g).order());
        }
    }

    #[test]
    fn arc_transitivity() {
        assert!(is_arc_transitive(&CirculantGraph::cycle(8)).unwrap());
        assert!(is_arc_transitive(&circ(7, &[1, 2, 4])).unwrap());
        assert!(!is_arc_transitive(&circ(6, &[1, 2])).unwrap());
        assert_eq!(
            is_arc_transitive(&CirculantGraph::complete(1)),
            Err(Error::EmptyArcSet)
        );
    }

    #[test]
    fn translation_normality() {
        assert!(is_translation_subgroup_normal(&CirculantGraph::cycle(8)));
        assert!(!is_translation_subgroup_normal(&CirculantGraph::complete(
            5
        )));
        // C4: Aut is dihedral of order 8 and the rotations form a normal Z4
        let c4 = circ(4, &[1, 3]);
        assert_eq!(automorphisms(&c4).order(), 8);
        assert!(is_translation_subgroup_normal(&c4));
    }

    #[test]
    fn some_normal_regular_cyclic() {
        assert!(exists_normal_regular_cyclic(&CirculantGraph::cycle(9)).unwrap());
        assert!(!exists_normal_regular_cyclic(&CirculantGraph::complete(4)).unwrap());
        assert!(matches!(
            exists_normal_regular_cyclic(&CirculantGraph::complete(10)),
            Err(Error::OracleTooLarge { .. })
        ));
    }

    #[test]
    fn isomorphism_examples() {
        let k = CirculantGraph::complete;
        assert!(are_isomorphic(
            &circ(6, &[1, 5]),
            &k(3).tensor_product(&k(2)).unwrap()
        ));
        assert!(!are_isomorphic(&k(4), &CirculantGraph::cycle(4)));
        let g = circ(11, &[1, 3, 4, 5, 9]);
        assert!(are_isomorphic(&g, &g));
    }
}
