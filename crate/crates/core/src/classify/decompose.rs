use serde::{Deserialize, Serialize};

use crate::circulant::{CirculantGraph, ConnectionSet};
use crate::cyclic::{self, CrtFrame};
use crate::error::{Error, Result};
use crate::perm_group;

/// Smallest complete factor that is split off; K₂ and K₃ stay inside Γ₀.
pub const MIN_COMPLETE_FACTOR: u32 = 4;

/// Γ ≅ (Γ₀ × K_{n₁} × … × K_{n_r})[K̄_b].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub b: u32,
    pub complete_factor_orders: Vec<u32>,
    pub gamma0: CirculantGraph,
}

impl Decomposition {
    /// Γ₀ × K_{n₁} × … × K_{n_r}, the quotient by the translation kernel.
    pub fn quotient(&self) -> Result<CirculantGraph> {
        let complete: Vec<CirculantGraph> = self
            .complete_factor_orders
            .iter()
            .map(|&d| CirculantGraph::complete(d))
            .collect();
        CirculantGraph::tensor_all(std::iter::once(&self.gamma0).chain(&complete))
    }

    pub fn reconstruct(&self) -> Result<CirculantGraph> {
        Ok(self.quotient()?.lex_blowup(self.b))
    }

    pub fn order(&self) -> u64 {
        self.gamma0.order() as u64
            * self
                .complete_factor_orders
                .iter()
                .map(|&d| d as u64)
                .product::<u64>()
            * self.b as u64
    }
}

/// Splits `g` as K_d × Circ(m/d, S′) under the CRT frame (d, m/d), if S is
/// exactly (Z_d ∖ {0}) × S′.
fn split_complete_factor(g: &CirculantGraph, d: u32) -> Option<CirculantGraph> {
    let m = g.order();
    let rest = m / d;
    if rest == 1 {
        return (*g == CirculantGraph::complete(d)).then(|| CirculantGraph::complete(1));
    }
    let frame = CrtFrame::new(&[d, rest]).ok()?;
    let mut projected = Vec::with_capacity(g.valency());
    for s in g.connection_set().iter() {
        let parts = frame.split(s);
        if parts[0] == 0 || parts[1] == 0 {
            return None;
        }
        projected.push(parts[1]);
    }
    let rest_set = ConnectionSet::new(rest, projected).ok()?;
    (g.valency() == (d as usize - 1) * rest_set.len()).then(|| CirculantGraph::from_set(rest_set))
}

/// The canonical decomposition of any connected circulant. Arc-transitivity
/// is not required and not checked.
pub fn structural_decomposition(g: &CirculantGraph) -> Decomposition {
    let kernel = g.translation_kernel();
    let mut current = g
        .quotient_by(&kernel)
        .expect("kernel is translation-invariant");
    let mut factors = Vec::new();
    'peel: loop {
        for d in cyclic::unitary_divisors(current.order()).into_iter().rev() {
            if d < MIN_COMPLETE_FACTOR {
                break;
            }
            if let Some(rest) = split_complete_factor(&current, d) {
                factors.push(d);
                current = rest;
                continue 'peel;
            }
        }
        break;
    }
    Decomposition {
        b: kernel.order(),
        complete_factor_orders: factors,
        gamma0: current,
    }
}

/// Decomposes a connected arc-transitive circulant and checks that the
/// decomposition reconstructs it.
pub fn decompose(g: &CirculantGraph) -> Result<Decomposition> {
    if !g.is_connected() {
        return Err(Error::Disconnected(g.to_string()));
    }
    if !perm_group::is_arc_transitive(g)? {
        return Err(Error::NotArcTransitive(g.to_string()));
    }
    let dec = structural_decomposition(g);
    if dec.reconstruct()? != *g {
        return Err(Error::ReconstructionMismatch(g.to_string()));
    }
    Ok(dec)
}
