use serde::{Deserialize, Serialize};

use super::decompose::{structural_decomposition, Decomposition};
use super::{all_full_order, contains_full_coset, contains_punctured_coset, PUNCTURED_THRESHOLD};
use crate::circulant::CirculantGraph;
use crate::multiplier::{aut_c_s, MultiplierSet};
use crate::perm_group;

/// An oracle answer that may be unavailable because the group was too large
/// to enumerate. Serializes as `true`, `false` or `"partial"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OracleVerdict {
    Decided(bool),
    Partial(PartialMarker),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartialMarker {
    Partial,
}

impl OracleVerdict {
    pub const PARTIAL: OracleVerdict = OracleVerdict::Partial(PartialMarker::Partial);

    pub fn decided(self) -> Option<bool> {
        match self {
            OracleVerdict::Decided(b) => Some(b),
            OracleVerdict::Partial(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: u32,
    pub s: Vec<u32>,
    pub connected: bool,
    pub undirected: bool,
    /// From the automorphism-group oracle; false when there are no arcs.
    pub arc_transitive: bool,
    pub all_full_order: bool,
    pub multiplier_transitive: bool,
    pub normal_arc_transitive: bool,
    pub contains_full_coset: bool,
    pub contains_punctured_coset_ge4: bool,
    /// The translation subgroup is normal in Aut Γ.
    pub c_normal_oracle: bool,
    /// Some regular cyclic subgroup is normal in Aut Γ.
    pub normal_circulant_oracle: OracleVerdict,
    /// Present for connected arc-transitive inputs.
    pub decomposition: Option<Decomposition>,
    pub aut_order: u128,
    pub normalizer_order: u128,
}

/// Everything the harness needs about one instance, computed once.
pub(crate) struct Analysis {
    pub graph: CirculantGraph,
    pub multipliers: MultiplierSet,
    pub report: ClassificationReport,
}

impl Analysis {
    pub fn new(g: &CirculantGraph) -> Self {
        let group = perm_group::automorphisms(g);
        let multipliers = aut_c_s(g);
        let connected = g.is_connected();
        let arc_transitive = perm_group::is_arc_transitive_in(g, &group).unwrap_or(false);
        let multiplier_transitive = multipliers.is_transitive_on(g.connection_set());
        let c_normal = perm_group::translation_normal_in(&group);
        let normal_circulant_oracle = match perm_group::normal_regular_cyclic_in(&group) {
            Ok(b) => OracleVerdict::Decided(b),
            Err(_) => OracleVerdict::PARTIAL,
        };
        let decomposition = (connected && arc_transitive).then(|| structural_decomposition(g));
        let report = ClassificationReport {
            n: g.order(),
            s: g.connection_set().as_slice().to_vec(),
            connected,
            undirected: g.is_undirected(),
            arc_transitive,
            all_full_order: all_full_order(g),
            multiplier_transitive,
            normal_arc_transitive: arc_transitive && multiplier_transitive,
            contains_full_coset: contains_full_coset(g),
            contains_punctured_coset_ge4: g.order() >= 2
                && contains_punctured_coset(g, PUNCTURED_THRESHOLD),
            c_normal_oracle: c_normal,
            normal_circulant_oracle,
            decomposition,
            aut_order: group.order(),
            normalizer_order: g.order() as u128 * multipliers.len() as u128,
        };
        Analysis {
            graph: g.clone(),
            multipliers,
            report,
        }
    }
}

pub fn classify(g: &CirculantGraph) -> ClassificationReport {
    Analysis::new(g).report
}
