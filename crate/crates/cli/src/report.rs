//! Structural summary of a group, serialized as JSON by `analyze`.

use std::collections::BTreeMap;

use grouplab_core::lattice::{hasse, reduced_lattice, unicorns};
use grouplab_core::structure::{
    central_product_decompositions, iso_label, semidirect_decompositions, Decomposition, DecompositionKind,
};
use grouplab_core::FiniteGroup;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionEntry {
    pub kind: String,
    /// Iso labels of `[N, H]`.
    pub parts: [String; 2],
    pub orders: [usize; 2],
    /// Member indices of `N` and `H`.
    pub members: [Vec<usize>; 2],
}

impl From<&Decomposition> for DecompositionEntry {
    fn from(d: &Decomposition) -> Self {
        DecompositionEntry {
            kind: d.kind.to_string(),
            parts: d.labels.clone(),
            orders: [d.parts[0].size(), d.parts[1].size()],
            members: [d.parts[0].members().to_vec(), d.parts[1].members().to_vec()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decompositions {
    pub semidirect: Vec<DecompositionEntry>,
    pub direct: Vec<DecompositionEntry>,
    pub central: Vec<DecompositionEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupClassEntry {
    pub label: String,
    pub order: usize,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub iso_label: String,
    pub order: usize,
    pub abelian: bool,
    pub center_order: usize,
    /// Element order -> number of elements of that order.
    pub element_orders: BTreeMap<usize, usize>,
    pub subgroup_count: usize,
    pub normal_count: usize,
    pub unicorn_count: usize,
    pub subgroup_classes: Vec<SubgroupClassEntry>,
    pub decompositions: Decompositions,
}

pub fn analyze(g: &FiniteGroup, name: &str) -> Result<AnalysisReport, CliError> {
    let l = hasse(g)?;
    let reduced = reduced_lattice(g)?;
    let split = semidirect_decompositions(g)?;
    let of_kind = |kind| split.iter().filter(|d| d.kind == kind).map(DecompositionEntry::from).collect();
    Ok(AnalysisReport {
        name: name.to_string(),
        iso_label: iso_label(g),
        order: g.order(),
        abelian: g.is_abelian(),
        center_order: g.center().size(),
        element_orders: g.order_histogram(),
        subgroup_count: l.nodes.len(),
        normal_count: l.nodes.iter().filter(|h| g.is_normal(h)).count(),
        unicorn_count: unicorns(&l).len(),
        subgroup_classes: reduced
            .classes
            .iter()
            .map(|c| SubgroupClassEntry {
                label: c.label.clone(),
                order: c.order(),
                size: c.size(),
            })
            .collect(),
        decompositions: Decompositions {
            semidirect: of_kind(DecompositionKind::Semidirect),
            direct: of_kind(DecompositionKind::Direct),
            central: central_product_decompositions(g)?
                .iter()
                .map(DecompositionEntry::from)
                .collect(),
        },
    })
}
