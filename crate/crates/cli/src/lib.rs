//! Library side of the `grouplab` command: group documents, DOT emitters,
//! analysis reports, comparisons and the claim suite.

pub mod document;
pub mod dot;
pub mod report;
pub mod verify;

use std::path::Path;

use grouplab_core::lattice::{hasse, lattices_equal};
use grouplab_core::structure::{cycle_graph, cycle_graphs_isomorphic, isomorphic};
use grouplab_core::{FamilySpec, FiniteGroup};
use serde::Serialize;

use document::GroupDocument;

/// Failures with a fixed process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Parameter(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Parameter(_) => 3,
        }
    }
}

impl From<grouplab_core::Error> for CliError {
    fn from(e: grouplab_core::Error) -> Self {
        CliError::Parameter(e.to_string())
    }
}

/// A group named on the command line: a family spec such as `SD8` or
/// `C4xC2xC2`, or the path of a group document.
pub fn resolve(arg: &str) -> Result<(String, FiniteGroup), CliError> {
    let path = Path::new(arg);
    if arg.ends_with(".json") || path.is_file() {
        let doc = GroupDocument::load(path)?;
        let g = doc.to_group()?;
        return Ok((doc.name, g));
    }
    let spec: FamilySpec = arg.parse().map_err(|e: grouplab_core::families::ParseSpecError| CliError::Parse(e.to_string()))?;
    let g = spec.build()?;
    Ok((spec.to_string(), g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    DotCayley,
    DotCycle,
    DotLattice,
}

pub fn construct(arg: &str, format: Format) -> Result<String, CliError> {
    let (name, g) = resolve(arg)?;
    Ok(match format {
        Format::Json => {
            let provenance = if g.source() == name { name.clone() } else { g.source().to_string() };
            GroupDocument::from_group(&g, &name, &provenance).to_json()
        }
        Format::DotCayley => dot::cayley(&g, &name),
        Format::DotCycle => dot::cycle(&g, &name),
        Format::DotLattice => dot::lattice(&g, &name)?,
    })
}

pub fn analyze(arg: &str) -> Result<String, CliError> {
    let (name, g) = resolve(arg)?;
    let report = report::analyze(&g, &name)?;
    let mut out = serde_json::to_string_pretty(&report).expect("reports serialize");
    out.push('\n');
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Iso,
    Lattice,
    Cyclegraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub mode: Mode,
    pub left: String,
    pub right: String,
    pub equivalent: bool,
    /// Element map (iso), subgroup map (lattice) or vertex map (cyclegraph),
    /// indexed by the left-hand side.
    pub witness: Option<Vec<usize>>,
}

impl Comparison {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("comparisons serialize");
        out.push('\n');
        out
    }
}

pub fn compare(left: &str, right: &str, mode: Mode) -> Result<Comparison, CliError> {
    let (ln, lg) = resolve(left)?;
    let (rn, rg) = resolve(right)?;
    let witness = match mode {
        Mode::Iso => isomorphic(&lg, &rg)?.map(|w| w.map),
        Mode::Lattice => lattices_equal(&hasse(&lg)?, &hasse(&rg)?),
        Mode::Cyclegraph => cycle_graphs_isomorphic(&cycle_graph(&lg), &cycle_graph(&rg)),
    };
    Ok(Comparison {
        mode,
        left: ln,
        right: rn,
        equivalent: witness.is_some(),
        witness,
    })
}
