//! Search budgets and three-valued verdicts.

use std::time::Duration;

use super::witness::SubeqWitness;
use crate::error::{Error, Result};

/// Resource bounds for one relation query. The search explores refinement
/// depths up to `depth` and word radii up to `radius` in a fixed dovetailing
/// schedule, spending at most `node_cap` assignment attempts and `timeout`
/// wall time overall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    pub depth: u32,
    pub radius: u32,
    pub node_cap: u64,
    pub timeout: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            depth: 3,
            radius: 4,
            node_cap: 1_000_000,
            timeout: Duration::from_secs(30),
        }
    }
}

impl Budget {
    pub fn new(depth: u32, radius: u32) -> Self {
        Budget {
            depth,
            radius,
            ..Budget::default()
        }
    }

    pub fn with_nodes(mut self, node_cap: u64) -> Self {
        self.node_cap = node_cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_cap == 0 {
            return Err(Error::schema("node cap must be positive"));
        }
        Ok(())
    }
}

/// Why a negative verdict is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoReason {
    /// Some source entry is nonempty while every target entry is empty.
    EmptyTargets,
    /// Finite system: the word ball saturated at `radius` and the complete
    /// search over the whole group found no witness.
    FiniteExhaustion { radius: u32 },
    /// Odometer: translations preserve atom counts per depth, so more source
    /// atoms than target atoms at a common depth is an exact obstruction.
    OdometerCount {
        source_atoms: u64,
        target_atoms: u64,
        depth: u32,
    },
}

impl std::fmt::Display for NoReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NoReason::EmptyTargets => write!(f, "nonempty source, all targets empty"),
            NoReason::FiniteExhaustion { radius } => {
                write!(f, "exhaustive search over the full group (ball radius {radius})")
            }
            NoReason::OdometerCount {
                source_atoms,
                target_atoms,
                depth,
            } => write!(
                f,
                "counting obstruction at depth {depth}: {source_atoms} source atoms > {target_atoms} target atoms"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    NodeCap,
    Timeout,
    ScheduleExhausted,
}

/// What a budget-exhausted search managed to cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frontier {
    pub deepest_depth: Option<u32>,
    pub largest_radius: Option<u32>,
    pub nodes_used: u64,
    pub reason: StopReason,
}

/// Outcome of a bounded relation query.
#[derive(Debug, Clone)]
pub enum Verdict {
    Yes(SubeqWitness),
    CertifiedNo(NoReason),
    Inconclusive(Frontier),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::CertifiedNo(_))
    }

    pub fn is_conclusive(&self) -> bool {
        !matches!(self, Verdict::Inconclusive(_))
    }

    pub fn witness(&self) -> Option<&SubeqWitness> {
        match self {
            Verdict::Yes(w) => Some(w),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Verdict::Yes(w) => format!("Yes ({} assignments)", w.assignments().len()),
            Verdict::CertifiedNo(r) => format!("CertifiedNo ({r})"),
            Verdict::Inconclusive(fr) => format!(
                "Inconclusive (depth {:?}, radius {:?}, {} nodes, {:?})",
                fr.deepest_depth, fr.largest_radius, fr.nodes_used, fr.reason
            ),
        }
    }
}
