//! The elementary-move calculus: edge splits and merges, triangle slides,
//! disk-boundary contraction, the meridian/longitude constructions on a
//! regular neighborhood, the exact twist-count solve, and basic-curve
//! isotopies on triangulated surfaces.

mod disk;
pub mod basic;
mod torus;
mod twist;

pub use disk::{contract_disk, random_disk, ContractionScript, StepPattern};
pub use torus::{build_longitude, meridians, parallel_curve, pull_across_annulus, Annulus, LongitudeData};
pub use twist::{twist_count, TwistReport};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsotopyError {
    #[error("{0}")]
    Invalid(String),
    #[error("move violates its disjointness precondition: {0}")]
    Disjointness(String),
    #[error("input is not a disk: chi = {0}")]
    NotADisk(i64),
    #[error("meridian class bounds in the complement")]
    MeridianBounds,
    #[error("no integer twist solution: {0}")]
    NoIntegerSolution(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("isotopy search exhausted: {0}")]
    Exhausted(String),
}

/// Elementary move kinds: split an edge (1), merge two edges (1'), slide
/// across a triangle adding a vertex (2), slide back erasing one (2').
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EKind {
    Split,
    Merge,
    Slide,
    SlideBack,
}

impl std::fmt::Display for EKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EKind::Split => "E1",
            EKind::Merge => "E1'",
            EKind::Slide => "E2",
            EKind::SlideBack => "E2'",
        })
    }
}

/// One elementary move with its host tetrahedron (when the surface carrying
/// the move is embedded in a triangulation) and location ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryMove {
    pub kind: EKind,
    pub host: Option<usize>,
    /// location ids; meaning depends on the calculus emitting the move
    pub data: Vec<usize>,
}

impl ElementaryMove {
    pub fn line(&self) -> String {
        let host = match self.host {
            Some(h) => format!(" host:{h}"),
            None => String::new(),
        };
        let data: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        format!("{}{} data:{}", self.kind, host, data.join(","))
    }
}

/// Ordered, replayable list of elementary moves with per-kind tallies.
#[derive(Clone, Debug, Default)]
pub struct ElementaryScript {
    pub moves: Vec<ElementaryMove>,
}

impl ElementaryScript {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Tallies in the order (E1, E1', E2, E2').
    pub fn counts(&self) -> [usize; 4] {
        let mut c = [0usize; 4];
        for m in &self.moves {
            match m.kind {
                EKind::Split => c[0] += 1,
                EKind::Merge => c[1] += 1,
                EKind::Slide => c[2] += 1,
                EKind::SlideBack => c[3] += 1,
            }
        }
        c
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for m in &self.moves {
            out.push_str(&m.line());
            out.push('\n');
        }
        out
    }

    pub fn counts_json(&self) -> serde_json::Value {
        let c = self.counts();
        serde_json::json!({
            "E1": c[0], "E1'": c[1], "E2": c[2], "E2'": c[3], "total": self.len(),
        })
    }
}
