//! Breadth-first search over Reidemeister moves.
//!
//! The frontier is expanded in canonical-form order and children are merged
//! deterministically, so the returned script does not depend on whether the
//! expansion ran sequentially or in parallel.

use super::canon::CanonicalForm;
use super::moves::{apply_move, enumerate_moves, MoveScript, RMove};
use super::{DiagramError, LinkDiagram};
use crate::par::{self, ExecMode};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug)]
pub struct BfsLimits {
    pub max_crossings: usize,
    pub max_depth: usize,
    /// distinct diagrams visited before reporting a resource-limit error
    pub max_states: usize,
    pub mode: ExecMode,
}

impl Default for BfsLimits {
    fn default() -> Self {
        BfsLimits { max_crossings: 6, max_depth: 8, max_states: 200_000, mode: ExecMode::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UntangleOutcome {
    /// script reaching the trivial diagram
    Found(MoveScript),
    /// the entire bounded search space was explored without success
    Exhausted { states: usize },
}

/// Search for a Reidemeister sequence from `d` to the trivial knot diagram,
/// pruning diagrams that exceed `max_crossings`.
pub fn bfs_untangle(d: &LinkDiagram, limits: &BfsLimits) -> Result<UntangleOutcome, DiagramError> {
    let order = d.order();
    if order != 1 {
        return Err(DiagramError::NotAKnot(order));
    }
    if d.is_trivial() {
        return Ok(UntangleOutcome::Found(MoveScript::default()));
    }
    let mut visited: HashMap<CanonicalForm, usize> = HashMap::new();
    // frontier entries: (canonical form, diagram, script so far)
    let mut frontier: Vec<(CanonicalForm, LinkDiagram, Vec<RMove>)> =
        vec![(d.canonical_form(), d.clone(), Vec::new())];
    visited.insert(frontier[0].0.clone(), 0);
    for _depth in 0..limits.max_depth {
        if frontier.is_empty() {
            break;
        }
        // expand every frontier node
        let max_crossings = limits.max_crossings;
        let expanded: Vec<Vec<(CanonicalForm, LinkDiagram, Vec<RMove>)>> =
            par::map_collect(limits.mode, std::mem::take(&mut frontier), |(_, diag, script)| {
                let mut kids = Vec::new();
                for m in enumerate_moves(&diag, max_crossings) {
                    if let Ok(child) = apply_move(&diag, &m) {
                        let mut s = script.clone();
                        s.push(m);
                        kids.push((child.canonical_form(), child, s));
                    }
                }
                kids
            });
        let mut next: Vec<(CanonicalForm, LinkDiagram, Vec<RMove>)> = Vec::new();
        for kids in expanded {
            for (canon, child, script) in kids {
                if visited.contains_key(&canon) {
                    continue;
                }
                visited.insert(canon.clone(), visited.len());
                if visited.len() > limits.max_states {
                    return Err(DiagramError::ResourceLimit(limits.max_states));
                }
                if child.is_trivial() {
                    return Ok(UntangleOutcome::Found(MoveScript::from_moves(script)));
                }
                next.push((canon, child, script));
            }
        }
        // canonical-form order keeps expansion deterministic
        next.sort_by(|a, b| a.0.cmp(&b.0));
        frontier = next;
    }
    Ok(UntangleOutcome::Exhausted { states: visited.len() })
}
