//! Repairing property violations by contractions and edge additions while
//! keeping the diameter as large as possible.
//!
//! Only the repair moves are ever applied: neither changes the family of
//! d-sets, so a violated endpoint count can never be repaired and is only
//! reported.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::SpgError;
use crate::io::{IoError, SpgDocument};
use crate::ops::{contraction, diameter, edge_addition, restriction};
use crate::properties::{Property, PropertyReport, Verdict, Witness};
use crate::spg::Spg;

/// Width of the beam in [`SearchMode::Beam`].
pub const BEAM_WIDTH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    AddEdge,
    Contract,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    /// Vertex indices, smaller first.
    pub endpoints: [usize; 2],
}

impl Move {
    pub fn add_edge(u: usize, v: usize) -> Self {
        Move {
            kind: MoveKind::AddEdge,
            endpoints: [u.min(v), u.max(v)],
        }
    }

    pub fn contract(u: usize, v: usize) -> Self {
        Move {
            kind: MoveKind::Contract,
            endpoints: [u.min(v), u.max(v)],
        }
    }

    pub fn apply(&self, g: &Spg) -> Result<Spg, SpgError> {
        let [u, v] = self.endpoints;
        match self.kind {
            MoveKind::AddEdge => edge_addition(g, u, v),
            MoveKind::Contract => contraction(g, u, v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub property: Property,
    pub witness: Witness,
}

/// Violated targets in the order given.
pub fn violations(g: &Spg, targets: &[Property]) -> Vec<Violation> {
    targets
        .iter()
        .filter_map(|&p| match p.check(g) {
            Verdict::Holds => None,
            Verdict::Fails(witness) => Some(Violation {
                property: p,
                witness,
            }),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoredMove {
    #[serde(rename = "move")]
    pub mv: Move,
    pub diameter_after: usize,
}

fn raw_candidates(g: &Spg, violation: &Violation) -> Vec<Move> {
    let mut moves = Vec::new();
    match (&violation.property, &violation.witness) {
        (Property::DimensionReduction, Witness::SeparatedFace { face, blocks }) => {
            let view = restriction(g, face).expect("witness face is in range");
            let components = view.components();
            let side = |b: usize| {
                components
                    .iter()
                    .position(|c| c.contains(&b))
                    .expect("witness blocks survive")
            };
            let (ca, cb) = (&components[side(blocks[0])], &components[side(blocks[1])]);
            for &u in ca {
                for &v in cb {
                    moves.push(Move::add_edge(u, v));
                }
            }
            // Contracting a survivor with a non-surviving neighbor that also
            // touches the other side joins the two components.
            let survivors: HashSet<usize> = view.surviving_blocks().iter().copied().collect();
            for (near, far) in [(ca, cb), (cb, ca)] {
                for &u in near {
                    for &w in g.neighbors(u) {
                        if !survivors.contains(&w) && g.neighbors(w).iter().any(|x| far.contains(x))
                        {
                            moves.push(Move::contract(u, w));
                        }
                    }
                }
            }
        }
        (
            Property::Adjacency | Property::StrongAdjacency,
            Witness::UncoveredPair { blocks, .. },
        ) => moves.push(Move::add_edge(blocks[0], blocks[1])),
        (Property::StrongAdjacency, Witness::UnwitnessedEdge { edge }) => {
            moves.push(Move::contract(edge[0], edge[1]))
        }
        _ => {}
    }
    moves.sort_unstable();
    moves.dedup();
    moves
}

/// Moves that address `violation`, best first: larger diameter after the
/// move, then the move order (edge additions before contractions, then by
/// endpoints).
pub fn candidate_moves(g: &Spg, violation: &Violation) -> Vec<ScoredMove> {
    let mut scored: Vec<ScoredMove> = raw_candidates(g, violation)
        .into_par_iter()
        .filter_map(|mv| {
            mv.apply(g).ok().map(|h| ScoredMove {
                mv,
                diameter_after: diameter(&h).value,
            })
        })
        .collect();
    scored.sort_by(|a, b| {
        b.diameter_after
            .cmp(&a.diameter_after)
            .then_with(|| a.mv.cmp(&b.mv))
    });
    scored
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Greedy,
    Beam,
    /// Moves chosen by hand, e.g. in a workbench session. A search asked
    /// for this mode runs greedily.
    Manual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    #[serde(rename = "move")]
    pub mv: Move,
    pub diameter: usize,
    /// Verdicts of the main properties after the move.
    pub report: PropertyReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyTrace {
    pub mode: SearchMode,
    pub targets: Vec<Property>,
    pub initial: SpgDocument,
    pub initial_diameter: usize,
    pub steps: Vec<TraceStep>,
    #[serde(rename = "final")]
    pub final_graph: SpgDocument,
    pub final_diameter: usize,
    /// Violations that no move can repair.
    pub warnings: Vec<String>,
}

impl StrategyTrace {
    fn start(g: &Spg, targets: &[Property], mode: SearchMode) -> Self {
        let d = diameter(g).value;
        StrategyTrace {
            mode,
            targets: targets.to_vec(),
            initial: SpgDocument::from_spg(g),
            initial_diameter: d,
            steps: Vec::new(),
            final_graph: SpgDocument::from_spg(g),
            final_diameter: d,
            warnings: Vec::new(),
        }
    }

    fn push(&mut self, mv: Move, g: &Spg) {
        let d = diameter(g).value;
        self.steps.push(TraceStep {
            mv,
            diameter: d,
            report: PropertyReport::for_properties(g, &Property::MAIN),
        });
        self.final_graph = SpgDocument::from_spg(g);
        self.final_diameter = d;
    }

    /// Trace of an explicit move sequence.
    pub fn from_moves(g: &Spg, targets: &[Property], moves: &[Move]) -> Result<Self, SpgError> {
        let mut trace = StrategyTrace::start(g, targets, SearchMode::Manual);
        let mut current = g.clone();
        for mv in moves {
            current = mv.apply(&current)?;
            trace.push(*mv, &current);
        }
        Ok(trace)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("trace serializes");
        text.push('\n');
        text
    }

    /// Re-applies every move from the initial graph and checks each recorded
    /// diameter, report and the final graph.
    pub fn replay(&self) -> Result<Spg, ReplayError> {
        let mut g = self.initial.to_spg()?;
        if diameter(&g).value != self.initial_diameter {
            return Err(ReplayError::Mismatch { step: None });
        }
        for (i, step) in self.steps.iter().enumerate() {
            g = step.mv.apply(&g)?;
            if diameter(&g).value != step.diameter
                || PropertyReport::for_properties(&g, &Property::MAIN) != step.report
            {
                return Err(ReplayError::Mismatch { step: Some(i) });
            }
        }
        if SpgDocument::from_spg(&g) != self.final_graph
            || diameter(&g).value != self.final_diameter
        {
            return Err(ReplayError::Mismatch { step: None });
        }
        Ok(g)
    }
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Move(#[from] SpgError),
    #[error("replay disagrees with the trace at {}", match .step { Some(i) => format!("step {i}"), None => "the end".into() })]
    Mismatch { step: Option<usize> },
}

#[derive(Debug, Error)]
pub enum StrategyError {
    #[error("BudgetExhausted: {} moves applied, targets still violated", .0.steps.len())]
    BudgetExhausted(Box<StrategyTrace>),
    #[error("NoRepairingMove: no move repairs {property} ({} moves applied)", .trace.steps.len())]
    NoRepairingMove {
        property: Property,
        trace: Box<StrategyTrace>,
    },
}

impl StrategyError {
    pub fn name(&self) -> &'static str {
        match self {
            StrategyError::BudgetExhausted(_) => "BudgetExhausted",
            StrategyError::NoRepairingMove { .. } => "NoRepairingMove",
        }
    }

    pub fn trace(&self) -> &StrategyTrace {
        match self {
            StrategyError::BudgetExhausted(t) => t,
            StrategyError::NoRepairingMove { trace, .. } => trace,
        }
    }
}

/// Applies moves until every target holds or `budget` moves have been used.
///
/// Greedy mode takes the best candidate for the first violated target that
/// has one. Beam mode keeps the [`BEAM_WIDTH`] best partial sequences ranked
/// by diameter, then fewer violations, then move order, and returns the
/// first depth at which some sequence satisfies every target. Targets that
/// no move can repair are recorded as warnings and left out of the search.
pub fn strategy_search(
    g: &Spg,
    targets: &[Property],
    budget: usize,
    mode: SearchMode,
) -> Result<StrategyTrace, StrategyError> {
    let mut trace = StrategyTrace::start(g, targets, mode);
    for v in violations(g, targets) {
        if !repairable(v.property) {
            trace.warnings.push(format!(
                "{} fails and cannot be repaired: {}",
                v.property, v.witness
            ));
        }
    }
    let mut active: Vec<Property> = targets.iter().copied().filter(|&p| repairable(p)).collect();
    active.sort();
    active.dedup();
    match mode {
        SearchMode::Greedy | SearchMode::Manual => greedy(g, &active, budget, trace),
        SearchMode::Beam => beam(g, &active, budget, trace),
    }
}

fn repairable(p: Property) -> bool {
    matches!(
        p,
        Property::DimensionReduction | Property::Adjacency | Property::StrongAdjacency
    )
}

fn greedy(
    g: &Spg,
    targets: &[Property],
    budget: usize,
    mut trace: StrategyTrace,
) -> Result<StrategyTrace, StrategyError> {
    let mut current = g.clone();
    loop {
        let pending = violations(&current, targets);
        if pending.is_empty() {
            return Ok(trace);
        }
        if trace.steps.len() >= budget {
            return Err(StrategyError::BudgetExhausted(Box::new(trace)));
        }
        let chosen = pending
            .iter()
            .find_map(|v| candidate_moves(&current, v).first().copied());
        let Some(best) = chosen else {
            return Err(StrategyError::NoRepairingMove {
                property: pending[0].property,
                trace: Box::new(trace),
            });
        };
        current = best.mv.apply(&current).expect("scored moves apply");
        trace.push(best.mv, &current);
    }
}

struct BeamState {
    graph: Spg,
    moves: Vec<Move>,
    diameter: usize,
    violated: usize,
}

fn beam(
    g: &Spg,
    targets: &[Property],
    budget: usize,
    mut trace: StrategyTrace,
) -> Result<StrategyTrace, StrategyError> {
    let mut frontier = vec![BeamState {
        graph: g.clone(),
        moves: Vec::new(),
        diameter: diameter(g).value,
        violated: violations(g, targets).len(),
    }];
    let finish = |trace: &mut StrategyTrace, moves: &[Move]| {
        let mut current = g.clone();
        for mv in moves {
            current = mv.apply(&current).expect("beam moves apply");
            trace.push(*mv, &current);
        }
    };
    for depth in 0..=budget {
        // frontier is ranked, so the first compliant state is the best one
        if let Some(done) = frontier.iter().find(|s| s.violated == 0) {
            let moves = done.moves.clone();
            finish(&mut trace, &moves);
            return Ok(trace);
        }
        if depth == budget {
            break;
        }
        let mut seen = HashSet::new();
        let mut children: Vec<BeamState> = frontier
            .iter()
            .flat_map(|state| {
                let pending = violations(&state.graph, targets);
                let mut moves: Vec<Move> = pending
                    .iter()
                    .flat_map(|v| raw_candidates(&state.graph, v))
                    .collect();
                moves.sort_unstable();
                moves.dedup();
                moves.into_iter().map(move |mv| (state, mv))
            })
            .collect::<Vec<_>>()
            .into_par_iter()
            .filter_map(|(state, mv)| {
                let graph = mv.apply(&state.graph).ok()?;
                let mut moves = state.moves.clone();
                moves.push(mv);
                Some(BeamState {
                    diameter: diameter(&graph).value,
                    violated: violations(&graph, targets).len(),
                    graph,
                    moves,
                })
            })
            .collect();
        children.sort_by(|a, b| {
            b.diameter
                .cmp(&a.diameter)
                .then(a.violated.cmp(&b.violated))
                .then_with(|| a.moves.cmp(&b.moves))
        });
        children.retain(|c| seen.insert(SpgDocument::from_spg(&c.graph).to_json_string()));
        children.truncate(BEAM_WIDTH);
        if children.is_empty() {
            let moves = frontier[0].moves.clone();
            let property = violations(&frontier[0].graph, targets)[0].property;
            finish(&mut trace, &moves);
            return Err(StrategyError::NoRepairingMove {
                property,
                trace: Box::new(trace),
            });
        }
        frontier = children;
    }
    let moves = frontier[0].moves.clone();
    finish(&mut trace, &moves);
    Err(StrategyError::BudgetExhausted(Box::new(trace)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cube_spg, gen_figure1, gen_spindle_family};
    use crate::properties::check_dimension_reduction;

    #[test]
    fn compliant_graph_gives_empty_trace() {
        let g = gen_cube_spg(3).unwrap();
        let trace = strategy_search(&g, &Property::MAIN, 10, SearchMode::Greedy).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(trace.initial, trace.final_graph);
        assert!(trace.warnings.is_empty());
    }

    #[test]
    fn spindle_two_is_repaired_deterministically() {
        let g = gen_spindle_family(2).unwrap();
        assert!(!check_dimension_reduction(&g).holds());
        let targets = [Property::DimensionReduction];
        let a = strategy_search(&g, &targets, 200, SearchMode::Greedy).unwrap();
        let b = strategy_search(&g, &targets, 200, SearchMode::Greedy).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(!a.steps.is_empty());
        let last = a.replay().unwrap();
        assert!(check_dimension_reduction(&last).holds());
        assert!(a.final_diameter <= a.initial_diameter);
    }

    #[test]
    fn beam_is_deterministic_and_replays() {
        let g = gen_spindle_family(2).unwrap();
        let targets = [Property::DimensionReduction];
        let a = strategy_search(&g, &targets, 50, SearchMode::Beam).unwrap();
        let b = strategy_search(&g, &targets, 50, SearchMode::Beam).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        a.replay().unwrap();
    }

    #[test]
    fn budget_zero_reports_partial_trace() {
        let g = gen_spindle_family(2).unwrap();
        match strategy_search(&g, &[Property::DimensionReduction], 0, SearchMode::Greedy) {
            Err(StrategyError::BudgetExhausted(trace)) => assert!(trace.steps.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unwitnessed_edge_is_contracted() {
        // {01} - {23}: the edge has no pair sharing one symbol
        let g = Spg::from_raw(4, 2, vec![vec![vec![0, 1]], vec![vec![2, 3]]], [(0, 1)]).unwrap();
        let v = violations(&g, &[Property::StrongAdjacency]);
        let moves = candidate_moves(&g, &v[0]);
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].mv, Move::contract(0, 1));
        assert_eq!(moves[0].diameter_after, 0);
    }

    #[test]
    fn endpoint_count_only_warns() {
        // three d-sets through the face {0}
        let g = Spg::from_raw(
            4,
            2,
            vec![vec![vec![0, 1]], vec![vec![0, 2]], vec![vec![0, 3]]],
            [(0, 1), (1, 2), (0, 2)],
        )
        .unwrap();
        let trace = strategy_search(&g, &Property::MAIN, 5, SearchMode::Greedy).unwrap();
        assert_eq!(trace.warnings.len(), 1);
        assert!(trace.warnings[0].starts_with("endpoint-count"));
    }

    #[test]
    fn manual_trace_replays() {
        let g = gen_spindle_family(2).unwrap();
        let moves = [Move::add_edge(0, 8), Move::contract(0, 1)];
        let trace = StrategyTrace::from_moves(&g, &Property::MAIN, &moves).unwrap();
        assert_eq!(trace.mode, SearchMode::Manual);
        assert_eq!(trace.steps[0].diameter, 4);
        let back: StrategyTrace = serde_json::from_str(&trace.to_json()).unwrap();
        assert_eq!(back, trace);
        assert_eq!(back.replay().unwrap().vertex_count(), 8);
    }

    #[test]
    fn figure1_is_left_alone() {
        let g = gen_figure1();
        let trace = strategy_search(&g, &Property::MAIN, 5, SearchMode::Beam).unwrap();
        assert!(trace.steps.is_empty());
    }
}
