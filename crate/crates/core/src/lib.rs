//! Subset partition graphs: disjoint blocks of d-sets joined by a
//! connected graph, with property checkers, generators, brute-force oracles
//! and a diameter-preserving repair strategy.

pub mod clf;
pub mod connectivity;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod ops;
pub mod oracle;
pub mod properties;
pub mod spg;
pub mod strategy;
pub mod symbols;

pub use clf::{
    base_layering, check_base_abstraction, check_layers, check_ultraconnected, clf_to_base,
    BaseAbstraction, ConnectedLayerFamily, LayerFamily,
};
pub use error::SpgError;
pub use io::{parse, parse_clf, serialize, serialize_clf, IoError, SpgDocument};
pub use ops::{
    contraction, diameter, distance, edge_addition, restriction, spg_layering, spindle_length,
    DiameterResult, Layering, RestrictedView,
};
pub use properties::{property_report, EndpointMode, Property, PropertyReport, Verdict, Witness};
pub use spg::Spg;
pub use strategy::{strategy_search, Move, MoveKind, SearchMode, StrategyError, StrategyTrace};
pub use symbols::{DSet, Face, Symbol, SymbolSet};
