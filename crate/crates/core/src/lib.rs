//! Exact weighted perfect-matching generating functions for Aztec diamonds
//! and related cellular graphs.
//!
//! The numeric and symbolic pipelines share one implementation, generic over
//! a [`Field`] of weights: [`BigRational`] for numbers, [`RationalFunction`]
//! for canonical symbolic values and [`Factored`] for long symbolic products.

pub mod aztec;
pub mod cellular;
pub mod families;
pub mod field;
pub mod graph;
pub mod io;
pub mod orbit;
pub mod ratfunc;
pub mod suites;

pub use aztec::{
    col_edge_count, delta, edge_array, evaluate, reduce_step, row_edge_count, scale_col_class, scale_row_class,
    to_graph, AztecError, AztecGraph, AztecInstance, PeriodMatrix, ReductionTrace, TraceStep,
};
pub use cellular::{
    find_completion, lemma26_rewrite, urban_renewal, CellKind, CellularCompletion, CellularError, Complement,
    HalvingGadget, Line,
};
pub use families::{family_value, Family, FamilyError};
pub use field::Field;
pub use graph::{
    enumerate_matchings, oracle_mgf, split_vertex, strip_forced, Edge, GraphError, Matching, VertexId, WeightedGraph,
};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use orbit::{
    delta_iterate, detect_proportional, detect_q_shift, equivalence_reduce, recurrence_constant, OrbitError, OrbitKind,
    OrbitReport,
};
pub use ratfunc::{factor_integer, parse, Factored, MultiPoly, RatFuncError, RationalFunction};
