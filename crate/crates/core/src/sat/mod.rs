//! SAT input and the hardness constructions as solvable instances.

pub mod cnf;
pub mod reductions;

pub use cnf::{brute_model, brute_sat, parse_dimacs, Cnf, CnfError, DimacsError};
pub use reductions::{
    extract_model, reduce, reduce_spacing, reduce_spacing_f, reduce_spacing_f_nomax, reduce_spacing_h, Mapping,
    ReducedInstance, ReducedSpec, ReductionError, ReductionKind,
};
