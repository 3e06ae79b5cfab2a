//! Decompositions of complete multigraphs into copies of a graph whose
//! vertices carry colored loops.
//!
//! Loops turn local balance requirements (every point in each seat equally
//! often, each degree class equally often, and so on) into plain coverage
//! conditions on a host `K_v^[mu; lambda]`: `lambda` parallel edges between
//! every pair of points and `mu_i` loops of color `i` at every point.
//!
//! * [`arith`]: loop multiplicities, the local modulus `alpha`, admissibility.
//! * [`field`] and [`cyclotomic`]: base blocks over `GF(q)` and their development.
//! * [`signed`]: integral (possibly negative) solutions and small exact searches.
//! * [`verify`]: recount-from-scratch checks for every property.
//! * [`apps`]: loop recipes, equitable colorings, block orderings.
//! * [`pbd`]: pairwise balanced designs and composition along them.

pub mod apps;
pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod graph;
pub mod lattice;
pub mod pbd;
pub mod signed;
pub mod verify;

pub use apps::{
    attach_degree_loops, attach_orbit_loops, build_equitable_union, equitable_union_family,
    eulerian_circuit, extract_coloring, order_blocks, seats_clique, AttachedLoops, ColoredDesign,
    LoopClass,
};
pub use arith::{
    admissible_residues, compute_alpha, compute_mu, is_admissible, AdmissibilityReport, HostSpec,
    ResidueReport,
};
pub use cyclotomic::{
    construct_cyclotomic, develop, find_base_block, is_valid_base_block, BaseBlock,
    CyclotomicDesign,
};
pub use error::{Error, Result};
pub use field::{CosetSystem, Field};
pub use graph::{DegreeLoopVector, GraphInvariants, LoopedGraph};
pub use lattice::Lattice;
pub use pbd::{compose, pbd_parameters, verify_pbd, Pbd, PbdParameters, PbdReport};
pub use signed::{
    enumerate_blocks, solve_nonnegative, solve_signed, solve_signed_with, Embedding, LinearSystem,
    NonnegativeOptions, SignedBlock, SignedOptions, SignedSolution,
};
pub use verify::{
    verify_balanced, verify_block_ordering, verify_decomposition, verify_degree_balanced,
    verify_equitable_coloring, verify_orbit_balanced, BalanceReport, ClassBalanceReport,
    ColoringReport, Decomposition, VerifyReport,
};
