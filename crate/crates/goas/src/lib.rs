//! Exact and approximate solvers for budgeted prize collection on
//! rooted trees.
//!
//! An instance is a tree rooted at r with a penetration cost on every
//! edge, a prize on every vertex, a budget B and a threshold G.  A
//! strategy is a subtree containing r; its cost is the sum of its edge
//! costs and its prize the sum of its vertex prizes.  The optimization
//! problem asks for the maximum prize over strategies of cost at most
//! B; the decision problem asks whether that maximum reaches G.
//!
//! The general problem is knapsack-hard, so the crate ships a toolbox
//! rather than one algorithm:
//!
//! * [`solvers::solve_constant`] — all edges cost the same c: exact,
//!   O(m²n) with m = ⌊B/c⌋, and an exactly instrumented operation
//!   count.
//! * [`solvers::solve_integer`] — positive integer costs: exact,
//!   pseudo-polynomial O(B²n).
//! * [`solvers::solve_rational_d`] — costs from a fixed alphabet of d
//!   rationals: exact, polynomial for fixed d.
//! * [`ptas::solve_ptas`] — any rational costs: prize at least the
//!   optimum at budget B, cost at most (1+ε)B, polynomial in n and 1/ε.
//! * [`oracle::brute_force_optimum`] — exhaustive reference for small
//!   instances; every solver is tested against it.
//!
//! [`reductions`] maps knapsacks, doubly edge-weighted unrooted trees
//! and nested container models onto instances; [`format`] defines the
//! exact-rational file formats; [`generator`] produces seeded random
//! instances; [`harness`] drives verification and benchmark sweeps.
//!
//! All arithmetic is exact ([`rational::Rational`] is an arbitrary-
//! precision rational); nothing in the crate touches floating point
//! except wall-clock measurements.  Instances are immutable and the
//! solvers are pure, so batch work is data-parallel: the `parallel`
//! feature (default) runs sweeps and table waves on rayon, with a
//! sequential fallback that produces bit-identical results.

pub mod batch;
pub mod format;
pub mod generator;
pub mod harness;
pub mod instance;
pub mod oracle;
pub mod ptas;
pub mod rational;
pub mod report;
pub mod solvers;
pub mod tree;

pub mod reductions;

pub use instance::{build_instance, contract_zero_cost_edges, Instance, Strategy};
pub use rational::Rational;
pub use solvers::{decide_goas, SolveResult};
pub use tree::PlantedPlaneTree;
