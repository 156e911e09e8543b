//! Randomized algebraic algorithms for perfect matching, exact-weight
//! perfect matching and linear matroid parity over prime fields.
//!
//! Graphs carry edge weights in `{0, 1}`. Their Tutte matrices are split
//! into a weight-0 and a weight-1 part, and after substituting random field
//! values the pfaffian of `T0 + y T1` has a nonzero `y^k` coefficient
//! exactly when (with high probability) a perfect matching of weight `k`
//! exists. That polynomial comes from one characteristic polynomial and a
//! polynomial square root.
//!
//! ```
//! use algmatch::{Solver, WeightedGraph};
//! use rand_chacha::ChaCha8Rng;
//! use rand_core::SeedableRng;
//!
//! let g: WeightedGraph = "4 4\n0 1 1\n1 2 0\n2 3 1\n0 3 0\n".parse().unwrap();
//! let solver = Solver::for_instance_size(g.n());
//! let mut rng = ChaCha8Rng::seed_from_u64(7);
//! let profile = solver.weight_profile(&g, &mut rng).unwrap();
//! assert_eq!(profile.feasible_weights(), vec![0, 2]);
//! let m = solver.find_exact_matching(&g, 2, &mut rng).unwrap();
//! assert_eq!(m.found().unwrap().weight, 2);
//! ```

pub mod cli;
pub mod error;
pub mod gf;
pub mod graph;
pub mod lmp;
pub mod matching;
pub mod matrix;
pub mod oracle;
pub mod poly;

pub use error::{Error, Result};
pub use gf::{FieldElement, PrimeModulus};
pub use graph::{Edge, SubstitutedTutte, WeightedGraph};
pub use lmp::{LmpFile, LmpInstance, ParityBase};
pub use matching::{MatchingResult, Outcome, SkewPencil, Solver, WeightProfile};
pub use matrix::{FieldMatrix, SkewMatrix};
pub use poly::Polynomial;
