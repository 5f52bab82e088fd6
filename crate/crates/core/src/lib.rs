//! Histogram-guided evolutionary search for box-constrained minimisation.
//!
//! A run keeps a pool of the best individuals found so far, divides every
//! axis into equal cells, scores the cells from a small archive of elite
//! and worst points, and draws each generation's offspring from eight
//! operators that favour the well-scoring intervals. The run stops when
//! the pool's per-dimension quantiles stop moving.
//!
//! ```
//! use hisea::{run, Benchmark, RunConfig};
//!
//! let problem = Benchmark::new(11).unwrap();
//! let config = RunConfig { n_f: 200, n_p: 20, n_g: 200, n_s: 20, max_loops: 10, ..RunConfig::desk() };
//! let trace = run(&problem, &config.with_seed(7)).unwrap();
//! assert!(trace.best_fitness() < 0.0);
//! ```

pub mod benchmarks;
pub mod config;
pub mod engine;
pub mod error;
pub mod grid;
pub mod harness;
pub mod operators;
pub mod pool;
pub mod quantile;
pub mod space;

pub use benchmarks::{Benchmark, BenchmarkSpec, FUNCTION_COUNT};
pub use config::RunConfig;
pub use engine::{run, ConvergenceTrace, Engine, FnProblem, GenerationRecord, Problem, StopReason};
pub use error::{HiseaError, Result};
pub use grid::{GoodIntervals, IntervalGrid, SamplingModel, ScoreMatrix, ScoringPool};
pub use operators::{OffspringBatch, Operator};
pub use pool::GoodPool;
pub use space::{Individual, SearchSpace};
