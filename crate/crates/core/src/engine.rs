//! The generation loop and its stopping rule.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{HiseaError, Result};
use crate::grid::{compute_score_matrix, select_good_intervals, GoodIntervals, IntervalGrid, SamplingModel, ScoreMatrix, ScoringPool};
use crate::operators::{generate_all, OffspringBatch, Operator, OperatorContext};
use crate::pool::GoodPool;
use crate::quantile::quantile_sorted;
use crate::space::{init_population, Individual, SearchSpace};

/// An objective to minimize over a box.
pub trait Problem: Sync {
    fn space(&self) -> &SearchSpace;

    fn evaluate(&self, x: &[f64]) -> f64;

    /// Whether `evaluate` may be called from several threads at once.
    fn parallel(&self) -> bool {
        true
    }
}

/// A closure over a box.
pub struct FnProblem<F> {
    space: SearchSpace,
    f: F,
}

impl<F> FnProblem<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    pub fn new(space: SearchSpace, f: F) -> Self {
        Self { space, f }
    }
}

impl<F> Problem for FnProblem<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn space(&self) -> &SearchSpace {
        &self.space
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

/// Per-dimension quantiles of a pool, `n × levels` row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantileMatrix {
    n: usize,
    m: usize,
    values: Vec<f64>,
}

impl QuantileMatrix {
    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn get(&self, dim: usize, level: usize) -> f64 {
        self.values[dim * self.m + level]
    }

    pub fn row(&self, dim: usize) -> &[f64] {
        &self.values[dim * self.m..(dim + 1) * self.m]
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged quantile rows");
        Self { n, m, values: rows.into_iter().flatten().collect() }
    }
}

/// Nearest-rank quantiles of every coordinate across the pool.
pub fn quantile_matrix(pool: &GoodPool, levels: &[f64]) -> QuantileMatrix {
    assert!(!pool.is_empty(), "quantiles of an empty pool");
    let n = pool.members()[0].x.len();
    let mut column = Vec::with_capacity(pool.len());
    let mut values = Vec::with_capacity(n * levels.len());
    for dim in 0..n {
        column.clear();
        column.extend(pool.members().iter().map(|m| m.x[dim]));
        column.sort_by(f64::total_cmp);
        values.extend(levels.iter().map(|&a| quantile_sorted(&column, a)));
    }
    QuantileMatrix { n, m: levels.len(), values }
}

/// Largest absolute entry-wise difference.
pub fn pool_distance(a: &QuantileMatrix, b: &QuantileMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(HiseaError::ShapeMismatch { left: a.shape(), right: b.shape() });
    }
    Ok(a.values.iter().zip(&b.values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    Threshold,
    LoopLimit,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Threshold => "threshold",
            StopReason::LoopLimit => "loop-limit",
        }
    }
}

/// One row of the convergence trace. Generation 0 is the random first
/// generation and has no pool distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub generation: usize,
    pub evaluations: usize,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub pool_distance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTrace {
    pub records: Vec<GenerationRecord>,
    pub best: Individual,
    pub generations: usize,
    pub evaluations: usize,
    pub stop_reason: StopReason,
}

impl ConvergenceTrace {
    pub fn best_fitness(&self) -> f64 {
        self.best.f
    }
}

/// The distribution estimate a generation samples from.
#[derive(Debug, Clone)]
pub struct Estimate {
    pub scores: ScoreMatrix,
    pub good: GoodIntervals,
    pub model: SamplingModel,
}

/// What one call to [`Engine::step`] did.
#[derive(Debug, Clone)]
pub struct StepReport {
    pub record: GenerationRecord,
    pub batch_sizes: Vec<(Operator, usize)>,
}

impl StepReport {
    pub fn offspring(&self) -> usize {
        self.batch_sizes.iter().map(|b| b.1).sum()
    }
}

/// Mutable run state. Create with [`Engine::new`], advance with
/// [`Engine::step`].
pub struct Engine<'p, P: Problem + ?Sized> {
    problem: &'p P,
    config: RunConfig,
    grid: IntervalGrid,
    rng: ChaCha8Rng,
    pool: GoodPool,
    scoring: ScoringPool,
    generation: usize,
    evaluations: usize,
    records: Vec<GenerationRecord>,
}

impl<'p, P: Problem + ?Sized> Engine<'p, P> {
    /// Evaluates a random first generation and builds the initial pool and
    /// scoring archive from it.
    pub fn new(problem: &'p P, config: RunConfig) -> Result<Self> {
        config.validate()?;
        let grid = IntervalGrid::new(problem.space().clone(), config.n_p)?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let first = init_population(problem.space(), config.n_f, &mut rng);
        let population = evaluate_all(problem, first)?;
        let scoring = ScoringPool::from_population(&grid, &population);
        let pool = GoodPool::from_population(population, config.n_g);
        let evaluations = config.n_f;
        let record = GenerationRecord {
            generation: 0,
            evaluations,
            best_fitness: pool.best().map_or(f64::NAN, |b| b.f),
            mean_fitness: pool.mean_fitness(),
            pool_distance: None,
        };
        Ok(Self {
            problem,
            config,
            grid,
            rng,
            pool,
            scoring,
            generation: 0,
            evaluations,
            records: vec![record],
        })
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn grid(&self) -> &IntervalGrid {
        &self.grid
    }

    pub fn pool(&self) -> &GoodPool {
        &self.pool
    }

    pub fn scoring_pool(&self) -> &ScoringPool {
        &self.scoring
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    pub fn records(&self) -> &[GenerationRecord] {
        &self.records
    }

    /// Score matrix, good intervals and sampling probabilities for the
    /// current pool and archive.
    pub fn estimate(&self) -> Estimate {
        let scores = compute_score_matrix(&self.scoring, &self.grid, self.pool.f_max_history());
        let good = select_good_intervals(&scores, &self.grid);
        let model = SamplingModel::estimate(&self.pool, &good, &self.grid);
        Estimate { scores, good, model }
    }

    /// Runs the eight operators against `estimate`, consuming randomness.
    pub fn generate(&mut self, estimate: &Estimate) -> Result<Vec<OffspringBatch>> {
        let ctx = OperatorContext::new(&self.pool, &self.grid, &estimate.good, &estimate.model)?;
        Ok(generate_all(&ctx, self.config.n_s, &mut self.rng))
    }

    /// One generation: estimate, generate, evaluate, update the archive,
    /// select the next pool and measure how far its quantiles moved.
    pub fn step(&mut self) -> Result<StepReport> {
        let estimate = self.estimate();
        let batches = self.generate(&estimate)?;
        let batch_sizes: Vec<(Operator, usize)> = batches.iter().map(|b| (b.origin, b.len())).collect();
        let offspring: Vec<Vec<f64>> = batches.into_iter().flat_map(|b| b.individuals).collect();
        debug_assert!(offspring.iter().all(|x| self.problem.space().contains(x)));

        let evaluated = evaluate_all(self.problem, offspring)?;
        self.evaluations += evaluated.len();
        self.scoring.update(&self.grid, &evaluated);

        let before = quantile_matrix(&self.pool, &self.config.quantile_levels);
        self.pool = self.pool.select_next(evaluated, self.config.n_g);
        let after = quantile_matrix(&self.pool, &self.config.quantile_levels);
        let distance = pool_distance(&before, &after)?;

        self.generation += 1;
        let record = GenerationRecord {
            generation: self.generation,
            evaluations: self.evaluations,
            best_fitness: self.pool.best().map_or(f64::NAN, |b| b.f),
            mean_fitness: self.pool.mean_fitness(),
            pool_distance: Some(distance),
        };
        log::trace!(
            "generation {} best {:e} distance {:e}",
            record.generation,
            record.best_fitness,
            distance
        );
        self.records.push(record.clone());
        Ok(StepReport { record, batch_sizes })
    }

    pub fn finish(self, stop_reason: StopReason) -> ConvergenceTrace {
        ConvergenceTrace {
            best: self.pool.best().cloned().expect("pool is never empty"),
            generations: self.generation,
            evaluations: self.evaluations,
            stop_reason,
            records: self.records,
        }
    }
}

fn evaluate_all<P: Problem + ?Sized>(problem: &P, points: Vec<Vec<f64>>) -> Result<Vec<Individual>> {
    let fitness: Vec<f64> = if problem.parallel() && points.len() >= 256 {
        points.par_iter().map(|x| problem.evaluate(x)).collect()
    } else {
        points.iter().map(|x| problem.evaluate(x)).collect()
    };
    if let Some(i) = fitness.iter().position(|f| !f.is_finite()) {
        return Err(HiseaError::NonFiniteFitness {
            fitness: fitness[i],
            x: points[i].clone(),
        });
    }
    Ok(points.into_iter().zip(fitness).map(|(x, f)| Individual::new(x, f)).collect())
}

/// Runs until consecutive pools' quantile matrices are within `epsilon` or
/// `max_loops` generations have run.
pub fn run<P: Problem + ?Sized>(problem: &P, config: &RunConfig) -> Result<ConvergenceTrace> {
    let mut engine = Engine::new(problem, config.clone())?;
    let epsilon = config.epsilon;
    loop {
        if engine.generation() >= config.max_loops {
            return Ok(engine.finish(StopReason::LoopLimit));
        }
        let report = engine.step()?;
        if report.record.pool_distance.is_some_and(|d| d <= epsilon) {
            return Ok(engine.finish(StopReason::Threshold));
        }
    }
}
