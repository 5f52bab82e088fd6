//! The eight offspring generators run once per generation.
//!
//! Each operator is a pure function of the pool, the grid, the good
//! intervals, the sampling model and an explicit random stream. Random draws
//! happen in a fixed order so a seed reproduces every batch exactly.

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HiseaError, Result};
use crate::grid::{GoodIntervals, IntervalGrid, SamplingModel};
use crate::pool::GoodPool;
use crate::space::{uniform_in, SearchSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operator {
    CrossoverIs,
    MutateLocal,
    MutateEntire,
    Interpolate,
    SampleImportance,
    SampleUniform,
    RandomCrossover,
    RandomMutation,
}

impl Operator {
    /// Execution order within a generation.
    pub const ALL: [Operator; 8] = [
        Operator::CrossoverIs,
        Operator::MutateLocal,
        Operator::MutateEntire,
        Operator::Interpolate,
        Operator::SampleImportance,
        Operator::SampleUniform,
        Operator::RandomCrossover,
        Operator::RandomMutation,
    ];

    /// Offspring per generation as a multiple of `N_s`. Local mutation may
    /// emit fewer; every other operator emits exactly this many.
    pub fn multiplier(self) -> usize {
        match self {
            Operator::CrossoverIs => 2,
            Operator::MutateLocal => 1,
            Operator::MutateEntire => 2,
            Operator::Interpolate => 1,
            Operator::SampleImportance => 1,
            Operator::SampleUniform => 5,
            Operator::RandomCrossover => 10,
            Operator::RandomMutation => 10,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Operator::CrossoverIs => "crossover-is",
            Operator::MutateLocal => "mutate-local",
            Operator::MutateEntire => "mutate-entire",
            Operator::Interpolate => "interpolate",
            Operator::SampleImportance => "sample-importance",
            Operator::SampleUniform => "sample-uniform",
            Operator::RandomCrossover => "random-crossover",
            Operator::RandomMutation => "random-mutation",
        }
    }
}

/// Upper bound on offspring per generation, in units of `N_s`.
pub const MAX_MULTIPLIER: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct OffspringBatch {
    pub origin: Operator,
    pub individuals: Vec<Vec<f64>>,
    /// Set when the operator could not run as specified (e.g. a pool too
    /// small for two distinct parents).
    pub diagnostic: Option<String>,
}

impl OffspringBatch {
    fn new(origin: Operator, individuals: Vec<Vec<f64>>) -> Self {
        Self { origin, individuals, diagnostic: None }
    }

    fn skipped(origin: Operator, reason: &str) -> Self {
        log::debug!("{}: {reason}", origin.name());
        Self {
            origin,
            individuals: Vec::new(),
            diagnostic: Some(reason.to_string()),
        }
    }

    pub fn len(&self) -> usize {
        self.individuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.individuals.is_empty()
    }
}

/// Everything the importance-sampling operators read, with the discrete
/// samplers built once per generation.
pub struct OperatorContext<'a> {
    pub pool: &'a GoodPool,
    pub grid: &'a IntervalGrid,
    pub good: &'a GoodIntervals,
    pub model: &'a SamplingModel,
    parent_sampler: WeightedIndex<f64>,
    interval_samplers: Vec<WeightedIndex<f64>>,
}

impl<'a> OperatorContext<'a> {
    pub fn new(
        pool: &'a GoodPool,
        grid: &'a IntervalGrid,
        good: &'a GoodIntervals,
        model: &'a SamplingModel,
    ) -> Result<Self> {
        let invalid = |what: &str, e: rand::distributions::WeightedError| {
            HiseaError::InvalidConfig(format!("cannot sample {what}: {e}"))
        };
        if pool.is_empty() {
            return Err(HiseaError::InvalidConfig("pool of good genetics is empty".into()));
        }
        let parent_sampler = WeightedIndex::new(&model.p_individual).map_err(|e| invalid("parents", e))?;
        let interval_samplers = model
            .p_interval
            .iter()
            .map(|p| WeightedIndex::new(p).map_err(|e| invalid("good intervals", e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            pool,
            grid,
            good,
            model,
            parent_sampler,
            interval_samplers,
        })
    }

    fn parent<R: Rng + ?Sized>(&self, rng: &mut R) -> &'a [f64] {
        &self.pool.members()[self.parent_sampler.sample(rng)].x
    }

    /// Two distinct pool indices drawn by `p_individual`. The second draw is
    /// retried up to 100 times, then falls back to the next index.
    fn distinct_parents<R: Rng + ?Sized>(&self, rng: &mut R) -> (usize, usize) {
        let a = self.parent_sampler.sample(rng);
        for _ in 0..100 {
            let b = self.parent_sampler.sample(rng);
            if b != a {
                return (a, b);
            }
        }
        (a, (a + 1) % self.pool.len())
    }

    /// Uniform draw inside a good interval of `dim` chosen by `p_interval`.
    fn sample_good<R: Rng + ?Sized>(&self, dim: usize, rng: &mut R) -> f64 {
        let k = self.interval_samplers[dim].sample(rng);
        self.sample_in_interval(dim, k, rng)
    }

    fn sample_in_interval<R: Rng + ?Sized>(&self, dim: usize, k: usize, rng: &mut R) -> f64 {
        let iv = self.good.intervals(dim)[k];
        uniform_in(iv.lower, iv.upper, rng)
    }

    fn indicators(&self, x: &[f64]) -> Vec<bool> {
        x.iter()
            .enumerate()
            .map(|(d, &v)| self.good.is_good(self.grid, d, v))
            .collect()
    }
}

/// One gene of the importance-sampling crossover: the child of `own` takes
/// the other parent's gene whenever that gene lies in a good interval.
fn cross_gene(own: f64, own_good: bool, other: f64, other_good: bool) -> f64 {
    match (own_good, other_good) {
        (false, false) => own,
        (true, false) => own,
        (false, true) => other,
        (true, true) => other,
    }
}

/// Both children of the importance-sampling crossover for parents `x1`,
/// `x2` with good-interval indicators `i1`, `i2`.
pub fn crossover_pair(x1: &[f64], i1: &[bool], x2: &[f64], i2: &[bool]) -> (Vec<f64>, Vec<f64>) {
    let y1 = (0..x1.len()).map(|j| cross_gene(x1[j], i1[j], x2[j], i2[j])).collect();
    let y2 = (0..x2.len()).map(|j| cross_gene(x2[j], i2[j], x1[j], i1[j])).collect();
    (y1, y2)
}

/// `N_s` parent pairs, two children each.
pub fn crossover_is<R: Rng + ?Sized>(ctx: &OperatorContext<'_>, n_s: usize, rng: &mut R) -> OffspringBatch {
    if ctx.pool.len() < 2 {
        return OffspringBatch::skipped(Operator::CrossoverIs, "pool holds fewer than two individuals");
    }
    let members = ctx.pool.members();
    let mut out = Vec::with_capacity(2 * n_s);
    for _ in 0..n_s {
        let (a, b) = ctx.distinct_parents(rng);
        let (x1, x2) = (&members[a].x, &members[b].x);
        let (y1, y2) = crossover_pair(x1, &ctx.indicators(x1), x2, &ctx.indicators(x2));
        out.push(y1);
        out.push(y2);
    }
    OffspringBatch::new(Operator::CrossoverIs, out)
}

/// Moves every coordinate lying outside the good intervals into one.
/// Attempts whose parent needs no adjustment produce nothing.
pub fn mutate_local<R: Rng + ?Sized>(ctx: &OperatorContext<'_>, n_s: usize, rng: &mut R) -> OffspringBatch {
    let mut out = Vec::with_capacity(n_s);
    for _ in 0..n_s {
        let mut y = ctx.parent(rng).to_vec();
        let mut adjusted = false;
        for (dim, v) in y.iter_mut().enumerate() {
            if !ctx.good.is_good(ctx.grid, dim, *v) {
                *v = ctx.sample_good(dim, rng);
                adjusted = true;
            }
        }
        if adjusted {
            out.push(y);
        }
    }
    OffspringBatch::new(Operator::MutateLocal, out)
}

/// Resamples every coordinate: within its own good interval if it has one,
/// otherwise within a good interval chosen by `p_interval`.
pub fn mutate_entire<R: Rng + ?Sized>(ctx: &OperatorContext<'_>, n_s: usize, rng: &mut R) -> OffspringBatch {
    let mut out = Vec::with_capacity(2 * n_s);
    for _ in 0..2 * n_s {
        let x = ctx.parent(rng);
        let y = x
            .iter()
            .enumerate()
            .map(|(dim, &v)| match ctx.good.containing(ctx.grid, dim, v) {
                Some(k) => ctx.sample_in_interval(dim, k, rng),
                None => ctx.sample_good(dim, rng),
            })
            .collect();
        out.push(y);
    }
    OffspringBatch::new(Operator::MutateEntire, out)
}

/// Index of the good interval midway between two parents' intervals.
pub fn midpoint_interval(k: usize, m: usize) -> usize {
    (k + m) / 2
}

/// Samples between two parents: in the midpoint good interval when both
/// coordinates are good, in the one good parent's interval when only one
/// is, and in a `p_interval`-chosen interval otherwise.
pub fn interpolate<R: Rng + ?Sized>(ctx: &OperatorContext<'_>, n_s: usize, rng: &mut R) -> OffspringBatch {
    let mut out = Vec::with_capacity(n_s);
    for _ in 0..n_s {
        let x1 = ctx.parent(rng);
        let x2 = ctx.parent(rng);
        let y = (0..x1.len())
            .map(|dim| {
                let k1 = ctx.good.containing(ctx.grid, dim, x1[dim]);
                let k2 = ctx.good.containing(ctx.grid, dim, x2[dim]);
                match (k1, k2) {
                    (Some(k), Some(m)) => ctx.sample_in_interval(dim, midpoint_interval(k, m), rng),
                    (Some(k), None) | (None, Some(k)) => ctx.sample_in_interval(dim, k, rng),
                    (None, None) => ctx.sample_good(dim, rng),
                }
            })
            .collect();
        out.push(y);
    }
    OffspringBatch::new(Operator::Interpolate, out)
}

/// `N_s` points drawn coordinate-wise from the good-interval distribution.
pub fn sample_importance<R: Rng + ?Sized>(ctx: &OperatorContext<'_>, n_s: usize, rng: &mut R) -> OffspringBatch {
    let n = ctx.grid.dim();
    let out = (0..n_s)
        .map(|_| (0..n).map(|dim| ctx.sample_good(dim, rng)).collect())
        .collect();
    OffspringBatch::new(Operator::SampleImportance, out)
}

/// `5 N_s` points uniform over the whole box.
pub fn sample_uniform<R: Rng + ?Sized>(space: &SearchSpace, n_s: usize, rng: &mut R) -> OffspringBatch {
    let out = (0..5 * n_s)
        .map(|_| {
            space
                .lower()
                .iter()
                .zip(space.upper())
                .map(|(&lo, &hi)| uniform_in(lo, hi, rng))
                .collect()
        })
        .collect();
    OffspringBatch::new(Operator::SampleUniform, out)
}

/// `5 N_s` uniformly chosen parent pairs; each coordinate is swapped between
/// the two children with probability 1/2.
pub fn random_crossover<R: Rng + ?Sized>(pool: &GoodPool, n_s: usize, rng: &mut R) -> OffspringBatch {
    let len = pool.len();
    if len < 2 {
        return OffspringBatch::skipped(Operator::RandomCrossover, "pool holds fewer than two individuals");
    }
    let members = pool.members();
    let mut out = Vec::with_capacity(10 * n_s);
    for _ in 0..5 * n_s {
        let a = rng.gen_range(0..len);
        let mut b = rng.gen_range(0..len - 1);
        if b >= a {
            b += 1;
        }
        let (x1, x2) = (&members[a].x, &members[b].x);
        let mut y1 = x1.clone();
        let mut y2 = x2.clone();
        for j in 0..x1.len() {
            if rng.gen::<bool>() {
                y1[j] = x2[j];
                y2[j] = x1[j];
            }
        }
        out.push(y1);
        out.push(y2);
    }
    OffspringBatch::new(Operator::RandomCrossover, out)
}

/// `10 N_s` copies of uniformly chosen parents where each coordinate is,
/// with probability 1/2, redrawn uniformly inside its current grid cell.
pub fn random_mutation<R: Rng + ?Sized>(
    pool: &GoodPool,
    grid: &IntervalGrid,
    n_s: usize,
    rng: &mut R,
) -> OffspringBatch {
    let members = pool.members();
    let mut out = Vec::with_capacity(10 * n_s);
    for _ in 0..10 * n_s {
        let mut y = members[rng.gen_range(0..members.len())].x.clone();
        for (dim, v) in y.iter_mut().enumerate() {
            if rng.gen::<bool>() {
                let (lo, hi) = grid.cell_bounds(dim, grid.cell_of(dim, *v));
                *v = uniform_in(lo, hi, rng);
            }
        }
        out.push(y);
    }
    OffspringBatch::new(Operator::RandomMutation, out)
}

/// Runs all eight operators in [`Operator::ALL`] order.
pub fn generate_all<R: Rng + ?Sized>(ctx: &OperatorContext<'_>, n_s: usize, rng: &mut R) -> Vec<OffspringBatch> {
    vec![
        crossover_is(ctx, n_s, rng),
        mutate_local(ctx, n_s, rng),
        mutate_entire(ctx, n_s, rng),
        interpolate(ctx, n_s, rng),
        sample_importance(ctx, n_s, rng),
        sample_uniform(ctx.grid.space(), n_s, rng),
        random_crossover(ctx.pool, n_s, rng),
        random_mutation(ctx.pool, ctx.grid, n_s, rng),
    ]
}
