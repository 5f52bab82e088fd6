//! Interval partition of the box, the scoring archive, the score matrix,
//! good-interval selection, and the two importance-sampling distributions
//! derived from them.
//!
//! Cells are indexed from 0 here. Cell `k` of dimension `d` is the half-open
//! interval `[point(d, k), point(d, k + 1))`; the last cell also contains the
//! upper bound so the cells tile the box without gaps.

use serde::{Deserialize, Serialize};

use crate::error::{HiseaError, Result};
use crate::pool::{relative_scores, GoodPool};
use crate::quantile::quantile_sorted;
use crate::space::{Individual, SearchSpace};

/// Equal-width partition of every dimension into `n_p` cells.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalGrid {
    space: SearchSpace,
    n_p: usize,
    cell_width: Vec<f64>,
}

impl IntervalGrid {
    pub fn new(space: SearchSpace, n_p: usize) -> Result<Self> {
        if n_p == 0 {
            return Err(HiseaError::InvalidConfig("n_p must be positive".into()));
        }
        let cell_width = (0..space.dim()).map(|d| space.width(d) / n_p as f64).collect();
        Ok(Self { space, n_p, cell_width })
    }

    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn n_p(&self) -> usize {
        self.n_p
    }

    pub fn cell_width(&self, dim: usize) -> f64 {
        self.cell_width[dim]
    }

    /// Partition point `j` of a dimension, `0 <= j <= n_p`. Point 0 is the
    /// lower bound and point `n_p` is the upper bound exactly.
    pub fn partition_point(&self, dim: usize, j: usize) -> f64 {
        debug_assert!(j <= self.n_p);
        if j == self.n_p {
            self.space.upper()[dim]
        } else {
            self.space.lower()[dim] + j as f64 * self.cell_width[dim]
        }
    }

    pub fn cell_bounds(&self, dim: usize, cell: usize) -> (f64, f64) {
        (self.partition_point(dim, cell), self.partition_point(dim, cell + 1))
    }

    /// Cell containing `value`, or an error if it lies outside the bounds.
    pub fn locate_cell(&self, dim: usize, value: f64) -> Result<usize> {
        let (lower, upper) = (self.space.lower()[dim], self.space.upper()[dim]);
        if !(lower <= value && value <= upper) {
            return Err(HiseaError::OutOfBounds { dim, value, lower, upper });
        }
        Ok(self.cell_of(dim, value))
    }

    /// Like [`locate_cell`](Self::locate_cell) for values already known to be
    /// in bounds; out-of-range values clamp to the edge cells.
    pub(crate) fn cell_of(&self, dim: usize, value: f64) -> usize {
        let lower = self.space.lower()[dim];
        let guess = ((value - lower) / self.cell_width[dim]).floor();
        let mut k = if guess.is_nan() || guess < 0.0 {
            0
        } else {
            (guess as usize).min(self.n_p - 1)
        };
        // The division can be off by one near a partition point.
        while k > 0 && value < self.partition_point(dim, k) {
            k -= 1;
        }
        while k + 1 < self.n_p && value >= self.partition_point(dim, k + 1) {
            k += 1;
        }
        k
    }
}

/// The scoring archive `G_s`: the two fittest individuals seen in each cell
/// of the first dimension, plus the single worst individual ever seen.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScoringPool {
    slots: Vec<Vec<Individual>>,
    worst: Option<Individual>,
}

impl ScoringPool {
    pub fn new(n_p: usize) -> Self {
        Self {
            slots: vec![Vec::with_capacity(2); n_p],
            worst: None,
        }
    }

    /// Archive built from a first generation.
    pub fn from_population(grid: &IntervalGrid, population: &[Individual]) -> Self {
        let mut gs = Self::new(grid.n_p());
        gs.update(grid, population);
        gs
    }

    pub fn slot(&self, cell: usize) -> &[Individual] {
        &self.slots[cell]
    }

    pub fn worst(&self) -> Option<&Individual> {
        self.worst.as_ref()
    }

    /// Offers every individual in `arrivals` to the archive. Each cell keeps
    /// its two lowest-fitness members (earlier arrivals win ties) and `worst`
    /// tracks the maximum fitness.
    pub fn update(&mut self, grid: &IntervalGrid, arrivals: &[Individual]) {
        for ind in arrivals {
            let slot = &mut self.slots[grid.cell_of(0, ind.x[0])];
            match slot.len() {
                0 => slot.push(ind.clone()),
                1 => {
                    if ind.f < slot[0].f {
                        slot.insert(0, ind.clone());
                    } else {
                        slot.push(ind.clone());
                    }
                }
                _ => {
                    if ind.f < slot[0].f {
                        slot.pop();
                        slot.insert(0, ind.clone());
                    } else if ind.f < slot[1].f {
                        slot[1] = ind.clone();
                    }
                }
            }
            if self.worst.as_ref().is_none_or(|w| ind.f > w.f) {
                self.worst = Some(ind.clone());
            }
        }
    }

    /// Archive members: slot members in cell order, then `worst` unless that
    /// same individual is already held by its own cell's slot.
    pub fn members(&self) -> Vec<&Individual> {
        let mut out: Vec<&Individual> = self.slots.iter().flatten().collect();
        if let Some(w) = &self.worst {
            let held = self.slots.iter().flatten().any(|m| same_individual(m, w));
            if !held {
                out.push(w);
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.members().len()
    }

    pub fn is_empty(&self) -> bool {
        self.worst.is_none()
    }
}

fn same_individual(a: &Individual, b: &Individual) -> bool {
    a.f.to_bits() == b.f.to_bits()
        && a.x.len() == b.x.len()
        && a.x.iter().zip(&b.x).all(|(p, q)| p.to_bits() == q.to_bits())
}

/// Weights of the archive members, in [`ScoringPool::members`] order, under
/// the same relative-score rule as the good pool.
pub fn scoring_pool_weights(gs: &ScoringPool, f_max_history: f64) -> Vec<f64> {
    let fitness: Vec<f64> = gs.members().iter().map(|m| m.f).collect();
    relative_scores(&fitness, f_max_history)
}

/// `n × n_p` matrix of non-negative cell scores, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreMatrix {
    n: usize,
    n_p: usize,
    data: Vec<f64>,
}

impl ScoreMatrix {
    pub fn zeros(n: usize, n_p: usize) -> Self {
        Self { n, n_p, data: vec![0.0; n * n_p] }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let n = rows.len();
        let n_p = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n_p), "ragged score rows");
        Self { n, n_p, data: rows.into_iter().flatten().collect() }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.n_p)
    }

    pub fn get(&self, dim: usize, cell: usize) -> f64 {
        self.data[dim * self.n_p + cell]
    }

    pub fn row(&self, dim: usize) -> &[f64] {
        &self.data[dim * self.n_p..(dim + 1) * self.n_p]
    }

    fn add(&mut self, dim: usize, cell: usize, v: f64) {
        self.data[dim * self.n_p + cell] += v;
    }

    /// Element-wise sum, for merging partial matrices.
    pub fn merge(&mut self, other: &ScoreMatrix) {
        assert_eq!(self.shape(), other.shape());
        self.data.iter_mut().zip(&other.data).for_each(|(a, b)| *a += b);
    }
}

/// Scores every cell from pairs of archive members sharing a cell.
///
/// For each dimension `i` and cell `j` holding at least two archive members
/// (in dimension `i`), the two fittest, `x1` then `x2`, credit each dimension
/// `k` at the cell `m1` holding `x1[k]`: `w1 + w2` when `x2[k]` shares that
/// cell, `2 w1` otherwise.
pub fn compute_score_matrix(gs: &ScoringPool, grid: &IntervalGrid, f_max_history: f64) -> ScoreMatrix {
    let n = grid.dim();
    let n_p = grid.n_p();
    let members = gs.members();
    let weights = scoring_pool_weights(gs, f_max_history);
    let mut scores = ScoreMatrix::zeros(n, n_p);
    if members.len() < 2 {
        return scores;
    }

    let cells: Vec<usize> = members
        .iter()
        .flat_map(|m| m.x.iter().enumerate().map(|(k, &v)| grid.cell_of(k, v)))
        .collect();
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by(|&a, &b| members[a].f.total_cmp(&members[b].f));

    const NONE: usize = usize::MAX;
    let mut first = vec![NONE; n_p];
    let mut second = vec![NONE; n_p];
    for i in 0..n {
        first.fill(NONE);
        second.fill(NONE);
        for &a in &order {
            let j = cells[a * n + i];
            if first[j] == NONE {
                first[j] = a;
            } else if second[j] == NONE {
                second[j] = a;
            }
        }
        for j in 0..n_p {
            let (a, b) = (first[j], second[j]);
            if b == NONE {
                continue;
            }
            let (w1, w2) = (weights[a], weights[b]);
            for k in 0..n {
                let m1 = cells[a * n + k];
                let m2 = cells[b * n + k];
                scores.add(k, m1, if m1 == m2 { w1 + w2 } else { 2.0 * w1 });
            }
        }
    }
    scores
}

/// A maximal run of good cells `first_cell..=last_cell` merged into the
/// closed interval `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GoodInterval {
    pub first_cell: usize,
    pub last_cell: usize,
    pub lower: f64,
    pub upper: f64,
}

/// Merged good intervals of every dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct GoodIntervals {
    n_p: usize,
    intervals: Vec<Vec<GoodInterval>>,
    thresholds: Vec<f64>,
    // Per dimension, the interval index covering each cell (u32::MAX if none).
    cell_map: Vec<u32>,
}

impl GoodIntervals {
    /// Builds intervals from per-dimension good-cell masks. Every mask must
    /// have length `n_p` and mark at least one cell.
    pub fn from_masks(grid: &IntervalGrid, masks: &[Vec<bool>]) -> Result<Self> {
        if masks.len() != grid.dim() {
            return Err(HiseaError::DimensionMismatch {
                expected: grid.dim(),
                actual: masks.len(),
            });
        }
        let n_p = grid.n_p();
        let mut intervals = Vec::with_capacity(masks.len());
        let mut cell_map = vec![u32::MAX; masks.len() * n_p];
        for (dim, mask) in masks.iter().enumerate() {
            if mask.len() != n_p {
                return Err(HiseaError::DimensionMismatch { expected: n_p, actual: mask.len() });
            }
            let mut runs: Vec<GoodInterval> = Vec::new();
            for cell in (0..n_p).filter(|&c| mask[c]) {
                match runs.last_mut() {
                    Some(run) if run.last_cell + 1 == cell => run.last_cell = cell,
                    _ => runs.push(GoodInterval { first_cell: cell, last_cell: cell, lower: 0.0, upper: 0.0 }),
                }
            }
            if runs.is_empty() {
                return Err(HiseaError::InvalidConfig(format!("dimension {dim} has no good cell")));
            }
            for (idx, run) in runs.iter_mut().enumerate() {
                run.lower = grid.partition_point(dim, run.first_cell);
                run.upper = grid.partition_point(dim, run.last_cell + 1);
                for cell in run.first_cell..=run.last_cell {
                    cell_map[dim * n_p + cell] = idx as u32;
                }
            }
            intervals.push(runs);
        }
        Ok(Self {
            n_p,
            thresholds: vec![f64::NAN; masks.len()],
            intervals,
            cell_map,
        })
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self, dim: usize) -> &[GoodInterval] {
        &self.intervals[dim]
    }

    /// Number of good intervals of a dimension.
    pub fn count(&self, dim: usize) -> usize {
        self.intervals[dim].len()
    }

    /// The quantile threshold that selected this dimension's cells (NaN when
    /// built from explicit masks).
    pub fn threshold(&self, dim: usize) -> f64 {
        self.thresholds[dim]
    }

    pub fn interval_of_cell(&self, dim: usize, cell: usize) -> Option<usize> {
        match self.cell_map[dim * self.n_p + cell] {
            u32::MAX => None,
            idx => Some(idx as usize),
        }
    }

    /// Index of the good interval containing `value`, if any.
    pub fn containing(&self, grid: &IntervalGrid, dim: usize, value: f64) -> Option<usize> {
        self.interval_of_cell(dim, grid.cell_of(dim, value))
    }

    pub fn is_good(&self, grid: &IntervalGrid, dim: usize, value: f64) -> bool {
        self.containing(grid, dim, value).is_some()
    }
}

/// Marks cells scoring at least the 75% nearest-rank quantile of their row
/// and merges adjacent good cells.
pub fn select_good_intervals(scores: &ScoreMatrix, grid: &IntervalGrid) -> GoodIntervals {
    let (n, n_p) = scores.shape();
    assert_eq!((n, n_p), (grid.dim(), grid.n_p()), "score matrix does not match grid");
    let mut thresholds = Vec::with_capacity(n);
    let masks: Vec<Vec<bool>> = (0..n)
        .map(|dim| {
            let row = scores.row(dim);
            let mut sorted = row.to_vec();
            sorted.sort_by(f64::total_cmp);
            let h = quantile_sorted(&sorted, 0.75);
            thresholds.push(h);
            row.iter().map(|&s| s >= h).collect()
        })
        .collect();
    let mut good = GoodIntervals::from_masks(grid, &masks).expect("the quantile cell always qualifies");
    good.thresholds = thresholds;
    good
}

/// Importance-sampling probabilities over pool members and over good
/// intervals, with flags recording which degenerate fallbacks fired.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingModel {
    /// Good coordinates per pool member.
    pub coverage: Vec<usize>,
    pub p_individual: Vec<f64>,
    /// Pool coordinates landing in each good interval, per dimension.
    pub q_counts: Vec<Vec<usize>>,
    pub p_interval: Vec<Vec<f64>>,
    /// No pool member had a good coordinate, so `p_individual` is uniform.
    pub individual_fallback: bool,
    /// Per dimension: no pool coordinate hit a good interval, so that
    /// dimension's `p_interval` is uniform.
    pub interval_fallback: Vec<bool>,
}

impl SamplingModel {
    pub fn estimate(pool: &GoodPool, good: &GoodIntervals, grid: &IntervalGrid) -> Self {
        let n = grid.dim();
        let mut coverage = vec![0usize; pool.len()];
        let mut q_counts: Vec<Vec<usize>> = (0..n).map(|d| vec![0; good.count(d)]).collect();
        for (c, member) in coverage.iter_mut().zip(pool.members()) {
            for (dim, &v) in member.x.iter().enumerate() {
                if let Some(k) = good.containing(grid, dim, v) {
                    *c += 1;
                    q_counts[dim][k] += 1;
                }
            }
        }
        let (p_individual, individual_fallback) = normalize_counts(&coverage);
        let (p_interval, interval_fallback) = q_counts.iter().map(|q| normalize_counts(q)).unzip();
        Self {
            coverage,
            p_individual,
            q_counts,
            p_interval,
            individual_fallback,
            interval_fallback,
        }
    }
}

fn normalize_counts(counts: &[usize]) -> (Vec<f64>, bool) {
    let total: usize = counts.iter().sum();
    if total == 0 {
        (vec![1.0 / counts.len() as f64; counts.len()], true)
    } else {
        (counts.iter().map(|&c| c as f64 / total as f64).collect(), false)
    }
}

/// `p_i = c_i / sum c_j`, where `c_i` counts member `i`'s coordinates lying
/// in a good interval; uniform when no member has any.
pub fn individual_probabilities(pool: &GoodPool, good: &GoodIntervals, grid: &IntervalGrid) -> Vec<f64> {
    SamplingModel::estimate(pool, good, grid).p_individual
}

/// Per-dimension occupancy counts `q` of the good intervals and their
/// normalization `p`; uniform over a dimension's intervals when its counts
/// are all zero.
pub fn interval_probabilities(
    pool: &GoodPool,
    good: &GoodIntervals,
    grid: &IntervalGrid,
) -> (Vec<Vec<usize>>, Vec<Vec<f64>>) {
    let model = SamplingModel::estimate(pool, good, grid);
    (model.q_counts, model.p_interval)
}
