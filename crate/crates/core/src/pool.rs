//! The pool of good genetics: the `N_g` lowest-fitness individuals kept
//! between generations, plus the running maximum of every fitness seen.

use serde::{Deserialize, Serialize};

use crate::space::Individual;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoodPool {
    members: Vec<Individual>,
    f_max_history: f64,
}

impl GoodPool {
    /// Builds a pool from a first generation: the `n_g` best of `population`
    /// with the historical maximum taken over all of `population`.
    pub fn from_population(population: Vec<Individual>, n_g: usize) -> Self {
        let f_max_history = population.iter().map(|i| i.f).fold(f64::NEG_INFINITY, f64::max);
        let mut members = population;
        members.sort_by(|a, b| a.f.total_cmp(&b.f));
        members.truncate(n_g);
        Self { members, f_max_history }
    }

    /// Wraps already-sorted members. Panics if the ordering or history
    /// invariants do not hold.
    pub fn from_sorted(members: Vec<Individual>, f_max_history: f64) -> Self {
        assert!(members.windows(2).all(|w| w[0].f <= w[1].f), "pool members must be sorted");
        if let Some(last) = members.last() {
            assert!(f_max_history >= last.f, "f_max_history below the worst member");
        }
        Self { members, f_max_history }
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn best(&self) -> Option<&Individual> {
        self.members.first()
    }

    pub fn f_max_history(&self) -> f64 {
        self.f_max_history
    }

    pub fn mean_fitness(&self) -> f64 {
        self.members.iter().map(|m| m.f).sum::<f64>() / self.members.len() as f64
    }

    /// Individual scores `w_i = (f_max - f_i) / (N f_max - sum f)`.
    ///
    /// Falls back to the uniform vector when every member sits at the
    /// historical maximum and the denominator vanishes.
    pub fn fitness_scores(&self) -> Vec<f64> {
        let fitness: Vec<f64> = self.members.iter().map(|m| m.f).collect();
        relative_scores(&fitness, self.f_max_history)
    }

    /// Truncation selection over `self ∪ offspring`. Ties keep parents ahead
    /// of offspring and otherwise preserve input order.
    pub fn select_next(&self, offspring: Vec<Individual>, n_g: usize) -> GoodPool {
        let f_max_history = offspring.iter().map(|i| i.f).fold(self.f_max_history, f64::max);
        let mut union = Vec::with_capacity(self.members.len() + offspring.len());
        union.extend(self.members.iter().cloned());
        union.extend(offspring);
        union.sort_by(|a, b| a.f.total_cmp(&b.f));
        union.truncate(n_g);
        GoodPool { members: union, f_max_history }
    }
}

/// Shared scoring rule for any set of fitness values measured against a
/// historical maximum. Returns the uniform vector when the denominator is
/// not positive.
pub(crate) fn relative_scores(fitness: &[f64], f_max: f64) -> Vec<f64> {
    let n = fitness.len();
    if n == 0 {
        return Vec::new();
    }
    // Sum of (f_max - f_i) equals N f_max - sum f_i without the cancellation.
    let denom: f64 = fitness.iter().map(|&f| f_max - f).sum();
    if denom > 0.0 && denom.is_finite() {
        fitness.iter().map(|&f| (f_max - f) / denom).collect()
    } else {
        vec![1.0 / n as f64; n]
    }
}

/// Free-function form of [`GoodPool::fitness_scores`].
pub fn fitness_scores(pool: &GoodPool) -> Vec<f64> {
    pool.fitness_scores()
}

/// Free-function form of [`GoodPool::select_next`].
pub fn select_next_pool(parents: &GoodPool, offspring: Vec<Individual>, n_g: usize) -> GoodPool {
    parents.select_next(offspring, n_g)
}
