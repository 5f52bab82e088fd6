//! The thirty benchmark functions, their boxes and their known optima.
//!
//! Formulas use 1-based indices in their documentation; code indexes from 0,
//! so a term written with `i` reads `x[i - 1]`.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::engine::Problem;
use crate::error::{HiseaError, Result};
use crate::space::SearchSpace;

pub const FUNCTION_COUNT: usize = 30;

/// Exponent `m` of the Michalewicz-type functions (f21, f29).
const MICHALEWICZ_M: i32 = 10;
/// Rotation angle of f21.
const ROTATION: f64 = PI / 6.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    pub id: usize,
    pub name: &'static str,
    pub default_dim: usize,
    pub space: SearchSpace,
    pub known_optimum: Option<f64>,
}

struct Entry {
    name: &'static str,
    // Fixed dimension, if the function is only defined for one.
    fixed_dim: Option<usize>,
    bounds: Bounds,
}

enum Bounds {
    Cube(f64, f64),
    // [-n^2, n^2]^n
    Squared,
    Boxes(&'static [(f64, f64)]),
}

const ENTRIES: [Entry; FUNCTION_COUNT] = [
    Entry { name: "sphere", fixed_dim: None, bounds: Bounds::Cube(-100.0, 100.0) },
    Entry { name: "schwefel-2.22", fixed_dim: None, bounds: Bounds::Cube(-10.0, 10.0) },
    Entry { name: "schwefel-1.2", fixed_dim: None, bounds: Bounds::Cube(-100.0, 100.0) },
    Entry { name: "schwefel-2.21", fixed_dim: None, bounds: Bounds::Cube(-100.0, 100.0) },
    Entry { name: "rosenbrock", fixed_dim: None, bounds: Bounds::Cube(-29.0, 31.0) },
    Entry { name: "quartic", fixed_dim: None, bounds: Bounds::Cube(-1.28, 1.28) },
    Entry { name: "rastrigin", fixed_dim: None, bounds: Bounds::Cube(-5.12, 5.12) },
    Entry { name: "griewank", fixed_dim: None, bounds: Bounds::Cube(-600.0, 600.0) },
    Entry { name: "schwefel-2.26", fixed_dim: None, bounds: Bounds::Cube(-500.0, 500.0) },
    Entry { name: "ackley", fixed_dim: None, bounds: Bounds::Cube(-32.0, 32.0) },
    Entry {
        name: "six-hump-camel",
        fixed_dim: Some(2),
        bounds: Bounds::Boxes(&[(-4.91017, 5.0893), (-5.7126, 4.2874)]),
    },
    Entry {
        name: "branin",
        fixed_dim: Some(2),
        bounds: Bounds::Boxes(&[(-8.142, 6.858), (-12.275, 2.725)]),
    },
    Entry {
        name: "goldstein-price",
        fixed_dim: Some(2),
        bounds: Bounds::Boxes(&[(-2.0, 2.0), (-3.0, 1.0)]),
    },
    Entry { name: "elliptic", fixed_dim: None, bounds: Bounds::Cube(-100.0, 100.0) },
    Entry { name: "levy", fixed_dim: None, bounds: Bounds::Cube(-10.0, 10.0) },
    Entry { name: "zakharov", fixed_dim: None, bounds: Bounds::Cube(-5.0, 10.0) },
    Entry { name: "alpine", fixed_dim: None, bounds: Bounds::Cube(-10.0, 10.0) },
    Entry { name: "schaffer-chain", fixed_dim: None, bounds: Bounds::Cube(-100.0, 100.0) },
    Entry { name: "exp-cosine-chain", fixed_dim: None, bounds: Bounds::Cube(-5.0, 5.0) },
    Entry { name: "cosine-mixture", fixed_dim: None, bounds: Bounds::Cube(-1.0, 1.0) },
    Entry { name: "rotated-michalewicz", fixed_dim: None, bounds: Bounds::Cube(0.0, PI) },
    Entry { name: "levy-montalvo", fixed_dim: None, bounds: Bounds::Cube(-5.0, 5.0) },
    Entry { name: "trid", fixed_dim: None, bounds: Bounds::Squared },
    Entry { name: "paviani", fixed_dim: None, bounds: Bounds::Cube(2.0, 10.0) },
    Entry { name: "periodic", fixed_dim: None, bounds: Bounds::Cube(-10.0, 10.0) },
    Entry { name: "salomon", fixed_dim: None, bounds: Bounds::Cube(-100.0, 100.0) },
    Entry { name: "shubert-product", fixed_dim: None, bounds: Bounds::Cube(-10.0, 10.0) },
    Entry { name: "sine-product", fixed_dim: None, bounds: Bounds::Cube(0.0, 180.0) },
    Entry { name: "michalewicz", fixed_dim: None, bounds: Bounds::Cube(0.0, PI) },
    Entry { name: "whitley", fixed_dim: None, bounds: Bounds::Cube(-100.0, 100.0) },
];

fn entry(id: usize) -> Result<&'static Entry> {
    if (1..=FUNCTION_COUNT).contains(&id) {
        Ok(&ENTRIES[id - 1])
    } else {
        Err(HiseaError::UnknownFunction(id))
    }
}

/// Default dimension: 2 for f11-f13, 30 otherwise.
pub fn default_dim(id: usize) -> Result<usize> {
    Ok(entry(id)?.fixed_dim.unwrap_or(30))
}

/// Optimum value printed alongside the benchmark results, generalized to `n`
/// where it depends on the dimension. `None` where no optimum is known.
fn known_optimum(id: usize, n: usize) -> Option<f64> {
    let n = n as f64;
    match id {
        9 | 21 | 24 | 27 | 29 | 30 => None,
        11 => Some(-1.0316),
        12 => Some(0.3980),
        13 => Some(3.0),
        19 => Some(-(n - 1.0)),
        23 => Some(-n * (n + 4.0) * (n - 1.0) / 6.0),
        25 => Some(0.9),
        28 => Some(-3.5),
        _ => Some(0.0),
    }
}

/// Spec of function `id` at its default dimension.
pub fn spec(id: usize) -> Result<BenchmarkSpec> {
    spec_with_dim(id, default_dim(id)?)
}

/// Spec of function `id` at dimension `n`. The 2-d functions only accept
/// `n = 2`.
pub fn spec_with_dim(id: usize, n: usize) -> Result<BenchmarkSpec> {
    let e = entry(id)?;
    if let Some(fixed) = e.fixed_dim {
        if n != fixed {
            return Err(HiseaError::DimensionMismatch { expected: fixed, actual: n });
        }
    }
    if n == 0 {
        return Err(HiseaError::InvalidSpace("at least one dimension is required".into()));
    }
    let space = match e.bounds {
        Bounds::Cube(lo, hi) => SearchSpace::cube(n, lo, hi)?,
        Bounds::Squared => {
            let r = (n * n) as f64;
            SearchSpace::cube(n, -r, r)?
        }
        Bounds::Boxes(b) => SearchSpace::new(b.iter().map(|p| p.0).collect(), b.iter().map(|p| p.1).collect())?,
    };
    Ok(BenchmarkSpec {
        id,
        name: e.name,
        default_dim: e.fixed_dim.unwrap_or(30),
        space,
        known_optimum: known_optimum(id, n),
    })
}

/// All thirty specs in id order.
pub fn registry() -> Vec<BenchmarkSpec> {
    (1..=FUNCTION_COUNT).map(|id| spec(id).expect("registry ids are valid")).collect()
}

/// Evaluates function `id` at `x` after checking the dimension and box of
/// its default spec.
pub fn evaluate(id: usize, x: &[f64]) -> Result<f64> {
    Benchmark::new(id)?.evaluate_checked(x)
}

/// A benchmark function bound to a dimension, usable as a [`Problem`].
#[derive(Debug, Clone)]
pub struct Benchmark {
    spec: BenchmarkSpec,
}

impl Benchmark {
    pub fn new(id: usize) -> Result<Self> {
        Ok(Self { spec: spec(id)? })
    }

    pub fn with_dim(id: usize, n: usize) -> Result<Self> {
        Ok(Self { spec: spec_with_dim(id, n)? })
    }

    pub fn spec(&self) -> &BenchmarkSpec {
        &self.spec
    }

    pub fn id(&self) -> usize {
        self.spec.id
    }

    /// Value at `x`, rejecting points outside the box and singular values
    /// (f24 at its bounds).
    pub fn evaluate_checked(&self, x: &[f64]) -> Result<f64> {
        self.spec.space.check(x)?;
        let f = formula(self.spec.id, x);
        if f.is_finite() {
            Ok(f)
        } else {
            Err(HiseaError::NonFiniteFitness { fitness: f, x: x.to_vec() })
        }
    }
}

impl Problem for Benchmark {
    fn space(&self) -> &SearchSpace {
        &self.spec.space
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        formula(self.spec.id, x)
    }
}

/// Raw formula of function `id` with no checks. Panics on an unknown id.
pub fn formula(id: usize, x: &[f64]) -> f64 {
    match id {
        1 => sphere(x),
        2 => schwefel_2_22(x),
        3 => schwefel_1_2(x),
        4 => schwefel_2_21(x),
        5 => rosenbrock(x),
        6 => quartic(x),
        7 => rastrigin(x),
        8 => griewank(x),
        9 => schwefel_2_26(x),
        10 => ackley(x),
        11 => six_hump_camel(x),
        12 => branin(x),
        13 => goldstein_price(x),
        14 => elliptic(x),
        15 => levy(x),
        16 => zakharov(x),
        17 => alpine(x),
        18 => schaffer_chain(x),
        19 => exp_cosine_chain(x),
        20 => cosine_mixture(x),
        21 => rotated_michalewicz(x),
        22 => levy_montalvo(x),
        23 => trid(x),
        24 => paviani(x),
        25 => periodic(x),
        26 => salomon(x),
        27 => shubert_product(x),
        28 => sine_product(x),
        29 => michalewicz(x),
        30 => whitley(x),
        _ => panic!("unknown benchmark function id {id}"),
    }
}

fn sq(v: f64) -> f64 {
    v * v
}

/// `sum x_i^2`
pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|&v| v * v).sum()
}

/// `sum |x_i| + prod |x_i|`
pub fn schwefel_2_22(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum::<f64>() + x.iter().map(|v| v.abs()).product::<f64>()
}

/// `sum_i (sum_{j<=i} x_j)^2`
pub fn schwefel_1_2(x: &[f64]) -> f64 {
    x.iter()
        .scan(0.0, |acc, &v| {
            *acc += v;
            Some(*acc * *acc)
        })
        .sum()
}

/// `max |x_i|`
pub fn schwefel_2_21(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// `sum_{i<n} 100 (x_{i+1} - x_i^2)^2 + (x_i - 1)^2`
pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2).map(|w| 100.0 * sq(w[1] - w[0] * w[0]) + sq(w[0] - 1.0)).sum()
}

/// `sum i x_i^4`
pub fn quartic(x: &[f64]) -> f64 {
    x.iter().enumerate().map(|(i, &v)| (i + 1) as f64 * v.powi(4)).sum()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    x.iter().map(|&v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0).sum()
}

pub fn griewank(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|&v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, &v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    sum - prod + 1.0
}

/// `-sum x_i sin(sqrt |x_i|)`
pub fn schwefel_2_26(x: &[f64]) -> f64 {
    -x.iter().map(|&v| v * v.abs().sqrt().sin()).sum::<f64>()
}

pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq_mean = x.iter().map(|&v| v * v).sum::<f64>() / n;
    let cos_mean = x.iter().map(|&v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    -20.0 * (-0.2 * sq_mean.sqrt()).exp() - cos_mean.exp() + 20.0 + E
}

pub fn six_hump_camel(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    4.0 * a * a - 2.1 * a.powi(4) + a.powi(6) / 3.0 + a * b - 4.0 * b * b + 4.0 * b.powi(4)
}

/// Branin with `5 / (4 pi^2)` as the quadratic coefficient.
pub fn branin(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    sq(b - 5.0 / (4.0 * PI * PI) * a * a + 5.0 / PI * a - 6.0) + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * a.cos() + 10.0
}

pub fn goldstein_price(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let left = 1.0 + sq(a + b + 1.0) * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    let right = 30.0 + sq(2.0 * a - 3.0 * b) * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
    left * right
}

/// `sum 10^(6 (i-1)/(n-1)) (x_i + 100)^2`
pub fn elliptic(x: &[f64]) -> f64 {
    let n = x.len();
    x.iter()
        .enumerate()
        .map(|(i, &v)| {
            let exponent = if n > 1 { 6.0 * i as f64 / (n - 1) as f64 } else { 0.0 };
            10f64.powf(exponent) * sq(v + 100.0)
        })
        .sum()
}

pub fn levy(x: &[f64]) -> f64 {
    let n = x.len();
    let g = sq((PI * x[0]).sin())
        + x.windows(2)
            .map(|w| sq(w[0] - 1.0) * (1.0 + 10.0 * sq((PI * w[1]).sin())))
            .sum::<f64>();
    let last = x[n - 1];
    let h = sq(last - 1.0) * (1.0 + 10.0 * sq((2.0 * PI * last).sin()));
    g + h
}

pub fn zakharov(x: &[f64]) -> f64 {
    let s: f64 = x.iter().enumerate().map(|(i, &v)| 0.5 * (i + 1) as f64 * v).sum();
    sphere(x) + s * s + s.powi(4)
}

/// `sum |x_i sin x_i + 0.1 x_i|`
pub fn alpine(x: &[f64]) -> f64 {
    x.iter().map(|&v| (v * v.sin() + 0.1 * v).abs()).sum()
}

pub fn schaffer_chain(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let num = sq((100.0 * a * a + b * b).sqrt().sin()) - 0.5;
            let den = 1.0 + 0.001 * sq(a * a - 2.0 * a * b + b * b);
            0.5 + num / den
        })
        .sum()
}

pub fn exp_cosine_chain(x: &[f64]) -> f64 {
    -x.windows(2)
        .map(|w| {
            let r = w[0] * w[0] + w[1] * w[1] + 0.5 * w[0] * w[1];
            (-r / 8.0).exp() * (4.0 * r.sqrt()).cos()
        })
        .sum::<f64>()
}

/// `0.1 n - (0.1 sum cos(5 pi x_i) - sum x_i^2)`
pub fn cosine_mixture(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let cosines: f64 = x.iter().map(|&v| (5.0 * PI * v).cos()).sum();
    0.1 * n - (0.1 * cosines - sphere(x))
}

fn michalewicz_term(i: usize, y: f64) -> f64 {
    (y * y).sin() * ((i as f64 * y * y / PI).sin()).powi(2 * MICHALEWICZ_M)
}

/// Michalewicz on coordinates rotated pairwise by `pi/6`; the last
/// coordinate is left as is.
pub fn rotated_michalewicz(x: &[f64]) -> f64 {
    let n = x.len();
    let (s, c) = ROTATION.sin_cos();
    -(1..=n)
        .map(|i| {
            let y = if i == n {
                x[i - 1]
            } else if i % 2 == 1 {
                x[i - 1] * c - x[i] * s
            } else {
                x[i - 1] * s + x[i] * c
            };
            michalewicz_term(i, y)
        })
        .sum::<f64>()
}

pub fn levy_montalvo(x: &[f64]) -> f64 {
    let n = x.len();
    let last = x[n - 1];
    let h = sq((3.0 * PI * x[0]).sin()) + sq(last - 1.0) * (1.0 + 10.0 * sq((2.0 * PI * last).sin()));
    let g: f64 = x
        .windows(2)
        .map(|w| sq(w[0] - 1.0) * (1.0 + 10.0 * sq((3.0 * PI * w[1]).sin())))
        .sum();
    0.1 * (h + g)
}

/// `sum (x_i - 1)^2 - sum_{i>=2} x_i x_{i-1}`
pub fn trid(x: &[f64]) -> f64 {
    x.iter().map(|&v| sq(v - 1.0)).sum::<f64>() - x.windows(2).map(|w| w[0] * w[1]).sum::<f64>()
}

/// Infinite at `x_i = 2` or `x_i = 10`.
pub fn paviani(x: &[f64]) -> f64 {
    let logs: f64 = x.iter().map(|&v| sq((v - 2.0).ln()) + sq((10.0 - v).ln())).sum();
    logs - x.iter().product::<f64>().powf(0.2)
}

pub fn periodic(x: &[f64]) -> f64 {
    1.0 + x.iter().map(|&v| sq(v.sin())).sum::<f64>() - 0.1 * x.iter().map(|&v| (-v * v).exp()).product::<f64>()
}

pub fn salomon(x: &[f64]) -> f64 {
    let r = sphere(x).sqrt();
    1.0 - (2.0 * PI * r).cos() + 0.1 * r
}

/// `prod_i sum_{j=1..5} j cos((j+1) x_i + j)`
pub fn shubert_product(x: &[f64]) -> f64 {
    x.iter()
        .map(|&v| (1..=5).map(|j| j as f64 * ((j + 1) as f64 * v + j as f64).cos()).sum::<f64>())
        .product()
}

pub fn sine_product(x: &[f64]) -> f64 {
    let deg = PI / 180.0;
    let a: f64 = x.iter().map(|&v| ((v - 30.0) * deg).sin()).product();
    let b: f64 = x.iter().map(|&v| (5.0 * (v - 30.0) * deg).sin()).product();
    -2.5 * a - b
}

pub fn michalewicz(x: &[f64]) -> f64 {
    -x.iter().enumerate().map(|(i, &v)| michalewicz_term(i + 1, v)).sum::<f64>()
}

/// `sum_j sum_i y_ij / 4000 - cos(y_ij) + 1` with
/// `y_ij = 100 (x_j - x_i^2)^2 + (1 - x_i)^2`.
pub fn whitley(x: &[f64]) -> f64 {
    let mut total = 0.0;
    for &xj in x {
        for &xi in x {
            let y = 100.0 * sq(xj - xi * xi) + sq(1.0 - xi);
            total += y / 4000.0 - y.cos() + 1.0;
        }
    }
    total
}
