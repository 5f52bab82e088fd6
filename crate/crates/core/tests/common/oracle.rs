//! Second, independently written copy of the thirty benchmark formulas.
//! Loops run over 1-based indices to mirror the printed sums and products.

use std::f64::consts::{E, PI};

fn x_(x: &[f64], i: usize) -> f64 {
    x[i - 1]
}

pub fn f(id: usize, x: &[f64]) -> f64 {
    let n = x.len();
    match id {
        1 => (1..=n).map(|i| x_(x, i).powi(2)).sum(),
        2 => {
            let mut s = 0.0;
            let mut p = 1.0;
            for i in 1..=n {
                s += x_(x, i).abs();
                p *= x_(x, i).abs();
            }
            s + p
        }
        3 => {
            let mut total = 0.0;
            for i in 1..=n {
                let mut inner = 0.0;
                for j in 1..=i {
                    inner += x_(x, j);
                }
                total += inner.powi(2);
            }
            total
        }
        4 => (1..=n).map(|i| x_(x, i).abs()).fold(0.0, f64::max),
        5 => (1..n)
            .map(|i| 100.0 * (x_(x, i + 1) - x_(x, i).powi(2)).powi(2) + (x_(x, i) - 1.0).powi(2))
            .sum(),
        6 => (1..=n).map(|i| i as f64 * x_(x, i).powi(4)).sum(),
        7 => (1..=n)
            .map(|i| x_(x, i).powi(2) - 10.0 * (2.0 * PI * x_(x, i)).cos() + 10.0)
            .sum(),
        8 => {
            let s: f64 = (1..=n).map(|i| x_(x, i).powi(2)).sum();
            let p: f64 = (1..=n).map(|i| (x_(x, i) / (i as f64).sqrt()).cos()).product();
            s / 4000.0 - p + 1.0
        }
        9 => -(1..=n).map(|i| x_(x, i) * x_(x, i).abs().sqrt().sin()).sum::<f64>(),
        10 => {
            let nf = n as f64;
            let s2: f64 = (1..=n).map(|i| x_(x, i).powi(2)).sum();
            let sc: f64 = (1..=n).map(|i| (2.0 * PI * x_(x, i)).cos()).sum();
            -20.0 * (-0.2 * (s2 / nf).sqrt()).exp() - (sc / nf).exp() + 20.0 + E
        }
        11 => {
            let (a, b) = (x[0], x[1]);
            4.0 * a.powi(2) - 2.1 * a.powi(4) + a.powi(6) / 3.0 + a * b - 4.0 * b.powi(2) + 4.0 * b.powi(4)
        }
        12 => {
            let (a, b) = (x[0], x[1]);
            (b - 5.0 / (4.0 * PI * PI) * a * a + 5.0 / PI * a - 6.0).powi(2) + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * a.cos() + 10.0
        }
        13 => {
            let (a, b) = (x[0], x[1]);
            let left = 1.0 + (a + b + 1.0).powi(2) * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
            let right = 30.0
                + (2.0 * a - 3.0 * b).powi(2) * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
            left * right
        }
        14 => {
            let mut s = 0.0;
            for i in 1..=n {
                let e = if n > 1 { 6.0 * (i - 1) as f64 / (n - 1) as f64 } else { 0.0 };
                s += 10f64.powf(e) * (x_(x, i) + 100.0).powi(2);
            }
            s
        }
        15 => {
            let mut g = (PI * x_(x, 1)).sin().powi(2);
            for i in 1..n {
                g += (x_(x, i) - 1.0).powi(2) * (1.0 + 10.0 * (PI * x_(x, i + 1)).sin().powi(2));
            }
            let h = (x_(x, n) - 1.0).powi(2) * (1.0 + 10.0 * (2.0 * PI * x_(x, n)).sin().powi(2));
            g + h
        }
        16 => {
            let s: f64 = (1..=n).map(|i| x_(x, i).powi(2)).sum();
            let t: f64 = (1..=n).map(|i| 0.5 * i as f64 * x_(x, i)).sum();
            s + t.powi(2) + t.powi(4)
        }
        17 => (1..=n).map(|i| (x_(x, i) * x_(x, i).sin() + 0.1 * x_(x, i)).abs()).sum(),
        18 => {
            let mut s = 0.0;
            for i in 1..n {
                let (a, b) = (x_(x, i), x_(x, i + 1));
                let num = (100.0 * a * a + b * b).sqrt().sin().powi(2) - 0.5;
                let den = 1.0 + 0.001 * (a * a - 2.0 * a * b + b * b).powi(2);
                s += 0.5 + num / den;
            }
            s
        }
        19 => {
            let mut s = 0.0;
            for i in 1..n {
                let (a, b) = (x_(x, i), x_(x, i + 1));
                let r = a * a + b * b + 0.5 * a * b;
                s += (-r / 8.0).exp() * (4.0 * r.sqrt()).cos();
            }
            -s
        }
        20 => {
            let c: f64 = (1..=n).map(|i| (5.0 * PI * x_(x, i)).cos()).sum();
            let q: f64 = (1..=n).map(|i| x_(x, i).powi(2)).sum();
            0.1 * n as f64 - (0.1 * c - q)
        }
        21 => {
            let th = PI / 6.0;
            let mut s = 0.0;
            for i in 1..=n {
                let y = if i == n {
                    x_(x, i)
                } else if i % 2 == 1 {
                    x_(x, i) * th.cos() - x_(x, i + 1) * th.sin()
                } else {
                    x_(x, i) * th.sin() + x_(x, i + 1) * th.cos()
                };
                s += (y * y).sin() * (i as f64 * y * y / PI).sin().powi(20);
            }
            -s
        }
        22 => {
            let h = (3.0 * PI * x_(x, 1)).sin().powi(2)
                + (x_(x, n) - 1.0).powi(2) * (1.0 + 10.0 * (2.0 * PI * x_(x, n)).sin().powi(2));
            let mut g = 0.0;
            for i in 1..n {
                g += (x_(x, i) - 1.0).powi(2) * (1.0 + 10.0 * (3.0 * PI * x_(x, i + 1)).sin().powi(2));
            }
            0.1 * (h + g)
        }
        23 => {
            let a: f64 = (1..=n).map(|i| (x_(x, i) - 1.0).powi(2)).sum();
            let b: f64 = (2..=n).map(|i| x_(x, i) * x_(x, i - 1)).sum();
            a - b
        }
        24 => {
            let mut s = 0.0;
            let mut p = 1.0;
            for i in 1..=n {
                s += (x_(x, i) - 2.0).ln().powi(2) + (10.0 - x_(x, i)).ln().powi(2);
                p *= x_(x, i);
            }
            s - p.powf(0.2)
        }
        25 => {
            let s: f64 = (1..=n).map(|i| x_(x, i).sin().powi(2)).sum();
            let p: f64 = (1..=n).map(|i| (-x_(x, i).powi(2)).exp()).product();
            1.0 + s - 0.1 * p
        }
        26 => {
            let r = (1..=n).map(|i| x_(x, i).powi(2)).sum::<f64>().sqrt();
            1.0 - (2.0 * PI * r).cos() + 0.1 * r
        }
        27 => {
            let mut p = 1.0;
            for i in 1..=n {
                let mut s = 0.0;
                for j in 1..=5 {
                    let jf = j as f64;
                    s += jf * ((jf + 1.0) * x_(x, i) + jf).cos();
                }
                p *= s;
            }
            p
        }
        28 => {
            let mut a = 1.0;
            let mut b = 1.0;
            for i in 1..=n {
                a *= ((x_(x, i) - 30.0) * PI / 180.0).sin();
                b *= (5.0 * (x_(x, i) - 30.0) * PI / 180.0).sin();
            }
            -2.5 * a - b
        }
        29 => {
            let mut s = 0.0;
            for i in 1..=n {
                let v = x_(x, i);
                s += (v * v).sin() * (i as f64 * v * v / PI).sin().powi(20);
            }
            -s
        }
        30 => {
            let mut s = 0.0;
            for j in 1..=n {
                for i in 1..=n {
                    let y = 100.0 * (x_(x, j) - x_(x, i).powi(2)).powi(2) + (1.0 - x_(x, i)).powi(2);
                    s += y / 4000.0 - y.cos() + 1.0;
                }
            }
            s
        }
        _ => panic!("no oracle for f{id}"),
    }
}
