#![allow(dead_code)]

pub mod oracle;

use hisea::SearchSpace;
use rand::Rng;

pub fn random_point<R: Rng>(space: &SearchSpace, rng: &mut R) -> Vec<f64> {
    space.lower().iter().zip(space.upper()).map(|(&lo, &hi)| rng.gen_range(lo..hi)).collect()
}
