//! Rotated (epistatic) Michalewicz function.
//!
//! Neighbouring coordinates are rotated by pi/6 in pairs before the usual
//! Michalewicz terms `sin(y_i) sin(i y_i^2 / pi)^(2m)` are summed, with `m = 10`.

use std::f64::consts::PI;

use super::{check_len, decode_real, FitnessProblem};
use crate::error::Result;
use crate::genome::BitString;

pub(super) const LENGTH: usize = 50;
const VARIABLES: usize = 5;
const BITS_PER_VARIABLE: usize = 10;
const STEEPNESS: i32 = 10;

/// Pairwise rotation. With 1-based index `i`: the last coordinate is passed
/// through, odd `i` mixes with `x_{i+1}`, even `i` mixes with `x_{i-1}`.
pub fn rotate_epistatic(x: &[f64]) -> Vec<f64> {
    let (s, c) = (PI / 6.0).sin_cos();
    let n = x.len();
    (0..n)
        .map(|k| {
            let i = k + 1;
            if i == n {
                x[k]
            } else if i % 2 == 1 {
                x[k] * c - x[k + 1] * s
            } else {
                x[k - 1] * s + x[k] * c
            }
        })
        .collect()
}

pub fn michalewicz_epistatic(x: &[f64]) -> f64 {
    rotate_epistatic(x)
        .iter()
        .enumerate()
        .map(|(k, &y)| {
            let i = (k + 1) as f64;
            y.sin() * (i * y * y / PI).sin().powi(2 * STEEPNESS)
        })
        .sum()
}

/// Five 10-bit variables in `[0, pi]`.
pub fn decode_variables(s: &BitString) -> Vec<f64> {
    s.bits()
        .chunks_exact(BITS_PER_VARIABLE)
        .take(VARIABLES)
        .map(|seg| decode_real(seg, 0.0, PI))
        .collect()
}

pub fn michalewicz_fitness(s: &BitString) -> Result<f64> {
    check_len(s, LENGTH)?;
    Ok(michalewicz_epistatic(&decode_variables(s)))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EpistaticMichalewicz;

impl FitnessProblem for EpistaticMichalewicz {
    fn chromosome_length(&self) -> usize {
        LENGTH
    }

    fn evaluate(&self, s: &BitString) -> f64 {
        michalewicz_epistatic(&decode_variables(s))
    }
}
