//! Small Royal Road S1: eight contiguous 5-bit all-ones blocks over 40 bits,
//! each worth 10.

use super::{check_len, FitnessProblem, Schema};
use crate::error::Result;
use crate::genome::BitString;

pub(super) const LENGTH: usize = 40;
const BLOCK: usize = 5;
const BLOCKS: usize = 8;
const CONTRIBUTION: f64 = 10.0;

/// The eight S1 schemata, block `i` covering loci `[5i, 5i + 5)`.
pub fn royal_road_schemata() -> Vec<Schema> {
    (0..BLOCKS)
        .map(|i| Schema {
            fixed: (i * BLOCK..(i + 1) * BLOCK).map(|p| (p, 1)).collect(),
            contribution: CONTRIBUTION,
        })
        .collect()
}

pub fn royal_road_s1(s: &BitString) -> Result<f64> {
    check_len(s, LENGTH)?;
    Ok(block_sum(s))
}

fn block_sum(s: &BitString) -> f64 {
    s.bits()
        .chunks_exact(BLOCK)
        .filter(|block| block.iter().all(|&b| b == 1))
        .count() as f64
        * CONTRIBUTION
}

#[derive(Debug, Clone, Default)]
pub struct RoyalRoadS1;

impl RoyalRoadS1 {
    pub fn new() -> Self {
        Self
    }
}

impl FitnessProblem for RoyalRoadS1 {
    fn chromosome_length(&self) -> usize {
        LENGTH
    }

    fn evaluate(&self, s: &BitString) -> f64 {
        debug_assert_eq!(s.len(), LENGTH);
        block_sum(s)
    }

    fn optimum_fitness(&self) -> Option<f64> {
        Some(BLOCKS as f64 * CONTRIBUTION)
    }
}
