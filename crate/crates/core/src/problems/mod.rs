//! Benchmark fitness problems and their binary encodings.

mod control;
mod michalewicz;
mod royal_road;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use control::{control_fitness, simulate_plant, OdeState, OptimalControl, DEFAULT_STEP};
pub use michalewicz::{
    michalewicz_epistatic, michalewicz_fitness, rotate_epistatic, EpistaticMichalewicz,
};
pub use royal_road::{royal_road_s1, royal_road_schemata, RoyalRoadS1};

use crate::error::{GaeError, Result};
use crate::genome::BitString;

/// A fitness function over fixed-length chromosomes. Higher is better.
pub trait FitnessProblem: Send + Sync {
    fn chromosome_length(&self) -> usize;

    /// Fitness of `s`. Callers guarantee `s.len() == chromosome_length()`.
    fn evaluate(&self, s: &BitString) -> f64;

    /// Known global optimum, if any.
    fn optimum_fitness(&self) -> Option<f64> {
        None
    }
}

pub(crate) fn check_len(s: &BitString, expected: usize) -> Result<()> {
    if s.len() != expected {
        return Err(GaeError::LengthMismatch {
            expected,
            actual: s.len(),
        });
    }
    Ok(())
}

/// String ids used by configuration files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProblemId {
    #[serde(rename = "royal-road-s1")]
    RoyalRoadS1,
    #[serde(rename = "optimal-control")]
    OptimalControl,
    #[serde(rename = "michalewicz-epistatic")]
    MichalewiczEpistatic,
}

impl ProblemId {
    pub const ALL: [ProblemId; 3] = [
        ProblemId::RoyalRoadS1,
        ProblemId::OptimalControl,
        ProblemId::MichalewiczEpistatic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProblemId::RoyalRoadS1 => "royal-road-s1",
            ProblemId::OptimalControl => "optimal-control",
            ProblemId::MichalewiczEpistatic => "michalewicz-epistatic",
        }
    }

    pub fn chromosome_length(self) -> usize {
        match self {
            ProblemId::RoyalRoadS1 => royal_road::LENGTH,
            ProblemId::OptimalControl => control::LENGTH,
            ProblemId::MichalewiczEpistatic => michalewicz::LENGTH,
        }
    }

    pub fn build(self) -> Box<dyn FitnessProblem> {
        match self {
            ProblemId::RoyalRoadS1 => Box::new(RoyalRoadS1::new()),
            ProblemId::OptimalControl => Box::new(OptimalControl::default()),
            ProblemId::MichalewiczEpistatic => Box::new(EpistaticMichalewicz),
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ProblemId::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| s.to_string())
    }
}

/// A schema: required alleles at some loci, wildcards elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct Schema {
    pub fixed: Vec<(usize, u8)>,
    pub contribution: f64,
}

impl Schema {
    /// Parses a template such as `"11111*****"`.
    pub fn from_template(template: &str, contribution: f64) -> Result<Self> {
        let fixed = template
            .chars()
            .enumerate()
            .filter_map(|(i, c)| match c {
                '*' => None,
                '0' => Some(Ok((i, 0))),
                '1' => Some(Ok((i, 1))),
                other => Some(Err(GaeError::InvalidAllele(other))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            fixed,
            contribution,
        })
    }

    /// Template string of length `n`.
    pub fn template(&self, n: usize) -> String {
        let mut out = vec![b'*'; n];
        for &(i, a) in &self.fixed {
            out[i] = b'0' + a;
        }
        String::from_utf8(out).expect("ascii")
    }

    /// Whether `s` is an instance of the schema. Fixed loci past the end of
    /// `s` never match.
    pub fn matches(&self, s: &BitString) -> bool {
        self.fixed
            .iter()
            .all(|&(i, a)| i < s.len() && s.get(i) == a)
    }
}

/// Maps a bit segment (MSB first) linearly onto `[lo, hi]`.
pub fn decode_real(bits: &[u8], lo: f64, hi: f64) -> f64 {
    assert!(
        !bits.is_empty() && bits.len() <= 53,
        "segment length {} unsupported",
        bits.len()
    );
    let v = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
    let max = ((1u64 << bits.len()) - 1) as f64;
    lo + (v as f64 / max) * (hi - lo)
}
