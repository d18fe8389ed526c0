//! Chromosomes, individuals and populations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GaeError, Result};
use crate::rng::RandomSource;

/// Fixed-length binary chromosome. Every element is 0 or 1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BitString(Vec<u8>);

impl BitString {
    /// Builds a chromosome from 0/1 values.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(GaeError::InvalidAllele(char::from(b'0'.wrapping_add(b))));
        }
        Ok(Self(bits))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![1; n])
    }

    /// Uniformly random chromosome of length `n`.
    pub fn random(n: usize, rng: &mut RandomSource) -> Result<Self> {
        if n == 0 {
            return Err(GaeError::LengthTooShort { len: 0, min: 1 });
        }
        Ok(Self((0..n).map(|_| rng.allele()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// Flips the allele at `i`.
    pub fn flip(&mut self, i: usize) {
        self.0[i] ^= 1;
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|b| b ^ 1).collect())
    }

    /// Copy of the alleles in `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self(self.0[range].to_vec())
    }

    /// Unsigned value of the bits, most significant first. Panics past 64 bits.
    pub fn to_u64(&self) -> u64 {
        assert!(
            self.len() <= 64,
            "segment of {} bits overflows u64",
            self.len()
        );
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub(crate) fn from_raw(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Self(bits)
    }

    pub(crate) fn bits_mut(&mut self) -> &mut [u8] {
        &mut self.0
    }
}

/// Uniformly random chromosome of length `n`; `n = 0` is rejected.
pub fn random_bitstring(n: usize, rng: &mut RandomSource) -> Result<BitString> {
    BitString::random(n, rng)
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = GaeError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(GaeError::InvalidAllele(other)),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Self)
    }
}

impl TryFrom<String> for BitString {
    type Error = GaeError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BitString> for String {
    fn from(b: BitString) -> String {
        b.to_string()
    }
}

/// An agent: heritable genotype plus the transcript evaluated this generation.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genotype: BitString,
    pub last_transcript: BitString,
    /// Fitness of `last_transcript`. `NaN` until evaluated.
    pub fitness: f64,
    pub edits_this_generation: usize,
}

impl Individual {
    pub fn new(genotype: BitString) -> Self {
        Self {
            last_transcript: genotype.clone(),
            genotype,
            fitness: f64::NAN,
            edits_this_generation: 0,
        }
    }

    pub fn is_evaluated(&self) -> bool {
        !self.fitness.is_nan()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub members: Vec<Individual>,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        Self { members }
    }

    pub fn from_genotypes(genotypes: impl IntoIterator<Item = BitString>) -> Self {
        Self::new(genotypes.into_iter().map(Individual::new).collect())
    }

    /// `size` uniformly random members of chromosome length `n`.
    pub fn random(size: usize, n: usize, rng: &mut RandomSource) -> Result<Self> {
        let genotypes = (0..size)
            .map(|_| BitString::random(n, rng))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_genotypes(genotypes))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn fitnesses(&self) -> Vec<f64> {
        self.members.iter().map(|m| m.fitness).collect()
    }

    /// Index of the first member with the highest fitness.
    pub fn best_index(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, m) in self.members.iter().enumerate() {
            match best {
                Some(b) if self.members[b].fitness >= m.fitness => {}
                _ if m.fitness.is_nan() => {}
                _ => best = Some(i),
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s: BitString = "0110".parse().unwrap();
        assert_eq!(s.bits(), &[0, 1, 1, 0]);
        assert_eq!(s.to_string(), "0110");
        assert_eq!(
            "01x".parse::<BitString>(),
            Err(GaeError::InvalidAllele('x'))
        );
        assert!(BitString::from_bits(vec![0, 2]).is_err());
    }

    #[test]
    fn random_is_reproducible() {
        let a = random_bitstring(40, &mut RandomSource::new(99)).unwrap();
        let b = random_bitstring(40, &mut RandomSource::new(99)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 40);
        assert_eq!(
            random_bitstring(1, &mut RandomSource::new(0))
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn zero_length_rejected() {
        assert!(matches!(
            random_bitstring(0, &mut RandomSource::new(0)),
            Err(GaeError::LengthTooShort { .. })
        ));
    }

    #[test]
    fn per_locus_frequency_near_half() {
        let mut rng = RandomSource::new(2024);
        let mut ones = [0usize; 40];
        let samples = 10_000;
        for _ in 0..samples {
            let s = random_bitstring(40, &mut rng).unwrap();
            for (i, &b) in s.bits().iter().enumerate() {
                ones[i] += b as usize;
            }
        }
        for c in ones {
            let f = c as f64 / samples as f64;
            assert!((0.45..=0.55).contains(&f), "locus frequency {f}");
        }
    }

    #[test]
    fn msb_first_value() {
        let s: BitString = "1011".parse().unwrap();
        assert_eq!(s.to_u64(), 11);
    }

    #[test]
    fn best_index_picks_first_max() {
        let mut p = Population::from_genotypes(vec![BitString::zeros(2); 3]);
        for (m, f) in p.members.iter_mut().zip([1.0, 5.0, 5.0]) {
            m.fitness = f;
        }
        assert_eq!(p.best_index(), Some(1));
    }
}
