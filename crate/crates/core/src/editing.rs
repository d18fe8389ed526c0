//! Stochastic genotype editing.
//!
//! An [`Editor`] is a short bit pattern with a concentration and an insert or
//! delete function. During transcription each editor in a family gets one
//! chance to fire on the current transcript, with probability equal to its
//! concentration. When it fires and its pattern occurs in the transcript, the
//! leftmost occurrence is edited right after the matched substring. Edits
//! never change the chromosome length: insertions push the tail off the end,
//! deletions pull it in and refill the end with random alleles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GaeError, Result};
use crate::genome::BitString;
use crate::rng::RandomSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum EditFunction {
    /// Insert `d` random alleles after the match.
    Insert(usize),
    /// Delete `d` alleles after the match.
    Delete(usize),
}

impl EditFunction {
    pub fn amount(self) -> usize {
        match self {
            EditFunction::Insert(d) | EditFunction::Delete(d) => d,
        }
    }

    fn validate(self) -> Result<Self> {
        if self.amount() == 0 {
            Err(GaeError::ZeroEditAmount)
        } else {
            Ok(self)
        }
    }
}

impl fmt::Display for EditFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EditFunction::Insert(d) => write!(f, "insert {d}"),
            EditFunction::Delete(d) => write!(f, "delete {d}"),
        }
    }
}

/// Parses `"insert 3"` / `"delete 1"` (also accepts `add`).
impl FromStr for EditFunction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut parts = s.split_whitespace();
        let (Some(kind), Some(amount), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(format!("expected `insert <n>` or `delete <n>`, got {s:?}"));
        };
        let d: usize = amount
            .parse()
            .map_err(|_| format!("bad edit amount {amount:?}"))?;
        let f = match kind.to_ascii_lowercase().as_str() {
            "insert" | "add" => EditFunction::Insert(d),
            "delete" => EditFunction::Delete(d),
            other => return Err(format!("unknown edit kind {other:?}")),
        };
        f.validate().map_err(|e| e.to_string())
    }
}

impl TryFrom<String> for EditFunction {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

impl From<EditFunction> for String {
    fn from(f: EditFunction) -> String {
        f.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Editor {
    pub pattern: BitString,
    pub concentration: f64,
    pub function: EditFunction,
}

impl Editor {
    pub fn new(pattern: BitString, concentration: f64, function: EditFunction) -> Result<Self> {
        if pattern.is_empty() {
            return Err(GaeError::EmptyPattern);
        }
        if !(0.0..=1.0).contains(&concentration) {
            return Err(GaeError::RateOutOfRange {
                name: "concentration",
                value: concentration,
            });
        }
        Ok(Self {
            pattern,
            concentration,
            function: function.validate()?,
        })
    }

    /// Shorthand used by presets and tests: `Editor::parse("1110", 0.0635, "delete 4")`.
    pub fn parse(pattern: &str, concentration: f64, function: &str) -> Result<Self> {
        let function = function.parse().map_err(|_| GaeError::ZeroEditAmount)?;
        Self::new(pattern.parse()?, concentration, function)
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }
}

/// Ordered editor family; transcription applies editors in this order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EditorFamily {
    pub editors: Vec<Editor>,
}

impl EditorFamily {
    pub fn new(editors: Vec<Editor>) -> Self {
        Self { editors }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.editors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.editors.is_empty()
    }

    /// Checks that every pattern is strictly shorter than the chromosome.
    pub fn validate_for(&self, chromosome_len: usize) -> Result<()> {
        for e in &self.editors {
            if e.len() >= chromosome_len {
                return Err(GaeError::PatternTooLong {
                    pattern: e.len(),
                    chromosome: chromosome_len,
                });
            }
        }
        Ok(())
    }
}

/// One applied edit, recorded for editing-frequency statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EditEvent {
    /// Position of the editor in its family.
    pub editor: usize,
    /// Leftmost match offset.
    pub offset: usize,
    pub function: EditFunction,
}

/// Leftmost offset `k` where `pattern` occurs in `s`.
pub fn find_match(pattern: &BitString, s: &BitString) -> Option<usize> {
    let m = pattern.len();
    if m == 0 || m > s.len() {
        return None;
    }
    s.bits().windows(m).position(|w| w == pattern.bits())
}

/// Edits `s` right after a match of length `m` at offset `k`.
///
/// The first position touched is `p = k + m`. Edits reaching past the end of
/// the chromosome are clamped to `n - p` bits; a match ending exactly at the
/// end (`p == n`) leaves `s` unchanged.
pub fn apply_edit(
    s: &BitString,
    k: usize,
    m: usize,
    function: EditFunction,
    rng: &mut RandomSource,
) -> BitString {
    let n = s.len();
    let p = k + m;
    if p >= n {
        return s.clone();
    }
    let count = function.amount().min(n - p);
    let bits = s.bits();
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&bits[..p]);
    match function {
        EditFunction::Delete(_) => {
            out.extend_from_slice(&bits[p + count..]);
            out.extend((0..count).map(|_| rng.allele()));
        }
        EditFunction::Insert(_) => {
            out.extend((0..count).map(|_| rng.allele()));
            out.extend_from_slice(&bits[p..n - count]);
        }
    }
    debug_assert_eq!(out.len(), n);
    BitString::from_raw(out)
}

/// Passes `genotype` through every editor of `family` in order.
///
/// Each editor is encountered with probability equal to its concentration; an
/// encountered editor whose pattern occurs in the current transcript edits
/// the leftmost occurrence once. The genotype itself is not modified.
pub fn transcribe(
    genotype: &BitString,
    family: &EditorFamily,
    rng: &mut RandomSource,
) -> (BitString, Vec<EditEvent>) {
    let mut transcript = genotype.clone();
    let mut events = Vec::new();
    for (j, editor) in family.editors.iter().enumerate() {
        if rng.uniform() >= editor.concentration {
            continue;
        }
        if let Some(k) = find_match(&editor.pattern, &transcript) {
            transcript = apply_edit(&transcript, k, editor.len(), editor.function, rng);
            events.push(EditEvent {
                editor: j,
                offset: k,
                function: editor.function,
            });
        }
    }
    (transcript, events)
}
