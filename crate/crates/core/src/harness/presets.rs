//! Named experiment presets.
//!
//! Every editing preset has a `-plain` twin with identical GA settings and no
//! editors. Families for the size and length sweeps were drawn once with
//! [`generate_editor_family`] and are committed below as literal tables; a
//! unit test checks they still match the generator.

use std::path::PathBuf;

use crate::editing::{EditFunction, Editor, EditorFamily};
use crate::engine::{EditingMode, GaParams};
use crate::problems::{royal_road_schemata, ProblemId};
use crate::rng::RandomSource;

use super::config::ExperimentConfig;

pub const DEFAULT_BASE_SEED: u64 = 1000;

#[derive(Debug, Clone)]
pub struct Preset {
    pub id: String,
    pub description: String,
    pub config: ExperimentConfig,
}

/// Parameters of the random editor-family procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EditorGenSpec {
    pub count: usize,
    pub min_len: usize,
    pub max_len: usize,
    pub seed: u64,
}

/// Draws a random editor family. Per editor, in order: length uniform in
/// `[min_len, max_len]`; that many uniform alleles; concentration uniform in
/// `[0, 1)` rounded to four decimals; insert or delete by a fair coin; amount
/// uniform in `1..=4`.
pub fn generate_editor_family(spec: EditorGenSpec) -> EditorFamily {
    let mut rng = RandomSource::new(spec.seed);
    let editors = (0..spec.count)
        .map(|_| {
            let len = spec.min_len + rng.below(spec.max_len - spec.min_len + 1);
            let pattern: String = (0..len)
                .map(|_| if rng.allele() == 1 { '1' } else { '0' })
                .collect();
            let concentration = (rng.uniform() * 1e4).round() / 1e4;
            let insert = rng.coin();
            let amount = 1 + rng.below(4);
            let function = if insert {
                EditFunction::Insert(amount)
            } else {
                EditFunction::Delete(amount)
            };
            Editor::new(pattern.parse().expect("binary"), concentration, function)
                .expect("generated editor is valid")
        })
        .collect();
    EditorFamily::new(editors)
}

type Row = (&'static str, f64, &'static str);

const RR_TABLE3: [Row; 5] = [
    ("1110", 0.0635, "delete 4"),
    ("0011", 0.0476, "insert 3"),
    ("0101", 0.7302, "delete 1"),
    ("00", 0.2857, "delete 3"),
    ("0111", 0.3175, "delete 2"),
];

const CONTROL_TABLE4: [Row; 5] = [
    ("00110", 0.1410, "delete 2"),
    ("1001", 0.7936, "delete 1"),
    ("01101", 0.2524, "insert 3"),
    ("011", 0.5885, "insert 2"),
    ("111100", 0.0871, "insert 5"),
];

const MICHALEWICZ_EDITORS: [Row; 5] = [
    ("11100", 0.762, "insert 1"),
    ("01011", 0.54, "insert 1"),
    ("11101", 0.254, "insert 5"),
    ("01000", 0.159, "insert 3"),
    ("00000", 0.159, "delete 2"),
];

pub const RR_2EDITORS_SPEC: EditorGenSpec = EditorGenSpec {
    count: 2,
    min_len: 2,
    max_len: 4,
    seed: 2,
};
pub const RR_10EDITORS_SPEC: EditorGenSpec = EditorGenSpec {
    count: 10,
    min_len: 2,
    max_len: 4,
    seed: 10,
};
pub const RR_LEN2_SPEC: EditorGenSpec = EditorGenSpec {
    count: 5,
    min_len: 2,
    max_len: 2,
    seed: 102,
};
pub const RR_LEN10_SPEC: EditorGenSpec = EditorGenSpec {
    count: 5,
    min_len: 10,
    max_len: 10,
    seed: 110,
};

// Drawn by `generate_editor_family(RR_2EDITORS_SPEC)`.
const RR_2EDITORS: [Row; 2] = [("11", 0.0323, "insert 1"), ("0011", 0.9317, "delete 1")];

// Drawn by `generate_editor_family(RR_10EDITORS_SPEC)`.
const RR_10EDITORS: [Row; 10] = [
    ("100", 0.5389, "insert 4"),
    ("110", 0.8246, "delete 2"),
    ("0110", 0.8422, "delete 3"),
    ("101", 0.6973, "insert 3"),
    ("10", 0.2081, "insert 1"),
    ("101", 0.9542, "delete 2"),
    ("11", 0.169, "insert 3"),
    ("0011", 0.2781, "insert 1"),
    ("110", 0.1627, "insert 4"),
    ("00", 0.3797, "insert 4"),
];

// Drawn by `generate_editor_family(RR_LEN2_SPEC)`.
const RR_LEN2: [Row; 5] = [
    ("01", 0.563, "delete 4"),
    ("11", 0.9917, "delete 3"),
    ("00", 0.8212, "delete 1"),
    ("01", 0.2981, "insert 1"),
    ("11", 0.3478, "delete 2"),
];

// Drawn by `generate_editor_family(RR_LEN10_SPEC)`.
const RR_LEN10: [Row; 5] = [
    ("0010100100", 0.9062, "insert 4"),
    ("0001000110", 0.833, "insert 3"),
    ("1011101011", 0.7682, "delete 3"),
    ("0011010100", 0.1564, "insert 4"),
    ("1011001101", 0.4287, "delete 1"),
];

fn family(rows: &[Row]) -> EditorFamily {
    EditorFamily::new(
        rows.iter()
            .map(|&(p, v, f)| Editor::parse(p, v, f).expect("preset editor is valid"))
            .collect(),
    )
}

fn params(population_size: usize) -> GaParams {
    GaParams {
        population_size,
        generations: 200,
        crossover_rate: 0.7,
        mutation_rate: 0.005,
        editing_mode: EditingMode::default(),
    }
}

fn config(
    id: &str,
    problem: ProblemId,
    population: usize,
    runs: usize,
    editors: EditorFamily,
) -> ExperimentConfig {
    let tracked_schemata = match problem {
        ProblemId::RoyalRoadS1 => royal_road_schemata()
            .iter()
            .map(|s| s.template(problem.chromosome_length()))
            .collect(),
        _ => Vec::new(),
    };
    ExperimentConfig {
        name: id.to_string(),
        problem,
        params: params(population),
        editors,
        runs,
        base_seed: DEFAULT_BASE_SEED,
        workers: 0,
        output_dir: PathBuf::from("out").join(id),
        tracked_schemata,
    }
}

fn editing_presets() -> Vec<(String, &'static str, ExperimentConfig)> {
    let rr = |id: &str, fam: EditorFamily| config(id, ProblemId::RoyalRoadS1, 40, 50, fam);

    let mut conc1 = family(&RR_TABLE3);
    for e in &mut conc1.editors {
        e.concentration = 1.0;
    }
    let mut del10 = family(&RR_TABLE3);
    for e in &mut del10.editors {
        e.function = EditFunction::Delete(10);
    }

    vec![
        (
            "rr-table3",
            "Royal Road S1, five-editor reference family",
            rr("rr-table3", family(&RR_TABLE3)),
        ),
        (
            "rr-2editors",
            "Royal Road S1, family of two random editors (length 2-4)",
            rr("rr-2editors", family(&RR_2EDITORS)),
        ),
        (
            "rr-10editors",
            "Royal Road S1, family of ten random editors (length 2-4)",
            rr("rr-10editors", family(&RR_10EDITORS)),
        ),
        (
            "rr-len2",
            "Royal Road S1, five random 2-bit editors",
            rr("rr-len2", family(&RR_LEN2)),
        ),
        (
            "rr-len10",
            "Royal Road S1, five random 10-bit editors",
            rr("rr-len10", family(&RR_LEN10)),
        ),
        (
            "rr-conc1",
            "Royal Road S1, reference family with every concentration set to 1",
            rr("rr-conc1", conc1),
        ),
        (
            "rr-del10",
            "Royal Road S1, reference family with every function set to delete 10",
            rr("rr-del10", del10),
        ),
        (
            "control-table4",
            "Optimal control (60 bits, two 30-bit controls), five-editor family",
            config(
                "control-table4",
                ProblemId::OptimalControl,
                50,
                100,
                family(&CONTROL_TABLE4),
            ),
        ),
        (
            "mich-sec42",
            "Epistatic Michalewicz (N = 5, 10 bits each), five 5-bit editors",
            config(
                "mich-sec42",
                ProblemId::MichalewiczEpistatic,
                50,
                50,
                family(&MICHALEWICZ_EDITORS),
            ),
        ),
    ]
    .into_iter()
    .map(|(id, d, c)| (id.to_string(), d, c))
    .collect()
}

/// All presets: each editing preset followed by its `-plain` baseline.
pub fn list_presets() -> Vec<Preset> {
    let mut out = Vec::new();
    for (id, description, config) in editing_presets() {
        let plain_id = format!("{id}-plain");
        let mut plain = config.clone();
        plain.name = plain_id.clone();
        plain.editors = EditorFamily::empty();
        plain.output_dir = PathBuf::from("out").join(&plain_id);
        out.push(Preset {
            id,
            description: description.to_string(),
            config,
        });
        out.push(Preset {
            id: plain_id,
            description: format!("{description} (baseline without editors)"),
            config: plain,
        });
    }
    out
}

pub fn preset(id: &str) -> Option<Preset> {
    list_presets().into_iter().find(|p| p.id == id)
}
