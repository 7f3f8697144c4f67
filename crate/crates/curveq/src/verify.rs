//! The `verify-paper` battery: replays the built-in example pairs end to end
//! against the expected values recorded in `fixtures/paper.json`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::fricke::trace_polynomial;
use crate::heights::{breakpoints_and_jumps, parse_points};
use crate::homology::{homology_class, plus_minus_equal, GeneratorImageMap};
use crate::pants::{arc_tuple_with, si_equivalent_in_pants, BoundaryConvention};
use crate::pit::{diagonal_witness, pit_trace_equiv, PitOutcome};
use crate::sl2::SamplerConfig;
use crate::word::{are_conjugate, cyclic_reduce, Generator, Word};

const FIXTURES: &str = include_str!("../fixtures/paper.json");

#[derive(Deserialize)]
struct Fixtures {
    horowitz: HorowitzFixture,
    pit_samples: u64,
    pants: PantsFixture,
    homology: HomologyFixture,
    diagonal: DiagonalFixture,
    heights: Vec<HeightsFixture>,
}

#[derive(Deserialize)]
struct HorowitzFixture {
    g: String,
    h: String,
    character: String,
}

#[derive(Deserialize)]
struct PantsFixture {
    curve1: String,
    curve2: String,
    tuple: Value,
}

#[derive(Deserialize)]
struct HomologyFixture {
    class1: Vec<i64>,
    class2: Vec<i64>,
}

#[derive(Deserialize)]
struct DiagonalFixture {
    phi: BTreeMap<String, i64>,
    trace_squares: (String, String),
}

#[derive(Deserialize, Serialize, Clone)]
struct HeightsFixture {
    points: String,
    breakpoints: Vec<FixtureBreakpoint>,
    length: f64,
}

#[derive(Deserialize, Serialize, Clone, Copy)]
struct FixtureBreakpoint {
    theta: f64,
    jump: f64,
}

#[derive(Serialize, Clone)]
pub struct CheckResult {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

#[derive(Serialize, Clone)]
pub struct PaperReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl PaperReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn fixtures() -> Fixtures {
    serde_json::from_str(FIXTURES).expect("fixtures file is valid")
}

fn word(text: &str) -> Word {
    Word::parse(text, 2).expect("fixture words are valid")
}

pub fn run_paper_battery(seed: u64, convention: BoundaryConvention) -> PaperReport {
    let fix = fixtures();
    let g = word(&fix.horowitz.g);
    let h = word(&fix.horowitz.h);
    let curve1 = word(&fix.pants.curve1);
    let curve2 = word(&fix.pants.curve2);
    let mut checks = Vec::new();

    // 1. the trace-equivalent pair is not conjugate, even up to inverses
    let conjugate = are_conjugate(&g, &h, true).expect("nonidentity");
    checks.push(CheckResult {
        name: "horowitz-nonconjugacy".into(),
        expected: json!({ "conjugate": false }),
        computed: json!({ "conjugate": conjugate }),
        pass: !conjugate,
    });

    // 2. the characters agree symbolically and match the recorded polynomial
    let pg = trace_polynomial(&g).expect("rank 2");
    let ph = trace_polynomial(&h).expect("rank 2");
    let character_matches =
        pg == ph && pg.to_string() == fix.horowitz.character;
    checks.push(CheckResult {
        name: "fricke-trace-equality".into(),
        expected: json!({ "equal": true, "character": fix.horowitz.character }),
        computed: json!({
            "equal": pg == ph,
            "character_g": pg.to_string(),
            "character_h": ph.to_string(),
        }),
        pass: character_matches,
    });

    // 3. randomized refutation finds nothing for the trace-equivalent pair
    let verdict = pit_trace_equiv(
        &g,
        &h,
        2,
        fix.pit_samples,
        &SamplerConfig::with_seed(seed),
    )
    .expect("rank 2");
    checks.push(CheckResult {
        name: "pit-no-refutation".into(),
        expected: json!({ "outcome": "no-refutation", "samples": fix.pit_samples }),
        computed: json!({
            "outcome": match verdict.outcome {
                PitOutcome::Refuted => "refuted",
                PitOutcome::NoRefutation => "no-refutation",
            },
            "samples": verdict.samples_used,
        }),
        pass: verdict.outcome == PitOutcome::NoRefutation
            && verdict.samples_used == fix.pit_samples,
    });

    // 4. the counterexample pair shares its six-tuple of arc intersections
    let c1 = cyclic_reduce(&curve1).expect("essential");
    let c2 = cyclic_reduce(&curve2).expect("essential");
    let t1 = arc_tuple_with(&c1, convention).expect("basis words");
    let t2 = arc_tuple_with(&c2, convention).expect("basis words");
    let si = si_equivalent_in_pants(&c1, &c2).expect("basis words");
    checks.push(CheckResult {
        name: "pants-six-tuples".into(),
        expected: json!({ "tuple": fix.pants.tuple, "si_equivalent": true }),
        computed: json!({
            "tuple1": t1.to_json(),
            "tuple2": t2.to_json(),
            "si_equivalent": si,
        }),
        pass: t1.to_json() == fix.pants.tuple && t2.to_json() == fix.pants.tuple && si,
    });

    // 5. the homology classes differ even up to orientation
    let map = GeneratorImageMap::standard_rank2();
    let h1 = homology_class(&curve1, &map).expect("mapped");
    let h2 = homology_class(&curve2, &map).expect("mapped");
    let pm = plus_minus_equal(&h1, &h2).expect("same dimension");
    checks.push(CheckResult {
        name: "homology-obstruction".into(),
        expected: json!({
            "class1": fix.homology.class1,
            "class2": fix.homology.class2,
            "plus_minus_equal": false,
        }),
        computed: json!({
            "class1": h1.0,
            "class2": h2.0,
            "plus_minus_equal": pm,
        }),
        pass: h1.0 == fix.homology.class1 && h2.0 == fix.homology.class2 && !pm,
    });

    // 6. the diagonal representation certifies trace inequivalence
    let mut phi = BTreeMap::new();
    for (symbol, weight) in &fix.diagonal.phi {
        let index = symbol.chars().next().expect("nonempty") as usize - 'a' as usize;
        phi.insert(Generator::new(index), *weight);
    }
    let diag = diagonal_witness(&phi, &curve1, &curve2).expect("weights cover");
    let squares = diag
        .witness
        .as_ref()
        .map(|w| (( &w.trace1 * &w.trace1).to_string(), (&w.trace2 * &w.trace2).to_string()));
    let expected_squares = fix.diagonal.trace_squares.clone();
    checks.push(CheckResult {
        name: "diagonal-witness".into(),
        expected: json!({
            "outcome": "refuted",
            "trace_squares": [expected_squares.0, expected_squares.1],
        }),
        computed: json!({
            "outcome": if diag.is_refuted() { "refuted" } else { "no-refutation" },
            "trace_squares": squares
                .as_ref()
                .map(|(a, b)| json!([a, b]))
                .unwrap_or(Value::Null),
        }),
        pass: diag.is_refuted()
            && squares == Some((expected_squares.0.clone(), expected_squares.1.clone())),
    });

    // 7. height sweeps reconstruct the lengths of the built-in lists
    let mut computed_lists = Vec::new();
    let mut heights_pass = true;
    for fixture in &fix.heights {
        let points = parse_points(&fixture.points).expect("fixture points are valid");
        let report = breakpoints_and_jumps(&points).expect("nonzero lists");
        let ok = report.breakpoints.len() == fixture.breakpoints.len()
            && report
                .breakpoints
                .iter()
                .zip(fixture.breakpoints.iter())
                .all(|(got, want)| {
                    (got.theta - want.theta).abs() < 1e-9 && (got.jump - want.jump).abs() < 1e-9
                })
            && (report.reconstructed_length - fixture.length).abs() < 1e-9;
        heights_pass &= ok;
        computed_lists.push(json!({
            "points": fixture.points,
            "breakpoints": report.breakpoints.iter()
                .map(|b| json!({"theta": b.theta, "jump": b.jump}))
                .collect::<Vec<_>>(),
            "length": report.reconstructed_length,
        }));
    }
    checks.push(CheckResult {
        name: "heights-reconstruction".into(),
        expected: serde_json::to_value(&fix.heights).expect("serializes"),
        computed: Value::Array(computed_lists),
        pass: heights_pass,
    });

    let pass = checks.iter().all(|c| c.pass);
    PaperReport { seed, checks, pass }
}
