//! Randomized refutation of trace-square equivalence for words of any rank,
//! and the explicit diagonal witness built from a homomorphism to Z.
//!
//! Refutations are certificates: the witness representation re-evaluates to
//! the same differing trace squares exactly. A NoRefutation verdict is
//! statistical evidence only.

use std::collections::BTreeMap;

use num::BigRational;
use thiserror::Error;

use crate::sl2::{decimal_string, evaluate_word, random_rep, Mat2, RepAssignment, SamplerConfig};
use crate::word::{Generator, Word};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PitError {
    #[error("word uses generator '{symbol}' beyond declared rank {rank}", symbol = .0.symbol(), rank = .1)]
    RankMismatch(Generator, usize),
    #[error("no weight declared for generator '{}'", .0.symbol())]
    MissingWeight(Generator),
    #[error("sample count must be at least 1")]
    NoSamples,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PitOutcome {
    Refuted,
    NoRefutation,
}

/// A re-evaluable refutation certificate.
#[derive(Clone, Debug)]
pub struct PitWitness {
    pub rep: RepAssignment,
    pub trace1: BigRational,
    pub trace2: BigRational,
    pub sample_index: u64,
}

#[derive(Clone, Debug)]
pub struct PitVerdict {
    pub outcome: PitOutcome,
    pub witness: Option<PitWitness>,
    pub samples_used: u64,
    pub seed: u64,
}

impl PitVerdict {
    pub fn is_refuted(&self) -> bool {
        self.outcome == PitOutcome::Refuted
    }

    pub fn to_json(&self) -> serde_json::Value {
        let witness = match &self.witness {
            None => serde_json::Value::Null,
            Some(w) => serde_json::json!({
                "rep": w.rep.to_json(),
                "trace1": decimal_string(&w.trace1),
                "trace2": decimal_string(&w.trace2),
                "sample_index": w.sample_index,
            }),
        };
        serde_json::json!({
            "outcome": match self.outcome {
                PitOutcome::Refuted => "refuted",
                PitOutcome::NoRefutation => "no-refutation",
            },
            "samples": self.samples_used,
            "seed": self.seed,
            "witness": witness,
        })
    }
}

fn check_rank(w: &Word, rank: usize) -> Result<(), PitError> {
    for l in w.letters() {
        if l.generator().index() >= rank {
            return Err(PitError::RankMismatch(l.generator(), rank));
        }
    }
    Ok(())
}

fn squares_differ(rep: &RepAssignment, w1: &Word, w2: &Word) -> (bool, BigRational, BigRational) {
    let t1 = evaluate_word(rep, w1).expect("rank was checked").trace();
    let t2 = evaluate_word(rep, w2).expect("rank was checked").trace();
    let differ = &t1 * &t1 != &t2 * &t2;
    (differ, t1, t2)
}

/// Evaluates tr(p(w1))^2 - tr(p(w2))^2 at seeded random exact representations.
/// Returns the witness with the smallest sample index on refutation. The same
/// representation is applied to both words in each sample.
pub fn pit_trace_equiv(
    w1: &Word,
    w2: &Word,
    rank: usize,
    samples: u64,
    config: &SamplerConfig,
) -> Result<PitVerdict, PitError> {
    check_rank(w1, rank)?;
    check_rank(w2, rank)?;
    if samples == 0 {
        return Err(PitError::NoSamples);
    }
    for index in 0..samples {
        let rep = random_rep(config, rank, index);
        let (differ, t1, t2) = squares_differ(&rep, w1, w2);
        if differ {
            return Ok(PitVerdict {
                outcome: PitOutcome::Refuted,
                witness: Some(PitWitness { rep, trace1: t1, trace2: t2, sample_index: index }),
                samples_used: index + 1,
                seed: config.seed,
            });
        }
    }
    Ok(PitVerdict {
        outcome: PitOutcome::NoRefutation,
        witness: None,
        samples_used: samples,
        seed: config.seed,
    })
}

/// Composes a homomorphism phi to Z with n -> diag(2^n, 2^-n). The trace of a
/// word with phi-weighted exponent sum n is exactly 2^n + 2^-n, so the pair
/// is refuted precisely when the weighted sums differ up to sign.
pub fn diagonal_witness(
    phi: &BTreeMap<Generator, i64>,
    w1: &Word,
    w2: &Word,
) -> Result<PitVerdict, PitError> {
    let mut gens = w1.generators_used();
    gens.extend(w2.generators_used());
    gens.sort();
    gens.dedup();
    let mut images = BTreeMap::new();
    for g in &gens {
        let weight = *phi.get(g).ok_or(PitError::MissingWeight(*g))?;
        images.insert(*g, Mat2::diagonal_two_power(weight));
    }
    let rank = gens.iter().map(|g| g.index() + 1).max().unwrap_or(0);
    let rep = RepAssignment::new(images, rank);
    let (differ, t1, t2) = squares_differ(&rep, w1, w2);
    Ok(PitVerdict {
        outcome: if differ { PitOutcome::Refuted } else { PitOutcome::NoRefutation },
        witness: if differ {
            Some(PitWitness { rep, trace1: t1, trace2: t2, sample_index: 0 })
        } else {
            None
        },
        samples_used: 1,
        seed: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fricke::trace_square_equivalent;
    use num::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(text: &str) -> Word {
        Word::parse(text, 2).unwrap()
    }

    fn phi01() -> BTreeMap<Generator, i64> {
        let mut phi = BTreeMap::new();
        phi.insert(Generator::new(0), 0);
        phi.insert(Generator::new(1), 1);
        phi
    }

    #[test]
    fn distinct_generators_are_refuted() {
        let verdict =
            pit_trace_equiv(&w("a"), &w("b"), 2, 64, &SamplerConfig::with_seed(1)).unwrap();
        assert!(verdict.is_refuted());
        // the witness re-verifies exactly
        let witness = verdict.witness.unwrap();
        let (differ, t1, t2) = squares_differ(&witness.rep, &w("a"), &w("b"));
        assert!(differ);
        assert_eq!(t1, witness.trace1);
        assert_eq!(t2, witness.trace2);
    }

    #[test]
    fn horowitz_pair_is_not_refuted() {
        let verdict = pit_trace_equiv(
            &w("a^2 B a b"),
            &w("a^2 b a B"),
            2,
            1000,
            &SamplerConfig::default(),
        )
        .unwrap();
        assert!(!verdict.is_refuted());
        assert_eq!(verdict.samples_used, 1000);
    }

    #[test]
    fn inverse_pairs_are_never_refuted() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..20 {
            let len = 1 + rng.gen_range(0..8);
            let word = Word::random(&mut rng, 3, len);
            let verdict = pit_trace_equiv(
                &word,
                &word.inverse(),
                3,
                32,
                &SamplerConfig::with_seed(i),
            )
            .unwrap();
            assert!(!verdict.is_refuted());
        }
    }

    #[test]
    fn verdicts_are_deterministic() {
        let config = SamplerConfig::with_seed(77);
        let a = pit_trace_equiv(&w("a b"), &w("a B"), 2, 16, &config).unwrap();
        let b = pit_trace_equiv(&w("a b"), &w("a B"), 2, 16, &config).unwrap();
        assert_eq!(a.is_refuted(), b.is_refuted());
        assert_eq!(a.samples_used, b.samples_used);
        if let (Some(wa), Some(wb)) = (&a.witness, &b.witness) {
            assert_eq!(wa.sample_index, wb.sample_index);
            assert_eq!(wa.trace1, wb.trace1);
            assert_eq!(wa.rep.to_json(), wb.rep.to_json());
        }
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let word = Word::parse("c", 3).unwrap();
        assert!(matches!(
            pit_trace_equiv(&word, &w("a"), 2, 8, &SamplerConfig::default()),
            Err(PitError::RankMismatch(_, 2))
        ));
    }

    #[test]
    fn diagonal_witness_counterexample_pair() {
        let verdict = diagonal_witness(&phi01(), &w("a^-2 b a b^-1"), &w("a^-2 b a b")).unwrap();
        assert!(verdict.is_refuted());
        let witness = verdict.witness.unwrap();
        assert_eq!(witness.trace1, BigRational::from_integer(BigInt::from(2)));
        assert_eq!(
            witness.trace2,
            BigRational::new(BigInt::from(17), BigInt::from(4))
        );
        let sq1 = &witness.trace1 * &witness.trace1;
        let sq2 = &witness.trace2 * &witness.trace2;
        assert_eq!(sq1, BigRational::from_integer(BigInt::from(4)));
        assert_eq!(sq2, BigRational::new(BigInt::from(289), BigInt::from(16)));
    }

    #[test]
    fn diagonal_witness_trivial_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let len = 1 + rng.gen_range(0..8);
            let word = Word::random(&mut rng, 2, len);
            // w vs w^-1: weighted sums negate, never refuted
            let verdict = diagonal_witness(&phi01(), &word, &word.inverse()).unwrap();
            assert!(!verdict.is_refuted());
            // zero functional: all traces are 2
            let mut zero = BTreeMap::new();
            zero.insert(Generator::new(0), 0);
            zero.insert(Generator::new(1), 0);
            let len = 1 + rng.gen_range(0..8);
            let other = Word::random(&mut rng, 2, len);
            assert!(!diagonal_witness(&zero, &word, &other).unwrap().is_refuted());
        }
    }

    #[test]
    fn diagonal_refutes_iff_weighted_sums_differ_in_magnitude() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let phi = phi01();
        for _ in 0..200 {
            let len = rng.gen_range(0..10);
            let w1 = Word::random(&mut rng, 2, len);
            let len = rng.gen_range(0..10);
            let w2 = Word::random(&mut rng, 2, len);
            let n1 = w1.exponent_sum(Generator::new(1));
            let n2 = w2.exponent_sum(Generator::new(1));
            let verdict = diagonal_witness(&phi, &w1, &w2).unwrap();
            assert_eq!(verdict.is_refuted(), n1.abs() != n2.abs());
        }
    }

    #[test]
    fn consistent_with_fricke_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut refuted_when_inequivalent = 0;
        let mut inequivalent = 0;
        for i in 0..100 {
            let len = 1 + rng.gen_range(0..10);
            let w1 = Word::random(&mut rng, 2, len);
            let len = 1 + rng.gen_range(0..10);
            let w2 = Word::random(&mut rng, 2, len);
            let (equivalent, _) = trace_square_equivalent(&w1, &w2).unwrap();
            let verdict =
                pit_trace_equiv(&w1, &w2, 2, 64, &SamplerConfig::with_seed(i)).unwrap();
            if equivalent {
                // soundness: a refutation would contradict the exact decision
                assert!(!verdict.is_refuted());
            } else {
                inequivalent += 1;
                if verdict.is_refuted() {
                    refuted_when_inequivalent += 1;
                }
            }
        }
        // one-sided guarantee: expect nearly every inequivalent pair refuted
        assert!(refuted_when_inequivalent * 100 >= inequivalent * 95);
    }

    #[test]
    fn verdict_json_shape() {
        let verdict =
            pit_trace_equiv(&w("a"), &w("a"), 2, 4, &SamplerConfig::with_seed(3)).unwrap();
        assert_eq!(
            verdict.to_json(),
            serde_json::json!({
                "outcome": "no-refutation",
                "samples": 4,
                "seed": 3,
                "witness": null,
            })
        );
    }
}
