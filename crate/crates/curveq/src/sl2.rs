//! Exact 2x2 determinant-1 matrices over arbitrary-precision rationals,
//! word evaluation under representations, the trace relation, and a seeded,
//! index-splittable random matrix sampler.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::word::{Generator, Sign, Word};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Sl2Error {
    #[error("matrix determinant is {0}, not 1")]
    NotUnimodular(String),
    #[error("representation has no image for generator '{}'", .0.symbol())]
    MissingGenerator(Generator),
    #[error("word uses generator '{symbol}' beyond rank {rank}", symbol = .0.symbol(), rank = .1)]
    RankMismatch(Generator, usize),
}

/// An exact 2x2 matrix with determinant 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2 {
    entries: [BigRational; 4], // row major: a11 a12 a21 a22
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Mat2 {
    pub fn new(
        a11: BigRational,
        a12: BigRational,
        a21: BigRational,
        a22: BigRational,
    ) -> Result<Mat2, Sl2Error> {
        let det = &a11 * &a22 - &a12 * &a21;
        if !det.is_one() {
            return Err(Sl2Error::NotUnimodular(det.to_string()));
        }
        Ok(Mat2 { entries: [a11, a12, a21, a22] })
    }

    pub fn from_integers(a11: i64, a12: i64, a21: i64, a22: i64) -> Result<Mat2, Sl2Error> {
        Mat2::new(rat(a11), rat(a12), rat(a21), rat(a22))
    }

    pub fn identity() -> Mat2 {
        Mat2 { entries: [rat(1), rat(0), rat(0), rat(1)] }
    }

    /// `[[1, k], [0, 1]]`
    pub fn shear_upper(k: i64) -> Mat2 {
        Mat2 { entries: [rat(1), rat(k), rat(0), rat(1)] }
    }

    /// `[[1, 0], [l, 1]]`
    pub fn shear_lower(l: i64) -> Mat2 {
        Mat2 { entries: [rat(1), rat(0), rat(l), rat(1)] }
    }

    /// `diag(2^n, 2^-n)`, the diagonal family used for homology witnesses.
    pub fn diagonal_two_power(n: i64) -> Mat2 {
        Mat2 { entries: [two_pow(n), rat(0), rat(0), two_pow(-n)] }
    }

    pub fn entries(&self) -> &[BigRational; 4] {
        &self.entries
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let a = &self.entries;
        let b = &other.entries;
        Mat2 {
            entries: [
                &a[0] * &b[0] + &a[1] * &b[2],
                &a[0] * &b[1] + &a[1] * &b[3],
                &a[2] * &b[0] + &a[3] * &b[2],
                &a[2] * &b[1] + &a[3] * &b[3],
            ],
        }
    }

    /// For determinant 1 the inverse is the adjugate.
    pub fn inverse(&self) -> Mat2 {
        let a = &self.entries;
        Mat2 { entries: [a[3].clone(), -a[1].clone(), -a[2].clone(), a[0].clone()] }
    }

    pub fn trace(&self) -> BigRational {
        &self.entries[0] + &self.entries[3]
    }

    pub fn determinant(&self) -> BigRational {
        &self.entries[0] * &self.entries[3] - &self.entries[1] * &self.entries[2]
    }

    /// Four exact decimal strings, row major.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries.iter().map(|e| serde_json::Value::String(decimal_string(e))).collect(),
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", a[0], a[1], a[2], a[3])
    }
}

fn two_pow(n: i64) -> BigRational {
    let p = BigInt::one() << n.unsigned_abs() as usize;
    if n >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Renders a rational exactly as a decimal string when the denominator is of
/// the form 2^a 5^b, falling back to `p/q` otherwise.
pub fn decimal_string(r: &BigRational) -> String {
    let mut denom = r.denom().clone();
    if denom.is_one() {
        return r.numer().to_string();
    }
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&denom % &two).is_zero() {
        denom /= &two;
        twos += 1;
    }
    while (&denom % &five).is_zero() {
        denom /= &five;
        fives += 1;
    }
    if !denom.is_one() {
        return r.to_string();
    }
    let digits = twos.max(fives);
    // scale numerator so the denominator becomes 10^digits
    let scale = two.pow(digits - twos) * five.pow(digits - fives);
    let scaled = (r.numer() * scale).magnitude().to_string();
    let sign = if r.numer().is_negative() { "-" } else { "" };
    let padded = format!("{:0>width$}", scaled, width = digits as usize + 1);
    let split = padded.len() - digits as usize;
    format!("{}{}.{}", sign, &padded[..split], &padded[split..])
}

/// Generator images defining a representation into determinant-1 matrices.
#[derive(Clone, Debug)]
pub struct RepAssignment {
    images: BTreeMap<Generator, Mat2>,
    rank: usize,
}

impl RepAssignment {
    pub fn new(images: BTreeMap<Generator, Mat2>, rank: usize) -> RepAssignment {
        RepAssignment { images, rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn image(&self, g: Generator) -> Option<&Mat2> {
        self.images.get(&g)
    }

    pub fn images(&self) -> &BTreeMap<Generator, Mat2> {
        &self.images
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (g, m) in &self.images {
            map.insert(g.symbol().to_string(), m.to_json());
        }
        serde_json::Value::Object(map)
    }
}

/// The product of generator images along `w`; exact.
pub fn evaluate_word(rep: &RepAssignment, w: &Word) -> Result<Mat2, Sl2Error> {
    let mut acc = Mat2::identity();
    for l in w.letters() {
        let image = rep.image(l.generator()).ok_or(Sl2Error::MissingGenerator(l.generator()))?;
        let factor = match l.sign() {
            Sign::Plus => image.clone(),
            Sign::Minus => image.inverse(),
        };
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// `tr(uv) + tr(uv^-1) - tr(u) tr(v)`; identically zero on determinant-1 input.
pub fn trace_identity_residual(u: &Mat2, v: &Mat2) -> BigRational {
    u.mul(v).trace() + u.mul(&v.inverse()).trace() - u.trace() * v.trace()
}

/// Seeded sampler configuration: products of `shear_count` alternating shears
/// with parameters drawn uniformly from `[-shear_bound, shear_bound] \ {0}`.
#[derive(Clone, Copy, Debug)]
pub struct SamplerConfig {
    pub seed: u64,
    pub shear_bound: u32,
    pub shear_count: u32,
}

impl SamplerConfig {
    pub fn new(seed: u64, shear_bound: u32, shear_count: u32) -> SamplerConfig {
        assert!(shear_bound >= 1, "shear bound must be at least 1");
        assert!(shear_count >= 2, "shear count must be at least 2");
        SamplerConfig { seed, shear_bound, shear_count }
    }

    pub fn with_seed(seed: u64) -> SamplerConfig {
        SamplerConfig { seed, ..SamplerConfig::default() }
    }
}

impl Default for SamplerConfig {
    fn default() -> SamplerConfig {
        SamplerConfig { seed: 0, shear_bound: 10, shear_count: 6 }
    }
}

fn nonzero_in_bound<R: Rng>(rng: &mut R, bound: u32) -> i64 {
    let b = bound as i64;
    let v = rng.gen_range(0..2 * b);
    if v < b {
        v - b // [-b, -1]
    } else {
        v - b + 1 // [1, b]
    }
}

fn stream_rng(config: &SamplerConfig, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index);
    rng
}

fn sample_from(rng: &mut ChaCha8Rng, config: &SamplerConfig) -> Mat2 {
    let mut acc = Mat2::identity();
    for i in 0..config.shear_count {
        let k = nonzero_in_bound(rng, config.shear_bound);
        let shear =
            if i % 2 == 0 { Mat2::shear_upper(k) } else { Mat2::shear_lower(k) };
        acc = acc.mul(&shear);
    }
    acc
}

/// The matrix at stream `index`; identical across runs and thread counts.
pub fn random_sl2(config: &SamplerConfig, index: u64) -> Mat2 {
    sample_from(&mut stream_rng(config, index), config)
}

/// A rank-`rank` representation drawn from stream `index`.
pub fn random_rep(config: &SamplerConfig, rank: usize, index: u64) -> RepAssignment {
    let mut rng = stream_rng(config, index);
    let mut images = BTreeMap::new();
    for g in 0..rank {
        images.insert(Generator::new(g), sample_from(&mut rng, config));
    }
    RepAssignment::new(images, rank)
}
