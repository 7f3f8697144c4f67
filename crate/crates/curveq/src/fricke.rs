//! Symbolic trace characters for rank-2 free-group words as integer
//! polynomials in x = tr(a), y = tr(b), z = tr(ab).
//!
//! The sole rewriting engine is the relation
//! `tr(uv) + tr(uv^-1) = tr(u) tr(v)` with base cases tr(1) = 2, tr(a) = x,
//! tr(b) = y, tr(ab) = z. Completeness of the zero-polynomial test as a
//! decision over all determinant-1 representations rests on the classical
//! fact that (tr a, tr b, tr ab) is surjective onto C^3 for rank-2
//! representations; that surjectivity is assumed, not re-proved here.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::word::{canonical_rotation, cyclically_reduce_letters, Generator, Letter, Sign, Word};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FrickeError {
    #[error("generator '{}' is outside {{a, b}}; only rank 2 is supported symbolically", .0.symbol())]
    OutsideRankTwo(Generator),
    #[error("the identity word does not represent an essential curve")]
    IdentityWord,
}

/// Monomial x^i y^j z^k, ordered graded-lexicographically with z > y > x.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Monomial {
    fn degree(&self) -> u32 {
        self.x + self.y + self.z
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.z, self.x, self.y).cmp(&(
            other.degree(),
            other.z,
            other.x,
            other.y,
        ))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse integer polynomial in the trace coordinates; no zero coefficients
/// are stored, so equality is map equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TracePolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl TracePolynomial {
    pub fn zero() -> TracePolynomial {
        TracePolynomial::default()
    }

    pub fn constant(c: i64) -> TracePolynomial {
        let mut p = TracePolynomial::zero();
        p.add_term(Monomial { x: 0, y: 0, z: 0 }, BigInt::from(c));
        p
    }

    pub fn variable_x() -> TracePolynomial {
        TracePolynomial::monomial(Monomial { x: 1, y: 0, z: 0 })
    }

    pub fn variable_y() -> TracePolynomial {
        TracePolynomial::monomial(Monomial { x: 0, y: 1, z: 0 })
    }

    pub fn variable_z() -> TracePolynomial {
        TracePolynomial::monomial(Monomial { x: 0, y: 0, z: 1 })
    }

    fn monomial(m: Monomial) -> TracePolynomial {
        let mut p = TracePolynomial::zero();
        p.add_term(m, BigInt::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &TracePolynomial) -> TracePolynomial {
        let mut out = TracePolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = Monomial { x: m1.x + m2.x, y: m1.y + m2.y, z: m1.z + m2.z };
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn square(&self) -> TracePolynomial {
        self.mul(self)
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    /// Exact evaluation at rational trace coordinates.
    pub fn evaluate(&self, x: &BigRational, y: &BigRational, z: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            term *= rat_pow(x, m.x);
            term *= rat_pow(y, m.y);
            term *= rat_pow(z, m.z);
            acc += term;
        }
        acc
    }

    /// `[{"x":i,"y":j,"z":k,"c":"<decimal integer>"}, ...]` in canonical order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .map(|(m, c)| {
                    serde_json::json!({
                        "x": m.x, "y": m.y, "z": m.z, "c": c.to_string()
                    })
                })
                .collect(),
        )
    }
}

fn rat_pow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

impl fmt::Display for TracePolynomial {
    /// e.g. `x^2*y*z - x*z^2 - x*y^2 + x`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let mag = c.magnitude();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(mag.to_string());
            }
            for (sym, e) in [("x", m.x), ("y", m.y), ("z", m.z)] {
                match e {
                    0 => {}
                    1 => factors.push(sym.to_string()),
                    _ => factors.push(format!("{sym}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Normal form of the trace class of `w`: the least canonical rotation of its
/// cyclic reduction or of that reduction's inverse. Trace is invariant under
/// conjugation and inversion, so this is a sound memoization key.
fn class_key(letters: &[Letter]) -> Vec<Letter> {
    let reduced = cyclically_reduce_letters(letters);
    if reduced.is_empty() {
        return Vec::new();
    }
    let fwd = canonical_rotation(&reduced);
    let inv: Vec<Letter> = reduced.iter().rev().map(|l| l.inverse()).collect();
    let bwd = canonical_rotation(&inv);
    fwd.min(bwd)
}

fn measure(key: &[Letter]) -> (usize, Vec<Letter>) {
    (key.len(), key.to_vec())
}

fn is_base_ab(key: &[Letter]) -> bool {
    key.len() == 2
        && key[0] == Letter::new(Generator::new(0), Sign::Plus)
        && key[1] == Letter::new(Generator::new(1), Sign::Plus)
}

fn trace_of_key(key: &[Letter], memo: &mut HashMap<Vec<Letter>, TracePolynomial>) -> TracePolynomial {
    if let Some(p) = memo.get(key) {
        return p.clone();
    }
    let n = key.len();
    let result = if n == 0 {
        TracePolynomial::constant(2)
    } else if n == 1 {
        if key[0].generator().index() == 0 {
            TracePolynomial::variable_x()
        } else {
            TracePolynomial::variable_y()
        }
    } else if is_base_ab(key) {
        TracePolynomial::variable_z()
    } else {
        // Split w = u v and rewrite tr(w) = tr(u) tr(v) - tr(u v^-1).
        // u and v are strictly shorter; among all rotations and split points,
        // pick the most balanced split whose u v^-1 class strictly decreases
        // the measure (letter count, then canonical form) so the recursion is
        // well founded.
        let own = measure(key);
        let mut best: Option<(usize, (usize, Vec<Letter>), Vec<Letter>, Vec<Letter>)> = None;
        for r in 0..n {
            let rotation: Vec<Letter> = key[r..].iter().chain(key[..r].iter()).copied().collect();
            for split in 1..n {
                let u = &rotation[..split];
                let v = &rotation[split..];
                let uv_inv: Vec<Letter> =
                    u.iter().copied().chain(v.iter().rev().map(|l| l.inverse())).collect();
                let rest = class_key(Word::from_letters(uv_inv).letters());
                let rest_measure = measure(&rest);
                if rest_measure >= own {
                    continue;
                }
                let balance = split.max(n - split);
                let candidate = (balance, rest_measure, u.to_vec(), v.to_vec());
                if best
                    .as_ref()
                    .is_none_or(|b| (candidate.0, &candidate.1) < (b.0, &b.1))
                {
                    best = Some(candidate);
                }
            }
        }
        let (_, rest_measure, u, v) =
            best.expect("trace relation: no measure-decreasing split exists");
        debug_assert!(rest_measure < own, "termination measure must strictly decrease");
        let pu = trace_of_key(&class_key(&u), memo);
        let pv = trace_of_key(&class_key(&v), memo);
        let rest = trace_of_key(&rest_measure.1, memo);
        pu.mul(&pv).sub(&rest)
    };
    memo.insert(key.to_vec(), result.clone());
    result
}

fn check_rank_two(w: &Word) -> Result<(), FrickeError> {
    for l in w.letters() {
        if l.generator().index() > 1 {
            return Err(FrickeError::OutsideRankTwo(l.generator()));
        }
    }
    Ok(())
}

/// The unique polynomial P with P(tr p(a), tr p(b), tr p(ab)) = tr p(w) for
/// every representation p into determinant-1 matrices.
pub fn trace_polynomial(w: &Word) -> Result<TracePolynomial, FrickeError> {
    check_rank_two(w)?;
    let mut memo = HashMap::new();
    Ok(trace_of_key(&class_key(w.letters()), &mut memo))
}

/// Decides chi(w1)^2 = chi(w2)^2 as polynomials; the returned difference of
/// squares is zero exactly when the words are trace-square equivalent.
pub fn trace_square_equivalent(
    w1: &Word,
    w2: &Word,
) -> Result<(bool, TracePolynomial), FrickeError> {
    if w1.is_identity() || w2.is_identity() {
        return Err(FrickeError::IdentityWord);
    }
    let p1 = trace_polynomial(w1)?;
    let p2 = trace_polynomial(w2)?;
    let diff = p1.square().sub(&p2.square());
    Ok((diff.is_zero(), diff))
}
