//! Words in a finite-rank free group: parsing, free and cyclic reduction,
//! conjugacy testing, and substitution homomorphisms.
//!
//! Letters are ordered by (generator index, sign) with positive before
//! negative; the canonical form of a cyclic word is its lexicographically
//! least rotation under that order, so conjugacy classes compare as plain
//! sequences.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use thiserror::Error;

/// A free-group generator, displayed as a lowercase letter (`a`, `b`, ...).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator(u8);

impl Generator {
    pub fn new(index: usize) -> Generator {
        assert!(index < 26, "generator index out of range");
        Generator(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn symbol(self) -> char {
        (b'a' + self.0) as char
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A single signed letter `g` or `g^-1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    generator: Generator,
    sign: Sign,
}

impl Letter {
    pub fn new(generator: Generator, sign: Sign) -> Letter {
        Letter { generator, sign }
    }

    pub fn generator(self) -> Generator {
        self.generator
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn inverse(self) -> Letter {
        Letter { generator: self.generator, sign: self.sign.flip() }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign != other.sign
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("expected a letter at position {0}")]
    ExpectedLetter(usize),
    #[error("the input contains no terms")]
    Empty,
    #[error("expected digits after '^' at position {0}")]
    ExpectedExponent(usize),
    #[error("generator '{symbol}' at position {position} is outside the declared rank {rank}")]
    UnknownGenerator { symbol: char, position: usize, rank: usize },
    #[error("exponent at position {0} is out of range")]
    ExponentOutOfRange(usize),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("the identity word does not represent an essential curve")]
    IdentityWord,
    #[error("no image declared for generator '{}'", .0.symbol())]
    MissingImage(Generator),
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word { letters: Vec::new() }
    }

    /// Builds a word from raw letters, freely reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut reduced: Vec<Letter> = Vec::new();
        for l in letters {
            if reduced.last().is_some_and(|&last| last.cancels(l)) {
                reduced.pop();
            } else {
                reduced.push(l);
            }
        }
        Word { letters: reduced }
    }

    /// Parses the grammar `word ::= term (sep term)*`, `term ::= letter power?`,
    /// `letter ::= 'a'..'z' | 'A'..'Z'` (uppercase = inverse),
    /// `power ::= '^' '-'? digit+`, `sep ::= ws+ | '*'`.
    /// Adjacent terms without a separator are also accepted.
    pub fn parse(text: &str, rank: usize) -> Result<Word, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        let mut raw: Vec<(Letter, u64)> = Vec::new();
        loop {
            while i < chars.len() && (chars[i].is_whitespace() || chars[i] == '*') {
                i += 1;
            }
            if i >= chars.len() {
                break;
            }
            let c = chars[i];
            if !c.is_ascii_alphabetic() {
                return Err(ParseError::ExpectedLetter(i));
            }
            let (index, mut sign) = if c.is_ascii_lowercase() {
                (c as usize - 'a' as usize, Sign::Plus)
            } else {
                (c as usize - 'A' as usize, Sign::Minus)
            };
            if index >= rank {
                return Err(ParseError::UnknownGenerator { symbol: c, position: i, rank });
            }
            i += 1;
            let mut magnitude: u64 = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let mut negative = false;
                if i < chars.len() && chars[i] == '-' {
                    negative = true;
                    i += 1;
                }
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(ParseError::ExpectedExponent(start));
                }
                let digits: String = chars[start..i].iter().collect();
                magnitude = digits.parse().map_err(|_| ParseError::ExponentOutOfRange(start))?;
                if magnitude > 1_000_000 {
                    return Err(ParseError::ExponentOutOfRange(start));
                }
                if negative {
                    sign = sign.flip();
                }
            }
            raw.push((Letter::new(Generator::new(index), sign), magnitude));
        }
        if raw.is_empty() {
            return Err(ParseError::Empty);
        }
        Ok(Word::from_letters(
            raw.into_iter().flat_map(|(l, m)| std::iter::repeat(l).take(m as usize)),
        ))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.concat(self).concat(&u.inverse())
    }

    /// Signed exponent sum of a generator; the abelianized coordinate.
    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator() == g)
            .map(|l| l.sign().as_i64())
            .sum()
    }

    pub fn generators_used(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = self.letters.iter().map(|l| l.generator()).collect();
        gens.sort();
        gens.dedup();
        gens
    }

    /// A uniformly random freely reduced word of exactly `len` letters.
    pub fn random<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Word {
        assert!(rank >= 1);
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        while letters.len() < len {
            let index = rng.gen_range(0..rank);
            let sign = if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus };
            let l = Letter::new(Generator::new(index), sign);
            if letters.last().is_some_and(|&last| last.cancels(l)) {
                continue;
            }
            letters.push(l);
        }
        Word { letters }
    }
}

impl fmt::Display for Word {
    /// Prints lowercase letters with caret exponents, space separated,
    /// e.g. `a^-2 b a b^-1`. The identity prints as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            i += run;
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let exp = l.sign().as_i64() * run as i64;
            if exp == 1 {
                write!(f, "{}", l.generator().symbol())?;
            } else {
                write!(f, "{}^{}", l.generator().symbol(), exp)?;
            }
        }
        Ok(())
    }
}

/// A nonempty cyclically reduced word in its canonical rotation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_word(&self) -> Word {
        Word { letters: self.letters.clone() }
    }

    pub fn inverse(&self) -> CyclicWord {
        let inv: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        CyclicWord { letters: canonical_rotation(&inv) }
    }

    pub fn generators_used(&self) -> Vec<Generator> {
        self.to_word().generators_used()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

/// The lexicographically least rotation of a letter sequence.
pub(crate) fn canonical_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best: Option<Vec<Letter>> = None;
    for r in 0..n {
        let rotation: Vec<Letter> =
            letters[r..].iter().chain(letters[..r].iter()).copied().collect();
        if best.as_ref().is_none_or(|b| rotation < *b) {
            best = Some(rotation);
        }
    }
    best.unwrap()
}

/// Trims cancelling first/last pairs; may return the empty sequence.
pub(crate) fn cyclically_reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut ls = letters.to_vec();
    while ls.len() >= 2 && ls[0].cancels(*ls.last().unwrap()) {
        ls.pop();
        ls.remove(0);
    }
    ls
}

/// Canonical cyclically reduced form; rejects words that are trivial up to
/// conjugacy (they represent no essential curve).
pub fn cyclic_reduce(w: &Word) -> Result<CyclicWord, WordError> {
    let ls = cyclically_reduce_letters(w.letters());
    if ls.is_empty() {
        return Err(WordError::IdentityWord);
    }
    Ok(CyclicWord { letters: canonical_rotation(&ls) })
}

/// Conjugacy in the free group: equality of canonical cyclic forms.
/// With `allow_inverse`, also tests against the inverse class.
pub fn are_conjugate(w1: &Word, w2: &Word, allow_inverse: bool) -> Result<bool, WordError> {
    let c1 = cyclic_reduce(w1)?;
    let c2 = cyclic_reduce(w2)?;
    Ok(c1 == c2 || (allow_inverse && c1 == c2.inverse()))
}

/// A homomorphism of free groups given by generator images.
#[derive(Clone, Debug)]
pub struct Substitution {
    images: BTreeMap<Generator, Word>,
}

impl Substitution {
    pub fn new(images: BTreeMap<Generator, Word>) -> Substitution {
        Substitution { images }
    }

    pub fn image(&self, g: Generator) -> Option<&Word> {
        self.images.get(&g)
    }
}

/// The homomorphic image of `w`, freely reduced.
pub fn substitute(w: &Word, s: &Substitution) -> Result<Word, WordError> {
    let mut letters: Vec<Letter> = Vec::new();
    for l in w.letters() {
        let image = s.image(l.generator()).ok_or(WordError::MissingImage(l.generator()))?;
        match l.sign() {
            Sign::Plus => letters.extend_from_slice(image.letters()),
            Sign::Minus => letters.extend(image.letters().iter().rev().map(|x| x.inverse())),
        }
    }
    Ok(Word::from_letters(letters))
}
