//! Abelianized classes of words under declared generator images, and the
//! up-to-orientation equality test that obstructs hyperbolic equivalence.
//!
//! The ambient surface's first homology is modeled abstractly: callers
//! declare an integer image vector per generator. Pushforwards under
//! inclusions or coverings are compositions of such maps, so only the linear
//! algebra lives here.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::word::{Generator, Word};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("no homology image declared for generator '{}'", .0.symbol())]
    MissingImage(Generator),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// An integer homology class in a declared basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomologyVector(pub Vec<i64>);

impl HomologyVector {
    pub fn zero(dimension: usize) -> HomologyVector {
        HomologyVector(vec![0; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn negated(&self) -> HomologyVector {
        HomologyVector(self.0.iter().map(|v| -v).collect())
    }
}

/// Generator images in a fixed-dimension homology basis.
#[derive(Clone, Debug)]
pub struct GeneratorImageMap {
    images: BTreeMap<Generator, HomologyVector>,
    dimension: usize,
}

impl GeneratorImageMap {
    pub fn new(
        images: BTreeMap<Generator, HomologyVector>,
        dimension: usize,
    ) -> Result<GeneratorImageMap, HomologyError> {
        for v in images.values() {
            if v.dimension() != dimension {
                return Err(HomologyError::DimensionMismatch(v.dimension(), dimension));
            }
        }
        Ok(GeneratorImageMap { images, dimension })
    }

    /// The default rank-2 map a -> (1,0), b -> (0,1).
    pub fn standard_rank2() -> GeneratorImageMap {
        let mut images = BTreeMap::new();
        images.insert(Generator::new(0), HomologyVector(vec![1, 0]));
        images.insert(Generator::new(1), HomologyVector(vec![0, 1]));
        GeneratorImageMap { images, dimension: 2 }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn image(&self, g: Generator) -> Option<&HomologyVector> {
        self.images.get(&g)
    }
}

/// The image of the abelianization of `w`: the signed sum of letter images.
pub fn homology_class(w: &Word, m: &GeneratorImageMap) -> Result<HomologyVector, HomologyError> {
    let mut acc = HomologyVector::zero(m.dimension());
    for l in w.letters() {
        let image = m.image(l.generator()).ok_or(HomologyError::MissingImage(l.generator()))?;
        let s = l.sign().as_i64();
        for (a, b) in acc.0.iter_mut().zip(image.0.iter()) {
            *a += s * b;
        }
    }
    Ok(acc)
}

/// True iff v1 = v2 or v1 = -v2: equality after a choice of orientations.
pub fn plus_minus_equal(v1: &HomologyVector, v2: &HomologyVector) -> Result<bool, HomologyError> {
    if v1.dimension() != v2.dimension() {
        return Err(HomologyError::DimensionMismatch(v1.dimension(), v2.dimension()));
    }
    Ok(*v1 == *v2 || *v1 == v2.negated())
}
