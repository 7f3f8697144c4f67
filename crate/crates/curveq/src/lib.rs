//! Deciding and refuting equivalences between closed curves on surfaces:
//! exact Fricke trace characters and randomized identity testing, arc
//! intersection counts in a pair of pants, homology obstructions, and
//! reconstruction of flat lengths from height sweeps.

pub mod fricke;
pub mod heights;
pub mod homology;
pub mod pants;
pub mod pit;
pub mod sl2;
pub mod verify;
pub mod word;

pub use fricke::{trace_polynomial, trace_square_equivalent, TracePolynomial};
pub use heights::{
    breakpoints_and_jumps, canonicalize, developed_length, finite_difference_jump, height_at,
    BreakpointReport, PlanePoint,
};
pub use homology::{homology_class, plus_minus_equal, GeneratorImageMap, HomologyVector};
pub use pants::{arc_tuple, si_equivalent_in_pants, syllable_decomposition, SixTuple};
pub use pit::{diagonal_witness, pit_trace_equiv, PitVerdict};
pub use sl2::{evaluate_word, random_sl2, trace_identity_residual, Mat2, RepAssignment, SamplerConfig};
pub use word::{are_conjugate, cyclic_reduce, substitute, CyclicWord, Generator, Letter, Sign, Word};
