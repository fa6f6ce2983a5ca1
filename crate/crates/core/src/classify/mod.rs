//! Orbits of `Aut(Q)` on type-A representatives, certified isomorphism
//! tests, the shape and word calculus of split and separable
//! representatives, and the sweep comparing orbits with isoclasses.

mod harness;
mod iso;
mod orbits;
mod shape;
mod words;

pub use harness::{analyze_word, sweep_words, verify_theorem, verify_theorem_with, verify_word, RepSummary, Stats, Verdict, VerificationReport, WordAnalysis};
pub use iso::{compare, is_isomorphic, negates_labels, presented_algebra, recheck_witness, verify_certificate, IsoCertificate, IsoMap, Profile, Witness};
pub use orbits::{act, orbits, transport, OrbitMerge, OrbitPartition};
pub use shape::{is_square_pattern, shape_of, split_shape, RootKind, SplitShape, Variant};
pub use words::{audit_word_equation, decompose_word, word_equation_solutions, WordAudit, WordDecomposition};

/// Connectivity of the Ext quiver of `a`.
pub fn is_connected_ext(a: &crate::algebra::Subalgebra) -> bool {
    a.ext_quiver().is_connected()
}
