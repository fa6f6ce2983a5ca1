//! Maximal subalgebras of separable and split type, type-A representatives,
//! and bound quiver presentations.

mod presentation;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{vertex_sum, PathAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{Element, Subspace};
use crate::quiver::{type_a_labels, Quiver, TypeALabels};

pub use presentation::{present_separable, present_split_hereditary, present_split_with, Presentation, PresentationJson, Term};

/// Unordered pair of distinct vertices to be glued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeparableSpec {
    pub u: usize,
    pub v: usize,
}

impl SeparableSpec {
    pub fn new(u: usize, v: usize) -> Self {
        Self { u: u.min(v), v: u.max(v) }
    }

    fn validate(&self, q: &Quiver) -> Result<()> {
        if self.u == self.v {
            return Err(Error::InvalidSeparable("the two vertices coincide".into()));
        }
        if self.v >= q.vertex_count() {
            return Err(Error::InvalidSeparable(format!("vertex {} out of range", self.v)));
        }
        Ok(())
    }
}

/// Ordered pair `(u, v)` with an arrow `u -> v`, and a codimension-one
/// subspace `U` of the arrow span, given by a spanning set in `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSpec {
    pub u: usize,
    pub v: usize,
    pub subspace: Vec<Element>,
}

impl SplitSpec {
    /// `U = {0}`, the only choice when `u -> v` is a single arrow.
    pub fn zero(u: usize, v: usize) -> Self {
        Self {
            u,
            v,
            subspace: Vec::new(),
        }
    }

    /// Echelonized `U` inside `B`, checked to have codimension one in the
    /// span of the arrows `u -> v`.
    pub fn checked_subspace(&self, b: &PathAlgebra) -> Result<Subspace> {
        let q = b.quiver();
        if self.u >= q.vertex_count() || self.v >= q.vertex_count() {
            return Err(Error::InvalidSplit("vertex out of range".into()));
        }
        let arrows: Vec<usize> = q.arrows_between(self.u, self.v).map(|a| b.arrow_index(a.id)).collect();
        if arrows.is_empty() {
            return Err(Error::InvalidSplit(format!(
                "no arrow from {} to {}",
                q.label(self.u),
                q.label(self.v)
            )));
        }
        let span = Subspace::coordinate(b.dim(), arrows.iter().copied());
        let u_space = Subspace::spanned_by(b.dim(), &self.subspace);
        if !span.contains_subspace(&u_space) {
            return Err(Error::InvalidSplit("U is not inside the arrow span u -> v".into()));
        }
        if u_space.dim() + 1 != arrows.len() {
            return Err(Error::InvalidSplit(format!(
                "U has dimension {} but the arrow span has dimension {}",
                u_space.dim(),
                arrows.len()
            )));
        }
        Ok(u_space)
    }
}

/// `k(u+v) + sum of the other vertices + J(B)`.
pub fn build_separable(b: &Arc<PathAlgebra>, spec: SeparableSpec) -> Result<Subalgebra> {
    spec.validate(b.quiver())?;
    let mut gens = vec![vertex_sum([spec.u, spec.v])];
    gens.extend((0..b.vertex_count()).filter(|&w| w != spec.u && w != spec.v).map(Element::basis));
    gens.extend((b.vertex_count()..b.dim()).map(Element::basis));
    Subalgebra::from_basis(b.clone(), &gens)
}

/// `kQ0 + U + the other arrows + J(B)^2`.
pub fn build_split(b: &Arc<PathAlgebra>, spec: &SplitSpec) -> Result<Subalgebra> {
    let u_space = spec.checked_subspace(b)?;
    let q = b.quiver();
    let mut gens: Vec<Element> = (0..b.vertex_count()).map(Element::basis).collect();
    gens.extend(u_space.basis().cloned());
    gens.extend(
        q.arrows()
            .iter()
            .filter(|a| !(a.source == spec.u && a.target == spec.v))
            .map(|a| Element::basis(b.arrow_index(a.id))),
    );
    gens.extend((b.length_at_least(2)..b.dim()).map(Element::basis));
    Subalgebra::from_basis(b.clone(), &gens)
}

/// Tag of a type-A representative: `A_{i,j}` glues `v_i` and `v_j`, `A_{i}`
/// splits the edge between `v_i` and its successor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RepTag {
    Separable { i: i32, j: i32 },
    Split { i: i32 },
}

impl RepTag {
    pub fn is_split(&self) -> bool {
        matches!(self, RepTag::Split { .. })
    }
}

impl fmt::Display for RepTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepTag::Separable { i, j } => write!(f, "A_{{{i},{j}}}"),
            RepTag::Split { i } => write!(f, "A_{{{i}}}"),
        }
    }
}

impl std::str::FromStr for RepTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownVertex(format!("bad tag {s:?}"));
        let inner = s.strip_prefix("A_{").and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
        match inner.split_once(',') {
            Some((i, j)) => Ok(RepTag::Separable {
                i: i.trim().parse().map_err(|_| bad())?,
                j: j.trim().parse().map_err(|_| bad())?,
            }),
            None => Ok(RepTag::Split {
                i: inner.trim().parse().map_err(|_| bad())?,
            }),
        }
    }
}

/// How a representative was built, in vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepSpec {
    Separable(SeparableSpec),
    Split(SplitSpec),
}

#[derive(Clone, Debug)]
pub struct Representative {
    pub tag: RepTag,
    pub spec: RepSpec,
    pub algebra: Subalgebra,
}

impl Representative {
    pub fn presentation(&self) -> Result<Presentation> {
        let b = self.algebra.ambient();
        match &self.spec {
            RepSpec::Separable(s) => present_separable(b, *s),
            RepSpec::Split(s) => present_split_hereditary(b, s),
        }
    }
}

/// Checks that `q` is the type-A quiver of some word, with the signed labels
/// produced by [`crate::quiver::word_to_quiver`].
pub fn type_a_structure(q: &Quiver) -> Result<TypeALabels> {
    let n = q.vertex_count();
    let labels = type_a_labels(n);
    if n == 0 || !q.is_path_graph() {
        return Err(Error::NotTypeA("underlying graph is not a path".into()));
    }
    let expected: Vec<String> = labels.labels().iter().map(|l| l.to_string()).collect();
    if q.vertices() != expected.as_slice() {
        return Err(Error::NotTypeA("vertex labels are not the signed type-A labels".into()));
    }
    for i in labels.positions() {
        let a = labels.index(i)?;
        let s = labels.index(labels.succ(i)?)?;
        if q.multiplicity(a, s) + q.multiplicity(s, a) != 1 {
            return Err(Error::NotTypeA(format!("no edge between {i} and its successor")));
        }
    }
    Ok(labels)
}

/// One representative per index: every `A_{i,j}` with `i < j`, then every
/// `A_{i}`. The split along the edge at position `i` removes that arrow,
/// whichever way it points.
pub fn enumerate_representatives(q: &Quiver) -> Result<Vec<Representative>> {
    let b = Arc::new(PathAlgebra::new(q.clone())?);
    enumerate_in(&b)
}

pub fn enumerate_in(b: &Arc<PathAlgebra>) -> Result<Vec<Representative>> {
    let q = b.quiver();
    let labels = type_a_structure(q)?;
    let mut reps = Vec::new();
    let all = labels.labels();
    for (x, &i) in all.iter().enumerate() {
        for &j in &all[x + 1..] {
            let spec = SeparableSpec::new(labels.index(i)?, labels.index(j)?);
            reps.push(Representative {
                tag: RepTag::Separable { i, j },
                spec: RepSpec::Separable(spec),
                algebra: build_separable(b, spec)?,
            });
        }
    }
    for i in labels.positions() {
        let spec = split_spec_at(q, &labels, i)?;
        reps.push(Representative {
            tag: RepTag::Split { i },
            algebra: build_split(b, &spec)?,
            spec: RepSpec::Split(spec),
        });
    }
    Ok(reps)
}

/// Split spec for the edge between `v_i` and `succ(v_i)`, oriented along the
/// arrow.
pub fn split_spec_at(q: &Quiver, labels: &TypeALabels, i: i32) -> Result<SplitSpec> {
    let a = labels.index(i)?;
    let s = labels.index(labels.succ(i)?)?;
    if q.multiplicity(a, s) == 1 {
        Ok(SplitSpec::zero(a, s))
    } else {
        Ok(SplitSpec::zero(s, a))
    }
}

pub fn ext_quiver(a: &Subalgebra) -> Quiver {
    a.ext_quiver()
}

/// Outcome of the structural checks every maximal subalgebra must pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityCheck {
    pub codimension_one: bool,
    pub radical_is_intersection: bool,
    pub radical_square_inside: bool,
    pub radical_inside_ambient_radical: bool,
}

impl MaximalityCheck {
    pub fn holds(&self) -> bool {
        self.codimension_one && self.radical_is_intersection && self.radical_square_inside && self.radical_inside_ambient_radical
    }
}

/// `dim A = dim B - 1`, `J(A) = A ∩ J(B)` (via the trace form, independent of
/// how [`Subalgebra`] computes its radical), and `J(B)^2 ⊆ J(A) ⊆ J(B)`.
pub fn check_maximality(a: &Subalgebra) -> MaximalityCheck {
    let b = a.ambient();
    let intersection = a.space().tail_from(b.vertex_count());
    let traced = a.trace_form_radical();
    let jb = b.radical_power(1);
    let jb2 = b.radical_power(2);
    MaximalityCheck {
        codimension_one: a.dim() + 1 == b.dim(),
        radical_is_intersection: traced == intersection && *a.radical() == traced,
        radical_square_inside: a.radical().contains_subspace(&jb2) && a.space().contains_subspace(&jb2),
        radical_inside_ambient_radical: jb.contains_subspace(a.radical()),
    }
}

/// One entry of the radical-layer identity for a split subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayerIdentity {
    pub w: usize,
    pub x: usize,
    /// `dim w (J(A)/J(A)^2) x`
    pub lhs: usize,
    /// `dim w (J(A)/J(B)^2) x`
    pub first: usize,
    /// `dim w (J(B)^2/J(A)^2) x`
    pub second: usize,
}

impl LayerIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.first + self.second
    }
}

/// Evaluates `dim w(J(A)/J(A)^2)x = dim w(J(A)/J(B)^2)x + dim w(J(B)^2/J(A)^2)x`
/// at every vertex pair. Requires `A` to contain every vertex idempotent.
pub fn layer_identities(a: &Subalgebra) -> Result<Vec<LayerIdentity>> {
    let b = a.ambient();
    let nv = b.vertex_count();
    if (0..nv).any(|v| !a.contains(&b.vertex(v))) {
        return Err(Error::InvalidSplit("vertex idempotents are not all in A".into()));
    }
    let ja = a.radical();
    let ja2 = a.radical_power(2);
    let jb2 = b.radical_power(2);
    let mut out = Vec::with_capacity(nv * nv);
    for w in 0..nv {
        for x in 0..nv {
            let (ew, ex) = (b.vertex(w), b.vertex(x));
            let d = |s: &Subspace| a.sandwich(&ew, s, &ex).dim();
            let (dja, dja2, djb2) = (d(ja), d(ja2), d(&jb2));
            out.push(LayerIdentity {
                w,
                x,
                lhs: dja - dja2,
                first: dja - djb2,
                second: djb2 - dja2,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{word_to_quiver, BinaryWord};

    fn b(word: &str) -> Arc<PathAlgebra> {
        Arc::new(PathAlgebra::new(word_to_quiver(&word.parse::<BinaryWord>().unwrap())).unwrap())
    }

    #[test]
    fn separable_in_equioriented_a4() {
        let bb = b("+++");
        let a = build_separable(&bb, SeparableSpec::new(2, 3)).unwrap();
        assert_eq!(a.dim(), 9);
        assert_eq!(a.radical_power_dims(), vec![9, 6, 3, 1, 0]);
        assert!(a.space().contains_subspace(&bb.radical_power(1)));
        assert!(build_separable(&bb, SeparableSpec::new(1, 1)).is_err());
    }

    #[test]
    fn separable_keeps_other_vertices() {
        let bb = b("+-+");
        let a = build_separable(&bb, SeparableSpec::new(0, 3)).unwrap();
        assert!(a.contains(&bb.vertex(1)) && a.contains(&bb.vertex(2)));
        assert!(!a.contains(&bb.vertex(0)));
        assert_eq!(a.block_labels(), vec!["-2+2", "-1", "1"]);
    }

    #[test]
    fn split_in_equioriented_a4() {
        let bb = b("+++");
        let a = build_split(&bb, &SplitSpec::zero(2, 3)).unwrap();
        assert_eq!(a.dim(), 9);
        assert!(!a.contains(&Element::basis(bb.arrow_index(2))));
        assert!(a.space().contains_subspace(&bb.radical_power(2)));
        let e = a.ext_quiver();
        assert_eq!(e.multiplicity(2, 3), 0);
        assert_eq!(e.multiplicity(1, 3), 1);
        assert!(build_split(&bb, &SplitSpec::zero(3, 2)).is_err());
        let wrong = SplitSpec {
            u: 2,
            v: 3,
            subspace: vec![Element::basis(bb.arrow_index(2))],
        };
        assert!(matches!(build_split(&bb, &wrong), Err(Error::InvalidSplit(_))));
    }

    #[test]
    fn representative_counts() {
        for (w, n) in [("+++", 9), ("-+-", 9), ("+", 2), ("", 0)] {
            let reps = enumerate_representatives(&word_to_quiver(&w.parse().unwrap())).unwrap();
            assert_eq!(reps.len(), n, "{w}");
        }
        let reps = enumerate_representatives(&word_to_quiver(&"+++".parse().unwrap())).unwrap();
        let tags: Vec<String> = reps.iter().map(|r| r.tag.to_string()).collect();
        assert_eq!(tags[0], "A_{-2,-1}");
        assert_eq!(tags[6], "A_{-2}");
        assert_eq!("A_{-2,1}".parse::<RepTag>().unwrap(), RepTag::Separable { i: -2, j: 1 });
        assert_eq!("A_{1}".parse::<RepTag>().unwrap(), RepTag::Split { i: 1 });
    }

    #[test]
    fn non_type_a_is_rejected() {
        let q = Quiver::new(vec!["x".into(), "y".into()], [("a", 0, 1), ("b", 0, 1)]).unwrap();
        assert!(matches!(enumerate_representatives(&q), Err(Error::NotTypeA(_))));
    }

    #[test]
    fn ext_quivers_of_example_rows() {
        let bb = b("+++");
        let a = build_separable(&bb, SeparableSpec::new(0, 1)).unwrap();
        let e = a.ext_quiver();
        assert_eq!(e.vertex_count(), 3);
        assert_eq!(e.multiplicity(0, 0), 1);
        assert_eq!(e.multiplicity(0, 1), 1);
        assert_eq!(e.multiplicity(1, 2), 1);
        assert_eq!(e.arrow_count(), 3);

        let a = build_split(&bb, &SplitSpec::zero(1, 2)).unwrap();
        let e = a.ext_quiver();
        let arrows: Vec<(usize, usize)> = e.arrows().iter().map(|x| (x.source, x.target)).collect();
        assert_eq!(arrows, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn maximality_and_layers_on_small_words() {
        for len in 1..=5 {
            for w in BinaryWord::all(len) {
                let q = word_to_quiver(&w);
                let n = q.vertex_count();
                for rep in enumerate_representatives(&q).unwrap() {
                    assert!(check_maximality(&rep.algebra).holds(), "{w} {}", rep.tag);
                    if let RepSpec::Split(s) = &rep.spec {
                        assert!(layer_identities(&rep.algebra).unwrap().iter().all(LayerIdentity::holds));
                        assert_eq!(rep.algebra.ext_quiver().multiplicity(s.u, s.v), 0);
                        assert_eq!(rep.algebra.ext_quiver().vertex_count(), n);
                    }
                }
            }
        }
    }
}
