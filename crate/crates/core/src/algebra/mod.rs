//! Path algebras of acyclic quivers, their truncations, and subalgebras.

mod subalgebra;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_scalar, parse_scalar, Element, Scalar, Subspace};
use crate::quiver::{Quiver, VertexMap};

pub use subalgebra::Subalgebra;

/// A path: either the trivial path at a vertex (no arrows) or a composable
/// arrow sequence read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// The algebra `kQ`, or `kQ/J^n` when truncated, on its path basis.
///
/// Basis order: trivial paths in vertex order, then the remaining paths by
/// length and then lexicographically by arrow id. So basis index `v` is the
/// idempotent `e_v`, and the paths of length at least `r` form a tail of the
/// basis.
#[derive(Debug)]
pub struct PathAlgebra {
    quiver: Quiver,
    truncation: Option<usize>,
    paths: Vec<Path>,
    lookup: HashMap<Vec<usize>, usize>,
    length_start: Vec<usize>,
    table: Vec<Option<u32>>,
}

impl PathAlgebra {
    pub fn new(quiver: Quiver) -> Result<Self> {
        Self::build(quiver, None)
    }

    /// `kQ / J^n` for `n >= 2`.
    pub fn truncated(quiver: Quiver, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidTruncation(n));
        }
        Self::build(quiver, Some(n))
    }

    fn build(quiver: Quiver, truncation: Option<usize>) -> Result<Self> {
        if !quiver.is_acyclic() {
            return Err(Error::NotAcyclic);
        }
        let nv = quiver.vertex_count();
        let mut paths: Vec<Path> = (0..nv)
            .map(|v| Path {
                source: v,
                target: v,
                arrows: Vec::new(),
            })
            .collect();
        let mut length_start = vec![0, nv];
        let mut layer: Vec<Path> = quiver
            .arrows()
            .iter()
            .map(|a| Path {
                source: a.source,
                target: a.target,
                arrows: vec![a.id],
            })
            .collect();
        let mut len = 1;
        while !layer.is_empty() && truncation.is_none_or(|n| len < n) {
            layer.sort_by(|a, b| a.arrows.cmp(&b.arrows));
            paths.extend(layer.iter().cloned());
            length_start.push(paths.len());
            let next: Vec<Path> = layer
                .iter()
                .flat_map(|p| {
                    quiver.out_arrows(p.target).map(move |a| {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a.id);
                        Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        }
                    })
                })
                .collect();
            layer = next;
            len += 1;
        }
        let lookup: HashMap<Vec<usize>, usize> = paths
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_trivial())
            .map(|(i, p)| (p.arrows.clone(), i))
            .collect();
        let d = paths.len();
        let mut table = vec![None; d * d];
        for (i, p) in paths.iter().enumerate() {
            for (j, q) in paths.iter().enumerate() {
                if p.target != q.source {
                    continue;
                }
                table[i * d + j] = if p.is_trivial() {
                    Some(j as u32)
                } else if q.is_trivial() {
                    Some(i as u32)
                } else {
                    let mut arrows = p.arrows.clone();
                    arrows.extend_from_slice(&q.arrows);
                    lookup.get(&arrows).map(|&k| k as u32)
                };
            }
        }
        Ok(Self {
            quiver,
            truncation,
            paths,
            lookup,
            length_start,
            table,
        })
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    /// True when the truncation removes no path, i.e. `I = 0`.
    pub fn is_hereditary(&self) -> bool {
        self.truncation_generators().is_empty()
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn max_path_length(&self) -> usize {
        self.length_start.len() - 2
    }

    /// Basis indices of the paths of length exactly `r`.
    pub fn paths_of_length(&self, r: usize) -> std::ops::Range<usize> {
        if r + 1 >= self.length_start.len() {
            return self.dim()..self.dim();
        }
        self.length_start[r]..self.length_start[r + 1]
    }

    /// First basis index of a path of length `r` or more.
    pub fn length_at_least(&self, r: usize) -> usize {
        self.length_start.get(r).copied().unwrap_or(self.dim())
    }

    /// Index of the path with this arrow sequence (nonempty), if it survives.
    pub fn path_index(&self, arrows: &[usize]) -> Option<usize> {
        self.lookup.get(arrows).copied()
    }

    pub fn arrow_index(&self, arrow: usize) -> usize {
        self.lookup[&vec![arrow]]
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Option<usize> {
        self.table[i * self.dim() + j].map(|k| k as usize)
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for &(i, a) in x.terms() {
            for &(j, b) in y.terms() {
                if let Some(k) = self.mul_basis(i, j) {
                    *acc.entry(k).or_insert_with(Scalar::zero) += a * b;
                }
            }
        }
        Element::from_terms(acc)
    }

    pub fn one(&self) -> Element {
        Element::indicator(0..self.vertex_count())
    }

    pub fn vertex(&self, v: usize) -> Element {
        Element::basis(v)
    }

    /// `J^r` as a coordinate subspace.
    pub fn radical_power(&self, r: usize) -> Subspace {
        Subspace::coordinate(self.dim(), self.length_at_least(r)..self.dim())
    }

    /// `[dim J^0, dim J^1, ..., 0]`.
    pub fn radical_power_dims(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = (0..self.length_start.len()).map(|r| self.dim() - self.length_at_least(r)).collect();
        dims.dedup();
        dims
    }

    /// Indices of the paths from `u` to `v`.
    pub fn paths_between(&self, u: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&i| self.paths[i].source == u && self.paths[i].target == v)
    }

    /// Arrow sequences of length exactly `n` in `kQ`, the generators of the
    /// truncation ideal.
    pub fn truncation_generators(&self) -> Vec<Vec<usize>> {
        let Some(n) = self.truncation else { return Vec::new() };
        let mut out = Vec::new();
        for i in self.paths_of_length(n - 1) {
            let p = &self.paths[i];
            for a in self.quiver.out_arrows(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(a.id);
                out.push(arrows);
            }
        }
        out.sort();
        out
    }

    /// Identifier used in serialized elements: `e{label}` for trivial paths,
    /// otherwise arrow names joined by `*`.
    pub fn path_id(&self, i: usize) -> String {
        let p = &self.paths[i];
        if p.is_trivial() {
            format!("e{}", self.quiver.label(p.source))
        } else {
            p.arrows.iter().map(|&a| self.quiver.arrow(a).name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    pub fn path_by_id(&self, id: &str) -> Option<usize> {
        if let Some(label) = id.strip_prefix('e') {
            if let Some(v) = self.quiver.vertex_index(label) {
                return Some(v);
            }
        }
        let arrows: Option<Vec<usize>> = id.split('*').map(|n| self.quiver.arrow_by_name(n).map(|a| a.id)).collect();
        self.path_index(&arrows?)
    }

    pub fn element_to_json(&self, x: &Element) -> BTreeMap<String, String> {
        x.terms().iter().map(|(i, c)| (self.path_id(*i), format_scalar(c))).collect()
    }

    pub fn element_from_json(&self, m: &BTreeMap<String, String>) -> Result<Element> {
        let mut terms = Vec::new();
        for (k, v) in m {
            let i = self.path_by_id(k).ok_or_else(|| Error::UnknownVertex(k.clone()))?;
            let c = parse_scalar(v).ok_or_else(|| Error::UnknownVertex(format!("bad coefficient {v}")))?;
            terms.push((i, c));
        }
        Ok(Element::from_terms(terms))
    }

    pub fn format_element(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms()
            .iter()
            .map(|(i, c)| {
                if c.is_one() {
                    self.path_id(*i)
                } else {
                    format!("({}){}", c, self.path_id(*i))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Basis permutation induced by a quiver automorphism with arrow map.
    pub fn path_permutation(&self, map: &VertexMap) -> Option<Vec<usize>> {
        let am = map.arrows.as_ref()?;
        self.paths
            .iter()
            .map(|p| {
                if p.is_trivial() {
                    Some(map.apply(p.source))
                } else {
                    let image: Vec<usize> = p.arrows.iter().map(|&a| am[a]).collect();
                    self.path_index(&image)
                }
            })
            .collect()
    }

    /// Spot check of associativity on every basis triple.
    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let left = self.mul_basis(i, j).and_then(|ij| self.mul_basis(ij, k));
                    let right = self.mul_basis(j, k).and_then(|jk| self.mul_basis(i, jk));
                    left == right
                })
            })
        })
    }
}

/// Sum of `c * e_v` over the given vertices, as an element of `B`.
pub fn vertex_sum<I: IntoIterator<Item = usize>>(vertices: I) -> Element {
    Element::from_terms(vertices.into_iter().map(|v| (v, Scalar::one())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{aut_group, word_to_quiver, BinaryWord};

    fn b(word: &str) -> PathAlgebra {
        PathAlgebra::new(word_to_quiver(&word.parse::<BinaryWord>().unwrap())).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(b("+++").dim(), 10);
        assert_eq!(b("").dim(), 1);
        assert_eq!(b("+-").dim(), 5);
        let q = word_to_quiver(&"+++".parse().unwrap());
        assert_eq!(PathAlgebra::truncated(q.clone(), 2).unwrap().dim(), 7);
        assert_eq!(PathAlgebra::truncated(q.clone(), 3).unwrap().dim(), 9);
        assert_eq!(PathAlgebra::truncated(q, 1).unwrap_err(), Error::InvalidTruncation(1));
        let pt = word_to_quiver(&"".parse().unwrap());
        assert_eq!(PathAlgebra::truncated(pt, 2).unwrap().dim(), 1);
    }

    #[test]
    fn rejects_cycles() {
        let q = Quiver::new(vec!["x".into(), "y".into()], [("a", 0, 1), ("b", 1, 0)]).unwrap();
        assert_eq!(PathAlgebra::new(q).unwrap_err(), Error::NotAcyclic);
    }

    #[test]
    fn radical_layers() {
        assert_eq!(b("+++").radical_power_dims(), vec![10, 6, 3, 1, 0]);
        assert_eq!(b("").radical_power_dims(), vec![1, 0]);
        assert_eq!(b("+-").radical_power_dims(), vec![5, 2, 0]);
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = b("+++");
        let alpha = a.arrow_index(0);
        let beta = a.arrow_index(1);
        let ab = a.mul_basis(alpha, beta).unwrap();
        assert_eq!(a.path_id(ab), "a-2*a-1");
        assert_eq!(a.mul_basis(beta, alpha), None);
        assert_eq!(a.mul_basis(0, alpha), Some(alpha));
        assert_eq!(a.mul_basis(1, alpha), None);
        assert_eq!(a.mul(&a.one(), &Element::basis(ab)), Element::basis(ab));
    }

    #[test]
    fn truncation_generators_and_heredity() {
        let q = word_to_quiver(&"+++".parse().unwrap());
        let t = PathAlgebra::truncated(q.clone(), 3).unwrap();
        assert_eq!(t.truncation_generators(), vec![vec![0, 1, 2]]);
        assert!(!t.is_hereditary());
        assert!(PathAlgebra::truncated(q, 4).unwrap().is_hereditary());
        assert!(t.is_associative());
    }

    #[test]
    fn element_json_roundtrip() {
        let a = b("+++");
        let x = Element::from_terms([(0, Scalar::new(1, 2)), (a.path_index(&[0, 1]).unwrap(), Scalar::from_integer(-3))]);
        let j = a.element_to_json(&x);
        assert_eq!(j["e-2"], "1/2");
        assert_eq!(j["a-2*a-1"], "-3/1");
        assert_eq!(a.element_from_json(&j).unwrap(), x);
    }

    #[test]
    fn automorphisms_permute_paths() {
        let a = b("+-");
        let aut = aut_group(a.quiver());
        let perm = a.path_permutation(&aut[1]).unwrap();
        assert_eq!(perm, vec![2, 1, 0, 4, 3]);
    }

    #[test]
    fn associativity_and_layer_sums_over_small_words() {
        for len in 0..=5 {
            for w in BinaryWord::all(len) {
                let a = PathAlgebra::new(word_to_quiver(&w)).unwrap();
                assert!(a.is_associative());
                let dims = a.radical_power_dims();
                let layers: usize = dims.windows(2).map(|p| p[0] - p[1]).sum();
                assert_eq!(layers, a.dim());
                let byq: usize = (0..=a.max_path_length()).map(|r| a.paths_of_length(r).len()).sum();
                assert_eq!(byq, a.dim());
            }
        }
    }
}
