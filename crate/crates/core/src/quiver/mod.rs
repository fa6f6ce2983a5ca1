//! Finite quivers, type-A orientation words, and quiver isomorphisms.

mod iso;
mod word;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use iso::{aut_group, quiver_isomorphisms, VertexMap};
pub use word::{type_a_labels, word_to_quiver, BinaryWord, Letter, TypeALabels};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: usize,
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph. Vertices and arrows are addressed by dense
/// indices; labels and names are carried for display and serialization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex labels and `(name, source, target)` triples
    /// given by vertex index. Arrow ids are assigned in order.
    pub fn new<I, S>(vertices: Vec<String>, arrows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize, usize)>,
        S: Into<String>,
    {
        let n = vertices.len();
        let arrows: Vec<Arrow> = arrows
            .into_iter()
            .enumerate()
            .map(|(id, (name, source, target))| Arrow {
                id,
                name: name.into(),
                source,
                target,
            })
            .collect();
        for a in &arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::UnknownVertex(format!("arrow {} has an endpoint outside 0..{}", a.name, n)));
            }
        }
        Ok(Self { vertices, arrows })
    }

    /// Same as [`Quiver::new`] but with endpoints given by label.
    pub fn from_labels<I, S, L>(vertices: Vec<String>, arrows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, L, L)>,
        S: Into<String>,
        L: AsRef<str>,
    {
        let index: BTreeMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut resolved = Vec::new();
        for (name, s, t) in arrows {
            let s = *index.get(s.as_ref()).ok_or_else(|| Error::UnknownVertex(s.as_ref().to_string()))?;
            let t = *index.get(t.as_ref()).ok_or_else(|| Error::UnknownVertex(t.as_ref().to_string()))?;
            resolved.push((name.into(), s, t));
        }
        let vertices = vertices.clone();
        Self::new(vertices, resolved)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|l| l == label)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: usize) -> &Arrow {
        &self.arrows[id]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.name == name)
    }

    pub fn arrows_between(&self, u: usize, v: usize) -> impl Iterator<Item = &Arrow> + '_ {
        self.arrows.iter().filter(move |a| a.source == u && a.target == v)
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.arrows_between(u, v).count()
    }

    pub fn out_arrows(&self, u: usize) -> impl Iterator<Item = &Arrow> + '_ {
        self.arrows.iter().filter(move |a| a.source == u)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = &Arrow> + '_ {
        self.arrows.iter().filter(move |a| a.target == v)
    }

    /// Dense `n x n` arrow-count matrix, row = source.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut m = vec![vec![0; n]; n];
        for a in &self.arrows {
            m[a.source][a.target] += 1;
        }
        m
    }

    /// Topological order of the vertices, or `None` if there is a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for a in self.out_arrows(v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Neighbors in the underlying undirected multigraph (with repetition;
    /// a loop contributes its vertex twice).
    pub fn underlying_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for a in &self.arrows {
            if a.source == v {
                out.push(a.target);
            }
            if a.target == v {
                out.push(a.source);
            }
        }
        out
    }

    pub fn underlying_degree(&self, v: usize) -> usize {
        self.underlying_neighbors(v).len()
    }

    /// Connected components of the underlying graph, each sorted, in order of
    /// their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                for w in self.underlying_neighbors(comp[i]) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Underlying graph is a simple path (includes the one-vertex quiver).
    pub fn is_path_graph(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        if self.arrow_count() != n - 1 || !self.is_connected() {
            return false;
        }
        let simple = self.arrows.iter().all(|a| a.source != a.target)
            && (0..n).all(|u| (0..n).all(|v| self.multiplicity(u, v) + self.multiplicity(v, u) <= 1));
        simple && (0..n).all(|v| self.underlying_degree(v) <= 2)
    }

    /// Unordered-graph distance between two vertices, if connected.
    pub fn distance(&self, from: usize, to: usize) -> Option<usize> {
        let n = self.vertex_count();
        let mut dist = vec![usize::MAX; n];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for w in self.underlying_neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        (dist[to] != usize::MAX).then_some(dist[to])
    }

    /// Degree signature multiset used to prune isomorphism tests.
    pub fn invariant_key(&self) -> Vec<(usize, usize, usize)> {
        let n = self.vertex_count();
        let mut sig: Vec<(usize, usize, usize)> = (0..n)
            .map(|v| {
                let loops = self.multiplicity(v, v);
                (self.out_arrows(v).count() - loops, self.in_arrows(v).count() - loops, loops)
            })
            .collect();
        sig.sort_unstable();
        sig
    }

    /// Copy with vertex labels and arrow names rewritten.
    pub fn relabeled<F: Fn(&str) -> String, G: Fn(&str) -> String>(&self, vertex: F, arrow: G) -> Quiver {
        Quiver {
            vertices: self.vertices.iter().map(|l| vertex(l)).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    id: a.id,
                    name: arrow(&a.name),
                    source: a.source,
                    target: a.target,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson::from(self)
    }
}

/// External form: `{vertices: [labels], arrows: [{id, name, src, tgt}]}` with
/// arrows sorted by id and endpoints given by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: usize,
    pub name: String,
    pub src: String,
    pub tgt: String,
}

impl From<&Quiver> for QuiverJson {
    fn from(q: &Quiver) -> Self {
        let mut arrows: Vec<ArrowJson> = q
            .arrows
            .iter()
            .map(|a| ArrowJson {
                id: a.id,
                name: a.name.clone(),
                src: q.vertices[a.source].clone(),
                tgt: q.vertices[a.target].clone(),
            })
            .collect();
        arrows.sort_by_key(|a| a.id);
        QuiverJson {
            vertices: q.vertices.clone(),
            arrows,
        }
    }
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = Error;
    fn try_from(j: QuiverJson) -> Result<Self> {
        let mut arrows = j.arrows;
        arrows.sort_by_key(|a| a.id);
        if arrows.iter().enumerate().any(|(k, a)| a.id != k) {
            return Err(Error::UnknownVertex("arrow ids must be 0..n".into()));
        }
        Quiver::from_labels(j.vertices, arrows.into_iter().map(|a| (a.name, a.src, a.tgt)))
    }
}

impl Serialize for Quiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuiverJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = QuiverJson::deserialize(d)?;
        Quiver::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kronecker() -> Quiver {
        Quiver::new(vec!["x".into(), "y".into()], [("a", 0, 1), ("b", 0, 1)]).unwrap()
    }

    #[test]
    fn json_roundtrip() {
        let q = kronecker();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(
            s,
            r#"{"vertices":["x","y"],"arrows":[{"id":0,"name":"a","src":"x","tgt":"y"},{"id":1,"name":"b","src":"x","tgt":"y"}]}"#
        );
        let back: Quiver = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn rejects_unknown_endpoints() {
        assert!(Quiver::new(vec!["x".into()], [("a", 0, 1)]).is_err());
        assert!(Quiver::from_labels(vec!["x".into()], [("a", "x", "z")]).is_err());
    }

    #[test]
    fn acyclicity_and_shape() {
        let q = kronecker();
        assert!(q.is_acyclic());
        assert!(!q.is_path_graph());
        let cyc = Quiver::new(vec!["x".into(), "y".into()], [("a", 0, 1), ("b", 1, 0)]).unwrap();
        assert!(!cyc.is_acyclic());
        let lp = Quiver::new(vec!["x".into()], [("a", 0, 0)]).unwrap();
        assert!(!lp.is_acyclic());
        assert_eq!(lp.invariant_key(), vec![(0, 0, 1)]);
    }

    #[test]
    fn components_of_disjoint_union() {
        let q = Quiver::new(vec!["a".into(), "b".into(), "c".into()], [("x", 2, 0)]).unwrap();
        assert_eq!(q.components(), vec![vec![0, 2], vec![1]]);
        assert!(!q.is_connected());
        assert_eq!(q.distance(0, 2), Some(1));
        assert_eq!(q.distance(0, 1), None);
    }
}
