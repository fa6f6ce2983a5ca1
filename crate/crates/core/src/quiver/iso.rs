use super::Quiver;

/// A vertex bijection between two quivers together with a compatible arrow
/// bijection. `vertices[v]` is the image of vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexMap {
    pub vertices: Vec<usize>,
    pub arrows: Option<Vec<usize>>,
}

impl VertexMap {
    pub fn identity(q: &Quiver) -> Self {
        Self {
            vertices: (0..q.vertex_count()).collect(),
            arrows: Some((0..q.arrow_count()).collect()),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn apply(&self, v: usize) -> usize {
        self.vertices[v]
    }

    pub fn inverse(&self) -> Self {
        Self {
            vertices: invert(&self.vertices),
            arrows: self.arrows.as_deref().map(invert),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &VertexMap) -> Self {
        let arrows = match (&self.arrows, &other.arrows) {
            (Some(a), Some(b)) => Some(a.iter().map(|&x| b[x]).collect()),
            _ => None,
        };
        Self {
            vertices: self.vertices.iter().map(|&v| other.vertices[v]).collect(),
            arrows,
        }
    }

    /// Checks that this is an isomorphism `q1 -> q2`: the vertex map is a
    /// bijection and the arrow map (or, without one, the multiplicities) match.
    pub fn is_isomorphism(&self, q1: &Quiver, q2: &Quiver) -> bool {
        let n = q1.vertex_count();
        if n != q2.vertex_count() || self.vertices.len() != n || !is_permutation(&self.vertices) {
            return false;
        }
        if q1.arrow_count() != q2.arrow_count() {
            return false;
        }
        match &self.arrows {
            Some(am) => {
                am.len() == q1.arrow_count()
                    && is_permutation(am)
                    && q1.arrows().iter().all(|a| {
                        let b = q2.arrow(am[a.id]);
                        b.source == self.vertices[a.source] && b.target == self.vertices[a.target]
                    })
            }
            None => {
                let m1 = q1.multiplicity_matrix();
                let m2 = q2.multiplicity_matrix();
                (0..n).all(|u| (0..n).all(|v| m1[u][v] == m2[self.vertices[u]][self.vertices[v]]))
            }
        }
    }
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// All isomorphisms `q1 -> q2`, sorted by vertex image. Each carries the arrow
/// bijection that matches parallel arrows in id order.
pub fn quiver_isomorphisms(q1: &Quiver, q2: &Quiver) -> Vec<VertexMap> {
    let n = q1.vertex_count();
    if n != q2.vertex_count() || q1.arrow_count() != q2.arrow_count() || q1.invariant_key() != q2.invariant_key() {
        return Vec::new();
    }
    let m1 = q1.multiplicity_matrix();
    let m2 = q2.multiplicity_matrix();
    let sig = |m: &Vec<Vec<usize>>, v: usize| {
        let out: usize = m[v].iter().sum();
        let inn: usize = m.iter().map(|r| r[v]).sum();
        (out, inn, m[v][v])
    };
    let sig1: Vec<_> = (0..n).map(|v| sig(&m1, v)).collect();
    let sig2: Vec<_> = (0..n).map(|v| sig(&m2, v)).collect();

    let mut results = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(0, &m1, &m2, &sig1, &sig2, &mut image, &mut used, &mut results);
    results.sort();
    results
        .into_iter()
        .map(|vertices| {
            let arrows = Some(arrow_bijection(q1, q2, &vertices));
            VertexMap { vertices, arrows }
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn search(
    v: usize,
    m1: &[Vec<usize>],
    m2: &[Vec<usize>],
    sig1: &[(usize, usize, usize)],
    sig2: &[(usize, usize, usize)],
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = image.len();
    if v == n {
        out.push(image.clone());
        return;
    }
    for w in 0..n {
        if used[w] || sig1[v] != sig2[w] {
            continue;
        }
        let consistent = (0..v).all(|u| m1[u][v] == m2[image[u]][w] && m1[v][u] == m2[w][image[u]]);
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        search(v + 1, m1, m2, sig1, sig2, image, used, out);
        used[w] = false;
        image[v] = usize::MAX;
    }
}

fn arrow_bijection(q1: &Quiver, q2: &Quiver, vertices: &[usize]) -> Vec<usize> {
    let mut map = vec![usize::MAX; q1.arrow_count()];
    let mut taken = vec![false; q2.arrow_count()];
    for a in q1.arrows() {
        let (s, t) = (vertices[a.source], vertices[a.target]);
        let b = q2
            .arrows_between(s, t)
            .find(|b| !taken[b.id])
            .expect("multiplicities agree");
        taken[b.id] = true;
        map[a.id] = b.id;
    }
    map
}

pub fn aut_group(q: &Quiver) -> Vec<VertexMap> {
    quiver_isomorphisms(q, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{word_to_quiver, BinaryWord};

    fn wq(s: &str) -> Quiver {
        word_to_quiver(&s.parse::<BinaryWord>().unwrap())
    }

    #[test]
    fn equioriented_a4_is_rigid() {
        let q = wq("+++");
        let isos = quiver_isomorphisms(&q, &q);
        assert_eq!(isos.len(), 1);
        assert!(isos[0].is_identity());
    }

    #[test]
    fn symmetric_word_has_flip() {
        let q = wq("+-");
        let isos = aut_group(&q);
        assert_eq!(isos.len(), 2);
        assert_eq!(isos[1].vertices, vec![2, 1, 0]);
        assert!(isos.iter().all(|m| m.is_isomorphism(&q, &q)));
    }

    #[test]
    fn different_orientations_of_a3() {
        assert!(quiver_isomorphisms(&wq("++"), &wq("-+")).is_empty());
        assert_eq!(aut_group(&wq("+-+")).len(), 1);
        assert_eq!(aut_group(&wq("+++")).len(), 1);
    }

    #[test]
    fn parallel_arrows_count_once_per_vertex_map() {
        let k = Quiver::new(vec!["x".into(), "y".into()], [("a", 0, 1), ("b", 0, 1)]).unwrap();
        let isos = aut_group(&k);
        assert_eq!(isos.len(), 1);
        assert_eq!(isos[0].arrows, Some(vec![0, 1]));
    }

    #[test]
    fn map_algebra() {
        let q = wq("+-");
        let flip = &aut_group(&q)[1];
        assert!(flip.then(flip).is_identity());
        assert_eq!(flip.inverse(), *flip);
        let bad = VertexMap {
            vertices: vec![1, 0, 2],
            arrows: None,
        };
        assert!(!bad.is_isomorphism(&q, &q));
    }
}
