use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{SeparableSpec, SplitSpec};
use crate::algebra::{vertex_sum, PathAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{format_scalar, parse_scalar, Element, Scalar, Subspace};
use crate::quiver::{Quiver, QuiverJson};

/// One summand of a relation: a coefficient times a path of `Γ`, given by
/// arrow ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub path: Vec<usize>,
    pub coeff: Scalar,
}

impl Term {
    pub fn monomial(path: Vec<usize>) -> Self {
        Self {
            path,
            coeff: Scalar::one(),
        }
    }
}

/// A bound quiver `(Γ, I')` together with the map `kΓ -> B` that realizes it
/// inside the ambient algebra.
#[derive(Clone, Debug)]
pub struct Presentation {
    ambient: Arc<PathAlgebra>,
    quiver: Quiver,
    relations: Vec<Vec<Term>>,
    vertex_images: Vec<Element>,
    arrow_images: Vec<Element>,
}

impl Presentation {
    pub fn new(
        ambient: Arc<PathAlgebra>,
        quiver: Quiver,
        relations: Vec<Vec<Term>>,
        vertex_images: Vec<Element>,
        arrow_images: Vec<Element>,
    ) -> Self {
        Self {
            ambient,
            quiver,
            relations,
            vertex_images,
            arrow_images,
        }
    }

    pub fn ambient(&self) -> &Arc<PathAlgebra> {
        &self.ambient
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Vec<Term>] {
        &self.relations
    }

    pub fn vertex_images(&self) -> &[Element] {
        &self.vertex_images
    }

    pub fn arrow_images(&self) -> &[Element] {
        &self.arrow_images
    }

    /// Image in `B` of a nonempty path of `Γ`.
    pub fn realize_path(&self, path: &[usize]) -> Element {
        let b = &self.ambient;
        let mut x = self.arrow_images[path[0]].clone();
        for &a in &path[1..] {
            x = b.mul(&x, &self.arrow_images[a]);
        }
        x
    }

    pub fn realize(&self, relation: &[Term]) -> Element {
        relation
            .iter()
            .fold(Element::zero(), |acc, t| acc.add_scaled(&self.realize_path(&t.path), t.coeff))
    }

    /// Relation rendered with arrow names, paths joined by `*`.
    pub fn format_relation(&self, relation: &[Term]) -> String {
        relation
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let path = t.path.iter().map(|&a| self.quiver.arrow(a).name.as_str()).collect::<Vec<_>>().join("*");
                let sign = if t.coeff < Scalar::zero() { "- " } else if k > 0 { "+ " } else { "" };
                let mag = if t.coeff < Scalar::zero() { -t.coeff } else { t.coeff };
                if mag.is_one() {
                    format!("{sign}{path}")
                } else {
                    format!("{sign}({mag}){path}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn is_homogeneous(&self) -> bool {
        self.relations
            .iter()
            .all(|r| !r.is_empty() && r.iter().all(|t| t.path.len() == r[0].path.len()))
    }

    /// `dim (kΓ/I')_d` for `d = 0, 1, ...` up to the first zero, where `I'` is
    /// generated by the (homogeneous) relations. Fails if the quotient does
    /// not vanish by degree `max_degree`.
    pub fn graded_quotient_dims(&self, max_degree: usize) -> Result<Vec<usize>> {
        if !self.is_homogeneous() {
            return Err(Error::UnsupportedPresentation("relations are not homogeneous".into()));
        }
        quotient_dims(&self.quiver, &self.relations, max_degree)
    }

    /// Checks that this is a presentation of `target`: admissible homogeneous
    /// relations that vanish in `B`, images that generate `target`, graded
    /// quotient dimensions equal to the radical layers of `target`, and `Γ`
    /// equal to the Ext quiver of `target` under the vertex correspondence.
    pub fn verify(&self, target: &Subalgebra) -> Result<()> {
        let b = &self.ambient;
        let fail = |m: String| Err(Error::PresentationMismatch(m));
        if !Arc::ptr_eq(b, target.ambient()) && b.quiver() != target.ambient().quiver() {
            return fail("different ambient algebras".into());
        }
        if self.relations.iter().flatten().any(|t| t.path.len() < 2) {
            return fail("a relation has a term of length below 2".into());
        }
        for (k, r) in self.relations.iter().enumerate() {
            if !self.realize(r).is_zero() {
                return fail(format!("relation {k} ({}) does not vanish", self.format_relation(r)));
            }
        }
        let total = self.vertex_images.iter().fold(Element::zero(), |acc, e| &acc + e);
        if total != b.one() {
            return fail("vertex images do not sum to the unit".into());
        }
        for a in self.quiver.arrows() {
            let (s, t) = (&self.vertex_images[a.source], &self.vertex_images[a.target]);
            let x = &self.arrow_images[a.id];
            if b.mul(&b.mul(s, x), t) != *x {
                return fail(format!("arrow {} is not in e_s B e_t", a.name));
            }
        }
        let mut gens = self.vertex_images.clone();
        gens.extend(self.arrow_images.iter().cloned());
        let generated = Subalgebra::generated_by(b.clone(), &gens)?;
        if generated.space() != target.space() {
            return fail(format!("images generate a {}-dimensional algebra, target has {}", generated.dim(), target.dim()));
        }

        let layers: Vec<usize> = {
            let dims = target.radical_power_dims();
            dims.windows(2).map(|p| p[0] - p[1]).collect()
        };
        let quotient = self.graded_quotient_dims(target.dim() + 1)?;
        if quotient != layers {
            return fail(format!("graded dimensions {quotient:?} differ from radical layers {layers:?}"));
        }

        let mut block_of = Vec::with_capacity(self.vertex_images.len());
        for e in &self.vertex_images {
            match target.idempotents().iter().position(|f| f == e) {
                Some(k) => block_of.push(k),
                None => return fail("a vertex image is not one of the primitive idempotents".into()),
            }
        }
        let ext = target.ext_quiver();
        let n = self.quiver.vertex_count();
        for x in 0..n {
            for y in 0..n {
                if self.quiver.multiplicity(x, y) != ext.multiplicity(block_of[x], block_of[y]) {
                    return fail(format!(
                        "arrow count {} -> {} differs from the Ext quiver",
                        self.quiver.label(x),
                        self.quiver.label(y)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> PresentationJson {
        let names = |path: &[usize]| path.iter().map(|&a| self.quiver.arrow(a).name.clone()).collect();
        PresentationJson {
            quiver: self.quiver.to_json(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|t| TermJson {
                            path: names(&t.path),
                            coeff: format_scalar(&t.coeff),
                        })
                        .collect()
                })
                .collect(),
            arrow_dict: self
                .quiver
                .arrows()
                .iter()
                .map(|a| (a.name.clone(), self.ambient.element_to_json(&self.arrow_images[a.id])))
                .collect(),
        }
    }
}

/// External form of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub quiver: QuiverJson,
    pub relations: Vec<Vec<TermJson>>,
    pub arrow_dict: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub path: Vec<String>,
    pub coeff: String,
}

/// A relation as `(arrow names, coefficient)` terms.
pub type NamedRelation = Vec<(Vec<String>, Scalar)>;

impl PresentationJson {
    /// Relations as sets of `(arrow names, coefficient)`, for comparisons that
    /// ignore term and relation order.
    pub fn relation_set(&self) -> Result<Vec<NamedRelation>> {
        let mut out = Vec::new();
        for r in &self.relations {
            let mut terms = Vec::new();
            for t in r {
                let c = parse_scalar(&t.coeff).ok_or_else(|| Error::PresentationMismatch(format!("bad coefficient {}", t.coeff)))?;
                terms.push((t.path.clone(), c));
            }
            terms.sort();
            out.push(terms);
        }
        out.sort();
        Ok(out)
    }
}

/// Degree-by-degree dimensions of `kΓ / (relations)`; `I_d` is built as
/// `Γ_1 I_{d-1} + I_{d-1} Γ_1 + R_d`.
fn quotient_dims(gamma: &Quiver, relations: &[Vec<Term>], max_degree: usize) -> Result<Vec<usize>> {
    if gamma.vertex_count() == 0 {
        return Ok(Vec::new());
    }
    let mut dims = vec![gamma.vertex_count()];
    let mut prev: Vec<Vec<usize>> = Vec::new();
    let mut ideal: Vec<Element> = Vec::new();
    let mut paths: Vec<Vec<usize>> = gamma.arrows().iter().map(|a| vec![a.id]).collect();
    let mut d = 1;
    while !paths.is_empty() {
        if d > max_degree {
            return Err(Error::PresentationMismatch(format!("quotient does not vanish by degree {max_degree}")));
        }
        let index: HashMap<&[usize], usize> = paths.iter().enumerate().map(|(k, p)| (p.as_slice(), k)).collect();
        let mut span = Subspace::new(paths.len());
        for x in &ideal {
            for a in gamma.arrows() {
                let left = x.terms().iter().filter_map(|&(k, c)| {
                    let p = &prev[k];
                    (gamma.arrow(p[0]).source == a.target).then(|| {
                        let mut q = vec![a.id];
                        q.extend_from_slice(p);
                        (index[q.as_slice()], c)
                    })
                });
                span.insert(&Element::from_terms(left));
                let right = x.terms().iter().filter_map(|&(k, c)| {
                    let p = &prev[k];
                    (gamma.arrow(p[p.len() - 1]).target == a.source).then(|| {
                        let mut q = p.clone();
                        q.push(a.id);
                        (index[q.as_slice()], c)
                    })
                });
                span.insert(&Element::from_terms(right));
            }
        }
        for r in relations.iter().filter(|r| r[0].path.len() == d) {
            let mut terms = Vec::with_capacity(r.len());
            for t in r {
                let k = index
                    .get(t.path.as_slice())
                    .ok_or_else(|| Error::PresentationMismatch("relation term is not a path of the quiver".into()))?;
                terms.push((*k, t.coeff));
            }
            span.insert(&Element::from_terms(terms));
        }
        let q = paths.len() - span.dim();
        if q == 0 {
            break;
        }
        dims.push(q);
        ideal = span.basis().cloned().collect();
        let next: Vec<Vec<usize>> = paths
            .iter()
            .flat_map(|p| {
                gamma.out_arrows(gamma.arrow(p[p.len() - 1]).target).map(move |a| {
                    let mut q = p.clone();
                    q.push(a.id);
                    q
                })
            })
            .collect();
        prev = std::mem::replace(&mut paths, next);
        d += 1;
    }
    Ok(dims)
}

/// Gluing presentation: `Γ` is `Q` with `u` and `v` identified, arrows keep
/// their ids and names, and the relations are `αβ` for `α` into one of the
/// glued vertices and `β` out of the other, followed by the images of the
/// truncation generators when `B` is truncated.
pub fn present_separable(b: &Arc<PathAlgebra>, spec: SeparableSpec) -> Result<Presentation> {
    spec.validate(b.quiver())?;
    let q = b.quiver();
    let (u, v) = (spec.u, spec.v);
    let glued_label = format!("{}+{}", q.label(u), q.label(v));
    let mut labels = Vec::new();
    let mut phi = vec![0usize; q.vertex_count()];
    let mut vertex_images = Vec::new();
    for w in 0..q.vertex_count() {
        if w == v {
            continue;
        }
        let k = labels.len();
        if w == u {
            labels.push(glued_label.clone());
            vertex_images.push(vertex_sum([u, v]));
        } else {
            labels.push(q.label(w).to_string());
            vertex_images.push(b.vertex(w));
        }
        phi[w] = k;
    }
    phi[v] = phi[u];
    let gamma = Quiver::new(labels, q.arrows().iter().map(|a| (a.name.clone(), phi[a.source], phi[a.target])))?;
    let mut relations: Vec<Vec<Term>> = Vec::new();
    for (x, y) in [(u, v), (v, u)] {
        for alpha in q.in_arrows(x) {
            for beta in q.out_arrows(y) {
                relations.push(vec![Term::monomial(vec![alpha.id, beta.id])]);
            }
        }
    }
    relations.sort();
    relations.extend(b.truncation_generators().into_iter().map(|p| vec![Term::monomial(p)]));
    let arrow_images = q.arrows().iter().map(|a| Element::basis(b.arrow_index(a.id))).collect();
    Ok(Presentation::new(b.clone(), gamma, relations, vertex_images, arrow_images))
}

/// Split presentation for hereditary `B`, with the lowest-id arrow outside
/// `U` as the complement of `U` in the arrow span.
pub fn present_split_hereditary(b: &Arc<PathAlgebra>, spec: &SplitSpec) -> Result<Presentation> {
    let u_space = spec.checked_subspace(b)?;
    let complement = b
        .quiver()
        .arrows_between(spec.u, spec.v)
        .map(|a| Element::basis(b.arrow_index(a.id)))
        .find(|x| !u_space.contains(x))
        .expect("U has codimension one");
    present_split_with(b, spec, &complement)
}

/// Split presentation with an explicit complement `c` of `U` in the arrow
/// span `u -> v`: the arrows `u -> v` are replaced by a basis of `U`, each
/// arrow `γ` into `u` gets `bar(γ) = γc`, each arrow `γ` out of `v` gets
/// `under(γ) = cγ`, and the relations are `bar(β)γ - β under(γ)`.
pub fn present_split_with(b: &Arc<PathAlgebra>, spec: &SplitSpec, complement: &Element) -> Result<Presentation> {
    if !b.is_hereditary() {
        return Err(Error::NotHereditary);
    }
    let u_space = spec.checked_subspace(b)?;
    let q = b.quiver();
    let (u, v) = (spec.u, spec.v);
    let span = Subspace::coordinate(b.dim(), q.arrows_between(u, v).map(|a| b.arrow_index(a.id)));
    if !span.contains(complement) || u_space.contains(complement) {
        return Err(Error::InvalidSplit("complement is not in the arrow span outside U".into()));
    }

    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    let mut images: Vec<Element> = Vec::new();
    let mut gamma_id = vec![usize::MAX; q.arrow_count()];
    let mut inserted = false;
    for a in q.arrows() {
        if a.source == u && a.target == v {
            if !inserted {
                for (k, x) in u_space.basis().enumerate() {
                    let name = match x.terms() {
                        [(i, c)] if c.is_one() => {
                            let p = b.path(*i);
                            q.arrow(p.arrows[0]).name.clone()
                        }
                        _ => format!("u{k}"),
                    };
                    arrows.push((name, u, v));
                    images.push(x.clone());
                }
                inserted = true;
            }
            continue;
        }
        gamma_id[a.id] = arrows.len();
        arrows.push((a.name.clone(), a.source, a.target));
        images.push(Element::basis(b.arrow_index(a.id)));
    }
    let mut bar = BTreeMap::new();
    for g in q.in_arrows(u) {
        bar.insert(g.id, arrows.len());
        arrows.push((format!("bar({})", g.name), g.source, v));
        images.push(b.mul(&Element::basis(b.arrow_index(g.id)), complement));
    }
    let mut under = BTreeMap::new();
    for g in q.out_arrows(v) {
        under.insert(g.id, arrows.len());
        arrows.push((format!("under({})", g.name), u, g.target));
        images.push(b.mul(complement, &Element::basis(b.arrow_index(g.id))));
    }
    let mut relations = Vec::new();
    for beta in q.in_arrows(u) {
        for g in q.out_arrows(v) {
            relations.push(vec![
                Term::monomial(vec![bar[&beta.id], gamma_id[g.id]]),
                Term {
                    path: vec![gamma_id[beta.id], under[&g.id]],
                    coeff: -Scalar::one(),
                },
            ]);
        }
    }
    let gamma = Quiver::new(q.vertices().to_vec(), arrows)?;
    let vertex_images = (0..q.vertex_count()).map(|w| b.vertex(w)).collect();
    Ok(Presentation::new(b.clone(), gamma, relations, vertex_images, images))
}

#[cfg(test)]
mod tests {
    use super::super::{build_separable, build_split, enumerate_representatives};
    use super::*;
    use crate::quiver::{word_to_quiver, BinaryWord};

    fn b(word: &str) -> Arc<PathAlgebra> {
        Arc::new(PathAlgebra::new(word_to_quiver(&word.parse::<BinaryWord>().unwrap())).unwrap())
    }

    fn rels(p: &Presentation) -> Vec<String> {
        p.relations().iter().map(|r| p.format_relation(r)).collect()
    }

    #[test]
    fn separable_relations_in_equioriented_a4() {
        let bb = b("+++");
        let cases = [
            ((0, 1), vec!["a-2*a-2"]),
            ((0, 2), vec!["a-1*a-2"]),
            ((0, 3), vec!["a1*a-2"]),
            ((1, 2), vec!["a-2*a1", "a-1*a-1"]),
            ((1, 3), vec!["a1*a-1"]),
            ((2, 3), vec!["a1*a1"]),
        ];
        for ((u, v), expected) in cases {
            let spec = SeparableSpec::new(u, v);
            let p = present_separable(&bb, spec).unwrap();
            assert_eq!(rels(&p), expected, "{u}+{v}");
            p.verify(&build_separable(&bb, spec).unwrap()).unwrap();
        }
    }

    #[test]
    fn glued_quiver_shapes() {
        let bb = b("+++");
        let p = present_separable(&bb, SeparableSpec::new(0, 1)).unwrap();
        assert_eq!(p.quiver().vertices(), ["-2+-1", "1", "2"]);
        assert_eq!(p.quiver().multiplicity(0, 0), 1);
        let p = present_separable(&bb, SeparableSpec::new(0, 3)).unwrap();
        assert_eq!(p.quiver().multiplicity(2, 0), 1);
    }

    #[test]
    fn split_relations_in_equioriented_a4() {
        let bb = b("+++");
        let p = present_split_hereditary(&bb, &SplitSpec::zero(1, 2)).unwrap();
        assert_eq!(rels(&p), vec!["bar(a-2)*a1 - a-2*under(a1)"]);
        let names: Vec<&str> = p.quiver().arrows().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["a-2", "a1", "bar(a-2)", "under(a1)"]);
        p.verify(&build_split(&bb, &SplitSpec::zero(1, 2)).unwrap()).unwrap();
        for (u, v) in [(0, 1), (2, 3)] {
            let p = present_split_hereditary(&bb, &SplitSpec::zero(u, v)).unwrap();
            assert!(p.relations().is_empty());
            p.verify(&build_split(&bb, &SplitSpec::zero(u, v)).unwrap()).unwrap();
        }
    }

    #[test]
    fn split_rejects_truncated_ambient() {
        let q = word_to_quiver(&"+++".parse().unwrap());
        let t = Arc::new(PathAlgebra::truncated(q, 2).unwrap());
        assert_eq!(present_split_hereditary(&t, &SplitSpec::zero(1, 2)).unwrap_err(), Error::NotHereditary);
    }

    #[test]
    fn separable_over_truncated_ambient_appends_generators() {
        let q = word_to_quiver(&"+++".parse().unwrap());
        let t = Arc::new(PathAlgebra::truncated(q, 3).unwrap());
        let spec = SeparableSpec::new(0, 1);
        let p = present_separable(&t, spec).unwrap();
        assert_eq!(rels(&p), vec!["a-2*a-2", "a-2*a-1*a1"]);
        p.verify(&build_separable(&t, spec).unwrap()).unwrap();
    }

    #[test]
    fn tampered_presentations_fail_verification() {
        let bb = b("+++");
        let spec = SeparableSpec::new(1, 2);
        let a = build_separable(&bb, spec).unwrap();
        let p = present_separable(&bb, spec).unwrap();
        let dropped = Presentation::new(
            bb.clone(),
            p.quiver().clone(),
            p.relations()[1..].to_vec(),
            p.vertex_images().to_vec(),
            p.arrow_images().to_vec(),
        );
        assert!(matches!(dropped.verify(&a), Err(Error::PresentationMismatch(_))));
    }

    #[test]
    fn json_form() {
        let bb = b("+++");
        let p = present_split_hereditary(&bb, &SplitSpec::zero(1, 2)).unwrap();
        let j = p.to_json();
        assert_eq!(j.relations[0][1].coeff, "-1/1");
        assert_eq!(j.arrow_dict["bar(a-2)"]["a-2*a-1"], "1/1");
        let s = serde_json::to_string(&j).unwrap();
        let back: PresentationJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back, j);
    }

    #[test]
    fn every_small_representative_is_presented() {
        for len in 1..=5 {
            for w in BinaryWord::all(len) {
                for rep in enumerate_representatives(&word_to_quiver(&w)).unwrap() {
                    rep.presentation().unwrap().verify(&rep.algebra).unwrap_or_else(|e| panic!("{w} {}: {e}", rep.tag));
                }
            }
        }
    }
}
