//! Certified isomorphism testing for subalgebras with quadratic presentations.
//!
//! Each subalgebra `A` is presented intrinsically: its Ext quiver `Γ`, arrow
//! representatives chosen from `e_x J e_y` modulo `e_x J^2 e_y`, and the
//! space `R` of degree-two relations, i.e. the kernel of the product map on
//! composable arrow pairs. When the graded quotient `kΓ/(R)` has the radical
//! layers of `A`, the surjection `kΓ/(R) -> A` is an isomorphism, so `A` is
//! graded and any isomorphism `A ≅ A'` can be replaced by a graded one. A
//! graded isomorphism permutes the primitive idempotents (a vertex bijection
//! `σ` of Ext quivers) and acts by invertible maps `g` on the arrow spaces,
//! subject to `(g ⊗ g)(R) = R'`.
//!
//! The search tries every `σ` and, for each, every bijection of arrows that
//! respects `σ`, with unit scalars. This is complete in two situations, both
//! requiring arrow representatives that are single paths of `B` whose
//! pairwise products are zero or single paths:
//!
//! * no two arrows of `Γ` are parallel. Then `g` is diagonal, `R` is spanned
//!   by zero products and by differences of pairs with equal product, and a
//!   diagonal `g` works only if the unit one does.
//! * `R` and `R'` are spanned by monomials. The image of a monomial under
//!   `g ⊗ g` is a tensor of columns of `g`, with no cancellation, so shrinking
//!   each block of `g` to a permutation inside its support keeps `R` inside
//!   `R'`.
//!
//! Inputs outside both situations are reported as unsupported. Decisions are
//! made over the rationals; isomorphic verdicts carry a basis-level map that
//! is re-checked independently, so they hold over any extension field.

use std::collections::HashMap;

use itertools::Itertools;
use num_traits::One;

use crate::algebra::Subalgebra;
use crate::error::{Error, Result};
use crate::linalg::{kernel, Element, Insertion, Subspace, TrackedBasis};
use crate::maxsub::{Presentation, Term};
use crate::quiver::{quiver_isomorphisms, Quiver, VertexMap};

const SEARCH_CAP: usize = 1 << 16;

/// Reason two algebras are not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Dimension(usize, usize),
    RadicalLayers(Vec<usize>, Vec<usize>),
    ExtQuiverClass,
    RelationLayers(Vec<usize>, Vec<usize>),
    ExhaustedSearch { tried: Vec<VertexMap> },
}

impl Witness {
    pub fn name(&self) -> &'static str {
        match self {
            Witness::Dimension(..) => "dimension",
            Witness::RadicalLayers(..) => "radical-layer dims",
            Witness::ExtQuiverClass => "Ext-quiver class",
            Witness::RelationLayers(..) => "relation-layer dims",
            Witness::ExhaustedSearch { .. } => "exhausted-search",
        }
    }
}

/// An explicit isomorphism `A -> A'`: the vertex bijection `sigma` of Ext
/// quivers, the arrow bijection (permutation matrices with unit entries on
/// each arrow space), and the induced images of a basis of `A`.
#[derive(Clone, Debug)]
pub struct IsoMap {
    pub sigma: VertexMap,
    pub arrow_map: Vec<usize>,
    pub basis_images: Vec<(Element, Element)>,
}

#[derive(Clone, Debug)]
pub enum IsoCertificate {
    Isomorphic(IsoMap),
    NotIsomorphic(Witness),
}

impl IsoCertificate {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoCertificate::Isomorphic(_))
    }
}

/// Dimension, radical layers, Ext-quiver key and relation-layer dims.
pub type ProfileKey = (usize, Vec<usize>, Vec<(usize, usize, usize)>, Vec<usize>);

/// Precomputed data of one subalgebra used by [`compare`].
#[derive(Clone, Debug)]
pub struct Profile<'a> {
    algebra: &'a Subalgebra,
    layers: Vec<usize>,
    presentation: Presentation,
    pairs: Vec<(usize, usize)>,
    pair_index: HashMap<(usize, usize), usize>,
    relations: Subspace,
    relation_dims: Vec<usize>,
    unsupported: Option<String>,
}

impl<'a> Profile<'a> {
    pub fn new(a: &'a Subalgebra) -> Result<Self> {
        let b = a.ambient();
        let idem = a.idempotents();
        let mut arrows = Vec::new();
        let mut reps = Vec::new();
        for (x, ex) in idem.iter().enumerate() {
            for (y, ey) in idem.iter().enumerate() {
                let top = a.sandwich(ex, a.radical(), ey);
                let mut below = a.sandwich(ex, a.radical_power(2), ey);
                for v in top.basis() {
                    if below.insert(v) {
                        arrows.push((format!("x{}", arrows.len()), x, y));
                        reps.push(v.clone());
                    }
                }
            }
        }
        let gamma = Quiver::new(a.block_labels(), arrows)?;

        let mut pairs = Vec::new();
        for p in gamma.arrows() {
            for q in gamma.out_arrows(p.target) {
                pairs.push((p.id, q.id));
            }
        }
        let products: Vec<Element> = pairs.iter().map(|&(p, q)| b.mul(&reps[p], &reps[q])).collect();
        let relations = Subspace::spanned_by(pairs.len(), &kernel(&products));
        let mut relation_dims: Vec<usize> = (0..gamma.vertex_count())
            .cartesian_product(0..gamma.vertex_count())
            .map(|(x, y)| {
                relations
                    .basis()
                    .filter(|r| {
                        let (p, q) = pairs[r.leading().expect("nonzero").0];
                        gamma.arrow(p).source == x && gamma.arrow(q).target == y
                    })
                    .count()
            })
            .collect();
        relation_dims.sort_unstable();

        let terms: Vec<Vec<Term>> = relations
            .basis()
            .map(|r| {
                r.terms()
                    .iter()
                    .map(|&(k, c)| Term {
                        path: vec![pairs[k].0, pairs[k].1],
                        coeff: c,
                    })
                    .collect()
            })
            .collect();
        let parallel = gamma.multiplicity_matrix().iter().flatten().any(|&m| m > 1);
        let presentation = Presentation::new(b.clone(), gamma, terms, idem.to_vec(), reps);

        let single = |x: &Element| x.len() == 1 && x.terms()[0].1.is_one();
        let unsupported = if let Err(e) = presentation.verify(a) {
            Some(format!("not a quadratic algebra: {e}"))
        } else if !presentation.arrow_images().iter().all(single) {
            Some("arrow representatives are not single paths".into())
        } else if !products.iter().all(|x| x.is_zero() || single(x)) {
            Some("arrow products are not single paths".into())
        } else if parallel && !relations.is_monomial() {
            Some("parallel arrows with non-monomial relations".into())
        } else {
            None
        };

        Ok(Self {
            algebra: a,
            layers: a.radical_power_dims(),
            pair_index: pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect(),
            pairs,
            presentation,
            relations,
            relation_dims,
            unsupported,
        })
    }

    pub fn algebra(&self) -> &Subalgebra {
        self.algebra
    }

    pub fn ext_quiver(&self) -> &Quiver {
        self.presentation.quiver()
    }

    /// The intrinsic quadratic presentation; valid when [`Profile::is_supported`].
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn is_supported(&self) -> bool {
        self.unsupported.is_none()
    }

    /// Cheap isomorphism invariants; unequal keys imply non-isomorphic.
    pub fn key(&self) -> ProfileKey {
        (
            self.algebra.dim(),
            self.layers.clone(),
            self.ext_quiver().invariant_key(),
            self.relation_dims.clone(),
        )
    }

    /// Image of a relation under an arrow bijection, over the pairs of `to`.
    fn map_relation(&self, r: &Element, arrow_map: &[usize], to: &Profile) -> Option<Element> {
        let mut terms = Vec::with_capacity(r.len());
        for &(k, c) in r.terms() {
            let (p, q) = self.pairs[k];
            terms.push((*to.pair_index.get(&(arrow_map[p], arrow_map[q]))?, c));
        }
        Some(Element::from_terms(terms))
    }
}

/// Decides `A ≅ A'`, returning a certificate.
pub fn is_isomorphic(a: &Subalgebra, a2: &Subalgebra) -> Result<IsoCertificate> {
    compare(&Profile::new(a)?, &Profile::new(a2)?)
}

/// Algebra generated by the images of a presentation.
pub fn presented_algebra(p: &Presentation) -> Result<Subalgebra> {
    let mut gens = p.vertex_images().to_vec();
    gens.extend(p.arrow_images().iter().cloned());
    Subalgebra::generated_by(p.ambient().clone(), &gens)
}

pub fn compare(p: &Profile, q: &Profile) -> Result<IsoCertificate> {
    let (da, db) = (p.algebra.dim(), q.algebra.dim());
    if da != db {
        return Ok(IsoCertificate::NotIsomorphic(Witness::Dimension(da, db)));
    }
    if p.layers != q.layers {
        return Ok(IsoCertificate::NotIsomorphic(Witness::RadicalLayers(p.layers.clone(), q.layers.clone())));
    }
    let sigmas = quiver_isomorphisms(p.ext_quiver(), q.ext_quiver());
    if sigmas.is_empty() {
        return Ok(IsoCertificate::NotIsomorphic(Witness::ExtQuiverClass));
    }
    if p.relation_dims != q.relation_dims {
        return Ok(IsoCertificate::NotIsomorphic(Witness::RelationLayers(
            p.relation_dims.clone(),
            q.relation_dims.clone(),
        )));
    }
    for side in [p, q] {
        if let Some(why) = &side.unsupported {
            return Err(Error::UnsupportedPresentation(why.clone()));
        }
    }
    let mut tried = 0usize;
    for sigma in &sigmas {
        if let Some(arrow_map) = search_arrows(p, q, sigma, &mut tried)? {
            let basis_images = induced_basis(p, q, sigma, &arrow_map);
            return Ok(IsoCertificate::Isomorphic(IsoMap {
                sigma: sigma.clone(),
                arrow_map,
                basis_images,
            }));
        }
    }
    Ok(IsoCertificate::NotIsomorphic(Witness::ExhaustedSearch { tried: sigmas }))
}

/// Arrow bijection over `sigma` carrying `R` into `R'`, if any.
fn search_arrows(p: &Profile, q: &Profile, sigma: &VertexMap, tried: &mut usize) -> Result<Option<Vec<usize>>> {
    let (g1, g2) = (p.ext_quiver(), q.ext_quiver());
    let n = g1.vertex_count();
    let mut classes = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let from: Vec<usize> = g1.arrows_between(x, y).map(|a| a.id).collect();
            let to: Vec<usize> = g2.arrows_between(sigma.apply(x), sigma.apply(y)).map(|a| a.id).collect();
            if from.len() != to.len() {
                return Ok(None);
            }
            if !from.is_empty() {
                classes.push((from, to));
            }
        }
    }
    let choices = classes
        .iter()
        .map(|(from, _)| (0..from.len()).permutations(from.len()).collect::<Vec<_>>())
        .multi_cartesian_product();
    let mut arrow_map = vec![usize::MAX; g1.arrow_count()];
    let mut run = |choice: &[Vec<usize>]| -> bool {
        for ((from, to), perm) in classes.iter().zip(choice) {
            for (k, &a) in from.iter().enumerate() {
                arrow_map[a] = to[perm[k]];
            }
        }
        p.relations.basis().all(|r| {
            p.map_relation(r, &arrow_map, q)
                .is_some_and(|img| q.relations.contains(&img))
        })
    };
    if classes.is_empty() {
        *tried += 1;
        return Ok(run(&[]).then_some(arrow_map.clone()));
    }
    for choice in choices {
        *tried += 1;
        if *tried > SEARCH_CAP {
            return Err(Error::UnsupportedPresentation("arrow search exceeded its cap".into()));
        }
        if run(&choice) {
            return Ok(Some(arrow_map));
        }
    }
    Ok(None)
}

/// Images of the nonzero paths of `Γ` on both sides, keeping a basis of `A`.
fn induced_basis(p: &Profile, q: &Profile, sigma: &VertexMap, arrow_map: &[usize]) -> Vec<(Element, Element)> {
    let (b1, b2) = (p.algebra.ambient(), q.algebra.ambient());
    let (pr, qr) = (&p.presentation, &q.presentation);
    let gamma = pr.quiver();
    let mut tracked = TrackedBasis::new();
    let mut out = Vec::new();
    let mut frontier = Vec::new();
    for x in 0..gamma.vertex_count() {
        let pair = (pr.vertex_images()[x].clone(), qr.vertex_images()[sigma.apply(x)].clone());
        if let Insertion::Independent(_) = tracked.insert(&pair.0) {
            out.push(pair);
        }
    }
    for a in gamma.arrows() {
        frontier.push((a.target, pr.arrow_images()[a.id].clone(), qr.arrow_images()[arrow_map[a.id]].clone()));
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (end, x, y) in frontier {
            if x.is_zero() {
                continue;
            }
            if let Insertion::Independent(_) = tracked.insert(&x) {
                out.push((x.clone(), y.clone()));
            }
            for a in gamma.out_arrows(end) {
                next.push((
                    a.target,
                    b1.mul(&x, &pr.arrow_images()[a.id]),
                    b2.mul(&y, &qr.arrow_images()[arrow_map[a.id]]),
                ));
            }
        }
        frontier = next;
    }
    out
}

/// Checks an isomorphism from scratch: the sources form a basis of `A`, the
/// targets a basis of `A'`, the linear map fixes the unit and is
/// multiplicative on every pair of basis elements.
pub fn verify_certificate(a: &Subalgebra, a2: &Subalgebra, map: &IsoMap) -> Result<()> {
    let reject = |m: &str| Err(Error::CertificateRejected(m.into()));
    let (src, tgt): (Vec<&Element>, Vec<&Element>) = map.basis_images.iter().map(|(x, y)| (x, y)).unzip();
    if src.len() != a.dim() || a.dim() != a2.dim() {
        return reject("basis size differs from the dimension");
    }
    if !src.iter().all(|x| a.contains(x)) || !tgt.iter().all(|y| a2.contains(y)) {
        return reject("an image lies outside its algebra");
    }
    let mut tracked = TrackedBasis::new();
    for x in &src {
        if !matches!(tracked.insert(x), Insertion::Independent(_)) {
            return reject("sources are dependent");
        }
    }
    if Subspace::spanned_by(a2.ambient().dim(), tgt.iter().copied()).dim() != tgt.len() {
        return reject("targets are dependent");
    }
    let apply = |x: &Element| -> Option<Element> {
        let c = tracked.decompose(x)?;
        Some(c.terms().iter().fold(Element::zero(), |acc, &(k, s)| acc.add_scaled(tgt[k], s)))
    };
    let (b1, b2) = (a.ambient(), a2.ambient());
    if apply(&b1.one()).as_ref() != Some(&b2.one()) {
        return reject("the unit is not preserved");
    }
    for (i, x) in src.iter().enumerate() {
        for (j, y) in src.iter().enumerate() {
            if apply(&b1.mul(x, y)) != Some(b2.mul(tgt[i], tgt[j])) {
                return reject("not multiplicative");
            }
        }
    }
    Ok(())
}

/// Re-evaluates a non-isomorphism witness on the two inputs.
pub fn recheck_witness(a: &Subalgebra, a2: &Subalgebra, w: &Witness) -> Result<bool> {
    Ok(match w {
        Witness::Dimension(x, y) => *x == a.dim() && *y == a2.dim() && x != y,
        Witness::RadicalLayers(x, y) => *x == a.radical_power_dims() && *y == a2.radical_power_dims() && x != y,
        Witness::ExtQuiverClass => quiver_isomorphisms(&a.ext_quiver(), &a2.ext_quiver()).is_empty(),
        Witness::RelationLayers(x, y) => {
            let (p, q) = (Profile::new(a)?, Profile::new(a2)?);
            *x == p.relation_dims && *y == q.relation_dims && x != y
        }
        Witness::ExhaustedSearch { tried } => {
            let (p, q) = (Profile::new(a)?, Profile::new(a2)?);
            let all = quiver_isomorphisms(p.ext_quiver(), q.ext_quiver());
            let mut count = 0;
            *tried == all && all.iter().all(|s| matches!(search_arrows(&p, &q, s, &mut count), Ok(None)))
        }
    })
}

/// Whether `sigma` sends each Ext-quiver vertex to the vertex with negated
/// labels. Glued vertices carry labels such as `-1+2`.
pub fn negates_labels(from: &Quiver, to: &Quiver, sigma: &VertexMap) -> bool {
    (0..from.vertex_count()).all(|x| negate_label(from.label(x)).as_deref() == Some(to.label(sigma.apply(x))))
}

fn negate_label(label: &str) -> Option<String> {
    let mut parts: Vec<i32> = label.split('+').map(|s| s.parse::<i32>().map(|v| -v)).collect::<std::result::Result<_, _>>().ok()?;
    parts.sort_unstable();
    Some(parts.iter().map(|v| v.to_string()).join("+"))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::PathAlgebra;
    use crate::maxsub::enumerate_representatives;
    use crate::quiver::{word_to_quiver, BinaryWord};

    fn reps(w: &str) -> Vec<crate::maxsub::Representative> {
        enumerate_representatives(&word_to_quiver(&w.parse::<BinaryWord>().unwrap())).unwrap()
    }

    #[test]
    fn self_isomorphism_verifies() {
        for r in reps("+-+") {
            let c = is_isomorphic(&r.algebra, &r.algebra).unwrap();
            let IsoCertificate::Isomorphic(m) = c else { panic!("{} not self-isomorphic", r.tag) };
            verify_certificate(&r.algebra, &r.algebra, &m).unwrap();
        }
    }

    #[test]
    fn loop_vertices_with_different_lines_differ() {
        let rs = reps("+++");
        let find = |i: i32, j: i32| rs.iter().find(|r| r.tag == crate::maxsub::RepTag::Separable { i, j }).unwrap();
        let c = is_isomorphic(&find(-1, 1).algebra, &find(1, 2).algebra).unwrap();
        assert!(!c.is_isomorphic());
        if let IsoCertificate::NotIsomorphic(w) = &c {
            assert!(recheck_witness(&find(-1, 1).algebra, &find(1, 2).algebra, w).unwrap());
        }
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let rs = reps("+-");
        let a = &rs[0].algebra;
        let IsoCertificate::Isomorphic(mut m) = is_isomorphic(a, a).unwrap() else { panic!() };
        let last = m.basis_images.len() - 1;
        let mut bad = m.clone();
        bad.basis_images[last].1 = bad.basis_images[0].1.clone();
        assert!(verify_certificate(a, a, &bad).is_err());
        // Scaling an arrow is still an automorphism.
        m.basis_images[last].1 = m.basis_images[last].1.scale(crate::linalg::Scalar::from_integer(2));
        assert!(verify_certificate(a, a, &m).is_ok());
    }

    #[test]
    fn presented_algebra_round_trip() {
        for r in reps("+-+") {
            let p = r.presentation().unwrap();
            let a = presented_algebra(&p).unwrap();
            assert_eq!(a.space(), r.algebra.space());
        }
    }

    #[test]
    fn label_negation() {
        assert_eq!(negate_label("-1+2").as_deref(), Some("-2+1"));
        assert_eq!(negate_label("0").as_deref(), Some("0"));
        assert_eq!(negate_label("x"), None);
    }

    #[test]
    fn unsupported_outside_family() {
        // A cubic zero relation is not quadratic.
        let q = Quiver::from_labels(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            vec![("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")],
        )
        .unwrap();
        let b = Arc::new(PathAlgebra::truncated(q, 3).unwrap());
        let a = Subalgebra::generated_by(b.clone(), &[b.one()]).unwrap();
        let whole = Subalgebra::from_basis(b.clone(), &(0..b.dim()).map(Element::basis).collect::<Vec<_>>()).unwrap();
        assert!(Profile::new(&a).is_ok());
        assert!(!Profile::new(&whole).unwrap().is_supported());
    }
}
