use std::sync::Arc;

use num_traits::{One, Zero};

use super::PathAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{kernel, Element, Scalar, Subspace, TrackedBasis};
use crate::quiver::Quiver;

/// A unital subalgebra of a path algebra with its radical filtration and a
/// complete set of primitive orthogonal idempotents.
///
/// The radical is taken to be `A ∩ J(B)` and then checked: it must be a
/// nilpotent two-sided ideal whose quotient has dimension equal to the number
/// of primitive idempotents found. [`Subalgebra::trace_form_radical`] gives an
/// independent computation.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    ambient: Arc<PathAlgebra>,
    space: Subspace,
    powers: Vec<Subspace>,
    idempotents: Vec<Element>,
    blocks: Vec<Vec<usize>>,
}

const MAX_LIFT_STEPS: usize = 64;

impl Subalgebra {
    /// The subalgebra with the given spanning set, which must already contain
    /// the unit and be closed under multiplication.
    pub fn from_basis(ambient: Arc<PathAlgebra>, spanning: &[Element]) -> Result<Self> {
        let space = Subspace::spanned_by(ambient.dim(), spanning);
        if !space.contains(&ambient.one()) {
            return Err(Error::NotBased("the unit is missing".into()));
        }
        let rows: Vec<&Element> = space.basis().collect();
        for x in &rows {
            for y in &rows {
                if !space.contains(&ambient.mul(x, y)) {
                    return Err(Error::NotClosed);
                }
            }
        }
        Self::finish(ambient, space)
    }

    /// Smallest subalgebra containing `gens` and the unit.
    pub fn generated_by(ambient: Arc<PathAlgebra>, gens: &[Element]) -> Result<Self> {
        let mut space = Subspace::spanned_by(ambient.dim(), gens);
        space.insert(&ambient.one());
        loop {
            let rows: Vec<Element> = space.basis().cloned().collect();
            let before = space.dim();
            for x in &rows {
                for y in &rows {
                    space.insert(&ambient.mul(x, y));
                }
            }
            if space.dim() == before {
                break;
            }
        }
        Self::finish(ambient, space)
    }

    fn finish(ambient: Arc<PathAlgebra>, space: Subspace) -> Result<Self> {
        let nv = ambient.vertex_count();
        let radical = space.tail_from(nv);
        for a in space.basis() {
            for j in radical.basis() {
                if !radical.contains(&ambient.mul(a, j)) || !radical.contains(&ambient.mul(j, a)) {
                    return Err(Error::NotBased("A ∩ J(B) is not an ideal of A".into()));
                }
            }
        }
        let mut powers = vec![space.clone(), radical.clone()];
        while !powers.last().expect("nonempty").is_zero() {
            if powers.len() > ambient.max_path_length() + 2 {
                return Err(Error::NotBased("radical is not nilpotent".into()));
            }
            let last = powers.last().expect("nonempty");
            let mut next = Subspace::new(ambient.dim());
            for x in last.basis() {
                for y in radical.basis() {
                    next.insert(&ambient.mul(x, y));
                }
            }
            powers.push(next);
        }
        let (blocks, idempotents) = primitive_idempotents(&ambient, &space)?;
        if blocks.len() != space.dim() - radical.dim() {
            return Err(Error::NotBased(format!(
                "semisimple quotient has dimension {} but {} primitive idempotents were found",
                space.dim() - radical.dim(),
                blocks.len()
            )));
        }
        Ok(Self {
            ambient,
            space,
            powers,
            idempotents,
            blocks,
        })
    }

    pub fn ambient(&self) -> &Arc<PathAlgebra> {
        &self.ambient
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Element> + '_ {
        self.space.basis()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.space.contains(x)
    }

    pub fn radical(&self) -> &Subspace {
        &self.powers[1]
    }

    /// `J(A)^r`, with `J(A)^0 = A`.
    pub fn radical_power(&self, r: usize) -> &Subspace {
        self.powers.get(r).unwrap_or_else(|| self.powers.last().expect("nonempty"))
    }

    /// `[dim A, dim J(A), dim J(A)^2, ..., 0]`.
    pub fn radical_power_dims(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self.powers.iter().map(Subspace::dim).collect();
        dims.dedup();
        dims
    }

    /// Loewy length: the least `r` with `J(A)^r = 0`.
    pub fn loewy_length(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn idempotents(&self) -> &[Element] {
        &self.idempotents
    }

    /// For each primitive idempotent, the vertices of `Q` it covers.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block labels: covered vertex labels joined by `+`.
    pub fn block_labels(&self) -> Vec<String> {
        let q = self.ambient.quiver();
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&v| q.label(v)).collect::<Vec<_>>().join("+"))
            .collect()
    }

    /// Span of `u x v` for `x` ranging over `s`.
    pub fn sandwich(&self, u: &Element, s: &Subspace, v: &Element) -> Subspace {
        let b = &self.ambient;
        let mut out = Subspace::new(b.dim());
        if let (Some(us), Some(vs)) = (vertex_mask(b, u), vertex_mask(b, v)) {
            for x in s.basis() {
                out.insert(&x.restrict(|i| {
                    let p = b.path(i);
                    us[p.source] && vs[p.target]
                }));
            }
            return out;
        }
        for x in s.basis() {
            out.insert(&b.mul(&b.mul(u, x), v));
        }
        out
    }

    pub fn is_idempotent(&self, e: &Element) -> bool {
        self.contains(e) && self.ambient.mul(e, e) == *e
    }

    /// `dim u (J^r / J^{r+1}) v` for idempotents `u, v` of `A`.
    pub fn graded_hom_dim(&self, u: &Element, v: &Element, r: usize) -> Result<usize> {
        if !self.is_idempotent(u) || !self.is_idempotent(v) {
            return Err(Error::NotIdempotent);
        }
        let top = self.sandwich(u, self.radical_power(r), v).dim();
        let below = self.sandwich(u, self.radical_power(r + 1), v).dim();
        Ok(top - below)
    }

    /// The ordinary quiver of `A`: one vertex per primitive idempotent and
    /// `dim e_x (J/J^2) e_y` arrows from `x` to `y`.
    pub fn ext_quiver(&self) -> Quiver {
        let labels = self.block_labels();
        let mut arrows = Vec::new();
        for (x, ex) in self.idempotents.iter().enumerate() {
            for (y, ey) in self.idempotents.iter().enumerate() {
                let k = self.graded_hom_dim(ex, ey, 1).expect("primitive idempotents");
                for _ in 0..k {
                    arrows.push((format!("x{}", arrows.len()), x, y));
                }
            }
        }
        Quiver::new(labels, arrows).expect("indices in range")
    }

    pub fn is_connected(&self) -> bool {
        self.ext_quiver().is_connected()
    }

    pub fn is_primitive(&self, e: &Element) -> bool {
        let eae = self.sandwich(e, &self.space, e).dim();
        let eje = self.sandwich(e, self.radical(), e).dim();
        self.is_idempotent(e) && eae == eje + 1
    }

    /// `dim e A` for each primitive idempotent, in block order.
    pub fn projective_dims(&self) -> Vec<usize> {
        let one = self.ambient.one();
        self.idempotents.iter().map(|e| self.sandwich(e, &self.space, &one).dim()).collect()
    }

    /// Radical computed as the kernel of the trace form
    /// `(x, y) -> tr_B(L_{xy})`, valid in characteristic zero.
    pub fn trace_form_radical(&self) -> Subspace {
        let b = &self.ambient;
        let d = b.dim();
        let fixes: Vec<Scalar> = (0..d)
            .map(|j| Scalar::from_integer((0..d).filter(|&i| b.mul_basis(j, i) == Some(i)).count() as i64))
            .collect();
        let trace = |z: &Element| -> Scalar { z.terms().iter().map(|(j, c)| *c * fixes[*j]).fold(Scalar::zero(), |a, t| a + t) };
        let rows: Vec<&Element> = self.space.basis().collect();
        let gram: Vec<Element> = rows
            .iter()
            .map(|x| Element::from_terms(rows.iter().enumerate().map(|(k, y)| (k, trace(&b.mul(x, y))))))
            .collect();
        let mut rad = Subspace::new(d);
        for c in kernel(&gram) {
            let mut x = Element::zero();
            for &(k, coeff) in c.terms() {
                x = x.add_scaled(rows[k], coeff);
            }
            rad.insert(&x);
        }
        rad
    }
}

/// The vertex set of `e` when `e` is a plain sum of vertex idempotents.
fn vertex_mask(b: &PathAlgebra, e: &Element) -> Option<Vec<bool>> {
    let nv = b.vertex_count();
    let mut mask = vec![false; nv];
    for (i, c) in e.terms() {
        if *i >= nv || !c.is_one() {
            return None;
        }
        mask[*i] = true;
    }
    Some(mask)
}

/// Partition of the vertices read off from the projection of `A` onto `kQ0`,
/// and a lift of each block indicator to an idempotent of `A`, mutually
/// orthogonal.
fn primitive_idempotents(b: &PathAlgebra, space: &Subspace) -> Result<(Vec<Vec<usize>>, Vec<Element>)> {
    let nv = b.vertex_count();
    let projection: Vec<(Element, Element)> = space
        .basis()
        .filter_map(|x| {
            let p = x.restrict(|i| i < nv);
            (!p.is_zero()).then(|| (p, x.clone()))
        })
        .collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for v in 0..nv {
        let same = blocks
            .iter_mut()
            .find(|blk| projection.iter().all(|(p, _)| p.coeff(blk[0]) == p.coeff(v)));
        match same {
            Some(blk) => blk.push(v),
            None => blocks.push(vec![v]),
        }
    }
    let image_dim = Subspace::spanned_by(nv.max(1), projection.iter().map(|(p, _)| p)).dim();
    if image_dim != blocks.len() {
        return Err(Error::NotBased("projection to kQ0 is not spanned by block sums".into()));
    }

    let mut tracked = TrackedBasis::new();
    for (p, _) in &projection {
        tracked.insert(p);
    }
    let one = b.one();
    let mut sum = Element::zero();
    let mut idempotents = Vec::with_capacity(blocks.len());
    for blk in &blocks {
        let target = super::vertex_sum(blk.iter().copied());
        let e = if space.contains(&target) {
            target
        } else {
            let combo = tracked.decompose(&target).ok_or(Error::NotIdempotent)?;
            let mut x = Element::zero();
            for &(k, c) in combo.terms() {
                x = x.add_scaled(&projection[k].1, c);
            }
            let comp = &one - &sum;
            let x = b.mul(&b.mul(&comp, &x), &comp);
            lift_idempotent(b, x)?
        };
        sum = &sum + &e;
        idempotents.push(e);
    }
    if sum != one {
        return Err(Error::NotBased("lifted idempotents do not sum to the unit".into()));
    }
    Ok((blocks, idempotents))
}

/// Newton-type lift `e -> 3e^2 - 2e^3` of an idempotent modulo a nilpotent
/// ideal.
fn lift_idempotent(b: &PathAlgebra, mut e: Element) -> Result<Element> {
    let three = Scalar::from_integer(3);
    let two = Scalar::from_integer(2);
    for _ in 0..MAX_LIFT_STEPS {
        let e2 = b.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = b.mul(&e2, &e);
        e = e2.scale(three).add_scaled(&e3, -two);
    }
    if b.mul(&e, &e) == e && !e.is_zero() {
        Ok(e)
    } else {
        Err(Error::NotIdempotent)
    }
}
