//! Exact sparse vectors and subspaces over the rationals.
//!
//! [`Subspace`] keeps its basis in reduced row echelon form with the pivot of
//! each row at its smallest nonzero column. Two consequences are used all
//! over the crate: equal subspaces have identical row maps, and the rows
//! whose pivot is at column `k` or later form a basis of the intersection
//! with the coordinate subspace spanned by columns `k..`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

pub type Scalar = Rational64;

/// Formats a scalar as `p/q`, always with a denominator.
pub fn format_scalar(c: &Scalar) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                None
            } else {
                Some(Scalar::new(p, q))
            }
        }
        None => s.parse::<i64>().ok().map(Scalar::from_integer),
    }
}

/// A sparse vector: sorted `(index, coefficient)` pairs with no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    terms: Vec<(usize, Scalar)>,
}

impl Element {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn basis(index: usize) -> Self {
        Self {
            terms: vec![(index, Scalar::one())],
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Scalar)>>(iter: I) -> Self {
        let mut raw: Vec<(usize, Scalar)> = iter.into_iter().collect();
        raw.sort_by_key(|t| t.0);
        let mut terms: Vec<(usize, Scalar)> = Vec::with_capacity(raw.len());
        for (i, c) in raw {
            match terms.last_mut() {
                Some((j, d)) if *j == i => *d += c,
                _ => terms.push((i, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Self { terms }
    }

    /// Sum of basis vectors with coefficient one.
    pub fn indicator<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Self::from_terms(indices.into_iter().map(|i| (i, Scalar::one())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, index: usize) -> Scalar {
        match self.terms.binary_search_by_key(&index, |t| t.0) {
            Ok(k) => self.terms[k].1,
            Err(_) => Scalar::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, Scalar)> {
        self.terms.first().copied()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|t| t.0)
    }

    pub fn scale(&self, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|&(i, d)| (i, d * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Element, c: Scalar) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, x)), Some(&&(j, y))) => {
                    if i < j {
                        out.push((i, x));
                        a.next();
                    } else if j < i {
                        out.push((j, y * c));
                        b.next();
                    } else {
                        let s = x + y * c;
                        if !s.is_zero() {
                            out.push((i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some(&&t), None) => {
                    out.push(t);
                    a.next();
                }
                (None, Some(&&(j, y))) => {
                    out.push((j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { terms: out }
    }

    /// Keeps only the coordinates accepted by `keep`.
    pub fn restrict<F: Fn(usize) -> bool>(&self, keep: F) -> Self {
        Self {
            terms: self.terms.iter().filter(|t| keep(t.0)).copied().collect(),
        }
    }

    /// Reindexes coordinates through `map`; entries mapped to `None` are dropped.
    pub fn remap<F: Fn(usize) -> Option<usize>>(&self, map: F) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|&(i, c)| map(i).map(|j| (j, c))))
    }
}

impl std::ops::Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.add_scaled(rhs, Scalar::one())
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.add_scaled(rhs, -Scalar::one())
    }
}

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-Scalar::one())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*[{}]", format_scalar(c), i)?;
        }
        Ok(())
    }
}

/// A subspace of `Q^ambient_dim` in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    rows: BTreeMap<usize, Element>,
}

impl Subspace {
    pub fn new(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn spanned_by<'a, I: IntoIterator<Item = &'a Element>>(ambient_dim: usize, vectors: I) -> Self {
        let mut s = Self::new(ambient_dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// Span of the given coordinate vectors.
    pub fn coordinate<I: IntoIterator<Item = usize>>(ambient_dim: usize, indices: I) -> Self {
        let mut s = Self::new(ambient_dim);
        for i in indices {
            s.rows.insert(i, Element::basis(i));
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Element> + '_ {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &Element) -> Element {
        let mut r = v.clone();
        for &(i, c) in v.terms() {
            if let Some(row) = self.rows.get(&i) {
                r = r.add_scaled(row, -c);
            }
        }
        r
    }

    pub fn contains(&self, v: &Element) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().all(|v| self.contains(v))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &Element) -> bool {
        let r = self.reduce(v);
        let Some((q, lead)) = r.leading() else {
            return false;
        };
        let r = r.scale(lead.recip());
        for row in self.rows.values_mut() {
            let c = row.coeff(q);
            if !c.is_zero() {
                *row = row.add_scaled(&r, -c);
            }
        }
        self.rows.insert(q, r);
        true
    }

    pub fn extend<'a, I: IntoIterator<Item = &'a Element>>(&mut self, vectors: I) {
        for v in vectors {
            self.insert(v);
        }
    }

    /// Intersection with the span of coordinates `start..`.
    pub fn tail_from(&self, start: usize) -> Subspace {
        Subspace {
            ambient_dim: self.ambient_dim,
            rows: self.rows.range(start..).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        s.extend(other.basis());
        s
    }

    /// True when every basis row is a single coordinate vector.
    pub fn is_monomial(&self) -> bool {
        self.rows.values().all(|r| r.len() == 1)
    }
}

/// Incremental elimination that remembers how every row was built from the
/// inserted vectors, so that members of the span can be decomposed.
#[derive(Clone, Debug)]
pub struct TrackedBasis {
    rows: BTreeMap<usize, (Element, Element)>,
    inserted: usize,
}

/// Outcome of inserting into a [`TrackedBasis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion {
    /// The vector was independent; it received this input index.
    Independent(usize),
    /// The vector was dependent; this combination of earlier inputs
    /// (including the new one, index given) vanishes.
    Dependent(usize, Element),
}

impl Default for TrackedBasis {
    fn default() -> Self {
        Self::new()
    }
}

impl TrackedBasis {
    pub fn new() -> Self {
        Self {
            rows: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &Element) -> (Element, Element) {
        let mut r = v.clone();
        let mut recipe = Element::zero();
        for &(i, c) in v.terms() {
            if let Some((row, rec)) = self.rows.get(&i) {
                r = r.add_scaled(row, -c);
                recipe = recipe.add_scaled(rec, -c);
            }
        }
        (r, recipe)
    }

    pub fn insert(&mut self, v: &Element) -> Insertion {
        let k = self.inserted;
        self.inserted += 1;
        let (r, recipe) = self.reduce(v);
        let recipe = recipe.add_scaled(&Element::basis(k), Scalar::one());
        let Some((q, lead)) = r.leading() else {
            return Insertion::Dependent(k, recipe);
        };
        let inv = lead.recip();
        let (r, recipe) = (r.scale(inv), recipe.scale(inv));
        for (row, rec) in self.rows.values_mut() {
            let c = row.coeff(q);
            if !c.is_zero() {
                *row = row.add_scaled(&r, -c);
                *rec = rec.add_scaled(&recipe, -c);
            }
        }
        self.rows.insert(q, (r, recipe));
        Insertion::Independent(k)
    }

    /// Coefficients `c` with `x = sum_k c_k v_k` over the inserted vectors,
    /// or `None` when `x` is outside the span.
    pub fn decompose(&self, x: &Element) -> Option<Element> {
        let mut r = x.clone();
        let mut combo = Element::zero();
        for &(i, c) in x.terms() {
            if let Some((row, rec)) = self.rows.get(&i) {
                r = r.add_scaled(row, -c);
                combo = combo.add_scaled(rec, c);
            }
        }
        r.is_zero().then_some(combo)
    }
}

/// Basis of the kernel of the map sending the `k`-th standard basis vector to
/// `images[k]`, as vectors over `0..images.len()`.
pub fn kernel(images: &[Element]) -> Vec<Element> {
    let mut t = TrackedBasis::new();
    images
        .iter()
        .filter_map(|v| match t.insert(v) {
            Insertion::Dependent(_, combo) => Some(combo),
            Insertion::Independent(_) => None,
        })
        .collect()
}
