//! Shape of the Ext quiver of a split representative `A_i`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{PathAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::maxsub::{build_split, split_spec_at};
use crate::quiver::{word_to_quiver, BinaryWord, TypeALabels};

/// Which extra edge the trivalent quiver carries: `L` joins `pred(i)` and
/// `succ(i)`, `R` joins `i` and `succ(succ(i))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RootKind {
    Source,
    Sink,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplitShape {
    NonHereditary,
    LineQuiver,
    Trivalent {
        variant: Variant,
        root: i32,
        root_kind: RootKind,
        left: usize,
        right: usize,
    },
    Disconnected,
}

/// Whether the letters at `pred(i)`, `i`, `succ(i)` all agree.
pub fn is_square_pattern(w: &BinaryWord, i: i32) -> Result<bool> {
    let labels = w.labels();
    let (Ok(p), Ok(s)) = (labels.pred(i), labels.succ(i)) else {
        return Ok(false);
    };
    if !labels.is_position(p) || !labels.is_position(s) {
        return Ok(false);
    }
    let x = w.at(i)?;
    Ok(w.at(p)? == x && w.at(s)? == x)
}

pub fn split_shape(w: &BinaryWord, i: i32) -> Result<SplitShape> {
    let labels = w.labels();
    if !labels.is_position(i) {
        return Err(Error::InvalidSplit(format!("{i} is not a split position for {w}")));
    }
    let b = Arc::new(PathAlgebra::new(word_to_quiver(w))?);
    let a = build_split(&b, &split_spec_at(b.quiver(), &labels, i)?)?;
    shape_of(&a, &labels, i)
}

/// Shape read off the Ext quiver of an already built `A_i`.
pub fn shape_of(a: &Subalgebra, labels: &TypeALabels, i: i32) -> Result<SplitShape> {
    let ext = a.ext_quiver();
    let hereditary = PathAlgebra::new(ext.clone()).map(|p| p.dim() == a.dim()).unwrap_or(false);
    if !hereditary {
        return Ok(SplitShape::NonHereditary);
    }
    if !ext.is_connected() {
        return Ok(SplitShape::Disconnected);
    }
    if ext.is_path_graph() {
        return Ok(SplitShape::LineQuiver);
    }
    let vertex = |l: Result<i32>| l.ok().and_then(|l| ext.vertex_index(&l.to_string()));
    let joined = |x: Option<usize>, y: Option<usize>| match (x, y) {
        (Some(x), Some(y)) => ext.multiplicity(x, y) + ext.multiplicity(y, x) > 0,
        _ => false,
    };
    let succ = labels.succ(i)?;
    let left_edge = joined(vertex(labels.pred(i)), vertex(Ok(succ)));
    let right_edge = joined(vertex(Ok(i)), vertex(labels.succ(succ)));
    let (variant, root) = match (left_edge, right_edge) {
        (true, false) => (Variant::L, i),
        (false, true) => (Variant::R, succ),
        _ => {
            return Err(Error::InvalidSplit(format!(
                "trivalent Ext quiver of A_{i} has {} of the two extra edges",
                if left_edge { "both" } else { "neither" }
            )))
        }
    };
    let r = vertex(Ok(root)).expect("root is a vertex");
    let root_kind = if ext.out_arrows(r).count() > 0 { RootKind::Source } else { RootKind::Sink };
    let end = |l: i32| -> Result<usize> {
        let v = vertex(Ok(l)).expect("end vertex");
        ext.distance(r, v).ok_or(Error::NotTypeA("disconnected".into()))
    };
    Ok(SplitShape::Trivalent {
        variant,
        root,
        root_kind,
        left: end(-labels.m())?,
        right: end(labels.m())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn equioriented_middle_is_square() {
        assert!(is_square_pattern(&w("+++"), -1).unwrap());
        assert_eq!(split_shape(&w("+++"), -1).unwrap(), SplitShape::NonHereditary);
    }

    #[test]
    fn boundary_splits_of_plus_plus_minus() {
        // n = 4: labels -2, -1, 1, 2.
        let word = w("++-");
        assert_eq!(split_shape(&word, -1).unwrap(), SplitShape::LineQuiver);
        assert!(matches!(split_shape(&word, -2).unwrap(), SplitShape::Trivalent { .. }));
    }

    #[test]
    fn shape_matches_pattern_and_edges() {
        for len in 2..=8 {
            for word in BinaryWord::all(len) {
                let labels = word.labels();
                for i in labels.positions() {
                    let shape = split_shape(&word, i).unwrap();
                    let square = is_square_pattern(&word, i).unwrap();
                    assert_eq!(shape == SplitShape::NonHereditary, square, "{word} at {i}");
                    if let SplitShape::Trivalent { left, right, .. } = shape {
                        // Left and right arms plus the root arm cover all arrows.
                        assert!(left + right <= word.len() + 1, "{word} at {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn left_length_of_l_variant() {
        for len in 2..=9 {
            for word in BinaryWord::all(len) {
                let labels = word.labels();
                for i in labels.positions() {
                    if let SplitShape::Trivalent {
                        variant: Variant::L,
                        left,
                        ..
                    } = split_shape(&word, i).unwrap()
                    {
                        assert_eq!(left, labels.index(i).unwrap(), "{word} at {i}");
                    }
                }
            }
        }
    }
}
