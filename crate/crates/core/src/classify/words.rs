//! Factorizations of orientation words and the equation `w3 w2* = w2 w3`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::BinaryWord;

/// The five factors of `w` cut at the positions `-j`, `i`, `-i`, `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordDecomposition {
    pub factors: [BinaryWord; 5],
}

impl WordDecomposition {
    pub fn concat(&self) -> BinaryWord {
        self.factors.iter().fold(BinaryWord::new(Vec::new()), |acc, f| acc.concat(f))
    }
}

/// Requires `i < 0 < j` and `|i| < j`, both vertex labels of `w`'s quiver.
pub fn decompose_word(w: &BinaryWord, i: i32, j: i32) -> Result<WordDecomposition> {
    let labels = w.labels();
    if !(i < 0 && j > 0 && -i < j) {
        return Err(Error::InvalidIndices(format!("need i < 0 < j and |i| < j, got ({i}, {j})")));
    }
    if !labels.contains(i) || !labels.contains(j) {
        return Err(Error::InvalidIndices(format!("({i}, {j}) are not labels of the quiver of {w}")));
    }
    // The letter at position p has the same index as the vertex labelled p.
    let cut = [labels.index(-j)?, labels.index(i)?, labels.index(-i)?, labels.index(j)?];
    let bounds = [0, cut[0], cut[1], cut[2], cut[3], w.len()];
    Ok(WordDecomposition {
        factors: std::array::from_fn(|k| w.slice(bounds[k], bounds[k + 1])),
    })
}

/// Every `(w2, w3)` with `len(w2) >= 1`, `len(w2) + len(w3) <= max_total_len`
/// and `w3 w2* = w2 w3`, ordered by total length, then `len(w2)`, then
/// lexicographically.
pub fn word_equation_solutions(max_total_len: usize) -> Vec<(BinaryWord, BinaryWord)> {
    let mut out = Vec::new();
    for total in 1..=max_total_len {
        for l2 in 1..=total {
            for w2 in BinaryWord::all(l2) {
                let s2 = w2.star();
                for w3 in BinaryWord::all(total - l2) {
                    if w3.concat(&s2) == w2.concat(&w3) {
                        out.push((w2.clone(), w3));
                    }
                }
            }
        }
    }
    out
}

/// Result of checking the two properties over all solutions.
#[derive(Clone, Debug, Serialize)]
pub struct WordAudit {
    pub max_total_len: usize,
    pub solutions: Vec<(BinaryWord, BinaryWord)>,
    pub odd_w3: Vec<(BinaryWord, BinaryWord)>,
    pub asymmetric_w3: Vec<(BinaryWord, BinaryWord)>,
}

impl WordAudit {
    pub fn holds(&self) -> bool {
        self.odd_w3.is_empty() && self.asymmetric_w3.is_empty()
    }
}

pub fn audit_word_equation(max_total_len: usize) -> WordAudit {
    let solutions = word_equation_solutions(max_total_len);
    let pick = |f: &dyn Fn(&BinaryWord) -> bool| solutions.iter().filter(|(_, w3)| f(w3)).cloned().collect();
    WordAudit {
        max_total_len,
        odd_w3: pick(&|w3| w3.len() % 2 == 1),
        asymmetric_w3: pick(&|w3| !w3.is_symmetric()),
        solutions,
    }
}
