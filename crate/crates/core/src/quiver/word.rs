use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Quiver;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Plus,
    Minus,
}

impl Letter {
    pub fn flip(self) -> Self {
        match self {
            Letter::Plus => Letter::Minus,
            Letter::Minus => Letter::Plus,
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Letter::Plus => 1,
            Letter::Minus => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::Plus => '+',
            Letter::Minus => '-',
        }
    }
}

/// Signed vertex labels of the type-A diagram on `n` vertices:
/// `-m..=-1, 1..=m` for `n = 2m` and `-m..=m` for `n = 2m + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeALabels {
    n: usize,
}

pub fn type_a_labels(n: usize) -> TypeALabels {
    TypeALabels { n }
}

impl TypeALabels {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> i32 {
        (self.n / 2) as i32
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    pub fn contains(&self, label: i32) -> bool {
        let m = self.m();
        label.abs() <= m && !(self.is_even() && label == 0) && self.n > 0
    }

    pub fn labels(&self) -> Vec<i32> {
        let m = self.m();
        (-m..=m).filter(|&l| self.contains(l)).collect()
    }

    /// Letter positions: every label except `m`.
    pub fn positions(&self) -> Vec<i32> {
        let m = self.m();
        self.labels().into_iter().filter(|&l| l != m).collect()
    }

    /// Dense 0-based index of a label.
    pub fn index(&self, label: i32) -> Result<usize> {
        if !self.contains(label) {
            return Err(Error::UnknownLabel(label, self.n));
        }
        let m = self.m();
        let shifted = (label + m) as usize;
        Ok(if self.is_even() && label > 0 { shifted - 1 } else { shifted })
    }

    pub fn label(&self, index: usize) -> i32 {
        self.labels()[index]
    }

    pub fn succ(&self, label: i32) -> Result<i32> {
        if !self.contains(label) {
            return Err(Error::UnknownLabel(label, self.n));
        }
        if label == self.m() {
            return Err(Error::NoSuccessor(label));
        }
        Ok(if self.is_even() && label == -1 { 1 } else { label + 1 })
    }

    pub fn pred(&self, label: i32) -> Result<i32> {
        if !self.contains(label) {
            return Err(Error::UnknownLabel(label, self.n));
        }
        if label == -self.m() {
            return Err(Error::NoPredecessor(label));
        }
        Ok(if self.is_even() && label == 1 { -1 } else { label - 1 })
    }

    pub fn is_position(&self, label: i32) -> bool {
        self.contains(label) && label != self.m()
    }
}

/// Orientation word of a type-A quiver. Letter `k` (0-based) sits at the
/// `k`-th letter position, so the leftmost letter is `w(-m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord {
    letters: Vec<Letter>,
}

impl BinaryWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.letters.len() + 1
    }

    pub fn labels(&self) -> TypeALabels {
        type_a_labels(self.vertex_count())
    }

    /// Letter at a signed position.
    pub fn at(&self, position: i32) -> Result<Letter> {
        let labels = self.labels();
        if !labels.is_position(position) {
            return Err(Error::UnknownLabel(position, labels.n()));
        }
        Ok(self.letters[labels.index(position)?])
    }

    /// `w*(i) = -w(pred(-i))`.
    pub fn star(&self) -> Self {
        let labels = self.labels();
        let letters = labels
            .positions()
            .into_iter()
            .map(|i| {
                let p = labels.pred(-i).expect("-i > -m for every position i");
                self.at(p).expect("pred(-i) is a position").flip()
            })
            .collect();
        Self { letters }
    }

    pub fn is_symmetric(&self) -> bool {
        self.star() == *self
    }

    pub fn concat(&self, other: &BinaryWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    pub fn slice(&self, from: usize, to: usize) -> Self {
        Self {
            letters: self.letters[from..to].to_vec(),
        }
    }

    /// All words of the given length in lexicographic order with `+` first.
    pub fn all(len: usize) -> impl Iterator<Item = BinaryWord> {
        let count: u64 = 1u64 << len;
        (0..count).map(move |bits| {
            let letters = (0..len)
                .map(|k| if bits >> (len - 1 - k) & 1 == 0 { Letter::Plus } else { Letter::Minus })
                .collect();
            BinaryWord { letters }
        })
    }
}

impl FromStr for BinaryWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Letter::Plus),
                '-' => Ok(Letter::Minus),
                _ => Err(Error::InvalidWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { letters })
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The type-A quiver of `w`. Vertex labels are the signed integers as strings
/// and the edge at position `i` is the arrow `a{i}`.
pub fn word_to_quiver(w: &BinaryWord) -> Quiver {
    let labels = w.labels();
    let vertices: Vec<String> = labels.labels().iter().map(|l| l.to_string()).collect();
    let arrows = labels.positions().into_iter().map(|i| {
        let a = labels.index(i).expect("position is a label");
        let b = labels.index(labels.succ(i).expect("position has a successor")).expect("label");
        let (s, t) = match w.at(i).expect("position") {
            Letter::Plus => (a, b),
            Letter::Minus => (b, a),
        };
        (format!("a{i}"), s, t)
    });
    Quiver::new(vertices, arrows).expect("endpoints are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn labels_and_neighbors() {
        let l4 = type_a_labels(4);
        assert_eq!(l4.labels(), vec![-2, -1, 1, 2]);
        assert_eq!(l4.positions(), vec![-2, -1, 1]);
        assert_eq!(l4.succ(-1).unwrap(), 1);
        assert_eq!(l4.pred(1).unwrap(), -1);
        assert_eq!(l4.pred(-2), Err(Error::NoPredecessor(-2)));
        assert_eq!(l4.succ(2), Err(Error::NoSuccessor(2)));
        assert!(l4.index(0).is_err());

        let l5 = type_a_labels(5);
        assert_eq!(l5.labels(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(l5.succ(-1).unwrap(), 0);
        assert_eq!(l5.index(2).unwrap(), 4);

        assert_eq!(type_a_labels(1).labels(), vec![0]);
        assert!(type_a_labels(1).positions().is_empty());
    }

    #[test]
    fn word_parsing() {
        assert_eq!(w("+-").to_string(), "+-");
        assert!("+x".parse::<BinaryWord>().is_err());
        assert!(w("").is_empty());
    }

    #[test]
    fn star_examples() {
        assert_eq!(w("+++").star(), w("---"));
        assert_eq!(w("+-").star(), w("+-"));
        assert_eq!(w("").star(), w(""));
        assert_ne!(w("+-+").star(), w("+-+"));
    }

    #[test]
    fn equioriented_a4() {
        let q = word_to_quiver(&w("+++"));
        assert_eq!(q.vertices(), ["-2", "-1", "1", "2"]);
        let arrows: Vec<_> = q.arrows().iter().map(|a| (a.name.as_str(), q.label(a.source), q.label(a.target))).collect();
        assert_eq!(arrows, vec![("a-2", "-2", "-1"), ("a-1", "-1", "1"), ("a1", "1", "2")]);
    }

    #[test]
    fn alternating_a3() {
        let q = word_to_quiver(&w("+-"));
        assert_eq!(q.vertices(), ["-1", "0", "1"]);
        assert_eq!(q.arrow(0).source, 0);
        assert_eq!(q.arrow(0).target, 1);
        assert_eq!(q.arrow(1).source, 2);
        assert_eq!(q.arrow(1).target, 1);
    }

    #[test]
    fn single_vertex() {
        let q = word_to_quiver(&w(""));
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.arrow_count(), 0);
        assert!(q.is_path_graph());
    }

    #[test]
    fn all_words_enumeration() {
        let words: Vec<String> = BinaryWord::all(2).map(|w| w.to_string()).collect();
        assert_eq!(words, ["++", "+-", "-+", "--"]);
        assert_eq!(BinaryWord::all(0).count(), 1);
    }

    #[test]
    fn star_is_involution_exhaustively() {
        for len in 0..=12 {
            for w in BinaryWord::all(len) {
                assert_eq!(w.star().star(), w);
            }
        }
    }

    #[test]
    fn type_a_quivers_are_paths() {
        for len in 0..=12 {
            for w in BinaryWord::all(len) {
                let q = word_to_quiver(&w);
                assert_eq!(q.vertex_count(), len + 1);
                assert_eq!(q.arrow_count(), len);
                assert!(q.is_path_graph() && q.is_acyclic());
            }
        }
    }

    #[test]
    fn automorphisms_match_symmetry() {
        assert_eq!(super::super::aut_group(&word_to_quiver(&w(""))).len(), 1);
        for len in 1..=10 {
            for w in BinaryWord::all(len) {
                let q = word_to_quiver(&w);
                let aut = super::super::aut_group(&q);
                assert_eq!(aut.len(), if w.is_symmetric() { 2 } else { 1 }, "{w}");
            }
        }
    }

    fn arb_word() -> impl Strategy<Value = BinaryWord> {
        prop::collection::vec(prop::bool::ANY, 0..16)
            .prop_map(|bs| BinaryWord::new(bs.into_iter().map(|b| if b { Letter::Plus } else { Letter::Minus }).collect()))
    }

    proptest! {
        #[test]
        fn star_reverses_and_negates(w in arb_word()) {
            let rev: Vec<Letter> = w.letters().iter().rev().map(|l| l.flip()).collect();
            let s = w.star();
            prop_assert_eq!(s.letters(), rev.as_slice());
        }

        #[test]
        fn isomorphisms_reproduce_arrows(a in arb_word(), b in arb_word()) {
            let (qa, qb) = (word_to_quiver(&a), word_to_quiver(&b));
            for m in crate::quiver::quiver_isomorphisms(&qa, &qb) {
                prop_assert!(m.is_isomorphism(&qa, &qb));
                let mut mapped: Vec<(usize, usize)> = qa.arrows().iter().map(|x| (m.apply(x.source), m.apply(x.target))).collect();
                let mut target: Vec<(usize, usize)> = qb.arrows().iter().map(|x| (x.source, x.target)).collect();
                mapped.sort_unstable();
                target.sort_unstable();
                prop_assert_eq!(mapped, target);
            }
        }
    }
}
