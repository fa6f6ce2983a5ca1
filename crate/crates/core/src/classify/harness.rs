//! Per-word comparison of the orbit partition with the isomorphism partition.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::iso::{compare, negates_labels, verify_certificate, IsoCertificate, Profile};
use super::orbits::{orbits, transport, OrbitPartition};
use crate::algebra::PathAlgebra;
use crate::error::{Error, Result};
use crate::maxsub::{enumerate_in, RepTag, Representative};
use crate::quiver::{word_to_quiver, BinaryWord, QuiverJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepSummary {
    pub tag: String,
    pub dim: usize,
    pub connected: bool,
    pub ext_quiver: QuiverJson,
}

/// Counters gathered while checking one word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub comparisons: usize,
    pub certificates_verified: usize,
    pub orbit_merges: usize,
    pub merges_certified: usize,
    pub negation_checks: usize,
}

impl Stats {
    pub fn add(&mut self, o: &Stats) {
        self.comparisons += o.comparisons;
        self.certificates_verified += o.certificates_verified;
        self.orbit_merges += o.orbit_merges;
        self.merges_certified += o.merges_certified;
        self.negation_checks += o.negation_checks;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub word: String,
    pub n: usize,
    pub reps: Vec<RepSummary>,
    pub orbits: Vec<Vec<String>>,
    pub isoclasses: Vec<Vec<String>>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub stats: Stats,
}

/// Orbits, isoclasses and checks for one word; see [`verify_word`].
pub struct WordAnalysis {
    pub reps: Vec<Representative>,
    pub connected: Vec<bool>,
    pub orbits: OrbitPartition,
    /// Isoclasses of all representatives, each listed by rep index.
    pub isoclasses: Vec<Vec<usize>>,
    /// Certified isomorphisms between members of different orbits.
    pub cross_orbit: Vec<(usize, usize)>,
    pub stats: Stats,
}

fn soundness(w: &BinaryWord, detail: String) -> Error {
    Error::Soundness {
        word: w.to_string(),
        detail,
    }
}

/// Isomorphism test whose positive verdicts are re-verified, and whose
/// negative verdicts have their witness re-evaluated when it is cheap.
fn certified(w: &BinaryWord, p: &Profile, q: &Profile, stats: &mut Stats) -> Result<IsoCertificate> {
    stats.comparisons += 1;
    let c = compare(p, q)?;
    if let IsoCertificate::Isomorphic(m) = &c {
        verify_certificate(p.algebra(), q.algebra(), m)
            .map_err(|e| soundness(w, format!("rejected certificate: {e}")))?;
        stats.certificates_verified += 1;
        if negates_labels(p.ext_quiver(), q.ext_quiver(), &m.sigma) {
            stats.negation_checks += 1;
            if !w.is_symmetric() {
                return Err(soundness(w, "label-negating isomorphism on an asymmetric word".into()));
            }
        }
    }
    Ok(c)
}

pub fn analyze_word(w: &BinaryWord) -> Result<WordAnalysis> {
    let b = Arc::new(PathAlgebra::new(word_to_quiver(w))?);
    let reps = enumerate_in(&b)?;
    let tags: Vec<RepTag> = reps.iter().map(|r| r.tag).collect();
    let orbit = orbits(b.quiver(), &tags)?;
    let profiles = reps.iter().map(|r| Profile::new(&r.algebra)).collect::<Result<Vec<_>>>()?;
    let connected: Vec<bool> = profiles.iter().map(|p| p.ext_quiver().is_connected()).collect();
    let index = |t: RepTag| tags.iter().position(|&u| u == t).expect("tag of a representative");
    let mut stats = Stats::default();

    for m in &orbit.merges {
        stats.orbit_merges += 1;
        let (f, t) = (index(m.from), index(m.to));
        if transport(&reps[f], &m.sigma)? != *reps[t].algebra.space() {
            return Err(soundness(w, format!("{} does not transport onto {}", m.from, m.to)));
        }
        match certified(w, &profiles[f], &profiles[t], &mut stats)? {
            IsoCertificate::Isomorphic(_) => stats.merges_certified += 1,
            IsoCertificate::NotIsomorphic(wit) => {
                return Err(soundness(
                    w,
                    format!("{} and {} share an orbit but the test says {}", m.from, m.to, wit.name()),
                ))
            }
        }
    }

    let keys: Vec<_> = profiles.iter().map(|p| p.key()).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'reps: for k in 0..reps.len() {
        for class in classes.iter_mut() {
            let first = class[0];
            if keys[first] != keys[k] {
                continue;
            }
            // Members of one orbit are already certified isomorphic.
            if orbit.same_orbit(tags[first], tags[k]) {
                class.push(k);
                continue 'reps;
            }
            match certified(w, &profiles[first], &profiles[k], &mut stats)? {
                IsoCertificate::Isomorphic(_) => {
                    class.push(k);
                    continue 'reps;
                }
                IsoCertificate::NotIsomorphic(_) => {}
            }
        }
        classes.push(vec![k]);
    }

    let mut cross_orbit = Vec::new();
    for class in &classes {
        for (x, &a) in class.iter().enumerate() {
            for &b in &class[x + 1..] {
                if !orbit.same_orbit(tags[a], tags[b]) {
                    cross_orbit.push((a, b));
                }
            }
        }
    }
    Ok(WordAnalysis {
        reps,
        connected,
        orbits: orbit,
        isoclasses: classes,
        cross_orbit,
        stats,
    })
}

/// Builds the report for one word. Fails only on internal inconsistencies:
/// an orbit merge that does not transport, an orbit merge judged
/// non-isomorphic, or a certificate that does not re-verify.
pub fn verify_word(w: &BinaryWord) -> Result<VerificationReport> {
    let an = analyze_word(w)?;
    let tag = |k: usize| an.reps[k].tag.to_string();
    let keep = |blocks: Vec<Vec<usize>>| -> Vec<Vec<String>> {
        blocks
            .into_iter()
            .map(|b| b.into_iter().filter(|&k| an.connected[k]).map(tag).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect()
    };
    let orbit_blocks: Vec<Vec<usize>> = an
        .orbits
        .blocks
        .iter()
        .map(|b| b.iter().map(|t| an.reps.iter().position(|r| r.tag == *t).expect("tag")).collect())
        .collect();
    let orbits_c = keep(orbit_blocks);
    let iso_c = keep(an.isoclasses.clone());
    let normalize = |mut p: Vec<Vec<String>>| {
        p.iter_mut().for_each(|b| b.sort());
        p.sort();
        p
    };
    let verdict = if normalize(orbits_c.clone()) == normalize(iso_c.clone()) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    let mut notes = Vec::new();
    for &(a, b) in &an.cross_orbit {
        let both = an.connected[a] && an.connected[b];
        notes.push(format!(
            "{} ≅ {} in different orbits ({})",
            tag(a),
            tag(b),
            if both { "connected: counterexample" } else { "disconnected: excluded" }
        ));
    }
    if verdict == Verdict::Fail {
        notes.push(format!("orbits {orbits_c:?} differ from isoclasses {iso_c:?}"));
    }

    let reps = an
        .reps
        .iter()
        .zip(&an.connected)
        .map(|(r, &c)| RepSummary {
            tag: r.tag.to_string(),
            dim: r.algebra.dim(),
            connected: c,
            ext_quiver: r.algebra.ext_quiver().to_json(),
        })
        .collect();
    Ok(VerificationReport {
        word: w.to_string(),
        n: w.vertex_count(),
        reps,
        orbits: orbits_c,
        isoclasses: iso_c,
        verdict,
        notes,
        stats: an.stats,
    })
}

/// All words with `2 <= n <= max_n` vertices, shortest first, then in
/// lexicographic order.
pub fn sweep_words(max_n: usize) -> Vec<BinaryWord> {
    (1..max_n).flat_map(BinaryWord::all).collect()
}

/// Reports for every word up to `max_n` vertices, in [`sweep_words`] order.
/// Runs on the current rayon pool.
pub fn verify_theorem(max_n: usize) -> Result<Vec<VerificationReport>> {
    if max_n < 2 {
        return Err(Error::InvalidBound(max_n));
    }
    sweep_words(max_n).par_iter().map(verify_word).collect()
}

/// [`verify_theorem`] on a dedicated pool of `workers` threads.
pub fn verify_theorem_with(max_n: usize, workers: usize) -> Result<Vec<VerificationReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Workers(e.to_string()))?;
    pool.install(|| verify_theorem(max_n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn smallest_bound() {
        let r = verify_theorem(2).unwrap();
        assert_eq!(r.len(), 2);
        for x in &r {
            assert_eq!(x.reps.len(), 2);
            assert_eq!(x.verdict, Verdict::Pass);
        }
        assert!(verify_theorem(1).is_err());
    }

    #[test]
    fn word_counts() {
        assert_eq!(sweep_words(4).len(), 14);
        assert_eq!(sweep_words(10).len(), 1022);
    }

    #[test]
    fn json_round_trip() {
        let r = verify_word(&w("+-+")).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back.word, r.word);
        assert_eq!(back.reps, r.reps);
        assert_eq!(back.orbits, r.orbits);
        assert_eq!(back.verdict, r.verdict);
    }

    #[test]
    fn small_sweep_passes() {
        for r in verify_theorem(5).unwrap() {
            assert_eq!(r.verdict, Verdict::Pass, "{} {:?}", r.word, r.notes);
        }
    }
}
