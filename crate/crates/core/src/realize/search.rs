use std::thread;

use serde::{Deserialize, Serialize};

use super::{verify_realization, RealizeError, VerificationReport};
use crate::invariants::GaussOptions;
use crate::pairing::{validate_pairing, LinkingPairing, PairingError};
use crate::seifert::{homology_snf, torsion_homology_formula, validate_presentation, SeifertPresentation};

/// `max_fibers` caps the fiber count, `bump` lets fiber orders exceed the
/// exponent of the target by up to `2^bump`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_fibers: usize,
    pub bump: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_fibers: 4, bump: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    /// Fibers sorted by `a` then `b`, both descending.
    pub presentation: SeifertPresentation,
    /// Enumeration index of the hit.
    pub index: u64,
    pub report: VerificationReport,
}

/// Fiber vocabulary: for `j` from the top down, `(2^j, 1)`, `(2^j, 2^j-1)`
/// and `(2^j, -1)`, with duplicates removed.
fn vocabulary(top: u32) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for j in (1..=top).rev() {
        let n = 1i64 << j;
        for f in [(n, 1), (n, n - 1), (n, -1)] {
            if !v.contains(&f) {
                v.push(f);
            }
        }
    }
    v
}

/// Presentations `e = 1` over nondecreasing index multisets of the
/// vocabulary, by fiber count and then lexicographically.
struct Candidates {
    vocab: Vec<(i64, i64)>,
    max: usize,
    idx: Vec<usize>,
}

impl Iterator for Candidates {
    type Item = SeifertPresentation;

    fn next(&mut self) -> Option<SeifertPresentation> {
        let v = self.vocab.len();
        if v == 0 {
            return None;
        }
        if self.idx.is_empty() {
            self.idx.push(0);
        } else {
            // advance the rightmost index that can still grow
            match (0..self.idx.len()).rev().find(|&i| self.idx[i] + 1 < v) {
                Some(i) => {
                    let x = self.idx[i] + 1;
                    for slot in &mut self.idx[i..] {
                        *slot = x;
                    }
                }
                None => {
                    if self.idx.len() == self.max {
                        return None;
                    }
                    self.idx = vec![0; self.idx.len() + 1];
                }
            }
        }
        if self.idx.len() > self.max {
            return None;
        }
        let fibers: Vec<(i64, i64)> = self.idx.iter().map(|&i| self.vocab[i]).collect();
        Some(SeifertPresentation::from_pairs(1, &fibers))
    }
}

fn passes_homology_gate(p: &SeifertPresentation, target: &LinkingPairing) -> bool {
    if validate_presentation(p).is_err() {
        return false;
    }
    let group = if p.m() >= 2 {
        torsion_homology_formula(p, 2).ok()
    } else {
        homology_snf(p).ok().and_then(|h| h.p_primary(2).ok())
    };
    group.is_some_and(|g| g == target.group())
}

/// First presentation in enumeration order that realizes `target`.
///
/// Candidates are screened by the homology formula, then confirmed by
/// [`verify_realization`]. With `threads > 1` each batch is verified in
/// parallel but the least-index success is still the one returned.
pub fn search_realization(
    target: &LinkingPairing,
    bounds: SearchBounds,
    threads: usize,
    opts: &GaussOptions,
) -> Result<SearchHit, RealizeError> {
    if target.prime() != 2 {
        return Err(PairingError::NotTwoGroup(target.prime()).into());
    }
    validate_pairing(target)?;
    let s = target.exponent().trailing_zeros();
    let mut cands = Candidates {
        vocab: vocabulary(s.max(1) + bounds.bump),
        max: bounds.max_fibers,
        idx: Vec::new(),
    };
    // the table work per candidate is serial; parallelism is across candidates
    let inner = GaussOptions { workers: 1, ..*opts };
    let threads = threads.max(1);
    let mut tried = 0u64;
    loop {
        let mut batch = Vec::new();
        for p in cands.by_ref() {
            let index = tried;
            tried += 1;
            if passes_homology_gate(&p, target) {
                batch.push((index, p));
                if batch.len() == 4 * threads {
                    break;
                }
            }
        }
        if batch.is_empty() {
            return Err(RealizeError::Exhausted { tried });
        }
        let check = |(index, p): &(u64, SeifertPresentation)| -> Result<Option<SearchHit>, RealizeError> {
            let report = verify_realization(p, target, &inner)?;
            Ok(report.verdict.then(|| SearchHit {
                presentation: p.sorted(),
                index: *index,
                report,
            }))
        };
        let results: Vec<Result<Option<SearchHit>, RealizeError>> = if threads == 1 {
            batch.iter().map(check).collect()
        } else {
            thread::scope(|sc| {
                let handles: Vec<_> = batch
                    .chunks(batch.len().div_ceil(threads))
                    .map(|chunk| sc.spawn(move || chunk.iter().map(check).collect::<Vec<_>>()))
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("search worker panicked"))
                    .collect()
            })
        };
        // results are in batch order, so the first success is the least index
        for r in results {
            if let Some(hit) = r? {
                return Ok(hit);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::BlockSum;

    fn bs(s: &str) -> LinkingPairing {
        s.parse::<BlockSum>().unwrap().pairing()
    }

    #[test]
    fn vocabulary_order() {
        assert_eq!(vocabulary(2), vec![(4, 1), (4, 3), (4, -1), (2, 1), (2, -1)]);
    }

    #[test]
    fn candidate_order() {
        let c = Candidates {
            vocab: vec![(2, 1), (2, -1)],
            max: 2,
            idx: Vec::new(),
        };
        let got: Vec<String> = c.map(|p| p.to_string()).collect();
        assert_eq!(got, ["1; 2/1", "1; 2/-1", "1; 2/1, 2/1", "1; 2/1, 2/-1", "1; 2/-1, 2/-1"]);
    }

    #[test]
    fn first_hits() {
        let o = GaussOptions::default();
        let b = SearchBounds { max_fibers: 3, bump: 2 };
        let hit = search_realization(&bs("A(1,1)"), b, 1, &o).unwrap();
        assert_eq!(hit.presentation.to_string(), "1; 8/1, 2/1");

        let b = SearchBounds { max_fibers: 4, bump: 0 };
        let hit = search_realization(&bs("E0(2)"), b, 1, &o).unwrap();
        assert_eq!(hit.presentation.to_string(), "1; 4/3, 4/1, 4/1");
        let par = search_realization(&bs("E0(2)"), b, 4, &o).unwrap();
        assert_eq!(par, hit);
    }

    #[test]
    fn exhausted() {
        let b = SearchBounds { max_fibers: 2, bump: 0 };
        let r = search_realization(&bs("E0(3)+A(1,3)"), b, 1, &GaussOptions::default());
        assert!(matches!(r, Err(RealizeError::Exhausted { tried }) if tried > 0));
    }
}
