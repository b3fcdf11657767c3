//! Recombination: the rewriting system replacing a linked pair by its
//! union and intersection, canonical generic forms, truncation families,
//! and the truncation-lemma verifier.
//!
//! Rewriting terminates because each step strictly increases the sum of
//! squared relative lengths while conserving the support, and the normal
//! form is independent of the order in which linked pairs are chosen
//! (confluence is exercised by the test suite over a bounded universe).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::line::LineRegistry;
use crate::segment::{Multisegment, Segment, Side};

/// True iff no two member segments are linked.
pub fn is_generic(m: &Multisegment) -> bool {
    let segs = m.segments();
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            if segs[i].linked(&segs[j]) {
                return false;
            }
        }
    }
    true
}

/// One rewrite step of the recombination process.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RewriteStep {
    pub pair: (Segment, Segment),
    pub union: Segment,
    pub intersection: Option<Segment>,
}

/// First linked pair in the canonical order of the sorted segment list.
fn first_linked_pair(m: &Multisegment) -> Option<(usize, usize)> {
    let segs = m.segments();
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            if segs[i].linked(&segs[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

fn apply_rewrite(m: &Multisegment, i: usize, j: usize) -> (Multisegment, RewriteStep) {
    let segs = m.segments();
    let (s1, s2) = (segs[i].clone(), segs[j].clone());
    let (union, intersection) = s1.union_intersection(&s2).expect("pair is linked");
    let rest = m.removed(j).removed(i);
    let next = rest
        .inserted(Some(union.clone()))
        .inserted(intersection.clone());
    (
        next,
        RewriteStep {
            pair: (s1, s2),
            union,
            intersection,
        },
    )
}

/// Canonical generic form of a multisegment, replacing linked pairs by
/// union/intersection until none remain. The smallest linked pair in the
/// canonical segment order is rewritten first, so runs are reproducible.
pub fn recombine(m: &Multisegment) -> Multisegment {
    recombine_with_trace(m).0
}

/// As [`recombine`], also returning the rewrite trace.
pub fn recombine_with_trace(m: &Multisegment) -> (Multisegment, Vec<RewriteStep>) {
    let mut current = m.clone();
    let mut steps = Vec::new();
    while let Some((i, j)) = first_linked_pair(&current) {
        let (next, step) = apply_rewrite(&current, i, j);
        debug_assert!(
            rel_square_sum(&next) > rel_square_sum(&current),
            "rewrite must strictly increase the squared-length sum"
        );
        current = next;
        steps.push(step);
    }
    (current, steps)
}

/// The termination monotone: sum of squared relative lengths.
pub fn rel_square_sum(m: &Multisegment) -> u64 {
    m.segments()
        .iter()
        .map(|s| {
            let r = u64::from(s.rel_len());
            r * r
        })
        .sum()
}

/// A per-segment truncation pattern. `counts` is parallel to the canonical
/// segment order of the multisegment it was produced from; `total` is the
/// absolute amount `sum k * degree(line)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TruncationPattern {
    pub counts: Vec<u32>,
    pub side: Side,
    pub total: u32,
}

/// Enumerates every truncation pattern of total absolute amount `i`,
/// deduplicated by resulting multisegment (one representative pattern is
/// kept per result, the first in enumeration order). Unreachable amounts
/// give the empty set.
pub fn truncations(
    m: &Multisegment,
    i: u32,
    side: Side,
    reg: &LineRegistry,
) -> Vec<(TruncationPattern, Multisegment)> {
    let segs = m.segments();
    let mut out: BTreeMap<Multisegment, TruncationPattern> = BTreeMap::new();
    let mut counts = vec![0u32; segs.len()];
    enumerate_patterns(segs, reg, 0, i, &mut counts, side, &mut out);
    out.into_iter().map(|(ms, pat)| (pat, ms)).collect()
}

fn enumerate_patterns(
    segs: &[Segment],
    reg: &LineRegistry,
    idx: usize,
    remaining: u32,
    counts: &mut Vec<u32>,
    side: Side,
    out: &mut BTreeMap<Multisegment, TruncationPattern>,
) {
    if idx == segs.len() {
        if remaining == 0 {
            let mut result = Multisegment::empty();
            for (seg, &k) in segs.iter().zip(counts.iter()) {
                result = result.inserted(seg.truncate(side, k).expect("k <= rel"));
            }
            out.entry(result).or_insert_with(|| TruncationPattern {
                counts: counts.clone(),
                side,
                total: counts
                    .iter()
                    .zip(segs)
                    .map(|(&k, s)| k * reg.degree(s.line()))
                    .sum(),
            });
        }
        return;
    }
    let seg = &segs[idx];
    let r = reg.degree(seg.line());
    for k in 0..=seg.rel_len() {
        let amount = k * r;
        if amount > remaining {
            break;
        }
        counts[idx] = k;
        enumerate_patterns(segs, reg, idx + 1, remaining - amount, counts, side, out);
    }
    counts[idx] = 0;
}

/// Outcome of the truncation-lemma check at one amount `i`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LemmaReport {
    pub holds: bool,
    /// The violating truncation, when the lemma fails.
    pub witness: Option<Multisegment>,
    pub checked: usize,
}

/// Verifies, for a generic `m`, that the canonical form of every right
/// truncation of total amount `i` is itself a right truncation of `m`.
/// Support conservation pins the truncation depth on the recombined side
/// to the same `i`, so membership is tested there.
pub fn verify_truncation_lemma(
    m: &Multisegment,
    i: u32,
    reg: &LineRegistry,
) -> Result<LemmaReport> {
    if !is_generic(m) {
        return Err(Error::NonGeneric);
    }
    let family = truncations(m, i, Side::Right, reg);
    let allowed: Vec<&Multisegment> = family.iter().map(|(_, ms)| ms).collect();
    let mut checked = 0;
    for (_, truncated) in &family {
        checked += 1;
        let canonical = recombine(truncated);
        if !allowed.iter().any(|ms| **ms == canonical) {
            return Ok(LemmaReport {
                holds: false,
                witness: Some(truncated.clone()),
                checked,
            });
        }
    }
    Ok(LemmaReport {
        holds: true,
        witness: None,
        checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::testutil::{ms, seg};

    fn reg() -> LineRegistry {
        LineRegistry::new()
    }

    #[test]
    fn is_generic_examples() {
        assert!(is_generic(&ms(vec![seg(0, 3), seg(1, 2)])));
        assert!(!is_generic(&ms(vec![seg(0, 1), seg(1, 2)])));
        assert!(is_generic(&Multisegment::empty()));
    }

    #[test]
    fn recombine_examples() {
        assert_eq!(
            recombine(&ms(vec![seg(0, 1), seg(1, 2)])),
            ms(vec![seg(0, 2), seg(1, 1)])
        );
        assert_eq!(recombine(&ms(vec![seg(0, 1), seg(2, 3)])), ms(vec![seg(0, 3)]));
        let generic = ms(vec![seg(0, 3), seg(1, 2)]);
        assert_eq!(recombine(&generic), generic);
    }

    #[test]
    fn recombine_conserves_support_and_traces() {
        let m = ms(vec![seg(0, 1), seg(1, 2), seg(2, 2)]);
        let (canonical, steps) = recombine_with_trace(&m);
        assert!(is_generic(&canonical));
        assert_eq!(canonical.support(), m.support());
        assert!(!steps.is_empty());
        // replay the monotone along the trace
        let mut cur = m.clone();
        for step in &steps {
            let before = rel_square_sum(&cur);
            let idx1 = cur
                .segments()
                .iter()
                .position(|s| *s == step.pair.0)
                .unwrap();
            let mut next = cur.removed(idx1);
            let idx2 = next
                .segments()
                .iter()
                .position(|s| *s == step.pair.1)
                .unwrap();
            next = next.removed(idx2);
            next = next
                .inserted(Some(step.union.clone()))
                .inserted(step.intersection.clone());
            assert!(rel_square_sum(&next) > before);
            cur = next;
        }
        assert_eq!(cur, canonical);
    }

    #[test]
    fn truncations_examples() {
        let r = reg();
        let single = truncations(&ms(vec![seg(0, 1)]), 1, Side::Right, &r);
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].1, ms(vec![seg(0, 0)]));

        let family: Vec<Multisegment> = truncations(&ms(vec![seg(0, 3), seg(2, 2)]), 2, Side::Right, &r)
            .into_iter()
            .map(|(_, m)| m)
            .collect();
        assert_eq!(
            family,
            vec![ms(vec![seg(0, 1), seg(2, 2)]), ms(vec![seg(0, 2)])]
        );

        let m = ms(vec![seg(0, 2), seg(1, 1)]);
        let identity = truncations(&m, 0, Side::Left, &r);
        assert_eq!(identity.len(), 1);
        assert_eq!(identity[0].1, m);
        assert_eq!(identity[0].0.counts, vec![0, 0]);

        // unreachable amount
        assert!(truncations(&ms(vec![seg(0, 0)]), 5, Side::Right, &r).is_empty());
    }

    #[test]
    fn truncations_dedup_keeps_representative_pattern() {
        let r = reg();
        // two equal segments: both single-truncation patterns give the same result
        let m = ms(vec![seg(0, 1), seg(0, 1)]);
        let fam = truncations(&m, 1, Side::Right, &r);
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].1, ms(vec![seg(0, 0), seg(0, 1)]));
        assert_eq!(fam[0].0.total, 1);
    }

    #[test]
    fn truncation_lemma_examples() {
        let r = reg();
        let m = ms(vec![seg(0, 3), seg(2, 2)]);
        let report = verify_truncation_lemma(&m, 2, &r).unwrap();
        assert!(report.holds, "witness: {:?}", report.witness);

        // pairwise different lines: recombine is the identity on truncations
        let other = Segment::new(crate::line::LineId::from("tau"), crate::rat::int(0), crate::rat::int(2)).unwrap();
        let m = Multisegment::new(vec![seg(0, 1), other]);
        for i in 0..=m.degree(&r) {
            assert!(verify_truncation_lemma(&m, i, &r).unwrap().holds);
        }

        assert!(verify_truncation_lemma(&Multisegment::empty(), 0, &r)
            .unwrap()
            .holds);

        assert_eq!(
            verify_truncation_lemma(&ms(vec![seg(0, 1), seg(1, 2)]), 1, &r),
            Err(Error::NonGeneric)
        );
    }
}
