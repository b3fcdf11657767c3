//! Finite universes of segments, multisegments, and induced
//! representations, for the exhaustive harnesses.
//!
//! Enumeration is deterministic: results come out in canonical order
//! (degree first, then the segment order), each value exactly once.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::line::{LineId, LineRegistry};
use crate::rat::{self, Rat};
use crate::segment::{Flavor, InducedRep, Multisegment, Segment};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LineDecl {
    pub id: LineId,
    #[serde(default = "default_degree")]
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<LineId>,
}

fn default_degree() -> u32 {
    1
}

fn default_lines() -> Vec<LineDecl> {
    vec![LineDecl {
        id: LineId::from("rho"),
        degree: 1,
        dual: None,
    }]
}

/// A finite enumeration universe: declared lines, an exponent window with
/// grid step 1 or 1/2 anchored at the lower endpoint, and a degree bound.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct UniverseSpec {
    #[serde(default = "default_lines")]
    pub lines: Vec<LineDecl>,
    #[serde(with = "rat::as_pair")]
    pub window_lo: Rat,
    #[serde(with = "rat::as_pair")]
    pub window_hi: Rat,
    /// Grid in half-integer steps instead of integer steps.
    #[serde(default)]
    pub half_steps: bool,
    pub max_degree: u32,
    /// Optional cap on the number of segments per multisegment.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_segments: Option<u32>,
    #[serde(default = "default_flavors")]
    pub flavors: Vec<Flavor>,
    /// Echoed in reports; carries no semantics here.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

fn default_flavors() -> Vec<Flavor> {
    vec![Flavor::Zel, Flavor::St]
}

impl UniverseSpec {
    pub fn on_window(lo: Rat, hi: Rat, max_degree: u32) -> Self {
        UniverseSpec {
            lines: default_lines(),
            window_lo: lo,
            window_hi: hi,
            half_steps: false,
            max_degree,
            max_segments: None,
            flavors: default_flavors(),
            mode: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.window_lo > self.window_hi {
            return Err(Error::BadUniverse("window is empty (lo > hi)".into()));
        }
        for bound in [&self.window_lo, &self.window_hi] {
            if *bound.denom() > 2 {
                return Err(Error::BadUniverse(
                    "window bounds must have denominator <= 2".into(),
                ));
            }
        }
        if self.lines.is_empty() {
            return Err(Error::BadUniverse("no lines declared".into()));
        }
        Ok(())
    }

    pub fn registry(&self) -> Result<LineRegistry> {
        let mut reg = LineRegistry::new();
        for decl in &self.lines {
            reg.declare(decl.id.clone(), decl.degree, decl.dual.clone())?;
        }
        Ok(reg)
    }

    /// The exponent grid: steps of 1 (or 1/2) from the lower window bound.
    pub fn grid(&self) -> Vec<Rat> {
        let step = if self.half_steps {
            Rat::new(1, 2)
        } else {
            Rat::from_integer(1)
        };
        let mut out = Vec::new();
        let mut e = self.window_lo;
        while e <= self.window_hi {
            out.push(e);
            e += step;
        }
        out
    }
}

/// Every segment over the declared lines with all points inside the
/// window and absolute length at most the degree bound.
pub fn enumerate_segments(spec: &UniverseSpec) -> Result<Vec<Segment>> {
    spec.validate()?;
    let reg = spec.registry()?;
    let grid = spec.grid();
    let mut out = Vec::new();
    for decl in &spec.lines {
        let r = reg.degree(&decl.id);
        for &a in &grid {
            let mut b = a;
            loop {
                if b > spec.window_hi {
                    break;
                }
                let seg = Segment::new(decl.id.clone(), a, b).expect("grid endpoints");
                if seg.abs_len(&reg) > spec.max_degree.max(r) {
                    break;
                }
                if seg.abs_len(&reg) <= spec.max_degree {
                    out.push(seg);
                }
                b += Rat::from_integer(1);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Every multisegment over the universe with degree at most the bound
/// (and at most `max_segments` members when set), in canonical order.
pub fn enumerate_multisegments(spec: &UniverseSpec) -> Result<Vec<Multisegment>> {
    let segments = enumerate_segments(spec)?;
    let reg = spec.registry()?;
    let sizes: Vec<u32> = segments.iter().map(|s| s.abs_len(&reg)).collect();
    let mut out = Vec::new();
    let mut stack: Vec<Segment> = Vec::new();
    fn rec(
        segments: &[Segment],
        sizes: &[u32],
        from: usize,
        budget: u32,
        members_left: u32,
        stack: &mut Vec<Segment>,
        out: &mut Vec<Multisegment>,
    ) {
        out.push(Multisegment::new(stack.clone()));
        if members_left == 0 {
            return;
        }
        for i in from..segments.len() {
            if sizes[i] <= budget {
                stack.push(segments[i].clone());
                rec(
                    segments,
                    sizes,
                    i,
                    budget - sizes[i],
                    members_left - 1,
                    stack,
                    out,
                );
                stack.pop();
            }
        }
    }
    let members = spec.max_segments.unwrap_or(u32::MAX);
    rec(
        &segments,
        &sizes,
        0,
        spec.max_degree,
        members,
        &mut stack,
        &mut out,
    );
    out.sort_by_key(|m| (m.degree(&reg), m.clone()));
    out.dedup();
    Ok(out)
}

/// Induced representations over the universe: each enumerated
/// multisegment with each allowed flavor, twist 0. The unit appears once.
pub fn enumerate_reps(spec: &UniverseSpec) -> Result<Vec<InducedRep>> {
    let multisegments = enumerate_multisegments(spec)?;
    let mut out = Vec::new();
    for m in &multisegments {
        if m.is_empty() {
            out.push(InducedRep::unit());
            continue;
        }
        for &flavor in &spec.flavors {
            out.push(InducedRep::new(flavor, m.clone(), Rat::from_integer(0)));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;
    use crate::segment::testutil::{ms, seg};

    #[test]
    fn small_window_enumeration_matches_hand_count() {
        let spec = UniverseSpec::on_window(int(0), int(1), 2);
        let all = enumerate_multisegments(&spec).unwrap();
        let expected = vec![
            Multisegment::empty(),
            ms(vec![seg(0, 0)]),
            ms(vec![seg(1, 1)]),
            ms(vec![seg(0, 0), seg(0, 0)]),
            ms(vec![seg(0, 0), seg(1, 1)]),
            ms(vec![seg(0, 1)]),
            ms(vec![seg(1, 1), seg(1, 1)]),
        ];
        assert_eq!(all, expected);
    }

    #[test]
    fn degree_bound_zero_gives_the_empty_multisegment() {
        let spec = UniverseSpec::on_window(int(0), int(3), 0);
        assert_eq!(
            enumerate_multisegments(&spec).unwrap(),
            vec![Multisegment::empty()]
        );
    }

    #[test]
    fn two_lines_degree_one() {
        let mut spec = UniverseSpec::on_window(int(0), int(0), 1);
        spec.lines.push(LineDecl {
            id: LineId::from("tau"),
            degree: 1,
            dual: None,
        });
        let all = enumerate_multisegments(&spec).unwrap();
        assert_eq!(all.len(), 3); // empty plus one singleton per line
        assert!(all.contains(&Multisegment::empty()));
    }

    #[test]
    fn half_step_grid() {
        let mut spec = UniverseSpec::on_window(int(0), int(1), 1);
        spec.half_steps = true;
        let grid = spec.grid();
        assert_eq!(grid, vec![int(0), Rat::new(1, 2), int(1)]);
        let segs = enumerate_segments(&spec).unwrap();
        assert_eq!(segs.len(), 3);
    }

    #[test]
    fn max_segments_caps_members() {
        let mut spec = UniverseSpec::on_window(int(0), int(1), 4);
        spec.max_segments = Some(1);
        let all = enumerate_multisegments(&spec).unwrap();
        assert!(all.iter().all(|m| m.len() <= 1));
    }

    #[test]
    fn invalid_specs_rejected() {
        let spec = UniverseSpec::on_window(int(1), int(0), 2);
        assert!(enumerate_multisegments(&spec).is_err());
        let spec = UniverseSpec::on_window(Rat::new(1, 3), int(1), 2);
        assert!(enumerate_segments(&spec).is_err());
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let mut spec = UniverseSpec::on_window(int(0), int(2), 4);
        spec.half_steps = true;
        let all = enumerate_multisegments(&spec).unwrap();
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(all.len(), dedup.len());
        let reps = enumerate_reps(&spec).unwrap();
        let units = reps.iter().filter(|r| r.is_unit()).count();
        assert_eq!(units, 1);
    }

    #[test]
    fn degree_two_line_sizes() {
        let mut spec = UniverseSpec::on_window(int(0), int(3), 4);
        spec.lines = vec![LineDecl {
            id: LineId::from("sigma"),
            degree: 2,
            dual: None,
        }];
        let reg = spec.registry().unwrap();
        let segs = enumerate_segments(&spec).unwrap();
        assert!(segs.iter().all(|s| s.abs_len(&reg) <= 4));
        assert!(segs.iter().any(|s| s.rel_len() == 2));
    }
}
