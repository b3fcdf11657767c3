//! Segments, multisegments, induced representations, and formal sums.
//!
//! These are the arithmetic carriers for everything else: a segment is a
//! contiguous run `[nu^a rho, ..., nu^b rho]` of points on one cuspidal
//! line, a multisegment is a multiset of segments, and an induced
//! representation is a flavored product of segment representations with a
//! global twist exponent. All values are immutable and all operations are
//! pure.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::line::{LineId, LineRegistry};
use crate::rat::{self, Rat};

/// Truncation / derivative / restriction side.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

/// One point `nu^e rho` on a cuspidal line.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct CuspidalPoint {
    pub line: LineId,
    #[serde(with = "rat::as_pair")]
    pub exponent: Rat,
}

impl fmt::Display for CuspidalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, rat::display_rat(&self.exponent))
    }
}

/// Sorted multiset of cuspidal points; the cuspidal support of a segment,
/// multisegment, or induced representation. Two supports are equal iff
/// they agree as multisets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Support(Vec<CuspidalPoint>);

impl Support {
    pub fn empty() -> Self {
        Support(Vec::new())
    }

    pub fn from_points(mut points: Vec<CuspidalPoint>) -> Self {
        points.sort();
        Support(points)
    }

    pub fn points(&self) -> &[CuspidalPoint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset union.
    pub fn merge(&self, other: &Support) -> Support {
        let mut points = self.0.clone();
        points.extend(other.0.iter().cloned());
        Support::from_points(points)
    }

    /// Shifts every exponent by `t`.
    pub fn shifted(&self, t: Rat) -> Support {
        Support::from_points(
            self.0
                .iter()
                .map(|p| CuspidalPoint {
                    line: p.line.clone(),
                    exponent: p.exponent + t,
                })
                .collect(),
        )
    }

    /// Pointwise dual: `nu^e rho` goes to `nu^{-e} rho^vee`.
    pub fn dual(&self, reg: &LineRegistry) -> Support {
        Support::from_points(
            self.0
                .iter()
                .map(|p| CuspidalPoint {
                    line: reg.dual(&p.line),
                    exponent: -p.exponent,
                })
                .collect(),
        )
    }

    /// Distinct lines occurring in the support, in canonical order.
    pub fn lines(&self) -> Vec<LineId> {
        let mut lines: Vec<LineId> = self.0.iter().map(|p| p.line.clone()).collect();
        lines.dedup();
        lines
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// A Zelevinsky segment `[nu^a rho, ..., nu^b rho]` with `b - a` a
/// non-negative integer. Ordering and equality are `(line, a, b)` with
/// exact rational comparison; this fixes all tie-breaking downstream.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Segment {
    line: LineId,
    #[serde(with = "rat::as_pair")]
    a: Rat,
    #[serde(with = "rat::as_pair")]
    b: Rat,
}

impl<'de> Deserialize<'de> for Segment {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            line: LineId,
            #[serde(with = "rat::as_pair")]
            a: Rat,
            #[serde(with = "rat::as_pair")]
            b: Rat,
        }
        let r = Repr::deserialize(de)?;
        Segment::new(r.line, r.a, r.b).map_err(serde::de::Error::custom)
    }
}

impl Segment {
    pub fn new(line: LineId, a: Rat, b: Rat) -> Result<Self> {
        if rat::as_non_negative_integer(&(b - a)).is_none() {
            return Err(Error::InvalidSegment {
                a: rat::display_rat(&a),
                b: rat::display_rat(&b),
            });
        }
        Ok(Segment { line, a, b })
    }

    pub fn line(&self) -> &LineId {
        &self.line
    }

    pub fn a(&self) -> Rat {
        self.a
    }

    pub fn b(&self) -> Rat {
        self.b
    }

    /// Relative length `b - a + 1 >= 1`.
    pub fn rel_len(&self) -> u32 {
        rat::as_non_negative_integer(&(self.b - self.a)).expect("segment invariant") + 1
    }

    /// Absolute length `degree(line) * rel_len`.
    pub fn abs_len(&self, reg: &LineRegistry) -> u32 {
        reg.degree(&self.line) * self.rel_len()
    }

    /// Removes `k` points from the right end; `None` once the whole
    /// segment is gone, an error past that.
    pub fn truncate_right(&self, k: u32) -> Result<Option<Segment>> {
        let rel = self.rel_len();
        if k > rel {
            return Err(Error::OverTruncation { amount: k, rel });
        }
        if k == rel {
            return Ok(None);
        }
        Ok(Some(Segment {
            line: self.line.clone(),
            a: self.a,
            b: self.b - Rat::from_integer(i64::from(k)),
        }))
    }

    /// Mirror of [`Segment::truncate_right`], raising `a` instead.
    pub fn truncate_left(&self, k: u32) -> Result<Option<Segment>> {
        let rel = self.rel_len();
        if k > rel {
            return Err(Error::OverTruncation { amount: k, rel });
        }
        if k == rel {
            return Ok(None);
        }
        Ok(Some(Segment {
            line: self.line.clone(),
            a: self.a + Rat::from_integer(i64::from(k)),
            b: self.b,
        }))
    }

    pub fn truncate(&self, side: Side, k: u32) -> Result<Option<Segment>> {
        match side {
            Side::Left => self.truncate_left(k),
            Side::Right => self.truncate_right(k),
        }
    }

    /// True when the point set of `other` sits inside this segment.
    pub fn contains(&self, other: &Segment) -> bool {
        self.line == other.line
            && rat::is_integer(&(other.a - self.a))
            && self.a <= other.a
            && other.b <= self.b
    }

    /// Zelevinsky linkage: same line, integral offset, neither segment
    /// contains the other, and the union of point sets is again a segment.
    pub fn linked(&self, other: &Segment) -> bool {
        if self.line != other.line || !rat::is_integer(&(other.a - self.a)) {
            return false;
        }
        if self.contains(other) || other.contains(self) {
            return false;
        }
        let max_a = self.a.max(other.a);
        let min_b = self.b.min(other.b);
        max_a <= min_b + Rat::from_integer(1)
    }

    /// Replaces a linked pair by `(union, intersection)`; the intersection
    /// is `None` in the juxtaposed case.
    pub fn union_intersection(&self, other: &Segment) -> Result<(Segment, Option<Segment>)> {
        if !self.linked(other) {
            return Err(Error::NotLinked);
        }
        let union = Segment {
            line: self.line.clone(),
            a: self.a.min(other.a),
            b: self.b.max(other.b),
        };
        let max_a = self.a.max(other.a);
        let min_b = self.b.min(other.b);
        let intersection = if max_a <= min_b {
            Some(Segment {
                line: self.line.clone(),
                a: max_a,
                b: min_b,
            })
        } else {
            None
        };
        Ok((union, intersection))
    }

    pub fn support(&self) -> Support {
        let mut points = Vec::with_capacity(self.rel_len() as usize);
        let mut e = self.a;
        while e <= self.b {
            points.push(CuspidalPoint {
                line: self.line.clone(),
                exponent: e,
            });
            e += Rat::from_integer(1);
        }
        Support::from_points(points)
    }

    /// `[a, b]` on `L` goes to `[-b, -a]` on the dual line.
    pub fn dual(&self, reg: &LineRegistry) -> Segment {
        Segment {
            line: reg.dual(&self.line),
            a: -self.b,
            b: -self.a,
        }
    }

    /// Shifts both endpoints by `t`.
    pub fn shifted(&self, t: Rat) -> Segment {
        Segment {
            line: self.line.clone(),
            a: self.a + t,
            b: self.b + t,
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]@{}",
            rat::display_rat(&self.a),
            rat::display_rat(&self.b),
            self.line
        )
    }
}

/// A multiset of segments, kept sorted in the canonical segment order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize)]
pub struct Multisegment {
    segments: Vec<Segment>,
}

impl<'de> Deserialize<'de> for Multisegment {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            segments: Vec<Segment>,
        }
        Ok(Multisegment::new(Repr::deserialize(de)?.segments))
    }
}

impl Multisegment {
    pub fn new(mut segments: Vec<Segment>) -> Self {
        segments.sort();
        Multisegment { segments }
    }

    pub fn empty() -> Self {
        Multisegment::default()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Inserts a segment, keeping canonical order. `None` (an absent
    /// segment) is dropped silently, matching the truncation calculus.
    pub fn inserted(&self, seg: Option<Segment>) -> Multisegment {
        match seg {
            None => self.clone(),
            Some(seg) => {
                let mut segments = self.segments.clone();
                let at = segments.partition_point(|s| s <= &seg);
                segments.insert(at, seg);
                Multisegment { segments }
            }
        }
    }

    /// Removes one occurrence at position `idx`.
    pub fn removed(&self, idx: usize) -> Multisegment {
        let mut segments = self.segments.clone();
        segments.remove(idx);
        Multisegment { segments }
    }

    pub fn degree(&self, reg: &LineRegistry) -> u32 {
        self.segments.iter().map(|s| s.abs_len(reg)).sum()
    }

    pub fn support(&self) -> Support {
        self.segments
            .iter()
            .fold(Support::empty(), |acc, s| acc.merge(&s.support()))
    }

    pub fn dual(&self, reg: &LineRegistry) -> Multisegment {
        Multisegment::new(self.segments.iter().map(|s| s.dual(reg)).collect())
    }

    pub fn shifted(&self, t: Rat) -> Multisegment {
        Multisegment::new(self.segments.iter().map(|s| s.shifted(t)).collect())
    }
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<T: IntoIterator<Item = Segment>>(iter: T) -> Self {
        Multisegment::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// Which irreducible each factor designates: `Zel` for the unique
/// irreducible submodule `<Delta>`, `St` for the unique irreducible
/// quotient `St(Delta)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "ZEL")]
    Zel,
    #[serde(rename = "ST")]
    St,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Zel => f.write_str("ZEL"),
            Flavor::St => f.write_str("ST"),
        }
    }
}

/// A flavored product of segment representations with a global
/// nu-exponent. The degree-0 unit representation compares equal across
/// flavors and twists; construction canonicalizes it to `(ZEL, {}, 0)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct InducedRep {
    flavor: Flavor,
    m: Multisegment,
    #[serde(with = "rat::as_pair")]
    twist: Rat,
}

impl<'de> Deserialize<'de> for InducedRep {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            flavor: Flavor,
            m: Multisegment,
            #[serde(with = "rat::as_pair")]
            twist: Rat,
        }
        let r = Repr::deserialize(de)?;
        Ok(InducedRep::new(r.flavor, r.m, r.twist))
    }
}

impl InducedRep {
    pub fn new(flavor: Flavor, m: Multisegment, twist: Rat) -> Self {
        if m.is_empty() {
            return InducedRep::unit();
        }
        InducedRep { flavor, m, twist }
    }

    /// The degree-0 unit representation.
    pub fn unit() -> Self {
        InducedRep {
            flavor: Flavor::Zel,
            m: Multisegment::empty(),
            twist: Rat::from_integer(0),
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn multisegment(&self) -> &Multisegment {
        &self.m
    }

    pub fn twist(&self) -> Rat {
        self.twist
    }

    pub fn is_unit(&self) -> bool {
        self.m.is_empty()
    }

    pub fn degree(&self, reg: &LineRegistry) -> u32 {
        self.m.degree(reg)
    }

    /// Support with every exponent shifted by the twist.
    pub fn support(&self) -> Support {
        self.m.support().shifted(self.twist)
    }

    /// Segmentwise dual on the dual lines; the twist negates, the flavor
    /// is preserved.
    pub fn dual(&self, reg: &LineRegistry) -> InducedRep {
        InducedRep::new(self.flavor, self.m.dual(reg), -self.twist)
    }

    /// Adds `t` to the global twist.
    pub fn twisted(&self, t: Rat) -> InducedRep {
        InducedRep::new(self.flavor, self.m.clone(), self.twist + t)
    }
}

impl fmt::Display for InducedRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        write!(f, "{}({})", self.flavor, self.m)?;
        if !rat::is_zero(&self.twist) {
            write!(f, " * nu^{}", rat::display_rat(&self.twist))?;
        }
        Ok(())
    }
}

/// A multiset of induced representations: the value of derivative and
/// filtration operations. The empty sum is the zero value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize)]
pub struct FormalSum {
    terms: Vec<InducedRep>,
}

impl<'de> Deserialize<'de> for FormalSum {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            terms: Vec<InducedRep>,
        }
        Ok(FormalSum::new(Repr::deserialize(de)?.terms))
    }
}

impl FormalSum {
    pub fn new(mut terms: Vec<InducedRep>) -> Self {
        terms.sort();
        FormalSum { terms }
    }

    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn singleton(rep: InducedRep) -> Self {
        FormalSum { terms: vec![rep] }
    }

    pub fn terms(&self) -> &[InducedRep] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dual(&self, reg: &LineRegistry) -> FormalSum {
        FormalSum::new(self.terms.iter().map(|t| t.dual(reg)).collect())
    }

    pub fn twisted(&self, t: Rat) -> FormalSum {
        FormalSum::new(self.terms.iter().map(|x| x.twisted(t)).collect())
    }
}

impl FromIterator<InducedRep> for FormalSum {
    fn from_iter<T: IntoIterator<Item = InducedRep>>(iter: T) -> Self {
        FormalSum::new(iter.into_iter().collect())
    }
}


#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn segment_invariant_enforced() {
        assert!(Segment::new(LineId::from("rho"), int(2), int(0)).is_err());
        assert!(Segment::new(LineId::from("rho"), int(0), rat(1, 2)).is_err());
        assert!(Segment::new(LineId::from("rho"), rat(1, 2), rat(1, 2)).is_ok());
    }

    #[test]
    fn truncate_right_examples() {
        let s = seg(0, 2);
        assert_eq!(s.truncate_right(1).unwrap(), Some(seg(0, 1)));
        assert_eq!(s.truncate_right(3).unwrap(), None);
        assert_eq!(s.truncate_right(0).unwrap(), Some(seg(0, 2)));
        assert_eq!(
            s.truncate_right(4),
            Err(Error::OverTruncation { amount: 4, rel: 3 })
        );
    }

    #[test]
    fn truncate_left_examples() {
        assert_eq!(seg(0, 2).truncate_left(1).unwrap(), Some(seg(1, 2)));
        assert_eq!(seg_h(1, 1).truncate_left(1).unwrap(), None);
        assert_eq!(seg(0, 2).truncate_left(0).unwrap(), Some(seg(0, 2)));
    }

    #[test]
    fn truncation_composes() {
        let s = seg(0, 4);
        let once_then_twice = s
            .truncate_right(1)
            .unwrap()
            .unwrap()
            .truncate_right(2)
            .unwrap();
        assert_eq!(once_then_twice, s.truncate_right(3).unwrap());
    }

    #[test]
    fn linked_examples() {
        assert!(seg(0, 1).linked(&seg(1, 2)));
        assert!(!seg(0, 3).linked(&seg(1, 2)));
        assert!(seg(0, 1).linked(&seg(2, 3)));
        // self-linkage is containment
        assert!(!seg(0, 1).linked(&seg(0, 1)));
        // symmetric
        assert!(seg(1, 2).linked(&seg(0, 1)));
        // gap of two: union is not a segment
        assert!(!seg(0, 1).linked(&seg(3, 4)));
        // non-integral offset
        assert!(!seg(0, 1).linked(&seg_h(1, 3)));
        // different lines
        let other = Segment::new(LineId::from("tau"), int(1), int(2)).unwrap();
        assert!(!seg(0, 1).linked(&other));
    }

    #[test]
    fn union_intersection_examples() {
        let (u, i) = seg(0, 1).union_intersection(&seg(1, 2)).unwrap();
        assert_eq!((u, i), (seg(0, 2), Some(seg(1, 1))));

        let (u, i) = seg(0, 1).union_intersection(&seg(2, 3)).unwrap();
        assert_eq!((u, i), (seg(0, 3), None));

        let (u, i) = seg(-1, 1).union_intersection(&seg(0, 2)).unwrap();
        assert_eq!((u, i), (seg(-1, 2), Some(seg(0, 1))));

        assert_eq!(
            seg(0, 3).union_intersection(&seg(1, 2)),
            Err(Error::NotLinked)
        );
    }

    #[test]
    fn support_examples() {
        assert_eq!(
            seg(0, 2).support(),
            points(&[("rho", int(0)), ("rho", int(1)), ("rho", int(2))])
        );
        let rep = InducedRep::new(Flavor::St, ms(vec![seg(0, 1)]), rat(1, 2));
        assert_eq!(
            rep.support(),
            points(&[("rho", rat(1, 2)), ("rho", rat(3, 2))])
        );
        assert_eq!(Multisegment::empty().support(), Support::empty());
    }

    #[test]
    fn dual_examples() {
        let reg = LineRegistry::new();
        let rep = InducedRep::new(Flavor::St, ms(vec![seg(0, 1)]), int(0));
        assert_eq!(
            rep.dual(&reg),
            InducedRep::new(Flavor::St, ms(vec![seg(-1, 0)]), int(0))
        );
        let twisted = InducedRep::new(Flavor::St, ms(vec![seg(0, 1)]), rat(1, 2));
        assert_eq!(twisted.dual(&reg).dual(&reg), twisted);
        assert_eq!(InducedRep::unit().dual(&reg), InducedRep::unit());
    }

    #[test]
    fn dual_respects_declared_dual_lines() {
        let mut reg = LineRegistry::new();
        reg.declare(LineId::from("rho"), 2, Some(LineId::from("rho^"))) // degree-2 pair
            .unwrap();
        let s = Segment::new(LineId::from("rho"), int(0), int(1)).unwrap();
        let d = s.dual(&reg);
        assert_eq!(d.line(), &LineId::from("rho^"));
        assert_eq!((d.a(), d.b()), (int(-1), int(0)));
        assert_eq!(s.dual(&reg).dual(&reg), s);
        assert_eq!(s.abs_len(&reg), 4);
    }

    #[test]
    fn unit_rep_is_canonical() {
        let unit_st = InducedRep::new(Flavor::St, Multisegment::empty(), rat(1, 2));
        let unit_zel = InducedRep::new(Flavor::Zel, Multisegment::empty(), int(0));
        assert_eq!(unit_st, unit_zel);
        assert_eq!(unit_st, InducedRep::unit());
    }

    #[test]
    fn multiset_semantics() {
        let m1 = ms(vec![seg(1, 2), seg(0, 1), seg(0, 1)]);
        let m2 = ms(vec![seg(0, 1), seg(1, 2), seg(0, 1)]);
        assert_eq!(m1, m2);
        assert_eq!(m1.len(), 3);
        let m3 = ms(vec![seg(0, 1), seg(1, 2)]);
        assert_ne!(m1, m3);
        assert_eq!(m1.inserted(None), m1);
        assert_eq!(m3.inserted(Some(seg(0, 1))), m1);
    }

    #[test]
    fn degree_bookkeeping() {
        let reg = LineRegistry::new();
        let m = ms(vec![seg(0, 2), seg(1, 1)]);
        assert_eq!(m.degree(&reg), 4);
        assert_eq!(Multisegment::empty().degree(&reg), 0);
        assert_eq!(m.support().len() as u32, m.degree(&reg));
    }

    #[test]
    fn json_encoding_matches_schema() {
        let s = seg_h(-1, 1);
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"line":"rho","a":[-1,2],"b":[1,2]}"#
        );
        let rep = InducedRep::new(Flavor::St, ms(vec![seg(0, 1)]), rat(1, 2));
        let json = serde_json::to_string(&rep).unwrap();
        assert_eq!(
            json,
            r#"{"flavor":"ST","m":{"segments":[{"line":"rho","a":[0,1],"b":[1,1]}]},"twist":[1,2]}"#
        );
        let back: InducedRep = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
        // invalid segment payloads are schema errors
        assert!(serde_json::from_str::<Segment>(r#"{"line":"rho","a":[1,1],"b":[0,1]}"#).is_err());
    }
}
