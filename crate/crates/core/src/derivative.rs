//! Left and right Bernstein-Zelevinsky derivatives of segment
//! representations and their products, as formal sums of filtration
//! subquotients.
//!
//! The side conventions follow the segment calculus: the derivative of a
//! Zelevinsky factor truncates on the same side as the derivative, while
//! the derivative of a Steinberg factor truncates on the opposite side.
//! Derivatives are normalized; no extra modulus bookkeeping is exposed,
//! and the +-1/2 restriction twists enter only through the filtration in
//! the `branching` module.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::line::LineRegistry;
use crate::rat::Rat;
use crate::recombination::is_generic;
use crate::segment::{Flavor, FormalSum, InducedRep, Multisegment, Segment, Side};

/// A derivative to evaluate: `order` is absolute.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DerivativeRequest {
    pub rep: InducedRep,
    pub order: u32,
    pub side: Side,
}

impl DerivativeRequest {
    pub fn new(rep: InducedRep, order: u32, side: Side, reg: &LineRegistry) -> Result<Self> {
        let degree = rep.degree(reg);
        if order > degree {
            return Err(Error::OrderTooLarge { order, degree });
        }
        Ok(DerivativeRequest { rep, order, side })
    }

    pub fn evaluate(&self, reg: &LineRegistry) -> FormalSum {
        derive(&self.rep, self.order, self.side, reg)
    }
}

/// Truncation side used by the `side`-derivative of one factor.
fn truncation_side(flavor: Flavor, side: Side) -> Side {
    match flavor {
        Flavor::Zel => side,
        Flavor::St => side.flip(),
    }
}

/// The admissible per-factor orders together with the truncated segment
/// (`None` once the factor is fully derived away).
fn factor_orders(
    flavor: Flavor,
    seg: &Segment,
    side: Side,
    reg: &LineRegistry,
) -> Vec<(u32, Option<Segment>)> {
    let r = reg.degree(seg.line());
    let tside = truncation_side(flavor, side);
    match flavor {
        Flavor::Zel => {
            let mut out = vec![(0, Some(seg.clone()))];
            out.push((r, seg.truncate(tside, 1).expect("1 <= rel")));
            out
        }
        Flavor::St => (0..=seg.rel_len())
            .map(|j| (j * r, seg.truncate(tside, j).expect("j <= rel")))
            .collect(),
    }
}

/// `i`-th derivative of a single Zelevinsky factor: vanishes unless `i`
/// is 0 or the line degree.
pub fn derive_zel_segment(seg: &Segment, i: u32, side: Side, reg: &LineRegistry) -> FormalSum {
    derive_single(Flavor::Zel, seg, i, side, reg)
}

/// `i`-th derivative of a single Steinberg factor: vanishes unless `i`
/// is a multiple of the line degree.
pub fn derive_st_segment(seg: &Segment, i: u32, side: Side, reg: &LineRegistry) -> FormalSum {
    derive_single(Flavor::St, seg, i, side, reg)
}

fn derive_single(flavor: Flavor, seg: &Segment, i: u32, side: Side, reg: &LineRegistry) -> FormalSum {
    for (order, truncated) in factor_orders(flavor, seg, side, reg) {
        if order == i {
            let m = Multisegment::empty().inserted(truncated);
            return FormalSum::singleton(InducedRep::new(flavor, m, Rat::from_integer(0)));
        }
    }
    FormalSum::zero()
}

/// Leibniz expansion of the `i`-th `side`-derivative of a flavored
/// product. Every composition of `i` into admissible per-factor orders
/// contributes one term; the input twist is carried to every term.
pub fn derive(rep: &InducedRep, i: u32, side: Side, reg: &LineRegistry) -> FormalSum {
    let segs = rep.multisegment().segments();
    let choices: Vec<Vec<(u32, Option<Segment>)>> = segs
        .iter()
        .map(|s| factor_orders(rep.flavor(), s, side, reg))
        .collect();
    let mut terms = Vec::new();
    let mut picked: Vec<Option<Segment>> = Vec::with_capacity(segs.len());
    expand(rep, &choices, 0, i, &mut picked, &mut terms);
    FormalSum::new(terms)
}

fn expand(
    rep: &InducedRep,
    choices: &[Vec<(u32, Option<Segment>)>],
    idx: usize,
    remaining: u32,
    picked: &mut Vec<Option<Segment>>,
    terms: &mut Vec<InducedRep>,
) {
    if idx == choices.len() {
        if remaining == 0 {
            let m = Multisegment::new(picked.iter().flatten().cloned().collect());
            terms.push(InducedRep::new(rep.flavor(), m, rep.twist()));
        }
        return;
    }
    for (order, truncated) in &choices[idx] {
        if *order > remaining {
            continue;
        }
        picked.push(truncated.clone());
        expand(rep, choices, idx + 1, remaining - order, picked, terms);
        picked.pop();
    }
}

/// Whittaker dimension of the irreducible designated by `rep`: a
/// Zelevinsky datum is generic iff every segment is a singleton, a
/// Steinberg datum must be generic and is then Whittaker generic.
pub fn whittaker_dim(rep: &InducedRep) -> Result<u8> {
    match rep.flavor() {
        Flavor::Zel => {
            let all_singletons = rep
                .multisegment()
                .segments()
                .iter()
                .all(|s| s.rel_len() == 1);
            Ok(u8::from(all_singletons))
        }
        Flavor::St => {
            if !is_generic(rep.multisegment()) {
                return Err(Error::NonGenericSteinberg);
            }
            Ok(1)
        }
    }
}

/// Checks `dual(derive(rep, i, side)) == derive(dual(rep), i, flip(side))`
/// as formal sums.
pub fn check_derivative_duality(rep: &InducedRep, i: u32, side: Side, reg: &LineRegistry) -> bool {
    derive(rep, i, side, reg).dual(reg) == derive(&rep.dual(reg), i, side.flip(), reg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line::{LineId, LineRegistry};
    use crate::rat::{int, rat};
    use crate::segment::testutil::{ms, seg, seg_h};

    fn reg() -> LineRegistry {
        LineRegistry::new()
    }

    fn zel(segs: Vec<Segment>) -> InducedRep {
        InducedRep::new(Flavor::Zel, ms(segs), int(0))
    }

    fn st(segs: Vec<Segment>) -> InducedRep {
        InducedRep::new(Flavor::St, ms(segs), int(0))
    }

    #[test]
    fn zel_segment_derivatives() {
        let r = reg();
        assert_eq!(
            derive_zel_segment(&seg(0, 1), 1, Side::Right, &r),
            FormalSum::singleton(zel(vec![seg(0, 0)]))
        );
        assert_eq!(
            derive_zel_segment(&seg(0, 1), 1, Side::Left, &r),
            FormalSum::singleton(zel(vec![seg(1, 1)]))
        );
        assert!(derive_zel_segment(&seg(0, 1), 2, Side::Right, &r).is_zero());
        assert_eq!(
            derive_zel_segment(&seg(0, 1), 0, Side::Right, &r),
            FormalSum::singleton(zel(vec![seg(0, 1)]))
        );
        // full derivative of a singleton is the unit
        assert_eq!(
            derive_zel_segment(&seg(3, 3), 1, Side::Left, &r),
            FormalSum::singleton(InducedRep::unit())
        );
    }

    #[test]
    fn st_segment_derivatives() {
        let r = reg();
        // right derivative truncates from the left
        assert_eq!(
            derive_st_segment(&seg_h(-1, 1), 1, Side::Right, &r),
            FormalSum::singleton(st(vec![seg_h(1, 1)]))
        );
        assert_eq!(
            derive_st_segment(&seg(-1, 1), 2, Side::Right, &r),
            FormalSum::singleton(st(vec![seg(1, 1)]))
        );
        // left derivative truncates from the right
        assert_eq!(
            derive_st_segment(&seg(-1, 1), 2, Side::Left, &r),
            FormalSum::singleton(st(vec![seg(-1, -1)]))
        );
        // degree-2 line: order 1 is not a multiple of r = 2
        let mut r2 = LineRegistry::new();
        r2.declare(LineId::from("sigma"), 2, None).unwrap();
        let s = Segment::new(LineId::from("sigma"), int(0), int(1)).unwrap();
        assert!(derive_st_segment(&s, 1, Side::Right, &r2).is_zero());
        assert_eq!(
            derive_st_segment(&s, 2, Side::Right, &r2).terms(),
            &[InducedRep::new(
                Flavor::St,
                Multisegment::new(vec![Segment::new(LineId::from("sigma"), int(1), int(1)).unwrap()]),
                int(0)
            )]
        );
        assert_eq!(
            derive_st_segment(&s, 4, Side::Right, &r2),
            FormalSum::singleton(InducedRep::unit())
        );
        assert!(derive_st_segment(&s, 3, Side::Right, &r2).is_zero());
    }

    #[test]
    fn product_leibniz_examples() {
        let r = reg();
        assert_eq!(
            derive(&st(vec![seg(0, 0), seg(2, 2)]), 1, Side::Right, &r),
            FormalSum::new(vec![st(vec![seg(2, 2)]), st(vec![seg(0, 0)])])
        );
        let any = zel(vec![seg(0, 2), seg(4, 4)]);
        assert_eq!(derive(&any, 0, Side::Left, &r), FormalSum::singleton(any.clone()));
        assert_eq!(
            derive(&zel(vec![seg(0, 1), seg(3, 4)]), 2, Side::Right, &r),
            FormalSum::singleton(zel(vec![seg(0, 0), seg(3, 3)]))
        );
    }

    #[test]
    fn product_carries_twist_and_multiplicity() {
        let r = reg();
        let rep = InducedRep::new(Flavor::St, ms(vec![seg(0, 0), seg(0, 0)]), rat(1, 2));
        let d = derive(&rep, 1, Side::Right, &r);
        // both compositions produce the same term; multiplicity is kept
        assert_eq!(d.len(), 2);
        assert_eq!(
            d.terms()[0],
            InducedRep::new(Flavor::St, ms(vec![seg(0, 0)]), rat(1, 2))
        );
        assert_eq!(d.terms()[0], d.terms()[1]);
    }

    #[test]
    fn single_factor_product_matches_segment_ops() {
        let r = reg();
        for i in 0..=2 {
            for side in [Side::Left, Side::Right] {
                assert_eq!(
                    derive(&zel(vec![seg(0, 1)]), i, side, &r),
                    derive_zel_segment(&seg(0, 1), i, side, &r)
                );
                assert_eq!(
                    derive(&st(vec![seg(0, 1)]), i, side, &r),
                    derive_st_segment(&seg(0, 1), i, side, &r)
                );
            }
        }
    }

    #[test]
    fn degree_bookkeeping_on_terms() {
        let r = reg();
        let rep = st(vec![seg(0, 2), seg(4, 5)]);
        let degree = rep.degree(&r);
        for i in 0..=degree {
            for side in [Side::Left, Side::Right] {
                for term in derive(&rep, i, side, &r).terms() {
                    assert_eq!(term.degree(&r), degree - i);
                }
            }
        }
    }

    #[test]
    fn whittaker_examples() {
        assert_eq!(whittaker_dim(&zel(vec![seg(0, 1)])).unwrap(), 0);
        assert_eq!(whittaker_dim(&st(vec![seg(0, 0), seg(2, 2)])).unwrap(), 1);
        assert_eq!(whittaker_dim(&zel(vec![seg(0, 0), seg(5, 5)])).unwrap(), 1);
        assert_eq!(
            whittaker_dim(&st(vec![seg(0, 1), seg(1, 2)])),
            Err(Error::NonGenericSteinberg)
        );
        assert_eq!(whittaker_dim(&InducedRep::unit()).unwrap(), 1);
    }

    #[test]
    fn full_derivative_counts_whittaker_dim() {
        let r = reg();
        for rep in [
            zel(vec![seg(0, 1)]),
            zel(vec![seg(0, 0), seg(2, 2)]),
            zel(vec![seg(0, 2), seg(1, 1)]),
            st(vec![seg(0, 1), seg(3, 3)]),
        ] {
            let full = derive(&rep, rep.degree(&r), Side::Right, &r);
            assert_eq!(full.len() as u8, whittaker_dim(&rep).unwrap());
            for term in full.terms() {
                assert!(term.is_unit());
            }
        }
    }

    #[test]
    fn duality_examples() {
        let r = reg();
        let steinberg = st(vec![seg_h(-1, 1)]);
        assert!(check_derivative_duality(&steinberg, 1, Side::Right, &r));
        let any = zel(vec![seg(0, 2), seg(1, 1)]);
        assert!(check_derivative_duality(&any, 0, Side::Left, &r));
        // a twisted rep exercises the twist negation
        let twisted = InducedRep::new(Flavor::St, ms(vec![seg(0, 1), seg(3, 3)]), rat(1, 2));
        for i in 0..=twisted.degree(&r) {
            for side in [Side::Left, Side::Right] {
                assert!(check_derivative_duality(&twisted, i, side, &r));
            }
        }
    }

    #[test]
    fn request_validates_order() {
        let r = reg();
        let rep = st(vec![seg(0, 1)]);
        assert!(DerivativeRequest::new(rep.clone(), 3, Side::Right, &r).is_err());
        let req = DerivativeRequest::new(rep, 2, Side::Right, &r).unwrap();
        assert_eq!(req.evaluate(&r), FormalSum::singleton(InducedRep::unit()));
    }
}
