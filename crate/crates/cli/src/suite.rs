//! Exhaustive verification harnesses over enumerated universes.
//!
//! Each harness shards its case list across a rayon pool and merges the
//! results deterministically (cases keep their canonical order, the
//! first counterexample is the one reported).

use extbranch_core::{
    check_derivative_duality, enumerate_multisegments, enumerate_reps, enumerate_segments,
    ext_vanishing_certificate, hecke, is_generic, quotient_obstruction, verify_truncation_lemma,
    Flavor, InducedRep, Multisegment, Rat, Side, UniverseSpec,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::io::{to_value, CliResult};
use crate::report::Counts;

pub struct Outcome {
    pub counts: Counts,
    pub first_counterexample: Option<Value>,
}

fn merge(results: Vec<Option<Value>>) -> Outcome {
    let cases = results.len();
    let failed = results.iter().filter(|r| r.is_some()).count();
    Outcome {
        counts: Counts {
            cases,
            certified: cases - failed,
            failed,
        },
        first_counterexample: results.into_iter().flatten().next(),
    }
}

/// Truncation lemma over every generic multisegment and feasible amount.
pub fn truncation_lemma(spec: &UniverseSpec) -> CliResult<Outcome> {
    let reg = spec.registry()?;
    let universe = enumerate_multisegments(spec)?;
    let cases: Vec<(Multisegment, u32)> = universe
        .into_iter()
        .filter(is_generic_ref)
        .flat_map(|m| {
            let degree = m.degree(&reg);
            (0..=degree).map(move |i| (m.clone(), i))
        })
        .collect();
    let results: Vec<Option<Value>> = cases
        .par_iter()
        .map(|(m, i)| {
            let report = verify_truncation_lemma(m, *i, &reg).expect("generic input");
            if report.holds {
                None
            } else {
                Some(json!({
                    "multisegment": to_value(m),
                    "i": i,
                    "witness": to_value(&report.witness),
                }))
            }
        })
        .collect();
    Ok(merge(results))
}

fn is_generic_ref(m: &Multisegment) -> bool {
    is_generic(m)
}

/// Derivative-contragredient duality over every representation, order,
/// and side.
pub fn duality(spec: &UniverseSpec) -> CliResult<Outcome> {
    let reg = spec.registry()?;
    let reps = enumerate_reps(spec)?;
    let cases: Vec<(InducedRep, u32, Side)> = reps
        .into_iter()
        .flat_map(|rep| {
            let degree = rep.degree(&reg);
            (0..=degree).flat_map(move |i| {
                let rep = rep.clone();
                [Side::Left, Side::Right]
                    .into_iter()
                    .map(move |side| (rep.clone(), i, side))
            })
        })
        .collect();
    let results: Vec<Option<Value>> = cases
        .par_iter()
        .map(|(rep, i, side)| {
            if check_derivative_duality(rep, *i, *side, &reg) {
                None
            } else {
                Some(json!({ "rep": to_value(rep), "i": i, "side": to_value(side) }))
            }
        })
        .collect();
    Ok(merge(results))
}

fn datum_is_degenerate(m: &Multisegment) -> bool {
    m.segments().iter().any(|s| s.rel_len() >= 2)
}

/// Quotient obstruction for every segment and degenerate datum of
/// matching degree in the universe.
pub fn quotient(spec: &UniverseSpec) -> CliResult<Outcome> {
    let reg = spec.registry()?;
    let segments = enumerate_segments(spec)?;
    let universe = enumerate_multisegments(spec)?;
    let mut cases = Vec::new();
    for delta in &segments {
        let n = delta.abs_len(&reg) - 1;
        for m2 in &universe {
            if m2.degree(&reg) == n && datum_is_degenerate(m2) {
                cases.push((delta.clone(), m2.clone()));
            }
        }
    }
    let results: Vec<Option<Value>> = cases
        .par_iter()
        .map(|(delta, m2)| {
            let cert = quotient_obstruction(delta, m2, &reg, true).expect("degenerate datum");
            if cert.obstructed() {
                None
            } else {
                Some(json!({
                    "delta": to_value(delta),
                    "m2": to_value(m2),
                    "certificate": to_value(&cert),
                }))
            }
        })
        .collect();
    Ok(merge(results))
}

/// Ext-vanishing certificates for every generic pair of adjacent degrees.
pub fn ext(spec: &UniverseSpec) -> CliResult<Outcome> {
    let reg = spec.registry()?;
    let universe = enumerate_multisegments(spec)?;
    let generic: Vec<(Multisegment, u32)> = universe
        .into_iter()
        .filter(is_generic_ref)
        .map(|m| {
            let d = m.degree(&reg);
            (m, d)
        })
        .collect();
    let mut cases = Vec::new();
    for (m1, d1) in &generic {
        if *d1 == 0 {
            continue;
        }
        for (m2, d2) in &generic {
            if *d2 + 1 == *d1 {
                cases.push((m1.clone(), m2.clone()));
            }
        }
    }
    let results: Vec<Option<Value>> = cases
        .par_iter()
        .map(|(m1, m2)| {
            let cert = ext_vanishing_certificate(m1, m2, &reg, false).expect("generic pair");
            if cert.has_fail() {
                Some(json!({
                    "m1": to_value(m1),
                    "m2": to_value(m2),
                    "fail": to_value(&cert.first_fail()),
                }))
            } else {
                None
            }
        })
        .collect();
    Ok(merge(results))
}

/// Hecke-side checks: relations at m = 2, 3, the principal-series
/// multiplicity-one hypothesis on seeded regular characters, and the
/// central-quotient mechanism.
pub fn hecke_suite(seed: u64, trials: usize) -> CliResult<Outcome> {
    let mut results: Vec<Option<Value>> = Vec::new();

    for m in [1usize, 2, 3] {
        let report = hecke::verify_relations(m, trials, seed)?;
        results.push(if report.passed {
            None
        } else {
            Some(json!({ "check": "relations", "m": m, "report": to_value(&report) }))
        });
    }

    // multiplicity-one hypothesis: sign-isotypic dimension 1 at q = 4
    let q = Rat::from_integer(4);
    for m in [2usize, 3] {
        for chi in seeded_regular_characters(m, 20, seed) {
            let ps = hecke::PrincipalSeries::new(m, chi.clone(), q)?;
            if ps.sign_isotypic_dim() != 1 {
                results.push(Some(json!({
                    "check": "principal_series_sign_dim",
                    "m": m,
                    "chi": chi.iter().map(|c| to_value(&extbranch_core::rat::RatPair(*c))).collect::<Vec<_>>(),
                })));
            } else {
                results.push(None);
            }
        }
    }

    // central quotient mechanism at m = 2 and 3
    for (m, orbit) in [
        (2usize, vec![Rat::from_integer(1), Rat::from_integer(2)]),
        (
            3,
            vec![
                Rat::from_integer(1),
                Rat::from_integer(2),
                Rat::from_integer(5),
            ],
        ),
    ] {
        let report = hecke::central_quotient(m, orbit, q)?;
        let expected_dim: usize = (1..=m).product();
        let ok = report.dim == expected_dim
            && report.sign_dim == 1
            && report.unique_sign_quotient
            && !report.singular_q;
        results.push(if ok {
            None
        } else {
            Some(json!({ "check": "central_quotient", "m": m, "report": to_value(&report) }))
        });
    }

    Ok(merge(results))
}

/// Deterministic pairwise-distinct nonzero character tuples.
pub fn seeded_regular_characters(m: usize, count: usize, seed: u64) -> Vec<Vec<Rat>> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let chi: Vec<Rat> = (0..m)
            .map(|_| {
                let num = loop {
                    let n: i64 = rng.random_range(-9..=9);
                    if n != 0 {
                        break n;
                    }
                };
                let den: i64 = rng.random_range(1..=4);
                Rat::new(num, den)
            })
            .collect();
        let mut sorted = chi.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() == m {
            out.push(chi);
        }
    }
    out
}

/// Builds a universe spec from the inline harness flags.
pub fn inline_spec(
    window: (Rat, Rat),
    half_steps: bool,
    degree_sum: u32,
    max_segments: Option<u32>,
) -> UniverseSpec {
    let mut spec = UniverseSpec::on_window(window.0, window.1, degree_sum);
    spec.half_steps = half_steps;
    spec.max_segments = max_segments;
    spec.flavors = vec![Flavor::Zel, Flavor::St];
    spec
}

/// Runs `f` inside a rayon pool sized by `jobs` (or EXTBRANCH_JOBS, or
/// the rayon default).
pub fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    let jobs = jobs.or_else(|| {
        std::env::var("EXTBRANCH_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    match jobs {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
    }
}

