//! Command dispatch.

use std::time::Instant;

use extbranch_core::{
    bz_filtration, ep_pairing, ext_vanishing_certificate, hecke, quotient_obstruction, recombine_with_trace,
    verify_truncation_lemma, DerivativeRequest, InducedRep, Multisegment, Segment,
};
use serde_json::{json, Value};

use crate::args::{Cli, Command, EnumerateMode, HeckeCommand, OutputFormat, SuiteMode};
use crate::io::{
    self, emit, load_json, load_registry, parse_int_list, parse_rat_list, parse_window, to_value,
    CliError, CliResult,
};
use crate::report::{digest_value, InputDigest, RunReport};
use crate::suite;
use crate::{EXIT_COUNTEREXAMPLE, EXIT_OK};

pub fn dispatch(cli: &Cli) -> CliResult<u8> {
    let as_text = cli.format == OutputFormat::Text;
    let reg = load_registry(cli.lines.as_deref())?;

    match &cli.command {
        Command::Derive { rep, i, side } => {
            let rep: InducedRep = load_json(rep)?;
            let request = DerivativeRequest::new(rep, *i, (*side).into(), &reg)?;
            let sum = request.evaluate(&reg);
            let summary = format!(
                "{} term(s) of degree {}",
                sum.len(),
                request.rep.degree(&reg) - request.order
            );
            emit(json!({ "terms": to_value(&sum.terms()) }), &summary, as_text);
            Ok(EXIT_OK)
        }
        Command::Recombine { multisegment } => {
            let m: Multisegment = load_json(multisegment)?;
            let (canonical, steps) = recombine_with_trace(&m);
            let summary = format!("canonical {canonical} after {} step(s)", steps.len());
            emit(
                json!({ "canonical": to_value(&canonical), "steps": to_value(&steps) }),
                &summary,
                as_text,
            );
            Ok(EXIT_OK)
        }
        Command::TruncationLemma {
            multisegment,
            i,
            all_i,
        } => {
            let m: Multisegment = load_json(multisegment)?;
            let amounts: Vec<u32> = if *all_i {
                (0..=m.degree(&reg)).collect()
            } else {
                vec![i.ok_or_else(|| {
                    CliError::Schema("either --i <n> or --all-i is required".into())
                })?]
            };
            let mut holds = true;
            let mut witness = Value::Null;
            let mut per_i = Vec::new();
            for amount in amounts {
                let report = verify_truncation_lemma(&m, amount, &reg)?;
                if !report.holds && holds {
                    holds = false;
                    witness = json!({ "i": amount, "truncation": to_value(&report.witness) });
                }
                per_i.push(json!({ "i": amount, "holds": report.holds, "checked": report.checked }));
            }
            let summary = if holds {
                "lemma holds".to_string()
            } else {
                format!("lemma FAILS: {witness}")
            };
            emit(
                json!({ "lemma_holds": holds, "witness": witness, "amounts": per_i }),
                &summary,
                as_text,
            );
            Ok(if holds { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
        Command::Restrict { rep, side } => {
            let rep: InducedRep = load_json(rep)?;
            let layers = bz_filtration(&rep, (*side).into(), &reg)?;
            let summary = format!("{} layer(s)", layers.len());
            emit(json!({ "layers": to_value(&layers) }), &summary, as_text);
            Ok(EXIT_OK)
        }
        Command::QuotientCheck { delta, m2, plain } => {
            let delta: Segment = load_json(delta)?;
            let m2: Multisegment = load_json(m2)?;
            let cert = quotient_obstruction(&delta, &m2, &reg, !plain)?;
            let obstructed = cert.obstructed();
            let summary = if obstructed {
                "OBSTRUCTED (no quotient)".to_string()
            } else {
                "compatible on both sides (not obstructed)".to_string()
            };
            emit(
                json!({ "obstructed": obstructed, "certificate": to_value(&cert) }),
                &summary,
                as_text,
            );
            if *plain || obstructed {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_COUNTEREXAMPLE)
            }
        }
        Command::ExtCertify {
            m1,
            m2,
            emit_tree,
            harness,
        } => {
            let m1: Multisegment = load_json(m1)?;
            let m2: Multisegment = load_json(m2)?;
            let cert = ext_vanishing_certificate(&m1, &m2, &reg, *harness)?;
            let failed = cert.has_fail();
            if let Some(path) = emit_tree {
                let tree = json!({ "schema": io::SCHEMA_VERSION, "certificate": to_value(&cert) });
                std::fs::write(path, serde_json::to_string_pretty(&tree).expect("serializable"))
                    .map_err(|e| CliError::Io(path.clone(), e))?;
            }
            let summary = if failed {
                "FAIL node present".to_string()
            } else {
                format!("certified, depth {}", cert.depth())
            };
            emit(
                json!({ "certified": !failed, "depth": cert.depth(), "certificate": to_value(&cert) }),
                &summary,
                as_text,
            );
            Ok(if failed { EXIT_COUNTEREXAMPLE } else { EXIT_OK })
        }
        Command::Ep { rep1, rep2 } => {
            let rep1: InducedRep = load_json(rep1)?;
            let rep2: InducedRep = load_json(rep2)?;
            let ep = ep_pairing(&rep1, &rep2)?;
            emit(json!({ "ep": ep }), &format!("EP = {ep}"), as_text);
            Ok(EXIT_OK)
        }
        Command::Hecke(cmd) => hecke_dispatch(cmd, cli, as_text),
        Command::Enumerate {
            degree_sum,
            window,
            half_steps,
            max_segments,
            mode,
        } => {
            let window = parse_window(window)?;
            let spec = suite::inline_spec(window, *half_steps, *degree_sum, *max_segments);
            match mode {
                EnumerateMode::List => {
                    let all = extbranch_core::enumerate_multisegments(&spec)?;
                    let summary = format!("{} multisegment(s)", all.len());
                    emit(
                        json!({ "count": all.len(), "multisegments": to_value(&all) }),
                        &summary,
                        as_text,
                    );
                    Ok(EXIT_OK)
                }
                EnumerateMode::Ext => run_report(cli, "enumerate", "ext", &spec, as_text, || {
                    suite::with_pool(cli.jobs, || suite::ext(&spec))
                }),
                EnumerateMode::Quotient => {
                    run_report(cli, "enumerate", "quotient", &spec, as_text, || {
                        suite::with_pool(cli.jobs, || suite::quotient(&spec))
                    })
                }
            }
        }
        Command::Suite {
            mode,
            spec,
            degree_sum,
            window,
            half_steps,
            max_segments,
            trials,
        } => {
            let spec = match spec {
                Some(path) => load_json::<extbranch_core::UniverseSpec>(path)?,
                None => {
                    let window = parse_window(window)?;
                    suite::inline_spec(window, *half_steps, *degree_sum, *max_segments)
                }
            };
            let (mode_name, run): (&str, Box<dyn FnOnce() -> CliResult<suite::Outcome>>) =
                match mode {
                    SuiteMode::TruncationLemma => (
                        "truncation-lemma",
                        Box::new(|| suite::with_pool(cli.jobs, || suite::truncation_lemma(&spec))),
                    ),
                    SuiteMode::Ext => (
                        "ext",
                        Box::new(|| suite::with_pool(cli.jobs, || suite::ext(&spec))),
                    ),
                    SuiteMode::Quotient => (
                        "quotient",
                        Box::new(|| suite::with_pool(cli.jobs, || suite::quotient(&spec))),
                    ),
                    SuiteMode::Duality => (
                        "duality",
                        Box::new(|| suite::with_pool(cli.jobs, || suite::duality(&spec))),
                    ),
                    SuiteMode::Hecke => (
                        "hecke",
                        Box::new(|| suite::hecke_suite(cli.seed, *trials)),
                    ),
                };
            let spec_clone = spec.clone();
            run_report(cli, "suite", mode_name, &spec_clone, as_text, run)
        }
    }
}

fn run_report(
    cli: &Cli,
    command: &str,
    mode: &str,
    spec: &extbranch_core::UniverseSpec,
    as_text: bool,
    run: impl FnOnce() -> CliResult<suite::Outcome>,
) -> CliResult<u8> {
    let start = Instant::now();
    let outcome = run()?;
    let report = RunReport {
        command: command.to_string(),
        mode: mode.to_string(),
        inputs: vec![InputDigest {
            name: "universe".into(),
            digest: digest_value(&to_value(spec)),
        }],
        seed: cli.seed,
        jobs: cli.jobs.unwrap_or(0),
        counts: outcome.counts,
        first_counterexample: outcome.first_counterexample,
        wall_ms: start.elapsed().as_millis(),
    };
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    };
    let summary = report.summary();
    emit(to_value(&report), &summary, as_text);
    Ok(code)
}

fn hecke_dispatch(cmd: &HeckeCommand, cli: &Cli, as_text: bool) -> CliResult<u8> {
    match cmd {
        HeckeCommand::Verify { m, trials } => {
            let report = hecke::verify_relations(*m, *trials, cli.seed)?;
            let summary = format!(
                "{} ({} checks)",
                if report.passed { "PASS" } else { "FAIL" },
                report.checks.len()
            );
            emit(to_value(&report), &summary, as_text);
            Ok(if report.passed {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            })
        }
        HeckeCommand::SignModule { m, action, lambda } => {
            let sigma = hecke::SignModule::new(*m)?;
            let lambda = parse_int_list(lambda)?;
            if lambda.len() != *m {
                return Err(CliError::Schema(format!(
                    "lambda must have {m} coordinates"
                )));
            }
            let v = hecke::SigmaVector::basis(*m, lambda);
            let result = apply_action(&sigma, action, &v)?;
            let coords: Vec<Value> = result
                .coords()
                .iter()
                .map(|(l, c)| json!({ "lambda": l, "coeff": to_value(c), "display": c.to_string() }))
                .collect();
            let summary = format!("{} basis term(s)", coords.len());
            emit(json!({ "action": action, "result": coords }), &summary, as_text);
            Ok(EXIT_OK)
        }
        HeckeCommand::PrincipalSeries { m, chi, q } => {
            let chi = parse_rat_list(chi)?;
            let q = extbranch_core::rat::parse_rat(q)
                .ok_or_else(|| CliError::Schema(format!("bad rational '{q}'")))?;
            let ps = hecke::PrincipalSeries::new(*m, chi, q)?;
            let sign_dim = ps.sign_isotypic_dim();
            let summary = format!("dim {} sign-isotypic {}", ps.dim(), sign_dim);
            emit(
                json!({
                    "dim": ps.dim(),
                    "sign_isotypic_dim": sign_dim,
                    "theta_matrices": matrices_json(&(0..*m).map(|i| ps.theta_matrix(i).clone()).collect::<Vec<_>>()),
                    "t_matrices": matrices_json(&(0..m.saturating_sub(1)).map(|k| ps.t_matrix(k).clone()).collect::<Vec<_>>()),
                }),
                &summary,
                as_text,
            );
            Ok(EXIT_OK)
        }
        HeckeCommand::CentralQuotient { m, orbit, q } => {
            let orbit = parse_rat_list(orbit)?;
            let q = extbranch_core::rat::parse_rat(q)
                .ok_or_else(|| CliError::Schema(format!("bad rational '{q}'")))?;
            let report = hecke::central_quotient(*m, orbit, q)?;
            let summary = format!(
                "dim {} sign {} unique-sign-quotient {}",
                report.dim, report.sign_dim, report.unique_sign_quotient
            );
            emit(to_value(&report), &summary, as_text);
            Ok(EXIT_OK)
        }
    }
}

fn matrices_json(mats: &[hecke::RatMatrix]) -> Value {
    let render = |m: &hecke::RatMatrix| -> Value {
        let rows: Vec<Vec<String>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
            .collect();
        to_value(&rows)
    };
    Value::Array(mats.iter().map(render).collect())
}

fn apply_action(
    sigma: &hecke::SignModule,
    action: &str,
    v: &hecke::SigmaVector,
) -> CliResult<hecke::SigmaVector> {
    let action = action.trim();
    let bad = || CliError::Schema(format!("unknown generator '{action}' (use theta<k>, theta<k>^-1, or T<k>)"));
    if let Some(rest) = action.strip_prefix("theta") {
        let (idx, power) = match rest.split_once("^") {
            Some((idx, "-1")) => (idx, -1),
            Some(_) => return Err(bad()),
            None => (rest, 1),
        };
        let idx: usize = idx.parse().map_err(|_| bad())?;
        if idx == 0 || idx > sigma.rank() {
            return Err(bad());
        }
        Ok(sigma.act_theta(idx - 1, power, v))
    } else if let Some(idx) = action.strip_prefix("T") {
        let idx: usize = idx.parse().map_err(|_| bad())?;
        if idx == 0 || idx >= sigma.rank() {
            return Err(bad());
        }
        Ok(sigma.act_t(idx - 1, v))
    } else {
        Err(bad())
    }
}
