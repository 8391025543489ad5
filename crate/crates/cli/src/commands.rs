use std::path::Path;

use gind_core::engine::{
    gind_with, ratio, submult_defect, GindOptions, MatrixNorm, MatrixNormKind,
};
use gind_core::lab::{
    algebra_norm_test_with, confirm_congruence, extremal_ratio_witness, gi_congruent,
    min_algebra_scale, recover_vector_norms, transformed_gind_check, unitary_invariance_probe,
    Witness, WitnessReport,
};
use gind_core::norms::{load_matrix, parse_norm_spec, NormSpec};
use gind_core::numerics::{Matrix, Seed, Vector};
use serde_json::{json, Value};

use crate::report::Report;
use crate::{verify, CliError, Command, Common};

type Outcome = Result<(Report, bool), CliError>;

pub(crate) fn spec(text: &str) -> Result<NormSpec, CliError> {
    Ok(parse_norm_spec(text)?)
}

fn matrix(path: &Path) -> Result<Matrix, CliError> {
    Ok(load_matrix(path)?)
}

/// Inline JSON when the argument starts with `[`, else a file path.
fn vector(arg: &str) -> Result<Vector, CliError> {
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("vector: {e}")))
}

fn dims(n: usize, specs: &[&NormSpec]) -> Result<(), CliError> {
    if n == 0 {
        return Err(gind_core::Error::EmptyDimension.into());
    }
    for s in specs {
        s.check_dim(n)?;
    }
    Ok(())
}

fn matrix_norm(
    name: Option<&str>,
    from: Option<&str>,
    to: Option<&str>,
    flag: &str,
) -> Result<MatrixNorm, CliError> {
    match (name, from, to) {
        (Some(name), None, None) => MatrixNormKind::parse(name)
            .map(MatrixNorm::Classical)
            .ok_or_else(|| CliError::Input(format!("--{flag} must be one of C, R, S, sigma, m"))),
        (None, Some(f), Some(t)) => Ok(MatrixNorm::Gind {
            d: spec(f)?,
            c: spec(t)?,
        }),
        _ => Err(CliError::Input(format!("give either --{flag} or both --from and --to"))),
    }
}

/// Moves the lab report's witnesses to the top level and applies a
/// tolerance override.
fn attach(report: &mut Report, lab: WitnessReport, common: &Common) -> (Value, bool) {
    let mut lab = match common.tol {
        Some(t) => lab.with_tolerance(t),
        None => lab,
    };
    report.tolerance = Some(lab.tolerance);
    let passed = lab.passed;
    report.witnesses.append(&mut lab.witnesses);
    let mut value = serde_json::to_value(&lab).expect("report serializes");
    if let Value::Object(map) = &mut value {
        map.remove("witnesses");
    }
    (value, passed)
}

pub(crate) fn dispatch(command: &Command) -> Outcome {
    let common = command.common();
    let seed = Seed(common.seed);
    match command {
        Command::Vecnorm { norm, vector: v, .. } => {
            let s = spec(norm)?;
            let x = vector(v)?;
            let value = s.eval(&x)?;
            let mut r = Report::new("vecnorm", common.seed).input("norm", norm.as_str());
            r.inputs.insert("vector".into(), serde_json::to_value(&x).expect("serializes"));
            r.result = json!({ "value": value });
            Ok((r, true))
        }
        Command::Dual { norm, vector: v, .. } => {
            let s = spec(norm)?;
            let y = vector(v)?;
            let dual = s.dual_eval(&y)?;
            let dv = s.dual_vector(&y)?;
            let mut r = Report::new("dual", common.seed).input("norm", norm.as_str());
            r.inputs.insert("vector".into(), serde_json::to_value(&y).expect("serializes"));
            r.result = json!({ "dual_norm": dual, "norm": dv.attained });
            r.witnesses.push(Witness::vector("y0", dv.y0));
            Ok((r, true))
        }
        Command::Gind {
            matrix: path,
            pair,
            real,
            generic,
            ..
        } => {
            let a = matrix(path)?;
            let (d, c) = (spec(&pair.from)?, spec(&pair.to)?);
            let options = GindOptions {
                real_restriction: *real,
                force_generic: *generic,
            };
            let g = gind_with(&a, &d, &c, seed, options)?;
            let mut r = Report::new("gind", common.seed)
                .input("matrix", path.display().to_string())
                .input("from", pair.from.as_str())
                .input("to", pair.to.as_str())
                .input("real", *real)
                .input("generic", *generic);
            r.result = json!({ "lower": g.lower, "upper": g.upper });
            r.method = Some(g.method.name().into());
            r.witnesses.push(Witness::vector("x", g.witness).with_norm(&d)?);
            Ok((r, true))
        }
        Command::Ratio { pair, n, .. } => {
            let (i, j) = (spec(&pair.from)?, spec(&pair.to)?);
            dims(*n, &[&i, &j])?;
            let g = ratio(&i, &j, *n, seed)?;
            let mut r = Report::new("ratio", common.seed)
                .input("from", pair.from.as_str())
                .input("to", pair.to.as_str())
                .input("n", *n);
            r.result = json!({ "lower": g.lower, "upper": g.upper });
            r.method = Some(g.method.name().into());
            r.witnesses.push(Witness::vector("x", g.witness).with_norm(&i)?);
            Ok((r, true))
        }
        Command::AlgebraCheck { pair, n, trials, .. } => {
            let (d, c) = (spec(&pair.from)?, spec(&pair.to)?);
            dims(*n, &[&d, &c])?;
            let v = algebra_norm_test_with(&d, &c, *n, seed, *trials)?;
            let mut r = Report::new("algebra-check", common.seed)
                .input("from", pair.from.as_str())
                .input("to", pair.to.as_str())
                .input("n", *n)
                .input("trials", *trials);
            let (lab, passed) = attach(&mut r, v.report, common);
            r.result = json!({ "verdict": v.is_algebra, "check": lab });
            Ok((r, passed))
        }
        Command::MinScale { pair, n, .. } => {
            let (d, c) = (spec(&pair.from)?, spec(&pair.to)?);
            dims(*n, &[&d, &c])?;
            let s = min_algebra_scale(&d, &c, *n, seed)?;
            let mut r = Report::new("min-scale", common.seed)
                .input("from", pair.from.as_str())
                .input("to", pair.to.as_str())
                .input("n", *n);
            let (lab, passed) = attach(&mut r, s.report, common);
            r.result = json!({ "value": s.lambda, "check": lab });
            Ok((r, passed))
        }
        Command::Congruent {
            pair,
            from2,
            to2,
            n,
            trials,
            ..
        } => {
            let (d1, c1) = (spec(&pair.from)?, spec(&pair.to)?);
            let (d2, c2) = (spec(from2)?, spec(to2)?);
            dims(*n, &[&d1, &c1, &d2, &c2])?;
            let v = gi_congruent((&d1, &c1), (&d2, &c2), *n, seed)?;
            let check = confirm_congruence(&v, (&d1, &c1), (&d2, &c2), *n, *trials, seed)?;
            let mut r = Report::new("congruent", common.seed)
                .input("from", pair.from.as_str())
                .input("to", pair.to.as_str())
                .input("from2", from2.as_str())
                .input("to2", to2.as_str())
                .input("n", *n)
                .input("trials", *trials);
            let (lab, passed) = attach(&mut r, check, common);
            r.result = json!({
                "verdict": serde_json::to_value(&v).expect("serializes"),
                "check": lab,
            });
            Ok((r, passed))
        }
        Command::Extremal {
            pair, from2, to2, n, ..
        } => {
            let (n1, n2) = (spec(&pair.from)?, spec(&pair.to)?);
            let (n3, n4) = (spec(from2)?, spec(to2)?);
            dims(*n, &[&n1, &n2, &n3, &n4])?;
            let lab = extremal_ratio_witness(&n1, &n2, &n3, &n4, *n, seed)?;
            let mut r = Report::new("extremal", common.seed)
                .input("from", pair.from.as_str())
                .input("to", pair.to.as_str())
                .input("from2", from2.as_str())
                .input("to2", to2.as_str())
                .input("n", *n);
            let (lab, passed) = attach(&mut r, lab, common);
            r.result = json!({ "check": lab });
            Ok((r, passed))
        }
        Command::UnitaryProbe { pair, n, trials, .. } => {
            let (d, c) = (spec(&pair.from)?, spec(&pair.to)?);
            dims(*n, &[&d, &c])?;
            let lab = unitary_invariance_probe(&d, &c, *n, *trials, seed)?;
            let mut r = Report::new("unitary-probe", common.seed)
                .input("from", pair.from.as_str())
                .input("to", pair.to.as_str())
                .input("n", *n)
                .input("trials", *trials);
            let (lab, passed) = attach(&mut r, lab, common);
            r.result = json!({ "check": lab });
            Ok((r, passed))
        }
        Command::TransformedCheck {
            matrix: path, k, l, pair, ..
        } => {
            let a = matrix(path)?;
            let (km, lm) = (matrix(k)?, matrix(l)?);
            let (d, c) = (spec(&pair.from)?, spec(&pair.to)?);
            let lab = transformed_gind_check(&a, &km, &lm, &d, &c, seed)?;
            let mut r = Report::new("transformed-check", common.seed)
                .input("matrix", path.display().to_string())
                .input("k", k.display().to_string())
                .input("l", l.display().to_string())
                .input("from", pair.from.as_str())
                .input("to", pair.to.as_str());
            let (lab, passed) = attach(&mut r, lab, common);
            r.result = json!({ "check": lab });
            Ok((r, passed))
        }
        Command::Recover {
            oracle,
            from,
            to,
            n,
            budget,
            ..
        } => {
            let norm = matrix_norm(oracle.as_deref(), from.as_deref(), to.as_deref(), "oracle")?;
            if let MatrixNorm::Gind { d, c } = &norm {
                dims(*n, &[d, c])?;
            }
            let rec = recover_vector_norms(*n, norm, *budget, seed)?;
            let mut r = Report::new("recover", common.seed)
                .input("oracle", rec.oracle.label())
                .input("n", *n)
                .input("budget", *budget);
            let mut samples = Vec::new();
            for x in [Vector::ones(*n), Vector::basis(*n, 0)?] {
                let nu1 = rec.nu1_eval(&x)?;
                let nu2 = rec.nu2_eval(&x)?;
                samples.push(json!({ "x": x, "nu1": nu1, "nu2": nu2 }));
            }
            let lambda = rec.lambda;
            let (lab, passed) = attach(&mut r, rec.report, common);
            r.result = json!({ "lambda": lambda, "samples": samples, "check": lab });
            Ok((r, passed))
        }
        Command::Defect {
            norm,
            from,
            to,
            n,
            trials,
            ..
        } => {
            let target = matrix_norm(norm.as_deref(), from.as_deref(), to.as_deref(), "norm")?;
            if let MatrixNorm::Gind { d, c } = &target {
                dims(*n, &[d, c])?;
            }
            let est = submult_defect(&target, *n, *trials, seed)?;
            let mut r = Report::new("defect", common.seed)
                .input("norm", target.label())
                .input("n", *n)
                .input("trials", *trials);
            r.result = json!({ "value": est.value });
            let (a, b) = est.witness_pair;
            r.witnesses.push(Witness::matrix("A", a));
            r.witnesses.push(Witness::matrix("B", b));
            Ok((r, true))
        }
        Command::VerifyAll { n, .. } => {
            let suite = verify::verify_all(*n, seed, common.tol)?;
            let mut r = Report::new("verify-all", common.seed).input("n", *n);
            if let Some(t) = common.tol {
                r.tolerance = Some(t);
            }
            let passed = suite.passed;
            r.result = serde_json::to_value(&suite).expect("serializes");
            Ok((r, passed))
        }
    }
}
