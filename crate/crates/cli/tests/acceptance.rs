//! Acceptance suite: twelve criteria, each with its tolerance and a runtime
//! limit. Prints one line per criterion and exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use gind_core::engine::{
    classical_norms, gind, gind_with, submult_defect, GindOptions, MatrixNorm, MatrixNormKind,
    Method,
};
use gind_core::lab::{
    algebra_norm_test, confirm_congruence, extremal_ratio_witness, gi_congruent, min_algebra_scale,
    recover_vector_norms, transformed_gind_check, unitary_invariance_probe,
};
use gind_core::norms::{parse_norm_spec, NormSpec};
use gind_core::numerics::{gaussian_matrix, gaussian_vector, random_unitary, Matrix, Seed, Vector};
use serde_json::Value;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn spec(text: &str) -> NormSpec {
    parse_norm_spec(text).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn classical_agreement() -> Outcome {
    let (l1, l2, linf) = (spec("l1"), spec("l2"), spec("linf"));
    let mut worst = 0.0f64;
    for k in 0..100 {
        let a = gaussian_matrix(3, false, &mut Seed(k).rng());
        let cl = classical_norms(&a).unwrap();
        let c = gind(&a, &l1, &l1, Seed(k)).unwrap();
        let s = gind(&a, &l2, &l2, Seed(k)).unwrap();
        worst = worst.max(rel(c.upper, cl.c)).max(rel(c.lower, cl.c));
        worst = worst.max(rel(s.upper, cl.s)).max(rel(s.lower, cl.s));

        let r = gaussian_matrix(3, true, &mut Seed(1000 + k).rng());
        let g = gind(&r, &linf, &linf, Seed(k)).unwrap();
        ensure!(g.method == Method::ExactSignEnum, "real linf used {}", g.method.name());
        let row = classical_norms(&r).unwrap().r;
        worst = worst.max(rel(g.upper, row)).max(rel(g.lower, row));
    }
    ensure!(worst <= 1e-8, "worst relative error {worst:e}");
    Ok(format!("worst relative error {worst:.1e}"))
}

fn max_norm_defect() -> Outcome {
    let j = Matrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
    let m = MatrixNormKind::M;
    ensure!(m.eval(&j).unwrap() == 1.0, "‖J‖m != 1");
    ensure!(m.eval(&j.mul(&j).unwrap()).unwrap() == 2.0, "‖J²‖m != 2");
    let dm = submult_defect(&MatrixNorm::Classical(m), 2, 100, Seed(0)).unwrap().value;
    ensure!(dm >= 2.0, "m defect {dm}");
    let ds = submult_defect(&MatrixNorm::Classical(MatrixNormKind::Sigma), 2, 1000, Seed(0))
        .unwrap()
        .value;
    ensure!(ds <= 1.0 + 1e-9, "sigma defect {ds}");
    Ok(format!("m defect {dm}, sigma defect {ds}"))
}

fn extremal_ratio() -> Outcome {
    let r = extremal_ratio_witness(&spec("linf"), &spec("l1"), &spec("l2"), &spec("l2"), 2, Seed(0))
        .unwrap();
    ensure!((r.predicted - 2.0).abs() <= 1e-6, "predicted {}", r.predicted);
    ensure!((r.achieved - 2.0).abs() <= 1e-6, "achieved {}", r.achieved);
    ensure!(r.passed, "sampled bound check failed: {:?}", r.checks);
    Ok(format!("predicted {} achieved {}", r.predicted, r.achieved))
}

fn algebra_characterization() -> Outcome {
    let (l1, linf) = (spec("l1"), spec("linf"));
    let v = algebra_norm_test(&linf, &l1, 2, Seed(0)).unwrap();
    ensure!(v.is_algebra && v.report.passed, "(linf, l1) failed: {:?}", v.report.checks);
    let v = algebra_norm_test(&l1, &linf, 2, Seed(0)).unwrap();
    ensure!(!v.is_algebra, "(l1, linf) reported as algebra norm");
    let b = v.counterexample.ok_or("no counterexample")?;
    let g1 = gind(&b, &l1, &linf, Seed(0)).unwrap();
    let g2 = gind(&b.mul(&b).unwrap(), &l1, &linf, Seed(0)).unwrap();
    ensure!((g1.lower - 1.0).abs() <= 1e-9 && (g1.upper - 1.0).abs() <= 1e-9, "‖B‖ = {g1:?}");
    ensure!((g2.lower - 2.0).abs() <= 1e-9 && (g2.upper - 2.0).abs() <= 1e-9, "‖B²‖ = {g2:?}");
    ensure!(v.report.passed, "counterexample report failed");
    Ok(format!("‖B‖ = {}, ‖B²‖ = {}", g1.upper, g2.upper))
}

fn minimal_scale() -> Outcome {
    let (l1, linf) = (spec("l1"), spec("linf"));
    for n in [2usize, 3] {
        let nf = n as f64;
        let s = min_algebra_scale(&l1, &linf, n, Seed(0)).unwrap();
        ensure!((s.lambda - nf).abs() <= 1e-8, "lambda {} at n={n}", s.lambda);
        ensure!(s.report.passed, "scale report failed at n={n}");
        let b = algebra_norm_test(&l1, &linf, n, Seed(0)).unwrap().counterexample.ok_or("no B")?;
        let mu = 0.99 * nf;
        let g1 = gind(&b, &l1, &linf, Seed(0)).unwrap().upper;
        let g2 = gind(&b.mul(&b).unwrap(), &l1, &linf, Seed(0)).unwrap().lower;
        ensure!(mu * g2 > (mu * g1).powi(2), "0.99n scale not violated at n={n}");
    }
    Ok("lambda = n for n = 2, 3; 0.99n violated".into())
}

fn congruence() -> Outcome {
    let (l1, l2) = (spec("l1"), spec("l2"));
    let (s3, s5) = (spec("scale:3*l2"), spec("scale:5*l2"));
    let v = gi_congruent((&l2, &l2), (&s3, &s5), 3, Seed(0)).unwrap();
    ensure!(v.congruent, "scaled pair not congruent");
    let gamma = v.gamma.ok_or("no gamma")?;
    ensure!((gamma - 0.6).abs() <= 1e-9, "gamma {gamma}");
    let r = confirm_congruence(&v, (&l2, &l2), (&s3, &s5), 3, 200, Seed(0)).unwrap();
    ensure!(r.passed && r.achieved <= 1e-6, "200-matrix confirmation: gap {}", r.achieved);

    let v = gi_congruent((&l1, &l2), (&l2, &l2), 2, Seed(0)).unwrap();
    ensure!(!v.congruent, "(l1,l2) vs (l2,l2) reported congruent");
    let (x, y) = v.separating_vectors.clone().ok_or("no separating vectors")?;
    let (qx, qy) = (
        l1.eval(&x).unwrap() / l2.eval(&x).unwrap(),
        l1.eval(&y).unwrap() / l2.eval(&y).unwrap(),
    );
    ensure!((qx - qy).abs() > 1e-6, "vectors do not separate: {qx} vs {qy}");
    let r = confirm_congruence(&v, (&l1, &l2), (&l2, &l2), 2, 200, Seed(0)).unwrap();
    ensure!(r.passed, "non-congruence report failed");
    Ok(format!("gamma {gamma}, separating ratios {qx:.4} vs {qy:.4}"))
}

fn unitary_invariance() -> Outcome {
    let r = unitary_invariance_probe(&spec("l2"), &spec("l2"), 3, 100, Seed(0)).unwrap();
    ensure!(r.achieved <= 1e-8, "l2 deviation {}", r.achieved);
    let s = unitary_invariance_probe(&spec("l1"), &spec("l1"), 2, 200, Seed(0)).unwrap();
    ensure!(s.achieved >= 0.4, "l1 deviation {}", s.achieved);
    Ok(format!("l2 deviation {:.1e}, l1 deviation {:.3}", r.achieved, s.achieved))
}

/// `U diag(s) V` with singular values in [1, 2].
fn well_conditioned(n: usize, seed: Seed) -> Matrix {
    let u = random_unitary(n, seed.derive(0)).unwrap();
    let v = random_unitary(n, seed.derive(1)).unwrap();
    let mut rng = seed.derive(2).rng();
    let s: Vec<f64> = (0..n)
        .map(|_| 1.0 + gaussian_vector(1, true, &mut rng).max_abs().min(1.0))
        .collect();
    u.mul(&Matrix::diag_real(&s)).unwrap().mul(&v).unwrap()
}

fn transformed_norms() -> Outcome {
    let bases = [("l1", "l1"), ("l1", "l2"), ("l1", "linf"), ("l2", "l2"), ("l1", "lp:3")];
    for k in 0..50u64 {
        let n = 2 + (k % 2) as usize;
        let seed = Seed(k);
        let a = gaussian_matrix(n, false, &mut seed.derive(3).rng());
        let km = well_conditioned(n, seed.derive(4));
        let lm = well_conditioned(n, seed.derive(5));
        let (d, c) = bases[k as usize % bases.len()];
        let r = transformed_gind_check(&a, &km, &lm, &spec(d), &spec(c), seed).unwrap();
        for key in ["left_method", "right_method"] {
            let method = r.inputs.get(key).and_then(Value::as_str).unwrap_or("");
            ensure!(method != Method::AscentSandwich.name(), "case {k}: {key} = {method}");
        }
        ensure!(r.passed, "case {k} ({d}, {c}) failed: {} vs {}", r.achieved, r.predicted);
    }
    Ok("50 cases on exact paths".into())
}

fn non_minimality() -> Outcome {
    let c = spec("scale:2*l2");
    let (l2, linf) = (spec("l2"), spec("linf"));
    let eye = Matrix::identity(2);
    let a = gind(&eye, &l2, &c, Seed(0)).unwrap();
    let b = gind(&eye, &linf, &c, Seed(0)).unwrap();
    ensure!((a.lower - 2.0).abs() <= 1e-8 && (a.upper - 2.0).abs() <= 1e-8, "‖I‖ = {a:?}");
    let want = 2.0 * 2f64.sqrt();
    ensure!(rel(b.lower, want) <= 1e-8 && rel(b.upper, want) <= 1e-8, "‖I‖ = {b:?}");
    for k in 0..100 {
        let m = gaussian_matrix(2, false, &mut Seed(k).rng());
        let small = gind(&m, &l2, &c, Seed(k)).unwrap().lower;
        let big = gind(&m, &linf, &c, Seed(k)).unwrap().upper;
        ensure!(small <= big * (1.0 + 1e-8), "matrix {k}: {small} > {big}");
    }
    Ok(format!("‖I‖ = {} and {}", a.upper, b.upper))
}

fn spectral_recovery() -> Outcome {
    let rec = recover_vector_norms(2, MatrixNorm::Classical(MatrixNormKind::S), 10_000, Seed(0))
        .unwrap();
    let mut rng = Seed(99).rng();
    let mut probes = Vec::new();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..50 {
        let x = gaussian_vector(2, false, &mut rng);
        let nu1 = rec.nu1_eval(&x).unwrap();
        let q = nu1 / x.euclidean();
        lo = lo.min(q);
        hi = hi.max(q);
        probes.push((x, nu1));
    }
    ensure!(hi / lo <= 1.02, "nu1/l2 spread {}", hi / lo);
    for k in 0..20 {
        let u = random_unitary(2, Seed(500 + k)).unwrap();
        let v = rec.reconstructed_norm(&u, &probes).unwrap();
        ensure!((v - 1.0).abs() <= 0.05, "unitary {k}: {v}");
    }
    ensure!(rec.report.passed, "recovery report failed");
    Ok(format!("nu1/l2 in [{lo:.4}, {hi:.4}]"))
}

fn grid_oracle() -> Outcome {
    let names = ["l1", "l2", "linf", "lp:3"];
    let points = 10_000;
    let mut worst = 0.0f64;
    for d in names {
        for c in names {
            let (ds, cs) = (spec(d), spec(c));
            for k in 0..20 {
                let a = gaussian_matrix(2, true, &mut Seed(k).rng());
                let g = gind_with(&a, &ds, &cs, Seed(k), GindOptions::real()).unwrap();
                let mut sweep = 0.0f64;
                for t in 0..points {
                    let th = std::f64::consts::TAU * t as f64 / points as f64;
                    let x = Vector::from_real(&[th.cos(), th.sin()]).unwrap();
                    let v = cs.eval(&a.mul_vec(&x).unwrap()).unwrap() / ds.eval(&x).unwrap();
                    sweep = sweep.max(v);
                }
                ensure!(sweep <= g.upper * (1.0 + 1e-10), "({d},{c}) #{k}: sweep above upper");
                // The generic upper bound is the l2 sandwich, so only the
                // attained value is held to the sweep.
                let err = rel(g.lower, sweep);
                worst = worst.max(err);
                ensure!(err <= 1e-3, "({d},{c}) #{k}: {} vs sweep {sweep}", g.lower);
            }
        }
    }
    Ok(format!("worst relative gap {worst:.1e}"))
}

fn verify_all_binary() -> Outcome {
    let once = || {
        Command::new(env!("CARGO_BIN_EXE_gind"))
            .args(["verify-all", "--n", "2", "--seed", "0", "--format", "json"])
            .output()
            .unwrap()
    };
    let (a, b) = (once(), once());
    ensure!(a.status.code() == Some(0), "exit {:?}", a.status.code());
    let parse = |bytes: &[u8]| -> Value {
        let mut v: Value = serde_json::from_slice(bytes).unwrap();
        v.as_object_mut().unwrap().remove("runtime_ms");
        v
    };
    let (ra, rb) = (parse(&a.stdout), parse(&b.stdout));
    ensure!(ra == rb, "reruns differ");
    let strip = |bytes: &[u8]| -> Vec<String> {
        String::from_utf8_lossy(bytes)
            .lines()
            .filter(|l| !l.contains("\"runtime_ms\""))
            .map(str::to_string)
            .collect()
    };
    ensure!(strip(&a.stdout) == strip(&b.stdout), "reruns not byte-identical");
    let suite = &ra["result"];
    let tags = suite["tags"].as_array().ok_or("no tags")?;
    ensure!(tags.len() >= 10, "{} tags", tags.len());
    ensure!(suite["passed"] == true, "suite not passed");
    let reports = suite["reports"].as_array().ok_or("no reports")?;
    ensure!(reports.iter().all(|r| r["passed"] == true), "a report failed");
    Ok(format!("{} tags, {} reports", tags.len(), reports.len()))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 12] = [
        ("classical norms agree with exact paths", 10, classical_agreement),
        ("max-norm submultiplicativity defect", 5, max_norm_defect),
        ("extremal ratio of four norms", 5, extremal_ratio),
        ("algebra norm characterization", 10, algebra_characterization),
        ("minimal algebra scale", 5, minimal_scale),
        ("congruence and separating vectors", 10, congruence),
        ("unitary invariance probe", 10, unitary_invariance),
        ("transformed norms move into the matrix", 10, transformed_norms),
        ("non-minimality of g-ind norms", 5, non_minimality),
        ("spectral-norm vector recovery", 60, spectral_recovery),
        ("grid oracle at n = 2", 30, grid_oracle),
        ("verify-all report", 120, verify_all_binary),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("took {:.1}s, limit {limit}s", elapsed.as_secs_f64()))
            }
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => {
                failed += 1;
                ("FAIL", e.clone())
            }
        };
        println!(
            "criterion {:>2}: {tag} [{:.2}s < {limit}s] {name}: {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
