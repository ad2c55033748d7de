//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run alone with `cargo test -p dirmix --test acceptance`.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::{numeric_catalog, q, spec};
use dirmix::characterize::{default_candidates, hausdorff_valid, identify, recover_x_moments};
use dirmix::exact::{int, ratio};
use dirmix::mixture::{
    affine_moments, s_moments, theorem2_target, verify_against_moments, verify_lemma1, verify_lemma2, verify_target,
    verify_theorem1, verify_theorem2, DirichletParams,
};
use dirmix::montecarlo::{simulate, SimReport, GOLDEN_SEED};
use dirmix::{DistributionSpec, MomentSequence, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || {
        format!("took {:.2} s, limit {limit_s} s", elapsed.as_secs_f64())
    })
}

fn c1_lemma1() -> Outcome {
    let t = Instant::now();
    for n in 2..=6 {
        let res = verify_lemma1(n, 12);
        ensure(res.passed(), || format!("n={n}: {:?}", res.counterexample))?;
    }
    within(t.elapsed(), 2.0)?;
    Ok("n = 2..6, r = 1..12 exact".into())
}

fn random_params(rng: &mut ChaCha8Rng) -> DirichletParams {
    loop {
        let n = rng.gen_range(1..=5);
        let a: Vec<Rational> = (0..n).map(|_| q(rng.gen_range(1..=24), rng.gen_range(1..=8))).collect();
        if a.iter().sum::<Rational>() <= int(10) {
            return DirichletParams::new(a).unwrap();
        }
    }
}

fn c2_lemma2() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(GOLDEN_SEED);
    for i in 0..20 {
        let params = random_params(&mut rng);
        let res = verify_lemma2(&params, 10);
        ensure(res.passed(), || {
            format!("vector {i} {:?}: {:?}", res.params, res.counterexample)
        })?;
    }
    for n in 2..=6 {
        let halves = DirichletParams::new(vec![ratio(1, 2); n]).unwrap();
        let l2 = verify_lemma2(&halves, 12);
        let l1 = verify_lemma1(n, 12);
        ensure(l2.passed() && l1.passed(), || format!("halves n={n}"))?;
    }
    within(t.elapsed(), 2.0)?;
    Ok("20 random vectors (n <= 5, sum <= 10) at r <= 10, plus a = (1/2, ..., 1/2)".into())
}

fn c3_theorem1() -> Outcome {
    let t = Instant::now();
    for n in 2..=6 {
        let res = verify_theorem1(n, 12);
        ensure(res.passed(), || format!("n={n}: {:?}", res.counterexample))?;
    }
    let x = spec("arcsin:1");
    let s2 = s_moments(&x, 2, 2);
    let s3 = s_moments(&x, 3, 4);
    ensure(s2.moments[2] == ratio(1, 3), || format!("n=2 m2 = {}", s2.moments[2]))?;
    ensure(s3.moments[2] == ratio(1, 4) && s3.moments[4] == ratio(1, 8), || {
        format!("n=3 m2 = {}, m4 = {}", s3.moments[2], s3.moments[4])
    })?;
    within(t.elapsed(), 5.0)?;
    Ok("n = 2..6, r <= 12 exact; anchors 1/3, 1/4, 1/8".into())
}

const ALPHAS: [(i64, i64); 5] = [(1, 6), (1, 4), (1, 3), (1, 2), (3, 4)];

fn c4_theorem2_forward() -> Outcome {
    for n in 2..=4 {
        for &(p, d) in &ALPHAS {
            let alpha = ratio(p, d);
            let res = verify_theorem2(n, &alpha, 12).map_err(|e| e.to_string())?;
            ensure(res.passed(), || format!("n={n} α={alpha}: {:?}", res.counterexample))?;
        }
        let half = s_moments(&spec("genarcsin:1/2,1"), n, 12);
        let arcsin = s_moments(&spec("arcsin:1"), n, 12);
        let t1 = spec(&format!("psc:{}/2,1", n - 1)).moments(12);
        ensure(half == arcsin && half == t1, || {
            format!("α = 1/2 column differs at n={n}")
        })?;
    }
    Ok("n in {2,3,4} x α in {1/6,1/4,1/3,1/2,3/4}, r <= 12 exact".into())
}

fn c5_theorem2_inverse() -> Outcome {
    let cands = default_candidates();
    for n in 2..=4 {
        for &(p, d) in &ALPHAS {
            let alpha = ratio(p, d);
            let x = DistributionSpec::gen_arcsin(alpha.clone(), int(1)).unwrap();
            let rec = recover_x_moments(&theorem2_target(n, &alpha).moments(12), n).map_err(|e| e.to_string())?;
            ensure(rec == x.moments(12), || format!("recovery n={n} α={alpha}"))?;
            let unit = rec.to_unit_interval().expect("non-degenerate");
            let h = hausdorff_valid(&unit, 12).map_err(|e| e.to_string())?;
            ensure(h.valid && h.order == 12, || format!("Hausdorff n={n} α={alpha}: {h:?}"))?;
            let report = identify(&rec, &cands, 12);
            ensure(report.matches.contains(&x), || {
                format!("identify n={n} α={alpha}: {:?}", report.matches)
            })?;
        }
    }
    let mut catalog = numeric_catalog();
    catalog.extend([spec("point:0"), spec("point:-3/4")]);
    for d in &catalog {
        for n in 2..=4 {
            let back = recover_x_moments(&s_moments(d, n, 12), n).map_err(|e| e.to_string())?;
            ensure(back == d.moments(12), || format!("round trip {d} n={n}"))?;
        }
    }
    Ok(format!(
        "15 (n, α) recoveries + Hausdorff + identify; round trip on {} catalog laws, n = 2..4",
        catalog.len()
    ))
}

fn c6_equivariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(GOLDEN_SEED ^ 6);
    let laws = [
        "arcsin:1",
        "genarcsin:1/3,2",
        "psc:3/2,1",
        "beta:2,5,-1,3",
        "uniform:0,1",
    ];
    for i in 0..10 {
        let mut sigma = q(rng.gen_range(1..=15), rng.gen_range(1..=7));
        if rng.gen_bool(0.5) {
            sigma = -sigma;
        }
        let xi = q(rng.gen_range(-15..=15), rng.gen_range(1..=7));
        let d = spec(laws[i % laws.len()]);
        for n in 2..=3 {
            let lhs = affine_moments(&s_moments(&d, n, 12), &sigma, &xi).map_err(|e| e.to_string())?;
            let image = d.affine_image(&sigma, &xi).map_err(|e| e.to_string())?;
            ensure(lhs == s_moments(&image, n, 12), || {
                format!("{d} σ={sigma} ξ={xi} n={n}")
            })?;
        }
    }
    Ok("10 random (σ, ξ) pairs, n in {2,3}, r <= 12 exact".into())
}

fn timed_sim(d: &DistributionSpec, n: usize) -> Result<(SimReport, Duration), String> {
    let t = Instant::now();
    let r = simulate(d, n, 1_000_000, GOLDEN_SEED).map_err(|e| e.to_string())?;
    Ok((r, t.elapsed()))
}

fn c7_monte_carlo() -> Outcome {
    let mut parts = Vec::new();
    for (label, d, n) in [("a", "arcsin:1", 2), ("b", "arcsin:1", 3), ("c", "genarcsin:1/4,1", 2)] {
        let d = spec(d);
        let (rep, elapsed) = timed_sim(&d, n)?;
        within(elapsed, 30.0)?;
        let ks = rep.ks_statistic.ok_or("no KS target")?;
        ensure(ks <= 1.628e-3, || format!("({label}) KS {ks:.3e}"))?;
        ensure(rep.pass, || format!("({label}) failed checks: {:?}", rep.checks))?;
        if label == "b" {
            let (m2, m4) = (rep.moment(2).unwrap(), rep.moment(4).unwrap());
            ensure(m2.exact == ratio(1, 4) && m4.exact == ratio(1, 8), || {
                "exact m2/m4".into()
            })?;
            for m in [m2, m4] {
                let err = (m.empirical - m.exact_decimal).abs();
                ensure(err <= 5.0 * m.standard_error, || {
                    format!("(b) m{} off by {err:.2e}", m.order)
                })?;
            }
        }
        let (again, _) = timed_sim(&d, n)?;
        let same = serde_json::to_string(&rep).unwrap() == serde_json::to_string(&again).unwrap();
        ensure(same, || format!("({label}) repeat run differs"))?;
        parts.push(format!("({label}) KS {ks:.2e} in {:.1} s", elapsed.as_secs_f64()));
    }
    Ok(format!(
        "seed {GOLDEN_SEED:#x}, N = 1e6: {}; repeats bit-identical",
        parts.join(", ")
    ))
}

fn cli_exit(args: &[&str]) -> Result<i32, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_dirmix"))
        .args(args)
        .env_remove("DIRMIX_FORMAT")
        .output()
        .map_err(|e| e.to_string())?;
    o.status.code().ok_or_else(|| "killed".into())
}

fn c8_negative_controls() -> Outcome {
    let x = spec("arcsin:1");
    for n in 2..=6usize {
        let wrong = DistributionSpec::PowerSemicircle {
            lambda: ratio(n as i64, 2),
            a: int(1),
        };
        let res = verify_target("theorem1", &x, n, &wrong, 12);
        let order = res.counterexample.as_ref().map(|c| c.order);
        ensure(!res.passed() && order.is_some_and(|o| o <= 4), || {
            format!("λ + 1/2, n={n}: {order:?}")
        })?;
    }

    let mut m = spec("psc:1,1").moments(12).moments;
    m[2] += ratio(1, 1000);
    let perturbed = MomentSequence::new((int(-1), int(1)), m).unwrap();
    let res = verify_against_moments("theorem1", &x, 3, &perturbed);
    let order = res.counterexample.as_ref().map(|c| c.order);
    ensure(!res.passed() && order.is_some_and(|o| o <= 4), || {
        format!("perturbed m2: {order:?}")
    })?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("perturbed.json");
    std::fs::write(&path, serde_json::to_string(&perturbed).unwrap()).map_err(|e| e.to_string())?;
    let p = path.display().to_string();
    let codes = [
        cli_exit(&["verify", "theorem1", "--n", "3", "--target", "psc:3/2,1"])?,
        cli_exit(&["verify", "theorem1", "--n", "3", "--target-moments", &p])?,
        cli_exit(&["recover", "--n", "3", "--moments-file", &p, "--identify"])?,
    ];
    ensure(codes == [1, 1, 1], || format!("CLI exit codes {codes:?}"))?;

    let bad = MomentSequence::new((int(0), int(1)), vec![int(1), ratio(1, 2), ratio(3, 5)]).unwrap();
    let h = hausdorff_valid(&bad, 2).map_err(|e| e.to_string())?;
    ensure(!h.valid, || "(1, 1/2, 3/5) accepted".into())?;
    Ok(format!(
        "wrong λ and perturbed m2 fail at order <= 4, CLI exits {codes:?}, (1, 1/2, 3/5) rejected at {:?}",
        h.witness.unwrap()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("C1", "lemma 1 exact", c1_lemma1),
        ("C2", "lemma 2 exact", c2_lemma2),
        ("C3", "theorem 1 exact", c3_theorem1),
        ("C4", "theorem 2 forward", c4_theorem2_forward),
        ("C5", "theorem 2 inverse", c5_theorem2_inverse),
        ("C6", "affine equivariance", c6_equivariance),
        ("C7", "Monte Carlo concordance", c7_monte_carlo),
        ("C8", "negative controls", c8_negative_controls),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name} ({secs:.2} s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {name} ({secs:.2} s): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
