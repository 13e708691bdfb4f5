//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Every tolerance used is pinned below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use srg_krein::cli::run_from_args;
use srg_krein::feasibility::{
    check_lemma_cubic, check_theorem, corollary_bound, scaled_numerator, scaled_numerator_poly, BoundDirection,
    TheoremFamily,
};
use srg_krein::jordan_oracle::{
    build_graph, catalog, clamp_kronecker_exponent, idempotency_residual, idempotents_from_adjacency,
    kronecker_mixed, kronecker_power, mixed_principal_residual, oracle_krein, principal_submatrix_residual,
    verify_graph, VerifyOptions, DEFAULT_SIZE_CAP,
};
use srg_krein::{
    abs_power_coords, enumerate_valid, generalized_krein, multiplicities, power_coords, spectrum, validate_params,
    KreinEngine, ProductSpec, QuadNum, Sign, SrgParams,
};

/// Oracle residuals and float comparisons.
const TOL: f64 = 1e-9;
/// `abs_power_coords(0) = (1, 0, 0)`; pure floating evaluation of exact zeros.
const ABS_POWER_ZERO_TOL: f64 = 1e-12;
/// Criterion 1 wall-clock budget.
const CATALOG_BUDGET: Duration = Duration::from_secs(10);
/// Kronecker powers are built up to this order.
const SIZE_CAP: usize = DEFAULT_SIZE_CAP;
/// Scan bound for the identity property checks.
const SCAN_N_MAX: u64 = 50;
/// Pool the random tuples are drawn from.
const RANDOM_POOL_N_MAX: u64 = 100;
const RANDOM_TUPLES: usize = 100;
const SEED: u64 = 0x5eed_2024;
/// Corollary bound for (28,9;0,4).
const WITNESS_BOUND: f64 = 24.85;
const WITNESS_BOUND_TOL: f64 = 5e-3;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_tuples() -> Vec<SrgParams> {
    let mut pool = enumerate_valid(RANDOM_POOL_N_MAX);
    pool.shuffle(&mut StdRng::seed_from_u64(SEED));
    pool.truncate(RANDOM_TUPLES);
    pool
}

fn catalog_soundness() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for name in ["c5", "petersen", "lattice-3", "paley-13"] {
        let (adj, params) = build_graph(name).map_err(|e| e.to_string())?;
        let opts = VerifyOptions { degree_cap: 4, kronecker_k: None, tol: TOL, size_cap: SIZE_CAP };
        let report = verify_graph(name, &adj, &params, &opts).map_err(|e| e.to_string())?;
        for check in &report.checks {
            ensure(check.passed, || format!("{name}: {} residual {:e}", check.name, check.residual))?;
            if check.residual.is_finite() {
                worst = worst.max(check.residual);
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < CATALOG_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("4 graphs, max residual {worst:.1e}, {:.2}s", elapsed.as_secs_f64()))
}

fn exact_krein_reproduction() -> Outcome {
    let petersen = validate_params(10, 3, 0, 1).map_err(|e| e.to_string())?;
    let jj32 = generalized_krein(&petersen, &ProductSpec::JJ { j: 3, k: 2 }).map_err(|e| e.to_string())?;
    let expected = [QuadNum::ratio(2, 5, 0), QuadNum::ratio(2, 9, 0), QuadNum::ratio(1, 45, 0)];
    ensure(jj32.iter().eq(expected.iter()), || format!("JJ(3,2) = {jj32:?}"))?;
    let jj33 = generalized_krein(&petersen, &ProductSpec::JJ { j: 3, k: 3 }).map_err(|e| e.to_string())?;
    ensure(jj33.q1 == QuadNum::ratio(2, 225, 0), || format!("JJ(3,3).q1 = {}", jj33.q1))?;

    let (adj, params) = build_graph("petersen").map_err(|e| e.to_string())?;
    let e = idempotents_from_adjacency(&adj, &params);
    for (spec, exact) in [(ProductSpec::JJ { j: 3, k: 2 }, &jj32), (ProductSpec::JJ { j: 3, k: 3 }, &jj33)] {
        let dense = oracle_krein(&e, [1.0, 5.0, 4.0], &spec).map_err(|e| e.to_string())?;
        for (d, q) in dense.iter().zip(exact.iter()) {
            ensure((d - q.to_f64()).abs() < TOL, || format!("{spec}: oracle {d} vs {q}"))?;
        }
    }
    Ok("(2/5, 2/9, 1/45) and q1 = 2/225, oracle agrees".into())
}

fn theorem_witness() -> Outcome {
    let params = validate_params(28, 9, 0, 4).map_err(|e| e.to_string())?;
    let numerator = scaled_numerator(&params, TheoremFamily::E3Power, 3, 0);
    ensure(numerator == QuadNum::from(-16128), || format!("numerator {numerator}"))?;
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_from_args(["srg-krein", "check", "28", "9", "0", "4"], &mut out, &mut err);
    ensure(code == 1, || format!("check exited {code}"))?;
    let bound = corollary_bound(&params).ok_or("no corollary bound")?;
    ensure(bound.direction == BoundDirection::Upper && !bound.admits(28.0), || format!("{bound:?}"))?;
    ensure((bound.bound - WITNESS_BOUND).abs() < WITNESS_BOUND_TOL, || format!("bound {}", bound.bound))?;
    Ok(format!("scaled numerator -16128, check exits 1, n <= {:.2} < 28", bound.bound))
}

fn spectral_identities() -> Outcome {
    let tuples = enumerate_valid(SCAN_N_MAX);
    for params in &tuples {
        let engine = KreinEngine::new(*params);
        for j in 1..=3 {
            let q = engine.krein(&ProductSpec::JJ { j, k: 1 }).map_err(|e| e.to_string())?;
            for (i, value) in q.iter().enumerate() {
                let delta = QuadNum::from(i64::from(i + 1 == j));
                ensure(*value == delta, || format!("{params} q^{}_{{{j}{j}1}} = {value}", i + 1))?;
            }
        }
        for (u, v) in [(1, 2), (1, 3), (2, 3)] {
            let k = |spec| engine.krein(&spec).map_err(|e| e.to_string());
            let lhs = k(ProductSpec::PlusUV { u, v, k: 2 })?;
            let uu = k(ProductSpec::JJ { j: u, k: 2 })?;
            let uv = k(ProductSpec::UV { u, v, k: 1, l: 1 })?;
            let vv = k(ProductSpec::JJ { j: v, k: 2 })?;
            for i in 1..=3 {
                let g = |t: &srg_krein::KreinTriple| t.get(i).expect("index 1..3").clone();
                let rhs = g(&uu) + QuadNum::from(2) * g(&uv) + g(&vv);
                ensure(g(&lhs) == rhs, || format!("{params} (+{u}{v})2 row {i}"))?;
            }
        }
    }
    Ok(format!("delta and sum-square identities on {} tuples with n <= {SCAN_N_MAX}", tuples.len()))
}

fn scaled_numerator_leading_coefficient() -> Outcome {
    let mut tuples = random_tuples();
    tuples.push(validate_params(15, 8, 4, 4).map_err(|e| e.to_string())?);
    for params in &tuples {
        let spec = spectrum(params);
        // From k = 3 on, the last term (degree 1 in n) no longer reaches n^k.
        for k in (3..=9).step_by(2) {
            let poly = scaled_numerator_poly(params, TheoremFamily::E3Power, k, 0);
            let lead = spec.r.pow(k) - &spec.p;
            // Trailing zeros are trimmed, so r^k = p shows up as a shorter vector.
            let coeff = poly.get(k as usize).cloned().unwrap_or_else(|| QuadNum::zero(lead.d()));
            ensure(poly.len() <= k as usize + 1, || format!("{params} k={k}: degree {}", poly.len() - 1))?;
            ensure(coeff == lead, || format!("{params} k={k}: n^k coefficient {coeff}, expected {lead}"))?;
        }
    }
    Ok(format!("leading coefficient r^k - p for odd 3 <= k <= 9 on {} random tuples and (15,8;4,4)", tuples.len() - 1))
}

fn abs_power_contract() -> Outcome {
    let tuples = enumerate_valid(SCAN_N_MAX);
    for params in &tuples {
        let c = abs_power_coords(params, 0.0);
        ensure(
            (c.alpha - 1.0).abs() < ABS_POWER_ZERO_TOL
                && c.beta.abs() < ABS_POWER_ZERO_TOL
                && c.gamma.abs() < ABS_POWER_ZERO_TOL,
            || format!("{params}: {c:?}"),
        )?;
    }
    let mut worst = 0.0f64;
    for entry in catalog() {
        let n = entry.params.n() as f64;
        for x in [0u32, 2, 4, 6] {
            let c = abs_power_coords(&entry.params, x as f64);
            // {I, A, E1} -> {I, A, J - A - I} with E1 = (I + A + (J - A - I)) / n.
            let got = [c.alpha + c.gamma / n, c.beta + c.gamma / n, c.gamma / n];
            let exact = power_coords(&entry.params, x).to_f64();
            for (g, e) in got.iter().zip(&exact) {
                let err = (g - e).abs() / e.abs().max(1.0);
                worst = worst.max(err);
                ensure(err < TOL, || format!("{} x={x}: {got:?} vs {exact:?}", entry.name))?;
            }
        }
    }
    Ok(format!("x = 0 on {} tuples; even x <= 6 on the catalog, max rel. error {worst:.1e}", tuples.len()))
}

fn lemma_theorem_consistency() -> Outcome {
    let pairs = [
        ("lemma.q1_333", "thm.q1_33k.k=3"),
        ("lemma.q1_(+13)3", "thm.q1_(+13)k.k=3"),
        ("lemma.q1_3(+13)21", "thm.q1_3(+13)kl.k=2,l=1"),
        ("lemma.q1_3(+13)12", "thm.q1_3(+13)kl.k=1,l=2"),
        ("lemma.q1_2(+13)21", "thm.q1_2(+13)kl.k=2,l=1"),
    ];
    let tuples = random_tuples();
    for params in &tuples {
        let lemma = check_lemma_cubic(params);
        let theorem = check_theorem(params, 3, 3);
        for (l_id, t_id) in pairs {
            let find = |rs: &[srg_krein::feasibility::ConditionResult], id: &str| {
                rs.iter().find(|r| r.condition_id == id).map(|r| r.value.clone())
            };
            let (lv, tv) = (find(&lemma, l_id).ok_or(l_id)?, find(&theorem, t_id).ok_or(t_id)?);
            ensure(lv == tv, || format!("{params}: {l_id} = {lv} but {t_id} = {tv}"))?;
        }
    }
    Ok(format!("5 cubic values equal on {} random tuples", tuples.len()))
}

fn kronecker_at_desk_scale() -> Outcome {
    let mut matrices = 0;
    let mut worst = 0.0f64;
    for entry in catalog() {
        let adj = entry.build();
        let n = adj.order();
        let e = idempotents_from_adjacency(&adj, &entry.params);
        let k_top = clamp_kronecker_exponent(n, u32::MAX, SIZE_CAP);
        for (i, ei) in e.iter().enumerate() {
            for k in 2..=k_top {
                let big = kronecker_power(ei, k, SIZE_CAP).map_err(|e| e.to_string())?;
                let r = idempotency_residual(&big).max(principal_submatrix_residual(ei, k, SIZE_CAP).map_err(|e| e.to_string())?);
                worst = worst.max(r);
                matrices += 1;
                ensure(r < TOL, || format!("{} E{}^(x){k}: {r:e}", entry.name, i + 1))?;
            }
            for (j, ej) in e.iter().enumerate().skip(i + 1) {
                if k_top >= 2 {
                    let big = kronecker_mixed(ei, 1, ej, 1, SIZE_CAP).map_err(|e| e.to_string())?;
                    let r = idempotency_residual(&big)
                        .max(mixed_principal_residual(ei, 1, ej, 1, SIZE_CAP).map_err(|e| e.to_string())?);
                    worst = worst.max(r);
                    matrices += 1;
                    ensure(r < TOL, || format!("{} E{} (x) E{}: {r:e}", entry.name, i + 1, j + 1))?;
                }
            }
        }
        let (m_r, m_s) = multiplicities(&entry.params).as_integers().ok_or("non-integral multiplicity")?;
        let engine = KreinEngine::new(entry.params);
        for spec in ProductSpec::all_up_to(4) {
            let exact = engine.krein(&spec).map_err(|e| e.to_string())?;
            for q in exact.iter() {
                let in_range = q.sign() != Sign::Negative && (&QuadNum::one(q.d()) - q).sign() != Sign::Negative;
                ensure(in_range, || format!("{} {spec}: {q} outside [0, 1]", entry.name))?;
            }
            let dense = oracle_krein(&e, [1.0, m_r as f64, m_s as f64], &spec).map_err(|e| e.to_string())?;
            ensure(dense.iter().all(|&q| (-TOL..=1.0 + TOL).contains(&q)), || format!("{} {spec}: {dense:?}", entry.name))?;
        }
    }
    Ok(format!("{matrices} Kronecker powers up to order {SIZE_CAP}, max residual {worst:.1e}; all q in [0, 1]"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("catalog soundness", catalog_soundness),
        ("exact Krein reproduction", exact_krein_reproduction),
        ("theorem witness (28,9;0,4)", theorem_witness),
        ("q identities", spectral_identities),
        ("scaled-numerator identity", scaled_numerator_leading_coefficient),
        ("|A|^x contract", abs_power_contract),
        ("lemma/theorem consistency", lemma_theorem_consistency),
        ("Kronecker theorems at desk scale", kronecker_at_desk_scale),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} -- {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {}: {name} -- {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
