//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria that cannot be met on the published data stay red and are listed in
//! `KNOWN_RED`; the test fails if the red set changes in either direction.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use theta_blocks::branching::*;
use theta_blocks::fock::*;
use theta_blocks::fusion::{level1_table, tensor_decompose, tensor_multiplicity, FusionTable};
use theta_blocks::rootsys::{dim_from_multiplicities, weyl_dim};
use theta_blocks::verlinde::{oxbury_check, theta_counts, twisted_total, Precision, SMatrix};
use theta_blocks::weights::{enumerate_level, sigma};
use theta_blocks::{Weight, YoungDiagram};

/// Criteria expected to print FAIL; the reasons are recorded in the decisions ledger.
const KNOWN_RED: &[u32] = &[4];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    ensure(start.elapsed() <= budget, || {
        format!("took {:.1?}, budget {budget:?}", start.elapsed())
    })
}

fn pow2(e: u32) -> BigUint {
    BigUint::from(1u32) << e
}

fn level_one_closed_forms() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for r in [2usize, 5] {
        let table = level1_table(r).map_err(|e| e.to_string())?;
        let omega1 = Weight::fundamental(r, 1).unwrap();
        let omega_r = Weight::fundamental(r, r).unwrap();
        for g in 2..=5u32 {
            let got = table.dim_genus_g(g, std::slice::from_ref(&omega1)).unwrap();
            let want = pow2(g - 1) * (pow2(g) - 1u32);
            ensure(got == want, || format!("r={r} g={g}: N(ω1) = {got}, expected {want}"))?;
            n += 1;
        }
        for g in 1..=3u32 {
            for k in 1..=3u32 {
                let got = table.dim_genus_g(g, &vec![omega_r.clone(); 2 * k as usize]).unwrap();
                let want = pow2(2 * g + k - 1);
                ensure(got == want, || format!("r={r} g={g} n={k}: {got}, expected {want}"))?;
                n += 1;
            }
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{n} closed forms at r=2,5"))
}

fn twisted_total_at_level_one() -> Outcome {
    let prec = Precision::default();
    for g in [2u32, 3] {
        let table = level1_table(2).unwrap();
        let exact = table.dim_genus_g(g, &[Weight::fundamental(2, 0).unwrap()]).unwrap()
            + table.dim_genus_g(g, &[Weight::fundamental(2, 1).unwrap()]).unwrap();
        let total = theta_counts(g).total;
        ensure(exact == total, || format!("g={g}: exact {exact} vs {total}"))?;
        let trig = twisted_total(g, 2, 1, &prec).map_err(|e| e.to_string())?;
        ensure(
            trig.value == BigInt::from(total.clone()) && trig.residual < 1e-6,
            || format!("g={g}: trig {} (residual {:e})", trig.value, trig.residual),
        )?;
    }
    Ok("g=2,3 totals 16, 64".into())
}

fn level_rank_untwisted_counts() -> Outcome {
    let start = Instant::now();
    let prec = Precision::default();
    let mut values = Vec::new();
    for (r, s) in [(2usize, 2usize), (2, 3)] {
        for g in [2u32, 3] {
            let rep = oxbury_check(g, r, s, &prec).map_err(|e| e.to_string())?;
            ensure(rep.equal && rep.lhs.residual < 1e-6 && rep.rhs.residual < 1e-6, || {
                format!("({r},{s}) g={g}: {} vs {}", rep.lhs.value, rep.rhs.value)
            })?;
            values.push(rep.lhs.value.to_string());
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(values.join(", "))
}

fn failure_example_dimensions() -> Outcome {
    let start = Instant::now();
    let cache = std::env::temp_dir().join(format!("theta-blocks-acceptance-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&cache);
    let mut got = Vec::new();
    let mut mismatches = Vec::new();
    for ex in failure_examples() {
        let rep = ranklevel_report(
            ex.params,
            &ex.lambdas,
            &ex.mus,
            &ex.big_lambdas,
            Admissibility::Lenient,
            Some(&cache),
        )
        .map_err(|e| e.to_string())?;
        let dims = (rep.dim_source.clone(), rep.dim_target.clone(), rep.dim_level1.clone());
        let (a, b, c) = ex.expected;
        if dims != (a.into(), b.into(), c.into()) {
            mismatches.push(format!(
                "{}: got ({}, {}, {}), expected ({a}, {b}, {c})",
                ex.name, dims.0, dims.1, dims.2
            ));
        }
        got.push(format!("({}, {}, {})", dims.0, dims.1, dims.2));
    }
    let _ = std::fs::remove_dir_all(&cache);
    within(start, Duration::from_secs(600))?;
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok(got.join(" "))
}

fn dual_oracle_equivalence() -> Outcome {
    let prec = Precision::default();
    let mut n = 0usize;
    for (r, max_level) in [(2usize, 4u32), (3, 3)] {
        for level in 1..=max_level {
            let table = FusionTable::new(r, level).unwrap();
            table.complete();
            let s = SMatrix::new(r, level, prec.bits).unwrap();
            let ws = table.weights().to_vec();
            for (i, a) in ws.iter().enumerate() {
                for (j, b) in ws.iter().enumerate() {
                    for (k, c) in ws.iter().enumerate() {
                        let exact = table.entry(i, j, k);
                        let trig = s
                            .dim(0, &[a.clone(), b.clone(), c.clone()], &prec)
                            .map_err(|e| e.to_string())?;
                        ensure(trig.value == BigInt::from(exact), || {
                            format!("r={r} l={level} {a} {b} {c}")
                        })?;
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{n} triples"))
}

/// Y ± one box, as diagrams with at most r rows.
fn neighbours(y: &YoungDiagram, r: usize) -> Vec<YoungDiagram> {
    let mut out = Vec::new();
    for i in 0..r {
        for delta in [-1i64, 1] {
            let mut rows: Vec<i64> = (0..r).map(|k| y.row(k) as i64).collect();
            rows[i] += delta;
            if rows[i] < 0 || rows.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            out.push(YoungDiagram::new(rows.into_iter().map(|x| x as usize).collect()).unwrap());
        }
    }
    out
}

fn littlewood_richardson_anchors() -> Outcome {
    for r in 2..=4usize {
        let omega_r = Weight::fundamental(r, r).unwrap();
        let mut anchors: Vec<Weight> = (0..r).map(|i| Weight::fundamental(r, i).unwrap()).collect();
        anchors.push(Weight::from_twice(vec![2; r]).unwrap());
        for y in &anchors {
            let m = tensor_multiplicity(y, &omega_r, &omega_r).unwrap();
            ensure(m == 1, || format!("r={r}: multiplicity of {y} is {m}"))?;
        }
        let found = tensor_decompose(&omega_r, &omega_r).unwrap();
        ensure(
            found.len() == anchors.len() && anchors.iter().all(|a| found.contains_key(a)),
            || format!("r={r}: ω_r⊗ω_r = {found:?}"),
        )?;
    }
    let mut sampled = 0;
    for (r, level) in [(2usize, 5u32), (3, 7)] {
        let table = FusionTable::new(r, level).unwrap();
        let omega1 = Weight::fundamental(r, 1).unwrap();
        let spins: Vec<Weight> = table.weights().iter().filter(|w| !w.is_so()).cloned().collect();
        let stride = (spins.len() / 30).max(1);
        for lambda in spins.iter().step_by(stride).take(30) {
            let y = YoungDiagram::from_weight(lambda);
            let mut allowed: Vec<Weight> = neighbours(&y, r)
                .iter()
                .map(|d| d.to_weight(r, true).unwrap())
                .collect();
            allowed.push(lambda.clone());
            for mu in table.weights() {
                let n = table.get(lambda, mu, &omega1).unwrap();
                ensure(n == u64::from(allowed.contains(mu)), || {
                    format!("({r},{level}) {lambda} {mu}: {n}")
                })?;
            }
            sampled += 1;
        }
    }
    Ok(format!("anchors r≤4, {sampled} sampled spin weights"))
}

fn clifford_goldens() -> Outcome {
    ensure(
        apply_lr(Side::R, 0, 1, 0, 2, 2, &column_state(&[1])) == column_state(&[0]),
        || "k=1".into(),
    )?;
    let k2 = column_state(&[0, 0])
        .scaled(&QSqrt2::from_int(2))
        .minus(&column_state(&[-1, 1]))
        .minus(&column_state(&[1, -1]));
    ensure(r_power(2, 2, 2) == k2, || "k=2".into())?;
    let mut k3 = column_state(&[0, 0, 0]).scaled(&QSqrt2::from_int(6));
    for cols in [[-1, 0, 1], [-1, 1, 0], [0, -1, 1], [0, 1, -1], [1, -1, 0], [1, 0, -1]] {
        k3.add_scaled(&column_state(&cols), &QSqrt2::from_int(-3));
    }
    ensure(r_power(3, 3, 2) == k3, || "6 and −3 pattern".into())?;
    for k in 1..=5usize {
        let v = r_power(k, k.max(2), 2);
        let lead = column_state(&vec![0; k]);
        let (wedge, _) = lead.terms().iter().next().unwrap();
        let factorial: i64 = (1..=k as i64).product();
        ensure(v.coefficient(wedge) == QSqrt2::from_int(factorial), || {
            format!("k!={factorial} at k={k}")
        })?;
    }
    let v = v_lower(&YoungDiagram::empty(), 2, 2).unwrap();
    ensure(
        apply_lr(Side::L, -1, 2, 0, 2, 2, &v) == prepend_zero_column(&v, 2),
        || "left action r=2".into(),
    )?;
    let v = v_lower(&YoungDiagram::empty(), 4, 1).unwrap();
    let out = apply_lr(Side::L, -1, 2, 0, 4, 1, &apply_lr(Side::L, -3, 4, 0, 4, 1, &v));
    ensure(out == prepend_zero_column(&v, 4), || "left action r=4".into())?;
    for y in YoungDiagram::in_box(2, 2) {
        let v = v_lower(&y, 2, 2).unwrap();
        for i in 1..=2 {
            let half = apply_bilinear(BilinearOp::b(i, 0, i, 0, 0), &v);
            ensure(half == v.scaled(&QSqrt2::frac(1, 2)), || {
                format!("eigenvalue 1/2 on v_{y}")
            })?;
        }
        let sign = if (4 - y.size() + 1) % 2 == 0 { 1 } else { -1 };
        let created = v
            .apply_gen(Gen::lower(1, 0, 0))
            .unwrap()
            .scaled(&QSqrt2::inv_sqrt2().scale_int(sign));
        ensure(apply_bilinear(BilinearOp::b(0, 0, 1, 0, 0), &v) == created, || {
            format!("φ_(1,0) creation on v_{y}")
        })?;
    }
    Ok("k=1, k=2, 6/−3, k! (k≤5), left action, 1/2 eigenvalue".into())
}

fn highest_weight_suite() -> Outcome {
    check_branching_vectors(2, 2);
    Ok(format!("{} diagrams at r=s=2", YoungDiagram::in_box(2, 2).len()))
}

fn strange_duality_failure() -> Outcome {
    let start = Instant::now();
    let m = ranklevel_matrix(&YoungDiagram::new(vec![1]).unwrap(), 2, 2).map_err(|e| e.to_string())?;
    ensure(m.det.is_zero(), || format!("det = {}", m.det))?;
    ensure(m.identities_hold(), || format!("identities {:?}", m.identities))?;
    within(start, Duration::from_secs(60))?;
    let e = &m.entries;
    Ok(format!(
        "det 0 for [[{}, {}], [{}, {}]]",
        e[0][0], e[0][1], e[1][0], e[1][1]
    ))
}

fn sewing_exponents() -> Outcome {
    let params = EmbeddingParams::new(2, 2).unwrap();
    let mut n = 0;
    for big in LevelOne::ALL {
        for t in branch_pairs(big, 2, 2).map_err(|e| e.to_string())? {
            let m = sewing_exponent(params, &t.lambda, &t.mu, big).map_err(|e| e.to_string())?;
            ensure(m == t.exponent, || format!("{} {} {big}", t.lambda, t.mu))?;
            n += 1;
        }
    }
    Ok(format!("{n} triples"))
}

fn run_property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn property_tests() -> Outcome {
    let weight_at_level = (2usize..=4, 1u32..=6, any::<prop::sample::Index>());
    run_property("sigma involution", 64, weight_at_level, |(r, level, i)| {
        let ws: Vec<Weight> = enumerate_level(r, level)
            .unwrap()
            .into_iter()
            .map(|lw| lw.weight)
            .collect();
        let lambda = i.get(&ws);
        let image = sigma(lambda, level).unwrap();
        prop_assert!(ws.contains(&image));
        prop_assert_eq!(&sigma(&image, level).unwrap(), lambda);
        Ok(())
    })?;
    let triple = (
        2usize..=3,
        1u32..=4,
        prop::array::uniform3(any::<prop::sample::Index>()),
    );
    run_property("sigma equivariance", 64, triple, |(r, level, idx)| {
        let table = FusionTable::new(r, level).unwrap();
        let [a, b, c] = idx.map(|i| i.get(table.weights()).clone());
        let (sa, sc) = (sigma(&a, level).unwrap(), sigma(&c, level).unwrap());
        prop_assert_eq!(table.get(&a, &b, &c).unwrap(), table.get(&sa, &b, &sc).unwrap());
        Ok(())
    })?;
    let five = (
        prop_oneof![Just((2usize, 3u32)), Just((3, 2))],
        prop::array::uniform5(any::<prop::sample::Index>()),
        Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(),
    );
    run_property("factorization order", 20, five, |((r, level), idx, perm)| {
        let table = FusionTable::new(r, level).unwrap();
        let points: Vec<Weight> = idx.iter().map(|i| i.get(table.weights()).clone()).collect();
        let shuffled: Vec<Weight> = perm.iter().map(|&i| points[i].clone()).collect();
        prop_assert_eq!(table.dim_genus0(&points).unwrap(), table.dim_genus0(&shuffled).unwrap());
        Ok(())
    })?;
    run_property("bracket fidelity", 64, (op(), op(), state()), |(x, y, v)| {
        prop_assert!(bracket_holds(x, y, &v), "{} {} on {}", x, y, v);
        Ok(())
    })?;
    let dominant = (2usize..=4).prop_flat_map(|r| prop::collection::vec(0i64..=2, r));
    run_property("Freudenthal vs Weyl", 40, dominant, |a| {
        let lambda = Weight::from_omega(&a).unwrap();
        prop_assert_eq!(BigUint::from(dim_from_multiplicities(&lambda)), weyl_dim(&lambda));
        Ok(())
    })?;
    Ok("σ involution, σ equivariance, factorization order, bracket, Freudenthal/Weyl".into())
}

fn evaluate(f: fn() -> Outcome) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(outcome) => outcome,
        Err(payload) => Err(payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into())),
    }
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "level-one closed forms", level_one_closed_forms),
        (2, "twisted total at level one", twisted_total_at_level_one),
        (3, "level-rank untwisted counts", level_rank_untwisted_counts),
        (4, "failure example dimensions", failure_example_dimensions),
        (5, "fusion vs trigonometric oracle", dual_oracle_equivalence),
        (6, "Littlewood-Richardson anchors", littlewood_richardson_anchors),
        (7, "Clifford goldens", clifford_goldens),
        (8, "highest-weight vectors", highest_weight_suite),
        (9, "strange-duality matrix singular", strange_duality_failure),
        (10, "sewing exponents", sewing_exponents),
        (11, "property tests", property_tests),
    ];
    // Written to the stdout handle directly so the lines survive output capture.
    let mut out = std::io::stdout().lock();
    let mut red = Vec::new();
    for (id, name, f) in criteria {
        let start = Instant::now();
        let outcome = evaluate(f);
        let secs = start.elapsed().as_secs_f64();
        let line = match &outcome {
            Ok(detail) => format!("PASS {id:>2} {name} ({secs:.2}s): {detail}"),
            Err(detail) => {
                red.push(id);
                let known = if KNOWN_RED.contains(&id) { " [known]" } else { "" };
                format!("FAIL {id:>2} {name} ({secs:.2}s){known}: {detail}")
            }
        };
        writeln!(out, "{line}").unwrap();
    }
    assert_eq!(red, KNOWN_RED, "red criteria changed");
}
