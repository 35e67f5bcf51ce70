//! Subcommand implementations.

use anyhow::{bail, Context, Result};
use num_bigint::BigUint;
use serde_json::{json, Value};
use theta_blocks::branching::{
    branch_pairs, failure_examples, ranklevel_report, sewing_exponent, Admissibility, EmbeddingParams, LevelOne,
};
use theta_blocks::fock::{self, evaluate_sum, parse_slot, BlockConfig, Form, Point, Sector};
use theta_blocks::fusion::{level1_table, tensor_decompose, FusionTable};
use theta_blocks::verlinde::{self, oxbury_check, Precision, SMatrix};
use theta_blocks::{Weight, YoungDiagram};

use crate::report::Report;
use crate::{Global, Method};

/// The exact and trigonometric engines returned different values.
#[derive(Debug)]
pub struct Disagreement(pub String);

impl std::fmt::Display for Disagreement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "engine disagreement: {}", self.0)
    }
}

impl std::error::Error for Disagreement {}

fn precision(g: &Global) -> Precision {
    Precision {
        bits: g.precision,
        ..Precision::default()
    }
}

fn parse_list<T: std::str::FromStr<Err = theta_blocks::Error>>(text: &str) -> Result<Vec<T>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().with_context(|| format!("parsing {s:?}")))
        .collect()
}

fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

fn table(g: &Global, rank: usize, level: u32) -> Result<FusionTable> {
    Ok(FusionTable::cached(&g.cache_dir, rank, level)?)
}

/// Runs the requested engines and checks agreement when both are asked for.
fn with_method(
    report: Report,
    method: Method,
    exact: impl FnOnce() -> Result<BigUint>,
    trig: impl FnOnce() -> Result<verlinde::TrigValue>,
) -> Result<Report> {
    let engine = match method {
        Method::Exact => "fusion",
        Method::Trig => "trig",
        Method::Both => "fusion+trig",
    };
    let mut report = Report {
        engine: engine.into(),
        ..report
    };
    let exact = matches!(method, Method::Exact | Method::Both).then(exact).transpose()?;
    let trig = matches!(method, Method::Trig | Method::Both).then(trig).transpose()?;
    if let Some(e) = &exact {
        report = report.output("value", e.to_string());
    }
    if let Some(t) = &trig {
        report = report
            .output(
                if exact.is_some() { "trig_value" } else { "value" },
                t.value.to_string(),
            )
            .output("trig_residual", format!("{:.3e}", t.residual));
    }
    if let (Some(e), Some(t)) = (&exact, &trig) {
        if t.value != num_bigint::BigInt::from(e.clone()) {
            bail!(Disagreement(format!("fusion {e} vs trig {}", t.value)));
        }
    }
    Ok(report)
}

pub fn fusion(g: &Global, rank: usize, level: u32, weights: &str, method: Method) -> Result<Report> {
    let ws: Vec<Weight> = parse_list(weights)?;
    if ws.len() != 3 {
        bail!(theta_blocks::Error::Parse(format!(
            "fusion needs three weights, got {}",
            ws.len()
        )));
    }
    let report = Report::new("fusion", "")
        .input("rank", rank)
        .input("level", level)
        .input("weights", joined(&ws));
    with_method(
        report,
        method,
        || Ok(BigUint::from(table(g, rank, level)?.get(&ws[0], &ws[1], &ws[2])?)),
        || Ok(SMatrix::new(rank, level, g.precision)?.dim(0, &ws, &precision(g))?),
    )
}

pub fn dim(g: &Global, genus: u32, rank: usize, level: u32, weights: &str, method: Method) -> Result<Report> {
    let ws: Vec<Weight> = parse_list(weights)?;
    let report = Report::new("dim", "")
        .input("genus", genus)
        .input("rank", rank)
        .input("level", level)
        .input("weights", joined(&ws));
    with_method(
        report,
        method,
        || Ok(table(g, rank, level)?.dim_genus_g(genus, &ws)?),
        || Ok(SMatrix::new(rank, level, g.precision)?.dim(genus, &ws, &precision(g))?),
    )
}

pub fn branch(r: usize, s: usize, lambda: &str) -> Result<Report> {
    let big: LevelOne = lambda.parse()?;
    let pairs = branch_pairs(big, r, s)?;
    let rows: Vec<Value> = pairs
        .iter()
        .map(|t| {
            json!({
                "Y": t.diagram.to_string(),
                "lambda": t.lambda.to_string(),
                "mu": t.mu.to_string(),
                "rule": t.rule.to_string(),
                "m": t.exponent,
            })
        })
        .collect();
    Ok(Report::new("branch", "branching")
        .input("r", r)
        .input("s", s)
        .input("Lambda", big)
        .output("count", pairs.len())
        .output("pairs", rows))
}

pub fn sewing(r: usize, s: usize, weights: &str, lambda: &str) -> Result<Report> {
    let big: LevelOne = lambda.parse()?;
    let ws: Vec<Weight> = parse_list(weights)?;
    let [lam, mu] = ws.as_slice() else {
        bail!(theta_blocks::Error::Parse("sewing needs two weights λ;μ".into()));
    };
    let m = sewing_exponent(EmbeddingParams::new(r, s)?, lam, mu, big)?;
    Ok(Report::new("sewing", "branching")
        .input("r", r)
        .input("s", s)
        .input("weights", joined(&ws))
        .input("Lambda", big)
        .output("m", m))
}

pub fn oxbury(g: &Global, genus: u32, r: usize, s: usize) -> Result<Report> {
    let rep = oxbury_check(genus, r, s, &precision(g))?;
    if !rep.equal {
        bail!(Disagreement(format!("{} vs {}", rep.lhs.value, rep.rhs.value)));
    }
    Ok(Report::new("oxbury", "trig")
        .input("genus", genus)
        .input("r", r)
        .input("s", s)
        .output("lhs", rep.lhs.value.to_string())
        .output("rhs", rep.rhs.value.to_string())
        .output("lhs_residual", format!("{:.3e}", rep.lhs.residual))
        .output("rhs_residual", format!("{:.3e}", rep.rhs.residual)))
}

pub fn ranklevel(
    g: &Global,
    example: Option<u8>,
    r: Option<usize>,
    s: Option<usize>,
    weights: Option<&str>,
    mus: Option<&str>,
    lambda: Option<&str>,
) -> Result<Report> {
    let (params, lambdas, mu_list, bigs, label) = match (example, r, s, weights, mus, lambda) {
        (Some(n), None, None, None, None, None) => {
            let ex = failure_examples().swap_remove(usize::from(n) - 1);
            (ex.params, ex.lambdas, ex.mus, ex.big_lambdas, format!("example {n}"))
        }
        (None, Some(r), Some(s), Some(w), Some(m), Some(l)) => {
            let bigs: Vec<LevelOne> = parse_list(l)?;
            (
                EmbeddingParams::new(r, s)?,
                parse_list(w)?,
                parse_list(m)?,
                bigs,
                "custom".to_string(),
            )
        }
        _ => bail!(theta_blocks::Error::Parse(
            "give either --example or all of --r, --s, --weights, --mus, --Lambda".into()
        )),
    };
    let rep = ranklevel_report(
        params,
        &lambdas,
        &mu_list,
        &bigs,
        Admissibility::Lenient,
        Some(&g.cache_dir),
    )?;
    let points: Vec<Value> = rep
        .certificates
        .iter()
        .map(|c| {
            json!({
                "point": c.point,
                "lambda": c.lambda.to_string(),
                "mu": c.mu.to_string(),
                "Lambda": c.big_lambda.to_string(),
                "rule": c.pair.as_ref().map_or("none".to_string(), |p| p.rule.to_string()),
            })
        })
        .collect();
    Ok(Report::new("ranklevel", "fusion")
        .input("case", label)
        .input("r", params.r)
        .input("s", params.s)
        .output(
            "dims",
            vec![
                rep.dim_source.to_string(),
                rep.dim_target.to_string(),
                rep.dim_level1.to_string(),
            ],
        )
        .output("admissible", rep.admissible())
        .output("points", points))
}

pub fn ranklevel_matrix(r: usize, s: usize, diagram: &str) -> Result<Report> {
    let y: YoungDiagram = diagram.parse()?;
    let m = fock::ranklevel_matrix(&y, r, s)?;
    let e = &m.entries;
    Ok(Report::new("ranklevel-matrix", "fock")
        .input("r", r)
        .input("s", s)
        .input("diagram", &y)
        .output("a11", e[0][0].to_string())
        .output("a12", e[0][1].to_string())
        .output("a21", e[1][0].to_string())
        .output("a22", e[1][1].to_string())
        .output("det", m.det.to_string())
        .output("identities_hold", m.identities_hold()))
}

fn parse_points(text: &str) -> Result<[Point; 3]> {
    let points: Vec<Point> = text
        .split(',')
        .map(|p| match p.trim() {
            "0" => Ok(Point::Zero),
            "1" => Ok(Point::One),
            "inf" | "∞" => Ok(Point::Infinity),
            other => Err(theta_blocks::Error::Parse(format!("unknown point {other:?}"))),
        })
        .collect::<std::result::Result<_, _>>()?;
    points
        .try_into()
        .map_err(|_| theta_blocks::Error::Parse("expected three points".into()).into())
}

pub fn clifford_eval(r: usize, s: usize, form: &str, slots: [&str; 3], points: &str) -> Result<Report> {
    let form: Form = form.parse()?;
    let config = BlockConfig {
        points: parse_points(points)?,
        ..BlockConfig::default()
    };
    let sectors = [Sector::Ns, Sector::Ramond, Sector::RamondOpp];
    let parsed: Vec<_> = slots
        .iter()
        .zip(sectors)
        .map(|(text, sector)| parse_slot(text, sector, r, s))
        .collect::<std::result::Result<_, _>>()?;
    let value = evaluate_sum([&parsed[0], &parsed[1], &parsed[2]], form, &config)?;
    Ok(Report::new("clifford-eval", "fock")
        .input("r", r)
        .input("s", s)
        .input("form", form)
        .input("slot1", slots[0])
        .input("slot2", slots[1])
        .input("slot3", slots[2])
        .input("points", points)
        .output("value", value.to_string()))
}

pub fn theta_counts(genus: u32) -> Report {
    let t = verlinde::theta_counts(genus);
    Report::new("theta-counts", "closed-form").input("genus", genus).output(
        "counts",
        vec![t.total.to_string(), t.even.to_string(), t.odd.to_string()],
    )
}

struct Check {
    name: String,
    expected: String,
    got: String,
    known: bool,
}

fn check(name: impl Into<String>, expected: impl ToString, got: impl ToString) -> Check {
    Check {
        name: name.into(),
        expected: expected.to_string(),
        got: got.to_string(),
        known: false,
    }
}

pub fn examples_check(g: &Global) -> Result<Report> {
    let prec = precision(g);
    let mut checks = Vec::new();
    for r in [2usize, 5] {
        let table = level1_table(r)?;
        let omega1 = Weight::fundamental(r, 1)?;
        let omega_r = Weight::fundamental(r, r)?;
        for genus in 2..=5u32 {
            let expected = (BigUint::from(1u32) << (genus - 1)) * ((BigUint::from(1u32) << genus) - 1u32);
            checks.push(check(
                format!("level one r={r} g={genus} (w1)"),
                expected,
                table.dim_genus_g(genus, std::slice::from_ref(&omega1))?,
            ));
        }
        for genus in 1..=3u32 {
            for n in 1..=3u32 {
                let ws = vec![omega_r.clone(); 2 * n as usize];
                let expected = BigUint::from(1u32) << (2 * genus + n - 1);
                checks.push(check(
                    format!("level one r={r} g={genus} (wr^{})", 2 * n),
                    expected,
                    table.dim_genus_g(genus, &ws)?,
                ));
            }
        }
    }
    for genus in [2u32, 3] {
        let t = verlinde::theta_counts(genus);
        let total = verlinde::twisted_total(genus, 2, 1, &prec)?;
        checks.push(check(format!("twisted total g={genus}"), &t.total, total.value));
    }
    let t = verlinde::theta_counts(2);
    checks.push(check(
        "theta counts g=2",
        "(16, 10, 6)",
        format!("({}, {}, {})", t.total, t.even, t.odd),
    ));
    for (r, s) in [(2usize, 2usize), (2, 3)] {
        for genus in [2u32, 3] {
            let rep = oxbury_check(genus, r, s, &prec)?;
            checks.push(check(
                format!("level-rank N0 ({r},{s}) g={genus}"),
                &rep.lhs.value,
                &rep.rhs.value,
            ));
        }
    }
    for (i, ex) in failure_examples().iter().enumerate() {
        let rep = ranklevel_report(
            ex.params,
            &ex.lambdas,
            &ex.mus,
            &ex.big_lambdas,
            Admissibility::Lenient,
            Some(&g.cache_dir),
        )?;
        let (a, b, c) = ex.expected;
        let mut item = check(
            format!("example {}", i + 1),
            format!("({a}, {b}, {c})"),
            format!("({}, {}, {})", rep.dim_source, rep.dim_target, rep.dim_level1),
        );
        item.known = i == 2;
        checks.push(item);
    }
    for r in 2..=4usize {
        let omega_r = Weight::fundamental(r, r)?;
        let mut anchors: Vec<Weight> = (0..r)
            .map(|i| Weight::fundamental(r, i))
            .collect::<std::result::Result<_, _>>()?;
        anchors.push(Weight::from_twice(vec![2; r])?);
        anchors.sort();
        let found = tensor_decompose(&omega_r, &omega_r)?;
        let got: Vec<Weight> = found.iter().filter(|(_, &m)| m == 1).map(|(w, _)| w.clone()).collect();
        let exact = found.values().all(|&m| m == 1) && got == anchors;
        checks.push(check(
            format!("spin square r={r}"),
            joined(&anchors),
            if exact { joined(&got) } else { format!("{found:?}") },
        ));
    }
    let m = fock::ranklevel_matrix(&YoungDiagram::new(vec![1])?, 2, 2)?;
    checks.push(check("rank-level matrix det (2,2) [1]", 0, &m.det));

    let mut failed = 0u64;
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            let status = match (c.expected == c.got, c.known) {
                (true, _) => "PASS",
                (false, true) => "KNOWN",
                (false, false) => {
                    failed += 1;
                    "FAIL"
                }
            };
            json!({"check": c.name, "expected": c.expected, "got": c.got, "status": status})
        })
        .collect();
    Ok(Report::new("examples-check", "fusion+trig+fock")
        .output("checks", rows)
        .output("failed", failed))
}
