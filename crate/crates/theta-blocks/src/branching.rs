//! The conformal embedding so(2r+1) ⊕ so(2s+1) ⊂ so(2d+1): trace anomalies,
//! branching pairs, sewing exponents and rank-level dimension reports.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fusion::{level1_table, FusionTable};
use crate::rootsys::{rho_twice, Weight};
use crate::weights::{check_level, sigma, YoungDiagram};

type Q = Ratio<i64>;

/// Parameters of the embedding so(2r+1) ⊕ so(2s+1) ⊂ so(2d+1), d = 2rs + r + s.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingParams {
    pub r: usize,
    pub s: usize,
}

impl EmbeddingParams {
    pub fn new(r: usize, s: usize) -> Result<Self> {
        if r < 2 || s < 2 {
            return Err(Error::Rank(r.min(s)));
        }
        Ok(Self { r, s })
    }

    pub fn d(&self) -> usize {
        2 * self.r * self.s + self.r + self.s
    }

    /// Levels of the two summands: (2s+1, 2r+1).
    pub fn levels(&self) -> (u32, u32) {
        (2 * self.s as u32 + 1, 2 * self.r as u32 + 1)
    }

    pub fn target_level(&self) -> u32 {
        1
    }
}

fn dim_so(r: usize) -> i64 {
    (r * (2 * r + 1)) as i64
}

fn dual_coxeter(r: usize) -> i64 {
    2 * r as i64 - 1
}

/// Conformality with the given Dynkin indices of the two summands.
pub fn is_conformal_with(r: usize, s: usize, indices: (i64, i64)) -> bool {
    let d = 2 * r * s + r + s;
    let part = |rank: usize, k: i64| {
        let denom = dual_coxeter(rank) + k;
        if denom == 0 {
            None
        } else {
            Some(Q::new(k * dim_so(rank), denom))
        }
    };
    match (part(r, indices.0), part(s, indices.1)) {
        (Some(a), Some(b)) => a + b == Q::new(dim_so(d), dual_coxeter(d) + 1),
        _ => false,
    }
}

/// Conformality of so(2r+1) ⊕ so(2s+1) ⊂ so(2d+1) at indices (2s+1, 2r+1).
pub fn is_conformal(r: usize, s: usize) -> bool {
    is_conformal_with(r, s, (2 * s as i64 + 1, 2 * r as i64 + 1))
}

/// Δ_λ = (λ, λ+2ρ) / (2(g∨ + ℓ)).
pub fn trace_anomaly(lambda: &Weight, level: u32) -> Result<Q> {
    check_level(lambda, level)?;
    let r = lambda.rank();
    let rho = rho_twice(r);
    // In doubled coordinates (λ, λ+2ρ) = Σ T_i (T_i + 2R_i) / 4.
    let num: i64 = lambda.twice().iter().zip(&rho).map(|(t, p)| t * (t + 2 * p)).sum();
    Ok(Q::new(num, 8 * (dual_coxeter(r) + level as i64)))
}

/// The level-one weights of so(2d+1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LevelOne {
    Omega0,
    Omega1,
    OmegaD,
}

impl LevelOne {
    pub const ALL: [LevelOne; 3] = [LevelOne::Omega0, LevelOne::Omega1, LevelOne::OmegaD];

    pub fn weight(self, d: usize) -> Result<Weight> {
        match self {
            LevelOne::Omega0 => Weight::fundamental(d, 0),
            LevelOne::Omega1 => Weight::fundamental(d, 1),
            LevelOne::OmegaD => Weight::fundamental(d, d),
        }
    }
}

impl fmt::Display for LevelOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LevelOne::Omega0 => "w0",
            LevelOne::Omega1 => "w1",
            LevelOne::OmegaD => "wd",
        })
    }
}

impl FromStr for LevelOne {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "w0" | "ω0" | "ω₀" => Ok(LevelOne::Omega0),
            "w1" | "ω1" | "ω₁" => Ok(LevelOne::Omega1),
            "wd" | "ωd" | "ω_d" => Ok(LevelOne::OmegaD),
            other => Err(Error::Parse(format!("unknown level-one weight {other:?}"))),
        }
    }
}

/// Which branching rule produced a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// (Y, Yᵀ).
    Diagram,
    /// (σ(Y), Yᵀ).
    SigmaLeft,
    /// (Y, σ(Yᵀ)).
    SigmaRight,
    /// (Y+ω_r, Y*+ω_s).
    Spin,
    /// (σ(Y+ω_r), Y*+ω_s) for Y in the r×(s−1) box.
    SpinSigmaLeft,
    /// (Y+ω_r, σ(Y*+ω_s)) for Y with a full first row.
    SpinSigmaRight,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Diagram => "(Y,Y^T)",
            Rule::SigmaLeft => "(sigma(Y),Y^T)",
            Rule::SigmaRight => "(Y,sigma(Y^T))",
            Rule::Spin => "(Y+w_r,Y*+w_s)",
            Rule::SpinSigmaLeft => "(sigma(Y+w_r),Y*+w_s)",
            Rule::SpinSigmaRight => "(Y+w_r,sigma(Y*+w_s))",
        })
    }
}

/// A pair (λ, μ) ∈ B(Λ) with its provenance and sewing exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchTriple {
    pub lambda: Weight,
    pub mu: Weight,
    pub big_lambda: LevelOne,
    pub diagram: YoungDiagram,
    pub rule: Rule,
    pub exponent: u64,
}

/// m = Δ_λ + Δ_μ − Δ_Λ, which must be a nonnegative integer.
pub fn sewing_exponent(params: EmbeddingParams, lambda: &Weight, mu: &Weight, big_lambda: LevelOne) -> Result<u64> {
    let (l1, l2) = params.levels();
    let m = trace_anomaly(lambda, l1)? + trace_anomaly(mu, l2)? - trace_anomaly(&big_lambda.weight(params.d())?, 1)?;
    if !m.is_integer() || m < Q::zero() {
        return Err(Error::Sewing(format!(
            "exponent {m} for ({lambda}; {mu}; {big_lambda}) is not a nonnegative integer"
        )));
    }
    Ok(m.to_integer() as u64)
}

/// Every pair of B(Λ) listed by the branching rules, with sewing exponents.
pub fn branch_pairs(big_lambda: LevelOne, r: usize, s: usize) -> Result<Vec<BranchTriple>> {
    let params = EmbeddingParams::new(r, s)?;
    let (l1, l2) = params.levels();
    let mut raw: Vec<(Weight, Weight, YoungDiagram, Rule)> = Vec::new();
    for y in YoungDiagram::in_box(r, s) {
        match big_lambda {
            LevelOne::Omega0 | LevelOne::Omega1 => {
                let lam = y.to_weight(r, false)?;
                let mu = y.transpose().to_weight(s, false)?;
                let odd = y.size() % 2 == 1;
                if odd == (big_lambda == LevelOne::Omega1) {
                    raw.push((lam, mu, y, Rule::Diagram));
                } else {
                    raw.push((sigma(&lam, l1)?, mu.clone(), y.clone(), Rule::SigmaLeft));
                    raw.push((lam, sigma(&mu, l2)?, y, Rule::SigmaRight));
                }
            }
            LevelOne::OmegaD => {
                let lam = y.to_weight(r, true)?;
                let mu = y.star(r, s)?.to_weight(s, true)?;
                if y.fits(r, s - 1) {
                    raw.push((sigma(&lam, l1)?, mu.clone(), y.clone(), Rule::SpinSigmaLeft));
                    raw.push((lam, mu, y, Rule::Spin));
                } else {
                    raw.push((lam.clone(), sigma(&mu, l2)?, y.clone(), Rule::SpinSigmaRight));
                    raw.push((lam, mu, y, Rule::Spin));
                }
            }
        }
    }
    raw.into_iter()
        .map(|(lambda, mu, diagram, rule)| {
            let exponent = sewing_exponent(params, &lambda, &mu, big_lambda)?;
            Ok(BranchTriple {
                lambda,
                mu,
                big_lambda,
                diagram,
                rule,
                exponent,
            })
        })
        .collect()
}

/// Finds the rule certifying (λ, μ) ∈ B(Λ), if any.
pub fn find_pair(
    params: EmbeddingParams,
    lambda: &Weight,
    mu: &Weight,
    big_lambda: LevelOne,
) -> Result<Option<BranchTriple>> {
    Ok(branch_pairs(big_lambda, params.r, params.s)?
        .into_iter()
        .find(|t| t.lambda == *lambda && t.mu == *mu))
}

/// How strictly [`ranklevel_report`] treats points outside the branching rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admissibility {
    /// Fail with [`Error::Inadmissible`].
    Strict,
    /// Record the point with an empty certificate and continue.
    Lenient,
}

/// Per-point admissibility certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCertificate {
    pub point: usize,
    pub lambda: Weight,
    pub mu: Weight,
    pub big_lambda: LevelOne,
    pub pair: Option<BranchTriple>,
}

/// The three genus-zero dimensions compared by a rank-level duality map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankLevelReport {
    pub params: EmbeddingParams,
    pub dim_source: BigUint,
    pub dim_target: BigUint,
    pub dim_level1: BigUint,
    pub certificates: Vec<PointCertificate>,
}

impl RankLevelReport {
    pub fn admissible(&self) -> bool {
        self.certificates.iter().all(|c| c.pair.is_some())
    }
}

fn table(rank: usize, level: u32, cache: Option<&Path>) -> Result<FusionTable> {
    match cache {
        Some(dir) => FusionTable::cached(dir, rank, level),
        None => FusionTable::new(rank, level),
    }
}

/// Dimensions of V_λ⃗(so(2r+1), 2s+1), V_μ⃗(so(2s+1), 2r+1) and V_Λ⃗(so(2d+1), 1) on ℙ¹.
pub fn ranklevel_report(
    params: EmbeddingParams,
    lambdas: &[Weight],
    mus: &[Weight],
    big_lambdas: &[LevelOne],
    mode: Admissibility,
    cache: Option<&Path>,
) -> Result<RankLevelReport> {
    if lambdas.len() != mus.len() {
        return Err(Error::LengthMismatch(lambdas.len(), mus.len()));
    }
    if lambdas.len() != big_lambdas.len() {
        return Err(Error::LengthMismatch(lambdas.len(), big_lambdas.len()));
    }
    let (l1, l2) = params.levels();
    let mut certificates = Vec::with_capacity(lambdas.len());
    for (point, ((lambda, mu), &big)) in lambdas.iter().zip(mus).zip(big_lambdas).enumerate() {
        check_level(lambda, l1)?;
        check_level(mu, l2)?;
        if lambda.rank() != params.r {
            return Err(Error::LengthMismatch(lambda.rank(), params.r));
        }
        if mu.rank() != params.s {
            return Err(Error::LengthMismatch(mu.rank(), params.s));
        }
        let pair = find_pair(params, lambda, mu, big)?;
        if pair.is_none() && mode == Admissibility::Strict {
            return Err(Error::Inadmissible {
                point,
                lambda: format!("({lambda}; {mu}; {big})"),
            });
        }
        certificates.push(PointCertificate {
            point,
            lambda: lambda.clone(),
            mu: mu.clone(),
            big_lambda: big,
            pair,
        });
    }
    let d = params.d();
    let level_one: Vec<Weight> = big_lambdas.iter().map(|b| b.weight(d)).collect::<Result<_>>()?;
    Ok(RankLevelReport {
        params,
        dim_source: table(params.r, l1, cache)?.dim_genus0(lambdas)?,
        dim_target: table(params.s, l2, cache)?.dim_genus0(mus)?,
        dim_level1: level1_table(d)?.dim_genus0(&level_one)?,
        certificates,
    })
}

/// A worked example of a rank-level map between spaces of unequal dimension.
#[derive(Clone, Debug)]
pub struct FailureExample {
    pub name: &'static str,
    pub params: EmbeddingParams,
    pub lambdas: Vec<Weight>,
    pub mus: Vec<Weight>,
    pub big_lambdas: Vec<LevelOne>,
    /// Expected (source, target, level-one) dimensions.
    pub expected: (u64, u64, u64),
}

fn omega(a: &[i64]) -> Weight {
    Weight::from_omega(a).expect("valid ω-coordinates")
}

/// The three four- and three-point examples with dims (4,5,1), (3,4,1), (14,20,1).
pub fn failure_examples() -> Vec<FailureExample> {
    use LevelOne::*;
    vec![
        FailureExample {
            name: "so(5)+so(7) in so(35)",
            params: EmbeddingParams { r: 2, s: 3 },
            lambdas: vec![omega(&[2, 1]), omega(&[2, 1]), omega(&[1, 0]), omega(&[1, 0])],
            mus: vec![
                omega(&[1, 0, 3]),
                omega(&[1, 0, 3]),
                omega(&[1, 0, 0]),
                omega(&[1, 0, 0]),
            ],
            big_lambdas: vec![OmegaD, OmegaD, Omega1, Omega1],
            expected: (4, 5, 1),
        },
        FailureExample {
            name: "so(7)+so(9) in so(63)",
            params: EmbeddingParams { r: 3, s: 4 },
            lambdas: vec![omega(&[0, 1, 3]), omega(&[0, 1, 3]), omega(&[1, 1, 0])],
            mus: vec![omega(&[1, 0, 2, 1]), omega(&[1, 0, 2, 1]), omega(&[1, 1, 0, 0])],
            big_lambdas: vec![OmegaD, OmegaD, Omega1],
            expected: (3, 4, 1),
        },
        FailureExample {
            name: "so(9)+so(7) in so(63)",
            params: EmbeddingParams { r: 4, s: 3 },
            lambdas: vec![omega(&[0, 1, 0, 3]), omega(&[0, 1, 0, 3]), omega(&[2, 0, 0, 2])],
            mus: vec![omega(&[2, 2, 1]), omega(&[2, 2, 1]), omega(&[1, 1, 2])],
            big_lambdas: vec![OmegaD, OmegaD, Omega1],
            expected: (14, 20, 1),
        },
    ]
}
