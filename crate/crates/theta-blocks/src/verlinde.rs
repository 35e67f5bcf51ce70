//! High-precision trigonometric Verlinde formula and theta-characteristic counts.

use std::collections::HashMap;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootsys::{positive_roots, rho_twice, Weight};
use crate::weights::{enumerate_level, Kind};

const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision and rounding tolerance of the trigonometric engine.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Precision {
    /// Mantissa bits (256 bits is about 77 decimal digits).
    pub bits: usize,
    /// Largest accepted distance to the nearest integer.
    pub tolerance: f64,
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            bits: 256,
            tolerance: 1e-6,
        }
    }
}

/// An integer recovered from a floating-point sum, with its rounding residual.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigValue {
    pub value: BigInt,
    pub residual: f64,
}

fn consts() -> Consts {
    Consts::new().expect("astro-float constants")
}

fn big(i: i64, p: usize) -> BigFloat {
    BigFloat::from_i64(i, p)
}

/// Approximate f64 value of a finite BigFloat.
pub(crate) fn approx_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let (words, _, sign, exp, _) = x.as_raw_parts().expect("finite value");
    let top = *words.last().unwrap() as f64;
    let magnitude = top * 2f64.powi(exp - 64);
    if sign == Sign::Neg {
        -magnitude
    } else {
        magnitude
    }
}

/// Exact value of an integral BigFloat.
fn integral_to_bigint(x: &BigFloat) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    let (words, _, sign, exp, _) = x.as_raw_parts().expect("finite value");
    let mut digits = Vec::with_capacity(words.len() * 2);
    for w in words {
        digits.push(*w as u32);
        digits.push((*w >> 32) as u32);
    }
    let m = BigUint::new(digits);
    let shift = exp as i64 - 64 * words.len() as i64;
    let magnitude = if shift >= 0 {
        m << shift as usize
    } else {
        m >> (-shift) as usize
    };
    let s = if sign == Sign::Neg {
        BigSign::Minus
    } else {
        BigSign::Plus
    };
    BigInt::from_biguint(s, magnitude)
}

fn round_checked(x: &BigFloat, prec: &Precision) -> Result<TrigValue> {
    let p = prec.bits;
    let half = BigFloat::from_f64(0.5, p);
    let nearest = x.add(&half, p, RM).floor();
    let residual = approx_f64(&x.sub(&nearest, p, RM)).abs();
    if residual.is_nan() || residual >= prec.tolerance {
        return Err(Error::Precision {
            residual: format!("{residual:e}"),
            tolerance: format!("{:e}", prec.tolerance),
        });
    }
    Ok(TrigValue {
        value: integral_to_bigint(&nearest),
        residual,
    })
}

fn determinant(mut m: Vec<Vec<BigFloat>>, p: usize) -> BigFloat {
    let n = m.len();
    let mut det = big(1, p);
    for c in 0..n {
        let pivot = (c..n)
            .max_by(|&a, &b| approx_f64(&m[a][c]).abs().total_cmp(&approx_f64(&m[b][c]).abs()))
            .unwrap();
        if approx_f64(&m[pivot][c]).abs() < 1e-40 {
            return big(0, p);
        }
        if pivot != c {
            m.swap(pivot, c);
            det.inv_sign();
        }
        det = det.mul(&m[c][c], p, RM);
        for row in c + 1..n {
            if m[row][c].is_zero() {
                continue;
            }
            let factor = m[row][c].div(&m[c][c], p, RM);
            for k in c..n {
                let t = factor.mul(&m[c][k], p, RM);
                m[row][k] = m[row][k].sub(&t, p, RM);
            }
        }
    }
    det
}

/// The modular S-matrix of so(2r+1) at level ℓ, indexed by P_ℓ in enumeration order.
#[derive(Debug)]
pub struct SMatrix {
    rank: usize,
    level: u32,
    bits: usize,
    weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
    entries: Vec<Vec<BigFloat>>,
}

impl SMatrix {
    /// Builds every entry at `bits` of working precision.
    pub fn new(rank: usize, level: u32, bits: usize) -> Result<Self> {
        let weights: Vec<Weight> = enumerate_level(rank, level)?.into_iter().map(|lw| lw.weight).collect();
        let p = bits;
        let k = level as i64 + 2 * rank as i64 - 1;
        let rho = rho_twice(rank);
        let shifted: Vec<Vec<i64>> = weights
            .iter()
            .map(|w| w.twice().iter().zip(&rho).map(|(a, b)| a + b).collect())
            .collect();
        // sin(π t / 2K) for t mod 4K.
        let period = 4 * k;
        let table: Vec<BigFloat> = {
            let mut cc = consts();
            let pi = cc.pi(p, RM);
            let step = pi.div(&big(2 * k, p), p, RM);
            (0..period)
                .map(|t| step.mul(&big(t, p), p, RM).sin(p, RM, &mut cc))
                .collect()
        };
        let n = weights.len();
        let raw: Vec<Vec<BigFloat>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let m = (0..rank)
                            .map(|a| {
                                (0..rank)
                                    .map(|b| {
                                        let t = (shifted[i][a] * shifted[j][b]).rem_euclid(period);
                                        table[t as usize].clone()
                                    })
                                    .collect()
                            })
                            .collect();
                        determinant(m, p)
                    })
                    .collect()
            })
            .collect();
        let mut norm = big(0, p);
        for x in &raw[0] {
            norm = norm.add(&x.mul(x, p, RM), p, RM);
        }
        let mut scale = norm.sqrt(p, RM).reciprocal(p, RM);
        if raw[0][0].is_negative() {
            scale.inv_sign();
        }
        let entries = raw
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.mul(&scale, p, RM)).collect())
            .collect();
        let index = weights.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Ok(Self {
            rank,
            level,
            bits,
            weights,
            index,
            entries,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigFloat {
        &self.entries[i][j]
    }

    pub fn entry_f64(&self, i: usize, j: usize) -> f64 {
        approx_f64(&self.entries[i][j])
    }

    pub fn index_of(&self, w: &Weight) -> Result<usize> {
        if w.rank() != self.rank {
            return Err(Error::LengthMismatch(w.rank(), self.rank));
        }
        self.index.get(w).copied().ok_or_else(|| Error::AboveLevel {
            weight: w.to_string(),
            level: self.level,
        })
    }

    /// max |S S − I|, which also bounds the unitarity defect since S is real symmetric.
    pub fn square_defect(&self) -> f64 {
        let p = self.bits;
        let n = self.weights.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut acc = big(if i == j { -1 } else { 0 }, p);
                for k in 0..n {
                    acc = acc.add(&self.entries[i][k].mul(&self.entries[k][j], p, RM), p, RM);
                }
                worst = worst.max(approx_f64(&acc).abs());
            }
        }
        worst
    }

    /// max |S_{λμ} − S_{μλ}|.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.weights.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                let d = self.entries[i][j].sub(&self.entries[j][i], self.bits, RM);
                worst = worst.max(approx_f64(&d).abs());
            }
        }
        worst
    }

    /// The unrounded Verlinde sum Σ_μ S_{0μ}^{2−2g−n} Π_i S_{λ_i μ}.
    pub fn verlinde_sum(&self, genus: u32, lambdas: &[usize]) -> BigFloat {
        let p = self.bits;
        let excess = 2 * genus as usize + lambdas.len();
        let mut total = big(0, p);
        for mu in 0..self.weights.len() {
            let s0 = &self.entries[0][mu];
            let mut term = if excess >= 2 {
                s0.powi(excess - 2, p, RM).reciprocal(p, RM)
            } else {
                s0.powi(2 - excess, p, RM)
            };
            for &l in lambdas {
                term = term.mul(&self.entries[l][mu], p, RM);
            }
            total = total.add(&term, p, RM);
        }
        total
    }

    /// Rounded genus-g dimension for the given weights.
    pub fn dim(&self, genus: u32, weights: &[Weight], prec: &Precision) -> Result<TrigValue> {
        let idx: Vec<usize> = weights.iter().map(|w| self.index_of(w)).collect::<Result<_>>()?;
        round_checked(&self.verlinde_sum(genus, &idx), prec)
    }
}

/// Genus-g dimension of the block with the given weights by the trigonometric formula.
pub fn dim_trig(genus: u32, weights: &[Weight], rank: usize, level: u32, prec: &Precision) -> Result<TrigValue> {
    SMatrix::new(rank, level, prec.bits)?.dim(genus, weights, prec)
}

/// +1 on SO-weights and −1 on spin weights.
pub fn char_sign(mu: &Weight) -> i32 {
    if mu.is_so() {
        1
    } else {
        -1
    }
}

/// N⁰_g(so(2r+1), ℓ): the trigonometric sum over SO-weights only.
pub fn n0_oxbury(genus: u32, rank: usize, level: u32, prec: &Precision) -> Result<TrigValue> {
    round_checked(&n0_sum(genus, rank, level, prec.bits)?, prec)
}

fn n0_sum(genus: u32, rank: usize, level: u32, p: usize) -> Result<BigFloat> {
    if genus < 1 {
        return Err(Error::InvalidWeight("genus must be at least 1".into()));
    }
    let k = level as i64 + 2 * rank as i64 - 1;
    let rho = rho_twice(rank);
    let roots = positive_roots(rank);
    let mut cc = consts();
    let pi = cc.pi(p, RM);
    let step = pi.div(&big(2 * k, p), p, RM);
    let power = 2 * (genus as usize - 1);
    let mut total = big(0, p);
    for lw in enumerate_level(rank, level)? {
        if lw.kind != Kind::So {
            continue;
        }
        let y: Vec<i64> = lw.weight.twice().iter().zip(&rho).map(|(a, b)| a + b).collect();
        let mut prod = big(1, p);
        for alpha in &roots {
            let t: i64 = y.iter().zip(alpha).map(|(a, b)| a * b).sum();
            let s = step.mul(&big(t, p), p, RM).sin(p, RM, &mut cc);
            prod = prod.mul(&s.mul(&big(2, p), p, RM), p, RM);
        }
        total = total.add(&prod.powi(power, p, RM).reciprocal(p, RM), p, RM);
    }
    let prefactor = big(4, p).mul(&big(k, p).powi(rank, p, RM), p, RM);
    Ok(total.mul(&prefactor.powi(genus as usize - 1, p, RM), p, RM))
}

/// dim V_{ω₀} + dim V_{ℓω₁} = 2·N⁰_g(so(2r+1), ℓ).
pub fn twisted_total(genus: u32, rank: usize, level: u32, prec: &Precision) -> Result<TrigValue> {
    let n0 = n0_oxbury(genus, rank, level, prec)?;
    Ok(TrigValue {
        value: n0.value * 2,
        residual: 2.0 * n0.residual,
    })
}

/// Both sides of N⁰_g(so(2r+1), 2s+1) = N⁰_g(so(2s+1), 2r+1).
#[derive(Clone, Debug, PartialEq)]
pub struct OxburyReport {
    pub lhs: TrigValue,
    pub rhs: TrigValue,
    pub equal: bool,
}

pub fn oxbury_check(genus: u32, r: usize, s: usize, prec: &Precision) -> Result<OxburyReport> {
    if r < 2 || s < 2 {
        return Err(Error::Rank(r.min(s)));
    }
    let lhs = n0_oxbury(genus, r, 2 * s as u32 + 1, prec)?;
    let rhs = n0_oxbury(genus, s, 2 * r as u32 + 1, prec)?;
    let equal = lhs.value == rhs.value;
    Ok(OxburyReport { lhs, rhs, equal })
}

/// Numbers of theta characteristics: (all, even, odd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaCounts {
    pub total: BigUint,
    pub even: BigUint,
    pub odd: BigUint,
}

pub fn theta_counts(genus: u32) -> ThetaCounts {
    let two_g = BigUint::one() << genus as usize;
    let total = &two_g * &two_g;
    let even = (&total + &two_g) >> 1usize;
    let odd = (&total - &two_g) >> 1usize;
    ThetaCounts { total, even, odd }
}

/// Converts a rounded value to u64 when it fits.
pub fn to_u64(v: &TrigValue) -> Option<u64> {
    if v.value.is_negative() {
        return None;
    }
    v.value.to_u64()
}
