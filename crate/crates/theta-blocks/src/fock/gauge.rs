//! Three-point block evaluation on the projective line by gauge symmetry.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::bilinear::{apply_word, bracket, form as killing, BilinearOp};
use super::forms::{apply_form, Form};
use super::qsqrt2::QSqrt2;
use super::state::{FockVector, Sector};
use crate::error::{Error, Result};

/// A word of bilinears applied to a base vector; the last op acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlotExpression {
    pub ops: Vec<BilinearOp>,
    pub base: FockVector,
}

impl SlotExpression {
    pub fn new(ops: Vec<BilinearOp>, base: FockVector) -> Self {
        Self { ops, base }
    }

    pub fn bare(base: FockVector) -> Self {
        Self::new(Vec::new(), base)
    }

    /// Prepend an operator (it acts last).
    pub fn with_op(mut self, op: BilinearOp) -> Self {
        self.ops.insert(0, op);
        self
    }

    /// The vector obtained by applying the word.
    pub fn to_vector(&self) -> FockVector {
        apply_word(&self.ops, &self.base)
    }

    /// Number of negative-mode operators.
    pub fn depth(&self) -> usize {
        self.ops.iter().filter(|op| op.mode < 0).count()
    }

    /// Upper bound (doubled) on the energy of the vector.
    pub fn energy2(&self) -> i32 {
        self.base.energy2() + self.ops.iter().map(|op| (-2 * op.mode).max(0)).sum::<i32>()
    }
}

impl fmt::Display for SlotExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            write!(f, "{op}·")?;
        }
        write!(f, "[{}]", self.base)
    }
}

/// A marked point on the projective line with its standard coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Zero,
    One,
    Infinity,
}

/// Marked points of the three slots and the order in which slots are reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockConfig {
    pub points: [Point; 3],
    pub order: [usize; 3],
}

impl Default for BlockConfig {
    fn default() -> Self {
        Self {
            points: [Point::Zero, Point::One, Point::Infinity],
            order: [0, 1, 2],
        }
    }
}

impl BlockConfig {
    fn validate(&self) -> Result<()> {
        let [a, b, c] = self.points;
        let mut order = self.order;
        order.sort_unstable();
        if a == b || b == c || a == c || order != [0, 1, 2] {
            return Err(Error::Parse(format!("invalid block configuration {self:?}")));
        }
        Ok(())
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Laurent coefficients, in the local coordinate at `at`, of the function with
/// a pole of order n at `pole` (z^{−n}, (z−1)^{−n} or z^n), for powers up to kmax.
pub fn expansion(pole: Point, at: Point, n: i64, kmax: i64) -> Vec<(i64, BigInt)> {
    use Point::*;
    let sign = |k: i64| if k % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
    match (pole, at) {
        (Zero, One) => (0..=kmax).map(|k| (k, sign(k) * binomial(n + k - 1, k))).collect(),
        (Zero, Infinity) | (Infinity, Zero) => {
            if n <= kmax {
                vec![(n, BigInt::from(1))]
            } else {
                Vec::new()
            }
        }
        (One, Zero) => (0..=kmax).map(|k| (k, sign(n) * binomial(n + k - 1, k))).collect(),
        (One, Infinity) => (n..=kmax).map(|k| (k, binomial(k - 1, k - n))).collect(),
        (Infinity, One) => (0..=kmax.min(n)).map(|k| (k, binomial(n, k))).collect(),
        _ => Vec::new(),
    }
}

struct Evaluator {
    form: Form,
    config: BlockConfig,
    memo: HashMap<[SlotExpression; 3], QSqrt2>,
}

impl Evaluator {
    fn eval(&mut self, slots: [SlotExpression; 3]) -> Result<QSqrt2> {
        if slots.iter().any(|s| s.base.is_zero()) {
            return Ok(QSqrt2::zero());
        }
        if let Some(v) = self.memo.get(&slots) {
            return Ok(v.clone());
        }
        let value = self.reduce(&slots)?;
        self.memo.insert(slots, value.clone());
        Ok(value)
    }

    fn reduce(&mut self, slots: &[SlotExpression; 3]) -> Result<QSqrt2> {
        let Some(i) = self.config.order.into_iter().find(|&i| !slots[i].ops.is_empty()) else {
            return apply_form(self.form, &slots[0].base, &slots[1].base, &slots[2].base);
        };
        let x = slots[i].ops[0];
        let rest = SlotExpression::new(slots[i].ops[1..].to_vec(), slots[i].base.clone());
        if x.mode > 0 && 2 * x.mode > rest.energy2() {
            return Ok(QSqrt2::zero());
        }
        let mut total = QSqrt2::zero();
        if x.mode < 0 {
            // ⟨Ψ| X⊗f = 0 with f having a pole of order −m at slot i only.
            let n = i64::from(-x.mode);
            for j in (0..3).filter(|&j| j != i) {
                let kmax = i64::from(slots[j].energy2() / 2);
                for (k, c) in expansion(self.config.points[i], self.config.points[j], n, kmax) {
                    let mut next = slots.clone();
                    next[i] = rest.clone();
                    next[j] = slots[j].clone().with_op(x.with_mode(k as i32));
                    let v = self.eval(next)?;
                    total -= &v.scale(&BigRational::from_integer(c));
                }
            }
            return Ok(total);
        }
        // Outermost op has nonnegative mode: apply words without negative modes,
        // otherwise move the first negative op outward past its left neighbour.
        let ops = &slots[i].ops;
        let Some(t) = ops.iter().position(|op| op.mode < 0) else {
            let mut next = slots.clone();
            next[i] = SlotExpression::bare(slots[i].to_vector());
            return self.eval(next);
        };
        // X(m)Y(n) = Y(n)X(m) + [X,Y](m+n) + m δ_{m+n,0} (X,Y).
        let (x, y) = (ops[t - 1], ops[t]);
        let with = |mid: &[BilinearOp]| {
            let mut word = ops[..t - 1].to_vec();
            word.extend_from_slice(mid);
            word.extend_from_slice(&ops[t + 1..]);
            let mut next = slots.clone();
            next[i] = SlotExpression::new(word, slots[i].base.clone());
            next
        };
        total += &self.eval(with(&[y, x]))?;
        for (c, z) in bracket(x, y) {
            total += &self.eval(with(&[z]))?.scale_int(c);
        }
        let central = killing(x, y) * i64::from(x.mode);
        if x.mode + y.mode == 0 && central != 0 {
            total += &self.eval(with(&[]))?.scale_int(central);
        }
        Ok(total)
    }
}

fn check_sectors(slots: &[SlotExpression; 3]) -> Result<()> {
    for (slot, sector) in slots.iter().zip([Sector::Ns, Sector::Ramond, Sector::RamondOpp]) {
        if slot.base.sector() != sector {
            return Err(Error::Sector(format!(
                "slot base in {}, expected {sector}",
                slot.base.sector()
            )));
        }
    }
    Ok(())
}

/// Evaluate a three-point block at the points (0, 1, ∞).
pub fn evaluate_block(s1: &SlotExpression, s2: &SlotExpression, s3: &SlotExpression, form: Form) -> Result<QSqrt2> {
    evaluate_block_with(s1, s2, s3, form, &BlockConfig::default())
}

/// Evaluate a three-point block with explicit points and reduction order.
pub fn evaluate_block_with(
    s1: &SlotExpression,
    s2: &SlotExpression,
    s3: &SlotExpression,
    form: Form,
    config: &BlockConfig,
) -> Result<QSqrt2> {
    config.validate()?;
    let slots = [s1.clone(), s2.clone(), s3.clone()];
    check_sectors(&slots)?;
    let mut ev = Evaluator {
        form,
        config: *config,
        memo: HashMap::new(),
    };
    ev.eval(slots)
}

/// Multilinear extension over linear combinations of slot expressions.
pub fn evaluate_sum(slots: [&[(QSqrt2, SlotExpression)]; 3], form: Form, config: &BlockConfig) -> Result<QSqrt2> {
    let mut total = QSqrt2::zero();
    for (c1, e1) in slots[0] {
        for (c2, e2) in slots[1] {
            for (c3, e3) in slots[2] {
                let v = evaluate_block_with(e1, e2, e3, form, config)?;
                total += &(&(&(c1 * c2) * c3) * &v);
            }
        }
    }
    Ok(total)
}
