//! Normal-ordered fermion bilinears and the embedded L/R actions.

use std::fmt;

use super::qsqrt2::QSqrt2;
use super::state::{gen_on_wedge, FockVector, Gen, Label, Sector, Wedge};

/// B^{upper}_{lower}(mode) = Σ_{a+b=mode} :φ^{upper}(a) φ_{lower}(b):.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BilinearOp {
    pub upper: Label,
    pub lower: Label,
    pub mode: i32,
}

impl BilinearOp {
    pub fn new(upper: Label, lower: Label, mode: i32) -> Self {
        Self { upper, lower, mode }
    }

    /// B^{i,p}_{k,q}(m).
    pub fn b(i: i32, p: i32, k: i32, q: i32, mode: i32) -> Self {
        Self::new(Label::new(i, p), Label::new(k, q), mode)
    }

    pub fn with_mode(self, mode: i32) -> Self {
        Self { mode, ..self }
    }

    /// B^a_{−a} vanishes identically.
    pub fn is_null(self) -> bool {
        self.upper == self.lower.neg()
    }
}

impl fmt::Display for BilinearOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{{{};{}}}({})", self.upper, self.lower, self.mode)
    }
}

fn apply_pair(sector: Sector, first: Gen, second: Gen, w: &[Gen]) -> Option<(QSqrt2, Wedge)> {
    let (c1, w1) = gen_on_wedge(sector, first, w).expect("mode parity matches the sector")?;
    let (c2, w2) = gen_on_wedge(sector, second, &w1).expect("mode parity matches the sector")?;
    Some((&c1 * &c2, w2))
}

/// Apply a bilinear with the normal ordering: −φ_y(b)φ^x(a) for a > 0 > b,
/// ½(φ^xφ_y − φ_yφ^x) for a = b = 0, and φ^x(a)φ_y(b) otherwise.
pub fn apply_bilinear(op: BilinearOp, v: &FockVector) -> FockVector {
    let sector = v.sector();
    let mut out = FockVector::zero(sector);
    if op.is_null() {
        return out;
    }
    let x = op.upper;
    let y = op.lower.neg();
    let m2 = 2 * op.mode;
    let half = QSqrt2::frac(1, 2);
    for (w, c) in v.terms() {
        let depth = w.iter().map(|g| g.mode2.abs()).max().unwrap_or(0);
        let window = depth + m2.abs() + 2;
        let mut b2 = -window;
        if !sector.admits(b2) {
            b2 -= 1;
        }
        while b2 <= window {
            let a2 = m2 - b2;
            let gx = Gen { mode2: a2, label: x };
            let gy = Gen { mode2: b2, label: y };
            if a2 > 0 && b2 < 0 {
                if let Some((k, w2)) = apply_pair(sector, gx, gy, w) {
                    out.add_term(w2, &-(&k * c));
                }
            } else if a2 == 0 && b2 == 0 {
                if let Some((k, w2)) = apply_pair(sector, gy, gx, w) {
                    out.add_term(w2, &(&(&k * c) * &half));
                }
                if let Some((k, w2)) = apply_pair(sector, gx, gy, w) {
                    out.add_term(w2, &-(&(&k * c) * &half));
                }
            } else if let Some((k, w2)) = apply_pair(sector, gy, gx, w) {
                out.add_term(w2, &(&k * c));
            }
            b2 += 2;
        }
    }
    out
}

/// Apply a word of bilinears; the last entry acts first.
pub fn apply_word(word: &[BilinearOp], v: &FockVector) -> FockVector {
    word.iter().rev().fold(v.clone(), |acc, op| apply_bilinear(*op, &acc))
}

/// [B^a_b, B^c_d] = δ_{bc}B^a_d − δ_{ad}B^c_b − δ_{b,−d}B^a_{−c} + δ_{a,−c}B^{−d}_b, at mode m+n.
pub fn bracket(x: BilinearOp, y: BilinearOp) -> Vec<(i64, BilinearOp)> {
    let (a, b, c, d) = (x.upper, x.lower, y.upper, y.lower);
    let m = x.mode + y.mode;
    let mut out = Vec::new();
    if b == c {
        out.push((1, BilinearOp::new(a, d, m)));
    }
    if a == d {
        out.push((-1, BilinearOp::new(c, b, m)));
    }
    if b == d.neg() {
        out.push((-1, BilinearOp::new(a, c.neg(), m)));
    }
    if a == c.neg() {
        out.push((1, BilinearOp::new(d.neg(), b, m)));
    }
    out.retain(|(_, op)| !op.is_null());
    out
}

/// The normalized invariant form (B^a_b, B^c_d) = δ_{bc}δ_{ad} − δ_{b,−d}δ_{a,−c}.
pub fn form(x: BilinearOp, y: BilinearOp) -> i64 {
    let (a, b, c, d) = (x.upper, x.lower, y.upper, y.lower);
    i64::from(b == c && a == d) - i64::from(b == d.neg() && a == c.neg())
}

/// Which embedded algebra acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// so(2r+1), acting on the first tensor index.
    L,
    /// so(2s+1), acting on the second tensor index.
    R,
}

/// The bilinears whose sum is L(B^i_j(m)) or R(B^i_j(m)).
pub fn lift(side: Side, i: i32, j: i32, mode: i32, r: usize, s: usize) -> Vec<BilinearOp> {
    match side {
        Side::L => {
            let s = s as i32;
            (-s..=s).map(|q| BilinearOp::b(i, q, j, q, mode)).collect()
        }
        Side::R => {
            let r = r as i32;
            (-r..=r).map(|p| BilinearOp::b(p, i, p, j, mode)).collect()
        }
    }
}

/// L(B^i_j(m))v or R(B^i_j(m))v.
pub fn apply_lr(side: Side, i: i32, j: i32, mode: i32, r: usize, s: usize, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(v.sector());
    for op in lift(side, i, j, mode, r, s) {
        out.add_scaled(&apply_bilinear(op, v), &QSqrt2::one());
    }
    out
}
