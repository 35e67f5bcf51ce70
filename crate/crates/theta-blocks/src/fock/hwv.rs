//! Highest-weight vectors of the branching components inside the level-one modules.

use std::fmt;
use std::str::FromStr;

use super::bilinear::{apply_bilinear, BilinearOp};
use super::gauge::SlotExpression;
use super::qsqrt2::QSqrt2;
use super::state::{FockVector, Gen, Sector, Wedge};
use crate::error::{Error, Result};
use crate::weights::YoungDiagram;

/// The family of highest-weight vector to construct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HwvKind {
    /// v_Y in the Ramond sector, component (Y+ω_r, Y*+ω_s).
    OmegaD,
    /// The opposite vector v^Y with raised generators.
    OmegaDOpp,
    /// ⋀_{j=−r}^{r} φ^{j,1}(−½) in the NS sector, component (ω₀, (2r+1)ω₁).
    NsColumn,
    /// ⋀ over the boxes (a,b) of Y of φ^{a,b}(−½), component (Y, Yᵀ).
    NsDiagram,
    /// The σ-twisted Ramond vector for Y in the r×(s−1) box, component (σ(Y+ω_r), Y*+ω_s).
    SigmaTwist,
    /// The opposite σ-twisted vector.
    SigmaTwistOpp,
}

impl HwvKind {
    pub const ALL: [HwvKind; 6] = [
        HwvKind::OmegaD,
        HwvKind::OmegaDOpp,
        HwvKind::NsColumn,
        HwvKind::NsDiagram,
        HwvKind::SigmaTwist,
        HwvKind::SigmaTwistOpp,
    ];
}

impl fmt::Display for HwvKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HwvKind::OmegaD => "omega-d",
            HwvKind::OmegaDOpp => "omega-d-opp",
            HwvKind::NsColumn => "ns-column",
            HwvKind::NsDiagram => "ns-diagram",
            HwvKind::SigmaTwist => "sigma-twist",
            HwvKind::SigmaTwistOpp => "sigma-twist-opp",
        })
    }
}

impl FromStr for HwvKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        HwvKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown hwv kind {s:?}")))
    }
}

fn check_box(y: &YoungDiagram, rows: usize, cols: usize) -> Result<()> {
    if y.fits(rows, cols) {
        Ok(())
    } else {
        Err(Error::Box {
            diagram: y.to_string(),
            rows,
            cols,
        })
    }
}

/// Cells (j, p), 1 ≤ j ≤ r, −s ≤ p ≤ −1, of the blackened diagram: the empty boxes of Y.
pub fn black_cells(y: &YoungDiagram, r: usize, s: usize) -> Vec<(i32, i32)> {
    let s = s as i32;
    (1..=r as i32)
        .flat_map(|j| {
            let start = y.row(j as usize - 1) as i32 - s;
            (start..=-1).map(move |p| (j, p))
        })
        .collect()
}

/// g₁∧g₂∧⋯ in the stated order.
fn wedge_of(sector: Sector, gens: &[Gen]) -> FockVector {
    FockVector::from_gens(sector, gens).expect("generators fit the sector")
}

/// v_Y = ⋀ φ_{j,p} over the black cells (Ramond sector).
pub fn v_lower(y: &YoungDiagram, r: usize, s: usize) -> Result<FockVector> {
    check_box(y, r, s)?;
    let gens: Vec<Gen> = black_cells(y, r, s)
        .into_iter()
        .map(|(j, p)| Gen::lower(j, p, 0))
        .collect();
    Ok(wedge_of(Sector::Ramond, &gens))
}

/// v^Y = ⋀ φ^{j,p} over the black cells (opposite Ramond sector).
pub fn v_upper(y: &YoungDiagram, r: usize, s: usize) -> Result<FockVector> {
    check_box(y, r, s)?;
    let gens: Vec<Gen> = black_cells(y, r, s)
        .into_iter()
        .map(|(j, p)| Gen::upper(j, p, 0))
        .collect();
    Ok(wedge_of(Sector::RamondOpp, &gens))
}

/// ⋀_{j=−r}^{r} φ^{j,1}(−½).
pub fn ns_column(r: usize) -> FockVector {
    let r = r as i32;
    let gens: Vec<Gen> = (-r..=r).map(|j| Gen::upper(j, 1, -1)).collect();
    wedge_of(Sector::Ns, &gens)
}

/// ⋀ φ^{a,b}(−½) over the boxes of Y in row-major order.
pub fn ns_diagram(y: &YoungDiagram, r: usize, s: usize) -> Result<FockVector> {
    check_box(y, r, s)?;
    let gens: Vec<Gen> = (1..=r)
        .flat_map(|a| (1..=y.row(a - 1)).map(move |b| Gen::upper(a as i32, b as i32, -1)))
        .collect();
    Ok(wedge_of(Sector::Ns, &gens))
}

/// Y with its first row filled to length s.
pub fn fill_first_row(y: &YoungDiagram, s: usize) -> YoungDiagram {
    let mut rows = y.rows().to_vec();
    if rows.is_empty() {
        rows.push(s);
    } else {
        rows[0] = s;
    }
    YoungDiagram::new(rows).expect("filling the first row keeps the rows decreasing")
}

/// ∏ B^{1,−p}_{0,0}(−1) v_{Y′}, p over the black cells of the first row of Y.
pub fn sigma_twist(y: &YoungDiagram, r: usize, s: usize) -> Result<SlotExpression> {
    check_box(y, r, s.saturating_sub(1))?;
    let full = fill_first_row(y, s);
    let ops = first_row_cells(y, s).map(|p| BilinearOp::b(1, -p, 0, 0, -1)).collect();
    Ok(SlotExpression::new(ops, v_lower(&full, r, s)?))
}

/// ∏ B^{0,0}_{1,−p}(−1) v^{Y′}.
pub fn sigma_twist_opp(y: &YoungDiagram, r: usize, s: usize) -> Result<SlotExpression> {
    check_box(y, r, s.saturating_sub(1))?;
    let full = fill_first_row(y, s);
    let ops = first_row_cells(y, s).map(|p| BilinearOp::b(0, 0, 1, -p, -1)).collect();
    Ok(SlotExpression::new(ops, v_upper(&full, r, s)?))
}

fn first_row_cells(y: &YoungDiagram, s: usize) -> impl Iterator<Item = i32> {
    (y.row(0) as i32 - s as i32)..=-1
}

/// The highest-weight vector of the given kind as an operator word on a ground base.
pub fn hwv(kind: HwvKind, y: &YoungDiagram, r: usize, s: usize) -> Result<SlotExpression> {
    match kind {
        HwvKind::OmegaD => Ok(SlotExpression::bare(v_lower(y, r, s)?)),
        HwvKind::OmegaDOpp => Ok(SlotExpression::bare(v_upper(y, r, s)?)),
        HwvKind::NsColumn => Ok(SlotExpression::bare(ns_column(r))),
        HwvKind::NsDiagram => Ok(SlotExpression::bare(ns_diagram(y, r, s)?)),
        HwvKind::SigmaTwist => sigma_twist(y, r, s),
        HwvKind::SigmaTwistOpp => sigma_twist_opp(y, r, s),
    }
}

/// Rewrite an NS vector of mode −½ generators as operator words on ground bases:
/// pairs of generators become B(−1) operators, an odd leftover stays in the base.
pub fn ns_words(v: &FockVector) -> Result<Vec<(QSqrt2, SlotExpression)>> {
    if v.sector() != Sector::Ns {
        return Err(Error::Sector(format!("expected NS, found {}", v.sector())));
    }
    let mut out = Vec::new();
    for (w, c) in v.terms() {
        for (c2, e) in monomial_words(w)? {
            out.push((c * &c2, e));
        }
    }
    Ok(out)
}

fn monomial_words(w: &Wedge) -> Result<Vec<(QSqrt2, SlotExpression)>> {
    if let Some(g) = w.iter().find(|g| g.mode2 != -1) {
        return Err(Error::Unreducible(format!("{g} is not a mode -1/2 generator")));
    }
    if w.len() <= 1 {
        return Ok(vec![(
            QSqrt2::one(),
            SlotExpression::bare(FockVector::from_wedge(Sector::Ns, w.clone())),
        )]);
    }
    // g₁g₂·rest = B^{g₁}_{−g₂}(−1)·rest − (contraction terms of lower length).
    let op = BilinearOp::new(w[0].label, w[1].label.neg(), -1);
    let rest = FockVector::from_wedge(Sector::Ns, w[2..].to_vec());
    let mut out: Vec<(QSqrt2, SlotExpression)> = monomial_words(&w[2..].to_vec())?
        .into_iter()
        .map(|(c, e)| (c, e.with_op(op)))
        .collect();
    let residual = apply_bilinear(op, &rest).minus(&FockVector::from_wedge(Sector::Ns, w.clone()));
    for (w2, c) in residual.terms() {
        for (c2, e) in monomial_words(w2)? {
            out.push((-(c * &c2), e));
        }
    }
    Ok(out)
}
