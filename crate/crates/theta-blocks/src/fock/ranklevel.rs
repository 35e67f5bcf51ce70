//! The 2×2 matrix of three-point pairings for a σ-orbit {λ, σ(λ)}.

use super::bilinear::BilinearOp;
use super::forms::Form;
use super::gauge::{evaluate_block_with, BlockConfig, SlotExpression};
use super::hwv::{fill_first_row, v_lower, v_upper};
use super::qsqrt2::QSqrt2;
use super::state::{FockVector, Gen, Sector};
use crate::error::{Error, Result};
use crate::weights::YoungDiagram;

/// Entries, determinant and the two Clifford-multiplication identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankLevelMatrix {
    /// [[⟨Ψ|1⊗v_λ⊗v^λ⟩, ⟨Ψ|1⊗v̄_λ⊗v̄^λ⟩], [⟨Ψ̃|ṽ⊗v_λ⊗v^λ⟩, ⟨Ψ̃|ṽ⊗v̄_λ⊗v̄^λ⟩]].
    pub entries: [[QSqrt2; 2]; 2],
    pub det: QSqrt2,
    /// (⟨Ψ̃|φ^{1,0}(−½)⊗φ_{1,0}∧v⊗v^opp⟩, ⟨Ψ|1⊗v⊗v^opp⟩) for the vectors of λ and of λ̄.
    pub identities: [(QSqrt2, QSqrt2); 2],
}

impl RankLevelMatrix {
    pub fn identities_hold(&self) -> bool {
        self.identities.iter().all(|(a, b)| a == b)
    }
}

/// ṽ = B^{2,0}_{2,0}(−1)⋯B^{r,0}_{r,0}(−1)B^{0,0}_{1,0}(−1)φ^{1,0}(−½).
pub fn odd_slot_vector(r: usize) -> SlotExpression {
    let mut ops: Vec<BilinearOp> = (2..=r as i32).map(|i| BilinearOp::b(i, 0, i, 0, -1)).collect();
    ops.push(BilinearOp::b(0, 0, 1, 0, -1));
    let base = FockVector::from_gens(Sector::Ns, &[Gen::upper(1, 0, -1)]).expect("NS generator");
    SlotExpression::new(ops, base)
}

pub fn ranklevel_matrix(y: &YoungDiagram, r: usize, s: usize) -> Result<RankLevelMatrix> {
    ranklevel_matrix_with(y, r, s, &BlockConfig::default())
}

pub fn ranklevel_matrix_with(y: &YoungDiagram, r: usize, s: usize, config: &BlockConfig) -> Result<RankLevelMatrix> {
    if r < 2 {
        return Err(Error::Rank(r));
    }
    if s < 1 || !y.fits(r, s - 1) || y.row(0) + 1 != s {
        return Err(Error::Box {
            diagram: y.to_string(),
            rows: r,
            cols: s.saturating_sub(1),
        });
    }
    let bar = fill_first_row(y, s);
    let v = SlotExpression::bare(v_lower(y, r, s)?);
    let v_opp = SlotExpression::bare(v_upper(y, r, s)?);
    let vb = SlotExpression::bare(v_lower(&bar, r, s)?).with_op(BilinearOp::b(1, 1, 0, 0, -1));
    let vb_opp = SlotExpression::bare(v_upper(&bar, r, s)?).with_op(BilinearOp::b(0, 0, 1, 1, -1));
    let vac = SlotExpression::bare(FockVector::vacuum(Sector::Ns));
    let odd = odd_slot_vector(r);

    let eval =
        |a: &SlotExpression, b: &SlotExpression, c: &SlotExpression, f: Form| evaluate_block_with(a, b, c, f, config);
    let a11 = eval(&vac, &v, &v_opp, Form::Psi)?;
    let a12 = eval(&vac, &vb, &vb_opp, Form::Psi)?;
    let a21 = eval(&odd, &v, &v_opp, Form::PsiTilde)?;
    let a22 = eval(&odd, &vb, &vb_opp, Form::PsiTilde)?;
    let det = &(&a11 * &a22) - &(&a12 * &a21);

    let phi10 = SlotExpression::bare(FockVector::from_gens(Sector::Ns, &[Gen::upper(1, 0, -1)])?);
    let mut identities = Vec::new();
    for d in [y, &bar] {
        let lower = v_lower(d, r, s)?;
        let upper = SlotExpression::bare(v_upper(d, r, s)?);
        let lifted = SlotExpression::bare(lower.apply_gen(Gen::lower(1, 0, 0))?);
        let lhs = eval(&phi10, &lifted, &upper, Form::PsiTilde)?;
        let rhs = eval(&vac, &SlotExpression::bare(lower), &upper, Form::Psi)?;
        identities.push((lhs, rhs));
    }
    let identities: [(QSqrt2, QSqrt2); 2] = identities.try_into().expect("two identities");
    Ok(RankLevelMatrix {
        entries: [[a11, a12], [a21, a22]],
        det,
        identities,
    })
}
