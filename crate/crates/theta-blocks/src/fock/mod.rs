//! Free-fermion Fock modules of the affine so(2d+1) at level one, d = 2rs + r + s.
//!
//! Generators φ^{j,p}(a) carry a tensor index (j, p) ∈ [−r..r]×[−s..s] and a mode a;
//! the NS sector has half-integer modes and the Ramond sectors integer modes.

pub mod bilinear;
pub mod expr;
pub mod forms;
pub mod gauge;
pub mod hwv;
pub mod qsqrt2;
pub mod ranklevel;
pub mod state;

pub use bilinear::{apply_bilinear, apply_lr, apply_word, bracket, form, lift, BilinearOp, Side};
pub use expr::{parse_slot, SlotTerm};
pub use forms::{apply_form, psi_pair, psitilde, Form};
pub use gauge::{evaluate_block, evaluate_block_with, evaluate_sum, expansion, BlockConfig, Point, SlotExpression};
pub use hwv::{hwv, ns_column, ns_diagram, ns_words, sigma_twist, sigma_twist_opp, v_lower, v_upper, HwvKind};
pub use qsqrt2::QSqrt2;
pub use ranklevel::{odd_slot_vector, ranklevel_matrix, ranklevel_matrix_with, RankLevelMatrix};
pub use state::{clifford_apply, FockVector, Gen, Label, Sector};
