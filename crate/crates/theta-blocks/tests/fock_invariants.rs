//! Highest-weight properties of the branching vectors and bracket fidelity of the bilinears.

mod common;

use common::*;
use proptest::prelude::*;
use theta_blocks::fock::*;

#[test]
fn branching_vectors_are_extremal() {
    check_branching_vectors(2, 2);
}

#[test]
fn branching_vectors_are_extremal_off_diagonal() {
    check_branching_vectors(2, 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn bracket_fidelity(x in op(), y in op(), v in state()) {
        prop_assert!(bracket_holds(x, y, &v));
    }
}

#[test]
fn bracket_fidelity_on_nontrivial_pairs() {
    // Pairs with overlapping indices so that bracket and central terms both occur.
    let v = FockVector::from_gens(Sector::Ns, &[Gen::upper(1, 1, -1), Gen::upper(-2, 0, -3)]).unwrap();
    let r = FockVector::from_gens(Sector::Ramond, &[Gen::lower(1, -1, 0), Gen::upper(2, 1, -2)]).unwrap();
    let pairs = [
        (BilinearOp::b(1, 0, 2, 1, 1), BilinearOp::b(2, 1, 1, 0, -1)),
        (BilinearOp::b(0, 0, 1, 1, 0), BilinearOp::b(1, 1, 0, 0, -1)),
        (BilinearOp::b(1, -1, -2, 0, 2), BilinearOp::b(2, 0, 1, 1, -2)),
        (BilinearOp::b(1, 0, 1, 0, 0), BilinearOp::b(1, 0, 0, 1, -1)),
    ];
    for base in [&v, &r] {
        for &(x, y) in &pairs {
            assert!(bracket_holds(x, y, base), "{x} {y} on {base}");
        }
    }
}
