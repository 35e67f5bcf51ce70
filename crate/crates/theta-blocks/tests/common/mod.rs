//! Helpers shared by the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use theta_blocks::fock::*;
use theta_blocks::weights::sigma;
use theta_blocks::{Weight, YoungDiagram};

pub fn ns(gens: &[Gen]) -> FockVector {
    FockVector::from_gens(Sector::Ns, gens).unwrap()
}

pub fn yd(rows: &[usize]) -> YoungDiagram {
    YoungDiagram::new(rows.to_vec()).unwrap()
}

/// φ^{1,c₁}(−½)⋯φ^{k,c_k}(−½).
pub fn column_state(cols: &[i32]) -> FockVector {
    let gens: Vec<Gen> = cols
        .iter()
        .enumerate()
        .map(|(i, &c)| Gen::upper(i as i32 + 1, c, -1))
        .collect();
    ns(&gens)
}

/// R^k(B⁰₁) φ^{1,1}(−½)⋯φ^{k,1}(−½).
pub fn r_power(k: usize, r: usize, s: usize) -> FockVector {
    let mut v = column_state(&vec![1; k]);
    for _ in 0..k {
        v = apply_lr(Side::R, 0, 1, 0, r, s, &v);
    }
    v
}

/// φ_{1,0}∧⋯∧φ_{k,0}∧v.
pub fn prepend_zero_column(v: &FockVector, k: usize) -> FockVector {
    (1..=k as i32)
        .rev()
        .fold(v.clone(), |acc, j| acc.apply_gen(Gen::lower(j, 0, 0)).unwrap())
}

/// Position of an index in the order 1, …, n, 0, −n, …, −1.
fn position(i: i32, n: i32) -> i32 {
    match i.signum() {
        1 => i - 1,
        0 => n,
        _ => 2 * n + 1 + i,
    }
}

fn indices(n: usize) -> impl Iterator<Item = (i32, i32)> + Clone {
    let n = n as i32;
    (-n..=n)
        .flat_map(move |i| (-n..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != -j)
}

#[derive(Clone, Copy, PartialEq)]
pub enum Extremal {
    Highest,
    Lowest,
}

/// Positive modes and the mode-0 raising (or lowering) operators of both sides annihilate w.
pub fn assert_extremal(w: &FockVector, r: usize, s: usize, kind: Extremal, what: &str) {
    assert!(!w.is_zero(), "{what}: zero vector");
    for (side, n) in [(Side::L, r), (Side::R, s)] {
        for (i, j) in indices(n) {
            for mode in 1..=2 {
                assert!(
                    apply_lr(side, i, j, mode, r, s, w).is_zero(),
                    "{what}: {side:?} B^{i}_{j}({mode})"
                );
            }
            let (pi, pj) = (position(i, n as i32), position(j, n as i32));
            let kills = match kind {
                Extremal::Highest => pi < pj,
                Extremal::Lowest => pi > pj,
            };
            if kills {
                assert!(
                    apply_lr(side, i, j, 0, r, s, w).is_zero(),
                    "{what}: {side:?} B^{i}_{j}(0)"
                );
            }
        }
    }
}

/// Cartan eigenvalues: L(B^i_i(0)) and R(B^p_p(0)) scale w by the doubled weights / 2.
pub fn assert_weights(w: &FockVector, r: usize, s: usize, left: &[i64], right: &[i64], what: &str) {
    for (side, n, twice) in [(Side::L, r, left), (Side::R, s, right)] {
        for i in 1..=n {
            let out = apply_lr(side, i as i32, i as i32, 0, r, s, w);
            assert_eq!(out, w.scaled(&QSqrt2::frac(twice[i - 1], 2)), "{what}: {side:?} H_{i}");
        }
    }
}

fn negate(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

/// Every branching vector at (r, s) is extremal with the expected weights.
pub fn check_branching_vectors(r: usize, s: usize) {
    for y in YoungDiagram::in_box(r, s) {
        let lambda = y.to_weight(r, true).unwrap();
        let mu = y.star(r, s).unwrap().to_weight(s, true).unwrap();

        let v = v_lower(&y, r, s).unwrap();
        assert_extremal(&v, r, s, Extremal::Highest, &format!("v_{y}"));
        assert_weights(&v, r, s, lambda.twice(), mu.twice(), &format!("v_{y}"));

        let v = v_upper(&y, r, s).unwrap();
        assert_extremal(&v, r, s, Extremal::Lowest, &format!("v^{y}"));
        assert_weights(
            &v,
            r,
            s,
            &negate(lambda.twice()),
            &negate(mu.twice()),
            &format!("v^{y}"),
        );

        let so = ns_diagram(&y, r, s).unwrap();
        let left = y.to_weight(r, false).unwrap();
        let right = y.transpose().to_weight(s, false).unwrap();
        assert_extremal(&so, r, s, Extremal::Highest, &format!("ns_{y}"));
        assert_weights(&so, r, s, left.twice(), right.twice(), &format!("ns_{y}"));

        if y.fits(r, s - 1) {
            let sig = sigma(&lambda, 2 * s as u32 + 1).unwrap();
            let t = sigma_twist(&y, r, s).unwrap().to_vector();
            assert_extremal(&t, r, s, Extremal::Highest, &format!("sigma_{y}"));
            assert_weights(&t, r, s, sig.twice(), mu.twice(), &format!("sigma_{y}"));
            let t = sigma_twist_opp(&y, r, s).unwrap().to_vector();
            assert_extremal(&t, r, s, Extremal::Lowest, &format!("sigma^{y}"));
            assert_weights(
                &t,
                r,
                s,
                &negate(sig.twice()),
                &negate(mu.twice()),
                &format!("sigma^{y}"),
            );
        }
    }
    let col = ns_column(r);
    assert_extremal(&col, r, s, Extremal::Highest, "column");
    let mut right = vec![0; s];
    right[0] = 2 * (2 * r as i64 + 1);
    let right = Weight::from_twice(right).unwrap();
    assert_weights(&col, r, s, &vec![0; r], right.twice(), "column");
}

/// [X, Y] applied to v equals the bracket and central term applied to v.
pub fn bracket_holds(x: BilinearOp, y: BilinearOp, v: &FockVector) -> bool {
    let lhs = apply_bilinear(x, &apply_bilinear(y, v)).minus(&apply_bilinear(y, &apply_bilinear(x, v)));
    let mut rhs = FockVector::zero(v.sector());
    for (c, z) in bracket(x, y) {
        rhs.add_scaled(&apply_bilinear(z, v), &QSqrt2::from_int(c));
    }
    if x.mode + y.mode == 0 {
        rhs.add_scaled(v, &QSqrt2::from_int(i64::from(x.mode) * form(x, y)));
    }
    lhs == rhs
}

fn label() -> impl Strategy<Value = Label> {
    (-2i32..=2, -2i32..=2).prop_map(|(j, p)| Label::new(j, p))
}

pub fn op() -> impl Strategy<Value = BilinearOp> {
    (label(), label(), -2i32..=2).prop_map(|(a, b, m)| BilinearOp::new(a, b, m))
}

/// A wedge of up to three creation generators of depth at most 3/2 (NS) or 1 (R).
pub fn state() -> impl Strategy<Value = FockVector> {
    (any::<bool>(), prop::collection::vec((label(), 0i32..3), 0..=3)).prop_map(|(is_ns, gens)| {
        let sector = if is_ns { Sector::Ns } else { Sector::Ramond };
        let gens: Vec<Gen> = gens
            .into_iter()
            .map(|(l, depth)| match sector {
                Sector::Ns => Gen {
                    mode2: -(2 * depth + 1).min(3),
                    label: l,
                },
                _ if depth == 0 && l.is_positive() => Gen {
                    mode2: 0,
                    label: l.neg(),
                },
                _ if depth == 0 && l.is_zero() => Gen { mode2: -2, label: l },
                _ => Gen {
                    mode2: -2 * depth.min(1),
                    label: l,
                },
            })
            .collect();
        FockVector::from_gens(sector, &gens).unwrap()
    })
}
