//! Cross-checks between the exact fusion engine and the trigonometric oracle.

use num_bigint::BigUint;
use theta_blocks::fusion::{dim_genus_g, level1_table, tensor_decompose, FusionTable};
use theta_blocks::verlinde::{Precision, SMatrix};
use theta_blocks::weights::{enumerate_level, sigma};
use theta_blocks::{Weight, YoungDiagram};

fn weights(r: usize, level: u32) -> Vec<Weight> {
    enumerate_level(r, level)
        .unwrap()
        .into_iter()
        .map(|lw| lw.weight)
        .collect()
}

#[test]
fn fusion_agrees_with_trigonometric_oracle() {
    let prec = Precision::default();
    let mut checked = 0usize;
    for (r, max_level) in [(2usize, 4u32), (3, 3)] {
        for level in 1..=max_level {
            let table = FusionTable::new(r, level).unwrap();
            table.complete();
            let s = SMatrix::new(r, level, prec.bits).unwrap();
            let ws = table.weights().to_vec();
            let n = ws.len();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let exact = table.entry(i, j, k);
                        let trig = s.dim(0, &[ws[i].clone(), ws[j].clone(), ws[k].clone()], &prec).unwrap();
                        assert_eq!(
                            trig.value,
                            exact.into(),
                            "r={r} l={level} {} {} {}",
                            ws[i],
                            ws[j],
                            ws[k]
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 2000, "only {checked} triples");
}

#[test]
fn fusion_is_sigma_equivariant() {
    for level in 1..=5u32 {
        let table = FusionTable::new(2, level).unwrap();
        let ws = table.weights().to_vec();
        for a in &ws {
            let sa = sigma(a, level).unwrap();
            for b in &ws {
                for c in &ws {
                    let sc = sigma(c, level).unwrap();
                    assert_eq!(
                        table.get(a, b, c).unwrap(),
                        table.get(&sa, b, &sc).unwrap(),
                        "l={level} {a} {b} {c}"
                    );
                }
            }
        }
    }
}

#[test]
fn level_one_table_matches_kac_walton() {
    for d in [2usize, 3] {
        let closed = level1_table(d).unwrap();
        let exact = FusionTable::new(d, 1).unwrap();
        assert_eq!(exact.weights().len(), 3);
        for a in closed.weights() {
            for b in closed.weights() {
                for c in closed.weights() {
                    assert_eq!(
                        closed.get(a, b, c).unwrap(),
                        exact.get(a, b, c).unwrap(),
                        "d={d} {a} {b} {c}"
                    );
                }
            }
        }
    }
}

#[test]
fn genus_g_agrees_with_oracle() {
    let prec = Precision::default();
    for (r, level) in [(2usize, 2u32), (2, 3), (3, 2)] {
        let s = SMatrix::new(r, level, prec.bits).unwrap();
        let ws = weights(r, level);
        for g in 1..=3u32 {
            for pair in ws.chunks(2).take(4) {
                let exact = dim_genus_g(g, pair, level).unwrap();
                let trig = s.dim(g, pair, &prec).unwrap();
                assert_eq!(BigUint::try_from(trig.value).unwrap(), exact, "r={r} l={level} g={g}");
            }
        }
    }
}

#[test]
fn spin_square_anchor() {
    for r in 2..=4usize {
        let omega_r = Weight::fundamental(r, r).unwrap();
        let decomposition = tensor_decompose(&omega_r, &omega_r).unwrap();
        let mut expected: Vec<Weight> = (0..r).map(|i| Weight::fundamental(r, i).unwrap()).collect();
        expected.push(Weight::from_twice(vec![2; r]).unwrap());
        expected.sort();
        let found: Vec<Weight> = decomposition.keys().cloned().collect();
        assert_eq!(found, expected, "r={r}");
        assert!(decomposition.values().all(|&m| m == 1));
    }
}

/// Y ± one box, as diagrams with at most r rows.
fn neighbours(y: &YoungDiagram, r: usize) -> Vec<YoungDiagram> {
    let mut out = Vec::new();
    for i in 0..r {
        for delta in [-1i64, 1] {
            let mut rows: Vec<i64> = (0..r).map(|k| y.row(k) as i64).collect();
            rows[i] += delta;
            if rows[i] < 0 || rows.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            out.push(YoungDiagram::new(rows.into_iter().map(|x| x as usize).collect()).unwrap());
        }
    }
    out
}

#[test]
fn vector_fusion_with_spin_weights_is_one_dimensional() {
    for (r, level) in [(2usize, 5u32), (3, 7)] {
        let table = FusionTable::new(r, level).unwrap();
        let omega1 = Weight::fundamental(r, 1).unwrap();
        let spins: Vec<Weight> = table.weights().iter().filter(|w| !w.is_so()).cloned().collect();
        let stride = (spins.len() / 30).max(1);
        let sample: Vec<&Weight> = spins.iter().step_by(stride).take(30).collect();
        assert!(sample.len() >= 9.min(spins.len()));
        for lambda in sample {
            let y = YoungDiagram::from_weight(lambda);
            let mut allowed: Vec<Weight> = neighbours(&y, r)
                .iter()
                .map(|d| d.to_weight(r, true).unwrap())
                .collect();
            allowed.push(lambda.clone());
            for mu in table.weights() {
                let n = table.get(lambda, mu, &omega1).unwrap();
                let expected = u64::from(allowed.contains(mu));
                assert_eq!(n, expected, "({r},{level}) {lambda} {mu}");
            }
        }
    }
}
