//! Root data, Weyl folding and weight multiplicities for type B_r.
//!
//! Weights are stored in L-coordinates as doubled integers, so that integral
//! and half-odd weights share one exact representation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Exact rational scalar used for inner products and anomalies.
pub type Rational = Ratio<i64>;

/// A dominant weight of so(2r+1) in L-coordinates.
///
/// The coordinates b₁ ≥ … ≥ b_r ≥ 0 are kept as `2·b_i`, all even (an
/// SO-weight) or all odd (a spin weight).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    twice: Vec<i64>,
}

impl Weight {
    /// Builds a weight from doubled L-coordinates, checking parity and dominance.
    pub fn from_twice(twice: Vec<i64>) -> Result<Self> {
        if twice.len() < 2 {
            return Err(Error::Rank(twice.len()));
        }
        let parity = twice[0].rem_euclid(2);
        if twice.iter().any(|t| t.rem_euclid(2) != parity) {
            return Err(Error::InvalidWeight(format!(
                "{twice:?}: coordinates must be all integral or all half-odd"
            )));
        }
        if twice.windows(2).any(|w| w[0] < w[1]) || twice[twice.len() - 1] < 0 {
            return Err(Error::InvalidWeight(format!("{}: not dominant", format_twice(&twice))));
        }
        Ok(Self { twice })
    }

    pub(crate) fn from_twice_unchecked(twice: Vec<i64>) -> Self {
        Self { twice }
    }

    /// Builds a weight from L-coordinates.
    pub fn from_coords(coords: &[Rational]) -> Result<Self> {
        let twice = coords
            .iter()
            .map(|c| {
                let t = *c * 2;
                if t.is_integer() {
                    Ok(t.to_integer())
                } else {
                    Err(Error::InvalidWeight(format!("coordinate {c} is not in ½ℤ")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_twice(twice)
    }

    /// The zero weight ω₀ of rank r.
    pub fn zero(r: usize) -> Self {
        Self { twice: vec![0; r] }
    }

    /// The fundamental weight ω_i (ω₀ = 0, ω_i = L₁+⋯+L_i for i < r, ω_r = ½ΣL_i).
    pub fn fundamental(r: usize, i: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::Rank(r));
        }
        if i > r {
            return Err(Error::InvalidWeight(format!("ω_{i} does not exist in rank {r}")));
        }
        let twice = if i == r {
            vec![1; r]
        } else {
            (0..r).map(|k| if k < i { 2 } else { 0 }).collect()
        };
        Ok(Self { twice })
    }

    /// Builds a weight from ω-coordinates (a₁, …, a_r).
    pub fn from_omega(a: &[i64]) -> Result<Self> {
        let r = a.len();
        if r < 2 {
            return Err(Error::Rank(r));
        }
        if a.iter().any(|&x| x < 0) {
            return Err(Error::InvalidWeight(format!("{a:?}: negative ω-coordinate")));
        }
        let mut twice = vec![0; r];
        twice[r - 1] = a[r - 1];
        for i in (0..r - 1).rev() {
            twice[i] = twice[i + 1] + 2 * a[i];
        }
        Ok(Self { twice })
    }

    pub fn rank(&self) -> usize {
        self.twice.len()
    }

    /// Doubled L-coordinates.
    pub fn twice(&self) -> &[i64] {
        &self.twice
    }

    /// L-coordinates.
    pub fn coords(&self) -> Vec<Rational> {
        self.twice.iter().map(|&t| Rational::new(t, 2)).collect()
    }

    /// The level (λ, θ) = b₁ + b₂.
    pub fn level(&self) -> u32 {
        ((self.twice[0] + self.twice[1]) / 2) as u32
    }

    /// True iff all coordinates are integers, i.e. λ integrates to SO(2r+1).
    pub fn is_so(&self) -> bool {
        self.twice[0] % 2 == 0
    }

    /// ω-coordinates: a_i = b_i − b_{i+1} for i < r and a_r = 2b_r.
    pub fn omega_coords(&self) -> Vec<i64> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                if i + 1 < r {
                    (self.twice[i] - self.twice[i + 1]) / 2
                } else {
                    self.twice[i]
                }
            })
            .collect()
    }

    /// Total number of boxes of the associated Young diagram (λ or λ − ω_r).
    pub fn boxes(&self) -> i64 {
        let shift = if self.is_so() { 0 } else { 1 };
        self.twice.iter().map(|t| (t - shift) / 2).sum()
    }
}

pub(crate) fn format_twice(twice: &[i64]) -> String {
    twice
        .iter()
        .map(|&t| {
            if t % 2 == 0 {
                (t / 2).to_string()
            } else {
                format!("{t}/2")
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_twice(&self.twice))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses comma-separated L-coordinates such as `"3/2,1/2"`.
    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<Rational>()
                    .map_err(|_| Error::Parse(format!("bad coordinate {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_coords(&coords)
    }
}

/// Exact root data of type B_r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemB {
    rank: usize,
    positive_roots: Vec<Vec<i64>>,
    rho_twice: Vec<i64>,
}

impl RootSystemB {
    pub fn new(rank: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::Rank(rank));
        }
        Ok(Self {
            rank,
            positive_roots: positive_roots(rank),
            rho_twice: rho_twice(rank),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Positive roots L_i ± L_j (i < j) and L_i, in L-coordinates.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// ρ = ((2r−1)/2, …, 1/2).
    pub fn rho(&self) -> Vec<Rational> {
        self.rho_twice.iter().map(|&t| Rational::new(t, 2)).collect()
    }

    pub fn rho_twice(&self) -> &[i64] {
        &self.rho_twice
    }

    /// The dual Coxeter number 2r − 1.
    pub fn dual_coxeter(&self) -> i64 {
        2 * self.rank as i64 - 1
    }

    /// θ = L₁ + L₂.
    pub fn highest_root(&self) -> Vec<i64> {
        let mut theta = vec![0; self.rank];
        theta[0] = 1;
        theta[1] = 1;
        theta
    }

    /// Order 2^r·r! of the Weyl group.
    pub fn weyl_group_order(&self) -> u128 {
        (1..=self.rank as u128).product::<u128>() << self.rank
    }
}

pub(crate) fn positive_roots(r: usize) -> Vec<Vec<i64>> {
    let mut roots = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in i + 1..r {
            for sign in [-1, 1] {
                let mut a = vec![0; r];
                a[i] = 1;
                a[j] = sign;
                roots.push(a);
            }
        }
        let mut a = vec![0; r];
        a[i] = 1;
        roots.push(a);
    }
    roots
}

pub(crate) fn rho_twice(r: usize) -> Vec<i64> {
    (0..r).map(|i| 2 * (r - i) as i64 - 1).collect()
}

pub(crate) fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// The normalized invariant form, the standard dot product in L-coordinates.
pub fn killing_form(x: &[Rational], y: &[Rational]) -> Result<Rational> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    Ok(x.iter().zip(y).map(|(a, b)| a * b).sum())
}

/// Dimension of V_λ by the Weyl dimension formula.
pub fn weyl_dim(lambda: &Weight) -> BigUint {
    let r = lambda.rank();
    let rho = rho_twice(r);
    let shifted: Vec<i64> = lambda.twice.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for alpha in positive_roots(r) {
        num *= dot(&shifted, &alpha) as u64;
        den *= dot(&rho, &alpha) as u64;
    }
    num / den
}

/// Result of folding a ρ-shifted vector into the dominant chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fold {
    /// The vector lies on a reflecting hyperplane.
    Wall,
    /// The strictly dominant image and the determinant of the folding element.
    Image(Weight, i32),
}

/// Folds a ρ-shifted vector (doubled L-coordinates) by signed permutations.
pub fn dominant_conjugate_shifted(v_twice: &[i64]) -> Fold {
    match fold_finite(v_twice) {
        Some((image, sign)) => Fold::Image(Weight::from_twice_unchecked(image), sign),
        None => Fold::Wall,
    }
}

pub(crate) fn fold_finite(v: &[i64]) -> Option<(Vec<i64>, i32)> {
    let mut sign = 1;
    let mut abs: Vec<i64> = Vec::with_capacity(v.len());
    for &x in v {
        if x == 0 {
            return None;
        }
        if x < 0 {
            sign = -sign;
        }
        abs.push(x.abs());
    }
    for i in 0..abs.len() {
        for j in i + 1..abs.len() {
            match abs[i].cmp(&abs[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => sign = -sign,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    abs.sort_unstable_by(|a, b| b.cmp(a));
    Some((abs, sign))
}

/// Dominant Weyl conjugate of an unshifted vector (doubled coordinates).
pub(crate) fn dominant_conjugate(v: &[i64]) -> Vec<i64> {
    let mut abs: Vec<i64> = v.iter().map(|x| x.abs()).collect();
    abs.sort_unstable_by(|a, b| b.cmp(a));
    abs
}

/// Size of the Weyl orbit of a dominant vector.
pub fn orbit_size(dominant_twice: &[i64]) -> u64 {
    let r = dominant_twice.len() as u64;
    let mut size: u64 = (1..=r).product::<u64>() << r;
    let mut i = 0;
    while i < dominant_twice.len() {
        let mut j = i;
        while j < dominant_twice.len() && dominant_twice[j] == dominant_twice[i] {
            j += 1;
        }
        let g = (j - i) as u64;
        size /= (1..=g).product::<u64>();
        if dominant_twice[i] == 0 {
            size >>= g;
        }
        i = j;
    }
    size
}

/// All distinct images of a dominant vector under signed permutations.
pub(crate) fn orbit(dominant_twice: &[i64]) -> Vec<Vec<i64>> {
    let mut perm: Vec<i64> = dominant_twice.to_vec();
    perm.sort_unstable();
    let mut out = Vec::new();
    loop {
        let nonzero: Vec<usize> = (0..perm.len()).filter(|&k| perm[k] != 0).collect();
        for mask in 0u32..(1 << nonzero.len()) {
            let mut v = perm.clone();
            for (bit, &k) in nonzero.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    v[k] = -v[k];
                }
            }
            out.push(v);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Dominant weights μ ≤ λ (same parity class, λ − μ a nonnegative root combination).
pub(crate) fn dominant_below(lambda: &[i64]) -> Vec<Vec<i64>> {
    fn go(lambda: &[i64], prefix: &mut Vec<i64>, slack: i64, out: &mut Vec<Vec<i64>>) {
        let i = prefix.len();
        if i == lambda.len() {
            out.push(prefix.clone());
            return;
        }
        let parity = lambda[0].rem_euclid(2);
        let cap = if i == 0 { lambda[0] } else { prefix[i - 1] };
        let cap = cap.min(slack + lambda[i]);
        let mut m = parity;
        while m <= cap {
            prefix.push(m);
            go(lambda, prefix, slack + lambda[i] - m, out);
            prefix.pop();
            m += 2;
        }
    }
    let mut out = Vec::new();
    go(lambda, &mut Vec::new(), 0, &mut out);
    out
}

fn height_below(lambda: &[i64], mu: &[i64]) -> i64 {
    let mut partial = 0;
    let mut height = 0;
    for (l, m) in lambda.iter().zip(mu) {
        partial += l - m;
        height += partial;
    }
    height
}

type MultTable = Arc<BTreeMap<Weight, u64>>;
type WeightSystem = Arc<Vec<(Vec<i64>, u64)>>;

fn mult_cache() -> &'static RwLock<HashMap<Weight, MultTable>> {
    static CACHE: OnceLock<RwLock<HashMap<Weight, MultTable>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn system_cache() -> &'static RwLock<HashMap<Weight, WeightSystem>> {
    static CACHE: OnceLock<RwLock<HashMap<Weight, WeightSystem>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Multiplicities of the dominant weights of V_λ (Freudenthal's formula, memoized).
pub fn weight_multiplicities(lambda: &Weight) -> MultTable {
    if let Some(hit) = mult_cache().read().unwrap().get(lambda) {
        return hit.clone();
    }
    let table = Arc::new(freudenthal(lambda));
    mult_cache()
        .write()
        .unwrap()
        .entry(lambda.clone())
        .or_insert(table)
        .clone()
}

fn freudenthal(lambda: &Weight) -> BTreeMap<Weight, u64> {
    let r = lambda.rank();
    let rho = rho_twice(r);
    let roots: Vec<Vec<i64>> = positive_roots(r)
        .into_iter()
        .map(|a| a.into_iter().map(|x| 2 * x).collect())
        .collect();
    let lam = lambda.twice();
    let norm = |v: &[i64]| -> i64 { v.iter().zip(&rho).map(|(a, b)| (a + b) * (a + b)).sum() };
    let top = norm(lam);
    let mut doms = dominant_below(lam);
    doms.sort_by_key(|mu| height_below(lam, mu));
    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    for mu in doms {
        if mu.as_slice() == lam {
            mult.insert(mu, 1);
            continue;
        }
        let denom = top - norm(&mu);
        let mut sum: i128 = 0;
        for alpha in &roots {
            let mut nu = mu.clone();
            loop {
                for (x, a) in nu.iter_mut().zip(alpha) {
                    *x += a;
                }
                let m = mult.get(&dominant_conjugate(&nu)).copied().unwrap_or(0);
                if m == 0 {
                    break;
                }
                sum += m as i128 * dot(&nu, alpha) as i128;
            }
        }
        let m = 2 * sum / denom as i128;
        debug_assert_eq!(2 * sum % denom as i128, 0);
        if m > 0 {
            mult.insert(mu, m as u64);
        }
    }
    mult.into_iter()
        .map(|(k, v)| (Weight::from_twice_unchecked(k), v))
        .collect()
}

/// Every weight of V_λ (doubled coordinates) with its multiplicity.
pub fn weight_system(lambda: &Weight) -> WeightSystem {
    if let Some(hit) = system_cache().read().unwrap().get(lambda) {
        return hit.clone();
    }
    let mut all = Vec::new();
    for (mu, m) in weight_multiplicities(lambda).iter() {
        for v in orbit(mu.twice()) {
            all.push((v, *m));
        }
    }
    let all = Arc::new(all);
    system_cache()
        .write()
        .unwrap()
        .entry(lambda.clone())
        .or_insert(all)
        .clone()
}

/// Dimension of V_λ recomputed from the weight system.
pub fn dim_from_multiplicities(lambda: &Weight) -> u64 {
    weight_multiplicities(lambda)
        .iter()
        .map(|(mu, m)| orbit_size(mu.twice()) * m)
        .sum()
}

pub(crate) fn weyl_dim_u64(lambda: &Weight) -> u64 {
    weyl_dim(lambda).to_u64().unwrap_or(u64::MAX)
}
