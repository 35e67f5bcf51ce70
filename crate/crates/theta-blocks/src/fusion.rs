//! Tensor multiplicities, Kac–Walton fusion and genus-g block dimensions.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootsys::{fold_finite, rho_twice, weight_system, weyl_dim_u64, Weight};
use crate::weights::enumerate_level;

/// Version tag written into cache headers.
pub const CACHE_VERSION: u32 = 1;

/// Folds a ρ-shifted vector into the fundamental alcove of the shifted
/// affine Weyl group at shifted level `twice_k / 2`.
pub(crate) fn fold_affine(v: &[i64], twice_k: i64) -> Option<(Vec<i64>, i32)> {
    let mut v = v.to_vec();
    let mut sign = 1;
    loop {
        let (mut w, s) = fold_finite(&v)?;
        sign *= s;
        let t = w[0] + w[1];
        if t < twice_k {
            return Some((w, sign));
        }
        if t == twice_k {
            return None;
        }
        let shift = t - twice_k;
        w[0] -= shift;
        w[1] -= shift;
        sign = -sign;
        v = w;
    }
}

fn check_rank(lambda: &Weight, mu: &Weight) -> Result<()> {
    if lambda.rank() != mu.rank() {
        return Err(Error::LengthMismatch(lambda.rank(), mu.rank()));
    }
    Ok(())
}

/// Racah–Speiser/Klimyk alternation over the weight system of the smaller factor.
fn alternate(lambda: &Weight, mu: &Weight, fold: impl Fn(&[i64]) -> Option<(Vec<i64>, i32)>) -> BTreeMap<Weight, u64> {
    let (big, small) = if weyl_dim_u64(lambda) >= weyl_dim_u64(mu) {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let rho = rho_twice(big.rank());
    let base: Vec<i64> = big.twice().iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut acc: HashMap<Vec<i64>, i64> = HashMap::new();
    let mut v = vec![0; base.len()];
    for (kappa, m) in weight_system(small).iter() {
        for k in 0..v.len() {
            v[k] = base[k] + kappa[k];
        }
        if let Some((image, sign)) = fold(&v) {
            *acc.entry(image).or_insert(0) += sign as i64 * *m as i64;
        }
    }
    acc.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(image, c)| {
            assert!(c > 0, "negative multiplicity {c} in alternation");
            let nu = image.iter().zip(&rho).map(|(a, b)| a - b).collect();
            (Weight::from_twice_unchecked(nu), c as u64)
        })
        .collect()
}

/// Classical decomposition V_λ ⊗ V_μ = ⊕ V_ν^{⊕N}.
pub fn tensor_decompose(lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u64>> {
    check_rank(lambda, mu)?;
    Ok(alternate(lambda, mu, fold_finite))
}

/// dim Hom(V_λ ⊗ V_μ ⊗ V_ν, ℂ); every B_r module is self-dual.
pub fn tensor_multiplicity(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
    check_rank(lambda, nu)?;
    Ok(tensor_decompose(lambda, mu)?.get(nu).copied().unwrap_or(0))
}

/// Level-ℓ fusion product of two weights by Kac–Walton folding.
pub fn fusion_product(lambda: &Weight, mu: &Weight, level: u32) -> Result<BTreeMap<Weight, u64>> {
    check_rank(lambda, mu)?;
    for w in [lambda, mu] {
        crate::weights::check_level(w, level)?;
    }
    let r = lambda.rank() as i64;
    let twice_k = 2 * (level as i64 + 2 * r - 1);
    Ok(alternate(lambda, mu, |v| fold_affine(v, twice_k)))
}

/// dim of the genus-zero three-point block V*_{λ,μ,ν} at level ℓ.
pub fn fusion_multiplicity(lambda: &Weight, mu: &Weight, nu: &Weight, level: u32) -> Result<u64> {
    check_rank(lambda, nu)?;
    crate::weights::check_level(nu, level)?;
    Ok(fusion_product(lambda, mu, level)?.get(nu).copied().unwrap_or(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Source {
    KacWalton,
    LevelOne,
}

type Row = Arc<Vec<(usize, u64)>>;

/// Fusion multiplicities N_{λμ}^ν at a fixed rank and level.
///
/// Rows N_{λμ}^• are computed on demand and memoized; [`FusionTable::complete`]
/// fills every row in parallel.
#[derive(Debug)]
pub struct FusionTable {
    rank: usize,
    level: u32,
    weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
    source: Source,
    rows: RwLock<HashMap<(usize, usize), Row>>,
}

impl FusionTable {
    /// An empty Kac–Walton table for so(2r+1) at level ℓ.
    pub fn new(rank: usize, level: u32) -> Result<Self> {
        let weights: Vec<Weight> = enumerate_level(rank, level)?.into_iter().map(|lw| lw.weight).collect();
        Ok(Self::with_weights(rank, level, weights, Source::KacWalton))
    }

    fn with_weights(rank: usize, level: u32, weights: Vec<Weight>, source: Source) -> Self {
        let index = weights.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Self {
            rank,
            level,
            weights,
            index,
            source,
            rows: RwLock::new(HashMap::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// The weights of P_ℓ in enumeration order (ω₀ first).
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Position of a weight in [`FusionTable::weights`].
    pub fn index_of(&self, w: &Weight) -> Result<usize> {
        if w.rank() != self.rank {
            return Err(Error::LengthMismatch(w.rank(), self.rank));
        }
        self.index.get(w).copied().ok_or_else(|| Error::AboveLevel {
            weight: w.to_string(),
            level: self.level,
        })
    }

    fn compute_row(&self, i: usize, j: usize) -> Vec<(usize, u64)> {
        match self.source {
            Source::KacWalton => {
                let product =
                    fusion_product(&self.weights[i], &self.weights[j], self.level).expect("table weights lie in P_ℓ");
                product.into_iter().map(|(nu, n)| (self.index[&nu], n)).collect()
            }
            Source::LevelOne => level_one_row(i, j),
        }
    }

    /// The nonzero entries N_{ij}^k as (k, N) pairs.
    pub fn row(&self, i: usize, j: usize) -> Row {
        let key = (i.min(j), i.max(j));
        if let Some(row) = self.rows.read().unwrap().get(&key) {
            return row.clone();
        }
        let row = Arc::new(self.compute_row(key.0, key.1));
        self.rows.write().unwrap().entry(key).or_insert(row).clone()
    }

    /// N(λ, μ, ν).
    pub fn get(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
        let (i, j, k) = (self.index_of(lambda)?, self.index_of(mu)?, self.index_of(nu)?);
        Ok(self.entry(i, j, k))
    }

    /// N by indices.
    pub fn entry(&self, i: usize, j: usize, k: usize) -> u64 {
        self.row(i, j)
            .iter()
            .find(|(c, _)| *c == k)
            .map(|(_, n)| *n)
            .unwrap_or(0)
    }

    /// Fills every row; results are independent of scheduling.
    pub fn complete(&self) {
        let n = self.weights.len();
        let missing: Vec<(usize, usize)> = {
            let rows = self.rows.read().unwrap();
            (0..n)
                .flat_map(|i| (i..n).map(move |j| (i, j)))
                .filter(|key| !rows.contains_key(key))
                .collect()
        };
        let computed: Vec<((usize, usize), Vec<(usize, u64)>)> = missing
            .into_par_iter()
            .map(|(i, j)| ((i, j), self.compute_row(i, j)))
            .collect();
        let mut rows = self.rows.write().unwrap();
        for (key, row) in computed {
            rows.entry(key).or_insert_with(|| Arc::new(row));
        }
    }

    fn multiply(&self, v: &[BigUint], j: usize) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); v.len()];
        for (a, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for &(c, n) in self.row(a, j).iter() {
                out[c] += coeff * n;
            }
        }
        out
    }

    fn indices(&self, weights: &[Weight]) -> Result<Vec<usize>> {
        weights.iter().map(|w| self.index_of(w)).collect()
    }

    /// Genus-zero n-point dimension by left-fold contraction in input order.
    pub fn dim_genus0(&self, weights: &[Weight]) -> Result<BigUint> {
        self.dim_genus_g(0, weights)
    }

    /// N_g(λ⃗) = Σ_μ N_{g−1}(λ⃗, μ, μ), with genus zero given by contraction.
    pub fn dim_genus_g(&self, genus: u32, weights: &[Weight]) -> Result<BigUint> {
        let idx = self.indices(weights)?;
        let n = self.weights.len();
        if genus > 0 {
            self.complete();
        }
        let mut v = vec![BigUint::zero(); n];
        v[0] = BigUint::from(1u32);
        for &j in &idx {
            v = self.multiply(&v, j);
        }
        for _ in 0..genus {
            let mut next = vec![BigUint::zero(); n];
            for mu in 0..n {
                let once = self.multiply(&v, mu);
                for (acc, x) in next.iter_mut().zip(self.multiply(&once, mu)) {
                    *acc += x;
                }
            }
            v = next;
        }
        Ok(v.swap_remove(0))
    }

    /// Writes the complete table in the cache format.
    pub fn to_cache_string(&self) -> String {
        self.complete();
        let mut lines = Vec::new();
        let rows = self.rows.read().unwrap();
        for ((i, j), row) in rows.iter() {
            for &(k, n) in row.iter() {
                lines.push(format!(
                    "{}|{}|{}|{}",
                    self.weights[*i], self.weights[*j], self.weights[k], n
                ));
            }
        }
        lines.sort();
        let mut out = String::new();
        writeln!(out, "B {} level {} version {}", self.rank, self.level, CACHE_VERSION).unwrap();
        for line in lines {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Rebuilds a complete table from the cache format.
    pub fn from_cache_string(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Cache("empty cache file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::Cache(format!("bad header {header:?}")))
        };
        if fields.len() != 6 || fields[0] != "B" || fields[2] != "level" || fields[4] != "version" {
            return Err(Error::Cache(format!("bad header {header:?}")));
        }
        let (rank, level, version) = (parse(fields[1])?, parse(fields[3])?, parse(fields[5])?);
        if version != CACHE_VERSION as u64 {
            return Err(Error::Cache(format!("cache version {version} is stale")));
        }
        let table = Self::new(rank as usize, level as u32)?;
        let n = table.weights.len();
        let mut rows: HashMap<(usize, usize), Vec<(usize, u64)>> =
            (0..n).flat_map(|i| (i..n).map(move |j| ((i, j), Vec::new()))).collect();
        for line in lines {
            let parts: Vec<&str> = line.split('|').collect();
            if parts.len() != 4 {
                return Err(Error::Cache(format!("bad line {line:?}")));
            }
            let w = |s: &str| -> Result<usize> {
                table.index_of(&s.parse::<Weight>().map_err(|e| Error::Cache(e.to_string()))?)
            };
            let (i, j, k) = (w(parts[0])?, w(parts[1])?, w(parts[2])?);
            let count = parts[3]
                .parse::<u64>()
                .map_err(|_| Error::Cache(format!("bad count in {line:?}")))?;
            rows.get_mut(&(i.min(j), i.max(j)))
                .ok_or_else(|| Error::Cache(format!("bad key in {line:?}")))?
                .push((k, count));
        }
        *table.rows.write().unwrap() = rows
            .into_iter()
            .map(|(key, mut row)| {
                row.sort_unstable();
                (key, Arc::new(row))
            })
            .collect();
        Ok(table)
    }

    /// Loads the cached table for (r, ℓ) from `dir`, building and saving it on a miss.
    pub fn cached(dir: &Path, rank: usize, level: u32) -> Result<Self> {
        let path = dir.join(format!("B{rank}_level{level}.table"));
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(table) = Self::from_cache_string(&text) {
                if table.rank == rank && table.level == level {
                    return Ok(table);
                }
            }
        }
        let table = Self::new(rank, level)?;
        let text = table.to_cache_string();
        std::fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
        std::fs::write(&path, text).map_err(|e| Error::Cache(e.to_string()))?;
        Ok(table)
    }
}

fn level_one_row(i: usize, j: usize) -> Vec<(usize, u64)> {
    // Indices: 0 = ω₀, 1 = ω₁, 2 = ω_d.
    match (i.min(j), i.max(j)) {
        (0, k) => vec![(k, 1)],
        (1, 1) => vec![(0, 1)],
        (1, 2) => vec![(2, 1)],
        (2, 2) => vec![(0, 1), (1, 1)],
        _ => unreachable!("level-one table has three weights"),
    }
}

/// The closed-form level-one table of so(2d+1) on {ω₀, ω₁, ω_d}.
pub fn level1_table(d: usize) -> Result<FusionTable> {
    let weights = vec![
        Weight::fundamental(d, 0)?,
        Weight::fundamental(d, 1)?,
        Weight::fundamental(d, d)?,
    ];
    Ok(FusionTable::with_weights(d, 1, weights, Source::LevelOne))
}

/// Genus-zero dimension at level ℓ, computing only the rows it needs.
pub fn dim_genus0(weights: &[Weight], level: u32) -> Result<BigUint> {
    dim_genus_g(0, weights, level)
}

/// Genus-g dimension at level ℓ (level one uses the closed-form table).
pub fn dim_genus_g(genus: u32, weights: &[Weight], level: u32) -> Result<BigUint> {
    let rank = weights
        .first()
        .map(|w| w.rank())
        .ok_or_else(|| Error::InvalidWeight("rank is needed for an empty weight list".into()))?;
    let table = if level == 1 {
        level1_table(rank)?
    } else {
        FusionTable::new(rank, level)?
    };
    table.dim_genus_g(genus, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn vector_squared_in_so5() {
        let v = w("1,0");
        assert_eq!(tensor_multiplicity(&v, &v, &w("2,0")).unwrap(), 1);
        assert_eq!(tensor_multiplicity(&v, &v, &w("0,0")).unwrap(), 1);
        assert_eq!(tensor_multiplicity(&v, &v, &w("1,1")).unwrap(), 1);
        let total: u64 = tensor_decompose(&v, &v)
            .unwrap()
            .iter()
            .map(|(nu, n)| n * weyl_dim_u64(nu))
            .sum();
        assert_eq!(total, 25);
    }

    #[test]
    fn level_one_entries() {
        for d in 2..5 {
            let t = level1_table(d).unwrap();
            let (o, v, s) = (
                Weight::fundamental(d, 0).unwrap(),
                Weight::fundamental(d, 1).unwrap(),
                Weight::fundamental(d, d).unwrap(),
            );
            assert_eq!(t.get(&s, &s, &o).unwrap(), 1);
            assert_eq!(t.get(&s, &s, &v).unwrap(), 1);
            assert_eq!(t.get(&s, &s, &s).unwrap(), 0);
            assert_eq!(t.get(&v, &v, &v).unwrap(), 0);
        }
    }

    #[test]
    fn spin_square_at_level_three() {
        assert_eq!(
            fusion_multiplicity(&w("1/2,1/2"), &w("1/2,1/2"), &w("1,1"), 3).unwrap(),
            1
        );
        assert!(fusion_multiplicity(&w("3,1"), &w("0,0"), &w("3,1"), 3).is_err());
    }

    #[test]
    fn torus_counts_weights() {
        for (r, level) in [(2, 2), (2, 3), (3, 2)] {
            let t = FusionTable::new(r, level).unwrap();
            let n = t.weights().len() as u32;
            assert_eq!(t.dim_genus_g(1, &[]).unwrap(), BigUint::from(n));
        }
    }

    #[test]
    fn cache_round_trip() {
        let t = FusionTable::new(2, 2).unwrap();
        let text = t.to_cache_string();
        assert!(text.starts_with("B 2 level 2 version 1\n"));
        let back = FusionTable::from_cache_string(&text).unwrap();
        assert_eq!(back.to_cache_string(), text);
        let stale = text.replace("version 1", "version 0");
        assert!(FusionTable::from_cache_string(&stale).is_err());
    }
}
