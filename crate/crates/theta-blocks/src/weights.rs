//! Level-ℓ weights, the diagram automorphism σ and Young-diagram calculus.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rootsys::Weight;

/// Whether a weight integrates to SO(2r+1) or only to the spin group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    So,
    Spin,
}

/// A weight together with the level bound it was enumerated at.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelWeight {
    pub weight: Weight,
    pub level_bound: u32,
    pub kind: Kind,
}

impl LevelWeight {
    pub fn new(weight: Weight, level_bound: u32) -> Result<Self> {
        check_level(&weight, level_bound)?;
        let kind = if weight.is_so() { Kind::So } else { Kind::Spin };
        Ok(Self {
            weight,
            level_bound,
            kind,
        })
    }
}

pub(crate) fn check_level(weight: &Weight, level: u32) -> Result<()> {
    if weight.rank() < 2 {
        return Err(Error::Rank(weight.rank()));
    }
    if weight.level() > level {
        return Err(Error::AboveLevel {
            weight: weight.to_string(),
            level,
        });
    }
    Ok(())
}

/// All dominant weights of so(2r+1) with b₁ + b₂ ≤ ℓ.
///
/// Order: SO-weights first, then spin weights, each lexicographic in the
/// doubled coordinates; ω₀ is always first.
pub fn enumerate_level(r: usize, level: u32) -> Result<Vec<LevelWeight>> {
    if r < 2 {
        return Err(Error::Rank(r));
    }
    let mut out = Vec::new();
    for parity in [0i64, 1] {
        let mut family = Vec::new();
        let mut prefix = Vec::with_capacity(r);
        collect(r, 2 * level as i64, parity, &mut prefix, &mut family);
        family.sort();
        out.extend(family.into_iter().map(|t| LevelWeight {
            weight: Weight::from_twice_unchecked(t),
            level_bound: level,
            kind: if parity == 0 { Kind::So } else { Kind::Spin },
        }));
    }
    Ok(out)
}

fn collect(r: usize, twice_level: i64, parity: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let i = prefix.len();
    if i == r {
        out.push(prefix.clone());
        return;
    }
    let cap = match i {
        0 => twice_level - parity,
        1 => prefix[0].min(twice_level - prefix[0]),
        _ => prefix[i - 1],
    };
    let mut t = parity;
    while t <= cap {
        prefix.push(t);
        collect(r, twice_level, parity, prefix, out);
        prefix.pop();
        t += 2;
    }
}

/// The affine diagram automorphism at level ℓ: a₁ ↦ ℓ − (a₁ + 2(a₂+⋯+a_{r−1}) + a_r).
pub fn sigma(lambda: &Weight, level: u32) -> Result<Weight> {
    check_level(lambda, level)?;
    let mut a = lambda.omega_coords();
    let r = a.len();
    let inner: i64 = a[1..r - 1].iter().sum();
    a[0] = level as i64 - (a[0] + 2 * inner + a[r - 1]);
    Ok(Weight::from_omega(&a).expect("σ maps P_ℓ into P_ℓ"))
}

/// A Young diagram: weakly decreasing positive row lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{rows:?}: rows must be weakly decreasing")));
        }
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Row lengths with trailing zeros removed.
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Row i (0-based), zero beyond the last row.
    pub fn row(&self, i: usize) -> usize {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// |Y|, the number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.rows.len() <= rows && self.row(0) <= cols
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        col >= 1 && row >= 1 && self.row(row - 1) >= col
    }

    fn check_box(&self, rows: usize, cols: usize) -> Result<()> {
        if self.fits(rows, cols) {
            Ok(())
        } else {
            Err(Error::Box {
                diagram: self.to_string(),
                rows,
                cols,
            })
        }
    }

    pub fn transpose(&self) -> Self {
        let cols = self.row(0);
        let rows = (1..=cols)
            .map(|c| self.rows.iter().filter(|&&len| len >= c).count())
            .collect();
        Self { rows }
    }

    /// Complement in the rows×cols box, rotated back to a diagram.
    pub fn complement(&self, rows: usize, cols: usize) -> Result<Self> {
        self.check_box(rows, cols)?;
        Self::new((0..rows).map(|i| cols - self.row(rows - 1 - i)).collect())
    }

    /// Y* = complement of Yᵀ in the s×r box, for Y in the r×s box.
    pub fn star(&self, r: usize, s: usize) -> Result<Self> {
        self.check_box(r, s)?;
        self.transpose().complement(s, r)
    }

    /// The weight Y (SO) or Y + ω_r (spin) of rank r.
    pub fn to_weight(&self, r: usize, spin: bool) -> Result<Weight> {
        if r < 2 {
            return Err(Error::Rank(r));
        }
        if self.rows.len() > r {
            return Err(Error::Box {
                diagram: self.to_string(),
                rows: r,
                cols: usize::MAX,
            });
        }
        let shift = i64::from(spin);
        Weight::from_twice((0..r).map(|i| 2 * self.row(i) as i64 + shift).collect())
    }

    /// The diagram of λ (SO) or of λ − ω_r (spin).
    pub fn from_weight(lambda: &Weight) -> Self {
        let shift = if lambda.is_so() { 0 } else { 1 };
        Self::new(lambda.twice().iter().map(|t| ((t - shift) / 2) as usize).collect())
            .expect("dominant weights give diagrams")
    }

    /// All diagrams inside the rows×cols box, in lexicographic order.
    pub fn in_box(rows: usize, cols: usize) -> Vec<Self> {
        fn go(rows: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
            if prefix.len() == rows {
                out.push(YoungDiagram::new(prefix.clone()).unwrap());
                return;
            }
            for len in 0..=cap {
                prefix.push(len);
                go(rows, len, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(rows, cols, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl FromStr for YoungDiagram {
    type Err = Error;

    /// Parses a bracketed row list such as `"[3,1]"` or `"[]"`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("diagram {s:?} must be bracketed")))?;
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let rows = inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad row {x:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }
}

/// σ-orbit type of a level-(2s+1) weight of so(2r+1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitClass {
    SoPair,
    SpinPair,
    SpinFixed,
}

pub fn sigma_orbit_class(lambda: &Weight, s: usize) -> Result<OrbitClass> {
    let level = 2 * s as u32 + 1;
    let image = sigma(lambda, level)?;
    Ok(if lambda.is_so() {
        OrbitClass::SoPair
    } else if image == *lambda {
        OrbitClass::SpinFixed
    } else {
        OrbitClass::SpinPair
    })
}

/// |𝒴_{r,s} ∖ 𝒴_{r,s−1}| = C(r+s, r) − C(r+s−1, r).
pub fn count_sigma_fixed(r: usize, s: usize) -> u64 {
    binomial(r + s, r) - binomial(r + s - 1, r)
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}
