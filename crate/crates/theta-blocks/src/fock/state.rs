//! Fermion generators, wedge states and Clifford actions.

use std::collections::BTreeMap;
use std::fmt;

use super::qsqrt2::QSqrt2;
use crate::error::{Error, Result};

/// A tensor index (j, p) with −r ≤ j ≤ r and −s ≤ p ≤ s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub j: i32,
    pub p: i32,
}

impl Label {
    pub const ZERO: Label = Label { j: 0, p: 0 };

    pub fn new(j: i32, p: i32) -> Self {
        Self { j, p }
    }

    pub fn neg(self) -> Self {
        Self { j: -self.j, p: -self.p }
    }

    /// (j, p) > 0 means j > 0, or j = 0 and p > 0.
    pub fn is_positive(self) -> bool {
        self.j > 0 || (self.j == 0 && self.p > 0)
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.j, self.p)
    }
}

/// The generator φ^{j,p}(mode2/2). Lower-index generators φ_{j,p} are φ^{−j,−p}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub mode2: i32,
    pub label: Label,
}

impl Gen {
    /// φ^{j,p}(mode2/2).
    pub fn upper(j: i32, p: i32, mode2: i32) -> Self {
        Self {
            mode2,
            label: Label::new(j, p),
        }
    }

    /// φ_{j,p}(mode2/2) = φ^{−j,−p}(mode2/2).
    pub fn lower(j: i32, p: i32, mode2: i32) -> Self {
        Self::upper(-j, -p, mode2)
    }

    /// The generator with nonzero anticommutator against this one.
    pub fn partner(self) -> Self {
        Self {
            mode2: -self.mode2,
            label: self.label.neg(),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = if self.mode2 % 2 == 0 {
            format!("{}", self.mode2 / 2)
        } else {
            format!("{}/2", self.mode2)
        };
        write!(f, "phi^{{{}}}({mode})", self.label)
    }
}

/// Which Fock module a state lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    /// Half-integer modes.
    Ns,
    /// Integer modes; zero modes with negative labels create.
    Ramond,
    /// Integer modes with the opposite zero-mode polarisation: positive labels create.
    RamondOpp,
}

impl Sector {
    pub fn admits(self, mode2: i32) -> bool {
        match self {
            Sector::Ns => mode2.rem_euclid(2) == 1,
            Sector::Ramond | Sector::RamondOpp => mode2.rem_euclid(2) == 0,
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::Ns => "NS",
            Sector::Ramond => "R",
            Sector::RamondOpp => "R-opp",
        })
    }
}

/// A wedge of creation generators, strictly increasing in (mode, j, p).
pub type Wedge = Vec<Gen>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Action {
    Create,
    Annihilate,
    Scalar,
}

fn classify(sector: Sector, g: Gen) -> Result<Action> {
    if !sector.admits(g.mode2) {
        return Err(Error::Sector(format!("{g} in the {sector} sector")));
    }
    Ok(match g.mode2.signum() {
        -1 => Action::Create,
        1 => Action::Annihilate,
        _ if g.label.is_zero() => Action::Scalar,
        _ => {
            let create = match sector {
                Sector::Ramond => !g.label.is_positive(),
                _ => g.label.is_positive(),
            };
            if create {
                Action::Create
            } else {
                Action::Annihilate
            }
        }
    })
}

/// True for the generators that create in this sector.
pub fn is_creation(sector: Sector, g: Gen) -> Result<bool> {
    Ok(classify(sector, g)? == Action::Create)
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Action of one generator on one wedge: (coefficient, result) or None for zero.
pub(crate) fn gen_on_wedge(sector: Sector, g: Gen, w: &[Gen]) -> Result<Option<(QSqrt2, Wedge)>> {
    Ok(match classify(sector, g)? {
        Action::Create => match w.binary_search(&g) {
            Ok(_) => None,
            Err(pos) => {
                let mut out = Vec::with_capacity(w.len() + 1);
                out.extend_from_slice(&w[..pos]);
                out.push(g);
                out.extend_from_slice(&w[pos..]);
                Some((QSqrt2::from_int(sign(pos)), out))
            }
        },
        Action::Annihilate => match w.binary_search(&g.partner()) {
            Ok(pos) => {
                let mut out = w.to_vec();
                out.remove(pos);
                Some((QSqrt2::from_int(sign(pos)), out))
            }
            Err(_) => None,
        },
        Action::Scalar => Some((QSqrt2::inv_sqrt2().scale_int(sign(w.len())), w.to_vec())),
    })
}

/// A finite ℚ(√2)-combination of wedges in one sector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FockVector {
    sector: Sector,
    terms: BTreeMap<Wedge, QSqrt2>,
}

impl FockVector {
    pub fn zero(sector: Sector) -> Self {
        Self {
            sector,
            terms: BTreeMap::new(),
        }
    }

    pub fn vacuum(sector: Sector) -> Self {
        Self::monomial(sector, Vec::new())
    }

    /// A single wedge, given already in canonical order.
    pub fn from_wedge(sector: Sector, w: Wedge) -> Self {
        debug_assert!(w.windows(2).all(|p| p[0] < p[1]));
        Self::monomial(sector, w)
    }

    fn monomial(sector: Sector, w: Wedge) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, QSqrt2::one());
        Self { sector, terms }
    }

    /// g₁ g₂ ⋯ g_n applied to the vacuum (g_n acts first).
    pub fn from_gens(sector: Sector, gens: &[Gen]) -> Result<Self> {
        let mut v = Self::vacuum(sector);
        for g in gens.iter().rev() {
            v = v.apply_gen(*g)?;
        }
        Ok(v)
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn terms(&self) -> &BTreeMap<Wedge, QSqrt2> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &[Gen]) -> QSqrt2 {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Wedge, c: &QSqrt2) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FockVector, c: &QSqrt2) {
        debug_assert_eq!(self.sector, other.sector);
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &(x * c));
        }
    }

    pub fn scaled(&self, c: &QSqrt2) -> FockVector {
        let mut out = FockVector::zero(self.sector);
        out.add_scaled(self, c);
        out
    }

    pub fn plus(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &QSqrt2::one());
        out
    }

    pub fn minus(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &QSqrt2::from_int(-1));
        out
    }

    /// Apply one generator (Clifford action).
    pub fn apply_gen(&self, g: Gen) -> Result<FockVector> {
        let mut out = FockVector::zero(self.sector);
        for (w, c) in &self.terms {
            if let Some((k, w2)) = gen_on_wedge(self.sector, g, w)? {
                out.add_term(w2, &(&k * c));
            }
        }
        Ok(out)
    }

    /// Largest |mode| (doubled) occurring in any wedge.
    pub fn depth2(&self) -> i32 {
        self.terms
            .keys()
            .flat_map(|w| w.iter().map(|g| g.mode2.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Largest total energy (doubled): the sum of −mode over a wedge.
    pub fn energy2(&self) -> i32 {
        self.terms
            .keys()
            .map(|w| w.iter().map(|g| -g.mode2).sum::<i32>())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if w.is_empty() {
                write!(f, "·1")?;
            }
            for g in w {
                write!(f, "·{g}")?;
            }
        }
        Ok(())
    }
}

/// Clifford action of one generator on a vector.
pub fn clifford_apply(g: Gen, v: &FockVector) -> Result<FockVector> {
    v.apply_gen(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn creation_then_contraction() {
        let g = Gen::lower(1, 0, -1);
        let v = clifford_apply(g, &FockVector::vacuum(Sector::Ns)).unwrap();
        assert_eq!(v.terms().len(), 1);
        let w = FockVector::from_gens(Sector::Ns, &[Gen::lower(1, 1, -1), Gen::upper(2, 0, -1)]).unwrap();
        let back = clifford_apply(Gen::upper(1, 1, 1), &w).unwrap();
        assert_eq!(
            back,
            FockVector::from_gens(Sector::Ns, &[Gen::upper(2, 0, -1)]).unwrap()
        );
        assert!(clifford_apply(g, &v).unwrap().is_zero());
    }

    #[test]
    fn zero_mode_scalar() {
        let v = FockVector::from_gens(
            Sector::Ramond,
            &[Gen::lower(1, -1, 0), Gen::lower(2, -1, 0), Gen::lower(1, -2, 0)],
        )
        .unwrap();
        let out = clifford_apply(Gen::upper(0, 0, 0), &v).unwrap();
        assert_eq!(out.scaled(&QSqrt2::sqrt2()), v.scaled(&QSqrt2::from_int(-1)));
        let sq = clifford_apply(Gen::upper(0, 0, 0), &out).unwrap();
        assert_eq!(sq, v.scaled(&QSqrt2::frac(1, 2)));
    }

    #[test]
    fn sector_mismatch() {
        let v = FockVector::vacuum(Sector::Ns);
        assert!(matches!(clifford_apply(Gen::upper(1, 0, 0), &v), Err(Error::Sector(_))));
    }

    #[test]
    fn anticommutation() {
        let v = FockVector::from_gens(Sector::Ramond, &[Gen::lower(1, -1, 0), Gen::upper(2, 1, -2)]).unwrap();
        let gens = [
            Gen::upper(1, 0, 0),
            Gen::lower(1, 0, 0),
            Gen::upper(0, 0, 0),
            Gen::upper(2, 1, 2),
            Gen::lower(2, 1, -2),
        ];
        for &x in &gens {
            for &y in &gens {
                let xy = v.apply_gen(y).unwrap().apply_gen(x).unwrap();
                let yx = v.apply_gen(x).unwrap().apply_gen(y).unwrap();
                let delta = i64::from(x.partner() == y);
                assert_eq!(xy.plus(&yx), v.scaled(&QSqrt2::from_int(delta)), "{x} {y}");
            }
        }
    }
}
