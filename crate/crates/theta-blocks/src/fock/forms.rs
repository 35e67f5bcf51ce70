//! The invariant trilinear forms on ground states.

use super::qsqrt2::QSqrt2;
use super::state::{gen_on_wedge, FockVector, Gen, Sector};
use crate::error::{Error, Result};

/// Which three-point block is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    /// Vacuum sector in the first slot.
    Psi,
    /// Odd sector in the first slot.
    PsiTilde,
}

impl std::str::FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Psi" | "psi" | "PSI" => Ok(Form::Psi),
            "PsiTilde" | "psitilde" | "PSITILDE" => Ok(Form::PsiTilde),
            other => Err(Error::Parse(format!("unknown form {other:?}"))),
        }
    }
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Form::Psi => "Psi",
            Form::PsiTilde => "PsiTilde",
        })
    }
}

fn expect_sector(v: &FockVector, sector: Sector) -> Result<()> {
    if v.sector() == sector {
        Ok(())
    } else {
        Err(Error::Sector(format!("expected {sector}, found {}", v.sector())))
    }
}

fn expect_ground(v: &FockVector) -> Result<()> {
    match v.terms().keys().flat_map(|w| w.iter()).find(|g| g.mode2 != 0) {
        Some(g) => Err(Error::NotGround(format!("{g} in a Ramond ground slot"))),
        None => Ok(()),
    }
}

/// ⟨0| g_p ⋯ g_1 v⟩ for w = g_1∧⋯∧g_p: matched wedges pair to +1.
fn pair_wedges(v: &[Gen], w: &[Gen]) -> QSqrt2 {
    if v.len() != w.len() {
        return QSqrt2::zero();
    }
    let mut cur = v.to_vec();
    let mut coeff = QSqrt2::one();
    for g in w {
        match gen_on_wedge(Sector::Ramond, *g, &cur).expect("zero modes fit the Ramond sector") {
            Some((c, next)) => {
                coeff = &coeff * &c;
                cur = next;
            }
            None => return QSqrt2::zero(),
        }
    }
    if cur.is_empty() {
        coeff
    } else {
        QSqrt2::zero()
    }
}

/// The invariant pairing of a Ramond ground state with an opposite-polarisation ground state.
pub fn psi_pair(v: &FockVector, w: &FockVector) -> Result<QSqrt2> {
    expect_sector(v, Sector::Ramond)?;
    expect_sector(w, Sector::RamondOpp)?;
    expect_ground(v)?;
    expect_ground(w)?;
    let mut total = QSqrt2::zero();
    for (wv, cv) in v.terms() {
        for (ww, cw) in w.terms() {
            let p = pair_wedges(wv, ww);
            if !p.is_zero() {
                total += &(&(cv * cw) * &p);
            }
        }
    }
    Ok(total)
}

/// Pairing after Clifford multiplication of v by the zero mode of a.
pub fn psitilde(a: &FockVector, v: &FockVector, w: &FockVector) -> Result<QSqrt2> {
    expect_sector(a, Sector::Ns)?;
    let mut total = QSqrt2::zero();
    for (wa, ca) in a.terms() {
        let g = match wa.as_slice() {
            [g] if g.mode2 == -1 => *g,
            _ => {
                return Err(Error::NotGround(format!(
                    "first slot term {} is not a single mode -1/2 generator",
                    FockVector::from_wedge(Sector::Ns, wa.clone())
                )))
            }
        };
        let zero = Gen { mode2: 0, ..g };
        let mv = v.apply_gen(zero)?;
        total += &(ca * &psi_pair(&mv, w)?);
    }
    Ok(total)
}

/// Apply a form to three ground-level slots. Parts of the first slot of the wrong
/// parity pair to zero; any other non-ground content is unreducible.
pub fn apply_form(form: Form, s1: &FockVector, s2: &FockVector, s3: &FockVector) -> Result<QSqrt2> {
    expect_sector(s1, Sector::Ns)?;
    let unreducible = |e: Error| match e {
        Error::NotGround(m) => Error::Unreducible(m),
        other => other,
    };
    match form {
        Form::Psi => {
            let mut c = QSqrt2::zero();
            for (w, x) in s1.terms() {
                match w.len() {
                    0 => c = x.clone(),
                    n if n % 2 == 1 => {}
                    _ => {
                        return Err(Error::Unreducible(format!(
                            "even non-vacuum content in the first slot: {}",
                            FockVector::from_wedge(Sector::Ns, w.clone())
                        )))
                    }
                }
            }
            if c.is_zero() {
                return Ok(c);
            }
            Ok(&c * &psi_pair(s2, s3).map_err(unreducible)?)
        }
        Form::PsiTilde => {
            let mut odd = FockVector::zero(Sector::Ns);
            for (w, x) in s1.terms() {
                if w.len() % 2 == 1 {
                    odd.add_term(w.clone(), x);
                }
            }
            if odd.is_zero() {
                return Ok(QSqrt2::zero());
            }
            psitilde(&odd, s2, s3).map_err(unreducible)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ram(sector: Sector, gens: &[Gen]) -> FockVector {
        FockVector::from_gens(sector, gens).unwrap()
    }

    #[test]
    fn matched_wedges_pair_to_one() {
        let lows = [Gen::lower(1, -1, 0), Gen::lower(2, -1, 0), Gen::lower(1, -2, 0)];
        let highs: Vec<Gen> = lows.iter().map(|g| g.partner()).collect();
        let v = ram(Sector::Ramond, &lows);
        let w = ram(Sector::RamondOpp, &highs);
        assert_eq!(psi_pair(&v, &w).unwrap(), QSqrt2::one());
        let w2 = ram(
            Sector::RamondOpp,
            &[Gen::upper(1, 1, 0), Gen::upper(2, 1, 0), Gen::upper(2, 2, 0)],
        );
        assert!(psi_pair(&v, &w2).unwrap().is_zero());
    }

    #[test]
    fn psitilde_contracts_the_added_generator() {
        let v = ram(Sector::Ramond, &[Gen::lower(1, -1, 0)]);
        let w = ram(Sector::RamondOpp, &[Gen::upper(1, -1, 0)]);
        let fv = v.apply_gen(Gen::lower(1, 0, 0)).unwrap();
        let a = ram(Sector::Ns, &[Gen::upper(1, 0, -1)]);
        assert_eq!(psitilde(&a, &fv, &w).unwrap(), QSqrt2::one());
    }

    #[test]
    fn non_ground_rejected() {
        let v = ram(Sector::Ramond, &[Gen::lower(1, -1, -2)]);
        let w = FockVector::vacuum(Sector::RamondOpp);
        assert!(matches!(psi_pair(&v, &w), Err(Error::NotGround(_))));
        let vac = FockVector::vacuum(Sector::Ns);
        assert!(matches!(
            apply_form(Form::Psi, &vac, &v, &w),
            Err(Error::Unreducible(_))
        ));
    }
}
