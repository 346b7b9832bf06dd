//! The quiver and quiver representation attached to a twisting with `K^n`.

use std::collections::BTreeMap;

use super::algebras;
use super::kn::KnConditions;
use crate::error::{Error, Result};
use crate::linalg::LinearEndo;
use crate::twisting::{GammaFamily, TwistingCandidate};

/// Vertices `0..n`; an arrow `j → i` exists iff `γ_j^i ≠ 0` (loops included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    /// `(source, target)` pairs in lexicographic order.
    pub arrows: Vec<(usize, usize)>,
}

/// Every vertex carries `A`; the arrow `j → i` carries `γ_j^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub space_dim: usize,
    pub maps: BTreeMap<(usize, usize), LinearEndo>,
}

/// The admissibility conditions of the pair, grouped as splitted
/// (idempotence and row sums), unital (multiplicativity) and factorizable
/// (values at `1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Admissibility {
    pub splitted: bool,
    pub unital: bool,
    pub factorizable: bool,
}

impl Admissibility {
    pub fn holds(&self) -> bool {
        self.splitted && self.unital && self.factorizable
    }
}

impl QuiverRep {
    /// Reassembles the γ grid, with zero maps where no arrow exists.
    pub fn to_family(&self, family_like: &GammaFamily) -> Result<GammaFamily> {
        let (n, field) = (family_like.n(), family_like.field());
        let grid = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| self.maps.get(&(j, i)).cloned().unwrap_or_else(|| LinearEndo::zero(field, self.space_dim)))
                    .collect()
            })
            .collect();
        GammaFamily::new(family_like.a_arc().clone(), family_like.b_arc().clone(), grid)
    }

    pub fn admissibility(&self, family_like: &GammaFamily) -> Result<Admissibility> {
        let conds = KnConditions::evaluate(&self.to_family(family_like)?);
        Ok(Admissibility {
            splitted: conds.idempotent.is_none() && conds.row_sums.is_none(),
            unital: conds.multiplicative.is_none(),
            factorizable: conds.units.is_none(),
        })
    }
}

pub fn quiver_of(candidate: &TwistingCandidate) -> Result<(Quiver, QuiverRep)> {
    let family = candidate.family();
    let n = family.n();
    if family.b().lambda_flat() != algebras::split(family.field(), n).lambda_flat()
        || family.b().unit() != algebras::split(family.field(), n).unit()
    {
        return Err(Error::WrongShape("B must be K^n with its canonical basis"));
    }
    let mut arrows = Vec::new();
    let mut maps = BTreeMap::new();
    for j in 0..n {
        for i in 0..n {
            let g = family.gamma(j, i);
            if !g.is_zero() {
                arrows.push((j, i));
                maps.insert((j, i), g.clone());
            }
        }
    }
    Ok((Quiver { vertices: n, arrows }, QuiverRep { space_dim: family.d(), maps }))
}
