//! Modules viewed as free Z-modules: intersections and subgroup indices.
//!
//! Vectors of `L^n` are flattened to `Q^(d·n)` through their θ-power coordinates
//! (entry-major), so lattices coming from different modules share one reference
//! basis and no commensurateness assumption is needed to compare them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coincidence::{image, oc_membership, Isometry};
use crate::error::{Error, Result};
use crate::hnf;
use crate::numfield::linalg::{self, SpanSolver};
use crate::numfield::{FieldElement, Rational};
use crate::smodule::SModule;

/// A free Z-module of rank `r` inside `Q^dim`, given by `r` independent generator columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZLattice {
    dim: usize,
    gens: Vec<Vec<Rational>>,
}

/// θ-power coordinates of a vector, entry by entry.
pub fn flatten(v: &[FieldElement]) -> Vec<Rational> {
    v.iter().flat_map(|x| x.coords().iter().cloned()).collect()
}

fn common_denominator<'a>(cols: impl Iterator<Item = &'a Vec<Rational>>) -> BigInt {
    cols.flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

fn scale_to_integers(cols: &[Vec<Rational>], denom: &BigInt) -> Vec<Vec<BigInt>> {
    let d = Rational::from_integer(denom.clone());
    cols.iter()
        .map(|c| c.iter().map(|q| (q * &d).to_integer()).collect())
        .collect()
}

impl ZLattice {
    /// Fails with `Singular` if the generators are dependent.
    pub fn new(dim: usize, gens: Vec<Vec<Rational>>) -> Result<Self> {
        if gens.iter().any(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch("generator length".into()));
        }
        if linalg::rank(dim, &gens) != gens.len() {
            return Err(Error::Singular);
        }
        Ok(ZLattice { dim, gens })
    }

    /// Z-span of an arbitrary finite generating set, in canonical form.
    pub fn span(dim: usize, gens: &[Vec<Rational>]) -> Self {
        let denom = common_denominator(gens.iter());
        let ints = scale_to_integers(gens, &denom);
        let h = hnf::hermite(&hnf::from_columns(&ints, dim), ints.len());
        let d = Rational::from_integer(denom);
        let gens = h
            .basis_columns()
            .into_iter()
            .map(|c| c.into_iter().map(|x| Rational::from_integer(x) / &d).collect())
            .collect();
        ZLattice { dim, gens }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Vec<Rational>] {
        &self.gens
    }

    /// Canonical (Hermite) basis.
    pub fn canonical(&self) -> ZLattice {
        ZLattice::span(self.dim, &self.gens)
    }

    pub fn same_lattice(&self, other: &ZLattice) -> bool {
        self.dim == other.dim && self.canonical().gens == other.canonical().gens
    }

    /// Rational coordinates of `v` in the generators, if `v` is in their Q-span.
    pub fn rational_coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        SpanSolver::new(self.dim, &self.gens)?.coordinates(v)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.rational_coordinates(v)
            .is_some_and(|c| c.iter().all(Rational::is_integer))
    }
}

/// The module's Z-generators `β_j γ_i`, flattened.
pub fn to_zlattice(m: &SModule) -> ZLattice {
    let d = m.field().degree();
    let gens = m.z_generators().iter().map(|g| flatten(g)).collect();
    ZLattice::new(d * m.dim(), gens).expect("Z-generators of a free module are independent")
}

/// `A ∩ B` from the integer kernel of `[A | −B]`.
pub fn intersect(a: &ZLattice, b: &ZLattice) -> Result<ZLattice> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(format!("lattices in Q^{} and Q^{}", a.dim, b.dim)));
    }
    let denom = common_denominator(a.gens.iter().chain(&b.gens));
    let ai = scale_to_integers(&a.gens, &denom);
    let bi = scale_to_integers(&b.gens, &denom);
    let mut cols = ai.clone();
    cols.extend(bi.iter().map(|c| c.iter().map(|x| -x).collect::<Vec<_>>()));
    let h = hnf::hermite(&hnf::from_columns(&cols, a.dim), cols.len());
    let d = Rational::from_integer(denom);
    let gens: Vec<Vec<Rational>> = h
        .kernel_columns()
        .iter()
        .map(|k| {
            (0..a.dim)
                .map(|row| {
                    let s: BigInt = ai.iter().zip(k).map(|(col, x)| &col[row] * x).sum();
                    Rational::from_integer(s) / &d
                })
                .collect()
        })
        .collect();
    Ok(ZLattice::span(a.dim, &gens))
}

/// `[sup : sub]`, which requires `sub ⊆ sup` of equal rank.
pub fn index(sub: &ZLattice, sup: &ZLattice) -> Result<BigInt> {
    if sub.dim != sup.dim || sub.rank() != sup.rank() {
        return Err(Error::NotASublattice);
    }
    let solver = SpanSolver::new(sup.dim, &sup.gens).ok_or(Error::Singular)?;
    let mut columns = Vec::with_capacity(sub.rank());
    for g in &sub.gens {
        let c = solver.coordinates(g).ok_or(Error::NotASublattice)?;
        if !c.iter().all(Rational::is_integer) {
            return Err(Error::NotASublattice);
        }
        columns.push(c);
    }
    let rows: Vec<Vec<Rational>> = (0..sub.rank()).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let det = linalg::determinant(&rows);
    if det.is_zero() {
        return Err(Error::NotASublattice);
    }
    Ok(det.abs().to_integer())
}

/// Both coincidence indices `[Γ : Γ ∩ fΓ]` and `[fΓ : Γ ∩ fΓ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoincidenceIndices {
    pub in_module: BigInt,
    pub in_image: BigInt,
}

pub fn coincidence_indices(m: &SModule, f: &Isometry) -> Result<CoincidenceIndices> {
    let verdict = oc_membership(m, f)?;
    if let Some(entry) = verdict.failing_entry {
        return Err(Error::NotInOC(entry));
    }
    let a = to_zlattice(m);
    let b = to_zlattice(&image(m, f)?);
    let c = intersect(&a, &b)?;
    Ok(CoincidenceIndices {
        in_module: index(&c, &a)?,
        in_image: index(&c, &b)?,
    })
}

/// `Σ = [Γ : Γ ∩ fΓ]`.
pub fn coincidence_index(m: &SModule, f: &Isometry) -> Result<BigInt> {
    Ok(coincidence_indices(m, f)?.in_module)
}
