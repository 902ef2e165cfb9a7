//! The coefficient ring `S`: a subring of `R` that is a free Z-module of finite
//! rank, stored as a Z-basis inside its fraction field `K`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hnf::{self, Hermite};
use crate::numfield::linalg::SpanSolver;
use crate::numfield::{FieldElement, NumberField, Rational, Subfield};

#[derive(Clone, Debug)]
pub struct SRing {
    field_k: Subfield,
    zbasis: Vec<FieldElement>,
    solver: SpanSolver,
}

/// Integer vectors (after a common scaling) for the θ-coordinates of `xs`.
fn scaled_integer_columns(xs: &[FieldElement]) -> (BigInt, Vec<Vec<BigInt>>) {
    let denom = xs
        .iter()
        .flat_map(|x| x.coords())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale = Rational::from_integer(denom.clone());
    let cols = xs
        .iter()
        .map(|x| x.coords().iter().map(|c| (c * &scale).to_integer()).collect())
        .collect();
    (denom, cols)
}

/// Z-span of a finite generating set, able to decide membership.
struct GeneratedGroup {
    denom: BigInt,
    hermite: Hermite,
}

impl GeneratedGroup {
    fn new(gens: &[FieldElement]) -> Self {
        let (denom, cols) = scaled_integer_columns(gens);
        let rows = gens[0].coords().len();
        let hermite = hnf::hermite(&hnf::from_columns(&cols, rows), cols.len());
        GeneratedGroup { denom, hermite }
    }

    fn contains(&self, x: &FieldElement) -> bool {
        let scale = Rational::from_integer(self.denom.clone());
        let mut v = Vec::with_capacity(x.coords().len());
        for c in x.coords() {
            let s = c * &scale;
            if !s.is_integer() {
                return false;
            }
            v.push(s.to_integer());
        }
        self.hermite.solve(&v).is_some()
    }
}

impl SRing {
    /// Validates a candidate Z-basis of `S` inside `K`.
    ///
    /// Checks run in this order: elements lie in `K`; the Z-span contains `1` and is
    /// closed under products; each element is integral; the elements are
    /// Q-independent and span `K`.
    pub fn validate(candidate: Vec<FieldElement>, field_k: Subfield) -> Result<Self> {
        if candidate.is_empty() {
            return Err(Error::SpanMismatch("empty basis".into()));
        }
        let ambient = field_k.ambient().clone();
        if candidate.iter().any(|b| !b.field().is_same(&ambient)) {
            return Err(Error::FieldMismatch);
        }
        for (i, b) in candidate.iter().enumerate() {
            if !field_k.contains(b) {
                return Err(Error::SpanMismatch(format!("basis element {} = {b} is not in K", i + 1)));
            }
        }
        let group = GeneratedGroup::new(&candidate);
        if !group.contains(&FieldElement::one(&ambient)) {
            return Err(Error::NotARing("1 is not in the Z-span".into()));
        }
        for (i, a) in candidate.iter().enumerate() {
            for (j, b) in candidate.iter().enumerate().skip(i) {
                if !group.contains(&(a * b)) {
                    return Err(Error::NotARing(format!(
                        "product of basis elements {} and {} is not in the Z-span",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        // A ring that is a finitely generated Z-module is integral, so this only
        // fires if the checks above are wrong.
        if let Some(i) = candidate.iter().position(|b| !b.is_integral()) {
            return Err(Error::NotIntegral(i + 1));
        }
        let vectors: Vec<Vec<Rational>> = candidate.iter().map(|b| b.coords().to_vec()).collect();
        let solver = SpanSolver::new(ambient.degree(), &vectors)
            .ok_or_else(|| Error::SpanMismatch("basis is Q-linearly dependent".into()))?;
        if candidate.len() != field_k.degree() {
            return Err(Error::SpanMismatch(format!(
                "rank {} but [K:Q] = {}",
                candidate.len(),
                field_k.degree()
            )));
        }
        Ok(SRing { field_k, zbasis: candidate, solver })
    }

    /// `S = Z` inside `K = Q`.
    pub fn integers(ambient: &Arc<NumberField>) -> Self {
        SRing::validate(vec![FieldElement::one(ambient)], Subfield::rationals(ambient)).expect("Z is a ring")
    }

    pub fn field_k(&self) -> &Subfield {
        &self.field_k
    }

    pub fn ambient(&self) -> &Arc<NumberField> {
        self.field_k.ambient()
    }

    pub fn zbasis(&self) -> &[FieldElement] {
        &self.zbasis
    }

    /// Rank `s` of `S` as a Z-module.
    pub fn rank(&self) -> usize {
        self.zbasis.len()
    }

    /// Q-coordinates with respect to the Z-basis, if `x ∈ K`.
    pub fn coordinates(&self, x: &FieldElement) -> Option<Vec<Rational>> {
        if !x.field().is_same(self.ambient()) {
            return None;
        }
        self.solver.coordinates(x.coords())
    }

    /// Integer coordinates, if `x ∈ S`.
    pub fn int_coordinates(&self, x: &FieldElement) -> Option<Vec<BigInt>> {
        let c = self.coordinates(x)?;
        c.iter().all(Rational::is_integer).then(|| c.iter().map(Rational::to_integer).collect())
    }

    pub fn is_in_s(&self, x: &FieldElement) -> bool {
        self.coordinates(x).is_some_and(|c| c.iter().all(Rational::is_integer))
    }

    /// `Σ c_j β_j` for integer coefficients.
    pub fn from_int_coordinates(&self, coeffs: &[BigInt]) -> FieldElement {
        let mut acc = FieldElement::zero(self.ambient());
        for (c, b) in coeffs.iter().zip(&self.zbasis) {
            if !c.is_zero() {
                acc = &acc + &b.scale(&Rational::from_integer(c.clone()));
            }
        }
        acc
    }

    /// Least positive integer `d` with `d·x ∈ S` for every `x`, and the scaled list.
    pub fn clear_denominators(&self, xs: &[FieldElement]) -> Result<(BigInt, Vec<FieldElement>)> {
        let mut d = BigInt::one();
        for x in xs {
            let c = self.coordinates(x).ok_or(Error::NotInK)?;
            d = c.iter().fold(d, |acc, q| acc.lcm(q.denom()));
        }
        let scale = Rational::from_integer(d.clone());
        let cleared = xs.iter().map(|x| x.scale(&scale)).collect();
        Ok((d, cleared))
    }

    /// Same ambient field and the same Z-module.
    pub fn same_ring(&self, other: &SRing) -> bool {
        self.ambient().is_same(other.ambient())
            && self.rank() == other.rank()
            && other.zbasis.iter().all(|b| self.is_in_s(b))
            && self.zbasis.iter().all(|b| other.is_in_s(b))
    }
}

pub fn ring_validate(candidate: Vec<FieldElement>, field_k: Subfield) -> Result<SRing> {
    SRing::validate(candidate, field_k)
}

pub fn clear_denominators(s: &SRing, xs: &[FieldElement]) -> Result<(BigInt, Vec<FieldElement>)> {
    s.clear_denominators(xs)
}

pub fn is_in_s(s: &SRing, x: &FieldElement) -> bool {
    s.is_in_s(x)
}
