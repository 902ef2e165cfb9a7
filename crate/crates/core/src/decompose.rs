//! Factorisation of coincidence isometries into coincidence reflections along
//! module vectors.
//!
//! The pivot loop walks the basis `γ_1, ..., γ_n`. While `g` fixes
//! `γ_1, ..., γ_{i-1}`, the vector `z = g(γ_i) − γ_i` is orthogonal to all of
//! them, so `ρ_z ∘ g` fixes `γ_1, ..., γ_i`. Each `z` has coordinates in `K`
//! (because `g ∈ OC(Γ)`), and an integer multiple of it lies in `Γ`; since
//! `ρ_z = ρ_{cz}` for any scalar `c ≠ 0`, the recorded vector is that multiple,
//! reduced to a primitive element.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::coincidence::{oc_membership, Isometry};
use crate::error::{Error, Result};
use crate::numfield::{FieldElement, Rational};
use crate::smodule::{content, is_zero_vector, SModule};

/// `f = ρ_{v_1} ∘ ρ_{v_2} ∘ ... ∘ ρ_{v_k}`; the rightmost reflection acts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionDecomposition {
    pub vectors: Vec<Vec<FieldElement>>,
}

impl ReflectionDecomposition {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The composed isometry; the identity of `m`'s dimension for an empty list.
    pub fn product(&self, m: &SModule) -> Result<Isometry> {
        let mut acc = Isometry::identity(m.field(), m.dim());
        for v in &self.vectors {
            acc = acc.compose(&Isometry::reflection(v)?)?;
        }
        Ok(acc)
    }
}

/// Divides the Z-coordinates of `v ∈ Γ` by their gcd; the first nonzero
/// coordinate of the result is positive.
pub fn primitive_reduce(m: &SModule, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
    if is_zero_vector(v) {
        return Err(Error::ZeroVector);
    }
    let z = m.z_coordinates(v)?.ok_or(Error::NotInModule)?;
    let mut g = content(&z);
    if z.iter().find(|x| !num_traits::Zero::is_zero(*x)).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    let reduced: Vec<BigInt> = z.iter().map(|x| x / &g).collect();
    Ok(m.from_z_coordinates(&reduced))
}

pub fn decompose(m: &SModule, f: &Isometry) -> Result<ReflectionDecomposition> {
    let criterion = m.gram_ratio_criterion();
    if let Some(w) = criterion.witness {
        return Err(Error::PreconditionGramCriterion((w.i, w.j, w.k)));
    }
    let verdict = oc_membership(m, f)?;
    if let Some(entry) = verdict.failing_entry {
        return Err(Error::NotInOC(entry));
    }
    let n = m.dim();
    let basis: Vec<Vec<FieldElement>> = (0..n).map(|i| m.basis_vector(i)).collect();
    let mut g = f.clone();
    let mut vectors = Vec::with_capacity(n);
    for i in 0..n {
        let image = g.apply(&basis[i])?;
        if image == basis[i] {
            continue;
        }
        let pivot: Vec<FieldElement> = image.iter().zip(&basis[i]).map(|(a, b)| a - b).collect();
        let coords = m.module_coords(&pivot)?;
        if let Some(bad) = coords.iter().position(|c| !m.field_k().contains(c)) {
            return Err(Error::InternalCoordinateNotInK(bad + 1));
        }
        let (d, _) = m.ring().clear_denominators(&coords)?;
        let lifted: Vec<FieldElement> = pivot.iter().map(|x| x.scale(&Rational::from_integer(d.clone()))).collect();
        let z = primitive_reduce(m, &lifted)?;
        g = Isometry::reflection(&z)?.compose(&g)?;
        vectors.push(z);
        for (j, b) in basis.iter().enumerate().take(i + 1) {
            assert!(g.apply(b)? == *b, "pivot step {i} does not fix basis vector {j}");
        }
    }
    assert!(g.is_identity(), "residual isometry after pivoting is not the identity");
    Ok(ReflectionDecomposition { vectors })
}

/// Recomputes every invariant of a decomposition from scratch.
pub fn verify_decomposition(m: &SModule, f: &Isometry, d: &ReflectionDecomposition) -> bool {
    let check = || -> Result<bool> {
        if d.len() > m.dim() || f.dim() != m.dim() {
            return Ok(false);
        }
        for v in &d.vectors {
            if m.check_vector(v).is_err() || is_zero_vector(v) || !m.contains(v)? {
                return Ok(false);
            }
            if !oc_membership(m, &Isometry::reflection(v)?)?.commensurate {
                return Ok(false);
            }
        }
        Ok(d.product(m)? == *f)
    };
    check().unwrap_or(false)
}
