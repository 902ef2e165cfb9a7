//! Commensurateness, coincidence isometries and coincidence reflections.
//!
//! Two modules with basis matrices `B₁`, `B₂` are commensurate exactly when the
//! transition matrix `B₂⁻¹B₁` has all entries in `K`. An orthogonal `R` is a
//! coincidence isometry of `Γ` exactly when `B_Γ⁻¹ R B_Γ` has all entries in `K`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numfield::{dot, FieldElement, FieldMatrix, NumberField, Rational, Subfield};
use crate::smodule::{is_zero_vector, SModule};

/// An exactly orthogonal matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    matrix: FieldMatrix,
}

impl Isometry {
    pub fn new(matrix: FieldMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch("isometry must be square".into()));
        }
        if !matrix.transpose().mul(&matrix)?.is_identity() {
            return Err(Error::NotOrthogonal);
        }
        Ok(Isometry { matrix })
    }

    pub fn identity(field: &Arc<NumberField>, n: usize) -> Self {
        Isometry { matrix: FieldMatrix::identity(field, n) }
    }

    /// `ρ_v = I − 2 v vᵗ / ⟨v, v⟩`.
    pub fn reflection(v: &[FieldElement]) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::DimensionMismatch("empty vector".into()));
        }
        if is_zero_vector(v) {
            return Err(Error::ZeroVector);
        }
        let field = v[0].field().clone();
        if v.iter().any(|x| !x.field().is_same(&field)) {
            return Err(Error::FieldMismatch);
        }
        let n = v.len();
        let factor = dot(v, v).inverse()?.scale(&Rational::from_integer((-2).into()));
        let scaled: Vec<FieldElement> = v.iter().map(|x| x * &factor).collect();
        let mut entries = Vec::with_capacity(n * n);
        for (i, si) in scaled.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let mut e = si * vj;
                if i == j {
                    e = &e + &FieldElement::one(&field);
                }
                entries.push(e);
            }
        }
        Ok(Isometry { matrix: FieldMatrix::new(&field, n, n, entries)? })
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.matrix.field()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn apply(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!("isometries of dimension {} and {}", self.dim(), other.dim())));
        }
        Ok(Isometry { matrix: self.matrix.mul(&other.matrix)? })
    }

    /// The transpose.
    pub fn inverse(&self) -> Isometry {
        Isometry { matrix: self.matrix.transpose() }
    }

    pub fn determinant(&self) -> FieldElement {
        self.matrix.determinant().expect("square")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOp {
    Compose,
    InvertFirst,
}

/// `f·g` or `f·g⁻¹`.
pub fn oc_compose_and_invert(f: &Isometry, g: &Isometry, mode: GroupOp) -> Result<Isometry> {
    match mode {
        GroupOp::Compose => f.compose(g),
        GroupOp::InvertFirst => f.compose(&g.inverse()),
    }
}

/// Outcome of the K-membership test on a transition matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommensurateVerdict {
    pub commensurate: bool,
    pub transition: FieldMatrix,
    /// `in_k[r][c]` is whether entry `(r, c)` lies in `K`.
    pub in_k: Vec<Vec<bool>>,
    /// First entry outside `K` in row-major order, 1-based.
    pub failing_entry: Option<(usize, usize)>,
}

impl CommensurateVerdict {
    fn from_transition(transition: FieldMatrix, k: &Subfield) -> Self {
        let in_k: Vec<Vec<bool>> = (0..transition.rows())
            .map(|r| (0..transition.cols()).map(|c| k.contains(transition.get(r, c))).collect())
            .collect();
        let failing_entry = in_k.iter().enumerate().find_map(|(r, row)| {
            row.iter().position(|ok| !ok).map(|c| (r + 1, c + 1))
        });
        CommensurateVerdict {
            commensurate: failing_entry.is_none(),
            transition,
            in_k,
            failing_entry,
        }
    }

    pub fn failing_value(&self) -> Option<&FieldElement> {
        self.failing_entry.map(|(r, c)| self.transition.get(r - 1, c - 1))
    }
}

/// Decides `Γ₁ ∼ Γ₂` via `B₂⁻¹B₁ ∈ GL(n, K)`.
pub fn commensurate(a: &SModule, b: &SModule) -> Result<CommensurateVerdict> {
    a.same_context(b)?;
    let transition = b.basis_inverse().mul(a.basis_matrix())?;
    Ok(CommensurateVerdict::from_transition(transition, a.field_k()))
}

/// Decides `f ∈ OC(Γ)` via `B_Γ⁻¹ f B_Γ ∈ GL(n, K)`.
pub fn oc_membership(m: &SModule, f: &Isometry) -> Result<CommensurateVerdict> {
    if f.dim() != m.dim() {
        return Err(Error::DimensionMismatch(format!("isometry of dimension {} for a module in dimension {}", f.dim(), m.dim())));
    }
    if !f.field().is_same(m.field()) {
        return Err(Error::FieldMismatch);
    }
    let conj = m.basis_inverse().mul(&f.matrix().mul(m.basis_matrix())?)?;
    Ok(CommensurateVerdict::from_transition(conj, m.field_k()))
}

/// Reflection along a nonzero vector of the module's ambient space.
pub fn reflection_along(m: &SModule, v: &[FieldElement]) -> Result<Isometry> {
    m.check_vector(v)?;
    Isometry::reflection(v)
}

/// The image module `f(Γ)`, with basis matrix `f·B_Γ`.
pub fn image(m: &SModule, f: &Isometry) -> Result<SModule> {
    let basis = f.matrix().mul(m.basis_matrix())?;
    SModule::new(m.ring().clone(), basis, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{Poly, Rational};
    use crate::sring::SRing;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn rational_matrix(field: &Arc<NumberField>, rows: &[&[(i64, i64)]]) -> FieldMatrix {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&(n, d)| q(n, d)).collect()).collect();
        FieldMatrix::from_rationals(field, &rows).unwrap()
    }

    fn pythagorean(field: &Arc<NumberField>) -> Isometry {
        Isometry::new(rational_matrix(field, &[&[(3, 5), (-4, 5)], &[(4, 5), (3, 5)]])).unwrap()
    }

    fn rot45(field: &Arc<NumberField>) -> Isometry {
        // θ = √2, entries ±θ/2
        let h = FieldElement::theta(field).scale(&q(1, 2));
        Isometry::new(FieldMatrix::from_rows(field, vec![vec![h.clone(), -&h], vec![h.clone(), h]]).unwrap()).unwrap()
    }

    fn sqrt2() -> Arc<NumberField> {
        NumberField::new(Poly::from_ints(&[-2, 0, 1]), q(1, 1), q(2, 1)).unwrap()
    }

    #[test]
    fn commensurate_examples() {
        let k = NumberField::rationals();
        let ring = Arc::new(SRing::integers(&k));
        let z2 = SModule::standard(ring.clone(), 2);
        let v = commensurate(&z2, &z2).unwrap();
        assert!(v.commensurate && v.transition.is_identity());
        let d23 = SModule::new(ring, rational_matrix(&k, &[&[(2, 1), (0, 1)], &[(0, 1), (3, 1)]]), None).unwrap();
        let v = commensurate(&z2, &d23).unwrap();
        assert!(v.commensurate);
        assert_eq!(v.transition, rational_matrix(&k, &[&[(1, 2), (0, 1)], &[(0, 1), (1, 3)]]));

        let l = sqrt2();
        let ring = Arc::new(SRing::integers(&l));
        let z2 = SModule::standard(ring, 2);
        let rotated = image(&z2, &rot45(&l)).unwrap();
        let v = commensurate(&z2, &rotated).unwrap();
        assert!(!v.commensurate);
        assert_eq!(v.failing_entry, Some((1, 1)));
        assert_eq!(v.failing_value().unwrap(), &FieldElement::theta(&l).scale(&q(1, 2)));
    }

    #[test]
    fn context_mismatch() {
        let k = NumberField::rationals();
        let ring = Arc::new(SRing::integers(&k));
        let z2 = SModule::standard(ring.clone(), 2);
        let z3 = SModule::standard(ring, 3);
        assert!(matches!(commensurate(&z2, &z3), Err(Error::ContextMismatch(_))));
        let l = sqrt2();
        let other = SModule::standard(Arc::new(SRing::integers(&l)), 2);
        assert!(matches!(commensurate(&z2, &other), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn oc_examples() {
        let k = NumberField::rationals();
        let z2 = SModule::standard(Arc::new(SRing::integers(&k)), 2);
        assert!(oc_membership(&z2, &Isometry::identity(&k, 2)).unwrap().commensurate);
        let v = oc_membership(&z2, &pythagorean(&k)).unwrap();
        assert!(v.commensurate);
        assert_eq!(&v.transition, pythagorean(&k).matrix());

        let l = sqrt2();
        let z2l = SModule::standard(Arc::new(SRing::integers(&l)), 2);
        assert!(!oc_membership(&z2l, &rot45(&l)).unwrap().commensurate);
    }

    #[test]
    fn non_orthogonal_rejected() {
        let k = NumberField::rationals();
        let m = rational_matrix(&k, &[&[(1, 1), (1, 1)], &[(0, 1), (1, 1)]]);
        assert_eq!(Isometry::new(m), Err(Error::NotOrthogonal));
    }

    #[test]
    fn reflection_examples() {
        let k = NumberField::rationals();
        let z2 = SModule::standard(Arc::new(SRing::integers(&k)), 2);
        let e1 = vec![FieldElement::one(&k), FieldElement::zero(&k)];
        let r = reflection_along(&z2, &e1).unwrap();
        assert_eq!(r.matrix(), &rational_matrix(&k, &[&[(-1, 1), (0, 1)], &[(0, 1), (1, 1)]]));
        assert_eq!(
            reflection_along(&z2, &[FieldElement::zero(&k), FieldElement::zero(&k)]),
            Err(Error::ZeroVector)
        );

        let l = sqrt2();
        let t = FieldElement::theta(&l);
        let v = vec![&t + &FieldElement::one(&l), FieldElement::from_rational(&l, q(-3, 7)), t.clone()];
        let r = Isometry::reflection(&v).unwrap();
        assert!(r.compose(&r).unwrap().is_identity());
        let v5: Vec<FieldElement> = v.iter().map(|x| x.scale(&q(5, 1))).collect();
        assert_eq!(Isometry::reflection(&v5).unwrap(), r);
        assert_eq!(r.determinant(), FieldElement::from_int(&l, -1));
    }

    #[test]
    fn group_operations() {
        let k = NumberField::rationals();
        let z2 = SModule::standard(Arc::new(SRing::integers(&k)), 2);
        let f = pythagorean(&k);
        let id = Isometry::identity(&k, 2);
        assert!(oc_compose_and_invert(&f, &f, GroupOp::InvertFirst).unwrap().is_identity());
        assert_eq!(oc_compose_and_invert(&f, &id, GroupOp::Compose).unwrap(), f);
        let a = Isometry::reflection(&[FieldElement::one(&k), FieldElement::from_int(&k, 2)]).unwrap();
        let b = Isometry::reflection(&[FieldElement::one(&k), FieldElement::zero(&k)]).unwrap();
        let rot = oc_compose_and_invert(&a, &b, GroupOp::Compose).unwrap();
        assert_eq!(rot.determinant(), FieldElement::one(&k));
        assert!(oc_membership(&z2, &rot).unwrap().commensurate);
        let z3 = Isometry::identity(&k, 3);
        assert!(matches!(f.compose(&z3), Err(Error::DimensionMismatch(_))));
    }
}
