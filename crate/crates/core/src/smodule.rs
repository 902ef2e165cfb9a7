//! Free `S`-modules `Γ ⊂ R^n` of rank `n`, given by an exact basis matrix whose
//! columns are the `S`-basis `γ_1, ..., γ_n`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numfield::{FieldElement, FieldMatrix, NumberField, Rational, Subfield};
use crate::sring::SRing;

#[derive(Clone, Debug)]
pub struct SModule {
    ring: Arc<SRing>,
    basis: FieldMatrix,
    basis_inv: FieldMatrix,
    name: Option<String>,
}

/// Matrix of inner products `⟨γ_i, γ_j⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    entries: FieldMatrix,
}

impl GramMatrix {
    pub fn entries(&self) -> &FieldMatrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        self.entries.get(i, j)
    }
}

/// A triple `(i, j, k)` (1-based) with `⟨γ_i, γ_j⟩ / ⟨γ_k, γ_k⟩ ∉ K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub ratio: FieldElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramCriterion {
    pub holds: bool,
    pub witness: Option<RatioWitness>,
}

impl SModule {
    pub fn new(ring: Arc<SRing>, basis: FieldMatrix, name: Option<String>) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::InvalidModule("basis matrix must be square".into()));
        }
        if !basis.field().is_same(ring.ambient()) {
            return Err(Error::FieldMismatch);
        }
        let basis_inv = match basis.inverse() {
            Ok(inv) => inv,
            Err(Error::Singular) => return Err(Error::InvalidModule("basis matrix is singular".into())),
            Err(e) => return Err(e),
        };
        Ok(SModule { ring, basis, basis_inv, name })
    }

    /// `S^n` with the standard basis.
    pub fn standard(ring: Arc<SRing>, n: usize) -> Self {
        let basis = FieldMatrix::identity(ring.ambient(), n);
        SModule::new(ring, basis, None).expect("identity is invertible")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ring(&self) -> &Arc<SRing> {
        &self.ring
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.ring.ambient()
    }

    pub fn field_k(&self) -> &Subfield {
        self.ring.field_k()
    }

    pub fn basis_matrix(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn basis_inverse(&self) -> &FieldMatrix {
        &self.basis_inv
    }

    /// `γ_i` (0-based).
    pub fn basis_vector(&self, i: usize) -> Vec<FieldElement> {
        self.basis.column(i)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn gram(&self) -> GramMatrix {
        let entries = self.basis.transpose().mul(&self.basis).expect("square basis");
        debug_assert!(entries == entries.transpose());
        debug_assert!((0..self.dim()).all(|i| entries.get(i, i).sign() == Ordering::Greater));
        GramMatrix { entries }
    }

    /// Every ratio `⟨γ_i, γ_j⟩ / ⟨γ_k, γ_k⟩` lies in `K`. Triples are scanned with
    /// `k` outermost, then `i`, then `j`; the first failure is the witness.
    pub fn gram_ratio_criterion(&self) -> GramCriterion {
        let g = self.gram();
        let n = self.dim();
        for k in 0..n {
            let inv = g.get(k, k).inverse().expect("diagonal is positive");
            for i in 0..n {
                for j in 0..n {
                    let ratio = g.get(i, j) * &inv;
                    if !self.field_k().contains(&ratio) {
                        return GramCriterion {
                            holds: false,
                            witness: Some(RatioWitness { i: i + 1, j: j + 1, k: k + 1, ratio }),
                        };
                    }
                }
            }
        }
        GramCriterion { holds: true, witness: None }
    }

    /// All Gram entries lie in `K`, equivalently `⟨γ, γ⟩ ∈ K` for all `γ ∈ Γ`.
    pub fn is_module_over_k(&self) -> bool {
        let g = self.gram();
        g.entries.entries().iter().all(|e| self.field_k().contains(e))
    }

    pub fn check_vector(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {}", v.len(), self.dim())));
        }
        if v.iter().any(|x| !x.field().is_same(self.field())) {
            return Err(Error::NotInAmbientField);
        }
        Ok(())
    }

    /// Exact `x` with `B_Γ·x = v`.
    pub fn module_coords(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_vector(v)?;
        self.basis_inv.mul_vec(v)
    }

    pub fn contains(&self, v: &[FieldElement]) -> Result<bool> {
        Ok(self.module_coords(v)?.iter().all(|c| self.ring.is_in_s(c)))
    }

    /// `Σ c_i γ_i`.
    pub fn combine(&self, coords: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.basis.mul_vec(coords)
    }

    /// Rank of `Γ` as a Z-module, `s·n`.
    pub fn z_rank(&self) -> usize {
        self.ring.rank() * self.dim()
    }

    /// Coordinates in the Z-basis `{β_j γ_i}`, ordered lexicographically by `(i, j)`;
    /// `None` unless `v ∈ Γ`.
    pub fn z_coordinates(&self, v: &[FieldElement]) -> Result<Option<Vec<BigInt>>> {
        let mut out = Vec::with_capacity(self.z_rank());
        for c in self.module_coords(v)? {
            match self.ring.int_coordinates(&c) {
                Some(ints) => out.extend(ints),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    /// Rational coordinates in the Z-basis `{β_j γ_i}`; `None` if `v ∉ KΓ`.
    pub fn q_coordinates(&self, v: &[FieldElement]) -> Result<Option<Vec<Rational>>> {
        let mut out = Vec::with_capacity(self.z_rank());
        for c in self.module_coords(v)? {
            match self.ring.coordinates(&c) {
                Some(qs) => out.extend(qs),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    pub fn from_z_coordinates(&self, z: &[BigInt]) -> Vec<FieldElement> {
        let s = self.ring.rank();
        let coords: Vec<FieldElement> = z.chunks(s).map(|c| self.ring.from_int_coordinates(c)).collect();
        self.combine(&coords).expect("coordinate count matches")
    }

    /// The Z-generators `β_j γ_i` in `(i, j)` order.
    pub fn z_generators(&self) -> Vec<Vec<FieldElement>> {
        let mut out = Vec::with_capacity(self.z_rank());
        for i in 0..self.dim() {
            let g = self.basis_vector(i);
            for b in self.ring.zbasis() {
                out.push(g.iter().map(|x| x * b).collect());
            }
        }
        out
    }

    /// Same ambient field, ring and dimension.
    pub fn same_context(&self, other: &SModule) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::ContextMismatch(format!("dimensions {} and {}", self.dim(), other.dim())));
        }
        if !self.field().is_same(other.field()) {
            return Err(Error::ContextMismatch("ambient fields differ".into()));
        }
        if !Arc::ptr_eq(&self.ring, &other.ring) && !self.ring.same_ring(&other.ring) {
            return Err(Error::ContextMismatch("coefficient rings differ".into()));
        }
        Ok(())
    }
}

pub fn is_zero_vector(v: &[FieldElement]) -> bool {
    v.iter().all(FieldElement::is_zero)
}

pub fn gram(m: &SModule) -> GramMatrix {
    m.gram()
}

pub fn gram_ratio_criterion(m: &SModule) -> GramCriterion {
    m.gram_ratio_criterion()
}

pub fn is_module_over_k(m: &SModule) -> bool {
    m.is_module_over_k()
}

pub fn module_coords(m: &SModule, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
    m.module_coords(v)
}

pub fn contains(m: &SModule, v: &[FieldElement]) -> Result<bool> {
    m.contains(v)
}

/// `gcd` of integer coordinates; zero for the zero vector.
pub(crate) fn content(z: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    z.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::Poly;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn diag_module(field: &Arc<NumberField>, a: FieldElement, b: FieldElement) -> SModule {
        let z = FieldElement::zero(field);
        let basis = FieldMatrix::from_rows(field, vec![vec![a, z.clone()], vec![z, b]]).unwrap();
        SModule::new(Arc::new(SRing::integers(field)), basis, None).unwrap()
    }

    #[test]
    fn standard_lattice() {
        let k = NumberField::rationals();
        let z2 = SModule::standard(Arc::new(SRing::integers(&k)), 2);
        assert!(z2.gram().entries().is_identity());
        assert!(z2.gram_ratio_criterion().holds);
        assert!(z2.is_module_over_k());
        let v = vec![FieldElement::from_int(&k, 3), FieldElement::from_int(&k, -4)];
        assert_eq!(module_coords(&z2, &v).unwrap(), v);
        assert!(contains(&z2, &[FieldElement::zero(&k), FieldElement::zero(&k)]).unwrap());
        assert!(!contains(&z2, &[FieldElement::from_rational(&k, q(1, 2)), FieldElement::zero(&k)]).unwrap());
    }

    #[test]
    fn sqrt2_basis() {
        let l = NumberField::new(Poly::from_ints(&[-2, 0, 1]), q(1, 1), q(2, 1)).unwrap();
        let m = diag_module(&l, FieldElement::one(&l), FieldElement::theta(&l));
        let g = m.gram();
        assert_eq!(g.get(0, 0), &FieldElement::one(&l));
        assert_eq!(g.get(1, 1), &FieldElement::from_int(&l, 2));
        assert!(g.get(0, 1).is_zero());
        assert!(m.gram_ratio_criterion().holds);
    }

    #[test]
    fn quartic_counterexample() {
        let l = NumberField::new(Poly::from_ints(&[-2, 0, 0, 0, 1]), q(1, 1), q(2, 1)).unwrap();
        let t = FieldElement::theta(&l);
        let m = diag_module(&l, FieldElement::one(&l), t.clone());
        let c = m.gram_ratio_criterion();
        assert!(!c.holds);
        let w = c.witness.unwrap();
        assert_eq!((w.i, w.j, w.k), (2, 2, 1));
        assert_eq!(w.ratio, t.pow(2));
        assert!(!m.is_module_over_k());
    }

    #[test]
    fn coordinate_errors() {
        let l = NumberField::new(Poly::from_ints(&[-2, 0, 1]), q(1, 1), q(2, 1)).unwrap();
        let m = diag_module(&l, FieldElement::one(&l), FieldElement::theta(&l));
        assert!(matches!(m.module_coords(&[FieldElement::one(&l)]), Err(Error::DimensionMismatch(_))));
        let k = NumberField::rationals();
        assert_eq!(
            m.module_coords(&[FieldElement::one(&k), FieldElement::one(&k)]),
            Err(Error::NotInAmbientField)
        );
        let z = FieldElement::zero(&l);
        let singular = FieldMatrix::from_rows(&l, vec![vec![z.clone(), z.clone()], vec![z.clone(), FieldElement::one(&l)]]).unwrap();
        assert!(matches!(
            SModule::new(Arc::new(SRing::integers(&l)), singular, None),
            Err(Error::InvalidModule(_))
        ));
    }

    #[test]
    fn z_coordinates_order() {
        let l = NumberField::new(Poly::from_ints(&[-1, -1, 1]), q(1, 1), q(2, 1)).unwrap();
        let t = FieldElement::theta(&l);
        let ring = SRing::validate(vec![FieldElement::one(&l), t.clone()], Subfield::whole(&l)).unwrap();
        let m = SModule::standard(Arc::new(ring), 2);
        let v = vec![t.scale(&q(2, 1)), FieldElement::from_int(&l, 2)];
        let z = m.z_coordinates(&v).unwrap().unwrap();
        assert_eq!(z, [0, 2, 2, 0].map(BigInt::from).to_vec());
        assert_eq!(m.from_z_coordinates(&z), v);
        assert_eq!(m.z_generators().len(), 4);
        assert_eq!(m.z_generators()[1], vec![t.clone(), FieldElement::zero(&l)]);
    }
}
