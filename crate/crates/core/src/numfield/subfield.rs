use std::sync::Arc;

use super::field::{FieldElement, NumberField};
use super::linalg::SpanSolver;
use super::Rational;
use crate::error::{Error, Result};

/// A subfield `K` of an ambient field `L`, given by a Q-basis.
#[derive(Clone, Debug)]
pub struct Subfield {
    ambient: Arc<NumberField>,
    basis: Vec<FieldElement>,
    solver: SpanSolver,
}

impl Subfield {
    /// Checks independence, that `1` is in the span and that the span is closed
    /// under multiplication.
    pub fn new(ambient: &Arc<NumberField>, basis: Vec<FieldElement>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidSubfield("empty basis".into()));
        }
        if basis.iter().any(|b| !b.field().is_same(ambient)) {
            return Err(Error::FieldMismatch);
        }
        let vectors: Vec<Vec<Rational>> = basis.iter().map(|b| b.coords().to_vec()).collect();
        let solver = SpanSolver::new(ambient.degree(), &vectors)
            .ok_or_else(|| Error::InvalidSubfield("basis is not Q-linearly independent".into()))?;
        let k = Subfield { ambient: ambient.clone(), basis, solver };
        if !k.contains(&FieldElement::one(ambient)) {
            return Err(Error::InvalidSubfield("1 is not in the span".into()));
        }
        for (i, a) in k.basis.iter().enumerate() {
            for b in &k.basis[i..] {
                if !k.contains(&(a * b)) {
                    return Err(Error::InvalidSubfield(format!("product {a} * {b} leaves the span")));
                }
            }
        }
        Ok(k)
    }

    /// `K = Q`.
    pub fn rationals(ambient: &Arc<NumberField>) -> Self {
        Subfield::new(ambient, vec![FieldElement::one(ambient)]).expect("Q is a subfield")
    }

    /// `K = L`, with the power basis.
    pub fn whole(ambient: &Arc<NumberField>) -> Self {
        let t = FieldElement::theta(ambient);
        let basis = (0..ambient.degree() as u32).map(|i| t.pow(i)).collect();
        Subfield::new(ambient, basis).expect("L is a subfield of itself")
    }

    pub fn ambient(&self) -> &Arc<NumberField> {
        &self.ambient
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// Degree `[K : Q]`.
    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    /// Q-coordinates of `a` in the basis, or `None` if `a ∉ K`.
    pub fn membership(&self, a: &FieldElement) -> Option<Vec<Rational>> {
        if !a.field().is_same(&self.ambient) {
            return None;
        }
        self.solver.coordinates(a.coords())
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        self.membership(a).is_some()
    }

    /// Same ambient field and same Q-span.
    pub fn same_as(&self, other: &Subfield) -> bool {
        self.ambient.is_same(&other.ambient)
            && self.degree() == other.degree()
            && other.basis.iter().all(|b| self.contains(b))
    }
}

/// Q-coordinates of `a` with respect to `K`'s basis, if `a ∈ K`.
pub fn subfield_membership(k: &Subfield, a: &FieldElement) -> Option<Vec<Rational>> {
    k.membership(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::poly::Poly;
    use crate::numfield::linalg::rank;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn quartic() -> Arc<NumberField> {
        NumberField::new(Poly::from_ints(&[-2, 0, 0, 0, 1]), q(1, 1), q(2, 1)).unwrap()
    }

    #[test]
    fn membership_examples() {
        let l = quartic();
        let t = FieldElement::theta(&l);
        let k = Subfield::new(&l, vec![FieldElement::one(&l), t.pow(2)]).unwrap();
        let a = &FieldElement::from_int(&l, 3) + &t.pow(2);
        assert_eq!(subfield_membership(&k, &a), Some(vec![q(3, 1), q(1, 1)]));
        assert_eq!(subfield_membership(&k, &t), None);
        assert_eq!(subfield_membership(&k, &FieldElement::one(&l)), Some(vec![q(1, 1), q(0, 1)]));
        // absence is backed by a rank jump
        let cols = vec![
            FieldElement::one(&l).coords().to_vec(),
            t.pow(2).coords().to_vec(),
            t.coords().to_vec(),
        ];
        assert_eq!(rank(4, &cols), 3);
    }

    #[test]
    fn rejects_non_subfields() {
        let l = quartic();
        let t = FieldElement::theta(&l);
        // span{1, θ} is not closed: θ² leaves it
        assert!(matches!(
            Subfield::new(&l, vec![FieldElement::one(&l), t.clone()]),
            Err(Error::InvalidSubfield(_))
        ));
        assert!(matches!(Subfield::new(&l, vec![t.pow(2)]), Err(Error::InvalidSubfield(_))));
        assert!(matches!(
            Subfield::new(&l, vec![FieldElement::one(&l), FieldElement::from_int(&l, 2)]),
            Err(Error::InvalidSubfield(_))
        ));
    }

    #[test]
    fn comparisons() {
        let l = quartic();
        let t = FieldElement::theta(&l);
        let k1 = Subfield::new(&l, vec![FieldElement::one(&l), t.pow(2)]).unwrap();
        let k2 = Subfield::new(&l, vec![FieldElement::from_int(&l, 2), &t.pow(2) + &FieldElement::one(&l)]).unwrap();
        assert!(k1.same_as(&k2));
        assert!(!k1.same_as(&Subfield::whole(&l)));
        assert_eq!(Subfield::whole(&l).degree(), 4);
        assert_eq!(Subfield::rationals(&l).degree(), 1);
    }
}
