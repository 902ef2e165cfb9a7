use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{fmt_terms, interval_eval, sign, Poly};
use super::Rational;
use crate::error::{Error, Result};

/// Degrees above this are accepted without an irreducibility proof.
pub const MAX_VERIFIED_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Verified,
    /// Degree too large for the exhaustive search; results are conditional.
    Trusted,
}

/// Isolating interval `[lo, hi]` of a real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }
}

/// A real number field `Q(θ)`, with `θ` pinned down by an isolating interval.
#[derive(Debug)]
pub struct NumberField {
    min_poly: Poly,
    root: RootInterval,
    irreducibility: Irreducibility,
    /// Coordinates of `θ^(d+k)` for `k = 0..d-1`.
    reduction: Vec<Vec<Rational>>,
}

impl NumberField {
    /// Validates a monic `min_poly` and the isolating interval.
    pub fn new(min_poly: Poly, lo: Rational, hi: Rational) -> Result<Arc<Self>> {
        let degree = min_poly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidField("minimal polynomial must have degree at least 1".into()))?;
        if !min_poly.is_monic() {
            return Err(Error::InvalidField("minimal polynomial must be monic".into()));
        }
        if lo >= hi {
            return Err(Error::InvalidField("root interval must satisfy lo < hi".into()));
        }
        let irreducibility = if degree <= MAX_VERIFIED_DEGREE {
            if !min_poly.is_irreducible() {
                return Err(Error::InvalidField(format!("{min_poly} is reducible over Q")));
            }
            Irreducibility::Verified
        } else {
            Irreducibility::Trusted
        };
        let (s_lo, s_hi) = (min_poly.sign_at(&lo), min_poly.sign_at(&hi));
        if s_lo == Ordering::Equal || s_hi == Ordering::Equal || s_lo == s_hi {
            return Err(Error::InvalidField("minimal polynomial does not change sign on the root interval".into()));
        }
        if min_poly.count_roots(&lo, &hi) != 1 {
            return Err(Error::InvalidField("root interval does not isolate exactly one root".into()));
        }

        let modulus = &min_poly.coeffs()[..degree];
        let mut reduction: Vec<Vec<Rational>> = Vec::with_capacity(degree.saturating_sub(1));
        // θ^d = -Σ c_i θ^i
        let mut current: Vec<Rational> = modulus.iter().map(|c| -c).collect();
        for _ in 0..degree.saturating_sub(1) {
            reduction.push(current.clone());
            // multiply by θ and reduce
            let top = current.pop().unwrap();
            current.insert(0, Rational::zero());
            for (c, m) in current.iter_mut().zip(modulus) {
                *c -= &top * m;
            }
        }
        Ok(Arc::new(NumberField {
            min_poly,
            root: RootInterval { lo, hi },
            irreducibility,
            reduction,
        }))
    }

    /// `Q` itself, as `Q(θ)` with `θ = 0`.
    pub fn rationals() -> Arc<Self> {
        NumberField::new(
            Poly::from_ints(&[0, 1]),
            Rational::from_integer((-1).into()),
            Rational::one(),
        )
        .expect("x is irreducible")
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap()
    }

    pub fn min_poly(&self) -> &Poly {
        &self.min_poly
    }

    pub fn root_interval(&self) -> &RootInterval {
        &self.root
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    /// Equal minimal polynomials and the same designated root.
    pub fn is_same(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        if Arc::ptr_eq(self, other) {
            return true;
        }
        if self.min_poly != other.min_poly {
            return false;
        }
        let lo = (&self.root.lo).max(&other.root.lo);
        let hi = (&self.root.hi).min(&other.root.hi);
        // endpoints are never roots
        lo < hi && self.min_poly.count_roots(lo, hi) == 1
    }

    /// One bisection step; the designated root stays inside the returned interval.
    pub fn bisect(&self, interval: &RootInterval) -> RootInterval {
        let mid = interval.midpoint();
        let sm = self.min_poly.sign_at(&mid);
        if sm == Ordering::Equal {
            return RootInterval { lo: mid.clone(), hi: mid };
        }
        if sm == self.min_poly.sign_at(&interval.lo) {
            RootInterval { lo: mid, hi: interval.hi.clone() }
        } else {
            RootInterval { lo: interval.lo.clone(), hi: mid }
        }
    }

    /// A fresh isolating interval of width at most `2^-bits`.
    pub fn refine(&self, bits: u32) -> RootInterval {
        let target = Rational::new(BigInt::one(), BigInt::one() << bits);
        let mut iv = self.root.clone();
        while iv.width() > target {
            iv = self.bisect(&iv);
        }
        iv
    }

    /// Reduces a coefficient vector of length up to `2d - 1` modulo the minimal polynomial.
    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        if coeffs.len() > d {
            let high: Vec<Rational> = coeffs.drain(d..).collect();
            for (k, c) in high.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (acc, r) in coeffs.iter_mut().zip(&self.reduction[k]) {
                    *acc += c * r;
                }
            }
        }
        coeffs.resize(d, Rational::zero());
        coeffs
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(θ), {} = 0, θ ∈ [{}, {}]", self.min_poly, self.root.lo, self.root.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Element `Σ coords[i]·θ^i` of a number field.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, coords: Vec<Rational>) -> Result<Self> {
        let d = field.degree();
        if coords.len() > d {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a field of degree {d}",
                coords.len()
            )));
        }
        let mut coords = coords;
        coords.resize(d, Rational::zero());
        Ok(FieldElement { field: field.clone(), coords })
    }

    /// Element from an arbitrary polynomial in `θ`, reduced.
    pub fn from_poly(field: &Arc<NumberField>, p: &Poly) -> Self {
        let r = p.rem(field.min_poly());
        FieldElement {
            field: field.clone(),
            coords: field.reduce(r.into_coeffs()),
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, q: Rational) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[0] = q;
        FieldElement { field: field.clone(), coords }
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(n.into()))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The generator `θ`.
    pub fn theta(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, &Poly::from_ints(&[0, 1]))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// `Some(q)` if the element is the rational number `q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }

    pub fn same_field(&self, other: &FieldElement) -> bool {
        self.field.is_same(&other.field)
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<Self> {
        self.check(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    fn add_unchecked(&self, other: &FieldElement) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    fn sub_unchecked(&self, other: &FieldElement) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    fn mul_unchecked(&self, other: &FieldElement) -> Self {
        let d = self.coords.len();
        if d == 1 {
            return FieldElement {
                field: self.field.clone(),
                coords: vec![&self.coords[0] * &other.coords[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        FieldElement {
            field: self.field.clone(),
            coords: self.field.reduce(prod),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against the
    /// minimal polynomial.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, q.recip()));
        }
        let (g, s) = Poly::inverse_mod(&self.as_poly(), self.field.min_poly());
        if g.degree() != Some(0) {
            // only reachable for a reducible (trusted) modulus
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_poly(&self.field, &s))
    }

    pub fn as_poly(&self) -> Poly {
        Poly::new(self.coords.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Sign of the real embedding `θ ↦ θ₀`, decided by bisecting the root interval
    /// until an interval evaluation excludes zero.
    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if let Some(q) = self.as_rational() {
            return sign(q);
        }
        let mut iv = self.field.root.clone();
        loop {
            if iv.lo == iv.hi {
                return sign(&self.as_poly().eval(&iv.lo));
            }
            let (lo, hi) = interval_eval(&self.coords, &iv.lo, &iv.hi);
            if lo > Rational::zero() {
                return Ordering::Greater;
            }
            if hi < Rational::zero() {
                return Ordering::Less;
            }
            iv = self.field.bisect(&iv);
        }
    }

    /// Exact total order of real embeddings.
    pub fn cmp_real(&self, other: &FieldElement) -> Ordering {
        (self - other).sign()
    }

    /// Rational enclosure of the real value, of width at most `2^-bits` around θ's interval.
    pub fn enclose(&self, bits: u32) -> (Rational, Rational) {
        let iv = self.field.refine(bits);
        interval_eval(&self.coords, &iv.lo, &iv.hi)
    }

    /// Monic minimal polynomial over Q, from the first linear dependency among
    /// `1, a, a², ...`.
    pub fn minimal_polynomial(&self) -> Poly {
        let d = self.field.degree();
        let mut powers: Vec<Vec<Rational>> = vec![];
        let mut current = Self::one(&self.field);
        for _ in 0..=d {
            powers.push(current.coords.clone());
            if let Some(relation) = super::linalg::dependency(&powers) {
                return Poly::new(relation).monic();
            }
            current = current.mul_unchecked(self);
        }
        unreachable!("d + 1 vectors in Q^d are dependent")
    }

    /// Integral over Z: the minimal polynomial has integer coefficients.
    pub fn is_integral(&self) -> bool {
        self.minimal_polynomial().coeffs().iter().all(Rational::is_integer)
    }
}

/// Arithmetic with explicit error reporting.
pub fn fe_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.same_field(other)
    }
}

impl Eq for FieldElement {}

// Operator impls panic on mismatched fields; use the checked_* methods for
// untrusted combinations.
impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.coords, "θ", f)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn sqrt2() -> Arc<NumberField> {
        NumberField::new(Poly::from_ints(&[-2, 0, 1]), q(1, 1), q(2, 1)).unwrap()
    }

    #[test]
    fn rejects_bad_descriptors() {
        let p = Poly::from_ints(&[-2, 0, 1]);
        assert!(matches!(NumberField::new(p.clone(), q(2, 1), q(1, 1)), Err(Error::InvalidField(_))));
        assert!(matches!(NumberField::new(p.clone(), q(-2, 1), q(2, 1)), Err(Error::InvalidField(_))));
        assert!(matches!(NumberField::new(p, q(3, 2), q(2, 1)), Err(Error::InvalidField(_))));
        assert!(matches!(
            NumberField::new(Poly::from_ints(&[-4, 0, 1]), q(1, 1), q(3, 1)),
            Err(Error::InvalidField(_))
        ));
        assert!(matches!(
            NumberField::new(Poly::from_ints(&[-4, 0, 2]), q(1, 1), q(3, 1)),
            Err(Error::InvalidField(_))
        ));
    }

    #[test]
    fn high_degree_is_trusted() {
        // x^9 - 2
        let mut c = vec![-2i64];
        c.extend([0; 8]);
        c.push(1);
        let k = NumberField::new(Poly::from_ints(&c), q(1, 1), q(2, 1)).unwrap();
        assert_eq!(k.irreducibility(), Irreducibility::Trusted);
        assert_eq!(sqrt2().irreducibility(), Irreducibility::Verified);
    }

    #[test]
    fn arithmetic_examples() {
        let k = sqrt2();
        let t = FieldElement::theta(&k);
        let one = FieldElement::one(&k);
        assert_eq!(&(&one + &t) * &(&one - &t), FieldElement::from_int(&k, -1));
        assert_eq!(fe_arith(&t, &t, ArithOp::Div).unwrap(), one);
        let inv = t.inverse().unwrap();
        assert_eq!(inv, t.scale(&q(1, 2)));
        assert_eq!(&t * &inv, one);
        assert_eq!(fe_arith(&t, &FieldElement::zero(&k), ArithOp::Div), Err(Error::DivisionByZero));
        let other = NumberField::rationals();
        assert_eq!(
            fe_arith(&t, &FieldElement::one(&other), ArithOp::Add),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn structurally_equal_fields_interoperate() {
        let a = sqrt2();
        let b = NumberField::new(Poly::from_ints(&[-2, 0, 1]), q(13, 10), q(3, 2)).unwrap();
        let neg = NumberField::new(Poly::from_ints(&[-2, 0, 1]), q(-2, 1), q(-1, 1)).unwrap();
        assert!(a.is_same(&b));
        assert!(!a.is_same(&neg));
        assert_eq!(FieldElement::theta(&a), FieldElement::theta(&b));
    }

    #[test]
    fn sign_examples() {
        let k = sqrt2();
        let t = FieldElement::theta(&k);
        assert_eq!(FieldElement::zero(&k).sign(), Ordering::Equal);
        assert_eq!((&t - &FieldElement::from_rational(&k, q(7, 5))).sign(), Ordering::Greater);
        assert_eq!((&t - &FieldElement::from_rational(&k, q(71, 50))).sign(), Ordering::Less);
        let e = &t.pow(2) - &FieldElement::from_int(&k, 3);
        assert_eq!(e, FieldElement::from_int(&k, -1));
        assert_eq!(e.sign(), Ordering::Less);
    }

    #[test]
    fn reduction_of_high_powers() {
        // θ⁴ = 2 ⇒ θ⁶ = 2θ²
        let k = NumberField::new(Poly::from_ints(&[-2, 0, 0, 0, 1]), q(1, 1), q(2, 1)).unwrap();
        let t = FieldElement::theta(&k);
        assert_eq!(t.pow(6), t.pow(2).scale(&q(2, 1)));
        assert_eq!(t.pow(3).inverse().unwrap(), t.scale(&q(1, 2)));
    }

    #[test]
    fn minimal_polynomials() {
        let k = NumberField::new(Poly::from_ints(&[-2, 0, 0, 0, 1]), q(1, 1), q(2, 1)).unwrap();
        let t = FieldElement::theta(&k);
        assert_eq!(t.pow(2).minimal_polynomial(), Poly::from_ints(&[-2, 0, 1]));
        assert_eq!(FieldElement::from_int(&k, 3).minimal_polynomial(), Poly::from_ints(&[-3, 1]));
        assert!(t.is_integral());
        assert!(!t.scale(&q(1, 2)).is_integral());
    }

    #[test]
    fn refinement_keeps_the_root() {
        let k = sqrt2();
        let iv = k.refine(40);
        assert!(iv.width() <= Rational::new(1.into(), BigInt::one() << 40));
        assert!(k.min_poly().count_roots(&iv.lo, &iv.hi) == 1);
        assert_eq!(k.root_interval().lo, q(1, 1));
    }
}
