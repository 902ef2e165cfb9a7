#![allow(dead_code)]

use std::cmp::Ordering;
use std::sync::Arc;

use csl_core::catalog::{catalog_get, catalog_keys};
use csl_core::coincidence::Isometry;
use csl_core::numfield::{FieldElement, FieldMatrix, NumberField, Poly, Rational, Subfield};
use csl_core::smodule::SModule;
use csl_core::sring::SRing;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn catalog_modules() -> Vec<(String, SModule)> {
    catalog_keys().iter().map(|k| (k.to_string(), catalog_get(k).unwrap().module)).collect()
}

/// One module per distinct ambient field in the catalog.
pub fn catalog_fields() -> Vec<(String, Arc<NumberField>)> {
    let mut out: Vec<(String, Arc<NumberField>)> = Vec::new();
    for (key, m) in catalog_modules() {
        if !out.iter().any(|(_, l)| l.is_same(m.field())) {
            out.push((key, m.field().clone()));
        }
    }
    out
}

pub fn random_rational<R: Rng>(rng: &mut R, height: i64) -> Rational {
    q(rng.gen_range(-height..=height), rng.gen_range(1..=height))
}

pub fn random_element<R: Rng>(rng: &mut R, l: &Arc<NumberField>, height: i64) -> FieldElement {
    let coords = (0..l.degree()).map(|_| random_rational(rng, height)).collect();
    FieldElement::new(l, coords).unwrap()
}

pub fn random_nonzero_element<R: Rng>(rng: &mut R, l: &Arc<NumberField>, height: i64) -> FieldElement {
    loop {
        let x = random_element(rng, l, height);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_z_coordinates<R: Rng>(rng: &mut R, len: usize, height: i64) -> Vec<BigInt> {
    loop {
        let z: Vec<BigInt> = (0..len).map(|_| BigInt::from(rng.gen_range(-height..=height))).collect();
        if z.iter().any(|x| !x.is_zero()) {
            return z;
        }
    }
}

/// A nonzero element of `Γ` with Z-coordinates of height at most `height`.
pub fn random_module_vector<R: Rng>(rng: &mut R, m: &SModule, height: i64) -> Vec<FieldElement> {
    m.from_z_coordinates(&random_z_coordinates(rng, m.z_rank(), height))
}

/// Product of `count` reflections along random module vectors.
pub fn random_reflection_product<R: Rng>(rng: &mut R, m: &SModule, count: usize, height: i64) -> Isometry {
    let mut f = Isometry::identity(m.field(), m.dim());
    for _ in 0..count {
        let v = random_module_vector(rng, m, height);
        f = f.compose(&Isometry::reflection(&v).unwrap()).unwrap();
    }
    f
}

/// Invertible matrix with small rational entries.
pub fn random_rational_matrix<R: Rng>(rng: &mut R, l: &Arc<NumberField>, n: usize, height: i64) -> FieldMatrix {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| random_rational(rng, height)).collect()).collect();
        let m = FieldMatrix::from_rationals(l, &rows).unwrap();
        if !m.determinant().unwrap().is_zero() {
            return m;
        }
    }
}

pub fn sqrt2_field() -> Arc<NumberField> {
    NumberField::new(Poly::from_ints(&[-2, 0, 1]), q(1, 1), q(2, 1)).unwrap()
}

/// A Z-module over `K = Q` inside `Q(√2)^n`.
pub fn rational_module(l: &Arc<NumberField>, basis: FieldMatrix) -> SModule {
    SModule::new(Arc::new(SRing::integers(l)), basis, None).unwrap()
}

pub fn quartic_counterexample() -> SModule {
    let l = NumberField::new(Poly::from_ints(&[-2, 0, 0, 0, 1]), q(1, 1), q(2, 1)).unwrap();
    let (o, z, t) = (FieldElement::one(&l), FieldElement::zero(&l), FieldElement::theta(&l));
    let basis = FieldMatrix::from_rows(&l, vec![vec![o, z.clone()], vec![z, t]]).unwrap();
    SModule::new(Arc::new(SRing::integers(&l)), basis, None).unwrap()
}

pub fn whole_ring(l: &Arc<NumberField>, zbasis: Vec<FieldElement>) -> Arc<SRing> {
    Arc::new(SRing::validate(zbasis, Subfield::whole(l)).unwrap())
}

// ---- independent 128-bit floating evaluation ----

pub type Float = FBig;

const PREC: usize = 128;

fn to_ibig(b: &BigInt) -> IBig {
    IBig::from_str_radix(&b.to_str_radix(16), 16).unwrap()
}

pub fn float_of(r: &Rational) -> Float {
    let n = Float::from(to_ibig(r.numer())).with_precision(PREC).value();
    let d = Float::from(to_ibig(r.denom())).with_precision(PREC).value();
    n / d
}

fn float_poly(coeffs: &[Float], x: &Float) -> Float {
    let mut acc = Float::ZERO.with_precision(PREC).value();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// θ to about `PREC` bits by float bisection on the isolating interval.
pub fn float_theta(l: &NumberField) -> Float {
    let coeffs: Vec<Float> = l.min_poly().coeffs().iter().map(float_of).collect();
    let mut lo = float_of(&l.root_interval().lo);
    let mut hi = float_of(&l.root_interval().hi);
    let lo_sign = float_poly(&coeffs, &lo).sign();
    let two = Float::from(2u8).with_precision(PREC).value();
    for _ in 0..PREC {
        let mid = (lo.clone() + &hi) / &two;
        if float_poly(&coeffs, &mid).sign() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Sign by 128-bit evaluation; `None` when the value is too close to zero to call.
pub fn float_sign(x: &FieldElement, theta: &Float) -> Option<Ordering> {
    let coeffs: Vec<Float> = x.coords().iter().map(float_of).collect();
    let v = float_poly(&coeffs, theta);
    let scale: f64 = x.coords().iter().map(|c| c.abs().to_f64().unwrap_or(f64::MAX)).sum::<f64>() + 1.0;
    let mag = v.to_f64().value().abs();
    if mag <= scale * 2f64.powi(-100) {
        return None;
    }
    Some(if v.sign() == dashu_int::Sign::Negative { Ordering::Less } else { Ordering::Greater })
}

// ---- brute-force coset enumeration ----

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `[Z^r : X·Z^r]` for an integer matrix `X`, by counting the points of the
/// box `[0, M)^r` that lie in `X·Z^r`, where `M = |det X|`. Returns `None`
/// when the box has more than `limit` points.
pub fn coset_count_index(x: &[Vec<i64>], limit: u64) -> Option<u64> {
    let r = x.len();
    let (adj, det) = adjugate(x);
    if det == 0 {
        return None;
    }
    let m = det.abs();
    let total = (m as u64).checked_pow(r as u32)?;
    if total > limit {
        return None;
    }
    // y ∈ X·Z^r  iff  adj(X)·y ≡ 0 (mod det)
    let mut count = 0u64;
    let mut y = vec![0i64; r];
    loop {
        if adj.iter().all(|row| row.iter().zip(&y).map(|(a, b)| a * b).sum::<i64>() % det == 0) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == r {
                return Some(total / count);
            }
            y[k] += 1;
            if y[k] < m {
                break;
            }
            y[k] = 0;
            k += 1;
        }
    }
}

/// `[Z^2 : Z^2 ∩ f·Z^2]` for a rational 2×2 orthogonal `f = A/c`, by counting
/// `y ∈ [0, c)^2` with `fᵀy` integral.
pub fn coset_count_coincidence(a: [[i64; 2]; 2], c: i64) -> u64 {
    let mut count = 0u64;
    for y0 in 0..c {
        for y1 in 0..c {
            let u = a[0][0] * y0 + a[1][0] * y1;
            let v = a[0][1] * y0 + a[1][1] * y1;
            if u % c == 0 && v % c == 0 {
                count += 1;
            }
        }
    }
    (c as u64 * c as u64) / count
}

/// Integer adjugate and determinant by cofactor expansion.
#[allow(clippy::needless_range_loop)]
pub fn adjugate(x: &[Vec<i64>]) -> (Vec<Vec<i64>>, i64) {
    let r = x.len();
    if r == 1 {
        return (vec![vec![1]], x[0][0]);
    }
    let minor = |i: usize, j: usize| -> Vec<Vec<i64>> {
        x.iter()
            .enumerate()
            .filter(|(a, _)| *a != i)
            .map(|(_, row)| row.iter().enumerate().filter(|(b, _)| *b != j).map(|(_, v)| *v).collect())
            .collect()
    };
    let mut adj = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = sign * adjugate(&minor(i, j)).1;
        }
    }
    let det = (0..r).map(|j| x[0][j] * adj[j][0]).sum();
    (adj, det)
}

/// Pythagorean rotation from coprime `(a, b)`: entries over `c = a² + b²`.
pub fn pythagorean(a: i64, b: i64) -> ([[i64; 2]; 2], i64) {
    let (p, s, c) = (a * a - b * b, 2 * a * b, a * a + b * b);
    let g = gcd(gcd(p, s), c);
    ([[p / g, -s / g], [s / g, p / g]], c / g)
}
