//! Dense univariate polynomials over Q.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Polynomial with rational coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        sign(&self.eval(x))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lead;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic gcd.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s)` with `s·a ≡ g (mod m)` and `g = gcd(a, m)` monic.
    pub fn inverse_mod(a: &Poly, m: &Poly) -> (Poly, Poly) {
        let (mut r0, mut r1) = (m.clone(), a.rem(m));
        let (mut s0, mut s1) = (Poly::zero(), Poly::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let lead = r0.leading().cloned().unwrap_or_else(Rational::one).recip();
        (r0.scale(&lead), s0.scale(&lead).rem(m))
    }

    /// Sturm chain `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone()];
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = seq.last().unwrap().rem(&next).scale(&-Rational::one());
            seq.push(next);
            next = r;
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &Rational, hi: &Rational) -> usize {
        let seq = self.sturm_sequence();
        let va = sign_variations(&seq, lo);
        let vb = sign_variations(&seq, hi);
        va.saturating_sub(vb)
    }

    /// Scaled copy with coprime integer coefficients and positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let s = if ints.last().unwrap().is_negative() { -g } else { g };
        ints.into_iter().map(|c| c / &s).collect()
    }

    /// Exhaustive irreducibility test over Q (rational root test, then Kronecker's
    /// factor search). Intended for small degrees.
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(d) => {
                let f = self.primitive_integer();
                if has_rational_root(&f) {
                    return false;
                }
                if d <= 3 {
                    return true;
                }
                (2..=d / 2).all(|k| !has_factor_of_degree(&f, k))
            }
        }
    }
}

pub(crate) fn sign(x: &Rational) -> Ordering {
    if x.is_zero() {
        Ordering::Equal
    } else if x.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn sign_variations(seq: &[Poly], x: &Rational) -> usize {
    let signs: Vec<Ordering> = seq
        .iter()
        .map(|p| p.sign_at(x))
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Bounds on `Σ coeffs[i]·x^i` for `x ∈ [lo, hi]`, by interval Horner evaluation.
pub(crate) fn interval_eval(coeffs: &[Rational], lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut acc_lo = Rational::zero();
    let mut acc_hi = Rational::zero();
    for c in coeffs.iter().rev() {
        let products = [&acc_lo * lo, &acc_lo * hi, &acc_hi * lo, &acc_hi * hi];
        let min = products.iter().min().unwrap().clone();
        let max = products.iter().max().unwrap().clone();
        acc_lo = min + c;
        acc_hi = max + c;
    }
    (acc_lo, acc_hi)
}

fn eval_int(f: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = vec![];
    let mut large = vec![];
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn has_rational_root(f: &[BigInt]) -> bool {
    if f[0].is_zero() {
        return true;
    }
    let lead = f.last().unwrap();
    for p in positive_divisors(&f[0]) {
        for q in positive_divisors(lead) {
            for num in [p.clone(), -p.clone()] {
                // q^d f(p/q) = Σ c_i p^i q^(d-i)
                let d = f.len() - 1;
                let mut acc = BigInt::zero();
                let mut pp = BigInt::one();
                for (i, c) in f.iter().enumerate() {
                    acc += c * &pp * num_traits::pow(q.clone(), d - i);
                    pp *= &num;
                }
                if acc.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Kronecker: any integer factor `g` of degree `k` is determined by its values at
/// `k + 1` points, and each value divides the corresponding value of `f`.
fn has_factor_of_degree(f: &[BigInt], k: usize) -> bool {
    let mut candidates: Vec<(usize, i64, Vec<BigInt>)> = (-12i64..=12)
        .map(|a| {
            let v = eval_int(f, &BigInt::from(a));
            let divs = positive_divisors(&v);
            (divs.len(), a, divs)
        })
        .collect();
    candidates.sort_by_key(|(n, a, _)| (*n, a.abs(), *a));
    let chosen = &candidates[..=k];
    let points: Vec<Rational> = chosen
        .iter()
        .map(|(_, a, _)| Rational::from_integer(BigInt::from(*a)))
        .collect();
    let lagrange: Vec<Poly> = (0..points.len())
        .map(|i| {
            let mut l = Poly::constant(Rational::one());
            for (j, xj) in points.iter().enumerate() {
                if i != j {
                    let lin = Poly::new(vec![-xj.clone(), Rational::one()]);
                    l = l.mul(&lin).scale(&(&points[i] - xj).recip());
                }
            }
            l
        })
        .collect();
    let choices: Vec<Vec<BigInt>> = chosen
        .iter()
        .enumerate()
        .map(|(i, (_, _, divs))| {
            if i == 0 {
                divs.clone()
            } else {
                divs.iter().flat_map(|d| [d.clone(), -d.clone()]).collect()
            }
        })
        .collect();
    let target = Poly::new(f.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let mut idx = vec![0usize; choices.len()];
    loop {
        let mut g = Poly::zero();
        for (i, l) in lagrange.iter().enumerate() {
            g = g.add(&l.scale(&Rational::from_integer(choices[i][idx[i]].clone())));
        }
        if g.degree().is_some_and(|dg| dg >= 1)
            && g.coeffs().iter().all(Rational::is_integer)
            && target.rem(&g).is_zero()
        {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return false;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.coeffs, "x", f)
    }
}

pub(crate) fn fmt_terms(coeffs: &[Rational], var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        match i {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{var}")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
