//! Exact arithmetic in cyclotomic rings `Q(ζ_n)`.
//!
//! A [`CycloNum`] is stored in group-ring form: `n` rational coefficients of
//! `1, ζ, …, ζ^(n-1)`, kept over a common denominator. Products are
//! convolutions modulo `x^n - 1`; nothing is reduced modulo `Φ_n` until a
//! caller asks for a canonical form, an equality test, or a rational value.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, gcd};
use crate::error::{Error, Result};

/// Exact rational number; always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder or needs non-integer coefficients.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Some(IntPoly::new(Vec::new()));
        };
        if sd < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for i in (dd..=sd).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = rem[i].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * c;
            }
            quot[i - dd] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(quot))
    }
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by `Φ_d`
/// for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: usize) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidOrder);
    }
    let divs = divisors(n);
    let mut table: HashMap<usize, IntPoly> = HashMap::new();
    for &d in &divs {
        let proper = divs
            .iter()
            .filter(|&&e| e < d && d % e == 0)
            .fold(IntPoly::one(), |acc, e| acc.mul(&table[e]));
        let phi = IntPoly::x_pow_minus_one(d)
            .div_exact(&proper)
            .ok_or_else(|| Error::Inconsistency(format!("x^{d} - 1 not divisible by lower Φ")))?;
        table.insert(d, phi);
    }
    Ok(table.remove(&n).expect("n divides itself"))
}

thread_local! {
    static PHI_CACHE: RefCell<HashMap<usize, Rc<Vec<BigInt>>>> = RefCell::new(HashMap::new());
}

fn phi_coeffs(n: usize) -> Rc<Vec<BigInt>> {
    PHI_CACHE.with(|cache| {
        cache
            .borrow_mut()
            .entry(n)
            .or_insert_with(|| {
                Rc::new(
                    cyclotomic_polynomial(n)
                        .expect("positive order")
                        .coeffs()
                        .to_vec(),
                )
            })
            .clone()
    })
}

/// Element of `Q(ζ_n)` written as `Σ c_i ζ_n^i` with `c_i = num[i] / den`.
///
/// Equality is equality in the field: two values compare equal when their
/// difference reduces to zero modulo `Φ_n`, not when their coefficient
/// vectors agree.
#[derive(Clone, Debug)]
pub struct CycloNum {
    order: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Binary and unary operations accepted by [`ring_arith`].
#[derive(Clone, Copy, Debug)]
pub enum RingOp<'a> {
    Add(&'a CycloNum),
    Sub(&'a CycloNum),
    Mul(&'a CycloNum),
    ScalarMul(&'a Rat),
    Pow(u32),
}

/// `ζ_n^e` as an element of order `n`.
pub fn root_of_unity(n: usize, e: i64) -> Result<CycloNum> {
    if n == 0 {
        return Err(Error::InvalidOrder);
    }
    Ok(CycloNum::root(n, e.rem_euclid(n as i64) as usize))
}

pub fn ring_arith(a: &CycloNum, op: RingOp<'_>) -> Result<CycloNum> {
    match op {
        RingOp::Add(b) => a.try_add(b),
        RingOp::Sub(b) => a.try_sub(b),
        RingOp::Mul(b) => a.try_mul(b),
        RingOp::ScalarMul(c) => Ok(a.scale(c)),
        RingOp::Pow(e) => Ok(a.pow(e)),
    }
}

pub fn reduce_canonical(a: &CycloNum) -> CycloNum {
    a.reduce_canonical()
}

pub fn to_rational(a: &CycloNum) -> Option<Rat> {
    a.to_rational()
}

impl CycloNum {
    /// # Panics
    /// If `order` is zero.
    pub fn zero(order: usize) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        CycloNum {
            order,
            num: vec![BigInt::zero(); order],
            den: BigInt::one(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::root(order, 0)
    }

    /// `ζ_order^e` for `e < order`.
    fn root(order: usize, e: usize) -> Self {
        let mut z = Self::zero(order);
        z.num[e % order] = BigInt::one();
        z
    }

    pub fn from_rat(order: usize, value: &Rat) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = value.numer().clone();
        z.den = value.denom().clone();
        z
    }

    pub fn from_int(order: usize, value: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = value.into();
        z
    }

    /// Builds `Σ coeffs[i] ζ^i`, folding indices modulo `order`.
    pub fn from_coeffs(order: usize, coeffs: &[Rat]) -> Self {
        let mut z = Self::zero(order);
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        for (i, c) in coeffs.iter().enumerate() {
            z.num[i % order] += c.numer() * (&den / c.denom());
        }
        z.den = den;
        z.normalize();
        z
    }

    /// Integer coefficient vector interpreted modulo `order` (group-ring form).
    pub fn from_int_coeffs(order: usize, coeffs: &[i64]) -> Self {
        let mut z = Self::zero(order);
        for (i, c) in coeffs.iter().enumerate() {
            z.num[i % order] += *c;
        }
        z
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize) -> Rat {
        Rat::new(self.num[i % self.order].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        (0..self.order).map(|i| self.coeff(i)).collect()
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    fn check_order(&self, other: &CycloNum) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            })
        }
    }

    fn add_sub(&self, other: &CycloNum, sign: i8) -> CycloNum {
        let mut out = CycloNum::zero(self.order);
        if self.den == other.den {
            for i in 0..self.order {
                out.num[i] = if sign > 0 {
                    &self.num[i] + &other.num[i]
                } else {
                    &self.num[i] - &other.num[i]
                };
            }
            out.den = self.den.clone();
        } else {
            for i in 0..self.order {
                let a = &self.num[i] * &other.den;
                let b = &other.num[i] * &self.den;
                out.num[i] = if sign > 0 { a + b } else { a - b };
            }
            out.den = &self.den * &other.den;
        }
        out.normalize();
        out
    }

    fn mul_unchecked(&self, other: &CycloNum) -> CycloNum {
        let n = self.order;
        let mut out = CycloNum::zero(n);
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = if i + j >= n { i + j - n } else { i + j };
                out.num[k] += a * b;
            }
        }
        out.den = &self.den * &other.den;
        out.normalize();
        out
    }

    pub fn try_add(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        Ok(self.add_sub(other, 1))
    }

    pub fn try_sub(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        Ok(self.add_sub(other, -1))
    }

    pub fn try_mul(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn scale(&self, c: &Rat) -> CycloNum {
        let mut out = self.clone();
        for x in &mut out.num {
            *x *= c.numer();
        }
        out.den *= c.denom();
        out.normalize();
        out
    }

    pub fn scale_int(&self, c: &BigInt) -> CycloNum {
        let mut out = self.clone();
        for x in &mut out.num {
            *x *= c;
        }
        out.normalize();
        out
    }

    /// Multiplication by `ζ^e`, a cyclic shift of the coefficients.
    pub fn mul_root(&self, e: i64) -> CycloNum {
        let n = self.order;
        let shift = e.rem_euclid(n as i64) as usize;
        let mut num = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            num[(i + shift) % n] = c.clone();
        }
        CycloNum {
            order: n,
            num,
            den: self.den.clone(),
        }
    }

    /// Adds `c · ζ^e` in place.
    pub fn add_root_multiple(&mut self, e: usize, c: &BigInt) {
        let i = e % self.order;
        self.num[i] += c * &self.den;
        self.normalize();
    }

    pub fn pow(&self, mut e: u32) -> CycloNum {
        let mut base = self.reduce_canonical();
        let mut acc = CycloNum::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base).reduce_canonical();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base).reduce_canonical();
            }
        }
        acc
    }

    /// Image under `Q(ζ_n) → Q(ζ_m)`, `ζ_n ↦ ζ_m^(m/n)`; requires `n | m`.
    pub fn embed(&self, target: usize) -> Result<CycloNum> {
        if target == 0 || target % self.order != 0 {
            return Err(Error::InvalidEmbedding {
                from: self.order,
                to: target,
            });
        }
        let step = target / self.order;
        let mut out = CycloNum::zero(target);
        for (i, c) in self.num.iter().enumerate() {
            out.num[i * step] = c.clone();
        }
        out.den = self.den.clone();
        Ok(out)
    }

    /// Remainder modulo `Φ_n`, zero-padded back to length `n`.
    pub fn reduce_canonical(&self) -> CycloNum {
        let n = self.order;
        let phi = phi_coeffs(n);
        let d = phi.len() - 1;
        let mut num = self.num.clone();
        for i in (d..n).rev() {
            if num[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut num[i]);
            for (j, p) in phi[..d].iter().enumerate() {
                if !p.is_zero() {
                    num[i - d + j] -= &c * p;
                }
            }
        }
        let mut out = CycloNum {
            order: n,
            num,
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    pub fn is_zero(&self) -> bool {
        if self.num.iter().all(Zero::is_zero) {
            return true;
        }
        self.reduce_canonical().num.iter().all(Zero::is_zero)
    }

    /// The rational value, when the canonical form is constant.
    pub fn to_rational(&self) -> Option<Rat> {
        let r = self.reduce_canonical();
        r.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| Rat::new(r.num[0].clone(), r.den.clone()))
    }

    fn common_order(&self, other: &CycloNum) -> (CycloNum, CycloNum) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let m = self.order / gcd(self.order, other.order) * other.order;
        (
            self.embed(m).expect("lcm is a multiple"),
            other.embed(m).expect("lcm is a multiple"),
        )
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order && self.den == other.den && self.num == other.num {
            return true;
        }
        let (a, b) = self.common_order(other);
        a.add_sub(&b, -1).is_zero()
    }
}

impl Eq for CycloNum {}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        /// # Panics
        /// If the operands have different cyclotomic orders.
        impl $trait<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                self.check_order(rhs).expect("operands must share one cyclotomic order");
                $body(self, rhs)
            }
        }

        impl $trait<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycloNum, b: &CycloNum| a.add_sub(b, 1));
forward_binop!(Sub, sub, |a: &CycloNum, b: &CycloNum| a.add_sub(b, -1));
forward_binop!(Mul, mul, |a: &CycloNum, b: &CycloNum| a.mul_unchecked(b));

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Display for CycloNum {
    /// Canonical form, e.g. `1/2 - z8^3` where `z8 = exp(2πi/8)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduce_canonical();
        let mut first = true;
        for i in 0..r.order {
            let c = Rat::new(r.num[i].clone(), r.den.clone());
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "z{}", r.order)?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::euler_phi;
    use proptest::prelude::*;

    fn z(n: usize, e: i64) -> CycloNum {
        root_of_unity(n, e).unwrap()
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(z(1, 0).to_rational(), Some(rat(1, 1)));
        let r = z(4, 6);
        assert_eq!(r.coeff(2), rat(1, 1));
        assert_eq!(r.coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
        let p = &z(6, 2) * &z(6, 5);
        assert_eq!(p.coeff(1), rat(1, 1));
        assert!(matches!(root_of_unity(0, 1), Err(Error::InvalidOrder)));
    }

    #[test]
    fn ring_ops() {
        let s = ring_arith(&z(2, 0), RingOp::Add(&z(2, 1))).unwrap();
        assert!(s.is_zero());
        let p = ring_arith(&z(3, 1), RingOp::Mul(&z(3, 2))).unwrap();
        assert_eq!(p.to_rational(), Some(rat(1, 1)));
        let q = ring_arith(&z(8, 1), RingOp::Pow(4)).unwrap();
        assert_eq!(q.to_rational(), Some(rat(-1, 1)));
        let half = rat(1, 2);
        let h = ring_arith(&z(5, 2), RingOp::ScalarMul(&half)).unwrap();
        assert_eq!(h.coeff(2), half);
        assert_eq!(
            ring_arith(&z(3, 1), RingOp::Sub(&z(4, 1))),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2).unwrap(), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(6).unwrap(), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8).unwrap(), IntPoly::from_i64(&[1, 0, 0, 0, 1]));
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn cyclotomic_degree_and_product() {
        for n in 1..=24 {
            let phi = cyclotomic_polynomial(n).unwrap();
            assert_eq!(phi.degree(), Some(euler_phi(n)), "n = {n}");
            let prod = divisors(n)
                .into_iter()
                .map(|d| cyclotomic_polynomial(d).unwrap())
                .fold(IntPoly::one(), |acc, p| acc.mul(&p));
            assert_eq!(prod, IntPoly::x_pow_minus_one(n), "n = {n}");
        }
    }

    #[test]
    fn reduction_examples() {
        let all = (0..5).fold(CycloNum::zero(5), |acc, e| &acc + &z(5, e));
        assert!(all.reduce_canonical().coeffs().iter().all(Zero::is_zero));
        assert!((&z(4, 1) + &z(4, 3)).is_zero());
        let r = (&z(6, 1) + &z(6, 5)).reduce_canonical();
        assert_eq!(r.coeffs(), CycloNum::one(6).coeffs());
    }

    #[test]
    fn rational_extraction() {
        assert_eq!(CycloNum::zero(7).to_rational(), Some(rat(0, 1)));
        assert_eq!((&z(2, 0) + &z(2, 1)).to_rational(), Some(rat(0, 1)));
        assert_eq!(z(5, 1).to_rational(), None);
        let third = CycloNum::from_rat(9, &rat(1, 3));
        assert_eq!(third.to_rational(), Some(rat(1, 3)));
    }

    #[test]
    fn roots_close_up() {
        for n in 1..=24 {
            for e in -30..30 {
                assert_eq!(z(n, e).pow(n as u32).to_rational(), Some(rat(1, 1)));
            }
        }
    }

    #[test]
    fn embedding_preserves_value() {
        let a = &z(3, 1) + &CycloNum::from_rat(3, &rat(2, 5));
        let b = a.embed(12).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.coeff(4), rat(1, 1));
        assert!(a.embed(10).is_err());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!((&z(4, 1) + &z(4, 3)).to_string(), "0");
        assert_eq!(z(4, 3).to_string(), "-z4");
        let v = &CycloNum::from_rat(8, &rat(1, 2)) - &z(8, 3).scale(&rat(3, 1));
        assert_eq!(v.to_string(), "1/2 - 3*z8^3");
    }

    fn arb_cyclo(n: usize) -> impl Strategy<Value = CycloNum> {
        prop::collection::vec((-6i64..6, 1i64..5), n).prop_map(move |cs| {
            let coeffs: Vec<Rat> = cs.into_iter().map(|(a, b)| rat(a, b)).collect();
            CycloNum::from_coeffs(n, &coeffs)
        })
    }

    fn arb_pair() -> impl Strategy<Value = (CycloNum, CycloNum)> {
        (1usize..=12).prop_flat_map(|n| (arb_cyclo(n), arb_cyclo(n)))
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(a in (1usize..=16).prop_flat_map(arb_cyclo)) {
            let r = a.reduce_canonical();
            prop_assert_eq!(r.coeffs(), r.reduce_canonical().coeffs());
            prop_assert_eq!(&r, &a);
        }

        #[test]
        fn reduction_is_a_ring_homomorphism((a, b) in arb_pair()) {
            let ra = a.reduce_canonical();
            let rb = b.reduce_canonical();
            prop_assert_eq!(
                (&a * &b).reduce_canonical().coeffs(),
                (&ra * &rb).reduce_canonical().coeffs()
            );
            prop_assert_eq!(
                (&a + &b).reduce_canonical().coeffs(),
                (&ra + &rb).reduce_canonical().coeffs()
            );
        }

        #[test]
        fn extracted_rational_is_exact(a in (1usize..=12).prop_flat_map(arb_cyclo)) {
            let rational_part = CycloNum::from_rat(a.order(), &a.coeff(0));
            let candidates = [a.clone(), rational_part];
            for c in candidates {
                if let Some(q) = c.to_rational() {
                    let back = CycloNum::from_rat(c.order(), &q);
                    prop_assert!((&c - &back).is_zero());
                }
            }
        }
    }
}
