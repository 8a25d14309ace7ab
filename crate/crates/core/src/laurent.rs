//! Integer Laurent polynomials: the ring Λ = Z[t, t⁻¹].
//!
//! Everything downstream (Alexander matrices, minor GCDs, module factors) is
//! built on [`LaurentPoly`]. Coefficients are arbitrary precision; exponents
//! are `i64`. Polynomials are only meaningful up to units `±t^k` in most
//! knot-theoretic contexts, so [`LaurentPoly::normalize`] picks the
//! representative with minimal exponent 0 and a positive top coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("cannot evaluate a polynomial with negative exponents at t = 0")]
    ZeroEvaluationPoint,
    #[error("invalid polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// An element of Z[t, t⁻¹], stored sparsely as exponent → nonzero coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·t^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Dense coefficients `c0 + c1 t + c2 t^2 + …` (lowest degree first).
    pub fn from_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Units of Λ are exactly `±t^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.values().all(|c| c.abs().is_one())
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Span `max_exp - min_exp`; `None` for zero.
    pub fn width(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of the highest power of `t`.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The unique associate with minimal exponent 0 and positive leading
    /// coefficient. `normalize(0) = 0`.
    pub fn normalize(&self) -> Self {
        let Some(min) = self.min_exp() else {
            return Self::zero();
        };
        let shifted = self.shift(-min);
        if shifted.leading_coeff().is_some_and(|c| c.is_negative()) {
            -shifted
        } else {
            shifted
        }
    }

    /// True when `self = u·other` for a unit `u = ±t^k`.
    pub fn is_associate(&self, other: &Self) -> bool {
        self.normalize() == other.normalize()
    }

    /// Normalized GCD in Z[t, t⁻¹].
    ///
    /// Both arguments are shifted into Z[t]; the result is the integer GCD of
    /// the contents times the GCD of the primitive parts, the latter computed
    /// by a primitive remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize();
        }
        if other.is_zero() {
            return self.normalize();
        }
        let a = to_dense(self);
        let b = to_dense(other);
        let content = zpoly::content(&a).gcd(&zpoly::content(&b));
        let g = zpoly::primitive_gcd(&zpoly::primitive_part(&a), &zpoly::primitive_part(&b));
        LaurentPoly::from_coeffs(g).scale(&content).normalize()
    }

    /// Exact quotient `self / divisor` in Λ, or `None` when the division is
    /// not exact (or the divisor is zero).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dmin = divisor.min_exp()?;
        let Some(nmin) = self.min_exp() else {
            return Some(Self::zero());
        };
        // The shifted divisor has a nonzero constant term, so t-powers never
        // obstruct divisibility.
        let q = zpoly::div_exact(&to_dense(self), &to_dense(divisor))?;
        Some(LaurentPoly::from_coeffs(q).shift(nmin - dmin))
    }

    /// Substitutes `t → t^w`. For `w = 0` the result is the constant `p(1)`.
    pub fn subst_power(&self, w: i64) -> Self {
        if w == 0 {
            let s: BigInt = self.coeffs.values().sum();
            return Self::constant(s);
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e * w, c.clone()))
                .collect(),
        }
    }

    /// `p(t⁻¹)`.
    pub fn mirror(&self) -> Self {
        self.subst_power(-1)
    }

    /// Exact rational value at an integer point.
    pub fn eval_int(&self, v: i64) -> Result<BigRational, LaurentError> {
        if v == 0 {
            if self.min_exp().is_some_and(|e| e < 0) {
                return Err(LaurentError::ZeroEvaluationPoint);
            }
            return Ok(BigRational::from_integer(self.coeff(0)));
        }
        let v = BigInt::from(v);
        let mut acc = BigRational::zero();
        for (&e, c) in &self.coeffs {
            let power = num_traits::pow(v.clone(), e.unsigned_abs() as usize);
            let term = if e >= 0 {
                BigRational::from_integer(c * power)
            } else {
                BigRational::new(c.clone(), power)
            };
            acc += term;
        }
        Ok(acc)
    }

    /// Value at `t = m` in Z/nZ, reduced into `[0, n)`. Returns `None` when
    /// negative powers are present and `m` is not a unit mod `n`.
    pub fn eval_mod(&self, m: &BigInt, n: &BigInt) -> Option<BigInt> {
        assert!(n.is_positive(), "modulus must be positive");
        let m = m.mod_floor(n);
        let m_inv = if self.min_exp().is_some_and(|e| e < 0) {
            Some(mod_inverse(&m, n)?)
        } else {
            None
        };
        let mut acc = BigInt::zero();
        for (&e, c) in &self.coeffs {
            let p = if e >= 0 {
                m.modpow(&BigInt::from(e), n)
            } else {
                m_inv.as_ref()?.modpow(&BigInt::from(-e), n)
            };
            acc += c * p;
        }
        Some(acc.mod_floor(n))
    }
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(n).extended_gcd(n);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(n))
    } else {
        None
    }
}

/// Dense Z[t] coefficients of `p·t^(-min_exp)`.
fn to_dense(p: &LaurentPoly) -> Vec<BigInt> {
    let Some(min) = p.min_exp() else {
        return Vec::new();
    };
    let max = p.max_exp().unwrap_or(min);
    let mut v = vec![BigInt::zero(); (max - min + 1) as usize];
    for (e, c) in p.terms() {
        v[(e - min) as usize] = c.clone();
    }
    v
}

/// Dense polynomials over Z, lowest degree first, no trailing zeros.
mod zpoly {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};

    pub fn trim(p: &mut Vec<BigInt>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn content(p: &[BigInt]) -> BigInt {
        p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(p: &[BigInt]) -> Vec<BigInt> {
        let c = content(p);
        if c.is_zero() {
            return Vec::new();
        }
        let neg = p.last().is_some_and(|l| l.is_negative());
        p.iter()
            .map(|x| {
                let q = x / &c;
                if neg {
                    -q
                } else {
                    q
                }
            })
            .collect()
    }

    /// `lc(b)^(deg a - deg b + 1) · a mod b`.
    pub fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lb = &b[db];
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= lb;
            }
            let off = dr - db;
            for (i, bc) in b.iter().enumerate() {
                r[i + off] -= &lr * bc;
            }
            trim(&mut r);
        }
        r
    }

    /// GCD of two primitive polynomials via the primitive remainder sequence.
    pub fn primitive_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let (mut f, mut g) = if a.len() >= b.len() {
            (a.to_vec(), b.to_vec())
        } else {
            (b.to_vec(), a.to_vec())
        };
        while !g.is_empty() {
            let r = pseudo_rem(&f, &g);
            f = g;
            g = primitive_part(&r);
        }
        primitive_part(&f)
    }

    /// Exact quotient over Z, `None` if `b` does not divide `a`.
    pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        if b.is_empty() {
            return None;
        }
        if r.is_empty() {
            return Some(Vec::new());
        }
        if r.len() < b.len() {
            return None;
        }
        let db = b.len() - 1;
        let mut q = vec![BigInt::zero(); r.len() - db];
        while !r.is_empty() {
            if r.len() < b.len() {
                return None;
            }
            let dr = r.len() - 1;
            let (c, rem) = r[dr].div_rem(&b[db]);
            if !rem.is_zero() {
                return None;
            }
            let off = dr - db;
            for (i, bc) in b.iter().enumerate() {
                r[i + off] -= &c * bc;
            }
            q[off] = c;
            trim(&mut r);
        }
        trim(&mut q);
        Some(q)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

/// Canonical text: terms by decreasing exponent, e.g. `t^2 - 3t + 1`,
/// `-1 + t^-1`, `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str("t")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Accepts the canonical form and small variations of it: any term
    /// order, optional `*` between coefficient and `t`, arbitrary spacing.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| LaurentError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(err("empty input"));
        }
        let mut pos = 0;
        let mut out = LaurentPoly::zero();
        let read_digits = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                None
            } else {
                chars[start..*pos].iter().collect::<String>().parse().ok()
            }
        };
        let mut first = true;
        while pos < chars.len() {
            let mut sign = BigInt::one();
            match chars[pos] {
                '+' => pos += 1,
                '-' => {
                    sign = -sign;
                    pos += 1;
                }
                _ if first => {}
                c => return Err(err(&format!("expected `+` or `-`, found `{c}`"))),
            }
            first = false;
            let coef = read_digits(&mut pos);
            let mut exp = 0i64;
            let mut has_t = false;
            if pos < chars.len() && chars[pos] == '*' {
                if coef.is_none() {
                    return Err(err("`*` without a coefficient"));
                }
                pos += 1;
                if pos >= chars.len() || chars[pos] != 't' {
                    return Err(err("expected `t` after `*`"));
                }
            }
            if pos < chars.len() && chars[pos] == 't' {
                has_t = true;
                pos += 1;
                exp = 1;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let mut esign = 1i64;
                    if pos < chars.len() && (chars[pos] == '-' || chars[pos] == '+') {
                        if chars[pos] == '-' {
                            esign = -1;
                        }
                        pos += 1;
                    }
                    let e = read_digits(&mut pos).ok_or_else(|| err("missing exponent"))?;
                    let e: i64 = e.try_into().map_err(|_| err("exponent out of range"))?;
                    exp = esign * e;
                }
            }
            if coef.is_none() && !has_t {
                return Err(err("empty term"));
            }
            let c = coef.unwrap_or_else(BigInt::one) * sign;
            out.add_term(exp, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ring_identities() {
        assert_eq!(p("t - 1") * p("t + 1"), p("t^2 - 1"));
        let q = p("3t^4 - t^-2 + 7");
        assert_eq!(&q + &LaurentPoly::zero(), q);
        assert_eq!(p("1 - t") * p("t^-1"), p("t^-1 - 1"));
        assert_eq!(&q - &q, LaurentPoly::zero());
    }

    #[test]
    fn normalize_examples() {
        let x = p("-t^-3") * p("t^2 - t + 1");
        assert_eq!(x.normalize(), p("t^2 - t + 1"));
        assert_eq!(LaurentPoly::zero().normalize(), LaurentPoly::zero());
        assert_eq!(p("-3t^5").normalize(), p("3"));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("t^2 - 1").gcd(&p("t^3 - 1")), p("t - 1"));
        let q = p("-2t^3 + 4t^-1");
        assert_eq!(q.gcd(&LaurentPoly::zero()), q.normalize());
        assert_eq!(p("2t").gcd(&p("4t^3")), p("2"));
        assert_eq!(
            LaurentPoly::zero().gcd(&LaurentPoly::zero()),
            LaurentPoly::zero()
        );
    }

    #[test]
    fn subst_examples() {
        assert_eq!(p("t^2 - t + 1").subst_power(2), p("t^4 - t^2 + 1"));
        assert_eq!(p("t^2 - t + 1").subst_power(0), p("1"));
        assert_eq!(p("t - 1").subst_power(-1), p("t^-1 - 1"));
    }

    #[test]
    fn eval_examples() {
        let q = p("t^2 - t + 1");
        assert_eq!(q.eval_int(1).unwrap(), BigRational::from_integer(1.into()));
        assert_eq!(q.eval_int(-1).unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(
            p("t^-1").eval_int(2).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert_eq!(
            p("t^-1").eval_int(0),
            Err(LaurentError::ZeroEvaluationPoint)
        );
        assert_eq!(
            p("t + 5").eval_int(0).unwrap(),
            BigRational::from_integer(5.into())
        );
    }

    #[test]
    fn eval_mod_uses_inverse_for_negative_powers() {
        // t^-1 at t = 2 mod 5 is 3.
        assert_eq!(p("t^-1").eval_mod(&2.into(), &5.into()), Some(3.into()));
        assert_eq!(p("t^-1").eval_mod(&2.into(), &4.into()), None);
        assert_eq!(
            p("t^2 - t + 1").eval_mod(&2.into(), &3.into()),
            Some(0.into())
        );
    }

    #[test]
    fn display_canonical_form() {
        assert_eq!(p("1 - 3t + t^2").to_string(), "t^2 - 3t + 1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("3").to_string(), "3");
        assert_eq!(p("t^-1 - 1").to_string(), "-1 + t^-1");
        assert_eq!(p("-t").to_string(), "-t");
        assert_eq!(p("2*t^-3 + 1").to_string(), "1 + 2t^-3");
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("t t".parse::<LaurentPoly>().is_err());
        assert!("x + 1".parse::<LaurentPoly>().is_err());
        assert!("3 +".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn div_exact_behaviour() {
        assert_eq!(p("t^2 - 1").div_exact(&p("t - 1")), Some(p("t + 1")));
        assert_eq!(
            p("t^2 - 1").div_exact(&p("t^-3 - t^-2")),
            Some(-p("t^4 + t^3"))
        );
        assert_eq!(p("t^2 + 1").div_exact(&p("t - 1")), None);
        assert_eq!(p("3t").div_exact(&p("2")), None);
        assert_eq!(p("1").div_exact(&LaurentPoly::zero()), None);
        assert_eq!(
            LaurentPoly::zero().div_exact(&p("t")),
            Some(LaurentPoly::zero())
        );
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        (-3i64..=3, prop::collection::vec(-3i64..=3, 0..=5))
            .prop_map(|(shift, cs)| LaurentPoly::from_coeffs(cs).shift(shift))
    }

    fn unit() -> impl Strategy<Value = LaurentPoly> {
        (-5i64..=5, prop::bool::ANY)
            .prop_map(|(k, neg)| LaurentPoly::monomial(if neg { -1 } else { 1 }, k))
    }

    proptest! {
        #[test]
        fn normalize_idempotent(a in small_poly()) {
            let n = a.normalize();
            prop_assert_eq!(n.normalize(), n);
        }

        #[test]
        fn normalize_ignores_units(a in small_poly(), u in unit()) {
            prop_assert_eq!((&u * &a).normalize(), a.normalize());
        }

        #[test]
        fn subst_is_multiplicative(a in small_poly(), b in small_poly(), w in -3i64..=3) {
            prop_assert_eq!((&a * &b).subst_power(w), &a.subst_power(w) * &b.subst_power(w));
        }

        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly()) {
            let g = a.gcd(&b);
            if !g.is_zero() {
                prop_assert!(a.div_exact(&g).is_some());
                prop_assert!(b.div_exact(&g).is_some());
            }
        }

        #[test]
        fn parse_display_roundtrip(a in small_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
