use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;

use super::parse::{fmt_exponent, join_terms, parse_terms};
use super::{GaussInt, GaussRational, PolyError};

/// Laurent polynomial in `t` with Gaussian-integer coefficients.
///
/// Exponents are stored as integer counts of quarter-units, so `t^{1/2}` has
/// key 2 and the bracket variable `A = t^{-1/4}` has key -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, GaussInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(GaussInt::ONE)
    }

    pub fn constant(c: GaussInt) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn int(c: i64) -> Self {
        LaurentPoly::constant(GaussInt::real(c))
    }

    /// `c · t^{q/4}`.
    pub fn monomial(c: GaussInt, quarters: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(quarters, c);
        }
        LaurentPoly { terms }
    }

    /// `t^{q/4}` with coefficient one.
    pub fn t_quarters(quarters: i64) -> Self {
        LaurentPoly::monomial(GaussInt::ONE, quarters)
    }

    /// Builds from `(quarter exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<GaussInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Builds from integer-exponent coefficients, `coeffs[k]` multiplying `t^{lo+k}`.
    pub fn from_int_coeffs(lo: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (4 * (lo + k as i64), c)),
        )
    }

    pub fn add_term(&mut self, quarters: i64, c: GaussInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(quarters).or_insert(GaussInt::ZERO);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&quarters);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, GaussInt)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&GaussInt::ONE)
    }

    pub fn coeff(&self, quarters: i64) -> GaussInt {
        self.terms.get(&quarters).copied().unwrap_or(GaussInt::ZERO)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The single term if this is `c·t^e` with `c` a unit.
    pub fn as_unit_monomial(&self) -> Option<(i64, GaussInt)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, &c) = self.terms.iter().next()?;
        c.is_unit().then_some((e, c))
    }

    /// Inverse in the ring; exists only for unit monomials.
    pub fn inverse(&self) -> Option<LaurentPoly> {
        let (e, c) = self.as_unit_monomial()?;
        Some(LaurentPoly::monomial(c.unit_inverse()?, -e))
    }

    pub fn scale(&self, c: GaussInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &v)| (e, v * c)).collect(),
        }
    }

    /// Multiplies by `t^{q/4}`.
    pub fn shift(&self, quarters: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &v)| (e + quarters, v)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative powers need an invertible base.
    pub fn powi(&self, e: i64) -> Option<LaurentPoly> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            Some(self.inverse()?.pow(e.unsigned_abs() as u32))
        }
    }

    /// Substitutes `t ↦ t^{-1}`.
    pub fn invert_variable(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &v)| (-e, v)).collect(),
        }
    }

    /// Substitutes `t ↦ t^k` (k may be negative).
    pub fn scale_exponents(&self, k: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(&e, &v)| (e * k, v)))
    }

    /// Divides every exponent by `k`; fails unless all are divisible.
    pub fn divide_exponents(&self, k: i64) -> Option<LaurentPoly> {
        if self.terms.keys().any(|e| e % k != 0) {
            return None;
        }
        Some(LaurentPoly {
            terms: self.terms.iter().map(|(&e, &v)| (e / k, v)).collect(),
        })
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussInt::is_real)
    }

    /// Real-coefficient view; `ResidualImaginaryPart` if any coefficient has an imaginary part.
    pub fn require_real(self) -> Result<LaurentPoly, PolyError> {
        if self.is_real() {
            Ok(self)
        } else {
            Err(PolyError::ResidualImaginaryPart(self.to_string()))
        }
    }

    /// Whether all exponents are whole powers of `t`.
    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e % 4 == 0)
    }

    /// Invariant under `t ↦ t^{-1}`.
    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_variable()
    }

    /// Exact evaluation at a Gaussian rational point.
    pub fn eval_at(&self, t0: &GaussRational) -> Result<GaussRational, PolyError> {
        if !self.has_integer_exponents() {
            return Err(PolyError::FractionalExponent);
        }
        if t0.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(PolyError::ZeroEvaluationPoint);
        }
        let mut acc = GaussRational::zero();
        for (e, c) in self.terms() {
            let p = t0.powi(e / 4).ok_or(PolyError::ZeroEvaluationPoint)?;
            acc = acc.add(&p.mul(&GaussRational::from_gauss(c)));
        }
        Ok(acc)
    }

    /// Evaluation at an integer; only for real, integer-exponent polynomials.
    pub fn eval_int(&self, t0: i64) -> Result<Ratio<i128>, PolyError> {
        let v = self.eval_at(&GaussRational::from_int(t0))?;
        if !v.im.is_zero() {
            return Err(PolyError::ResidualImaginaryPart(self.to_string()));
        }
        Ok(v.re)
    }

    /// Integer coefficients of a real polynomial with whole exponents, lowest first.
    pub fn int_coeffs(&self) -> Option<(i64, Vec<i64>)> {
        if !self.is_real() || !self.has_integer_exponents() {
            return None;
        }
        let lo = self.min_exp()? / 4;
        let hi = self.max_exp()? / 4;
        Some((
            lo,
            (lo..=hi).map(|k| self.coeff(4 * k).re).collect(),
        ))
    }

    /// Canonical text using `var` and exponents scaled by `num/den` relative
    /// to whole powers of `t`. With `var = "t", num = 1, den = 1` this is the
    /// default display.
    pub fn display_as(&self, var: &str, num: i64, den: i64) -> String {
        join_terms(self.terms.iter().map(|(&e, &c)| {
            let exp = Ratio::new(e * num, 4 * den);
            let mono = if exp.is_zero() {
                String::new()
            } else if exp == Ratio::from_integer(1) {
                var.to_string()
            } else {
                format!("{var}^{}", fmt_exponent(exp))
            };
            (c, mono)
        }))
    }

    /// Parses with a chosen variable name and the same exponent scaling as
    /// [`LaurentPoly::display_as`].
    pub fn parse_as(s: &str, var: char, num: i64, den: i64) -> Result<LaurentPoly, PolyError> {
        let mut p = LaurentPoly::zero();
        for (c, mono) in parse_terms(s)? {
            let mut exp = Ratio::from_integer(0);
            for (v, e) in mono {
                if v != var {
                    return Err(PolyError::Parse(format!("unexpected variable '{v}'")));
                }
                exp += e;
            }
            let q = exp * Ratio::from_integer(4 * den) / Ratio::from_integer(num);
            if !q.is_integer() {
                return Err(PolyError::Parse(format!(
                    "exponent {} is not a quarter-integer",
                    fmt_exponent(exp)
                )));
            }
            p.add_term(q.to_integer(), c);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_as("t", 1, 1))
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        LaurentPoly::parse_as(s, 't', 1, 1)
    }
}

impl From<GaussInt> for LaurentPoly {
    fn from(c: GaussInt) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::int(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &o.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &o.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &o.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-GaussInt::ONE)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, o: $ty) -> $ty { (&self).$m(&o) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, o: &$ty) -> $ty { (&self).$m(o) }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $m(self, o: $ty) -> $ty { self.$m(&o) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(LaurentPoly, Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
