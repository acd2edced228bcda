use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_rational::Ratio;
use num_traits::{One, Zero};

/// A Gaussian integer `re + im·i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub const fn real(re: i64) -> Self {
        GaussInt { re, im: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_real(&self) -> bool {
        self.im == 0
    }

    /// True for the four units `±1, ±i`.
    pub fn is_unit(&self) -> bool {
        self.re.abs() + self.im.abs() == 1
    }

    pub fn conj(&self) -> Self {
        GaussInt::new(self.re, -self.im)
    }

    /// Inverse of a unit; `None` for anything else.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.is_unit() {
            Some(self.conj())
        } else {
            None
        }
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = GaussInt::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl From<i64> for GaussInt {
    fn from(v: i64) -> Self {
        GaussInt::real(v)
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re + o.re, self.im + o.im)
    }
}

impl AddAssign for GaussInt {
    fn add_assign(&mut self, o: GaussInt) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re - o.re, self.im - o.im)
    }
}

impl SubAssign for GaussInt {
    fn sub_assign(&mut self, o: GaussInt) {
        self.re -= o.re;
        self.im -= o.im;
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        GaussInt::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl MulAssign for GaussInt {
    fn mul_assign(&mut self, o: GaussInt) {
        *self = *self * o;
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, 1) => write!(f, "({re}+i)"),
            (re, -1) => write!(f, "({re}-i)"),
            (re, im) if im > 0 => write!(f, "({re}+{im}i)"),
            (re, im) => write!(f, "({re}{im}i)"),
        }
    }
}

/// Exact Gaussian rational, used only for point evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRational {
    pub re: Ratio<i128>,
    pub im: Ratio<i128>,
}

impl GaussRational {
    pub fn new(re: Ratio<i128>, im: Ratio<i128>) -> Self {
        GaussRational { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        GaussRational::new(Ratio::from_integer(v as i128), Ratio::zero())
    }

    pub fn from_gauss(g: GaussInt) -> Self {
        GaussRational::new(
            Ratio::from_integer(g.re as i128),
            Ratio::from_integer(g.im as i128),
        )
    }

    pub fn zero() -> Self {
        GaussRational::new(Ratio::zero(), Ratio::zero())
    }

    pub fn one() -> Self {
        GaussRational::new(Ratio::one(), Ratio::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &GaussRational) -> GaussRational {
        GaussRational::new(self.re + o.re, self.im + o.im)
    }

    pub fn mul(&self, o: &GaussRational) -> GaussRational {
        GaussRational::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }

    /// Multiplicative inverse; `None` at zero.
    pub fn inv(&self) -> Option<GaussRational> {
        let norm = self.re * self.re + self.im * self.im;
        if norm.is_zero() {
            return None;
        }
        Some(GaussRational::new(self.re / norm, -self.im / norm))
    }

    pub fn powi(&self, e: i64) -> Option<GaussRational> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = GaussRational::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(GaussInt::I * GaussInt::I, GaussInt::real(-1));
        assert_eq!(GaussInt::I.pow(4), GaussInt::ONE);
    }

    #[test]
    fn units() {
        for u in [GaussInt::ONE, -GaussInt::ONE, GaussInt::I, -GaussInt::I] {
            assert_eq!(u * u.unit_inverse().unwrap(), GaussInt::ONE);
        }
        assert!(GaussInt::new(1, 1).unit_inverse().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(GaussInt::new(2, -3).to_string(), "(2-3i)");
        assert_eq!(GaussInt::new(0, -1).to_string(), "-i");
        assert_eq!(GaussInt::new(-4, 0).to_string(), "-4");
    }
}
