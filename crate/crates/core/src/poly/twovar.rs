use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;

use super::laurent::forward_owned;
use super::parse::{join_terms, parse_terms};
use super::{GaussInt, LaurentPoly, PolyError};

/// Laurent polynomial in `a` and `z` with integer coefficients. Keys are `(a-exponent, z-exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TwoVarPoly {
    terms: BTreeMap<(i64, i64), i64>,
}

impl TwoVarPoly {
    pub fn zero() -> Self {
        TwoVarPoly::default()
    }

    pub fn one() -> Self {
        TwoVarPoly::monomial(1, 0, 0)
    }

    pub fn int(c: i64) -> Self {
        TwoVarPoly::monomial(c, 0, 0)
    }

    /// `c · a^i z^j`.
    pub fn monomial(c: i64, a_exp: i64, z_exp: i64) -> Self {
        let mut p = TwoVarPoly::zero();
        p.add_term(a_exp, z_exp, c);
        p
    }

    pub fn a() -> Self {
        TwoVarPoly::monomial(1, 1, 0)
    }

    pub fn z() -> Self {
        TwoVarPoly::monomial(1, 0, 1)
    }

    /// Builds from `((a-exp, z-exp), coefficient)` pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), i64)>) -> Self {
        let mut p = TwoVarPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, a_exp: i64, z_exp: i64, c: i64) {
        if c == 0 {
            return;
        }
        let key = (a_exp, z_exp);
        let slot = self.terms.entry(key).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a_exp: i64, z_exp: i64) -> i64 {
        self.terms.get(&(a_exp, z_exp)).copied().unwrap_or(0)
    }

    pub fn scale(&self, c: i64) -> TwoVarPoly {
        TwoVarPoly::from_terms(self.terms().map(|(k, v)| (k, v * c)))
    }

    /// Multiplies by `a^i z^j`.
    pub fn shift(&self, a_exp: i64, z_exp: i64) -> TwoVarPoly {
        TwoVarPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), &c)| ((i + a_exp, j + z_exp), c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> TwoVarPoly {
        let mut acc = TwoVarPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `a ↦ a^{-1}`, the effect of mirroring on the Kauffman polynomial.
    pub fn invert_a(&self) -> TwoVarPoly {
        TwoVarPoly {
            terms: self.terms.iter().map(|(&(i, j), &c)| ((-i, j), c)).collect(),
        }
    }

    pub fn min_z_exp(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, j)| j).min()
    }

    /// Image under `a ↦ a_image`, `z ↦ z_image`.
    ///
    /// Negative exponents require the image to be a unit monomial.
    pub fn substitute(
        &self,
        a_image: &LaurentPoly,
        z_image: &LaurentPoly,
    ) -> Result<LaurentPoly, PolyError> {
        let mut a_pows: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        let mut z_pows: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero();
        for (&(i, j), &c) in &self.terms {
            if !a_pows.contains_key(&i) {
                let v = a_image
                    .powi(i)
                    .ok_or(PolyError::NonInvertibleImage('a'))?;
                a_pows.insert(i, v);
            }
            if !z_pows.contains_key(&j) {
                let v = z_image
                    .powi(j)
                    .ok_or(PolyError::NonInvertibleImage('z'))?;
                z_pows.insert(j, v);
            }
            let term = (&a_pows[&i] * &z_pows[&j]).scale(GaussInt::real(c));
            out = &out + &term;
        }
        Ok(out)
    }
}

/// Applies a substitution and insists on a real result.
pub fn two_var_substitute(
    f: &TwoVarPoly,
    a_image: &LaurentPoly,
    z_image: &LaurentPoly,
) -> Result<LaurentPoly, PolyError> {
    f.substitute(a_image, z_image)?.require_real()
}

fn var_power(var: char, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        e => format!("{var}^{e}"),
    }
}

impl fmt::Display for TwoVarPoly {
    /// Terms ordered by z-exponent, then a-exponent, both ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|(&(i, j), _)| (j, i));
        f.write_str(&join_terms(keys.into_iter().map(|(&(i, j), &c)| {
            (
                GaussInt::real(c),
                format!("{}{}", var_power('a', i), var_power('z', j)),
            )
        })))
    }
}

impl FromStr for TwoVarPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let mut p = TwoVarPoly::zero();
        for (c, mono) in parse_terms(s)? {
            if !c.is_real() {
                return Err(PolyError::Parse("imaginary coefficient".into()));
            }
            let mut ea = Ratio::from_integer(0);
            let mut ez = Ratio::from_integer(0);
            for (v, e) in mono {
                match v {
                    'a' => ea += e,
                    'z' => ez += e,
                    _ => return Err(PolyError::Parse(format!("unexpected variable '{v}'"))),
                }
            }
            if !ea.is_integer() || !ez.is_integer() {
                return Err(PolyError::Parse("fractional exponent".into()));
            }
            p.add_term(ea.to_integer(), ez.to_integer(), c.re);
        }
        Ok(p)
    }
}

impl Add<&TwoVarPoly> for &TwoVarPoly {
    type Output = TwoVarPoly;
    fn add(self, o: &TwoVarPoly) -> TwoVarPoly {
        let mut out = self.clone();
        for (&(i, j), &c) in &o.terms {
            out.add_term(i, j, c);
        }
        out
    }
}

impl Sub<&TwoVarPoly> for &TwoVarPoly {
    type Output = TwoVarPoly;
    fn sub(self, o: &TwoVarPoly) -> TwoVarPoly {
        let mut out = self.clone();
        for (&(i, j), &c) in &o.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul<&TwoVarPoly> for &TwoVarPoly {
    type Output = TwoVarPoly;
    fn mul(self, o: &TwoVarPoly) -> TwoVarPoly {
        let mut out = TwoVarPoly::zero();
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &o.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &TwoVarPoly {
    type Output = TwoVarPoly;
    fn neg(self) -> TwoVarPoly {
        self.scale(-1)
    }
}

impl Neg for TwoVarPoly {
    type Output = TwoVarPoly;
    fn neg(self) -> TwoVarPoly {
        self.scale(-1)
    }
}

forward_owned!(TwoVarPoly, Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn king_a() -> LaurentPoly {
        LaurentPoly::monomial(GaussInt::I, -8)
    }

    fn king_z() -> LaurentPoly {
        LaurentPoly::monomial(GaussInt::I, 4) - LaurentPoly::monomial(GaussInt::I, -4)
    }

    #[test]
    fn substitute_constants_and_a_squared() {
        assert_eq!(
            two_var_substitute(&TwoVarPoly::one(), &king_a(), &king_z()).unwrap(),
            LaurentPoly::one()
        );
        let a2 = TwoVarPoly::monomial(1, 2, 0);
        assert_eq!(
            two_var_substitute(&a2, &king_a(), &king_z()).unwrap(),
            "-t^-4".parse().unwrap()
        );
    }

    #[test]
    fn substitute_rejects() {
        let zinv = TwoVarPoly::monomial(1, 0, -1);
        assert!(matches!(
            zinv.substitute(&king_a(), &king_z()),
            Err(PolyError::NonInvertibleImage('z'))
        ));
        // a alone maps to i t^-2, not real
        assert!(matches!(
            two_var_substitute(&TwoVarPoly::a(), &king_a(), &king_z()),
            Err(PolyError::ResidualImaginaryPart(_))
        ));
    }

    #[test]
    fn display_and_parse() {
        let f: TwoVarPoly = "a^-2z^3 - 2 + z + a^2".parse().unwrap();
        assert_eq!(f.to_string(), "-2 + a^2 + z + a^-2z^3");
        assert_eq!(f.to_string().parse::<TwoVarPoly>().unwrap(), f);
        assert_eq!(TwoVarPoly::zero().to_string(), "0");
        assert!("a^1/2".parse::<TwoVarPoly>().is_err());
        assert!("t".parse::<TwoVarPoly>().is_err());
    }

    fn arb() -> impl Strategy<Value = TwoVarPoly> {
        prop::collection::vec(((-4i64..5, -1i64..4), -3i64..4), 0..5)
            .prop_map(TwoVarPoly::from_terms)
    }

    proptest! {
        #[test]
        fn substitute_is_ring_morphism(f in arb(), g in arb()) {
            let (a, z) = (king_a(), king_z());
            // z has negative exponents here so use an invertible z image for the morphism check
            let zu = LaurentPoly::monomial(GaussInt::I, 4);
            let lhs = (&f * &g).substitute(&a, &zu).unwrap();
            let rhs = f.substitute(&a, &zu).unwrap() * g.substitute(&a, &zu).unwrap();
            prop_assert_eq!(lhs, rhs);
            let sum = (&f + &g).substitute(&a, &zu).unwrap();
            prop_assert_eq!(sum, f.substitute(&a, &zu).unwrap() + g.substitute(&a, &zu).unwrap());
            let f0 = TwoVarPoly::from_terms(f.terms().filter(|((_, j), _)| *j >= 0));
            let g0 = TwoVarPoly::from_terms(g.terms().filter(|((_, j), _)| *j >= 0));
            prop_assert_eq!(
                (&f0 * &g0).substitute(&a, &z).unwrap(),
                f0.substitute(&a, &z).unwrap() * g0.substitute(&a, &z).unwrap()
            );
        }

        #[test]
        fn roundtrip(f in arb()) {
            prop_assert_eq!(f.to_string().parse::<TwoVarPoly>().unwrap(), f);
        }
    }
}
