//! Rational functions of `hbar` over `Q`, kept in lowest terms with monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::rational::Rational;
use super::series::Coefficient;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

/// A finite window `sum_i coeffs[i] hbar^{start+i}` of a Laurent expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentExpansion {
    pub start: i32,
    pub coeffs: Vec<Rational>,
}

impl LaurentExpansion {
    pub fn coeff(&self, j: i32) -> Rational {
        if j < self.start {
            return Rational::zero();
        }
        self.coeffs
            .get((j - self.start) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

/// Power series quotient `a / b` up to `x^{n-1}`, needs `b(0) != 0`.
fn series_div(a: &UniPoly, b: &UniPoly, n: usize) -> Vec<Rational> {
    let b0_inv = b.coeff(0).recip();
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = a.coeff(i);
        for j in 1..=i.min(b.coeffs().len().saturating_sub(1)) {
            c -= b.coeff(j) * &out[i - j];
        }
        out.push(c * &b0_inv);
    }
    out
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NonInvertible("rational function with zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g)?;
        let (den, _) = den.divrem(&g)?;
        let lead = den.leading().recip();
        Ok(RationalFunction {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFunction {
            num: p,
            den: UniPoly::one(),
        }
    }

    /// `hbar^k` for any integer `k`.
    pub fn hbar_power(k: i32) -> Self {
        if k >= 0 {
            Self::from_poly(UniPoly::monomial(Rational::one(), k as usize))
        } else {
            RationalFunction {
                num: UniPoly::one(),
                den: UniPoly::monomial(Rational::one(), (-k) as usize),
            }
        }
    }

    /// `a + b hbar`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::from_poly(UniPoly::linear(a, b))
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Whether the only possible pole is at `hbar = 0`.
    pub fn denominator_is_hbar_power(&self) -> bool {
        self.den.coeffs()[..self.den.coeffs().len() - 1]
            .iter()
            .all(|c| c.is_zero())
    }

    /// Value at `hbar = x`; a pole is a domain error.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Domain(format!("evaluation at a pole hbar = {x}")));
        }
        Ok(self.num.eval(x) / d)
    }

    /// `hbar -> -hbar`.
    pub fn reflect(&self) -> Self {
        Self::new(self.num.reflect(), self.den.reflect()).expect("nonzero denominator")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        RationalFunction {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    /// Laurent expansion at `hbar = 0`, exact for every power up to `max_power`.
    pub fn laurent_at_zero(&self, max_power: i32) -> LaurentExpansion {
        let (Some(a), Some(b)) = (self.num.valuation(), self.den.valuation()) else {
            return LaurentExpansion {
                start: max_power + 1,
                coeffs: Vec::new(),
            };
        };
        let start = a as i32 - b as i32;
        let n = (max_power - start + 1).max(0) as usize;
        let coeffs = series_div(&self.num.unshift(a), &self.den.unshift(b), n);
        LaurentExpansion { start, coeffs }
    }

    /// Expansion in `1/hbar` at infinity, from the top power down to `min_power`.
    pub fn expand_at_infinity(&self, min_power: i32) -> LaurentExpansion {
        let Some(dn) = self.num.degree() else {
            return LaurentExpansion {
                start: min_power,
                coeffs: Vec::new(),
            };
        };
        let dd = self.den.degree().expect("nonzero denominator");
        let top = dn as i32 - dd as i32;
        if top < min_power {
            return LaurentExpansion {
                start: min_power,
                coeffs: Vec::new(),
            };
        }
        // f = hbar^top * rev(num)(t) / rev(den)(t) with t = 1/hbar
        let n = (top - min_power + 1) as usize;
        let mut desc = series_div(&self.num.reversed(dn), &self.den.reversed(dd), n);
        desc.reverse();
        LaurentExpansion {
            start: min_power,
            coeffs: desc,
        }
    }

    pub fn render(&self) -> String {
        if self.is_polynomial() {
            format!("{}", self.num)
        } else {
            format!("({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Coefficient for RationalFunction {
    fn vanishes(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        RationalFunction::scale(self, c)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: Self) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn normalization() {
        // (2h + 2) / (4h^2 + 4h) = (1/2) / h
        let f = RationalFunction::new(
            UniPoly::new(vec![int(2), int(2)]),
            UniPoly::new(vec![int(0), int(4), int(4)]),
        )
        .unwrap();
        assert_eq!(f, RationalFunction::hbar_power(-1).scale(&rat(1, 2)));
        assert!(f.denominator_is_hbar_power());
        assert!(RationalFunction::new(UniPoly::one(), UniPoly::zero()).is_err());
    }

    #[test]
    fn expansions() {
        // 1/(h(1+h)) = 1/h - 1 + h - ...
        let f = RationalFunction::new(UniPoly::one(), UniPoly::new(vec![int(0), int(1), int(1)])).unwrap();
        let z = f.laurent_at_zero(1);
        assert_eq!(z.start, -1);
        assert_eq!(z.coeffs, vec![int(1), int(-1), int(1)]);
        // at infinity: 1/h^2 - 1/h^3 + ...
        let inf = f.expand_at_infinity(-4);
        assert_eq!(inf.coeff(-1), int(0));
        assert_eq!(inf.coeff(-2), int(1));
        assert_eq!(inf.coeff(-3), int(-1));
        assert_eq!(inf.coeff(-4), int(1));
        assert!(f.eval(&int(-1)).is_err());
    }

    proptest! {
        #[test]
        fn field_axioms(a in -5i64..=5, b in 1i64..=5, c in -5i64..=5) {
            let f = RationalFunction::new(UniPoly::new(vec![int(a), int(1)]), UniPoly::new(vec![int(b), int(1), int(c)])).unwrap();
            let g = RationalFunction::linear(int(c), int(b));
            let h = &(&f * &g) + &f;
            prop_assert_eq!(&h - &f, &f * &g);
            if !g.is_zero() {
                prop_assert_eq!((&f * &g).try_div(&g).unwrap(), f.clone());
            }
            prop_assert_eq!(f.reflect().reflect(), f.clone());
        }
    }
}
