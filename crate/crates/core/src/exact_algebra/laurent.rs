//! Laurent polynomials in `hbar` with cohomology-class coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::cohomology::{CohClass, RingDescriptor};
use super::poly::UniPoly;
use super::ratfunc::RationalFunction;
use super::rational::{int, Rational};
use super::series::Coefficient;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct HbarLaurent {
    ring: Arc<RingDescriptor>,
    terms: BTreeMap<i32, CohClass>,
}

impl HbarLaurent {
    pub fn zero(ring: &Arc<RingDescriptor>) -> Self {
        HbarLaurent {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<RingDescriptor>) -> Self {
        Self::from_class(CohClass::one(ring))
    }

    pub fn from_class(c: CohClass) -> Self {
        Self::term(c, 0)
    }

    /// `c * hbar^j`.
    pub fn term(c: CohClass, j: i32) -> Self {
        let mut out = Self::zero(c.ring());
        if !c.is_zero() {
            out.terms.insert(j, c);
        }
        out
    }

    /// `c + m hbar`.
    pub fn linear_factor(c: &CohClass, m: i64) -> Self {
        let mut out = Self::from_class(c.clone());
        out = &out + &Self::term(CohClass::scalar(c.ring(), int(m)), 1);
        out
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i32, &CohClass)> {
        self.terms.iter()
    }

    /// Coefficient of `hbar^j`.
    pub fn coeff(&self, j: i32) -> CohClass {
        self.terms
            .get(&j)
            .cloned()
            .unwrap_or_else(|| CohClass::zero(&self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_power(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_classes(|x| x.scale(c))
    }

    pub fn mul_class(&self, c: &CohClass) -> Self {
        self.map_classes(|x| x * c)
    }

    pub fn map_classes(&self, f: impl Fn(&CohClass) -> CohClass) -> Self {
        let mut out = Self::zero(&self.ring);
        for (j, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(*j, v);
            }
        }
        out
    }

    /// `hbar -> -hbar`.
    pub fn reflect(&self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (j, c) in &self.terms {
            let v = if j % 2 == 0 { c.clone() } else { -c };
            out.terms.insert(*j, v);
        }
        out
    }

    /// Multiplies by `hbar^k`.
    pub fn shift(&self, k: i32) -> Self {
        HbarLaurent {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(j, c)| (j + k, c.clone())).collect(),
        }
    }

    /// Keeps only the scalar (degree-zero) part of every coefficient.
    pub fn scalar_part(&self) -> Self {
        self.map_classes(|c| CohClass::scalar(&self.ring, c.constant_term()))
    }

    /// Integrates each coefficient over the ambient product; keyed by `hbar` power.
    pub fn integrate(&self) -> BTreeMap<i32, Rational> {
        self.terms
            .iter()
            .map(|(j, c)| (*j, c.integrate()))
            .filter(|(_, x)| !x.is_zero())
            .collect()
    }

    /// Evaluates the generators at `p_i = values[i]` and returns the resulting
    /// rational function of `hbar`.
    pub fn to_ratfunc_at(&self, values: &[Rational]) -> RationalFunction {
        let Some(lo) = self.min_power() else {
            return RationalFunction::zero();
        };
        let shift = lo.min(0);
        let hi = self.max_power().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); (hi - shift + 1) as usize];
        for (j, c) in &self.terms {
            coeffs[(j - shift) as usize] = c.evaluate(values);
        }
        RationalFunction::new(UniPoly::new(coeffs), UniPoly::monomial(int(1), (-shift) as usize))
            .expect("monomial denominator")
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::Descriptor(format!(
                "hbar-Laurent rings differ: {:?} vs {:?}",
                self.ring.top(),
                other.ring.top()
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (j, c) in &other.terms {
            let sum = match terms.get(j) {
                Some(x) => x.try_add(c)?,
                None => c.clone(),
            };
            if sum.is_zero() {
                terms.remove(j);
            } else {
                terms.insert(*j, sum);
            }
        }
        Ok(HbarLaurent {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms: BTreeMap<i32, CohClass> = BTreeMap::new();
        for (j1, c1) in &self.terms {
            for (j2, c2) in &other.terms {
                let prod = c1.try_mul(c2)?;
                if prod.is_zero() {
                    continue;
                }
                let slot = terms
                    .entry(j1 + j2)
                    .or_insert_with(|| CohClass::zero(&self.ring));
                *slot = &*slot + &prod;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HbarLaurent {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(j, c)| match j {
                0 => format!("({c})"),
                1 => format!("({c})*h"),
                _ => format!("({c})*h^{j}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `(c + m hbar)^{-1}` for nilpotent `c`, as the terminating geometric series
/// `sum_j (-c)^j / (m hbar)^{j+1}`.
pub fn invert_linear_factor(c: &CohClass, m: i64) -> Result<HbarLaurent> {
    if m == 0 {
        return Err(Error::NonInvertible("linear factor with zero hbar coefficient".into()));
    }
    if !c.constant_term().is_zero() {
        return Err(Error::Domain("linear factor must have a nilpotent class part".into()));
    }
    let ring = c.ring();
    let minus_c = -c;
    let inv_m = Rational::one() / int(m);
    let mut out = HbarLaurent::zero(ring);
    let mut power = CohClass::one(ring);
    let mut scale = inv_m.clone();
    let mut j = 0;
    while !power.is_zero() {
        out = &out + &HbarLaurent::term(power.scale(&scale), -(j + 1));
        power = &power * &minus_c;
        scale *= &inv_m;
        j += 1;
    }
    Ok(out)
}

impl fmt::Debug for HbarLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HbarLaurent({})", self.render())
    }
}

impl fmt::Display for HbarLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Coefficient for HbarLaurent {
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
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
        HbarLaurent::scale(self, c)
    }
    fn compatible(&self, other: &Self) -> bool {
        self.check(other).is_ok()
    }
}

impl Add for &HbarLaurent {
    type Output = HbarLaurent;
    fn add(self, rhs: Self) -> HbarLaurent {
        self.try_add(rhs).expect("hbar-Laurent addition")
    }
}

impl Sub for &HbarLaurent {
    type Output = HbarLaurent;
    fn sub(self, rhs: Self) -> HbarLaurent {
        self.try_sub(rhs).expect("hbar-Laurent subtraction")
    }
}

impl Mul for &HbarLaurent {
    type Output = HbarLaurent;
    fn mul(self, rhs: Self) -> HbarLaurent {
        self.try_mul(rhs).expect("hbar-Laurent multiplication")
    }
}

impl Neg for &HbarLaurent {
    type Output = HbarLaurent;
    fn neg(self) -> HbarLaurent {
        self.map_classes(|c| -c)
    }
}
