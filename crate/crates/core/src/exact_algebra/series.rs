//! Truncated multivariate power series in the Novikov variables `q_1..q_k`.
//!
//! Truncation is by total degree: a series with bound `D` stores only the
//! monomials `q^d` with `d_1 + ... + d_k <= D`, and every product drops
//! whatever lands above the bound.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{int, Rational};
use crate::{Error, Result};

/// Values that can sit in front of a Novikov monomial.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn vanishes(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    /// Whether the two values live in the same ring.
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
}

impl Coefficient for Rational {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
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
        self * c
    }
}

/// A point of the Mori cone, written in the coordinates dual to the
/// chosen ample basis `p_1..p_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegreeVector(pub Vec<u32>);

impl DegreeVector {
    pub fn zero(k: usize) -> Self {
        DegreeVector(vec![0; k])
    }

    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = vec![0; k];
        v[i] = 1;
        DegreeVector(v)
    }

    pub fn from_slice(d: &[u32]) -> Self {
        DegreeVector(d.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DegreeVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn plus(&self, other: &DegreeVector) -> DegreeVector {
        DegreeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &DegreeVector) -> Option<DegreeVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DegreeVector)
    }

    pub fn scaled(&self, m: u32) -> DegreeVector {
        DegreeVector(self.0.iter().map(|a| a * m).collect())
    }

    /// Pairing with an integer covector.
    pub fn pair(&self, covector: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(covector)
            .map(|(&d, &l)| d as i64 * l)
            .sum()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

/// All degree vectors with `k` components and total degree at most `bound`,
/// ordered by total degree and then lexicographically.
pub fn degree_vectors_up_to(k: usize, bound: u32) -> Vec<DegreeVector> {
    fn rec(k: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<DegreeVector>) {
        if prefix.len() == k {
            out.push(DegreeVector(prefix.clone()));
            return;
        }
        for x in 0..=left {
            prefix.push(x);
            rec(k, left - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, bound, &mut Vec::with_capacity(k), &mut out);
    out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
    out
}

/// Sparse truncated series `sum_d c_d q^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    nvars: usize,
    bound: u32,
    terms: BTreeMap<DegreeVector, C>,
}

impl<C: Coefficient> Series<C> {
    pub fn zero(nvars: usize, bound: u32) -> Self {
        Series {
            nvars,
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, bound: u32, c: C) -> Self {
        let mut s = Self::zero(nvars, bound);
        s.add_term(DegreeVector::zero(nvars), c);
        s
    }

    pub fn monomial(nvars: usize, bound: u32, d: DegreeVector, c: C) -> Self {
        let mut s = Self::zero(nvars, bound);
        s.add_term(d, c);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DegreeVector, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &DegreeVector) -> Option<&C> {
        self.terms.get(d)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c q^d` in place. Terms above the bound are dropped.
    pub fn add_term(&mut self, d: DegreeVector, c: C) {
        assert_eq!(d.len(), self.nvars, "degree vector length");
        if d.total() > self.bound || c.vanishes() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(existing) => {
                let sum = existing.add_ref(&c);
                if sum.vanishes() {
                    self.terms.remove(&d);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    /// Overwrites the coefficient of `q^d`.
    pub fn set_term(&mut self, d: DegreeVector, c: C) {
        assert_eq!(d.len(), self.nvars, "degree vector length");
        if d.total() > self.bound {
            return;
        }
        if c.vanishes() {
            self.terms.remove(&d);
        } else {
            self.terms.insert(d, c);
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.bound != other.bound {
            return Err(Error::Descriptor(format!(
                "series shapes differ: ({} vars, bound {}) vs ({} vars, bound {})",
                self.nvars, self.bound, other.nvars, other.bound
            )));
        }
        if let (Some(a), Some(b)) = (self.terms.values().next(), other.terms.values().next()) {
            if !a.compatible(b) || other.terms.values().any(|c| !a.compatible(c)) {
                return Err(Error::Descriptor("series coefficients live in different rings".into()));
            }
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_series())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = Self::zero(self.nvars, self.bound);
        for (d1, c1) in &self.terms {
            let t1 = d1.total();
            for (d2, c2) in &other.terms {
                if t1 + d2.total() > self.bound {
                    continue;
                }
                out.add_term(d1.plus(d2), c1.mul_ref(c2));
            }
        }
        Ok(out)
    }

    pub fn neg_series(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.nvars, self.bound);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.scale(r));
        }
        out
    }

    /// Multiplies every coefficient by the same ring element.
    pub fn mul_coefficient(&self, x: &C) -> Self {
        let mut out = Self::zero(self.nvars, self.bound);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.mul_ref(x));
        }
        out
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::zero(self.nvars, self.bound);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), f(c));
        }
        out
    }

    pub fn try_map<D: Coefficient>(&self, f: impl Fn(&C) -> Result<D>) -> Result<Series<D>> {
        let mut out = Series::zero(self.nvars, self.bound);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Drops everything above `bound` and records the new bound.
    pub fn truncate(&self, bound: u32) -> Self {
        let mut out = Self::zero(self.nvars, bound);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    /// Product with a scalar series.
    pub fn mul_scalar_series(&self, s: &Series<Rational>) -> Result<Self> {
        if self.nvars != s.nvars || self.bound != s.bound {
            return Err(Error::Descriptor("scalar series shape differs".into()));
        }
        let mut out = Self::zero(self.nvars, self.bound);
        for (d1, c) in &self.terms {
            for (d2, r) in &s.terms {
                if d1.total() + d2.total() <= self.bound {
                    out.add_term(d1.plus(d2), c.scale(r));
                }
            }
        }
        Ok(out)
    }

    /// `exp(self)` for a series without constant term; `one` is the unit of
    /// the coefficient ring.
    pub fn exp_with_one(&self, one: C) -> Result<Self> {
        if self.terms.keys().any(|d| d.is_zero()) {
            return Err(Error::Domain("exp needs a series with vanishing constant term".into()));
        }
        let mut result = Self::constant(self.nvars, self.bound, one.clone());
        let mut power = result.clone();
        for n in 1..=self.bound {
            power = power.try_mul(self)?.scale(&Rational::new(1.into(), (n as i64).into()));
            if power.is_zero() {
                break;
            }
            result = result.try_add(&power)?;
        }
        Ok(result)
    }
}

impl Series<Rational> {
    pub fn one(nvars: usize, bound: u32) -> Self {
        Self::constant(nvars, bound, int(1))
    }

    /// The series `q_i`.
    pub fn var(nvars: usize, bound: u32, i: usize) -> Self {
        Self::monomial(nvars, bound, DegreeVector::unit(nvars, i), int(1))
    }

    /// Builds a one-variable series from its coefficient list.
    pub fn from_univariate(bound: u32, coeffs: &[Rational]) -> Self {
        let mut s = Self::zero(1, bound);
        for (i, c) in coeffs.iter().enumerate() {
            s.add_term(DegreeVector(vec![i as u32]), c.clone());
        }
        s
    }

    /// Coefficient list of a one-variable series, padded to the bound.
    pub fn univariate_coeffs(&self) -> Vec<Rational> {
        (0..=self.bound)
            .map(|i| {
                self.coeff(&DegreeVector(vec![i]))
                    .cloned()
                    .unwrap_or_else(Rational::zero)
            })
            .collect()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&DegreeVector::zero(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NonInvertible("series with zero constant term".into()));
        }
        let inv0 = c0.recip();
        let mut g = self.scale(&inv0);
        g.set_term(DegreeVector::zero(self.nvars), Rational::zero());
        // 1/(1+g) = sum (-g)^n
        let minus_g = g.neg_series();
        let mut result = Self::one(self.nvars, self.bound);
        let mut power = result.clone();
        for _ in 1..=self.bound {
            power = power.try_mul(&minus_g)?;
            if power.is_zero() {
                break;
            }
            result = result.try_add(&power)?;
        }
        Ok(result.scale(&inv0))
    }
}

/// `exp(f)` for a scalar series with `f(0) = 0`.
pub fn series_exp(f: &Series<Rational>) -> Result<Series<Rational>> {
    if !f.constant_term().is_zero() {
        return Err(Error::Domain("exp requires f(0) = 0".into()));
    }
    f.exp_with_one(int(1))
}

/// `log(f)` for a scalar series with `f(0) = 1`.
pub fn series_log(f: &Series<Rational>) -> Result<Series<Rational>> {
    if !f.constant_term().is_one() {
        return Err(Error::Domain("log requires f(0) = 1".into()));
    }
    let mut g = f.clone();
    g.set_term(DegreeVector::zero(f.nvars()), Rational::zero());
    let mut result = Series::zero(f.nvars(), f.bound());
    let mut power = Series::one(f.nvars(), f.bound());
    for n in 1..=f.bound() {
        power = power.try_mul(&g)?;
        if power.is_zero() {
            break;
        }
        let sign = if n % 2 == 1 { 1 } else { -1 };
        result = result.try_add(&power.scale(&Rational::new(sign.into(), (n as i64).into())))?;
    }
    Ok(result)
}

/// Rescales the Novikov variables: `q^d -> q^d * prod_i u_i^{d_i}`.
///
/// Each `u_i` must be a unit series with `u_i(0) = 1`.
pub fn substitute_novikov<C: Coefficient>(z: &Series<C>, u: &[Series<Rational>]) -> Result<Series<C>> {
    let (k, bound) = (z.nvars(), z.bound());
    if u.len() != k {
        return Err(Error::Descriptor(format!("expected {k} substitution series, got {}", u.len())));
    }
    for ui in u {
        if ui.nvars() != k || ui.bound() != bound {
            return Err(Error::Descriptor("substitution series shape differs".into()));
        }
        if !ui.constant_term().is_one() {
            return Err(Error::Domain("substitution factors must satisfy u(0) = 1".into()));
        }
    }
    // powers[i][e] = u_i^e
    let mut powers: Vec<Vec<Series<Rational>>> = Vec::with_capacity(k);
    for ui in u {
        let mut row = vec![Series::one(k, bound)];
        for e in 1..=bound as usize {
            let next = row[e - 1].try_mul(ui)?;
            row.push(next);
        }
        powers.push(row);
    }
    let mut out = Series::zero(k, bound);
    for (d, c) in z.terms() {
        let mut factor = Series::monomial(k, bound, d.clone(), int(1));
        for (i, row) in powers.iter().enumerate() {
            let e = d.get(i) as usize;
            if e > 0 {
                factor = factor.try_mul(&row[e])?;
            }
        }
        for (d2, r) in factor.terms() {
            out.add_term(d2.clone(), c.scale(r));
        }
    }
    Ok(out)
}

/// Inverts the coordinate change `Q_i = q_i exp(f_i(q))`.
///
/// Returns `g` with `q_i = Q_i exp(g_i(Q))`, obtained from the fixed point
/// `g_i(Q) = -f_i(Q exp(g(Q)))`, which gains one order per iteration.
pub fn revert_mirror_coordinates(f: &[Series<Rational>]) -> Result<Vec<Series<Rational>>> {
    let Some(first) = f.first() else {
        return Ok(Vec::new());
    };
    let (k, bound) = (first.nvars(), first.bound());
    if f.len() != k {
        return Err(Error::Descriptor(format!("expected {k} series, got {}", f.len())));
    }
    for fi in f {
        if fi.nvars() != k || fi.bound() != bound {
            return Err(Error::Descriptor("mirror coordinate series shapes differ".into()));
        }
        if !fi.constant_term().is_zero() {
            return Err(Error::Domain("mirror coordinates need f_i(0) = 0".into()));
        }
    }
    let mut g: Vec<Series<Rational>> = vec![Series::zero(k, bound); k];
    for _ in 0..=bound {
        let u = g.iter().map(series_exp).collect::<Result<Vec<_>>>()?;
        g = f
            .iter()
            .map(|fi| substitute_novikov(fi, &u).map(|s| s.neg_series()))
            .collect::<Result<Vec<_>>>()?;
    }
    Ok(g)
}

impl<C: Coefficient> Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: Self) -> Series<C> {
        self.try_add(rhs).expect("series addition")
    }
}

impl<C: Coefficient> Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: Self) -> Series<C> {
        self.try_sub(rhs).expect("series subtraction")
    }
}

impl<C: Coefficient> Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: Self) -> Series<C> {
        self.try_mul(rhs).expect("series multiplication")
    }
}

impl<C: Coefficient> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        self.neg_series()
    }
}
