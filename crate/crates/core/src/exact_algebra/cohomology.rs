//! Cohomology of a product of projective spaces, `Q[p_1..p_k] / (p_i^{n_i+1})`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::Rational;
use super::series::Coefficient;
use crate::{Error, Result};

/// Nilpotency data: generator `p_i` satisfies `p_i^{top[i]+1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    top: Vec<u32>,
}

impl RingDescriptor {
    pub fn new(top: Vec<u32>) -> Arc<Self> {
        Arc::new(RingDescriptor { top })
    }

    /// The ring `Q` with no generators.
    pub fn point() -> Arc<Self> {
        Self::new(Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.top.len()
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    /// Complex dimension of the underlying product of projective spaces.
    pub fn dimension(&self) -> u32 {
        self.top.iter().sum()
    }

    fn admits(&self, exps: &[u32]) -> bool {
        exps.len() == self.top.len() && exps.iter().zip(&self.top).all(|(e, t)| e <= t)
    }

    /// Every surviving monomial, in lexicographic order.
    pub fn monomial_basis(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for &t in &self.top {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=t).map(move |e| {
                        let mut m = prefix.clone();
                        m.push(e);
                        m
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct CohClass {
    ring: Arc<RingDescriptor>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl CohClass {
    pub fn zero(ring: &Arc<RingDescriptor>) -> Self {
        CohClass {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<RingDescriptor>) -> Self {
        Self::scalar(ring, Rational::one())
    }

    pub fn scalar(ring: &Arc<RingDescriptor>, c: Rational) -> Self {
        Self::monomial(ring, vec![0; ring.nvars()], c)
    }

    /// The generator `p_i`.
    pub fn generator(ring: &Arc<RingDescriptor>, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        Self::monomial(ring, e, Rational::one())
    }

    /// `c * p^exps`; zero if some exponent exceeds its bound.
    pub fn monomial(ring: &Arc<RingDescriptor>, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), ring.nvars(), "exponent vector length");
        let mut out = Self::zero(ring);
        if ring.admits(&exps) && !c.is_zero() {
            out.terms.insert(exps, c);
        }
        out
    }

    /// `sum_i a_i p_i`.
    pub fn linear(ring: &Arc<RingDescriptor>, coeffs: &[Rational]) -> Self {
        let mut out = Self::zero(ring);
        for (i, c) in coeffs.iter().enumerate() {
            out = &out + &Self::generator(ring, i).scale(c);
        }
        out
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.ring.nvars()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Coefficient of `p_1^{n_1} ... p_k^{n_k}`, i.e. the integral over the product.
    pub fn integrate(&self) -> Rational {
        self.coeff(self.ring.top())
    }

    /// Set of cohomological (complex) degrees that occur.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The part of complex degree `deg`.
    pub fn homogeneous_part(&self, deg: u32) -> Self {
        CohClass {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == deg)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        CohClass {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Evaluates at `p_i = values[i]`, ignoring nilpotency.
    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in values.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::Descriptor(format!(
                "cohomology rings differ: {:?} vs {:?}",
                self.ring.top, other.ring.top
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        Ok(CohClass {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            'pairs: for (e2, c2) in &other.terms {
                let mut e = Vec::with_capacity(e1.len());
                for ((a, b), t) in e1.iter().zip(e2).zip(&self.ring.top) {
                    if a + b > *t {
                        continue 'pairs;
                    }
                    e.push(a + b);
                }
                *terms.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(CohClass {
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

    /// Renders with generator names `p1, p2, ...` (or `p` for one generator).
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let single = self.ring.nvars() == 1;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut factors = Vec::new();
                for (i, &k) in e.iter().enumerate() {
                    let name = if single { "p".to_string() } else { format!("p{}", i + 1) };
                    match k {
                        0 => {}
                        1 => factors.push(name),
                        _ => factors.push(format!("{name}^{k}")),
                    }
                }
                if factors.is_empty() {
                    format!("{c}")
                } else if c.is_one() {
                    factors.join("*")
                } else {
                    format!("{c}*{}", factors.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohClass({})", self.render())
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Coefficient for CohClass {
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
        CohClass::scale(self, c)
    }
    fn compatible(&self, other: &Self) -> bool {
        self.check(other).is_ok()
    }
}

impl Add for &CohClass {
    type Output = CohClass;
    fn add(self, rhs: Self) -> CohClass {
        self.try_add(rhs).expect("cohomology addition")
    }
}

impl Sub for &CohClass {
    type Output = CohClass;
    fn sub(self, rhs: Self) -> CohClass {
        self.try_sub(rhs).expect("cohomology subtraction")
    }
}

impl Mul for &CohClass {
    type Output = CohClass;
    fn mul(self, rhs: Self) -> CohClass {
        self.try_mul(rhs).expect("cohomology multiplication")
    }
}

impl Neg for &CohClass {
    type Output = CohClass;
    fn neg(self) -> CohClass {
        self.scale(&-Rational::one())
    }
}
