//! The double construction and the class membership checks at fixed points.

use std::collections::BTreeMap;


use crate::ambient::{LocalizedSeries, SpaceSpec};
use crate::exact_algebra::{
    degree_vectors_up_to, factorial, DegreeVector, Rational, RationalFunction, UniPoly,
};
use crate::localization_recursion::RecursionData;
use crate::{Error, Result};

/// `divisors[v][i]` is the restriction of `p_i` to fixed point `v`.
pub fn divisor_table(spec: &SpaceSpec) -> Vec<Vec<Rational>> {
    (0..spec.fixed_points().len()).map(|v| spec.divisor_values(v)).collect()
}

/// `prod_i (p_{v,i} + hbar d1_i)^{s_i} / s_i!`.
pub fn z_polynomial(divisors: &[Rational], d1: &DegreeVector, s: &[u32]) -> UniPoly {
    let mut acc = UniPoly::one();
    for (i, &si) in s.iter().enumerate() {
        if si == 0 {
            continue;
        }
        let lin = UniPoly::linear(divisors[i].clone(), Rational::from_integer(d1.get(i).into()));
        acc = (&acc * &lin.pow(si)).scale(&factorial(si as u64).recip());
    }
    acc
}

/// The `q^d z^s` coefficient of `W(Z)`:
/// `sum_v w_v sum_{d1 + d2 = d} Z_{v,d1}(hbar) Z_{v,d2}(-hbar) prod_i (p_{v,i} + hbar d1_i)^{s_i} / s_i!`.
pub fn w_coefficient(
    z: &LocalizedSeries,
    weights: &[Rational],
    divisors: &[Vec<Rational>],
    d: &DegreeVector,
    s: &[u32],
) -> RationalFunction {
    let k = d.len();
    let mut acc = RationalFunction::zero();
    for (v, w) in weights.iter().enumerate() {
        let mut inner = RationalFunction::zero();
        for d1 in degree_vectors_up_to(k, d.total()) {
            let Some(d2) = d.checked_sub(&d1) else { continue };
            let a = z.coeff(v, &d1);
            if a.is_zero() {
                continue;
            }
            let b = z.coeff(v, &d2).reflect();
            let p = RationalFunction::from_poly(z_polynomial(&divisors[v], &d1, s));
            inner = &inner + &(&(&a * &b) * &p);
        }
        acc = &acc + &inner.scale(w);
    }
    acc
}

/// `E(V)_v / e_v` at every fixed point.
pub fn integration_weights(spec: &SpaceSpec, lines: &[Vec<i64>]) -> Result<Vec<Rational>> {
    (0..spec.fixed_points().len())
        .map(|v| Ok(spec.bundle_euler(lines, v) / spec.tangent_euler(v)?))
        .collect()
}

/// Coefficients of `W(Z)`, keyed by `(q-degree, z-degree)`.
pub type DoubleConstruction = BTreeMap<(DegreeVector, DegreeVector), RationalFunction>;

pub fn double_construction(
    z: &LocalizedSeries,
    spec: &SpaceSpec,
    lines: &[Vec<i64>],
    q_order: u32,
    z_order: u32,
) -> Result<DoubleConstruction> {
    if z.series.len() != spec.fixed_points().len() {
        return Err(Error::Descriptor("one series per fixed point expected".into()));
    }
    let weights = integration_weights(spec, lines)?;
    let divisors = divisor_table(spec);
    let k = spec.nvars();
    let mut out = BTreeMap::new();
    for d in degree_vectors_up_to(k, q_order.min(z.bound())) {
        for s in degree_vectors_up_to(k, z_order) {
            let entry = w_coefficient(z, &weights, &divisors, &d, &s.0);
            out.insert((d.clone(), s), entry);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckKind {
    /// `Z(0) = 1` and every substitution `hbar = -kappa/m` is defined.
    WellDefined,
    /// `R_{v,d}` has poles only at `hbar = 0`.
    Recursion,
    /// The `(d, s)` entry of `W(Z)` is a polynomial in `hbar`.
    Polynomiality,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub kind: CheckKind,
    pub fixed_point: Option<usize>,
    pub degree: DegreeVector,
    pub z_degree: Option<DegreeVector>,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ClassPReport {
    pub checks: Vec<Check>,
}

impl ClassPReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// `R_{v,d} = Z_{v,d} - sum C_{v,w,m} / (hbar (kappa + m hbar)) Z_{w,d - m beta}(-kappa/m)`.
pub fn recursion_residual(z: &LocalizedSeries, data: &RecursionData, v: usize, d: &DegreeVector) -> Result<RationalFunction> {
    let r = data.recursion_part(v, d, |w, e| z.coeff(w, e))?;
    Ok(&z.coeff(v, d) - &r)
}

pub fn verify_class_p(
    z: &LocalizedSeries,
    spec: &SpaceSpec,
    lines: &[Vec<i64>],
    data: &RecursionData,
    q_order: u32,
    z_order: u32,
) -> Result<ClassPReport> {
    let npts = spec.fixed_points().len();
    if z.series.len() != npts {
        return Err(Error::Descriptor("one series per fixed point expected".into()));
    }
    let k = spec.nvars();
    let q_order = q_order.min(z.bound()).min(data.order);
    let mut report = ClassPReport::default();
    let zero = DegreeVector::zero(k);
    for v in 0..npts {
        let ok = z.coeff(v, &zero) == RationalFunction::one();
        report.checks.push(Check {
            kind: CheckKind::WellDefined,
            fixed_point: Some(v),
            degree: zero.clone(),
            z_degree: None,
            passed: ok,
            detail: if ok { "Z(0) = 1".into() } else { "Z(0) differs from 1".into() },
        });
    }
    for d in degree_vectors_up_to(k, q_order).into_iter().skip(1) {
        for v in 0..npts {
            let check = match recursion_residual(z, data, v, &d) {
                Ok(r) => Check {
                    kind: CheckKind::Recursion,
                    fixed_point: Some(v),
                    degree: d.clone(),
                    z_degree: None,
                    passed: r.denominator_is_hbar_power(),
                    detail: format!("R = {r}"),
                },
                Err(Error::DegenerateParameters(msg)) => Check {
                    kind: CheckKind::WellDefined,
                    fixed_point: Some(v),
                    degree: d.clone(),
                    z_degree: None,
                    passed: false,
                    detail: msg,
                },
                Err(e) => return Err(e),
            };
            report.checks.push(check);
        }
    }
    for ((d, s), entry) in double_construction(z, spec, lines, q_order, z_order)? {
        report.checks.push(Check {
            kind: CheckKind::Polynomiality,
            fixed_point: None,
            passed: entry.is_polynomial(),
            detail: format!("W = {entry}"),
            degree: d,
            z_degree: Some(s),
        });
    }
    Ok(report)
}
