//! The three generators of the transformation group and the mirror transformation.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::expansion::expand_hbar;
use crate::ambient::LocalizedSeries;
use crate::exact_algebra::{
    revert_mirror_coordinates, series_exp, series_log, substitute_novikov, CohClass, HbarLaurent, NovikovSeries,
    Rational, RationalFunction, RingDescriptor, ScalarSeries, Series,
};
use crate::hypergeo::HypergeomSeries;
use crate::{Error, Result};

/// `t_0 -> t_0 + f_0 hbar + f_{-1}`, `t_i -> t_i + f_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct MirrorMap {
    pub f0: ScalarSeries,
    pub f_minus1: ScalarSeries,
    pub f: Vec<ScalarSeries>,
}

impl MirrorMap {
    pub fn is_zero(&self) -> bool {
        self.f0.is_zero() && self.f_minus1.is_zero() && self.f.iter().all(Series::is_zero)
    }
}

/// Weighted degree of a scalar series under `deg q_i = q_degrees[i]`, if homogeneous.
fn is_homogeneous(f: &ScalarSeries, q_degrees: &[i64], degree: i64) -> bool {
    f.terms().all(|(d, _)| d.pair(q_degrees) == degree)
}

fn check_degree(f: &ScalarSeries, q_degrees: &[i64], degree: i64, what: &str) -> Result<()> {
    if is_homogeneous(f, q_degrees, degree) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must have degree {degree}")))
    }
}

/// Type 1: multiplication by `f(q)` with `f(0) = 1`, `deg f = 0`.
pub fn apply_scalar_mult(z: &NovikovSeries, f: &ScalarSeries, q_degrees: &[i64]) -> Result<NovikovSeries> {
    if !f.constant_term().is_one() {
        return Err(Error::Domain("scalar multiplier needs f(0) = 1".into()));
    }
    check_degree(f, q_degrees, 0, "scalar multiplier")?;
    z.mul_scalar_series(f)
}

/// `exp(sum_i c_i(q) X_i / hbar)` as a Novikov series.
fn exp_over_hbar(ring: &Arc<RingDescriptor>, parts: &[(CohClass, &ScalarSeries)], k: usize, bound: u32) -> Result<NovikovSeries> {
    let mut x: NovikovSeries = Series::zero(k, bound);
    for (class, f) in parts {
        for (d, c) in f.terms() {
            x.add_term(d.clone(), HbarLaurent::term(class.scale(c), -1));
        }
    }
    x.exp_with_one(HbarLaurent::one(ring))
}

/// Type 2: multiplication by `exp(f(q)/hbar)` with `f(0) = 0`, `deg f = 1`.
pub fn apply_exp_over_hbar(z: &NovikovSeries, f: &ScalarSeries, ring: &Arc<RingDescriptor>, q_degrees: &[i64]) -> Result<NovikovSeries> {
    if !f.constant_term().is_zero() {
        return Err(Error::Domain("exponent needs f(0) = 0".into()));
    }
    check_degree(f, q_degrees, 1, "exponent")?;
    let e = exp_over_hbar(ring, &[(CohClass::one(ring), f)], z.nvars(), z.bound())?;
    z.try_mul(&e)
}

/// Type 3: `Z(q) -> exp(sum f_i(q) p_i / hbar) Z(q e^{f(q)})` with `f_i(0) = 0`, `deg f_i = 0`.
pub fn apply_coordinate_change(z: &NovikovSeries, f: &[ScalarSeries], ring: &Arc<RingDescriptor>, q_degrees: &[i64]) -> Result<NovikovSeries> {
    if f.len() != z.nvars() {
        return Err(Error::Descriptor(format!("expected {} coordinate series", z.nvars())));
    }
    for fi in f {
        if !fi.constant_term().is_zero() {
            return Err(Error::Domain("coordinate change needs f_i(0) = 0".into()));
        }
        check_degree(fi, q_degrees, 0, "coordinate change")?;
    }
    let parts: Vec<(CohClass, &ScalarSeries)> = f.iter().enumerate().map(|(i, fi)| (CohClass::generator(ring, i), fi)).collect();
    let e = exp_over_hbar(ring, &parts, z.nvars(), z.bound())?;
    let u = f.iter().map(series_exp).collect::<Result<Vec<_>>>()?;
    substitute_novikov(z, &u)?.try_mul(&e)
}

/// Reads the mirror map off the `hbar^0` and `hbar^{-1}` parts of a primed series.
pub fn extract_mirror_map(i: &HypergeomSeries) -> Result<MirrorMap> {
    if !i.primed {
        return Err(Error::Invalid("the mirror map is extracted from the primed series".into()));
    }
    let q_degrees = q_degrees_of(i);
    if q_degrees.iter().any(|&x| x < 0) {
        return Err(Error::Invalid("every deg q_i must be nonnegative".into()));
    }
    let ring = i.ring();
    let e = expand_hbar(&i.series, &ring)?;
    let inv = e.z0.inverse()?;
    let map = MirrorMap {
        f0: series_log(&e.z0)?,
        f_minus1: e.z1_scalar.try_mul(&inv)?,
        f: e.z1_p.iter().map(|s| s.try_mul(&inv)).collect::<Result<Vec<_>>>()?,
    };
    let homogeneous = is_homogeneous(&map.f0, &q_degrees, 0)
        && is_homogeneous(&map.f_minus1, &q_degrees, 1)
        && map.f.iter().all(|s| is_homogeneous(s, &q_degrees, 0));
    if !homogeneous {
        return Err(Error::Consistency("mirror map components have the wrong degrees".into()));
    }
    Ok(map)
}

/// `deg q_i = <c1(TX) - c1(V), basis_i>`.
pub fn q_degrees_of(i: &HypergeomSeries) -> Vec<i64> {
    let chern = i.kind.first_chern_pairings();
    (0..chern.len())
        .map(|idx| chern[idx] - i.bundle.lines.iter().map(|l| l[idx]).sum::<i64>())
        .collect()
}

/// `J'(Q) = exp(-f_{-1}/hbar) I(q) exp(-sum f_i p_i / hbar) / Z^0(q)` at `q = Q e^{g(Q)}`.
pub fn mirror_transform(i: &HypergeomSeries, map: &MirrorMap) -> Result<NovikovSeries> {
    let ring = i.ring();
    let q_degrees = q_degrees_of(i);
    let scaled = apply_scalar_mult(&i.series, &series_exp(&map.f0)?.inverse()?, &q_degrees)?;
    let shifted = apply_exp_over_hbar(&scaled, &map.f_minus1.neg_series(), &ring, &q_degrees)?;
    let g = revert_mirror_coordinates(&map.f)?;
    let j = apply_coordinate_change(&shifted, &g, &ring, &q_degrees)?;
    if !expand_hbar(&j, &ring)?.is_normalized() {
        return Err(Error::Consistency("mirror transform did not produce 1 + O(hbar^-2)".into()));
    }
    Ok(j)
}

/// Type 1 at fixed points; only `f(0) = 1` is required.
pub fn apply_scalar_mult_localized(z: &LocalizedSeries, f: &ScalarSeries) -> Result<LocalizedSeries> {
    if !f.constant_term().is_one() {
        return Err(Error::Domain("scalar multiplier needs f(0) = 1".into()));
    }
    let series = z.series.iter().map(|s| s.mul_scalar_series(f)).collect::<Result<Vec<_>>>()?;
    Ok(LocalizedSeries { series })
}

fn exp_over_hbar_rf(parts: &[(Rational, &ScalarSeries)], k: usize, bound: u32) -> Result<Series<RationalFunction>> {
    let mut x: Series<RationalFunction> = Series::zero(k, bound);
    for (w, f) in parts {
        for (d, c) in f.terms() {
            x.add_term(d.clone(), RationalFunction::hbar_power(-1).scale(&(w * c)));
        }
    }
    x.exp_with_one(RationalFunction::one())
}

/// Type 2 at fixed points; only `f(0) = 0` is required.
pub fn apply_exp_over_hbar_localized(z: &LocalizedSeries, f: &ScalarSeries) -> Result<LocalizedSeries> {
    if !f.constant_term().is_zero() {
        return Err(Error::Domain("exponent needs f(0) = 0".into()));
    }
    let e = exp_over_hbar_rf(&[(Rational::one(), f)], z.nvars(), z.bound())?;
    let series = z.series.iter().map(|s| s.try_mul(&e)).collect::<Result<Vec<_>>>()?;
    Ok(LocalizedSeries { series })
}

/// Type 3 at fixed points, with `p_i` replaced by its restriction `divisors[v][i]`.
pub fn apply_coordinate_change_localized(z: &LocalizedSeries, f: &[ScalarSeries], divisors: &[Vec<Rational>]) -> Result<LocalizedSeries> {
    if f.iter().any(|fi| !fi.constant_term().is_zero()) {
        return Err(Error::Domain("coordinate change needs f_i(0) = 0".into()));
    }
    let u = f.iter().map(series_exp).collect::<Result<Vec<_>>>()?;
    let series = z
        .series
        .iter()
        .zip(divisors)
        .map(|(s, p)| {
            let parts: Vec<(Rational, &ScalarSeries)> = p.iter().cloned().zip(f).collect();
            let e = exp_over_hbar_rf(&parts, z.nvars(), z.bound())?;
            substitute_novikov(s, &u)?.try_mul(&e)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalizedSeries { series })
}
