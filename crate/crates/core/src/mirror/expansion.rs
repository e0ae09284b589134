//! Splitting a Novikov series into its `hbar^0`, `hbar^{-1}` and remaining parts.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::exact_algebra::{
    CohClass, DegreeVector, HbarLaurent, NovikovSeries, Rational, RingDescriptor, ScalarSeries, Series,
};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct HbarExpansion {
    /// Scalar `hbar^0` part.
    pub z0: ScalarSeries,
    /// Coefficients of `p_i / hbar`.
    pub z1_p: Vec<ScalarSeries>,
    /// Scalar part of the `hbar^{-1}` coefficient.
    pub z1_scalar: ScalarSeries,
    /// Everything of order `hbar^{-2}` and below.
    pub remainder: NovikovSeries,
}

impl HbarExpansion {
    pub fn reassemble(&self, ring: &Arc<RingDescriptor>) -> NovikovSeries {
        let mut out = self.remainder.clone();
        let k = ring.nvars();
        for (d, c) in self.z0.terms() {
            out.add_term(d.clone(), HbarLaurent::from_class(CohClass::scalar(ring, c.clone())));
        }
        for (d, c) in self.z1_scalar.terms() {
            out.add_term(d.clone(), HbarLaurent::term(CohClass::scalar(ring, c.clone()), -1));
        }
        for (i, s) in self.z1_p.iter().enumerate() {
            for (d, c) in s.terms() {
                let mut e = vec![0; k];
                e[i] = 1;
                out.add_term(d.clone(), HbarLaurent::term(CohClass::monomial(ring, e, c.clone()), -1));
            }
        }
        out
    }

    /// `(1, 0, 0, .)`: the series is `1 mod hbar^{-2}`.
    pub fn is_normalized(&self) -> bool {
        let mut z0 = self.z0.clone();
        z0.set_term(DegreeVector::zero(z0.nvars()), Rational::zero());
        self.z0.constant_term().is_one()
            && z0.is_zero()
            && self.z1_scalar.is_zero()
            && self.z1_p.iter().all(Series::is_zero)
    }
}

pub fn expand_hbar(z: &NovikovSeries, ring: &Arc<RingDescriptor>) -> Result<HbarExpansion> {
    let (k, bound) = (z.nvars(), z.bound());
    if ring.nvars() != k {
        return Err(Error::Descriptor("ring and series have different numbers of variables".into()));
    }
    let zero_deg = DegreeVector::zero(k);
    if z.coeff(&zero_deg) != Some(&HbarLaurent::one(ring)) {
        return Err(Error::Domain(
            "normalization: the q^0 term must be 1; use the primed series".into(),
        ));
    }
    let mut out = HbarExpansion {
        z0: Series::zero(k, bound),
        z1_p: vec![Series::zero(k, bound); k],
        z1_scalar: Series::zero(k, bound),
        remainder: Series::zero(k, bound),
    };
    for (d, c) in z.terms() {
        if c.max_power().is_some_and(|j| j > 0) {
            return Err(Error::Domain(format!("positive power of hbar at q-degree {d}")));
        }
        let c0 = c.coeff(0);
        if !c0.is_scalar() {
            return Err(Error::Domain(format!("non-scalar hbar^0 coefficient at q-degree {d}")));
        }
        out.z0.add_term(d.clone(), c0.constant_term());
        for (e, r) in c.coeff(-1).terms() {
            match e.iter().sum::<u32>() {
                0 => out.z1_scalar.add_term(d.clone(), r.clone()),
                1 => {
                    let i = e.iter().position(|&x| x == 1).expect("linear monomial");
                    out.z1_p[i].add_term(d.clone(), r.clone());
                }
                _ => {
                    return Err(Error::Domain(format!(
                        "nonlinear class in the hbar^-1 coefficient at q-degree {d}"
                    )))
                }
            }
        }
        let tail: Vec<(i32, CohClass)> = c.terms().filter(|(j, _)| **j <= -2).map(|(j, x)| (*j, x.clone())).collect();
        for (j, x) in tail {
            out.remainder.add_term(d.clone(), HbarLaurent::term(x, j));
        }
    }
    Ok(out)
}
