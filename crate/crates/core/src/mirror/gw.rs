//! Genus-zero invariants of Calabi-Yau threefold complete intersections.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::transform::{extract_mirror_map, mirror_transform, q_degrees_of};
use crate::exact_algebra::{int, CohClass, DegreeVector, HbarLaurent, NovikovSeries, Rational, ScalarSeries, Series};
use crate::hypergeo::{phi_v, BundleSpec, HypergeomSeries};
use crate::ambient::SpaceKind;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct GwRow {
    pub degree: DegreeVector,
    /// `N_d = int Euler(V'_d)` over the moduli of stable maps.
    pub big_n: Rational,
    /// Instanton number after multiple-cover inversion.
    pub instanton: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GwTable {
    /// Classical triple intersection `int_X Euler(V) p_1^3`.
    pub classical: Rational,
    pub rows: Vec<GwRow>,
}

impl GwTable {
    pub fn all_integral(&self) -> bool {
        self.rows.iter().all(|r| r.instanton.is_integer())
    }
}

/// `r` with `d = r e`, if any.
fn divides(e: &DegreeVector, d: &DegreeVector) -> Option<u32> {
    if e.is_zero() {
        return None;
    }
    let (i, &ei) = e.0.iter().enumerate().find(|(_, &x)| x > 0)?;
    let r = d.get(i) / ei;
    (r > 0 && e.scaled(r) == *d).then_some(r)
}

/// `N_d = -1/2 [hbar^{-3}] int_X Euler(V) J'_d`, with `[hbar^{-2}]` required to vanish.
pub fn extract_gw(j: &NovikovSeries, bundle: &BundleSpec, kind: &SpaceKind) -> Result<GwTable> {
    let probe = HypergeomSeries {
        series: Series::zero(kind.nvars(), 0),
        kind: kind.clone(),
        bundle: bundle.clone(),
        primed: true,
    };
    let ring = probe.ring();
    if kind.dimension() != bundle.rank() + 3 || q_degrees_of(&probe).iter().any(|&x| x != 0) {
        return Err(Error::Invalid("instanton numbers need a Calabi-Yau threefold complete intersection".into()));
    }
    let euler = bundle.euler_class(&ring);
    let zero = HbarLaurent::zero(&ring);
    let mut classical = Rational::zero();
    let mut big: BTreeMap<DegreeVector, Rational> = BTreeMap::new();
    for d in crate::exact_algebra::degree_vectors_up_to(kind.nvars(), j.bound()) {
        let integrals = j.coeff(&d).unwrap_or(&zero).mul_class(&euler).integrate();
        let at = |p: i32| integrals.get(&p).cloned().unwrap_or_else(Rational::zero);
        if d.is_zero() {
            let p = CohClass::generator(&ring, 0);
            classical = (&euler * &p.pow(3)).integrate();
            continue;
        }
        if !at(-2).is_zero() {
            return Err(Error::Consistency(format!("hbar^-2 coefficient does not vanish at degree {d}")));
        }
        big.insert(d, -at(-3) / int(2));
    }
    let mut instantons: BTreeMap<DegreeVector, Rational> = BTreeMap::new();
    for (d, n) in &big {
        let mut rest = n.clone();
        for (e, ne) in &instantons {
            if let Some(r) = divides(e, d) {
                rest -= ne / int(r as i64).pow(3);
            }
        }
        instantons.insert(d.clone(), rest);
    }
    let rows = big
        .into_iter()
        .map(|(d, big_n)| GwRow {
            instanton: instantons[&d].clone(),
            degree: d,
            big_n,
        })
        .collect();
    Ok(GwTable { classical, rows })
}

/// Full pipeline: primed series, mirror map, transform, extraction.
pub fn gw_pipeline(kind: &SpaceKind, bundle: &BundleSpec, bound: u32) -> Result<GwTable> {
    let phi = phi_v(kind, bundle, bound, true)?;
    let map = extract_mirror_map(&phi)?;
    let j = mirror_transform(&phi, &map)?;
    extract_gw(&j, bundle, kind)
}

/// `f(q) = sum_{d >= 1} n_d d^3 q^d / (1 - q^d)`, with `instantons[d-1] = n_d`.
pub fn yukawa_series(instantons: &[Rational], bound: u32) -> ScalarSeries {
    let mut coeffs = vec![Rational::zero(); bound as usize + 1];
    for (idx, n) in instantons.iter().enumerate() {
        let d = idx + 1;
        let w = n * int(d as i64).pow(3);
        for e in (d..=bound as usize).step_by(d) {
            coeffs[e] += &w;
        }
    }
    Series::from_univariate(bound, &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rat;

    fn quintic() -> (SpaceKind, BundleSpec) {
        (SpaceKind::ProjectiveProduct(vec![4]), BundleSpec::new(vec![vec![5]]))
    }

    #[test]
    fn quintic_low_degrees() {
        let (kind, bundle) = quintic();
        let t = gw_pipeline(&kind, &bundle, 3).unwrap();
        assert_eq!(t.classical, int(5));
        assert_eq!(t.rows[0].big_n, int(2875));
        assert_eq!(t.rows[1].big_n, rat(4876875, 8));
        assert_eq!(t.rows[1].instanton, int(609250));
        assert_eq!(t.rows[2].instanton, int(317206375));
        assert!(t.all_integral());
    }

    #[test]
    fn rejects_non_calabi_yau() {
        let kind = SpaceKind::ProjectiveProduct(vec![4]);
        assert!(gw_pipeline(&kind, &BundleSpec::new(vec![vec![4]]), 1).is_err());
    }

    #[test]
    fn yukawa() {
        assert!(yukawa_series(&[int(0), int(0)], 3).is_zero());
        let f = yukawa_series(&[int(2875)], 3);
        assert_eq!(f.univariate_coeffs(), vec![int(0), int(2875), int(2875), int(2875)]);
        let g = yukawa_series(&[int(1), int(1)], 4);
        assert_eq!(g.univariate_coeffs(), vec![int(0), int(1), int(9), int(1), int(9)]);
    }

    #[test]
    fn divisibility() {
        let d = DegreeVector(vec![4, 2]);
        assert_eq!(divides(&DegreeVector(vec![2, 1]), &d), Some(2));
        assert_eq!(divides(&DegreeVector(vec![1, 1]), &d), None);
        assert_eq!(divides(&d, &d), Some(1));
    }
}
