use num_traits::Zero;
use proptest::prelude::*;

use qhs_core::ambient::{seeded_eps, SpaceKind, SpaceSpec};
use qhs_core::exact_algebra::{degree_vectors_up_to, int, DegreeVector, Rational};
use qhs_core::hypergeo::{phi_v, BundleSpec};
use qhs_core::mirror::{expand_hbar, extract_mirror_map, gw_pipeline, mirror_transform, yukawa_series};

/// Lines on a complete intersection of the given degrees in `P^{n-1}`:
/// `int_{Gr(2,n)} prod_l Euler(Sym^l S^*)` by direct localization.
fn line_count(n: usize, degrees: &[u32], seed: u64) -> Rational {
    let spec = SpaceSpec::new(SpaceKind::Grassmannian { k: 2, n }, seeded_eps(n, seed)).unwrap();
    let values: Vec<Rational> = spec
        .fixed_points()
        .iter()
        .map(|p| {
            let (a, b) = (&spec.eps()[p.0[0]], &spec.eps()[p.0[1]]);
            let mut acc = int(1);
            for &l in degrees {
                for i in 0..=l as i64 {
                    acc *= -(a * int(i) + b * int(l as i64 - i));
                }
            }
            acc
        })
        .collect();
    spec.localize_integrate(&values).unwrap()
}

#[test]
fn calabi_yau_complete_intersections() {
    for (n, degrees) in [(6usize, vec![3u32, 3]), (6, vec![2, 4]), (7, vec![2, 2, 3]), (8, vec![2, 2, 2, 2])] {
        let kind = SpaceKind::ProjectiveProduct(vec![n as u32 - 1]);
        let bundle = BundleSpec::new(degrees.iter().map(|&d| vec![d as i64]).collect());
        let table = gw_pipeline(&kind, &bundle, 3).unwrap();
        assert!(table.all_integral(), "{degrees:?}");
        let oracle = line_count(n, &degrees, 1);
        assert_eq!(oracle, line_count(n, &degrees, 2));
        assert_eq!(table.rows[0].instanton, oracle, "{degrees:?}");
        let product: u32 = degrees.iter().product();
        assert_eq!(table.classical, int(product as i64));
    }
}

#[test]
fn two_parameter_calabi_yau() {
    let kind = SpaceKind::ProjectiveProduct(vec![1, 3]);
    let bundle = BundleSpec::new(vec![vec![2, 4]]);
    let table = gw_pipeline(&kind, &bundle, 2).unwrap();
    assert!(table.all_integral());
    // curves in the fibre class of the projection to the line are lines in quartic surfaces
    let fibre = table.rows.iter().find(|r| r.degree == DegreeVector(vec![0, 1])).unwrap();
    assert!(!fibre.instanton.is_zero());
}

#[test]
fn yukawa_from_quintic_pipeline() {
    let table = gw_pipeline(&SpaceKind::ProjectiveProduct(vec![4]), &BundleSpec::new(vec![vec![5]]), 3).unwrap();
    let ns: Vec<Rational> = table.rows.iter().map(|r| r.instanton.clone()).collect();
    let f = yukawa_series(&ns, 3).univariate_coeffs();
    assert_eq!(f[1], int(2875));
    assert_eq!(f[2], int(2875) + int(609250) * int(8));
}

fn convex_case() -> impl Strategy<Value = (u32, Vec<i64>)> {
    (1u32..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(1i64..=3, 0..=2)))
        .prop_filter("deg q >= 0", |(n, ls)| ls.iter().sum::<i64>() <= *n as i64 + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn transform_is_normalized_and_homogeneous((n, ls) in convex_case()) {
        let kind = SpaceKind::ProjectiveProduct(vec![n]);
        let bundle = BundleSpec::new(ls.iter().map(|&l| vec![l]).collect());
        let phi = phi_v(&kind, &bundle, 3, true).unwrap();
        let map = extract_mirror_map(&phi).unwrap();
        let deg_q = n as i64 + 1 - ls.iter().sum::<i64>();
        if deg_q >= 2 {
            prop_assert!(map.is_zero());
        }
        let j = mirror_transform(&phi, &map).unwrap();
        prop_assert!(expand_hbar(&j, &phi.ring()).unwrap().is_normalized());
        prop_assert_eq!(
            qhs_core::hypergeo::homogeneity_degree(&j, &[deg_q]),
            qhs_core::hypergeo::homogeneity_degree(&phi.series, &[deg_q])
        );
        for d in degree_vectors_up_to(1, 3) {
            if d.total() as i64 * deg_q > 1 {
                prop_assert!(map.f_minus1.coeff(&d).is_none());
            }
        }
    }
}
