//! Fixed-point recursion for the equivariant correlator and localization oracles.
//!
//! At a fixed point `v` the degree-`d` coefficient of a class-P series splits as
//!
//! ```text
//! Z_{v,d}(h) = R_{v,d}(h) + sum_{w, m : m beta_{v,w} <= d} C_{v,w,m} / (h (kappa_{v,w} + m h)) * Z_{w, d - m beta}(-kappa_{v,w} / m)
//! ```
//!
//! with `R_{v,d}` a polynomial in `1/h`. For the correlator of `X` itself the
//! `h^0` and `h^{-1}` parts of `R_{v,d}` vanish for `d > 0`, but the deeper
//! terms do not (on `P^1` one finds `R_{v,2} = 1/(2 kappa^2 h^2) + ...`). The
//! remaining coefficients are fixed by requiring the double construction to be
//! polynomial in `h`, which is a finite exact linear system per degree.

use num_traits::{One, Zero};

use crate::ambient::{LocalizedSeries, SpaceKind, SpaceSpec};
use crate::exact_algebra::{
    degree_vectors_up_to, int, solve_exact, DegreeVector, LinearSolution, Rational,
    RationalFunction, Series, UniPoly,
};
use crate::mirror::classp::{divisor_table, w_coefficient, z_polynomial};
use crate::{Error, Result};

/// Recursion coefficients along one ray out of a fixed point.
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionEntry {
    pub target: usize,
    pub kappa: Rational,
    pub degree: DegreeVector,
    /// `coeffs[m - 1] = C_{v,w,m}`.
    pub coeffs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecursionData {
    pub entries: Vec<Vec<RecursionEntry>>,
    pub order: u32,
}

impl RecursionData {
    /// Tabulates `C^V_{v,w,m}` for every ray and every `m` with `m |beta| <= order`.
    pub fn build(spec: &SpaceSpec, lines: &[Vec<i64>], order: u32) -> Result<Self> {
        let mut entries = Vec::with_capacity(spec.fixed_points().len());
        for v in 0..spec.fixed_points().len() {
            let mut row = Vec::new();
            for ray in spec.rays(v) {
                let kappa = spec.kappa(ray);
                if kappa.is_zero() {
                    return Err(Error::DegenerateParameters("zero ray character".into()));
                }
                let m_max = order / ray.degree.total();
                let coeffs = (1..=m_max)
                    .map(|m| spec.recursion_coefficient(ray, m, lines))
                    .collect::<Result<Vec<_>>>()?;
                row.push(RecursionEntry {
                    target: ray.target,
                    kappa,
                    degree: ray.degree.clone(),
                    coeffs,
                });
            }
            entries.push(row);
        }
        Ok(RecursionData { entries, order })
    }

    /// `sum C_{v,w,m} / (h (kappa + m h)) Z_{w, d - m beta}(-kappa/m)` over admissible `(w, m)`.
    pub fn recursion_part(
        &self,
        v: usize,
        d: &DegreeVector,
        z: impl Fn(usize, &DegreeVector) -> RationalFunction,
    ) -> Result<RationalFunction> {
        let mut acc = RationalFunction::zero();
        for e in &self.entries[v] {
            for (idx, c) in e.coeffs.iter().enumerate() {
                let m = idx as u32 + 1;
                let Some(rest) = d.checked_sub(&e.degree.scaled(m)) else {
                    break;
                };
                let point = -&e.kappa / int(m as i64);
                let value = z(e.target, &rest).eval(&point).map_err(|_| {
                    Error::DegenerateParameters(format!(
                        "substitution h = {point} hits a pole of the series at fixed point {}",
                        e.target
                    ))
                })?;
                if value.is_zero() {
                    continue;
                }
                let den = RationalFunction::from_poly(UniPoly::new(vec![
                    Rational::zero(),
                    e.kappa.clone(),
                    int(m as i64),
                ]));
                acc = &acc + &den.inv()?.scale(&(c * value));
            }
        }
        Ok(acc)
    }
}

/// `h^0` and `h^{-1}` parts of `R_{v,d}`, supplied by the caller.
pub type Head = (Rational, Rational);

/// Builds a localized series order by order: each `Z_{v,d}` is the known head
/// plus the recursion part plus `sum_{j=2}^{J} r_j h^{-j}`, with the `r_j` fixed
/// by polynomiality of the double construction.
///
/// `weights[v] = E(V)_v / e_v`; `depth(d)` is the largest pole order `J`.
pub fn complete_by_polynomiality(
    spec: &SpaceSpec,
    data: &RecursionData,
    weights: &[Rational],
    order: u32,
    head: impl Fn(usize, &DegreeVector) -> Head,
    depth: impl Fn(&DegreeVector) -> u32,
) -> Result<LocalizedSeries> {
    let k = spec.nvars();
    let npts = spec.fixed_points().len();
    let divisors = divisor_table(spec);
    let mut z = LocalizedSeries {
        series: vec![Series::constant(k, order, RationalFunction::one()); npts],
    };
    for d in degree_vectors_up_to(k, order).into_iter().skip(1) {
        // known part: head plus recursion
        let mut known = Vec::with_capacity(npts);
        for v in 0..npts {
            let (h0, h1) = head(v, &d);
            let r = data.recursion_part(v, &d, |w, e| z.coeff(w, e))?;
            let hd = &RationalFunction::constant(h0) + &RationalFunction::hbar_power(-1).scale(&h1);
            known.push(&r + &hd);
        }
        for (v, f) in known.iter().enumerate() {
            z.series[v].set_term(d.clone(), f.clone());
        }
        let jmax = depth(&d).max(2);
        let unknowns: Vec<(usize, u32)> = (0..npts).flat_map(|v| (2..=jmax).map(move |j| (v, j))).collect();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        let zmax = npts as u32 + jmax + 4;
        let mut solution = None;
        for zo in 0..=zmax {
            for s in degree_vectors_up_to(k, zo).into_iter().filter(|s| s.total() == zo) {
                let w_known = w_coefficient(&z, weights, &divisors, &d, &s.0);
                let exp = w_known.laurent_at_zero(-1);
                let poles = (-exp.start).max(jmax as i32).max(1);
                let polys: Vec<UniPoly> = (0..npts).map(|v| z_polynomial(&divisors[v], &d, &s.0)).collect();
                for i in 1..=poles {
                    let row = unknowns
                        .iter()
                        .map(|&(v, j)| {
                            let j = j as i32;
                            let mut c = if j >= i { polys[v].coeff((j - i) as usize) } else { Rational::zero() };
                            if j == i {
                                let p0 = z_polynomial(&divisors[v], &DegreeVector::zero(k), &s.0).coeff(0);
                                c += if j % 2 == 0 { p0 } else { -p0 };
                            }
                            c * &weights[v]
                        })
                        .collect();
                    rows.push(row);
                    rhs.push(-exp.coeff(-i));
                }
            }
            if rows.len() < unknowns.len() {
                continue;
            }
            match solve_exact(&rows, &rhs, unknowns.len()) {
                LinearSolution::Unique(x) => {
                    solution = Some(x);
                    break;
                }
                LinearSolution::Inconsistent => {
                    return Err(Error::Consistency(format!(
                        "no polar completion makes the double construction polynomial at degree {d}"
                    )))
                }
                LinearSolution::Underdetermined { .. } => {}
            }
        }
        let x = solution.ok_or_else(|| {
            Error::Consistency(format!("polar completion at degree {d} is underdetermined"))
        })?;
        for (v, f) in known.into_iter().enumerate() {
            let mut total = f;
            for (idx, &(u, j)) in unknowns.iter().enumerate() {
                if u == v && !x[idx].is_zero() {
                    total = &total + &RationalFunction::hbar_power(-(j as i32)).scale(&x[idx]);
                }
            }
            z.series[v].set_term(d.clone(), total);
        }
    }
    Ok(z)
}

fn inverse_tangent_eulers(spec: &SpaceSpec) -> Result<Vec<Rational>> {
    (0..spec.fixed_points().len())
        .map(|v| spec.tangent_euler(v).map(|e| e.recip()))
        .collect()
}

/// The equivariant correlator `S^X` restricted to every fixed point.
pub fn compute_sx(spec: &SpaceSpec, order: u32) -> Result<LocalizedSeries> {
    let data = RecursionData::build(spec, &[], order)?;
    let weights = inverse_tangent_eulers(spec)?;
    complete_by_polynomiality(
        spec,
        &data,
        &weights,
        order,
        |_, _| (Rational::zero(), Rational::zero()),
        |d| d.total() + 1,
    )
}

/// The recursion with `R_{v,d} = 0` for `d > 0`. Not a correlator in general;
/// kept to show that the polar completion is needed.
pub fn pure_recursion_series(spec: &SpaceSpec, order: u32) -> Result<LocalizedSeries> {
    let data = RecursionData::build(spec, &[], order)?;
    let k = spec.nvars();
    let npts = spec.fixed_points().len();
    let mut z = LocalizedSeries {
        series: vec![Series::constant(k, order, RationalFunction::one()); npts],
    };
    for d in degree_vectors_up_to(k, order).into_iter().skip(1) {
        for v in 0..npts {
            let r = data.recursion_part(v, &d, |w, e| z.coeff(w, e))?;
            z.series[v].set_term(d.clone(), r);
        }
    }
    Ok(z)
}

/// `Phi^V_{v,d} = S^X_{v,d} prod_j prod_{m=1}^{<c1(L_j),d>} (c1(L_j)_v + m h)`.
pub fn compute_phi_v_equivariant(spec: &SpaceSpec, lines: &[Vec<i64>], order: u32) -> Result<LocalizedSeries> {
    for l in lines {
        if l.len() != spec.nvars() || l.iter().any(|&x| x < 0) {
            return Err(Error::Invalid("bundle degrees must be nonnegative, one per basis divisor".into()));
        }
    }
    let sx = compute_sx(spec, order)?;
    Ok(twist_by_bundle(spec, &sx, lines))
}

/// Multiplies each `Z_{v,d}` by `prod_j prod_{m=1}^{<c1(L_j),d>} (c1(L_j)_v + m h)`.
pub fn twist_by_bundle(spec: &SpaceSpec, z: &LocalizedSeries, lines: &[Vec<i64>]) -> LocalizedSeries {
    let mut out = z.clone();
    for (v, series) in out.series.iter_mut().enumerate() {
        let lambdas: Vec<Rational> = lines
            .iter()
            .map(|l| spec.restrict_line_bundle(l, v).eval(spec.eps()))
            .collect();
        let mut twisted = Series::zero(series.nvars(), series.bound());
        for (d, f) in series.terms() {
            let mut factor = UniPoly::one();
            for (l, lambda) in lines.iter().zip(&lambdas) {
                for m in 1..=d.pair(l) {
                    factor = &factor * &UniPoly::linear(lambda.clone(), int(m));
                }
            }
            twisted.add_term(d.clone(), f * &RationalFunction::from_poly(factor));
        }
        *series = twisted;
    }
    out
}

/// `sum_v Z_{v,d}(h) prod_i (p_i)_v^{a_i} / e_v`.
pub fn localized_pairing(spec: &SpaceSpec, z: &LocalizedSeries, d: &DegreeVector, a: &[u32]) -> Result<RationalFunction> {
    let values: Vec<RationalFunction> = (0..spec.fixed_points().len())
        .map(|v| {
            let mono: Rational = spec
                .divisor_values(v)
                .iter()
                .zip(a)
                .map(|(p, &e)| num_traits::pow(p.clone(), e as usize))
                .product();
            z.coeff(v, d).scale(&mono)
        })
        .collect();
    spec.localize_integrate_rf(&values)
}

/// Constant term of a polynomial in `t` of degree at most `bound`, from its
/// values at `t = 1, ..., bound + 1`; the value at `t = bound + 2` is checked.
pub fn nonequivariant_limit(f: impl Fn(&Rational) -> Result<Rational>, bound: u32) -> Result<Rational> {
    let ts: Vec<Rational> = (1..=bound as i64 + 1).map(int).collect();
    let ys = ts.iter().map(&f).collect::<Result<Vec<_>>>()?;
    let lagrange_at = |x: &Rational| -> Rational {
        let mut acc = Rational::zero();
        for (i, (ti, yi)) in ts.iter().zip(&ys).enumerate() {
            let mut basis = Rational::one();
            for (j, tj) in ts.iter().enumerate() {
                if i != j {
                    basis *= (x - tj) / (ti - tj);
                }
            }
            acc += yi * basis;
        }
        acc
    };
    let probe = int(bound as i64 + 2);
    if lagrange_at(&probe) != f(&probe)? {
        return Err(Error::Consistency(format!(
            "quantity is not a polynomial of degree <= {bound} in the torus parameters"
        )));
    }
    Ok(lagrange_at(&Rational::zero()))
}

/// Safe degree bound `dim X + |d| * max_i <c1(TX), basis_i>` for interpolation.
pub fn default_degree_bound(kind: &SpaceKind, d: &DegreeVector) -> u32 {
    let index = kind.first_chern_pairings().into_iter().max().unwrap_or(0) as u32;
    kind.dimension() as u32 + d.total() * index
}

/// `int_{Gr(k,n)} Euler(Sym^l S^*)` by localization at the given parameters.
pub fn oracle_euler_sym_at(k: usize, n: usize, l: u32, eps: Vec<Rational>) -> Result<Rational> {
    let spec = SpaceSpec::new(SpaceKind::Grassmannian { k, n }, eps)?;
    let rank = degree_vectors_up_to(k, l).iter().filter(|a| a.total() == l).count();
    if rank != spec.dimension() {
        return Err(Error::Invalid(format!(
            "rank Sym^{l} = {rank} differs from dim Gr({k},{n}) = {}",
            spec.dimension()
        )));
    }
    let monomials: Vec<DegreeVector> = degree_vectors_up_to(k, l).into_iter().filter(|a| a.total() == l).collect();
    let values: Vec<Rational> = spec
        .fixed_points()
        .iter()
        .map(|p| {
            monomials
                .iter()
                .map(|a| -a.0.iter().zip(&p.0).map(|(&ai, &i)| &spec.eps()[i] * int(ai as i64)).sum::<Rational>())
                .product()
        })
        .collect();
    spec.localize_integrate(&values)
}

/// [`oracle_euler_sym_at`] with the default torus parameters.
pub fn oracle_euler_sym(k: usize, n: usize, l: u32) -> Result<Rational> {
    oracle_euler_sym_at(k, n, l, crate::ambient::seeded_eps(n, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::seeded_eps;
    use crate::exact_algebra::rat;

    fn p1(a: i64, b: i64) -> SpaceSpec {
        SpaceSpec::new(SpaceKind::ProjectiveProduct(vec![1]), vec![int(a), int(b)]).unwrap()
    }

    /// `1 / prod_{m=1}^{d} [m h prod_{j != v}(kappa_{v,j} + m h)]` on `P^n`.
    fn projective_closed_form(spec: &SpaceSpec, v: usize, d: u32) -> RationalFunction {
        let mut den = UniPoly::one();
        for m in 1..=d as i64 {
            den = &den * &UniPoly::linear(Rational::zero(), int(m));
            for r in spec.rays(v) {
                den = &den * &UniPoly::linear(spec.kappa(r), int(m));
            }
        }
        RationalFunction::new(UniPoly::one(), den).unwrap()
    }

    #[test]
    fn p1_degree_one() {
        let s = p1(0, 1);
        let sx = compute_sx(&s, 1).unwrap();
        // kappa = 1 at the first point: 1 / (h (1 + h))
        let expected = RationalFunction::new(UniPoly::one(), UniPoly::new(vec![int(0), int(1), int(1)])).unwrap();
        assert_eq!(sx.coeff(0, &DegreeVector(vec![1])), expected);
        assert_eq!(sx.coeff(0, &DegreeVector(vec![0])), RationalFunction::one());
    }

    #[test]
    fn p1_degree_two_needs_polar_term() {
        let s = p1(2, 7);
        let pure = pure_recursion_series(&s, 2).unwrap();
        let sx = compute_sx(&s, 2).unwrap();
        let d2 = DegreeVector(vec![2]);
        let kappa = s.kappa(&s.rays(0)[0]);
        let r = &sx.coeff(0, &d2) - &pure.coeff(0, &d2);
        // the difference is 1/(2 kappa^2 h^2) + O(h^-3), a polynomial in 1/h
        assert!(r.denominator_is_hbar_power());
        let inf = r.expand_at_infinity(-2);
        assert_eq!(inf.coeff(-2), (int(2) * &kappa * &kappa).recip());
        assert_eq!(inf.coeff(-1), int(0));
    }

    #[test]
    fn projective_spaces_match_closed_form() {
        for (dims, order) in [(vec![1u32], 4u32), (vec![2], 3), (vec![3], 2)] {
            let s = SpaceSpec::with_default_eps(SpaceKind::ProjectiveProduct(dims)).unwrap();
            let sx = compute_sx(&s, order).unwrap();
            for v in 0..s.fixed_points().len() {
                for d in 0..=order {
                    assert_eq!(sx.coeff(v, &DegreeVector(vec![d])), projective_closed_form(&s, v, d));
                }
            }
        }
    }

    #[test]
    fn product_of_projective_lines_factorizes() {
        let s = SpaceSpec::with_default_eps(SpaceKind::ProjectiveProduct(vec![1, 1])).unwrap();
        let sx = compute_sx(&s, 2).unwrap();
        let a = SpaceSpec::new(SpaceKind::ProjectiveProduct(vec![1]), s.eps()[..2].to_vec()).unwrap();
        let b = SpaceSpec::new(SpaceKind::ProjectiveProduct(vec![1]), s.eps()[2..].to_vec()).unwrap();
        for v in 0..4 {
            let (va, vb) = (s.fixed_points()[v].0[0], s.fixed_points()[v].0[1]);
            for d in degree_vectors_up_to(2, 2) {
                let expected = &projective_closed_form(&a, va, d.get(0)) * &projective_closed_form(&b, vb, d.get(1));
                assert_eq!(sx.coeff(v, &d), expected);
            }
        }
    }

    #[test]
    fn phi_v_equivariant_examples() {
        let s = p1(3, 8);
        let phi = compute_phi_v_equivariant(&s, &[vec![2]], 2).unwrap();
        let sx = compute_sx(&s, 2).unwrap();
        for v in 0..2 {
            assert_eq!(phi.coeff(v, &DegreeVector(vec![0])), RationalFunction::one());
            let pv = s.divisor_values(v)[0].clone();
            let factor = RationalFunction::from_poly(&UniPoly::linear(int(2) * &pv, int(1)) * &UniPoly::linear(int(2) * &pv, int(2)));
            assert_eq!(phi.coeff(v, &DegreeVector(vec![1])), &sx.coeff(v, &DegreeVector(vec![1])) * &factor);
        }
        assert_eq!(compute_phi_v_equivariant(&s, &[], 2).unwrap(), sx);
    }

    #[test]
    fn interpolation() {
        assert_eq!(nonequivariant_limit(|_| Ok(rat(7, 3)), 3).unwrap(), rat(7, 3));
        assert_eq!(nonequivariant_limit(|t| Ok(t * t + int(5)), 2).unwrap(), int(5));
        assert!(nonequivariant_limit(|t| Ok(t * t * t), 2).is_err());
        // int_{P^1} p at scaled eps is exactly 1
        let base = SpaceSpec::with_default_eps(SpaceKind::ProjectiveProduct(vec![1])).unwrap();
        let limit = nonequivariant_limit(
            |t| {
                let s = base.scaled(t)?;
                let vals: Vec<_> = (0..2).map(|v| s.divisor_values(v)[0].clone()).collect();
                s.localize_integrate(&vals)
            },
            2,
        )
        .unwrap();
        assert_eq!(limit, int(1));
    }

    #[test]
    fn oracles() {
        assert_eq!(oracle_euler_sym(2, 5, 5).unwrap(), int(2875));
        for seed in 1..=3 {
            assert_eq!(oracle_euler_sym_at(2, 4, 3, seeded_eps(4, seed)).unwrap(), int(27));
        }
        assert!(oracle_euler_sym(2, 5, 4).is_err());
    }
}
