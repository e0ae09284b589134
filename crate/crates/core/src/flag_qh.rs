//! Quantum cohomology relations of the complete flag manifold `F(n)`.
//!
//! The relations are the coefficients of `det(lambda - A)` for the tridiagonal
//! matrix with `x_i` on the diagonal, `q_i` above it and `-1` below it.
//! Polynomials live in `x_1..x_n, q_1..q_{n-1}`, in that variable order.

use std::fmt;

use num_traits::Zero;

use crate::ambient::{SpaceKind, SpaceSpec};
use crate::exact_algebra::{degree_vectors_up_to, int, DegreeVector, MultiPoly, Rational, RationalFunction, UniPoly};
use crate::localization_recursion::compute_sx;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumRelation {
    pub n: usize,
    /// The relation specialises to the `index`-th elementary symmetric polynomial at `q = 0`.
    pub index: usize,
    pub poly: MultiPoly,
}

impl QuantumRelation {
    pub fn at_q_zero(&self) -> MultiPoly {
        (self.n..2 * self.n - 1).fold(self.poly.clone(), |p, i| p.specialize(i, &Rational::zero()))
    }

    pub fn render(&self) -> String {
        self.poly.render(&variable_names(self.n))
    }
}

impl fmt::Display for QuantumRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn variable_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).chain((1..n).map(|i| format!("q{i}"))).collect()
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Invalid("flag relations need n >= 2".into()));
    }
    Ok(())
}

/// The matrix `A(x_i)` over `nvars` variables (at least `2n - 1`).
fn matrix_in(n: usize, nvars: usize) -> Vec<Vec<MultiPoly>> {
    let mut a = vec![vec![MultiPoly::zero(nvars); n]; n];
    for i in 0..n {
        a[i][i] = MultiPoly::var(nvars, i);
        if i + 1 < n {
            a[i][i + 1] = MultiPoly::var(nvars, n + i);
            a[i + 1][i] = MultiPoly::constant(nvars, int(-1));
        }
    }
    a
}

pub fn build_a(n: usize) -> Result<Vec<Vec<MultiPoly>>> {
    check_size(n)?;
    Ok(matrix_in(n, 2 * n - 1))
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = m.len();
    let Some(nvars) = m.first().map(|r| r[0].nvars()) else {
        return Err(Error::Invalid("empty matrix".into()));
    };
    let mut prev = MultiPoly::one(nvars);
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(MultiPoly::zero(nvars));
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// `e_i(x_1..x_n)` over `nvars` variables.
pub fn elementary_symmetric(n: usize, i: usize, nvars: usize) -> MultiPoly {
    let mut e = vec![MultiPoly::zero(nvars); n + 1];
    e[0] = MultiPoly::one(nvars);
    for j in 0..n {
        let x = MultiPoly::var(nvars, j);
        for r in (1..=j + 1).rev() {
            e[r] = &e[r] + &(&e[r - 1] * &x);
        }
    }
    e.swap_remove(i)
}

/// `(-1)^i [lambda^{n-i}] det(lambda - A)` for `i = 1..n`.
pub fn quantum_relations(n: usize) -> Result<Vec<QuantumRelation>> {
    check_size(n)?;
    let nvars = 2 * n;
    let lambda = MultiPoly::var(nvars, 2 * n - 1);
    let mut m = matrix_in(n, nvars);
    for (i, row) in m.iter_mut().enumerate() {
        for entry in row.iter_mut() {
            *entry = -&*entry;
        }
        row[i] = &row[i] + &lambda;
    }
    let det = bareiss_determinant(m)?;
    let by_lambda = det.coefficients_in(2 * n - 1);
    let keep: Vec<MultiPoly> = (0..2 * n - 1).map(|i| MultiPoly::var(2 * n - 1, i)).collect();
    Ok((1..=n)
        .map(|i| {
            let c = by_lambda
                .get(&((n - i) as u32))
                .cloned()
                .unwrap_or_else(|| MultiPoly::zero(nvars));
            let mut images = keep.clone();
            images.push(MultiPoly::zero(2 * n - 1));
            let poly = c.compose(&images);
            QuantumRelation {
                n,
                index: i,
                poly: if i % 2 == 1 { -&poly } else { poly },
            }
        })
        .collect())
}

/// Whether every relation is homogeneous of degree `index` under `deg x = 1`, `deg q = 2`.
pub fn relations_homogeneous(relations: &[QuantumRelation]) -> bool {
    relations.iter().all(|r| {
        let weights: Vec<u32> = (0..2 * r.n - 1).map(|i| if i < r.n { 1 } else { 2 }).collect();
        r.poly.weighted_degree(&weights) == Some(Some(r.index as u32))
    })
}

/// `x_i` restricted to fixed point `v` of `F(n)`: `p_i - p_{i-1}` with `p_0 = 0`
/// and `p_n = -sum eps`.
fn x_restrictions(spec: &SpaceSpec, v: usize, n: usize) -> Vec<Rational> {
    let p = spec.divisor_values(v);
    let total: Rational = -spec.eps().iter().sum::<Rational>();
    let at = |k: usize| -> Rational {
        match k {
            0 => Rational::zero(),
            k if k == n => total.clone(),
            k => p[k - 1].clone(),
        }
    };
    (1..=n).map(|i| at(i) - at(i - 1)).collect()
}

/// Checks `P(X, q) S_v = e_i(-eps) S_v` coefficientwise at every fixed point,
/// where `X_i = p_i - p_{i-1} + hbar (q_i d_i - q_{i-1} d_{i-1})` acts on the
/// `q^d` coefficient as `x_i|_v + hbar (d_i - d_{i-1})`.
pub fn check_relation_at_fixed_points(
    relation: &QuantumRelation,
    spec: &SpaceSpec,
    sx: &crate::ambient::LocalizedSeries,
    q_order: u32,
) -> Result<bool> {
    let n = relation.n;
    if spec.kind() != &SpaceKind::FlagA(n) {
        return Err(Error::Invalid("relation and space disagree".into()));
    }
    let neg_eps: Vec<Rational> = spec.eps().iter().map(|e| -e).collect();
    let target = elementary_symmetric(n, relation.index, n).evaluate(&neg_eps);
    for v in 0..spec.fixed_points().len() {
        let x = x_restrictions(spec, v, n);
        for d in degree_vectors_up_to(n - 1, q_order) {
            let mut lhs = RationalFunction::zero();
            for (exps, c) in relation.poly.terms() {
                let b = DegreeVector(exps[n..].to_vec());
                let Some(rest) = d.checked_sub(&b) else { continue };
                let mut op = UniPoly::constant(c.clone());
                for (i, &a) in exps[..n].iter().enumerate() {
                    let shift = i64::from(rest.0.get(i).copied().unwrap_or(0))
                        - if i == 0 { 0 } else { i64::from(rest.get(i - 1)) };
                    op = &op * &UniPoly::linear(x[i].clone(), int(shift)).pow(a);
                }
                lhs = &lhs + &(&RationalFunction::from_poly(op) * &sx.coeff(v, &rest));
            }
            let rhs = sx.coeff(v, &d).scale(&target);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All relations of `F(n)` against the localized correlator up to `q_order`.
pub fn check_relations_vs_recursion(n: usize, q_order: u32) -> Result<bool> {
    let spec = SpaceSpec::with_default_eps(SpaceKind::FlagA(n))?;
    let sx = compute_sx(&spec, q_order)?;
    for r in quantum_relations(n)? {
        if !check_relation_at_fixed_points(&r, &spec, &sx, q_order)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(2 * n - 1, i)
    }

    /// Laplace expansion along the first row.
    fn cofactor(m: &[Vec<MultiPoly>]) -> MultiPoly {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = MultiPoly::zero(m[0][0].nvars());
        for j in 0..m.len() {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<MultiPoly>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
                .collect();
            let term = &m[0][j] * &cofactor(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn matrix_shape() {
        let a = build_a(3).unwrap();
        assert_eq!(a[0][1], var(3, 3));
        assert_eq!(a[1][2], var(3, 4));
        assert_eq!(a[2][1], MultiPoly::constant(5, int(-1)));
        assert!(build_a(1).is_err());
    }

    #[test]
    fn small_cases() {
        let r = quantum_relations(2).unwrap();
        assert_eq!(r[0].poly, &var(2, 0) + &var(2, 1));
        assert_eq!(r[1].poly, &(&var(2, 0) * &var(2, 1)) + &var(2, 2));
        let r3 = quantum_relations(3).unwrap();
        let expected = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .fold(&var(3, 3) + &var(3, 4), |acc, &(i, j)| &acc + &(&var(3, i) * &var(3, j)));
        assert_eq!(r3[1].poly, expected);
    }

    #[test]
    fn determinant_paths_agree() {
        for n in 2..=5 {
            let a = build_a(n).unwrap();
            assert_eq!(bareiss_determinant(a.clone()).unwrap(), cofactor(&a));
            let r = quantum_relations(n).unwrap();
            assert_eq!(r[n - 1].poly, cofactor(&a));
            assert!(relations_homogeneous(&r));
        }
    }

    #[test]
    fn classical_limit() {
        for n in 2..=6 {
            for r in quantum_relations(n).unwrap() {
                assert_eq!(r.at_q_zero(), elementary_symmetric(n, r.index, 2 * n - 1));
            }
        }
    }

    #[test]
    fn relations_annihilate_correlator() {
        assert!(check_relations_vs_recursion(2, 0).unwrap());
        assert!(check_relations_vs_recursion(2, 3).unwrap());
        assert!(check_relations_vs_recursion(3, 2).unwrap());
    }

    #[test]
    fn corrupted_sign_is_detected() {
        let spec = SpaceSpec::with_default_eps(SpaceKind::FlagA(2)).unwrap();
        let sx = compute_sx(&spec, 2).unwrap();
        let mut r = quantum_relations(2).unwrap().remove(1);
        r.poly = &(&var(2, 0) * &var(2, 1)) - &var(2, 2);
        assert!(!check_relation_at_fixed_points(&r, &spec, &sx, 2).unwrap());
    }
}
