//! Correcting Euler classes and hypergeometric series over products of projective spaces.

use std::sync::Arc;

use crate::ambient::SpaceKind;
use crate::exact_algebra::{
    degree_vectors_up_to, int, invert_linear_factor, CohClass, DegreeVector, HbarLaurent,
    MultiPoly, NovikovSeries, Rational, RingDescriptor, Series,
};
use crate::{Error, Result};

/// A decomposable bundle `V = L_1 + ... + L_l`; `lines[j][i] = <c1(L_j), basis_i>`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BundleSpec {
    pub lines: Vec<Vec<i64>>,
}

impl BundleSpec {
    pub fn new(lines: Vec<Vec<i64>>) -> Self {
        BundleSpec { lines }
    }

    pub fn empty() -> Self {
        BundleSpec { lines: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.lines.len()
    }

    /// Checks lengths against `k` and convexity (nonnegative pairings).
    pub fn validate(&self, k: usize) -> Result<()> {
        for (j, l) in self.lines.iter().enumerate() {
            if l.len() != k {
                return Err(Error::Invalid(format!(
                    "line bundle {} has {} degree entries, expected {k}",
                    j + 1,
                    l.len()
                )));
            }
            if l.iter().any(|&x| x < 0) {
                return Err(Error::Invalid(format!("line bundle {} is not convex", j + 1)));
            }
        }
        Ok(())
    }

    /// `c1(L_j)` as a class.
    pub fn chern_class(&self, j: usize, ring: &Arc<RingDescriptor>) -> CohClass {
        let coeffs: Vec<Rational> = self.lines[j].iter().map(|&x| int(x)).collect();
        CohClass::linear(ring, &coeffs)
    }

    pub fn euler_class(&self, ring: &Arc<RingDescriptor>) -> CohClass {
        (0..self.rank()).fold(CohClass::one(ring), |acc, j| &acc * &self.chern_class(j, ring))
    }
}

fn h_product(bundle: &BundleSpec, d: &DegreeVector, ring: &Arc<RingDescriptor>, first: i64) -> HbarLaurent {
    let mut acc = HbarLaurent::one(ring);
    for j in 0..bundle.rank() {
        let c1 = bundle.chern_class(j, ring);
        for m in first..=d.pair(&bundle.lines[j]) {
            acc = &acc * &HbarLaurent::linear_factor(&c1, m);
        }
    }
    acc
}

/// `H_d = prod_j prod_{m=0}^{<c1(L_j),d>} (c1(L_j) + m hbar)`.
pub fn h_beta(bundle: &BundleSpec, d: &DegreeVector, ring: &Arc<RingDescriptor>) -> HbarLaurent {
    h_product(bundle, d, ring, 0)
}

/// `H'_d`, the same product without the `m = 0` factors.
pub fn h_prime_beta(bundle: &BundleSpec, d: &DegreeVector, ring: &Arc<RingDescriptor>) -> HbarLaurent {
    h_product(bundle, d, ring, 1)
}

fn projective_dims(kind: &SpaceKind) -> Result<&[u32]> {
    match kind {
        SpaceKind::ProjectiveProduct(dims) => Ok(dims),
        other => Err(Error::Invalid(format!(
            "closed-form series need a product of projective spaces, got {other}"
        ))),
    }
}

pub fn ring_of(kind: &SpaceKind) -> Result<Arc<RingDescriptor>> {
    Ok(RingDescriptor::new(projective_dims(kind)?.to_vec()))
}

/// `G^X_d = prod_i prod_{m=1}^{d_i} (p_i + m hbar)^{-(n_i+1)}`.
pub fn g_x_d(ring: &Arc<RingDescriptor>, d: &DegreeVector) -> Result<HbarLaurent> {
    let mut acc = HbarLaurent::one(ring);
    for (i, &n) in ring.top().iter().enumerate() {
        let p = CohClass::generator(ring, i);
        for m in 1..=d.get(i) as i64 {
            let inv = invert_linear_factor(&p, m)?;
            acc = &acc * &inv.pow(n + 1);
        }
    }
    Ok(acc)
}

/// A hypergeometric series with the exponential prefactor stripped.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeomSeries {
    pub series: NovikovSeries,
    pub kind: SpaceKind,
    pub bundle: BundleSpec,
    pub primed: bool,
}

impl HypergeomSeries {
    pub fn ring(&self) -> Arc<RingDescriptor> {
        ring_of(&self.kind).expect("projective product")
    }

    pub fn provenance(&self) -> String {
        let lines: Vec<String> = self.bundle.lines.iter().map(|l| format!("{l:?}")).collect();
        format!(
            "Phi{} on {} bundle [{}] D={}",
            if self.primed { "'" } else { "" },
            self.kind,
            lines.join(","),
            self.series.bound()
        )
    }
}

/// `sum_{|d| <= bound} q^d H_d G^X_d`, or with `H'_d` when `primed`.
pub fn phi_v(kind: &SpaceKind, bundle: &BundleSpec, bound: u32, primed: bool) -> Result<HypergeomSeries> {
    let ring = ring_of(kind)?;
    let k = ring.nvars();
    bundle.validate(k)?;
    let mut series = Series::zero(k, bound);
    for d in degree_vectors_up_to(k, bound) {
        let h = if primed {
            h_prime_beta(bundle, &d, &ring)
        } else {
            h_beta(bundle, &d, &ring)
        };
        series.add_term(d.clone(), &h * &g_x_d(&ring, &d)?);
    }
    Ok(HypergeomSeries {
        series,
        kind: kind.clone(),
        bundle: bundle.clone(),
        primed,
    })
}

/// Checks the coefficient recursion of the quantum differential operators:
/// `(p_i + d_i hbar)^{n_i+1} A_d = prod_j prod_{m=<l_j,d-e_i>+1}^{<l_j,d>} (c1(L_j) + m hbar) A_{d-e_i}`
/// for every factor `i` and every `d` with `d_i >= 1`.
pub fn qde_check(kind: &SpaceKind, bundle: &BundleSpec, series: &NovikovSeries) -> Result<bool> {
    let ring = ring_of(kind)?;
    let k = ring.nvars();
    bundle.validate(k)?;
    let zero = HbarLaurent::zero(&ring);
    for d in degree_vectors_up_to(k, series.bound()) {
        for i in 0..k {
            if d.get(i) == 0 {
                continue;
            }
            let prev = d.checked_sub(&DegreeVector::unit(k, i)).expect("d_i >= 1");
            let p = CohClass::generator(&ring, i);
            let op = HbarLaurent::linear_factor(&p, d.get(i) as i64).pow(ring.top()[i] + 1);
            let lhs = &op * series.coeff(&d).unwrap_or(&zero);
            let mut ratio = HbarLaurent::one(&ring);
            for j in 0..bundle.rank() {
                let c1 = bundle.chern_class(j, &ring);
                for m in prev.pair(&bundle.lines[j]) + 1..=d.pair(&bundle.lines[j]) {
                    ratio = &ratio * &HbarLaurent::linear_factor(&c1, m);
                }
            }
            let rhs = &ratio * series.coeff(&prev).unwrap_or(&zero);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Common degree of every monomial `p^e hbar^j q^d` under
/// `deg p = 1`, `deg hbar = 1`, `deg q_i = q_degrees[i]`, if there is one.
pub fn homogeneity_degree(series: &NovikovSeries, q_degrees: &[i64]) -> Option<i64> {
    let mut found: Option<i64> = None;
    for (d, coeff) in series.terms() {
        let qdeg = d.pair(q_degrees);
        for (j, class) in coeff.terms() {
            for (e, _) in class.terms() {
                let deg = qdeg + *j as i64 + e.iter().sum::<u32>() as i64;
                match found {
                    None => found = Some(deg),
                    Some(f) if f != deg => return None,
                    _ => {}
                }
            }
        }
    }
    found
}

/// `H_beta` (or `H'_beta`) as a polynomial in `x_1..x_l, hbar`, with `hbar` last.
pub fn h_poly(bundle: &BundleSpec, beta: &DegreeVector, primed: bool) -> MultiPoly {
    let l = bundle.rank();
    let hbar = MultiPoly::var(l + 1, l);
    let mut acc = MultiPoly::one(l + 1);
    for j in 0..l {
        let x = MultiPoly::var(l + 1, j);
        for m in i64::from(primed)..=beta.pair(&bundle.lines[j]) {
            acc = &acc * &(&x + &hbar.scale(&int(m)));
        }
    }
    acc
}

/// `x_j -> x_j + sign <c1(L_j), shift> hbar`, `hbar -> hbar_sign hbar`.
fn substitution(bundle: &BundleSpec, shift: &DegreeVector, sign: i64, hbar_sign: i64) -> Vec<MultiPoly> {
    let l = bundle.rank();
    let hbar = MultiPoly::var(l + 1, l);
    let mut images: Vec<MultiPoly> = (0..l)
        .map(|j| &MultiPoly::var(l + 1, j) + &hbar.scale(&int(sign * shift.pair(&bundle.lines[j]))))
        .collect();
    images.push(hbar.scale(&int(hbar_sign)));
    images
}

/// `H_beta(x - <c1(L), beta'> hbar, hbar) = H_{beta'}(x, -hbar) H'_{beta - beta'}(x, hbar)`.
pub fn check_identity_double(bundle: &BundleSpec, beta: &DegreeVector, beta_prime: &DegreeVector) -> Result<bool> {
    per_line_then_whole(bundle, beta, beta_prime, double_whole)
}

/// Both identities factor over the line summands, so a line-by-line pass is
/// already a proof; only a failing line forces the full product.
fn per_line_then_whole(
    bundle: &BundleSpec,
    beta: &DegreeVector,
    beta_prime: &DegreeVector,
    check: fn(&BundleSpec, &DegreeVector, &DegreeVector) -> Result<bool>,
) -> Result<bool> {
    if bundle.rank() > 1 {
        let mut all = true;
        for l in &bundle.lines {
            all &= check(&BundleSpec::new(vec![l.clone()]), beta, beta_prime)?;
        }
        if all {
            return Ok(true);
        }
    }
    check(bundle, beta, beta_prime)
}

fn double_whole(bundle: &BundleSpec, beta: &DegreeVector, beta_prime: &DegreeVector) -> Result<bool> {
    let rest = beta
        .checked_sub(beta_prime)
        .ok_or_else(|| Error::Domain("identity needs beta' <= beta".into()))?;
    let lhs = h_poly(bundle, beta, false).compose(&substitution(bundle, beta_prime, -1, 1));
    let reflect = substitution(bundle, &DegreeVector::zero(beta.len()), 1, -1);
    let rhs = &h_poly(bundle, beta_prime, false).compose(&reflect) * &h_poly(bundle, &rest, true);
    Ok(lhs == rhs)
}

/// `H'_beta(x, hbar) = H'_{beta'}(x, hbar) H'_{beta - beta'}(x + <c1(L), beta'> hbar, hbar)`.
pub fn check_identity_recursion(bundle: &BundleSpec, beta: &DegreeVector, beta_prime: &DegreeVector) -> Result<bool> {
    per_line_then_whole(bundle, beta, beta_prime, recursion_whole)
}

fn recursion_whole(bundle: &BundleSpec, beta: &DegreeVector, beta_prime: &DegreeVector) -> Result<bool> {
    let rest = beta
        .checked_sub(beta_prime)
        .ok_or_else(|| Error::Domain("identity needs beta' <= beta".into()))?;
    let lhs = h_poly(bundle, beta, true);
    let rhs = &h_poly(bundle, beta_prime, true) * &h_poly(bundle, &rest, true).compose(&substitution(bundle, beta_prime, 1, 1));
    Ok(lhs == rhs)
}
