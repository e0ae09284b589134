//! Torus fixed points, rays and characters of the supported homogeneous spaces.
//!
//! Three families are covered: products of projective spaces, Grassmannians
//! `Gr(k, n)` and complete flag manifolds of type A. The torus parameters
//! `eps` are numeric rationals, so every character evaluates to a rational
//! number and every localized quantity is a rational function of `hbar` alone.
//!
//! Conventions:
//!
//! - `Gr(k, n)` at the subset `v`: tangent weights `eps_j - eps_i` for
//!   `i in v`, `j not in v`; `c1(det S^*)` restricts to `-sum_{i in v} eps_i`.
//! - `P^n` factors behave like `Gr(1, n+1)` on their own block of parameters.
//! - `F(n)` at the permutation `s`: for positions `a < b` the tangent weight is
//!   `eps_{s(b)} - eps_{s(a)}`, the ray swaps positions `a` and `b`, and
//!   `p_k` restricts to `-sum_{i <= k} eps_{s(i)}`.
//!
//! All three satisfy `(p_i)_w = (p_i)_v - <p_i, beta_{v,w}> kappa_{v,w}`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_algebra::{int, DegreeVector, Rational, RationalFunction, Series};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    ProjectiveProduct(Vec<u32>),
    Grassmannian { k: usize, n: usize },
    FlagA(usize),
}

impl SpaceKind {
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceKind::ProjectiveProduct(dims) => {
                if dims.is_empty() || dims.contains(&0) {
                    return Err(Error::Invalid("projective dimensions must be >= 1".into()));
                }
            }
            SpaceKind::Grassmannian { k, n } => {
                if *k < 1 || k >= n {
                    return Err(Error::Invalid(format!("Gr({k},{n}) needs 1 <= k < n")));
                }
            }
            SpaceKind::FlagA(n) => {
                if *n < 2 {
                    return Err(Error::Invalid("flag manifolds need n >= 2".into()));
                }
            }
        }
        Ok(())
    }

    /// Number of torus parameters.
    pub fn n_eps(&self) -> usize {
        match self {
            SpaceKind::ProjectiveProduct(dims) => dims.iter().map(|&d| d as usize + 1).sum(),
            SpaceKind::Grassmannian { n, .. } => *n,
            SpaceKind::FlagA(n) => *n,
        }
    }

    /// Rank of the degree lattice, i.e. the number of Novikov variables.
    pub fn nvars(&self) -> usize {
        match self {
            SpaceKind::ProjectiveProduct(dims) => dims.len(),
            SpaceKind::Grassmannian { .. } => 1,
            SpaceKind::FlagA(n) => n - 1,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            SpaceKind::ProjectiveProduct(dims) => dims.iter().map(|&d| d as usize).sum(),
            SpaceKind::Grassmannian { k, n } => k * (n - k),
            SpaceKind::FlagA(n) => n * (n - 1) / 2,
        }
    }

    /// `<c1(TX), basis_i>` for each degree coordinate.
    pub fn first_chern_pairings(&self) -> Vec<i64> {
        match self {
            SpaceKind::ProjectiveProduct(dims) => dims.iter().map(|&d| d as i64 + 1).collect(),
            SpaceKind::Grassmannian { n, .. } => vec![*n as i64],
            SpaceKind::FlagA(n) => vec![2; n - 1],
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::ProjectiveProduct(dims) => {
                let parts: Vec<String> = dims.iter().map(|d| format!("P{d}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            SpaceKind::Grassmannian { k, n } => write!(f, "Gr({k},{n})"),
            SpaceKind::FlagA(n) => write!(f, "F({n})"),
        }
    }
}

/// Integer combination `sum_j c_j eps_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character(pub Vec<i64>);

impl Character {
    pub fn zero(n: usize) -> Self {
        Character(vec![0; n])
    }

    /// `eps_plus - eps_minus`.
    pub fn root(n: usize, plus: usize, minus: usize) -> Self {
        let mut c = vec![0; n];
        c[plus] += 1;
        c[minus] -= 1;
        Character(c)
    }

    pub fn eval(&self, eps: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(eps)
            .filter(|(c, _)| **c != 0)
            .map(|(&c, e)| e * int(c))
            .sum()
    }

    pub fn plus(&self, other: &Character) -> Character {
        Character(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, m: i64) -> Character {
        Character(self.0.iter().map(|a| a * m).collect())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (j, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            out.push_str(&format!("{sign}{mag}e{}", j + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// A torus fixed point: per-factor indices for projective products, a sorted
/// subset for Grassmannians, a permutation (position -> value) for flags.
/// Entries are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedPoint(pub Vec<usize>);

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A one-dimensional orbit closure seen from `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub source: usize,
    pub target: usize,
    /// `kappa = eps_{root.0} - eps_{root.1}`, the tangent character at `source`.
    pub root: (usize, usize),
    pub degree: DegreeVector,
}

/// Pairing `(delta, kappa^vee)` of two type-A roots.
pub fn coroot_pairing(delta: (usize, usize), kappa: (usize, usize)) -> i64 {
    let eq = |x: usize, y: usize| i64::from(x == y);
    eq(delta.0, kappa.0) - eq(delta.0, kappa.1) - eq(delta.1, kappa.0) + eq(delta.1, kappa.1)
}

const PRIMES: [i64; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

/// `eps_i = prime_i * (1 + r_i / 97)` with `r_i` drawn from a seeded ChaCha stream.
pub fn seeded_eps(n: usize, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let p = PRIMES.get(i).copied().unwrap_or(97 + 2 * i as i64);
            let r: i64 = rng.gen_range(1..97);
            int(p) * Rational::new((97 + r).into(), 97.into())
        })
        .collect()
}

/// A space together with numeric torus parameters and its cached fixed-point data.
#[derive(Clone, Debug)]
pub struct SpaceSpec {
    kind: SpaceKind,
    eps: Vec<Rational>,
    points: Vec<FixedPoint>,
    index: HashMap<FixedPoint, usize>,
    rays: Vec<Vec<Ray>>,
}

impl SpaceSpec {
    pub fn new(kind: SpaceKind, eps: Vec<Rational>) -> Result<Self> {
        kind.validate()?;
        if eps.len() != kind.n_eps() {
            return Err(Error::Invalid(format!(
                "{kind} needs {} torus parameters, got {}",
                kind.n_eps(),
                eps.len()
            )));
        }
        for i in 0..eps.len() {
            for j in 0..i {
                if eps[i] == eps[j] {
                    return Err(Error::DegenerateParameters(format!(
                        "eps_{} = eps_{} = {}",
                        j + 1,
                        i + 1,
                        eps[i]
                    )));
                }
            }
        }
        let points = enumerate_points(&kind);
        let index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut spec = SpaceSpec {
            kind,
            eps,
            points,
            index,
            rays: Vec::new(),
        };
        spec.rays = (0..spec.points.len()).map(|v| spec.build_rays(v)).collect();
        Ok(spec)
    }

    pub fn with_seed(kind: SpaceKind, seed: u64) -> Result<Self> {
        let n = kind.n_eps();
        Self::new(kind, seeded_eps(n, seed))
    }

    /// Default parameters (seed 0).
    pub fn with_default_eps(kind: SpaceKind) -> Result<Self> {
        Self::with_seed(kind, 0)
    }

    /// The same space with `eps` replaced by `t * eps`.
    pub fn scaled(&self, t: &Rational) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::DegenerateParameters("scaling torus parameters by 0".into()));
        }
        let mut out = self.clone();
        out.eps = self.eps.iter().map(|e| e * t).collect();
        Ok(out)
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn eps(&self) -> &[Rational] {
        &self.eps
    }

    pub fn nvars(&self) -> usize {
        self.kind.nvars()
    }

    pub fn dimension(&self) -> usize {
        self.kind.dimension()
    }

    pub fn fixed_points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn point_index(&self, p: &FixedPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn rays(&self, v: usize) -> &[Ray] {
        &self.rays[v]
    }

    pub fn kappa(&self, ray: &Ray) -> Rational {
        &self.eps[ray.root.0] - &self.eps[ray.root.1]
    }

    pub fn kappa_character(&self, ray: &Ray) -> Character {
        Character::root(self.eps.len(), ray.root.0, ray.root.1)
    }

    pub fn tangent_weights(&self, v: usize) -> Vec<Character> {
        self.rays[v].iter().map(|r| self.kappa_character(r)).collect()
    }

    /// Euler class of the tangent space at `v`, i.e. the product of tangent weights.
    pub fn tangent_euler(&self, v: usize) -> Result<Rational> {
        let mut acc = Rational::one();
        for r in &self.rays[v] {
            let k = self.kappa(r);
            if k.is_zero() {
                return Err(Error::DegenerateParameters(format!(
                    "zero tangent weight at fixed point {}",
                    self.points[v]
                )));
            }
            acc *= k;
        }
        Ok(acc)
    }

    fn build_rays(&self, v: usize) -> Vec<Ray> {
        let n = self.eps.len();
        let k = self.nvars();
        let p = &self.points[v].0;
        let mut out = Vec::new();
        match &self.kind {
            SpaceKind::ProjectiveProduct(dims) => {
                let mut offset = 0;
                for (i, &d) in dims.iter().enumerate() {
                    for j in 0..=d as usize {
                        if j == p[i] {
                            continue;
                        }
                        let mut w = p.clone();
                        w[i] = j;
                        out.push(Ray {
                            source: v,
                            target: self.index[&FixedPoint(w)],
                            root: (offset + j, offset + p[i]),
                            degree: DegreeVector::unit(k, i),
                        });
                    }
                    offset += d as usize + 1;
                }
            }
            SpaceKind::Grassmannian { .. } => {
                for &i in p {
                    for j in (0..n).filter(|j| !p.contains(j)) {
                        let mut w: Vec<usize> = p.iter().map(|&x| if x == i { j } else { x }).collect();
                        w.sort_unstable();
                        out.push(Ray {
                            source: v,
                            target: self.index[&FixedPoint(w)],
                            root: (j, i),
                            degree: DegreeVector(vec![1]),
                        });
                    }
                }
            }
            SpaceKind::FlagA(_) => {
                for a in 0..n {
                    for b in a + 1..n {
                        let mut w = p.clone();
                        w.swap(a, b);
                        let degree = DegreeVector((1..n).map(|c| u32::from(a < c && c <= b)).collect());
                        out.push(Ray {
                            source: v,
                            target: self.index[&FixedPoint(w)],
                            root: (p[b], p[a]),
                            degree,
                        });
                    }
                }
            }
        }
        out
    }

    /// Restriction of the basis divisor `p_i` to the fixed point `v`.
    pub fn restrict_divisor(&self, i: usize, v: usize) -> Character {
        let n = self.eps.len();
        let p = &self.points[v].0;
        let mut c = Character::zero(n);
        match &self.kind {
            SpaceKind::ProjectiveProduct(dims) => {
                let offset: usize = dims[..i].iter().map(|&d| d as usize + 1).sum();
                c.0[offset + p[i]] = -1;
            }
            SpaceKind::Grassmannian { .. } => {
                for &j in p {
                    c.0[j] = -1;
                }
            }
            SpaceKind::FlagA(_) => {
                for &j in &p[..=i] {
                    c.0[j] = -1;
                }
            }
        }
        c
    }

    /// `c1(L)` restricted to `v` for `L` with degree pairings `l`.
    pub fn restrict_line_bundle(&self, l: &[i64], v: usize) -> Character {
        let mut acc = Character::zero(self.eps.len());
        for (i, &li) in l.iter().enumerate() {
            acc = acc.plus(&self.restrict_divisor(i, v).scaled(li));
        }
        acc
    }

    /// Numeric values `(p_1)_v, ..., (p_k)_v`.
    pub fn divisor_values(&self, v: usize) -> Vec<Rational> {
        (0..self.nvars())
            .map(|i| self.restrict_divisor(i, v).eval(&self.eps))
            .collect()
    }

    /// Weights of `H^0(P^1, f^* L)` for the `m`-fold cover of `ray`.
    pub fn characters_v(&self, ray: &Ray, m: u32, l: &[i64]) -> Result<Vec<Rational>> {
        if m == 0 {
            return Err(Error::Invalid("cover degree m must be >= 1".into()));
        }
        let c = ray.degree.pair(l);
        if c < 0 {
            return Err(Error::Domain("line bundle is not convex along this ray".into()));
        }
        let lambda = self.restrict_line_bundle(l, ray.source).eval(&self.eps);
        let step = self.kappa(ray) / int(m as i64);
        Ok((0..=m as i64 * c).map(|a| &lambda - &step * int(a)).collect())
    }

    /// Weights of the virtual normal space `[H^0(f^*TX)] - [H^1(f^*TX)] - [0]`
    /// as numerator and denominator lists.
    pub fn characters_n(&self, ray: &Ray, m: u32) -> Result<(Vec<Rational>, Vec<Rational>)> {
        if m == 0 {
            return Err(Error::Invalid("cover degree m must be >= 1".into()));
        }
        let m = m as i64;
        let kappa = self.kappa(ray);
        let step = &kappa / int(m);
        let (mut num, mut den) = (Vec::new(), Vec::new());
        for other in &self.rays[ray.source] {
            let delta = self.kappa(other);
            if other.root == ray.root {
                for a in (0..=2 * m).filter(|&a| a != m) {
                    num.push(&kappa - &step * int(a));
                }
                continue;
            }
            let c = coroot_pairing(other.root, ray.root);
            if c >= 0 {
                for a in 0..=m * c {
                    num.push(&delta - &step * int(a));
                }
            } else {
                for a in 1..(-m * c) {
                    den.push(&delta + &step * int(a));
                }
            }
        }
        Ok((num, den))
    }

    /// Euler class of the normal space of the `m`-fold cover.
    pub fn normal_euler(&self, ray: &Ray, m: u32) -> Result<Rational> {
        let (num, den) = self.characters_n(ray, m)?;
        let mut acc = Rational::one();
        for x in num {
            if x.is_zero() {
                return Err(Error::DegenerateParameters("vanishing normal character".into()));
            }
            acc *= x;
        }
        for x in den {
            if x.is_zero() {
                return Err(Error::DegenerateParameters("vanishing normal character".into()));
            }
            acc /= x;
        }
        Ok(acc)
    }

    /// Euler class of `V = sum_j L_j` restricted to `v`.
    pub fn bundle_euler(&self, lines: &[Vec<i64>], v: usize) -> Rational {
        lines
            .iter()
            .map(|l| self.restrict_line_bundle(l, v).eval(&self.eps))
            .product()
    }

    /// `C^V_{v,w,m} = (-kappa/m) E(V_{v,w,m}) e_v / (E(V)_v Euler(N_{v,w,m}))`.
    pub fn recursion_coefficient(&self, ray: &Ray, m: u32, lines: &[Vec<i64>]) -> Result<Rational> {
        let kappa = self.kappa(ray);
        let mut acc = -kappa / int(m as i64) * self.tangent_euler(ray.source)?;
        acc /= self.normal_euler(ray, m)?;
        for l in lines {
            let chars = self.characters_v(ray, m, l)?;
            let lambda = &chars[0];
            if lambda.is_zero() {
                return Err(Error::DegenerateParameters("bundle weight vanishes at a fixed point".into()));
            }
            // the a = 0 factor is the fiber at the source, divided out by E(V)_v
            for x in &chars[1..] {
                acc *= x;
            }
        }
        Ok(acc)
    }

    /// `sum_v a_v / e_v`.
    pub fn localize_integrate(&self, values: &[Rational]) -> Result<Rational> {
        assert_eq!(values.len(), self.points.len(), "one value per fixed point");
        let mut acc = Rational::zero();
        for (v, a) in values.iter().enumerate() {
            acc += a / self.tangent_euler(v)?;
        }
        Ok(acc)
    }

    /// `sum_v a_v(hbar) / e_v` for rational functions of `hbar`.
    pub fn localize_integrate_rf(&self, values: &[RationalFunction]) -> Result<RationalFunction> {
        assert_eq!(values.len(), self.points.len(), "one value per fixed point");
        let mut acc = RationalFunction::zero();
        for (v, a) in values.iter().enumerate() {
            acc = &acc + &a.scale(&self.tangent_euler(v)?.recip());
        }
        Ok(acc)
    }

    /// `deg q_i = <c1(TX) - c1(V), basis_i>`.
    pub fn q_degrees(&self, lines: &[Vec<i64>]) -> Vec<i64> {
        self.kind
            .first_chern_pairings()
            .into_iter()
            .enumerate()
            .map(|(i, c)| c - lines.iter().map(|l| l[i]).sum::<i64>())
            .collect()
    }
}

fn enumerate_points(kind: &SpaceKind) -> Vec<FixedPoint> {
    match kind {
        SpaceKind::ProjectiveProduct(dims) => {
            let mut out = vec![Vec::new()];
            for &d in dims {
                out = out
                    .into_iter()
                    .flat_map(|prefix: Vec<usize>| {
                        (0..=d as usize).map(move |j| {
                            let mut p = prefix.clone();
                            p.push(j);
                            p
                        })
                    })
                    .collect();
            }
            out.into_iter().map(FixedPoint).collect()
        }
        SpaceKind::Grassmannian { k, n } => {
            fn rec(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<FixedPoint>) {
                if cur.len() == k {
                    out.push(FixedPoint(cur.clone()));
                    return;
                }
                for i in start..n {
                    cur.push(i);
                    rec(i + 1, k, n, cur, out);
                    cur.pop();
                }
            }
            let mut out = Vec::new();
            rec(0, *k, *n, &mut Vec::new(), &mut out);
            out
        }
        SpaceKind::FlagA(n) => {
            fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<FixedPoint>) {
                if cur.len() == n {
                    out.push(FixedPoint(cur.clone()));
                    return;
                }
                for i in 0..n {
                    if !used[i] {
                        used[i] = true;
                        cur.push(i);
                        rec(n, cur, used, out);
                        cur.pop();
                        used[i] = false;
                    }
                }
            }
            let mut out = Vec::new();
            rec(*n, &mut Vec::new(), &mut vec![false; *n], &mut out);
            out
        }
    }
}

/// Per-fixed-point truncated series with rational-function coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizedSeries {
    pub series: Vec<Series<RationalFunction>>,
}

impl LocalizedSeries {
    pub fn at(&self, v: usize) -> &Series<RationalFunction> {
        &self.series[v]
    }

    pub fn coeff(&self, v: usize, d: &DegreeVector) -> RationalFunction {
        self.series[v].coeff(d).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn bound(&self) -> u32 {
        self.series.first().map_or(0, |s| s.bound())
    }

    pub fn nvars(&self) -> usize {
        self.series.first().map_or(0, |s| s.nvars())
    }
}
