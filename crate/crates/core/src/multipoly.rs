//! Exact integration over multi-polytopes by the signed vertex formula
//!
//! `∫_Δ ℓ^d = d!/(n+d)! · Σ_σ sign(σ) ℓ(A_σ)^{n+d} / Π_j ℓ(w_{σ,j})`,
//!
//! volume polynomials, mixed integrals, and the BKK comparison with the
//! Stanley-Reisner side.

use num_traits::{One, Zero};

use crate::basealg::{f_gamma, horizontal_from, BaseElement};
use crate::charpair::CharacteristicPair;
use crate::error::{Error, Result};
use crate::exactnum::{dot, factorial, int, polarize, power_of_linear_forms, MultiPoly, RatMatrix, Scalar};
use crate::srbundle::BundleRing;

/// A polynomial in the support numbers `h_1..h_s`.
pub type IntegralPolynomial = MultiPoly;

struct ConeData {
    sign: i8,
    cone: Vec<usize>,
    frame: Vec<Vec<Scalar>>,
}

fn cone_data(cp: &CharacteristicPair) -> Result<Vec<ConeData>> {
    cp.max_cones()
        .iter()
        .map(|c| {
            Ok(ConeData {
                sign: cp.cone_sign(c)?.value,
                cone: c.clone(),
                frame: cp.dual_edge_frame(c)?,
            })
        })
        .collect()
}

/// `ℓ = (1, N, N², …)` for the smallest `N ≥ 2` that is nonzero on every
/// dual edge vector.
pub fn generic_direction(cp: &CharacteristicPair) -> Result<Vec<Scalar>> {
    let data = cone_data(cp)?;
    let mut base = 2i64;
    loop {
        let mut ell = Vec::with_capacity(cp.n());
        let mut p = Scalar::one();
        for _ in 0..cp.n() {
            ell.push(p.clone());
            p *= int(base);
        }
        if data.iter().all(|c| c.frame.iter().all(|w| !dot(&ell, w).is_zero())) {
            return Ok(ell);
        }
        base += 1;
    }
}

/// Value at `t = 0` of the degree-`≤ d` polynomial through `(t_k, F(t_k))`:
/// returns the Lagrange weights for the nodes.
fn lagrange_weights_at_zero(ts: &[Scalar]) -> Vec<Scalar> {
    ts.iter()
        .enumerate()
        .map(|(k, tk)| {
            let mut w = Scalar::one();
            for (j, tj) in ts.iter().enumerate() {
                if j != k {
                    w *= -tj / (tk - tj);
                }
            }
            w
        })
        .collect()
}

/// Evaluates `F(0)` for `F(t) = eval(ℓ + tζ)` of degree `≤ d` in `t`, using
/// only nondegenerate nodes `t = 1, 2, …`.
fn perturbed<T>(
    ell: &[Scalar],
    zeta: &[Scalar],
    d: u32,
    mut eval: impl FnMut(&[Scalar]) -> Result<T>,
) -> Result<Vec<(Scalar, T)>> {
    let mut nodes = Vec::new();
    let mut t = 1i64;
    while nodes.len() <= d as usize {
        let tt = int(t);
        let form: Vec<Scalar> = ell.iter().zip(zeta).map(|(a, b)| a + &tt * b).collect();
        match eval(&form) {
            Ok(v) => nodes.push((tt, v)),
            Err(Error::DegenerateDirection) => {}
            Err(e) => return Err(e),
        }
        t += 1;
    }
    let ts: Vec<Scalar> = nodes.iter().map(|(t, _)| t.clone()).collect();
    let ws = lagrange_weights_at_zero(&ts);
    Ok(ws.into_iter().zip(nodes.into_iter().map(|(_, v)| v)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPolytope {
    cp: CharacteristicPair,
    h: Vec<Scalar>,
}

impl MultiPolytope {
    pub fn new(cp: &CharacteristicPair, h: Vec<Scalar>) -> Result<Self> {
        if h.len() != cp.s() {
            return Err(Error::MalformedInput(format!(
                "support vector has {} entries, expected {}",
                h.len(),
                cp.s()
            )));
        }
        Ok(MultiPolytope { cp: cp.clone(), h })
    }

    pub fn h(&self) -> &[Scalar] {
        &self.h
    }

    pub fn charpair(&self) -> &CharacteristicPair {
        &self.cp
    }

    /// `∫_Δ ℓ^d`; fails with `DegenerateDirection` if `ℓ` kills a dual edge.
    pub fn integrate_linear_power(&self, ell: &[Scalar], d: u32) -> Result<Scalar> {
        if ell.len() != self.cp.n() {
            return Err(Error::MalformedInput("linear form has wrong dimension".into()));
        }
        let n = self.cp.n() as u32;
        let mut acc = Scalar::zero();
        for c in cone_data(&self.cp)? {
            let mut denom = Scalar::one();
            for w in &c.frame {
                let v = dot(ell, w);
                if v.is_zero() {
                    return Err(Error::DegenerateDirection);
                }
                denom *= v;
            }
            let a = self.cp.vertex(&self.h, &c.cone)?;
            let la = dot(ell, &a);
            let mut num = Scalar::one();
            for _ in 0..n + d {
                num *= &la;
            }
            let term = num / denom;
            if c.sign > 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        Ok(acc * factorial(d) / factorial(n + d))
    }

    /// As `integrate_linear_power`, resolving degenerate directions by
    /// interpolation along a generic perturbation.
    pub fn integrate_linear_power_any(&self, ell: &[Scalar], d: u32) -> Result<Scalar> {
        match self.integrate_linear_power(ell, d) {
            Err(Error::DegenerateDirection) => {
                let zeta = generic_direction(&self.cp)?;
                let parts = perturbed(ell, &zeta, d, |form| self.integrate_linear_power(form, d))?;
                Ok(parts.into_iter().map(|(w, v)| w * v).sum())
            }
            other => other,
        }
    }

    pub fn volume(&self) -> Result<Scalar> {
        let ell = generic_direction(&self.cp)?;
        self.integrate_linear_power(&ell, 0)
    }

    /// `∫_Δ f` for an arbitrary polynomial on `M_R`.
    pub fn integrate_polynomial(&self, f: &MultiPoly) -> Result<Scalar> {
        if f.nvars() != self.cp.n() {
            return Err(Error::MalformedInput("integrand has wrong number of variables".into()));
        }
        let mut acc = Scalar::zero();
        let mut volume = None;
        for (alpha, c) in f.terms() {
            let d: u32 = alpha.iter().sum();
            if d == 0 {
                if volume.is_none() {
                    volume = Some(self.volume()?);
                }
                acc += c * volume.as_ref().unwrap();
                continue;
            }
            for (cj, form) in power_of_linear_forms(alpha) {
                acc += c * cj * self.integrate_linear_power_any(&form, d)?;
            }
        }
        Ok(acc)
    }
}

/// `∫ ℓ^d` as a polynomial in `h_1..h_s`; vertices are linear in `h`.
pub fn linear_power_polynomial(cp: &CharacteristicPair, ell: &[Scalar], d: u32) -> Result<IntegralPolynomial> {
    let s = cp.s();
    let n = cp.n() as u32;
    let mut acc = MultiPoly::zero(s);
    for c in cone_data(cp)? {
        let lw: Vec<Scalar> = c.frame.iter().map(|w| dot(ell, w)).collect();
        if lw.iter().any(|v| v.is_zero()) {
            return Err(Error::DegenerateDirection);
        }
        let mut coeffs = vec![Scalar::zero(); s];
        for (j, &i) in c.cone.iter().enumerate() {
            coeffs[i] = lw[j].clone();
        }
        let denom: Scalar = lw.iter().fold(Scalar::one(), |a, b| a * b);
        let scale = if c.sign > 0 { denom.recip() } else { -denom.recip() };
        acc = &acc + &MultiPoly::linear(&coeffs).pow(n + d).scale(&scale);
    }
    Ok(acc.scale(&(factorial(d) / factorial(n + d))))
}

fn linear_power_polynomial_any(cp: &CharacteristicPair, ell: &[Scalar], d: u32) -> Result<IntegralPolynomial> {
    match linear_power_polynomial(cp, ell, d) {
        Err(Error::DegenerateDirection) => {
            let zeta = generic_direction(cp)?;
            let parts = perturbed(ell, &zeta, d, |form| linear_power_polynomial(cp, form, d))?;
            Ok(parts
                .into_iter()
                .fold(MultiPoly::zero(cp.s()), |acc, (w, p)| &acc + &p.scale(&w)))
        }
        other => other,
    }
}

/// The polynomial `I_f(h) = ∫_{Δ(h)} f`.
pub fn integral_polynomial_symbolic(cp: &CharacteristicPair, f: &MultiPoly) -> Result<IntegralPolynomial> {
    if f.nvars() != cp.n() {
        return Err(Error::MalformedInput("integrand has wrong number of variables".into()));
    }
    let mut acc = MultiPoly::zero(cp.s());
    let mut volume = None;
    for (alpha, c) in f.terms() {
        let d: u32 = alpha.iter().sum();
        if d == 0 {
            if volume.is_none() {
                volume = Some(volume_polynomial(cp)?);
            }
            acc = &acc + &volume.as_ref().unwrap().scale(c);
            continue;
        }
        for (cj, form) in power_of_linear_forms(alpha) {
            let p = linear_power_polynomial_any(cp, &form, d)?;
            acc = &acc + &p.scale(&(c * cj));
        }
    }
    Ok(acc)
}

pub fn volume_polynomial(cp: &CharacteristicPair) -> Result<IntegralPolynomial> {
    linear_power_polynomial(cp, &generic_direction(cp)?, 0)
}

/// Polarization of `I_f` evaluated on the support vectors `hs`.
pub fn mixed_integral(cp: &CharacteristicPair, f: &MultiPoly, hs: &[Vec<Scalar>]) -> Result<Scalar> {
    let i_f = integral_polynomial_symbolic(cp, f)?;
    polarize(&i_f, hs)
}

/// Vertex `A_σ(h)` as linear polynomials in `h`.
pub fn vertex_symbolic(cp: &CharacteristicPair, cone: &[usize]) -> Result<Vec<MultiPoly>> {
    let frame = cp.dual_edge_frame(cone)?;
    Ok((0..cp.n())
        .map(|coord| {
            let mut coeffs = vec![Scalar::zero(); cp.s()];
            for (j, &i) in cone.iter().enumerate() {
                coeffs[i] = frame[j][coord].clone();
            }
            MultiPoly::linear(&coeffs)
        })
        .collect())
}

pub fn i_gamma(ring: &BundleRing, gamma: &[Scalar], i: u32, h: &[Scalar]) -> Result<Scalar> {
    let f = f_gamma(ring.base(), ring.chern(), gamma, i)?;
    let delta = MultiPolytope::new(ring.charpair(), h.to_vec())?;
    if f.is_zero() {
        return Ok(Scalar::zero());
    }
    delta.integrate_polynomial(&f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BkkResult {
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub equal: bool,
}

/// `(n+i)! · I_γ(Δ)` against `i! · F_γ(Δ)`.
pub fn bkk_check(ring: &BundleRing, gamma: &[Scalar], i: u32, h: &[Scalar]) -> Result<BkkResult> {
    let n = ring.n() as u32;
    let lhs = factorial(n + i) * i_gamma(ring, gamma, i, h)?;
    let rhs = factorial(i) * ring.f_gamma_at(gamma, i, h)?;
    let equal = lhs == rhs;
    Ok(BkkResult { lhs, rhs, equal })
}

/// `b_{2i} = (n+i)!/i! · ∫_Δ c(x)^i dx`.
pub fn horizontal_part(ring: &BundleRing, h: &[Scalar], i: u32) -> Result<BaseElement> {
    let delta = MultiPolytope::new(ring.charpair(), h.to_vec())?;
    let mut err = None;
    let out = horizontal_from(ring.base(), ring.chern(), i, |p| match delta.integrate_polynomial(p) {
        Ok(v) => v,
        Err(e) => {
            err = Some(e);
            Scalar::zero()
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Volume of the honest polytope `{x : ⟨Λ_i, x⟩ ≤ h_i}` by enumerating its
/// vertices and coning faces recursively from centroids. Independent of the
/// vertex formula; meaningful only when `h` gives a convex polytope whose
/// normal fan is the fan of `cp`.
pub fn triangulation_volume(cp: &CharacteristicPair, h: &[Scalar]) -> Result<Scalar> {
    let n = cp.n();
    let rows: Vec<Vec<Scalar>> = (0..cp.s()).map(|i| cp.lambda_row(i)).collect();
    let feasible = |x: &[Scalar]| rows.iter().zip(h).all(|(r, hi)| dot(r, x) <= *hi);
    let mut vertices: Vec<Vec<Scalar>> = Vec::new();
    for subset in subsets(cp.s(), n) {
        let sub: Vec<Vec<Scalar>> = subset.iter().map(|&i| rows[i].clone()).collect();
        let m = RatMatrix::from_rows(&sub, n)?;
        let rhs: Vec<Scalar> = subset.iter().map(|&i| h[i].clone()).collect();
        let Ok(x) = m.solve_exact(&rhs) else { continue };
        if feasible(&x) && !vertices.contains(&x) {
            vertices.push(x);
        }
    }
    if affine_dim(&vertices) < n {
        return Ok(Scalar::zero());
    }
    let tight = |v: &[Scalar], i: usize| dot(&rows[i], v) == h[i];
    let mut simplices = Vec::new();
    cone_faces(&vertices, n, cp.s(), &tight, &mut Vec::new(), &mut simplices);
    let mut vol = Scalar::zero();
    for simplex in simplices {
        let cols: Vec<Vec<Scalar>> = simplex[1..]
            .iter()
            .map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| a - b).collect())
            .collect();
        let det = RatMatrix::from_rows(&cols, n)?.det()?;
        vol += if det < Scalar::zero() { -det } else { det };
    }
    Ok(vol / factorial(n as u32))
}

fn subsets(s: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, s: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..s {
            cur.push(i);
            rec(i + 1, s, k, cur, out);
            cur.pop();
        }
    }
    rec(0, s, k, &mut cur, &mut out);
    out
}

fn affine_dim(points: &[Vec<Scalar>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<Vec<Scalar>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    crate::exactnum::rank_of(&diffs, points[0].len())
}

fn centroid(points: &[Vec<Scalar>]) -> Vec<Scalar> {
    let k = int(points.len() as i64);
    (0..points[0].len())
        .map(|c| points.iter().map(|p| p[c].clone()).sum::<Scalar>() / &k)
        .collect()
}

/// Cones every `(dim−1)`-face of the point set from its centroid; `apex`
/// collects the centroids of the enclosing faces.
fn cone_faces(
    face: &[Vec<Scalar>],
    dim: usize,
    facets: usize,
    tight: &dyn Fn(&[Scalar], usize) -> bool,
    apex: &mut Vec<Vec<Scalar>>,
    out: &mut Vec<Vec<Vec<Scalar>>>,
) {
    if dim == 0 {
        let mut simplex = apex.clone();
        simplex.push(face[0].clone());
        out.push(simplex);
        return;
    }
    let c = centroid(face);
    let mut seen: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for i in 0..facets {
        let sub: Vec<Vec<Scalar>> = face.iter().filter(|v| tight(v, i)).cloned().collect();
        if sub.is_empty() || sub.len() == face.len() || affine_dim(&sub) != dim - 1 {
            continue;
        }
        let mut key = sub.clone();
        key.sort();
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        apex.push(c.clone());
        cone_faces(&sub, dim - 1, facets, tight, apex, out);
        apex.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn cp1() -> CharacteristicPair {
        CharacteristicPair::toric(vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap()
    }

    fn cp2() -> CharacteristicPair {
        CharacteristicPair::toric(
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn interval() {
        let d = MultiPolytope::new(&cp1(), vec![rat(3, 2), rat(1, 3)]).unwrap();
        assert_eq!(d.volume().unwrap(), rat(11, 6));
        assert_eq!(
            d.integrate_linear_power(&[int(1)], 1).unwrap(),
            (rat(9, 4) - rat(1, 9)) / int(2)
        );
        let degenerate = MultiPolytope::new(&cp1(), v(&[1, -1])).unwrap();
        assert_eq!(degenerate.integrate_polynomial(&MultiPoly::one(1)).unwrap(), int(0));
    }

    #[test]
    fn triangle() {
        let d = MultiPolytope::new(&cp2(), v(&[1, 1, 1])).unwrap();
        assert_eq!(d.integrate_linear_power(&v(&[1, 2]), 0).unwrap(), rat(9, 2));
        assert_eq!(d.integrate_polynomial(&MultiPoly::one(2)).unwrap(), rat(9, 2));
        assert_eq!(triangulation_volume(&cp2(), &v(&[1, 1, 1])).unwrap(), rat(9, 2));
    }

    #[test]
    fn degenerate_direction_detected_and_resolved() {
        let d = MultiPolytope::new(&cp2(), v(&[1, 1, 1])).unwrap();
        // (1,1) kills the dual edge (-1,1) of cone {2,3}
        assert_eq!(
            d.integrate_linear_power(&v(&[1, 1]), 2),
            Err(Error::DegenerateDirection)
        );
        let x_plus_y = MultiPoly::linear(&v(&[1, 1])).pow(2);
        let expanded: Scalar = [(vec![2, 0], 1), (vec![1, 1], 2), (vec![0, 2], 1)]
            .into_iter()
            .map(|(e, c)| {
                int(c) * d.integrate_polynomial(&MultiPoly::monomial(e, int(1))).unwrap()
            })
            .sum();
        assert_eq!(d.integrate_linear_power_any(&v(&[1, 1]), 2).unwrap(), expanded);
        assert_eq!(d.integrate_polynomial(&x_plus_y).unwrap(), expanded);
    }

    #[test]
    fn symbolic_polynomials() {
        let h = MultiPoly::linear(&v(&[1, 1]));
        assert_eq!(volume_polynomial(&cp1()).unwrap(), h);
        let sum3 = MultiPoly::linear(&v(&[1, 1, 1]));
        assert_eq!(volume_polynomial(&cp2()).unwrap(), sum3.pow(2).scale(&rat(1, 2)));
        let a = int(5);
        let fx = MultiPoly::var(1, 0).scale(&a);
        let expect = (&MultiPoly::var(2, 0).pow(2) - &MultiPoly::var(2, 1).pow(2)).scale(&(a / int(2)));
        assert_eq!(integral_polynomial_symbolic(&cp1(), &fx).unwrap(), expect);
    }

    #[test]
    fn genericity_independence() {
        let c = cp2();
        let p1 = linear_power_polynomial(&c, &v(&[1, 2]), 0).unwrap();
        let p2 = linear_power_polynomial(&c, &v(&[3, -7]), 0).unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn mixed_integrals() {
        let c = cp2();
        let one = MultiPoly::one(2);
        assert_eq!(mixed_integral(&c, &one, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap(), rat(1, 2));
        let h = v(&[2, 1, 3]);
        let diag = mixed_integral(&c, &one, &[h.clone(), h.clone()]).unwrap();
        assert_eq!(diag, MultiPolytope::new(&c, h).unwrap().volume().unwrap());
        assert_eq!(mixed_integral(&cp1(), &MultiPoly::one(1), &[v(&[2, 5])]).unwrap(), int(7));
    }
}
