//! Macaulay inverse systems: potentials, annihilator ideals under the
//! apolarity action, Hilbert functions of `Sym(V)/Ann(P)`, and the
//! Frobenius kernel of a finite graded algebra.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::basealg::GradedBaseAlgebra;
use crate::charpair::CharacteristicPair;
use crate::error::{Error, Result};
use crate::exactnum::{
    factorial, monomials_of_weighted_degree, Exponent, MultiPoly, RatMatrix, Scalar, SpanBasis,
};
use crate::multipoly::{integral_polynomial_symbolic, volume_polynomial};
use crate::srbundle::{BundleRing, FiniteGradedAlgebra};

/// Quasi-homogeneous polynomial on a weighted generating space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    names: Vec<String>,
    weights: Vec<u32>,
    degree: u32,
    poly: MultiPoly,
}

impl Potential {
    pub fn new(names: Vec<String>, weights: Vec<u32>, degree: u32, poly: MultiPoly) -> Result<Self> {
        if names.len() != weights.len() || poly.nvars() != names.len() {
            return Err(Error::MalformedInput("potential variables disagree".into()));
        }
        if weights.iter().any(|&w| w == 0 || w % 2 == 1) {
            return Err(Error::MalformedInput("weights must be positive and even".into()));
        }
        let poly = poly.with_weights(weights.clone())?;
        if poly.terms().any(|(e, _)| poly.weighted_degree_of(e) != degree) {
            return Err(Error::DegreeMismatch(format!(
                "potential is not quasi-homogeneous of weighted degree {degree}"
            )));
        }
        Ok(Potential {
            names,
            weights,
            degree,
            poly,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn render(&self) -> String {
        self.poly.render(&self.names)
    }

    /// `Q(∂) P`.
    pub fn apply(&self, q: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.poly.nvars());
        for (beta, c) in q.terms() {
            out = &out + &self.poly.apply_derivative(beta).scale(c);
        }
        out
    }
}

fn poly_constant(p: &MultiPoly) -> Scalar {
    p.coefficient(&vec![0; p.nvars()])
}

fn h_names(s: usize) -> Vec<String> {
    (1..=s).map(|i| format!("h{i}")).collect()
}

/// `Vol(Δ(h))` on `V = Q^s`, all weights 2.
pub fn volume_potential(cp: &CharacteristicPair) -> Result<Potential> {
    let s = cp.s();
    Potential::new(h_names(s), vec![2; s], 2 * cp.n() as u32, volume_polynomial(cp)?)
}

fn positive_part(alg: &GradedBaseAlgebra) -> Vec<usize> {
    (0..alg.dim()).filter(|&i| alg.degrees()[i] > 0).collect()
}

fn y_names(alg: &GradedBaseAlgebra, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| format!("y_{}", alg.names()[i])).collect()
}

/// `⟨exp(Σ y_b b), [B]⟩` as a polynomial in `y_b`, `b` of positive degree.
fn base_potential_poly(alg: &GradedBaseAlgebra) -> Result<MultiPoly> {
    if alg.has_odd() {
        return Err(Error::OddClassesPresent);
    }
    let idx = positive_part(alg);
    let p = idx.len();
    let mut y = vec![MultiPoly::zero(p); alg.dim()];
    for (v, &b) in idx.iter().enumerate() {
        y[b] = MultiPoly::var(p, v);
    }
    let mut power: Vec<MultiPoly> = alg
        .one()
        .into_iter()
        .map(|c| MultiPoly::constant(p, c))
        .collect();
    let k = alg.top_degree();
    let mut acc = MultiPoly::zero(p);
    for m in 0..=k / 2 {
        if m > 0 {
            power = alg.mul_symbolic(&power, &y);
        }
        let mut top = MultiPoly::zero(p);
        for (b, q) in power.iter().enumerate() {
            if alg.degrees()[b] == k && !alg.fundamental()[b].is_zero() {
                top = &top + &q.scale(&alg.fundamental()[b]);
            }
        }
        acc = &acc + &top.scale(&factorial(m).recip());
    }
    Ok(acc)
}

pub fn base_potential(alg: &GradedBaseAlgebra) -> Result<Potential> {
    let poly = base_potential_poly(alg)?;
    let idx = positive_part(alg);
    let weights = idx.iter().map(|&i| alg.degrees()[i]).collect();
    Potential::new(y_names(alg, &idx), weights, alg.top_degree(), poly)
}

fn bundle_space(ring: &BundleRing) -> (Vec<usize>, Vec<String>, Vec<u32>) {
    let alg = ring.base();
    let idx = positive_part(alg);
    let mut names = y_names(alg, &idx);
    names.extend(h_names(ring.s()));
    let mut weights: Vec<u32> = idx.iter().map(|&i| alg.degrees()[i]).collect();
    weights.extend(std::iter::repeat_n(2, ring.s()));
    (idx, names, weights)
}

/// `P(γ, Δ) = ∫_Δ P_B(c(λ) + γ) dλ`.
pub fn bundle_potential_integral(ring: &BundleRing) -> Result<Potential> {
    let alg = ring.base();
    let pb = base_potential_poly(alg)?;
    let (idx, names, weights) = bundle_space(ring);
    let p = idx.len();
    let n = ring.n();
    let s = ring.s();
    // variables (y_1..y_p, λ_1..λ_n)
    let subs: Vec<MultiPoly> = idx
        .iter()
        .enumerate()
        .map(|(v, &b)| {
            let mut lin = vec![Scalar::zero(); p + n];
            lin[v] = Scalar::from_integer(1.into());
            if alg.degrees()[b] == 2 {
                for (m, img) in ring.chern().images().iter().enumerate() {
                    lin[p + m] = img[b].clone();
                }
            }
            MultiPoly::linear(&lin)
        })
        .collect();
    let shifted = if p == 0 {
        MultiPoly::constant(n, poly_constant(&pb)).embed(p + n, p)
    } else {
        pb.compose(&subs)?
    };
    let mut by_y: BTreeMap<Exponent, MultiPoly> = BTreeMap::new();
    for (e, c) in shifted.terms() {
        by_y.entry(e[..p].to_vec())
            .or_insert_with(|| MultiPoly::zero(n))
            .add_term(e[p..].to_vec(), c.clone());
    }
    let mut acc = MultiPoly::zero(p + s);
    for (beta, q) in by_y {
        let integral = integral_polynomial_symbolic(ring.charpair(), &q)?;
        for (alpha, c) in integral.terms() {
            let mut e = beta.clone();
            e.extend_from_slice(alpha);
            acc.add_term(e, c.clone());
        }
    }
    Potential::new(names, weights, ring.total_dim(), acc)
}

/// `⟨exp(γ + ρ(Δ)), [E]⟩` expanded monomial by monomial with top-degree
/// evaluation in the Stanley-Reisner model.
pub fn bundle_potential_direct(ring: &BundleRing) -> Result<Potential> {
    let alg = ring.base();
    if alg.has_odd() {
        return Err(Error::OddClassesPresent);
    }
    let (idx, names, weights) = bundle_space(ring);
    let p = idx.len();
    let mut acc = MultiPoly::zero(names.len());
    for e in monomials_of_weighted_degree(&weights, ring.total_dim()) {
        let mut el = ring.one();
        let mut denom = Scalar::from_integer(1.into());
        for (v, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let factor = if v < p {
                ring.from_base(&alg.basis(idx[v]))
            } else {
                ring.x(v - p)
            };
            el = ring.mul(&el, &ring.pow(&factor, k));
            denom *= factorial(k);
        }
        if el.is_zero() {
            continue;
        }
        let val = ring.evaluate_top(&el)?;
        acc.add_term(e, val / denom);
    }
    Potential::new(names, weights, ring.total_dim(), acc)
}

/// Dimensions of `Sym(V)/Ann(P)` by weighted degree `0..=deg P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertFunction {
    pub dims: Vec<usize>,
}

impl HilbertFunction {
    /// Entries in even weighted degrees.
    pub fn even(&self) -> Vec<usize> {
        self.dims.iter().step_by(2).copied().collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.dims.iter().eq(self.dims.iter().rev())
    }
}

/// Matrix of `Q ↦ Q(∂)P` on the monomials of weighted degree `d`.
fn apolarity_matrix(p: &Potential, d: u32) -> (Vec<Exponent>, Option<RatMatrix>) {
    let src = monomials_of_weighted_degree(p.weights(), d);
    if d > p.degree() || src.is_empty() {
        return (src, None);
    }
    let dst = monomials_of_weighted_degree(p.weights(), p.degree() - d);
    if dst.is_empty() {
        return (src, None);
    }
    let index: BTreeMap<&Exponent, usize> = dst.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let mut m = RatMatrix::zeros(src.len(), dst.len());
    for (r, beta) in src.iter().enumerate() {
        for (e, c) in p.poly().apply_derivative(beta).terms() {
            m[(r, index[e])] = c.clone();
        }
    }
    (src, Some(m))
}

pub fn ann_hilbert(p: &Potential) -> HilbertFunction {
    let dims = (0..=p.degree())
        .map(|d| match apolarity_matrix(p, d) {
            (_, Some(m)) => m.rank(),
            _ => 0,
        })
        .collect();
    HilbertFunction { dims }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnGenerator {
    pub degree: u32,
    pub poly: MultiPoly,
}

/// Minimal-by-degree generators of `Ann(P)` up to weighted degree `up_to`.
pub fn ann_generators(p: &Potential, up_to: u32) -> Result<Vec<AnnGenerator>> {
    let nv = p.weights().len();
    let mut gens: Vec<AnnGenerator> = Vec::new();
    for d in 1..=up_to {
        let (src, m) = apolarity_matrix(p, d);
        if src.is_empty() {
            continue;
        }
        let kernel: Vec<Vec<Scalar>> = match m {
            Some(m) => m.transpose().kernel_basis(),
            None => (0..src.len())
                .map(|k| crate::srbundle::unit_vector(src.len(), k))
                .collect(),
        };
        if kernel.is_empty() {
            continue;
        }
        let index: BTreeMap<&Exponent, usize> = src.iter().enumerate().map(|(k, e)| (e, k)).collect();
        let mut ideal = SpanBasis::new(src.len());
        for g in &gens {
            for mono in monomials_of_weighted_degree(p.weights(), d - g.degree) {
                let prod = &g.poly * &MultiPoly::monomial(mono, Scalar::from_integer(1.into()));
                let mut v = vec![Scalar::zero(); src.len()];
                for (e, c) in prod.terms() {
                    v[index[e]] = c.clone();
                }
                ideal.insert(&v);
            }
        }
        for k in kernel {
            if ideal.insert(&k) {
                let poly = MultiPoly::from_terms(nv, src.iter().cloned().zip(k))?;
                if !p.apply(&poly).is_zero() {
                    return Err(Error::MalformedInput("annihilator check failed".into()));
                }
                gens.push(AnnGenerator { degree: d, poly });
            }
        }
    }
    Ok(gens)
}

/// Per degree `d`, a basis of `{a : ℓ(a·b) = 0 for all b}` in degree `d`.
pub fn frobenius_kernel(alg: &FiniteGradedAlgebra) -> Vec<Vec<Vec<Scalar>>> {
    let top = alg.top_degree();
    let dim = alg.dim();
    let of_degree = |d: u32| -> Vec<usize> { (0..dim).filter(|&i| alg.degrees[i] == d).collect() };
    let unit = |i: usize| crate::srbundle::unit_vector(dim, i);
    let pairing = |rows: &[usize], cols: &[usize], left: bool| -> RatMatrix {
        let mut m = RatMatrix::zeros(rows.len(), cols.len());
        for (r, &i) in rows.iter().enumerate() {
            for (c, &j) in cols.iter().enumerate() {
                let prod = if left {
                    alg.mul(&unit(i), &unit(j))
                } else {
                    alg.mul(&unit(j), &unit(i))
                };
                m[(r, c)] = alg.functional(&prod);
            }
        }
        m
    };
    (0..=top)
        .map(|d| {
            let rows = of_degree(d);
            let cols = of_degree(top - d);
            if rows.is_empty() {
                return Vec::new();
            }
            let embed = |v: Vec<Scalar>| -> Vec<Scalar> {
                let mut full = vec![Scalar::zero(); dim];
                for (k, &i) in rows.iter().enumerate() {
                    full[i] = v[k].clone();
                }
                full
            };
            if cols.is_empty() {
                return (0..rows.len())
                    .map(|k| embed(crate::srbundle::unit_vector(rows.len(), k)))
                    .collect();
            }
            let left = pairing(&rows, &cols, true).transpose().kernel_basis();
            let right = pairing(&rows, &cols, false).transpose().kernel_basis();
            assert_eq!(left.len(), right.len(), "one-sided Frobenius kernels differ");
            left.into_iter().map(embed).collect()
        })
        .collect()
}
