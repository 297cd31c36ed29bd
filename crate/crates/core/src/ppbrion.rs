//! Λ-piecewise polynomials on a characteristic pair and the Brion
//! presentations of the cohomology ring.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::basealg::GradedBaseAlgebra;
use crate::charpair::CharacteristicPair;
use crate::error::{Error, Result};
use crate::exactnum::{int, monomials_of_degree, Exponent, MultiPoly, RatMatrix, Scalar, SpanBasis};
use crate::srbundle::BundleRing;

/// One polynomial on `N_R` per maximal cone, in the pair's cone order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPElement {
    cones: Vec<Vec<usize>>,
    polys: Vec<MultiPoly>,
}

impl PPElement {
    pub fn new(cp: &CharacteristicPair, polys: Vec<MultiPoly>) -> Result<Self> {
        if polys.len() != cp.max_cones().len() || polys.iter().any(|p| p.nvars() != cp.n()) {
            return Err(Error::MalformedInput("one polynomial in n variables per cone".into()));
        }
        Ok(PPElement {
            cones: cp.max_cones().to_vec(),
            polys,
        })
    }

    pub fn zero(cp: &CharacteristicPair) -> Self {
        Self::new(cp, vec![MultiPoly::zero(cp.n()); cp.max_cones().len()]).expect("shape")
    }

    /// The global linear function `⟨·, χ⟩`.
    pub fn global_linear(cp: &CharacteristicPair, chi: &[Scalar]) -> Self {
        Self::new(cp, vec![MultiPoly::linear(chi); cp.max_cones().len()]).expect("shape")
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn is_zero(&self) -> bool {
        self.polys.iter().all(|p| p.is_zero())
    }

    fn check_pair(&self, other: &Self) -> Result<()> {
        if self.cones != other.cones {
            return Err(Error::PairMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_pair(other)?;
        Ok(PPElement {
            cones: self.cones.clone(),
            polys: self.polys.iter().zip(&other.polys).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        PPElement {
            cones: self.cones.clone(),
            polys: self.polys.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_pair(other)?;
        Ok(PPElement {
            cones: self.cones.clone(),
            polys: self.polys.iter().zip(&other.polys).map(|(a, b)| a * b).collect(),
        })
    }
}

/// Adjacent cone pairs `(σ₁, σ₂, τ)` sharing the facet `τ`.
fn adjacencies(cp: &CharacteristicPair) -> Vec<(usize, usize, Vec<usize>)> {
    let cones = cp.max_cones();
    let mut out = Vec::new();
    for a in 0..cones.len() {
        for b in a + 1..cones.len() {
            let shared: Vec<usize> = cones[a].iter().copied().filter(|i| cones[b].contains(i)).collect();
            if shared.len() + 1 == cp.n() {
                out.push((a, b, shared));
            }
        }
    }
    out
}

/// `y = Σ_{j∈τ} u_j Λ_j` as `n` linear polynomials in `|τ|` variables.
fn facet_parametrization(cp: &CharacteristicPair, tau: &[usize]) -> Vec<MultiPoly> {
    (0..cp.n())
        .map(|c| {
            let coeffs: Vec<Scalar> = tau.iter().map(|&j| int(cp.lambda()[j][c])).collect();
            MultiPoly::linear(&coeffs)
        })
        .collect()
}

fn restrict(p: &MultiPoly, param: &[MultiPoly]) -> MultiPoly {
    if param.first().is_none_or(|q| q.nvars() == 0) {
        // τ is empty: compare at the origin
        return MultiPoly::constant(0, p.coefficient(&vec![0; p.nvars()]));
    }
    p.compose(param).expect("parametrization has n entries")
}

pub fn is_compatible(cp: &CharacteristicPair, f: &PPElement) -> bool {
    adjacencies(cp).into_iter().all(|(a, b, tau)| {
        let param = facet_parametrization(cp, &tau);
        let diff = &f.polys[a] - &f.polys[b];
        restrict(&diff, &param).is_zero()
    })
}

/// Courant functions `φ_i`: on cones containing `i`, the dual-frame form
/// for `i`; zero elsewhere.
pub fn courant_basis(cp: &CharacteristicPair) -> Result<Vec<PPElement>> {
    let mut out = Vec::with_capacity(cp.s());
    let frames: Vec<Vec<Vec<Scalar>>> = cp
        .max_cones()
        .iter()
        .map(|c| cp.dual_edge_frame(c))
        .collect::<Result<_>>()?;
    for i in 0..cp.s() {
        let polys = cp
            .max_cones()
            .iter()
            .zip(&frames)
            .map(|(cone, frame)| match cone.iter().position(|&j| j == i) {
                Some(k) => MultiPoly::linear(&frame[k]),
                None => MultiPoly::zero(cp.n()),
            })
            .collect();
        let phi = PPElement::new(cp, polys)?;
        assert!(is_compatible(cp, &phi), "Courant function {} is incompatible", i + 1);
        out.push(phi);
    }
    Ok(out)
}

/// Coordinates of per-cone polynomials on the degree-`d` monomials.
struct Layout {
    monos: Vec<Exponent>,
    index: BTreeMap<Exponent, usize>,
    cones: usize,
}

impl Layout {
    fn new(cp: &CharacteristicPair, d: u32) -> Self {
        let monos = monomials_of_degree(cp.n(), d);
        let index = monos.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        Layout {
            monos,
            index,
            cones: cp.max_cones().len(),
        }
    }

    fn len(&self) -> usize {
        self.monos.len() * self.cones
    }

    fn coords(&self, f: &PPElement) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.len()];
        for (c, p) in f.polys.iter().enumerate() {
            for (e, x) in p.terms() {
                v[c * self.monos.len() + self.index[e]] = x.clone();
            }
        }
        v
    }

    fn element(&self, cp: &CharacteristicPair, v: &[Scalar]) -> PPElement {
        let m = self.monos.len();
        let polys = (0..self.cones)
            .map(|c| {
                MultiPoly::from_terms(cp.n(), self.monos.iter().cloned().zip(v[c * m..(c + 1) * m].iter().cloned()))
                    .expect("lengths")
            })
            .collect();
        PPElement::new(cp, polys).expect("shape")
    }
}

/// Basis of the degree-`d` piecewise polynomials (kernel of the
/// compatibility system).
pub fn pp_basis(cp: &CharacteristicPair, d: u32) -> Vec<PPElement> {
    let layout = Layout::new(cp, d);
    let m = layout.monos.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (a, b, tau) in adjacencies(cp) {
        let param = facet_parametrization(cp, &tau);
        // restriction is linear: image of each monomial
        let images: Vec<MultiPoly> = layout
            .monos
            .iter()
            .map(|e| restrict(&MultiPoly::monomial(e.clone(), int(1)), &param))
            .collect();
        let mut targets: Vec<Exponent> = images.iter().flat_map(|p| p.terms().map(|(e, _)| e.clone())).collect();
        targets.sort();
        targets.dedup();
        for t in targets {
            let mut row = vec![Scalar::zero(); layout.len()];
            for (k, img) in images.iter().enumerate() {
                let c = img.coefficient(&t);
                if !c.is_zero() {
                    row[a * m + k] += &c;
                    row[b * m + k] -= &c;
                }
            }
            rows.push(row);
        }
    }
    let kernel = if rows.is_empty() {
        (0..layout.len())
            .map(|k| crate::srbundle::unit_vector(layout.len(), k))
            .collect()
    } else {
        RatMatrix::from_rows(&rows, layout.len())
            .expect("row lengths")
            .kernel_basis()
    };
    kernel.iter().map(|v| layout.element(cp, v)).collect()
}

pub fn pp_graded_dim(cp: &CharacteristicPair, d: u32) -> usize {
    pp_basis(cp, d).len()
}

/// `dim PP_d − dim(M · PP_{d−1})` for `d = 0..=max_d` (cohomological
/// degree `2d`).
pub fn brion_quotient_dims(cp: &CharacteristicPair, max_d: u32) -> Vec<usize> {
    let chis: Vec<PPElement> = (0..cp.n())
        .map(|m| PPElement::global_linear(cp, &crate::srbundle::unit_vector(cp.n(), m)))
        .collect();
    (0..=max_d)
        .map(|d| {
            let dim = pp_graded_dim(cp, d);
            if d == 0 {
                return dim;
            }
            let layout = Layout::new(cp, d);
            let mut span = SpanBasis::new(layout.len());
            for b in pp_basis(cp, d - 1) {
                for chi in &chis {
                    span.insert(&layout.coords(&chi.multiply(&b).expect("same pair")));
                }
            }
            dim - span.dim()
        })
        .collect()
}

/// Graded dimensions of `(H*(B) ⊗ PP) / ⟨c(e_m)⊗1 − 1⊗χ_m⟩` in degrees
/// `0..=max_degree`.
pub fn brion_bundle_dims(ring: &BundleRing, max_degree: u32) -> Vec<usize> {
    let cp = ring.charpair();
    let alg = ring.base();
    let chis: Vec<PPElement> = (0..cp.n())
        .map(|m| PPElement::global_linear(cp, &crate::srbundle::unit_vector(cp.n(), m)))
        .collect();
    let mut bases: BTreeMap<u32, Vec<PPElement>> = BTreeMap::new();
    let mut layouts: BTreeMap<u32, Layout> = BTreeMap::new();
    let pp = |d: u32, bases: &mut BTreeMap<u32, Vec<PPElement>>, layouts: &mut BTreeMap<u32, Layout>| {
        bases.entry(d).or_insert_with(|| pp_basis(cp, d));
        layouts.entry(d).or_insert_with(|| Layout::new(cp, d));
    };
    (0..=max_degree)
        .map(|deg| {
            // ambient: ⊕_b b ⊗ (per-cone degree-e polynomials), deg b + 2e = deg
            let slots: Vec<(usize, u32)> = (0..alg.dim())
                .filter(|&b| alg.degrees()[b] <= deg && (deg - alg.degrees()[b]).is_multiple_of(2))
                .map(|b| (b, (deg - alg.degrees()[b]) / 2))
                .collect();
            for &(_, e) in &slots {
                pp(e, &mut bases, &mut layouts);
            }
            let mut offsets = BTreeMap::new();
            let mut total = 0;
            for &(b, e) in &slots {
                offsets.insert(b, total);
                total += layouts[&e].len();
            }
            let dim: usize = slots.iter().map(|(_, e)| bases[e].len()).sum();
            if deg < 2 || total == 0 {
                return dim;
            }
            let mut span = SpanBasis::new(total);
            for b in 0..alg.dim() {
                let bd = alg.degrees()[b];
                if bd + 2 > deg || !(deg - 2 - bd).is_multiple_of(2) {
                    continue;
                }
                let e = (deg - 2 - bd) / 2;
                pp(e, &mut bases, &mut layouts);
                pp(e + 1, &mut bases, &mut layouts);
                for p in bases[&e].clone() {
                    for (m, chi) in chis.iter().enumerate() {
                        let mut v = vec![Scalar::zero(); total];
                        // (c(e_m)·b) ⊗ p
                        let cb = alg.mul(&ring.chern().images()[m], &alg.basis(b));
                        for (k, coef) in cb.iter().enumerate() {
                            if coef.is_zero() {
                                continue;
                            }
                            let off = offsets[&k];
                            for (j, x) in layouts[&e].coords(&p).into_iter().enumerate() {
                                v[off + j] += coef * x;
                            }
                        }
                        // − b ⊗ χ_m p
                        let off = offsets[&b];
                        let prod = chi.multiply(&p).expect("same pair");
                        for (j, x) in layouts[&(e + 1)].coords(&prod).into_iter().enumerate() {
                            v[off + j] -= x;
                        }
                        span.insert(&v);
                    }
                }
            }
            dim - span.dim()
        })
        .collect()
}

/// Point-base convenience: the Brion quotient of a bare pair.
pub fn brion_point_dims(cp: &CharacteristicPair) -> Result<Vec<usize>> {
    let base = GradedBaseAlgebra::make_point();
    let ring = BundleRing::new(cp.clone(), base.clone(), crate::basealg::ChernData::zero(&base, cp.n()))?;
    Ok(brion_bundle_dims(&ring, ring.total_dim()))
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn courant_cp1() {
        let phi = courant_basis(&cp1()).unwrap();
        assert_eq!(phi[0].polys(), &[MultiPoly::var(1, 0), MultiPoly::zero(1)]);
        let sq = phi[0].multiply(&phi[0]).unwrap();
        assert_eq!(sq.polys(), &[MultiPoly::var(1, 0).pow(2), MultiPoly::zero(1)]);
        assert!(phi[0].multiply(&PPElement::zero(&cp1())).unwrap().is_zero());
    }

    #[test]
    fn courant_cp2() {
        let c = cp2();
        let phi = courant_basis(&c).unwrap();
        // cone order: {1,2}, {2,3}, {1,3}
        assert_eq!(phi[0].polys()[0], MultiPoly::var(2, 0));
        assert!(phi[0].polys()[1].is_zero());
    }

    #[test]
    fn characters_expand_in_courant_basis() {
        let c = cp2();
        let phi = courant_basis(&c).unwrap();
        let chi = vec![int(2), int(-3)];
        let mut sum = PPElement::zero(&c);
        for (i, p) in phi.iter().enumerate() {
            let coef: Scalar = c.lambda_row(i).iter().zip(&chi).map(|(a, b)| a * b).sum();
            sum = sum.add(&p.scale(&coef)).unwrap();
        }
        assert_eq!(sum, PPElement::global_linear(&c, &chi));
    }

    #[test]
    fn pair_mismatch() {
        let a = PPElement::zero(&cp1());
        let b = PPElement::zero(&cp2());
        assert_eq!(a.multiply(&b), Err(Error::PairMismatch));
    }

    #[test]
    fn graded_dims() {
        assert_eq!(pp_graded_dim(&cp1(), 1), 2);
        assert_eq!(pp_graded_dim(&cp2(), 1), 3);
        assert_eq!(pp_graded_dim(&cp2(), 0), 1);
        assert_eq!(pp_graded_dim(&cp1(), 0), 1);
        assert_eq!(brion_quotient_dims(&cp1(), 1), vec![1, 1]);
        assert_eq!(brion_quotient_dims(&cp2(), 2), vec![1, 1, 1]);
        assert_eq!(brion_point_dims(&cp2()).unwrap(), vec![1, 0, 1, 0, 1]);
    }
}
