//! Stanley-Reisner model `H*(B)[x_1..x_s] / (I_SR + J_c)` of a quasitoric
//! bundle: square-free reduction, top-degree evaluation, intersection
//! numbers and graded dimensions.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::basealg::{BaseElement, ChernData, GradedBaseAlgebra};
use crate::charpair::CharacteristicPair;
use crate::error::{Error, Result};
use crate::exactnum::{int, monomials_of_degree, Exponent, RatMatrix, Scalar, SpanBasis};

/// Finite sum of `γ_α · x^α` with base-algebra coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BundleElement {
    terms: BTreeMap<Exponent, BaseElement>,
}

impl BundleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BaseElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: &[Scalar]) {
        if coeff.iter().all(|c| c.is_zero()) {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.to_vec());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                for (a, b) in o.get_mut().iter_mut().zip(coeff) {
                    *a += b;
                }
                if o.get().iter().all(|c| c.is_zero()) {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let v: BaseElement = c.iter().map(|x| x * s).collect();
            out.add_term(e.clone(), &v);
        }
        out
    }
}

/// Number of repeated factors: `|α| − |supp α|`.
fn multiplicity(exp: &[u32]) -> u32 {
    exp.iter().filter(|&&k| k > 0).map(|k| k - 1).sum()
}

fn support(exp: &[u32]) -> Vec<usize> {
    exp.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, _)| i)
        .collect()
}

#[derive(Clone, Debug)]
pub struct BundleRing {
    cp: CharacteristicPair,
    base: GradedBaseAlgebra,
    chern: ChernData,
    faces: BTreeSet<Vec<usize>>,
    signs: BTreeMap<Vec<usize>, i8>,
}

impl BundleRing {
    pub fn new(cp: CharacteristicPair, base: GradedBaseAlgebra, chern: ChernData) -> Result<Self> {
        if chern.n() != cp.n() {
            return Err(Error::MalformedInput(format!(
                "chern data has rank {}, fan has dimension {}",
                chern.n(),
                cp.n()
            )));
        }
        if chern.images().iter().any(|v| v.len() != base.dim()) {
            return Err(Error::MalformedInput("chern data does not match the base".into()));
        }
        let faces = cp.faces();
        let mut signs = BTreeMap::new();
        for cone in cp.max_cones() {
            signs.insert(cone.clone(), cp.cone_sign(cone)?.value);
        }
        Ok(BundleRing {
            cp,
            base,
            chern,
            faces,
            signs,
        })
    }

    /// Fiber over a point.
    pub fn over_point(cp: CharacteristicPair) -> Result<Self> {
        let base = GradedBaseAlgebra::make_point();
        let chern = ChernData::zero(&base, cp.n());
        Self::new(cp, base, chern)
    }

    pub fn charpair(&self) -> &CharacteristicPair {
        &self.cp
    }

    pub fn base(&self) -> &GradedBaseAlgebra {
        &self.base
    }

    pub fn chern(&self) -> &ChernData {
        &self.chern
    }

    pub fn s(&self) -> usize {
        self.cp.s()
    }

    pub fn n(&self) -> usize {
        self.cp.n()
    }

    /// `k + 2n`.
    pub fn total_dim(&self) -> u32 {
        self.base.top_degree() + 2 * self.cp.n() as u32
    }

    pub fn is_face_exp(&self, exp: &[u32]) -> bool {
        self.faces.contains(&support(exp))
    }

    pub fn faces(&self) -> &BTreeSet<Vec<usize>> {
        &self.faces
    }

    // ---- constructors for elements ----

    pub fn from_base(&self, b: &[Scalar]) -> BundleElement {
        let mut e = BundleElement::zero();
        e.add_term(vec![0; self.s()], b);
        e
    }

    pub fn one(&self) -> BundleElement {
        self.from_base(&self.base.one())
    }

    pub fn x(&self, i: usize) -> BundleElement {
        let mut exp = vec![0; self.s()];
        exp[i] = 1;
        let mut e = BundleElement::zero();
        e.add_term(exp, &self.base.one());
        e
    }

    pub fn monomial(&self, exp: Exponent, coeff: &[Scalar]) -> BundleElement {
        let mut e = BundleElement::zero();
        e.add_term(exp, coeff);
        e
    }

    /// `ρ(Δ) = Σ h_i x_i`.
    pub fn rho(&self, h: &[Scalar]) -> BundleElement {
        let mut e = BundleElement::zero();
        for (i, hi) in h.iter().enumerate() {
            e = e.add(&self.x(i).scale(hi));
        }
        e
    }

    pub fn mul(&self, a: &BundleElement, b: &BundleElement) -> BundleElement {
        let mut out = BundleElement::zero();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exp: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exp, &self.base.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, a: &BundleElement, k: u32) -> BundleElement {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn product(&self, classes: &[BundleElement]) -> BundleElement {
        classes.iter().fold(self.one(), |acc, c| self.mul(&acc, c))
    }

    /// Degree if every component has the same degree; `None` for zero or
    /// inhomogeneous elements.
    pub fn degree(&self, el: &BundleElement) -> Option<u32> {
        let mut deg = None;
        for (e, c) in &el.terms {
            let xd: u32 = 2 * e.iter().sum::<u32>();
            for (b, v) in c.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let d = xd + self.base.degrees()[b];
                match deg {
                    None => deg = Some(d),
                    Some(d0) if d0 != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    // ---- reduction ----

    pub fn reduce(&self, el: &BundleElement) -> BundleElement {
        self.reduce_with(el, |face, j| {
            self.cp
                .dual_character(face, j)
                .expect("faces admit dual characters")
        })
    }

    /// Reduction with a caller-supplied dual character for `(face, j)`.
    pub fn reduce_with(
        &self,
        el: &BundleElement,
        mut chooser: impl FnMut(&[usize], usize) -> Vec<i64>,
    ) -> BundleElement {
        let mut out = BundleElement::zero();
        // pending[m] holds terms of multiplicity m
        let mut pending: BTreeMap<u32, BundleElement> = BTreeMap::new();
        for (e, c) in &el.terms {
            if !self.is_face_exp(e) {
                continue;
            }
            pending.entry(multiplicity(e)).or_default().add_term(e.clone(), c);
        }
        while let Some((m, bucket)) = pending.pop_last() {
            if m == 0 {
                out = out.add(&bucket);
                continue;
            }
            let mut lower = pending.remove(&(m - 1)).unwrap_or_default();
            for (e, gamma) in bucket.terms {
                let j = e.iter().position(|&k| k >= 2).expect("repeated index");
                let face = support(&e);
                let chi = chooser(&face, j);
                let mut rest = e.clone();
                rest[j] -= 1;
                // x_j = c(χ) − Σ_{i∉J} ⟨Λ_i, χ⟩ x_i
                let c_chi = self.chern.apply_int(&chi);
                lower.add_term(rest.clone(), &self.base.mul(&gamma, &c_chi));
                for i in 0..self.s() {
                    if face.contains(&i) {
                        continue;
                    }
                    let pair: i64 = self.cp.lambda()[i].iter().zip(&chi).map(|(a, b)| a * b).sum();
                    if pair == 0 {
                        continue;
                    }
                    let mut e2 = rest.clone();
                    e2[i] += 1;
                    if !self.is_face_exp(&e2) {
                        continue;
                    }
                    let coeff: BaseElement = gamma.iter().map(|g| g * int(-pair)).collect();
                    lower.add_term(e2, &coeff);
                }
            }
            if !lower.is_zero() {
                pending.insert(m - 1, lower);
            }
        }
        out
    }

    /// `⟨el, [E]⟩` for `el` of degree `k + 2n`.
    pub fn evaluate_top(&self, el: &BundleElement) -> Result<Scalar> {
        if el.is_zero() {
            return Ok(Scalar::zero());
        }
        match self.degree(el) {
            Some(d) if d == self.total_dim() => {}
            _ => {
                return Err(Error::DegreeMismatch(format!(
                    "top evaluation needs degree {}",
                    self.total_dim()
                )))
            }
        }
        Ok(self.evaluate_reduced(&self.reduce(el)))
    }

    fn evaluate_reduced(&self, reduced: &BundleElement) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, gamma) in &reduced.terms {
            let supp = support(e);
            if supp.len() != self.n() {
                continue;
            }
            let sign = self.signs[&supp];
            let v = self.base.integrate(gamma);
            if sign > 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        acc
    }

    pub fn intersection_number(&self, classes: &[BundleElement], gamma: &[Scalar]) -> Result<Scalar> {
        if classes.iter().any(BundleElement::is_zero) || gamma.iter().all(Zero::is_zero) {
            return Ok(Scalar::zero());
        }
        let prod = self.mul(&self.product(classes), &self.from_base(gamma));
        if prod.is_zero() {
            let mut d = self.base.element_degree(gamma).unwrap_or(0);
            for c in classes {
                d += self.degree(c).unwrap_or(0);
            }
            if d != self.total_dim() {
                return Err(Error::DegreeMismatch(format!(
                    "classes have total degree {d}, expected {}",
                    self.total_dim()
                )));
            }
            return Ok(Scalar::zero());
        }
        self.evaluate_top(&prod)
    }

    /// `F_γ(Δ) = ⟨ρ(Δ)^{n+i} · γ, [E]⟩`.
    pub fn f_gamma_at(&self, gamma: &[Scalar], i: u32, h: &[Scalar]) -> Result<Scalar> {
        let k = self.base.top_degree();
        if 2 * i > k {
            return Err(Error::DegreeMismatch(format!("2i = {} exceeds {k}", 2 * i)));
        }
        match self.base.element_degree(gamma) {
            Some(d) if d == k - 2 * i => {}
            None if gamma.iter().all(|c| c.is_zero()) => return Ok(Scalar::zero()),
            _ => {
                return Err(Error::DegreeMismatch(format!(
                    "γ must have degree {}",
                    k - 2 * i
                )))
            }
        }
        let rho = self.rho(h);
        let classes = vec![rho; self.n() + i as usize];
        self.intersection_number(&classes, gamma)
    }

    // ---- graded pieces ----

    /// `(base index, exponent)` pairs with face support, of degree `d`;
    /// `square_free` restricts to square-free exponents.
    fn monomial_basis(&self, d: u32, square_free: bool) -> Vec<(usize, Exponent)> {
        let mut out = Vec::new();
        for b in 0..self.base.dim() {
            let bd = self.base.degrees()[b];
            if bd > d || !(d - bd).is_multiple_of(2) {
                continue;
            }
            let xd = (d - bd) / 2;
            for e in monomials_of_degree(self.s(), xd) {
                if square_free && e.iter().any(|&k| k > 1) {
                    continue;
                }
                if self.is_face_exp(&e) {
                    out.push((b, e));
                }
            }
        }
        out
    }

    fn coords(&self, basis: &[(usize, Exponent)], el: &BundleElement) -> Vec<Scalar> {
        let index: BTreeMap<(usize, &Exponent), usize> =
            basis.iter().enumerate().map(|(k, (b, e))| ((*b, e), k)).collect();
        let mut v = vec![Scalar::zero(); basis.len()];
        for (e, c) in &el.terms {
            if !self.is_face_exp(e) {
                continue;
            }
            for (b, x) in c.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let k = index[&(b, e)];
                v[k] += x;
            }
        }
        v
    }

    /// Linear relation `r_m = c(e_m) − Σ_i Λ_i[m] x_i`.
    fn relation(&self, m: usize) -> BundleElement {
        let mut r = self.from_base(&self.chern.images()[m]);
        for i in 0..self.s() {
            let l = self.cp.lambda()[i][m];
            if l != 0 {
                r = r.add(&self.x(i).scale(&int(-l)));
            }
        }
        r
    }

    /// Span of `b · x^β · r_m` in degree `d`, as coordinates on the face
    /// monomial basis of that degree.
    fn relation_span(&self, d: u32, basis: &[(usize, Exponent)]) -> SpanBasis {
        let mut span = SpanBasis::new(basis.len());
        if d < 2 {
            return span;
        }
        let rels: Vec<BundleElement> = (0..self.n()).map(|m| self.relation(m)).collect();
        for (b, e) in self.monomial_basis(d - 2, false) {
            let mult = self.monomial(e, &self.base.basis(b));
            for r in &rels {
                let prod = self.mul(&mult, r);
                span.insert(&self.coords(basis, &prod));
            }
        }
        span
    }

    /// Graded dimensions in degrees `0..=k+2n`, by rank computation on the
    /// face-monomial presentation (independent of the reduction routine).
    pub fn betti(&self) -> Vec<usize> {
        (0..=self.total_dim())
            .map(|d| {
                let basis = self.monomial_basis(d, false);
                basis.len() - self.relation_span(d, &basis).dim()
            })
            .collect()
    }

    /// Rank of the evaluation pairing between degrees `d` and `k+2n−d` on
    /// square-free spanning sets; equals `betti[d]` iff duality holds.
    pub fn pairing_rank(&self, d: u32) -> Result<usize> {
        let top = self.total_dim();
        if d > top {
            return Ok(0);
        }
        let left = self.monomial_basis(d, true);
        let right = self.monomial_basis(top - d, true);
        if left.is_empty() || right.is_empty() {
            return Ok(0);
        }
        let rows: Vec<Vec<Scalar>> = left
            .iter()
            .map(|(b, e)| {
                let u = self.monomial(e.clone(), &self.base.basis(*b));
                right
                    .iter()
                    .map(|(b2, e2)| {
                        let v = self.monomial(e2.clone(), &self.base.basis(*b2));
                        let p = self.mul(&u, &v);
                        self.evaluate_reduced(&self.reduce(&p))
                    })
                    .collect()
            })
            .collect();
        Ok(RatMatrix::from_rows(&rows, right.len())?.rank())
    }

    pub fn poincare_duality_holds(&self) -> Result<bool> {
        let betti = self.betti();
        for d in 0..=self.total_dim() {
            if self.pairing_rank(d)? != betti[d as usize] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The quotient ring as an explicit finite graded algebra: per degree a
    /// basis of face monomials independent modulo the relations, structure
    /// constants obtained by solving modulo the relation span, and
    /// `evaluate_top` as the top functional.
    pub fn quotient_algebra(&self) -> Result<FiniteGradedAlgebra> {
        let top = self.total_dim();
        let mut chosen: Vec<(u32, usize, Exponent)> = Vec::new();
        let mut per_degree: Vec<(Vec<(usize, Exponent)>, Vec<Vec<Scalar>>)> = Vec::new();
        for d in 0..=top {
            let basis = self.monomial_basis(d, false);
            let rel = self.relation_span(d, &basis);
            let mut span = rel.clone();
            let mut picked: Vec<Vec<Scalar>> = Vec::new();
            for (b, e) in self.monomial_basis(d, true) {
                let v = self.coords(&basis, &self.monomial(e.clone(), &self.base.basis(b)));
                if span.insert(&v) {
                    chosen.push((d, b, e));
                    picked.push(v);
                }
            }
            let mut gens = picked;
            gens.extend(rel.vectors());
            per_degree.push((basis, gens));
        }
        let dim = chosen.len();
        let degrees: Vec<u32> = chosen.iter().map(|(d, _, _)| *d).collect();
        let offsets: Vec<usize> = (0..=top)
            .map(|d| degrees.iter().filter(|&&x| x < d).count())
            .collect();
        let elements: Vec<BundleElement> = chosen
            .iter()
            .map(|(_, b, e)| self.monomial(e.clone(), &self.base.basis(*b)))
            .collect();
        let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let d = degrees[i] + degrees[j];
                if d > top {
                    continue;
                }
                let prod = self.mul(&elements[i], &elements[j]);
                let (basis, gens) = &per_degree[d as usize];
                let v = self.coords(basis, &prod);
                let n_picked = degrees.iter().filter(|&&x| x == d).count();
                let sol = solve_in_span(gens, &v, basis.len())?;
                for k in 0..n_picked {
                    table[i][j][offsets[d as usize] + k] = sol[k].clone();
                }
            }
        }
        let top_functional = elements
            .iter()
            .zip(&degrees)
            .map(|(e, &d)| {
                if d == top {
                    self.evaluate_top(e)
                } else {
                    Ok(Scalar::zero())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGradedAlgebra {
            degrees,
            table,
            top_functional,
            labels: chosen
                .iter()
                .map(|(_, b, e)| self.label(*b, e))
                .collect(),
            top,
        })
    }

    fn label(&self, b: usize, e: &[u32]) -> String {
        let mut parts = Vec::new();
        if self.base.degrees()[b] > 0 {
            parts.push(self.base.names()[b].clone());
        }
        for (i, &k) in e.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{}", i + 1, k)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn render(&self, el: &BundleElement) -> String {
        let mut parts = Vec::new();
        for (e, c) in &el.terms {
            for (b, x) in c.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let label = self.label(b, e);
                parts.push(if label == "1" {
                    x.to_string()
                } else if x.is_one() {
                    label
                } else {
                    format!("({x})*{label}")
                });
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Solves `Σ z_k gens[k] = v`; the system must be consistent.
fn solve_in_span(gens: &[Vec<Scalar>], v: &[Scalar], len: usize) -> Result<Vec<Scalar>> {
    let cols = gens.len();
    if cols == 0 {
        return Ok(Vec::new());
    }
    let mut m = RatMatrix::zeros(len, cols + 1);
    for (k, g) in gens.iter().enumerate() {
        for r in 0..len {
            m[(r, k)] = g[r].clone();
        }
    }
    for r in 0..len {
        m[(r, cols)] = v[r].clone();
    }
    let rref = m.rref();
    if rref.pivots.last() == Some(&cols) {
        return Err(Error::SingularMatrix);
    }
    let mut z = vec![Scalar::zero(); cols];
    for (r, &p) in rref.pivots.iter().enumerate() {
        z[p] = rref.matrix[(r, cols)].clone();
    }
    Ok(z)
}

/// Graded algebra given by structure constants and a functional on the
/// top degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGradedAlgebra {
    pub degrees: Vec<u32>,
    pub table: Vec<Vec<Vec<Scalar>>>,
    pub top_functional: Vec<Scalar>,
    pub labels: Vec<String>,
    pub top: u32,
}

impl FiniteGradedAlgebra {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += a * b * t;
                    }
                }
            }
        }
        out
    }

    pub fn functional(&self, x: &[Scalar]) -> Scalar {
        x.iter().zip(&self.top_functional).map(|(a, b)| a * b).sum()
    }

    pub fn top_degree(&self) -> u32 {
        self.top
    }
}

impl From<&GradedBaseAlgebra> for FiniteGradedAlgebra {
    fn from(a: &GradedBaseAlgebra) -> Self {
        let dim = a.dim();
        FiniteGradedAlgebra {
            degrees: a.degrees().to_vec(),
            table: (0..dim)
                .map(|i| (0..dim).map(|j| a.product_of_basis(i, j).clone()).collect())
                .collect(),
            top_functional: a.fundamental().to_vec(),
            labels: a.names().to_vec(),
            top: a.top_degree(),
        }
    }
}

pub(crate) fn unit_vector(len: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); len];
    v[i] = Scalar::one();
    v
}
