//! Finite-dimensional graded-commutative base algebras with a fundamental
//! functional, and Chern data `c: M → H²(B)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, MultiPoly, RatMatrix, Scalar};

/// Coefficient vector on the basis of a [`GradedBaseAlgebra`].
pub type BaseElement = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBaseAlgebra {
    names: Vec<String>,
    degrees: Vec<u32>,
    // table[i][j] = b_i · b_j
    table: Vec<Vec<BaseElement>>,
    fundamental: BaseElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraReport {
    pub unit: Result<()>,
    pub graded_products: Result<()>,
    pub commutative: Result<()>,
    pub associative: Result<()>,
    pub poincare: Result<()>,
}

impl AlgebraReport {
    pub fn ok(&self) -> bool {
        self.checks().iter().all(|(_, r)| r.is_ok())
    }

    pub fn checks(&self) -> [(&'static str, &Result<()>); 5] {
        [
            ("unit", &self.unit),
            ("graded_products", &self.graded_products),
            ("commutative", &self.commutative),
            ("associative", &self.associative),
            ("poincare", &self.poincare),
        ]
    }
}

fn fail(msg: String) -> Result<()> {
    Err(Error::MalformedInput(msg))
}

impl GradedBaseAlgebra {
    pub fn new(
        names: Vec<String>,
        degrees: Vec<u32>,
        table: Vec<Vec<BaseElement>>,
        fundamental: BaseElement,
    ) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::MalformedInput("empty basis".into()));
        }
        if degrees.len() != dim || fundamental.len() != dim || table.len() != dim {
            return Err(Error::MalformedInput("basis data lengths disagree".into()));
        }
        if table
            .iter()
            .any(|row| row.len() != dim || row.iter().any(|e| e.len() != dim))
        {
            return Err(Error::MalformedInput("structure table has wrong shape".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(Error::MalformedInput(format!("duplicate basis name {n:?}")));
            }
        }
        Ok(GradedBaseAlgebra {
            names,
            degrees,
            table,
            fundamental,
        })
    }

    /// Sparse variant: `products[(i, j)]` lists `(k, coeff)`; absent pairs are 0.
    pub fn from_sparse(
        names: Vec<String>,
        degrees: Vec<u32>,
        products: &BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
        fundamental: BaseElement,
    ) -> Result<Self> {
        let dim = names.len();
        let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for (&(i, j), terms) in products {
            if i >= dim || j >= dim {
                return Err(Error::MalformedInput("product index out of range".into()));
            }
            for (k, c) in terms {
                if *k >= dim {
                    return Err(Error::MalformedInput("product index out of range".into()));
                }
                table[i][j][*k] += c;
            }
        }
        Self::new(names, degrees, table, fundamental)
    }

    pub fn make_point() -> Self {
        Self::make_cp(0)
    }

    /// `Q[t]/(t^{k+1})`, `deg t = 2`, `⟨t^k,[B]⟩ = 1`.
    pub fn make_cp(k: u32) -> Self {
        let dim = k as usize + 1;
        let names = (0..dim)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t{i}"),
            })
            .collect();
        let degrees = (0..dim as u32).map(|i| 2 * i).collect();
        let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                if i + j < dim {
                    e[i + j] = Scalar::one();
                }
            }
        }
        let mut fundamental = vec![Scalar::zero(); dim];
        fundamental[dim - 1] = Scalar::one();
        Self::new(names, degrees, table, fundamental).expect("well-formed")
    }

    /// Künneth product with Koszul signs `(−1)^{deg b₁·deg a₂}`.
    pub fn tensor(a: &Self, b: &Self) -> Self {
        let (da, db) = (a.dim(), b.dim());
        let dim = da * db;
        let idx = |i: usize, j: usize| i * db + j;
        let mut names = Vec::with_capacity(dim);
        let mut degrees = Vec::with_capacity(dim);
        let mut fundamental = Vec::with_capacity(dim);
        for i in 0..da {
            for j in 0..db {
                let name = if a.degrees[i] == 0 && b.degrees[j] == 0 {
                    "1".to_string()
                } else {
                    format!("{}|{}", a.names[i], b.names[j])
                };
                names.push(name);
                degrees.push(a.degrees[i] + b.degrees[j]);
                fundamental.push(&a.fundamental[i] * &b.fundamental[j]);
            }
        }
        let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for a1 in 0..da {
            for b1 in 0..db {
                for a2 in 0..da {
                    for b2 in 0..db {
                        let negative = (b.degrees[b1] * a.degrees[a2]) % 2 == 1;
                        let out = &mut table[idx(a1, b1)][idx(a2, b2)];
                        for (ka, ca) in a.table[a1][a2].iter().enumerate() {
                            if ca.is_zero() {
                                continue;
                            }
                            for (kb, cb) in b.table[b1][b2].iter().enumerate() {
                                if cb.is_zero() {
                                    continue;
                                }
                                let v = ca * cb;
                                if negative {
                                    out[idx(ka, kb)] -= v;
                                } else {
                                    out[idx(ka, kb)] += v;
                                }
                            }
                        }
                    }
                }
            }
        }
        Self::new(names, degrees, table, fundamental).expect("well-formed")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn fundamental(&self) -> &[Scalar] {
        &self.fundamental
    }

    /// Formal dimension `k` (largest basis degree).
    pub fn top_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn has_odd(&self) -> bool {
        self.degrees.iter().any(|d| d % 2 == 1)
    }

    pub fn basis_of_degree(&self, d: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    pub fn zero(&self) -> BaseElement {
        vec![Scalar::zero(); self.dim()]
    }

    pub fn basis(&self, i: usize) -> BaseElement {
        let mut e = self.zero();
        e[i] = Scalar::one();
        e
    }

    /// The degree-0 basis element, if there is exactly one.
    pub fn unit_index(&self) -> Option<usize> {
        match self.basis_of_degree(0).as_slice() {
            [u] => Some(*u),
            _ => None,
        }
    }

    pub fn one(&self) -> BaseElement {
        self.basis(self.unit_index().unwrap_or(0))
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &BaseElement {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> BaseElement {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &c * t;
                    }
                }
            }
        }
        out
    }

    /// `⟨x,[B]⟩`; components outside the top degree contribute nothing.
    pub fn integrate(&self, x: &[Scalar]) -> Scalar {
        let k = self.top_degree();
        x.iter()
            .zip(&self.fundamental)
            .zip(&self.degrees)
            .filter(|(_, &d)| d == k)
            .map(|((a, b), _)| a * b)
            .sum()
    }

    /// Degree of a nonzero homogeneous element.
    pub fn element_degree(&self, x: &[Scalar]) -> Option<u32> {
        let mut deg = None;
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.degrees[i]),
                Some(d) if d != self.degrees[i] => return None,
                _ => {}
            }
        }
        deg
    }

    /// Product of elements with polynomial coefficients.
    pub fn mul_symbolic(&self, x: &[MultiPoly], y: &[MultiPoly]) -> Vec<MultiPoly> {
        let nvars = x.first().map_or(0, |p| p.nvars());
        let mut out = vec![MultiPoly::zero(nvars); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let prod = xi * yj;
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = &out[k] + &prod.scale(t);
                    }
                }
            }
        }
        out
    }

    pub fn render(&self, x: &[Scalar]) -> String {
        let mut parts = Vec::new();
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = &self.names[i];
            parts.push(if Some(i) == self.unit_index() {
                c.to_string()
            } else if c.is_one() {
                name.clone()
            } else {
                format!("{c}*{name}")
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn validate(&self) -> AlgebraReport {
        AlgebraReport {
            unit: self.check_unit(),
            graded_products: self.check_graded(),
            commutative: self.check_commutative(),
            associative: self.check_associative(),
            poincare: self.check_poincare(),
        }
    }

    fn check_unit(&self) -> Result<()> {
        let Some(u) = self.unit_index() else {
            return fail("degree-0 part is not one-dimensional".into());
        };
        for i in 0..self.dim() {
            let e = self.basis(i);
            if self.table[u][i] != e || self.table[i][u] != e {
                return fail(format!("{} is not a unit for {}", self.names[u], self.names[i]));
            }
        }
        Ok(())
    }

    fn check_graded(&self) -> Result<()> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let d = self.degrees[i] + self.degrees[j];
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() && self.degrees[k] != d {
                        return fail(format!(
                            "{}·{} has a component {} of the wrong degree",
                            self.names[i], self.names[j], self.names[k]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_commutative(&self) -> Result<()> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let sign = if (self.degrees[i] * self.degrees[j]) % 2 == 1 {
                    -Scalar::one()
                } else {
                    Scalar::one()
                };
                let flipped: BaseElement = self.table[j][i].iter().map(|c| c * &sign).collect();
                if self.table[i][j] != flipped {
                    return fail(format!(
                        "{}·{} violates graded commutativity",
                        self.names[i], self.names[j]
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let ij = &self.table[i][j];
                for k in 0..self.dim() {
                    let left = self.mul(ij, &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.table[j][k]);
                    if left != right {
                        return fail(format!(
                            "({}·{})·{} ≠ {}·({}·{})",
                            self.names[i],
                            self.names[j],
                            self.names[k],
                            self.names[i],
                            self.names[j],
                            self.names[k]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_poincare(&self) -> Result<()> {
        let k = self.top_degree();
        for (i, c) in self.fundamental.iter().enumerate() {
            if !c.is_zero() && self.degrees[i] != k {
                return fail(format!("fundamental functional is nonzero on {}", self.names[i]));
            }
        }
        for d in 0..=k {
            let rows = self.basis_of_degree(d);
            let cols = self.basis_of_degree(k - d);
            if rows.len() != cols.len() {
                return fail(format!(
                    "degrees {d} and {} have different dimensions",
                    k - d
                ));
            }
            if rows.is_empty() {
                continue;
            }
            let entries: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|&i| {
                    cols.iter()
                        .map(|&j| self.integrate(&self.table[i][j]))
                        .collect()
                })
                .collect();
            let m = RatMatrix::from_rows(&entries, cols.len())?;
            if m.rank() != rows.len() {
                return fail(format!("Poincaré pairing degenerate in degree {d}"));
            }
        }
        Ok(())
    }

    /// Mutates one structure constant; used to exercise the validator.
    pub fn with_product(mut self, i: usize, j: usize, value: BaseElement) -> Self {
        self.table[i][j] = value;
        self
    }

    pub fn with_fundamental(mut self, fundamental: BaseElement) -> Self {
        self.fundamental = fundamental;
        self
    }
}

/// Linear map `λ ↦ c(λ) ∈ H²(B)`; `images[m]` is the image of the m-th
/// standard character, as a full coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    n: usize,
    images: Vec<BaseElement>,
}

impl ChernData {
    pub fn new(alg: &GradedBaseAlgebra, images: Vec<BaseElement>) -> Result<Self> {
        for (m, img) in images.iter().enumerate() {
            if img.len() != alg.dim() {
                return Err(Error::MalformedInput(format!("chern image {} has wrong length", m + 1)));
            }
            if let Some((i, _)) = img
                .iter()
                .enumerate()
                .find(|(i, c)| !c.is_zero() && alg.degrees()[*i] != 2)
            {
                return Err(Error::DegreeMismatch(format!(
                    "chern image {} has a component on {} of degree {}",
                    m + 1,
                    alg.names()[i],
                    alg.degrees()[i]
                )));
            }
        }
        Ok(ChernData {
            n: images.len(),
            images,
        })
    }

    /// Images given only on the degree-2 basis elements, in basis order.
    pub fn from_degree2(alg: &GradedBaseAlgebra, coeffs: Vec<Vec<Scalar>>) -> Result<Self> {
        let deg2 = alg.basis_of_degree(2);
        let mut images = Vec::with_capacity(coeffs.len());
        for (m, row) in coeffs.into_iter().enumerate() {
            if row.len() != deg2.len() {
                return Err(Error::MalformedInput(format!(
                    "chern image {} needs {} coefficients",
                    m + 1,
                    deg2.len()
                )));
            }
            let mut img = alg.zero();
            for (c, &i) in row.into_iter().zip(&deg2) {
                img[i] = c;
            }
            images.push(img);
        }
        Self::new(alg, images)
    }

    pub fn zero(alg: &GradedBaseAlgebra, n: usize) -> Self {
        ChernData {
            n,
            images: vec![alg.zero(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[BaseElement] {
        &self.images
    }

    pub fn degree2_coefficients(&self, alg: &GradedBaseAlgebra) -> Vec<Vec<Scalar>> {
        let deg2 = alg.basis_of_degree(2);
        self.images
            .iter()
            .map(|img| deg2.iter().map(|&i| img[i].clone()).collect())
            .collect()
    }

    pub fn apply(&self, lambda: &[Scalar]) -> BaseElement {
        let dim = self.images.first().map_or(0, |v| v.len());
        let mut out = vec![Scalar::zero(); dim];
        for (l, img) in lambda.iter().zip(&self.images) {
            for (o, c) in out.iter_mut().zip(img) {
                *o += l * c;
            }
        }
        out
    }

    pub fn apply_int(&self, lambda: &[i64]) -> BaseElement {
        let l: Vec<Scalar> = lambda.iter().map(|&x| Scalar::from_integer(x.into())).collect();
        self.apply(&l)
    }

    /// `c(x)` with `x` a vector of `n` polynomial variables.
    pub fn symbolic(&self, alg: &GradedBaseAlgebra) -> Vec<MultiPoly> {
        (0..alg.dim())
            .map(|b| {
                let coeffs: Vec<Scalar> = self.images.iter().map(|img| img[b].clone()).collect();
                MultiPoly::linear(&coeffs)
            })
            .collect()
    }

    /// Symbolic `c(x)^i`, one polynomial per basis element.
    pub fn symbolic_power(&self, alg: &GradedBaseAlgebra, i: u32) -> Vec<MultiPoly> {
        let c = self.symbolic(alg);
        let mut acc: Vec<MultiPoly> = alg
            .one()
            .into_iter()
            .map(|s| MultiPoly::constant(self.n, s))
            .collect();
        for _ in 0..i {
            acc = alg.mul_symbolic(&acc, &c);
        }
        acc
    }
}

/// `x ↦ ⟨c(x)^i · γ, [B]⟩`, homogeneous of degree `i` on `M_R`.
pub fn f_gamma(
    alg: &GradedBaseAlgebra,
    chern: &ChernData,
    gamma: &[Scalar],
    i: u32,
) -> Result<MultiPoly> {
    let k = alg.top_degree();
    if 2 * i > k {
        return Err(Error::DegreeMismatch(format!("2i = {} exceeds base dimension {k}", 2 * i)));
    }
    if let Some(d) = alg.element_degree(gamma) {
        if d != k - 2 * i {
            return Err(Error::DegreeMismatch(format!(
                "γ has degree {d}, expected {}",
                k - 2 * i
            )));
        }
    } else if gamma.iter().any(|c| !c.is_zero()) {
        return Err(Error::DegreeMismatch("γ is not homogeneous".into()));
    }
    let power = chern.symbolic_power(alg, i);
    let gam: Vec<MultiPoly> = gamma
        .iter()
        .map(|s| MultiPoly::constant(chern.n(), s.clone()))
        .collect();
    let prod = alg.mul_symbolic(&power, &gam);
    let mut out = MultiPoly::zero(chern.n());
    for (b, p) in prod.iter().enumerate() {
        if alg.degrees()[b] == k && !alg.fundamental()[b].is_zero() {
            out = &out + &p.scale(&alg.fundamental()[b]);
        }
    }
    debug_assert!(out.is_zero() || out.is_homogeneous_of(i));
    Ok(out)
}

/// `b_{2i} = (n+i)!/i! · ∫_Δ c(x)^i dx`, integrated component-wise by `integrate`.
pub fn horizontal_from(
    alg: &GradedBaseAlgebra,
    chern: &ChernData,
    i: u32,
    mut integrate: impl FnMut(&MultiPoly) -> Scalar,
) -> Result<BaseElement> {
    if 2 * i > alg.top_degree() {
        return Err(Error::DegreeMismatch(format!(
            "2i = {} exceeds base dimension {}",
            2 * i,
            alg.top_degree()
        )));
    }
    let factor = factorial(chern.n() as u32 + i) / factorial(i);
    Ok(chern
        .symbolic_power(alg, i)
        .iter()
        .map(|p| {
            if p.is_zero() {
                Scalar::zero()
            } else {
                integrate(p) * &factor
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, MultiPoly};

    fn torus2() -> GradedBaseAlgebra {
        let mut p = BTreeMap::new();
        let one = Scalar::one();
        for i in 0..4 {
            p.insert((0, i), vec![(i, one.clone())]);
            p.insert((i, 0), vec![(i, one.clone())]);
        }
        p.insert((1, 2), vec![(3, one.clone())]);
        p.insert((2, 1), vec![(3, -one.clone())]);
        GradedBaseAlgebra::from_sparse(
            vec!["1".into(), "a".into(), "b".into(), "ab".into()],
            vec![0, 1, 1, 2],
            &p,
            vec![int(0), int(0), int(0), int(1)],
        )
        .unwrap()
    }

    #[test]
    fn point_algebra() {
        let p = GradedBaseAlgebra::make_point();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.names(), &["1".to_string()]);
        assert_eq!(p.integrate(&p.one()), int(1));
        assert_eq!(p.mul(&p.one(), &p.one()), p.one());
        assert!(p.validate().ok());
    }

    #[test]
    fn cp_algebras() {
        let c1 = GradedBaseAlgebra::make_cp(1);
        assert_eq!(c1.dim(), 2);
        assert_eq!(c1.mul(&c1.basis(1), &c1.basis(1)), c1.zero());
        let c2 = GradedBaseAlgebra::make_cp(2);
        assert_eq!(c2.mul(&c2.basis(1), &c2.basis(1)), c2.basis(2));
        assert_eq!(c2.integrate(&c2.basis(2)), int(1));
        assert!(GradedBaseAlgebra::make_cp(3).validate().ok());
    }

    #[test]
    fn integrate_examples() {
        let c1 = GradedBaseAlgebra::make_cp(1);
        assert_eq!(c1.integrate(&[int(0), int(5)]), int(5));
        assert_eq!(c1.integrate(&c1.one()), int(0));
        let c2 = GradedBaseAlgebra::make_cp(2);
        assert_eq!(c2.integrate(&[int(0), int(1), int(1)]), int(1));
    }

    #[test]
    fn tensor_products() {
        let pt = GradedBaseAlgebra::make_point();
        let c1 = GradedBaseAlgebra::make_cp(1);
        let pa = GradedBaseAlgebra::tensor(&pt, &c1);
        assert_eq!(pa.degrees(), c1.degrees());
        assert!(pa.validate().ok());
        let sq = GradedBaseAlgebra::tensor(&c1, &c1);
        assert_eq!(sq.basis_of_degree(2).len(), 2);
        let t1 = sq.index_of("t|1").unwrap();
        let t2 = sq.index_of("1|t").unwrap();
        let tt = sq.index_of("t|t").unwrap();
        assert_eq!(sq.mul(&sq.basis(t1), &sq.basis(t2)), sq.basis(tt));
        assert_eq!(sq.integrate(&sq.basis(tt)), int(1));
        assert!(sq.validate().ok());
        let t = torus2();
        assert!(t.validate().ok());
        let tt2 = GradedBaseAlgebra::tensor(&t, &t);
        assert!(tt2.validate().ok(), "{:?}", tt2.validate());
    }

    #[test]
    fn mutants_rejected() {
        let c2 = GradedBaseAlgebra::make_cp(2);
        let no_unit = c2.clone().with_product(0, 1, c2.zero());
        assert!(no_unit.validate().unit.is_err());
        let t = torus2();
        let commuting = t.clone().with_product(2, 1, t.basis(3));
        assert!(commuting.validate().commutative.is_err());
        let c4 = GradedBaseAlgebra::make_cp(4);
        // t2·t2 = 2 t4 while t·t3 = t4
        let skew = c4.clone().with_product(2, 2, c4.basis(4).iter().map(|c| c * int(2)).collect());
        let r = skew.validate();
        assert!(r.associative.is_err(), "{r:?}");
        let degenerate = c2.clone().with_fundamental(c2.zero());
        assert!(degenerate.validate().poincare.is_err());
        let wrong_degree = c2.clone().with_product(1, 1, c2.basis(1));
        assert!(wrong_degree.validate().graded_products.is_err());
    }

    #[test]
    fn f_gamma_examples() {
        let pt = GradedBaseAlgebra::make_point();
        let c0 = ChernData::zero(&pt, 2);
        assert_eq!(f_gamma(&pt, &c0, &pt.one(), 0).unwrap(), MultiPoly::one(2));

        let c1 = GradedBaseAlgebra::make_cp(1);
        let a = int(3);
        let ch = ChernData::from_degree2(&c1, vec![vec![a.clone()]]).unwrap();
        let f = f_gamma(&c1, &ch, &c1.one(), 1).unwrap();
        assert_eq!(f, MultiPoly::var(1, 0).scale(&a));

        let sq = GradedBaseAlgebra::tensor(&c1, &c1);
        let ch2 = ChernData::from_degree2(&sq, vec![vec![int(1), int(1)]]).unwrap();
        let f2 = f_gamma(&sq, &ch2, &sq.one(), 2).unwrap();
        assert_eq!(f2, MultiPoly::var(1, 0).pow(2).scale(&int(2)));

        assert!(matches!(
            f_gamma(&c1, &ch, &c1.basis(1), 1),
            Err(Error::DegreeMismatch(_))
        ));
        assert!(matches!(f_gamma(&c1, &ch, &c1.one(), 2), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn chern_must_be_degree_two() {
        let c2 = GradedBaseAlgebra::make_cp(2);
        assert!(ChernData::new(&c2, vec![c2.basis(2)]).is_err());
        assert!(ChernData::new(&c2, vec![c2.basis(1)]).is_ok());
    }
}
