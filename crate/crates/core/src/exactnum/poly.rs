//! Sparse multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{factorial, Scalar};
use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// Sparse polynomial keyed by exponent vector. Terms iterate in
/// lexicographic exponent order, so every rendering is byte-stable.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Scalar>,
    weights: Option<Vec<u32>>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
            weights: None,
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Scalar::one())
    }

    pub fn monomial(exp: Exponent, c: Scalar) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// `Σ coeffs[i] · x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::MalformedInput(format!(
                    "exponent {e:?} has wrong length for {nvars} variables"
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Attaches per-variable weights (positive even integers).
    pub fn with_weights(mut self, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != self.nvars || weights.iter().any(|&w| w == 0 || w % 2 != 0) {
            return Err(Error::MalformedInput(
                "weights must be positive even integers, one per variable".into(),
            ));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Scalar {
        self.terms.get(exp).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, exp: Exponent, c: Scalar) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars).keep_weights(self);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
            weights: self.weights.clone(),
        }
    }

    fn keep_weights(mut self, other: &MultiPoly) -> Self {
        if self.weights.is_none() {
            self.weights = other.weights.clone();
        }
        self
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc.keep_weights(self)
    }

    /// Total degree of the highest term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `Some(d)` iff every term has total degree `d` (zero counts for any
    /// requested degree and reports `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn weighted_degree_of(&self, exp: &[u32]) -> u32 {
        match &self.weights {
            Some(w) => exp.iter().zip(w).map(|(e, w)| e * w).sum(),
            None => exp.iter().sum(),
        }
    }

    /// `Some(d)` iff every term has weighted degree `d`.
    pub fn weighted_homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| self.weighted_degree_of(e));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Splits into homogeneous components keyed by total degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e.iter().sum();
            out.entry(d)
                .or_insert_with(|| MultiPoly::zero(self.nvars))
                .add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong dimension");
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes variable `i` by `subs[i]`; all substitutes share one ring.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<MultiPoly> {
        if subs.len() != self.nvars {
            return Err(Error::MalformedInput("substitution count mismatch".into()));
        }
        let target = subs.first().map_or(0, |p| p.nvars);
        if subs.iter().any(|p| p.nvars != target) {
            return Err(Error::MalformedInput("substitutes live in different rings".into()));
        }
        let mut powers: Vec<Vec<MultiPoly>> = subs.iter().map(|p| vec![MultiPoly::one(p.nvars)]).collect();
        let mut acc = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &subs[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * Scalar::from_integer(e[i].into()));
        }
        out.keep_weights(self)
    }

    /// Applies `∂^beta`, i.e. `∂^β x^α = α!/(α−β)! x^{α−β}`.
    pub fn apply_derivative(&self, beta: &[u32]) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().zip(beta).any(|(a, b)| a < b) {
                continue;
            }
            let mut coef = c.clone();
            let mut e2 = e.clone();
            for (k, (&a, &b)) in e.iter().zip(beta).enumerate() {
                coef *= factorial(a) / factorial(a - b);
                e2[k] = a - b;
            }
            out.add_term(e2, coef);
        }
        out.keep_weights(self)
    }

    /// Re-embeds into `total` variables, placing variable `i` at `offset + i`.
    pub fn embed(&self, total: usize, offset: usize) -> MultiPoly {
        assert!(offset + self.nvars <= total);
        let mut out = MultiPoly::zero(total);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; total];
            e2[offset..offset + self.nvars].copy_from_slice(e);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Renders with the supplied variable names, e.g. `1/2*h1^2 + h1*h2`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        // highest-degree terms first, lexicographically descending within a degree
        let mut terms: Vec<(&Exponent, &Scalar)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], p)
                    }
                })
                .collect();
            let neg = c < &Scalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    pub fn default_names(&self, prefix: &str) -> Vec<String> {
        (1..=self.nvars).map(|i| format!("{prefix}{i}")).collect()
    }
}

// Weights are presentation metadata; equality is on the polynomial itself.
impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&self.default_names("x")))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "adding polynomials in different rings");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out.keep_weights(rhs)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "subtracting polynomials in different rings");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out.keep_weights(rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "multiplying polynomials in different rings");
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out.keep_weights(self).keep_weights(rhs)
    }
}

/// All exponent vectors in `nvars` variables of total degree exactly `d`,
/// in lexicographic order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort();
    out
}

/// Exponent vectors of weighted degree exactly `d`.
pub fn monomials_of_weighted_degree(weights: &[u32], d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    fn rec(i: usize, left: u32, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut k = 0;
        while k * w[i] <= left {
            cur[i] = k;
            rec(i + 1, left - k * w[i], w, cur, out);
            k += 1;
        }
        cur[i] = 0;
    }
    assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
    rec(0, d, weights, &mut cur, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::scalar::{int, rat};

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn arithmetic_cancels_to_zero() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1);
        let p = &a * &b;
        let q = &x(2, 0).pow(2) - &x(2, 1).pow(2);
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
    }

    #[test]
    fn degree_queries() {
        let p = &x(2, 0).pow(2) + &MultiPoly::constant(2, int(3));
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(p.homogeneous_degree(), None);
        assert_eq!(p.homogeneous_components().len(), 2);
        let w = x(2, 1).with_weights(vec![2, 4]).unwrap();
        assert_eq!(w.weighted_homogeneous_degree(), Some(4));
        assert!(MultiPoly::one(1).with_weights(vec![3]).is_err());
    }

    #[test]
    fn compose_and_eval_agree() {
        let p = &(&x(2, 0) * &x(2, 1)) + &x(2, 0).scale(&rat(1, 2));
        let subs = vec![&x(1, 0) + &MultiPoly::one(1), x(1, 0).scale(&int(2))];
        let q = p.compose(&subs).unwrap();
        for t in -3..4 {
            let t = int(t);
            let direct = p.eval(&[&t + int(1), &t * int(2)]);
            assert_eq!(q.eval(&[t]), direct);
        }
    }

    #[test]
    fn apolarity_action() {
        let p = &x(2, 0).pow(3) * &x(2, 1);
        assert_eq!(p.apply_derivative(&[2, 1]), x(2, 0).scale(&int(6)));
        assert!(p.apply_derivative(&[0, 2]).is_zero());
        assert_eq!(p.derivative(0), (&x(2, 0).pow(2) * &x(2, 1)).scale(&int(3)));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(0, 0), vec![Vec::<u32>::new()]);
        assert!(monomials_of_degree(0, 1).is_empty());
        assert_eq!(monomials_of_weighted_degree(&[2, 4], 4), vec![vec![0, 1], vec![2, 0]]);
    }

    #[test]
    fn rendering_is_stable() {
        let p = &(&x(2, 0).pow(2).scale(&rat(1, 2)) - &x(2, 1)) + &MultiPoly::constant(2, int(1));
        let names = vec!["h1".to_string(), "h2".to_string()];
        assert_eq!(p.render(&names), "1/2*h1^2 - h2 + 1");
        assert_eq!(MultiPoly::zero(2).render(&names), "0");
    }
}
