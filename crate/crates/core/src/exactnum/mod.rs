//! Exact rational scalars, linear algebra, and polynomial arithmetic.

pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod snf;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

pub use matrix::{rank_of, RatMatrix, SpanBasis};
pub use poly::{monomials_of_degree, monomials_of_weighted_degree, Exponent, MultiPoly};
pub use scalar::{dot, factorial, int, parse_scalar, parse_scalar_list, rat, Scalar};
pub use snf::{int_matrix, snf, IntMatrix, Snf};

use crate::error::{Error, Result};

/// Symmetric multilinear form of a homogeneous degree-`m` polynomial,
/// evaluated by inclusion-exclusion:
/// `g(v_1..v_m) = (1/m!) Σ_{S ⊆ [m]} (−1)^{m−|S|} f(Σ_{i∈S} v_i)`.
pub fn polarize(f: &MultiPoly, args: &[Vec<Scalar>]) -> Result<Scalar> {
    let m = args.len();
    if !f.is_homogeneous_of(m as u32) {
        return Err(Error::DegreeMismatch(format!(
            "polarization needs a homogeneous polynomial of degree {m}"
        )));
    }
    if args.iter().any(|v| v.len() != f.nvars()) {
        return Err(Error::MalformedInput("argument dimension mismatch".into()));
    }
    if m == 0 {
        return Ok(f.eval(&vec![Scalar::zero(); f.nvars()]));
    }
    let mut acc = Scalar::zero();
    for mask in 0u64..(1u64 << m) {
        let mut point = vec![Scalar::zero(); f.nvars()];
        for (i, v) in args.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (p, x) in point.iter_mut().zip(v) {
                    *p += x;
                }
            }
        }
        let val = f.eval(&point);
        if (m as u32 - mask.count_ones()).is_multiple_of(2) {
            acc += val;
        } else {
            acc -= val;
        }
    }
    Ok(acc / factorial(m as u32))
}

/// Writes `x^alpha` as `Σ c_j ℓ_j(x)^d`, `d = |alpha|`, from
/// `y_1⋯y_d = 1/(2^d d!) Σ_{ε∈{±1}^d} (Πε)(Σ ε_k y_k)^d` with repeated
/// variables. Linear forms are normalized to have leading coefficient 1 and
/// equal forms are merged, so a pure power `x_i^d` comes back as `(1, x_i)`.
pub fn power_of_linear_forms(alpha: &[u32]) -> Vec<(Scalar, Vec<Scalar>)> {
    let n = alpha.len();
    let d: u32 = alpha.iter().sum();
    if d == 0 {
        return vec![(Scalar::one(), vec![Scalar::zero(); n])];
    }
    let slots: Vec<usize> = alpha
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
        .collect();
    let norm = Scalar::from_integer((1u64 << d).into()) * factorial(d);
    let mut merged: BTreeMap<Vec<Scalar>, Scalar> = BTreeMap::new();
    // ε_1 = +1 suffices: flipping every sign leaves (Πε)·ℓ^d unchanged.
    for mask in 0u64..(1u64 << (d - 1)) {
        let mut form = vec![Scalar::zero(); n];
        let mut sign = Scalar::one();
        for (k, &v) in slots.iter().enumerate() {
            let neg = k > 0 && mask & (1 << (k - 1)) != 0;
            if neg {
                form[v] -= Scalar::one();
                sign = -sign;
            } else {
                form[v] += Scalar::one();
            }
        }
        let Some(lead) = form.iter().find(|x| !x.is_zero()).cloned() else {
            continue;
        };
        let mut scale = Scalar::one();
        for _ in 0..d {
            scale *= &lead;
        }
        let normalized: Vec<Scalar> = form.iter().map(|x| x / &lead).collect();
        let c = Scalar::from_integer(2.into()) * sign * scale / &norm;
        *merged.entry(normalized).or_insert_with(Scalar::zero) += c;
    }
    merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(f, c)| (c, f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn expand(parts: &[(Scalar, Vec<Scalar>)], d: u32) -> MultiPoly {
        let n = parts.first().map_or(0, |(_, f)| f.len());
        let mut acc = MultiPoly::zero(n);
        for (c, f) in parts {
            acc = &acc + &MultiPoly::linear(f).pow(d).scale(c);
        }
        acc
    }

    #[test]
    fn polarize_examples() {
        let sq = MultiPoly::var(1, 0).pow(2);
        assert_eq!(polarize(&sq, &[vec![int(3)], vec![int(5)]]).unwrap(), int(15));
        let xy = &MultiPoly::var(2, 0) * &MultiPoly::var(2, 1);
        assert_eq!(
            polarize(&xy, &[vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap(),
            rat(1, 2)
        );
        assert!(matches!(
            polarize(&xy, &[vec![int(1), int(0)]]),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn linear_form_powers() {
        assert_eq!(power_of_linear_forms(&[2]), vec![(int(1), vec![int(1)])]);
        let xy = power_of_linear_forms(&[1, 1]);
        assert_eq!(expand(&xy, 2), &MultiPoly::var(2, 0) * &MultiPoly::var(2, 1));
        let xyz = power_of_linear_forms(&[1, 1, 1]);
        assert_eq!(xyz.len(), 4);
        let target = &(&MultiPoly::var(3, 0) * &MultiPoly::var(3, 1)) * &MultiPoly::var(3, 2);
        assert_eq!(expand(&xyz, 3), target);
    }

    fn small_rat() -> impl Strategy<Value = Scalar> {
        (-5i64..6, 1i64..4).prop_map(|(p, q)| rat(p, q))
    }

    fn homogeneous(n: usize, d: u32) -> impl Strategy<Value = MultiPoly> {
        let monos = monomials_of_degree(n, d);
        proptest::collection::vec(small_rat(), monos.len()).prop_map(move |cs| {
            MultiPoly::from_terms(n, monos.clone().into_iter().zip(cs)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn polarization_diagonal(
            (d, f, v) in (1usize..5, 1u32..5).prop_flat_map(|(n, d)| {
                (Just(d), homogeneous(n, d), proptest::collection::vec(small_rat(), n))
            })
        ) {
            let args = vec![v.clone(); d as usize];
            prop_assert_eq!(polarize(&f, &args).unwrap(), f.eval(&v));
        }

        #[test]
        fn polarization_symmetric_and_linear(
            (f, a, b, c, s) in (1usize..4).prop_flat_map(|n| {
                (homogeneous(n, 3),
                 proptest::collection::vec(small_rat(), n),
                 proptest::collection::vec(small_rat(), n),
                 proptest::collection::vec(small_rat(), n),
                 small_rat())
            })
        ) {
            let g = |x: &Vec<Scalar>, y: &Vec<Scalar>, z: &Vec<Scalar>| {
                polarize(&f, &[x.clone(), y.clone(), z.clone()]).unwrap()
            };
            prop_assert_eq!(g(&a, &b, &c), g(&c, &a, &b));
            prop_assert_eq!(g(&a, &b, &c), g(&b, &a, &c));
            let combo: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| x * &s + y).collect();
            prop_assert_eq!(g(&combo, &b, &c), g(&a, &b, &c) * &s + g(&b, &b, &c));
        }

        #[test]
        fn linear_forms_reexpand(alpha in proptest::collection::vec(0u32..3, 1..4)) {
            let d: u32 = alpha.iter().sum();
            prop_assume!(d > 0);
            let parts = power_of_linear_forms(&alpha);
            prop_assert_eq!(expand(&parts, d), MultiPoly::monomial(alpha.clone(), int(1)));
        }

        #[test]
        fn solve_recovers_solution(
            entries in proptest::collection::vec(-4i64..5, 9),
            x in proptest::collection::vec(small_rat(), 3)
        ) {
            let rows: Vec<Vec<Scalar>> = entries.chunks(3).map(|r| r.iter().map(|&v| int(v)).collect()).collect();
            let a = RatMatrix::from_rows(&rows, 3).unwrap();
            prop_assume!(!a.det().unwrap().is_zero());
            let b = a.mul_vec(&x).unwrap();
            prop_assert_eq!(a.solve_exact(&b).unwrap(), x);
        }
    }
}
