//! Characteristic pairs `(Σ, Λ)`: a complete simplicial fan with a
//! characteristic map assigning a lattice vector to every ray.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactnum::scalar::sign_of;
use crate::exactnum::snf::{int_det, mat_mul};
use crate::exactnum::{int, snf, RatMatrix, Scalar};

pub const DEFAULT_COVERAGE_SAMPLES: usize = 64;
const COVERAGE_SEED: u64 = 0x5eed_cafe;

/// Combinatorial data of a generalized quasitoric manifold. Indices are
/// 0-based internally; every maximal cone is stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicPair {
    n: usize,
    rays: Vec<Vec<Scalar>>,
    lambda: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    cone_index: BTreeMap<Vec<usize>, usize>,
}

/// Orientation-corrected sign of a maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSign {
    pub cone: Vec<usize>,
    pub value: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn pass() -> Self {
        Check {
            passed: true,
            detail: "ok".into(),
        }
    }

    fn fail(detail: String) -> Self {
        Check {
            passed: false,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub simplicial: Check,
    pub unimodular: Check,
    pub facet_pairing: Check,
    pub coverage: Check,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.simplicial.passed
            && self.unimodular.passed
            && self.facet_pairing.passed
            && self.coverage.passed
    }

    pub fn checks(&self) -> [(&'static str, &Check); 4] {
        [
            ("simplicial", &self.simplicial),
            ("unimodular", &self.unimodular),
            ("facet_pairing", &self.facet_pairing),
            ("coverage", &self.coverage),
        ]
    }
}

impl CharacteristicPair {
    /// Structural checks only; call [`validate`](Self::validate) for the
    /// mathematical ones.
    pub fn new(
        n: usize,
        rays: Vec<Vec<Scalar>>,
        lambda: Vec<Vec<i64>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let s = rays.len();
        if n == 0 {
            return Err(Error::MalformedInput("fan dimension must be positive".into()));
        }
        if lambda.len() != s {
            return Err(Error::MalformedInput(format!(
                "{} rays but {} characteristic vectors",
                s,
                lambda.len()
            )));
        }
        if let Some(r) = rays.iter().position(|r| r.len() != n) {
            return Err(Error::MalformedInput(format!("ray {} has wrong length", r + 1)));
        }
        if let Some(r) = lambda.iter().position(|r| r.len() != n) {
            return Err(Error::MalformedInput(format!(
                "characteristic vector {} has wrong length",
                r + 1
            )));
        }
        if max_cones.is_empty() {
            return Err(Error::MalformedInput("no maximal cones".into()));
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        let mut cone_index = BTreeMap::new();
        for cone in max_cones {
            let mut c = cone.clone();
            c.sort_unstable();
            c.dedup();
            if c.len() != n || cone.len() != n {
                return Err(Error::MalformedInput(format!(
                    "cone {cone:?} does not have {n} distinct rays"
                )));
            }
            if c.iter().any(|&i| i >= s) {
                return Err(Error::MalformedInput(format!("cone {cone:?} index out of range")));
            }
            if cone_index.insert(c.clone(), cones.len()).is_some() {
                return Err(Error::MalformedInput(format!("cone {cone:?} listed twice")));
            }
            cones.push(c);
        }
        Ok(CharacteristicPair {
            n,
            rays,
            lambda,
            max_cones: cones,
            cone_index,
        })
    }

    /// Toric case: ray directions equal the characteristic vectors.
    pub fn toric(lambda: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        let n = lambda.first().map_or(0, |r| r.len());
        let rays = lambda
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::new(n, rays, lambda, max_cones)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[Vec<Scalar>] {
        &self.rays
    }

    pub fn lambda(&self) -> &[Vec<i64>] {
        &self.lambda
    }

    pub fn lambda_row(&self, i: usize) -> Vec<Scalar> {
        self.lambda[i].iter().map(|&x| int(x)).collect()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn is_max_cone(&self, cone: &[usize]) -> bool {
        let mut c = cone.to_vec();
        c.sort_unstable();
        self.cone_index.contains_key(&c)
    }

    /// A set of rays is a face iff it lies in some maximal cone.
    pub fn is_face(&self, set: &[usize]) -> bool {
        self.max_cones
            .iter()
            .any(|c| set.iter().all(|i| c.binary_search(i).is_ok()))
    }

    /// Every face (including the empty one), sorted.
    pub fn faces(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for cone in &self.max_cones {
            for mask in 0u32..(1 << self.n) {
                let f: Vec<usize> = (0..self.n)
                    .filter(|k| mask & (1 << k) != 0)
                    .map(|k| cone[k])
                    .collect();
                out.insert(f);
            }
        }
        out
    }

    fn lambda_matrix(&self, cone: &[usize]) -> RatMatrix {
        let rows: Vec<Vec<Scalar>> = cone.iter().map(|&i| self.lambda_row(i)).collect();
        RatMatrix::from_rows(&rows, self.n).expect("lambda rows have length n")
    }

    fn ray_matrix(&self, cone: &[usize]) -> RatMatrix {
        let rows: Vec<Vec<Scalar>> = cone.iter().map(|&i| self.rays[i].clone()).collect();
        RatMatrix::from_rows(&rows, self.n).expect("rays have length n")
    }

    pub fn cone_sign(&self, cone: &[usize]) -> Result<ConeSign> {
        if !self.is_max_cone(cone) {
            return Err(Error::NotACone(cone.to_vec()));
        }
        let orient = sign_of(&self.ray_matrix(cone).det()?);
        let det = self.lambda_matrix(cone).det()?;
        let value = sign_of(&det) * orient;
        Ok(ConeSign {
            cone: cone.to_vec(),
            value,
        })
    }

    /// Unique `x` with `⟨Λ(ρ_i), x⟩ = h_i` for `i` in the cone.
    pub fn vertex(&self, h: &[Scalar], cone: &[usize]) -> Result<Vec<Scalar>> {
        if h.len() != self.s() {
            return Err(Error::MalformedInput("support vector has wrong length".into()));
        }
        if !self.is_max_cone(cone) {
            return Err(Error::NotACone(cone.to_vec()));
        }
        let rhs: Vec<Scalar> = cone.iter().map(|&i| h[i].clone()).collect();
        self.lambda_matrix(cone).solve_exact(&rhs)
    }

    /// Vectors `w_k` with `⟨Λ(ρ_{i_j}), w_k⟩ = δ_{jk}`, in the given cone order.
    pub fn dual_edge_frame(&self, cone: &[usize]) -> Result<Vec<Vec<Scalar>>> {
        if !self.is_max_cone(cone) {
            return Err(Error::NotACone(cone.to_vec()));
        }
        let inv = self.lambda_matrix(cone).inverse()?;
        Ok((0..self.n).map(|k| inv.column(k)).collect())
    }

    /// Integer `χ` with `⟨Λ(ρ_j), χ⟩ = 1` and `⟨Λ(ρ_i), χ⟩ = 0` for the other
    /// `i` in `face`. Free parameters of the SNF back-substitution are zero.
    pub fn dual_character(&self, face: &[usize], j: usize) -> Result<Vec<i64>> {
        let pos = face
            .iter()
            .position(|&i| i == j)
            .ok_or_else(|| Error::MalformedInput(format!("{j} is not in {face:?}")))?;
        if face.iter().any(|&i| i >= self.s()) || !self.is_face(face) {
            return Err(Error::NotAFace(face.to_vec()));
        }
        let rows: Vec<Vec<BigInt>> = face
            .iter()
            .map(|&i| self.lambda[i].iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let t = face.len();
        let res = snf(&rows);
        if res.diagonal.iter().any(|d| !d.is_one()) {
            return Err(Error::NotAFace(face.to_vec()));
        }
        // A χ = e_pos  ⇔  D (V⁻¹ χ) = U e_pos
        let mut y = vec![BigInt::zero(); self.n];
        for (k, yk) in y.iter_mut().enumerate().take(t) {
            *yk = res.left[k][pos].clone();
        }
        let chi: Vec<i64> = (0..self.n)
            .map(|r| {
                let v: BigInt = (0..self.n).map(|c| &res.right[r][c] * &y[c]).sum();
                v.to_i64().expect("dual character fits in i64")
            })
            .collect();
        Ok(chi)
    }

    pub fn validate(&self) -> ValidationReport {
        self.validate_with(DEFAULT_COVERAGE_SAMPLES, COVERAGE_SEED)
    }

    pub fn validate_with(&self, samples: usize, seed: u64) -> ValidationReport {
        let mut warnings = Vec::new();
        let simplicial = self.check_simplicial();
        let unimodular = self.check_unimodular(&mut warnings);
        let facet_pairing = self.check_facet_pairing();
        let coverage = if simplicial.passed {
            self.check_coverage(samples, seed)
        } else {
            Check::fail("skipped: fan is not simplicial".into())
        };
        ValidationReport {
            simplicial,
            unimodular,
            facet_pairing,
            coverage,
            warnings,
        }
    }

    fn check_simplicial(&self) -> Check {
        for cone in &self.max_cones {
            match self.ray_matrix(cone).det() {
                Ok(d) if !d.is_zero() => {}
                _ => return Check::fail(format!("rays of cone {} are dependent", one_based(cone))),
            }
        }
        Check::pass()
    }

    fn check_unimodular(&self, warnings: &mut Vec<String>) -> Check {
        for face in self.faces() {
            if face.is_empty() {
                continue;
            }
            let rows: Vec<Vec<BigInt>> = face
                .iter()
                .map(|&i| self.lambda[i].iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let res = snf(&rows);
            if res.diagonal.iter().any(|d| !d.is_one()) {
                let diag: Vec<String> = res.diagonal.iter().map(|d| d.to_string()).collect();
                return Check::fail(format!(
                    "face {} has SNF diagonal ({}), not a lattice basis fragment",
                    one_based(&face),
                    diag.join(",")
                ));
            }
            let distinct: BTreeSet<&Vec<i64>> = face.iter().map(|&i| &self.lambda[i]).collect();
            if distinct.len() < face.len() {
                warnings.push(format!("Λ is not injective on the rays of {}", one_based(&face)));
            }
        }
        for cone in &self.max_cones {
            let rows: Vec<Vec<BigInt>> = cone
                .iter()
                .map(|&i| self.lambda[i].iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            if int_det(&rows).abs() != BigInt::one() {
                return Check::fail(format!("|det Λ| ≠ 1 on cone {}", one_based(cone)));
            }
        }
        Check::pass()
    }

    fn check_facet_pairing(&self) -> Check {
        let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for cone in &self.max_cones {
            for skip in 0..self.n {
                let facet: Vec<usize> = cone
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &i)| i)
                    .collect();
                *count.entry(facet).or_insert(0) += 1;
            }
        }
        for (facet, c) in count {
            if c != 2 {
                return Check::fail(format!(
                    "facet {} lies in {c} maximal cones",
                    one_based(&facet)
                ));
            }
        }
        Check::pass()
    }

    fn check_coverage(&self, samples: usize, seed: u64) -> Check {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inverses: Vec<RatMatrix> = self
            .max_cones
            .iter()
            .map(|c| self.ray_matrix(c).transpose().inverse().expect("simplicial"))
            .collect();
        let mut done = 0;
        let mut attempts = 0;
        while done < samples {
            attempts += 1;
            if attempts > samples * 50 {
                return Check::fail("too many boundary samples".into());
            }
            let dir: Vec<Scalar> = (0..self.n).map(|_| int(rng.gen_range(-1000..=1000))).collect();
            if dir.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut hits = 0;
            let mut boundary = false;
            for inv in &inverses {
                let coeffs = inv.mul_vec(&dir).expect("square");
                if coeffs.iter().any(|c| c.is_negative()) {
                    continue;
                }
                if coeffs.iter().any(|c| c.is_zero()) {
                    boundary = true;
                    break;
                }
                hits += 1;
            }
            if boundary {
                continue;
            }
            if hits != 1 {
                let d: Vec<String> = dir.iter().map(|x| x.to_string()).collect();
                return Check::fail(format!(
                    "direction ({}) lies in {hits} maximal cones",
                    d.join(",")
                ));
            }
            done += 1;
        }
        Check::pass()
    }
}

pub(crate) fn one_based(set: &[usize]) -> String {
    let v: Vec<String> = set.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

/// Integer matrix product helper re-exported for tests of the SNF-based
/// dual characters.
pub fn lambda_times(cp: &CharacteristicPair, face: &[usize], chi: &[i64]) -> Vec<i64> {
    let rows: Vec<Vec<BigInt>> = face
        .iter()
        .map(|&i| cp.lambda[i].iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let col: Vec<Vec<BigInt>> = chi.iter().map(|&x| vec![BigInt::from(x)]).collect();
    mat_mul(&rows, &col, cp.n, 1)
        .into_iter()
        .map(|r| r[0].to_i64().expect("small"))
        .collect()
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
    fn cp2_validates() {
        let r = cp2().validate();
        assert!(r.ok(), "{r:?}");
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn missing_cone_breaks_facet_pairing() {
        let cp = CharacteristicPair::toric(
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        let r = cp.validate();
        assert!(!r.facet_pairing.passed);
        assert!(!r.ok());
    }

    #[test]
    fn non_unimodular_lambda() {
        let cp = CharacteristicPair::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])],
            vec![vec![2, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        let r = cp.validate();
        assert!(!r.unimodular.passed);
        assert!(r.unimodular.detail.contains("{1"), "{}", r.unimodular.detail);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            CharacteristicPair::toric(vec![vec![1], vec![-1]], vec![vec![0], vec![2]]),
            Err(Error::MalformedInput(_))
        ));
        assert!(matches!(
            CharacteristicPair::new(2, vec![v(&[1, 0])], vec![vec![1]], vec![vec![0, 0]]),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn signs() {
        let c1 = cp1();
        assert_eq!(c1.cone_sign(&[0]).unwrap().value, 1);
        assert_eq!(c1.cone_sign(&[1]).unwrap().value, 1);
        let c2 = cp2();
        assert_eq!(c2.cone_sign(&[0, 1]).unwrap().value, 1);
        assert_eq!(c2.cone_sign(&[1, 0]).unwrap().value, 1);
        for cone in c2.max_cones() {
            assert_eq!(c2.cone_sign(cone).unwrap().value, 1);
        }
        assert!(matches!(c2.cone_sign(&[0, 0]), Err(Error::NotACone(_))));
        // flipping one characteristic vector's orientation relative to the ray
        let flipped = CharacteristicPair::new(
            1,
            vec![v(&[1]), v(&[-1])],
            vec![vec![1], vec![1]],
            vec![vec![0], vec![1]],
        )
        .unwrap();
        assert_eq!(flipped.cone_sign(&[1]).unwrap().value, -1);
    }

    #[test]
    fn vertices() {
        let c2 = cp2();
        let h = v(&[1, 1, 1]);
        assert_eq!(c2.vertex(&h, &[0, 1]).unwrap(), v(&[1, 1]));
        assert_eq!(c2.vertex(&h, &[1, 2]).unwrap(), v(&[-2, 1]));
        let c1 = cp1();
        assert_eq!(c1.vertex(&[rat(3, 2), rat(5, 7)], &[1]).unwrap(), vec![rat(-5, 7)]);
    }

    #[test]
    fn dual_frames() {
        let c2 = cp2();
        assert_eq!(c2.dual_edge_frame(&[0, 1]).unwrap(), vec![v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(c2.dual_edge_frame(&[1, 2]).unwrap(), vec![v(&[-1, 1]), v(&[-1, 0])]);
        assert_eq!(cp1().dual_edge_frame(&[1]).unwrap(), vec![v(&[-1])]);
        for cone in c2.max_cones() {
            let w = c2.dual_edge_frame(cone).unwrap();
            for (j, &i) in cone.iter().enumerate() {
                for (k, wk) in w.iter().enumerate() {
                    let expect = if j == k { int(1) } else { int(0) };
                    assert_eq!(crate::exactnum::dot(&c2.lambda_row(i), wk), expect);
                }
            }
        }
    }

    #[test]
    fn dual_characters() {
        let c2 = cp2();
        assert_eq!(c2.dual_character(&[0], 0).unwrap(), vec![1, 0]);
        assert_eq!(c2.dual_character(&[0, 1], 0).unwrap(), vec![1, 0]);
        assert_eq!(cp1().dual_character(&[0], 0).unwrap(), vec![1]);
        for face in c2.faces() {
            for &j in &face {
                let chi = c2.dual_character(&face, j).unwrap();
                let vals = lambda_times(&c2, &face, &chi);
                for (k, &i) in face.iter().enumerate() {
                    assert_eq!(vals[k], i64::from(i == j));
                }
            }
        }
        let bad = CharacteristicPair::toric(
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        assert!(matches!(bad.dual_character(&[0, 2], 0), Err(Error::NotAFace(_))));
    }

    #[test]
    fn adjacent_vertices_share_facet_equations() {
        let c2 = cp2();
        let h = vec![rat(1, 2), int(-3), rat(5, 4)];
        for a in c2.max_cones() {
            for b in c2.max_cones() {
                let shared: Vec<usize> = a.iter().copied().filter(|i| b.contains(i)).collect();
                if a == b || shared.len() != 1 {
                    continue;
                }
                let va = c2.vertex(&h, a).unwrap();
                let vb = c2.vertex(&h, b).unwrap();
                for &i in &shared {
                    assert_eq!(crate::exactnum::dot(&c2.lambda_row(i), &va), h[i]);
                    assert_eq!(crate::exactnum::dot(&c2.lambda_row(i), &vb), h[i]);
                }
            }
        }
    }
}
