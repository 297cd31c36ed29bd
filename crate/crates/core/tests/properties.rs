use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use qtk_core::catalog::{self, Instance};
use qtk_core::exactnum::{int, rat, RatMatrix, Scalar};
use qtk_core::multipoly::{bkk_check, MultiPolytope};
use qtk_core::srbundle::BundleElement;
use qtk_core::BundleRing;

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=3).prop_map(|(p, q)| rat(p, q)).prop_filter("within [-3,3]", |x| x.abs() <= int(3))
}

fn instances() -> Vec<Instance> {
    catalog::all()
}

fn alternative_character(ring: &BundleRing, face: &[usize], j: usize, shift: &[i64]) -> Vec<i64> {
    let cp = ring.charpair();
    let base = cp.dual_character(face, j).unwrap();
    // shift by a vector killed by every Λ_i on the face
    let killed = face.iter().all(|&i| cp.lambda()[i].iter().zip(shift).map(|(a, b)| a * b).sum::<i64>() == 0);
    if killed {
        base.iter().zip(shift).map(|(a, b)| a + b).collect()
    } else {
        base
    }
}

fn random_top_element(ring: &BundleRing, picks: &[usize]) -> BundleElement {
    let base = ring.base();
    let k = base.top_degree();
    // a base basis element of even degree b, then k + 2n - b over 2 divisor factors
    let evens: Vec<usize> = (0..base.dim()).filter(|&i| base.degrees()[i].is_multiple_of(2)).collect();
    let b = evens[picks[0] % evens.len()];
    let m = ((k - base.degrees()[b]) / 2) as usize + ring.n();
    let mut el = ring.from_base(&base.basis(b));
    for t in 0..m {
        let i = picks[(t + 1) % picks.len()] % ring.s();
        el = ring.mul(&el, &ring.x(i));
    }
    el
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn bkk_holds_on_random_data(
        which in 0usize..64,
        i_pick in 0u32..8,
        g_pick in 0usize..64,
        h in proptest::collection::vec(small_rational(), 4),
    ) {
        let all = instances();
        let inst = &all[which % all.len()];
        let ring = inst.ring().unwrap();
        let k = ring.base().top_degree();
        let i = i_pick % (k / 2 + 1);
        let choices = ring.base().basis_of_degree(k - 2 * i);
        prop_assume!(!choices.is_empty());
        let gamma = ring.base().basis(choices[g_pick % choices.len()]);
        let hv: Vec<Scalar> = (0..ring.s()).map(|j| h[j % h.len()].clone() + int(j as i64 / 4)).collect();
        let r = bkk_check(&ring, &gamma, i, &hv).unwrap();
        prop_assert!(r.equal, "{}: {:?}", inst.name, r);
    }

    #[test]
    fn evaluation_is_independent_of_dual_character_choice(
        which in 0usize..64,
        picks in proptest::collection::vec(0usize..16, 6),
        shift in proptest::collection::vec(-2i64..=2, 3),
    ) {
        let all = instances();
        let inst = &all[which % all.len()];
        let ring = inst.ring().unwrap();
        let el = random_top_element(&ring, &picks);
        let shift: Vec<i64> = shift[..ring.n()].to_vec();
        let a = ring.evaluate_top(&el).unwrap();
        let alt = ring.reduce_with(&el, |face, j| alternative_character(&ring, face, j, &shift));
        let b = ring.evaluate_top(&alt).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn volume_is_translation_invariant_and_homogeneous(
        which in 0usize..64,
        h in proptest::collection::vec(small_rational(), 4),
        v in proptest::collection::vec(-2i64..=2, 3),
        t in 1i64..4,
    ) {
        let all = instances();
        let cp = &all[which % all.len()].cp;
        let n = cp.n();
        let hv: Vec<Scalar> = (0..cp.s()).map(|j| h[j % h.len()].clone()).collect();
        let vol = MultiPolytope::new(cp, hv.clone()).unwrap().volume().unwrap();
        let shifted: Vec<Scalar> = (0..cp.s())
            .map(|i| hv[i].clone() + int(cp.lambda()[i].iter().zip(&v[..n]).map(|(a, b)| a * b).sum::<i64>()))
            .collect();
        prop_assert_eq!(&vol, &MultiPolytope::new(cp, shifted).unwrap().volume().unwrap());
        let scaled: Vec<Scalar> = hv.iter().map(|x| x * int(t)).collect();
        let tn = (0..n).fold(Scalar::one(), |acc, _| acc * int(t));
        prop_assert_eq!(vol * tn, MultiPolytope::new(cp, scaled).unwrap().volume().unwrap());
    }

    #[test]
    fn matrix_inverse_roundtrip(entries in proptest::collection::vec(-4i64..=4, 9)) {
        let data: Vec<Scalar> = entries.iter().map(|&x| int(x)).collect();
        let m = RatMatrix::from_vec(3, 3, data).unwrap();
        let det = m.det().unwrap();
        match m.inverse() {
            Ok(inv) => {
                prop_assert!(!det.is_zero());
                prop_assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(3));
            }
            Err(_) => prop_assert!(det.is_zero()),
        }
        for k in m.kernel_basis() {
            prop_assert!(m.mul_vec(&k).unwrap().iter().all(Zero::is_zero));
        }
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), 3);
    }
}
