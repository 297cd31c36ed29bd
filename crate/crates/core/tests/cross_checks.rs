use qtk_core::catalog;
use qtk_core::invsys::{ann_generators, ann_hilbert, bundle_potential_direct, bundle_potential_integral, frobenius_kernel, volume_potential};
use qtk_core::multipoly::{triangulation_volume, MultiPolytope};
use qtk_core::ppbrion::{brion_bundle_dims, brion_point_dims, brion_quotient_dims, courant_basis, pp_graded_dim};

fn even(v: &[usize]) -> Vec<usize> {
    v.iter().step_by(2).copied().collect()
}

#[test]
fn betti_matches_catalog_annotations() {
    for inst in catalog::all() {
        let ring = inst.ring().unwrap();
        assert_eq!(ring.betti(), inst.expected_betti, "{}", inst.name);
        assert!(ring.poincare_duality_holds().unwrap(), "{}", inst.name);
    }
}

#[test]
fn brion_presentations_match_betti() {
    for inst in catalog::all() {
        let ring = inst.ring().unwrap();
        let betti = ring.betti();
        assert_eq!(brion_bundle_dims(&ring, ring.total_dim()), betti, "{}", inst.name);
        let point = brion_point_dims(&inst.cp).unwrap();
        let q = brion_quotient_dims(&inst.cp, inst.cp.n() as u32);
        assert_eq!(even(&point), q, "{}", inst.name);
        if inst.point_base() {
            assert_eq!(point, betti, "{}", inst.name);
        }
    }
}

#[test]
fn piecewise_linear_dimension_is_ray_count() {
    for inst in catalog::all() {
        assert_eq!(pp_graded_dim(&inst.cp, 0), 1);
        assert_eq!(pp_graded_dim(&inst.cp, 1), inst.cp.s(), "{}", inst.name);
        assert_eq!(courant_basis(&inst.cp).unwrap().len(), inst.cp.s());
    }
}

#[test]
fn potentials_agree_and_present_even_cohomology() {
    for inst in catalog::all().into_iter().filter(|i| !i.base.has_odd()) {
        let ring = inst.ring().unwrap();
        let p = bundle_potential_integral(&ring).unwrap();
        let q = bundle_potential_direct(&ring).unwrap();
        assert_eq!(p.poly(), q.poly(), "{}", inst.name);
        let hf = ann_hilbert(&p);
        assert!(hf.is_symmetric(), "{}", inst.name);
        assert_eq!(hf.even(), even(&ring.betti()), "{}", inst.name);
        for g in ann_generators(&p, p.degree()).unwrap() {
            assert!(p.apply(&g.poly).is_zero());
        }
    }
}

#[test]
fn odd_base_is_rejected_by_potentials() {
    let inst = catalog::lookup("cp1-over-t2").unwrap();
    assert!(bundle_potential_direct(&inst.ring().unwrap()).is_err());
}

#[test]
fn volume_potential_recovers_h_vector() {
    for inst in catalog::all().into_iter().filter(|i| i.point_base()) {
        let p = volume_potential(&inst.cp).unwrap();
        assert_eq!(ann_hilbert(&p).even(), even(&inst.expected_betti), "{}", inst.name);
    }
}

#[test]
fn convex_volumes_match_triangulation() {
    for inst in catalog::all() {
        let Some(h) = inst.convex_h.clone() else { continue };
        let vol = MultiPolytope::new(&inst.cp, h.clone()).unwrap().volume().unwrap();
        assert_eq!(vol, triangulation_volume(&inst.cp, &h).unwrap(), "{}", inst.name);
    }
}

#[test]
fn quotient_algebra_is_self_dual() {
    for inst in catalog::all() {
        let ring = inst.ring().unwrap();
        let alg = ring.quotient_algebra().unwrap();
        assert_eq!(alg.dim(), inst.expected_betti.iter().sum::<usize>());
        assert!(frobenius_kernel(&alg).iter().all(|k| k.is_empty()), "{}", inst.name);
    }
}

#[test]
fn hirzebruch_family_is_graded_like_a_product() {
    for a in -2..=3 {
        let inst = catalog::lookup(&format!("hirzebruch?a={a}")).unwrap();
        let ring = inst.ring().unwrap();
        assert_eq!(ring.betti(), vec![1, 0, 2, 0, 1]);
        let toric = catalog::lookup(&format!("hirzebruch-toric?a={a}")).unwrap();
        assert_eq!(toric.ring().unwrap().betti(), vec![1, 0, 2, 0, 1]);
    }
}

#[test]
fn bkk_at_the_zero_multi_polytope() {
    use qtk_core::exactnum::int;
    use qtk_core::multipoly::bkk_check;
    for inst in catalog::all() {
        let ring = inst.ring().unwrap();
        let k = inst.base.top_degree();
        for i in 0..=k / 2 {
            for g in inst.base.basis_of_degree(k - 2 * i) {
                let r = bkk_check(&ring, &inst.base.basis(g), i, &vec![int(0); inst.cp.s()]).unwrap();
                assert!(r.equal && r.lhs == int(0), "{}", inst.name);
            }
        }
    }
}

#[test]
fn leray_hirsch_count() {
    for inst in catalog::all() {
        let total: usize = inst.ring().unwrap().betti().iter().sum();
        assert_eq!(total, inst.base.dim() * inst.cp.max_cones().len(), "{}", inst.name);
    }
}

#[test]
fn chern_classes_agree_with_divisor_sums() {
    use qtk_core::exactnum::{int, monomials_of_degree};
    for inst in catalog::all() {
        let ring = inst.ring().unwrap();
        let (n, s) = (inst.cp.n(), inst.cp.s());
        let target = ring.total_dim() - 2;
        for m in 0..n {
            // λ = e_m: Σ ⟨Λ_i, λ⟩ x_i against c(λ) lifted from the base
            let mut divisor = qtk_core::BundleElement::zero();
            for i in 0..s {
                divisor = divisor.add(&ring.x(i).scale(&int(inst.cp.lambda()[i][m])));
            }
            let lifted = ring.from_base(inst.chern.images()[m].as_slice());
            for b in 0..inst.base.dim() {
                let bd = inst.base.degrees()[b];
                if bd > target || (target - bd) % 2 != 0 {
                    continue;
                }
                for exp in monomials_of_degree(s, (target - bd) / 2) {
                    let other = ring.monomial(exp, &inst.base.basis(b));
                    let lhs = ring.evaluate_top(&ring.mul(&divisor, &other)).unwrap();
                    let rhs = ring.evaluate_top(&ring.mul(&lifted, &other)).unwrap();
                    assert_eq!(lhs, rhs, "{} m={m}", inst.name);
                }
            }
        }
    }
}
