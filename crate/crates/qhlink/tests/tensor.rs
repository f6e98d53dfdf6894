use proptest::prelude::*;
use qhlink::tensor::*;
use qhlink::{RootSystem, C64};

fn tensor(n: usize, up: usize, down: usize) -> impl Strategy<Value = DenseTensor> {
    let len = n.pow((up + down) as u32);
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len).prop_map(move |v| {
        DenseTensor::from_vec(n, up, down, v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn compose_is_associative(a in tensor(3, 2, 2), b in tensor(3, 2, 2), c in tensor(3, 2, 2)) {
        let l = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let r = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert!(l.max_abs_diff(&r).unwrap() < 1e-12);
    }

    #[test]
    fn kron_mixed_product(a in tensor(3, 1, 1), b in tensor(3, 1, 1), c in tensor(3, 1, 1), d in tensor(3, 1, 1)) {
        let l = compose(&kron(&a, &b).unwrap(), &kron(&c, &d).unwrap()).unwrap();
        let r = kron(&compose(&a, &c).unwrap(), &compose(&b, &d).unwrap()).unwrap();
        prop_assert!(l.max_abs_diff(&r).unwrap() < 1e-12);
    }

    #[test]
    fn partial_trace_of_product(a in tensor(3, 1, 1), b in tensor(3, 1, 1)) {
        let k = kron(&a, &b).unwrap();
        let t2 = partial_trace(&k, 2).unwrap();
        let t1 = partial_trace(&k, 1).unwrap();
        prop_assert!(t2.max_abs_diff(&a.scale(trace(&b).unwrap())).unwrap() < 1e-12);
        prop_assert!(t1.max_abs_diff(&b.scale(trace(&a).unwrap())).unwrap() < 1e-12);
        prop_assert!((trace(&k).unwrap() - trace(&a).unwrap() * trace(&b).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn embedding_agrees_with_kron(m in tensor(3, 3, 3), r in tensor(3, 2, 2)) {
        let id = DenseTensor::identity(3, 1);
        let full = compose(&m, &kron(&id, &r).unwrap()).unwrap();
        prop_assert!(embed_right(&m, &r, 1, 2).unwrap().max_abs_diff(&full).unwrap() < 1e-12);
        let full = compose(&kron(&r, &id).unwrap(), &m).unwrap();
        prop_assert!(embed_left(&r, 0, 1, &m).unwrap().max_abs_diff(&full).unwrap() < 1e-12);
    }

    #[test]
    fn fourier_round_trip(t in tensor(5, 2, 2)) {
        let rs = RootSystem::new(5).unwrap();
        let back = dft_conjugate(&dft_conjugate(&t, &rs, true).unwrap(), &rs, false).unwrap();
        prop_assert!(back.max_abs_diff(&t).unwrap() < 1e-12);
    }

    #[test]
    fn flip_conjugation_swaps_factors(a in tensor(3, 1, 1), b in tensor(3, 1, 1)) {
        let p = flip(3);
        let l = compose(&compose(&p, &kron(&a, &b).unwrap()).unwrap(), &p).unwrap();
        prop_assert!(l.max_abs_diff(&kron(&b, &a).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn inverse_round_trip(t in tensor(3, 1, 1)) {
        if let Ok(inv) = t.inverse() {
            let e = compose(&t, &inv).unwrap().max_abs_diff(&DenseTensor::identity(3, 1)).unwrap();
            prop_assert!(e < 1e-8 * (1.0 + inv.max_abs() * t.max_abs()));
        }
    }

    #[test]
    fn global_comparison_finds_unit(t in tensor(3, 2, 2), k in 0i64..3, neg in any::<bool>()) {
        let rs = RootSystem::new(3).unwrap();
        let u = rs.zeta(k) * if neg { -1.0 } else { 1.0 };
        let c = global_eq_mod_n(&t.scale(u), &t, &rs, 1e-12).unwrap();
        prop_assert!(c.equal);
        prop_assert!((c.witness.unit(&rs) - u).norm() < 1e-12);
    }
}
