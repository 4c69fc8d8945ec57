mod common;

use approx::assert_abs_diff_eq;
use common::*;
use proptest::prelude::*;
use sigkernel_core::oracle::{direct_signature, direct_truncated_kernel};
use sigkernel_core::tensor::tensor_len;
use sigkernel_core::{
    build_pab, chen_signature, index_to_word, log_signature, solve, solve_order1, word_index,
    TimeSeries, TruncTensor,
};

fn tensor_strategy(dim: usize, degree: usize) -> impl Strategy<Value = TruncTensor> {
    prop::collection::vec(-2.0f64..2.0, tensor_len(dim, degree))
        .prop_map(move |c| TruncTensor::from_coeffs(dim, degree, c).unwrap())
}

fn lie_strategy(dim: usize, degree: usize) -> impl Strategy<Value = TruncTensor> {
    prop::collection::vec(-0.7f64..0.7, tensor_len(dim, degree)).prop_map(move |mut c| {
        c[0] = 0.0;
        TruncTensor::from_coeffs(dim, degree, c).unwrap()
    })
}

fn shape() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3, 1usize..=4)
}

fn triple() -> impl Strategy<Value = (TruncTensor, TruncTensor, TruncTensor)> {
    shape().prop_flat_map(|(d, m)| {
        (
            tensor_strategy(d, m),
            tensor_strategy(d, m),
            tensor_strategy(d, m),
        )
    })
}

fn series_strategy(dim: usize, max_segments: usize) -> impl Strategy<Value = TimeSeries> {
    (1..=max_segments)
        .prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(-0.6f64..0.6, dim), n))
        .prop_map(|steps| {
            let mut x = vec![0.0; steps[0].len()];
            let mut values = vec![x.clone()];
            for s in &steps {
                for (xi, si) in x.iter_mut().zip(s) {
                    *xi += si;
                }
                values.push(x.clone());
            }
            TimeSeries::from_points(values).unwrap()
        })
}

fn close(a: &TruncTensor, b: &TruncTensor, tol: f64) -> bool {
    max_abs_diff(a.coeffs(), b.coeffs()) <= tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn word_index_round_trip(d in 1usize..=4, idx in 0usize..400) {
        let w = index_to_word(idx, d).unwrap();
        prop_assert_eq!(word_index(&w, d).unwrap(), idx);
    }

    #[test]
    fn adjoints_are_dual_to_multiplication((a, b, c) in triple()) {
        let lhs = c.inner(&a.mul(&b).unwrap()).unwrap();
        let left = TruncTensor::left_adjoint(&a, &c).unwrap().inner(&b).unwrap();
        let right = TruncTensor::right_adjoint(&b, &c).unwrap().inner(&a).unwrap();
        let scale = lhs.abs().max(1.0);
        prop_assert!((lhs - left).abs() <= 1e-12 * scale);
        prop_assert!((lhs - right).abs() <= 1e-12 * scale);
    }

    #[test]
    fn multiplication_is_associative((a, b, c) in triple()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(close(&left, &right, 1e-12));
    }

    #[test]
    fn multiplication_is_bilinear((a, b, c) in triple(), s in -2.0f64..2.0) {
        let lhs = TruncTensor::linear_combine(s, &a, 1.0, &b).unwrap().mul(&c).unwrap();
        let rhs = TruncTensor::linear_combine(s, &a.mul(&c).unwrap(), 1.0, &b.mul(&c).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
        let lhs = c.mul(&TruncTensor::linear_combine(s, &a, 1.0, &b).unwrap()).unwrap();
        let rhs = TruncTensor::linear_combine(s, &c.mul(&a).unwrap(), 1.0, &c.mul(&b).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn unit_is_neutral((a, _, _) in triple()) {
        let one = TruncTensor::unit(a.dim(), a.degree()).unwrap();
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
        prop_assert_eq!(one.mul(&a).unwrap(), a);
    }

    #[test]
    fn log_inverts_exp(z in shape().prop_flat_map(|(d, m)| lie_strategy(d, m))) {
        let back = z.exp().unwrap().log().unwrap();
        prop_assert!(close(&back, &z, 1e-12));
    }

    #[test]
    fn exp_of_negative_is_inverse(z in shape().prop_flat_map(|(d, m)| lie_strategy(d, m))) {
        let prod = z.exp().unwrap().mul(&z.scaled(-1.0).exp().unwrap()).unwrap();
        prop_assert!(close(&prod, &TruncTensor::unit(z.dim(), z.degree()).unwrap(), 1e-12));
    }

    #[test]
    fn projection_commutes_with_product((a, b, _) in triple(), k in 0usize..=4) {
        let k = k.min(a.degree());
        let lhs = a.mul(&b).unwrap().project(k).unwrap();
        let rhs = a.project(k).unwrap().mul(&b.project(k).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn chen_identity_at_every_sample(ts in series_strategy(2, 7), m in 1usize..=4) {
        let (t0, t1) = (ts.first_time(), ts.last_time());
        let whole = chen_signature(&ts, (t0, t1), m).unwrap();
        for &mid in &ts.times()[1..ts.len() - 1] {
            let split = chen_signature(&ts, (t0, mid), m).unwrap()
                .mul(&chen_signature(&ts, (mid, t1), m).unwrap()).unwrap();
            prop_assert!(close(&split, &whole, 1e-12));
        }
        let direct = direct_signature(&ts, m);
        prop_assert!(max_abs_diff(&direct, whole.coeffs()) <= 1e-12);
    }

    #[test]
    fn log_signature_is_degree_monotone(ts in series_strategy(3, 5), m in 1usize..=3) {
        let w = (ts.first_time(), ts.last_time());
        let low = log_signature(&ts, w, m).unwrap();
        let high = log_signature(&ts, w, m + 1).unwrap();
        prop_assert!(close(&high.tensor().project(m).unwrap(), low.tensor(), 1e-12));
    }

    #[test]
    fn signature_ignores_time_parametrisation(ts in series_strategy(2, 6), warp in prop::collection::vec(0.05f64..3.0, 7)) {
        let mut times = vec![0.0];
        for i in 0..ts.segments() {
            times.push(times[i] + warp[i]);
        }
        let warped = TimeSeries::new(times.clone(), ts.values().to_vec()).unwrap();
        let a = chen_signature(&ts, (ts.first_time(), ts.last_time()), 4).unwrap();
        let b = chen_signature(&warped, (times[0], times[times.len() - 1]), 4).unwrap();
        prop_assert!(close(&a, &b, 1e-13));
    }

    #[test]
    fn lift_agrees_with_signature_on_partition(ts in series_strategy(2, 8), m in 1usize..=4, every in 1usize..=3) {
        let partition = sigkernel_core::every_kth_time(&ts, every).unwrap();
        let p = build_pab(&ts, &partition, m).unwrap();
        let partials = p.partial_signatures().unwrap();
        for (g, &t) in partials.iter().zip(&partition) {
            if t == ts.first_time() {
                prop_assert_eq!(g, &TruncTensor::unit(2, m).unwrap());
            } else {
                let s = chen_signature(&ts, (ts.first_time(), t), m).unwrap();
                prop_assert!(close(g, &s, 1e-12));
            }
        }
        let refined = p.refine(3).unwrap().partial_signatures().unwrap();
        prop_assert!(close(refined.last().unwrap(), partials.last().unwrap(), 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn degree_one_solve_matches_scalar_recursion(x in series_strategy(2, 9), y in series_strategy(2, 9)) {
        let px = build_pab(&x, x.times(), 1).unwrap();
        let py = build_pab(&y, y.times(), 1).unwrap();
        let full = solve(&px, &py, true).unwrap();
        let fast = solve_order1(&x.increments(), &y.increments(), true).unwrap();
        let diff = max_abs_diff(full.u_grid().unwrap().as_slice(), fast.u_grid().unwrap().as_slice());
        prop_assert!(diff <= 1e-12);
    }

    #[test]
    fn zero_padding_projects_to_the_same_state(x in series_strategy(2, 5), y in series_strategy(2, 5), m in 1usize..=3) {
        let px = build_pab(&x, x.times(), m).unwrap();
        let py = build_pab(&y, y.times(), m).unwrap();
        let base = solve(&px, &py, true).unwrap();
        let ext = solve(&px.embed(m + 2).unwrap(), &py.embed(m + 2).unwrap(), true).unwrap();
        let (a, b) = (base.state().unwrap(), ext.state().unwrap());
        prop_assert!(max_abs_diff(a.u.as_slice(), b.u.as_slice()) <= 1e-12);
        for (p, q) in a.phi.as_slice().iter().zip(b.phi.as_slice()) {
            prop_assert!(close(p, &q.project(m).unwrap(), 1e-12));
        }
        for (p, q) in a.psi.as_slice().iter().zip(b.psi.as_slice()) {
            prop_assert!(close(p, &q.project(m).unwrap(), 1e-12));
        }
    }

    #[test]
    fn kernel_is_symmetric(x in series_strategy(2, 6), y in series_strategy(2, 6), m in 1usize..=4) {
        let px = build_pab(&x, x.times(), m).unwrap();
        let py = build_pab(&y, y.times(), m).unwrap();
        let xy = solve(&px, &py, false).unwrap().value;
        let yx = solve(&py, &px, false).unwrap().value;
        prop_assert!((xy - yx).abs() <= 1e-12 * xy.abs().max(1.0));
    }

    #[test]
    fn adjoint_scalar_slots_stay_zero(x in series_strategy(2, 5), y in series_strategy(2, 5), m in 1usize..=4) {
        let px = build_pab(&x, x.times(), m).unwrap();
        let py = build_pab(&y, y.times(), m).unwrap();
        let sol = solve(&px, &py, true).unwrap();
        let state = sol.state().unwrap();
        prop_assert!(state.phi.as_slice().iter().all(|t| t.scalar() == 0.0));
        prop_assert!(state.psi.as_slice().iter().all(|t| t.scalar() == 0.0));
        prop_assert_eq!(*state.u.get(state.u.rows() - 1, state.u.cols() - 1), sol.value);
    }
}

#[test]
fn refined_solve_approaches_oracle() {
    let mut g = rng(11);
    let x = random_path(&mut g, 2, 3..=3, 1.0..1.5);
    let y = random_path(&mut g, 2, 3..=3, 1.0..1.5);
    let oracle = direct_truncated_kernel(&x, &y, 16);
    let px = build_pab(&x, x.times(), 1).unwrap();
    let py = build_pab(&y, y.times(), 1).unwrap();
    let errs: Vec<f64> = [8, 16, 32, 64]
        .iter()
        .map(|&k| {
            (solve(&px.refine(k).unwrap(), &py.refine(k).unwrap(), false)
                .unwrap()
                .value
                - oracle)
                .abs()
        })
        .collect();
    assert!(errs[3] < 1e-5, "{errs:?}");
    assert!(errs[2] / errs[3] > 3.0, "{errs:?}");
}

#[test]
fn higher_degree_lift_converges_under_refinement() {
    // the solve on a refined lift tends to <S(X^m), S(Y^m)> computed from the
    // group elements of the lifts themselves
    let mut g = rng(12);
    let x = random_path(&mut g, 2, 6..=6, 1.0..2.0);
    let y = random_path(&mut g, 2, 6..=6, 1.0..2.0);
    let part = sigkernel_core::every_kth_time(&x, 2).unwrap();
    let px = build_pab(&x, &part, 2).unwrap();
    let py = build_pab(&y, &part, 2).unwrap();
    let exact = px
        .embed(20)
        .unwrap()
        .partial_signatures()
        .unwrap()
        .pop()
        .unwrap()
        .inner(
            &py.embed(20)
                .unwrap()
                .partial_signatures()
                .unwrap()
                .pop()
                .unwrap(),
        )
        .unwrap();
    let errs: Vec<f64> = [1, 4, 16, 64]
        .iter()
        .map(|&k| {
            (solve(&px.refine(k).unwrap(), &py.refine(k).unwrap(), false)
                .unwrap()
                .value
                - exact)
                .abs()
        })
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert_abs_diff_eq!(errs[3], 0.0, epsilon = 1e-5);
}
