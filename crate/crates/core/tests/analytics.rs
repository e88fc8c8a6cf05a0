use std::f64::consts::PI;

use proptest::prelude::*;

use ftqm::analytics::{
    avg_c_e, c0_count, c_count, delta_ii, delta_of_gamma, dev_ib, dev_ic, excluded_regions, gamma_prime,
    lhs_relation_ib, lhs_relation_ic, logical_shift, nontransversal_rejection_bound, p_fail_ia, p_fail_ib,
    resources_ia, resources_ib, resources_ii, stddev_phi, threshold_curve, threshold_ia, threshold_ib,
    threshold_ii, threshold_relation_ib, threshold_relation_ic, trials_required, union_measure, x_err, x_pass,
    z_err, z_err_direct, z_pass, CurveProtocol,
};
use ftqm::codes::{punctured_rm, qrm, shortened_rm, syndrome};
use ftqm::gf2::BitVec;
use ftqm::Error;

/// Weights of every codeword of the span of `rows`, by plain enumeration.
fn span_weights(rows: &[BitVec]) -> Vec<usize> {
    (0u64..1 << rows.len())
        .map(|mask| {
            let mut w = BitVec::zeros(rows[0].len());
            for (i, r) in rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    w.xor_assign(r);
                }
            }
            w.weight()
        })
        .collect()
}

/// Detection probabilities from character sums over the small codes:
/// `P(e ∈ C) = |C⊥|^-1 Σ_{c ∈ C⊥} (1-2p)^wt(c)`.
struct Oracle {
    x_pass: f64,
    x_err: f64,
    z_pass: f64,
    z_err: f64,
}

fn oracle(p: f64, m: usize) -> Oracle {
    let n = (1usize << m) - 1;
    let star = span_weights(punctured_rm(m).unwrap().generator().rows());
    let bar = span_weights(shortened_rm(m).unwrap().generator().rows());
    let prob = |w: usize| p.powi(w as i32) * (1.0 - p).powi((n - w) as i32);
    let x_pass: f64 = star.iter().map(|&w| prob(w)).sum();
    let x_err = star.iter().filter(|&&w| w > 0).map(|&w| prob(w)).sum::<f64>() / x_pass;
    let avg = |ws: &[usize]| ws.iter().map(|&w| (1.0 - 2.0 * p).powi(w as i32)).sum::<f64>() / ws.len() as f64;
    // Kernel of h_x is the Hamming code; its even part is the dual of RM*.
    let z_pass = avg(&bar);
    let z_even = avg(&star);
    Oracle {
        x_pass,
        x_err,
        z_pass,
        z_err: (z_pass - z_even) / z_pass,
    }
}

/// Same probabilities by summing over all `2^n` error patterns.
fn exhaustive(p: f64, m: usize) -> Oracle {
    let code = qrm(m).unwrap();
    let n = code.n();
    let (mut xp, mut xe, mut zp, mut ze) = (0.0, 0.0, 0.0, 0.0);
    for e in 0u64..1 << n {
        let v = BitVec::from_u64(e, n);
        let w = v.weight();
        let prob = p.powi(w as i32) * (1.0 - p).powi((n - w) as i32);
        if syndrome(code.h_z(), &v).unwrap().is_zero() {
            xp += prob;
            if w > 0 {
                xe += prob;
            }
        }
        if syndrome(code.h_x(), &v).unwrap().is_zero() {
            zp += prob;
            if w % 2 == 1 {
                ze += prob;
            }
        }
    }
    Oracle {
        x_pass: xp,
        x_err: xe / xp,
        z_pass: zp,
        z_err: ze / zp,
    }
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) + 1e-300
}

#[test]
fn unencoded_thresholds_reproduce_published_values() {
    for (gamma, t, published) in [(PI / 16.0, 5, 0.00639), (PI / 32.0, 4, 0.00626), (PI / 64.0, 3, 0.00619)] {
        let p_th = threshold_ia(gamma, t).unwrap();
        assert!((p_th - published).abs() <= 3e-5, "gamma={gamma} t={t}: {p_th}");
        // Closed-form root of 1 - (1-p)^K = δ.
        let k = (1u64 << (t - 1)) as f64;
        let exact = 1.0 - (1.0 - delta_of_gamma(gamma)).powf(1.0 / k);
        assert!((p_th - exact).abs() < 1e-10);
    }
}

#[test]
fn margin_constants() {
    assert!((delta_of_gamma(PI / 8.0) - 0.191).abs() <= 1e-3);
    assert!((delta_of_gamma(PI / 32.0) - 0.049).abs() <= 1e-3);
    assert!((delta_ii() - 0.129).abs() <= 1e-3);
    let direct = ((PI / 4.0).cos().powi(2) - (PI / 4.0 - PI / 64.0).cos().powi(2)).abs();
    assert!((delta_of_gamma(PI / 32.0) - direct).abs() < 1e-15);
}

#[test]
fn detection_probabilities_match_exhaustive_sums() {
    for m in [3, 4] {
        for p in [0.001, 0.01, 0.05, 0.1, 0.3] {
            let o = exhaustive(p, m);
            assert!(close(x_pass(p, m), o.x_pass, 1e-12), "x_pass m={m} p={p}");
            assert!(close(z_pass(p, m), o.z_pass, 1e-12), "z_pass m={m} p={p}");
            assert!(close(x_err(p, m), o.x_err, 1e-9), "x_err m={m} p={p}");
            // The closed form cancels to O(p^3); allow its absolute floor.
            assert!((z_err(p, m) - o.z_err).abs() <= 1e-9 * o.z_err + 1e-14, "z_err m={m} p={p}");
        }
    }
}

#[test]
fn detection_probabilities_match_character_sums() {
    for m in 3..=9 {
        for p in [0.003, 0.01, 0.05, 0.1] {
            let o = oracle(p, m);
            assert!(close(x_pass(p, m), o.x_pass, 1e-10), "x_pass m={m} p={p}");
            assert!(close(z_pass(p, m), o.z_pass, 1e-10), "z_pass m={m} p={p}");
            assert!(close(x_err(p, m), o.x_err, 1e-8), "x_err m={m} p={p}");
            assert!((z_err(p, m) - o.z_err).abs() < 1e-11, "z_err m={m} p={p}");
        }
    }
}

#[test]
fn z_error_closed_form_agrees_with_enumerator_ratio() {
    for m in 3..=5 {
        for k in 1..50 {
            let p = k as f64 * 0.01;
            assert!((z_err(p, m) - z_err_direct(p, m).unwrap()).abs() < 1e-12, "m={m} p={p}");
        }
    }
    assert!(z_err_direct(0.1, 9).is_err());
}

#[test]
fn x_errors_are_rarer_than_z_errors_below_threshold() {
    // At m = 3 both start at 7p^3.
    for m in 4..=8 {
        for p in [1e-3, 5e-3, 2e-2] {
            assert!(x_err(p, m) < z_err(p, m), "m={m} p={p}");
        }
    }
}

#[test]
fn encoded_threshold_for_fourth_bit() {
    let gamma = PI / 32.0;
    let th = threshold_ib(gamma, 4).unwrap();
    // Independent root of the same relation using the character-sum oracle.
    let delta = delta_of_gamma(logical_shift(gamma, 6));
    let f = |p: f64| {
        let o = oracle(p, 6);
        1.0 - ((1.0 - o.x_err) * (1.0 - o.z_err)).powi(8) - delta
    };
    let (mut a, mut b) = (0.0, 0.5);
    for _ in 0..100 {
        let mid = 0.5 * (a + b);
        if f(mid) < 0.0 {
            a = mid
        } else {
            b = mid
        }
    }
    assert!((th - a).abs() < 1e-9, "{th} vs {a}");
    assert!((th - 0.020390).abs() < 5e-7);
    assert!(th > threshold_ia(gamma, 4).unwrap());
}

#[test]
fn logical_shift_limits() {
    for m in 3..=10 {
        assert_eq!(logical_shift(0.0, m), 0.0);
        // A multiple of 2π/2^(m-1) is applied exactly.
        let phi = 2.0 * PI / (1u64 << (m - 1)) as f64;
        assert!((logical_shift(phi, m) - phi).abs() < 1e-12);
    }
    assert!((gamma_prime(PI / 32.0, 4) - logical_shift(PI / 32.0, 6)).abs() < 1e-15);
}

#[test]
fn rejection_bound_values() {
    assert!((nontransversal_rejection_bound(3) - 0.578125).abs() < 1e-15);
    assert!((nontransversal_rejection_bound(4) - (1.0 - (7.0f64 / 8.0).powi(4))).abs() < 1e-15);
}

#[test]
fn device_counts() {
    assert_eq!(c0_count(3), 79);
    assert_eq!(c_count(3), 14449);
    assert_eq!(c0_count(6), 1215);
    assert_eq!(c_count(6), 3218121);
    assert!((avg_c_e(6) - 7.0 * 32.0 / 63.0 * 32.0).abs() < 1e-12);
    assert!((avg_c_e(6) - 113.78).abs() < 5e-3);
    for m in 3..=8 {
        assert!((dev_ib(2e-5, m) - 2.0 * dev_ib(1e-5, m)).abs() < 1e-18);
        assert_eq!(dev_ic(0.0, m), 0.0);
    }
}

#[test]
fn device_relations_reduce_without_device_noise() {
    for j in 1..=6 {
        for p in [1e-3, 1e-2, 3e-2] {
            assert_eq!(lhs_relation_ib(p, j, 0.0), p_fail_ib(p, j));
            assert_eq!(lhs_relation_ic(p, j, 0.0), p_fail_ib(p, j));
        }
        let g = PI / 32.0;
        assert_eq!(threshold_relation_ib(g, j, 0.0).unwrap(), threshold_ib(g, j).unwrap());
        assert_eq!(threshold_relation_ic(g, j, 0.0).unwrap(), threshold_ib(g, j).unwrap());
    }
}

#[test]
fn device_noise_can_remove_the_threshold() {
    assert!(matches!(
        threshold_relation_ib(PI / 32.0, 4, 1e-2),
        Err(Error::NoPositiveThreshold { .. })
    ));
}

#[test]
fn threshold_curves_are_monotone() {
    let grid: Vec<f64> = (0..100).map(|i| i as f64 * 2e-7).collect();
    for proto in [CurveProtocol::IbDev, CurveProtocol::Ic] {
        let c = threshold_curve(proto, PI / 32.0, 4, &grid, false).unwrap();
        assert_eq!(c.points.len(), 100);
        assert!(c.is_non_increasing(), "{proto}");
    }
    let flat = threshold_curve(CurveProtocol::Ia, PI / 32.0, 4, &grid, false).unwrap();
    assert!(flat.points.iter().all(|&(_, p)| p == flat.points[0].1));
}

#[test]
fn hoeffding_repetitions() {
    let m = trials_required(0.049, 0.0, 4, 1.0 / 16.0).unwrap();
    let exact = (2.0 * 4.0 * 16.0f64).ln() / (2.0 * 0.049f64.powi(2));
    assert_eq!(m, exact.ceil() as u64);
    assert!(trials_required(0.049, 0.05, 4, 0.1).is_err());
}

#[test]
fn resources_at_zero_noise() {
    let g = PI / 32.0;
    for t in 1..=6 {
        let eps = 1.0 / (1u64 << t) as f64;
        let n = resources_ia(g, t, eps, 0.0).unwrap();
        let d = delta_of_gamma(g);
        let expect = ((1u64 << t) - 1) as f64 * (2.0 * t as f64 / eps).ln() / (2.0 * d * d);
        assert!(close(n, expect, 1e-12));
        assert!(resources_ib(g, t, eps, 0.0).unwrap() > n);
    }
    assert!(resources_ia(g, 5, 0.01, 0.01).is_err());
}

#[test]
fn encoded_resources_win_at_high_bits_near_the_unencoded_threshold() {
    let g = PI / 32.0;
    let p = 0.00626;
    let t = 4;
    let eps = 1.0 / 16.0;
    let ia = resources_ia(g, t, eps, p * 0.999).unwrap();
    let ib = resources_ib(g, t, eps, p * 0.999).unwrap();
    assert!(ib < ia, "{ib} vs {ia}");
}

#[test]
fn mixed_radix_closed_forms() {
    let th = threshold_ii(4).unwrap();
    let exact = 1.0 - (1.0 - delta_ii()).powf(1.0 / 27.0);
    assert!((th - exact).abs() < 1e-10);
    assert!(resources_ii(4, 0.1, 0.0, &[2, 2, 2]).unwrap() < resources_ii(4, 0.1, 0.0, &[3, 3, 3]).unwrap());
    assert!(resources_ii(4, 0.1, 0.0, &[5, 2, 2]).is_err());
}

#[test]
fn excluded_region_measure() {
    for t in 1..=8 {
        let g = PI / 32.0;
        let regions = excluded_regions(g, t).unwrap();
        assert!(union_measure(&regions) <= 2.0 * t as f64 * g + 1e-12);
        assert!(regions.iter().all(|r| r.width() > 0.0));
    }
}

#[test]
fn standard_deviation_decreases_with_bits() {
    let s: Vec<f64> = (1..=10).map(|t| stddev_phi(t, 1.0 / (1u64 << t) as f64)).collect();
    assert!(s.windows(2).all(|w| w[1] < w[0]));
    assert!((stddev_phi(3, 0.0) - PI / 16.0).abs() < 1e-15);
}

proptest! {
    #[test]
    fn detection_probabilities_are_probabilities(m in 3usize..=12, p in 0.0f64..0.5) {
        for v in [x_pass(p, m), z_pass(p, m), x_err(p, m), z_err(p, m)] {
            prop_assert!((0.0..=1.0).contains(&v), "{}", v);
        }
    }

    #[test]
    fn pass_rates_decrease_with_noise(m in 3usize..=10, p in 0.0f64..0.45, dp in 1e-4f64..0.05) {
        prop_assert!(x_pass(p + dp, m) <= x_pass(p, m) + 1e-15);
        prop_assert!(z_pass(p + dp, m) <= z_pass(p, m) + 1e-15);
    }

    #[test]
    fn unencoded_threshold_decreases_with_bits(t in 1usize..=20, k in 1u32..=6) {
        let g = PI / (1u64 << k) as f64 / 2.0;
        prop_assert!(threshold_ia(g, t + 1).unwrap() < threshold_ia(g, t).unwrap());
    }

    #[test]
    fn threshold_separates_convergent_regime(t in 1usize..=10, frac in 0.01f64..0.99) {
        let g = PI / 32.0;
        let th = threshold_ia(g, t).unwrap();
        prop_assert!(p_fail_ia(th * frac, t, None) < delta_of_gamma(g));
        prop_assert!(p_fail_ia(th * (1.0 + frac), t, None) > delta_of_gamma(g));
    }

    #[test]
    fn logical_shift_is_odd(phi in 0.0f64..PI, m in 3usize..=12) {
        prop_assert!((logical_shift(-phi, m) + logical_shift(phi, m)).abs() < 1e-12);
    }

    #[test]
    fn device_lhs_increases_with_device_noise(j in 1usize..=6, p in 1e-4f64..1e-2, pp in 1e-8f64..1e-5) {
        prop_assert!(lhs_relation_ib(p, j, pp) >= lhs_relation_ib(p, j, 0.0));
        prop_assert!(lhs_relation_ic(p, j, pp) >= lhs_relation_ic(p, j, 0.0));
    }
}
