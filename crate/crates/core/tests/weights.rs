use fracflux::GrunwaldTable;
use proptest::prelude::*;

/// Independent route to the partial sums: sum_{m<=j} g_m = prod_{m<=j} (1 - alpha/m).
fn product_oracle(alpha: f64, dx: f64, n: usize) -> Vec<f64> {
    let scale = dx.powf(1.0 - alpha);
    let mut p = 1.0;
    let mut out = vec![scale];
    for m in 1..=n {
        p *= 1.0 - alpha / m as f64;
        out.push(scale * p);
    }
    out
}

#[test]
fn recomputed_weights_agree_at_full_length() {
    let n = 10_000;
    let dx = 1.0 / n as f64;
    for alpha in [0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0] {
        let t = GrunwaldTable::build(alpha, dx, n).unwrap();
        for (j, (got, want)) in t.w().iter().zip(product_oracle(alpha, dx, n)).enumerate() {
            let err = if want == 0.0 { got.abs() } else { ((got - want) / want).abs() };
            assert!(err <= 1e-13, "alpha {alpha}, j {j}: {got} vs {want}");
        }
    }
}

#[test]
fn half_order_partial_sums_decay_toward_zero() {
    let n = 100_000;
    let t = GrunwaldTable::build(0.5, 1.0 / n as f64, n).unwrap();
    let sums: Vec<f64> = (0..=n).map(|j| t.partial_g_sum(j).unwrap()).collect();
    assert!(sums.windows(2).all(|w| w[1] < w[0]));
    let last = sums[n];
    // ~ 1/sqrt(pi j) for large j
    assert!(last > 0.0 && last < 2e-3, "{last}");
    assert!((last - 1.0 / (std::f64::consts::PI * n as f64).sqrt()).abs() < 1e-8);
}

proptest! {
    #[test]
    fn table_invariants(alpha in 0.001f64..=1.0, n in 1usize..2000, dx in 1e-4f64..1.0) {
        let t = GrunwaldTable::build(alpha, dx, n).unwrap();
        let g = t.g();
        let w = t.w();
        prop_assert_eq!(g.len(), n + 1);
        prop_assert_eq!(w.len(), n + 1);
        prop_assert_eq!(g[0], 1.0);
        for j in 1..=n {
            prop_assert!(g[j] <= 0.0);
            let step = (j as f64 - 1.0 - alpha) / j as f64 * g[j - 1];
            prop_assert!((g[j] - step).abs() <= 4.0 * f64::EPSILON * g[j].abs());
            prop_assert!(w[j] >= 0.0);
            prop_assert!(w[j] <= w[j - 1]);
        }
        let mut partial = 0.0;
        let scale = dx.powf(1.0 - alpha);
        for j in 0..=n.min(50) {
            partial += g[j];
            prop_assert!((w[j] - scale * partial).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn partial_sums_positive_below_unit_order(alpha in 0.001f64..0.999, n in 1usize..500) {
        let t = GrunwaldTable::build(alpha, 1.0 / n as f64, n).unwrap();
        let mut prev = f64::INFINITY;
        for j in 0..=n {
            let s = t.partial_g_sum(j).unwrap();
            prop_assert!(s > 0.0);
            prop_assert!(s < prev);
            prev = s;
        }
    }
}
