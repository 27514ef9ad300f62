use fixsum::asymptotics::{cutoff, cutoff_ode_residual};
use fixsum::binomial;
use fixsum::combinatorics::{factorial, ratio_to_f64};
use fixsum::subset_sum::count_subsets;
use proptest::prelude::*;

#[test]
fn range_and_support() {
    for k in 1..=8usize {
        let kf = k as f64;
        for i in -50..=(k as i32 * 100 + 50) {
            let alpha = i as f64 / 100.0 + 0.003;
            let c = cutoff(k, alpha);
            assert!((0.0..=1.0).contains(&c), "c_{k}({alpha}) = {c}");
            if alpha <= 0.0 || alpha > kf {
                assert_eq!(c, 0.0);
            }
            if alpha > 0.0 && alpha <= 1.0 {
                assert_eq!(c, 1.0);
            }
        }
    }
}

#[test]
fn strictly_decreasing_after_one() {
    for k in 2..=8usize {
        let steps = 400 * k;
        let mut prev = cutoff(k, 1.0);
        for i in 1..steps {
            let alpha = 1.0 + (k - 1) as f64 * i as f64 / steps as f64;
            let c = cutoff(k, alpha);
            assert!(c <= prev, "c_{k} increases at {alpha}: {prev} -> {c}");
            // right after α = 1 the drop 1 - c_k is below f64 resolution
            if prev < 1.0 - 1e-12 {
                assert!(c < prev, "c_{k} flat at {alpha}: {prev} -> {c}");
            }
            prev = c;
        }
    }
}

#[test]
fn delay_equation_at_fifty_points() {
    // 50 points per k spread over (1, k+1), none within 1e-3 of an integer
    for k in 1..=6usize {
        for i in 0..50 {
            let alpha = 1.0 + k as f64 * (i as f64 + 0.5) / 50.0 + 0.0017;
            if (alpha - alpha.round()).abs() < 1e-3 || alpha >= (k + 1) as f64 {
                continue;
            }
            let res = cutoff_ode_residual(k, alpha, 1e-5).unwrap();
            assert!(res < 1e-5, "k={k} alpha={alpha}: {res}");
        }
    }
}

fn law_deviation(k: usize, alpha: f64, n: usize) -> f64 {
    let r = (alpha * n as f64).ceil() as i64;
    let (k, n) = (k as i64, n as i64);
    let lhs = count_subsets(r, k, n) * factorial(k as usize);
    let ratio = ratio_to_f64(&lhs, &binomial(r - 1, k - 1));
    (ratio - cutoff(k as usize, alpha)).abs()
}

#[test]
fn subset_count_approaches_cutoff() {
    for k in 2..=4 {
        for alpha in [0.5, 1.5, 2.5] {
            let small = law_deviation(k, alpha, 200);
            let large = law_deviation(k, alpha, 2000);
            // both vanish when αn is past the largest k-subset sum
            assert!(
                large < small || (large == 0.0 && small == 0.0),
                "k={k} alpha={alpha}: {small} -> {large}"
            );
        }
    }
}

proptest! {
    #[test]
    fn one_on_unit_interval(k in 1usize..12, alpha in 1e-9f64..=1.0) {
        prop_assert_eq!(cutoff(k, alpha), 1.0);
    }

    #[test]
    fn bounded_everywhere(k in 1usize..20, alpha in -5.0f64..25.0) {
        let c = cutoff(k, alpha);
        prop_assert!((0.0..=1.0).contains(&c));
    }

    #[test]
    fn monotone_pairs(k in 2usize..10, a in 1.0f64..10.0, b in 1.0f64..10.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(cutoff(k, lo) >= cutoff(k, hi));
    }
}
