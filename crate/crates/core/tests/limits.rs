use fixsum::asymptotics::measured_mu;
use fixsum::combinatorics::ratio_to_f64;
use fixsum::profile::jump_ratio_exact;
use fixsum::{
    estimate_parameters, gap_deviation, jump_ratio, kernel_value, FamilyCounts, FamilyId,
    KernelParams,
};

#[test]
fn gap_shrinks_with_n() {
    let at_100 = gap_deviation(FamilyId::Permutations, 100, 1.0, 0.5, 2.5).unwrap();
    let at_400 = gap_deviation(FamilyId::Permutations, 400, 1.0, 0.5, 2.5).unwrap();
    assert!(at_400 < 0.05, "{at_400}");
    assert!(at_400 < at_100, "{at_100} -> {at_400}");
}

#[test]
fn jump_near_limit() {
    let k = kernel_value(&KernelParams::new(1.0).unwrap(), 1.0);
    let target = (1.0 + k) / k;
    let ratio = jump_ratio(FamilyId::Permutations, 400).unwrap();
    assert!((ratio / target - 1.0).abs() < 0.05, "{ratio} vs {target}");
}

#[test]
fn jump_of_small_permutations() {
    // fixed sets {4}, {1, 3} give f(4, 4) = 2 + 1; {1, 4}, {2, 3} give f(4, 5) = 2
    let (at, after) = jump_ratio_exact(FamilyId::Permutations, 4).unwrap();
    assert_eq!((at.clone(), after.clone()), (3u32.into(), 2u32.into()));
    let brute = fixsum::brute_force_profile(FamilyId::Permutations, 4).unwrap();
    assert_eq!(at, brute.value(4));
    assert_eq!(after, brute.value(5));
}

#[test]
fn permutation_diagnostics() {
    let d = estimate_parameters(FamilyId::Permutations, 500, 6).unwrap();
    for (name, v) in [
        ("lambda", d.lambda_hat),
        ("rho", d.rho_hat),
        ("C", d.c_hat),
        ("mu", d.mu_hat),
    ] {
        assert!((v.unwrap() - 1.0).abs() < 0.01, "{name}: {v:?}");
    }
    let worst = d
        .pmf_rows
        .iter()
        .map(|row| (row.observed - row.poisson).abs())
        .fold(0.0, f64::max);
    assert!(worst < 0.005, "{worst}");
    assert_eq!(d.pmf_rows.len(), 7);
}

#[test]
fn all_functions_rho() {
    let d = estimate_parameters(FamilyId::AllFunctions, 500, 6).unwrap();
    let rho = d.rho_hat.unwrap();
    assert!((rho - (-1.0f64).exp()).abs() < 0.01, "{rho}");
}

fn share(counts: &FamilyCounts, k: usize, n: usize) -> f64 {
    ratio_to_f64(&counts.exactly_fixed(k, n).unwrap(), &counts.total(n))
}

#[test]
fn fixed_point_counts_escape_to_infinity() {
    for id in [FamilyId::Involutions, FamilyId::SetPartitions] {
        let counts = FamilyCounts::new(id, 200);
        for k in 0..=2 {
            let (small, large) = (share(&counts, k, 100), share(&counts, k, 200));
            // an involution of even size never has exactly one fixed point
            let both_zero = small == 0.0 && large == 0.0;
            assert!(large < small || both_zero, "{id} k={k}: {small} -> {large}");
        }
    }
}

#[test]
fn measured_mu_identities() {
    let n = 1000;
    let nf = n as f64;

    let perms = FamilyCounts::new(FamilyId::Permutations, n);
    let mu = measured_mu(&perms, n).unwrap();
    let via_d = nf
        * ratio_to_f64(
            &perms.fixed_point_free(n - 2),
            &perms.fixed_point_free(n - 1),
        );
    assert!((mu - via_d).abs() < 1e-12);
    assert!((mu - 1.0).abs() < 0.01);

    let maps = FamilyCounts::new(FamilyId::AllFunctions, n);
    assert!((measured_mu(&maps, n).unwrap() - nf / (nf - 1.0)).abs() < 1e-12);

    let partial = FamilyCounts::new(FamilyId::PartialFunctions, n);
    assert!((measured_mu(&partial, n).unwrap() - 2.0 * nf / (nf - 1.0)).abs() < 1e-12);
}
