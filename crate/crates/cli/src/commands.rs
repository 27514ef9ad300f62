use fixsum::asymptotics::{cutoff, kernel_value, measured_mu, predicted_scaled};
use fixsum::combinatorics::ratio_to_f64;
use fixsum::profile::{exact_profile_with, max_label_sum, scaled_profile_with};
use fixsum::{
    brute_force_profile, empirical_distribution, estimate_parameters, exact_profile, list_families,
    FamilyCounts, FamilyId, KernelParams, SampleConfig,
};
use num_bigint::BigInt;

use crate::output::{Cell, Table};
use crate::Failure;

/// Largest `n` for which `sample` also reports exact probabilities.
const SAMPLE_EXACT_LIMIT: usize = 1000;

fn family(id: &str) -> Result<FamilyId, Failure> {
    Ok(id.parse::<FamilyId>()?)
}

fn with_family(mut table: Table, id: FamilyId, n: usize) -> Table {
    table.family = Some(id.to_string());
    table.n = Some(n);
    table
}

pub fn profile(id: &str, n: usize, r_max: Option<usize>) -> Result<Table, Failure> {
    let id = family(id)?;
    let p = exact_profile(id, n, r_max);
    let mut table = with_family(Table::new("profile", &["r", "f_n_r"]), id, n);
    for (r, v) in p.dense().iter().enumerate() {
        table.push(vec![r.into(), v.into()]);
    }
    Ok(table)
}

pub fn kernel(mu: f64, alpha_min: f64, alpha_max: f64, step: f64) -> Result<Table, Failure> {
    let params = KernelParams::new(mu)?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(Failure::invalid(format!(
            "step must be positive, got {step}"
        )));
    }
    if !(alpha_min.is_finite() && alpha_max.is_finite() && alpha_min <= alpha_max) {
        return Err(Failure::invalid(format!(
            "need alpha_min <= alpha_max, got [{alpha_min}, {alpha_max}]"
        )));
    }
    let mut columns = vec!["alpha".to_string()];
    columns.extend((2..=6).map(|k| format!("c_{k}")));
    columns.extend(["K_mu".to_string(), "predicted".to_string()]);
    let mut table = Table::new("kernel", &[]);
    table.columns = columns;
    let count = ((alpha_max - alpha_min) / step + 1e-9).floor() as usize;
    for i in 0..=count {
        let alpha = alpha_min + i as f64 * step;
        let mut row = vec![Cell::from(alpha)];
        row.extend((2..=6).map(|k| Cell::from(cutoff(k, alpha))));
        row.push(kernel_value(&params, alpha).into());
        row.push(predicted_scaled(&params, alpha).into());
        table.push(row);
    }
    table.summarize("mu", mu);
    Ok(table)
}

pub fn poisson(id: &str, n: usize, k_max: usize) -> Result<Table, Failure> {
    let id = family(id)?;
    let d = estimate_parameters(id, n, k_max)?;
    let mut table = with_family(Table::new("poisson", &["k", "observed", "poisson"]), id, n);
    for row in &d.pmf_rows {
        table.push(vec![row.k.into(), row.observed.into(), row.poisson.into()]);
    }
    table.summarize("lambda_hat", d.lambda_hat);
    table.summarize("rho_hat", d.rho_hat);
    table.summarize("c_hat", d.c_hat);
    table.summarize("mu_hat", d.mu_hat);
    Ok(table)
}

pub fn compare(
    id: &str,
    n: usize,
    mu: &str,
    alpha_min: f64,
    alpha_max: f64,
) -> Result<Table, Failure> {
    let id = family(id)?;
    let counts = FamilyCounts::new(id, n);
    let mu = match mu {
        "auto" => measured_mu(&counts, n)?,
        other => other.parse::<f64>().map_err(|_| {
            Failure::invalid(format!("mu must be a number or `auto`, got {other:?}"))
        })?,
    };
    let params = KernelParams::new(mu)?;
    let scaled = scaled_profile_with(&counts, n, alpha_min, alpha_max, &params)?;
    let mut table = with_family(
        Table::new(
            "compare",
            &["r", "alpha", "scaled", "predicted", "abs_diff"],
        ),
        id,
        n,
    );
    for row in &scaled.rows {
        table.push(vec![
            row.r.into(),
            row.alpha.into(),
            row.scaled.into(),
            row.predicted.into(),
            (row.scaled - row.predicted).abs().into(),
        ]);
    }
    table.summarize("mu", mu);
    table.summarize("gap_deviation", scaled.max_deviation());
    Ok(table)
}

/// Returns the diff table and whether every entry matched.
pub fn oracle(id: &str, n: usize) -> Result<(Table, bool), Failure> {
    let id = family(id)?;
    let brute = brute_force_profile(id, n)?;
    let exact = exact_profile(id, n, None);
    let mut table = with_family(
        Table::new("oracle", &["r", "exact", "brute", "diff"]),
        id,
        n,
    );
    let mut mismatches = 0usize;
    for r in 0..=max_label_sum(n) {
        let (e, b) = (exact.value(r), brute.value(r));
        let diff = BigInt::from(e.clone()) - BigInt::from(b.clone());
        if diff != BigInt::from(0) {
            mismatches += 1;
        }
        table.push(vec![r.into(), (&e).into(), (&b).into(), diff.into()]);
    }
    table.summarize("mismatches", mismatches);
    Ok((table, mismatches == 0))
}

pub fn sample(
    id: &str,
    n: usize,
    trials: u64,
    seed: u64,
    conditioned: bool,
) -> Result<Table, Failure> {
    let id = family(id)?;
    let config = SampleConfig::new(id, n, trials, seed).conditioned(conditioned);
    let h = empirical_distribution(&config)?;
    let r_top = h.counts.keys().next_back().copied().unwrap_or(0) as usize;

    // exact P(X = r), renormalised to X > 0 when conditioned
    let exact: Option<Vec<f64>> = (n <= SAMPLE_EXACT_LIMIT).then(|| {
        let counts = FamilyCounts::new(id, n);
        let total = counts.total(n);
        let p = exact_profile_with(&counts, n, Some(r_top));
        let mut probs: Vec<f64> = p.dense().iter().map(|v| ratio_to_f64(v, &total)).collect();
        if conditioned {
            let nonzero = 1.0 - ratio_to_f64(&counts.fixed_point_free(n), &total);
            probs[0] = 0.0;
            probs.iter_mut().for_each(|q| *q /= nonzero);
        }
        probs
    });

    let mut table = with_family(
        Table::new(
            "sample",
            &["r", "count", "empirical_prob", "exact_prob", "stderr"],
        ),
        id,
        n,
    );
    table.seed = Some(seed);
    for r in 0..=r_top {
        let exact_prob = exact.as_ref().map_or(Cell::Missing, |p| p[r].into());
        table.push(vec![
            r.into(),
            h.count(r as u64).into(),
            h.probability(r as u64).into(),
            exact_prob,
            h.stderr(r as u64).into(),
        ]);
    }
    table.summarize("seed", seed);
    table.summarize("trials", trials);
    table.summarize("accepted", h.accepted());
    table.summarize("rejections", h.rejections);
    let tv = exact
        .as_ref()
        .map(|p| h.total_variation(p.iter().enumerate().map(|(r, &q)| (r as u64, q))));
    table.summarize("tv_distance", tv);
    Ok(table)
}

pub fn families() -> Table {
    let mut table = Table::new(
        "families",
        &[
            "id",
            "description",
            "exact_c",
            "sampling",
            "bruteforce_up_to",
        ],
    );
    for f in list_families() {
        table.push(vec![
            f.id.as_str().into(),
            f.description.into(),
            f.exact_c_decomposable.map_or(Cell::Missing, Cell::from),
            f.supports_sampling.into(),
            f.supports_bruteforce_up_to.into(),
        ]);
    }
    table
}
