use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::basis::TrialBasis;
use crate::quadrature::composite_rule;
use crate::solvers::ModeSet;

/// Largest wave number considered when pairing computed modes.
const MAX_WAVE_NUMBER: usize = 6;
const CONTENT_ORDER: usize = 10;
const CONTENT_PANELS: usize = 6;

/// One computed frequency with its exact simply supported counterpart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyRow {
    pub m: usize,
    pub n: usize,
    pub omega_est: f64,
    pub omega_exact: f64,
    /// `(ω_est − ω_exact) / ω_exact`.
    pub rel_err: f64,
}

/// `π²(m² + n²)` for the simply supported unit square with unit rigidity
/// and density.
pub fn ss_plate_frequency(m: usize, n: usize) -> f64 {
    PI * PI * (m * m + n * n) as f64
}

/// Normalized squared sine coefficients of a mode: entry `(m-1, n-1)` is
/// the share of `sin(mπx) sin(nπy)` among all wave numbers up to the limit.
pub fn modal_content(basis: &TrialBasis, coeffs: &[f64]) -> DMatrix<f64> {
    let rule = composite_rule(CONTENT_ORDER, CONTENT_PANELS, 0.0, 1.0).expect("valid rule");
    let (nodes, weights) = (rule.nodes(), rule.weights());
    let q = nodes.len();
    // u on the tensor grid, row-major in (x, y).
    let mut u = DMatrix::zeros(q, q);
    for (i, &x) in nodes.iter().enumerate() {
        for (j, &y) in nodes.iter().enumerate() {
            u[(i, j)] = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * basis.eval(k, &[x, y]).value)
                .sum();
        }
    }
    let s = DMatrix::from_fn(MAX_WAVE_NUMBER, q, |m, i| {
        weights[i] * ((m + 1) as f64 * PI * nodes[i]).sin()
    });
    let mut content = (&s * u * s.transpose()).map(|c| c * c);
    let total = content.sum();
    if total > 0.0 {
        content /= total;
    }
    content
}

/// Assign the lowest `count` modes to wave numbers `(m, n)`. Each mode takes
/// the free pair with the largest sine content. The two modes of a class
/// `{(m, n), (n, m)}` are usually even mixtures, so within a class the lower
/// frequency is labelled with `m < n`.
pub fn pair_frequencies(modes: &ModeSet, basis: &TrialBasis, count: usize) -> Vec<FrequencyRow> {
    let mut free: Vec<(usize, usize)> = (1..=MAX_WAVE_NUMBER)
        .flat_map(|m| (1..=MAX_WAVE_NUMBER).map(move |n| (m, n)))
        .collect();
    let mut rows = Vec::new();
    for (idx, &omega) in modes.frequencies.iter().take(count).enumerate() {
        let coeffs: Vec<f64> = modes.modes.column(idx).iter().copied().collect();
        let content = modal_content(basis, &coeffs);
        // Degenerate partners share their content so that a mixed mode
        // still selects its frequency class.
        let class = |&(m, n): &(usize, usize)| content[(m - 1, n - 1)] + content[(n - 1, m - 1)];
        let Some(&chosen) = free.iter().max_by(|a, b| {
            class(a)
                .total_cmp(&class(b))
                .then(content[(a.0 - 1, a.1 - 1)].total_cmp(&content[(b.0 - 1, b.1 - 1)]))
                .then(b.cmp(a))
        }) else {
            break;
        };
        free.retain(|&p| p != chosen);
        let exact = ss_plate_frequency(chosen.0, chosen.1);
        rows.push(FrequencyRow {
            m: chosen.0,
            n: chosen.1,
            omega_est: omega,
            omega_exact: exact,
            rel_err: (omega - exact) / exact,
        });
    }
    for i in 0..rows.len() {
        let (m, n) = (rows[i].m, rows[i].n);
        if m > n {
            if let Some(j) = rows.iter().position(|r| (r.m, r.n) == (n, m)) {
                if rows[j].omega_est > rows[i].omega_est {
                    let (lo, hi) = (rows[i].omega_est, rows[j].omega_est);
                    rows[j] = relabel(rows[j], lo);
                    rows[i] = relabel(rows[i], hi);
                }
            }
        }
    }
    rows
}

fn relabel(row: FrequencyRow, omega: f64) -> FrequencyRow {
    FrequencyRow {
        omega_est: omega,
        rel_err: (omega - row.omega_exact) / row.omega_exact,
        ..row
    }
}

/// Rows with `m, n ≤ size`, ordered by `(m, n)`.
pub fn frequency_block(rows: &[FrequencyRow], size: usize) -> Vec<FrequencyRow> {
    let mut block: Vec<FrequencyRow> = rows
        .iter()
        .copied()
        .filter(|r| r.m <= size && r.n <= size)
        .collect();
    block.sort_by_key(|r| (r.m, r.n));
    block
}
