use num_traits::Float;

use alloc::vec::Vec;

use crate::{Error, Result};

/// Pearson chi-square goodness-of-fit result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Upper tail `P(X >= x)` of a chi-square variable with `dof` degrees of freedom.
pub fn chi_square_sf(x: f64, dof: usize) -> f64 {
    assert!(dof > 0, "chi-square needs at least one degree of freedom");
    if x <= 0.0 {
        return 1.0;
    }
    gamma_q(0.5 * dof as f64, 0.5 * x)
}

/// Regularized upper incomplete gamma `Q(a, x)`: power series below `a + 1`,
/// Lentz continued fraction above.
fn gamma_q(a: f64, x: f64) -> f64 {
    let log_prefix = a * x.ln() - x - libm::lgamma(a);
    if x < a + 1.0 {
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut ap = a;
        for _ in 0..10_000 {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * 1e-16 {
                break;
            }
        }
        (1.0 - sum * log_prefix.exp()).max(0.0)
    } else {
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (log_prefix.exp() * h).min(1.0)
    }
}

/// Chi-square test of `counts` against the uniform distribution over the cells.
///
/// Refuses tables whose expected count per cell is below 20.
pub fn chi_square_uniform(counts: &[u64]) -> Result<ChiSquare> {
    if counts.len() < 2 {
        return Err(crate::error::invalid("chi-square needs at least two cells"));
    }
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    if expected < 20.0 {
        return Err(Error::InsufficientSamples { expected });
    }
    let statistic = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let dof = counts.len() - 1;
    Ok(ChiSquare { statistic, dof, p_value: chi_square_sf(statistic, dof) })
}

/// Chi-square test that the rows of `table` share one distribution over the
/// columns. Columns that are empty in every row are dropped; a single
/// surviving column is trivially homogeneous.
///
/// Refuses tables with an expected count below 20 in some cell.
pub fn chi_square_homogeneity(table: &[Vec<u64>]) -> Result<ChiSquare> {
    let cols = table.first().map_or(0, |r| r.len());
    if table.len() < 2 || table.iter().any(|r| r.len() != cols) {
        return Err(crate::error::invalid("homogeneity test needs at least two rows of equal length"));
    }
    let row_sums: Vec<u64> = table.iter().map(|r| r.iter().sum()).collect();
    let col_sums: Vec<u64> = (0..cols).map(|c| table.iter().map(|r| r[c]).sum()).collect();
    let total: u64 = row_sums.iter().sum();
    let live: Vec<usize> = (0..cols).filter(|&c| col_sums[c] > 0).collect();
    if live.len() < 2 {
        return Ok(ChiSquare { statistic: 0.0, dof: 0, p_value: 1.0 });
    }
    let mut statistic = 0.0;
    for (r, row) in table.iter().enumerate() {
        for &c in &live {
            let expected = row_sums[r] as f64 * col_sums[c] as f64 / total as f64;
            if expected < 20.0 {
                return Err(Error::InsufficientSamples { expected });
            }
            let d = row[c] as f64 - expected;
            statistic += d * d / expected;
        }
    }
    let dof = (table.len() - 1) * (live.len() - 1);
    Ok(ChiSquare { statistic, dof, p_value: chi_square_sf(statistic, dof) })
}
