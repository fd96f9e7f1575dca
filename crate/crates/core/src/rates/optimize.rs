use crate::Result;

/// Maximum of an objective over product priors `(P_A(0), P_B(0))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorOptimum {
    pub rate: f64,
    pub p_a0: f64,
    pub p_b0: f64,
}

const GRID: usize = 100;
const REFINE_TOL: f64 = 1e-6;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Maximizes `objective` on `[0,1]²`: a 101×101 grid, then coordinate-wise
/// golden-section refinement around the best grid point to `1e-6` in prior
/// space. Never returns less than the best grid value (the grid contains the
/// uniform prior).
pub fn maximize_over_priors<F>(objective: F) -> Result<PriorOptimum>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let mut best = PriorOptimum { rate: f64::NEG_INFINITY, p_a0: 0.5, p_b0: 0.5 };
    for i in 0..=GRID {
        for j in 0..=GRID {
            let (pa, pb) = (i as f64 / GRID as f64, j as f64 / GRID as f64);
            let v = objective(pa, pb)?;
            if v > best.rate {
                best = PriorOptimum { rate: v, p_a0: pa, p_b0: pb };
            }
        }
    }

    let step = 1.0 / GRID as f64;
    let mut current = best;
    for _round in 0..20 {
        let before = current.rate;
        let (pa, va) =
            golden_max(|x| objective(x, current.p_b0), (current.p_a0 - step).max(0.0), (current.p_a0 + step).min(1.0))?;
        if va > current.rate {
            current = PriorOptimum { rate: va, p_a0: pa, ..current };
        }
        let (pb, vb) =
            golden_max(|x| objective(current.p_a0, x), (current.p_b0 - step).max(0.0), (current.p_b0 + step).min(1.0))?;
        if vb > current.rate {
            current = PriorOptimum { rate: vb, p_b0: pb, ..current };
        }
        if current.rate - before <= 1e-15 {
            break;
        }
    }
    Ok(if current.rate >= best.rate { current } else { best })
}

fn golden_max<F: Fn(f64) -> Result<f64>>(f: F, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > REFINE_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        }
    }
    let mid = 0.5 * (lo + hi);
    let fm = f(mid)?;
    Ok([(x1, f1), (x2, f2), (mid, fm)].into_iter().fold((mid, fm), |acc, c| if c.1 > acc.1 { c } else { acc }))
}
