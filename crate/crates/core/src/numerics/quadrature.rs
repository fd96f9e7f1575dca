use alloc::vec::Vec;

use crate::{Error, Result};

// 15-point Kronrod nodes on [0, 1] (symmetric) with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_64, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

const MAX_DEPTH: u32 = 48;

fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive Gauss–Kronrod (7/15) integration of `f` over `[lo, hi]`.
///
/// Intervals are bisected until each one's error estimate is below its share
/// of `abs_tol` (proportional to width). Fails if that needs more than
/// `MAX_DEPTH` halvings or if the integrand produces non-finite values.
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, abs_tol: f64) -> Result<f64> {
    if !(abs_tol > 0.0) || !lo.is_finite() || !hi.is_finite() {
        return Err(crate::error::invalid("integrate_1d needs finite bounds and abs_tol > 0"));
    }
    if lo == hi {
        return Ok(0.0);
    }
    let (a, b, sign) = if lo < hi { (lo, hi, 1.0) } else { (hi, lo, -1.0) };
    let width = b - a;
    let mut total = 0.0;
    let mut stack: Vec<(f64, f64, u32)> = alloc::vec![(a, b, 0)];
    while let Some((x0, x1, depth)) = stack.pop() {
        let (value, err) = kronrod15(&f, x0, x1);
        if !value.is_finite() {
            return Err(Error::Quadrature { lo, hi });
        }
        let budget = abs_tol * (x1 - x0) / width;
        if err <= budget || (x1 - x0) <= 4.0 * f64::EPSILON * x0.abs().max(x1.abs()) {
            total += value;
        } else if depth >= MAX_DEPTH {
            return Err(Error::Quadrature { lo, hi });
        } else {
            let mid = 0.5 * (x0 + x1);
            stack.push((mid, x1, depth + 1));
            stack.push((x0, mid, depth + 1));
        }
    }
    Ok(sign * total)
}
