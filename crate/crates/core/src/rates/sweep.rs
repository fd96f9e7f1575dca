use alloc::vec::Vec;

use super::{c_sd, comp_homodyne, comp_lower_collective, comp_onoff, comp_upper, Detection};
use crate::{Error, Result};

/// All rates at one photon number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub alpha2: f64,
    pub c_sd: f64,
    pub comp_lower: f64,
    pub comp_onoff: f64,
    pub comp_homodyne: f64,
    pub comp_upper: f64,
    /// Gains (percent) of collective, on-off and homodyne computation rates
    /// over `c_sd`; zero where `c_sd` vanishes.
    pub gains: [f64; 3],
}

impl RatePoint {
    pub fn at(alpha2: f64) -> Result<Self> {
        let c_sd = c_sd(alpha2)?.rate;
        let comp_lower = comp_lower_collective(alpha2)?;
        let comp_onoff = comp_onoff(alpha2)?;
        let comp_homodyne = comp_homodyne(alpha2)?;
        let comp_upper = comp_upper(alpha2)?;
        let g = |r: f64| if c_sd > 0.0 { gain(r, c_sd) } else { Ok(0.0) };
        let point = RatePoint {
            alpha2,
            c_sd,
            comp_lower,
            comp_onoff,
            comp_homodyne,
            comp_upper,
            gains: [g(comp_lower)?, g(comp_onoff)?, g(comp_homodyne)?],
        };
        point.check()?;
        Ok(point)
    }

    fn check(&self) -> Result<()> {
        const SLACK: f64 = 1e-9;
        let rates = [self.c_sd, self.comp_lower, self.comp_onoff, self.comp_homodyne, self.comp_upper];
        let in_range = rates.iter().all(|r| (-SLACK..=1.0 + SLACK).contains(r));
        let ordered = self.comp_onoff <= self.comp_lower + SLACK
            && self.comp_lower <= self.comp_upper + SLACK
            && self.comp_homodyne <= self.comp_upper + SLACK;
        if in_range && ordered && self.gains.iter().all(|g| g.is_finite()) {
            Ok(())
        } else {
            Err(crate::error::invalid(alloc::format!("rate ordering violated at alpha2 = {}", self.alpha2)))
        }
    }

    /// Computation rate for `detection`.
    pub fn comp(&self, detection: Detection) -> f64 {
        match detection {
            Detection::Collective => self.comp_lower,
            Detection::OnOff => self.comp_onoff,
            Detection::Homodyne => self.comp_homodyne,
        }
    }
}

/// Rate points on a strictly increasing photon-number grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RateCurve {
    points: Vec<RatePoint>,
}

impl RateCurve {
    pub fn points(&self) -> &[RatePoint] {
        &self.points
    }
}

pub fn sweep(alpha2_grid: &[f64]) -> Result<RateCurve> {
    if alpha2_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(crate::error::invalid("alpha2 grid must be strictly increasing"));
    }
    let points = alpha2_grid.iter().map(|&a| RatePoint::at(a)).collect::<Result<Vec<_>>>()?;
    Ok(RateCurve { points })
}

/// `100 (rate_x - rate_y) / rate_y`.
pub fn gain(rate_x: f64, rate_y: f64) -> Result<f64> {
    if !(rate_y > 0.0) {
        return Err(Error::Domain { what: "gain reference rate", value: rate_y });
    }
    Ok(100.0 * (rate_x - rate_y) / rate_y)
}

pub fn comp_rate(detection: Detection, alpha2: f64) -> Result<f64> {
    match detection {
        Detection::Collective => comp_lower_collective(alpha2),
        Detection::OnOff => comp_onoff(alpha2),
        Detection::Homodyne => comp_homodyne(alpha2),
    }
}

/// Search interval for [`threshold`].
pub const THRESHOLD_BRACKET: (f64, f64) = (1e-4, 2.0);
const THRESHOLD_SCAN: usize = 40;
const THRESHOLD_TOL: f64 = 1e-4;

/// Smallest photon number at which `comp_rate(detection) - c_sd` turns
/// positive: a coarse scan of the bracket locates the first sign change,
/// bisection narrows it to `1e-4`.
pub fn threshold(detection: Detection) -> Result<f64> {
    let diff = |a: f64| -> Result<f64> { Ok(comp_rate(detection, a)? - c_sd(a)?.rate) };
    let (lo, hi) = THRESHOLD_BRACKET;
    let mut prev = (lo, diff(lo)?);
    let mut bracket = None;
    for k in 1..=THRESHOLD_SCAN {
        let a = lo + (hi - lo) * k as f64 / THRESHOLD_SCAN as f64;
        let d = diff(a)?;
        if prev.1 < 0.0 && d >= 0.0 {
            bracket = Some((prev.0, a));
            break;
        }
        prev = (a, d);
    }
    let (mut a, mut b) = bracket.ok_or(Error::NoCrossing { lo, hi })?;
    while b - a > THRESHOLD_TOL {
        let mid = 0.5 * (a + b);
        if diff(mid)? < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
