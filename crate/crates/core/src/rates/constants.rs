use num_traits::Float;

use crate::{Error, Result};

/// α-dependent scalars shared by the rate formulas.
///
/// `a_o = e^{-x} sinh x`, `a_e = e^{-x} cosh x`, `a_ebar = e^{-x}(cosh x - 1)`
/// with `x = |α|²`; the `*2` fields are the same at amplitude `2α`
/// (`x → 4|α|²`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BpskConstants {
    pub alpha2: f64,
    pub a_o: f64,
    pub a_e: f64,
    pub a_ebar: f64,
    pub a_o2: f64,
    pub a_ebar2: f64,
    /// `e^{-4|α|²}`
    pub e4: f64,
    /// `e^{-2|α|²}`
    pub e2: f64,
    /// `(1 + e4) / 2`
    pub c_tilde0: f64,
}

pub fn bpsk_constants(alpha2: f64) -> Result<BpskConstants> {
    if !(alpha2 >= 0.0) || !alpha2.is_finite() {
        return Err(Error::Domain { what: "alpha2", value: alpha2 });
    }
    // e^{-x} sinh x = (1 - e^{-2x})/2 and e^{-x}(cosh x - 1) = (1 - e^{-x})²/2
    let odd = |x: f64| -(-2.0 * x).exp_m1() / 2.0;
    let even_bar = |x: f64| {
        let t = -(-x).exp_m1();
        t * t / 2.0
    };
    let e2 = (-2.0 * alpha2).exp();
    let e4 = (-4.0 * alpha2).exp();
    Ok(BpskConstants {
        alpha2,
        a_o: odd(alpha2),
        a_e: (1.0 + e2) / 2.0,
        a_ebar: even_bar(alpha2),
        a_o2: odd(4.0 * alpha2),
        a_ebar2: even_bar(4.0 * alpha2),
        e4,
        e2,
        c_tilde0: (1.0 + e4) / 2.0,
    })
}
