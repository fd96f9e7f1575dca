//! Expected values come from tools/oracle_values.py (mpmath, 50 digits,
//! independent eigensolver and quadrature).

use super::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn constants_identities() {
    for x in [0.0, 1e-6, 0.3, 1.0, 4.0, 50.0] {
        let k = bpsk_constants(x).unwrap();
        assert!(close(k.a_o + k.a_e, 1.0, 1e-12));
        assert!(close(k.a_ebar, k.a_e - (-x).exp(), 1e-12));
        assert!(close(k.c_tilde0, (1.0 + k.e4) / 2.0, 1e-12));
        assert!(close(k.c_tilde0 + k.a_o2 / 2.0 + k.a_ebar2 / 2.0, 1.0, 1e-12));
    }
    let vac = bpsk_constants(0.0).unwrap();
    assert_eq!((vac.a_o, vac.a_e, vac.a_ebar, vac.c_tilde0), (0.0, 1.0, 0.0, 1.0));
    let one = bpsk_constants(1.0).unwrap();
    assert!(close(one.a_o, 0.432332358381694, 1e-14));
    assert!(close(one.a_ebar, 0.199788200446864, 1e-14));
    assert!(close(one.a_o2, 0.499832268686049, 1e-14));
    assert!(close(one.a_ebar2, 0.481852092425217, 1e-14));
    let big = bpsk_constants(50.0).unwrap();
    assert!(close(big.a_o, 0.5, 1e-12) && big.e4 < 1e-12);
    assert!(bpsk_constants(-0.1).is_err());
    assert!(bpsk_constants(f64::NAN).is_err());
}

#[test]
fn upper_bound_values() {
    assert_eq!(comp_upper(0.0).unwrap(), 0.0);
    assert!(close(comp_upper(1.0).unwrap(), 0.986747430039656, 1e-12));
    assert!(close(comp_upper(50.0).unwrap(), 1.0, 1e-10));
}

#[test]
fn collective_lower_bound_values() {
    assert!(close(comp_lower_collective(0.0).unwrap(), 0.0, 1e-15));
    assert!(close(comp_lower_collective(1.0).unwrap(), 0.981575439235537, 1e-12));
    assert!(close(comp_lower_collective(50.0).unwrap(), 1.0, 1e-9));
}

#[test]
fn uniform_state_matches_joint_state() {
    for x in [0.05, 0.5, 1.0, 2.0, 7.0] {
        let direct = crate::numerics::von_neumann_entropy(&uniform_sum_output_state(x).unwrap()).unwrap();
        assert!(close(direct, i_ab(0.5, 0.5, x).unwrap(), 1e-10));
        let k = bpsk_constants(x).unwrap();
        let lhs = comp_lower_collective(x).unwrap();
        let rhs = i_ab(0.5, 0.5, x).unwrap() - 0.5 * binary_entropy(k.a_o2).unwrap();
        assert!(close(lhs, rhs, 1e-10));
    }
    let ev = crate::numerics::sym_eigenvalues(&uniform_sum_output_state(1.0).unwrap());
    for (got, want) in ev.iter().zip([0.51714551573, 0.249916134343, 0.232938349927]) {
        assert!(close(*got, want, 1e-11));
    }
}

#[test]
fn onoff_values() {
    assert_eq!(comp_onoff(0.0).unwrap(), 0.0);
    assert!(close(comp_onoff(1.0).unwrap(), 0.933820035937944, 1e-12));
    assert!(close(comp_onoff(0.3).unwrap(), 0.492160758466818, 1e-12));
    assert!(close(comp_onoff(1.5).unwrap(), 0.987481493617537, 1e-12));
    assert!(close(comp_onoff(50.0).unwrap(), 1.0, 1e-10));
}

#[test]
fn homodyne_values() {
    assert!(close(comp_homodyne(0.0).unwrap(), 0.0, 1e-9));
    assert!(close(comp_homodyne(0.5).unwrap(), 0.615405884646748, 1e-9));
    let one = comp_homodyne(1.0).unwrap();
    assert!(close(one, 0.877776327186412, 1e-9));
    assert!(one > 0.0 && one < comp_onoff(1.0).unwrap());
    assert!(close(comp_homodyne(2.0).unwrap(), 0.986580030853582, 1e-9));
    assert!(close(comp_homodyne(50.0).unwrap(), 1.0, 1e-6));
}

#[test]
fn conditional_information() {
    assert!(close(i_a_given_b(0.5, 1.0).unwrap(), comp_upper(1.0).unwrap(), 1e-12));
    for x in [0.2, 1.0, 3.0] {
        assert!(close(i_a_given_b(0.0, x).unwrap(), 0.0, 1e-12));
        assert!(close(i_a_given_b(1.0, x).unwrap(), 0.0, 1e-12));
    }
    assert!(i_a_given_b(1.5, 1.0).is_err());
}

#[test]
fn joint_information() {
    assert!(close(i_ab(0.5, 0.5, 1.0).unwrap(), 1.48157539864705, 1e-12));
    for x in [0.0, 0.7, 4.0] {
        assert!(close(i_ab(1.0, 0.0, x).unwrap(), 0.0, 1e-12));
    }
    assert!(close(i_ab(0.5, 0.5, 50.0).unwrap(), 1.5, 1e-9));
}

#[test]
fn sd_rate_values() {
    let zero = c_sd(0.0).unwrap();
    assert!(close(zero.rate, 0.0, 1e-12));
    let one = c_sd(1.0).unwrap();
    assert!(close(one.rate, 0.740787699323526, 1e-9), "{one:?}");
    assert!(close(one.p_a0, 0.5, 1e-3) && close(one.p_b0, 0.5, 1e-3));
    assert!((one.rate - 0.75).abs() < 0.02);
    assert!(close(c_sd(50.0).unwrap().rate, 0.75, 1e-3));
}

#[test]
fn sd_rate_never_below_uniform() {
    for x in [0.01, 0.1, 0.4, 1.3, 3.0] {
        let opt = c_sd(x).unwrap();
        assert!(opt.rate >= sd_objective(0.5, 0.5, x).unwrap());
    }
}

#[test]
fn large_amplitude_limit() {
    assert!(close(i_max_inf_objective(0.5, 0.5).unwrap(), 1.5, 1e-15));
    assert_eq!(i_max_inf_objective(1.0, 1.0).unwrap(), 0.0);
    let opt = i_max_inf().unwrap();
    assert!(close(opt.rate, 1.5, 1e-12));
    assert!(close(opt.p_a0, 0.5, 1e-3) && close(opt.p_b0, 0.5, 1e-3));
}

#[test]
fn gain_examples() {
    assert!(close(gain(1.0, 0.75).unwrap(), 100.0 / 3.0, 1e-12));
    assert_eq!(gain(0.4, 0.4).unwrap(), 0.0);
    assert!(close(gain(0.9816, 0.7408).unwrap(), 32.5, 0.05));
    assert!(gain(1.0, 0.0).is_err());
}

#[test]
fn thresholds_bracket_reference_crossings() {
    // crossings from the 50-digit oracle: 0.187489, 0.461365, 0.617089
    for (d, want) in [(Detection::Collective, 0.187489), (Detection::OnOff, 0.461365), (Detection::Homodyne, 0.617089)]
    {
        let t = threshold(d).unwrap();
        assert!(close(t, want, 2e-4), "{d:?}: {t}");
    }
}

#[test]
fn sweep_examples() {
    let curve = sweep(&[0.0]).unwrap();
    let p = curve.points()[0];
    for v in [p.c_sd, p.comp_lower, p.comp_onoff, p.comp_homodyne, p.comp_upper] {
        assert!(v.abs() < 1e-9);
    }
    assert_eq!(p.gains, [0.0; 3]);

    let p = sweep(&[1.0]).unwrap().points()[0];
    assert!(close(p.comp_upper, 0.986747430039656, 1e-10));
    assert!(close(p.comp_lower, 0.981575439235537, 1e-10));
    assert!(close(p.comp_onoff, 0.933820035937944, 1e-10));
    assert!(close(p.c_sd, 0.740787699323526, 1e-9));
    assert!(close(p.comp_homodyne, 0.877776327186412, 1e-9));

    let curve = sweep(&[0.5, 1.0, 2.0]).unwrap();
    let xs: alloc::vec::Vec<f64> = curve.points().iter().map(|p| p.alpha2).collect();
    assert_eq!(xs, [0.5, 1.0, 2.0]);
    assert!(sweep(&[1.0, 1.0]).is_err());
    assert!(sweep(&[2.0, 1.0]).is_err());
}

#[test]
fn small_photon_numbers_vanish() {
    let p = RatePoint::at(1e-4).unwrap();
    for v in [p.c_sd, p.comp_lower, p.comp_onoff, p.comp_homodyne] {
        assert!(v < 2e-3, "{p:?}");
    }
}

#[test]
fn measured_sd_rates_below_collective() {
    for x in [0.3, 1.0] {
        let coll = c_sd(x).unwrap().rate;
        for m in [Measurement::OnOff, Measurement::Homodyne] {
            let r = c_sd_measured(m, x).unwrap().rate;
            assert!(r > 0.0 && r <= coll + 1e-9, "{m:?} at {x}: {r} vs {coll}");
        }
    }
}

#[test]
fn measured_onoff_objective_closed_form() {
    // I(A;Z|B) for the click channel: Σ_b P_B(b) [h(P_A(b) q) - P_A(b) h(q)], q = 1 - e^{-4x}
    let x = 0.8;
    let q = 1.0 - (-4.0 * x).exp();
    let (pa, pb) = (0.3, 0.6);
    let h = |t: f64| binary_entropy(t).unwrap();
    let i_a_b = pb * (h(pa * q) - pa * h(q)) + (1.0 - pb) * (h((1.0 - pa) * q) - (1.0 - pa) * h(q));
    let i_b_a = pa * (h(pb * q) - pb * h(q)) + (1.0 - pa) * (h((1.0 - pb) * q) - (1.0 - pb) * h(q));
    let p_same = pa * pb + (1.0 - pa) * (1.0 - pb);
    let p_on = [pa * pb * q, (1.0 - pa) * (1.0 - pb) * q];
    let i_joint = {
        let h_z = h(p_on[0] + p_on[1]);
        h_z - p_same * h(q)
    };
    let want = i_a_b.min(i_b_a).min(0.5 * i_joint);
    let pair = induced_pair_channel(Measurement::OnOff, x).unwrap();
    assert!(close(sd_objective_measured(&pair, pa, pb).unwrap(), want, 1e-12));
}
