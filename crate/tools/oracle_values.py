"""High-precision reference values for the rate tests.

Independent of the Rust implementation: uses mpmath at 50 digits with
mpmath's own symmetric eigensolver and quadrature.
"""
import mpmath as mp

mp.mp.dps = 50


def eta(x):
    return mp.mpf(0) if x == 0 else -x * mp.log(x, 2)


def h(x):
    return eta(x) + eta(1 - x)


def consts(a2):
    a2 = mp.mpf(a2)
    return dict(
        a_o=mp.exp(-a2) * mp.sinh(a2),
        a_e=mp.exp(-a2) * mp.cosh(a2),
        a_ebar=mp.exp(-a2) * (mp.cosh(a2) - 1),
        a_o2=mp.exp(-4 * a2) * mp.sinh(4 * a2),
        a_ebar2=mp.exp(-4 * a2) * (mp.cosh(4 * a2) - 1),
        e4=mp.exp(-4 * a2),
        e2=mp.exp(-2 * a2),
    )


def vn(m):
    ev = mp.eigsy(mp.matrix(m))[0]
    return sum(eta(max(mp.mpf(0), ev[i])) for i in range(len(ev))), ev


def i_ab(pa, pb, a2):
    c = consts(a2)
    pa, pb = mp.mpf(pa), mp.mpf(pb)
    p00, p11 = pa * pb, (1 - pa) * (1 - pb)
    pab = p00 + p11
    c0 = (pa * (1 - pb) + (1 - pa) * pb) + pab * c["e4"]
    c1 = (p00 - p11) * mp.sqrt(c["a_ebar2"] * c["a_o2"])
    c2 = (p00 - p11) * mp.sqrt(c["a_o2"]) * c["e2"]
    c3 = pab * mp.sqrt(c["a_ebar2"]) * c["e2"]
    m = [[c0, c2, c3], [c2, pab * c["a_o2"], c1], [c3, c1, pab * c["a_ebar2"]]]
    return vn(m)


def i_a_given_b(pa, a2):
    c = consts(a2)
    off = (1 - 2 * mp.mpf(pa)) * mp.sqrt(c["a_o"] * c["a_e"])
    return vn([[c["a_o"], off], [off, c["a_e"]]])[0]


def comp_lower(a2):
    c = consts(a2)
    off = mp.sqrt(c["a_ebar2"]) * c["e2"] / 2
    m = [[(1 + c["e4"]) / 2, off, 0], [off, c["a_ebar2"] / 2, 0], [0, 0, c["a_o2"] / 2]]
    v, ev = vn(m)
    return v - h(c["a_o2"]) / 2, v, ev


def comp_onoff(a2):
    c = consts(a2)
    return h((1 + c["e4"]) / 2) - h(c["e4"]) / 2


def comp_homodyne(a2):
    s = 2 * mp.sqrt(mp.mpf(a2))
    k = mp.sqrt(2 / mp.pi)
    u = lambda x: mp.mpf(0) if x == 0 else -x * mp.log(x)
    g1 = lambda y: mp.exp(-2 * (y - s) ** 2) / 4 + mp.exp(-2 * (y + s) ** 2) / 4 + mp.exp(-2 * y ** 2) / 2
    g2 = lambda y: mp.exp(-2 * (y - s) ** 2) / 2 + mp.exp(-2 * (y + s) ** 2) / 2
    pts = [-s - 8, -s, 0, s, s + 8]
    h1 = mp.quad(lambda y: k * u(g1(y)), pts)
    h2 = mp.quad(lambda y: k * u(g2(y)), pts)
    return (h1 - h2 / 2 - mp.mpf(1) / 4) / mp.log(2)


def sd_objective(pa, pb, a2):
    return min(i_a_given_b(pa, a2), i_a_given_b(pb, a2), i_ab(pa, pb, a2)[0] / 2)


def c_sd_grid(a2, n=41):
    best = (mp.mpf(-1), None)
    for i in range(n + 1):
        for j in range(i, n + 1):
            v = sd_objective(mp.mpf(i) / n, mp.mpf(j) / n, a2)
            if v > best[0]:
                best = (v, (i / n, j / n))
    return best


if __name__ == "__main__":
    print("h(e^-4) =", mp.nstr(h(mp.exp(-4)), 15))
    c = consts(1)
    for k, v in c.items():
        print(k, mp.nstr(v, 15))
    print("comp_upper(1) =", mp.nstr(h(c["a_o"]), 15))
    cl, v3, ev = comp_lower(1)
    print("H3(1) =", mp.nstr(v3, 15), "eig", [mp.nstr(e, 12) for e in ev])
    print("comp_lower(1) =", mp.nstr(cl, 15))
    print("i_ab(.5,.5,1) =", mp.nstr(i_ab(0.5, 0.5, 1)[0], 15))
    print("comp_onoff(1) =", mp.nstr(comp_onoff(1), 15))
    print("comp_onoff(0.3) =", mp.nstr(comp_onoff(0.3), 15))
    print("comp_onoff(1.5) =", mp.nstr(comp_onoff(1.5), 15))
    for a2 in (0.5, 1, 2):
        print("comp_homodyne(%s) =" % a2, mp.nstr(comp_homodyne(a2), 15))
    print("c_sd grid(1) =", c_sd_grid(1, 20))
    print("sd uniform(1) =", mp.nstr(sd_objective(0.5, 0.5, 1), 15))
    for a2 in (0.1, 0.18, 0.3, 0.45, 0.62):
        print("a2", a2, "c_sd", c_sd_grid(a2, 20), "lower", mp.nstr(comp_lower(a2)[0], 8),
              "onoff", mp.nstr(comp_onoff(a2), 8), "hom", mp.nstr(comp_homodyne(a2), 8))
    m = [[0.509158, 0.046974], [0.046974, 0.240926]]
    print("2x2 eig", mp.eigsy(mp.matrix(m))[0])
