"""Extended-precision reference values for the closed-form model.

Evaluates the T1(z) resolvent, the line-shape terms and the line-profile
density with mpmath at 50 significant digits, straight from the textbook
expressions (no regrouping), and prints them as C++ literals.  The output
is frozen into tests/golden_values.hpp; rerun this script only to audit it.
"""
import mpmath as mp

mp.mp.dps = 50

ROWS = {
    "a": dict(lam=mp.mpc(0, 250), c1_sq=mp.mpf(25), d=mp.mpf("1.25e7"), b2=mp.mpf("-0.052")),
    "b": dict(lam=mp.mpc(0, 250), c1_sq=mp.mpf(9), d=mp.mpf("1.25e7"), b2=mp.mpf("-0.144")),
    "c": dict(lam=mp.mpc(0, 300), c1_sq=mp.mpf("0.25"), d=mp.mpf("1.15e7"), b2=mp.mpf("-5.170")),
    "d": dict(lam=mp.mpc(0, 250), c1_sq=mp.mpf("0.09"), d=mp.mpf("1.05e7"), b2=mp.mpf("-14.281")),
}
E1 = mp.mpf(0)
E2 = mp.mpf(102697)
D0 = mp.mpf(1)


def b1_of(p):
    return -1 / (4 * mp.pi * p["c1_sq"])


def t1(z, p):
    b1, d, b2 = b1_of(p), p["d"], p["b2"]
    s = z - E1
    den = (-mp.pi * 1j + mp.log(s / D0) + d**2 * mp.log(d / D0) / s**2
           - mp.pi * d / (2 * s) - b2 * (d**2 + s**2) / (b1 * s**2))
    return b1 * (d**2 + s**2) / s**2 / den


def terms(w, p):
    b1, d, b2 = b1_of(p), p["d"], p["b2"]
    bracket = (mp.log(w / D0) + d**2 / w**2 * mp.log(d / D0) - mp.pi * d / (2 * w)
               - b2 * (d**2 + w**2) / (b1 * w**2))
    f = (d**2 + w**2) / (4 * mp.pi * p["c1_sq"] * w**4) / (mp.pi**2 + bracket**2)
    de = mp.re(p["lam"]) - f * (w**2 * mp.log(w / D0) + d**2 * mp.log(d / D0)
                                - mp.pi / 2 * d * w - b2 / b1 * (d**2 + w**2))
    g = 2 * (mp.im(p["lam"]) + mp.pi * w**2 * f)
    return f, de, g, bracket


def density(w, p):
    f, de, g, _ = terms(w, p)
    return f / (2 * mp.pi) / ((w + E1 - E2 - de) ** 2 + g**2 / 4)


def kernel(z, p):
    s = z - E1
    d = p["d"]
    val = mp.quad(lambda w: w**2 / (d**2 + w**2) / (s - w) ** 2, [0, abs(s), d, 10 * d, mp.inf])
    return 4 * mp.pi * p["c1_sq"] * val


def lit(x):
    return mp.nstr(x, 20, min_fixed=-1, max_fixed=-1)


def cpp_complex(v):
    return f"{{{lit(mp.re(v))}, {lit(mp.im(v))}}}"


if __name__ == "__main__":
    out = ["// Generated by tests/oracles/closed_form_golden.py (mpmath, 50 digits). Do not edit.",
           "", "#pragma once", "", "#include <complex>", "", "namespace golden {", "",
           "struct RowValues {",
           "    const char* preset;",
           "    std::complex<double> t1_at_e2_plus_100i;",
           "    double omega[3];       // E21 - 1000, E21, E21 + 1000",
           "    double f[3];",
           "    double delta_e[3];",
           "    double gamma[3];",
           "    double bracket[3];",
           "    double density[3];",
           "};", "", "inline constexpr RowValues kRows[] = {"]
    for key, p in ROWS.items():
        v = t1(E2 + 100j, p)
        ws = [E2 - E1 - 1000, E2 - E1, E2 - E1 + 1000]
        cols = [terms(w, p) for w in ws]
        arr = lambda xs: "{" + ", ".join(lit(x) for x in xs) + "}"
        out.append(f'    {{"table1-{key}", {cpp_complex(v)},')
        out.append(f"     {arr(ws)},")
        out.append(f"     {arr([c[0] for c in cols])},")
        out.append(f"     {arr([c[1] for c in cols])},")
        out.append(f"     {arr([c[2] for c in cols])},")
        out.append(f"     {arr([c[3] for c in cols])},")
        out.append(f"     {arr([density(w, p) for w in ws])}}},")
    out.append("};")
    out.append("")
    out.append("// J(z) for row a.")
    for name, zz in [("kKernelAtID", E1 + 1j * ROWS["a"]["d"]), ("kKernelAt1e3ID", E1 + 1j * 1000 * ROWS["a"]["d"]),
                     ("kKernelNearLine", E2 + 50 + 300j)]:
        out.append(f"inline const std::complex<double> {name}{cpp_complex(kernel(zz, ROWS['a']))};")
    out.append("")
    out.append("} // namespace golden")
    print("\n".join(out))
