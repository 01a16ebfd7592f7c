"""Independent high-precision reference values for the special-function tests.

Each value is computed from a defining series or integral with mpmath at 40
digits, without calling mpmath's own implementation of the function.
Run:  python3 tests/oracles/special_values.py
"""
from mpmath import mp, mpf, quad, gamma, exp, sqrt, pi, inf, fac, rf

mp.dps = 40


def series_1f1(a, b, z, n=200):
    return sum(rf(a, k) / rf(b, k) * z**k / fac(k) for k in range(n))


def series_2f1(a, b, c, z, n=400):
    return sum(rf(a, k) * rf(b, k) / rf(c, k) * z**k / fac(k) for k in range(n))


def series_0f1(b, z, n=200):
    return sum(z**k / (rf(b, k) * fac(k)) for k in range(n))


def laplace_u(a, b, z):
    # t = s**(1/a) absorbs the t**(a-1) endpoint singularity
    f = lambda s: exp(-z * s ** (1 / a)) * (1 + s ** (1 / a)) ** (b - a - 1) / a
    return quad(f, [0, 1, 10, inf]) / gamma(a)


def erf_series(z, n=200):
    return 2 / sqrt(pi) * sum((-1) ** k * z ** (2 * k + 1) / (fac(k) * (2 * k + 1)) for k in range(n))


values = {}
values["hyp1f1(0.25,0.5,1.0)"] = series_1f1(mpf("0.25"), mpf("0.5"), mpf(1))
values["hyp1f1'(0.25,0.5,1.0)"] = mpf("0.25") / mpf("0.5") * series_1f1(mpf("1.25"), mpf("1.5"), mpf(1))
values["U(0.25,0.5,2.0)"] = laplace_u(mpf("0.25"), mpf("0.5"), mpf(2))
values["U'(0.25,0.5,2.0)"] = -mpf("0.25") * laplace_u(mpf("1.25"), mpf("1.5"), mpf(2))
values["U(1,0.5,1.0)"] = laplace_u(mpf(1), mpf("0.5"), mpf(1))
values["hyp2f1(0.3,0.7,1.1,0.4)"] = series_2f1(mpf("0.3"), mpf("0.7"), mpf("1.1"), mpf("0.4"))
values["hyp0f1(1.5,-2.25)"] = series_0f1(mpf("1.5"), mpf("-2.25"))
mu, nu, z = mpf("0.3"), mpf("0.4"), mpf(1)
values["WhitM(0.3,0.4,1.0)"] = z ** (nu + mpf(1) / 2) * exp(-z / 2) * series_1f1(mpf(1) / 2 - mu + nu, 1 + 2 * nu, z)
values["WhitW(0.3,0.4,1.0)"] = z ** (nu + mpf(1) / 2) * exp(-z / 2) * laplace_u(mpf(1) / 2 - mu + nu, 1 + 2 * nu, z)
values["erf(1)"] = erf_series(mpf(1))
values["Gamma(0.5,1.2)"] = quad(lambda t: t ** mpf("-0.5") * exp(-t), [mpf("1.2"), 10, inf])
ab = mpf("0.7")
values["B_0.4(0.7,1.3)"] = quad(lambda s: (1 - s ** (1 / ab)) ** mpf("0.3") / ab, [0, mpf("0.4") ** ab])

for k, v in values.items():
    print(f"{k:28s} {mp.nstr(v, 20)}")
