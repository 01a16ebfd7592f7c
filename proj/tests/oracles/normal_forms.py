"""Independent evaluation of the printed normal-form coefficients q(x)
(y'' = q y) for the three solvable families, term by term."""
from mpmath import mp, mpf, mpc

mp.dps = 30


def q_bhe(s, t, x):
    return x**2 + 2*s*x + t**2 + t/x + mpf(3)/(4*x**2)


def q_che(l, s, t, x):
    return (l**2 + (2*(s - 1)*l**2 - t*l + mpf(1)/2)/x + (t*l - mpf(1)/2)/(x - 1)
            + ((t**2 - 2*s + 1)*l**2 - mpf(1)/4)/x**2 + mpf(3)/(4*(x - 1)**2))


def q_ghe(a, d, s, t, x):
    h = mpf(1)/2
    return ((2*a**2*(a - 1)*d**2 - 2*s*a*(2*a - 1)*d + (2*t**2 - h)*a + t + h)/(a*x)
            - 2*(a*(a - 1)**2*d**2 - s*(2*a - 1)*(a - 1)*d + (t - h)*((t + h)*a - t))/((a - 1)*(x - 1))
            + (t - a + h)/(a*(a - 1)*(x - a))
            + (a**2*d**2 - 2*a*s*d + t**2 - mpf(1)/4)/x**2
            + ((a - 1)**2*d**2 - 2*s*(a - 1)*d + t**2 - mpf(1)/4)/(x - 1)**2
            + mpf(3)/(4*(x - a)**2))


cases = [
    ("BHE", (mpf("0.3"), mpf("0.9")), q_bhe, [mpf("0.4"), mpf("1.1"), mpc("0.7", "0.2")]),
    ("CHE", (mpf("0.8"), mpf("0.2"), mpf("0.6")), q_che, [mpf("0.3"), mpf("1.5"), mpc("2", "-0.5")]),
    ("GHE", (mpf(2), mpf("0.5"), mpf("0.1"), mpf("0.4")), q_ghe, [mpf("0.2"), mpf("0.5"), mpc("0.8", "0.3")]),
    ("GHE", (mpf("2.7"), mpf("-1.3"), mpf("0.6"), mpf("-0.2")), q_ghe, [mpf("0.35"), mpc("1.9", "0.4")]),
]
for name, p, q, xs in cases:
    for x in xs:
        v = mpc(q(*p, x))
        print(name, [str(c) for c in p], str(x), mp.nstr(v.real, 20), mp.nstr(v.imag, 20))
