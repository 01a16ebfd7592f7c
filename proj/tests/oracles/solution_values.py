"""Reference values of the closed-form basis members, evaluated with
mpmath's own special functions. Negative bases use the principal branch
(arg = +pi), i.e. continuation from the upper half plane."""
from mpmath import mp, mpf, mpc, sqrt, exp, pi, erf, erfi, hyperu, hyp1f1, whitm, whitw, gammainc, betainc, hyp2f1

mp.dps = 40
h = mpf(1) / 2


def bhe(s, t, x):
    if s == t:
        y1 = exp(-x*(x + 2*t)/2)/sqrt(x)
        y2 = (sqrt(pi)*exp(x*(x + 2*t)/2) - pi*t*erfi(x + t)*exp(-x*(x + 2*t)/2 - t**2))/sqrt(x)
        return y1, y2
    if s == -t:
        y1 = exp(x*(x - 2*t)/2)/sqrt(x)
        y2 = (sqrt(pi)*exp(-x*(x - 2*t)/2) - pi*t*erf(x - t)*exp(x*(x - 2*t)/2 + t**2))/sqrt(x)
        return y1, y2
    A = (t**2 - s**2)/4
    Z = (x + s)**2
    pre = exp(-s*x - x**2/2)/(sqrt(x)*(x + s))
    L = s**2 + t**2 + 2*(2*x**2 + (3*s - t)*x - s*t - 1)
    y1 = pre*(L*hyperu(A, h, Z) - 4*hyperu(A - 1, h, Z))
    y2 = pre*((t**2 - s**2 - 2)*hyp1f1(A - 1, h, Z) - L*hyp1f1(A, h, Z))
    return y1, y2


def che(l, s, t, x):
    xm = mpc(x - 1)
    if s == t:
        pre = x**((1 - t)*l + h)*exp(-l*x)/sqrt(xm)
        b = 2*(t - 1)*l
        z = mpc(-2*l*x)
        return pre, pre*(gammainc(b + 1, z) + 2*l*gammainc(b, z))
    if s == -t:
        pre = x**(-(1 + t)*l + h)*exp(l*x)/sqrt(xm)
        b = 2*(t + 1)*l
        z = mpc(2*l*x)
        return pre, pre*(2*l*gammainc(b, z) - gammainc(b + 1, z))
    mu = l*(1 - s) + h
    nu = l*sqrt(mpc(t**2 - 2*s + 1))
    Z = mpc(2*l*x)
    y1 = (l*(t + s)*whitm(mu, nu, Z) + ((1 - s)*l - nu)*whitm(mu - 1, nu, Z))/sqrt(xm)
    y2 = (whitw(mu, nu, Z) + l*(t - s)*whitw(mu - 1, nu, Z))/sqrt(xm)
    return y1, y2


def B(x, p, q):
    return betainc(p, q, 0, x)


def ghe(a, d, s, t, x):
    xm = mpc(x - 1)
    if s == t:
        pre = x**(t - a*d + h)*xm**((a - 1)*d - t + h)/sqrt(a - x)
        p, q = 2*(a*d - t), 2*((1 - a)*d + t)
        return pre, pre*(B(x, 1 + p, q) - a*B(x, p, q))
    if s == -t:
        pre = x**(t + a*d + h)*xm**((1 - a)*d - t + h)/sqrt(a - x)
        p, q = -2*(a*d + t), 2*((a - 1)*d + t)
        return pre, pre*(B(x, 1 + p, q) - a*B(x, p, q))
    S = sqrt(mpc((a - 1)**2*d**2 - 2*(a - 1)*s*d + t**2))
    T = sqrt(mpc(a**2*d**2 - 2*a*s*d + t**2))
    pre = xm**(S + h)/sqrt(mpc(x - a))
    y1 = pre*((T - S - d)*(T - S + d - 1)*(x**(mpf(5)/2 - T) - x**(mpf(3)/2 - T))/2
              * hyp2f1(S + d - T + 1, S - d - T + 2, 2*(1 - T), x)
              + (T - h)*((a*d - T + t)*x**(h - T) + (T - S - d)*x**(mpf(3)/2 - T))
              * hyp2f1(S + d - T, S - d - T + 1, 1 - 2*T, x))
    y2 = pre*((T + S + d)*(T + S - d + 1)*(x**(mpf(3)/2 + T) - x**(mpf(5)/2 + T))/2
              * hyp2f1(S + d + T + 1, S - d + T + 2, 2*(1 + T), x)
              + (T + h)*((a*d + T + t)*x**(h + T) - (T + S + d)*x**(mpf(3)/2 + T))
              * hyp2f1(S + d + T, S - d + 1 + T, 1 + 2*T, x))
    return y1, y2


def show(tag, ys):
    for k, y in enumerate(ys, 1):
        y = mpc(y)
        print(f"{tag} y{k} = ({mp.nstr(y.real, 20)}, {mp.nstr(y.imag, 20)})")


M = mpf
show("BHE(1,1) x=0.5", bhe(M(1), M(1), M("0.5")))
show("BHE(1,-1) x=0.5", bhe(M(1), M(-1), M("0.5")))
show("BHE(0.3,0.9) x=0.4", bhe(M("0.3"), M("0.9"), M("0.4")))
show("BHE(-0.7,0.2) x=1.3", bhe(M("-0.7"), M("0.2"), M("1.3")))
show("CHE(1,0.5,0.5) x=0.3", che(M(1), M("0.5"), M("0.5"), M("0.3")))
show("CHE(-0.6,0.4,-0.4) x=1.7", che(M("-0.6"), M("0.4"), M("-0.4"), M("1.7")))
show("CHE(0.8,0.2,0.6) x=0.3", che(M("0.8"), M("0.2"), M("0.6"), M("0.3")))
show("CHE(0.8,0.2,0.6) x=1.5", che(M("0.8"), M("0.2"), M("0.6"), M("1.5")))
show("GHE(2,0.5,0.3,0.3) x=0.4", ghe(M(2), M("0.5"), M("0.3"), M("0.3"), M("0.4")))
show("GHE(2.5,-0.7,0.2,-0.2) x=0.6", ghe(M("2.5"), M("-0.7"), M("0.2"), M("-0.2"), M("0.6")))
show("GHE(2,0.5,0.1,0.4) x=0.5", ghe(M(2), M("0.5"), M("0.1"), M("0.4"), M("0.5")))
