#include "heun_air/specialfns.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

namespace heun_air {

namespace {

using R = long double;
using C = std::complex<long double>;

constexpr R kPi = 3.141592653589793238462643383279502884L;
constexpr R kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr R kLdEps = std::numeric_limits<R>::epsilon();
// Below half an ulp of the running sum: further terms cannot change it.
constexpr R kSeriesTol = 0.5L * kLdEps;
constexpr R kTiny = 1e-4000L;

C widen(Cx z) { return C(z.real(), z.imag()); }

Cx narrow(C z, const char* what) {
    return checked(Cx(static_cast<double>(z.real()), static_cast<double>(z.imag())), what);
}

bool on_cut(C z) { return z.imag() == 0 && z.real() < 0; }

bool near_nonpos_int(C z, R tol = 1e-9L) {
    R n = std::round(z.real());
    return n <= 0 && std::abs(z - C(n, 0)) <= tol;
}

bool near_int(C z, R tol = 1e-9L) {
    R n = std::round(z.real());
    return std::abs(z - C(n, 0)) <= tol;
}

std::string fmt(C z) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << static_cast<double>(z.real()) << "," << static_cast<double>(z.imag()) << ")";
    return os.str();
}

C log_l(C z, Cut cut) {
    if (z == C(0)) throw DomainError("logarithm of zero");
    if (on_cut(z)) {
        if (cut == Cut::reject) throw BranchError("argument " + fmt(z) + " on the negative real axis");
        return C(std::log(-z.real()), kPi);
    }
    return std::log(z);
}

C pow_l(C base, C w, Cut cut) {
    if (base == C(0)) {
        if (w == C(0)) return C(1);
        if (w.real() > 0) return C(0);
        throw DomainError("zero raised to a power with nonpositive real part");
    }
    return std::exp(w * log_l(base, cut));
}

struct Series {
    C sum;
    R max_term;
};

// Sums 1 + t1 + t2 + ... where t_{k+1} = t_k * ratio(k).
template <class Ratio>
Series sum_series(Ratio ratio, const char* name) {
    C term(1), sum(1);
    R max_term = 1;
    int quiet = 0;
    const std::size_t cap = max_series_terms();
    for (std::size_t k = 0; k < cap; ++k) {
        term *= ratio(static_cast<R>(k));
        sum += term;
        R at = std::abs(term);
        if (at > max_term) max_term = at;
        if (!std::isfinite(at)) throw ConvergenceError(std::string(name) + ": series overflow");
        if (at <= kSeriesTol * std::abs(sum)) {
            if (++quiet >= 3) return {sum, max_term};
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError(std::string(name) + ": series not converged in " + std::to_string(cap) + " terms");
}

C sinpi(C z) {
    R n = std::round(z.real());
    C s = std::sin(kPi * (z - C(n, 0)));
    return std::fmod(std::fabs(n), 2.0L) == 1.0L ? -s : s;
}

C lgamma_stirling(C w) {
    static const R kB[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66,
                           -691.0L / 2730, 7.0L / 6, -3617.0L / 510, 43867.0L / 798, -174611.0L / 330};
    C s = (w - 0.5L) * std::log(w) - w + 0.5L * std::log(2 * kPi);
    C winv = C(1) / w;
    C w2 = winv * winv;
    C p = winv;
    for (int k = 1; k <= 10; ++k) {
        s += kB[k - 1] / static_cast<R>((2 * k) * (2 * k - 1)) * p;
        p *= w2;
    }
    return s;
}

C gamma_l(C z) {
    if (z.real() < 0.5L) {
        C s = sinpi(z);
        if (s == C(0)) throw PoleError("gamma function pole at " + fmt(z));
        return kPi / (s * gamma_l(C(1) - z));
    }
    C prod(1);
    C w = z;
    while (std::abs(w) < 20) {
        prod *= w;
        w += 1;
    }
    return std::exp(lgamma_stirling(w)) / prod;
}

C rgamma_l(C z) {
    if (z.real() < 0.5L) return sinpi(z) * gamma_l(C(1) - z) / kPi;
    return C(1) / gamma_l(z);
}

C m_series(C a, C b, C z) {
    return sum_series([&](R k) { return (a + k) / ((b + k) * (k + 1)) * z; }, "hyp1f1").sum;
}

C m_l(C a, C b, C z) {
    if (near_nonpos_int(b)) throw ParamError("hyp1f1: b = " + fmt(b) + " is a nonpositive integer");
    if (z.real() < 0) return std::exp(z) * m_series(b - a, b, -z);
    return m_series(a, b, z);
}

C u_l(C a, C b, C z, Cut cut) {
    if (near_int(b)) throw ParamError("kummer_u: integer b = " + fmt(b) + " is not supported");
    if (z == C(0)) throw DomainError("kummer_u: z = 0");
    C out(0);
    C r1 = rgamma_l(a + 1.0L - b);
    if (r1 != C(0)) out += gamma_l(1.0L - b) * r1 * m_l(a, b, z);
    C r2 = rgamma_l(a);
    if (r2 != C(0)) out += gamma_l(b - 1.0L) * r2 * pow_l(z, 1.0L - b, cut) * m_l(a - b + 1.0L, 2.0L - b, z);
    return out;
}

C f21_l(C a, C b, C c, C z) {
    if (near_nonpos_int(c)) throw ParamError("hyp2f1: c = " + fmt(c) + " is a nonpositive integer");
    if (std::abs(z) >= 1) throw DomainError("hyp2f1: |z| >= 1 is outside the supported domain");
    auto direct = [&] {
        return sum_series([&](R k) { return (a + k) * (b + k) / ((c + k) * (k + 1)) * z; }, "hyp2f1");
    };
    if (std::abs(z) <= 0.5L) return direct().sum;
    // Pick the better conditioned of the series and its Euler transform.
    Series d{}, e{};
    bool have_d = false, have_e = false;
    try {
        d = direct();
        have_d = true;
    } catch (const ConvergenceError&) {
    }
    try {
        e = sum_series([&](R k) { return (c - a + k) * (c - b + k) / ((c + k) * (k + 1)) * z; }, "hyp2f1");
        have_e = true;
    } catch (const ConvergenceError&) {
    }
    if (!have_d && !have_e) throw ConvergenceError("hyp2f1: no convergent representation");
    C euler_factor = std::pow(C(1) - z, c - a - b);
    if (!have_e) return d.sum;
    if (!have_d) return euler_factor * e.sum;
    R cond_d = d.max_term / std::max(std::abs(d.sum), kTiny);
    R cond_e = e.max_term / std::max(std::abs(e.sum), kTiny);
    return cond_e < cond_d ? euler_factor * e.sum : d.sum;
}

C f01_l(C b, C z) {
    if (near_nonpos_int(b)) throw ParamError("hyp0f1: b = " + fmt(b) + " is a nonpositive integer");
    return sum_series([&](R k) { return z / ((b + k) * (k + 1)); }, "hyp0f1").sum;
}

C erf_series(C z) {
    C z2 = z * z;
    C s = sum_series([&](R k) { return -z2 / (k + 1) * (2 * k + 1) / (2 * k + 3); }, "erf").sum;
    return 2.0L / std::sqrt(kPi) * z * s;
}

// Continued fraction for erfc, valid for Re z > 0 (modified Lentz).
C erfc_cf(C z) {
    C f = z;
    C cc = f, dd(0);
    const std::size_t cap = max_series_terms();
    for (std::size_t n = 1; n <= cap; ++n) {
        R an = static_cast<R>(n) / 2;
        dd = z + an * dd;
        if (dd == C(0)) dd = kTiny;
        cc = z + an / cc;
        if (cc == C(0)) cc = kTiny;
        dd = C(1) / dd;
        C delta = cc * dd;
        f *= delta;
        if (std::abs(delta - C(1)) <= 4 * kLdEps) return std::exp(-z * z) / (std::sqrt(kPi) * f);
    }
    throw ConvergenceError("erfc continued fraction not converged");
}

C erf_l(C z) {
    if (std::abs(z) > 12) throw ConvergenceError("erf: |z| > 12 is outside the guaranteed domain");
    if (std::abs(z) <= 3 || std::fabs(z.real()) <= 1.5L) return erf_series(z);
    if (z.real() < 0) return -(C(1) - erfc_cf(-z));
    return C(1) - erfc_cf(z);
}

// Legendre continued fraction for Gamma(a, z), Re z > 0.
C gamma_upper_cf(C a, C z) {
    C b = z + 1.0L - a;
    C cc = C(1) / kTiny;
    C dd = C(1) / b;
    C h = dd;
    const std::size_t cap = max_series_terms();
    for (std::size_t i = 1; i <= cap; ++i) {
        R ri = static_cast<R>(i);
        C an = -ri * (ri - a);
        b += 2;
        dd = an * dd + b;
        if (dd == C(0)) dd = kTiny;
        cc = b + an / cc;
        if (cc == C(0)) cc = kTiny;
        dd = C(1) / dd;
        C delta = dd * cc;
        h *= delta;
        if (std::abs(delta - C(1)) <= 4 * kLdEps) return std::exp(-z + a * std::log(z)) * h;
    }
    throw ConvergenceError("incomplete gamma continued fraction not converged");
}

C e1_series(C z, Cut cut) {
    C s = sum_series([&](R k) { return -z * (k + 1) / ((k + 2) * (k + 2)); }, "inc_gamma_upper").sum;
    return -kEulerGamma - log_l(z, cut) + z * s;
}

C gamma_upper_series(C a, C z, Cut cut) {
    return gamma_l(a) - pow_l(z, a, cut) / a * m_l(a, a + 1.0L, -z);
}

C gamma_upper_l(C a, C z, Cut cut) {
    if (z == C(0)) {
        if (a.real() > 0) return gamma_l(a);
        throw DomainError("inc_gamma_upper: z = 0 requires Re(a) > 0");
    }
    if (on_cut(z) && cut == Cut::reject)
        throw BranchError("inc_gamma_upper: z = " + fmt(z) + " on the negative real axis");
    if (z.real() > 0 && std::abs(z) > 3 && std::abs(z) > a.real()) return gamma_upper_cf(a, z);
    const C ez = std::exp(-z);
    R n0 = std::round(a.real());
    if (n0 <= 0 && std::abs(a - C(n0, 0)) < 1e-12L) {
        C g = e1_series(z, cut);
        for (R s = -1; s >= n0; s -= 1) g = (g - pow_l(z, C(s), cut) * ez) / s;
        return g;
    }
    if (a.real() < 0.5L) {
        int n = static_cast<int>(std::ceil(0.5L - a.real()));
        C g = gamma_upper_series(a + static_cast<R>(n), z, cut);
        for (int k = n - 1; k >= 0; --k) {
            C s = a + static_cast<R>(k);
            g = (g - pow_l(z, s, cut) * ez) / s;
        }
        return g;
    }
    return gamma_upper_series(a, z, cut);
}

}  // namespace

std::size_t max_series_terms() {
    static const std::size_t cap = [] {
        const char* env = std::getenv("HEUN_AIR_MAX_TERMS");
        if (env != nullptr) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(10000);
    }();
    return cap;
}

Cx gamma_fn(Cx z) { return narrow(gamma_l(widen(z)), "gamma"); }

Cx rgamma(Cx z) { return narrow(rgamma_l(widen(z)), "rgamma"); }

Cx cpow(Cx base, Cx w, Cut cut) { return narrow(pow_l(widen(base), widen(w), cut), "power"); }

Cx clog(Cx z, Cut cut) { return narrow(log_l(widen(z), cut), "logarithm"); }

FnValue hyp1f1(Cx a, Cx b, Cx z) {
    C al = widen(a), bl = widen(b), zl = widen(z);
    C v = m_l(al, bl, zl);
    C d = (al / bl) * m_l(al + 1.0L, bl + 1.0L, zl);
    return {narrow(v, "hyp1f1"), narrow(d, "hyp1f1 derivative")};
}

FnValue kummer_u(Cx a, Cx b, Cx z, Cut cut) {
    C al = widen(a), bl = widen(b), zl = widen(z);
    C v = u_l(al, bl, zl, cut);
    C d = al == C(0) ? C(0) : -al * u_l(al + 1.0L, bl + 1.0L, zl, cut);
    return {narrow(v, "kummer_u"), narrow(d, "kummer_u derivative")};
}

FnValue hyp2f1(Cx a, Cx b, Cx c, Cx z) {
    C al = widen(a), bl = widen(b), cl = widen(c), zl = widen(z);
    C v = f21_l(al, bl, cl, zl);
    C d = al * bl == C(0) ? C(0) : (al * bl / cl) * f21_l(al + 1.0L, bl + 1.0L, cl + 1.0L, zl);
    return {narrow(v, "hyp2f1"), narrow(d, "hyp2f1 derivative")};
}

FnValue hyp0f1(Cx b, Cx z) {
    C bl = widen(b), zl = widen(z);
    C v = f01_l(bl, zl);
    C d = f01_l(bl + 1.0L, zl) / bl;
    return {narrow(v, "hyp0f1"), narrow(d, "hyp0f1 derivative")};
}

FnValue whittaker(WhittakerKind kind, Cx mu, Cx nu, Cx z, Cut cut) {
    C m = widen(mu), n = widen(nu), zl = widen(z);
    if (zl == C(0)) throw DomainError("whittaker: z = 0");
    C a = 0.5L - m + n;
    C b = 1.0L + 2.0L * n;
    C inner, inner_d;
    if (kind == WhittakerKind::M) {
        if (near_nonpos_int(b)) throw ParamError("whittaker M: 1 + 2 nu is a nonpositive integer");
        inner = m_l(a, b, zl);
        inner_d = (a / b) * m_l(a + 1.0L, b + 1.0L, zl);
    } else {
        inner = u_l(a, b, zl, cut);
        inner_d = a == C(0) ? C(0) : -a * u_l(a + 1.0L, b + 1.0L, zl, cut);
    }
    C pref = pow_l(zl, n + 0.5L, cut) * std::exp(-zl / 2.0L);
    C v = pref * inner;
    C d = pref * (((n + 0.5L) / zl - 0.5L) * inner + inner_d);
    return {narrow(v, "whittaker"), narrow(d, "whittaker derivative")};
}

FnValue erf_like(ErfKind kind, Cx z) {
    C zl = widen(z);
    const R two_over_sqrt_pi = 2.0L / std::sqrt(kPi);
    if (kind == ErfKind::erf) {
        C v = erf_l(zl);
        C d = two_over_sqrt_pi * std::exp(-zl * zl);
        return {narrow(v, "erf"), narrow(d, "erf derivative")};
    }
    const C i(0, 1);
    C v = -i * erf_l(i * zl);
    C d = two_over_sqrt_pi * std::exp(zl * zl);
    return {narrow(v, "erfi"), narrow(d, "erfi derivative")};
}

FnValue inc_gamma_upper(Cx a, Cx z, Cut cut) {
    C al = widen(a), zl = widen(z);
    C v = gamma_upper_l(al, zl, cut);
    C d;
    if (zl == C(0)) {
        if (al.real() > 1) d = 0;
        else if (al == C(1)) d = -1;
        else throw DomainError("inc_gamma_upper: derivative unbounded at z = 0");
    } else {
        d = -pow_l(zl, al - 1.0L, cut) * std::exp(-zl);
    }
    return {narrow(v, "inc_gamma_upper"), narrow(d, "inc_gamma_upper derivative")};
}

FnValue inc_beta(Cx x, Cx a, Cx b, Cut cut) {
    C xl = widen(x), al = widen(a), bl = widen(b);
    if (xl.imag() == 0 && xl.real() >= 1) throw BranchError("inc_beta: x on [1, inf)");
    if (near_nonpos_int(al)) throw ParamError("inc_beta: a is a nonpositive integer");
    C v = pow_l(xl, al, cut) / al * f21_l(al, 1.0L - bl, al + 1.0L, xl);
    C d = pow_l(xl, al - 1.0L, cut) * std::pow(C(1) - xl, bl - 1.0L);
    return {narrow(v, "inc_beta"), narrow(d, "inc_beta derivative")};
}

}  // namespace heun_air
