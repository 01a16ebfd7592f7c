#include "heun_air/solutions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "heun_air/errors.hpp"

namespace heun_air {

const char* classification_name(Classification c) {
    return c == Classification::Liouvillian ? "Liouvillian" : "Hypergeometric";
}

bool Domain::contains(Cx x) const {
    for (Cx e : excluded)
        if (std::abs(x - e) <= 1e-12 * (1.0 + std::abs(e))) return false;
    if (x.imag() != 0.0) return complex_allowed;
    for (auto [lo, hi] : intervals)
        if (x.real() > lo && x.real() < hi) return true;
    return false;
}

namespace {

constexpr double kPi = std::numbers::pi;
const Cx kHalf{0.5};

bool is_real(Cx x) { return x.imag() == 0.0; }

// Fractional power of a secondary base (x - 1, a - x, ...): continued from
// above when the base is negative real.
Jet spow(Jet base, Cx w) { return pow(base, w, Cut::above); }

// Principal power of the main variable.
Jet xpow(Jet x, Cx w) { return pow(x, w, Cut::reject); }

void guard_positive_axis(Cx x) {
    if (x == Cx{}) throw PoleError("x = 0 is a singular point");
    if (is_real(x) && x.real() < 0.0) throw BranchError("x on the negative real axis");
}

void guard_che(Cx x) {
    guard_positive_axis(x);
    if (x == Cx{1.0}) throw PoleError("x = 1 is a singular point");
}

void guard_ghe(Cx x) {
    if (!is_real(x) || !(x.real() > 0.0 && x.real() < 1.0))
        throw DomainError("GHE solutions are evaluated on 0 < x < 1");
}

bool sigma_equals_tau(Cx s, Cx t) { return std::abs(s - t) <= std::abs(s + t); }

std::string fmt(Cx z) {
    std::ostringstream os;
    os.precision(17);
    if (z.imag() == 0.0) os << z.real();
    else os << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
    return os.str();
}

void check_not_nonpositive_integer(Cx c, const char* what) {
    double r = std::round(c.real());
    if (r <= 0.0 && std::abs(c - Cx{r}) <= 1e-9)
        throw ParamError(std::string(what) + " is a nonpositive integer");
}

// ---------------------------------------------------------------- BHE

SolutionBasis bhe_basis_common(const BHEFamily& f) {
    SolutionBasis b;
    b.family = f;
    b.valid_domain.intervals = {{0.0, INFINITY}};
    b.valid_domain.excluded = {Cx{}};
    b.valid_domain.description = "x > 0 (principal sqrt(x)); complex x off the negative real axis";
    b.parameters = {{"sigma", f.sigma}, {"tau", f.tau}};
    return b;
}

SolutionBasis bhe_liouvillian(const BHEFamily& f) {
    SolutionBasis b = bhe_basis_common(f);
    b.classification = Classification::Liouvillian;
    const Cx t = f.tau;
    const Cx sqpi = std::sqrt(kPi);
    if (sigma_equals_tau(f.sigma, f.tau)) {
        b.formula = "bhe.liouvillian.sigma_eq_tau";
        b.y1 = [t](Cx x) {
            guard_positive_axis(x);
            Jet X = variable(x);
            return exp(-X * (X + 2.0 * t) / 2.0) * xpow(X, -0.5);
        };
        b.y2 = [t, sqpi](Cx x) {
            guard_positive_axis(x);
            Jet X = variable(x);
            Jet e = X * (X + 2.0 * t) / 2.0;
            Jet E = chain(erf_like(ErfKind::erfi, x + t), X + t);
            return (sqpi * exp(e) - kPi * t * E * exp(-e - t * t)) * xpow(X, -0.5);
        };
    } else {
        b.formula = "bhe.liouvillian.sigma_eq_minus_tau";
        b.y1 = [t](Cx x) {
            guard_positive_axis(x);
            Jet X = variable(x);
            return exp(X * (X - 2.0 * t) / 2.0) * xpow(X, -0.5);
        };
        b.y2 = [t, sqpi](Cx x) {
            guard_positive_axis(x);
            Jet X = variable(x);
            Jet e = X * (X - 2.0 * t) / 2.0;
            Jet E = chain(erf_like(ErfKind::erf, x - t), X - t);
            return (sqpi * exp(-e) - kPi * t * E * exp(e + t * t)) * xpow(X, -0.5);
        };
    }
    return b;
}

SolutionBasis bhe_general(const BHEFamily& f) {
    SolutionBasis b = bhe_basis_common(f);
    b.classification = Classification::Hypergeometric;
    b.formula = "bhe.general.kummer";
    const Cx s = f.sigma, t = f.tau;
    const Cx A = (t * t - s * s) / 4.0;
    b.valid_domain.excluded.push_back(-s);
    b.valid_domain.description += "; x != -sigma";
    b.parameters["kummer_a"] = A;
    b.expressions["Lambda"] = "sigma^2 + tau^2 + 2*(2*x^2 + (3*sigma - tau)*x - sigma*tau - 1)";
    b.expressions["Z"] = "(x + sigma)^2";

    struct Parts {
        Jet pre, Lambda, Z;
    };
    auto parts = [s, t](Cx x) {
        guard_positive_axis(x);
        if (std::abs(x + s) <= 1e-10 * (1.0 + std::abs(s)))
            throw RemovablePointError("x = -sigma: apparent pole of the printed form");
        Jet X = variable(x);
        Jet Z = (X + s) * (X + s);
        Jet pre = exp(-s * X - X * X / 2.0) / (xpow(X, 0.5) * (X + s));
        Jet L = s * s + t * t + 2.0 * (2.0 * X * X + (3.0 * s - t) * X - s * t - 1.0);
        return Parts{pre, L, Z};
    };
    b.y1 = [parts, A](Cx x) {
        Parts p = parts(x);
        Jet U0 = chain(kummer_u(A, kHalf, p.Z.v), p.Z);
        Jet U1 = chain(kummer_u(A - 1.0, kHalf, p.Z.v), p.Z);
        return p.pre * (p.Lambda * U0 - 4.0 * U1);
    };
    b.y2 = [parts, A, s, t](Cx x) {
        Parts p = parts(x);
        Jet M0 = chain(hyp1f1(A, kHalf, p.Z.v), p.Z);
        Jet M1 = chain(hyp1f1(A - 1.0, kHalf, p.Z.v), p.Z);
        return p.pre * ((t * t - s * s - 2.0) * M1 - p.Lambda * M0);
    };
    return b;
}

// ---------------------------------------------------------------- CHE

SolutionBasis che_basis_common(const CHEFamily& f) {
    SolutionBasis b;
    b.family = f;
    b.valid_domain.intervals = {{0.0, 1.0}, {1.0, INFINITY}};
    b.valid_domain.excluded = {Cx{}, Cx{1.0}};
    b.valid_domain.description = "0 < x < 1 or x > 1; complex x off the negative real axis";
    b.parameters = {{"lambda", f.lambda}, {"sigma", f.sigma}, {"tau", f.tau}};
    b.parameters["mu"] = f.lambda * (1.0 - f.sigma) + 0.5;
    b.parameters["nu"] = f.lambda * std::sqrt(f.tau * f.tau - 2.0 * f.sigma + 1.0);
    return b;
}

SolutionBasis che_liouvillian(const CHEFamily& f) {
    SolutionBasis b = che_basis_common(f);
    b.classification = Classification::Liouvillian;
    const Cx l = f.lambda, t = f.tau;
    if (sigma_equals_tau(f.sigma, f.tau)) {
        b.formula = "che.liouvillian.sigma_eq_tau";
        const Cx bb = 2.0 * (t - 1.0) * l;
        b.parameters["gamma_b"] = bb;
        auto pre = [l, t](Cx x) {
            guard_che(x);
            Jet X = variable(x);
            return xpow(X, (1.0 - t) * l + 0.5) * exp(-l * X) * spow(X - 1.0, -0.5);
        };
        b.y1 = pre;
        b.y2 = [pre, l, bb](Cx x) {
            Jet P = pre(x);
            Jet Z = -2.0 * l * variable(x);
            Jet G1 = chain(inc_gamma_upper(bb + 1.0, Z.v, Cut::above), Z);
            Jet G0 = chain(inc_gamma_upper(bb, Z.v, Cut::above), Z);
            return P * (G1 + 2.0 * l * G0);
        };
    } else {
        b.formula = "che.liouvillian.sigma_eq_minus_tau";
        const Cx bb = 2.0 * (t + 1.0) * l;
        b.parameters["gamma_b"] = bb;
        auto pre = [l, t](Cx x) {
            guard_che(x);
            Jet X = variable(x);
            return xpow(X, -(1.0 + t) * l + 0.5) * exp(l * X) * spow(X - 1.0, -0.5);
        };
        b.y1 = pre;
        b.y2 = [pre, l, bb](Cx x) {
            Jet P = pre(x);
            Jet Z = 2.0 * l * variable(x);
            Jet G1 = chain(inc_gamma_upper(bb + 1.0, Z.v, Cut::above), Z);
            Jet G0 = chain(inc_gamma_upper(bb, Z.v, Cut::above), Z);
            return P * (2.0 * l * G0 - G1);
        };
    }
    return b;
}

SolutionBasis che_general(const CHEFamily& f) {
    SolutionBasis b = che_basis_common(f);
    b.classification = Classification::Hypergeometric;
    b.formula = "che.general.whittaker";
    const Cx l = f.lambda, s = f.sigma, t = f.tau;
    const Cx mu = l * (1.0 - s) + 0.5;
    const Cx nu = l * std::sqrt(t * t - 2.0 * s + 1.0);
    auto wh = [l, nu](WhittakerKind k, Cx m, Cx x) {
        Jet Z = 2.0 * l * variable(x);
        return chain(whittaker(k, m, nu, Z.v, Cut::above), Z);
    };
    auto inv = [](Cx x) {
        guard_che(x);
        return spow(variable(x) - 1.0, -0.5);
    };
    b.y1 = [=](Cx x) {
        Jet g = inv(x);
        return (l * (t + s) * wh(WhittakerKind::M, mu, x) +
                ((1.0 - s) * l - nu) * wh(WhittakerKind::M, mu - 1.0, x)) *
               g;
    };
    b.y2 = [=](Cx x) {
        Jet g = inv(x);
        return (wh(WhittakerKind::W, mu, x) + l * (t - s) * wh(WhittakerKind::W, mu - 1.0, x)) * g;
    };
    return b;
}

// ---------------------------------------------------------------- GHE

struct SigmaT {
    Cx Sigma, T;
};

SigmaT ghe_sigma_t(const GHEFamily& f) {
    const Cx a = f.a, d = f.delta, s = f.sigma, t = f.tau;
    return {std::sqrt((a - 1.0) * (a - 1.0) * d * d - 2.0 * (a - 1.0) * s * d + t * t),
            std::sqrt(a * a * d * d - 2.0 * a * s * d + t * t)};
}

SolutionBasis ghe_basis_common(const GHEFamily& f) {
    SolutionBasis b;
    b.family = f;
    b.valid_domain.intervals = {{0.0, 1.0}};
    b.valid_domain.excluded = {f.a};
    b.valid_domain.complex_allowed = false;
    b.valid_domain.description = "0 < x < 1, x != a";
    b.parameters = {{"a", f.a}, {"delta", f.delta}, {"sigma", f.sigma}, {"tau", f.tau}};
    const auto [S, T] = ghe_sigma_t(f);
    b.parameters["Sigma"] = S;
    b.parameters["T"] = T;
    return b;
}

SolutionBasis ghe_liouvillian(const GHEFamily& f) {
    SolutionBasis b = ghe_basis_common(f);
    b.classification = Classification::Liouvillian;
    const Cx a = f.a, d = f.delta, t = f.tau;
    if (sigma_equals_tau(f.sigma, f.tau)) {
        b.formula = "ghe.liouvillian.sigma_eq_tau";
        const Cx p = 2.0 * (a * d - t), q = 2.0 * ((1.0 - a) * d + t);
        auto pre = [a, d, t](Cx x) {
            guard_ghe(x);
            Jet X = variable(x);
            return xpow(X, t - a * d + 0.5) * spow(X - 1.0, (a - 1.0) * d - t + 0.5) *
                   spow(a - X, -0.5);
        };
        b.y1 = pre;
        b.y2 = [pre, a, p, q](Cx x) {
            Jet P = pre(x);
            Jet X = variable(x);
            Jet B1 = chain(inc_beta(x, 1.0 + p, q, Cut::above), X);
            Jet B0 = chain(inc_beta(x, p, q, Cut::above), X);
            return P * (B1 - a * B0);
        };
    } else {
        b.formula = "ghe.liouvillian.sigma_eq_minus_tau";
        const Cx p = -2.0 * (a * d + t), q = 2.0 * ((a - 1.0) * d + t);
        auto pre = [a, d, t](Cx x) {
            guard_ghe(x);
            Jet X = variable(x);
            return xpow(X, t + a * d + 0.5) * spow(X - 1.0, (1.0 - a) * d - t + 0.5) *
                   spow(a - X, -0.5);
        };
        b.y1 = pre;
        b.y2 = [pre, a, p, q](Cx x) {
            Jet P = pre(x);
            Jet X = variable(x);
            Jet B1 = chain(inc_beta(x, 1.0 + p, q, Cut::above), X);
            Jet B0 = chain(inc_beta(x, p, q, Cut::above), X);
            return P * (B1 - a * B0);
        };
    }
    return b;
}

SolutionBasis ghe_general(const GHEFamily& f) {
    SolutionBasis b = ghe_basis_common(f);
    b.classification = Classification::Hypergeometric;
    b.formula = "ghe.general.gauss";
    const Cx a = f.a, d = f.delta, t = f.tau;
    const auto [S, T] = ghe_sigma_t(f);
    check_not_nonpositive_integer(1.0 - 2.0 * T, "1 - 2T");
    check_not_nonpositive_integer(1.0 + 2.0 * T, "1 + 2T");
    auto pre = [a, S](Cx x) {
        guard_ghe(x);
        Jet X = variable(x);
        return spow(X - 1.0, S + 0.5) * spow(X - a, -0.5);
    };
    auto F = [](Cx p, Cx q, Cx c, Cx x) { return chain(hyp2f1(p, q, c, x), variable(x)); };
    b.y1 = [=](Cx x) {
        Jet P = pre(x);
        Jet X = variable(x);
        Jet t1 = (T - S - d) * (T - S + d - 1.0) / 2.0 *
                 (xpow(X, 2.5 - T) - xpow(X, 1.5 - T)) *
                 F(S + d - T + 1.0, S - d - T + 2.0, 2.0 * (1.0 - T), x);
        Jet t2 = (T - 0.5) * ((a * d - T + t) * xpow(X, 0.5 - T) + (T - S - d) * xpow(X, 1.5 - T)) *
                 F(S + d - T, S - d - T + 1.0, 1.0 - 2.0 * T, x);
        return P * (t1 + t2);
    };
    b.y2 = [=](Cx x) {
        Jet P = pre(x);
        Jet X = variable(x);
        Jet t1 = (T + S + d) * (T + S - d + 1.0) / 2.0 *
                 (xpow(X, 1.5 + T) - xpow(X, 2.5 + T)) *
                 F(S + d + T + 1.0, S - d + T + 2.0, 2.0 * (1.0 + T), x);
        Jet t2 = (T + 0.5) * ((a * d + T + t) * xpow(X, 0.5 + T) - (T + S + d) * xpow(X, 1.5 + T)) *
                 F(S + d + T, S - d + 1.0 + T, 1.0 + 2.0 * T, x);
        return P * (t1 + t2);
    };
    return b;
}

}  // namespace

SolutionBasis solve_bhe(const BHEFamily& f) {
    return is_liouvillian(f) ? bhe_liouvillian(f) : bhe_general(f);
}

SolutionBasis solve_che(const CHEFamily& f) {
    return is_liouvillian(f) ? che_liouvillian(f) : che_general(f);
}

SolutionBasis solve_ghe(const GHEFamily& f) {
    return is_liouvillian(f) ? ghe_liouvillian(f) : ghe_general(f);
}

SolutionBasis solve(const FamilyParams& f) {
    return std::visit([](const auto& g) -> SolutionBasis {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, BHEFamily>) return solve_bhe(g);
        else if constexpr (std::is_same_v<T, CHEFamily>) return solve_che(g);
        else return solve_ghe(g);
    }, f);
}

// ---------------------------------------------------------------- p route

LinearODE pfq_target_ode(const FamilyParams& fp) {
    const Poly X = Poly::x();
    const Cx s = family_sigma(fp), t = family_tau(fp);
    if (auto* f = std::get_if<BHEFamily>(&fp)) {
        (void)f;
        return {RatFun(2.0 * (X - Poly::constant(t))), RatFun(2.0 * (t + s) * X)};
    }
    if (auto* f = std::get_if<CHEFamily>(&fp)) {
        const Cx l = f->lambda;
        Poly n1 = 2.0 * l * (X - Poly::constant(t + 1.0)) - Poly::constant(1.0);
        Poly n0 = 2.0 * (t + s) * l * l * (X - Poly::constant(1.0));
        return {RatFun(n1, X), RatFun(n0, X * X)};
    }
    const auto& g = std::get<GHEFamily>(fp);
    const Cx a = g.a, d = g.delta;
    Poly x1 = X * (X - Poly::constant(1.0));
    Poly n1 = 2.0 * (d - 1.0) * X + Poly::constant(1.0 - 2.0 * (a * d + t));
    Poly n0 = 2.0 * d * (t + s) * (X - Poly::constant(a));
    return {RatFun(n1, x1), RatFun(n0, x1 * x1)};
}

LinearODE intermediary_ode(const FamilyParams& f) { return mobius_nonlocal(pfq_target_ode(f)); }

namespace {

// p basis of companion_p_ode(intermediary) and the gauge G with y_normal = y / G.
struct PRoute {
    Member p1, p2;
    std::function<Jet(Cx)> G;
    std::function<void(Cx)> guard;
};

PRoute bhe_p(const BHEFamily& f) {
    const Cx s = f.sigma, t = f.tau;
    const Cx A = (t * t - s * s) / 4.0;
    auto base = [s, t](Cx x, bool kummer_m, Cx A) {
        Jet X = variable(x);
        Jet Z = (X + s) * (X + s);
        Jet K = kummer_m ? chain(hyp1f1(A, kHalf, Z.v), Z) : chain(kummer_u(A, kHalf, Z.v), Z);
        return X * exp(X * (t - s - X)) * K;
    };
    PRoute r;
    r.p1 = [base, A](Cx x) { return base(x, true, A); };
    r.p2 = [base, A](Cx x) { return base(x, false, A); };
    r.G = [t](Cx x) {
        Jet X = variable(x);
        return xpow(X, 0.5) * exp(-X * X / 2.0 + t * X);
    };
    r.guard = guard_positive_axis;
    return r;
}

PRoute che_p(const CHEFamily& f) {
    const Cx l = f.lambda, s = f.sigma, t = f.tau;
    const Cx mu = l * (1.0 - s) + 0.5;
    const Cx nu = l * std::sqrt(t * t - 2.0 * s + 1.0);
    auto base = [=](Cx x, WhittakerKind k) {
        Jet X = variable(x);
        Jet Z = 2.0 * l * X;
        Jet W = chain(whittaker(k, mu, nu, Z.v, Cut::above), Z);
        return (X - 1.0) * xpow(X, (t + 1.0) * l - 1.5) * exp(-l * X) * W;
    };
    PRoute r;
    r.p1 = [base](Cx x) { return base(x, WhittakerKind::M); };
    r.p2 = [base](Cx x) { return base(x, WhittakerKind::W); };
    r.G = [l, t](Cx x) {
        Jet X = variable(x);
        return xpow(X, l * (1.0 + t) - 0.5) * spow(X - 1.0, 0.5) * exp(-l * X);
    };
    r.guard = guard_che;
    return r;
}

PRoute ghe_p(const GHEFamily& f) {
    const Cx a = f.a, d = f.delta, t = f.tau;
    const auto [S, T] = ghe_sigma_t(f);
    check_not_nonpositive_integer(1.0 - 2.0 * T, "1 - 2T");
    check_not_nonpositive_integer(1.0 + 2.0 * T, "1 + 2T");
    auto pre = [=](Cx x) {
        Jet X = variable(x);
        return (X - a) * xpow(X, -1.0 - a * d - t - T) * spow(X - 1.0, (a - 1.0) * d + t + S - 1.0);
    };
    PRoute r;
    r.p1 = [=](Cx x) {
        return pre(x) * chain(hyp2f1(S + d - T, S - d + 1.0 - T, 1.0 - 2.0 * T, x), variable(x));
    };
    r.p2 = [=](Cx x) {
        Jet X = variable(x);
        return pre(x) * xpow(X, 2.0 * T) *
               chain(hyp2f1(S + d + T, S - d + 1.0 + T, 1.0 + 2.0 * T, x), X);
    };
    r.G = [a, d, t](Cx x) {
        Jet X = variable(x);
        return xpow(X, -t - a * d - 0.5) * spow(X - 1.0, t - (1.0 - a) * d - 0.5) * spow(X - a, 0.5);
    };
    r.guard = guard_ghe;
    return r;
}

}  // namespace

SolutionBasis solve_via_p_route(const FamilyParams& f) {
    if (is_liouvillian(f))
        throw ParamError("the p route is implemented for the general branch only");
    const LinearODE inter = intermediary_ode(f);
    PRoute r = std::visit([](const auto& g) -> PRoute {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, BHEFamily>) return bhe_p(g);
        else if constexpr (std::is_same_v<T, CHEFamily>) return che_p(g);
        else return ghe_p(g);
    }, f);

    SolutionBasis pb = solve(f);  // domain and metadata only
    pb.formula = std::string(family_name(family_of(f))) + ".p_route";
    pb.expressions.clear();
    auto guarded = [g = r.guard](Member m) -> Member {
        return [g, m](Cx x) {
            g(x);
            return m(x);
        };
    };
    pb.y1 = guarded(r.p1);
    pb.y2 = guarded(r.p2);
    SolutionBasis yb = reconstruct_y(pb, inter);

    const RatFun half_c1 = inter.c1 * RatFun(0.5);
    auto gauge = [G = r.G, half_c1](Member ym) -> Member {
        return [G, half_c1, ym](Cx x) {
            Jet y = ym(x);  // y.d is p
            Cx g = G(x).v;
            return Jet{y.v / g, (y.d - rat_eval(half_c1, x) * y.v) / g};
        };
    };
    SolutionBasis out = yb;
    out.y1 = gauge(yb.y1);
    out.y2 = gauge(yb.y2);
    return out;
}

std::vector<EvalRow> eval_basis(const SolutionBasis& b, const std::vector<Cx>& xs) {
    std::vector<EvalRow> rows;
    rows.reserve(xs.size());
    for (Cx x : xs) {
        EvalRow row;
        row.x = x;
        try {
            if (!b.valid_domain.contains(x))
                throw DomainError("x = " + fmt(x) + " outside " + b.valid_domain.description);
            row.y1 = b.y1(x);
            row.y2 = b.y2(x);
            row.ok = true;
            row.status = "ok";
        } catch (const HeunError& e) {
            row.status = std::string(e.kind()) + ": " + e.what();
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace heun_air
