#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "heun_air/basis.hpp"
#include "heun_air/forms.hpp"
#include "heun_air/numkernel.hpp"

namespace testutil {

using heun_air::Cx;

inline double rel(Cx a, Cx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline double rel_floor(Cx a, Cx b, double floor = 1.0) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(unsigned long long seed) : eng(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
    Cx cx(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
};

// Fourth-order central difference of f at x with step h.
template <class F>
Cx fd4(F&& f, Cx x, double h) {
    return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
}

// Random ODE with low-degree rational coefficients and c0 != 0.
inline heun_air::LinearODE random_ode(Rng& rng) {
    using heun_air::Poly;
    using heun_air::RatFun;
    auto poly = [&rng](int deg, bool monic) {
        std::vector<Cx> c(static_cast<std::size_t>(deg + 1));
        for (auto& v : c) v = rng.cx(-2, 2);
        if (monic) c.back() = 1.0;
        return Poly(c);
    };
    RatFun c1(poly(rng.integer(0, 2), false), poly(rng.integer(0, 2), true));
    RatFun c0(poly(rng.integer(0, 2), false), poly(rng.integer(1, 2), true));
    return {c1, c0};
}

inline double nonzero(Rng& rng, double lo, double hi, double gap = 0.1) {
    double v;
    do v = rng.uniform(lo, hi);
    while (std::abs(v) < gap);
    return v;
}

// A family draw with parameters in [-2, 2] (GHE a in [1.5, 3]) together with
// a pole-free check interval.
struct Draw {
    heun_air::FamilyParams f;
    double lo, hi;
};

// general: |sigma^2 - tau^2| > 0.1; otherwise sigma = +-tau.
inline Draw random_draw(Rng& rng, heun_air::Family fam, bool general = true, bool minus = false) {
    using namespace heun_air;
    double s, t;
    do {
        s = rng.uniform(-2, 2);
        t = rng.uniform(-2, 2);
    } while (general && std::abs(s * s - t * t) <= 0.1);
    if (!general) s = minus ? -t : t;
    switch (fam) {
        case Family::BHE: return {BHEFamily{s, t}, 0.3, 2.0};
        case Family::CHE: {
            const double lambda = nonzero(rng, -2, 2);
            if (rng.integer(0, 1)) return {CHEFamily(lambda, s, t), 0.2, 0.8};
            return {CHEFamily(lambda, s, t), 1.2, 3.0};
        }
        case Family::GHE: {
            const double a = rng.uniform(1.5, 3), delta = nonzero(rng, -2, 2);
            return {GHEFamily(a, delta, s, t), 0.15, 0.85};
        }
    }
    return {BHEFamily{s, t}, 0.3, 2.0};
}

// Writes u = k1 y1 + k2 y2 with k fitted from (u, u') at xs[fit] and returns
// the largest relative mismatch at the other points; cond receives
// (|y1 y2'| + |y2 y1'|) / |W| at the fit point.
inline double span_error(const heun_air::SolutionBasis& direct, const heun_air::Member& u,
                         const std::vector<Cx>& xs, std::size_t fit, double* cond = nullptr) {
    using heun_air::Jet;
    Jet a = direct.y1(xs[fit]), b = direct.y2(xs[fit]), t = u(xs[fit]);
    Cx det = a.v * b.d - b.v * a.d;
    if (cond) *cond = (std::abs(a.v * b.d) + std::abs(b.v * a.d)) / std::abs(det);
    Cx k1 = (t.v * b.d - b.v * t.d) / det, k2 = (a.v * t.d - t.v * a.d) / det;
    double worst = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        if (j == fit) continue;
        Jet p = direct.y1(xs[j]), q = direct.y2(xs[j]), w = u(xs[j]);
        double scale = std::max({std::abs(k1 * p.v), std::abs(k2 * q.v), std::abs(w.v)});
        worst = std::max(worst, std::abs(k1 * p.v + k2 * q.v - w.v) / scale);
    }
    return worst;
}

// |d/dx value (4th order FD) - analytic derivative|, relative.
inline double derivative_mismatch(const heun_air::Member& m, Cx x, double h = 1e-3) {
    auto val = [&m](Cx u) { return m(u).v; };
    Cx fd = fd4(val, x, h), an = m(x).d;
    return std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), 1e-300});
}

}  // namespace testutil
