#include "heun_air/verify.hpp"

#include <algorithm>
#include <cmath>

#include "heun_air/errors.hpp"
#include "heun_air/solutions.hpp"

namespace heun_air {

const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::partial: return "partial";
    }
    return "fail";
}

void VerificationReport::add(const std::vector<CheckRow>& more) {
    rows.insert(rows.end(), more.begin(), more.end());
}

void VerificationReport::finalize() {
    max_residual = wronskian_drift = rk_max_rel_error = 0.0;
    points_checked = 0;
    bool over = false, errored = false;
    for (const CheckRow& r : rows) {
        if (r.check == "evaluation") {
            errored = true;
            continue;
        }
        ++points_checked;
        if (!r.passed) over = true;
        double v = std::isnan(r.value) ? INFINITY : r.value;
        if (r.check == "residual") max_residual = std::max(max_residual, v);
        else if (r.check == "wronskian") wronskian_drift = std::max(wronskian_drift, v);
        else if (r.check == "rk45") rk_max_rel_error = std::max(rk_max_rel_error, v);
    }
    if (over || points_checked == 0) status = Status::fail;
    else status = errored ? Status::partial : Status::pass;
}

namespace {

CheckRow error_row(Cx x, int member, const HeunError& e) {
    CheckRow r;
    r.check = "evaluation";
    r.x = x;
    r.member = member;
    r.value = NAN;
    r.note = std::string(e.kind()) + ": " + e.what();
    return r;
}

bool under(double v, double tol) { return std::isfinite(v) && v <= tol; }

}  // namespace

double residual_at(const LinearODE& ode, const Member& m, Cx x) {
    const double h = 1e-4 * std::max(1.0, std::abs(x));
    Cx d2 = (-m(x + 2.0 * h).d + 8.0 * m(x + h).d - 8.0 * m(x - h).d + m(x - 2.0 * h).d) /
            (12.0 * h);
    Jet y = m(x);
    Cx c0 = rat_eval(ode.c0, x), c1 = rat_eval(ode.c1, x);
    double scale = std::max({1.0, std::abs(c0 * y.v), std::abs(c1 * y.d)});
    return std::abs(d2 - c1 * y.d - c0 * y.v) / scale;
}

std::vector<CheckRow> residual_check(const LinearODE& ode, const SolutionBasis& basis,
                                     const std::vector<Cx>& xs, double tol) {
    std::vector<CheckRow> rows;
    for (Cx x : xs) {
        for (int k = 1; k <= 2; ++k) {
            const Member& m = k == 1 ? basis.y1 : basis.y2;
            try {
                CheckRow r;
                r.check = "residual";
                r.x = x;
                r.member = k;
                r.value = residual_at(ode, m, x);
                r.tolerance = tol;
                r.passed = under(r.value, tol);
                rows.push_back(r);
            } catch (const HeunError& e) {
                rows.push_back(error_row(x, k, e));
            }
        }
    }
    return rows;
}

std::vector<CheckRow> wronskian_check(const SolutionBasis& basis, const std::vector<Cx>& xs,
                                      double tol) {
    std::vector<CheckRow> rows;
    std::optional<Cx> W0;
    double cond = 0.0;
    for (Cx x : xs) {
        try {
            Jet a = basis.y1(x), b = basis.y2(x);
            Cx W = a.v * b.d - b.v * a.d;
            double scale = std::abs(a.v * b.d) + std::abs(b.v * a.d);
            CheckRow r;
            r.check = "wronskian";
            r.x = x;
            r.tolerance = tol;
            if (!W0) {
                if (!(std::abs(W) > 1e-10 * scale)) {
                    r.value = INFINITY;
                    r.note = "basis members are linearly dependent";
                    rows.push_back(r);
                    return rows;
                }
                W0 = W;
            }
            cond = std::max(cond, scale / std::abs(W));
            r.value = std::abs(W - *W0) / std::abs(*W0);
            r.passed = under(r.value, tol);
            r.note = "conditioning " + std::to_string(cond);
            rows.push_back(r);
        } catch (const HeunError& e) {
            rows.push_back(error_row(x, 0, e));
        }
    }
    return rows;
}

RKResult rk45_integrate(const RHS& f, double x0, State y0, double x1, double rtol, double atol) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    RKResult res{y0, 0, 0};
    const double span = x1 - x0;
    if (span == 0.0) return res;
    const double dir = span > 0 ? 1.0 : -1.0;
    const double hmin = 1e-12 * std::abs(span);
    double h = dir * std::min(std::abs(span), 1e-3 * std::max(1.0, std::abs(span)));
    double x = x0;
    State y = y0;
    State k1 = f(x, y);
    auto axpy = [](const State& y, std::initializer_list<std::pair<double, const State*>> terms,
                   double h) {
        State out = y;
        for (auto [c, k] : terms)
            for (int i = 0; i < 2; ++i) out[i] += h * c * (*k)[i];
        return out;
    };
    while (dir * (x1 - x) > 0.0) {
        if (dir * (x + h - x1) > 0.0) h = x1 - x;
        State k2 = f(x + c2 * h, axpy(y, {{a21, &k1}}, h));
        State k3 = f(x + c3 * h, axpy(y, {{a31, &k1}, {a32, &k2}}, h));
        State k4 = f(x + c4 * h, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
        State k5 = f(x + c5 * h, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
        State k6 = f(x + h,
                     axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
        State yn = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
        State k7 = f(x + h, yn);
        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            Cx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                        e7 * k7[i]);
            double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(yn[i]));
            err += std::norm(e) / (sc * sc);
        }
        err = std::sqrt(err / 2.0);
        if (!std::isfinite(err)) throw NonFiniteError("non-finite value during integration");
        if (err <= 1.0) {
            x += h;
            y = yn;
            k1 = k7;
            ++res.accepted;
        } else {
            ++res.rejected;
        }
        double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (err > 1.0) factor = std::min(factor, 1.0);
        h *= factor;
        if (std::abs(h) < hmin && dir * (x1 - x) > hmin)
            throw StiffnessError("step size collapsed below 1e-12 of the interval");
    }
    res.y = y;
    return res;
}

std::vector<CheckRow> rk45_compare(const LinearODE& ode, const SolutionBasis& basis, double x0,
                                   std::pair<double, double> interval, double tol,
                                   std::size_t samples) {
    const auto [lo, hi] = interval;
    RHS rhs = [&ode](double x, const State& s) -> State {
        Cx X{x};
        return {s[1], rat_eval(ode.c1, X) * s[1] + rat_eval(ode.c0, X) * s[0]};
    };
    std::vector<double> below, above;
    for (std::size_t i = 0; i < samples; ++i) {
        double x = samples == 1 ? lo : lo + (hi - lo) * double(i) / double(samples - 1);
        bool skip = false;
        for (Cx e : basis.valid_domain.excluded)
            if (std::abs(Cx{x} - e) < 0.05) skip = true;
        if (skip) continue;
        (x < x0 ? below : above).push_back(x);
    }
    std::sort(below.begin(), below.end(), std::greater<>());
    std::sort(above.begin(), above.end());

    std::vector<CheckRow> rows;
    for (int k = 1; k <= 2; ++k) {
        const Member& m = k == 1 ? basis.y1 : basis.y2;
        State start;
        try {
            Jet j = m(Cx{x0});
            start = {j.v, j.d};
        } catch (const HeunError& e) {
            rows.push_back(error_row(Cx{x0}, k, e));
            continue;
        }
        struct Sample {
            double x;
            State rk, exact;
        };
        std::vector<Sample> got;
        std::vector<CheckRow> local;
        for (const auto* side : {&below, &above}) {
            State y = start;
            double x = x0;
            for (double xs : *side) {
                try {
                    y = rk45_integrate(rhs, x, y, xs).y;
                    x = xs;
                    Jet ex = m(Cx{xs});
                    got.push_back({xs, y, {ex.v, ex.d}});
                } catch (const StiffnessError&) {
                    throw;
                } catch (const HeunError& e) {
                    local.push_back(error_row(Cx{xs}, k, e));
                }
            }
        }
        double sup0 = 0.0, sup1 = 0.0;
        for (const Sample& s : got) {
            sup0 = std::max(sup0, std::abs(s.exact[0]));
            sup1 = std::max(sup1, std::abs(s.exact[1]));
        }
        for (const Sample& s : got) {
            CheckRow r;
            r.check = "rk45";
            r.x = Cx{s.x};
            r.member = k;
            double d0 = sup0 > 0 ? std::abs(s.rk[0] - s.exact[0]) / sup0 : 0.0;
            double d1 = sup1 > 0 ? std::abs(s.rk[1] - s.exact[1]) / sup1 : 0.0;
            r.value = std::max(d0, d1);
            r.tolerance = tol;
            r.passed = under(r.value, tol);
            rows.push_back(r);
        }
        rows.insert(rows.end(), local.begin(), local.end());
    }
    return rows;
}

LinearODE example_base_ode(Cx a, Cx kappa) {
    const Poly X = Poly::x();
    RatFun c1 = RatFun(-a) * pole(0.0) - RatFun(2.0) * pole(kappa);
    RatFun c0(X - Poly::constant(kappa + a), X * (X - Poly::constant(kappa)));
    return {c1, c0};
}

LinearODE example_ode(Cx a, Cx kappa) {
    const Poly X = Poly::x();
    RatFun c1 = RatFun(a - 1.0) * pole(0.0) + pole(kappa) + pole(a + kappa);
    RatFun c0(X - Poly::constant(kappa + a), X * (X - Poly::constant(kappa)));
    return {c1, c0};
}

namespace {

void check_lower(Cx b, const char* what) {
    double r = std::round(b.real());
    if (r <= 0.0 && std::abs(b - Cx{r}) <= 1e-9)
        throw ParamError(std::string("0F1 lower parameter ") + what + " is a nonpositive integer");
}

}  // namespace

SolutionBasis example_basis(Cx a, Cx kappa) {
    check_lower(a, "a");
    check_lower(2.0 - a, "2 - a");
    if (kappa == Cx{}) throw ParamError("kappa must be nonzero");
    if (a + kappa == Cx{}) throw ParamError("a + kappa must be nonzero");
    SolutionBasis b;
    b.classification = Classification::Hypergeometric;
    b.formula = "example.0f1_combination";
    b.parameters = {{"a", a}, {"kappa", kappa}};
    b.valid_domain.intervals = {{0.0, INFINITY}};
    b.valid_domain.excluded = {Cx{}, kappa, a + kappa};
    b.valid_domain.description = "x > 0, x not in {kappa, a + kappa}";
    auto F = [](Cx bb, Cx x) { return chain(hyp0f1(bb, x), variable(x)); };
    b.y1 = [a, kappa, F](Cx x) {
        Jet X = variable(x);
        return pow(X, a, Cut::reject) * (a * F(a, x) - (X - kappa) * F(a + 1.0, x));
    };
    b.y2 = [a, kappa, F](Cx x) {
        Jet X = variable(x);
        return (a - 2.0) * ((1.0 - a) * kappa + a * X) * F(2.0 - a, x) +
               X * (X - kappa) * F(3.0 - a, x);
    };
    return b;
}

VerificationReport paper_example_suite(Cx a, Cx kappa, double tol) {
    VerificationReport rep;
    rep.subject = "0F1 example, a = " + std::to_string(a.real()) +
                  ", kappa = " + std::to_string(kappa.real());
    SolutionBasis b = example_basis(a, kappa);
    LinearODE ode = mobius_nonlocal(example_base_ode(a, kappa));
    rep.add(residual_check(ode, b, sample_points(b, 0.2, 3.0, 10), tol));
    rep.finalize();
    return rep;
}

std::vector<CheckInterval> default_intervals(const FamilyParams& f) {
    switch (family_of(f)) {
        case Family::BHE: return {{0.3, 2.0, 1.0}};
        case Family::CHE: return {{0.2, 0.8, 0.5}, {1.2, 3.0, 2.0}};
        case Family::GHE: return {{0.15, 0.85, 0.5}};
    }
    return {};
}

std::vector<Cx> sample_points(const SolutionBasis& b, double lo, double hi, std::size_t n) {
    std::vector<Cx> out;
    const double step = (hi - lo) / double(n);
    auto clear = [&b](double x) {
        for (Cx e : b.valid_domain.excluded)
            if (std::abs(Cx{x} - e) < 0.05) return false;
        return b.valid_domain.contains(Cx{x});
    };
    for (std::size_t i = 0; i < n; ++i) {
        double x = lo + step * (double(i) + 0.5);
        for (double shift : {0.0, 0.3, -0.3, 0.45, -0.45}) {
            double c = x + shift * step;
            if (clear(c)) {
                out.emplace_back(c);
                break;
            }
        }
    }
    return out;
}

std::vector<CheckInterval> split_interval(const SolutionBasis& b, const CheckInterval& iv) {
    std::vector<double> cuts;
    for (Cx e : b.valid_domain.excluded)
        if (e.imag() == 0.0 && e.real() > iv.lo && e.real() < iv.hi) cuts.push_back(e.real());
    std::sort(cuts.begin(), cuts.end());
    std::vector<CheckInterval> out;
    double lo = iv.lo;
    cuts.push_back(INFINITY);
    for (double c : cuts) {
        double hi = std::min(iv.hi, c - 0.05);
        if (hi - lo > 0.05) {
            double x0 = (iv.x0 > lo && iv.x0 < hi) ? iv.x0 : 0.5 * (lo + hi);
            out.push_back({lo, hi, x0});
        }
        lo = c + 0.05;
    }
    return out;
}

VerificationReport verify_family(const FamilyParams& f, const Tolerances& tol) {
    VerificationReport rep;
    rep.family = f;
    rep.subject = describe(f);
    SolutionBasis b = solve(f);
    LinearODE ode = family_to_normal(f);
    for (const CheckInterval& whole : default_intervals(f)) {
        for (const CheckInterval& iv : split_interval(b, whole)) {
            std::vector<Cx> xs = sample_points(b, iv.lo, iv.hi, 10);
            rep.add(residual_check(ode, b, xs, tol.residual));
            rep.add(wronskian_check(b, xs, tol.wronskian));
            try {
                rep.add(rk45_compare(ode, b, iv.x0, {iv.lo, iv.hi}, tol.rk));
            } catch (const HeunError& e) {
                rep.rows.push_back(error_row(Cx{iv.x0}, 0, e));
            }
        }
    }
    rep.finalize();
    return rep;
}

}  // namespace heun_air
