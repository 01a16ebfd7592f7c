#include "heun_air/forms.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace heun_air {

namespace {

const Cx kHalf{0.5};
const Cx kQuarter{0.25};

RatFun x_poly() { return RatFun(Poly::x()); }

double table_scale(const ParamTable& t) {
    double s = 1.0;
    for (const auto& [k, v] : t) s = std::max(s, std::abs(v));
    return s;
}

Cx get(const ParamTable& t, const char* key) {
    auto it = t.find(key);
    if (it == t.end()) throw ParamError(std::string("missing parameter '") + key + "'");
    return it->second;
}

void require_keys(const ParamTable& t, std::initializer_list<const char*> keys, const char* what) {
    for (const char* k : keys)
        if (t.find(k) == t.end()) throw ParamError(std::string(what) + ": missing parameter '" + k + "'");
    if (t.size() != keys.size()) throw ParamError(std::string(what) + ": unexpected extra parameters");
}

void validate(const NormalParams& n) {
    switch (n.family) {
        case Family::BHE: require_keys(n.values, {"B", "C", "D", "E"}, "BHE normal"); break;
        case Family::CHE: require_keys(n.values, {"A", "B", "C", "D", "E"}, "CHE normal"); break;
        case Family::GHE: require_keys(n.values, {"a", "A", "B", "D", "E", "F"}, "GHE normal"); break;
    }
}

void validate(const CanonicalParams& c) {
    switch (c.family) {
        case Family::BHE: require_keys(c.values, {"alpha", "beta", "gamma", "delta"}, "BHE canonical"); break;
        case Family::CHE: require_keys(c.values, {"alpha", "beta", "gamma", "delta", "eta"}, "CHE canonical"); break;
        case Family::GHE:
            require_keys(c.values, {"alpha", "beta", "gamma", "delta", "epsilon", "a", "q"}, "GHE canonical");
            if (canonical_constraint_defect(c) > 1e-10 * table_scale(c.values))
                throw ParamError("GHE canonical: gamma + delta + epsilon must equal alpha + beta + 1");
            break;
    }
}

bool tables_close(const ParamTable& x, const ParamTable& y, double tol) {
    if (x.size() != y.size()) return false;
    double scale = std::max(table_scale(x), table_scale(y));
    for (const auto& [k, v] : x) {
        auto it = y.find(k);
        if (it == y.end() || std::abs(it->second - v) > tol * scale) return false;
    }
    return true;
}

template <class T>
void push_unique(std::vector<T>& out, T item, bool (*same)(const T&, const T&)) {
    for (const T& o : out)
        if (same(o, item)) return;
    out.push_back(std::move(item));
}

bool same_canonical(const CanonicalParams& x, const CanonicalParams& y) {
    return x.family == y.family && tables_close(x.values, y.values, 1e-14);
}

bool same_family_exact(const FamilyParams& x, const FamilyParams& y) { return same_family_params(x, y, 1e-14); }

std::vector<Cx> roots_pm(Cx r) { return {r, -r}; }

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::BHE: return "BHE";
        case Family::CHE: return "CHE";
        case Family::GHE: return "GHE";
    }
    return "?";
}

CHEFamily::CHEFamily(Cx lambda_, Cx sigma_, Cx tau_) : lambda(lambda_), sigma(sigma_), tau(tau_) {
    if (lambda == Cx{}) throw ParamError("CHE family requires lambda != 0");
}

GHEFamily::GHEFamily(Cx a_, Cx delta_, Cx sigma_, Cx tau_) : a(a_), delta(delta_), sigma(sigma_), tau(tau_) {
    if (a == Cx{} || a == Cx{1.0}) throw ParamError("GHE family requires a != 0 and a != 1");
    if (delta == Cx{}) throw ParamError("GHE family requires Delta != 0");
}

Family family_of(const FamilyParams& f) {
    return std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BHEFamily>) return Family::BHE;
            else if constexpr (std::is_same_v<T, CHEFamily>) return Family::CHE;
            else return Family::GHE;
        },
        f);
}

Cx family_sigma(const FamilyParams& f) {
    return std::visit([](const auto& p) { return p.sigma; }, f);
}

Cx family_tau(const FamilyParams& f) {
    return std::visit([](const auto& p) { return p.tau; }, f);
}

bool is_liouvillian(const FamilyParams& f) {
    Cx s = family_sigma(f), t = family_tau(f);
    return std::abs(s * s - t * t) <= kLiouvillianThreshold;
}

NormalForm to_normal_form(const LinearODE& ode) {
    RatFun half_c1 = RatFun(kHalf) * ode.c1;
    RatFun q = ode.c0 + half_c1 * half_c1 - RatFun(kHalf) * rat_derivative(ode.c1);
    return {q, half_c1};
}

LinearODE family_to_normal(const FamilyParams& fam) {
    RatFun q;
    if (auto* b = std::get_if<BHEFamily>(&fam)) {
        const Cx s = b->sigma, t = b->tau;
        q = RatFun(Poly({0.75, t, t * t, 2.0 * s, 1.0}), Poly({0.0, 0.0, 1.0}));
    } else if (auto* c = std::get_if<CHEFamily>(&fam)) {
        const Cx l = c->lambda, s = c->sigma, t = c->tau;
        const Cx l2 = l * l;
        q = RatFun(l2) + RatFun(2.0 * (s - 1.0) * l2 - t * l + kHalf) * pole(0.0) +
            RatFun(t * l - kHalf) * pole(1.0) + RatFun((t * t - 2.0 * s + 1.0) * l2 - kQuarter) * pole(0.0, 2) +
            RatFun(0.75) * pole(1.0, 2);
    } else {
        const auto& g = std::get<GHEFamily>(fam);
        const Cx a = g.a, d = g.delta, s = g.sigma, t = g.tau;
        const Cx d2 = d * d;
        Cx k0 = (2.0 * a * a * (a - 1.0) * d2 - 2.0 * s * a * (2.0 * a - 1.0) * d + (2.0 * t * t - kHalf) * a + t + kHalf) / a;
        Cx k1 = -2.0 * (a * (a - 1.0) * (a - 1.0) * d2 - s * (2.0 * a - 1.0) * (a - 1.0) * d + (t - kHalf) * ((t + kHalf) * a - t)) /
                (a - 1.0);
        Cx ka = (t - a + kHalf) / (a * (a - 1.0));
        Cx k00 = a * a * d2 - 2.0 * a * s * d + t * t - kQuarter;
        Cx k11 = (a - 1.0) * (a - 1.0) * d2 - 2.0 * s * (a - 1.0) * d + t * t - kQuarter;
        q = RatFun(k0) * pole(0.0) + RatFun(k1) * pole(1.0) + RatFun(ka) * pole(a) + RatFun(k00) * pole(0.0, 2) +
            RatFun(k11) * pole(1.0, 2) + RatFun(0.75) * pole(a, 2);
    }
    return {RatFun(), q};
}

NormalParams family_to_normal_params(const FamilyParams& fam) {
    if (auto* b = std::get_if<BHEFamily>(&fam)) {
        Cx D = -b->tau;
        return {Family::BHE, {{"B", -2.0 * b->sigma}, {"C", -D * D}, {"D", D}, {"E", -0.75}}};
    }
    if (auto* c = std::get_if<CHEFamily>(&fam)) {
        const Cx l = c->lambda, s = c->sigma, t = c->tau, l2 = l * l;
        return {Family::CHE,
                {{"A", -l2},
                 {"B", 2.0 * (1.0 - s) * l2 + t * l - kHalf},
                 {"C", kHalf - t * l},
                 {"D", kQuarter + (2.0 * s - t * t - 1.0) * l2},
                 {"E", -0.75}}};
    }
    const auto& g = std::get<GHEFamily>(fam);
    const Cx a = g.a, d = g.delta, s = g.sigma, t = g.tau, d2 = d * d;
    return {Family::GHE,
            {{"a", a},
             {"A", -2.0 * a * (a - 1.0) * d2 + 2.0 * (2.0 * a - 1.0) * s * d - 2.0 * t * t - (t + kHalf) / a + kHalf},
             {"B", 2.0 * a * (a - 1.0) * d2 - 2.0 * (2.0 * a - 1.0) * s * d + 2.0 * t * t + (t - a / 2.0) / (a - 1.0)},
             {"D", -a * a * d2 + 2.0 * a * s * d - t * t + kQuarter},
             {"E", -(a - 1.0) * (a - 1.0) * d2 + 2.0 * (a - 1.0) * s * d - t * t + kQuarter},
             {"F", -0.75}}};
}

LinearODE normal_params_to_ode(const NormalParams& n) {
    validate(n);
    const ParamTable& v = n.values;
    RatFun bracket;
    switch (n.family) {
        case Family::BHE: {
            bracket = RatFun(Poly({get(v, "C"), get(v, "B"), -1.0})) + RatFun(get(v, "D")) * pole(0.0) +
                      RatFun(get(v, "E")) * pole(0.0, 2);
            break;
        }
        case Family::CHE: {
            bracket = RatFun(get(v, "A")) + RatFun(get(v, "B")) * pole(0.0) + RatFun(get(v, "C")) * pole(1.0) +
                      RatFun(get(v, "D")) * pole(0.0, 2) + RatFun(get(v, "E")) * pole(1.0, 2);
            break;
        }
        case Family::GHE: {
            Cx a = get(v, "a"), A = get(v, "A"), B = get(v, "B");
            bracket = RatFun(A) * pole(0.0) + RatFun(B) * pole(1.0) - RatFun(A + B) * pole(a) +
                      RatFun(get(v, "D")) * pole(0.0, 2) + RatFun(get(v, "E")) * pole(1.0, 2) +
                      RatFun(get(v, "F")) * pole(a, 2);
            break;
        }
    }
    return {RatFun(), -bracket};
}

LinearODE canonical_to_ode(const CanonicalParams& c) {
    validate(c);
    const ParamTable& v = c.values;
    const Cx al = get(v, "alpha"), be = get(v, "beta"), ga = get(v, "gamma"), de = get(v, "delta");
    switch (c.family) {
        case Family::BHE: {
            RatFun p = RatFun(1.0 + al) * pole(0.0) - RatFun(be) - RatFun(2.0) * x_poly();
            RatFun r = RatFun(ga - al - 2.0) - RatFun((de + (1.0 + al) * be) / 2.0) * pole(0.0);
            return {-p, -r};
        }
        case Family::CHE: {
            const Cx et = get(v, "eta");
            RatFun p = RatFun(al) + RatFun(be + 1.0) * pole(0.0) + RatFun(ga - 1.0) * pole(1.0);
            Poly num({2.0 * et + be + (ga - al) * (be + 1.0), 2.0 * de + al * (be + ga + 2.0)});
            RatFun r(num, Poly::from_roots({0.0, 1.0}, 2.0));
            return {-p, -r};
        }
        case Family::GHE: {
            const Cx ep = get(v, "epsilon"), a = get(v, "a"), q = get(v, "q");
            RatFun p = RatFun(ga) * pole(0.0) + RatFun(de) * pole(1.0) + RatFun(ep) * pole(a);
            RatFun r(Poly({-q, al * be}), Poly::from_roots({0.0, 1.0, a}));
            return {-p, -r};
        }
    }
    throw ParamError("unknown family");
}

NormalParams canonical_to_normal(const CanonicalParams& c) {
    validate(c);
    const ParamTable& v = c.values;
    const Cx al = get(v, "alpha"), be = get(v, "beta"), ga = get(v, "gamma"), de = get(v, "delta");
    switch (c.family) {
        case Family::BHE:
            return {Family::BHE,
                    {{"B", -be}, {"C", ga - be * be / 4.0}, {"D", -de / 2.0}, {"E", (1.0 - al * al) / 4.0}}};
        case Family::CHE: {
            const Cx et = get(v, "eta");
            Cx B = -kHalf - et - be;
            return {Family::CHE,
                    {{"A", -al * al / 4.0},
                     {"B", B},
                     {"C", de + al - B},
                     {"D", (1.0 - be * be) / 4.0},
                     {"E", (4.0 * ga - ga * ga - 3.0) / 4.0}}};
        }
        case Family::GHE: {
            const Cx ep = get(v, "epsilon"), a = get(v, "a"), q = get(v, "q");
            Cx A = ((a * de + ep) * ga / 2.0 - q) / a;
            Cx B = (al * al - (ga + de + ep - 1.0) * al + (ga + de) * ep / 2.0 + ga * de / 2.0 - a * A) / (a - 1.0);
            return {Family::GHE,
                    {{"a", a},
                     {"A", A},
                     {"B", B},
                     {"D", (2.0 * ga - ga * ga) / 4.0},
                     {"E", (2.0 * de - de * de) / 4.0},
                     {"F", (2.0 * ep - ep * ep) / 4.0}}};
        }
    }
    throw ParamError("unknown family");
}

std::vector<CanonicalParams> family_to_canonical(const FamilyParams& fam) {
    NormalParams n = family_to_normal_params(fam);
    const ParamTable& v = n.values;
    std::vector<CanonicalParams> out;
    switch (n.family) {
        case Family::BHE: {
            Cx B = get(v, "B"), C = get(v, "C"), D = get(v, "D"), E = get(v, "E");
            for (Cx al : roots_pm(std::sqrt(1.0 - 4.0 * E)))
                push_unique(out,
                            CanonicalParams{Family::BHE,
                                            {{"alpha", al}, {"beta", -B}, {"gamma", B * B / 4.0 + C}, {"delta", -2.0 * D}}},
                            same_canonical);
            break;
        }
        case Family::CHE: {
            Cx A = get(v, "A"), B = get(v, "B"), C = get(v, "C"), D = get(v, "D"), E = get(v, "E");
            for (Cx al : roots_pm(std::sqrt(-4.0 * A)))
                for (Cx be : roots_pm(std::sqrt(1.0 - 4.0 * D)))
                    for (Cx gr : roots_pm(std::sqrt(1.0 - 4.0 * E)))
                        push_unique(out,
                                    CanonicalParams{Family::CHE,
                                                    {{"alpha", al},
                                                     {"beta", be},
                                                     {"gamma", 2.0 + gr},
                                                     {"delta", C + B - al},
                                                     {"eta", -kHalf - B - be}}},
                                    same_canonical);
            break;
        }
        case Family::GHE: {
            Cx a = get(v, "a"), A = get(v, "A"), B = get(v, "B"), D = get(v, "D"), E = get(v, "E"), F = get(v, "F");
            for (Cx gr : roots_pm(std::sqrt(1.0 - 4.0 * D)))
                for (Cx dr : roots_pm(std::sqrt(1.0 - 4.0 * E)))
                    for (Cx er : roots_pm(std::sqrt(1.0 - 4.0 * F))) {
                        Cx ga = 1.0 + gr, de = 1.0 + dr, ep = 1.0 + er;
                        Cx s = ga + de + ep - 1.0;
                        Cx k = (ga + de) * ep / 2.0 + ga * de / 2.0 - (a - 1.0) * B - a * A;
                        for (Cx ar : roots_pm(std::sqrt(s * s - 4.0 * k))) {
                            Cx al = (s + ar) / 2.0;
                            push_unique(out,
                                        CanonicalParams{Family::GHE,
                                                        {{"alpha", al},
                                                         {"beta", s - al},
                                                         {"gamma", ga},
                                                         {"delta", de},
                                                         {"epsilon", ep},
                                                         {"a", a},
                                                         {"q", (a * de + ep) * ga / 2.0 - a * A}}},
                                        same_canonical);
                        }
                    }
            break;
        }
    }
    return out;
}

std::optional<NormalParams> extract_normal_params(Family family, const RatFun& q, Cx a) {
    constexpr int kPoints = 12;
    std::vector<Cx> xs;
    for (int k = 0; k < kPoints; ++k) xs.emplace_back(0.45 + 0.23 * k, 0.35 + 0.07 * k);

    std::vector<std::string> names;
    std::vector<std::function<Cx(Cx)>> basis;
    std::function<Cx(Cx)> known = [](Cx) { return Cx{}; };
    // Basis functions multiply the bracket parameters; q = -(bracket).
    switch (family) {
        case Family::BHE:
            names = {"B", "C", "D", "E"};
            basis = {[](Cx x) { return x; }, [](Cx) { return Cx{1.0}; }, [](Cx x) { return 1.0 / x; },
                     [](Cx x) { return 1.0 / (x * x); }};
            known = [](Cx x) { return -x * x; };
            break;
        case Family::CHE:
            names = {"A", "B", "C", "D", "E"};
            basis = {[](Cx) { return Cx{1.0}; }, [](Cx x) { return 1.0 / x; }, [](Cx x) { return 1.0 / (x - 1.0); },
                     [](Cx x) { return 1.0 / (x * x); }, [](Cx x) { return 1.0 / ((x - 1.0) * (x - 1.0)); }};
            break;
        case Family::GHE:
            if (a == Cx{} || a == Cx{1.0}) throw ParamError("GHE extraction requires a != 0, 1");
            names = {"A", "B", "D", "E", "F"};
            basis = {[a](Cx x) { return 1.0 / x - 1.0 / (x - a); }, [a](Cx x) { return 1.0 / (x - 1.0) - 1.0 / (x - a); },
                     [](Cx x) { return 1.0 / (x * x); }, [](Cx x) { return 1.0 / ((x - 1.0) * (x - 1.0)); },
                     [a](Cx x) { return 1.0 / ((x - a) * (x - a)); }};
            break;
    }
    const int n = static_cast<int>(basis.size());
    Eigen::MatrixXcd M(kPoints, n);
    Eigen::VectorXcd rhs(kPoints);
    for (int i = 0; i < kPoints; ++i) {
        Cx x = xs[static_cast<std::size_t>(i)];
        Cx qv;
        try {
            qv = rat_eval(q, x);
        } catch (const PoleError&) {
            return std::nullopt;
        }
        rhs(i) = -qv - known(x);
        for (int j = 0; j < n; ++j) M(i, j) = basis[static_cast<std::size_t>(j)](x);
    }
    Eigen::VectorXcd sol = M.colPivHouseholderQr().solve(rhs);
    double resid = (M * sol - rhs).norm();
    if (!(resid < 1e-9 * std::max(1.0, rhs.norm()))) return std::nullopt;
    NormalParams out{family, {}};
    for (int j = 0; j < n; ++j) out.values[names[static_cast<std::size_t>(j)]] = sol(j);
    if (family == Family::GHE) out.values["a"] = a;
    return out;
}

double fixed_parameter_defect(const NormalParams& n) {
    validate(n);
    return std::abs(get(n.values, n.family == Family::GHE ? "F" : "E") + 0.75);
}

double dependent_parameter_defect(const NormalParams& n) {
    validate(n);
    const ParamTable& v = n.values;
    switch (n.family) {
        case Family::BHE: {
            Cx D = get(v, "D");
            return std::abs(get(v, "C") + D * D);
        }
        case Family::CHE: {
            Cx C = get(v, "C");
            return std::abs(get(v, "B") + get(v, "A") + get(v, "D") + C * C);
        }
        case Family::GHE: {
            Cx a = get(v, "a"), A = get(v, "A"), B = get(v, "B"), D = get(v, "D"), E = get(v, "E");
            Cx S = A + B;
            Cx rel = (1.0 - a) * (S * S * a - S * (S - 1.0) + (D - A) / a - D / (a * a));
            return std::abs(E - rel);
        }
    }
    return 0.0;
}

double canonical_constraint_defect(const CanonicalParams& c) {
    if (c.family != Family::GHE) return 0.0;
    const ParamTable& v = c.values;
    return std::abs(get(v, "gamma") + get(v, "delta") + get(v, "epsilon") - get(v, "alpha") - get(v, "beta") - 1.0);
}

std::vector<FamilyParams> normal_to_family(const NormalParams& n, double tol) {
    validate(n);
    const ParamTable& v = n.values;
    const double scale = table_scale(v);
    std::vector<FamilyParams> out;
    if (fixed_parameter_defect(n) > tol * scale) return out;
    if (dependent_parameter_defect(n) > tol * scale * scale) return out;

    auto consider = [&](auto make) {
        try {
            FamilyParams f = make();
            if (tables_close(family_to_normal_params(f).values, v, tol)) push_unique(out, f, same_family_exact);
        } catch (const ParamError&) {
        }
    };

    switch (n.family) {
        case Family::BHE:
            consider([&] { return FamilyParams(BHEFamily{-get(v, "B") / 2.0, -get(v, "D")}); });
            break;
        case Family::CHE: {
            Cx A = get(v, "A"), C = get(v, "C"), D = get(v, "D");
            for (Cx l : roots_pm(std::sqrt(-A))) {
                if (l == Cx{}) continue;
                Cx t = (kHalf - C) / l;
                Cx s = ((D - kQuarter) / (l * l) + t * t + 1.0) / 2.0;
                consider([&] { return FamilyParams(CHEFamily(l, s, t)); });
            }
            break;
        }
        case Family::GHE: {
            Cx a = get(v, "a"), A = get(v, "A"), B = get(v, "B"), D = get(v, "D"), E = get(v, "E");
            if (a == Cx{} || a == Cx{1.0}) return out;
            Cx t = a * (a - 1.0) * (A + B) + a - kHalf;
            Cx u = (t * t - kQuarter + D - a * (D - E)) / (a * (a - 1.0));
            Cx p = (D - E + (2.0 * a - 1.0) * u) / 2.0;
            for (Cx d : roots_pm(std::sqrt(u))) {
                if (d == Cx{}) continue;
                consider([&] { return FamilyParams(GHEFamily(a, d, p / d, t)); });
            }
            break;
        }
    }
    return out;
}

std::vector<FamilyParams> canonical_to_family(const CanonicalParams& c, double tol) {
    return normal_to_family(canonical_to_normal(c), tol);
}

bool same_family_params(const FamilyParams& x, const FamilyParams& y, double tol) {
    if (x.index() != y.index()) return false;
    auto close = [tol](Cx p, Cx q) { return std::abs(p - q) <= tol * std::max(1.0, std::abs(q)); };
    if (auto* b = std::get_if<BHEFamily>(&x)) {
        auto& o = std::get<BHEFamily>(y);
        return close(b->sigma, o.sigma) && close(b->tau, o.tau);
    }
    if (auto* c = std::get_if<CHEFamily>(&x)) {
        auto& o = std::get<CHEFamily>(y);
        return close(c->lambda, o.lambda) && close(c->sigma, o.sigma) && close(c->tau, o.tau);
    }
    auto& g = std::get<GHEFamily>(x);
    auto& o = std::get<GHEFamily>(y);
    return close(g.a, o.a) && close(g.delta, o.delta) && close(g.sigma, o.sigma) && close(g.tau, o.tau);
}

bool equivalent_family_params(const FamilyParams& x, const FamilyParams& y, double tol) {
    if (same_family_params(x, y, tol)) return true;
    if (auto* c = std::get_if<CHEFamily>(&y))
        return same_family_params(x, CHEFamily(-c->lambda, c->sigma, -c->tau), tol);
    if (auto* g = std::get_if<GHEFamily>(&y))
        return same_family_params(x, GHEFamily(g->a, -g->delta, -g->sigma, g->tau), tol);
    return false;
}

bool contains_family(const std::vector<FamilyParams>& list, const FamilyParams& f, double tol) {
    return std::any_of(list.begin(), list.end(), [&](const FamilyParams& g) { return same_family_params(g, f, tol); });
}

std::string describe(const FamilyParams& f) {
    std::ostringstream os;
    os.precision(17);
    auto c = [&](Cx v) -> std::ostream& {
        if (v.imag() == 0.0) return os << v.real();
        return os << "(" << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i)";
    };
    if (auto* b = std::get_if<BHEFamily>(&f)) {
        os << "BHE(sigma=";
        c(b->sigma) << ", tau=";
        c(b->tau) << ")";
    } else if (auto* h = std::get_if<CHEFamily>(&f)) {
        os << "CHE(lambda=";
        c(h->lambda) << ", sigma=";
        c(h->sigma) << ", tau=";
        c(h->tau) << ")";
    } else {
        auto& g = std::get<GHEFamily>(f);
        os << "GHE(a=";
        c(g.a) << ", Delta=";
        c(g.delta) << ", sigma=";
        c(g.sigma) << ", tau=";
        c(g.tau) << ")";
    }
    return os.str();
}

}  // namespace heun_air
