#include <doctest.h>

#include "heun_air/errors.hpp"
#include "heun_air/forms.hpp"
#include "test_util.hpp"

using namespace heun_air;
using testutil::Rng;

namespace {

const RatFun X = Poly::x();

Cx at(const NormalParams& n, const char* k) { return n.values.at(k); }
Cx at(const CanonicalParams& c, const char* k) { return c.values.at(k); }

FamilyParams random_family(Rng& rng, Family fam) {
    auto away = [&rng](double lo, double hi) {
        double v;
        do v = rng.uniform(lo, hi);
        while (std::abs(v) < 0.1);
        return v;
    };
    double s = rng.uniform(-2, 2), t = rng.uniform(-2, 2);
    switch (fam) {
        case Family::BHE: return BHEFamily{s, t};
        case Family::CHE: return CHEFamily(away(-2, 2), s, t);
        case Family::GHE: return GHEFamily(rng.uniform(1.5, 3), away(-2, 2), s, t);
    }
    return BHEFamily{s, t};
}

Cx family_a(const FamilyParams& f) {
    if (auto* g = std::get_if<GHEFamily>(&f)) return g->a;
    return {};
}

}  // namespace

TEST_CASE("to_normal_form examples") {
    RatFun q = X * X + RatFun(3.0) * pole(0.0);
    CHECK(rat_equal(to_normal_form({RatFun(0.0), q}).q, q));

    // y'' = 2x y' with y = exp(x^2/2) u gives u'' = (x^2 - 1) u
    NormalForm nf = to_normal_form({RatFun(2.0) * X, RatFun(0.0)});
    CHECK(rat_equal(nf.q, X * X - RatFun(1.0)));
    CHECK(rat_equal(nf.gauge_exponent, X));

    // the BHE intermediary reduces to the two-parameter BHE
    const Cx s = 0.3, t = 0.9;
    LinearODE inter{RatFun(2.0) * (RatFun(t) - X) + pole(0.0), RatFun(2.0 * (t + s)) * X};
    CHECK(rat_equal(to_normal_form(inter).q, family_to_normal(BHEFamily{s, t}).c0));
}

TEST_CASE("family_to_normal matches the printed coefficients") {
    const Cx s = 0.3, t = 0.9;
    RatFun expect = X * X + RatFun(2.0 * s) * X + RatFun(t * t) + RatFun(t) * pole(0.0) +
                    RatFun(0.75) * pole(0.0, 2);
    LinearODE ode = family_to_normal(BHEFamily{s, t});
    CHECK(ode.c1.is_zero());
    CHECK(rat_equal(ode.c0, expect));
    CHECK(rat_equal(family_to_normal(BHEFamily{0.0, 0.0}).c0, X * X + RatFun(0.75) * pole(0.0, 2)));

    struct Case {
        FamilyParams f;
        Cx x;
        Cx q;
    };
    // mpmath, term-by-term evaluation (tests/oracles/normal_forms.py)
    const Case cases[] = {
        {BHEFamily{0.3, 0.9}, 1.1, 4.1180165289256198347},
        {BHEFamily{0.3, 0.9}, Cx(0.7, 0.2), Cx(4.070174439302242791, -0.68721965112139551442)},
        {CHEFamily(0.8, 0.2, 0.6), 0.3, 2.9014058956916099773},
        {CHEFamily(0.8, 0.2, 0.6), 1.5, 3.0926222222222222222},
        {CHEFamily(0.8, 0.2, 0.6), Cx(2, -0.5), Cx(0.58718339100346020761, 0.39423114186851211073)},
        {GHEFamily(2, 0.5, 0.1, 0.4), 0.2, 23.755787037037037037},
        {GHEFamily(2, 0.5, 0.1, 0.4), 0.5, 6.56},
        {GHEFamily(2, 0.5, 0.1, 0.4), Cx(0.8, 0.3), Cx(3.1283341385562282735, 0.6956401702721988673)},
        {GHEFamily(2.7, -1.3, 0.6, -0.2), 0.35, 247.14335930959235224},
        {GHEFamily(2.7, -1.3, 0.6, -0.2), Cx(1.9, 0.4), Cx(1.2393582731139700785, 0.20331249520799223708)},
    };
    for (const auto& c : cases) {
        CAPTURE(describe(c.f));
        CHECK(testutil::rel(rat_eval(family_to_normal(c.f).c0, c.x), c.q) < 1e-12);
    }
}

TEST_CASE("family constructors reject degenerate parameters") {
    CHECK_THROWS_AS(CHEFamily(0.0, 1.0, 1.0), ParamError);
    CHECK_THROWS_AS(GHEFamily(0.0, 0.5, 0.1, 0.2), ParamError);
    CHECK_THROWS_AS(GHEFamily(1.0, 0.5, 0.1, 0.2), ParamError);
    CHECK_THROWS_AS(GHEFamily(2.0, 0.0, 0.1, 0.2), ParamError);
}

TEST_CASE("Liouvillian predicate switches at the threshold") {
    CHECK(is_liouvillian(BHEFamily{1.0, 1.0}));
    CHECK(is_liouvillian(BHEFamily{1.0, -1.0}));
    CHECK(is_liouvillian(BHEFamily{1.0, 1.0 + 0.4e-10}));
    CHECK_FALSE(is_liouvillian(BHEFamily{1.0, 1.0 + 0.6e-10}));
    CHECK(is_liouvillian(CHEFamily(0.7, -0.5, 0.5)));
    CHECK_FALSE(is_liouvillian(GHEFamily(2.0, 0.5, 0.1, 0.4)));
}

TEST_CASE("normal_to_family examples") {
    NormalParams n{Family::BHE, {{"B", -2.0}, {"C", -1.0}, {"D", 1.0}, {"E", -0.75}}};
    auto list = normal_to_family(n);
    REQUIRE(list.size() == 1);
    CHECK(same_family_params(list[0], BHEFamily{1.0, -1.0}, 1e-12));

    n.values["E"] = 0.0;
    CHECK(normal_to_family(n).empty());

    NormalParams c = family_to_normal_params(CHEFamily(1.0, 0.3, 0.5));
    auto cl = normal_to_family(c);
    CHECK(contains_family(cl, CHEFamily(1.0, 0.3, 0.5), 1e-10));
    CHECK(contains_family(cl, CHEFamily(-1.0, 0.3, -0.5), 1e-10));
}

TEST_CASE("canonical_to_family examples") {
    CanonicalParams c{Family::BHE, {{"alpha", 2.0}, {"beta", 2.0}, {"gamma", 0.0}, {"delta", 2.0}}};
    auto list = canonical_to_family(c);
    REQUIRE(list.size() == 1);
    CHECK(same_family_params(list[0], BHEFamily{1.0, 1.0}, 1e-12));

    c.values["alpha"] = 3.0;
    CHECK(canonical_to_family(c).empty());

    const GHEFamily g(2.0, 0.5, 0.3, 0.4);
    bool found = false;
    for (const auto& cp : family_to_canonical(g)) found = found || contains_family(canonical_to_family(cp), g, 1e-9);
    CHECK(found);
}

TEST_CASE("family_to_canonical examples") {
    auto bhe = family_to_canonical(BHEFamily{1.0, 1.0});
    REQUIRE(bhe.size() == 2);
    std::vector<double> alphas;
    for (const auto& c : bhe) {
        alphas.push_back(at(c, "alpha").real());
        CHECK(std::abs(at(c, "beta") - 2.0) < 1e-14);
        CHECK(std::abs(at(c, "gamma")) < 1e-14);
        CHECK(std::abs(at(c, "delta") - 2.0) < 1e-14);
    }
    std::sort(alphas.begin(), alphas.end());
    CHECK(alphas[0] == doctest::Approx(-2.0));
    CHECK(alphas[1] == doctest::Approx(2.0));

    auto che = family_to_canonical(CHEFamily(1.0, 0.0, 0.0));
    CHECK(che.size() == 8);
    for (const auto& c : che) {
        Cx al = at(c, "alpha"), be = at(c, "beta"), ga = at(c, "gamma");
        CHECK(std::abs(al * al - 4.0) < 1e-12);
        CHECK(std::abs(be * be - 4.0) < 1e-12);
        CHECK(std::abs(ga * ga - 4.0 * ga) < 1e-12);
        CHECK(std::abs(at(c, "delta") - (2.0 - al)) < 1e-12);
        CHECK(std::abs(at(c, "eta") - (-2.0 - be)) < 1e-12);
    }

    std::vector<double> eps;
    for (const auto& c : family_to_canonical(GHEFamily(2.0, 0.5, 0.1, 0.4))) {
        CHECK(canonical_constraint_defect(c) < 1e-12);
        eps.push_back(at(c, "epsilon").real());
    }
    CHECK(std::count_if(eps.begin(), eps.end(), [](double e) { return std::abs(e - 3.0) < 1e-12; }) > 0);
    CHECK(std::count_if(eps.begin(), eps.end(), [](double e) { return std::abs(e + 1.0) < 1e-12; }) > 0);
}

TEST_CASE("property: fixed and dependent parameter theorems") {
    Rng rng(101);
    for (Family fam : {Family::BHE, Family::CHE, Family::GHE}) {
        for (int i = 0; i < 100; ++i) {
            FamilyParams f = random_family(rng, fam);
            NormalParams n = family_to_normal_params(f);
            CAPTURE(describe(f));
            CHECK(fixed_parameter_defect(n) < 1e-12);
            CHECK(dependent_parameter_defect(n) < 1e-10);
            CHECK(std::abs(at(n, fam == Family::GHE ? "F" : "E") + 0.75) < 1e-12);
        }
    }
}

TEST_CASE("property: family -> normal -> family round trip") {
    Rng rng(202);
    for (Family fam : {Family::BHE, Family::CHE, Family::GHE}) {
        for (int i = 0; i < 100; ++i) {
            FamilyParams f = random_family(rng, fam);
            CAPTURE(describe(f));
            auto n = extract_normal_params(fam, family_to_normal(f).c0, family_a(f));
            REQUIRE(n.has_value());
            auto back = normal_to_family(*n);
            bool hit = false;
            for (const auto& g : back) hit = hit || equivalent_family_params(g, f, 1e-9);
            CHECK(hit);
            for (const auto& g : back)
                CHECK(rat_equal(family_to_normal(g).c0, family_to_normal(f).c0, 1e-9));
        }
    }
}

TEST_CASE("property: family -> canonical -> family round trip") {
    Rng rng(303);
    for (Family fam : {Family::BHE, Family::CHE, Family::GHE}) {
        for (int i = 0; i < 100; ++i) {
            FamilyParams f = random_family(rng, fam);
            CAPTURE(describe(f));
            auto cs = family_to_canonical(f);
            REQUIRE_FALSE(cs.empty());
            bool hit = false;
            for (const auto& c : cs) {
                if (fam == Family::GHE) CHECK(canonical_constraint_defect(c) < 1e-10);
                for (const auto& g : canonical_to_family(c))
                    hit = hit || equivalent_family_params(g, f, 1e-9);
            }
            CHECK(hit);
        }
    }
}

TEST_CASE("property: canonical ODE reduces to the normal-parameter ODE") {
    Rng rng(404);
    for (Family fam : {Family::BHE, Family::CHE, Family::GHE}) {
        for (int i = 0; i < 30; ++i) {
            FamilyParams f = random_family(rng, fam);
            for (const auto& c : family_to_canonical(f)) {
                RatFun q = to_normal_form(canonical_to_ode(c)).q;
                CHECK(rat_equal(q, normal_params_to_ode(canonical_to_normal(c)).c0, 1e-9));
                CHECK(rat_equal(q, family_to_normal(f).c0, 1e-9));
            }
        }
    }
}

TEST_CASE("property: to_normal_form is idempotent") {
    Rng rng(505);
    for (int i = 0; i < 50; ++i) {
        RatFun c1(Poly({rng.cx(-2, 2), rng.cx(-2, 2)}), Poly({rng.cx(-2, 2), 1.0}));
        RatFun c0(Poly({rng.cx(-2, 2), rng.cx(-2, 2), rng.cx(-2, 2)}), Poly::x());
        RatFun q = to_normal_form({c1, c0}).q;
        NormalForm again = to_normal_form({RatFun(0.0), q});
        CHECK(rat_equal(again.q, q));
        CHECK(again.gauge_exponent.is_zero());
    }
}

TEST_CASE("extract_normal_params rejects a non-member") {
    // an extra x^3 term is outside the BHE partial-fraction basis
    RatFun q = family_to_normal(BHEFamily{0.3, 0.4}).c0 + X * X * X;
    CHECK_FALSE(extract_normal_params(Family::BHE, q).has_value());
}
