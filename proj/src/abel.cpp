#include "heun_air/abel.hpp"

#include <cmath>

#include "heun_air/errors.hpp"

namespace heun_air {

namespace {

void validate(const AIRParams& p) {
    if (p.s2 == Cx{} && p.r2 == Cx{}) throw ParamError("AIR parameters need s2 != 0 or r2 != 0");
    if (p.s2 == Cx{})
        throw DegenerateError("s2 = 0: the linear equation reduces to a pFq equation");
    if (p.rho) {
        const auto& r = *p.rho;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (std::abs(r[i] - r[j]) <= 1e-12 * (1.0 + std::abs(r[i])))
                    throw ParamError("rho roots must be pairwise distinct");
    }
}

}  // namespace

Poly air_P(const AIRParams& p) {
    if (p.rho) return Poly::from_roots({(*p.rho)[0], (*p.rho)[1], (*p.rho)[2]});
    switch (p.kind) {
        case RootsKind::ThreeEqualRoots: return Poly::constant(1.0);
        case RootsKind::TwoEqualRoots: return Poly::x();
        case RootsKind::DistinctRoots: return Poly::from_roots({0.0, 1.0});
    }
    return Poly::constant(1.0);
}

LinearODE air_to_linear(const AIRParams& p) {
    validate(p);
    const Poly P = air_P(p);
    const Poly h2{p.r2, p.s2};
    const Poly h1{p.r1, p.s1};
    const Poly h0{p.r0, p.s0};
    // c1 = h1 + h2'/h2 with h_i = (s_i x + r_i)/P
    RatFun c1 = RatFun(h1, P) + RatFun(Poly::constant(p.s2), h2) - RatFun(P.derivative(), P);
    RatFun c0 = RatFun(-(h2 * h0), P * P);
    return {c1, c0};
}

std::array<Cx, 3> air_R_coefficients(const AIRParams& p) {
    if (!p.rho) throw ParamError("R coefficients need the rho form");
    validate(p);
    const auto& r = *p.rho;
    const Poly dP = air_P(p).derivative();
    std::array<Cx, 3> R{};
    for (int i = 0; i < 3; ++i) R[i] = (p.s1 * r[i] + p.r1) / dP.eval(r[i]) - 1.0;
    return R;
}

LinearODE mobius_nonlocal(const LinearODE& ode) {
    if (ode.c0.is_zero()) throw ZeroCoefficientError("non-local transform needs c0 != 0");
    return {log_derivative(ode.c0) - ode.c1, ode.c0};
}

LinearODE companion_p_ode(const LinearODE& ode) {
    if (ode.c0.is_zero()) return {ode.c1, rat_derivative(ode.c1)};
    RatFun L = log_derivative(ode.c0);
    return {L + ode.c1, rat_derivative(ode.c1) + ode.c0 - L * ode.c1};
}

Jet reconstruct_point(const LinearODE& ode, Cx x, Jet p) {
    if (ode.c0.is_zero()) throw ZeroCoefficientError("reconstruction needs c0 != 0");
    Cx c0 = rat_eval(ode.c0, x);
    Cx c1 = rat_eval(ode.c1, x);
    if (std::abs(c0) <= 1e-14 * (1.0 + std::abs(c1)))
        throw PoleError("c0 vanishes at the evaluation point");
    return {checked((p.d - c1 * p.v) / c0, "reconstructed y"), p.v};
}

SolutionBasis reconstruct_y(const SolutionBasis& p_basis, const LinearODE& ode) {
    if (ode.c0.is_zero()) throw ZeroCoefficientError("reconstruction needs c0 != 0");
    SolutionBasis out = p_basis;
    auto lift = [ode](Member m) -> Member {
        return [ode, m](Cx x) { return reconstruct_point(ode, x, m(x)); };
    };
    out.y1 = lift(p_basis.y1);
    out.y2 = lift(p_basis.y2);
    return out;
}

}  // namespace heun_air
