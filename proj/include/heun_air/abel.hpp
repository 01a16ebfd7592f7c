#pragma once

#include <array>
#include <optional>

#include "heun_air/basis.hpp"
#include "heun_air/forms.hpp"

namespace heun_air {

enum class RootsKind {
    ThreeEqualRoots,  // P = 1
    TwoEqualRoots,    // P = x
    DistinctRoots,    // P = x (x - 1)
};

/// y' = P(y) / ((s2 x^2 + s1 x + s0) y + r2 x^2 + r1 x + r0), written after
/// the x <-> y swap. When rho is set, P = (y - rho1)(y - rho2)(y - rho3) and
/// kind is ignored.
struct AIRParams {
    Cx s0{}, s1{}, s2{1.0};
    Cx r0{}, r1{}, r2{};
    RootsKind kind = RootsKind::ThreeEqualRoots;
    std::optional<std::array<Cx, 3>> rho;
};

// Cubic P in the new independent variable.
Poly air_P(const AIRParams& p);

// The linear ODE obtained from the AIR class by x <-> y and the Riccati
// linearization y -> -y'/(h2 y).
LinearODE air_to_linear(const AIRParams& p);

// Residues R_i of c1 at the roots rho_i for the rho form.
std::array<Cx, 3> air_R_coefficients(const AIRParams& p);

// The non-local transform y -> exp(int c0 y / y' dx): (c1, c0) -> (c0'/c0 - c1, c0).
LinearODE mobius_nonlocal(const LinearODE& ode);

// ODE satisfied by p = y'.
LinearODE companion_p_ode(const LinearODE& ode);

// y = (p' - c1 p) / c0 with y' = p, member by member.
SolutionBasis reconstruct_y(const SolutionBasis& p_basis, const LinearODE& ode);

// Single point version used by reconstruct_y.
Jet reconstruct_point(const LinearODE& ode, Cx x, Jet p);

}  // namespace heun_air
