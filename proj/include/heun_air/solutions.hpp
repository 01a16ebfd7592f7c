#pragma once

#include <string>
#include <vector>

#include "heun_air/abel.hpp"
#include "heun_air/basis.hpp"
#include "heun_air/forms.hpp"

namespace heun_air {

// Closed-form bases of the family normal forms y'' = q y.
SolutionBasis solve_bhe(const BHEFamily& f);
SolutionBasis solve_che(const CHEFamily& f);
SolutionBasis solve_ghe(const GHEFamily& f);
SolutionBasis solve(const FamilyParams& f);

// Hypergeometric target equation (1F1 / 1F1 / 2F1 type) attached to a family.
LinearODE pfq_target_ode(const FamilyParams& f);
// Heun-type equation obtained by the non-local transform of the target.
LinearODE intermediary_ode(const FamilyParams& f);

// Independent construction through p = y' of the intermediary equation,
// followed by the gauge to normal form. General branch only.
SolutionBasis solve_via_p_route(const FamilyParams& f);

struct EvalRow {
    Cx x;
    Jet y1, y2;
    bool ok = false;
    std::string status;  // "ok" or "<ErrorKind>: message"
};

std::vector<EvalRow> eval_basis(const SolutionBasis& b, const std::vector<Cx>& xs);

}  // namespace heun_air
