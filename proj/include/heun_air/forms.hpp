#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "heun_air/numkernel.hpp"

namespace heun_air {

/// y'' = c1 y' + c0 y
struct LinearODE {
    RatFun c1;
    RatFun c0;
};

enum class Family { BHE, CHE, GHE };

const char* family_name(Family f);

struct BHEFamily {
    Cx sigma, tau;
};

struct CHEFamily {
    Cx lambda, sigma, tau;
    CHEFamily(Cx lambda_, Cx sigma_, Cx tau_);
};

struct GHEFamily {
    Cx a, delta, sigma, tau;
    GHEFamily(Cx a_, Cx delta_, Cx sigma_, Cx tau_);
};

using FamilyParams = std::variant<BHEFamily, CHEFamily, GHEFamily>;

Family family_of(const FamilyParams& f);
Cx family_sigma(const FamilyParams& f);
Cx family_tau(const FamilyParams& f);

inline constexpr double kLiouvillianThreshold = 1e-10;
bool is_liouvillian(const FamilyParams& f);

using ParamTable = std::map<std::string, Cx>;

struct CanonicalParams {
    Family family;
    ParamTable values;  // BHE: alpha beta gamma delta; CHE: + eta; GHE: alpha..epsilon, a, q
};

struct NormalParams {
    Family family;
    ParamTable values;  // BHE: B C D E; CHE: A B C D E; GHE: a A B D E F
};

struct NormalForm {
    RatFun q;               // y'' = q y
    RatFun gauge_exponent;  // c1/2; y = exp(int c1/2) u
};

NormalForm to_normal_form(const LinearODE& ode);

// Normal-form ODE of a solvable family (c1 = 0).
LinearODE family_to_normal(const FamilyParams& f);

// Forward parameter maps.
NormalParams family_to_normal_params(const FamilyParams& f);
std::vector<CanonicalParams> family_to_canonical(const FamilyParams& f);
NormalParams canonical_to_normal(const CanonicalParams& c);

// ODEs represented by parameter tables.
LinearODE normal_params_to_ode(const NormalParams& n);
LinearODE canonical_to_ode(const CanonicalParams& c);

// Reads the normal-form parameters off q by a least-squares fit on the
// family's partial-fraction basis. GHE needs the singular point a.
// Empty if the fit residual is not below 1e-9.
std::optional<NormalParams> extract_normal_params(Family family, const RatFun& q, Cx a = Cx{});

// Inverse maps; every consistent sign branch is returned.
std::vector<FamilyParams> normal_to_family(const NormalParams& n, double tol = 1e-9);
std::vector<FamilyParams> canonical_to_family(const CanonicalParams& c, double tol = 1e-9);

// Relation residuals used by the fixed/dependent parameter checks.
double fixed_parameter_defect(const NormalParams& n);      // |E + 3/4| or |F + 3/4|
double dependent_parameter_defect(const NormalParams& n);  // C + D^2, B + A + D + C^2, GHE E-relation
double canonical_constraint_defect(const CanonicalParams& c);

bool same_family_params(const FamilyParams& x, const FamilyParams& y, double tol);
// Equality modulo (lambda, tau) -> (-lambda, -tau) for CHE and
// (delta, sigma) -> (-delta, -sigma) for GHE.
bool equivalent_family_params(const FamilyParams& x, const FamilyParams& y, double tol);
bool contains_family(const std::vector<FamilyParams>& list, const FamilyParams& f, double tol);

std::string describe(const FamilyParams& f);

}  // namespace heun_air
