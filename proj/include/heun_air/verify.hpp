#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heun_air/basis.hpp"
#include "heun_air/forms.hpp"

namespace heun_air {

struct CheckRow {
    std::string check;  // "residual", "wronskian", "rk45", "evaluation"
    Cx x{};
    int member = 0;     // 1 or 2; 0 when the row covers the pair
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string note;
};

enum class Status { pass, fail, partial };
const char* status_name(Status s);

struct VerificationReport {
    std::optional<FamilyParams> family;
    std::string subject;
    double max_residual = 0.0;
    double wronskian_drift = 0.0;
    double rk_max_rel_error = 0.0;
    std::size_t points_checked = 0;
    Status status = Status::pass;
    std::vector<CheckRow> rows;

    void add(const std::vector<CheckRow>& more);
    // pass: every row under tolerance; partial: no row over tolerance but some
    // rows could not be evaluated; fail otherwise.
    void finalize();
};

struct Tolerances {
    double residual = 1e-7;
    double wronskian = 1e-8;
    double rk = 1e-6;
};

// |y''_FD - c1 y' - c0 y| / max(1, |c0 y|, |c1 y'|), y''_FD from a 4th order
// central difference of y' with h = 1e-4 max(1, |x|).
double residual_at(const LinearODE& ode, const Member& m, Cx x);

std::vector<CheckRow> residual_check(const LinearODE& ode, const SolutionBasis& basis,
                                     const std::vector<Cx>& xs, double tol = 1e-7);

std::vector<CheckRow> wronskian_check(const SolutionBasis& basis, const std::vector<Cx>& xs,
                                      double tol = 1e-8);

using State = std::array<Cx, 2>;
using RHS = std::function<State(double, const State&)>;

struct RKResult {
    State y;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

// Dormand-Prince 5(4) with step-size control.
RKResult rk45_integrate(const RHS& f, double x0, State y0, double x1, double rtol = 1e-10,
                        double atol = 1e-12);

// Integrates from x0 to 50 samples of [lo, hi] with initial data from each
// member. Deviations are measured relative to the largest closed-form
// magnitude seen over the samples.
std::vector<CheckRow> rk45_compare(const LinearODE& ode, const SolutionBasis& basis, double x0,
                                   std::pair<double, double> interval, double tol = 1e-6,
                                   std::size_t samples = 50);

// The ODE of 0F1(;a;x)/(x - kappa), its non-local image and the printed
// 0F1 combination solving the image.
LinearODE example_base_ode(Cx a, Cx kappa);
LinearODE example_ode(Cx a, Cx kappa);
SolutionBasis example_basis(Cx a, Cx kappa);
VerificationReport paper_example_suite(Cx a, Cx kappa, double tol = 1e-8);

// Default pole-free intervals used for a family: (lo, hi, x0).
struct CheckInterval {
    double lo, hi, x0;
};
std::vector<CheckInterval> default_intervals(const FamilyParams& f);

// Splits an interval at excluded real points (keeping 0.05 away from them);
// the printed BHE form continues to a different solution across x = -sigma.
std::vector<CheckInterval> split_interval(const SolutionBasis& b, const CheckInterval& iv);

// Evenly spaced interior points of [lo, hi] accepted by the basis domain and
// kept 0.05 away from excluded points.
std::vector<Cx> sample_points(const SolutionBasis& b, double lo, double hi, std::size_t n);

// residual + wronskian + rk45 on the default intervals of the family.
VerificationReport verify_family(const FamilyParams& f, const Tolerances& tol = {});

}  // namespace heun_air
