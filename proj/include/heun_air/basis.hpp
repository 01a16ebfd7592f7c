#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heun_air/forms.hpp"
#include "heun_air/jet.hpp"

namespace heun_air {

enum class Classification { Liouvillian, Hypergeometric };

const char* classification_name(Classification c);

// Maps x to (y(x), y'(x)).
using Member = std::function<Jet(Cx)>;

/// Admissible evaluation points: open real intervals minus excluded points,
/// plus (optionally) non-real x.
struct Domain {
    std::vector<std::pair<double, double>> intervals;
    std::vector<Cx> excluded;
    bool complex_allowed = true;
    std::string description;

    bool contains(Cx x) const;
};

struct SolutionBasis {
    Member y1;
    Member y2;
    Classification classification = Classification::Hypergeometric;
    std::optional<FamilyParams> family;
    Domain valid_domain;
    std::string formula;              // identifier of the closed form used
    ParamTable parameters;            // derived constants (Sigma, T, mu, nu, ...)
    std::map<std::string, std::string> expressions;  // symbolic helpers such as Lambda(x)
};

}  // namespace heun_air
