#pragma once

#include <cstddef>

#include "heun_air/numkernel.hpp"

namespace heun_air {

/// A function value together with its derivative in the last argument.
struct FnValue {
    Cx value;
    Cx derivative;
};

/// Policy for arguments lying exactly on the negative real axis, the cut
/// of every fractional power and logarithm used here.
///   reject - raise BranchError (default)
///   above  - continue from the upper half plane, arg = +pi
enum class Cut { reject, above };

enum class WhittakerKind { M, W };
enum class ErfKind { erf, erfi };

// Series term cap: 10000 unless HEUN_AIR_MAX_TERMS is set (read once).
std::size_t max_series_terms();

Cx gamma_fn(Cx z);
Cx rgamma(Cx z);  // 1/Gamma, zero at the poles

// base^w via the principal logarithm, with the given cut policy.
Cx cpow(Cx base, Cx w, Cut cut = Cut::reject);
Cx clog(Cx z, Cut cut = Cut::reject);

FnValue hyp1f1(Cx a, Cx b, Cx z);
FnValue kummer_u(Cx a, Cx b, Cx z, Cut cut = Cut::reject);
FnValue hyp2f1(Cx a, Cx b, Cx c, Cx z);
FnValue hyp0f1(Cx b, Cx z);
FnValue whittaker(WhittakerKind kind, Cx mu, Cx nu, Cx z, Cut cut = Cut::reject);
FnValue erf_like(ErfKind kind, Cx z);
FnValue inc_gamma_upper(Cx a, Cx z, Cut cut = Cut::reject);
FnValue inc_beta(Cx x, Cx a, Cx b, Cut cut = Cut::reject);

}  // namespace heun_air
