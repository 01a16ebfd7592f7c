#pragma once

#include <complex>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "heun_air/errors.hpp"

namespace heun_air {

using Cx = std::complex<double>;

inline constexpr int kMaxDegree = 64;
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

// Throws NonFiniteError if either component is NaN or infinite.
Cx checked(Cx v, const char* what = "value");

/// Polynomial with complex coefficients in ascending degree order.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Cx> coeffs);
    Poly(std::initializer_list<Cx> coeffs);

    static Poly constant(Cx c);
    static Poly x();
    static Poly from_roots(const std::vector<Cx>& roots, Cx lead = 1.0);

    const std::vector<Cx>& coeffs() const { return c_; }
    int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Cx lead() const { return c_.empty() ? Cx{} : c_.back(); }
    Cx operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Cx{}; }
    double max_abs() const;

    Cx eval(Cx x) const;
    Poly derivative() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Cx s, const Poly& p);
    friend Poly operator*(const Poly& p, Cx s) { return s * p; }

    // Long division a = q*b + r. The remainder is reported as-is; callers
    // decide whether it is negligible.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);

private:
    std::vector<Cx> c_;
    void trim();
};

/// Ratio num/den of polynomials; den is monic and nonzero.
class RatFun {
public:
    RatFun() : num_(), den_(Poly::constant(1.0)) {}
    RatFun(Poly num, Poly den);
    RatFun(Poly num);  // NOLINT: implicit polynomial promotion is intended
    RatFun(Cx c);      // NOLINT
    RatFun(double c) : RatFun(Cx(c)) {}  // NOLINT

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFun operator-() const { return RatFun(-num_, den_); }
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);

private:
    Poly num_;
    Poly den_;
};

/// 1/(x - r)^k as a RatFun.
RatFun pole(Cx r, int k = 1);

Cx rat_eval(const RatFun& r, Cx x);
RatFun rat_derivative(const RatFun& r);
bool rat_equal(const RatFun& a, const RatFun& b, double tol = 1e-10);

// r'/r, built directly from num and den to keep degrees low.
RatFun log_derivative(const RatFun& r);

std::string to_string(const Poly& p);
std::string to_string(const RatFun& r);

}  // namespace heun_air
