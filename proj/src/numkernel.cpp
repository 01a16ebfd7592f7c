#include "heun_air/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace heun_air {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool divides_cleanly(const Poly& a, const Poly& b, Poly& q) {
    if (b.degree() > a.degree()) return false;
    Poly r;
    Poly::divmod(a, b, q, r);
    return r.is_zero() || r.max_abs() <= 1e-11 * std::max(a.max_abs(), 1e-300);
}

bool nearly_same(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return false;
    double scale = std::max(a.max_abs(), b.max_abs());
    for (int i = 0; i <= a.degree(); ++i)
        if (std::abs(a[i] - b[i]) > 1e-13 * scale) return false;
    return true;
}

}  // namespace

Cx checked(Cx v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NonFiniteError(std::string("non-finite ") + what);
    return v;
}

Poly::Poly(std::vector<Cx> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<Cx> coeffs) : c_(coeffs) { trim(); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == Cx{}) c_.pop_back();
    for (const Cx& v : c_) checked(v, "polynomial coefficient");
    if (degree() > kMaxDegree)
        throw DegreeError("polynomial degree " + std::to_string(degree()) +
                          " exceeds cap " + std::to_string(kMaxDegree));
}

Poly Poly::constant(Cx c) { return Poly({c}); }

Poly Poly::x() { return Poly({Cx{0.0}, Cx{1.0}}); }

Poly Poly::from_roots(const std::vector<Cx>& roots, Cx lead) {
    Poly p = constant(lead);
    for (const Cx& r : roots) p = p * Poly({-r, Cx{1.0}});
    return p;
}

double Poly::max_abs() const {
    double m = 0.0;
    for (const Cx& v : c_) m = std::max(m, std::abs(v));
    return m;
}

Cx Poly::eval(Cx x) const {
    Cx acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Cx> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
    return Poly(std::move(d));
}

Poly Poly::operator-() const {
    std::vector<Cx> d(c_);
    for (Cx& v : d) v = -v;
    return Poly(std::move(d));
}

// Sums that cancel to rounding level are snapped to exact zero so that
// cancellation does not leave spurious high-degree residue.
Poly operator+(const Poly& a, const Poly& b) {
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    std::vector<Cx> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        Cx u = a[i], v = b[i];
        Cx w = u + v;
        if (std::abs(w) <= 8.0 * kEps * (std::abs(u) + std::abs(v))) w = Cx{};
        s[i] = w;
    }
    return Poly(std::move(s));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Cx> m(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) m[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(m));
}

Poly operator*(Cx s, const Poly& p) {
    std::vector<Cx> m(p.c_);
    for (Cx& v : m) v *= s;
    return Poly(std::move(m));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Cx> rem(a.c_);
    int db = b.degree();
    int da = a.degree();
    if (da < db) {
        q = Poly();
        r = a;
        return;
    }
    std::vector<Cx> quo(static_cast<std::size_t>(da - db + 1));
    for (int k = da - db; k >= 0; --k) {
        Cx f = rem[static_cast<std::size_t>(k + db)] / b.lead();
        quo[static_cast<std::size_t>(k)] = f;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * b[static_cast<std::size_t>(j)];
        rem[static_cast<std::size_t>(k + db)] = Cx{};
    }
    rem.resize(static_cast<std::size_t>(db));
    q = Poly(std::move(quo));
    r = Poly(std::move(rem));
}

RatFun::RatFun(Poly num, Poly den) {
    if (den.is_zero()) throw DomainError("rational function with zero denominator");
    Cx lead = den.lead();
    num_ = (1.0 / lead) * num;
    den_ = (1.0 / lead) * den;
}

RatFun::RatFun(Poly num) : num_(std::move(num)), den_(Poly::constant(1.0)) {}

RatFun::RatFun(Cx c) : num_(Poly::constant(c)), den_(Poly::constant(1.0)) {}

RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (nearly_same(a.den_, b.den_)) return RatFun(a.num_ + b.num_, a.den_);
    Poly q;
    if (a.den_.degree() >= b.den_.degree()) {
        if (divides_cleanly(a.den_, b.den_, q)) return RatFun(a.num_ + b.num_ * q, a.den_);
    } else {
        if (divides_cleanly(b.den_, a.den_, q)) return RatFun(a.num_ * q + b.num_, b.den_);
    }
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun();
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw ZeroCoefficientError("division by the zero rational function");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

RatFun pole(Cx r, int k) {
    Poly d = Poly::constant(1.0);
    for (int i = 0; i < k; ++i) d = d * Poly({-r, Cx{1.0}});
    return RatFun(Poly::constant(1.0), d);
}

Cx rat_eval(const RatFun& r, Cx x) {
    const int deg = std::max(r.den().degree(), 0);
    double tol = 1e-12 * std::max(1.0, std::pow(std::abs(x), deg));
    Cx d = r.den().eval(x);
    if (std::abs(d) < tol) {
        std::ostringstream os;
        os << "pole of rational function at x = " << x;
        throw PoleError(os.str());
    }
    return checked(r.num().eval(x) / d, "rational function value");
}

RatFun rat_derivative(const RatFun& r) {
    const Poly& n = r.num();
    const Poly& d = r.den();
    if (d.degree() == 0) return RatFun(n.derivative() * (1.0 / d.lead()));
    return RatFun(n.derivative() * d - n * d.derivative(), d * d);
}

bool rat_equal(const RatFun& a, const RatFun& b, double tol) {
    Poly l = a.num() * b.den();
    Poly r = b.num() * a.den();
    double scale = std::max(l.max_abs(), r.max_abs());
    if (scale == 0.0) return true;
    Poly diff = l - r;
    return diff.max_abs() <= tol * scale;
}

RatFun log_derivative(const RatFun& r) {
    if (r.is_zero()) throw ZeroCoefficientError("logarithmic derivative of zero");
    const Poly& n = r.num();
    const Poly& d = r.den();
    if (d.degree() == 0) return RatFun(n.derivative(), n);
    return RatFun(n.derivative() * d - n * d.derivative(), n * d);
}

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (int i = 0; i <= p.degree(); ++i) {
        Cx c = p[static_cast<std::size_t>(i)];
        if (c == Cx{}) continue;
        if (!first) os << " + ";
        first = false;
        if (c.imag() == 0.0)
            os << c.real();
        else
            os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
        if (i >= 1) os << "*x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

std::string to_string(const RatFun& r) {
    if (r.den().degree() == 0) return to_string(r.num());
    return "(" + to_string(r.num()) + ")/(" + to_string(r.den()) + ")";
}

}  // namespace heun_air
