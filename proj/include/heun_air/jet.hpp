#pragma once

#include "heun_air/specialfns.hpp"

namespace heun_air {

// First-order jet: a value and its derivative with respect to x.
struct Jet {
    Cx v{};
    Cx d{};
};

inline Jet variable(Cx x) { return {x, Cx{1.0}}; }
inline Jet constant(Cx c) { return {c, Cx{}}; }

inline Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d}; }
inline Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d - b.d}; }
inline Jet operator-(Jet a) { return {-a.v, -a.d}; }
inline Jet operator*(Jet a, Jet b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Jet operator/(Jet a, Jet b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
inline Jet operator+(Jet a, Cx c) { return {a.v + c, a.d}; }
inline Jet operator+(Cx c, Jet a) { return a + c; }
inline Jet operator-(Jet a, Cx c) { return {a.v - c, a.d}; }
inline Jet operator-(Cx c, Jet a) { return {c - a.v, -a.d}; }
inline Jet operator*(Jet a, Cx c) { return {a.v * c, a.d * c}; }
inline Jet operator*(Cx c, Jet a) { return a * c; }
inline Jet operator/(Jet a, Cx c) { return {a.v / c, a.d / c}; }
inline Jet operator/(Cx c, Jet a) { return constant(c) / a; }

inline Jet exp(Jet a) {
    Cx e = std::exp(a.v);
    return {e, e * a.d};
}

inline Jet pow(Jet base, Cx w, Cut cut = Cut::reject) {
    Cx p = cpow(base.v, w, cut);
    return {p, w * p / base.v * base.d};
}

// Chain rule: f evaluated at the jet's value.
inline Jet chain(const FnValue& f, Jet inner) { return {f.value, f.derivative * inner.d}; }

}  // namespace heun_air
