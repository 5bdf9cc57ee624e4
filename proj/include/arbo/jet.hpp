#pragma once

// Truncated Taylor series c0 + c1 t + c2 t^2. Used to get exact Jacobian
// columns and directional second derivatives of the model fields.

namespace arbo {

struct Jet {
    double c0 = 0, c1 = 0, c2 = 0;

    Jet() = default;
    Jet(double v) : c0(v) {}
    Jet(double a, double b, double c) : c0(a), c1(b), c2(c) {}
};

inline Jet operator+(Jet a, Jet b) { return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2}; }
inline Jet operator-(Jet a, Jet b) { return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2}; }
inline Jet operator-(Jet a) { return {-a.c0, -a.c1, -a.c2}; }
inline Jet operator*(Jet a, Jet b) {
    return {a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0, a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0};
}
inline Jet operator/(Jet a, Jet b) {
    double q0 = a.c0 / b.c0;
    double q1 = (a.c1 - q0 * b.c1) / b.c0;
    double q2 = (a.c2 - q0 * b.c2 - q1 * b.c1) / b.c0;
    return {q0, q1, q2};
}
inline Jet operator+(Jet a, double b) { return a + Jet(b); }
inline Jet operator+(double a, Jet b) { return Jet(a) + b; }
inline Jet operator-(Jet a, double b) { return a - Jet(b); }
inline Jet operator-(double a, Jet b) { return Jet(a) - b; }
inline Jet operator*(Jet a, double b) { return {a.c0 * b, a.c1 * b, a.c2 * b}; }
inline Jet operator*(double a, Jet b) { return b * a; }
inline Jet operator/(Jet a, double b) { return {a.c0 / b, a.c1 / b, a.c2 / b}; }
inline Jet operator/(double a, Jet b) { return Jet(a) / b; }

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.c0; }

}  // namespace arbo
