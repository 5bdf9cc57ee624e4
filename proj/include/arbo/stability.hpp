#pragma once

#include <Eigen/Dense>

#include "arbo/model.hpp"
#include "arbo/ode.hpp"

namespace arbo {

using Matrix10 = Eigen::Matrix<double, kStates, kStates>;
using Vector10 = Eigen::Matrix<double, kStates, 1>;

enum class Verdict { Stable, Marginal, Unstable };
enum class StabilityMethod { Eigen, RouthHurwitz };

struct StabilityVerdict {
    double eigen_max_real = 0;  // NaN for the Routh-Hurwitz method
    bool stable = false;
    Verdict verdict = Verdict::Unstable;
    StabilityMethod method = StabilityMethod::Eigen;
};

constexpr double kStabilityTol = 1e-9;

// Central differences with h_i = 1e-6 max(1, |x_i|).
Matrix10 jacobian(const State& x, const ModelParams& p);
Matrix10 jacobian(const State& x, const Controls& u, const ModelParams& p, const ControlParams& c);
// Exact Jacobian through first-order jets.
Matrix10 jacobian_exact(const State& x, const ModelParams& p);

StabilityVerdict eigen_verdict(const Matrix10& J);
StabilityVerdict equilibrium_verdict(const State& x, const ModelParams& p);

struct RouthHurwitz {
    double c1, c2, c3, c4;  // quartic coefficients, c4 proportional to (1 - N)
    double H1, H2, H3, H4;
    StabilityVerdict verdict;
};

// Adult-vector/aquatic block of the Jacobian at E0, order (S_v, E, L, P).
Eigen::Matrix4d trivial_vector_block(const ModelParams& p);
RouthHurwitz routh_hurwitz_trivial(const ModelParams& p);

enum class Direction { Backward, Forward };

struct BifurcationCoefficients {
    double beta_star = 0;
    double zeta1 = 0, zeta2 = 0;
    double bif_a1 = 0;          // closed form zeta1 - zeta2
    double bif_a1_hessian = 0;  // generic second-derivative sum
    double bif_a2 = 0;          // closed form
    double bif_a2_generic = 0;  // mixed derivative in beta_hv
    Vector10 v, w;              // left/right null vectors, w7 = 1, v.w = 1
    double min_abs_eigen_real = 0;
    Direction direction = Direction::Forward;
};

BifurcationCoefficients bifurcation_coefficients(const ModelParams& p);

// sum_k v_k sum_ij w_i w_j d2f_k/dx_i dx_j at x0.
double hessian_form(const State& x0, const ModelParams& p, const Vector10& v, const Vector10& w);
// zeta1 - zeta2 by the closed forms at E1 for p with beta_hv = beta*.
double bif_a1_closed(const ModelParams& p_star, const State& e1, const Vector10& v, const Vector10& w,
                     double* zeta1 = nullptr, double* zeta2 = nullptr);

// Lyapunov weights g for L(Y) = <g, X - E0>.
State lyapunov_weights(const ModelParams& p);

struct LyapunovReport {
    double L0 = 0;
    double max_increment = 0;         // full <g, X - E0>
    double max_increment_vector = 0;  // adult-vector and aquatic part only
};

LyapunovReport lyapunov_trivial_check(const ModelParams& p, const Trajectory<kStates>& traj);

}  // namespace arbo
