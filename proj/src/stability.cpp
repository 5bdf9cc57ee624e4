#include "arbo/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arbo/thresholds.hpp"

namespace arbo {

namespace {

template <class F>
Matrix10 central_differences(const State& x, F&& f) {
    Matrix10 J;
    for (int j = 0; j < kStates; ++j) {
        double h = 1e-6 * std::max(1.0, std::abs(x[j]));
        State xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        State fp = f(xp), fm = f(xm);
        for (int i = 0; i < kStates; ++i) J(i, j) = (fp[i] - fm[i]) / (2 * h);
    }
    return J;
}

StateT<Jet> seed(const State& x, const Vector10& dir) {
    StateT<Jet> xj;
    for (int i = 0; i < kStates; ++i) xj[i] = Jet(x[i], dir[i], 0.0);
    return xj;
}

}  // namespace

Matrix10 jacobian(const State& x, const ModelParams& p) {
    return central_differences(x, [&](const State& y) { return basic_field(y, p); });
}

Matrix10 jacobian(const State& x, const Controls& u, const ModelParams& p, const ControlParams& c) {
    return central_differences(x, [&](const State& y) { return controlled_field(y, u, p, c); });
}

Matrix10 jacobian_exact(const State& x, const ModelParams& p) {
    Matrix10 J;
    for (int j = 0; j < kStates; ++j) {
        auto f = basic_field(seed(x, Vector10::Unit(j)), p);
        for (int i = 0; i < kStates; ++i) J(i, j) = f[i].c1;
    }
    return J;
}

StabilityVerdict eigen_verdict(const Matrix10& J) {
    Eigen::EigenSolver<Matrix10> es(J, false);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::numeric, "eigenvalue solver failed");
    double m = es.eigenvalues().real().maxCoeff();
    StabilityVerdict v;
    v.method = StabilityMethod::Eigen;
    v.eigen_max_real = m;
    v.stable = m < -kStabilityTol;
    v.verdict = v.stable ? Verdict::Stable : (m <= kStabilityTol ? Verdict::Marginal : Verdict::Unstable);
    return v;
}

StabilityVerdict equilibrium_verdict(const State& x, const ModelParams& p) {
    return eigen_verdict(jacobian_exact(x, p));
}

Eigen::Matrix4d trivial_vector_block(const ModelParams& p) {
    auto k = derive_constants(p);
    Eigen::Matrix4d B;
    B << -k.k8, 0, 0, p.theta,
         p.mu_b, -k.k5, 0, 0,
         0, p.s, -k.k6, 0,
         0, 0, p.l, -k.k7;
    return B;
}

RouthHurwitz routh_hurwitz_trivial(const ModelParams& p) {
    auto k = derive_constants(p);
    const double n = net_reproductive_number(p);
    RouthHurwitz r{};
    r.c1 = k.k8 + k.k7 + k.k6 + k.k5;
    r.c2 = (k.k7 + k.k6 + k.k5) * k.k8 + (k.k6 + k.k5) * k.k7 + k.k5 * k.k6;
    r.c3 = ((k.k6 + k.k5) * k.k7 + k.k5 * k.k6) * k.k8 + k.k5 * k.k6 * k.k7;
    r.c4 = k.k5 * k.k6 * k.k7 * k.k8 * (1 - n);
    r.H1 = r.c1;
    r.H2 = r.c1 * r.c2 - r.c3;
    r.H3 = r.c1 * r.c2 * r.c3 - r.c1 * r.c1 * r.c4 - r.c3 * r.c3;
    r.H4 = r.c4 * r.H3;
    r.verdict.method = StabilityMethod::RouthHurwitz;
    r.verdict.eigen_max_real = std::numeric_limits<double>::quiet_NaN();
    r.verdict.stable = r.H1 > 0 && r.H2 > 0 && r.H3 > 0 && r.H4 > 0;
    r.verdict.verdict = r.verdict.stable ? Verdict::Stable : Verdict::Unstable;
    return r;
}

double hessian_form(const State& x0, const ModelParams& p, const Vector10& v, const Vector10& w) {
    // Along x0 + t w the field's t^2 coefficient is half the Hessian form.
    auto f = basic_field(seed(x0, w), p);
    double s = 0;
    for (int k = 0; k < kStates; ++k) s += v[k] * 2 * f[k].c2;
    return s;
}

double bif_a1_closed(const ModelParams& p, const State& e1, const Vector10& v, const Vector10& w,
                     double* zeta1, double* zeta2) {
    auto k = derive_constants(p);
    const double nh = e1[Sh], sv = e1[Sv];
    const double K1 = p.mu_b * (1 - e1[Egg] / p.Gamma_E);
    const double K2 = k.k5 + p.mu_b * sv / p.Gamma_E;
    const double K3 = p.s * (1 - e1[Lar] / p.Gamma_L);
    const double K4 = k.k6 + p.s * e1[Egg] / p.Gamma_L;
    const double avh = p.a * p.beta_vh;
    const double hq = p.eta_h * w[Eh] + w[Ih];
    const double z1 = (2 * (k.k7 * K2 * K4 / (p.l * K1 * K3)) * (avh / nh) * hq * w[Pup] -
                       2 * avh * sv / (nh * nh) * hq * w[Sh]) *
                      v[Ev];
    const double z2 = 2 * (p.a * p.beta_hv / nh) * (p.eta_v * w[Ev] + w[Iv]) * (w[Eh] + w[Ih] + w[Rh]) * v[Eh] +
                      2 * (avh / nh) *
                          ((sv / nh) * hq * (w[Eh] + w[Ih] + w[Rh]) + (k.k9 / p.gamma_v) * hq * w[Iv]) * v[Ev];
    if (zeta1) *zeta1 = z1;
    if (zeta2) *zeta2 = z2;
    return z1 - z2;
}

BifurcationCoefficients bifurcation_coefficients(const ModelParams& p) {
    auto t = bifurcation_thresholds(p);
    if (!t.beta_star) throw Error(ErrorKind::threshold, "bifurcation coefficients require N > 1 and beta_vh > 0");
    ModelParams ps = p;
    ps.beta_hv = *t.beta_star;
    State e1 = dfe_components(ps);
    Matrix10 J = jacobian_exact(e1, ps);

    Eigen::JacobiSVD<Matrix10> svd(J, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int null_dim = 0;
    for (int i = 0; i < kStates; ++i)
        if (sv[i] <= 1e-10 * sv[0]) ++null_dim;
    if (null_dim != 1)
        throw Error(ErrorKind::kernel_dimension,
                    "Jacobian at E1 with beta* has kernel dimension " + std::to_string(null_dim));

    BifurcationCoefficients b;
    b.beta_star = ps.beta_hv;
    b.w = svd.matrixV().col(kStates - 1);
    b.v = svd.matrixU().col(kStates - 1);
    b.w /= b.w[Iv];
    b.v /= b.v.dot(b.w);

    b.bif_a1 = bif_a1_closed(ps, e1, b.v, b.w, &b.zeta1, &b.zeta2);
    b.bif_a1_hessian = hessian_form(e1, ps, b.v, b.w);
    b.bif_a2 = p.a * (p.eta_v * b.w[Ev] + b.w[Iv]) * b.v[Eh];

    // f is affine in beta_hv, so the central difference is exact up to rounding.
    const double h = 1e-3 * ps.beta_hv;
    ModelParams pp = ps, pm = ps;
    pp.beta_hv += h;
    pm.beta_hv -= h;
    b.bif_a2_generic = (b.v.dot(jacobian_exact(e1, pp) * b.w) - b.v.dot(jacobian_exact(e1, pm) * b.w)) / (2 * h);

    Eigen::EigenSolver<Matrix10> es(J, false);
    b.min_abs_eigen_real = es.eigenvalues().real().cwiseAbs().minCoeff();
    b.direction = b.bif_a1 > 0 ? Direction::Backward : Direction::Forward;
    return b;
}

State lyapunov_weights(const ModelParams& p) {
    auto k = derive_constants(p);
    State g;
    g.fill(1.0);
    g[Egg] = k.k8 / p.mu_b;
    g[Lar] = k.k5 * k.k8 / (p.mu_b * p.s);
    g[Pup] = k.k5 * k.k6 * k.k8 / (p.mu_b * p.s * p.l);
    return g;
}

LyapunovReport lyapunov_trivial_check(const ModelParams& p, const Trajectory<kStates>& traj) {
    if (net_reproductive_number(p) > 1)
        throw Error(ErrorKind::precondition, "Lyapunov check for the trivial equilibrium needs N <= 1");
    const State g = lyapunov_weights(p);
    const State e0 = trivial_equilibrium(p);
    auto full = [&](const State& x) {
        double s = 0;
        for (int i = 0; i < kStates; ++i) s += g[i] * (x[i] - e0[i]);
        return s;
    };
    auto vec = [&](const State& x) {
        double s = 0;
        for (int i = Sv; i < kStates; ++i) s += g[i] * x[i];
        return s;
    };
    LyapunovReport r;
    r.L0 = full(traj.values.front());
    for (std::size_t i = 1; i < traj.values.size(); ++i) {
        r.max_increment = std::max(r.max_increment, full(traj.values[i]) - full(traj.values[i - 1]));
        r.max_increment_vector =
            std::max(r.max_increment_vector, vec(traj.values[i]) - vec(traj.values[i - 1]));
    }
    return r;
}

}  // namespace arbo
