#pragma once

// Gaussian-formalism thermometry for the MTCS probe: quadrature moments,
// quantum Fisher information (generic numeric pipeline and closed form),
// classical Fisher information for quadrature measurements, error
// propagation, Cramer-Rao bounds and the qubit-probe baseline.
//
// Quadrature convention: x = a + a^dag, p = i(a^dag - a) with plain centered
// covariance, so the vacuum covariance matrix is the identity.  With this
// choice the closed-form moments hold verbatim:
//   <x> = 2 theta (1 - 2p) = 2 theta tanh(phi),    <p> = 0,
//   sigma = diag(2 nbar + 1 + 16 theta^2 p(1-p),  2 nbar + 1)
//         = diag(coth(Phi) + 4 eta,               coth(Phi)),
// where eta = theta^2 sech^2(phi), phi = omega_q/2T, Phi = omega_r/2T.
//
// The QFI is the Gaussian-equivalent QFI: the MTCS is a two-Gaussian mixture
// treated through its first and second moments (its p marginal is exactly
// Gaussian; see photon_stats::excess_kurtosis).

#include <Eigen/Dense>

#include <cmath>
#include <functional>

#include "mtcs/errors.hpp"
#include "mtcs/model.hpp"
#include "mtcs/photon_stats.hpp"

namespace mtcs {

struct GaussianMoments {
    Eigen::Vector2d d;      // first moments (<x>, <p>)
    Eigen::Matrix2d sigma;  // centered covariance
    double mu;              // purity 1/sqrt(det sigma)
};

using MomentsFn = std::function<GaussianMoments(double)>;

struct FisherPoint {
    double t;
    double qfi;           // Gaussian QFI, covariance terms only (as printed)
    double qfi_extended;  // + first-moment term (d')^T sigma^{-1} d'
    double cfi_x;         // position-measurement CFI
    double cfi_p;         // momentum-measurement CFI
    double ratio;         // (cfi_x + cfi_p) / qfi, the total quadrature information
};

// Intermediates of the closed-form QFI and CFI.
struct ClosedFormTerms {
    double eta;     // theta^2 sech^2(phi)
    double alpha;   // theta^2 omega_q^2 sech^4(phi), first-CFI-term numerator
    double zeta;    // 4 eta + coth(Phi) = sigma_11
    double a1;      // (omega_r^4 T^4 / 4) [(sigma_11'/sigma_11)^2 + (sigma_22'/sigma_22)^2]
    double a2;      // mu^2 = tanh(Phi)/zeta
    double big_a1;  // 4 a1/(1 + a2): covariance-trace QFI term, scaled by 2 T^4 omega_r^4
    double big_b1;  // purity QFI term, same scaling
};

struct QubitProbeParams {
    double omega_p;  // probe qubit frequency
    double omega_a;  // ancilla frequency
    double g;

    QubitProbeParams(double omega_p_, double omega_a_, double g_)
        : omega_p(omega_p_), omega_a(omega_a_), g(g_) {
        if (!(omega_p > 0.0) || !(omega_a > 0.0) || !(g >= 0.0))
            throw InvalidParameter("QubitProbeParams: frequencies must be > 0, g >= 0");
    }

    double theta_q() const { return std::atan(2.0 * g / omega_p); }
};

inline GaussianMoments quadrature_moments(const MtcsParams& mp) {
    GaussianMoments gm;
    const double coth = 1.0 / std::tanh(mp.big_phi);
    const double sech = 1.0 / std::cosh(mp.phi);
    const double eta = mp.theta * mp.theta * sech * sech;
    gm.d << 2.0 * mp.theta * std::tanh(mp.phi), 0.0;
    gm.sigma << coth + 4.0 * eta, 0.0, 0.0, coth;
    gm.mu = 1.0 / std::sqrt(gm.sigma(0, 0) * gm.sigma(1, 1));
    return gm;
}

inline GaussianMoments thermal_moments(double omega, double t) {
    GaussianMoments gm;
    const double c = 1.0 / std::tanh(omega / (2.0 * t));
    gm.d.setZero();
    gm.sigma = c * Eigen::Matrix2d::Identity();
    gm.mu = 1.0 / c;
    return gm;
}

// Moments of the MTCS as a function of temperature, for the numeric
// pipelines.  Evaluation points are clamped like SystemParams itself, so
// finite-difference stencils stay defined down to the clamp boundary.
inline MomentsFn mtcs_moments_fn(const SystemParams& sp) {
    return [sp](double t) {
        const double tc = std::max(t, kMinTemperatureScale * sp.omega_r);
        return quadrature_moments(mtcs_params(sp.with_temperature(tc)));
    };
}

namespace detail {

// Temperature derivative by central differences with two Richardson levels.
// The step is much larger than the classic sqrt(eps) rule: the covariance
// entries ride on O(1) constants (coth -> 1 at low T), so small steps lose
// the signal to cancellation before truncation error matters.
inline constexpr double kDerivStep = 8e-3;

template <typename F>
double ddT(F&& f, double t) {
    const double h = kDerivStep * std::max(t, 0.01);
    auto cd = [&](double hh) { return (f(t + hh) - f(t - hh)) / (2.0 * hh); };
    const double d1 = cd(h), d2 = cd(h / 2), d4 = cd(h / 4);
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d4 - d2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

struct MomentDerivs {
    Eigen::Vector2d dd;
    Eigen::Matrix2d dsigma;
    double dmu;
};

// One evaluation of the stencil for all moment components at once.
inline MomentDerivs moment_derivs(const MomentsFn& f, double t) {
    const double h = kDerivStep * std::max(t, 0.01);
    GaussianMoments gp[3], gm[3];
    const double steps[3] = {h, h / 2, h / 4};
    for (int i = 0; i < 3; ++i) {
        gp[i] = f(t + steps[i]);
        gm[i] = f(t - steps[i]);
    }
    auto combine = [&](auto&& get) {
        using T = std::decay_t<decltype(get(gp[0]))>;
        const T d1 = (get(gp[0]) - get(gm[0])) / (2.0 * steps[0]);
        const T d2 = (get(gp[1]) - get(gm[1])) / (2.0 * steps[1]);
        const T d4 = (get(gp[2]) - get(gm[2])) / (2.0 * steps[2]);
        const T r1 = (4.0 * d2 - d1) / 3.0;
        const T r2 = (4.0 * d4 - d2) / 3.0;
        return T((16.0 * r2 - r1) / 15.0);
    };
    MomentDerivs md;
    md.dd = combine([](const GaussianMoments& g) -> Eigen::Vector2d { return g.d; });
    md.dsigma = combine([](const GaussianMoments& g) -> Eigen::Matrix2d { return g.sigma; });
    md.dmu = combine([](const GaussianMoments& g) -> double { return g.mu; });
    return md;
}

}  // namespace detail

// Gaussian QFI from a moments pipeline,
//   F = Tr[(sigma^{-1} sigma')^2] / (2 (1 + mu^2)) + 2 mu'^2 / (1 - mu^4),
// optionally plus the first-moment term (d')^T sigma^{-1} d'.  When the
// purity is numerically 1 and mu' vanishes, the purity term takes its zero
// limit; a purity >= 1 with nonvanishing derivative has no finite limit.
inline double qfi_gaussian(const MomentsFn& moments, double t, bool include_first_moment = false) {
    const GaussianMoments g = moments(t);
    const double det = g.sigma.determinant();
    if (!(det > 0.0) || !g.sigma.allFinite())
        throw SingularCovariance("qfi_gaussian: det sigma = " + std::to_string(det));
    const detail::MomentDerivs md = detail::moment_derivs(moments, t);
    const Eigen::Matrix2d sinv = g.sigma.inverse();
    const Eigen::Matrix2d m = sinv * md.dsigma;
    const double mu2 = g.mu * g.mu;
    double f = (m * m).trace() / (2.0 * (1.0 + mu2));
    if (g.mu < 1.0 - 1e-9) {
        f += 2.0 * md.dmu * md.dmu / (1.0 - mu2 * mu2);
    } else if (g.mu >= 1.0 && std::abs(md.dmu) > 1e-12) {
        throw PurityOverflow("qfi_gaussian: mu = " + std::to_string(g.mu) +
                             " with dmu/dT = " + std::to_string(md.dmu));
    }
    if (include_first_moment) f += md.dd.dot(sinv * md.dd);
    return f;
}

// QFI of a thermalized harmonic oscillator, omega^2 csch^2(omega/2T) / 4T^4.
inline double qfi_thermal_ho(double omega_osc, double t) {
    if (!(omega_osc > 0.0) || !(t > 0.0))
        throw InvalidParameter("qfi_thermal_ho: omega, t must be > 0");
    const double s = std::sinh(omega_osc / (2.0 * t));
    const double csch = 1.0 / s;
    return omega_osc * omega_osc * csch * csch / (4.0 * t * t * t * t);
}

// Closed-form QFI intermediates.  The covariance matrix is diagonal,
// sigma = diag(zeta, coth Phi), so with r_s = sigma_11'/sigma_11 and
// r_c = sigma_22'/sigma_22 the two QFI terms reduce to
//   trace term  = (r_s^2 + r_c^2) / (2 (1 + mu^2)),
//   purity term = mu^2 (r_s + r_c)^2 / (2 (1 - mu^4)),
// written below in the (A1 + B1)/(2 T^4 omega_r^4) normalization.
inline ClosedFormTerms qfi_closed_terms(const SystemParams& sp) {
    const MtcsParams mp = mtcs_params(sp);
    const double t = sp.t, wq = sp.omega_q, wr = sp.omega_r;
    const double sech = 1.0 / std::cosh(mp.phi);
    const double tanh_phi = std::tanh(mp.phi);
    const double tanh_big = std::tanh(mp.big_phi);
    const double coth_big = 1.0 / tanh_big;
    const double sh = std::sinh(mp.big_phi);
    const double csch2 = 1.0 / (sh * sh);

    ClosedFormTerms ct;
    ct.eta = mp.theta * mp.theta * sech * sech;
    ct.alpha = mp.theta * mp.theta * wq * wq * sech * sech * sech * sech;
    ct.zeta = 4.0 * ct.eta + coth_big;
    const double t2 = t * t;
    const double ds11 = (8.0 * ct.eta * wq * tanh_phi + wr * csch2) / (2.0 * t2);
    const double ds22 = wr * csch2 / (2.0 * t2);
    const double rs = ds11 / ct.zeta;
    const double rc = ds22 * tanh_big;
    const double wr4t4 = t2 * t2 * wr * wr * wr * wr;
    ct.a2 = tanh_big / ct.zeta;  // mu^2
    ct.a1 = wr4t4 * (rs * rs + rc * rc) / 4.0;
    ct.big_a1 = 4.0 * ct.a1 / (1.0 + ct.a2);
    const double num = rs + rc;
    const double denom = 1.0 - ct.a2 * ct.a2;
    ct.big_b1 = (num == 0.0 || denom <= 0.0) ? 0.0 : wr4t4 * ct.a2 * num * num / denom;
    return ct;
}

inline double qfi_mtcs_closed(const SystemParams& sp) {
    const ClosedFormTerms ct = qfi_closed_terms(sp);
    const double t2 = sp.t * sp.t;
    const double wr2 = sp.omega_r * sp.omega_r;
    return (ct.big_a1 + ct.big_b1) / (2.0 * t2 * t2 * wr2 * wr2);
}

// First-moment QFI contribution (d')^T sigma^{-1} d' in closed form; equals
// the first CFI term alpha/(T^4 zeta) since sigma is diagonal.
inline double qfi_first_moment_term(const SystemParams& sp) {
    const ClosedFormTerms ct = qfi_closed_terms(sp);
    const double t2 = sp.t * sp.t;
    return ct.alpha / (t2 * t2 * ct.zeta);
}

// CFI of a Gaussian quadrature measurement from a moments pipeline.  The
// measurement covariance sigma^x = lim_{R->inf} diag(1/R, R) is taken
// analytically: only the measured diagonal entry survives,
//   F_C = |d_k'|^2 / sigma_kk + |sigma_kk'|^2 / (2 sigma_kk^2).
inline double cfi_gaussian_measurement(const MomentsFn& moments, double t, QuadratureAxis axis) {
    const GaussianMoments g = moments(t);
    const int k = axis == QuadratureAxis::x ? 0 : 1;
    const double v = g.sigma(k, k);
    if (!(v > 0.0)) throw SingularCovariance("cfi_gaussian_measurement: sigma_kk <= 0");
    const detail::MomentDerivs md = detail::moment_derivs(moments, t);
    const double dd = md.dd(k);
    const double dv = md.dsigma(k, k);
    return dd * dd / v + dv * dv / (2.0 * v * v);
}

// Position-measurement CFI in closed form,
//   F_C1 = alpha / (T^4 zeta),
//   F_C2 = (8 eta omega_q tanh(phi) + omega_r csch^2(Phi))^2 / (8 T^4 zeta^2).
inline double cfi_position_closed(const SystemParams& sp) {
    const ClosedFormTerms ct = qfi_closed_terms(sp);
    const MtcsParams mp = mtcs_params(sp);
    const double sh = std::sinh(mp.big_phi);
    const double csch2 = 1.0 / (sh * sh);
    const double t2 = sp.t * sp.t;
    const double fc1 = ct.alpha / (t2 * t2 * ct.zeta);
    const double num = 8.0 * ct.eta * sp.omega_q * std::tanh(mp.phi) + sp.omega_r * csch2;
    const double fc2 = num * num / (8.0 * t2 * t2 * ct.zeta * ct.zeta);
    return fc1 + fc2;
}

// Momentum-measurement CFI in closed form: <p> = 0, sigma_22 = coth(Phi),
// so only the variance term survives: omega_r^2 csch^2(2 Phi) / (2 T^4).
inline double cfi_momentum_closed(const SystemParams& sp) {
    const MtcsParams mp = mtcs_params(sp);
    const double s = std::sinh(2.0 * mp.big_phi);
    const double csch = 1.0 / s;
    const double t2 = sp.t * sp.t;
    return sp.omega_r * sp.omega_r * csch * csch / (2.0 * t2 * t2);
}

// Fisher-information bundle at the given temperature.  `ratio` compares the
// total quadrature information cfi_x + cfi_p against the covariance-term QFI;
// it rises from 0 at low T and saturates near 1 in the thermal regime.
inline FisherPoint fisher_ratio(const SystemParams& sp) {
    FisherPoint fp;
    fp.t = sp.t;
    fp.qfi = qfi_mtcs_closed(sp);
    fp.qfi_extended = fp.qfi + qfi_first_moment_term(sp);
    fp.cfi_x = cfi_position_closed(sp);
    fp.cfi_p = cfi_momentum_closed(sp);
    fp.ratio = fp.qfi > 0.0 ? (fp.cfi_x + fp.cfi_p) / fp.qfi : 0.0;
    return fp;
}

// QFI of the ancilla-assisted qubit probe,
//   [2 omega_p^2 sech^2(omega_p/2T) + theta_q^2 omega_a^2 sech^2(omega_a/2T)] / 8T^4,
// theta_q = arctan(2g/omega_p).
inline double qfi_qubit_probe(const QubitProbeParams& qp, double t) {
    if (!(t > 0.0)) throw InvalidParameter("qfi_qubit_probe: t must be > 0");
    const double sp = 1.0 / std::cosh(qp.omega_p / (2.0 * t));
    const double sa = 1.0 / std::cosh(qp.omega_a / (2.0 * t));
    const double th = qp.theta_q();
    const double t4 = t * t * t * t;
    return (2.0 * qp.omega_p * qp.omega_p * sp * sp +
            th * th * qp.omega_a * qp.omega_a * sa * sa) /
           (8.0 * t4);
}

// Photon-counting error propagation Var(n)/|d<n>/dT|^2 in closed form,
//   delta^2 T = 4 T^4 sinh^2(Phi) [1 + 2 theta^2 sinh(2 Phi)] / omega_r^2.
// Diverges (returns +inf) in the deep low-temperature limit.
inline double error_propagation(const SystemParams& sp) {
    const MtcsParams mp = mtcs_params(sp);
    const double sh = std::sinh(mp.big_phi);
    const double t2 = sp.t * sp.t;
    return 4.0 * t2 * t2 * sh * sh *
           (1.0 + 2.0 * mp.theta * mp.theta * std::sinh(2.0 * mp.big_phi)) /
           (sp.omega_r * sp.omega_r);
}

// Cramer-Rao bound Delta T = 1/sqrt(n F).
inline double cramer_rao_bound(double fisher, long n_measurements) {
    if (!(fisher > 0.0)) throw NonPositiveFisher("cramer_rao_bound: F must be > 0");
    if (n_measurements < 1) throw InvalidParameter("cramer_rao_bound: n must be >= 1");
    return 1.0 / std::sqrt(static_cast<double>(n_measurements) * fisher);
}

}  // namespace mtcs
