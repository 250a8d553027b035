#pragma once

// Photon statistics of the resonator state: second-order correlation g2(0),
// number-operator moments, Wigner function, excess kurtosis.
//
// Wigner convention: W is evaluated on quadrature coordinates where the
// vacuum has variance 1/2 in each direction (W_vac = exp(-x^2-p^2)/pi),
// i.e. the x axis here is 1/sqrt(2) times the metrology-module quadrature
// x = a + a^dag.  Only the normalization and axis scale differ; the
// phase-space structure is identical.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mtcs/errors.hpp"
#include "mtcs/hilbert.hpp"
#include "mtcs/model.hpp"

namespace mtcs {

struct NumberMoments {
    double mean;      // <n>
    double second;    // <n^2>
    double variance;  // <n^2> - <n>^2
};

struct WignerGrid {
    Eigen::VectorXd x;
    Eigen::VectorXd p;
    Eigen::MatrixXd values;  // values(i, j) = W(x(i), p(j))
};

inline double g2_numeric(const DensityMatrix& rho, const HilbertSpec& spec) {
    const Operator n = number_operator(spec);
    const double mean = expectation_real(rho, n);
    if (mean < 1e-12) throw ZeroMeanPhotonNumber("g2_numeric: <n> < 1e-12");
    // <a^dag a^dag a a> = <n(n-1)>
    const double m2 = expectation_real(rho, n * n);
    return (m2 - mean) / (mean * mean);
}

inline double g2_analytic(const MtcsParams& mp) {
    const double t2 = mp.theta * mp.theta;
    const double denom = mp.nbar + t2;
    if (denom <= 0.0) throw DegenerateState("g2_analytic: nbar = theta = 0");
    return (t2 * t2 + 2.0 * mp.nbar * mp.nbar + 4.0 * t2 * mp.nbar) / (denom * denom);
}

inline std::vector<double> g2_multimode(const MultimodeParams& mm) {
    std::vector<double> out;
    for (const auto& mp : multimode_reduced_params(mm)) out.push_back(g2_analytic(mp));
    return out;
}

// Closed-form number moments of the MTCS:
//   <n>   = nbar + theta^2
//   <n^2> = 2 nbar^2 + nbar (4 theta^2 + 1) + theta^4 + theta^2
inline NumberMoments number_moments_analytic(const MtcsParams& mp) {
    const double t2 = mp.theta * mp.theta;
    NumberMoments nm;
    nm.mean = mp.nbar + t2;
    nm.second = 2.0 * mp.nbar * mp.nbar + mp.nbar * (4.0 * t2 + 1.0) + t2 * t2 + t2;
    nm.variance = mp.nbar * (mp.nbar + 1.0) + (2.0 * mp.nbar + 1.0) * t2;
    return nm;
}

inline NumberMoments number_moments_numeric(const DensityMatrix& rho, const HilbertSpec& spec) {
    const Operator n = number_operator(spec);
    NumberMoments nm;
    nm.mean = expectation_real(rho, n);
    nm.second = expectation_real(rho, n * n);
    nm.variance = nm.second - nm.mean * nm.mean;
    return nm;
}

// Symmetric axis covering both displaced lobes plus three thermal widths.
inline Eigen::VectorXd default_wigner_axis(const MtcsParams& mp, int points = 201) {
    const double extent = 4.0 + 2.0 * mp.theta + 3.0 * std::sqrt(2.0 * mp.nbar + 1.0);
    return Eigen::VectorXd::LinSpaced(points, -extent, extent);
}

// Wigner function via the Fock-basis Laguerre kernel,
//   W(alpha) = (1/pi) sum_{n,m} rho_{nm} w_{nm}(alpha),  alpha = (x + i p)/sqrt(2),
// with w_{n,n+k} proportional to (2 alpha)^k sqrt(n!/(n+k)!) e^{-2|alpha|^2}
// L_n^{(k)}(4 |alpha|^2).  The exponential damping and the k-dependent
// prefactor are folded into the recurrence seed so nothing overflows even at
// the grid corners.
inline WignerGrid wigner(const DensityMatrix& rho, const HilbertSpec& spec,
                         Eigen::VectorXd x_values, Eigen::VectorXd p_values) {
    const int n = spec.fock_cutoff;
    if (rho.dim() != n) throw DimensionMismatch("wigner: state does not match spec");
    const Operator& r = rho.matrix();

    // sqrt(i! k! / (i+k)!) lookup, the part of the kernel prefactor that is
    // not folded into the recurrence seed.
    Eigen::MatrixXd rem(n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i + k < n; ++i)
            rem(i, k) = std::exp(0.5 * (std::lgamma(i + 1.0) + std::lgamma(k + 1.0) -
                                        std::lgamma(i + k + 1.0)));

    WignerGrid grid;
    grid.x = std::move(x_values);
    grid.p = std::move(p_values);
    grid.values.resize(grid.x.size(), grid.p.size());

    for (Eigen::Index ix = 0; ix < grid.x.size(); ++ix) {
        for (Eigen::Index ip = 0; ip < grid.p.size(); ++ip) {
            const cplx alpha = cplx(grid.x(ix), grid.p(ip)) / std::sqrt(2.0);
            const double mod = std::abs(alpha);
            const double z = 4.0 * mod * mod;
            const double arg = std::arg(alpha);
            double total = 0.0;
            for (int k = 0; k < n; ++k) {
                // seed scale: e^{-z/2} (2|alpha|)^k / sqrt(k!)
                double log_scale = -0.5 * z;
                if (k > 0) {
                    if (mod == 0.0) break;
                    log_scale += k * std::log(2.0 * mod) - 0.5 * std::lgamma(k + 1.0);
                }
                if (log_scale < -745.0) continue;
                const double scale = std::exp(log_scale);
                const cplx phase = k > 0 ? std::exp(cplx(0, k * arg)) : cplx(1, 0);
                double b_prev = scale;                    // scale * L_0^{(k)}(z)
                double b = scale * (1.0 + k - z);         // scale * L_1^{(k)}(z)
                double sign = 1.0;
                for (int i = 0; i + k < n; ++i) {
                    double bi;
                    if (i == 0) {
                        bi = b_prev;
                    } else if (i == 1) {
                        bi = b;
                    } else {
                        bi = ((2.0 * i - 1.0 + k - z) * b - (i - 1.0 + k) * b_prev) / i;
                        b_prev = b;
                        b = bi;
                    }
                    const double term = sign * rem(i, k) * bi;
                    if (k == 0)
                        total += r(i, i).real() * term;
                    else
                        total += 2.0 * (r(i, i + k) * phase).real() * term;
                    sign = -sign;
                }
            }
            grid.values(ix, ip) = total / M_PI;
        }
    }

    const double peak = grid.values.cwiseAbs().maxCoeff();
    const double boundary =
        std::max({grid.values.row(0).cwiseAbs().maxCoeff(),
                  grid.values.row(grid.values.rows() - 1).cwiseAbs().maxCoeff(),
                  grid.values.col(0).cwiseAbs().maxCoeff(),
                  grid.values.col(grid.values.cols() - 1).cwiseAbs().maxCoeff()});
    if (boundary > 1e-6 * peak)
        throw GridTooSmall("wigner: boundary |W| = " + std::to_string(boundary) +
                           " exceeds 1e-6 of peak " + std::to_string(peak));
    return grid;
}

enum class QuadratureAxis { x, p };

// Excess kurtosis <q_c^4>/<q_c^2>^2 - 3 of the centered quadrature q_c.
// Zero for Gaussian marginals; the p marginal of any MTCS is a single
// Gaussian, so kappa_p vanishes identically.
inline double excess_kurtosis(const DensityMatrix& rho, const HilbertSpec& spec,
                              QuadratureAxis axis) {
    const Operator q =
        axis == QuadratureAxis::p ? momentum_quadrature(spec) : position_quadrature(spec);
    const double mean = expectation_real(rho, q);
    const Operator qc = q - mean * identity(spec.fock_cutoff);
    const Operator qc2 = qc * qc;
    const double m2 = expectation_real(rho, qc2);
    const double m4 = expectation_real(rho, qc2 * qc2);
    return m4 / (m2 * m2) - 3.0;
}

}  // namespace mtcs
