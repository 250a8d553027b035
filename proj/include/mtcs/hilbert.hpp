#pragma once

// Dense complex operator algebra on truncated Hilbert spaces: ladder and
// qubit operators, displacement, tensor products, partial trace, Hermitian
// matrix functions, fidelity and expectation values.
//
// All functions are pure; matrices are plain Eigen values and safe to share
// across threads.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>

#include "mtcs/errors.hpp"

namespace mtcs {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;

// Truncated single-mode Fock space with levels 0 .. fock_cutoff-1.
struct HilbertSpec {
    int fock_cutoff;

    explicit HilbertSpec(int n) : fock_cutoff(n) {
        if (n < 2) throw InvalidParameter("HilbertSpec: fock cutoff must be >= 2");
    }
};

inline Operator identity(Eigen::Index dim) { return Operator::Identity(dim, dim); }

// Bosonic annihilation operator: entry (n-1, n) = sqrt(n).
inline Operator annihilation(const HilbertSpec& spec) {
    const int n = spec.fock_cutoff;
    Operator a = Operator::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

inline Operator creation(const HilbertSpec& spec) { return annihilation(spec).adjoint(); }

inline Operator number_operator(const HilbertSpec& spec) {
    const int n = spec.fock_cutoff;
    Operator num = Operator::Zero(n, n);
    for (int k = 0; k < n; ++k) num(k, k) = static_cast<double>(k);
    return num;
}

// Quadratures in the convention where the vacuum covariance matrix is the
// identity: x = a + a^dag, p = i(a^dag - a).
inline Operator position_quadrature(const HilbertSpec& spec) {
    Operator a = annihilation(spec);
    return a + a.adjoint();
}

inline Operator momentum_quadrature(const HilbertSpec& spec) {
    Operator a = annihilation(spec);
    return cplx(0, 1) * (a.adjoint() - a);
}

// Qubit operators in the (excited, ground) basis ordering.
inline Operator sigma_z() {
    Operator s(2, 2);
    s << 1, 0, 0, -1;
    return s;
}

inline Operator sigma_x() {
    Operator s(2, 2);
    s << 0, 1, 1, 0;
    return s;
}

inline Operator sigma_plus() {
    Operator s = Operator::Zero(2, 2);
    s(0, 1) = 1;
    return s;
}

inline Operator sigma_minus() { return sigma_plus().adjoint(); }

// P(n >= cutoff) for a Poisson distribution with the given mean.
inline double coherent_tail_population(double mean, int cutoff) {
    if (mean <= 0.0) return 0.0;
    double cdf = 0.0;
    for (int n = 0; n < cutoff; ++n)
        cdf += std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
    return std::max(0.0, 1.0 - cdf);
}

// Photon-number tail P(n >= cutoff) of a displaced thermal state with
// occupation nbar and real displacement theta,
//   P(n) = q^n/(1+nbar) e^{-theta^2/(1+nbar)} L_n(-theta^2/(nbar(1+nbar))),
// q = nbar/(1+nbar).  Evaluated with the Laguerre recurrence folded against
// q^n so intermediates stay bounded.
inline double displaced_thermal_tail_population(double theta, double nbar, int cutoff) {
    if (nbar < 1e-14) return coherent_tail_population(theta * theta, cutoff);
    const double q = nbar / (1.0 + nbar);
    const double x = theta * theta / (nbar * (1.0 + nbar));
    const double pre = std::exp(-theta * theta / (1.0 + nbar)) / (1.0 + nbar);
    double cdf = 0.0;
    double b_prev = 1.0;            // q^0 L_0(-x)
    double b = q * (1.0 + x);       // q^1 L_1(-x)
    for (int n = 0; n < cutoff; ++n) {
        double bn;
        if (n == 0) {
            bn = b_prev;
        } else if (n == 1) {
            bn = b;
        } else {
            bn = q * ((2 * n - 1 + x) * b - (n - 1) * q * b_prev) / n;
            b_prev = b;
            b = bn;
        }
        cdf += pre * bn;
    }
    return std::max(0.0, 1.0 - cdf);
}

// Displacement operator D(alpha) = exp(alpha a^dag - alpha^* a), computed by
// eigendecomposition of the Hermitian generator -i(alpha a^dag - alpha^* a).
// Throws TruncationError when the coherent state D(alpha)|0> would put more
// than 1e-8 of its population above the cutoff.
inline Operator displacement(cplx alpha, const HilbertSpec& spec) {
    const double tail = coherent_tail_population(std::norm(alpha), spec.fock_cutoff);
    if (tail > 1e-8)
        throw TruncationError("displacement: coherent tail population " + std::to_string(tail) +
                              " above cutoff " + std::to_string(spec.fock_cutoff));
    Operator a = annihilation(spec);
    Operator k = cplx(0, -1) * (alpha * a.adjoint() - std::conj(alpha) * a);
    Eigen::SelfAdjointEigenSolver<Operator> es(k);
    if (es.info() != Eigen::Success) throw Error("displacement: eigendecomposition failed");
    Eigen::VectorXcd phases = (cplx(0, 1) * es.eigenvalues().cast<cplx>().array()).exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Operator kron(const Operator& a, const Operator& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    Operator out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

namespace detail {

inline void require_hermitian(const Operator& h, double tol, const char* who) {
    if (h.rows() != h.cols()) throw DimensionMismatch(std::string(who) + ": matrix not square");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (dev > tol * scale)
        throw NotHermitian(std::string(who) + ": Hermiticity deviation " + std::to_string(dev));
}

}  // namespace detail

// f applied to the eigenvalues of a Hermitian matrix, in its eigenbasis.
inline Operator hermitian_function(const Operator& h, const std::function<double(double)>& f) {
    detail::require_hermitian(h, 1e-10, "hermitian_function");
    Eigen::SelfAdjointEigenSolver<Operator> es(h);
    if (es.info() != Eigen::Success) throw Error("hermitian_function: eigendecomposition failed");
    Eigen::VectorXd fw(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < fw.size(); ++i) fw(i) = f(es.eigenvalues()(i));
    Operator out = es.eigenvectors() * fw.asDiagonal() * es.eigenvectors().adjoint();
    return 0.5 * (out + Operator(out.adjoint()));
}

// Validated density matrix: unit trace, Hermitian and positive semidefinite
// within `tolerance`.  Construction performs the full check once; the matrix
// is immutable afterwards.
class DensityMatrix {
  public:
    explicit DensityMatrix(Operator m, double tolerance = 1e-10)
        : op_(std::move(m)), tol_(tolerance) {
        if (op_.rows() != op_.cols() || op_.rows() < 1)
            throw DimensionMismatch("DensityMatrix: matrix must be square and nonempty");
        if (!op_.allFinite()) throw InvalidState("DensityMatrix: entries must be finite");
        const double trace_dev = std::abs(op_.trace() - cplx(1, 0));
        if (trace_dev > tol_)
            throw InvalidState("DensityMatrix: |trace - 1| = " + std::to_string(trace_dev));
        const double herm_dev = (op_ - op_.adjoint()).cwiseAbs().maxCoeff();
        if (herm_dev > tol_)
            throw NotHermitian("DensityMatrix: Hermiticity deviation " + std::to_string(herm_dev));
        Eigen::SelfAdjointEigenSolver<Operator> es(op_, Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();
        if (min_eig < -tol_)
            throw InvalidState("DensityMatrix: eigenvalue " + std::to_string(min_eig) + " < 0");
    }

    const Operator& matrix() const { return op_; }
    Eigen::Index dim() const { return op_.rows(); }
    double tolerance() const { return tol_; }

  private:
    Operator op_;
    double tol_;
};

enum class Subsystem { A, B };

// Partial trace of a state on H_A (x) H_B over the discarded factor.
inline DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b,
                                   Subsystem keep) {
    if (dim_a < 1 || dim_b < 1 || rho.dim() != static_cast<Eigen::Index>(dim_a) * dim_b)
        throw DimensionMismatch("partial_trace: dim != dim_a * dim_b");
    const Operator& m = rho.matrix();
    if (keep == Subsystem::A) {
        Operator out = Operator::Zero(dim_a, dim_a);
        for (int i = 0; i < dim_a; ++i)
            for (int k = 0; k < dim_a; ++k)
                for (int j = 0; j < dim_b; ++j) out(i, k) += m(i * dim_b + j, k * dim_b + j);
        return DensityMatrix(std::move(out), rho.tolerance());
    }
    Operator out = Operator::Zero(dim_b, dim_b);
    for (int j = 0; j < dim_b; ++j)
        for (int l = 0; l < dim_b; ++l)
            for (int i = 0; i < dim_a; ++i) out(j, l) += m(i * dim_b + j, i * dim_b + l);
    return DensityMatrix(std::move(out), rho.tolerance());
}

namespace detail {

// PSD square root; eigenvalues below zero (numerical noise, magnitude
// < 1e-12 by the DensityMatrix invariant) are clipped.
inline Operator psd_sqrt(const Operator& m) {
    Eigen::SelfAdjointEigenSolver<Operator> es(m);
    Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

// Uhlmann fidelity F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to
// [0, 1].  Evaluated as the squared trace norm of sqrt(sigma) sqrt(rho):
// the singular values are linear in the factors, which keeps the numerical
// noise at the machine level instead of sqrt(machine).
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("fidelity: dimension mismatch");
    Operator prod = detail::psd_sqrt(sigma.matrix()) * detail::psd_sqrt(rho.matrix());
    Eigen::BDCSVD<Operator> svd(prod);
    const double s = svd.singularValues().sum();
    return std::min(1.0, std::max(0.0, s * s));
}

// Tr[rho obs].
inline cplx expectation(const DensityMatrix& rho, const Operator& obs) {
    if (rho.dim() != obs.rows() || obs.rows() != obs.cols())
        throw DimensionMismatch("expectation: dimension mismatch");
    return rho.matrix().cwiseProduct(obs.transpose()).sum();
}

// Tr[rho obs] for Hermitian observables; checks the imaginary part is noise.
inline double expectation_real(const DensityMatrix& rho, const Operator& obs) {
    const cplx v = expectation(rho, obs);
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real())))
        throw Error("expectation_real: imaginary part " + std::to_string(v.imag()));
    return v.real();
}

}  // namespace mtcs
