#pragma once

// Qubit-resonator model with longitudinal coupling,
//   H = (omega_q/2) sigma_z (x) 1 + omega_r 1 (x) a^dag a + g sigma_z (x) (a + a^dag),
// its Gibbs steady state, and the exact reduced resonator state: a mixture of
// two oppositely displaced thermal coherent states (MTCS),
//   rho_R = p D(-theta) rho_th D(-theta)^dag + (1-p) D(+theta) rho_th D(+theta)^dag,
// with theta = g/omega_r and p = 1/(e^{omega_q/T} + 1).
//
// Units: hbar = k_B = 1; parameters are given in units of omega_r unless the
// caller chooses otherwise.  Qubit basis ordering is (excited, ground), so the
// thermal qubit is diag(p, 1-p).

#include <algorithm>
#include <cmath>
#include <vector>

#include "mtcs/errors.hpp"
#include "mtcs/hilbert.hpp"

namespace mtcs {

// Temperatures are clamped to >= kMinTemperatureScale * omega_r so every
// closed form stays finite in double precision.
inline constexpr double kMinTemperatureScale = 1e-6;

struct SystemParams {
    double omega_q;
    double omega_r;
    double g;
    double t;

    SystemParams(double omega_q_, double omega_r_, double g_, double t_)
        : omega_q(omega_q_), omega_r(omega_r_), g(g_), t(t_) {
        if (!(omega_r > 0.0)) throw InvalidParameter("SystemParams: omega_r must be > 0");
        if (!(omega_q > 0.0)) throw InvalidParameter("SystemParams: omega_q must be > 0");
        if (!(g >= 0.0)) throw InvalidParameter("SystemParams: g must be >= 0");
        if (!(t > 0.0)) throw InvalidParameter("SystemParams: t must be > 0");
        t = std::max(t, kMinTemperatureScale * omega_r);
    }

    SystemParams with_temperature(double t_) const {
        return SystemParams(omega_q, omega_r, g, t_);
    }
    SystemParams with_coupling(double g_) const { return SystemParams(omega_q, omega_r, g_, t); }
};

// Derived scalars parameterizing every closed form.
struct MtcsParams {
    double theta;    // displacement g/omega_r
    double p;        // excited-branch weight 1/(e^{omega_q/T} + 1)
    double nbar;     // thermal occupation 1/(e^{omega_r/T} - 1)
    double phi;      // omega_q / 2T
    double big_phi;  // omega_r / 2T
};

inline double thermal_occupation(double omega, double t) { return 1.0 / std::expm1(omega / t); }

inline MtcsParams mtcs_params(const SystemParams& sp) {
    MtcsParams mp;
    mp.theta = sp.g / sp.omega_r;
    mp.phi = sp.omega_q / (2.0 * sp.t);
    mp.big_phi = sp.omega_r / (2.0 * sp.t);
    mp.p = 0.5 * (1.0 - std::tanh(mp.phi));  // = 1/(e^{2 phi} + 1), overflow-safe
    mp.nbar = thermal_occupation(sp.omega_r, sp.t);
    return mp;
}

struct ModeCoupling {
    double omega;
    double g;
};

struct MultimodeParams {
    std::vector<ModeCoupling> modes;
    double omega_q;
    double t;
};

// Per-mode derived scalars; p is shared since the qubit sets the branch weight.
inline std::vector<MtcsParams> multimode_reduced_params(const MultimodeParams& mm) {
    if (mm.modes.empty()) throw InvalidParameter("multimode_reduced_params: no modes");
    std::vector<MtcsParams> out;
    out.reserve(mm.modes.size());
    for (const auto& mode : mm.modes)
        out.push_back(mtcs_params(SystemParams(mm.omega_q, mode.omega, mode.g, mm.t)));
    return out;
}

inline Operator system_hamiltonian(const SystemParams& sp, const HilbertSpec& spec) {
    const Operator a = annihilation(spec);
    const Operator in = identity(spec.fock_cutoff);
    return 0.5 * sp.omega_q * kron(sigma_z(), in) + sp.omega_r * kron(identity(2), a.adjoint() * a) +
           sp.g * kron(sigma_z(), a + a.adjoint());
}

// Gibbs state e^{-h/t}/Z.  The ground energy is subtracted before
// exponentiating so low temperatures do not underflow to an all-zero matrix.
inline DensityMatrix gibbs_state(const Operator& h, double t) {
    if (!(t > 0.0)) throw InvalidParameter("gibbs_state: t must be > 0");
    detail::require_hermitian(h, 1e-10, "gibbs_state");
    Eigen::SelfAdjointEigenSolver<Operator> es(h);
    if (es.info() != Eigen::Success) throw Error("gibbs_state: eigendecomposition failed");
    Eigen::VectorXd w = ((es.eigenvalues().array() - es.eigenvalues().minCoeff()) / -t).exp();
    w /= w.sum();
    Operator rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    return DensityMatrix(0.5 * (rho + Operator(rho.adjoint())));
}

// Truncated thermal state of a mode, normalized on the truncated space.
inline DensityMatrix thermal_state(double omega, double t, const HilbertSpec& spec) {
    if (!(omega > 0.0) || !(t > 0.0)) throw InvalidParameter("thermal_state: omega, t must be > 0");
    const int n = spec.fock_cutoff;
    Eigen::VectorXd w(n);
    for (int k = 0; k < n; ++k) w(k) = std::exp(-k * omega / t);
    w /= w.sum();
    return DensityMatrix(w.cast<cplx>().asDiagonal());
}

// Thermal qubit diag(e^{-omega_q/2T}, e^{+omega_q/2T})/Z_q = diag(p, 1-p)
// in the (excited, ground) ordering.
inline DensityMatrix qubit_thermal(const SystemParams& sp) {
    const MtcsParams mp = mtcs_params(sp);
    Operator rho = Operator::Zero(2, 2);
    rho(0, 0) = mp.p;
    rho(1, 1) = 1.0 - mp.p;
    return DensityMatrix(std::move(rho));
}

// Exact analytic reduced resonator state (the MTCS).  Throws TruncationError
// when the ideal displaced-thermal branches would put more than 1e-8 of their
// population above the cutoff.
inline DensityMatrix mtcs_analytic(const SystemParams& sp, const HilbertSpec& spec) {
    const MtcsParams mp = mtcs_params(sp);
    const double tail = displaced_thermal_tail_population(mp.theta, mp.nbar, spec.fock_cutoff);
    if (tail > 1e-8)
        throw TruncationError("mtcs_analytic: displaced-thermal tail population " +
                              std::to_string(tail) + " above cutoff " +
                              std::to_string(spec.fock_cutoff));
    const Operator rth = thermal_state(sp.omega_r, sp.t, spec).matrix();
    const Operator dm = displacement(-mp.theta, spec);
    const Operator dp = displacement(+mp.theta, spec);
    Operator rho = mp.p * (dm * rth * dm.adjoint()) + (1.0 - mp.p) * (dp * rth * dp.adjoint());
    return DensityMatrix(0.5 * (rho + Operator(rho.adjoint())));
}

// Reduced resonator state obtained numerically: partial trace of the Gibbs
// state of the full Hamiltonian over the qubit.
inline DensityMatrix resonator_reduced_numeric(const SystemParams& sp, const HilbertSpec& spec) {
    DensityMatrix full = gibbs_state(system_hamiltonian(sp, spec), sp.t);
    return partial_trace(full, 2, spec.fock_cutoff, Subsystem::B);
}

// Default cutoff: N = max(20, ceil(10 (nbar + theta^2) + 10)) at the largest
// temperature of a sweep, raised if needed until the ideal displaced-thermal
// tail above the cutoff is below 1e-10 (the arithmetic rule alone leaves a
// ~1e-7 tail at T = 2, theta = 1).
inline int auto_fock_cutoff(const SystemParams& sp, double t_max) {
    const MtcsParams mp = mtcs_params(sp.with_temperature(t_max));
    const double rule = 10.0 * (mp.nbar + mp.theta * mp.theta) + 10.0;
    int n = std::max(20, static_cast<int>(std::ceil(rule)));
    while (n < 4096 && displaced_thermal_tail_population(mp.theta, mp.nbar, n) > 1e-10) n += 4;
    return n;
}

// Stricter rule for fourth-moment quantities (excess kurtosis), where the
// truncation error is amplified by n^2 weights.
inline int kurtosis_fock_cutoff(const SystemParams& sp, double t_max) {
    const MtcsParams mp = mtcs_params(sp.with_temperature(t_max));
    const double rule = 20.0 * (mp.nbar + mp.theta * mp.theta) + 30.0;
    return std::max({40, static_cast<int>(std::ceil(rule)), auto_fock_cutoff(sp, t_max)});
}

}  // namespace mtcs
