#pragma once

// Sweep driver behind the CLI: evaluates a named figure of merit over a
// temperature or coupling grid, figure presets with the caption parameter
// sets, the analytic-vs-numeric validation report, and CSV/JSON emission.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mtcs/errors.hpp"
#include "mtcs/hilbert.hpp"
#include "mtcs/metrology.hpp"
#include "mtcs/model.hpp"
#include "mtcs/photon_stats.hpp"
#include "mtcs/version.hpp"

namespace mtcs {

enum class Quantity {
    g2,
    wigner,
    qfi,
    cfi,
    ratio,
    kurtosis,
    error_prop,
    fidelity,
    qubit_vs_resonator,
    multimode_g2,
};

enum class GridVariable { temperature, coupling };
enum class Spacing { linear, logarithmic };
enum class OutputFormat { csv, json };
enum class QfiVariant { printed, extended };
enum class ScaleBy { omega_r, omega_q };

struct SweepGrid {
    GridVariable variable = GridVariable::temperature;
    double min = 0.05;
    double max = 2.0;
    int steps = 100;
    Spacing spacing = Spacing::linear;
};

struct SweepSpec {
    Quantity quantity = Quantity::g2;
    SystemParams params{1.0, 1.0, 0.01, 1.0};
    std::optional<MultimodeParams> multimode;   // quantity == multimode_g2
    std::optional<QubitProbeParams> probe;      // qubit_vs_resonator; defaults mirror params
    SweepGrid grid;
    int fock_cutoff = 0;  // 0 = auto (resolved from the design rule at the largest T)
    QfiVariant qfi_variant = QfiVariant::printed;
    bool thermal_baseline = false;              // extra qfi_thermal_ho column
    QuadratureAxis quadrature = QuadratureAxis::p;
    int wigner_points = 201;
    ScaleBy scale_by = ScaleBy::omega_r;
    int workers = 1;
};

struct SweepResult {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::vector<double> grid_values(const SweepGrid& grid) {
    if (!(grid.min < grid.max)) throw InvalidParameter("grid: min must be < max");
    if (grid.steps < 2) throw InvalidParameter("grid: steps must be >= 2");
    if (grid.spacing == Spacing::logarithmic && !(grid.min > 0.0))
        throw InvalidParameter("grid: log spacing needs min > 0");
    std::vector<double> v(grid.steps);
    for (int i = 0; i < grid.steps; ++i) {
        const double f = static_cast<double>(i) / (grid.steps - 1);
        v[i] = grid.spacing == Spacing::linear
                   ? grid.min + f * (grid.max - grid.min)
                   : std::exp(std::log(grid.min) + f * (std::log(grid.max) - std::log(grid.min)));
    }
    return v;
}

// Ordered parallel map; the first failure is annotated with its grid point
// and rethrown on the calling thread.
template <typename Body>
void parallel_grid(int n, int workers, const std::vector<double>& values, Body&& body) {
    workers = std::max(1, workers);
    if (workers == 1) {
        for (int i = 0; i < n; ++i) {
            try {
                body(i);
            } catch (const TruncationError& e) {
                throw TruncationError("grid point " + std::to_string(i) + " (value " +
                                      fmt17(values[i]) + "): " + e.what());
            } catch (const Error& e) {
                throw Error("grid point " + std::to_string(i) + " (value " + fmt17(values[i]) +
                            "): " + e.what());
            }
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&]() {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                body(i);
            } catch (const TruncationError& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::make_exception_ptr(
                        TruncationError("grid point " + std::to_string(i) + " (value " +
                                        fmt17(values[i]) + "): " + e.what()));
                return;
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::g2: return "g2";
        case Quantity::wigner: return "wigner";
        case Quantity::qfi: return "qfi";
        case Quantity::cfi: return "cfi";
        case Quantity::ratio: return "ratio";
        case Quantity::kurtosis: return "kurtosis";
        case Quantity::error_prop: return "error_prop";
        case Quantity::fidelity: return "fidelity";
        case Quantity::qubit_vs_resonator: return "qubit_vs_resonator";
        case Quantity::multimode_g2: return "multimode_g2";
    }
    return "?";
}

}  // namespace detail

// Cutoff actually used by a sweep: the explicit request, or the design rule
// evaluated at the largest temperature and coupling of the grid (kurtosis
// uses the stricter fourth-moment rule).
inline int resolve_cutoff(const SweepSpec& spec) {
    if (spec.fock_cutoff > 0) return spec.fock_cutoff;
    if (spec.quantity == Quantity::wigner) return auto_fock_cutoff(spec.params, spec.params.t);
    const bool t_sweep = spec.grid.variable == GridVariable::temperature;
    const double t_max = t_sweep ? spec.grid.max : spec.params.t;
    SystemParams worst = spec.params;
    if (!t_sweep) worst = worst.with_coupling(spec.grid.max);
    if (spec.quantity == Quantity::kurtosis) return kurtosis_fock_cutoff(worst, t_max);
    return auto_fock_cutoff(worst, t_max);
}

inline SweepResult run_sweep(const SweepSpec& spec) {
    const int cutoff = resolve_cutoff(spec);
    const SystemParams& base = spec.params;

    SweepResult result;
    result.meta = {
        {"quantity", detail::quantity_name(spec.quantity)},
        {"omega_q", detail::fmt17(base.omega_q)},
        {"omega_r", detail::fmt17(base.omega_r)},
        {"g", detail::fmt17(base.g)},
        {"t", detail::fmt17(base.t)},
        {"cutoff", std::to_string(cutoff)},
        {"qfi_variant", spec.qfi_variant == QfiVariant::printed ? "printed" : "extended"},
        {"scale_by", spec.scale_by == ScaleBy::omega_r ? "omega_r" : "omega_q"},
        {"version", kVersion},
    };

    // Wigner is a phase-space grid at fixed parameters, not a parameter sweep.
    if (spec.quantity == Quantity::wigner) {
        const HilbertSpec hs(cutoff);
        const MtcsParams mp = mtcs_params(base);
        const Eigen::VectorXd axis = default_wigner_axis(mp, spec.wigner_points);
        const WignerGrid w = wigner(mtcs_analytic(base, hs), hs, axis, axis);
        result.columns = {"x", "p", "w"};
        for (Eigen::Index i = 0; i < w.x.size(); ++i)
            for (Eigen::Index j = 0; j < w.p.size(); ++j)
                result.rows.push_back({w.x(i), w.p(j), w.values(i, j)});
        return result;
    }

    const std::vector<double> values = detail::grid_values(spec.grid);
    const bool t_sweep = spec.grid.variable == GridVariable::temperature;
    result.meta.emplace_back("grid_variable", t_sweep ? "T" : "g");
    result.meta.emplace_back("grid_min", detail::fmt17(spec.grid.min));
    result.meta.emplace_back("grid_max", detail::fmt17(spec.grid.max));
    result.meta.emplace_back("grid_steps", std::to_string(spec.grid.steps));
    result.meta.emplace_back("grid_spacing",
                             spec.grid.spacing == Spacing::linear ? "linear" : "log");

    auto point_params = [&](double v) {
        return t_sweep ? base.with_temperature(v) : base.with_coupling(v);
    };

    std::vector<std::string> cols;
    std::function<std::vector<double>(const SystemParams&)> eval;

    switch (spec.quantity) {
        case Quantity::g2: {
            cols = {"g2_analytic", "g2_numeric"};
            eval = [cutoff](const SystemParams& sp) {
                const HilbertSpec hs(cutoff);
                const double ga = g2_analytic(mtcs_params(sp));
                const double gn = g2_numeric(resonator_reduced_numeric(sp, hs), hs);
                return std::vector<double>{ga, gn};
            };
            break;
        }
        case Quantity::qfi: {
            cols = {"qfi_closed", "qfi_pipeline"};
            if (spec.thermal_baseline) cols.push_back("qfi_thermal_ho");
            const bool extended = spec.qfi_variant == QfiVariant::extended;
            const bool baseline = spec.thermal_baseline;
            eval = [extended, baseline](const SystemParams& sp) {
                double closed = qfi_mtcs_closed(sp);
                if (extended) closed += qfi_first_moment_term(sp);
                const double pipeline = qfi_gaussian(mtcs_moments_fn(sp), sp.t, extended);
                std::vector<double> row{closed, pipeline};
                if (baseline) row.push_back(qfi_thermal_ho(sp.omega_r, sp.t));
                return row;
            };
            break;
        }
        case Quantity::cfi: {
            cols = {"cfi_x_closed", "cfi_x_pipeline"};
            eval = [](const SystemParams& sp) {
                return std::vector<double>{
                    cfi_position_closed(sp),
                    cfi_gaussian_measurement(mtcs_moments_fn(sp), sp.t, QuadratureAxis::x)};
            };
            break;
        }
        case Quantity::ratio: {
            cols = {"qfi", "qfi_extended", "cfi_x", "cfi_p", "ratio"};
            eval = [](const SystemParams& sp) {
                const FisherPoint fp = fisher_ratio(sp);
                return std::vector<double>{fp.qfi, fp.qfi_extended, fp.cfi_x, fp.cfi_p, fp.ratio};
            };
            break;
        }
        case Quantity::kurtosis: {
            cols = {spec.quadrature == QuadratureAxis::p ? "kappa_p" : "kappa_x"};
            const QuadratureAxis axis = spec.quadrature;
            eval = [cutoff, axis](const SystemParams& sp) {
                const HilbertSpec hs(cutoff);
                return std::vector<double>{excess_kurtosis(mtcs_analytic(sp, hs), hs, axis)};
            };
            break;
        }
        case Quantity::error_prop: {
            cols = {"delta2_t", "delta2_t_oracle"};
            eval = [](const SystemParams& sp) {
                const double closed = error_propagation(sp);
                const double theta = sp.g / sp.omega_r;
                auto mean = [&](double t) {
                    return thermal_occupation(sp.omega_r, t) + theta * theta;
                };
                const double slope = detail::ddT(mean, sp.t);
                const double var = number_moments_analytic(mtcs_params(sp)).variance;
                return std::vector<double>{closed, var / (slope * slope)};
            };
            break;
        }
        case Quantity::fidelity: {
            cols = {"fidelity"};
            eval = [cutoff](const SystemParams& sp) {
                const HilbertSpec hs(cutoff);
                return std::vector<double>{
                    fidelity(mtcs_analytic(sp, hs), resonator_reduced_numeric(sp, hs))};
            };
            break;
        }
        case Quantity::qubit_vs_resonator: {
            cols = {"qfi_resonator", "qfi_qubit"};
            const QubitProbeParams probe = spec.probe.value_or(
                QubitProbeParams(base.omega_r, base.omega_q, base.g));
            result.meta.emplace_back("omega_p", detail::fmt17(probe.omega_p));
            result.meta.emplace_back("omega_a", detail::fmt17(probe.omega_a));
            eval = [probe](const SystemParams& sp) {
                return std::vector<double>{qfi_mtcs_closed(sp), qfi_qubit_probe(probe, sp.t)};
            };
            break;
        }
        case Quantity::multimode_g2: {
            if (!spec.multimode) throw InvalidParameter("multimode_g2 needs mode list");
            MultimodeParams mm = *spec.multimode;
            for (size_t i = 0; i < mm.modes.size(); ++i) {
                cols.push_back("g2_mode_" + std::to_string(i + 1));
                result.meta.emplace_back("mode_" + std::to_string(i + 1),
                                         detail::fmt17(mm.modes[i].omega) + ":" +
                                             detail::fmt17(mm.modes[i].g));
            }
            if (!t_sweep) throw InvalidParameter("multimode_g2 sweeps temperature only");
            eval = [mm](const SystemParams& sp) {
                MultimodeParams at_t = mm;
                at_t.t = sp.t;
                return g2_multimode(at_t);
            };
            break;
        }
        case Quantity::wigner:
            break;  // handled above
    }

    result.columns.push_back(t_sweep ? "T" : "g");
    result.columns.insert(result.columns.end(), cols.begin(), cols.end());
    result.rows.assign(values.size(), {});
    detail::parallel_grid(static_cast<int>(values.size()), spec.workers, values, [&](int i) {
        const std::vector<double> out = eval(point_params(values[i]));
        std::vector<double> row{values[i]};
        row.insert(row.end(), out.begin(), out.end());
        for (double v : row)
            if (std::isnan(v)) throw Error("non-finite value in row");
        result.rows[i] = std::move(row);
    });
    return result;
}

inline std::string to_csv(const SweepResult& result) {
    std::string out;
    for (const auto& [key, value] : result.meta) out += "# " + key + "=" + value + "\n";
    for (size_t c = 0; c < result.columns.size(); ++c)
        out += (c ? "," : "") + result.columns[c];
    out += "\n";
    for (const auto& row : result.rows) {
        for (size_t c = 0; c < row.size(); ++c)
            out += (c ? "," : "") + detail::fmt17(row[c]);
        out += "\n";
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + path);
    f << content;
    if (!f) throw Error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Validation report: analytic closed forms against the exact truncated
// Fock-space pipeline at one parameter point.

struct ValidationReport {
    static constexpr double kFidelityTol = 1e-8;  // on 1 - F
    static constexpr double kG2Tol = 1e-8;
    static constexpr double kMomentTol = 1e-8;
    static constexpr double kQfiRelTol = 1e-3;

    double infidelity = 0.0;      // 1 - F(analytic, numeric)
    double g2_abs_dev = 0.0;      // |g2_analytic - g2_numeric|
    double moment_abs_dev = 0.0;  // max over <n>, <n^2>, Var n, <x>, sigma_11
    double qfi_rel_dev = 0.0;     // closed form vs numeric covariance pipeline
    bool truncation_ok = true;
    std::string truncation_message;

    bool passed() const {
        return truncation_ok && infidelity < kFidelityTol && g2_abs_dev < kG2Tol &&
               moment_abs_dev < kMomentTol && qfi_rel_dev < kQfiRelTol;
    }
};

inline ValidationReport validate(const SystemParams& sp, int cutoff) {
    ValidationReport rep;
    try {
        const HilbertSpec hs(cutoff);
        const DensityMatrix analytic = mtcs_analytic(sp, hs);
        const DensityMatrix numeric = resonator_reduced_numeric(sp, hs);
        rep.infidelity = 1.0 - fidelity(analytic, numeric);

        const MtcsParams mp = mtcs_params(sp);
        rep.g2_abs_dev = std::abs(g2_analytic(mp) - g2_numeric(numeric, hs));

        const NumberMoments na = number_moments_analytic(mp);
        const NumberMoments nn = number_moments_numeric(numeric, hs);
        const GaussianMoments gm = quadrature_moments(mp);
        const Operator x = position_quadrature(hs);
        const double mean_x = expectation_real(numeric, x);
        const double s11 = expectation_real(numeric, x * x) - mean_x * mean_x;
        rep.moment_abs_dev = std::max({std::abs(na.mean - nn.mean),
                                       std::abs(na.second - nn.second),
                                       std::abs(na.variance - nn.variance),
                                       std::abs(gm.d(0) - mean_x),
                                       std::abs(gm.sigma(0, 0) - s11)});

        const double closed = qfi_mtcs_closed(sp);
        const double pipeline = qfi_gaussian(mtcs_moments_fn(sp), sp.t, false);
        rep.qfi_rel_dev = std::abs(closed - pipeline) / std::max(std::abs(pipeline), 1e-300);
    } catch (const TruncationError& e) {
        rep.truncation_ok = false;
        rep.truncation_message = e.what();
    }
    return rep;
}

}  // namespace mtcs
