#pragma once

// Figure reproduction presets.  Each preset hard-codes the parameter set of
// the corresponding published figure and returns one result per output file
// (one per curve, or per panel where the panel's columns are its curves).

#include <string>
#include <utility>
#include <vector>

#include "mtcs/sweep.hpp"

namespace mtcs {

enum class FigureId { fig2a, fig2bc, fig3, fig4, fig5, fig6a, fig6b, fig7, fig8, fig9, fig10, figQR };

inline const std::vector<std::pair<FigureId, std::string>>& figure_names() {
    static const std::vector<std::pair<FigureId, std::string>> names = {
        {FigureId::fig2a, "fig2a"}, {FigureId::fig2bc, "fig2bc"}, {FigureId::fig3, "fig3"},
        {FigureId::fig4, "fig4"},   {FigureId::fig5, "fig5"},     {FigureId::fig6a, "fig6a"},
        {FigureId::fig6b, "fig6b"}, {FigureId::fig7, "fig7"},     {FigureId::fig8, "fig8"},
        {FigureId::fig9, "fig9"},   {FigureId::fig10, "fig10"},   {FigureId::figQR, "figQR"},
    };
    return names;
}

inline FigureId parse_figure_id(const std::string& s) {
    for (const auto& [id, name] : figure_names())
        if (name == s) return id;
    throw InvalidParameter("unknown figure id: " + s);
}

using FigureResults = std::vector<std::pair<std::string, SweepResult>>;

namespace detail {

inline std::string coupling_tag(double g) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "g%g", g);
    std::string s = buf;
    for (auto& c : s)
        if (c == '.') c = 'p';
    return s;
}

}  // namespace detail

inline FigureResults reproduce_figure(FigureId id) {
    FigureResults out;
    auto add = [&out](std::string name, SweepResult r) {
        out.emplace_back(std::move(name), std::move(r));
    };

    switch (id) {
        case FigureId::fig2a: {
            for (double g : {0.01, 0.04}) {
                SweepSpec spec;
                spec.quantity = Quantity::g2;
                spec.params = SystemParams(1.0, 1.0, g, 1.0);
                spec.grid = {GridVariable::temperature, 0.03, 2.0, 200, Spacing::linear};
                add("fig2a_" + detail::coupling_tag(g), run_sweep(spec));
            }
            break;
        }
        case FigureId::fig2bc: {
            for (double t : {0.03, 2.0}) {
                SweepSpec spec;
                spec.quantity = Quantity::wigner;
                spec.params = SystemParams(0.01, 1.0, 1.0, t);
                add(t < 1.0 ? "fig2b_lowT" : "fig2c_highT", run_sweep(spec));
            }
            break;
        }
        case FigureId::fig3: {
            SweepSpec spec;
            spec.quantity = Quantity::multimode_g2;
            spec.params = SystemParams(1.0, 1.0, 0.01, 1.0);
            spec.multimode = MultimodeParams{
                {{0.3, 0.01}, {0.4, 0.01}, {0.5, 0.01}, {0.6, 0.01}}, 1.0, 1.0};
            spec.grid = {GridVariable::temperature, 0.01, 2.0, 200, Spacing::logarithmic};
            spec.scale_by = ScaleBy::omega_q;
            SweepResult all = run_sweep(spec);
            all.meta.emplace_back("note",
                                  "caption states scaling by both omega_R and omega_q; "
                                  "omega_q = 1 scaling used");
            // one file per mode curve
            for (size_t m = 0; m < 4; ++m) {
                SweepResult single;
                single.meta = all.meta;
                single.columns = {"T", all.columns[m + 1]};
                for (const auto& row : all.rows) single.rows.push_back({row[0], row[m + 1]});
                add("fig3_mode" + std::to_string(m + 1), std::move(single));
            }
            break;
        }
        case FigureId::fig4: {
            for (double g : {0.02, 0.03, 0.04}) {
                SweepSpec spec;
                spec.quantity = Quantity::qfi;
                spec.params = SystemParams(0.04, 1.0, g, 1.0);
                spec.grid = {GridVariable::temperature, 0.005, 2.0, 300, Spacing::logarithmic};
                spec.thermal_baseline = true;  // omega_osc = omega_r = 1 comparison curve
                add("fig4_" + detail::coupling_tag(g), run_sweep(spec));
            }
            break;
        }
        case FigureId::fig5: {
            SweepSpec spec;
            spec.quantity = Quantity::ratio;
            spec.params = SystemParams(1.0, 1.0, 0.01, 1.0);
            spec.grid = {GridVariable::temperature, 0.05, 2.0, 200, Spacing::linear};
            SweepResult all = run_sweep(spec);
            SweepResult panel_a;
            panel_a.meta = all.meta;
            panel_a.columns = {"T", "cfi_x", "qfi"};
            SweepResult panel_b;
            panel_b.meta = all.meta;
            panel_b.columns = {"T", "ratio"};
            for (const auto& row : all.rows) {
                panel_a.rows.push_back({row[0], row[3], row[1]});
                panel_b.rows.push_back({row[0], row[5]});
            }
            add("fig5a", std::move(panel_a));
            add("fig5b", std::move(panel_b));
            break;
        }
        case FigureId::fig6a: {
            for (double g : {0.001, 0.08, 0.15}) {
                SweepSpec spec;
                spec.quantity = Quantity::cfi;
                spec.params = SystemParams(1.0, 1.0, g, 1.0);
                spec.grid = {GridVariable::temperature, 0.05, 2.0, 200, Spacing::linear};
                add("fig6a_" + detail::coupling_tag(g), run_sweep(spec));
            }
            break;
        }
        case FigureId::fig6b: {
            for (double g : {0.02, 0.03, 0.04}) {
                SweepSpec spec;
                spec.quantity = Quantity::cfi;
                spec.params = SystemParams(0.04, 1.0, g, 1.0);
                spec.grid = {GridVariable::temperature, 0.005, 2.0, 300, Spacing::logarithmic};
                add("fig6b_" + detail::coupling_tag(g), run_sweep(spec));
            }
            break;
        }
        case FigureId::fig7: {
            const SystemParams base(0.4, 1.0, 0.4, 1.0);
            const int cutoff = 80;
            SweepSpec fid;
            fid.quantity = Quantity::fidelity;
            fid.params = base;
            fid.fock_cutoff = cutoff;
            fid.grid = {GridVariable::temperature, 0.01, 2.0, 100, Spacing::linear};
            add("fig7a_fidelity", run_sweep(fid));

            // panel (b): mean photon number, analytic vs numeric
            SweepResult nb;
            nb.meta = {{"quantity", "mean_photon_number"},
                       {"omega_q", detail::fmt17(base.omega_q)},
                       {"omega_r", detail::fmt17(base.omega_r)},
                       {"g", detail::fmt17(base.g)},
                       {"cutoff", std::to_string(cutoff)},
                       {"version", kVersion}};
            nb.columns = {"T", "n_analytic", "n_numeric"};
            const HilbertSpec hs(cutoff);
            for (double t : detail::grid_values(fid.grid)) {
                const SystemParams sp = base.with_temperature(t);
                const double na = number_moments_analytic(mtcs_params(sp)).mean;
                const double nn =
                    number_moments_numeric(resonator_reduced_numeric(sp, hs), hs).mean;
                nb.rows.push_back({t, na, nn});
            }
            add("fig7b_mean_photon", std::move(nb));

            SweepSpec g2s;
            g2s.quantity = Quantity::g2;
            g2s.params = base;
            g2s.fock_cutoff = cutoff;
            g2s.grid = fid.grid;
            add("fig7c_g2", run_sweep(g2s));
            break;
        }
        case FigureId::fig8: {
            const SystemParams sets[2] = {SystemParams(0.04, 1.0, 0.06, 1.0),
                                          SystemParams(0.01, 1.0, 1.0, 1.0)};
            const char* names[2] = {"fig8a", "fig8b"};
            for (int i = 0; i < 2; ++i) {
                SweepSpec spec;
                spec.quantity = Quantity::kurtosis;
                spec.params = sets[i];
                spec.quadrature = QuadratureAxis::p;
                spec.grid = {GridVariable::temperature, 0.01, 2.0, 100, Spacing::linear};
                add(names[i], run_sweep(spec));
            }
            break;
        }
        case FigureId::fig9: {
            for (double g : {0.01, 0.05, 0.1}) {
                SweepSpec spec;
                spec.quantity = Quantity::error_prop;
                spec.params = SystemParams(1.0, 1.0, g, 1.0);
                spec.grid = {GridVariable::temperature, 0.1, 2.0, 200, Spacing::linear};
                add("fig9_" + detail::coupling_tag(g), run_sweep(spec));
            }
            break;
        }
        case FigureId::fig10: {
            SweepSpec spec;
            spec.quantity = Quantity::qfi;
            spec.params = SystemParams(0.04, 1.0, 0.01, 0.02);
            spec.grid = {GridVariable::coupling, 0.001, 0.06, 120, Spacing::linear};
            add("fig10", run_sweep(spec));
            break;
        }
        case FigureId::figQR: {
            SweepSpec spec;
            spec.quantity = Quantity::qubit_vs_resonator;
            spec.params = SystemParams(0.04, 1.0, 0.04, 1.0);
            spec.probe = QubitProbeParams(1.0, 0.04, 0.04);
            spec.grid = {GridVariable::temperature, 0.005, 2.0, 300, Spacing::logarithmic};
            add("figQR", run_sweep(spec));
            break;
        }
    }
    return out;
}

}  // namespace mtcs
