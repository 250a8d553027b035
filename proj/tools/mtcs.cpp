// mtcs: parameter sweeps, figure-reproduction presets and analytic-vs-numeric
// validation for the qubit-resonator thermometry library.
//
// Exit codes: 0 success, 2 validation failure, 3 truncation error,
// 4 bad arguments, 1 unexpected error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mtcs/figures.hpp"
#include "mtcs/json_io.hpp"
#include "mtcs/mtcs.hpp"

namespace {

struct SweepCliOptions {
    std::string quantity = "g2";
    double omega_q = 1.0;
    double omega_r = 1.0;
    double g = 0.01;
    double t = 1.0;
    std::string variable = "T";
    double t_min = 0.05, t_max = 2.0;
    double g_min = 0.001, g_max = 0.1;
    int steps = 100;
    bool log_spacing = false;
    std::string cutoff = "auto";
    std::string out;
    std::string format = "csv";
    std::string qfi_variant = "printed";
    std::string quadrature = "p";
    std::string scale_by = "omega_r";
    bool ho_baseline = false;
    int workers = 1;
    int wigner_points = 201;
    std::string modes;  // "omega1:g1,omega2:g2,..."
    double omega_p = 0.0, omega_a = 0.0;  // probe overrides (0 = mirror params)
};

int parse_cutoff(const std::string& s) {
    if (s == "auto") return 0;
    try {
        size_t used = 0;
        const int n = std::stoi(s, &used);
        if (used != s.size() || n < 2) throw std::invalid_argument("");
        return n;
    } catch (...) {
        throw mtcs::InvalidParameter("--cutoff: expected 'auto' or an integer >= 2");
    }
}

mtcs::MultimodeParams parse_modes(const std::string& s, double omega_q, double t) {
    mtcs::MultimodeParams mm;
    mm.omega_q = omega_q;
    mm.t = t;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw mtcs::InvalidParameter("--modes: expected omega:g pairs separated by commas");
        try {
            mm.modes.push_back(
                {std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
        } catch (...) {
            throw mtcs::InvalidParameter("--modes: cannot parse '" + item + "'");
        }
    }
    if (mm.modes.empty()) throw mtcs::InvalidParameter("--modes: no modes given");
    return mm;
}

// key=value config file applied as defaults before flag parsing, so explicit
// flags always win.  Keys use the long option spelling without the dashes.
void apply_config_file(const std::string& path, SweepCliOptions& o) {
    std::ifstream f(path);
    if (!f) throw mtcs::InvalidParameter("--config: cannot open " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
        size_t start = line.find_first_not_of(' ');
        if (start == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw mtcs::InvalidParameter("--config: expected key=value at line " +
                                         std::to_string(lineno));
        const std::string key = line.substr(start, eq - start);
        const std::string value = line.substr(eq + 1);
        try {
            if (key == "quantity") o.quantity = value;
            else if (key == "omega-q") o.omega_q = std::stod(value);
            else if (key == "omega-r") o.omega_r = std::stod(value);
            else if (key == "g") o.g = std::stod(value);
            else if (key == "t") o.t = std::stod(value);
            else if (key == "variable") o.variable = value;
            else if (key == "t-min") o.t_min = std::stod(value);
            else if (key == "t-max") o.t_max = std::stod(value);
            else if (key == "g-min") o.g_min = std::stod(value);
            else if (key == "g-max") o.g_max = std::stod(value);
            else if (key == "steps") o.steps = std::stoi(value);
            else if (key == "log") o.log_spacing = (value == "true" || value == "1");
            else if (key == "cutoff") o.cutoff = value;
            else if (key == "out") o.out = value;
            else if (key == "format") o.format = value;
            else if (key == "qfi-variant") o.qfi_variant = value;
            else if (key == "quadrature") o.quadrature = value;
            else if (key == "scale-by") o.scale_by = value;
            else if (key == "ho-baseline") o.ho_baseline = (value == "true" || value == "1");
            else if (key == "workers") o.workers = std::stoi(value);
            else if (key == "wigner-points") o.wigner_points = std::stoi(value);
            else if (key == "modes") o.modes = value;
            else if (key == "omega-p") o.omega_p = std::stod(value);
            else if (key == "omega-a") o.omega_a = std::stod(value);
            else
                throw mtcs::InvalidParameter("--config: unknown key '" + key + "'");
        } catch (const mtcs::InvalidParameter&) {
            throw;
        } catch (...) {
            throw mtcs::InvalidParameter("--config: bad value for '" + key + "' at line " +
                                         std::to_string(lineno));
        }
    }
}

mtcs::SweepSpec build_spec(const SweepCliOptions& o) {
    static const std::map<std::string, mtcs::Quantity> quantities = {
        {"g2", mtcs::Quantity::g2},
        {"wigner", mtcs::Quantity::wigner},
        {"qfi", mtcs::Quantity::qfi},
        {"cfi", mtcs::Quantity::cfi},
        {"ratio", mtcs::Quantity::ratio},
        {"kurtosis", mtcs::Quantity::kurtosis},
        {"error_prop", mtcs::Quantity::error_prop},
        {"fidelity", mtcs::Quantity::fidelity},
        {"qubit_vs_resonator", mtcs::Quantity::qubit_vs_resonator},
        {"multimode_g2", mtcs::Quantity::multimode_g2},
    };
    mtcs::SweepSpec spec;
    spec.quantity = quantities.at(o.quantity);
    spec.params = mtcs::SystemParams(o.omega_q, o.omega_r, o.g, o.t);
    const bool g_sweep = o.variable == "g";
    spec.grid.variable = g_sweep ? mtcs::GridVariable::coupling : mtcs::GridVariable::temperature;
    spec.grid.min = g_sweep ? o.g_min : o.t_min;
    spec.grid.max = g_sweep ? o.g_max : o.t_max;
    spec.grid.steps = o.steps;
    spec.grid.spacing = o.log_spacing ? mtcs::Spacing::logarithmic : mtcs::Spacing::linear;
    spec.fock_cutoff = parse_cutoff(o.cutoff);
    spec.qfi_variant = o.qfi_variant == "extended" ? mtcs::QfiVariant::extended
                                                   : mtcs::QfiVariant::printed;
    spec.quadrature = o.quadrature == "x" ? mtcs::QuadratureAxis::x : mtcs::QuadratureAxis::p;
    spec.scale_by = o.scale_by == "omega_q" ? mtcs::ScaleBy::omega_q : mtcs::ScaleBy::omega_r;
    spec.thermal_baseline = o.ho_baseline;
    spec.workers = o.workers;
    spec.wigner_points = o.wigner_points;
    if (!o.modes.empty()) spec.multimode = parse_modes(o.modes, o.omega_q, o.t);
    if (o.omega_p > 0.0 || o.omega_a > 0.0)
        spec.probe = mtcs::QubitProbeParams(o.omega_p > 0.0 ? o.omega_p : o.omega_r,
                                            o.omega_a > 0.0 ? o.omega_a : o.omega_q, o.g);
    return spec;
}

int run_sweep_cmd(const SweepCliOptions& o) {
    const mtcs::SweepSpec spec = build_spec(o);
    const mtcs::SweepResult result = mtcs::run_sweep(spec);
    const auto format = o.format == "json" ? mtcs::OutputFormat::json : mtcs::OutputFormat::csv;
    if (o.out.empty()) {
        std::cout << (format == mtcs::OutputFormat::csv ? mtcs::to_csv(result)
                                                        : mtcs::to_json(result));
    } else {
        mtcs::write_result(result, o.out, format);
        std::cerr << "wrote " << o.out << " (" << result.rows.size() << " rows)\n";
    }
    return 0;
}

int run_figure_cmd(const std::string& id, const std::string& out_dir) {
    const mtcs::FigureId fid = mtcs::parse_figure_id(id);
    std::filesystem::create_directories(out_dir);
    for (const auto& [name, result] : mtcs::reproduce_figure(fid)) {
        const std::string path = out_dir + "/" + name + ".csv";
        mtcs::write_result(result, path, mtcs::OutputFormat::csv);
        std::cerr << "wrote " << path << " (" << result.rows.size() << " rows)\n";
    }
    return 0;
}

int run_validate_cmd(double omega_q, double omega_r, double g, double t,
                     const std::string& cutoff_str) {
    const mtcs::SystemParams sp(omega_q, omega_r, g, t);
    int cutoff = parse_cutoff(cutoff_str);
    if (cutoff == 0) cutoff = mtcs::auto_fock_cutoff(sp, sp.t);
    const mtcs::ValidationReport rep = mtcs::validate(sp, cutoff);

    auto line = [](const char* name, double value, double tol, bool ok) {
        std::printf("%-34s %12.3e  (tolerance %.0e)  %s\n", name, value, tol,
                    ok ? "ok" : "FAIL");
    };
    std::printf("validate: omega_q=%g omega_r=%g g=%g T=%g cutoff=%d\n", omega_q, omega_r, g, t,
                cutoff);
    if (!rep.truncation_ok) {
        std::printf("truncation check                    FAIL: %s\n",
                    rep.truncation_message.c_str());
        return 3;
    }
    line("1 - fidelity(analytic, numeric)", rep.infidelity, mtcs::ValidationReport::kFidelityTol,
         rep.infidelity < mtcs::ValidationReport::kFidelityTol);
    line("|g2_analytic - g2_numeric|", rep.g2_abs_dev, mtcs::ValidationReport::kG2Tol,
         rep.g2_abs_dev < mtcs::ValidationReport::kG2Tol);
    line("max moment deviation", rep.moment_abs_dev, mtcs::ValidationReport::kMomentTol,
         rep.moment_abs_dev < mtcs::ValidationReport::kMomentTol);
    line("QFI closed vs pipeline (rel)", rep.qfi_rel_dev, mtcs::ValidationReport::kQfiRelTol,
         rep.qfi_rel_dev < mtcs::ValidationReport::kQfiRelTol);
    std::printf("result: %s\n", rep.passed() ? "PASS" : "FAIL");
    return rep.passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixture-of-thermal-coherent-states thermometry toolkit"};
    app.require_subcommand(1);

    SweepCliOptions o;

    // config values act as defaults, so load the file before CLI11 parses the
    // flags; CLI11's own subcommand set_config does not feed values back
    std::string config_path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    if (!config_path.empty()) {
        try {
            apply_config_file(config_path, o);
        } catch (const mtcs::InvalidParameter& e) {
            std::cerr << "bad arguments: " << e.what() << "\n";
            return 4;
        }
    }

    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a quantity over a parameter grid");
    std::string config_echo;
    sweep->add_option("--config", config_echo, "key=value config file (flags take precedence)");
    sweep->add_option("--quantity", o.quantity,
                      "g2|wigner|qfi|cfi|ratio|kurtosis|error_prop|fidelity|"
                      "qubit_vs_resonator|multimode_g2")
        ->capture_default_str();
    sweep->add_option("--omega-q", o.omega_q, "qubit frequency")->capture_default_str();
    sweep->add_option("--omega-r", o.omega_r, "resonator frequency")->capture_default_str();
    sweep->add_option("--g", o.g, "coupling strength")->capture_default_str();
    sweep->add_option("--t", o.t, "temperature (fixed point for g sweeps and wigner)")
        ->capture_default_str();
    sweep->add_option("--variable", o.variable, "sweep variable: T or g")->capture_default_str();
    sweep->add_option("--t-min", o.t_min)->capture_default_str();
    sweep->add_option("--t-max", o.t_max)->capture_default_str();
    sweep->add_option("--g-min", o.g_min)->capture_default_str();
    sweep->add_option("--g-max", o.g_max)->capture_default_str();
    sweep->add_option("--steps", o.steps)->capture_default_str();
    sweep->add_flag("--log", o.log_spacing, "logarithmic grid spacing");
    sweep->add_option("--cutoff", o.cutoff, "Fock cutoff: auto or integer")
        ->capture_default_str();
    sweep->add_option("--out", o.out, "output path (stdout when omitted)");
    sweep->add_option("--format", o.format, "csv|json")->capture_default_str();
    sweep->add_option("--qfi-variant", o.qfi_variant, "printed|extended")->capture_default_str();
    sweep->add_option("--quadrature", o.quadrature, "x|p (kurtosis)")->capture_default_str();
    sweep->add_option("--scale-by", o.scale_by, "omega_r|omega_q (header note)")
        ->capture_default_str();
    sweep->add_flag("--ho-baseline", o.ho_baseline, "add thermal-oscillator QFI column");
    sweep->add_option("--workers", o.workers, "concurrent grid workers")->capture_default_str();
    sweep->add_option("--wigner-points", o.wigner_points)->capture_default_str();
    sweep->add_option("--modes", o.modes, "multimode list omega1:g1,omega2:g2,...");
    sweep->add_option("--omega-p", o.omega_p, "probe frequency (qubit_vs_resonator)");
    sweep->add_option("--omega-a", o.omega_a, "ancilla frequency (qubit_vs_resonator)");

    std::string figure_id, out_dir = ".";
    CLI::App* figure = app.add_subcommand("figure", "reproduce a published-figure data set");
    figure->add_option("id", figure_id,
                       "fig2a|fig2bc|fig3|fig4|fig5|fig6a|fig6b|fig7|fig8|fig9|fig10|figQR")
        ->required();
    figure->add_option("--out-dir", out_dir, "output directory")->capture_default_str();

    double v_omega_q = 0.4, v_omega_r = 1.0, v_g = 0.4, v_t = 1.0;
    std::string v_cutoff = "80";
    CLI::App* val = app.add_subcommand("validate", "closed forms vs exact truncated pipeline");
    val->add_option("--omega-q", v_omega_q)->capture_default_str();
    val->add_option("--omega-r", v_omega_r)->capture_default_str();
    val->add_option("--g", v_g)->capture_default_str();
    val->add_option("--t", v_t)->capture_default_str();
    val->add_option("--cutoff", v_cutoff, "auto or integer")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 4;
    }

    try {
        if (sweep->parsed()) return run_sweep_cmd(o);
        if (figure->parsed()) return run_figure_cmd(figure_id, out_dir);
        if (val->parsed()) return run_validate_cmd(v_omega_q, v_omega_r, v_g, v_t, v_cutoff);
    } catch (const mtcs::TruncationError& e) {
        std::cerr << "truncation error: " << e.what() << "\n";
        return 3;
    } catch (const mtcs::InvalidParameter& e) {
        std::cerr << "bad arguments: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
