#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cmath>
#include <sstream>

#include "mtcs/figures.hpp"
#include "mtcs/json_io.hpp"
#include "mtcs/sweep.hpp"
#include "test_support.hpp"

using namespace mtcs;
using namespace test_support;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<double> column(const SweepResult& r, const std::string& name) {
    const auto it = std::find(r.columns.begin(), r.columns.end(), name);
    REQUIRE(it != r.columns.end());
    const size_t idx = it - r.columns.begin();
    std::vector<double> out;
    for (const auto& row : r.rows) out.push_back(row[idx]);
    return out;
}

std::string meta_value(const SweepResult& r, const std::string& key) {
    for (const auto& [k, v] : r.meta)
        if (k == key) return v;
    return "";
}

}  // namespace

TEST_CASE("g2 sweep endpoints and analytic-numeric agreement") {
    SweepSpec spec;
    spec.quantity = Quantity::g2;
    spec.params = SystemParams(1.0, 1.0, 0.01, 1.0);
    spec.grid = {GridVariable::temperature, 0.03, 2.0, 30, Spacing::linear};
    spec.fock_cutoff = 60;
    const SweepResult r = run_sweep(spec);
    const auto analytic = column(r, "g2_analytic");
    const auto numeric = column(r, "g2_numeric");
    REQUIRE(std::abs(analytic.front() - 1.0) < 0.01);
    REQUIRE(std::abs(analytic.back() - 2.0) < 0.05);
    for (size_t i = 0; i < analytic.size(); ++i)
        REQUIRE_THAT(numeric[i], WithinAbs(analytic[i], 1e-8));
}

TEST_CASE("CSV output is deterministic") {
    SweepSpec spec;
    spec.quantity = Quantity::qfi;
    spec.params = SystemParams(0.04, 1.0, 0.04, 1.0);
    spec.grid = {GridVariable::temperature, 0.01, 2.0, 25, Spacing::logarithmic};
    const std::string a = to_csv(run_sweep(spec));
    const std::string b = to_csv(run_sweep(spec));
    REQUIRE(a == b);

    // worker count must not change the bytes
    spec.workers = 2;
    REQUIRE(to_csv(run_sweep(spec)) == a);
}

TEST_CASE("qfi sweep with thermal baseline column") {
    SweepSpec spec;
    spec.quantity = Quantity::qfi;
    spec.params = SystemParams(0.04, 1.0, 0.04, 1.0);
    spec.grid = {GridVariable::temperature, 0.005, 2.0, 200, Spacing::logarithmic};
    spec.thermal_baseline = true;
    const SweepResult r = run_sweep(spec);
    REQUIRE(count_local_maxima(column(r, "qfi_thermal_ho")) == 1);
    REQUIRE(count_local_maxima(column(r, "qfi_closed")) == 2);
}

TEST_CASE("qfi variant flag adds the first-moment term") {
    SweepSpec spec;
    spec.quantity = Quantity::qfi;
    spec.params = SystemParams(0.4, 1.0, 0.3, 1.0);
    spec.grid = {GridVariable::temperature, 0.3, 1.0, 5, Spacing::linear};
    const auto printed = column(run_sweep(spec), "qfi_closed");
    spec.qfi_variant = QfiVariant::extended;
    const auto extended = column(run_sweep(spec), "qfi_closed");
    for (size_t i = 0; i < printed.size(); ++i) REQUIRE(extended[i] > printed[i]);
}

TEST_CASE("kurtosis sweep stays within 1e-6 of zero") {
    SweepSpec spec;
    spec.quantity = Quantity::kurtosis;
    spec.params = SystemParams(0.04, 1.0, 0.06, 1.0);
    spec.grid = {GridVariable::temperature, 0.01, 2.0, 20, Spacing::linear};
    for (double v : column(run_sweep(spec), "kappa_p")) REQUIRE(std::abs(v) < 1e-6);
}

TEST_CASE("wigner sweep emits a normalized long-format grid") {
    SweepSpec spec;
    spec.quantity = Quantity::wigner;
    spec.params = SystemParams(0.01, 1.0, 1.0, 0.03);
    spec.wigner_points = 101;
    const SweepResult r = run_sweep(spec);
    REQUIRE(r.columns == std::vector<std::string>{"x", "p", "w"});
    REQUIRE(r.rows.size() == 101u * 101u);
    const double dx = r.rows[101][0] - r.rows[0][0];  // x advances every 101 rows
    const double dp = r.rows[1][1] - r.rows[0][1];
    double norm = 0.0;
    for (const auto& row : r.rows) norm += row[2];
    REQUIRE_THAT(norm * dx * dp, WithinAbs(1.0, 1e-3));
}

TEST_CASE("multimode sweep produces one column per mode") {
    SweepSpec spec;
    spec.quantity = Quantity::multimode_g2;
    spec.params = SystemParams(1.0, 1.0, 0.01, 1.0);
    spec.multimode = MultimodeParams{{{0.3, 0.01}, {0.4, 0.01}, {0.5, 0.01}, {0.6, 0.01}}, 1.0, 1.0};
    spec.grid = {GridVariable::temperature, 0.01, 2.0, 40, Spacing::logarithmic};
    const SweepResult r = run_sweep(spec);
    REQUIRE(r.columns.size() == 5);
    const auto m1 = column(r, "g2_mode_1");
    const auto m4 = column(r, "g2_mode_4");
    REQUIRE(m1.front() > m4.front());  // lower mode frequency thermalizes first
    REQUIRE_THAT(m1.back(), WithinAbs(2.0, 1e-2));
    REQUIRE(std::abs(m4.front() - 1.0) < 0.05);
}

TEST_CASE("error propagation sweep carries its oracle column") {
    SweepSpec spec;
    spec.quantity = Quantity::error_prop;
    spec.params = SystemParams(1.0, 1.0, 0.05, 1.0);
    spec.grid = {GridVariable::temperature, 0.2, 2.0, 15, Spacing::linear};
    const SweepResult r = run_sweep(spec);
    const auto closed = column(r, "delta2_t");
    const auto oracle = column(r, "delta2_t_oracle");
    for (size_t i = 0; i < closed.size(); ++i)
        REQUIRE_THAT(closed[i] / oracle[i], WithinAbs(1.0, 1e-8));
}

TEST_CASE("coupling-variable sweeps") {
    SweepSpec spec;
    spec.quantity = Quantity::qfi;
    spec.params = SystemParams(0.04, 1.0, 0.01, 0.02);
    spec.grid = {GridVariable::coupling, 0.005, 0.06, 12, Spacing::linear};
    const SweepResult r = run_sweep(spec);
    REQUIRE(r.columns.front() == "g");
    const auto qfi = column(r, "qfi_closed");
    for (size_t i = 1; i < qfi.size(); ++i) REQUIRE(qfi[i] > qfi[i - 1]);
}

TEST_CASE("grid validation") {
    SweepSpec spec;
    spec.grid = {GridVariable::temperature, 2.0, 1.0, 10, Spacing::linear};
    REQUIRE_THROWS_AS(run_sweep(spec), InvalidParameter);
    spec.grid = {GridVariable::temperature, 0.1, 2.0, 1, Spacing::linear};
    REQUIRE_THROWS_AS(run_sweep(spec), InvalidParameter);
}

TEST_CASE("sweep errors name the failing grid point") {
    SweepSpec spec;
    spec.quantity = Quantity::fidelity;
    spec.params = SystemParams(0.4, 1.0, 0.4, 1.0);
    spec.grid = {GridVariable::temperature, 0.1, 2.0, 5, Spacing::linear};
    spec.fock_cutoff = 5;
    try {
        run_sweep(spec);
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        REQUIRE(std::string(e.what()).find("grid point") != std::string::npos);
    }
}

TEST_CASE("JSON mirror carries the same content as the CSV") {
    SweepSpec spec;
    spec.quantity = Quantity::ratio;
    spec.params = SystemParams(1.0, 1.0, 0.01, 1.0);
    spec.grid = {GridVariable::temperature, 0.1, 2.0, 8, Spacing::linear};
    const SweepResult r = run_sweep(spec);
    const nlohmann::json j = nlohmann::json::parse(to_json(r));
    REQUIRE(j["meta"]["quantity"] == "ratio");
    REQUIRE(j["columns"].size() == r.columns.size());
    REQUIRE(j["rows"].size() == r.rows.size());
    for (size_t i = 0; i < r.rows.size(); ++i)
        for (size_t c = 0; c < r.rows[i].size(); ++c)
            REQUIRE(j["rows"][i][c].get<double>() == r.rows[i][c]);
}

TEST_CASE("CSV layout: hash header block, column row, 17 significant digits") {
    SweepSpec spec;
    spec.quantity = Quantity::error_prop;
    spec.params = SystemParams(1.0, 1.0, 0.1, 1.0);
    spec.grid = {GridVariable::temperature, 1.0 / 3.0, 2.0, 3, Spacing::linear};
    const std::string csv = to_csv(run_sweep(spec));
    std::istringstream in(csv);
    std::string line;
    bool in_header = true;
    int data_rows = 0;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            REQUIRE(in_header);
            continue;
        }
        if (in_header) {
            REQUIRE(line == "T,delta2_t,delta2_t_oracle");
            in_header = false;
            continue;
        }
        ++data_rows;
    }
    REQUIRE(data_rows == 3);
    // 17 significant digits round-trip: the 1/3 grid edge survives exactly
    REQUIRE(csv.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("validate passes at the reference parameters and flags tiny cutoffs") {
    const ValidationReport good = validate(SystemParams(0.4, 1.0, 0.4, 1.0), 80);
    REQUIRE(good.truncation_ok);
    REQUIRE(good.infidelity < ValidationReport::kFidelityTol);
    REQUIRE(good.g2_abs_dev < ValidationReport::kG2Tol);
    REQUIRE(good.moment_abs_dev < ValidationReport::kMomentTol);
    REQUIRE(good.qfi_rel_dev < ValidationReport::kQfiRelTol);
    REQUIRE(good.passed());

    // uncoupled: thermal state both ways
    REQUIRE(validate(SystemParams(1.0, 1.0, 0.0, 1.0), 60).passed());

    const ValidationReport bad = validate(SystemParams(0.4, 1.0, 0.4, 2.0), 5);
    REQUIRE_FALSE(bad.truncation_ok);
    REQUIRE_FALSE(bad.passed());
}

TEST_CASE("figure presets carry the caption parameters") {
    const FigureResults fig4 = reproduce_figure(FigureId::fig4);
    REQUIRE(fig4.size() == 3);
    for (const auto& [name, result] : fig4) {
        REQUIRE(meta_value(result, "omega_q") == "0.040000000000000001");
        REQUIRE(meta_value(result, "omega_r") == "1");
        REQUIRE(!column(result, "qfi_thermal_ho").empty());
    }
    REQUIRE(fig4[0].first == "fig4_g0p02");

    const FigureResults qr = reproduce_figure(FigureId::figQR);
    REQUIRE(qr.size() == 1);
    REQUIRE(meta_value(qr[0].second, "omega_p") == "1");
    REQUIRE(meta_value(qr[0].second, "omega_a") == "0.040000000000000001");

    const FigureResults f2 = reproduce_figure(FigureId::fig2bc);
    REQUIRE(f2.size() == 2);
    REQUIRE(f2[0].second.columns == std::vector<std::string>{"x", "p", "w"});
    REQUIRE(meta_value(f2[0].second, "omega_q") == "0.01");
    REQUIRE(meta_value(f2[0].second, "g") == "1");
    REQUIRE(meta_value(f2[0].second, "t") == "0.029999999999999999");

    const FigureResults f7 = reproduce_figure(FigureId::fig7);
    REQUIRE(f7.size() == 3);
    for (const auto& [name, result] : f7) {
        REQUIRE(meta_value(result, "omega_q") == "0.40000000000000002");
        REQUIRE(meta_value(result, "g") == "0.40000000000000002");
        REQUIRE(meta_value(result, "cutoff") == "80");
    }

    const FigureResults f6a = reproduce_figure(FigureId::fig6a);
    REQUIRE(f6a.size() == 3);
    REQUIRE(meta_value(f6a[0].second, "g") == "0.001");
    REQUIRE(meta_value(f6a[1].second, "g") == "0.080000000000000002");
    REQUIRE(meta_value(f6a[2].second, "g") == "0.14999999999999999");

    REQUIRE_THROWS_AS(parse_figure_id("fig99"), InvalidParameter);
}

TEST_CASE("fidelity sweep is flat at unit fidelity") {
    SweepSpec spec;
    spec.quantity = Quantity::fidelity;
    spec.params = SystemParams(0.4, 1.0, 0.4, 1.0);
    spec.grid = {GridVariable::temperature, 0.1, 2.0, 8, Spacing::linear};
    spec.fock_cutoff = 80;
    for (double f : column(run_sweep(spec), "fidelity")) REQUIRE(f >= 1.0 - 1e-8);
}
