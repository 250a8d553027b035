#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mtcs/model.hpp"
#include "mtcs/photon_stats.hpp"
#include "test_support.hpp"

using namespace mtcs;
using namespace test_support;
using Catch::Matchers::WithinAbs;

TEST_CASE("g2 of a thermal state is 2") {
    const HilbertSpec spec(60);
    const DensityMatrix thermal = thermal_state(1.0, 1.0, spec);
    REQUIRE_THAT(g2_numeric(thermal, spec), WithinAbs(2.0, 1e-10));
}

TEST_CASE("g2 of a displaced vacuum is 1") {
    const HilbertSpec spec(40);
    const Operator d = displacement(0.7, spec);
    const DensityMatrix coherent{Operator(d.col(0) * d.col(0).adjoint())};
    REQUIRE_THAT(g2_numeric(coherent, spec), WithinAbs(1.0, 1e-10));
}

TEST_CASE("g2 rejects zero mean photon number") {
    const HilbertSpec spec(10);
    Operator vac = Operator::Zero(10, 10);
    vac(0, 0) = 1.0;
    REQUIRE_THROWS_AS(g2_numeric(DensityMatrix(vac), spec), ZeroMeanPhotonNumber);
}

TEST_CASE("analytic g2 limits") {
    MtcsParams thermal_only{0.0, 0.3, 0.7, 1.0, 1.0};
    REQUIRE_THAT(g2_analytic(thermal_only), WithinAbs(2.0, 1e-14));
    MtcsParams coherent_only{0.5, 0.3, 0.0, 1.0, 1.0};
    REQUIRE_THAT(g2_analytic(coherent_only), WithinAbs(1.0, 1e-14));
    MtcsParams degenerate{0.0, 0.3, 0.0, 1.0, 1.0};
    REQUIRE_THROWS_AS(g2_analytic(degenerate), DegenerateState);
}

TEST_CASE("numeric g2 equals the closed form on the reduced state") {
    const HilbertSpec spec(80);
    for (double t : {0.1, 1.0, 2.0}) {
        const SystemParams sp(1.0, 1.0, 0.04, t);
        const double ga = g2_analytic(mtcs_params(sp));
        const double gn = g2_numeric(resonator_reduced_numeric(sp, spec), spec);
        REQUIRE_THAT(gn, WithinAbs(ga, 1e-8));
    }
}

TEST_CASE("g2 interpolates between coherent and thermal statistics") {
    // fig2a endpoints at g = 0.01
    const SystemParams lo(1.0, 1.0, 0.01, 0.03);
    const SystemParams hi(1.0, 1.0, 0.01, 2.0);
    REQUIRE(std::abs(g2_analytic(mtcs_params(lo)) - 1.0) < 0.01);
    REQUIRE(std::abs(g2_analytic(mtcs_params(hi)) - 2.0) < 0.05);
    // bound g2 in [1, 2] across the sweep
    for (double t : geomspace(0.03, 2.0, 40)) {
        const double v = g2_analytic(mtcs_params(lo.with_temperature(t)));
        REQUIRE(v >= 1.0 - 1e-12);
        REQUIRE(v <= 2.0 + 1e-12);
    }
}

TEST_CASE("multimode g2") {
    MultimodeParams identical{{{0.5, 0.02}, {0.5, 0.02}}, 1.0, 0.7};
    const auto same = g2_multimode(identical);
    REQUIRE(same[0] == same[1]);

    MultimodeParams single{{{1.0, 0.3}}, 1.0, 1.0};
    REQUIRE_THAT(g2_multimode(single)[0],
                 WithinAbs(g2_analytic(mtcs_params(SystemParams(1.0, 1.0, 0.3, 1.0))), 1e-15));

    // the four fig3 modes are distinct at low T and all rise toward 2
    MultimodeParams four{{{0.3, 0.01}, {0.4, 0.01}, {0.5, 0.01}, {0.6, 0.01}}, 1.0, 0.05};
    const auto lo = g2_multimode(four);
    for (int i = 0; i < 3; ++i) REQUIRE(lo[i] > lo[i + 1] + 0.01);
    four.t = 2.0;
    for (double v : g2_multimode(four)) REQUIRE_THAT(v, WithinAbs(2.0, 1e-3));
}

TEST_CASE("closed-form number moments") {
    MtcsParams thermal_only{0.0, 0.3, 0.9, 1.0, 1.0};
    const NumberMoments th = number_moments_analytic(thermal_only);
    REQUIRE_THAT(th.mean, WithinAbs(0.9, 1e-15));
    REQUIRE_THAT(th.variance, WithinAbs(0.9 * 1.9, 1e-14));

    MtcsParams coherent_only{0.6, 0.3, 0.0, 1.0, 1.0};
    const NumberMoments ch = number_moments_analytic(coherent_only);
    REQUIRE_THAT(ch.mean, WithinAbs(0.36, 1e-15));
    REQUIRE_THAT(ch.variance, WithinAbs(0.36, 1e-14));  // Poisson

    const SystemParams sp(1.0, 1.0, 0.3, 1.0);
    const HilbertSpec spec(80);
    const NumberMoments na = number_moments_analytic(mtcs_params(sp));
    const NumberMoments nn = number_moments_numeric(resonator_reduced_numeric(sp, spec), spec);
    REQUIRE_THAT(nn.mean, WithinAbs(na.mean, 1e-8));
    REQUIRE_THAT(nn.second, WithinAbs(na.second, 1e-8));
    REQUIRE_THAT(nn.variance, WithinAbs(na.variance, 1e-8));
    REQUIRE(na.variance >= 0.0);
}

TEST_CASE("wigner function of the vacuum") {
    const HilbertSpec spec(12);
    Operator vac = Operator::Zero(12, 12);
    vac(0, 0) = 1.0;
    const Eigen::VectorXd axis = Eigen::VectorXd::LinSpaced(101, -4.0, 4.0);
    const WignerGrid w = wigner(DensityMatrix(vac), spec, axis, axis);
    Eigen::Index imax, jmax;
    w.values.maxCoeff(&imax, &jmax);
    REQUIRE_THAT(w.x(imax), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(w.p(jmax), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(w.values(imax, jmax), WithinAbs(1.0 / M_PI, 1e-10));
    const double dx = w.x(1) - w.x(0);
    REQUIRE_THAT(w.values.sum() * dx * dx, WithinAbs(1.0, 1e-6));
}

TEST_CASE("wigner lobe positions follow the displacement phase") {
    // D(i s)|0> is displaced along +p: peak at (0, sqrt(2) s)
    const double s = 0.9;
    const HilbertSpec spec(30);
    const Operator d = displacement(cplx(0.0, s), spec);
    const DensityMatrix rho{Operator(d.col(0) * d.col(0).adjoint())};
    const Eigen::VectorXd axis = Eigen::VectorXd::LinSpaced(241, -6.0, 6.0);
    const WignerGrid w = wigner(rho, spec, axis, axis);
    Eigen::Index imax, jmax;
    w.values.maxCoeff(&imax, &jmax);
    REQUIRE_THAT(w.x(imax), WithinAbs(0.0, 0.06));
    REQUIRE_THAT(w.p(jmax), WithinAbs(std::sqrt(2.0) * s, 0.06));
}

TEST_CASE("wigner structure of the MTCS at low and high temperature") {
    // low T: two lobes along x; high T: single thermal peak
    for (auto [t, expected_peaks] : {std::pair{0.03, 2}, std::pair{2.0, 1}}) {
        const SystemParams sp(0.01, 1.0, 1.0, t);
        const MtcsParams mp = mtcs_params(sp);
        const HilbertSpec spec(std::max(auto_fock_cutoff(sp, t), 40));
        const Eigen::VectorXd axis = default_wigner_axis(mp);
        const WignerGrid w = wigner(mtcs_analytic(sp, spec), spec, axis, axis);
        REQUIRE(count_local_maxima_2d(w.values) == expected_peaks);
        const double dx = w.x(1) - w.x(0);
        REQUIRE_THAT(w.values.sum() * dx * dx, WithinAbs(1.0, 1e-3));
    }
}

TEST_CASE("wigner x-marginal equals the position distribution") {
    const SystemParams sp(0.01, 1.0, 1.0, 0.5);
    const HilbertSpec spec(40);
    const DensityMatrix rho = mtcs_analytic(sp, spec);
    const Eigen::VectorXd axis = default_wigner_axis(mtcs_params(sp), 301);
    const WignerGrid w = wigner(rho, spec, axis, axis);
    const double d = axis(1) - axis(0);

    // oracle: position distribution from harmonic-oscillator wavefunctions
    // psi_n in the same scaled coordinates (vacuum variance 1/2)
    const int n = spec.fock_cutoff;
    Eigen::MatrixXd psi(n, axis.size());
    for (Eigen::Index j = 0; j < axis.size(); ++j) {
        const double x = axis(j);
        psi(0, j) = std::pow(M_PI, -0.25) * std::exp(-x * x / 2.0);
        psi(1, j) = std::sqrt(2.0) * x * psi(0, j);
        for (int k = 2; k < n; ++k)
            psi(k, j) = std::sqrt(2.0 / k) * x * psi(k - 1, j) -
                        std::sqrt((k - 1.0) / k) * psi(k - 2, j);
    }
    for (Eigen::Index j = 0; j < axis.size(); j += 10) {
        const Eigen::VectorXd u = psi.col(j);
        const double p_oracle = (u.cast<cplx>().adjoint() * rho.matrix() * u.cast<cplx>())(0).real();
        const double marginal = w.values.row(j).sum() * d;
        REQUIRE_THAT(marginal, WithinAbs(p_oracle, 1e-4));
    }
}

TEST_CASE("wigner rejects grids that truncate the state") {
    const SystemParams sp(0.01, 1.0, 1.0, 2.0);
    const HilbertSpec spec(64);
    const Eigen::VectorXd tiny = Eigen::VectorXd::LinSpaced(41, -1.5, 1.5);
    REQUIRE_THROWS_AS(wigner(mtcs_analytic(sp, spec), spec, tiny, tiny), GridTooSmall);
}

TEST_CASE("excess kurtosis of Gaussian marginals vanishes") {
    // p marginal of the MTCS is a single Gaussian
    const SystemParams sp(0.04, 1.0, 0.06, 1.0);
    const HilbertSpec spec(kurtosis_fock_cutoff(sp, sp.t));
    const DensityMatrix rho = mtcs_analytic(sp, spec);
    REQUIRE_THAT(excess_kurtosis(rho, spec, QuadratureAxis::p), WithinAbs(0.0, 1e-8));

    // x marginal of a thermal state is Gaussian too
    const HilbertSpec tspec(60);
    const DensityMatrix thermal = thermal_state(1.0, 1.0, tspec);
    REQUIRE_THAT(excess_kurtosis(thermal, tspec, QuadratureAxis::x), WithinAbs(0.0, 1e-8));
    REQUIRE_THAT(excess_kurtosis(thermal, tspec, QuadratureAxis::p), WithinAbs(0.0, 1e-8));
}

TEST_CASE("kappa_p stays flat across the fig8 temperature range") {
    for (auto [wq, g] : {std::pair{0.04, 0.06}, std::pair{0.01, 1.0}}) {
        const SystemParams base(wq, 1.0, g, 1.0);
        const HilbertSpec spec(kurtosis_fock_cutoff(base, 2.0));
        for (double t : {0.01, 0.5, 2.0}) {
            const DensityMatrix rho = mtcs_analytic(base.with_temperature(t), spec);
            REQUIRE_THAT(excess_kurtosis(rho, spec, QuadratureAxis::p), WithinAbs(0.0, 1e-6));
        }
    }
}

TEST_CASE("kappa_x is positive for well-separated lobes") {
    // sanity: the x marginal of a strongly displaced cold mixture is bimodal,
    // hence platykurtic (negative excess kurtosis)
    const SystemParams sp(0.01, 1.0, 1.0, 0.03);
    const HilbertSpec spec(40);
    const double kx = excess_kurtosis(mtcs_analytic(sp, spec), spec, QuadratureAxis::x);
    REQUIRE(kx < -0.5);
}
