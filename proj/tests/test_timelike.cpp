#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "support/oracles.hpp"
#include "tqet/timelike.hpp"

using namespace tqet;

namespace {

ChainSpec default_six() {
    ChainSpec spec;
    spec.n_sites = 6;
    spec.site_b = 5;
    return spec;
}

const ProtocolContext& ctx6() {
    static const ProtocolContext ctx = make_context(default_six());
    return ctx;
}

CorrelatorMatrix measured_correlator(double t) {
    const ProtocolContext& ctx = ctx6();
    const OperatorBasis ba = site_basis(ctx.spec.n_sites, ctx.spec.site_a);
    const OperatorBasis bb = site_basis(ctx.spec.n_sites, ctx.spec.site_b);
    return correlator_matrix(ctx.branches, ctx.spectrum, ba, bb, t);
}

}  // namespace

TEST_CASE("site basis elements are Hermitian and orthonormal on their site") {
    const int n = 4;
    const OperatorBasis basis = site_basis(n, 2);
    const double site_trace = std::pow(2.0, n - 1);
    for (int mu = 0; mu < 4; ++mu) {
        CHECK(hermiticity_defect(basis.elements[mu]) < 1e-15);
        for (int nu = 0; nu < 4; ++nu) {
            const Complex overlap = (basis.elements[mu] * basis.elements[nu]).trace();
            const double expected = (mu == nu) ? site_trace : 0.0;
            CHECK(std::abs(overlap - Complex(expected, 0.0)) < 1e-12);
        }
    }
    const CMatrix id = CMatrix::Identity(16, 16);
    CHECK(max_abs(basis.elements[0] - id / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("site basis rejects out-of-range sites") {
    CHECK_THROWS_WITH_AS(site_basis(4, 5), doctest::Contains("out of range"),
                         validation_error);
    CHECK_THROWS_AS(site_basis(4, 0), validation_error);
}

TEST_CASE("the identity-identity correlator is always 1/2") {
    for (double t : {0.0, 1.0, 3.7}) {
        const CorrelatorMatrix c = measured_correlator(t);
        CHECK(std::abs(c(0, 0) - Complex(0.5, 0.0)) < 1e-12);
    }
}

TEST_CASE("equal-time correlators of a product state factorize") {
    ChainSpec spec;
    spec.n_sites = 4;
    spec.j = 0.0;
    spec.g = -1.0;
    const CMatrix h = build_h(spec);
    const Spectrum s = eigh(h);
    const GroundState gs = ground_state(h, s);
    const OperatorBasis ba = site_basis(4, 2);
    const OperatorBasis bb = site_basis(4, 4);
    const CorrelatorMatrix c = correlator_matrix(gs, s, ba, bb, 0.0);

    Eigen::Vector4cd single;
    for (int mu = 0; mu < 4; ++mu) single(mu) = expectation(ba.elements[mu], gs.vector);
    Eigen::Vector4cd other;
    for (int mu = 0; mu < 4; ++mu) other(mu) = expectation(bb.elements[mu], gs.vector);
    CHECK(max_abs(CMatrix(c - single * other.transpose())) < 1e-12);

    CHECK(std::abs(tr_t2(c) - Complex(1.0, 0.0)) < 1e-12);
    CHECK(tr_ttdag(c) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("correlator matrices match the density-matrix oracle at t=1") {
    const oracle::DmProtocol dm = oracle::make_dm(default_six());
    const CorrelatorMatrix measured = measured_correlator(1.0);
    CHECK(max_abs(CMatrix(measured - oracle::dm_correlator(dm, true, 1.0))) < 1e-10);

    const ProtocolContext& ctx = ctx6();
    const OperatorBasis ba = site_basis(ctx.spec.n_sites, ctx.spec.site_a);
    const OperatorBasis bb = site_basis(ctx.spec.n_sites, ctx.spec.site_b);
    const CorrelatorMatrix vacuum = correlator_matrix(ctx.ground, ctx.spectrum, ba, bb, 1.0);
    CHECK(max_abs(CMatrix(vacuum - oracle::dm_correlator(dm, false, 1.0))) < 1e-10);
}

TEST_CASE("second moments of the zero matrix vanish") {
    const CorrelatorMatrix zero = CorrelatorMatrix::Zero();
    CHECK(tr_t2(zero) == Complex(0.0, 0.0));
    CHECK(tr_ttdag(zero) == 0.0);
}

TEST_CASE("tr_ttdag dominates |tr_t2| and matches frozen values at t=1") {
    const CorrelatorMatrix c = measured_correlator(1.0);
    const Complex t2 = tr_t2(c);
    CHECK(t2.real() == doctest::Approx(5.87447641741499549e-01).epsilon(1e-11));
    CHECK(t2.imag() == doctest::Approx(-6.53012679376206370e-03).epsilon(1e-11));
    const double tt = tr_ttdag(c);
    CHECK(tt == doctest::Approx(5.89267660246342029e-01).epsilon(1e-11));
    CHECK(tt >= std::abs(t2));
}

TEST_CASE("diagnostic series is self-consistent over the grid") {
    ChainSpec spec = default_six();
    spec.t_max = 3.0;
    spec.dt = 0.1;
    const ProtocolContext ctx = make_context(spec);
    const CorrelatorSeries series =
        run_series(spec, ctx.ground, ctx.branches, ctx.spectrum);

    const std::vector<double> grid = spec.time_grid();
    REQUIRE(series.times.size() == grid.size());
    REQUIRE(series.c_rho_a.size() == grid.size());
    REQUIRE(series.delta_tr_t2.size() == grid.size());

    double re_spread = 0.0;
    double im_spread = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(series.times[i] == doctest::Approx(grid[i]).epsilon(1e-13));
        CHECK(std::abs(tr_t2(series.c_rho_a[i]) - series.tr_t2_rho_a[i]) < 1e-12);
        CHECK(std::abs(tr_t2(series.c_rho_0[i]) - series.tr_t2_rho_0[i]) < 1e-12);
        CHECK(std::abs(tr_ttdag(series.c_rho_a[i]) - series.tr_ttdag_rho_a[i]) < 1e-12);
        CHECK(std::abs(tr_ttdag(series.c_rho_0[i]) - series.tr_ttdag_rho_0[i]) < 1e-12);
        CHECK(series.tr_ttdag_rho_a[i] >= std::abs(series.tr_t2_rho_a[i]) - 1e-12);
        CHECK(series.tr_ttdag_rho_0[i] >= std::abs(series.tr_t2_rho_0[i]) - 1e-12);
        const Complex delta = series.tr_t2_rho_a[i] - series.tr_t2_rho_0[i];
        CHECK(std::abs(series.delta_tr_t2[i] - delta) < 1e-13);
        re_spread = std::max(re_spread, std::abs(series.delta_tr_t2[i].real() -
                                                 series.delta_tr_t2[0].real()));
        im_spread = std::max(im_spread, std::abs(series.delta_tr_t2[i].imag() -
                                                 series.delta_tr_t2[0].imag()));
    }
    CHECK(re_spread > 1e-3);
    CHECK(im_spread > 1e-3);
}

TEST_CASE("worker count does not change the series") {
    ChainSpec spec = default_six();
    spec.t_max = 2.0;
    spec.dt = 0.1;
    const ProtocolContext ctx = make_context(spec);
    const CorrelatorSeries serial =
        run_series(spec, ctx.ground, ctx.branches, ctx.spectrum, 1);
    const CorrelatorSeries parallel =
        run_series(spec, ctx.ground, ctx.branches, ctx.spectrum, 4);
    REQUIRE(serial.times.size() == parallel.times.size());
    for (size_t i = 0; i < serial.times.size(); ++i) {
        CHECK(max_abs(CMatrix(serial.c_rho_a[i] - parallel.c_rho_a[i])) == 0.0);
        CHECK(max_abs(CMatrix(serial.c_rho_0[i] - parallel.c_rho_0[i])) == 0.0);
        CHECK(serial.delta_tr_t2[i] == parallel.delta_tr_t2[i]);
    }
}

TEST_CASE("critical point finder handles monotone, smooth and plateau input") {
    const double dt = 0.01;
    std::vector<double> monotone;
    for (int i = 0; i < 200; ++i) monotone.push_back(0.3 * i);
    CHECK(critical_points(monotone, dt).empty());

    std::vector<double> wave;
    const int n = static_cast<int>(2.0 * std::numbers::pi / dt);
    for (int i = 0; i <= n; ++i) wave.push_back(std::sin(i * dt));
    const std::vector<double> crit = critical_points(wave, dt);
    REQUIRE(crit.size() == 2);
    CHECK(std::abs(crit[0] - std::numbers::pi / 2) <= dt);
    CHECK(std::abs(crit[1] - 3 * std::numbers::pi / 2) <= dt);

    const std::vector<double> plateau{0.0, 1.0, 1.0, 1.0, 0.0};
    const std::vector<double> mid = critical_points(plateau, 0.5);
    REQUIRE(mid.size() == 1);
    CHECK(mid[0] == doctest::Approx(1.0).epsilon(1e-13));

    const std::vector<double> edge_plateau{1.0, 1.0, 0.0};
    CHECK(critical_points(edge_plateau, 0.5).empty());

    CHECK_THROWS_WITH_AS(critical_points({1.0, 2.0}, 0.1),
                         doctest::Contains("length >= 3"), validation_error);
}

TEST_CASE("scalarization labels round-trip and reject unknown names") {
    for (Scalarization s : {Scalarization::Abs, Scalarization::Re, Scalarization::Im}) {
        CHECK(scalarization_from_label(scalarization_label(s)) == s);
    }
    CHECK_THROWS_WITH_AS(scalarization_from_label("norm"),
                         doctest::Contains("unknown scalarization"), validation_error);
}

TEST_CASE("a diagnostic tracking dE_min itself synchronizes with zero gap") {
    ChainSpec spec = default_six();
    spec.t_max = 5.0;
    spec.dt = 0.1;
    const ProtocolContext ctx = make_context(spec);
    const ProtocolTrace trace = run_trace(ctx);
    CorrelatorSeries series = run_series(spec, ctx.ground, ctx.branches, ctx.spectrum);
    for (size_t i = 0; i < series.times.size(); ++i) {
        series.delta_tr_t2[i] = Complex(trace.points[i].de_min, 0.0);
    }
    const SyncReport rep = sync_analysis(trace, series, Scalarization::Abs);
    REQUIRE_FALSE(rep.pairs.empty());
    CHECK(rep.flag.empty());
    CHECK(rep.median_gap == 0.0);
    CHECK(rep.max_gap == 0.0);
}

TEST_CASE("extraction minima line up with diagnostic extrema on the default chain") {
    ChainSpec spec = default_six();
    spec.dt = 0.1;
    const ProtocolContext ctx = make_context(spec);
    const ProtocolTrace trace = run_trace(ctx);
    const CorrelatorSeries series =
        run_series(spec, ctx.ground, ctx.branches, ctx.spectrum);
    const SyncReport rep = sync_analysis(trace, series);
    CHECK(rep.flag.empty());
    CHECK(rep.pairs.size() == 11);
    CHECK(rep.median_gap == doctest::Approx(1.00000000000000089e-01).epsilon(1e-11));
    CHECK(rep.max_gap == doctest::Approx(4.00000000000000022e-01).epsilon(1e-11));
    CHECK(rep.median_gap <= 2.0 * spec.dt);
    for (const SyncPair& pair : rep.pairs) {
        CHECK(pair.gap == doctest::Approx(std::abs(pair.t_min - pair.t_critical))
                              .epsilon(1e-13));
    }
}

TEST_CASE("a flat extraction profile reports no minima to pair") {
    ChainSpec spec = default_six();
    spec.g = 0.0;
    spec.h = 0.25;
    spec.t_max = 3.0;
    spec.dt = 0.1;
    const ProtocolContext ctx = make_context(spec);
    const ProtocolTrace trace = run_trace(ctx);
    const CorrelatorSeries series =
        run_series(spec, ctx.ground, ctx.branches, ctx.spectrum);
    const SyncReport rep = sync_analysis(trace, series);
    CHECK(rep.pairs.empty());
    CHECK(rep.flag == "no_minima");
}

TEST_CASE("mismatched grids are rejected") {
    ChainSpec spec = default_six();
    spec.t_max = 2.0;
    spec.dt = 0.1;
    const ProtocolContext ctx = make_context(spec);
    const ProtocolTrace trace = run_trace(ctx);

    ChainSpec other = spec;
    other.dt = 0.05;
    const ProtocolContext octx = make_context(other);
    const CorrelatorSeries series =
        run_series(other, octx.ground, octx.branches, octx.spectrum);
    CHECK_THROWS_WITH_AS(sync_analysis(trace, series),
                         doctest::Contains("different time grids"), validation_error);
}
