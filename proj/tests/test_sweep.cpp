#include "stirap/sweep.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

namespace stirap {
namespace {

SweepOptions quick(unsigned workers = 1) {
    SweepOptions o;
    o.workers = workers;
    o.integrator.samples = 8;
    return o;
}

ModelParams<double> coarse() {
    ModelParams<double> p;
    p.step = 0.05;
    return p;
}

TEST(SweepParameters, NamesRoundTrip) {
    for (auto p : {SweepParameter::Peak, SweepParameter::Coupling, SweepParameter::Delay, SweepParameter::Width,
                   SweepParameter::Detuning, SweepParameter::LossRate, SweepParameter::Exponent1,
                   SweepParameter::Exponent2, SweepParameter::Step}) {
        EXPECT_EQ(parse_parameter(parameter_name(p)), p);
        ModelParams<double> params;
        apply_parameter(params, p, 0.25);
        EXPECT_EQ(read_parameter(params, p), 0.25);
    }
    EXPECT_THROW(parse_parameter("omega"), ConfigError);
}

TEST(SweepParameters, CouplingSetsBothDensities) {
    ModelParams<double> params;
    apply_parameter(params, SweepParameter::Coupling, 3.0);
    EXPECT_EQ(params.spectral1.amplitude, 3.0);
    EXPECT_EQ(params.spectral2.amplitude, 3.0);
}

TEST(SweepAxis, LinearValues) {
    const auto axis = SweepAxis::linear(SweepParameter::Coupling, 1.25, 40, 32);
    const auto v = axis.values();
    ASSERT_EQ(v.size(), 32u);
    EXPECT_EQ(v.front(), 1.25);
    EXPECT_EQ(v[7], 10.0);
    EXPECT_EQ(v.back(), 40.0);
}

TEST(SweepAxis, RejectsDegenerateAxes) {
    EXPECT_THROW(SweepAxis::linear(SweepParameter::Peak, 2, 2, 2), ConfigError);
    EXPECT_THROW(SweepAxis::linear(SweepParameter::Peak, 1, 2, 1), ConfigError);
    EXPECT_THROW(SweepAxis::linear(SweepParameter::Peak, 3, 2, 4), ConfigError);
    EXPECT_THROW(SweepAxis::list(SweepParameter::Peak, {}), ConfigError);
}

TEST(RunSweep, RowMajorLayout) {
    const auto result = run_sweep(coarse(),
                                  {SweepAxis::list(SweepParameter::Peak, {1, 2, 3}), SweepAxis::list(SweepParameter::Coupling, {5, 10})},
                                  quick());
    ASSERT_EQ(result.points.size(), 6u);
    EXPECT_EQ(result.points[0].coords, (std::vector<double>{1, 5}));
    EXPECT_EQ(result.points[1].coords, (std::vector<double>{1, 10}));
    EXPECT_EQ(result.points[2].coords, (std::vector<double>{2, 5}));
    EXPECT_EQ(result.points[5].coords, (std::vector<double>{3, 10}));
    for (const auto& p : result.points) {
        EXPECT_TRUE(p.converged);
        EXPECT_GE(p.fidelity, 0.0);
        EXPECT_LE(p.fidelity, 1 + 1e-8);
    }
}

TEST(RunSweep, SerialAndConcurrentAreBitIdentical) {
    const std::vector<SweepAxis> axes{SweepAxis::linear(SweepParameter::Peak, 1, 6, 4),
                                      SweepAxis::linear(SweepParameter::LossRate, 0, 1, 3)};
    const auto serial = run_sweep(coarse(), axes, quick(1));
    const auto parallel = run_sweep(coarse(), axes, quick(4));
    ASSERT_EQ(serial.points.size(), parallel.points.size());
    for (std::size_t i = 0; i < serial.points.size(); ++i) {
        EXPECT_EQ(std::memcmp(&serial.points[i].fidelity, &parallel.points[i].fidelity, sizeof(double)), 0);
        EXPECT_EQ(serial.points[i].coords, parallel.points[i].coords);
    }
}

TEST(RunSweep, InvalidPointsAreRecorded) {
    const auto result = run_sweep(coarse(), {SweepAxis::list(SweepParameter::Step, {0.05, 0.3, 0.1})}, quick());
    ASSERT_EQ(result.points.size(), 3u);
    EXPECT_TRUE(result.points[0].converged);
    EXPECT_FALSE(result.points[1].converged);
    EXPECT_TRUE(std::isnan(result.points[1].fidelity));
    EXPECT_NE(result.points[1].error.find("delta"), std::string::npos);
    EXPECT_TRUE(result.points[2].converged);
    EXPECT_EQ(result.failures(), 1u);
}

TEST(RunSweep, RejectsBadAxisSets) {
    EXPECT_THROW(run_sweep(coarse(), {}, quick()), ConfigError);
    EXPECT_THROW(run_sweep(coarse(),
                           {SweepAxis::list(SweepParameter::Peak, {1}), SweepAxis::list(SweepParameter::Peak, {2})}, quick()),
                 ConfigError);
}

TEST(RunSweep, LossLowersTransfer) {
    const auto result = run_sweep(ModelParams<double>{}, {SweepAxis::list(SweepParameter::LossRate, {0, 0.5, 1.5})}, quick(0));
    ASSERT_EQ(result.points.size(), 3u);
    EXPECT_GT(result.points[0].fidelity, result.points[1].fidelity);
    EXPECT_GT(result.points[1].fidelity, result.points[2].fidelity);
}

TEST(RunSweep, StrongContinuumCouplingPlateau) {
    // 10 x 10 grid over Omega in [1, 10], g in [1, 40]. Omega = 1 is too weak
    // for adiabatic following and saturates near F = 0.42 at any g.
    SweepOptions o = quick(0);
    const auto result = run_sweep(ModelParams<double>{},
                                  {SweepAxis::linear(SweepParameter::Peak, 1, 10, 10), SweepAxis::linear(SweepParameter::Coupling, 1, 40, 10)},
                                  o);
    ASSERT_EQ(result.points.size(), 100u);
    for (const auto& p : result.points) {
        const double omega = p.coords[0], g = p.coords[1];
        if (omega >= 2 && g >= 10 * omega) EXPECT_GE(p.fidelity, 0.9) << "Omega=" << omega << " g=" << g;
        if (omega == 1) EXPECT_LT(p.fidelity, 0.5);
    }
    // Along each row F grows with g.
    for (std::size_t i = 1; i < result.points.size(); ++i) {
        if (i % 10 != 0) EXPECT_GT(result.points[i].fidelity, result.points[i - 1].fidelity);
    }
}

TEST(RunSweep, WindowFollowsEachPoint) {
    // A point with wide pulses needs a wide window; the per-point window keeps F near the baseline value.
    ModelParams<double> params;
    params.pulses.width = 4;
    const auto point = run_point(params, quick());
    ASSERT_TRUE(point.converged);
    EXPECT_GT(point.fidelity, 0.5);
}

TEST(Presets, AllFiguresPresent) {
    for (auto name : {"fig2b", "fig2c", "fig2d", "fig2d_text", "fig3", "fig3b", "fig4a", "fig4b", "fig5"}) {
        EXPECT_NO_THROW(find_preset(name)) << name;
    }
    EXPECT_THROW(find_preset("fig6"), ConfigError);
}

TEST(Presets, Fig3Base) {
    const auto& p = find_preset("fig3");
    EXPECT_EQ(p.base.detuning, 0);
    EXPECT_EQ(p.base.spectral1.exponent, 1.5);
    EXPECT_EQ(p.base.spectral2.exponent, 1.5);
    EXPECT_EQ(p.base.loss_rate, 0);
    EXPECT_EQ(p.base.pulses.width, 2);
    EXPECT_EQ(p.base.pulses.delay, 1);
    EXPECT_EQ(p.base.spectral1.cutoff, 2);
    EXPECT_EQ(p.base.spectral1.amplitude, 10);
    EXPECT_EQ(p.base.pulses.peak, 2);
    ASSERT_EQ(p.axes.size(), 2u);
    EXPECT_EQ(p.axes[0].parameter, SweepParameter::Peak);
    EXPECT_EQ(p.axes[1].parameter, SweepParameter::Coupling);
    EXPECT_EQ(p.axes[0].size() * p.axes[1].size(), 1024);
}

TEST(Presets, Fig4bFixesOmega) {
    const auto& p = find_preset("fig4b");
    EXPECT_EQ(p.base.pulses.peak, 2);
    EXPECT_EQ(p.axes[0].parameter, SweepParameter::Delay);
    EXPECT_EQ(p.axes[1].parameter, SweepParameter::Width);
    EXPECT_EQ(p.axes[0].min, 0.5);
    EXPECT_EQ(p.axes[0].max, 4);
    EXPECT_EQ(p.axes[1].min, 1);
    EXPECT_EQ(p.axes[1].max, 5);
}

TEST(Presets, TimeTraceValues) {
    EXPECT_EQ(find_preset("fig2d").axes[0].values(), (std::vector<double>{0, 0.5, 1.5}));
    EXPECT_EQ(find_preset("fig2d_text").axes[0].values(), (std::vector<double>{0, 0.5, 1}));
    EXPECT_EQ(find_preset("fig2b").axes[0].values(), (std::vector<double>{1.5, 1, 0.5}));
    EXPECT_EQ(find_preset("fig2c").axes[0].values(), (std::vector<double>{0, 5, 10}));
    EXPECT_EQ(find_preset("fig2b").kind, PresetKind::TimeTraces);
}

TEST(Presets, Resolution) {
    const auto axes = with_resolution(find_preset("fig3b").axes, 8);
    EXPECT_EQ(axes[0].size(), 4);
    EXPECT_EQ(axes[1].size(), 8);
    EXPECT_THROW(with_resolution(axes, 1), ConfigError);
}

}  // namespace
}  // namespace stirap
