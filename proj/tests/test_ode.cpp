#include "stirap/ode.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <vector>

namespace stirap {
namespace {

using C = std::complex<double>;

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return t;
}

TEST(Dopri5, ComplexRotationMatchesExponential) {
    // y' = -i w y, y(0) = 1  =>  y = exp(-i w t)
    const double w = 3.0;
    const auto times = linspace(0, 10, 57);
    ComplexVector<double> y0(1);
    y0(0) = 1;
    StepControl<double> ctl{1e-10, 1e-13, 1e-3, 0, 1'000'000};
    double worst = 0;
    std::size_t seen = 0;
    integrate_dopri5<double>(
        [&](double, const ComplexVector<double>& y, ComplexVector<double>& dy) { dy = C(0, -w) * y; }, y0,
        std::span<const double>(times), ctl, [&](double t, const ComplexVector<double>& y) {
            worst = std::max(worst, std::abs(y(0) - std::exp(C(0, -w * t))));
            ++seen;
        });
    EXPECT_EQ(seen, times.size());
    EXPECT_LT(worst, 1e-8);
}

TEST(Dopri5, DenseOutputBetweenSteps) {
    // Many samples per step: accuracy must come from the interpolant.
    const auto times = linspace(0, 2, 2001);
    Vector<double> y0(2);
    y0 << 1, 0;
    StepControl<double> ctl{1e-9, 1e-12, 0.1, 0, 1'000'000};
    double worst = 0;
    const long steps = integrate_dopri5<double>(
        [](double, const Vector<double>& y, Vector<double>& dy) {
            dy(0) = -y(1);
            dy(1) = y(0);
        },
        y0, std::span<const double>(times), ctl, [&](double t, const Vector<double>& y) {
            worst = std::max(worst, std::abs(y(0) - std::cos(t)) + std::abs(y(1) - std::sin(t)));
        });
    EXPECT_LT(steps, 500);
    EXPECT_LT(worst, 1e-8);
}

TEST(Dopri5, MatrixStateAgainstSpectralExponential) {
    // Y' = -i H Y with Hermitian H, Y(0) = I.
    Matrix<double> hr(4, 4);
    hr << 1, 0.5, 0, 0.2, 0.5, -1, 0.3, 0, 0, 0.3, 2, 0.7, 0.2, 0, 0.7, 0.1;
    const ComplexMatrix<double> h = hr.cast<C>();
    Eigen::SelfAdjointEigenSolver<Matrix<double>> es(hr);
    const auto times = linspace(0, 4, 9);
    StepControl<double> ctl{1e-11, 1e-14, 1e-3, 0, 1'000'000};
    double worst = 0;
    integrate_dopri5<double>(
        [&](double, const ComplexMatrix<double>& y, ComplexMatrix<double>& dy) { dy = C(0, -1) * (h * y); },
        ComplexMatrix<double>(ComplexMatrix<double>::Identity(4, 4)), std::span<const double>(times), ctl,
        [&](double t, const ComplexMatrix<double>& y) {
            const ComplexVector<double> phases = (C(0, -t) * es.eigenvalues().cast<C>()).array().exp();
            const ComplexMatrix<double> v = es.eigenvectors().cast<C>();
            const ComplexMatrix<double> exact = v * phases.asDiagonal() * v.adjoint();
            worst = std::max(worst, (y - exact).cwiseAbs().maxCoeff());
        });
    EXPECT_LT(worst, 1e-9);
}

TEST(Dopri5, TighterToleranceReducesError) {
    // y' = -y + sin(t): exact y = 1.5 e^{-t} + (sin t - cos t)/2 for y(0) = 1.
    const auto exact = [](double t) { return 1.5 * std::exp(-t) + (std::sin(t) - std::cos(t)) / 2; };
    const auto run = [&](double tol) {
        const std::vector<double> times{0.0, 8.0};
        Vector<double> y0(1);
        y0(0) = 1;
        double err = 0;
        integrate_dopri5<double>(
            [](double t, const Vector<double>& y, Vector<double>& dy) { dy(0) = -y(0) + std::sin(t); }, y0,
            std::span<const double>(times), StepControl<double>{tol, tol * 1e-3, 1e-2, 0, 1'000'000},
            [&](double t, const Vector<double>& y) { err = std::abs(y(0) - exact(t)); });
        return err;
    };
    const double loose = run(1e-5), tight = run(1e-9);
    EXPECT_LT(tight, loose);
    EXPECT_LT(tight, 1e-8);
}

TEST(Dopri5, FirstSampleIsInitialState) {
    const std::vector<double> times{-1.0, 0.0};
    Vector<double> y0(3);
    y0 << 0.1, 0.2, 0.3;
    bool first = true;
    integrate_dopri5<double>([](double, const Vector<double>& y, Vector<double>& dy) { dy = -y; }, y0,
                             std::span<const double>(times), StepControl<double>{},
                             [&](double t, const Vector<double>& y) {
                                 if (first) {
                                     EXPECT_EQ(t, -1.0);
                                     EXPECT_EQ(y, y0);
                                 }
                                 first = false;
                             });
}

TEST(Dopri5, MaxStepIsRespected) {
    const std::vector<double> times{0.0, 1.0};
    Vector<double> y0 = Vector<double>::Ones(1);
    StepControl<double> ctl{1e-3, 1e-6, 1e-2, 0.01, 1'000'000};
    const long steps = integrate_dopri5<double>([](double, const Vector<double>& y, Vector<double>& dy) { dy = 0 * y; },
                                                y0, std::span<const double>(times), ctl, [](double, const Vector<double>&) {});
    EXPECT_GE(steps, 100);
}

TEST(Dopri5, RejectsUnsortedTimes) {
    const std::vector<double> times{0.0, 1.0, 1.0};
    Vector<double> y0 = Vector<double>::Ones(1);
    EXPECT_THROW(integrate_dopri5<double>([](double, const Vector<double>& y, Vector<double>& dy) { dy = y; }, y0,
                                          std::span<const double>(times), StepControl<double>{},
                                          [](double, const Vector<double>&) {}),
                 std::invalid_argument);
}

TEST(Dopri5, StepBudgetExhaustion) {
    const std::vector<double> times{0.0, 100.0};
    Vector<double> y0 = Vector<double>::Ones(1);
    StepControl<double> ctl{1e-12, 1e-14, 1e-3, 0, 5};
    try {
        integrate_dopri5<double>([](double t, const Vector<double>&, Vector<double>& dy) { dy(0) = std::cos(50 * t); }, y0,
                                 std::span<const double>(times), ctl, [](double, const Vector<double>&) {});
        FAIL() << "expected IntegrationError";
    } catch (const IntegrationError& e) {
        EXPECT_GE(e.time(), 0.0);
        EXPECT_LT(e.time(), 100.0);
    }
}

TEST(Dopri5, NonFiniteDerivativeFails) {
    const std::vector<double> times{0.0, 1.0};
    Vector<double> y0 = Vector<double>::Ones(1);
    EXPECT_THROW(integrate_dopri5<double>(
                     [](double t, const Vector<double>&, Vector<double>& dy) {
                         dy(0) = t > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
                     },
                     y0, std::span<const double>(times), StepControl<double>{}, [](double, const Vector<double>&) {}),
                 IntegrationError);
}

TEST(Dopri5, LongDoubleScalar) {
    const std::vector<long double> times{0.0L, 1.0L};
    Vector<long double> y0 = Vector<long double>::Ones(1);
    long double last = 0;
    integrate_dopri5<long double>([](long double, const Vector<long double>& y, Vector<long double>& dy) { dy = -y; },
                                  y0, std::span<const long double>(times), StepControl<long double>{1e-12L, 1e-15L},
                                  [&](long double, const Vector<long double>& y) { last = y(0); });
    EXPECT_NEAR(static_cast<double>(last), std::exp(-1.0), 1e-11);
}

}  // namespace
}  // namespace stirap
