#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "revlab/errors.hpp"
#include "revlab/kernel/phase_sum.hpp"

using namespace revlab;

namespace {

// long-double direct evaluation, independent of both production paths
kernel::PhaseSum oracle(const std::vector<double>& w, const std::vector<double>& u) {
    long double re = 0.0L, im = 0.0L;
    for (size_t j = 0; j < w.size(); ++j) {
        const long double r = u[j] - std::nearbyint(u[j]);
        const long double ang = 2.0L * std::numbers::pi_v<long double> * r;
        re += w[j] * std::cos(ang);
        im += w[j] * -std::sin(ang);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

struct RandomData {
    std::vector<double> w, u, v1, v2;
};

RandomData make_data(size_t n, double u_scale, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uw(0.0, 1.0);
    std::uniform_real_distribution<double> uu(-u_scale, u_scale);
    RandomData d;
    d.w.resize(n);
    d.u.resize(n);
    d.v1.resize(n);
    d.v2.resize(n);
    double mass = 0.0;
    for (size_t i = 0; i < n; ++i) {
        d.w[i] = uw(rng);
        mass += d.w[i];
        d.u[i] = uu(rng);
        d.v1[i] = uu(rng);
        d.v2[i] = uu(rng);
    }
    for (auto& x : d.w) x /= mass;  // unit mass, like packet weights
    return d;
}

}  // namespace

TEST_CASE("scalar kernel matches long-double oracle") {
    for (size_t n : {size_t(1), size_t(7), size_t(256), size_t(1001)}) {
        const auto d = make_data(n, 10.0, 42 + static_cast<unsigned>(n));
        const auto ref = oracle(d.w, d.u);
        const auto got = kernel::phase_sum_scalar(d.w.data(), d.u.data(), n);
        CHECK(std::abs(got.re - ref.re) < 1e-14);
        CHECK(std::abs(got.im - ref.im) < 1e-14);
    }
}

TEST_CASE("scalar kernel handles large phase arguments") {
    // turns up to 1e8: mod-1 reduction must stay exact
    const auto d = make_data(512, 1e8, 7);
    const auto ref = oracle(d.w, d.u);
    const auto got = kernel::phase_sum_scalar(d.w.data(), d.u.data(), 512);
    CHECK(std::abs(got.re - ref.re) < 5e-13);
    CHECK(std::abs(got.im - ref.im) < 5e-13);
}

TEST_CASE("avx2 lane agrees with scalar reference") {
    if (std::string(kernel::active_kernel()) != "avx2") {
        MESSAGE("avx2 not available, equivalence test skipped");
        return;
    }
    for (size_t n : {size_t(1), size_t(2), size_t(3), size_t(4), size_t(5), size_t(63),
                     size_t(64), size_t(65), size_t(4096)}) {
        for (double scale : {0.4, 25.0, 3.0e6}) {
            const auto d = make_data(n, scale, 1234 + static_cast<unsigned>(n));

            const auto s0 = kernel::phase_sum_scalar(d.w.data(), d.u.data(), n);
            kernel::set_kernel("avx2");
            const auto a0 = kernel::phase_sum({d.w.data(), n}, {d.u.data(), n});
            CHECK(std::abs(s0.re - a0.re) < 5e-13);
            CHECK(std::abs(s0.im - a0.im) < 5e-13);

            const double t = 1.75 * scale;
            const auto s1 = kernel::scaled_phase_sum_scalar(d.w.data(), d.v1.data(), t, n);
            const auto a1 = kernel::scaled_phase_sum({d.w.data(), n}, {d.v1.data(), n}, t);
            CHECK(std::abs(s1.re - a1.re) < 5e-13);
            CHECK(std::abs(s1.im - a1.im) < 5e-13);

            const auto s2 = kernel::scaled_phase_sum2_scalar(d.w.data(), d.v1.data(), d.v2.data(),
                                                             0.3 * scale, -1.2 * scale, n);
            const auto a2 = kernel::scaled_phase_sum2({d.w.data(), n}, {d.v1.data(), n},
                                                      {d.v2.data(), n}, 0.3 * scale, -1.2 * scale);
            CHECK(std::abs(s2.re - a2.re) < 5e-13);
            CHECK(std::abs(s2.im - a2.im) < 5e-13);
            kernel::set_kernel("auto");
        }
    }
}

TEST_CASE("kernel selection") {
    kernel::set_kernel("scalar");
    CHECK(std::string(kernel::active_kernel()) == "scalar");
    const std::vector<double> w{1.0}, u{0.25};
    const auto s = kernel::phase_sum(w, u);
    // exp(-2 pi i / 4) = -i
    CHECK(std::abs(s.re) < 1e-15);
    CHECK(std::abs(s.im + 1.0) < 1e-15);
    kernel::set_kernel("auto");
    CHECK_THROWS_AS(kernel::set_kernel("sse9"), Error);
}

TEST_CASE("unit-modulus values at quadrant boundaries") {
    // exact quarter turns hit the quadrant-selection edges
    std::vector<double> w{1.0};
    for (double u : {0.0, 0.25, 0.5, 0.75, 1.0, -0.25, -0.5, 123456.25, -98765.75}) {
        std::vector<double> uv{u};
        const auto s = kernel::phase_sum(w, uv);
        const double r = u - std::nearbyint(u);
        const double c = std::cos(2.0 * std::numbers::pi * r);
        const double si = -std::sin(2.0 * std::numbers::pi * r);
        CHECK(std::abs(s.re - c) < 1e-15);
        CHECK(std::abs(s.im - si) < 1e-15);
        CHECK(std::abs(s.abs() - 1.0) < 1e-15);
    }
}
