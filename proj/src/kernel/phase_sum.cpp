#include "revlab/kernel/phase_sum.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>

#include "revlab/errors.hpp"

namespace revlab::kernel {

namespace {

// Kahan-compensated accumulator; keeps the scalar reference reproducible and
// tight (error independent of the summation length for unit-mass weights).
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

inline void accum_turn(Kahan& re, Kahan& im, double w, double u) {
    // u - nearbyint(u) is exact and lands in [-0.5, 0.5]
    const double r = u - std::nearbyint(u);
    const double ang = 6.283185307179586476925286766559 * r;
    re.add(w * std::cos(ang));
    im.add(w * -std::sin(ang));
}

}  // namespace

PhaseSum phase_sum_scalar(const double* w, const double* u, std::size_t n) {
    Kahan re, im;
    for (std::size_t j = 0; j < n; ++j) accum_turn(re, im, w[j], u[j]);
    return {re.sum, im.sum};
}

PhaseSum scaled_phase_sum_scalar(const double* w, const double* v, double t, std::size_t n) {
    Kahan re, im;
    for (std::size_t j = 0; j < n; ++j) accum_turn(re, im, w[j], t * v[j]);
    return {re.sum, im.sum};
}

PhaseSum scaled_phase_sum2_scalar(const double* w, const double* v1, const double* v2,
                                  double t1, double t2, std::size_t n) {
    Kahan re, im;
    for (std::size_t j = 0; j < n; ++j) accum_turn(re, im, w[j], t1 * v1[j] + t2 * v2[j]);
    return {re.sum, im.sum};
}

// ---------------------------------------------------------------------------
// runtime dispatch
// ---------------------------------------------------------------------------

#if defined(__x86_64__) || defined(_M_X64)
#define REVLAB_HAVE_AVX2_LANE 1
PhaseSum phase_sum_avx2(const double* w, const double* u, std::size_t n);
PhaseSum scaled_phase_sum_avx2(const double* w, const double* v, double t, std::size_t n);
PhaseSum scaled_phase_sum2_avx2(const double* w, const double* v1, const double* v2,
                                double t1, double t2, std::size_t n);
#else
#define REVLAB_HAVE_AVX2_LANE 0
#endif

namespace {

enum class Lane { scalar, avx2 };

bool avx2_supported() {
#if REVLAB_HAVE_AVX2_LANE
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<Lane> g_lane{Lane::scalar};
std::once_flag g_init_flag;

void init_lane() {
    Lane lane = avx2_supported() ? Lane::avx2 : Lane::scalar;
    if (const char* env = std::getenv("REVLAB_KERNEL")) {
        const std::string v(env);
        if (v == "scalar") lane = Lane::scalar;
        else if (v == "avx2" && avx2_supported()) lane = Lane::avx2;
    }
    g_lane.store(lane, std::memory_order_relaxed);
}

inline Lane lane() {
    std::call_once(g_init_flag, init_lane);
    return g_lane.load(std::memory_order_relaxed);
}

}  // namespace

const char* active_kernel() {
    return lane() == Lane::avx2 ? "avx2" : "scalar";
}

void set_kernel(const std::string& name) {
    std::call_once(g_init_flag, init_lane);
    if (name == "auto") {
        g_lane.store(avx2_supported() ? Lane::avx2 : Lane::scalar, std::memory_order_relaxed);
    } else if (name == "scalar") {
        g_lane.store(Lane::scalar, std::memory_order_relaxed);
    } else if (name == "avx2") {
        if (!avx2_supported()) throw Error("kernel 'avx2' not supported on this CPU");
        g_lane.store(Lane::avx2, std::memory_order_relaxed);
    } else {
        throw Error("unknown kernel '" + name + "' (expected auto|scalar|avx2)");
    }
}

PhaseSum phase_sum(std::span<const double> w, std::span<const double> u) {
#if REVLAB_HAVE_AVX2_LANE
    if (lane() == Lane::avx2) return phase_sum_avx2(w.data(), u.data(), w.size());
#endif
    return phase_sum_scalar(w.data(), u.data(), w.size());
}

PhaseSum scaled_phase_sum(std::span<const double> w, std::span<const double> v, double t) {
#if REVLAB_HAVE_AVX2_LANE
    if (lane() == Lane::avx2) return scaled_phase_sum_avx2(w.data(), v.data(), t, w.size());
#endif
    return scaled_phase_sum_scalar(w.data(), v.data(), t, w.size());
}

PhaseSum scaled_phase_sum2(std::span<const double> w, std::span<const double> v1,
                           std::span<const double> v2, double t1, double t2) {
#if REVLAB_HAVE_AVX2_LANE
    if (lane() == Lane::avx2)
        return scaled_phase_sum2_avx2(w.data(), v1.data(), v2.data(), t1, t2, w.size());
#endif
    return scaled_phase_sum2_scalar(w.data(), v1.data(), v2.data(), t1, t2, w.size());
}

}  // namespace revlab::kernel
