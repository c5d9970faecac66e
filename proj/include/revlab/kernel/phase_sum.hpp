#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

// Weighted complex-exponential accumulation kernels.
//
// Every spectral sum in this project has the shape
//
//     S = sum_j w_j * exp(-2*pi*i * u_j)
//
// with real weights w_j and phases u_j given in turns (1 turn = 2*pi rad).
// Working in turns lets the kernel reduce u mod 1 exactly (u - round(u) is
// an exact floating-point operation), so large phases such as t*F/(2*pi*h)
// lose no precision beyond that of u itself.
//
// Three entry points cover the call sites:
//   phase_sum          u_j explicit
//   scaled_phase_sum   u_j = t * v_j
//   scaled_phase_sum2  u_j = t1 * v1_j + t2 * v2_j
//
// Each has a scalar reference implementation (Kahan-compensated, strict
// lexicographic accumulation order) and an AVX2+FMA variant selected at
// runtime. The SIMD variants reproduce the scalar results to ~1e-14 absolute
// for unit-mass weights; equivalence is enforced by tests/test_kernel.cpp.

namespace revlab::kernel {

struct PhaseSum {
    double re = 0.0;
    double im = 0.0;
    std::complex<double> value() const { return {re, im}; }
    double abs() const { return std::hypot(re, im); }
};

// Dispatched entry points.
PhaseSum phase_sum(std::span<const double> w, std::span<const double> u);
PhaseSum scaled_phase_sum(std::span<const double> w, std::span<const double> v, double t);
PhaseSum scaled_phase_sum2(std::span<const double> w, std::span<const double> v1,
                           std::span<const double> v2, double t1, double t2);

// Scalar reference implementations (ground truth for the SIMD lanes).
PhaseSum phase_sum_scalar(const double* w, const double* u, std::size_t n);
PhaseSum scaled_phase_sum_scalar(const double* w, const double* v, double t, std::size_t n);
PhaseSum scaled_phase_sum2_scalar(const double* w, const double* v1, const double* v2,
                                  double t1, double t2, std::size_t n);

// Name of the implementation currently dispatched to: "scalar" or "avx2".
const char* active_kernel();

// Force an implementation: "auto", "scalar" or "avx2". Throws revlab::Error
// if the requested lane is not supported on this CPU. The environment
// variable REVLAB_KERNEL, when set, is applied on first use.
void set_kernel(const std::string& name);

}  // namespace revlab::kernel
