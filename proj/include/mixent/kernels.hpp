#pragma once
// Data-parallel inner loops used by the density and estimator code.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2/FMA variant. The variant is picked once at startup
// from the CPU feature bits; MIXENT_SIMD=scalar in the environment forces
// the reference path. Results of the two paths agree to rounding, not bit
// for bit: lane-wise accumulation reorders the sums.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace mixent::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
    Isa isa;
    /// sum_k a[k] * b[k]
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// largest element, -inf for n == 0
    double (*max_value)(const double* x, std::size_t n);
    /// sum_k exp(x[k] - shift); terms with x[k] = -inf contribute exactly 0
    double (*sum_exp_shifted)(const double* x, std::size_t n, double shift);
    /// elementwise out[k] = exp(x[k])
    void (*exp_inplace)(double* x, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the library was built without AVX2 or the CPU lacks it.
const KernelTable* avx2_table() noexcept;

/// Every table usable on this machine, reference first.
std::vector<const KernelTable*> available_tables();

/// Table used by the convenience wrappers below.
const KernelTable& active() noexcept;

/// Overrides the runtime choice; throws InvalidArgument if unavailable.
void select(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);

/// Max-shifted ln sum_k exp(x[k]); -inf when every entry is -inf or x is empty.
double log_sum_exp(std::span<const double> x);
double log_sum_exp(std::span<const double> x, const KernelTable& table);

/// Solves L z = r by forward substitution, L lower-triangular stored
/// row-major (d*d), and returns ||z||^2. z must hold d entries.
double forward_solve_squared_norm(std::span<const double> lower_rowmajor,
                                  std::span<const double> r,
                                  std::span<double> z,
                                  const KernelTable& table);
double forward_solve_squared_norm(std::span<const double> lower_rowmajor,
                                  std::span<const double> r,
                                  std::span<double> z);

namespace detail {
double dot_scalar(const double* a, const double* b, std::size_t n);
double max_scalar(const double* x, std::size_t n);
double sum_exp_shifted_scalar(const double* x, std::size_t n, double shift);
void exp_inplace_scalar(double* x, std::size_t n);
#if defined(MIXENT_WITH_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
double max_avx2(const double* x, std::size_t n);
double sum_exp_shifted_avx2(const double* x, std::size_t n, double shift);
void exp_inplace_avx2(double* x, std::size_t n);
#endif
} // namespace detail

} // namespace mixent::kernels
