#include "mixent/kernels.hpp"

#include "mixent/error.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace mixent::kernels {
namespace {

constexpr KernelTable kScalar{
    Isa::Scalar,
    &detail::dot_scalar,
    &detail::max_scalar,
    &detail::sum_exp_shifted_scalar,
    &detail::exp_inplace_scalar,
};

#if defined(MIXENT_WITH_AVX2)
constexpr KernelTable kAvx2{
    Isa::Avx2,
    &detail::dot_avx2,
    &detail::max_avx2,
    &detail::sum_exp_shifted_avx2,
    &detail::exp_inplace_avx2,
};

bool cpu_has_avx2() noexcept
{
#if defined(__GNUC__) || defined(__clang__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}
#endif

const KernelTable* initial_choice() noexcept
{
    const char* env = std::getenv("MIXENT_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0)
        return &kScalar;
    if (const KernelTable* t = avx2_table())
        return t;
    return &kScalar;
}

std::atomic<const KernelTable*>& current()
{
    static std::atomic<const KernelTable*> table{initial_choice()};
    return table;
}

} // namespace

std::string_view to_string(Isa isa) noexcept
{
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept
{
#if defined(MIXENT_WITH_AVX2)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

std::vector<const KernelTable*> available_tables()
{
    std::vector<const KernelTable*> out{&kScalar};
    if (const KernelTable* t = avx2_table())
        out.push_back(t);
    return out;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

void select(Isa isa)
{
    switch (isa) {
    case Isa::Scalar:
        current().store(&kScalar);
        return;
    case Isa::Avx2:
        if (const KernelTable* t = avx2_table()) {
            current().store(t);
            return;
        }
        break;
    }
    throw Error(ErrorCode::InvalidArgument, "kernel set '" + std::string(to_string(isa)) + "' is not available");
}

double dot(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "dot: operand lengths differ");
    return active().dot(a.data(), b.data(), a.size());
}

double log_sum_exp(std::span<const double> x, const KernelTable& table)
{
    const double m = table.max_value(x.data(), x.size());
    if (m == -std::numeric_limits<double>::infinity())
        return m;
    if (m == std::numeric_limits<double>::infinity())
        return m;
    return m + std::log(table.sum_exp_shifted(x.data(), x.size(), m));
}

double log_sum_exp(std::span<const double> x) { return log_sum_exp(x, active()); }

double forward_solve_squared_norm(std::span<const double> lower_rowmajor,
                                  std::span<const double> r,
                                  std::span<double> z,
                                  const KernelTable& table)
{
    const std::size_t d = r.size();
    double sq = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double* row = lower_rowmajor.data() + i * d;
        const double zi = (r[i] - table.dot(row, z.data(), i)) / row[i];
        z[i] = zi;
        sq += zi * zi;
    }
    return sq;
}

double forward_solve_squared_norm(std::span<const double> lower_rowmajor,
                                  std::span<const double> r,
                                  std::span<double> z)
{
    return forward_solve_squared_norm(lower_rowmajor, r, z, active());
}

} // namespace mixent::kernels
