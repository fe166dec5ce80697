#include "mixent/kernels.hpp"

#include <cmath>
#include <limits>

namespace mixent::kernels::detail {

double dot_scalar(const double* a, const double* b, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        acc += a[k] * b[k];
    return acc;
}

double max_scalar(const double* x, std::size_t n)
{
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k)
        if (x[k] > m)
            m = x[k];
    return m;
}

double sum_exp_shifted_scalar(const double* x, std::size_t n, double shift)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        acc += std::exp(x[k] - shift);
    return acc;
}

void exp_inplace_scalar(double* x, std::size_t n)
{
    for (std::size_t k = 0; k < n; ++k)
        x[k] = std::exp(x[k]);
}

} // namespace mixent::kernels::detail
