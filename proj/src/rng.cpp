#include "mixent/rng.hpp"

#include "mixent/error.hpp"

namespace mixent {

std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept
{
    return mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

std::uint64_t hash_label(std::string_view label) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

double Rng::gamma(double shape, double rate)
{
    if (!(shape > 0.0) || !(rate > 0.0))
        throw Error(ErrorCode::InvalidArgument, "gamma: shape and rate must be positive");
    // libstdc++ uses Marsaglia-Tsang squeeze/rejection.
    return std::gamma_distribution<double>(shape, 1.0 / rate)(engine_);
}

double Rng::chi_squared(double dof)
{
    if (!(dof > 0.0))
        throw Error(ErrorCode::InvalidArgument, "chi_squared: degrees of freedom must be positive");
    return std::chi_squared_distribution<double>(dof)(engine_);
}

} // namespace mixent
