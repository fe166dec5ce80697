#include "mixent/montecarlo.hpp"

#include "mixent/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <vector>

namespace mixent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& o)
    {
        if (o.count == 0)
            return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double n1 = static_cast<double>(count);
        const double n2 = static_cast<double>(o.count);
        const double delta = o.mean - mean;
        const double n = n1 + n2;
        mean += delta * n2 / n;
        m2 += o.m2 + delta * delta * n1 * n2 / n;
        count += o.count;
    }
};

Moments run_shard(const MixtureModel& mix, std::size_t count, std::uint64_t seed)
{
    Rng rng(seed);
    const auto& w = mix.weights();
    std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
    Moments m;
    for (std::size_t s = 0; s < count; ++s) {
        const Eigen::VectorXd x = component_sample(mix.components()[pick(rng.engine())], rng);
        m.add(-log_density(mix, x));
    }
    return m;
}

// Composite Simpson on [a, b] with `points` nodes (forced odd).
template <class F>
double simpson(F&& f, double a, double b, std::size_t points)
{
    if (!(b > a))
        return 0.0;
    if (points % 2 == 0)
        ++points;
    const std::size_t intervals = points - 1;
    const double h = (b - a) / static_cast<double>(intervals);
    double ends = f(a) + f(b);
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t k = 1; k < intervals; ++k) {
        const double v = f(a + h * static_cast<double>(k));
        (k % 2 == 1 ? odd : even) += v;
    }
    return h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
}

void add_breakpoints(const Component& c, std::vector<double>& cuts)
{
    if (const auto* g = std::get_if<GaussianComponent>(&c)) {
        const double mu = g->mean()[0];
        const double sd = std::sqrt(g->cov()(0, 0));
        cuts.push_back(mu - 12.0 * sd);
        cuts.push_back(mu + 12.0 * sd);
    } else {
        const auto& u = std::get<UniformComponent>(c);
        cuts.push_back(u.lower()[0]);
        cuts.push_back(u.upper()[0]);
    }
}

template <class F>
double piecewise_simpson(F&& f, std::vector<double> cuts, double lo, double hi, std::size_t points)
{
    cuts.push_back(lo);
    cuts.push_back(hi);
    std::erase_if(cuts, [&](double c) { return c < lo || c > hi; });
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        // Nudge panel ends inward so a box edge is evaluated on its own side.
        const double a = cuts[k];
        const double b = cuts[k + 1];
        const double eps = (b - a) * 1e-12;
        total += simpson(f, a + eps, b - eps, points);
    }
    return total;
}

void require_1d(int dim)
{
    if (dim != 1)
        throw Error(ErrorCode::NotOneDimensional, "quadrature oracle supports d = 1 only");
}

double scaled_log(double weight, double log_value)
{
    if (weight == 0.0)
        return 0.0;
    return weight * log_value;
}

} // namespace

McResult mc_entropy(const MixtureModel& mix, std::size_t samples, std::uint64_t seed, std::size_t shards)
{
    if (samples < 2)
        throw Error(ErrorCode::InsufficientSamples, "Monte Carlo entropy needs at least 2 samples");
    if (shards == 0 || shards > samples)
        throw Error(ErrorCode::InvalidArgument, "shard count must lie in [1, samples]");

    std::vector<Moments> parts(shards);
    auto count_of = [&](std::size_t k) { return samples / shards + (k < samples % shards ? 1 : 0); };
    if (shards == 1) {
        parts[0] = run_shard(mix, samples, derive_seed(seed, 0));
    } else {
        std::vector<std::thread> workers;
        workers.reserve(shards);
        for (std::size_t k = 0; k < shards; ++k)
            workers.emplace_back([&, k] { parts[k] = run_shard(mix, count_of(k), derive_seed(seed, k)); });
        for (auto& t : workers)
            t.join();
    }

    Moments total;
    for (const Moments& m : parts)
        total.merge(m);
    const double n = static_cast<double>(total.count);
    const double var = total.m2 > 0.0 ? total.m2 / (n - 1.0) : 0.0;
    return McResult{total.mean, std::sqrt(var / n), total.count};
}

double quad_entropy_1d(const MixtureModel& mix, double lo, double hi, std::size_t points)
{
    require_1d(mix.dim());
    if (points < 101)
        throw Error(ErrorCode::InvalidArgument, "quadrature needs at least 101 points");
    if (!(hi > lo))
        throw Error(ErrorCode::InvalidArgument, "empty integration interval");
    std::vector<double> cuts;
    for (const Component& c : mix.components())
        add_breakpoints(c, cuts);
    auto integrand = [&](double x) {
        const double lp = log_density(mix, std::span<const double>(&x, 1));
        if (lp == -kInf)
            return 0.0;
        return -std::exp(lp) * lp;
    };
    return piecewise_simpson(integrand, std::move(cuts), lo, hi, points);
}

double quad_cross_term_1d(const Component& p, const Component& q, CrossIntegrand kind, double alpha,
                          std::size_t points)
{
    require_1d(dim_of(p));
    require_1d(dim_of(q));
    if (points < 101)
        throw Error(ErrorCode::InvalidArgument, "quadrature needs at least 101 points");

    std::vector<double> cuts;
    add_breakpoints(p, cuts);
    add_breakpoints(q, cuts);
    const double lo = *std::min_element(cuts.begin(), cuts.end());
    const double hi = *std::max_element(cuts.begin(), cuts.end());

    bool infinite = false;
    auto integrand = [&](double x) {
        const std::span<const double> pt(&x, 1);
        const double lp = component_log_density(p, pt);
        const double lq = component_log_density(q, pt);
        switch (kind) {
        case CrossIntegrand::Product:
            return std::exp(lp + lq);
        case CrossIntegrand::SqrtProduct:
            return std::exp(0.5 * (lp + lq));
        case CrossIntegrand::Chernoff:
            if ((alpha > 0.0 && lp == -kInf) || (alpha < 1.0 && lq == -kInf))
                return 0.0;
            return std::exp(scaled_log(alpha, lp) + scaled_log(1.0 - alpha, lq));
        case CrossIntegrand::KL:
            if (lp == -kInf)
                return 0.0;
            if (lq == -kInf) {
                infinite = true;
                return 0.0;
            }
            return std::exp(lp) * (lp - lq);
        }
        return 0.0;
    };
    const double value = piecewise_simpson(integrand, std::move(cuts), lo, hi, points);
    return infinite ? kInf : value;
}

} // namespace mixent
