#pragma once
// Synthetic mixture generators and the parameter sweeps built on them.
//
// Spread parameters are standard deviations: means (or cluster centers) are
// drawn from N(0, sigma^2 I). Sweeps over sigma and over the Wishart degrees
// of freedom are reported against ln(sigma) and ln(n); dimension sweeps
// against d.

#include "mixent/mixture.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mixent {

/// Wishart(scale, dof) draw via the Bartlett decomposition. dof >= d.
Eigen::MatrixXd sample_wishart(const Eigen::MatrixXd& scale, double dof, Rng& rng);

/// N equal-weight N(mu_i, I_d) components, mu_i ~ N(0, sigma^2 I_d).
MixtureModel gen_gaussian_spread(std::size_t n, int d, double sigma, std::uint64_t seed);

/// N equal-weight N(mu_i, S_i), mu_i ~ N(0, I_d), S_i ~ W(I_d / (d + dof), dof).
MixtureModel gen_gaussian_wishart(std::size_t n, int d, double dof, std::uint64_t seed);

struct ClusteredMixture {
    MixtureModel mixture;
    Grouping grouping;
};

/// N unit-covariance components placed exactly on K centers ~ N(0, sigma^2 I_d).
/// Components are assigned to clusters uniformly at random, or round-robin
/// (i mod K) when `equal_clusters` is set.
ClusteredMixture gen_gaussian_clustered(std::size_t n, int d, std::size_t k, double sigma, std::uint64_t seed,
                                        bool equal_clusters = false);

/// Boxes mu_i +/- 1, mu_i ~ N(0, sigma^2 I_d).
MixtureModel gen_uniform_spread(std::size_t n, int d, double sigma, std::uint64_t seed);

/// Boxes mu_i +/- gamma_i, mu_i ~ N(0, I_d), gamma_i ~ Gamma(shape 1 + sigma, rate 1 + sigma).
MixtureModel gen_uniform_gamma(std::size_t n, int d, double sigma, std::uint64_t seed);

/// Boxes centered on K cluster centers ~ N(0, sigma^2 I_d), half-width 1.
ClusteredMixture gen_uniform_clustered(std::size_t n, int d, std::size_t k, double sigma, std::uint64_t seed,
                                       bool equal_clusters = false);

enum class Experiment { G1, G2, G3, G4, U1, U2, U3, U4 };

std::string_view to_string(Experiment e) noexcept;
std::optional<Experiment> parse_experiment(std::string_view id) noexcept;

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t steps = 9;
};

struct SweepConfig {
    Experiment experiment = Experiment::G1;
    std::size_t components = 20;
    int dim = 5;
    std::size_t clusters = 5;
    /// Grid in reported units (ln sigma, ln n, or d); default per experiment when unset.
    std::optional<GridSpec> grid;
    std::size_t mc_samples = 2000;
    std::uint64_t seed = 1;
    bool equal_clusters = false;
    /// Spread used by the dimension sweeps.
    double sigma = 1.0;
};

GridSpec default_grid(Experiment e, int dim);

/// Grid values in reported units. Dimension sweeps round to integers and
/// keep them strictly increasing.
std::vector<double> grid_values(const SweepConfig& cfg);

/// Seed for grid point `index`, derived from (master seed, experiment id, index).
std::uint64_t point_seed(std::uint64_t master, Experiment e, std::size_t index) noexcept;

struct SweepRow {
    std::string experiment;
    double param = 0.0;
    std::string estimator;
    double value = 0.0;
    std::optional<double> std_error;

    bool operator==(const SweepRow&) const = default;
};

/// Generated mixture for one grid point (grouping set for g3/u3).
struct SweepPoint {
    MixtureModel mixture;
    std::optional<Grouping> grouping;
};
SweepPoint generate_point(const SweepConfig& cfg, double grid_value, std::uint64_t seed);

/// Seven rows per grid point, ordered by (grid index, estimator index).
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

inline constexpr std::string_view kCsvHeader = "experiment,param,estimator,value,stderr";

std::string format_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_csv(std::string_view text);
void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);
std::vector<SweepRow> read_csv(const std::filesystem::path& path);

std::string svg_document(const std::vector<SweepRow>& rows);
void render_svg(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

} // namespace mixent
