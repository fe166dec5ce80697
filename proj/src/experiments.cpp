#include "mixent/experiments.hpp"

#include "mixent/error.hpp"
#include "mixent/estimators.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace mixent {
namespace {

void require_shape(std::size_t n, int d)
{
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, "generator needs at least one component");
    if (d < 1)
        throw Error(ErrorCode::InvalidArgument, "generator needs d >= 1");
}

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive and finite");
}

Eigen::VectorXd normal_vector(int d, double sd, Rng& rng)
{
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i)
        v[i] = sd * rng.normal();
    return v;
}

std::vector<double> equal_weights(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

UniformComponent box(const Eigen::VectorXd& center, double half_width)
{
    return UniformComponent(center.array() - half_width, center.array() + half_width);
}

std::vector<std::size_t> assign_clusters(std::size_t n, std::size_t k, bool equal, Rng& rng)
{
    std::vector<std::size_t> g(n);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = equal ? i % k : pick(rng.engine());
    return g;
}

std::vector<Eigen::VectorXd> cluster_centers(std::size_t k, int d, double sigma, Rng& rng)
{
    std::vector<Eigen::VectorXd> centers;
    centers.reserve(k);
    for (std::size_t c = 0; c < k; ++c)
        centers.push_back(normal_vector(d, sigma, rng));
    return centers;
}

void require_clusters(std::size_t n, std::size_t k)
{
    if (k < 1 || k > n)
        throw Error(ErrorCode::InvalidArgument, "cluster count must lie in [1, N]");
}

bool is_dimension_sweep(Experiment e) { return e == Experiment::G4 || e == Experiment::U4; }

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
    }
    if (used != s.size())
        throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
    return v;
}

} // namespace

Eigen::MatrixXd sample_wishart(const Eigen::MatrixXd& scale, double dof, Rng& rng)
{
    const auto d = scale.rows();
    if (scale.cols() != d || d < 1)
        throw Error(ErrorCode::DimensionMismatch, "Wishart scale must be square");
    if (!(dof >= static_cast<double>(d)))
        throw Error(ErrorCode::DegreesOfFreedomTooSmall, "Wishart degrees of freedom must be >= dimension");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        a(i, i) = std::sqrt(rng.chi_squared(dof - static_cast<double>(i)));
        for (Eigen::Index j = 0; j < i; ++j)
            a(i, j) = rng.normal();
    }
    const Eigen::MatrixXd l = scale.llt().matrixL();
    const Eigen::MatrixXd la = l * a;
    Eigen::MatrixXd w = la * la.transpose();
    // Symmetrize away rounding from the product.
    return 0.5 * (w + w.transpose());
}

MixtureModel gen_gaussian_spread(std::size_t n, int d, double sigma, std::uint64_t seed)
{
    require_shape(n, d);
    require_positive(sigma, "sigma");
    Rng rng(seed);
    std::vector<Component> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        comps.emplace_back(GaussianComponent::isotropic(normal_vector(d, sigma, rng), 1.0));
    return MixtureModel(equal_weights(n), std::move(comps));
}

MixtureModel gen_gaussian_wishart(std::size_t n, int d, double dof, std::uint64_t seed)
{
    require_shape(n, d);
    if (!(dof >= static_cast<double>(d)))
        throw Error(ErrorCode::DegreesOfFreedomTooSmall, "Wishart degrees of freedom must be >= dimension");
    Rng rng(seed);
    const Eigen::MatrixXd scale = Eigen::MatrixXd::Identity(d, d) / (static_cast<double>(d) + dof);
    std::vector<Component> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::VectorXd mean = normal_vector(d, 1.0, rng);
        comps.emplace_back(GaussianComponent(std::move(mean), sample_wishart(scale, dof, rng)));
    }
    return MixtureModel(equal_weights(n), std::move(comps));
}

ClusteredMixture gen_gaussian_clustered(std::size_t n, int d, std::size_t k, double sigma, std::uint64_t seed,
                                        bool equal_clusters)
{
    require_shape(n, d);
    require_clusters(n, k);
    require_positive(sigma, "sigma");
    Rng rng(seed);
    const auto centers = cluster_centers(k, d, sigma, rng);
    const auto groups = assign_clusters(n, k, equal_clusters, rng);
    std::vector<Component> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        comps.emplace_back(GaussianComponent::isotropic(centers[groups[i]], 1.0));
    MixtureModel mix(equal_weights(n), std::move(comps));
    Grouping grouping(mix, groups);
    return {std::move(mix), std::move(grouping)};
}

MixtureModel gen_uniform_spread(std::size_t n, int d, double sigma, std::uint64_t seed)
{
    require_shape(n, d);
    require_positive(sigma, "sigma");
    Rng rng(seed);
    std::vector<Component> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        comps.emplace_back(box(normal_vector(d, sigma, rng), 1.0));
    return MixtureModel(equal_weights(n), std::move(comps));
}

MixtureModel gen_uniform_gamma(std::size_t n, int d, double sigma, std::uint64_t seed)
{
    require_shape(n, d);
    require_positive(sigma, "sigma");
    Rng rng(seed);
    std::vector<Component> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::VectorXd center = normal_vector(d, 1.0, rng);
        const double half = rng.gamma(1.0 + sigma, 1.0 + sigma);
        comps.emplace_back(box(center, half));
    }
    return MixtureModel(equal_weights(n), std::move(comps));
}

ClusteredMixture gen_uniform_clustered(std::size_t n, int d, std::size_t k, double sigma, std::uint64_t seed,
                                       bool equal_clusters)
{
    require_shape(n, d);
    require_clusters(n, k);
    require_positive(sigma, "sigma");
    Rng rng(seed);
    const auto centers = cluster_centers(k, d, sigma, rng);
    const auto groups = assign_clusters(n, k, equal_clusters, rng);
    std::vector<Component> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        comps.emplace_back(box(centers[groups[i]], 1.0));
    MixtureModel mix(equal_weights(n), std::move(comps));
    Grouping grouping(mix, groups);
    return {std::move(mix), std::move(grouping)};
}

std::string_view to_string(Experiment e) noexcept
{
    switch (e) {
    case Experiment::G1: return "g1";
    case Experiment::G2: return "g2";
    case Experiment::G3: return "g3";
    case Experiment::G4: return "g4";
    case Experiment::U1: return "u1";
    case Experiment::U2: return "u2";
    case Experiment::U3: return "u3";
    case Experiment::U4: return "u4";
    }
    return "?";
}

std::optional<Experiment> parse_experiment(std::string_view id) noexcept
{
    for (Experiment e : {Experiment::G1, Experiment::G2, Experiment::G3, Experiment::G4, Experiment::U1,
                         Experiment::U2, Experiment::U3, Experiment::U4})
        if (to_string(e) == id)
            return e;
    return std::nullopt;
}

GridSpec default_grid(Experiment e, int dim)
{
    switch (e) {
    case Experiment::G2: return {std::log(static_cast<double>(dim)), 8.0, 9};
    case Experiment::G4: return {1.0, 60.0, 9};
    case Experiment::U4: return {1.0, 16.0, 9};
    default: return {-3.0, 6.0, 9};
    }
}

std::vector<double> grid_values(const SweepConfig& cfg)
{
    const GridSpec g = cfg.grid.value_or(default_grid(cfg.experiment, cfg.dim));
    if (g.steps < 1 || !(g.lo <= g.hi) || !std::isfinite(g.lo) || !std::isfinite(g.hi))
        throw Error(ErrorCode::InvalidArgument, "grid must be non-empty with lo <= hi");
    std::vector<double> out;
    out.reserve(g.steps);
    const bool dims = is_dimension_sweep(cfg.experiment);
    if (dims && !(g.lo >= 1.0))
        throw Error(ErrorCode::InvalidArgument, "dimension grid must start at 1 or more");
    for (std::size_t k = 0; k < g.steps; ++k) {
        const double t = g.steps == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(g.steps - 1);
        if (dims) {
            const double v = std::round(std::exp(std::log(g.lo) + t * (std::log(g.hi) - std::log(g.lo))));
            out.push_back(out.empty() ? v : std::max(v, out.back() + 1.0));
        } else {
            out.push_back(g.lo + t * (g.hi - g.lo));
        }
    }
    return out;
}

std::uint64_t point_seed(std::uint64_t master, Experiment e, std::size_t index) noexcept
{
    return derive_seed(derive_seed(master, hash_label(to_string(e))), index);
}

SweepPoint generate_point(const SweepConfig& cfg, double v, std::uint64_t seed)
{
    const std::size_t n = cfg.components;
    const int d = cfg.dim;
    switch (cfg.experiment) {
    case Experiment::G1:
        return {gen_gaussian_spread(n, d, std::exp(v), seed), std::nullopt};
    case Experiment::G2: {
        double dof = std::exp(v);
        // exp(ln d) may land an ulp below d.
        if (dof < d && dof > d * (1.0 - 1e-12))
            dof = d;
        return {gen_gaussian_wishart(n, d, dof, seed), std::nullopt};
    }
    case Experiment::G3: {
        auto c = gen_gaussian_clustered(n, d, cfg.clusters, std::exp(v), seed, cfg.equal_clusters);
        return {std::move(c.mixture), std::move(c.grouping)};
    }
    case Experiment::G4:
        return {gen_gaussian_spread(n, static_cast<int>(v), cfg.sigma, seed), std::nullopt};
    case Experiment::U1:
        return {gen_uniform_spread(n, d, std::exp(v), seed), std::nullopt};
    case Experiment::U2:
        return {gen_uniform_gamma(n, d, std::exp(v), seed), std::nullopt};
    case Experiment::U3: {
        auto c = gen_uniform_clustered(n, d, cfg.clusters, std::exp(v), seed, cfg.equal_clusters);
        return {std::move(c.mixture), std::move(c.grouping)};
    }
    case Experiment::U4:
        return {gen_uniform_spread(n, static_cast<int>(v), cfg.sigma, seed), std::nullopt};
    }
    throw Error(ErrorCode::InvalidArgument, "unknown experiment");
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg)
{
    if (cfg.components < 1)
        throw Error(ErrorCode::InvalidArgument, "sweep needs N >= 1");
    if (cfg.clusters > cfg.components)
        throw Error(ErrorCode::InvalidArgument, "sweep needs K <= N");
    const std::vector<double> grid = grid_values(cfg);
    const std::string id(to_string(cfg.experiment));
    std::vector<SweepRow> rows;
    rows.reserve(grid.size() * 7);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const std::uint64_t ps = point_seed(cfg.seed, cfg.experiment, k);
        const SweepPoint point = generate_point(cfg, grid[k], derive_seed(ps, 0));
        const std::optional<std::size_t> mc =
            cfg.mc_samples > 0 ? std::optional<std::size_t>(cfg.mc_samples) : std::nullopt;
        const EstimateReport report = estimate_all(point.mixture, mc, derive_seed(ps, 1));
        for (const auto& e : report.entries())
            rows.push_back({id, grid[k], e.name, e.value, e.std_error});
    }
    return rows;
}

std::string format_csv(const std::vector<SweepRow>& rows)
{
    std::string out(kCsvHeader);
    out += '\n';
    for (const SweepRow& r : rows) {
        out += r.experiment;
        out += ',';
        out += format_double(r.param);
        out += ',';
        out += r.estimator;
        out += ',';
        out += format_double(r.value);
        out += ',';
        if (r.std_error)
            out += format_double(*r.std_error);
        out += '\n';
    }
    return out;
}

std::vector<SweepRow> parse_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw Error(ErrorCode::ParseError, "CSV header must be '" + std::string(kCsvHeader) + "'");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            f.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        if (f.size() != 5)
            throw Error(ErrorCode::ParseError, "CSV row must have 5 fields: " + line);
        SweepRow r;
        r.experiment = f[0];
        r.param = parse_double(f[1]);
        r.estimator = f[2];
        r.value = parse_double(f[3]);
        if (!f[4].empty())
            r.std_error = parse_double(f[4]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path)
{
    if (rows.empty())
        throw Error(ErrorCode::InvalidArgument, "no rows to write");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << format_csv(rows);
    if (!out)
        throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::vector<SweepRow> read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

std::string svg_document(const std::vector<SweepRow>& rows)
{
    if (rows.empty())
        throw Error(ErrorCode::InvalidArgument, "no rows to plot");

    std::map<std::string, std::vector<const SweepRow*>> series;
    double xmin = rows.front().param, xmax = xmin;
    double ymin = rows.front().value, ymax = ymin;
    for (const SweepRow& r : rows) {
        series[r.estimator].push_back(&r);
        xmin = std::min(xmin, r.param);
        xmax = std::max(xmax, r.param);
        const double se = r.std_error.value_or(0.0);
        if (std::isfinite(r.value)) {
            ymin = std::min(ymin, r.value - se);
            ymax = std::max(ymax, r.value + se);
        }
    }
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    constexpr double W = 720, H = 460, left = 70, right = 170, top = 30, bottom = 50;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (W - left - right); };
    auto sy = [&](double y) { return H - bottom - (y - ymin) / (ymax - ymin) * (H - top - bottom); };
    auto pt = [&](double x, double y) { return format_double(sx(x)) + "," + format_double(sy(y)); };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<title>" << rows.front().experiment << "</title>\n";

    // Shaded region between H(X|C) and H(X,C).
    const auto cond = series.find("H_cond");
    const auto joint = series.find("H_joint");
    if (cond != series.end() && joint != series.end()) {
        s << "<polygon class=\"band\" fill=\"#9fd89f\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
        for (const SweepRow* r : cond->second)
            s << pt(r->param, r->value) << ' ';
        for (auto it = joint->second.rbegin(); it != joint->second.rend(); ++it)
            s << pt((*it)->param, (*it)->value) << ' ';
        s << "\"/>\n";
    }

    // Axes with five ticks each.
    s << "<g class=\"axes\" stroke=\"black\" font-family=\"sans-serif\" font-size=\"11\">\n";
    s << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom
      << "\"/>\n";
    s << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom << "\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = xmin + (xmax - xmin) * t / 4.0;
        const double yv = ymin + (ymax - ymin) * t / 4.0;
        char lx[32], ly[32];
        std::snprintf(lx, sizeof lx, "%.3g", xv);
        std::snprintf(ly, sizeof ly, "%.3g", yv);
        s << "<text stroke=\"none\" x=\"" << sx(xv) << "\" y=\"" << H - bottom + 16 << "\" text-anchor=\"middle\">"
          << lx << "</text>\n";
        s << "<text stroke=\"none\" x=\"" << left - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">" << ly
          << "</text>\n";
    }
    s << "</g>\n";

    static const std::pair<const char*, const char*> kLines[] = {
        {"H_pairwise_KL", "#d62728"},
        {"H_pairwise_BD", "#1f77b4"},
        {"H_KDE", "#9467bd"},
        {"H_ELK", "#ff7f0e"},
    };
    int legend_row = 0;
    auto legend = [&](const char* name, const char* color) {
        const double y = top + 16.0 * legend_row++;
        s << "<rect x=\"" << W - right + 12 << "\" y=\"" << y - 8 << "\" width=\"14\" height=\"8\" fill=\"" << color
          << "\"/>\n";
        s << "<text x=\"" << W - right + 32 << "\" y=\"" << y << "\" font-family=\"sans-serif\" font-size=\"11\">"
          << name << "</text>\n";
    };
    for (const auto& [name, color] : kLines) {
        const auto it = series.find(name);
        if (it == series.end())
            continue;
        s << "<polyline class=\"estimator\" data-name=\"" << name << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
        for (const SweepRow* r : it->second)
            s << pt(r->param, r->value) << ' ';
        s << "\"/>\n";
        legend(name, color);
    }

    if (const auto mc = series.find("H_MC"); mc != series.end()) {
        s << "<g class=\"mc\" stroke=\"black\" fill=\"black\">\n";
        for (const SweepRow* r : mc->second) {
            const double se = r->std_error.value_or(0.0);
            s << "<line x1=\"" << sx(r->param) << "\" y1=\"" << sy(r->value - se) << "\" x2=\"" << sx(r->param)
              << "\" y2=\"" << sy(r->value + se) << "\"/>\n";
            s << "<circle cx=\"" << sx(r->param) << "\" cy=\"" << sy(r->value) << "\" r=\"3\"/>\n";
        }
        s << "</g>\n";
        legend("H_MC", "black");
    }
    legend("H(X|C)..H(X,C)", "#9fd89f");
    s << "</svg>\n";
    return s.str();
}

void render_svg(const std::vector<SweepRow>& rows, const std::filesystem::path& path)
{
    const std::string doc = svg_document(rows);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << doc;
    if (!out)
        throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

} // namespace mixent
