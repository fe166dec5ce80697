#include "mixent/spec_file.hpp"

#include "mixent/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace mixent {
namespace {

using nlohmann::json;

Eigen::VectorXd read_vector(const json& j, const char* field)
{
    if (!j.contains(field) || !j.at(field).is_array())
        throw Error(ErrorCode::ParseError, std::string("missing array field '") + field + "'");
    const json& arr = j.at(field);
    Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number())
            throw Error(ErrorCode::ParseError, std::string("non-numeric entry in '") + field + "'");
        v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    }
    return v;
}

Eigen::MatrixXd read_matrix(const json& j, const char* field)
{
    if (!j.contains(field) || !j.at(field).is_array())
        throw Error(ErrorCode::ParseError, std::string("missing matrix field '") + field + "'");
    const json& rows = j.at(field);
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw Error(ErrorCode::ParseError, std::string("'") + field + "' must be a square matrix");
        for (Eigen::Index c = 0; c < n; ++c) {
            const json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number())
                throw Error(ErrorCode::ParseError, std::string("non-numeric entry in '") + field + "'");
            m(r, c) = v.get<double>();
        }
    }
    return m;
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json to_json(const Eigen::VectorXd& v)
{
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back(v[i]);
    return arr;
}

} // namespace

MixtureModel parse_mixture_spec(std::string_view text)
{
    const json doc = parse_json(text);
    if (!doc.is_object())
        throw Error(ErrorCode::ParseError, "mixture spec must be a JSON object");
    const std::string family = doc.value("family", "");
    if (family != "gaussian" && family != "uniform")
        throw Error(ErrorCode::ParseError, "family must be \"gaussian\" or \"uniform\"");
    if (!doc.contains("components") || !doc.at("components").is_array())
        throw Error(ErrorCode::ParseError, "missing array field 'components'");

    const Eigen::VectorXd w = read_vector(doc, "weights");
    std::vector<double> weights(w.data(), w.data() + w.size());
    std::vector<Component> comps;
    for (const json& c : doc.at("components")) {
        if (family == "gaussian")
            comps.emplace_back(GaussianComponent(read_vector(c, "mean"), read_matrix(c, "cov")));
        else
            comps.emplace_back(UniformComponent(read_vector(c, "lower"), read_vector(c, "upper")));
    }
    return MixtureModel(std::move(weights), std::move(comps));
}

MixtureModel load_mixture_spec(const std::filesystem::path& path) { return parse_mixture_spec(slurp(path)); }

std::string mixture_spec_json(const MixtureModel& mix)
{
    json doc;
    doc["family"] = mix.family() == Family::Gaussian ? "gaussian" : "uniform";
    doc["weights"] = mix.weights();
    json comps = json::array();
    for (const Component& c : mix.components()) {
        json jc;
        if (const auto* g = std::get_if<GaussianComponent>(&c)) {
            jc["mean"] = to_json(g->mean());
            json rows = json::array();
            for (Eigen::Index r = 0; r < g->cov().rows(); ++r)
                rows.push_back(to_json(g->cov().row(r).transpose()));
            jc["cov"] = rows;
        } else {
            const auto& u = std::get<UniformComponent>(c);
            jc["lower"] = to_json(u.lower());
            jc["upper"] = to_json(u.upper());
        }
        comps.push_back(jc);
    }
    doc["components"] = comps;
    return doc.dump(2);
}

AwgnChannel parse_noise_spec(std::string_view text)
{
    const json doc = parse_json(text);
    if (!doc.is_object())
        throw Error(ErrorCode::ParseError, "noise spec must be a JSON object");
    return AwgnChannel(read_matrix(doc, "cov"));
}

AwgnChannel load_noise_spec(const std::filesystem::path& path) { return parse_noise_spec(slurp(path)); }

} // namespace mixent
