#include "cfnet/persistence.hpp"

#include "json.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cfnet::io {
namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double to_double(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && s[start] == ' ') ++start;
    double v = 0.0;
    const char* first = s.data() + start;
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) throw std::runtime_error("csv: bad number '" + s + "'");
    return v;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \r\t") == std::string::npos; }

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return out;
}

json points_to_json(const PointSet& ps) {
    json rows = json::array();
    for (std::size_t i = 0; i < ps.size(); ++i) rows.push_back(std::vector<double>(ps[i].begin(), ps[i].end()));
    return rows;
}

PointSet points_from_json(const json& rows, std::size_t d) {
    PointSet ps(d);
    for (const auto& row : rows) {
        const auto p = row.get<std::vector<double>>();
        ps.push_back(p);
    }
    return ps;
}

std::string policy_name(network::EmptyCellPolicy p) {
    return p == network::EmptyCellPolicy::zero ? "zero" : "carry_forward";
}

network::EmptyCellPolicy parse_policy(const std::string& s) {
    if (s == "zero") return network::EmptyCellPolicy::zero;
    if (s == "carry_forward") return network::EmptyCellPolicy::carry_forward;
    throw std::runtime_error("model: unknown empty-cell policy '" + s + "'");
}

std::string form_name(network::EvalForm f) { return f == network::EvalForm::telescoped ? "telescoped" : "basis"; }

network::EvalForm parse_form(const std::string& s) {
    if (s == "telescoped") return network::EvalForm::telescoped;
    if (s == "basis") return network::EvalForm::basis;
    throw std::runtime_error("model: unknown evaluation form '" + s + "'");
}

Eigen::VectorXd to_vector(const json& j) {
    const auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> from_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

} // namespace

void write_dataset_csv(const SampleSet& samples, std::ostream& out) {
    const std::size_t d = samples.dimension();
    for (std::size_t k = 1; k <= d; ++k) out << 'x' << k << ',';
    out << "y\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (double v : samples.inputs[i]) out << fmt(v) << ',';
        out << fmt(samples.outputs[i]) << '\n';
    }
}

SampleSet read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty dataset");
    const auto header = split_commas(line);
    if (header.size() < 2) throw std::runtime_error("csv: header needs x1..xd,y");
    const std::size_t d = header.size() - 1;
    PointSet xs(d);
    std::vector<double> ys;
    Point x(d);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        const auto fields = split_commas(line);
        if (fields.size() != d + 1) throw std::runtime_error("csv: wrong field count on line " + std::to_string(lineno));
        for (std::size_t k = 0; k < d; ++k) x[k] = to_double(fields[k]);
        xs.push_back(x);
        ys.push_back(to_double(fields[d]));
    }
    if (ys.empty()) throw std::runtime_error("csv: no data rows");
    return {std::move(xs), std::move(ys)};
}

void save_dataset(const SampleSet& samples, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_dataset_csv(samples, out);
}

SampleSet load_dataset(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_dataset_csv(in);
}

void write_centers_csv(const geometry::CenterChain& chain, std::ostream& out) {
    for (std::size_t j = 0; j < chain.size(); ++j) {
        const auto c = chain.center(j);
        for (std::size_t k = 0; k < c.size(); ++k) out << (k ? "," : "") << fmt(c[k]);
        out << '\n';
    }
}

geometry::CenterChain read_centers_csv(std::istream& in) {
    std::string line;
    std::vector<Point> rows;
    while (std::getline(in, line)) {
        if (blank(line)) continue;
        Point p;
        for (const auto& f : split_commas(line)) p.push_back(to_double(f));
        if (!rows.empty() && p.size() != rows.front().size()) throw std::runtime_error("csv: ragged center rows");
        rows.push_back(std::move(p));
    }
    if (rows.empty()) throw std::runtime_error("csv: no centers");
    return geometry::CenterChain::from_ordered(PointSet::from_rows(rows));
}

std::string model_to_json(const AnyModel& model, const ModelMetadata& meta) {
    json j;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, network::CfnModel>) {
                j["family"] = "cfn";
                j["dimension"] = m.index().dimension();
                j["activation"] = m.sigmoid().name();
                j["params"] = {{"empty_cells", policy_name(m.empty_cell_policy())}, {"form", form_name(m.form())}};
                j["w"] = m.width();
                j["order"] = m.order();
                j["centers"] = points_to_json(m.index().chain().centers());
                j["coeffs"] = m.coeffs();
            } else if constexpr (std::is_same_v<T, baselines::ElmModel>) {
                j["family"] = "elm";
                j["dimension"] = m.dimension();
                j["activation"] = m.sigmoid().name();
                json weights = json::array();
                for (Eigen::Index k = 0; k < m.hidden_weights().rows(); ++k)
                    weights.push_back(from_vector(m.hidden_weights().row(k).transpose()));
                j["hidden_weights"] = std::move(weights);
                j["hidden_biases"] = from_vector(m.hidden_biases());
                j["outer_weights"] = from_vector(m.outer_weights());
            } else {
                j["family"] = "krr";
                j["dimension"] = m.dimension();
                j["gamma"] = m.gamma();
                j["lambda"] = m.lambda();
                j["support_inputs"] = points_to_json(m.support_inputs());
                j["dual_coeffs"] = from_vector(m.dual_coeffs());
            }
        },
        model);
    json md = json::object();
    if (meta.seed) md["seed"] = *meta.seed;
    if (meta.train_rmse) md["train_rmse"] = *meta.train_rmse;
    j["metadata"] = std::move(md);
    return j.dump(2);
}

AnyModel model_from_json(const std::string& text, ModelMetadata* meta) {
    const json j = json::parse(text);
    const auto family = j.at("family").get<std::string>();
    const auto d = j.at("dimension").get<std::size_t>();
    if (meta) {
        *meta = {};
        if (j.contains("metadata")) {
            const auto& md = j["metadata"];
            if (md.contains("seed")) meta->seed = md["seed"].get<std::uint64_t>();
            if (md.contains("train_rmse")) meta->train_rmse = md["train_rmse"].get<double>();
        }
    }
    if (family == "cfn") {
        auto chain = geometry::CenterChain::from_ordered(points_from_json(j.at("centers"), d));
        auto index = std::make_shared<const geometry::VoronoiIndex>(std::move(chain));
        const auto& params = j.at("params");
        return network::CfnModel(std::move(index), activation::Sigmoid::parse(j.at("activation").get<std::string>()),
                                 j.at("w").get<double>(), j.at("coeffs").get<std::vector<double>>(),
                                 j.at("order").get<int>(), parse_policy(params.at("empty_cells").get<std::string>()),
                                 parse_form(params.at("form").get<std::string>()));
    }
    if (family == "elm") {
        const auto& rows = j.at("hidden_weights");
        Eigen::MatrixXd weights(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const auto r = rows[k].get<std::vector<double>>();
            if (r.size() != d) throw std::runtime_error("model: hidden weight row has wrong dimension");
            for (std::size_t l = 0; l < d; ++l) weights(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = r[l];
        }
        return baselines::ElmModel(std::move(weights), to_vector(j.at("hidden_biases")),
                                   to_vector(j.at("outer_weights")),
                                   activation::Sigmoid::parse(j.at("activation").get<std::string>()));
    }
    if (family == "krr") {
        return baselines::KrrModel(points_from_json(j.at("support_inputs"), d), to_vector(j.at("dual_coeffs")),
                                   j.at("gamma").get<double>(), j.at("lambda").get<double>());
    }
    throw std::runtime_error("model: unknown family '" + family + "'");
}

void save_model(const AnyModel& model, const ModelMetadata& meta, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << model_to_json(model, meta) << '\n';
}

AnyModel load_model(const std::filesystem::path& path, ModelMetadata* meta) {
    auto in = open_in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str(), meta);
}

} // namespace cfnet::io
