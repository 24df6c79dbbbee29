#include "exfb/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "exfb/errors.hpp"

namespace exfb {

namespace {

std::vector<double> numbers(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) throw InvalidArgument(std::string("json: missing array ") + key);
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) throw InvalidArgument(std::string("json: non-numeric entry in ") + key);
        out.push_back(v.get<double>());
    }
    return out;
}

// JSON has no NaN or infinity; they are written as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double number_or_nan(const json& j) { return j.is_null() ? NAN : j.get<double>(); }

} // namespace

json to_json(const StarDomain& d) {
    return {{"dimension", d.dimension()}, {"coefficients", d.coefficients()}, {"center", d.center()}};
}

StarDomain domain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dimension")) throw InvalidArgument("domain json: expected an object with a dimension");
    std::vector<double> center;
    if (j.contains("center")) center = numbers(j, "center");
    return StarDomain(j.at("dimension").get<int>(), numbers(j, "coefficients"), center);
}

StarDomain read_domain(const std::filesystem::path& path) { return domain_from_json(read_json(path)); }

json to_json(const ExteriorExpansion& e) {
    json j = {{"dimension", e.dimension},
              {"log_coefficient", e.log_coefficient},
              {"constant_term", e.constant_term},
              {"decay", e.decay},
              {"fit_residual", number(e.fit_residual)},
              {"method", e.method == SolverMethod::layer ? "layer" : "basis"},
              {"center", e.center},
              {"warnings", e.warnings}};
    if (e.layer) {
        j["layer"] = {{"domain", to_json(e.layer->domain)},
                      {"nodes", e.layer->nodes},
                      {"density", e.layer->density},
                      {"modal", e.layer->modal},
                      {"polar_points", e.layer->polar_points},
                      {"azimuth_points", e.layer->azimuth_points}};
    }
    return j;
}

ExteriorExpansion expansion_from_json(const json& j) {
    ExteriorExpansion e;
    e.dimension = j.at("dimension").get<int>();
    e.log_coefficient = j.at("log_coefficient").get<double>();
    e.constant_term = j.at("constant_term").get<double>();
    e.decay = numbers(j, "decay");
    e.fit_residual = number_or_nan(j.at("fit_residual"));
    e.method = j.value("method", std::string("basis")) == "layer" ? SolverMethod::layer : SolverMethod::basis;
    e.center = j.contains("center") ? numbers(j, "center") : std::vector<double>(e.dimension, 0.0);
    if (j.contains("warnings")) e.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (j.contains("layer")) {
        const json& l = j.at("layer");
        auto layer = std::make_shared<LayerDensity>();
        layer->domain = domain_from_json(l.at("domain"));
        layer->nodes = numbers(l, "nodes");
        layer->density = numbers(l, "density");
        layer->modal = numbers(l, "modal");
        layer->polar_points = l.value("polar_points", 0);
        layer->azimuth_points = l.value("azimuth_points", 0);
        e.layer = std::move(layer);
    }
    if (e.method == SolverMethod::layer && !e.layer) throw InvalidArgument("expansion json: layer method without density");
    return e;
}

json to_json(const IdentityReport& r) {
    json extra = json::object();
    for (const auto& [k, v] : r.extra) extra[k] = number(v);
    return {{"name", r.name},         {"lhs", number(r.lhs)},         {"rhs", number(r.rhs)},
            {"abs_gap", number(r.abs_gap)}, {"rel_gap", number(r.rel_gap)}, {"inequality", r.inequality},
            {"satisfied", r.satisfied}, {"tolerance", r.tolerance},    {"extra", extra}};
}

IdentityReport identity_from_json(const json& j) {
    IdentityReport r;
    r.name = j.at("name").get<std::string>();
    r.lhs = number_or_nan(j.at("lhs"));
    r.rhs = number_or_nan(j.at("rhs"));
    r.abs_gap = number_or_nan(j.at("abs_gap"));
    r.rel_gap = number_or_nan(j.at("rel_gap"));
    r.inequality = j.at("inequality").get<bool>();
    r.satisfied = j.at("satisfied").get<bool>();
    r.tolerance = j.at("tolerance").get<double>();
    for (const auto& [k, v] : j.at("extra").items()) r.extra.emplace_back(k, number_or_nan(v));
    return r;
}

json to_json(const ChainReport& c) {
    json steps = json::array();
    for (const auto& s : c.steps)
        steps.push_back({{"name", s.name}, {"lhs", number(s.lhs)}, {"rhs", number(s.rhs)}, {"slack", number(s.slack)}, {"holds", s.holds}});
    return {{"Gamma", c.Gamma}, {"lambda", c.lambda}, {"factored_product", number(c.factored_product)}, {"steps", steps}};
}

json to_json(const SolveReport& r) {
    return {{"converged", r.converged},
            {"final_domain", to_json(r.final_domain)},
            {"residual_norm", number(r.residual_norm)},
            {"volume_gap", number(r.volume_gap)},
            {"distance_to_ball", number(r.distance_to_ball)},
            {"iterations", r.iterations},
            {"nodes", r.nodes},
            {"message", r.message}};
}

json to_json(const BranchPoint& p) {
    return {{"Gamma", p.Gamma}, {"amplitude", p.amplitude}, {"domain", to_json(p.domain)}, {"residual_norm", number(p.residual_norm)}};
}

json to_json(const ModeEigenvalue& m) {
    return {{"dimension", m.dimension},
            {"mode", m.mode},
            {"Gamma", m.Gamma},
            {"analytic_value", m.analytic_value ? json(*m.analytic_value) : json(nullptr)},
            {"analytic_root", m.analytic_root ? json(*m.analytic_root) : json(nullptr)},
            {"numeric_value", number(m.numeric_value)},
            {"fd_step", m.fd_step}};
}

json to_json(const SecondOrderCoefficients& s) {
    return {{"mode", s.mode},           {"Gamma", s.Gamma},           {"a0_numeric", s.a0_numeric},
            {"a0_predicted", s.a0_predicted},   {"a0_area", s.a0_area},       {"a2_numeric", s.a2_numeric},
            {"richardson_ratio", s.richardson_ratio}};
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string cell(double v) { return format_number(v); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(bool v) { return v ? "true" : "false"; }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size()) throw InvalidArgument("csv: row width does not match the header");
    rows_.push_back(cells);
    return *this;
}

std::string CsvTable::str() const {
    auto line = [](std::ostringstream& os, const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const std::string& c = cells[i];
            if (i) os << ',';
            if (c.find_first_of(",\"\n") != std::string::npos) {
                os << '"';
                for (char ch : c) os << (ch == '"' ? "\"\"" : std::string(1, ch));
                os << '"';
            } else {
                os << c;
            }
        }
        os << '\n';
    };
    std::ostringstream os;
    line(os, header_);
    for (const auto& r : rows_) line(os, r);
    return os.str();
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

CsvTable grid_csv(const BoundaryGrid& g) {
    CsvTable t({"node", "x", "y", "z", "nx", "ny", "nz", "weight", "curvature_normalized", "curvature_mean",
                "tracefree_sq", "support"});
    for (int i = 0; i < g.size(); ++i) {
        t.row({cell(g.nodes[i]), cell(g.positions[i].x()), cell(g.positions[i].y()), cell(g.positions[i].z()),
               cell(g.normals[i].x()), cell(g.normals[i].y()), cell(g.normals[i].z()), cell(g.weights[i]),
               cell(g.curvature_normalized[i]), cell(g.curvature_mean[i]), cell(g.tracefree_sq[i]),
               cell(g.support[i])});
    }
    return t;
}

CsvTable identity_table() {
    return CsvTable({"domain", "identity", "lhs", "rhs", "abs_gap", "rel_gap", "inequality", "satisfied", "tolerance"});
}

void append_identity_rows(CsvTable& t, const std::string& id, const std::vector<IdentityReport>& reports) {
    for (const auto& r : reports)
        t.row({id, r.name, cell(r.lhs), cell(r.rhs), cell(r.abs_gap), cell(r.rel_gap), cell(r.inequality),
               cell(r.satisfied), cell(r.tolerance)});
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidArgument("malformed json in " + path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

} // namespace exfb
