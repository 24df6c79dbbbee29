#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "exfb/geometry.hpp"
#include "exfb/harmonic.hpp"
#include "exfb/identities.hpp"
#include "exfb/search.hpp"
#include "exfb/spectrum.hpp"

namespace exfb {

using json = nlohmann::json;

// Domains: {"dimension", "coefficients", "center"}.
json to_json(const StarDomain& domain);
StarDomain domain_from_json(const json& j);
StarDomain read_domain(const std::filesystem::path& path);

// Expansions: {"dimension", "log_coefficient", "constant_term", "decay",
// "fit_residual"} plus "method", "center", "warnings" and, for layer
// expansions, the density under "layer".
json to_json(const ExteriorExpansion& expansion);
ExteriorExpansion expansion_from_json(const json& j);

json to_json(const IdentityReport& report);
IdentityReport identity_from_json(const json& j);
json to_json(const ChainReport& chain);
json to_json(const SolveReport& report);
json to_json(const BranchPoint& point);
json to_json(const ModeEigenvalue& m);
json to_json(const SecondOrderCoefficients& s);

// Shortest decimal form that reads back to the same double.
std::string format_number(double v);

/// Comma-separated table with a header row and LF line ends.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    CsvTable& row(const std::vector<std::string>& cells);
    std::string str() const;
    void write(const std::filesystem::path& path) const;

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string cell(double v);
std::string cell(int v);
std::string cell(bool v);

// node, x, y, z, nx, ny, nz, weight, curvature_normalized, curvature_mean, tracefree_sq, support
CsvTable grid_csv(const BoundaryGrid& grid);
// One row per identity; domain_id labels the domain the row belongs to.
void append_identity_rows(CsvTable& table, const std::string& domain_id, const std::vector<IdentityReport>& reports);
CsvTable identity_table();

void write_text(const std::filesystem::path& path, const std::string& text);
json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

} // namespace exfb
