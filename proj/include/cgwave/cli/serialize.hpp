#pragma once

// CSV and JSON encodings of the toolkit's results. Numbers are written with
// 17 significant digits so that every double round-trips exactly.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgwave/bifurcation.hpp"
#include "cgwave/continuation.hpp"
#include "cgwave/fields.hpp"
#include "json.hpp"

namespace cgwave::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kBranchFormat = "cgwave-branch/1";

/// A branch file that cannot be read back; the message carries the location
/// (line:column for syntax errors, a JSON pointer for schema errors).
class BranchFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double v);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

std::string dispersion_csv(const std::vector<DispersionRow>& rows, const PhysicalParams& p);
/// Inverse of dispersion_csv (transversality column is dropped).
std::vector<DispersionRow> parse_dispersion_csv(const std::string& text);

Json params_json(const PhysicalParams& p);
Json kernel_report_json(const KernelReport& r, double transversality);

struct BranchFile {
  Branch branch;
  NewtonOptions newton;
};

Json branch_json(const Branch& b, const NewtonOptions& newton);
BranchFile parse_branch_json(const std::string& text, const std::string& source);

/// One row per point and grid node: point, s, x, X, Y.
std::string profiles_csv(const Branch& b);

Json validation_json(const ValidationReport& r, std::size_t point_index, const BranchPoint& point);

/// One row per grid node: x, y, U, V, zeta, xi, e, S.
std::string fields_csv(const FlowForceField& f);

}  // namespace cgwave::cli
