#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symmin/fiber.hpp"

namespace symmin {

inline constexpr const char* kSchemaVersion = "1";

struct VerificationReport {
  std::string space;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::string check;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int samples = 0;
  std::uint64_t seed = 0;
  std::string engine = "exact";
  long long wall_time_ms = 0;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
};

// pass is recomputed as residual <= tolerance.
VerificationReport finalize(VerificationReport r);

std::string to_json_line(const VerificationReport& r);
std::string csv_header();
std::string to_csv_row(const VerificationReport& r);

// {"a": [[re, im], ...], ...}; plain numbers are read as real entries.
Params params_from_json(const nlohmann::json& j);
Params parse_params(const std::string& text);
nlohmann::ordered_json params_to_json(const Params& p);

struct Tolerances {
  double exact = 1e-9;
  double fd = 1e-6;
  double curvature = 1e-3;
  double invariance = 1e-12;
  double vertical = 1e-10;
  double product_rule = 1e-6;
  double engine_agreement = 1e-6;
};

struct RunConfig {
  SpaceDescriptor space;
  std::optional<Params> params;  // defaults from the catalog when empty
  int samples = 50;
  std::uint64_t seed = 1;
  DerivativeEngine engine;
  int threads = 1;
  bool timing = false;
  std::optional<double> level;  // minimality control: level set phi = level
  Tolerances tol;
};

EigenfunctionSpec spec_for(const RunConfig& cfg);

std::vector<VerificationReport> verify_eigen(const RunConfig& cfg);
std::vector<VerificationReport> verify_invariance(const RunConfig& cfg);
std::vector<VerificationReport> verify_regularity(const RunConfig& cfg);
std::vector<VerificationReport> verify_minimality(const RunConfig& cfg);
std::vector<VerificationReport> verify_product_rules(const RunConfig& cfg);
std::vector<VerificationReport> verify_gallery(const std::string& case_id);

struct TableRow {
  SpaceDescriptor space;
  double tau_residual;
  double kappa_residual;
  double tolerance;
  bool pass;
};

std::vector<SpaceDescriptor> default_table_sizes();
std::vector<TableRow> run_table(const std::vector<SpaceDescriptor>& spaces, int samples, std::uint64_t seed,
                                const DerivativeEngine& engine, int threads, const Tolerances& tol = {});
VerificationReport table_report(const TableRow& row, int samples, std::uint64_t seed, const std::string& engine);

}  // namespace symmin
