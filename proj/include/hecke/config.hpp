#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "hecke/algebra.hpp"

namespace hecke {

// Parsed job configuration for the CLI.  Schema-validated; unknown keys
// are rejected.
struct JobConfig {
  RootDatum datum;
  LabelSpec labels;
  double q = 2.0;
  std::string cmd;
  std::string format = "text";   // text | csv | json
  std::string out;               // empty = stdout
  unsigned long long seed = 12345;
  nlohmann::json* params = nullptr;  // owned by the holder below
};

struct ParsedJob {
  JobConfig cfg;
  std::shared_ptr<nlohmann::json> params_holder;
};

// Parses and validates a config document; throws ValidationError with a
// field-specific message on schema violations.
ParsedJob parse_config(const std::string& text);

// Tabular output model with deterministic emission.
struct Output {
  std::vector<std::pair<std::string, std::string>> scalars;
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};
std::string emit(const Output& out, const std::string& format);
std::string format_double(double v);  // fixed %.12e
std::string format_complex(Cplx v);

}  // namespace hecke
