#pragma once

// Artifact plumbing: run configuration, decimal-string JSON, atomic writes.

#include "plancherel/numeric.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace plancherel {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string command;
  unsigned precision_bits = kDefaultPrecisionBits;
  int threads = 1;
  int max_weight = 0;    // oracle truncation (0: not used / automatic)
  int series_order = 0;  // Q-series / Fourier order
  int local_order = 0;   // toprec local order L (0: default)
  std::map<std::string, std::string> tolerances;
  std::map<std::string, std::string> args;  // command inputs, verbatim decimal strings
  std::string format = "json";
  std::string output = "-";

  json to_json() const;
};

json dec(const Real& x);
json dec(const Complex& z);
json dec(const BigRational& q);  // exact "p/q" plus a decimal

// {"schema": 1, "config": ..., <body>}
json envelope(const RunConfig& cfg, json body);

// Writes to a temp file next to `path` and renames; "-" or "" -> stdout.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace plancherel
