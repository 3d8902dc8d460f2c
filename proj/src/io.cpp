#include "plancherel/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <system_error>

#include <unistd.h>

namespace plancherel {

json RunConfig::to_json() const {
  json j;
  j["command"] = command;
  j["precision_bits"] = precision_bits;
  j["threads"] = threads;
  j["max_weight"] = max_weight;
  j["series_order"] = series_order;
  j["local_order"] = local_order;
  j["tolerances"] = json(tolerances);
  j["args"] = json(args);
  j["format"] = format;
  j["output"] = output;
  return j;
}

json dec(const Real& x) { return to_decimal(x); }

json dec(const Complex& z) { return json{{"re", to_decimal(z.real())}, {"im", to_decimal(z.imag())}}; }

json dec(const BigRational& q) { return json{{"exact", to_string(q)}, {"decimal", to_decimal(to_real(q))}}; }

json envelope(const RunConfig& cfg, json body) {
  json j;
  j["schema"] = kSchemaVersion;
  j["config"] = cfg.to_json();
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

void write_atomic(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp);
    f << content;
    f.flush();
    if (!f) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed: " + path);
  }
}

}  // namespace plancherel
