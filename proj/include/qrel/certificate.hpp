// Machine-checkable certificates: a named list of residual-bearing checks,
// an input digest, and the tolerances in force. Serialization is canonical,
// so identical inputs produce byte-identical certificates.
#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "qrel/json_io.hpp"

namespace qrel {

struct Check {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct Certificate {
  std::string command;
  std::string inputs_digest;
  std::vector<Check> checks;
  Tolerances tolerances;

  bool overall() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(std::string name, bool pass, double residual) {
    checks.push_back(Check{std::move(name), pass, residual});
  }
};

/// FNV-1a 64-bit over the canonical dump of the input documents.
inline std::string content_digest(const json& inputs) {
  const std::string bytes = canonical_dump(inputs);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline json certificate_to_json(const Certificate& cert) {
  json checks = json::array();
  for (const Check& c : cert.checks)
    checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
  return json{{"command", cert.command},
              {"inputs_digest", cert.inputs_digest},
              {"checks", std::move(checks)},
              {"overall", cert.overall()},
              {"tolerances",
               json{{"rank_tol", cert.tolerances.rank},
                    {"membership_tol", cert.tolerances.membership},
                    {"eq_tol", cert.tolerances.eq}}}};
}

}  // namespace qrel
