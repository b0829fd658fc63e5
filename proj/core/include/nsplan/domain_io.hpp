#pragma once

#include <string>

#include "nsplan/errors.hpp"
#include "nsplan/metric.hpp"
#include "nsplan/nsmdp.hpp"

namespace nsplan {

struct LoadedDomain {
  NSMDP nsmdp;
  StateMetric metric;
  int startState = 0;
  std::string name;
};

/// Reads a domain description. Two JSON forms are accepted: the full
/// "nsmdp-v1" schema with explicit per-epoch tables, and a builtin
/// reference such as {"builtin": "bridge", "epsilon": 0.25} whose remaining
/// keys override the builtin's defaults. Malformed input raises ConfigError
/// with the offending field in the message.
LoadedDomain load_domain_file(const std::string& path);
LoadedDomain load_domain_text(const std::string& text);

/// Serializes to the full nsmdp-v1 schema, builtins included, so any domain
/// can be frozen to a file and reloaded bit for bit.
std::string domain_to_json(const NSMDP& m, const StateMetric& metric,
                           int startState, const std::string& name);
void save_domain_file(const NSMDP& m, const StateMetric& metric,
                      int startState, const std::string& name,
                      const std::string& path);

}  // namespace nsplan
