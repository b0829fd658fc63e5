#include "nsplan/domain_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nsplan/bridge.hpp"

namespace nsplan {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("domain: missing field '") + key + "'");
  return *it;
}

double need_num(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number()) fail(std::string("domain: '") + key + "' must be a number");
  return v.get<double>();
}

int need_int(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer())
    fail(std::string("domain: '") + key + "' must be an integer");
  return v.get<int>();
}

StateMetric parse_metric(const json& j, int n,
                         const std::vector<std::pair<int, int>>& coords) {
  const json& mj = need(j, "metric");
  if (mj.is_string()) {
    const std::string kind = mj.get<std::string>();
    if (kind == "discrete") return StateMetric::discrete(n);
    if (kind == "manhattan") {
      if (static_cast<int>(coords.size()) != n)
        fail("domain: manhattan metric needs 'coordinates' for every state");
      return StateMetric::manhattan(coords);
    }
    fail("domain: metric must be discrete, manhattan or an explicit matrix");
  }
  if (mj.is_object() && mj.value("kind", "") == "explicit") {
    const json& mat = need(mj, "matrix");
    if (!mat.is_array() || static_cast<int>(mat.size()) != n)
      fail("domain: metric matrix must have one row per state");
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      if (!mat[i].is_array() || static_cast<int>(mat[i].size()) != n)
        fail("domain: metric matrix row " + std::to_string(i) +
             " has the wrong length");
      for (int k = 0; k < n; ++k) d[i][k] = mat[i][k].get<double>();
    }
    try {
      return StateMetric::from_matrix(std::move(d));
    } catch (const std::exception& e) {
      fail(std::string("domain: bad metric matrix: ") + e.what());
    }
  }
  fail("domain: unrecognized metric description");
}

LoadedDomain load_builtin(const json& j) {
  const std::string which = j.at("builtin").get<std::string>();
  if (which != "bridge")
    fail("domain: unknown builtin '" + which + "'");
  BridgeSpec spec;
  if (j.contains("epsilon")) spec.epsilon = need_num(j, "epsilon");
  if (j.contains("gamma")) spec.gamma = need_num(j, "gamma");
  if (j.contains("kappa")) spec.kappa = need_num(j, "kappa");
  if (j.contains("misstep_max")) spec.misstepMax = need_num(j, "misstep_max");
  if (j.contains("slip_floor")) spec.slipFloor = need_num(j, "slip_floor");
  if (j.contains("horizon")) spec.horizon = need_int(j, "horizon");
  if (j.contains("lipschitz_p")) spec.lp = need_num(j, "lipschitz_p");
  if (j.contains("lipschitz_r")) spec.lr = need_num(j, "lipschitz_r");
  if (j.contains("metric")) {
    const std::string m = need(j, "metric").get<std::string>();
    if (m == "manhattan")
      spec.metric = MetricKind::Manhattan;
    else if (m == "discrete")
      spec.metric = MetricKind::Discrete;
    else
      fail("domain: bridge metric must be discrete or manhattan");
  }
  LoadedDomain out;
  try {
    BridgeDomain dom = build_bridge(spec);
    out.nsmdp = std::move(dom.nsmdp);
    out.metric = std::move(dom.metric);
    out.startState = dom.start;
  } catch (const std::invalid_argument& e) {
    fail(std::string("domain: ") + e.what());
  }
  out.name = "bridge";
  return out;
}

LoadedDomain load_full(const json& j) {
  const std::string schema = need(j, "schema").get<std::string>();
  if (schema != "nsmdp-v1")
    fail("domain: unsupported schema '" + schema + "'");

  const int n = need_int(j, "n_states");
  const int nA = need_int(j, "n_actions");
  const int horizon = need_int(j, "horizon");
  const double gamma = need_num(j, "gamma");
  const double lp = need_num(j, "lipschitz_p");
  const double lr = need_num(j, "lipschitz_r");
  if (n < 1 || nA < 1 || horizon < 1)
    fail("domain: n_states, n_actions and horizon must be positive");

  LoadedDomain out;
  try {
    out.nsmdp = NSMDP(n, nA, horizon, gamma, lp, lr);
  } catch (const std::invalid_argument& e) {
    fail(std::string("domain: ") + e.what());
  }

  std::vector<std::pair<int, int>> coords;
  if (j.contains("coordinates")) {
    const json& cj = j["coordinates"];
    if (!cj.is_array() || static_cast<int>(cj.size()) != n)
      fail("domain: 'coordinates' must list one [row, col] per state");
    for (const auto& c : cj) {
      if (!c.is_array() || c.size() != 2)
        fail("domain: each coordinate must be a [row, col] pair");
      coords.push_back({c[0].get<int>(), c[1].get<int>()});
    }
    out.nsmdp.coords = coords;
  }
  out.metric = parse_metric(j, n, coords);

  if (j.contains("terminal_states")) {
    for (const auto& ts : j["terminal_states"]) {
      const int s = ts.get<int>();
      if (s < 0 || s >= n) fail("domain: terminal state index out of range");
      out.nsmdp.set_terminal(s, true);
    }
  }

  const json& trans = need(j, "transitions");
  const json& rew = need(j, "rewards");
  if (!trans.is_array() || static_cast<int>(trans.size()) != horizon)
    fail("domain: 'transitions' must have one entry per epoch");
  if (!rew.is_array() || static_cast<int>(rew.size()) != horizon)
    fail("domain: 'rewards' must have one entry per epoch");
  for (int t = 0; t < horizon; ++t) {
    const json& pt = trans[t];
    const json& rt = rew[t];
    if (!pt.is_array() || static_cast<int>(pt.size()) != n ||
        !rt.is_array() || static_cast<int>(rt.size()) != n)
      fail("domain: epoch " + std::to_string(t) +
           " tables must have one row list per state");
    for (int s = 0; s < n; ++s) {
      if (static_cast<int>(pt[s].size()) != nA ||
          static_cast<int>(rt[s].size()) != nA)
        fail("domain: state " + std::to_string(s) + " at epoch " +
             std::to_string(t) + " must have one row per action");
      for (int a = 0; a < nA; ++a) {
        const std::string where = "[" + std::to_string(t) + "][" +
                                  std::to_string(s) + "][" +
                                  std::to_string(a) + "]";
        const json& prow = pt[s][a];
        const json& rrow = rt[s][a];
        if (!prow.is_array() || static_cast<int>(prow.size()) != n)
          fail("domain: transitions" + where + " must list " +
               std::to_string(n) + " probabilities");
        if (!rrow.is_array() || static_cast<int>(rrow.size()) != n)
          fail("domain: rewards" + where + " must list " + std::to_string(n) +
               " values");
        std::vector<double> p(n), r(n);
        for (int s2 = 0; s2 < n; ++s2) {
          p[s2] = prow[s2].get<double>();
          r[s2] = rrow[s2].get<double>();
        }
        try {
          out.nsmdp.set_trans(t, s, a, CategoricalDistribution(std::move(p)));
        } catch (const std::invalid_argument& e) {
          fail("domain: transitions" + where + ": " + e.what());
        }
        out.nsmdp.set_rewards(t, s, a, std::move(r));
      }
    }
  }

  try {
    out.nsmdp.validate();
  } catch (const std::invalid_argument& e) {
    fail(std::string("domain: ") + e.what());
  }

  if (j.contains("start_state")) {
    out.startState = need_int(j, "start_state");
    if (out.startState < 0 || out.startState >= n)
      fail("domain: start_state out of range");
  }
  if (j.contains("state_names"))
    out.nsmdp.stateNames = j["state_names"].get<std::vector<std::string>>();
  if (j.contains("action_names"))
    out.nsmdp.actionNames = j["action_names"].get<std::vector<std::string>>();
  out.name = j.value("name", "custom");
  return out;
}

}  // namespace

LoadedDomain load_domain_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("domain: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("domain: top level must be a JSON object");
  try {
    if (j.contains("builtin")) return load_builtin(j);
    return load_full(j);
  } catch (const json::exception& e) {
    fail(std::string("domain: malformed field: ") + e.what());
  }
}

LoadedDomain load_domain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("domain: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_domain_text(buf.str());
}

std::string domain_to_json(const NSMDP& m, const StateMetric& metric,
                           int startState, const std::string& name) {
  json j;
  j["schema"] = "nsmdp-v1";
  j["name"] = name;
  j["n_states"] = m.n_states();
  j["n_actions"] = m.n_actions();
  j["horizon"] = m.horizon();
  j["gamma"] = m.gamma();
  j["lipschitz_p"] = m.lipschitz_p();
  j["lipschitz_r"] = m.lipschitz_r();
  j["start_state"] = startState;

  if (metric.kind() == MetricKind::Discrete) {
    j["metric"] = "discrete";
  } else if (metric.kind() == MetricKind::Manhattan) {
    j["metric"] = "manhattan";
  } else {
    j["metric"] = {{"kind", "explicit"}, {"matrix", metric.matrix()}};
  }
  if (!m.coords.empty()) {
    json cj = json::array();
    for (const auto& c : m.coords) cj.push_back({c.first, c.second});
    j["coordinates"] = std::move(cj);
  }

  json terms = json::array();
  for (int s = 0; s < m.n_states(); ++s)
    if (m.is_terminal(s)) terms.push_back(s);
  j["terminal_states"] = std::move(terms);

  if (!m.stateNames.empty()) j["state_names"] = m.stateNames;
  if (!m.actionNames.empty()) j["action_names"] = m.actionNames;

  json trans = json::array(), rew = json::array();
  for (int t = 0; t < m.horizon(); ++t) {
    json pt = json::array(), rt = json::array();
    for (int s = 0; s < m.n_states(); ++s) {
      json ps = json::array(), rs = json::array();
      for (int a = 0; a < m.n_actions(); ++a) {
        ps.push_back(m.trans(t, s, a).probs());
        json rr = json::array();
        for (int s2 = 0; s2 < m.n_states(); ++s2)
          rr.push_back(m.reward(t, s, a, s2));
        rs.push_back(std::move(rr));
      }
      pt.push_back(std::move(ps));
      rt.push_back(std::move(rs));
    }
    trans.push_back(std::move(pt));
    rew.push_back(std::move(rt));
  }
  j["transitions"] = std::move(trans);
  j["rewards"] = std::move(rew);
  return j.dump();
}

void save_domain_file(const NSMDP& m, const StateMetric& metric,
                      int startState, const std::string& name,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("domain: cannot open '" + path + "' for writing");
  out << domain_to_json(m, metric, startState, name) << "\n";
}

}  // namespace nsplan
