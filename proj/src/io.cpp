#include "scnf/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace scnf::io {

using nlohmann::json;

namespace {

json clause_json(const Clause& c) {
  json out = json::array();
  for (const auto& l : c.literals()) {
    const auto idx = static_cast<long long>(l.node) + 1;
    out.push_back(l.negated ? -idx : idx);
  }
  return out;
}

Clause clause_from(const json& j, std::size_t n) {
  std::vector<Literal> lits;
  for (const auto& v : j) {
    const auto idx = v.get<long long>();
    const auto mag = idx < 0 ? -idx : idx;
    if (mag < 1 || static_cast<std::size_t>(mag) > n)
      throw std::invalid_argument("literal index out of range: " + std::to_string(idx));
    lits.push_back({static_cast<NodeId>(mag - 1), idx < 0});
  }
  return Clause(std::move(lits));
}

json to_json(const ScnfNetwork& net) {
  json rules = json::array();
  for (const auto& r : net.rules()) {
    json det = json::array(), sto = json::array();
    for (const auto& c : r.deterministic()) det.push_back(clause_json(c));
    for (const auto& sc : r.stochastic()) sto.push_back({{"clause", clause_json(sc.clause)}, {"p", sc.p}});
    rules.push_back({{"deterministic", det}, {"stochastic", sto}});
  }
  return {{"n", net.size()}, {"rules", rules}};
}

json to_json(const Pbn& pbn) {
  json nodes = json::array();
  for (const auto& fs : pbn.nodes()) {
    json node = json::array();
    for (const auto& wf : fs) {
      json parents = json::array();
      for (auto p : wf.function.parents()) parents.push_back(p + 1);
      std::string table;
      for (bool b : wf.function.table()) table.push_back(b ? '1' : '0');
      node.push_back({{"parents", parents}, {"table", table}, {"p", wf.p}});
    }
    nodes.push_back(node);
  }
  return {{"n", pbn.size()}, {"nodes", nodes}};
}

ScnfNetwork network_from(const json& j, std::size_t n) {
  const auto& rules = j.at("rules");
  if (rules.size() != n) throw std::invalid_argument("expected one rule per node");
  std::vector<ScnfRule> out;
  for (const auto& r : rules) {
    std::vector<Clause> det;
    std::vector<StochasticClause> sto;
    if (r.contains("deterministic"))
      for (const auto& c : r.at("deterministic")) det.push_back(clause_from(c, n));
    if (r.contains("stochastic"))
      for (const auto& s : r.at("stochastic"))
        sto.push_back({clause_from(s.at("clause"), n), s.at("p").get<double>()});
    out.emplace_back(std::move(det), std::move(sto));
  }
  return ScnfNetwork(n, std::move(out));
}

Pbn pbn_from(const json& j, std::size_t n) {
  const auto& nodes = j.at("nodes");
  if (nodes.size() != n) throw std::invalid_argument("expected one function list per node");
  std::vector<std::vector<WeightedFunction>> out;
  for (const auto& node : nodes) {
    std::vector<WeightedFunction> fs;
    for (const auto& f : node) {
      std::vector<NodeId> parents;
      for (const auto& p : f.at("parents")) {
        const auto idx = p.get<long long>();
        if (idx < 1 || static_cast<std::size_t>(idx) > n)
          throw std::invalid_argument("parent index out of range: " + std::to_string(idx));
        parents.push_back(static_cast<NodeId>(idx - 1));
      }
      std::vector<bool> table;
      for (char c : f.at("table").get<std::string>()) {
        if (c != '0' && c != '1') throw std::invalid_argument("truth table must be a 0/1 string");
        table.push_back(c == '1');
      }
      fs.push_back({BooleanFunction(std::move(parents), std::move(table)), f.at("p").get<double>()});
    }
    out.push_back(std::move(fs));
  }
  return Pbn(n, std::move(out));
}

}  // namespace

std::string dump_model(const Model& model) {
  return std::visit([](const auto& m) { return to_json(m).dump(2); }, model) + "\n";
}

Model parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  try {
    const auto n = j.at("n").get<std::size_t>();
    if (j.contains("rules") == j.contains("nodes"))
      throw std::invalid_argument("model must have exactly one of \"rules\" or \"nodes\"");
    if (j.contains("rules")) return network_from(j, n);
    return pbn_from(j, n);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad model document: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

Model load_model(const std::string& path) { return parse_model(read_file(path)); }
void save_model(const Model& model, const std::string& path) { write_file(path, dump_model(model)); }

void write_series(std::ostream& out, const Dataset& data) {
  if (data.empty()) return;
  const std::size_t n = data.front().front().size();
  for (std::size_t i = 0; i < n; ++i) out << (i ? "," : "") << 'x' << i + 1;
  out << '\n';
  for (std::size_t t = 0; t < data.size(); ++t) {
    if (t) out << '\n';
    for (const auto& s : data[t]) {
      if (s.size() != n) throw std::invalid_argument("states differ in width");
      for (std::size_t i = 0; i < n; ++i) out << (i ? "," : "") << (s[i] ? '1' : '0');
      out << '\n';
    }
  }
}

Dataset read_series(std::istream& in) {
  auto trim = [](std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    return line;
  };
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    n = 1 + static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
    break;
  }
  if (n == 0) throw std::invalid_argument("time series file has no header");

  Dataset data;
  Trajectory cur;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) {
      if (!cur.empty()) data.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    State s(n);
    std::size_t i = 0;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      if (i >= n || (cell != "0" && cell != "1"))
        throw std::invalid_argument("bad time series row at line " + std::to_string(lineno));
      s.set(i++, cell == "1");
    }
    if (i != n) throw std::invalid_argument("bad time series row at line " + std::to_string(lineno));
    cur.push_back(std::move(s));
  }
  if (!cur.empty()) data.push_back(std::move(cur));
  if (data.empty()) throw std::invalid_argument("time series file has no rows");
  return data;
}

Dataset load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_series(in);
}

void save_series(const Dataset& data, const std::string& path) {
  std::ostringstream ss;
  write_series(ss, data);
  write_file(path, ss.str());
}

LiteralFilter parse_literal_filter(const std::string& text, std::size_t n) {
  LiteralFilter filter(n);
  try {
    const auto j = json::parse(text);
    for (const auto& [key, allowed] : j.items()) {
      const auto node = std::stoull(key);
      if (node < 1 || node > n) throw std::invalid_argument("literal filter node out of range: " + key);
      std::vector<NodeId> nodes;
      for (const auto& v : allowed) {
        const auto idx = v.get<long long>();
        if (idx < 1 || static_cast<std::size_t>(idx) > n)
          throw std::invalid_argument("literal filter entry out of range: " + std::to_string(idx));
        nodes.push_back(static_cast<NodeId>(idx - 1));
      }
      filter[node - 1] = std::move(nodes);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad literal filter: ") + e.what());
  }
  return filter;
}

LiteralFilter load_literal_filter(const std::string& path, std::size_t n) {
  return parse_literal_filter(read_file(path), n);
}

std::vector<State> read_states(std::istream& in) {
  std::vector<State> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) out.push_back(State::from_string(line));
  }
  return out;
}

}  // namespace scnf::io
