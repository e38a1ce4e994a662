#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "normcert/errors.hpp"
#include "normcert/graph.hpp"
#include "normcert/hom.hpp"
#include "normcert/matrix.hpp"
#include "normcert/poly.hpp"
#include "normcert/rational.hpp"

namespace normcert {

using json = nlohmann::json;

inline json rational_to_json(const Rational& r) { return to_string(r); }

/// Accepts "p/q" strings and JSON integers.
inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw usage_error("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw usage_error("edge must be a pair");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Graph(n, edges);
  } catch (const json::exception& ex) {
    throw usage_error(std::string("malformed graph JSON: ") + ex.what());
  }
}

/// Plain-text edge list: one "u v" per line, '#' starts a comment, an optional
/// "n N" line fixes the vertex count (default: largest endpoint + 1).
inline Graph graph_from_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  int n = -1;
  int top = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "n") {
      if (!(ls >> n)) throw usage_error("malformed 'n' line in edge list");
      continue;
    }
    int u, v;
    try {
      u = std::stoi(first);
    } catch (const std::exception&) {
      throw usage_error("malformed edge list line: " + line);
    }
    if (!(ls >> v)) throw usage_error("malformed edge list line: " + line);
    edges.emplace_back(u, v);
    top = std::max({top, u, v});
  }
  return Graph(n >= 0 ? n : top + 1, edges);
}

/// JSON object when the text starts with '{', else a plain edge list.
inline Graph parse_graph(const std::string& text) {
  auto first = std::find_if(text.begin(), text.end(), [](unsigned char c) { return !std::isspace(c); });
  if (first != text.end() && *first == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& ex) {
      throw usage_error(std::string("invalid JSON: ") + ex.what());
    }
    return graph_from_json(j);
  }
  std::istringstream in(text);
  return graph_from_edge_list(in);
}

inline json matrix_to_json(const SymRationalMatrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.size(); ++j) row.push_back(to_string(a(i, j)));
    rows.push_back(row);
  }
  return {{"n", a.size()}, {"entries", rows}};
}

inline SymRationalMatrix matrix_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    const auto& rows = j.at("entries");
    if (n < 1 || !rows.is_array() || static_cast<int>(rows.size()) != n) {
      throw usage_error("matrix JSON: entries must be an n x n array");
    }
    std::vector<std::vector<Rational>> full(n);
    for (int i = 0; i < n; ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) {
        throw usage_error("matrix JSON: row " + std::to_string(i) + " has wrong length");
      }
      for (int k = 0; k < n; ++k) full[i].push_back(rational_from_json(rows[i][k]));
    }
    SymRationalMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int k = i; k < n; ++k) {
        if (full[i][k] != full[k][i]) {
          throw usage_error("matrix JSON is not symmetric at (" + std::to_string(i) + "," +
                            std::to_string(k) + ")");
        }
        a.set(i, k, full[i][k]);
      }
    return a;
  } catch (const json::exception& ex) {
    throw usage_error(std::string("malformed matrix JSON: ") + ex.what());
  }
}

inline json poly_to_json(const SparsePoly& p) {
  json terms = json::array();
  for (const auto& [exps, c] : p.sorted_terms()) {
    terms.push_back({{"exp", exps}, {"coeff", to_string(c)}});
  }
  return {{"symbols", p.symbols()}, {"terms", terms}};
}

inline SparsePoly poly_from_json(const json& j) {
  try {
    SparsePoly p(j.at("symbols").get<std::vector<std::string>>());
    for (const auto& t : j.at("terms")) {
      p.add_term(t.at("exp").get<Exponents>(), rational_from_json(t.at("coeff")));
    }
    return p;
  } catch (const json::exception& ex) {
    throw usage_error(std::string("malformed polynomial JSON: ") + ex.what());
  }
}

inline json pairs_to_json(const std::vector<IndexPair>& pairs) {
  json out = json::array();
  for (auto [i, j] : pairs) out.push_back({i, j});
  return out;
}

inline std::vector<IndexPair> pairs_from_json(const json& j) {
  std::vector<IndexPair> out;
  try {
    for (const auto& p : j) {
      if (!p.is_array() || p.size() != 2) throw usage_error("index pair must have two entries");
      int a = p[0].get<int>(), b = p[1].get<int>();
      out.emplace_back(std::min(a, b), std::max(a, b));
    }
  } catch (const json::exception& ex) {
    throw usage_error(std::string("malformed pair list: ") + ex.what());
  }
  return out;
}

inline json vector_to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

inline std::vector<Rational> vector_from_json(const json& j) {
  if (!j.is_array()) throw usage_error("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

}  // namespace normcert
