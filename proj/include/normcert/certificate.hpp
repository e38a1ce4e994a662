#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "normcert/graph.hpp"
#include "normcert/json_io.hpp"
#include "normcert/matrix.hpp"
#include "normcert/rational.hpp"

namespace normcert {

inline constexpr const char* kToolVersion = "0.1.0";

enum class CertificateKind { not_weakly_norming, not_norming, screening_failure };

inline std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::not_weakly_norming: return "not_weakly_norming";
    case CertificateKind::not_norming: return "not_norming";
    case CertificateKind::screening_failure: return "screening_failure";
  }
  return "?";
}

inline CertificateKind certificate_kind_from_string(const std::string& s) {
  if (s == "not_weakly_norming") return CertificateKind::not_weakly_norming;
  if (s == "not_norming") return CertificateKind::not_norming;
  if (s == "screening_failure") return CertificateKind::screening_failure;
  throw usage_error("unknown certificate kind '" + s + "'");
}

/// Structural reasons recorded by screening certificates.
namespace reason {
inline constexpr const char* non_bipartite = "non-bipartite";
inline constexpr const char* non_eulerian = "non-eulerian";
inline constexpr const char* odd_edge_count = "odd-edge-count";
}  // namespace reason

/// Serializable refutation of (weak) normingness.
///
/// Curvature certificates carry a witness matrix A, a list of cells and a
/// direction d on those cells with d^T M d = value < 0, where M is the
/// principal submatrix of the Hessian of P_{H,n} at A. Screening certificates
/// carry a structural reason instead.
struct Certificate {
  CertificateKind kind = CertificateKind::screening_failure;
  Graph graph;
  int n = 0;
  std::optional<SymRationalMatrix> witness;
  std::vector<IndexPair> pairs;
  std::vector<Rational> direction;
  std::optional<Rational> value;
  std::string structural_reason;
  std::string theorem;
  json degree_evidence;   // null unless the pipeline records ε-degree data
  json profile_evidence;  // null unless the pipeline records origin Hessian data
  std::uint64_t seed = 0;
};

inline json certificate_to_json(const Certificate& c) {
  json j;
  j["kind"] = to_string(c.kind);
  j["graph"] = graph_to_json(c.graph);
  j["n"] = c.n;
  j["witness"] = c.witness ? matrix_to_json(*c.witness) : json(nullptr);
  j["pairs"] = pairs_to_json(c.pairs);
  j["direction"] = vector_to_json(c.direction);
  if (c.kind == CertificateKind::screening_failure) {
    j["value"] = c.structural_reason;
  } else {
    j["value"] = c.value ? json(to_string(*c.value)) : json(nullptr);
  }
  j["theorem"] = c.theorem;
  j["degree_evidence"] = c.degree_evidence;
  if (!c.profile_evidence.is_null()) j["profile_evidence"] = c.profile_evidence;
  j["tool_version"] = kToolVersion;
  j["seed"] = c.seed;
  return j;
}

inline Certificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw usage_error("certificate must be a JSON object");
  try {
    Certificate c;
    c.kind = certificate_kind_from_string(j.at("kind").get<std::string>());
    c.graph = graph_from_json(j.at("graph"));
    c.n = j.at("n").get<int>();
    if (j.contains("witness") && !j["witness"].is_null()) c.witness = matrix_from_json(j["witness"]);
    if (j.contains("pairs")) c.pairs = pairs_from_json(j["pairs"]);
    if (j.contains("direction")) c.direction = vector_from_json(j["direction"]);
    const json& v = j.at("value");
    if (c.kind == CertificateKind::screening_failure) {
      c.structural_reason = v.get<std::string>();
    } else if (!v.is_null()) {
      c.value = rational_from_json(v);
    }
    c.theorem = j.value("theorem", "");
    c.degree_evidence = j.value("degree_evidence", json(nullptr));
    c.profile_evidence = j.value("profile_evidence", json(nullptr));
    c.seed = j.value("seed", std::uint64_t{0});
    return c;
  } catch (const json::exception& ex) {
    throw usage_error(std::string("malformed certificate: ") + ex.what());
  }
}

}  // namespace normcert
