#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "normcert/certificate.hpp"
#include "normcert/errors.hpp"
#include "normcert/graph.hpp"
#include "normcert/hessian.hpp"
#include "normcert/hom.hpp"
#include "normcert/matrix.hpp"
#include "normcert/poly.hpp"
#include "normcert/psd.hpp"

namespace normcert {

enum class NormMode { weakly_norming, norming };

inline constexpr const char* kWeakCriterion =
    "weakly norming iff the Hessian of P_{H,n} is PSD at every positive A; "
    "the Hessian is not PSD at the witness";
inline constexpr const char* kNormingCriterion =
    "norming implies the Hessian of P_{H,n} is PSD at every symmetric A; "
    "the Hessian is not PSD at the witness";

/// A pipeline declined to certify; `details` says which condition failed.
struct Refusal {
  std::string reason;
  json details;
};

using CertifyResult = std::variant<Certificate, Refusal>;

/// Structural necessary conditions: bipartite (both modes), eulerian and an
/// even edge count (norming mode). Returns a screening certificate on failure.
inline std::optional<Certificate> screen_necessary(const Graph& h, NormMode mode) {
  const auto report = structural_report(h);
  auto failure = [&](const char* why, const char* claim) {
    Certificate c;
    c.kind = CertificateKind::screening_failure;
    c.graph = h;
    c.structural_reason = why;
    c.theorem = claim;
    return c;
  };
  if (!report.bipartite) return failure(reason::non_bipartite, "weakly norming graphs are bipartite");
  if (mode == NormMode::norming) {
    if (!report.eulerian) return failure(reason::non_eulerian, "norming graphs are eulerian");
    if (h.edge_count() % 2 != 0) {
      return failure(reason::odd_edge_count, "norming graphs have an even number of edges");
    }
  }
  return std::nullopt;
}

struct PositivizeResult {
  bool ok = false;
  SymRationalMatrix matrix;
  std::vector<Rational> direction;
  Rational value;
  int steps = 0;  // j with eta = 2^-j; 0 when the input was used unchanged
};

/// Moves a boundary witness into the open positive orthant.
///
/// The boundary point is `t` with every symbol set to 0. Each zero cell is
/// replaced by eta = 2^-j for j = 1..max_steps until the principal Hessian
/// submatrix on `pairs` has an exact negative direction.
inline PositivizeResult positivize_witness(const Graph& h, const SymbolicTemplate& t,
                                           const std::vector<IndexPair>& pairs, int max_steps,
                                           const EnumOptions& opt = {}) {
  std::map<std::string, Rational> zeros;
  for (const auto& s : t.symbols()) zeros[s] = 0;
  const SymRationalMatrix boundary = t.substitute(zeros);
  check_pairs(pairs, boundary.size());
  if (boundary.size() > opt.max_host) throw inconclusive_error("positivize_witness: host above limit");

  // No cell is zero at any probe point, so one unpruned histogram serves all.
  const auto hist = hom_profiles(h, boundary.size(), {}, 0, opt);
  auto attempt = [&](const SymRationalMatrix& a, int step) {
    PositivizeResult r;
    const auto psd = psd_certify(hessian_principal_from(hist, a, pairs));
    if (psd.verdict == PsdVerdict::not_psd) {
      r.ok = true;
      r.matrix = a;
      r.direction = psd.witness;
      r.value = psd.value;
      r.steps = step;
    }
    return r;
  };

  const auto zero_cells = zero_mask(boundary);
  const bool has_zero = std::find(zero_cells.begin(), zero_cells.end(), true) != zero_cells.end();
  if (!has_zero) {
    const bool positive = std::all_of(boundary.cells().begin(), boundary.cells().end(),
                                      [](const Rational& r) { return r > 0; });
    return positive ? attempt(boundary, 0) : PositivizeResult{};
  }
  Rational eta = 1;
  for (int j = 1; j <= max_steps; ++j) {
    eta /= 2;
    SymRationalMatrix a = boundary;
    for (std::size_t k = 0; k < zero_cells.size(); ++k)
      if (zero_cells[k]) a.cells()[k] = eta;
    if (auto r = attempt(a, j); r.ok) return r;
  }
  return {};
}

/// [[1,1,y],[1,0,1],[y,1,x]] with symbols ordered (x, y).
inline SymbolicTemplate bowtie_template() {
  using C = SymbolicTemplate::Cell;
  const C one = Rational(1), zero = Rational(0), x = std::string("x"), y = std::string("y");
  return SymbolicTemplate::from_rows({{one, one, y}, {one, zero, one}, {y, one, x}}, {"x", "y"});
}

/// [[x,y,eps],[y,1,1],[eps,1,-1]] with symbols ordered (x, y, eps).
inline SymbolicTemplate kpm_template() {
  using C = SymbolicTemplate::Cell;
  const C one = Rational(1), minus = Rational(-1), x = std::string("x"), y = std::string("y"),
          e = std::string("eps");
  return SymbolicTemplate::from_rows({{x, y, e}, {y, one, one}, {e, one, minus}}, {"x", "y", "eps"});
}

inline constexpr int kMaxBowtieCycle = 8;
inline constexpr int kMaxKpm = 7;
inline constexpr int kPositivizeSteps = 40;

/// Refutes weak normingness of C_k blown up by edges.
///
/// h(x, y) = P_{H,3}(bowtie_template()). The Hessian of h at the origin is
/// [[q, l], [l, r]]; the pipeline requires q = 0 and l >= 1, which makes the
/// determinant -l^2 negative, then moves the witness to a strictly positive
/// matrix with an exact negative quadratic form on cells {2,2}, {0,2}.
inline CertifyResult certify_bowtie_cycle(int k, const EnumOptions& opt = {}) {
  if (k < 3) throw usage_error("certify_bowtie_cycle needs k >= 3");
  if (k > kMaxBowtieCycle) throw inconclusive_error("certify_bowtie_cycle: k above 8");
  const Graph h = bowtie_blowup(cycle(k));
  const auto tmpl = bowtie_template();
  const SparsePoly profile = symbolic_profile(h, tmpl, opt);
  const auto origin = two_var_hessian_at_origin(profile);
  const Rational q = origin.xx.coefficient({}), l = origin.xy.coefficient({}),
                 r = origin.yy.coefficient({});
  json evidence = {{"q_xx", to_string(q)},
                   {"l_xy", to_string(l)},
                   {"r_yy", to_string(r)},
                   {"origin_determinant", to_string(q * r - l * l)},
                   {"profile_terms", profile.term_count()}};
  if (q != 0) return Refusal{"q_xx(0,0) is nonzero", evidence};
  if (l < 1) return Refusal{"l_xy(0,0) is below 1", evidence};

  const std::vector<IndexPair> pairs{{2, 2}, {0, 2}};
  const auto pos = positivize_witness(h, tmpl, pairs, kPositivizeSteps, opt);
  if (!pos.ok) return Refusal{"no positive witness within the step budget", evidence};
  evidence["eta_exponent"] = pos.steps;

  Certificate c;
  c.kind = CertificateKind::not_weakly_norming;
  c.graph = h;
  c.n = 3;
  c.witness = pos.matrix;
  c.pairs = pairs;
  c.direction = pos.direction;
  c.value = pos.value;
  c.theorem = kWeakCriterion;
  c.profile_evidence = evidence;
  return c;
}

/// Refutes normingness of K_{m,m} minus a perfect matching.
///
/// Even m fails the eulerian screen. For odd m = 2s + 1 the profile
/// h(x, y, eps) = P_{H,3}(kpm_template()) must satisfy
///   (a) x^2 y^0 terms have eps-degree >= 6s - 4,
///   (b) xy terms have eps-degree >= 4s - 3 and [x y eps^{4s-3}] != 0,
///   (c) [x^0 y^2 eps^k] = 0 for k <= 2s - 2;
/// then eps* = 2^-j is chosen with a negative origin determinant.
inline CertifyResult certify_kpm(int m, const EnumOptions& opt = {}) {
  if (m < 2) throw usage_error("certify_kpm needs m >= 2");
  if (m > kMaxKpm) throw inconclusive_error("certify_kpm: m above 7");
  const Graph h = kpm(m);
  if (m % 2 == 0) {
    auto screen = screen_necessary(h, NormMode::norming);
    if (!screen) return Refusal{"even m passed the norming screen", json::object()};
    return *screen;
  }
  const int s = (m - 1) / 2;
  const int need_xx = 6 * s - 4, need_xy = 4 * s - 3, need_yy = 2 * s - 2;
  const auto tmpl = kpm_template();
  const SparsePoly profile = symbolic_profile(h, tmpl, opt);
  const auto origin = two_var_hessian_at_origin(profile);

  auto min_degree = [](const SparsePoly& p) -> json {
    auto d = restrict_and_min_degree(p, {}, "eps");
    return d ? json(*d) : json(nullptr);
  };
  const auto min_xx = restrict_and_min_degree(origin.xx, {}, "eps");
  const auto min_xy = restrict_and_min_degree(origin.xy, {}, "eps");
  const Rational lead_xy = origin.xy.coefficient({static_cast<std::uint16_t>(need_xy)});
  bool yy_vanishes = true;
  for (int d = 0; d <= need_yy; ++d)
    yy_vanishes = yy_vanishes && origin.yy.coefficient({static_cast<std::uint16_t>(d)}) == 0;

  json evidence = {
      {"s", s},
      {"m", m},
      {"thresholds", {{"xx", need_xx}, {"xy", need_xy}, {"yy", need_yy}}},
      {"observed_min_degree",
       {{"xx", min_degree(origin.xx)}, {"xy", min_degree(origin.xy)}, {"yy", min_degree(origin.yy)}}},
      {"xy_threshold_coefficient", to_string(lead_xy)},
      {"yy_vanishes_through_threshold", yy_vanishes}};

  const bool cond_a = !min_xx || static_cast<int>(*min_xx) >= need_xx;
  const bool cond_b = lead_xy != 0 && min_xy && static_cast<int>(*min_xy) >= need_xy;
  evidence["conditions"] = {{"a", cond_a}, {"b", cond_b}, {"c", yy_vanishes}};
  if (!cond_a) return Refusal{"x^2 terms have eps-degree below 6s-4", evidence};
  if (!cond_b) return Refusal{"xy terms fail the 4s-3 eps-degree condition", evidence};
  if (!yy_vanishes) return Refusal{"y^2 eps^k coefficients do not vanish for k <= 2s-2", evidence};

  Rational eps = 1;
  std::optional<Rational> chosen;
  int exponent = 0;
  for (int j = 1; j <= 64 && !chosen; ++j) {
    eps /= 2;
    const std::map<std::string, Rational> at{{"eps", eps}};
    const Rational det = evaluate(origin.xx, at) * evaluate(origin.yy, at) -
                         pow(evaluate(origin.xy, at), 2);
    if (det < 0) {
      chosen = eps;
      exponent = j;
    }
  }
  if (!chosen) return Refusal{"no eps = 2^-j (j <= 64) gives a negative determinant", evidence};
  evidence["epsilon"] = to_string(*chosen);
  evidence["epsilon_exponent"] = exponent;

  const SymRationalMatrix witness = tmpl.substitute({{"x", 0}, {"y", 0}, {"eps", *chosen}});
  const std::vector<IndexPair> pairs{{0, 0}, {0, 1}};
  const auto sub = hessian_principal(h, witness, pairs, opt);
  const auto psd = psd_certify(sub);
  if (psd.verdict != PsdVerdict::not_psd) {
    return Refusal{"Hessian submatrix at eps* is PSD despite a negative profile determinant", evidence};
  }
  Certificate c;
  c.kind = CertificateKind::not_norming;
  c.graph = h;
  c.n = 3;
  c.witness = witness;
  c.pairs = pairs;
  c.direction = psd.witness;
  c.value = psd.value;
  c.theorem = kNormingCriterion;
  c.degree_evidence = evidence;
  return c;
}

inline constexpr int kMaxSearchVertices = 14;
inline constexpr int kMaxSearchHost = 3;

struct SearchResult {
  std::optional<Certificate> certificate;
  int trials_run = 0;
};

/// Samples matrices (positive entries in weak mode, signed in norming mode)
/// and stops at the first one whose Hessian is not PSD.
inline SearchResult random_witness_search(const Graph& h, int n, int trials, NormMode mode,
                                          std::uint64_t seed, std::int64_t denominator_bound = 8,
                                          const EnumOptions& opt = {}) {
  if (h.vertex_count() > kMaxSearchVertices || n > kMaxSearchHost) {
    throw inconclusive_error("random_witness_search needs v(H) <= 14 and n <= 3");
  }
  if (n < 1 || trials < 0) throw usage_error("random_witness_search: bad n or trial count");
  std::mt19937_64 rng(seed);
  const auto cls = mode == NormMode::weakly_norming ? MatrixClass::positive : MatrixClass::signed_;
  const auto hist = hom_profiles(h, n, {}, 0, opt);
  const auto pairs = all_pairs(n);
  SearchResult out;
  for (int t = 0; t < trials; ++t) {
    out.trials_run = t + 1;
    const auto a = sample_matrix(n, cls, denominator_bound, rng);
    const auto psd = psd_certify(hessian_principal_from(hist, a, pairs));
    if (psd.verdict == PsdVerdict::psd) continue;
    Certificate c;
    c.kind = mode == NormMode::weakly_norming ? CertificateKind::not_weakly_norming
                                              : CertificateKind::not_norming;
    c.graph = h;
    c.n = n;
    c.witness = a;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (psd.witness[i] == 0) continue;
      c.pairs.push_back(pairs[i]);
      c.direction.push_back(psd.witness[i]);
    }
    c.value = psd.value;
    c.theorem = mode == NormMode::weakly_norming ? kWeakCriterion : kNormingCriterion;
    c.seed = seed;
    out.certificate = std::move(c);
    break;
  }
  return out;
}

/// Symmetric matrix with direction[k] on cell pairs[k] and zero elsewhere.
inline SymRationalMatrix direction_matrix(int n, const std::vector<IndexPair>& pairs,
                                          const std::vector<Rational>& direction) {
  check_pairs(pairs, n);
  if (pairs.size() != direction.size()) throw usage_error("direction length differs from pair count");
  SymRationalMatrix d(n);
  for (std::size_t k = 0; k < pairs.size(); ++k) d.set(pairs[k].first, pairs[k].second, direction[k]);
  return d;
}

struct ConvexityViolation {
  SymRationalMatrix plus;   // A + delta D
  SymRationalMatrix minus;  // A - delta D
  Rational at_center;
  Rational at_plus;
  Rational at_minus;
};

/// Some midpoint inequality t(A) <= (t(A + dD) + t(A - dD)) / 2 that fails.
inline std::optional<ConvexityViolation> convexity_violation(const Graph& h, const SymRationalMatrix& a,
                                                             const SymRationalMatrix& d,
                                                             const Rational& delta, NormMode mode,
                                                             const EnumOptions& opt = {}) {
  if (a.size() != d.size()) throw usage_error("convexity_violation: dimension mismatch");
  ConvexityViolation v{a + delta * d, a - delta * d, 0, 0, 0};
  const auto cls = mode == NormMode::weakly_norming ? MatrixClass::nonnegative : MatrixClass::signed_;
  if (!conforms(v.plus, cls) || !conforms(v.minus, cls) || !conforms(a, cls)) {
    throw usage_error("convexity_violation: A +- delta D leaves the admissible range");
  }
  v.at_center = density(h, a, opt);
  v.at_plus = density(h, v.plus, opt);
  v.at_minus = density(h, v.minus, opt);
  if (2 * v.at_center > v.at_plus + v.at_minus) return v;
  return std::nullopt;
}

/// Halves delta from `start` until a violation appears or the range admits it;
/// returns the violation and the delta used.
inline std::optional<std::pair<ConvexityViolation, Rational>> find_convexity_violation(
    const Graph& h, const SymRationalMatrix& a, const SymRationalMatrix& d, Rational start,
    NormMode mode, int max_halvings = 60, const EnumOptions& opt = {}) {
  const auto cls = mode == NormMode::weakly_norming ? MatrixClass::nonnegative : MatrixClass::signed_;
  Rational delta = start;
  for (int i = 0; i <= max_halvings; ++i, delta /= 2) {
    if (!conforms(a + delta * d, cls) || !conforms(a - delta * d, cls)) continue;
    if (auto v = convexity_violation(h, a, d, delta, mode, opt)) return std::make_pair(*v, delta);
  }
  return std::nullopt;
}

struct VerifyReport {
  bool valid = false;
  std::string detail;
  std::optional<Rational> recomputed_value;
};

/// Recomputes a certificate from its stored data alone.
inline VerifyReport verify_certificate(const Certificate& c, const EnumOptions& opt = {}) {
  VerifyReport out;
  if (c.kind == CertificateKind::screening_failure) {
    const auto report = structural_report(c.graph);
    const std::string& why = c.structural_reason;
    if (why == reason::non_bipartite) out.valid = !report.bipartite;
    else if (why == reason::non_eulerian) out.valid = !report.eulerian;
    else if (why == reason::odd_edge_count) out.valid = c.graph.edge_count() % 2 != 0;
    else throw usage_error("unknown structural reason '" + why + "'");
    out.detail = out.valid ? "structural reason confirmed" : "structural reason does not hold";
    return out;
  }
  if (!c.witness || !c.value) throw usage_error("curvature certificate lacks witness or value");
  if (c.witness->size() != c.n) throw usage_error("witness dimension differs from n");
  check_pairs(c.pairs, c.n);
  if (c.pairs.size() != c.direction.size()) throw usage_error("direction length differs from pair count");
  if (c.kind == CertificateKind::not_weakly_norming &&
      !std::all_of(c.witness->cells().begin(), c.witness->cells().end(),
                   [](const Rational& r) { return r >= 0; })) {
    out.detail = "weak-norming witness has a negative entry";
    return out;
  }
  const auto sub = hessian_principal(c.graph, *c.witness, c.pairs, opt);
  const Rational value = quadratic_form(sub, c.direction);
  out.recomputed_value = value;
  if (value != *c.value) {
    out.detail = "stored value " + to_string(*c.value) + " differs from recomputed " + to_string(value);
    return out;
  }
  if (value >= 0) {
    out.detail = "quadratic form is not negative";
    return out;
  }
  out.valid = true;
  out.detail = "quadratic form recomputed exactly and negative";
  return out;
}

}  // namespace normcert
