#pragma once

#include "normcert/errors.hpp"
#include "normcert/graph.hpp"
#include "normcert/hom.hpp"
#include "normcert/matrix.hpp"

namespace normcert {

/// Both sides of an exact inequality lhs <= rhs (or lhs >= rhs where noted).
struct InequalityCheck {
  bool holds = false;
  Rational lhs;
  Rational rhs;
};

/// t_H(U_A) >= t_{K_2}(U_A)^{e(H)} for bipartite H and A with entries in [0, 1].
inline InequalityCheck sidorenko_check(const Graph& h, const SymRationalMatrix& a,
                                       const EnumOptions& opt = {}) {
  if (!structural_report(h).bipartite) throw usage_error("sidorenko_check needs a bipartite graph");
  if (!conforms(a, MatrixClass::nonnegative)) throw usage_error("sidorenko_check needs entries in [0,1]");
  InequalityCheck out;
  out.lhs = density(h, a, opt);
  out.rhs = pow(density(complete_bipartite(1, 1), a, opt), static_cast<unsigned>(h.edge_count()));
  out.holds = out.lhs >= out.rhs;
  return out;
}

/// t_H(U+W) + t_H(U-W) <= 2^{e(H)-1} (t_H(U) + t_H(W)).
inline InequalityCheck hatami_box_check(const Graph& h, const SymRationalMatrix& u,
                                        const SymRationalMatrix& w, const EnumOptions& opt = {}) {
  if (u.size() != w.size()) throw usage_error("hatami_box_check: dimension mismatch");
  if (h.edge_count() < 1) throw usage_error("hatami_box_check needs at least one edge");
  InequalityCheck out;
  out.lhs = density(h, u + w, opt) + density(h, u - w, opt);
  Rational factor;
  mpz_ui_pow_ui(factor.get_num_mpz_t(), 2, static_cast<unsigned long>(h.edge_count() - 1));
  out.rhs = factor * (density(h, u, opt) + density(h, w, opt));
  out.holds = out.lhs <= out.rhs;
  return out;
}

/// |t_H(U_A) - t_H(U_B)| <= 4 e(H) ||U_A - U_B||_cut for signed A, B.
inline InequalityCheck counting_lemma_check(const Graph& h, const SymRationalMatrix& a,
                                            const SymRationalMatrix& b, const EnumOptions& opt = {}) {
  if (a.size() != b.size()) throw usage_error("counting_lemma_check: dimension mismatch");
  if (!conforms(a, MatrixClass::signed_) || !conforms(b, MatrixClass::signed_)) {
    throw usage_error("counting_lemma_check needs entries in [-1,1]");
  }
  InequalityCheck out;
  out.lhs = abs(density(h, a, opt) - density(h, b, opt));
  out.rhs = 4 * h.edge_count() * cut_norm(a - b);
  out.holds = out.lhs <= out.rhs;
  return out;
}

inline constexpr int kMaxIndicatorVertices = 12;

struct EulerianIndicator {
  bool pass = false;
  bool eulerian = false;
  Rational density;
};

/// density(F, block_pm_ones(n)) is 1 for eulerian F and 0 otherwise.
inline EulerianIndicator eulerian_indicator_check(const Graph& f, int n, const EnumOptions& opt = {}) {
  if (f.vertex_count() > kMaxIndicatorVertices) {
    throw inconclusive_error("eulerian_indicator_check: more than 12 vertices");
  }
  EulerianIndicator out;
  out.eulerian = structural_report(f).eulerian;
  out.density = density(f, block_pm_ones(n), opt);
  out.pass = out.density == (out.eulerian ? 1 : 0);
  return out;
}

}  // namespace normcert
