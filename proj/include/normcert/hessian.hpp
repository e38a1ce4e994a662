#pragma once

#include <string>
#include <vector>

#include "normcert/errors.hpp"
#include "normcert/graph.hpp"
#include "normcert/hom.hpp"
#include "normcert/matrix.hpp"
#include "normcert/poly.hpp"
#include "normcert/psd.hpp"

namespace normcert {

/// Exact Hessian of P_{H,n} at `base`, indexed by cells in pair order.
struct HessianMatrix {
  SymRationalMatrix base;
  SymRationalMatrix entries;  // dimension n(n+1)/2

  int dim() const { return entries.size(); }
};

inline void check_pairs(const std::vector<IndexPair>& pairs, int n) {
  std::vector<int> seen;
  for (auto [i, j] : pairs) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw usage_error("index pair out of range");
    const int c = pair_index(i, j, n);
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) throw usage_error("repeated index pair");
    seen.push_back(c);
  }
}

/// Principal submatrix of the Hessian on `pairs`, from a histogram enumerated
/// with zero budget at least 2 on the zero cells of `a`.
///
/// For a profile m (count c): entry {p,q}, p != q, gains c m_p m_q A^{m-e_p-e_q};
/// entry {p,p} gains c m_p (m_p - 1) A^{m-2e_p}; 0^0 = 1.
inline SymRationalMatrix hessian_principal_from(const ProfileHistogram& hist,
                                                const SymRationalMatrix& a,
                                                const std::vector<IndexPair>& pairs) {
  const int n = a.size();
  check_pairs(pairs, n);
  const auto pw = detail::cell_powers(a, hist.edge_count());
  const int k = static_cast<int>(pairs.size());
  std::vector<int> cell(k);
  for (int i = 0; i < k; ++i) cell[i] = pair_index(pairs[i].first, pairs[i].second, n);

  SymRationalMatrix out(k);
  Rational term;
  for (const auto& [key, count] : hist.counts()) {
    auto exps = hist.decode(key);
    for (int x = 0; x < k; ++x) {
      const int p = cell[x];
      if (exps[p] == 0) continue;
      for (int y = x; y < k; ++y) {
        const int q = cell[y];
        unsigned long coeff;
        if (p == q) {
          if (exps[p] < 2) continue;
          coeff = static_cast<unsigned long>(exps[p]) * (exps[p] - 1);
        } else {
          if (exps[q] == 0) continue;
          coeff = static_cast<unsigned long>(exps[p]) * exps[q];
        }
        exps[p]--;
        exps[q]--;
        term = static_cast<unsigned long>(count);
        term *= coeff;
        for (std::size_t r = 0; r < exps.size() && term != 0; ++r)
          if (exps[r]) term *= pw[r][exps[r]];
        exps[p]++;
        exps[q]++;
        out.cell(x, y) += term;
      }
    }
  }
  return out;
}

inline ProfileHistogram hessian_profiles(const Graph& h, const SymRationalMatrix& a,
                                         const EnumOptions& opt = {}) {
  if (a.size() > opt.max_host) throw inconclusive_error("hessian: host dimension above limit");
  return hom_profiles(h, a.size(), zero_mask(a), 2, opt);
}

inline SymRationalMatrix hessian_principal(const Graph& h, const SymRationalMatrix& a,
                                           const std::vector<IndexPair>& pairs,
                                           const EnumOptions& opt = {}) {
  check_pairs(pairs, a.size());
  return hessian_principal_from(hessian_profiles(h, a, opt), a, pairs);
}

inline HessianMatrix hessian_matrix(const Graph& h, const SymRationalMatrix& a,
                                    const EnumOptions& opt = {}) {
  return {a, hessian_principal(h, a, all_pairs(a.size()), opt)};
}

/// Rows and columns of `m` at the given positions (in the Hessian's pair order).
inline SymRationalMatrix principal_submatrix(const HessianMatrix& m, const std::vector<IndexPair>& pairs) {
  const int n = m.base.size();
  check_pairs(pairs, n);
  SymRationalMatrix out(static_cast<int>(pairs.size()));
  for (std::size_t x = 0; x < pairs.size(); ++x)
    for (std::size_t y = x; y < pairs.size(); ++y)
      out.set(static_cast<int>(x), static_cast<int>(y),
              m.entries(pair_index(pairs[x].first, pairs[x].second, n),
                        pair_index(pairs[y].first, pairs[y].second, n)));
  return out;
}

/// Hessian of a polynomial in x, y (and possibly more symbols) at x = y = 0.
/// Entries are polynomials in the remaining symbols:
/// [[2 [x^2 y^0], [x y]], [[x y], 2 [x^0 y^2]]].
struct TwoVarHessian {
  SparsePoly xx;
  SparsePoly xy;
  SparsePoly yy;
};

inline TwoVarHessian two_var_hessian_at_origin(const SparsePoly& p, const std::string& x = "x",
                                               const std::string& y = "y") {
  const auto ix = p.symbol_index(x), iy = p.symbol_index(y);
  if (!ix || !iy) throw usage_error("two_var_hessian_at_origin needs symbols x and y");
  std::vector<std::string> rest;
  for (const auto& s : p.symbols())
    if (s != x && s != y) rest.push_back(s);
  auto slice = [&](unsigned dx, unsigned dy, unsigned long scale) {
    SparsePoly out(rest);
    for (const auto& [exps, c] : p.terms()) {
      if (exps[*ix] != dx || exps[*iy] != dy) continue;
      Exponents e;
      for (std::size_t i = 0; i < exps.size(); ++i)
        if (i != *ix && i != *iy) e.push_back(exps[i]);
      out.add_term(e, c * scale);
    }
    return out;
  };
  return {slice(2, 0, 2), slice(1, 1, 1), slice(0, 2, 2)};
}

inline constexpr int kMaxKernelCheckVertices = 10;

struct KernelCheck {
  bool in_kernel = false;
  HessianMatrix hessian;
};

/// Whether the all-ones vector lies in the kernel of the Hessian of P_{H,2n}
/// at [[J, -J], [-J, J]]. Requires H eulerian with an even number of edges.
inline KernelCheck allones_kernel_check(const Graph& h, int n, const EnumOptions& opt = {}) {
  const auto report = structural_report(h);
  if (!report.eulerian || h.edge_count() % 2 != 0) {
    throw usage_error("allones_kernel_check needs an eulerian graph with an even edge count");
  }
  if (h.vertex_count() > kMaxKernelCheckVertices || n > 2 || n < 1) {
    throw inconclusive_error("allones_kernel_check: needs v(H) <= 10 and n <= 2");
  }
  KernelCheck out;
  out.hessian = hessian_matrix(h, block_pm_ones(n), opt);
  out.in_kernel = true;
  const auto& m = out.hessian.entries;
  for (int i = 0; i < m.size() && out.in_kernel; ++i) {
    Rational row = 0;
    for (int j = 0; j < m.size(); ++j) row += m(i, j);
    out.in_kernel = row == 0;
  }
  return out;
}

}  // namespace normcert
