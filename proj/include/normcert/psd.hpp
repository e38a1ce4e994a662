#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "normcert/matrix.hpp"
#include "normcert/rational.hpp"

namespace normcert {

enum class PsdVerdict { psd, not_psd };

struct PsdResult {
  PsdVerdict verdict = PsdVerdict::psd;
  std::vector<Rational> witness;  // empty when psd
  Rational value;                 // witness^T M witness, negative when not_psd
};

inline Rational quadratic_form(const SymRationalMatrix& m, const std::vector<Rational>& v) {
  if (static_cast<int>(v.size()) != m.size()) throw usage_error("quadratic_form: length mismatch");
  Rational total = 0;
  for (int i = 0; i < m.size(); ++i) {
    if (v[i] == 0) continue;
    total += m(i, i) * v[i] * v[i];
    for (int j = i + 1; j < m.size(); ++j)
      if (v[j] != 0) total += 2 * m(i, j) * v[i] * v[j];
  }
  return total;
}

/// Exact PSD decision by symmetric elimination over the rationals.
///
/// At every stage the current Schur complement S is scanned for a direct
/// witness: a negative diagonal entry (coordinate vector), or a pair with
/// S_ii + S_jj < 2|S_ij| (vector e_i - sign(S_ij) e_j). Otherwise the first
/// positive diagonal entry is eliminated. A remainder with zero diagonal and no
/// such pair is identically zero, so the matrix is PSD. Witnesses on S are
/// lifted through the eliminated pivots back to the original coordinates.
inline PsdResult psd_certify(const SymRationalMatrix& m) {
  const int n = m.size();
  // Dense working copy; rows/cols indexed by original coordinates.
  std::vector<std::vector<Rational>> s(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s[i][j] = m(i, j);

  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = i;
  struct Pivot {
    int index;
    Rational value;
    std::vector<std::pair<int, Rational>> row;  // entries toward later coordinates
  };
  std::vector<Pivot> pivots;
  std::vector<Rational> w(n, Rational(0));
  bool found = false;

  while (!remaining.empty() && !found) {
    for (int i : remaining) {
      if (s[i][i] < 0) {
        w[i] = 1;
        found = true;
        break;
      }
    }
    if (found) break;
    for (std::size_t a = 0; a < remaining.size() && !found; ++a) {
      for (std::size_t b = a + 1; b < remaining.size(); ++b) {
        const int i = remaining[a], j = remaining[b];
        if (s[i][j] != 0 && s[i][i] + s[j][j] < 2 * abs(s[i][j])) {
          w[i] = 1;
          w[j] = sgn(s[i][j]) > 0 ? -1 : 1;
          found = true;
          break;
        }
      }
    }
    if (found) break;
    auto it = std::find_if(remaining.begin(), remaining.end(), [&](int i) { return s[i][i] > 0; });
    if (it == remaining.end()) break;  // zero remainder
    const int k = *it;
    remaining.erase(it);
    Pivot p{k, s[k][k], {}};
    for (int j : remaining)
      if (s[k][j] != 0) p.row.emplace_back(j, s[k][j]);
    for (auto& [i, ski] : p.row)
      for (auto& [j, skj] : p.row) s[i][j] -= ski * skj / p.value;
    pivots.push_back(std::move(p));
  }

  PsdResult out;
  if (!found) return out;
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    Rational acc = 0;
    for (const auto& [j, v] : it->row) acc += v * w[j];
    w[it->index] = -acc / it->value;
  }
  out.verdict = PsdVerdict::not_psd;
  out.value = quadratic_form(m, w);
  out.witness = std::move(w);
  return out;
}

}  // namespace normcert
