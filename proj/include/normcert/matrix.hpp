#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "normcert/errors.hpp"
#include "normcert/rational.hpp"

namespace normcert {

/// Unordered index pair {i, j} with i <= j.
using IndexPair = std::pair<int, int>;

/// Row-major upper-triangular position of {i, j}:
/// (0,0),(0,1),...,(0,n-1),(1,1),...,(n-1,n-1).
constexpr int pair_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

constexpr int pair_count(int n) { return n * (n + 1) / 2; }

inline std::vector<IndexPair> all_pairs(int n) {
  std::vector<IndexPair> out;
  out.reserve(pair_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out.emplace_back(i, j);
  return out;
}

/// n x n symmetric matrix with one storage cell per unordered pair.
template <typename T>
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n, const T& fill = T(0)) : n_(n), cells_(pair_count(n), fill) {
    if (n < 0) throw usage_error("negative matrix dimension");
  }

  static SymMatrix identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, T(1));
    return m;
  }

  int size() const { return n_; }
  const T& operator()(int i, int j) const { return cells_[pair_index(i, j, n_)]; }
  void set(int i, int j, const T& value) { cells_[pair_index(i, j, n_)] = value; }
  T& cell(int i, int j) { return cells_[pair_index(i, j, n_)]; }

  /// Cells in pair order.
  const std::vector<T>& cells() const { return cells_; }
  std::vector<T>& cells() { return cells_; }

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_;
  }

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) {
    a.require_same(b);
    for (std::size_t k = 0; k < a.cells_.size(); ++k) a.cells_[k] += b.cells_[k];
    return a;
  }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) {
    a.require_same(b);
    for (std::size_t k = 0; k < a.cells_.size(); ++k) a.cells_[k] -= b.cells_[k];
    return a;
  }
  friend SymMatrix operator*(const T& s, SymMatrix a) {
    for (auto& c : a.cells_) c *= s;
    return a;
  }

  /// Entrywise map, e.g. absolute value or conversion to another scalar.
  template <typename F>
  auto map(F f) const {
    using U = decltype(f(std::declval<const T&>()));
    SymMatrix<U> out(n_);
    for (std::size_t k = 0; k < cells_.size(); ++k) out.cells()[k] = f(cells_[k]);
    return out;
  }

  /// P^T A P where row i of the result is row perm[i] of A.
  SymMatrix permuted(const std::vector<int>& perm) const {
    SymMatrix out(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) out.set(i, j, (*this)(perm.at(i), perm.at(j)));
    return out;
  }

 private:
  void require_same(const SymMatrix& b) const {
    if (n_ != b.n_) throw usage_error("matrix dimension mismatch");
  }

  int n_ = 0;
  std::vector<T> cells_;
};

using SymRationalMatrix = SymMatrix<Rational>;

enum class MatrixClass { nonnegative, positive, signed_ };

inline bool conforms(const SymRationalMatrix& a, MatrixClass cls) {
  for (const auto& c : a.cells()) {
    switch (cls) {
      case MatrixClass::nonnegative:
        if (c < 0 || c > 1) return false;
        break;
      case MatrixClass::positive:
        if (c <= 0 || c > 1) return false;
        break;
      case MatrixClass::signed_:
        if (c < -1 || c > 1) return false;
        break;
    }
  }
  return true;
}

inline SymRationalMatrix all_ones(int n) { return SymRationalMatrix(n, Rational(1)); }

/// [[J, -J], [-J, J]] of size 2n.
inline SymRationalMatrix block_pm_ones(int n) {
  if (n < 1) throw usage_error("block_pm_ones needs n >= 1");
  SymRationalMatrix a(2 * n);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = i; j < 2 * n; ++j) a.set(i, j, (i < n) == (j < n) ? 1 : -1);
  return a;
}

inline constexpr int kMaxCutNormDimension = 14;

/// max over S, T of |sum_{i in S, j in T} a_ij| / n^2, exactly.
///
/// Gray-code walk over S keeps the column sums c_j = sum_{i in S} a_ij; for a
/// fixed S the best T takes all positive or all negative c_j.
inline Rational cut_norm(const SymRationalMatrix& a) {
  const int n = a.size();
  if (n > kMaxCutNormDimension) throw inconclusive_error("cut_norm: dimension above 14");
  if (n == 0) return 0;
  std::vector<Rational> col(n, Rational(0));
  Rational best = 0;
  std::uint32_t gray = 0;
  for (std::uint32_t step = 1; step < (1u << n); ++step) {
    const int flip = __builtin_ctz(step);
    const bool adding = !(gray >> flip & 1u);
    gray ^= 1u << flip;
    for (int j = 0; j < n; ++j) {
      if (adding) col[j] += a(flip, j);
      else col[j] -= a(flip, j);
    }
    Rational pos = 0, neg = 0;
    for (const auto& c : col) (sgn(c) > 0 ? pos : neg) += c;
    if (pos > best) best = pos;
    if (-neg > best) best = -neg;
  }
  return best / (n * n);
}

/// Draws uniformly from [lo, hi] by rejection on the raw engine output, so
/// the sequence depends only on the seed.
inline std::int64_t uniform_draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do x = rng(); while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

/// Random entries p/q with |p| <= q <= denominator_bound in the class range.
inline SymRationalMatrix sample_matrix(int n, MatrixClass cls, std::int64_t denominator_bound,
                                       std::mt19937_64& rng) {
  if (denominator_bound < 1) throw usage_error("denominator_bound must be >= 1");
  if (n < 1) throw usage_error("sample_matrix needs n >= 1");
  SymRationalMatrix a(n);
  for (auto& c : a.cells()) {
    const std::int64_t q = uniform_draw(rng, 1, denominator_bound);
    std::int64_t p = 0;
    switch (cls) {
      case MatrixClass::nonnegative: p = uniform_draw(rng, 0, q); break;
      case MatrixClass::positive: p = uniform_draw(rng, 1, q); break;
      case MatrixClass::signed_: p = uniform_draw(rng, -q, q); break;
    }
    c = Rational(static_cast<long>(p), static_cast<unsigned long>(q));
    c.canonicalize();
  }
  return a;
}

inline SymRationalMatrix sample_matrix(int n, MatrixClass cls, std::int64_t denominator_bound,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_matrix(n, cls, denominator_bound, rng);
}

}  // namespace normcert
