#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "normcert/errors.hpp"
#include "normcert/graph.hpp"
#include "normcert/matrix.hpp"
#include "normcert/poly.hpp"
#include "normcert/rational.hpp"

namespace normcert {

struct EnumOptions {
  /// Worker threads; 0 means one per hardware core. Results never depend on it.
  int threads = 0;
  /// Largest template graph accepted before raising inconclusive_error.
  int max_vertices = 16;
  /// Largest host dimension for profile enumeration (symbolic and Hessian work).
  int max_host = 4;

  int resolved_threads() const {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
};

/// Number of assignments phi: V(H) -> [n] per pair-count profile.
///
/// A profile records, for each cell {i, j} of the host in pair order, how many
/// edges of H land on it. Profiles are packed into one 64-bit key with
/// `bits` bits per cell.
class ProfileHistogram {
 public:
  ProfileHistogram(int n, int edge_count) : n_(n), cells_(pair_count(n)), edge_count_(edge_count) {
    bits_ = std::min(32, 64 / std::max(cells_, 1));
    if (edge_count_ >= (1ll << bits_)) {
      throw inconclusive_error("profile key overflow: too many edges for host dimension " +
                               std::to_string(n));
    }
  }

  static bool packable(int n, int edge_count) {
    const int cells = pair_count(n);
    const int bits = std::min(32, 64 / std::max(cells, 1));
    return edge_count < (1ll << bits);
  }

  int host_size() const { return n_; }
  int cell_count() const { return cells_; }
  int edge_count() const { return edge_count_; }
  unsigned bits() const { return bits_; }

  std::unordered_map<std::uint64_t, std::uint64_t>& counts() { return counts_; }
  const std::unordered_map<std::uint64_t, std::uint64_t>& counts() const { return counts_; }

  std::vector<unsigned> decode(std::uint64_t key) const {
    std::vector<unsigned> out(cells_);
    const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
    for (int c = 0; c < cells_; ++c) out[c] = static_cast<unsigned>((key >> (bits_ * c)) & mask);
    return out;
  }

  /// (exponents, count) pairs in ascending key order.
  std::vector<std::pair<std::vector<unsigned>, std::uint64_t>> sorted() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw(counts_.begin(), counts_.end());
    std::sort(raw.begin(), raw.end());
    std::vector<std::pair<std::vector<unsigned>, std::uint64_t>> out;
    out.reserve(raw.size());
    for (auto [k, c] : raw) out.emplace_back(decode(k), c);
    return out;
  }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& kv : counts_) t += kv.second;
    return t;
  }

 private:
  int n_;
  int cells_;
  int edge_count_;
  unsigned bits_;
  std::unordered_map<std::uint64_t, std::uint64_t> counts_;
};

namespace detail {

/// Descending degree; ties prefer vertices with more already-placed neighbours,
/// then the smaller label.
inline std::vector<Vertex> enumeration_order(const Graph& h) {
  const int v = h.vertex_count();
  std::vector<Vertex> order;
  std::vector<bool> placed(v, false);
  for (int step = 0; step < v; ++step) {
    int best = -1;
    auto key = [&](int u) {
      int links = 0;
      for (int w : h.neighbours(u)) links += placed[w];
      return std::make_tuple(-h.degree(u), -links, u);
    };
    for (int u = 0; u < v; ++u)
      if (!placed[u] && (best < 0 || key(u) < key(best))) best = u;
    placed[best] = true;
    order.push_back(best);
  }
  return order;
}

struct EnumerationPlan {
  int n = 0;
  std::vector<Vertex> order;
  // back[d]: positions < d adjacent to order[d]
  std::vector<std::vector<int>> back;
  // increment[a*n+b]: key delta for an edge on cell {a,b}
  std::vector<std::uint64_t> increment;
  std::vector<int> zero_hit;  // 1 when cell {a,b} counts toward the zero budget
  int zero_budget = 0;
};

struct PartialState {
  std::vector<int> image;  // by position
  std::uint64_t key = 0;
  int zero_used = 0;
};

inline EnumerationPlan make_plan(const Graph& h, int n, const ProfileHistogram& hist,
                                 const std::vector<bool>& zero_cells, int zero_budget) {
  EnumerationPlan plan;
  plan.n = n;
  plan.order = enumeration_order(h);
  std::vector<int> pos(h.vertex_count());
  for (int d = 0; d < h.vertex_count(); ++d) pos[plan.order[d]] = d;
  plan.back.resize(h.vertex_count());
  for (int d = 0; d < h.vertex_count(); ++d)
    for (Vertex w : h.neighbours(plan.order[d]))
      if (pos[w] < d) plan.back[d].push_back(pos[w]);
  plan.increment.resize(n * n);
  plan.zero_hit.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int c = pair_index(a, b, n);
      plan.increment[a * n + b] = std::uint64_t{1} << (hist.bits() * c);
      plan.zero_hit[a * n + b] = zero_cells.empty() ? 0 : static_cast<int>(zero_cells[c]);
    }
  plan.zero_budget = zero_budget;
  return plan;
}

// Depth-first extension of `state` from position `depth` to `stop`; calls
// leaf(state) at `stop`.
template <typename Leaf>
void extend_assignments(const EnumerationPlan& plan, PartialState& state, int depth, int stop,
                        Leaf& leaf) {
  if (depth == stop) {
    leaf(state);
    return;
  }
  const int n = plan.n;
  const auto& back = plan.back[depth];
  for (int c = 0; c < n; ++c) {
    std::uint64_t delta = 0;
    int zeros = 0;
    for (int b : back) {
      const int idx = state.image[b] * n + c;
      delta += plan.increment[idx];
      zeros += plan.zero_hit[idx];
    }
    if (state.zero_used + zeros > plan.zero_budget) continue;
    state.image[depth] = c;
    state.key += delta;
    state.zero_used += zeros;
    extend_assignments(plan, state, depth + 1, stop, leaf);
    state.key -= delta;
    state.zero_used -= zeros;
  }
}

}  // namespace detail

/// Pair-count histogram over all phi: V(H) -> [n].
///
/// Assignments that place more than `zero_budget` edges on cells flagged in
/// `zero_cells` are skipped; with budget 0 this is the usual zero-weight
/// short-circuit, with budget 2 it keeps everything a Hessian can see.
/// Work is split on the first ceil(v/2) positions; partial histograms are
/// merged by integer addition, so the result is independent of thread count.
inline ProfileHistogram hom_profiles(const Graph& h, int n, const std::vector<bool>& zero_cells,
                                     int zero_budget, const EnumOptions& opt = {}) {
  if (n < 1) throw usage_error("host dimension must be >= 1");
  if (h.vertex_count() > opt.max_vertices) {
    throw inconclusive_error("template graph has " + std::to_string(h.vertex_count()) +
                             " vertices; limit is " + std::to_string(opt.max_vertices));
  }
  if (!zero_cells.empty() && static_cast<int>(zero_cells.size()) != pair_count(n)) {
    throw usage_error("zero-cell mask size mismatch");
  }
  ProfileHistogram hist(n, h.edge_count());
  const int v = h.vertex_count();
  auto plan = detail::make_plan(h, n, hist, zero_cells, zero_budget);

  const int threads = opt.resolved_threads();
  if (threads <= 1 || v < 2) {
    detail::PartialState state{std::vector<int>(v, 0), 0, 0};
    auto& counts = hist.counts();
    auto leaf = [&](const detail::PartialState& s) { ++counts[s.key]; };
    detail::extend_assignments(plan, state, 0, v, leaf);
    return hist;
  }

  const int split = (v + 1) / 2;
  std::vector<detail::PartialState> prefixes;
  {
    detail::PartialState state{std::vector<int>(v, 0), 0, 0};
    auto collect = [&](const detail::PartialState& s) { prefixes.push_back(s); };
    detail::extend_assignments(plan, state, 0, split, collect);
  }
  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> partial(threads);
  std::atomic<std::size_t> next{0};
  auto worker = [&](int t) {
    auto& counts = partial[t];
    auto leaf = [&](const detail::PartialState& s) { ++counts[s.key]; };
    for (std::size_t i = next++; i < prefixes.size(); i = next++) {
      detail::PartialState state = prefixes[i];
      detail::extend_assignments(plan, state, split, v, leaf);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  for (auto& th : pool) th.join();
  auto& counts = hist.counts();
  for (const auto& part : partial)
    for (const auto& [k, c] : part) counts[k] += c;
  return hist;
}

inline std::vector<bool> zero_mask(const SymRationalMatrix& a) {
  std::vector<bool> mask(a.cells().size());
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = a.cells()[k] == 0;
  return mask;
}

namespace detail {

inline std::vector<std::vector<Rational>> cell_powers(const SymRationalMatrix& a, int max_exp) {
  std::vector<std::vector<Rational>> pw;
  pw.reserve(a.cells().size());
  for (const auto& c : a.cells()) pw.push_back(power_table(c, static_cast<unsigned>(max_exp)));
  return pw;
}

// Direct product enumeration, used when profiles cannot be packed.
inline Rational direct_hom_sum(const Graph& h, const SymRationalMatrix& a) {
  const int n = a.size();
  const auto order = enumeration_order(h);
  const int v = h.vertex_count();
  std::vector<int> pos(v);
  for (int d = 0; d < v; ++d) pos[order[d]] = d;
  std::vector<std::vector<int>> back(v);
  for (int d = 0; d < v; ++d)
    for (Vertex w : h.neighbours(order[d]))
      if (pos[w] < d) back[d].push_back(pos[w]);
  std::vector<int> image(v);
  std::vector<Rational> partial(v + 1);
  partial[0] = 1;
  Rational total = 0;
  auto rec = [&](auto&& self, int d) -> void {
    if (d == v) {
      total += partial[v];
      return;
    }
    for (int c = 0; c < n; ++c) {
      Rational w = partial[d];
      for (int b : back[d]) {
        w *= a(image[b], c);
        if (w == 0) break;
      }
      if (w == 0) continue;
      image[d] = c;
      partial[d + 1] = std::move(w);
      self(self, d + 1);
    }
  };
  rec(rec, 0);
  return total;
}

}  // namespace detail

/// P_{H,n}(A) = sum over phi of the product of a_{phi(u)phi(v)} over edges uv.
inline Rational weighted_hom_count(const Graph& h, const SymRationalMatrix& a,
                                   const EnumOptions& opt = {}) {
  if (a.size() < 1) throw usage_error("empty host matrix");
  if (h.vertex_count() > opt.max_vertices) {
    throw inconclusive_error("template graph has " + std::to_string(h.vertex_count()) +
                             " vertices; limit is " + std::to_string(opt.max_vertices));
  }
  if (!ProfileHistogram::packable(a.size(), h.edge_count())) return detail::direct_hom_sum(h, a);
  const auto hist = hom_profiles(h, a.size(), zero_mask(a), 0, opt);
  const auto pw = detail::cell_powers(a, h.edge_count());
  Rational total = 0;
  for (const auto& [key, count] : hist.counts()) {
    const auto exps = hist.decode(key);
    Rational term = static_cast<unsigned long>(count);
    for (std::size_t c = 0; c < exps.size(); ++c)
      if (exps[c]) term *= pw[c][exps[c]];
    total += term;
  }
  return total;
}

/// t_H(U_A) = P_{H,n}(A) / n^{v(H)}.
inline Rational density(const Graph& h, const SymRationalMatrix& a, const EnumOptions& opt = {}) {
  Rational scale;
  mpz_ui_pow_ui(scale.get_num_mpz_t(), static_cast<unsigned long>(a.size()),
                static_cast<unsigned long>(h.vertex_count()));
  return weighted_hom_count(h, a, opt) / scale;
}

/// e(H)-th powers of the norm and the weak norm: |t_H(U_A)| and t_H(U_|A|).
struct NormPowers {
  Rational norm_pow;
  Rational weak_norm_pow;
};

inline NormPowers norm_powers(const Graph& h, const SymRationalMatrix& a, const EnumOptions& opt = {}) {
  NormPowers out;
  out.norm_pow = abs(density(h, a, opt));
  out.weak_norm_pow = density(h, a.map([](const Rational& r) { return Rational(abs(r)); }), opt);
  return out;
}

/// n x n symmetric array whose cells are rational constants or named symbols.
class SymbolicTemplate {
 public:
  using Cell = std::variant<Rational, std::string>;

  SymbolicTemplate() = default;

  /// `cells` in pair order. Symbols are ordered by `symbol_order` when given,
  /// else by first appearance.
  SymbolicTemplate(int n, std::vector<Cell> cells, std::vector<std::string> symbol_order = {})
      : n_(n), cells_(std::move(cells)), symbols_(std::move(symbol_order)) {
    if (n < 1) throw usage_error("template dimension must be >= 1");
    if (static_cast<int>(cells_.size()) != pair_count(n)) throw usage_error("template cell count");
    std::vector<std::string> seen;
    for (const auto& c : cells_)
      if (auto* s = std::get_if<std::string>(&c))
        if (std::find(seen.begin(), seen.end(), *s) == seen.end()) seen.push_back(*s);
    if (symbols_.empty()) {
      symbols_ = seen;
    } else {
      auto a = symbols_, b = seen;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end() || a != b) {
        throw usage_error("symbol order must list each template symbol exactly once");
      }
    }
  }

  /// Row-major full square of cells; must be symmetric.
  static SymbolicTemplate from_rows(const std::vector<std::vector<Cell>>& rows,
                                    std::vector<std::string> symbol_order = {}) {
    const int n = static_cast<int>(rows.size());
    std::vector<Cell> cells;
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) throw usage_error("template is not square");
      for (int j = i; j < n; ++j) {
        if (rows[i][j] != rows[j][i]) throw usage_error("template is not symmetric");
        cells.push_back(rows[i][j]);
      }
    }
    return SymbolicTemplate(n, std::move(cells), std::move(symbol_order));
  }

  int size() const { return n_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& at(int i, int j) const { return cells_[pair_index(i, j, n_)]; }
  const std::vector<std::string>& symbols() const { return symbols_; }

  bool is_symbol(int cell) const { return std::holds_alternative<std::string>(cells_[cell]); }

  /// Host matrix with every symbol replaced by its value.
  SymRationalMatrix substitute(const std::map<std::string, Rational>& values) const {
    SymRationalMatrix out(n_);
    for (std::size_t k = 0; k < cells_.size(); ++k) {
      if (auto* s = std::get_if<std::string>(&cells_[k])) {
        auto it = values.find(*s);
        if (it == values.end()) throw usage_error("no value for symbol '" + *s + "'");
        out.cells()[k] = it->second;
      } else {
        out.cells()[k] = std::get<Rational>(cells_[k]);
      }
    }
    return out;
  }

 private:
  int n_ = 0;
  std::vector<Cell> cells_;
  std::vector<std::string> symbols_;
};

/// P_{H,n}(T) as a polynomial in the template's symbols.
inline SparsePoly symbolic_profile(const Graph& h, const SymbolicTemplate& t,
                                   const EnumOptions& opt = {}) {
  const int n = t.size();
  if (n > opt.max_host) throw inconclusive_error("symbolic_profile: template dimension above limit");
  std::vector<bool> zeros(t.cells().size());
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    auto* r = std::get_if<Rational>(&t.cells()[k]);
    zeros[k] = r && *r == 0;
  }
  const auto hist = hom_profiles(h, n, zeros, 0, opt);

  const auto& symbols = t.symbols();
  std::vector<int> symbol_of(t.cells().size(), -1);
  std::vector<std::vector<Rational>> pw(t.cells().size());
  for (std::size_t k = 0; k < t.cells().size(); ++k) {
    if (auto* s = std::get_if<std::string>(&t.cells()[k])) {
      symbol_of[k] = static_cast<int>(std::find(symbols.begin(), symbols.end(), *s) - symbols.begin());
    } else {
      pw[k] = power_table(std::get<Rational>(t.cells()[k]), static_cast<unsigned>(h.edge_count()));
    }
  }
  SparsePoly out(symbols);
  Exponents e(symbols.size());
  for (const auto& [key, count] : hist.counts()) {
    const auto exps = hist.decode(key);
    std::fill(e.begin(), e.end(), 0);
    Rational coeff = static_cast<unsigned long>(count);
    for (std::size_t k = 0; k < exps.size(); ++k) {
      if (symbol_of[k] >= 0) e[symbol_of[k]] += exps[k];
      else if (exps[k]) coeff *= pw[k][exps[k]];
    }
    out.add_term(e, coeff);
  }
  return out;
}

}  // namespace normcert
