#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "normcert/errors.hpp"
#include "normcert/rational.hpp"

namespace normcert {

using Exponents = std::vector<std::uint16_t>;

/// Multivariate polynomial with exact rational coefficients.
///
/// Terms live in a hash map; zero coefficients are never stored. Use
/// sorted_terms() for a canonical (lexicographic by exponent) order.
class SparsePoly {
 public:
  using TermMap = std::unordered_map<Exponents, Rational, boost::hash<Exponents>>;

  SparsePoly() = default;
  explicit SparsePoly(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      for (std::size_t j = i + 1; j < symbols_.size(); ++j)
        if (symbols_[i] == symbols_[j]) throw usage_error("duplicate symbol '" + symbols_[i] + "'");
  }

  static SparsePoly constant(std::vector<std::string> symbols, const Rational& c) {
    SparsePoly p(std::move(symbols));
    p.add_term(Exponents(p.symbols_.size(), 0), c);
    return p;
  }

  /// The polynomial consisting of the single symbol `name`.
  static SparsePoly variable(const std::string& name) {
    SparsePoly p({name});
    p.add_term({1}, 1);
    return p;
  }

  const std::vector<std::string>& symbols() const { return symbols_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  std::optional<std::size_t> symbol_index(const std::string& name) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), name);
    if (it == symbols_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - symbols_.begin());
  }

  std::size_t require_symbol(const std::string& name) const {
    auto idx = symbol_index(name);
    if (!idx) throw usage_error("unknown symbol '" + name + "'");
    return *idx;
  }

  void add_term(const Exponents& exps, const Rational& coeff) {
    if (exps.size() != symbols_.size()) throw usage_error("exponent vector length mismatch");
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(exps, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Exponents& exps) const {
    if (exps.size() != symbols_.size()) throw usage_error("exponent vector length mismatch");
    auto it = terms_.find(exps);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  std::vector<std::pair<Exponents, Rational>> sorted_terms() const {
    std::vector<std::pair<Exponents, Rational>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  /// Same polynomial over `target` symbols; every current symbol must appear there.
  SparsePoly over(const std::vector<std::string>& target) const {
    SparsePoly out(target);
    std::vector<std::size_t> where(symbols_.size());
    for (std::size_t i = 0; i < symbols_.size(); ++i) where[i] = out.require_symbol(symbols_[i]);
    for (const auto& [exps, c] : terms_) {
      Exponents e(target.size(), 0);
      for (std::size_t i = 0; i < exps.size(); ++i) e[where[i]] = exps[i];
      out.terms_.emplace(std::move(e), c);
    }
    return out;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    auto sa = union_symbols(a, b);
    return a.over(sa).terms_ == b.over(sa).terms_;
  }

  /// Symbols of a followed by the symbols of b not already in a.
  static std::vector<std::string> union_symbols(const SparsePoly& a, const SparsePoly& b) {
    auto out = a.symbols_;
    for (const auto& s : b.symbols_)
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    return out;
  }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    auto syms = union_symbols(a, b);
    SparsePoly out = a.over(syms);
    for (const auto& [e, c] : b.over(syms).terms_) out.add_term(e, c);
    return out;
  }

  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
    return a + b * Rational(-1);
  }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    auto syms = union_symbols(a, b);
    SparsePoly pa = a.over(syms), pb = b.over(syms);
    SparsePoly out(syms);
    Exponents e(syms.size());
    for (const auto& [ea, ca] : pa.terms_) {
      for (const auto& [eb, cb] : pb.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend SparsePoly operator*(const SparsePoly& a, const Rational& s) {
    SparsePoly out(a.symbols_);
    if (s == 0) return out;
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, c * s);
    return out;
  }

 private:
  std::vector<std::string> symbols_;
  TermMap terms_;
};

/// order-th formal derivative with respect to `symbol`.
inline SparsePoly partial_derivative(const SparsePoly& p, const std::string& symbol,
                                     unsigned order = 1) {
  if (order < 1) throw usage_error("derivative order must be >= 1");
  const std::size_t k = p.require_symbol(symbol);
  SparsePoly out(p.symbols());
  for (const auto& [exps, c] : p.terms()) {
    if (exps[k] < order) continue;
    Rational factor = c;
    for (unsigned i = 0; i < order; ++i) factor *= exps[k] - i;
    Exponents e = exps;
    e[k] -= order;
    out.add_term(e, factor);
  }
  return out;
}

/// Minimum exponent of `probe` over terms whose exponents equal `fixed` on the
/// named symbols; nullopt when no term matches.
inline std::optional<unsigned> restrict_and_min_degree(const SparsePoly& p,
                                                       const std::map<std::string, unsigned>& fixed,
                                                       const std::string& probe) {
  std::vector<std::pair<std::size_t, unsigned>> constraints;
  for (const auto& [name, deg] : fixed) constraints.emplace_back(p.require_symbol(name), deg);
  const std::size_t k = p.require_symbol(probe);
  std::optional<unsigned> best;
  for (const auto& [exps, c] : p.terms()) {
    bool match = true;
    for (auto [idx, deg] : constraints) match = match && exps[idx] == deg;
    if (match && (!best || exps[k] < *best)) best = exps[k];
  }
  return best;
}

/// Coefficients of a univariate slice: terms matching `fixed` exactly, keyed by
/// the exponent of `probe` (other symbols must be fixed too).
inline std::map<unsigned, Rational> restrict_coefficients(
    const SparsePoly& p, const std::map<std::string, unsigned>& fixed, const std::string& probe) {
  std::vector<std::pair<std::size_t, unsigned>> constraints;
  for (const auto& [name, deg] : fixed) constraints.emplace_back(p.require_symbol(name), deg);
  const std::size_t k = p.require_symbol(probe);
  std::map<unsigned, Rational> out;
  for (const auto& [exps, c] : p.terms()) {
    bool match = true;
    for (auto [idx, deg] : constraints) match = match && exps[idx] == deg;
    if (match) out[exps[k]] += c;
  }
  return out;
}

template <typename T>
T evaluate_as(const SparsePoly& p, const std::map<std::string, T>& assignment,
              T (*convert)(const Rational&)) {
  std::vector<T> values;
  for (const auto& s : p.symbols()) {
    auto it = assignment.find(s);
    if (it == assignment.end()) throw usage_error("no value for symbol '" + s + "'");
    values.push_back(it->second);
  }
  T total = T(0);
  for (const auto& [exps, c] : p.terms()) {
    T term = convert(c);
    for (std::size_t i = 0; i < exps.size(); ++i)
      for (unsigned e = 0; e < exps[i]; ++e) term *= values[i];
    total += term;
  }
  return total;
}

inline Rational evaluate(const SparsePoly& p, const std::map<std::string, Rational>& assignment) {
  std::vector<std::vector<Rational>> powers;
  std::vector<unsigned> max_deg(p.symbols().size(), 0);
  for (const auto& [exps, c] : p.terms())
    for (std::size_t i = 0; i < exps.size(); ++i) max_deg[i] = std::max<unsigned>(max_deg[i], exps[i]);
  for (std::size_t i = 0; i < p.symbols().size(); ++i) {
    auto it = assignment.find(p.symbols()[i]);
    if (it == assignment.end()) throw usage_error("no value for symbol '" + p.symbols()[i] + "'");
    powers.push_back(power_table(it->second, max_deg[i]));
  }
  Rational total = 0;
  for (const auto& [exps, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i]) term *= powers[i][exps[i]];
    total += term;
  }
  return total;
}

inline double evaluate_double(const SparsePoly& p, const std::map<std::string, double>& assignment) {
  return evaluate_as<double>(p, assignment, [](const Rational& r) { return r.get_d(); });
}

}  // namespace normcert
