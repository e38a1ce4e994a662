#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "normcert/normcert.hpp"

namespace normcert::cli {

enum ExitCode : int { kHolds = 0, kRefuted = 1, kInconclusive = 2, kUsage = 3 };

struct CommandResult {
  int exit_code = kHolds;
  json payload;
};

namespace detail {

inline std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  std::ifstream f(path);
  if (!f) throw usage_error("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(f), {});
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& ex) {
    throw usage_error("invalid JSON in " + what + ": " + ex.what());
  }
}

inline Graph load_graph(const std::string& path, std::istream& in) {
  return parse_graph(read_source(path, in));
}

inline SymRationalMatrix load_matrix(const std::string& path, std::istream& in) {
  return matrix_from_json(parse_json(read_source(path, in), path));
}

/// "i,j;k,l" -> {(i,j),(k,l)}
inline std::vector<IndexPair> parse_pairs(const std::string& text) {
  std::vector<IndexPair> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw usage_error("pair '" + item + "' needs the form i,j");
    try {
      int a = std::stoi(item.substr(0, comma)), b = std::stoi(item.substr(comma + 1));
      out.emplace_back(std::min(a, b), std::max(a, b));
    } catch (const std::logic_error&) {
      throw usage_error("pair '" + item + "' needs integer indices");
    }
  }
  return out;
}

inline NormMode parse_mode(const std::string& m) {
  if (m == "weak" || m == "weakly_norming") return NormMode::weakly_norming;
  if (m == "norming") return NormMode::norming;
  throw usage_error("mode must be weak or norming");
}

inline json bracket_json(const Rational& value, int degree) {
  if (degree < 1) return nullptr;
  auto [lo, hi] = root_bracket(value, static_cast<unsigned>(degree));
  return {{"lo", to_string(lo)}, {"hi", to_string(hi)}, {"approx", lo.get_d()}};
}

inline json structure_json(const StructuralReport& r) {
  json j = {{"bipartite", r.bipartite},
            {"eulerian", r.eulerian},
            {"edge_count", r.edge_count},
            {"degree_sequence", r.degree_sequence},
            {"regular_degree", r.regular_degree ? json(*r.regular_degree) : json(nullptr)}};
  if (r.bipartite) {
    std::vector<int> left, right;
    for (std::size_t v = 0; v < r.side.size(); ++v) (r.side[v] == 0 ? left : right).push_back(static_cast<int>(v));
    j["classes"] = {left, right};
  }
  return j;
}

inline json inequality_json(const InequalityCheck& c) {
  return {{"holds", c.holds}, {"lhs", to_string(c.lhs)}, {"rhs", to_string(c.rhs)}};
}

inline CommandResult certify_outcome(const CertifyResult& r) {
  if (auto* c = std::get_if<Certificate>(&r)) return {kHolds, certificate_to_json(*c)};
  const auto& f = std::get<Refusal>(r);
  return {kRefuted, {{"kind", "refusal"}, {"reason", f.reason}, {"details", f.details}}};
}

inline void print_plain(const json& j, std::ostream& out) {
  if (!j.is_object()) {
    out << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

}  // namespace detail

/// Parses argv, runs one subcommand and writes its payload to `out`.
///
/// Exit codes: 0 certified/holds, 1 refuted/refused/violated, 2 inconclusive
/// (size guard), 3 usage error.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Exact homomorphism-density curvature and (weak) norming certificates", "normcert"};
  app.require_subcommand(1, 1);

  std::uint64_t seed = 0;
  int threads = 0;
  int max_vertices = 16;
  bool plain = false;
  app.add_option("--seed", seed, "random seed");
  app.add_option("--threads", threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--max-vertices", max_vertices, "template vertex guard")->check(CLI::PositiveNumber);
  app.add_flag("--plain", plain, "key: value output instead of JSON");

  std::function<CommandResult()> action;
  auto opts = [&] {
    EnumOptions o;
    o.threads = threads;
    o.max_vertices = max_vertices;
    return o;
  };
  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  // construct
  auto* construct = sub(&app, "construct", "build a named graph");
  construct->require_subcommand(1, 1);
  int p1 = 0, p2 = 0;
  std::string graph_path;
  auto graph_out = [](const Graph& g) { return CommandResult{kHolds, graph_to_json(g)}; };
  sub(construct, "cycle", "cycle C_k")->add_option("k", p1)->required();
  construct->get_subcommand("cycle")->callback([&] { action = [&] { return graph_out(cycle(p1)); }; });
  {
    auto* s = sub(construct, "kbip", "complete bipartite K_{m,n}");
    s->add_option("m", p1)->required();
    s->add_option("n", p2)->required();
    s->callback([&] { action = [&] { return graph_out(complete_bipartite(p1, p2)); }; });
  }
  {
    auto* s = sub(construct, "kpm", "K_{m,m} minus a perfect matching");
    s->add_option("m", p1)->required();
    s->callback([&] { action = [&] { return graph_out(kpm(p1)); }; });
  }
  {
    auto* s = sub(construct, "hypercube", "hypercube Q_d");
    s->add_option("d", p1)->required();
    s->callback([&] { action = [&] { return graph_out(hypercube(p1)); }; });
  }
  {
    auto* s = sub(construct, "path", "path on n vertices");
    s->add_option("n", p1)->required();
    s->callback([&] { action = [&] { return graph_out(path(p1)); }; });
  }
  {
    auto* s = sub(construct, "bowtie", "blow every vertex up by an edge");
    s->add_option("-g,--graph", graph_path)->required();
    s->callback([&] { action = [&] { return graph_out(bowtie_blowup(detail::load_graph(graph_path, in))); }; });
  }
  {
    auto* s = sub(construct, "boxk2", "Cartesian product with K_2");
    s->add_option("-g,--graph", graph_path)->required();
    s->callback([&] { action = [&] { return graph_out(cartesian_k2(detail::load_graph(graph_path, in))); }; });
  }

  // structure / isomorphic
  {
    auto* s = sub(&app, "structure", "bipartite/eulerian/degree report");
    s->add_option("-g,--graph", graph_path)->required();
    s->callback([&] {
      action = [&] {
        return CommandResult{kHolds, detail::structure_json(structural_report(detail::load_graph(graph_path, in)))};
      };
    });
  }
  std::string other_path;
  {
    auto* s = sub(&app, "isomorphic", "exact isomorphism test (<= 16 vertices)");
    s->add_option("-g,--graph", graph_path)->required();
    s->add_option("--other", other_path)->required();
    s->callback([&] {
      action = [&] {
        const bool iso = is_isomorphic(detail::load_graph(graph_path, in), detail::load_graph(other_path, in));
        return CommandResult{iso ? kHolds : kRefuted, {{"isomorphic", iso}}};
      };
    });
  }

  // density
  std::string matrix_path;
  {
    auto* s = sub(&app, "density", "exact homomorphism density and norm powers");
    s->add_option("-g,--graph", graph_path)->required();
    s->add_option("-m,--matrix", matrix_path)->required();
    s->callback([&] {
      action = [&] {
        const auto g = detail::load_graph(graph_path, in);
        const auto a = detail::load_matrix(matrix_path, in);
        const auto o = opts();
        const auto np = norm_powers(g, a, o);
        return CommandResult{kHolds,
                             {{"hom_count", to_string(weighted_hom_count(g, a, o))},
                              {"density", to_string(density(g, a, o))},
                              {"edge_count", g.edge_count()},
                              {"norm_pow", to_string(np.norm_pow)},
                              {"weak_norm_pow", to_string(np.weak_norm_pow)},
                              {"norm", detail::bracket_json(np.norm_pow, g.edge_count())},
                              {"weak_norm", detail::bracket_json(np.weak_norm_pow, g.edge_count())}}};
      };
    });
  }

  // hessian
  std::string pairs_text;
  {
    auto* s = sub(&app, "hessian", "exact Hessian of P_{H,n} at a matrix");
    s->add_option("-g,--graph", graph_path)->required();
    s->add_option("-m,--matrix", matrix_path)->required();
    s->add_option("--pairs", pairs_text, "cells as \"i,j;k,l\" (default: all, row-major)");
    s->callback([&] {
      action = [&] {
        const auto g = detail::load_graph(graph_path, in);
        const auto a = detail::load_matrix(matrix_path, in);
        const auto pairs = pairs_text.empty() ? all_pairs(a.size()) : detail::parse_pairs(pairs_text);
        const auto m = hessian_principal(g, a, pairs, opts());
        return CommandResult{kHolds, {{"pairs", pairs_to_json(pairs)}, {"hessian", matrix_to_json(m)}}};
      };
    });
  }

  // psd / cutnorm
  {
    auto* s = sub(&app, "psd", "exact positive-semidefiniteness decision");
    s->add_option("-m,--matrix", matrix_path)->required();
    s->callback([&] {
      action = [&] {
        const auto r = psd_certify(detail::load_matrix(matrix_path, in));
        if (r.verdict == PsdVerdict::psd) return CommandResult{kHolds, {{"verdict", "psd"}}};
        return CommandResult{kRefuted,
                             {{"verdict", "not_psd"},
                              {"witness", vector_to_json(r.witness)},
                              {"value", to_string(r.value)}}};
      };
    });
  }
  {
    auto* s = sub(&app, "cutnorm", "exact cut norm of U_A");
    s->add_option("-m,--matrix", matrix_path)->required();
    s->callback([&] {
      action = [&] {
        return CommandResult{kHolds, {{"cut_norm", to_string(cut_norm(detail::load_matrix(matrix_path, in)))}}};
      };
    });
  }

  // screen
  std::string mode_text = "weak";
  {
    auto* s = sub(&app, "screen", "structural necessary conditions");
    s->add_option("-g,--graph", graph_path)->required();
    s->add_option("--mode", mode_text, "weak | norming");
    s->callback([&] {
      action = [&] {
        auto c = screen_necessary(detail::load_graph(graph_path, in), detail::parse_mode(mode_text));
        if (c) return CommandResult{kRefuted, certificate_to_json(*c)};
        return CommandResult{kHolds, {{"screen", "passed"}}};
      };
    });
  }

  // check
  auto* check = sub(&app, "check", "exact inequality and identity checks");
  check->require_subcommand(1, 1);
  std::string u_path, w_path, d_path, delta_text = "1";
  int host_n = 1;
  {
    auto* s = sub(check, "sidorenko", "t_H(W) >= t_K2(W)^e(H)");
    s->add_option("-g,--graph", graph_path)->required();
    s->add_option("-m,--matrix", matrix_path)->required();
    s->callback([&] {
      action = [&] {
        auto c = sidorenko_check(detail::load_graph(graph_path, in), detail::load_matrix(matrix_path, in), opts());
        return CommandResult{c.holds ? kHolds : kRefuted, detail::inequality_json(c)};
      };
    });
  }
  {
    auto* s = sub(check, "hatami", "t(U+W)+t(U-W) <= 2^(e-1)(t(U)+t(W))");
    s->add_option("-g,--graph", graph_path)->required();
    s->add_option("--u", u_path)->required();
    s->add_option("--w", w_path)->required();
    s->callback([&] {
      action = [&] {
        auto c = hatami_box_check(detail::load_graph(graph_path, in), detail::load_matrix(u_path, in),
                                  detail::load_matrix(w_path, in), opts());
        return CommandResult{c.holds ? kHolds : kRefuted, detail::inequality_json(c)};
      };
    });
  }
  {
    auto* s = sub(check, "counting", "|t(A)-t(B)| <= 4 e(H) ||A-B||_cut");
    s->add_option("-g,--graph", graph_path)->required();
    s->add_option("--a", u_path)->required();
    s->add_option("--b", w_path)->required();
    s->callback([&] {
      action = [&] {
        auto c = counting_lemma_check(detail::load_graph(graph_path, in), detail::load_matrix(u_path, in),
                                      detail::load_matrix(w_path, in), opts());
        return CommandResult{c.holds ? kHolds : kRefuted, detail::inequality_json(c)};
      };
    });
  }
  {
    auto* s = sub(check, "euler-indicator", "density at [[J,-J],[-J,J]] is the eulerian indicator");
    s->add_option("-g,--graph", graph_path)->required();
    s->add_option("--n", host_n)->required();
    s->callback([&] {
      action = [&] {
        auto r = eulerian_indicator_check(detail::load_graph(graph_path, in), host_n, opts());
        return CommandResult{r.pass ? kHolds : kRefuted,
                             {{"pass", r.pass}, {"eulerian", r.eulerian}, {"density", to_string(r.density)}}};
      };
    });
  }
  {
    auto* s = sub(check, "prop42", "all-ones vector in the Hessian kernel at [[J,-J],[-J,J]]");
    s->alias("allones-kernel");
    s->add_option("-g,--graph", graph_path)->required();
    s->add_option("--n", host_n)->required();
    s->callback([&] {
      action = [&] {
        auto r = allones_kernel_check(detail::load_graph(graph_path, in), host_n, opts());
        const auto psd = psd_certify(r.hessian.entries);
        return CommandResult{r.in_kernel ? kHolds : kRefuted,
                             {{"in_kernel", r.in_kernel},
                              {"hessian_psd", psd.verdict == PsdVerdict::psd},
                              {"dim", r.hessian.dim()}}};
      };
    });
  }
  {
    auto* s = sub(check, "bowtie-lemma", "structural conditions (i) and (ii) of twisted blow-ups");
    s->add_option("-g,--graph", graph_path)->required();
    s->callback([&] {
      action = [&] {
        auto r = verify_bowtie_structure(detail::load_graph(graph_path, in));
        json j = {{"edge_in_unique_4cycle", r.edge_in_unique_4cycle
                                                ? json({r.edge_in_unique_4cycle->first, r.edge_in_unique_4cycle->second})
                                                : json(nullptr)},
                  {"two_edge_sets_ok", r.two_edge_sets_ok},
                  {"counterexample", r.counterexample ? json(*r.counterexample) : json(nullptr)}};
        const bool ok = r.edge_in_unique_4cycle.has_value() && r.two_edge_sets_ok;
        return CommandResult{ok ? kHolds : kRefuted, j};
      };
    });
  }
  {
    auto* s = sub(check, "convexity", "midpoint convexity of t_H along A +- delta D");
    s->add_option("-g,--graph", graph_path)->required();
    s->add_option("-m,--matrix", matrix_path)->required();
    s->add_option("-d,--direction", d_path)->required();
    s->add_option("--delta", delta_text);
    s->add_option("--mode", mode_text, "weak | norming");
    s->callback([&] {
      action = [&] {
        auto v = convexity_violation(detail::load_graph(graph_path, in), detail::load_matrix(matrix_path, in),
                                     detail::load_matrix(d_path, in), parse_rational(delta_text),
                                     detail::parse_mode(mode_text), opts());
        if (!v) return CommandResult{kHolds, {{"violation", false}}};
        return CommandResult{kRefuted,
                             {{"violation", true},
                              {"plus", matrix_to_json(v->plus)},
                              {"minus", matrix_to_json(v->minus)},
                              {"t_center", to_string(v->at_center)},
                              {"t_plus", to_string(v->at_plus)},
                              {"t_minus", to_string(v->at_minus)}}};
      };
    });
  }

  // certify
  auto* certify = sub(&app, "certify", "emit refutation certificates");
  certify->require_subcommand(1, 1);
  int trials = 1000;
  std::int64_t denominator = 8;
  {
    auto* s = sub(certify, "bowtie-cycle", "twisted blow-up of C_k is not weakly norming");
    s->add_option("--k", p1)->required();
    s->callback([&] { action = [&] { return detail::certify_outcome(certify_bowtie_cycle(p1, opts())); }; });
  }
  {
    auto* s = sub(certify, "kpm", "K_{m,m} minus a perfect matching is not norming");
    s->add_option("--m", p1)->required();
    s->callback([&] { action = [&] { return detail::certify_outcome(certify_kpm(p1, opts())); }; });
  }
  {
    auto* s = sub(certify, "search", "random witness search");
    s->add_option("--graph,-g", graph_path)->required();
    s->add_option("--mode", mode_text, "weak | norming")->required();
    s->add_option("--n", host_n)->required();
    s->add_option("--trials", trials);
    s->add_option("--denominator", denominator)->check(CLI::PositiveNumber);
    s->callback([&] {
      action = [&] {
        auto r = random_witness_search(detail::load_graph(graph_path, in), host_n, trials,
                                       detail::parse_mode(mode_text), seed, denominator, opts());
        if (!r.certificate) {
          return CommandResult{kRefuted, {{"kind", "none"}, {"trials_run", r.trials_run}, {"seed", seed}}};
        }
        auto j = certificate_to_json(*r.certificate);
        j["trials_run"] = r.trials_run;
        return CommandResult{kHolds, j};
      };
    });
  }

  // verify
  std::string cert_path;
  {
    auto* s = sub(&app, "verify", "recompute a certificate");
    s->add_option("-c,--certificate", cert_path)->required();
    s->callback([&] {
      action = [&] {
        const auto c = certificate_from_json(detail::parse_json(detail::read_source(cert_path, in), cert_path));
        const auto r = verify_certificate(c, opts());
        json j = {{"valid", r.valid}, {"detail", r.detail}, {"kind", to_string(c.kind)}};
        if (r.recomputed_value) j["recomputed_value"] = to_string(*r.recomputed_value);
        return CommandResult{r.valid ? kHolds : kRefuted, j};
      };
    });
  }

  CommandResult result;
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kHolds;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  try {
    result = action();
  } catch (const usage_error& e) {
    result = {kUsage, {{"error", "usage"}, {"message", e.what()}}};
    err << "usage error: " << e.what() << "\n";
  } catch (const inconclusive_error& e) {
    result = {kInconclusive, {{"error", "inconclusive"}, {"message", e.what()}}};
    err << "inconclusive: " << e.what() << "\n";
  }
  if (plain) detail::print_plain(result.payload, out);
  else out << result.payload.dump(2) << "\n";
  return result.exit_code;
}

}  // namespace normcert::cli
