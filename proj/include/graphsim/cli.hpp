#pragma once

#include <cstddef>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dense_matrix.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "linalg.hpp"
#include "similarity.hpp"
#include "synonyms.hpp"

namespace graphsim::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 2;
inline constexpr int exit_not_converged = 3;

namespace detail {

// An error already tied to a named input (file or flag).
struct located_error : input_error {
  located_error(const std::string& where, const std::string& what) : input_error(where + ": " + what) {}
};

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool stdin_used = false;
};

template <class Parse>
auto read_input(Io& io, const std::string& path, Parse&& parse) {
  try {
    if (path == "-") {
      if (io.stdin_used) throw input_error("standard input can only be read once");
      io.stdin_used = true;
      return parse(io.in);
    }
    std::ifstream f(path);
    if (!f) throw input_error("cannot open file");
    return parse(f);
  } catch (const located_error&) {
    throw;
  } catch (const input_error& e) {
    throw located_error(path, e.what());
  }
}

inline DirectedGraph read_graph(Io& io, const std::string& path, bool need_edges = true) {
  auto g = read_input(io, path, [](std::istream& s) { return from_edge_list(s); });
  if (need_edges && !g.has_edges()) throw located_error(path, "graph has no edges");
  return g;
}

inline void write_matrix(std::ostream& os, const DenseMatrix& m, const std::string& format) {
  if (format == "json")
    write_json(os, m);
  else
    write_csv(os, m);
}

inline int finish(Io& io, const ConvergenceReport& r) {
  io.err << "iterations=" << r.iterations << " residual=" << format_real(r.residual)
         << " stop_reason=" << to_string(r.stop_reason) << '\n';
  if (r.converged()) return exit_ok;
  io.err << "warning: iteration did not converge; result is the last iterate\n";
  return exit_not_converged;
}

struct IterFlags {
  double tol = default_tolerance;
  std::size_t max_iters = default_max_applications;
  bool no_fast_path = false;

  void add_to(CLI::App* cmd, bool fast_path_flag) {
    cmd->add_option("--tol", tol, "Convergence tolerance on successive even iterates")
        ->check(CLI::Range(0.0, 1.0).description("in (0, 1)"));
    cmd->add_option("--max-iters", max_iters, "Maximum number of operator applications");
    if (fast_path_flag) cmd->add_flag("--no-fast-path", no_fast_path, "Always run the generic iteration");
  }

  IterationConfig config() const {
    IterationConfig c;
    c.tolerance = tol;
    c.max_operator_applications = max_iters;
    c.use_fast_paths = !no_fast_path;
    c.validate();
    return c;
  }
};

}  // namespace detail

// Runs one command line (args excludes the program name). Results go to
// `out`; diagnostics and convergence reports go to `err`.
inline int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vertex similarity between directed graphs"};
  app.name("graphsim");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  detail::IterFlags it;
  std::string graph_a, graph_b, graph, dict, word, format = "csv";
  std::size_t top = 0, left = 0, right = 0;
  const auto format_check = CLI::IsMember({"csv", "json"});

  auto* sim = app.add_subcommand("similarity", "Similarity matrix between two graphs");
  sim->add_option("--graph-a", graph_a, "Structure graph edge list ('-' for stdin)")->required();
  sim->add_option("--graph-b", graph_b, "Second graph edge list ('-' for stdin)")->required();
  sim->add_option("--format", format)->check(format_check);
  it.add_to(sim, true);

  auto* self = app.add_subcommand("self-similarity", "Self-similarity matrix of a graph");
  self->add_option("--graph", graph, "Edge list ('-' for stdin)")->required();
  self->add_option("--format", format)->check(format_check);
  it.add_to(self, true);

  auto* hits = app.add_subcommand("hub-authority", "Hub and authority scores");
  hits->add_option("--graph", graph, "Edge list ('-' for stdin)")->required();
  it.add_to(hits, false);

  auto* central = app.add_subcommand("central", "Central scores (similarity to the middle of 1->2->3)");
  central->add_option("--graph", graph, "Edge list ('-' for stdin)")->required();
  it.add_to(central, false);

  auto* support = app.add_subcommand("support", "Predicted nonzero pattern of the similarity matrix");
  support->add_option("--graph-a", graph_a)->required();
  support->add_option("--graph-b", graph_b)->required();

  auto* syn = app.add_subcommand("synonyms", "Rank synonym candidates of a dictionary word");
  syn->add_option("--dict", dict, "Dictionary file: headword<TAB>tokens per line")->required();
  syn->add_option("--word", word, "Query headword")->required();
  syn->add_option("--top", top, "Print only the first K entries (0 = all)");
  it.add_to(syn, false);

  auto* bowtie = app.add_subcommand("bowtie", "Emit a directed bow-tie edge list (center = vertex 0)");
  bowtie->add_option("--left", left, "Vertices pointing to the center")->required();
  bowtie->add_option("--right", right, "Vertices the center points to")->required();

  auto* inspect = app.add_subcommand("inspect", "Degrees, regularity, normality and components");
  inspect->add_option("--graph", graph, "Edge list ('-' for stdin)")->required();

  auto* oracle = app.add_subcommand("oracle", "Dense Kronecker eigen-projection reference (n_A*n_B <= 400)");
  oracle->add_option("--graph-a", graph_a)->required();
  oracle->add_option("--graph-b", graph_b)->required();
  oracle->add_option("--format", format)->check(format_check);

  std::vector<const char*> argv{"graphsim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input_error;
  }

  detail::Io io{in, out, err};
  try {
    if (*sim) {
      const auto ga = detail::read_graph(io, graph_a);
      const auto gb = detail::read_graph(io, graph_b);
      const auto s = similarity_matrix(ga, gb, it.config());
      detail::write_matrix(out, s.scores, format);
      return detail::finish(io, s.report);
    }
    if (*self) {
      const auto g = detail::read_graph(io, graph);
      const auto s = self_similarity(g, it.config());
      detail::write_matrix(out, s.scores, format);
      return detail::finish(io, s.report);
    }
    if (*hits) {
      const auto g = detail::read_graph(io, graph);
      const auto ha = hub_authority_scores(g, it.config());
      out << "vertex\thub\tauthority\n";
      for (std::size_t v = 0; v < g.vertex_count(); ++v)
        out << g.label(v) << '\t' << format_real(ha.hub.values[v]) << '\t'
            << format_real(ha.authority.values[v]) << '\n';
      return detail::finish(io, merge(ha.hub.report, ha.authority.report));
    }
    if (*central) {
      const auto g = detail::read_graph(io, graph);
      const auto c = central_scores(g, it.config());
      out << "vertex\tcentral\n";
      for (std::size_t v = 0; v < g.vertex_count(); ++v)
        out << g.label(v) << '\t' << format_real(c.values[v]) << '\n';
      return detail::finish(io, c.report);
    }
    if (*support) {
      const auto ga = detail::read_graph(io, graph_a, false);
      const auto gb = detail::read_graph(io, graph_b, false);
      const auto p = support_pattern(ga, gb);
      for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < p.cols(); ++j) out << (j ? "," : "") << (p(i, j) ? 1 : 0);
        out << '\n';
      }
      return exit_ok;
    }
    if (*syn) {
      const auto d = detail::read_input(io, dict, [](std::istream& s) { return build_dictionary_graph(s); });
      const auto r = rank_synonyms(d, word, it.config());
      write_ranking_tsv(out, r, top);
      return detail::finish(io, r.report);
    }
    if (*bowtie) {
      write_edge_list(out, bowtie_graph(left, right));
      return exit_ok;
    }
    if (*inspect) {
      const auto g = detail::read_graph(io, graph, false);
      out << "vertices\t" << g.vertex_count() << '\n'
          << "edges\t" << g.edge_count() << '\n'
          << "total_weight\t" << format_real(g.total_weight()) << '\n'
          << "regular\t" << (g.vertex_count() > 0 && is_regular(g) ? "yes" : "no") << '\n'
          << "normal\t" << (is_normal(g) ? "yes" : "no") << '\n'
          << "symmetric\t" << (g.is_symmetric() ? "yes" : "no") << '\n'
          << "weak_components\t" << weakly_connected_components(g).size() << '\n';
      const auto deg = degrees(g);
      out << "vertex\tin_degree\tout_degree\n";
      for (std::size_t v = 0; v < g.vertex_count(); ++v)
        out << g.label(v) << '\t' << format_real(deg.in[v]) << '\t' << format_real(deg.out[v]) << '\n';
      return exit_ok;
    }
    if (*oracle) {
      const auto ga = detail::read_graph(io, graph_a);
      const auto gb = detail::read_graph(io, graph_b);
      const auto k = kronecker_operator(ga, gb);
      const auto s = dense_projection_oracle(k, DenseMatrix::ones(gb.vertex_count(), ga.vertex_count()));
      detail::write_matrix(out, s, format);
      err << "spectral_radius=" << format_real(spectral_radius(k)) << " one_norm=" << format_real(one_norm(s))
          << '\n';
      return exit_ok;
    }
  } catch (const input_error& e) {
    err << "graphsim: error: " << e.what() << '\n';
    return exit_input_error;
  }
  return exit_input_error;
}

}  // namespace graphsim::cli
