// hsparse: command-line front end for the hypergraph sparsification library.
//
// Exit codes: 0 success / verification passed, 2 verification failed,
// 1 any error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypersparse/balancing.hpp"
#include "hypersparse/core.hpp"
#include "hypersparse/generate.hpp"
#include "hypersparse/io.hpp"
#include "hypersparse/potential.hpp"
#include "hypersparse/sampling.hpp"
#include "hypersparse/verify.hpp"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFailed = 2;

hsp::Hypergraph load(const std::string& path) {
  auto parsed = hsp::parse(hsp::read_file(path));
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << '\n';
  return std::move(parsed.hypergraph);
}

json manifest_to_json(const hsp::SeparatedManifest& m) {
  return json{{"alpha", m.alpha},
              {"beta", m.beta},
              {"classes", m.partition.classes}};
}

hsp::SeparatedManifest manifest_from_json(const json& j) {
  hsp::SeparatedManifest m;
  m.alpha = j.at("alpha").get<double>();
  m.beta = j.at("beta").get<double>();
  m.partition.classes =
      j.at("classes").get<std::vector<std::vector<std::size_t>>>();
  return m;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    hsp::write_file(path, text);
  }
}

struct GenArgs {
  std::string model = "uniform-random";
  hsp::GeneratorOptions options;
  std::string out;
  std::string manifest;
};

int run_gen(const GenArgs& a) {
  hsp::GeneratorOptions o = a.options;
  o.model = hsp::parse_model(a.model);
  const auto inst = hsp::generate(o);
  emit(a.out, hsp::serialize(inst.hypergraph,
                             {" model=" + a.model + " seed=" + std::to_string(o.seed)}));
  if (inst.manifest) {
    const std::string text = manifest_to_json(*inst.manifest).dump(2) + "\n";
    if (!a.manifest.empty()) {
      hsp::write_file(a.manifest, text);
    } else if (!a.out.empty() && a.out != "-") {
      hsp::write_file(a.out + ".partition.json", text);
    }
  }
  return kExitOk;
}

struct BalanceArgs {
  std::string input;
  std::string mode = "approx";
  hsp::BalanceParams params;
  std::string partition;
  double alpha = 0.0;
  double beta = 0.0;
  std::string out;
  bool json = false;
};

int run_balance(BalanceArgs a) {
  const hsp::Hypergraph h = load(a.input);
  const double n = static_cast<double>(h.num_vertices());
  if (a.params.eta == 0.0 && a.mode != "exact") a.params.eta = 1.0 / (n * n);

  hsp::BalanceResult result = [&] {
    if (a.mode == "exact") return hsp::greedy_balance(h, a.params);
    if (a.mode == "approx") return hsp::greedy_approx_balance(h, a.params);
    if (a.mode == "separated") {
      if (a.partition.empty()) {
        throw hsp::InputError("--mode separated requires --partition");
      }
      auto m = manifest_from_json(json::parse(hsp::read_file(a.partition)));
      if (a.alpha > 0.0) m.alpha = a.alpha;
      if (a.beta > 0.0) m.beta = a.beta;
      return hsp::separated_approx_balance(h, m.partition, m.alpha, m.beta,
                                           a.params);
    }
    throw hsp::InputError("unknown balance mode '" + a.mode + "'");
  }();

  const double gamma =
      a.mode == "separated" ? 2.0 * a.params.gamma : a.params.gamma;
  const double eta = a.mode == "exact" ? 0.0 : a.params.eta;
  const hsp::Verdict verdict = hsp::check_assignment(result.assignment, gamma, eta);

  if (!a.out.empty()) {
    std::string text = "# hyperedge u v weight\n";
    const auto& wa = result.assignment;
    for (std::size_t e = 0; e < wa.hypergraph().num_edges(); ++e) {
      for (std::size_t f : wa.slots(e)) {
        const auto& edge = wa.graph().edge(f);
        text += std::to_string(e) + ' ' + std::to_string(edge.u) + ' ' +
                std::to_string(edge.v) + ' ' + hsp::format_double(edge.weight) +
                '\n';
      }
    }
    emit(a.out, text);
  }

  if (a.json) {
    json j{{"mode", a.mode},
           {"gamma", gamma},
           {"eta", eta},
           {"rounds", result.rounds},
           {"round_cap", result.round_cap},
           {"psi_initial", result.psi_initial},
           {"psi_final", result.psi_final},
           {"pass", verdict.pass}};
    if (verdict.worst) j["worst_ratio"] = verdict.worst->ratio();
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "mode = " << a.mode << "\nrounds = " << result.rounds
              << "\nround_cap = " << result.round_cap
              << "\npsi_initial = " << result.psi_initial
              << "\npsi_final = " << result.psi_final
              << "\nbalanced = " << (verdict.pass ? "true" : "false") << '\n';
  }
  return verdict.pass ? kExitOk : kExitFailed;
}

struct SparsifyArgs {
  std::string input;
  hsp::SamplingConfig cfg;
  std::string pipeline = "full";
  std::string out;
  bool json = false;
};

int run_sparsify(const SparsifyArgs& a) {
  const hsp::Hypergraph h = load(a.input);
  hsp::SparsifierOutput result;
  if (a.pipeline == "full") {
    result = hsp::fast_sparsify(h, a.cfg);
  } else if (a.pipeline == "importance") {
    result = hsp::balanced_importance_sparsify(h, a.cfg);
  } else if (a.pipeline == "poly") {
    result = hsp::poly_size_sparsify(h, a.cfg.eps, a.cfg);
  } else {
    throw hsp::InputError("unknown pipeline '" + a.pipeline + "'");
  }

  emit(a.out, hsp::serialize(result.sparsifier,
                             {" pipeline=" + a.pipeline +
                              " eps=" + hsp::format_double(a.cfg.eps) +
                              " seed=" + std::to_string(a.cfg.seed)}));
  std::ostream& log = (a.out.empty() || a.out == "-") ? std::cerr : std::cout;
  if (a.json) {
    json stages = json::array();
    for (const auto& s : result.stages) {
      stages.push_back({{"name", s.name},
                        {"input_edges", s.input_edges},
                        {"expected_size", s.expected_size},
                        {"kept", s.kept}});
    }
    log << json{{"pipeline", a.pipeline},
                {"input_edges", h.num_edges()},
                {"output_edges", result.sparsifier.num_edges()},
                {"expected_size", result.expected_size()},
                {"seed", result.seed},
                {"stages", stages}}
               .dump()
        << '\n';
  } else {
    log << "input_edges = " << h.num_edges()
        << "\noutput_edges = " << result.sparsifier.num_edges()
        << "\nexpected_size = " << result.expected_size() << '\n';
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string original;
  std::string sparse;
  double eps = 0.5;
  std::size_t probes = 600;
  bool cuts = false;
  std::uint64_t seed = 0;
  bool json = false;
};

int run_verify(const VerifyArgs& a) {
  const hsp::Hypergraph h = load(a.original);
  const hsp::Hypergraph s = load(a.sparse);
  hsp::ProbeOptions opts;
  opts.gaussian = a.probes / 3;
  opts.rademacher = a.probes / 3;
  opts.two_sparse = a.probes - 2 * (a.probes / 3);
  opts.cuts_max_n = a.cuts ? hsp::kMaxCutVertices : 0;
  const auto report = hsp::probe_check(h, s, a.eps, opts, a.seed);
  if (a.json) {
    std::cout << json{{"worst_over", report.worst_over()},
                      {"worst_under", report.worst_under()},
                      {"probes", report.probes},
                      {"cuts", report.cuts},
                      {"pass", report.pass},
                      {"seed", report.seed}}
                     .dump()
              << '\n';
  } else {
    std::cout << hsp::to_text(report);
  }
  return report.pass ? kExitOk : kExitFailed;
}

int run_stats(const std::string& input, bool as_json) {
  const hsp::Hypergraph h = load(input);
  const auto diag = hsp::validate(h);
  const bool connected = !diag.disconnected;
  if (as_json) {
    std::cout << json{{"n", h.num_vertices()},
                      {"m", h.num_edges()},
                      {"rank", h.rank()},
                      {"total_size", h.total_size()},
                      {"total_weight", h.total_weight()},
                      {"min_weight", h.num_edges() ? h.min_weight() : 0.0},
                      {"max_weight", h.max_weight()},
                      {"connected", connected}}
                     .dump()
              << '\n';
  } else {
    std::cout << "n = " << h.num_vertices() << "\nm = " << h.num_edges()
              << "\nrank = " << h.rank() << "\ntotal_size = " << h.total_size()
              << "\ntotal_weight = " << h.total_weight()
              << "\nconnected = " << (connected ? "true" : "false") << '\n';
    for (const auto& w : diag.warnings) std::cout << "warning: " << w << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral sparsification of weighted hypergraphs"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random connected hypergraph");
  gen_cmd->add_option("--model", gen.model,
                      "uniform-random | planted-clique-union | "
                      "path-plus-hyperedges | separated-weights");
  gen_cmd->add_option("--n", gen.options.n, "Vertex count")->required();
  gen_cmd->add_option("--m", gen.options.m, "Hyperedge count")->required();
  gen_cmd->add_option("--rank", gen.options.rank, "Maximum hyperedge size");
  gen_cmd->add_option("--seed", gen.options.seed, "Random seed");
  gen_cmd->add_option("--classes", gen.options.classes, "Weight classes (separated-weights)");
  gen_cmd->add_option("--alpha", gen.options.alpha, "Class spread bound (default n^10)");
  gen_cmd->add_option("--beta", gen.options.beta, "Class gap (default n^10)");
  gen_cmd->add_option("-o,--out", gen.out, "Output .hmtx path (default stdout)");
  gen_cmd->add_option("--manifest", gen.manifest, "Partition manifest path (JSON)");

  BalanceArgs bal;
  auto* bal_cmd = app.add_subcommand("balance", "Compute a balanced weight assignment");
  bal_cmd->add_option("input", bal.input, "Input .hmtx")->required();
  bal_cmd->add_option("--mode", bal.mode, "exact | approx | separated");
  bal_cmd->add_option("--gamma", bal.params.gamma, "Balance ratio");
  bal_cmd->add_option("--eta", bal.params.eta, "Approximation threshold (default 1/n^2)");
  bal_cmd->add_option("--max-rounds", bal.params.max_rounds, "Round cap (0 = default)");
  bal_cmd->add_option("--rebuild-cadence", bal.params.rebuild_cadence,
                      "Rank-one updates between oracle rebuilds (0 = n)");
  bal_cmd->add_option("--partition", bal.partition, "Partition manifest (JSON)");
  bal_cmd->add_option("--alpha", bal.alpha, "Override manifest alpha");
  bal_cmd->add_option("--beta", bal.beta, "Override manifest beta");
  bal_cmd->add_option("-o,--out", bal.out, "Write the assignment here");
  bal_cmd->add_flag("--json", bal.json, "Machine-readable report");

  SparsifyArgs sp;
  auto* sp_cmd = app.add_subcommand("sparsify", "Build a spectral sparsifier");
  sp_cmd->add_option("input", sp.input, "Input .hmtx")->required();
  sp_cmd->add_option("--eps", sp.cfg.eps, "Target approximation");
  sp_cmd->add_option("--lambda-scale", sp.cfg.lambda_scale, "Oversampling multiplier");
  sp_cmd->add_option("--c", sp.cfg.c, "Pre-sparsifier rate constant");
  sp_cmd->add_option("--gamma", sp.cfg.gamma, "Balance ratio");
  sp_cmd->add_option("--seed", sp.cfg.seed, "Random seed");
  sp_cmd->add_option("--pipeline", sp.pipeline, "full | importance | poly");
  sp_cmd->add_option("-o,--out", sp.out, "Output .hmtx path (default stdout)");
  sp_cmd->add_flag("--json", sp.json, "Machine-readable summary");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Check a sparsifier against its source");
  ver_cmd->add_option("original", ver.original, "Original .hmtx")->required();
  ver_cmd->add_option("sparsifier", ver.sparse, "Sparsifier .hmtx")->required();
  ver_cmd->add_option("--eps", ver.eps, "Accepted ratio band 1 +/- eps");
  ver_cmd->add_option("--probes", ver.probes, "Random probes (split over three families)");
  ver_cmd->add_flag("--cuts", ver.cuts, "Also enumerate all cuts (n <= 20)");
  ver_cmd->add_option("--seed", ver.seed, "Probe seed");
  ver_cmd->add_flag("--json", ver.json, "Machine-readable report");

  std::string stats_input;
  bool stats_json = false;
  auto* st_cmd = app.add_subcommand("stats", "Summarize a hypergraph");
  st_cmd->add_option("input", stats_input, "Input .hmtx")->required();
  st_cmd->add_flag("--json", stats_json, "Machine-readable summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*bal_cmd) return run_balance(bal);
    if (*sp_cmd) return run_sparsify(sp);
    if (*ver_cmd) return run_verify(ver);
    if (*st_cmd) return run_stats(stats_input, stats_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
