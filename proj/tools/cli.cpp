#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <sstream>

#include "mobagent/report.hpp"

namespace mobagent {

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

const std::map<std::string, IdMode> kIdModes{{"sequential", IdMode::sequential},
                                             {"random", IdMode::random}};
const std::map<std::string, DiameterMode> kDiameterModes{{"exact", DiameterMode::exact},
                                                         {"n", DiameterMode::node_count}};
const std::map<std::string, LccFormula> kLccFormulas{{"paper", LccFormula::paper},
                                                     {"standard", LccFormula::standard}};
const std::map<std::string, ProtocolKind> kProtocols{
    {"neighbors", ProtocolKind::neighbors},   {"triangles", ProtocolKind::triangles},
    {"truss", ProtocolKind::truss},           {"centrality", ProtocolKind::centrality},
    {"lcc", ProtocolKind::lcc}};

// Shared by run and oracle.
struct GraphFlags {
  std::string graph;
  std::string gen;
  std::optional<std::uint64_t> ports;
};

void add_graph_flags(CLI::App* cmd, GraphFlags& flags) {
  auto* graph = cmd->add_option("--graph", flags.graph, "edge-list file");
  auto* gen = cmd->add_option("--gen", flags.gen, "generator spec, e.g. gnp:16:0.3:seed=7");
  graph->excludes(gen);
  cmd->add_option("--ports", flags.ports, "shuffle ports with this seed");
}

void apply_graph_flags(const GraphFlags& flags, RunConfig& config) {
  if (flags.graph.empty() == flags.gen.empty()) {
    throw ConfigError("exactly one of --graph and --gen is required");
  }
  if (!flags.graph.empty()) config.graph_path = flags.graph;
  if (!flags.gen.empty()) config.generator = flags.gen;
  config.port_seed = flags.ports;
}

// Inclusive range "a:b" or a single value.
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text, const char* flag) {
  try {
    const auto colon = text.find(':');
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const std::uint64_t v = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string a = text.substr(0, colon);
    const std::string b = text.substr(colon + 1);
    const std::uint64_t lo = std::stoull(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const std::uint64_t hi = std::stoull(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    if (lo > hi) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ConfigError(std::string("bad range for ") + flag + ": '" + text + "'");
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + path);
  file << text;
  if (!file) throw ConfigError("failed writing " + path);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"mobile-agent triangle and truss simulator"};
  app.require_subcommand(1);

  // run
  GraphFlags run_graph;
  RunConfig run_config;
  std::string run_out;
  std::string run_trace;
  auto* run = app.add_subcommand("run", "simulate one protocol and check it against the oracle");
  add_graph_flags(run, run_graph);
  run->add_option("--protocol", run_config.protocol, "neighbors|triangles|truss|centrality|lcc")
      ->transform(CLI::CheckedTransformer(kProtocols, CLI::ignore_case))
      ->required();
  run->add_option("--ids", run_config.ids, "sequential|random")
      ->transform(CLI::CheckedTransformer(kIdModes, CLI::ignore_case));
  run->add_option("--id-seed", run_config.id_seed);
  run->add_option("--id-exponent", run_config.id_exponent, "random IDs are drawn from [0, n^c]")
      ->check(CLI::Range(1u, 6u));
  run->add_option("--diameter", run_config.diameter, "exact|n")
      ->transform(CLI::CheckedTransformer(kDiameterModes, CLI::ignore_case));
  run->add_option("--lcc", run_config.lcc, "paper|standard")
      ->transform(CLI::CheckedTransformer(kLccFormulas, CLI::ignore_case));
  run->add_option("--known-total", run_config.known_total, "give centrality T(G) up front");
  run->add_option("--order-seed", run_config.order_seed, "shuffle agent stepping order");
  run->add_option("--out", run_out, "report path, default stdout");
  run->add_option("--trace", run_trace, "per-move trace path");

  // oracle
  GraphFlags oracle_graph;
  RunConfig oracle_config;
  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle", "print centralized reference values");
  add_graph_flags(oracle, oracle_graph);
  oracle->add_option("--ids", oracle_config.ids)
      ->transform(CLI::CheckedTransformer(kIdModes, CLI::ignore_case));
  oracle->add_option("--id-seed", oracle_config.id_seed);
  oracle->add_option("--lcc", oracle_config.lcc)
      ->transform(CLI::CheckedTransformer(kLccFormulas, CLI::ignore_case));
  oracle->add_option("--out", oracle_out);

  // sweep
  SweepSpec sweep_spec;
  std::string family = "gnp";
  std::string sizes = "8:16";
  std::string seeds = "1:10";
  std::vector<ProtocolKind> sweep_protocols;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "run protocols over a generated corpus");
  sweep->add_option("--family", family, "complete|cycle|path|star|petersen|diamond|gnp");
  sweep->add_option("--n", sizes, "node counts, a:b inclusive");
  sweep->add_option("--p", sweep_spec.edge_probability, "gnp edge probability")
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--seeds", seeds, "gnp seeds, a:b inclusive");
  sweep->add_option("--ports", sweep_spec.port_seed);
  sweep->add_option("--ids", sweep_spec.ids)
      ->transform(CLI::CheckedTransformer(kIdModes, CLI::ignore_case));
  sweep->add_option("--id-seed", sweep_spec.id_seed);
  sweep->add_option("--diameter", sweep_spec.diameter)
      ->transform(CLI::CheckedTransformer(kDiameterModes, CLI::ignore_case));
  sweep->add_option("--protocol", sweep_protocols, "repeatable; default all")
      ->transform(CLI::CheckedTransformer(kProtocols, CLI::ignore_case));
  sweep->add_option("--out", sweep_out);

  // gen
  std::string gen_spec;
  std::optional<std::uint64_t> gen_ports;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write a generated graph as an edge list");
  gen->add_option("--gen", gen_spec, "generator spec")->required();
  gen->add_option("--ports", gen_ports);
  gen->add_option("--out", gen_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (run->parsed()) {
      apply_graph_flags(run_graph, run_config);
      std::ofstream trace_file;
      std::ostream* trace = nullptr;
      if (!run_trace.empty()) {
        trace_file.open(run_trace, std::ios::binary);
        if (!trace_file) throw ConfigError("cannot write " + run_trace);
        trace = &trace_file;
      }
      const RunReport report = build_run_report(run_config, trace);
      emit(render(report.document), run_out, out);
      return report.pass ? kPass : kFail;
    }
    if (oracle->parsed()) {
      apply_graph_flags(oracle_graph, oracle_config);
      emit(render(build_oracle_report(oracle_config)), oracle_out, out);
      return kPass;
    }
    if (sweep->parsed()) {
      try {
        sweep_spec.family = parse_graph_model(family);
      } catch (const std::exception&) {
        throw ConfigError("unknown family '" + family + "'");
      }
      std::tie(sweep_spec.min_size, sweep_spec.max_size) = parse_range(sizes, "--n");
      std::tie(sweep_spec.first_seed, sweep_spec.last_seed) = parse_range(seeds, "--seeds");
      if (!sweep_protocols.empty()) sweep_spec.protocols = sweep_protocols;
      const RunReport report = run_sweep(sweep_spec);
      emit(render(report.document), sweep_out, out);
      return report.pass ? kPass : kFail;
    }
    if (gen->parsed()) {
      GeneratorConfig config;
      try {
        config = parse_generator_spec(gen_spec);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
      if (gen_ports) config.port_seed = gen_ports;
      PortGraph graph = [&] {
        try {
          return generate(config);
        } catch (const GraphError& e) {
          throw ConfigError(e.what());
        }
      }();
      emit(serialize_graph(graph), gen_out, out);
      return kPass;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace mobagent
