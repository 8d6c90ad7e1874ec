// tempcc: controlling centrality, tree bounds and experiment tables for temporal networks.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "tempcc/tempcc.hpp"

namespace fs = std::filesystem;
using namespace tempcc;

namespace {

constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

struct Options {
  std::string input;
  std::string synth;
  std::string node;
  bool all = false;
  std::uint64_t prime = kDefaultPrime;
  unsigned trials = 3;
  std::uint64_t seed = 1;
  std::string out;
  unsigned workers = 0;
  std::uint64_t window = 1;
  bool raw_times = false;
  bool dump_tog = false;
  bool dump_wstar = false;
  bool removed = false;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

SynthConfig parse_synth(const std::string& text, std::uint64_t seed) {
  std::istringstream in(text);
  SynthConfig c;
  char comma1 = 0, comma2 = 0;
  if (!(in >> c.nodes >> comma1 >> c.probability >> comma2 >> c.horizon) || comma1 != ',' || comma2 != ',' ||
      !(in >> std::ws).eof()) {
    throw UsageError("--synth expects N,p,T, got '" + text + "'");
  }
  c.seed = seed;
  c.validate();
  return c;
}

TemporalNetwork load_network(const Options& o) {
  if (o.input.empty() == o.synth.empty()) throw UsageError("exactly one of --input or --synth is required");
  if (!o.synth.empty()) return generate(parse_synth(o.synth, o.seed));
  std::ifstream in(o.input);
  if (!in) throw std::runtime_error("cannot open " + o.input);
  return parse_contact_list(in, ParseOptions{o.window, !o.raw_times});
}

std::vector<NodeId> selected_nodes(const TemporalNetwork& net, const Options& o) {
  if (!o.node.empty()) return {net.node_id(o.node)};
  std::vector<NodeId> nodes(net.node_count());
  for (NodeId i = 0; i < nodes.size(); ++i) nodes[i] = i;
  return nodes;
}

AnalysisOptions analysis_options(const Options& o) {
  AnalysisOptions a;
  a.centrality.prime = PrimeField(o.prime).modulus();
  a.centrality.trials = o.trials;
  a.centrality.master_seed = o.seed;
  a.workers = o.workers ? o.workers : std::max(1u, std::thread::hardware_concurrency());
  return a;
}

/// Writes `name` under --out, or to stdout without --out.
template <typename Fn>
void emit(const Options& o, const std::string& name, Fn&& write) {
  if (o.out.empty()) {
    write(std::cout);
    return;
  }
  fs::create_directories(o.out);
  const fs::path path = fs::path(o.out) / name;
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  write(file);
  if (!file) throw std::runtime_error("write failed for " + path.string());
}

void write_bounds_csv(std::span<const BoundsReport> rows, const TemporalNetwork& net, std::ostream& out) {
  out << "node,lower,upper,het_lower,het_upper,hom_lower,hom_upper\n";
  for (const auto& r : rows) {
    out << net.label(r.node) << ',' << r.lower << ',' << r.upper << ',' << r.het_lower << ',' << r.het_upper << ','
        << r.hom_lower << ',' << r.hom_upper << '\n';
  }
}

void write_dumps(const TemporalNetwork& net, const Options& o) {
  if (!o.dump_tog && !o.dump_wstar) return;
  if (o.node.empty()) throw UsageError("--dump-tog and --dump-wstar need --node");
  const NodeId node = net.node_id(o.node);
  if (o.dump_tog) {
    emit(o, "tog_" + o.node + ".csv", [&](std::ostream& out) { write_tog_edges(build_tog(net, node), net, out); });
  }
  if (o.dump_wstar) {
    const PrimeField field(o.prime);
    const auto assignment = FieldAssignment::random(net, field, trial_seed(o.seed, node, 0));
    emit(o, "wstar_" + o.node + ".csv",
         [&](std::ostream& out) { write_w_star_pattern(assemble_w_star(net, node, assignment), net, out); });
  }
}

/// Diagnostic plus taxonomy for every node outside its bounds; returns the count.
std::size_t report_violations(const TemporalNetwork& net, std::span<const NodeAnalysis> rows) {
  std::size_t count = 0;
  for (const auto& r : rows) {
    if (r.sandwiched()) continue;
    ++count;
    std::cerr << "sandwich violation at node " << net.label(r.node) << ": lower " << r.lower << ", S_M "
              << r.centrality << ", upper " << r.upper << '\n';
    const auto trees = extract_trees(net, r.node);
    write_taxonomy(classify(trees), trees, std::cerr);
  }
  return count;
}

void require_contacts(const TemporalNetwork& net) {
  if (net.event_count() == 0) throw std::runtime_error("dataset has no contacts");
}

int run(const std::string& command, const Options& o) {
  if (o.trials < 1) throw UsageError("--trials must be at least 1");
  if (o.all && !o.node.empty()) throw UsageError("--node and --all are mutually exclusive");
  const TemporalNetwork net = load_network(o);
  write_dumps(net, o);

  if (command == "synth") {
    emit(o, "contacts.tsv", [&](std::ostream& out) { write_contact_list(net, out); });
    return 0;
  }
  if (command == "bounds") {
    std::vector<BoundsReport> rows;
    for (NodeId v : selected_nodes(net, o)) rows.push_back(controller_bounds(net, v));
    emit(o, "bounds.csv", [&](std::ostream& out) { write_bounds_csv(rows, net, out); });
    if (!o.node.empty()) {
      const auto trees = extract_trees(net, rows.front().node);
      emit(o, "taxonomy_" + o.node + ".csv", [&](std::ostream& out) { write_taxonomy(classify(trees), trees, out); });
    }
    return 0;
  }

  const auto options = analysis_options(o);
  if (command == "fig6" || command == "fig7") require_contacts(net);
  const auto nodes = command == "centrality" ? selected_nodes(net, o) : selected_nodes(net, Options{});
  auto rows = analyze_nodes(net, nodes, options);

  if (command == "centrality") {
    emit(o, "centrality.csv", [&](std::ostream& out) { write_centrality_csv(rows, net, out); });
  } else if (command == "fig5") {
    emit(o, "fig5.csv", [&](std::ostream& out) { write_fig5_csv(rows, net, out); });
  } else if (command == "fig6") {
    emit(o, "fig6.csv", [&](std::ostream& out) { write_fig6_csv(rows, net, out); });
  } else if (command == "fig7") {
    if (o.removed) {
      const auto reduced = remove_most_powerful(net, rows);
      const auto reduced_rows = analyze_all(reduced, options);
      emit(o, "fig7_removed.csv", [&](std::ostream& out) { write_fig7_csv(reduced_rows, out); });
      std::cerr << "spearman(degree, centrality) after removal: " << degree_centrality_correlation(reduced_rows)
                << '\n';
    } else {
      emit(o, "fig7.csv", [&](std::ostream& out) { write_fig7_csv(rows, out); });
      std::cerr << "spearman(degree, centrality): " << degree_centrality_correlation(rows) << '\n';
    }
  } else if (command == "fig8") {
    emit(o, "fig8.csv", [&](std::ostream& out) { write_fig8_csv(rows, out); });
  }
  return report_violations(net, rows) > 0 ? kExitViolation : 0;
}

void add_common(CLI::App* sub, Options& o) {
  auto* input = sub->add_option("--input", o.input, "contact list: one 't u v' contact per line");
  auto* synth = sub->add_option("--synth", o.synth, "synthetic network N,p,T");
  input->excludes(synth);
  sub->add_option("--prime", o.prime, "field modulus for generic ranks");
  sub->add_option("--trials", o.trials, "random assignments per controller")->default_val(3);
  sub->add_option("--seed", o.seed, "master seed for the generator and assignments")->default_val(1);
  sub->add_option("--out", o.out, "output directory (stdout when absent)");
  sub->add_option("--workers", o.workers, "worker threads (0 = hardware concurrency)");
  sub->add_option("--window", o.window, "raw timestamps per snapshot")->check(CLI::PositiveNumber);
  sub->add_flag("--raw-times", o.raw_times, "use t / window as the snapshot index instead of renumbering");
  sub->add_option("--node", o.node, "controller node label");
  sub->add_flag("--all", o.all, "every node (default)");
  sub->add_flag("--dump-tog", o.dump_tog, "write the time-ordered graph of --node");
  sub->add_flag("--dump-wstar", o.dump_wstar, "write the W* zero pattern of --node");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlling centrality and tree bounds for temporal networks"};
  app.require_subcommand(1);
  Options options;
  std::string command;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"synth", "generate a random temporal network and write its contact list"},
      {"centrality", "S_M, bounds and aggregated degree per node"},
      {"bounds", "tree-taxonomy bounds per node"},
      {"fig5", "calculated centrality against the bounds"},
      {"fig6", "bound gap against aggregated degree"},
      {"fig7", "mean centrality per aggregated degree"},
      {"fig8", "centrality histogram"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, options);
    if (name == "fig7") sub->add_flag("--removed", options.removed, "drop the max-centrality nodes first");
    sub->callback([&command, name = name] { command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }
  try {
    return run(command, options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
