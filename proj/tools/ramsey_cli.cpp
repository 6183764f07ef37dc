// ramsey: check, extend, decrement, enumerate, fetch, and verify-chain for
// Ramsey counterexample sets stored as graph6 files.
//
// Exit codes: 0 success (check: all true), 1 check found a non-member,
// 2 parse/usage error, 3 oracle budget refusal, 4 network failure,
// 5 archive count/validation mismatch.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ramsey/archive.hpp"
#include "ramsey/engine.hpp"
#include "ramsey/graph.hpp"
#include "ramsey/iso.hpp"
#include "ramsey/oracle.hpp"
#include "ramsey/set.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace ramsey;

struct Options {
  int s = 3;
  int t = 3;
  std::string mode = "psi";
  std::string hash = "triangles";
  int workers = 1;
  std::uint64_t budget = kDefaultOracleBudget;
  std::string archive_url;
  std::string out;
  std::string stats = "text";
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--s", o.s, "Clique threshold s")
      ->required()
      ->check(CLI::Range(2, 64))
      ->envname("RAMSEY_S");
  cmd->add_option("--t", o.t, "Independent-set threshold t")
      ->required()
      ->check(CLI::Range(2, 64))
      ->envname("RAMSEY_T");
  cmd->add_option("--hash", o.hash, "Invariant hash scheme")
      ->check(CLI::IsMember({"degree", "triangles", "k3profile"}))
      ->envname("RAMSEY_HASH")
      ->capture_default_str();
  cmd->add_option("--workers", o.workers, "Worker threads")
      ->check(CLI::Range(1, 1024))
      ->envname("RAMSEY_WORKERS")
      ->capture_default_str();
  cmd->add_option("--stats", o.stats, "Statistics format on stderr")
      ->check(CLI::IsMember({"text", "structured"}))
      ->envname("RAMSEY_STATS")
      ->capture_default_str();
}

void add_mode(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.mode, "Extension algorithm")
      ->check(CLI::IsMember({"highlevel", "psi"}))
      ->envname("RAMSEY_MODE")
      ->capture_default_str();
}

ExtendMode parse_mode(const Options& o) {
  return o.mode == "highlevel" ? ExtendMode::highlevel : ExtendMode::psi;
}

// Stats go to stderr so graph6 output on stdout stays machine-consumable.
void emit_stats(const Options& o, const json& record) {
  if (o.stats == "structured") {
    std::cerr << record.dump() << '\n';
    return;
  }
  for (const auto& [key, value] : record.items()) {
    if (value.is_string())
      std::cerr << key << '=' << value.get<std::string>() << '\n';
    else
      std::cerr << key << '=' << value.dump() << '\n';
  }
}

json stats_record(const char* command, const Options& o) {
  return json{{"command", command}, {"s", o.s}, {"t", o.t},
              {"hash", o.hash},     {"workers", o.workers}};
}

void merge_extension_stats(json& rec, const ExtensionStats& st) {
  rec["candidates_examined"] = st.candidates_examined;
  rec["candidate_bound"] = st.candidate_bound;
  rec["bound_satisfied"] = st.bound_satisfied();
  rec["pair_candidates"] = st.pair_candidates;
  rec["psi_keys"] = st.psi_keys;
  rec["psi_entries"] = st.psi_entries;
  rec["iso_calls"] = st.iso_calls;
  rec["max_bucket"] = st.max_bucket;
  rec["counterexamples_found"] = st.counterexamples_found;
  rec["wall_time_s"] = st.wall_time.count();
}

CounterexampleSet load_set(const Options& o, const std::string& path) {
  std::vector<Graph> graphs = read_graph6_file(path);
  if (graphs.empty()) throw std::invalid_argument(path + ": no graphs");
  int order = graphs.front().n;
  return build_set({o.s, o.t}, order, std::move(graphs),
                   hash_scheme_from_string(o.hash).value(), /*oracle_check=*/true);
}

void emit_graphs(const std::string& out, std::vector<Graph> graphs) {
  graphs = sorted_by_graph6(std::move(graphs));
  if (out.empty()) {
    for (const Graph& g : graphs) std::cout << graph6_encode(g) << '\n';
  } else {
    write_graph6_file(out, graphs);
  }
}

int run_check(const Options& o, const std::string& candidate_path,
              const std::string& set_path) {
  CounterexampleSet src = load_set(o, set_path);
  std::vector<Graph> candidates = read_graph6_file(candidate_path);
  if (candidates.empty()) throw std::invalid_argument(candidate_path + ": no graphs");
  for (const Graph& g : candidates)
    if (g.n != src.order + 1)
      throw std::invalid_argument(candidate_path + ": candidate " + graph6_encode(g) +
                                  " has order " + std::to_string(g.n) +
                                  ", expected " + std::to_string(src.order + 1));
  std::size_t iso_calls = 0;
  std::size_t trues = 0;
  for (const Graph& g : candidates) {
    bool ok = check_candidate(g, src, &iso_calls);
    trues += ok;
    std::cout << graph6_encode(g) << ' ' << (ok ? "true" : "false") << '\n';
  }
  json rec = stats_record("check", o);
  rec["set_classes"] = src.size();
  rec["checked"] = candidates.size();
  rec["true"] = trues;
  rec["false"] = candidates.size() - trues;
  rec["iso_calls"] = iso_calls;
  rec["max_bucket"] = src.max_bucket_size();
  emit_stats(o, rec);
  return trues == candidates.size() ? 0 : 1;
}

int run_extend(const Options& o, const std::string& set_path) {
  CounterexampleSet src = load_set(o, set_path);
  ExtensionResult r = extend_set(src, parse_mode(o), o.workers);
  emit_graphs(o.out, r.set.members);
  json rec = stats_record("extend", o);
  rec["mode"] = o.mode;
  rec["source_classes"] = src.size();
  rec["source_order"] = src.order;
  merge_extension_stats(rec, r.stats);
  emit_stats(o, rec);
  return 0;
}

int run_decrement(const Options& o, const std::string& set_path) {
  CounterexampleSet src = load_set(o, set_path);
  if (src.order < 2)
    throw std::invalid_argument("cannot decrement an order-" +
                                std::to_string(src.order) + " set");
  CounterexampleSet dec = decrement_set(src);
  emit_graphs(o.out, dec.members);
  json rec = stats_record("decrement", o);
  rec["source_classes"] = src.size();
  rec["source_order"] = src.order;
  rec["classes"] = dec.size();
  emit_stats(o, rec);
  return 0;
}

int run_enumerate(const Options& o, int n) {
  std::vector<Graph> classes =
      enumerate_counterexamples({o.s, o.t}, n, o.budget, o.workers);
  emit_graphs(o.out, classes);
  json rec = stats_record("enumerate", o);
  rec["n"] = n;
  rec["budget"] = o.budget;
  rec["classes"] = classes.size();
  emit_stats(o, rec);
  return 0;
}

int run_fetch(const Options& o) {
  std::string cache_dir = o.out.empty() ? "archives" : o.out;
  FetchResult r = fetch_archive({o.s, o.t}, o.archive_url, cache_dir);
  std::cout << r.cached_path.string() << '\n';
  json rec = stats_record("fetch", o);
  rec["url"] = o.archive_url;
  rec["order"] = r.info.order;
  rec["downloaded_graphs"] = r.raw_lines.size();
  rec["classes"] = r.graphs.size();
  rec["cached"] = r.cached_path.string();
  emit_stats(o, rec);
  return 0;
}

int run_chain(const Options& o, const std::string& set_path, int target) {
  CounterexampleSet start = load_set(o, set_path);
  std::vector<CounterexampleSet> sets;
  ChainReport report = verify_chain(start, target, parse_mode(o), o.workers,
                                    o.out.empty() ? nullptr : &sets);
  for (const ChainStep& step : report.steps)
    std::cout << "n=" << step.order << ": " << step.classes << '\n';
  if (!o.out.empty()) write_graph6_file(o.out, sorted_by_graph6(sets.back().members));
  for (const ChainStep& step : report.steps) {
    if (!step.extended) continue;
    json rec = stats_record("verify-chain", o);
    rec["mode"] = o.mode;
    rec["order"] = step.order;
    rec["classes"] = step.classes;
    merge_extension_stats(rec, step.stats);
    emit_stats(o, rec);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramsey counterexample-set toolbox"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read defaults from an INI/TOML file");

  Options o;
  std::string candidate_path, set_path;
  int n = 0, target = 0;

  CLI::App* check = app.add_subcommand(
      "check", "Check order-(n+1) candidates against an order-n set");
  check->add_option("candidates", candidate_path, "graph6 file of candidates")->required();
  check->add_option("set", set_path, "graph6 file of the order-n set")->required();
  add_common(check, o);

  CLI::App* extend = app.add_subcommand(
      "extend", "One-vertex extension of a counterexample set");
  extend->add_option("set", set_path, "graph6 file of the source set")->required();
  extend->add_option("--out", o.out, "Output file (default: stdout)");
  add_common(extend, o);
  add_mode(extend, o);

  CLI::App* decrement = app.add_subcommand(
      "decrement", "All single-vertex deletions, deduplicated");
  decrement->add_option("set", set_path, "graph6 file of the source set")->required();
  decrement->add_option("--out", o.out, "Output file (default: stdout)");
  add_common(decrement, o);

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "Brute-force all counterexample classes of order n");
  enumerate->add_option("n", n, "Graph order")->required()->check(CLI::Range(1, 64));
  enumerate->add_option("--out", o.out, "Output file (default: stdout)");
  enumerate->add_option("--budget", o.budget, "Max labeled graphs to scan")
      ->envname("RAMSEY_BUDGET")
      ->capture_default_str();
  add_common(enumerate, o);

  CLI::App* fetch = app.add_subcommand(
      "fetch", "Download, validate, and cache a published archive");
  fetch->add_option("--archive-url", o.archive_url, "Archive URL (file:// or http://)")
      ->required()
      ->envname("RAMSEY_ARCHIVE_URL");
  fetch->add_option("--out", o.out, "Cache directory (default: archives)");
  add_common(fetch, o);

  CLI::App* chain = app.add_subcommand(
      "verify-chain", "Repeatedly extend and report classes per order");
  chain->add_option("set", set_path, "graph6 file of the starting set")->required();
  chain->add_option("--target", target, "Target order")->required()->check(CLI::Range(2, 64));
  chain->add_option("--out", o.out, "Write the final reached set here");
  add_common(chain, o);
  add_mode(chain, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // parse/usage errors map to 2; --help stays 0
  }

  try {
    if (*check) return run_check(o, candidate_path, set_path);
    if (*extend) return run_extend(o, set_path);
    if (*decrement) return run_decrement(o, set_path);
    if (*enumerate) return run_enumerate(o, n);
    if (*fetch) return run_fetch(o);
    if (*chain) return run_chain(o, set_path, target);
  } catch (const FetchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
