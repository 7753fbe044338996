#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "arrowpoly/analysis.hpp"
#include "arrowpoly/catalog.hpp"
#include "arrowpoly/codec.hpp"
#include "arrowpoly/moves.hpp"
#include "arrowpoly/state.hpp"

namespace {

using namespace arrowpoly;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  return text;
}

Diagram parse_input(const std::string& text, const std::string& format) {
  if (format == "gauss") return parse_gauss(text);
  return parse_pd(text);
}

ComputeResult compute(const Diagram& d, int max_crossings) {
  const auto start = std::chrono::steady_clock::now();
  ComputeResult r;
  r.writhe = d.writhe();
  r.unnormalized = arrow_bracket(d, BracketOptions{max_crossings, 0});
  r.normalized = normalize(r.unnormalized, r.writhe);
  r.profile = analyze(r.unnormalized);
  r.state_count = std::uint64_t{1} << d.classical_count();
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

// Exhaustive cross-check of the labeled-arrow-number and c-pair identities
// over every state; labelings are enumerated fully up to 2^20 per state.
bool run_state_oracles(const Diagram& d, std::uint64_t& states_checked) {
  bool ok = true;
  states_checked = 0;
  for_each_state(d, [&](std::uint64_t, const StateEvaluation& s) {
    ++states_checked;
    const int loops = s.loop_count();
    std::vector<int> reduced;
    for (const LoopWord& w : s.loops) reduced.push_back(reduce_cusp_word(w));
    const int labeling_bits = std::min(loops, 20);
    for (std::uint64_t lab = 0; lab < (std::uint64_t{1} << labeling_bits); ++lab) {
      std::vector<int> bits(loops, 0);
      for (int i = 0; i < labeling_bits; ++i) bits[i] = (lab >> i) & 1;
      const std::vector<int> al = labeled_arrow_numbers(s, bits);
      int al_sum = 0;
      for (int i = 0; i < loops; ++i) {
        if (std::abs(al[i]) != reduced[i]) ok = false;
        al_sum += al[i];
      }
      if (cpair_linking(s, bits) != al_sum) ok = false;
    }
  });
  return ok;
}

int cmd_compute(const std::string& file, const std::string& format,
                const std::string& output, bool flat, bool oracle,
                int max_crossings) {
  const std::string text = read_file(file);
  const Diagram d = parse_input(text, format);
  const ComputeResult r = compute(d, max_crossings);
  if (output == "json") {
    std::cout << emit_report(text, r) << "\n";
  } else {
    std::cout << render_report_text(text, r);
  }
  if (flat) {
    std::cout << "flat: " << render_polynomial(substitute_flat(r.unnormalized))
              << "\n";
  }
  if (oracle) {
    std::uint64_t states = 0;
    const bool ok = run_state_oracles(d, states);
    std::cout << "oracle: " << (ok ? "all " : "MISMATCH in ") << states
              << " states agree\n";
    if (!ok) return kExitVerifyFailure;
  }
  return kExitOk;
}

int cmd_catalog_verify(const std::string& name, bool all) {
  std::vector<std::string> names;
  if (all) {
    for (const CatalogEntry& e : catalog_entries()) names.push_back(e.name);
  } else {
    names.push_back(name);
  }
  bool pass = true;
  for (const std::string& n : names) {
    const VerifyResult r = verify_entry(n);
    std::cout << (r.pass ? "PASS " : "FAIL ") << n << "\n";
    for (const std::string& diff : r.diffs) std::cout << "  " << diff << "\n";
    pass = pass && r.pass;
  }
  return pass ? kExitOk : kExitVerifyFailure;
}

int cmd_fuzz(const std::string& file, const std::string& format, int n_moves,
             std::uint64_t seed, int max_crossings) {
  const std::string text = read_file(file);
  const Diagram d = parse_input(text, format);
  const Polynomial base =
      normalize(arrow_bracket(d, {max_crossings, 0}), d.writhe());
  const auto base_as = as_set(base);
  FuzzLimits limits;
  limits.max_classical = std::min(max_crossings, limits.max_classical);
  const Diagram moved = random_equivalent(d, n_moves, seed, limits);
  const Polynomial after =
      normalize(arrow_bracket(moved, {max_crossings, 0}), moved.writhe());
  std::cout << "moves: " << n_moves << " seed: " << seed
            << " crossings: " << d.classical_count() << " -> "
            << moved.classical_count() << "\n";
  if (after == base && as_set(after) == base_as) {
    std::cout << "invariant: normalized polynomial and AS set unchanged\n";
    return kExitOk;
  }
  std::cout << "INVARIANCE FAILURE\n";
  std::cout << "before: " << render_polynomial(base) << "\n";
  std::cout << "after:  " << render_polynomial(after) << "\n";
  return kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arrow polynomial calculator for virtual knots and links"};
  app.require_subcommand(1);

  std::string file, format = "pd", output = "text", name;
  bool flat = false, oracle = false, all = false;
  int max_crossings = 24, n_moves = 8;
  std::uint64_t seed = 1;

  CLI::App* compute_cmd =
      app.add_subcommand("compute", "compute invariants for a diagram file");
  compute_cmd->add_option("file", file, "input file")->required();
  compute_cmd->add_option("--format", format, "input format: pd or gauss")
      ->check(CLI::IsMember({"pd", "gauss"}));
  compute_cmd->add_option("--output", output, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  compute_cmd->add_flag("--flat", flat, "also print the A=1 specialization");
  compute_cmd->add_flag("--oracle", oracle,
                        "cross-check arrow numbers and c-pairs over all states");
  compute_cmd->add_option("--max-crossings", max_crossings,
                          "classical crossing cap for the state sum");

  CLI::App* catalog_cmd = app.add_subcommand("catalog", "built-in examples");
  CLI::App* verify_cmd =
      catalog_cmd->add_subcommand("verify", "recompute and check golden values");
  verify_cmd->add_option("name", name, "entry name");
  verify_cmd->add_flag("--all", all, "verify every entry");

  CLI::App* fuzz_cmd =
      app.add_subcommand("fuzz", "apply random moves and check invariance");
  fuzz_cmd->add_option("file", file, "input file")->required();
  fuzz_cmd->add_option("--format", format, "input format: pd or gauss")
      ->check(CLI::IsMember({"pd", "gauss"}));
  fuzz_cmd->add_option("--moves", n_moves, "number of moves");
  fuzz_cmd->add_option("--seed", seed, "random seed");
  fuzz_cmd->add_option("--max-crossings", max_crossings,
                       "classical crossing cap for the state sum");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(compute_cmd)) {
      return cmd_compute(file, format, output, flat, oracle, max_crossings);
    }
    if (app.got_subcommand(catalog_cmd)) {
      if (!verify_cmd->parsed()) {
        std::cerr << "catalog requires the 'verify' subcommand\n";
        return kExitInputError;
      }
      if (!all && name.empty()) {
        std::cerr << "catalog verify needs a name or --all\n";
        return kExitInputError;
      }
      return cmd_catalog_verify(name, all);
    }
    if (app.got_subcommand(fuzz_cmd)) {
      return cmd_fuzz(file, format, n_moves, seed, max_crossings);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const BracketLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
