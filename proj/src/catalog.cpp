#include "arrowpoly/catalog.hpp"

#include <chrono>

#include "arrowpoly/analysis.hpp"
#include "arrowpoly/state.hpp"

namespace arrowpoly {

namespace {

std::vector<CatalogEntry> make_entries() {
  std::vector<CatalogEntry> entries;

  // Classical controls. Their arrow polynomials carry no K variables and
  // equal the plain Kauffman bracket.
  entries.push_back(CatalogEntry{
      "unknot",
      "X(1,2,2,1)",
      "-A^-3",
      "1",
      {0},
      0,
      EntryStatus::Required,
      "one-crossing kink diagram of the unknot",
  });
  entries.push_back(CatalogEntry{
      "trefoil",
      "X(3,1,4,6); X(1,5,2,4); X(5,3,6,2)",
      "A^-7 - A^-3 - A^5",
      "-A^-16 + A^-12 + A^-4",
      {0},
      0,
      EntryStatus::Required,
      "right-handed trefoil, writhe 3",
  });
  entries.push_back(CatalogEntry{
      "figure_eight",
      "X(8,4,1,3); X(6,1,7,2); X(4,8,5,7); X(2,5,3,6)",
      "A^-8 - A^-4 + 1 - A^4 + A^8",
      "A^-8 - A^-4 + 1 - A^4 + A^8",
      {0},
      0,
      EntryStatus::Required,
      "figure-eight knot from the braid closure of (s1 s2^-1)^2",
  });
  entries.push_back(CatalogEntry{
      "classical_hopf",
      "X(3,1,4,2); X(2,4,1,3)",
      "-A^-4 - A^4",
      "-A^2 - A^10",
      {0},
      0,
      EntryStatus::Required,
      "negative Hopf link",
  });

  // Virtual examples with published polynomials.
  entries.push_back(CatalogEntry{
      "virtual_hopf",
      "X(3,1,4,2); V(1,3,2,4)",
      "A^-1 + A*K1",
      "-A^2 - A^4*K1",
      {0, 1},
      1,
      EntryStatus::Required,
      "one classical and one virtual crossing, two components",
  });
  entries.push_back(CatalogEntry{
      "virtualized_trefoil",
      "X(3,1,4,6); X(1,5,2,4); X(5,2,6,3)",
      "-A^-5 + A^-5*K1^2 - A^3*K1^2",
      "A^-8 - A^-8*K1^2 + K1^2",
      {0, 2},
      2,
      EntryStatus::Required,
      "trefoil with one crossing virtualized, writhe 1",
  });
  entries.push_back(CatalogEntry{
      "kishino",
      "X(8,3,1,2); X(3,1,4,2); X(6,5,7,4); X(5,7,6,8)",
      "A^-4 + 1 + A^4 - A^-4*K1^2 - 2*K1^2 - A^4*K1^2 + 2*K2",
      "A^-4 + 1 + A^4 - A^-4*K1^2 - 2*K1^2 - A^4*K1^2 + 2*K2",
      {0, 2},
      2,
      EntryStatus::Required,
      "Kishino's knot: connected sum of two trivial pieces, writhe 0",
  });

  entries.push_back(CatalogEntry{
      "knot_4_93",
      "X(3,8,4,1); X(5,2,6,1); X(2,6,3,7); X(4,7,5,8)",
      std::nullopt,
      "A^8 + A^6*K1 + K1^2 - A^8*K1^2 - A^6*K1*K2 - A^10*K1*K2 + A^10*K3",
      {0, 1, 2, 3},
      3,
      EntryStatus::BestEffort,
      "4-crossing virtual knot 4.93, writhe -2",
  });
  entries.push_back(CatalogEntry{
      "knot_4_103",
      "X(3,8,4,1); X(1,6,2,5); X(6,2,7,3); X(4,7,5,8)",
      std::nullopt,
      "A^8 + A^10*K1 + K1^2 - A^8*K1^2 - A^6*K1*K2 - A^10*K1*K2 + A^6*K3",
      {0, 1, 2, 3},
      3,
      EntryStatus::BestEffort,
      "4-crossing virtual knot 4.103, writhe -2; equal to 4.93 under K_n -> t",
  });

  entries.push_back(CatalogEntry{
      "torus_link_lhs",
      "X(8,1,5,4); X(1,6,2,5); X(6,3,7,2); V(3,8,4,7)",
      "A^3 + A^-7*K1 - A^-3*K1 + A*K1",
      std::nullopt,
      {0, 1},
      1,
      EntryStatus::BestEffort,
      "oriented virtual torus link, left-hand orientation",
  });
  entries.push_back(CatalogEntry{
      "torus_link_rhs",
      "X(8,1,5,2); X(4,5,1,6); X(6,3,7,4); V(3,8,2,7)",
      "A^-7 - A^-3 + A + A^3*K1",
      std::nullopt,
      {0, 1},
      1,
      EntryStatus::BestEffort,
      "same link with one component reversed; the pair must differ",
  });

  return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = make_entries();
  return entries;
}

const CatalogEntry* find_entry(const std::string& name) {
  for (const CatalogEntry& e : catalog_entries()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

VerifyResult verify_entry(const std::string& name) {
  const CatalogEntry* entry = find_entry(name);
  if (entry == nullptr) throw std::out_of_range("unknown catalog entry: " + name);

  VerifyResult result;
  result.name = name;

  const auto start = std::chrono::steady_clock::now();
  const Diagram d = parse_pd(entry->pd_text);
  ComputeResult& r = result.computed;
  r.writhe = d.writhe();
  r.unnormalized = arrow_bracket(d);
  r.normalized = normalize(r.unnormalized, r.writhe);
  r.profile = analyze(r.unnormalized);
  r.state_count = std::uint64_t{1} << d.classical_count();
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();

  auto diff = [&](const std::string& field, const std::string& expected,
                  const std::string& got) {
    if (expected != got) {
      result.diffs.push_back(field + ": expected " + expected + ", got " + got);
    }
  };
  if (entry->expected_unnormalized) {
    diff("unnormalized", *entry->expected_unnormalized,
         render_polynomial(r.unnormalized));
  }
  if (entry->expected_normalized) {
    diff("normalized", *entry->expected_normalized, render_polynomial(r.normalized));
  }
  if (entry->expected_as_set != r.profile.as_set) {
    auto render_set = [](const std::set<int>& s) {
      std::string out = "{";
      for (int v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
      return out + "}";
    };
    diff("as_set", render_set(entry->expected_as_set), render_set(r.profile.as_set));
  }
  if (entry->expected_vcn_bound != r.profile.vcn_lower_bound) {
    diff("vcn_lower_bound", std::to_string(entry->expected_vcn_bound),
         std::to_string(r.profile.vcn_lower_bound));
  }
  result.pass = result.diffs.empty();
  return result;
}

}  // namespace arrowpoly
