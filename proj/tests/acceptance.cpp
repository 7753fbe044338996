// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails.
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "arrowpoly/analysis.hpp"
#include "arrowpoly/catalog.hpp"
#include "arrowpoly/codec.hpp"
#include "arrowpoly/moves.hpp"
#include "arrowpoly/state.hpp"
#include "support/classical_bracket.hpp"
#include "support/word_oracle.hpp"

using namespace arrowpoly;
using namespace arrowpoly::testing;

namespace {

int failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string description)
      : number_(number),
        description_(std::move(description)),
        start_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& detail = "") {
    if (!ok) {
      pass_ = false;
      if (!detail.empty()) details_.push_back(detail);
    }
  }

  ~Criterion() {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    std::printf("%s criterion %d: %s (%.2fs)\n", pass_ ? "PASS" : "FAIL",
                number_, description_.c_str(), seconds);
    for (const std::string& d : details_) std::printf("       %s\n", d.c_str());
    if (!pass_) ++failures;
  }

 private:
  int number_;
  std::string description_;
  bool pass_ = true;
  std::vector<std::string> details_;
  std::chrono::steady_clock::time_point start_;
};

Polynomial normalized_bracket(const Diagram& d) {
  return normalize(arrow_bracket(d), d.writhe());
}

void check_entry(Criterion& c, const std::string& name) {
  try {
    const VerifyResult r = verify_entry(name);
    c.check(r.pass, name + (r.diffs.empty() ? "" : ": " + r.diffs[0]));
  } catch (const std::exception& e) {
    c.check(false, name + ": " + e.what());
  }
}

void criterion_1_required_goldens() {
  Criterion c(1, "golden examples: virtual Hopf, virtualized trefoil, Kishino");
  for (const char* name : {"virtual_hopf", "virtualized_trefoil", "kishino"}) {
    check_entry(c, name);
  }
  const Diagram vh = parse_pd(find_entry("virtual_hopf")->pd_text);
  c.check(render_polynomial(normalized_bracket(vh)) == "-A^2 - A^4*K1",
          "virtual Hopf normalized form");
  c.check(as_set(arrow_bracket(vh)) == std::set<int>{0, 1}, "AS(VH) = {0,1}");

  const Diagram vt = parse_pd(find_entry("virtualized_trefoil")->pd_text);
  const Polynomial expected_vt =
      normalize(Polynomial(Monomial{-5, {}}, -1) +
                    Polynomial(Monomial{-5, {1, 1}}, 1) +
                    Polynomial(Monomial{3, {1, 1}}, -1),
                vt.writhe());
  c.check(normalized_bracket(vt) == expected_vt,
          "virtualized trefoil equals -A^-3(-A^-5 + K1^2 A^-5 - K1^2 A^3)");
  c.check(as_set(arrow_bracket(vt)) == std::set<int>{0, 2}, "AS(VT) = {0,2}");

  const Diagram kishino = parse_pd(find_entry("kishino")->pd_text);
  const Polynomial expected_kishino = d_power(2) - Polynomial(1) -
                                      d_power(2) * Polynomial::k_var(1) *
                                          Polynomial::k_var(1) +
                                      Polynomial::k_var(2, 2);
  c.check(normalized_bracket(kishino) == expected_kishino,
          "Kishino equals d^2 - 1 - d^2 K1^2 + 2 K2");
  c.check(as_set(arrow_bracket(kishino)) == std::set<int>{0, 2},
          "AS(Kishino) = {0,2}");
}

void criterion_2_best_effort_goldens() {
  Criterion c(2, "best-effort golden examples from published figures");
  for (const char* name : {"miyazawa", "knot_4_93", "knot_4_103",
                           "torus_link_lhs", "torus_link_rhs",
                           "flat_six_positive", "t3", "slavik"}) {
    check_entry(c, name);
  }

  const Diagram k93 = parse_pd(find_entry("knot_4_93")->pd_text);
  const Diagram k103 = parse_pd(find_entry("knot_4_103")->pd_text);
  c.check(k93.writhe() == -2 && k103.writhe() == -2, "4.93/4.103 writhe -2");
  auto fold = [](const Polynomial& p) {
    Polynomial out;
    for (const auto& [m, coeff] : p.terms()) {
      out.add_term(Monomial{m.a_power, std::vector<int>(m.k_indices.size(), 1)},
                   coeff);
    }
    return out;
  };
  const Polynomial p93 = normalized_bracket(k93);
  const Polynomial p103 = normalized_bracket(k103);
  c.check(p93 != p103, "4.93 and 4.103 differ");
  c.check(fold(p93) == fold(p103), "4.93 = 4.103 under K_n -> t");

  const Polynomial lhs = arrow_bracket(parse_pd(find_entry("torus_link_lhs")->pd_text));
  const Polynomial rhs = arrow_bracket(parse_pd(find_entry("torus_link_rhs")->pd_text));
  c.check(lhs != rhs, "oriented torus links differ");

  if (const CatalogEntry* flat6 = find_entry("flat_six_positive")) {
    const Polynomial p = arrow_bracket(parse_pd(flat6->pd_text));
    c.check(vcn_lower_bound(p) == 6, "flat six: vcn lower bound 6");
  } else {
    c.check(false, "flat_six_positive entry missing");
  }
  if (const CatalogEntry* t3 = find_entry("t3")) {
    bool has_k3 = false;
    for (const auto& [m, coeff] : arrow_bracket(parse_pd(t3->pd_text)).terms()) {
      for (int k : m.k_indices) has_k3 = has_k3 || k == 3;
    }
    c.check(has_k3, "T3 contains a K3 term");
  } else {
    c.check(false, "t3 entry missing");
  }
  if (const CatalogEntry* slavik = find_entry("slavik")) {
    const Polynomial p = normalized_bracket(parse_pd(slavik->pd_text));
    bool k_free = true;
    for (const auto& [m, coeff] : p.terms()) k_free = k_free && m.k_indices.empty();
    c.check(k_free, "slavik: normalized polynomial is K-free");
  } else {
    c.check(false, "slavik entry missing");
  }
}

void criterion_3_classical_controls() {
  Criterion c(3, "classical controls: AS {0} and Kauffman bracket oracle");
  for (const char* name : {"unknot", "trefoil", "figure_eight", "classical_hopf"}) {
    const Diagram d = parse_pd(find_entry(name)->pd_text);
    const Polynomial arrow = arrow_bracket(d);
    c.check(as_set(arrow) == std::set<int>{0}, std::string(name) + ": AS formula");
    c.check(arrow == classical_bracket(d), std::string(name) + ": oracle equality");
    c.check(normalized_bracket(d) == classical_bracket_normalized(d),
            std::string(name) + ": normalized oracle equality");
  }
}

void criterion_4_move_invariance() {
  Criterion c(4, "invariance under 200 seeded random move sequences per diagram");
  for (const char* name :
       {"virtual_hopf", "virtualized_trefoil", "kishino", "trefoil"}) {
    const Diagram base = parse_pd(find_entry(name)->pd_text);
    const Polynomial expected = normalized_bracket(base);
    const std::set<int> expected_as = as_set(expected);
    bool ok = true;
    for (std::uint64_t seed = 0; seed < 200 && ok; ++seed) {
      const int n_moves = 1 + static_cast<int>(seed % 8);
      const Diagram moved = random_equivalent(base, n_moves, seed);
      const Polynomial p = normalized_bracket(moved);
      if (p != expected || as_set(p) != expected_as) {
        ok = false;
        c.check(false, std::string(name) + " seed " + std::to_string(seed));
      }
    }
    c.check(ok, std::string(name) + ": all seeds");
  }
}

void criterion_5_oracle_equivalence() {
  Criterion c(5, "labeled arrow numbers and c-pair sums agree on all states");
  for (const char* name : {"unknot", "trefoil", "figure_eight", "classical_hopf",
                           "virtual_hopf", "virtualized_trefoil", "kishino"}) {
    const Diagram d = parse_pd(find_entry(name)->pd_text);
    bool ok = true;
    for_each_state(d, [&](std::uint64_t, const StateEvaluation& s) {
      const int loops = s.loop_count();
      std::vector<int> reduced;
      for (const LoopWord& w : s.loops) reduced.push_back(reduce_cusp_word(w));
      for (std::uint64_t lab = 0; lab < (std::uint64_t{1} << loops); ++lab) {
        std::vector<int> bits(loops);
        for (int i = 0; i < loops; ++i) bits[i] = (lab >> i) & 1;
        const std::vector<int> al = labeled_arrow_numbers(s, bits);
        int al_sum = 0;
        int abs_sum = 0;
        int reduced_sum = 0;
        for (int i = 0; i < loops; ++i) {
          al_sum += al[i];
          abs_sum += std::abs(al[i]);
          reduced_sum += reduced[i];
          if (std::abs(al[i]) != reduced[i]) ok = false;
        }
        if (abs_sum != reduced_sum) ok = false;
        if (cpair_linking(s, bits) != al_sum) ok = false;
      }
    });
    c.check(ok, std::string(name) + ": state scan");
  }
}

void criterion_6_confluence() {
  Criterion c(6, "cusp word reduction is confluent on 10^4 random cyclic words");
  std::mt19937_64 rng(20240801);
  int checked = 0;
  bool ok = true;
  while (checked < 10000 && ok) {
    const auto word = random_cyclic_word(20, rng);
    const int reduced = reduce_cusp_word(word);
    if (word.size() <= 12) {
      const auto terminals = exhaustive_reduction_lengths(word);
      if (terminals.size() != 1 || *terminals.begin() != 2 * reduced) ok = false;
    } else {
      for (int trial = 0; trial < 10; ++trial) {
        if (random_strategy_reduce(word, rng) != 2 * reduced) ok = false;
      }
    }
    ++checked;
  }
  c.check(ok, "confluence scan");
  c.check(checked == 10000, "word count");
}

void criterion_7_realization_independence() {
  Criterion c(7, "two deterministic Gauss wirings give identical brackets");
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const std::string code = random_gauss_code(n, rng);
    const Polynomial a =
        arrow_bracket(parse_gauss(code, GaussWiring::CodeOrder));
    const Polynomial b =
        arrow_bracket(parse_gauss(code, GaussWiring::ReversedInsertion));
    if (!(a == b)) c.check(false, "code: " + code);
  }
}

// Flip the over/under of one classical site in place: the old over-entry
// slot becomes the new slot 0.
Diagram flip_crossings(const Diagram& base, const std::vector<int>& flips) {
  Diagram::Builder b;
  std::vector<SiteRef> classical_map;
  auto flipped = [&](int i) {
    return std::find(flips.begin(), flips.end(), i) != flips.end();
  };
  for (int i = 0; i < base.classical_count(); ++i) {
    const int eta = base.classical(i).over_entry_slot;
    classical_map.push_back(b.add_classical(flipped(i) ? 4 - eta : eta));
  }
  for (int i = 0; i < base.virtual_count(); ++i) b.add_virtual();
  auto remap = [&](const Port& p) {
    if (p.site.kind != SiteKind::Classical || !flipped(p.site.index)) {
      return Port{p.site.kind == SiteKind::Classical
                      ? classical_map[p.site.index]
                      : p.site,
                  p.slot};
    }
    const int eta = base.classical(p.site.index).over_entry_slot;
    return Port{classical_map[p.site.index], (p.slot + (4 - eta)) % 4};
  };
  for (const Edge& e : base.edges()) {
    if (e.is_free_loop()) {
      b.add_free_loop(e.id);
    } else {
      b.add_edge(e.id, remap(*e.tail), remap(*e.head));
    }
  }
  return std::move(b).build();
}

void criterion_8_flat_specialization() {
  Criterion c(8, "flat specialization ignores the over/under realization");
  const CatalogEntry* flat6 = find_entry("flat_six_positive");
  if (flat6 == nullptr) {
    c.check(false, "flat_six_positive entry missing");
    return;
  }
  const Diagram base = parse_pd(flat6->pd_text);
  const Polynomial reference = substitute_flat(arrow_bracket(base));
  c.check(!reference.is_zero(), "flat image nonzero");
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<int> flips;
    for (int i = 0; i < base.classical_count(); ++i) {
      if (rng() % 2) flips.push_back(i);
    }
    const Diagram realized = flip_crossings(base, flips);
    const Polynomial flat = substitute_flat(arrow_bracket(realized));
    if (!(flat == reference)) c.check(false, "realization " + std::to_string(trial));
  }
}

}  // namespace

int main() {
  criterion_1_required_goldens();
  criterion_2_best_effort_goldens();
  criterion_3_classical_controls();
  criterion_4_move_invariance();
  criterion_5_oracle_equivalence();
  criterion_6_confluence();
  criterion_7_realization_independence();
  criterion_8_flat_specialization();
  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", failures);
  return 1;
}
