#include "arrowpoly/state.hpp"

#include <doctest.h>

#include <random>

#include "arrowpoly/analysis.hpp"
#include "arrowpoly/codec.hpp"
#include "support/builders.hpp"
#include "support/classical_bracket.hpp"
#include "support/word_oracle.hpp"

using namespace arrowpoly;
using namespace arrowpoly::testing;

namespace {

LoopWord word_of(std::initializer_list<CuspSide> sides) {
  LoopWord w;
  int site = 0;
  for (CuspSide s : sides) w.marks.push_back(CuspMark{site++ / 2, s});
  return w;
}

constexpr CuspSide L = CuspSide::L;
constexpr CuspSide R = CuspSide::R;

}  // namespace

TEST_CASE("smoothing_arcs coefficients and pairings") {
  const ClassicalSite positive{3};
  const ClassicalSite negative{1};

  const SmoothingArcs pos_oriented = smoothing_arcs(positive, Smoothing::Oriented);
  CHECK(pos_oriented.carries_a);
  CHECK_FALSE(pos_oriented.cusped);
  CHECK(pos_oriented.exit_slot == std::array<int, 4>{1, 0, 3, 2});

  const SmoothingArcs pos_dis = smoothing_arcs(positive, Smoothing::Disoriented);
  CHECK_FALSE(pos_dis.carries_a);
  CHECK(pos_dis.cusped);
  CHECK(pos_dis.exit_slot == std::array<int, 4>{3, 2, 1, 0});
  CHECK(pos_dis.in_arc_slots == std::array<int, 2>{0, 3});

  const SmoothingArcs neg_oriented = smoothing_arcs(negative, Smoothing::Oriented);
  CHECK_FALSE(neg_oriented.carries_a);
  CHECK_FALSE(neg_oriented.cusped);
  CHECK(neg_oriented.exit_slot == std::array<int, 4>{3, 2, 1, 0});

  const SmoothingArcs neg_dis = smoothing_arcs(negative, Smoothing::Disoriented);
  CHECK(neg_dis.carries_a);
  CHECK(neg_dis.cusped);
  CHECK(neg_dis.exit_slot == std::array<int, 4>{1, 0, 3, 2});
  CHECK(neg_dis.in_arc_slots == std::array<int, 2>{0, 1});
}

TEST_CASE("trace_state on the virtual Hopf") {
  const Diagram d = parse_pd(kVirtualHopfPd);  // negative crossing

  SUBCASE("oriented: one loop, empty word, contributes A^-1") {
    const std::vector<Smoothing> choice{Smoothing::Oriented};
    const StateEvaluation s = trace_state(d, choice);
    CHECK(s.alpha == 0);
    CHECK(s.beta == 1);
    REQUIRE(s.loop_count() == 1);
    CHECK(s.loops[0].marks.empty());
    CHECK(render_polynomial(evaluate_state(s)) == "A^-1");
  }

  SUBCASE("disoriented: one loop, word LR, contributes A*K1") {
    const std::vector<Smoothing> choice{Smoothing::Disoriented};
    const StateEvaluation s = trace_state(d, choice);
    CHECK(s.alpha == 1);
    CHECK(s.beta == 0);
    REQUIRE(s.loop_count() == 1);
    REQUIRE(s.loops[0].marks.size() == 2);
    CHECK(s.loops[0].marks[0].side != s.loops[0].marks[1].side);
    CHECK(reduce_cusp_word(s.loops[0]) == 1);
    CHECK(render_polynomial(evaluate_state(s)) == "A*K1");
  }
}

TEST_CASE("trace_state on the classical Hopf: mixed state cancels") {
  const Diagram d = parse_gauss("O1- U2- | U1- O2-");
  REQUIRE(d.classical_count() == 2);
  const std::vector<Smoothing> choice{Smoothing::Disoriented, Smoothing::Oriented};
  const StateEvaluation s = trace_state(d, choice);
  REQUIRE(s.loop_count() == 1);
  REQUIRE(s.loops[0].marks.size() == 2);
  CHECK(s.loops[0].marks[0].side == s.loops[0].marks[1].side);
  CHECK(reduce_cusp_word(s.loops[0]) == 0);
}

TEST_CASE("reduce_cusp_word") {
  CHECK(reduce_cusp_word(word_of({L, L})) == 0);
  CHECK(reduce_cusp_word(word_of({L, R})) == 1);
  CHECK(reduce_cusp_word(word_of({L, R, L, R})) == 2);
  CHECK(reduce_cusp_word(word_of({L, L, R, R})) == 0);
  CHECK(reduce_cusp_word(word_of({})) == 0);
  CHECK(reduce_cusp_word(word_of({R, L, L, R})) == 0);
  CHECK_THROWS_AS(reduce_cusp_word(word_of({L})), std::logic_error);
}

TEST_CASE("reduce_cusp_word agrees with exhaustive reduction") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const auto word = random_cyclic_word(12, rng);
    const auto terminals = exhaustive_reduction_lengths(word);
    REQUIRE(terminals.size() == 1);
    CHECK(2 * reduce_cusp_word(word) == *terminals.begin());
  }
}

TEST_CASE("evaluate_state direct substitutions") {
  StateEvaluation s;
  s.alpha = 1;
  s.beta = 0;
  s.loops.push_back(LoopWord{});
  CHECK(render_polynomial(evaluate_state(s)) == "A");

  StateEvaluation t;
  t.alpha = 0;
  t.beta = 1;
  t.loops.push_back(LoopWord{});
  t.loops.push_back(word_of({L, R}));
  CHECK(render_polynomial(evaluate_state(t)) == "-A^-3*K1 - A*K1");
}

TEST_CASE("arrow_bracket: virtual Hopf") {
  const Diagram d = parse_pd(kVirtualHopfPd);
  const Polynomial bracket = arrow_bracket(d);
  CHECK(render_polynomial(bracket) == "A^-1 + A*K1");
  CHECK(render_polynomial(normalize(bracket, d.writhe())) == "-A^2 - A^4*K1");
}

TEST_CASE("arrow_bracket: kinks pick up -A^{3 sign}") {
  const Diagram neg = parse_pd(kKinkPd);
  CHECK(render_polynomial(arrow_bracket(neg)) == "-A^-3");
  CHECK(render_polynomial(normalize(arrow_bracket(neg), neg.writhe())) == "1");

  const Diagram built = negative_kink();
  CHECK(arrow_bracket(built) == arrow_bracket(neg));
}

TEST_CASE("arrow_bracket: free loop unknot evaluates to 1") {
  CHECK(render_polynomial(arrow_bracket(free_loop_unknot())) == "1");
}

TEST_CASE("arrow_bracket: classical diagrams match the bracket oracle") {
  const char* codes[] = {
      "O1- U2- | U1- O2-",                       // Hopf link
      "O1+ U2+ O3+ U1+ O2+ U3+",                 // trefoil
  };
  for (const char* code : codes) {
    CAPTURE(code);
    const Diagram d = parse_gauss(code);
    const Polynomial arrow = arrow_bracket(d);
    CHECK(arrow == classical_bracket(d));
    for (const auto& [m, c] : arrow.terms()) CHECK(m.k_indices.empty());
  }
}

TEST_CASE("arrow_bracket: trefoil value") {
  const Diagram d = parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+");
  CHECK(d.writhe() == 3);
  CHECK(render_polynomial(arrow_bracket(d)) == "A^-7 - A^-3 - A^5");
}

TEST_CASE("arrow_bracket is invariant under reversing all components") {
  const char* inputs[] = {kVirtualHopfPd, "X(2,1,3,4); X(1,4,2,3)"};
  for (const char* text : inputs) {
    const Diagram d = parse_pd(text);
    CHECK(arrow_bracket(d) == arrow_bracket(reverse_all(d)));
  }
  const Diagram g = parse_gauss("O1+ U2+ U1+ O2+");
  CHECK(arrow_bracket(g) == arrow_bracket(reverse_all(g)));
}

TEST_CASE("arrow_bracket: crossing cap") {
  const Diagram d = parse_gauss("O1+ U2+ U1+ O2+");
  CHECK_THROWS_AS(arrow_bracket(d, BracketOptions{1, 1}), BracketLimitError);
}

TEST_CASE("arrow_bracket: thread counts agree bit for bit") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 6; ++trial) {
    const std::string code = random_gauss_code(6, rng);
    CAPTURE(code);
    const Diagram d = parse_gauss(code);
    const Polynomial p1 = arrow_bracket(d, BracketOptions{24, 1});
    const Polynomial p4 = arrow_bracket(d, BracketOptions{24, 4});
    CHECK(p1 == p4);
    CHECK(render_polynomial(p1) == render_polynomial(p4));
  }
}

TEST_CASE("labeled arrow numbers") {
  StateEvaluation s;
  s.loops.push_back(word_of({L, R}));

  const std::vector<int> bit0{0};
  const std::vector<int> bit1{1};
  CHECK(labeled_arrow_numbers(s, bit0) == std::vector<int>{1});
  CHECK(labeled_arrow_numbers(s, bit1) == std::vector<int>{-1});

  StateEvaluation t;
  t.loops.push_back(word_of({L, L}));
  CHECK(labeled_arrow_numbers(t, bit0) == std::vector<int>{0});
  CHECK(labeled_arrow_numbers(t, bit1) == std::vector<int>{0});

  StateEvaluation u;
  u.loops.push_back(word_of({L, R, L, R}));
  CHECK(labeled_arrow_numbers(u, bit0) == std::vector<int>{2});
  CHECK(labeled_arrow_numbers(u, bit1) == std::vector<int>{-2});
}

TEST_CASE("cpair linking on the virtual Hopf disoriented state") {
  const Diagram d = parse_pd(kVirtualHopfPd);
  const std::vector<Smoothing> choice{Smoothing::Disoriented};
  const StateEvaluation s = trace_state(d, choice);
  const std::vector<int> bit0{0};
  const std::vector<int> bit1{1};
  CHECK(std::abs(cpair_linking(s, bit0)) == 1);
  CHECK(std::abs(cpair_linking(s, bit1)) == 1);
}

TEST_CASE("cpair linking vanishes without disoriented smoothings") {
  const Diagram d = parse_pd(kVirtualHopfPd);
  const std::vector<Smoothing> choice{Smoothing::Oriented};
  const StateEvaluation s = trace_state(d, choice);
  const std::vector<int> bit0{0};
  CHECK(cpair_linking(s, bit0) == 0);
}

TEST_CASE("state oracle identities over all states") {
  // For every state and labeling: sum of c-pair signs equals the sum of
  // labeled arrow numbers, |a_L| is labeling independent and matches the
  // reduced word, and word lengths are even.
  const char* inputs[] = {"O1- U2- | U1- O2-", "O1+ U2+ O3+ U1+ O2+ U3+",
                          "O1+ U2+ U1+ O2+"};
  for (const char* code : inputs) {
    CAPTURE(code);
    const Diagram d = parse_gauss(code);
    for_each_state(d, [&](std::uint64_t, const StateEvaluation& s) {
      const int loops = s.loop_count();
      std::vector<int> reduced;
      for (const LoopWord& w : s.loops) {
        CHECK(w.marks.size() % 2 == 0);
        reduced.push_back(reduce_cusp_word(w));
      }
      for (std::uint64_t lab = 0; lab < (std::uint64_t{1} << loops); ++lab) {
        std::vector<int> bits(loops);
        for (int i = 0; i < loops; ++i) bits[i] = (lab >> i) & 1;
        const std::vector<int> al = labeled_arrow_numbers(s, bits);
        int al_sum = 0;
        for (int i = 0; i < loops; ++i) {
          CHECK(std::abs(al[i]) == reduced[i]);
          al_sum += al[i];
        }
        CHECK(cpair_linking(s, bits) == al_sum);
      }
    });
  }
}

TEST_CASE("classical states have linking zero for some labeling") {
  // AS(K) = {0} for classical diagrams: every state reduces to arrow
  // number zero, so all labeled arrow numbers vanish loopwise.
  const Diagram d = parse_gauss("O1- U2- | U1- O2-");
  for_each_state(d, [&](std::uint64_t, const StateEvaluation& s) {
    int total = 0;
    for (const LoopWord& w : s.loops) total += reduce_cusp_word(w);
    CHECK(total == 0);
  });
}
