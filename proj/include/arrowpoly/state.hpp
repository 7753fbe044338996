#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "arrowpoly/diagram.hpp"
#include "arrowpoly/poly.hpp"

namespace arrowpoly {

class BracketLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Smoothing : std::uint8_t { Oriented, Disoriented };

enum class CuspSide : std::uint8_t { L, R };

enum class CuspArc : std::uint8_t { InArc, OutArc };

// Nodal arrow left on a disoriented smoothing arc, as seen by the loop
// traversal that crossed it.
struct CuspMark {
  int site_index = -1;  // classical site that was smoothed
  CuspSide side = CuspSide::L;

  bool operator==(const CuspMark&) const = default;
};

// Cyclic cusp sequence along one state loop. Always even length.
struct LoopWord {
  std::vector<CuspMark> marks;
};

// One fully smoothed state: A/B smoothing counts and the traced loops.
struct StateEvaluation {
  int alpha = 0;  // smoothings that carry coefficient A
  int beta = 0;   // smoothings that carry coefficient A^-1
  std::vector<LoopWord> loops;

  int loop_count() const { return static_cast<int>(loops.size()); }
};

// Local data of one smoothing at one classical site: where a strand
// entering slot s leaves, whether the two arcs carry cusps, and which arc
// joins the inward slots.
struct SmoothingArcs {
  std::array<int, 4> exit_slot{};
  bool carries_a = false;  // contributes to alpha (else beta)
  bool cusped = false;     // true exactly for the disoriented smoothing
  // For a cusped smoothing: slots of the arc joining the two inward
  // strands; the other arc joins the outward strands.
  std::array<int, 2> in_arc_slots{-1, -1};
};

SmoothingArcs smoothing_arcs(const ClassicalSite& site, Smoothing choice);

// Smooths every classical site per `choice` (one entry per site) and
// traverses the resulting loops. Virtual sites are transparent. A traversal
// that enters a disoriented arc at slot p and leaves at slot q records side
// L if q = p+1 (mod 4) and R if q = p-1 (mod 4).
StateEvaluation trace_state(const Diagram& d, std::span<const Smoothing> choice);

// Cancels cyclically adjacent equal-side pairs until none remain and
// returns half the remaining length (the loop's K index; 0 means the loop
// evaluates to 1). The result is independent of cancellation order.
int reduce_cusp_word(const LoopWord& word);
int reduce_cusp_word(std::span<const CuspSide> sides);

// A^{alpha-beta} * d^{|S|-1} * product of K_n over loops with n > 0.
// The empty state (no loops) evaluates to 1.
Polynomial evaluate_state(const StateEvaluation& state);

struct BracketOptions {
  int max_crossings = 24;
  int threads = 1;  // 0 = pick from hardware_concurrency
};

// The arrow polynomial state sum: evaluates all 2^n smoothing states.
// Throws BracketLimitError when the diagram has more classical crossings
// than max_crossings allows.
Polynomial arrow_bracket(const Diagram& d, const BracketOptions& options = {});

// Runs fn over every smoothing state of d, in mask order (bit i set means
// site i is disoriented). Single threaded; meant for exhaustive checks.
void for_each_state(const Diagram& d,
                    const std::function<void(std::uint64_t mask,
                                             const StateEvaluation&)>& fn);

// Labeled arrow number a_L of each loop. labeling has one bit per loop:
// bit 0 labels the segment entering the loop's first cusp with 0, bit 1
// with 1. Loops without cusps have a_L = 0.
std::vector<int> labeled_arrow_numbers(const StateEvaluation& state,
                                       std::span<const int> labeling);

// Sum over c-pairs (the two cusps of one disoriented site) of
// (val(v1)+val(v2))/2 under the given labeling: the linking number Lk(0,1)
// of the state's 0/1-labeled resolution.
int cpair_linking(const StateEvaluation& state, std::span<const int> labeling);

}  // namespace arrowpoly
