#include "arrowpoly/state.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <thread>

namespace arrowpoly {

namespace {

// Slot pairings of the two possible smoothings. P1 joins 0-1 and 2-3, P2
// joins 0-3 and 1-2. P1 is always the A-smoothing; the disoriented
// smoothing is P2 at positive sites and P1 at negative sites.
constexpr std::array<int, 4> kPairingExit[2] = {{1, 0, 3, 2}, {3, 2, 1, 0}};

constexpr CuspSide side_of(int entry, int exit) {
  return exit == (entry + 1) % 4 ? CuspSide::L : CuspSide::R;
}

// Flattened per-diagram traversal tables plus per-state scratch. One
// instance traces many states without allocating.
class Tracer {
 public:
  explicit Tracer(const Diagram& d) : diagram_(d) {
    const int sites = d.classical_count() + d.virtual_count();
    port_end_.assign(sites, {-1, -1, -1, -1});
    for (int si = 0; si < sites; ++si) {
      const bool is_classical = si < d.classical_count();
      const SiteRef ref{is_classical ? SiteKind::Classical : SiteKind::Virtual,
                        is_classical ? si : si - d.classical_count()};
      for (int slot = 0; slot < 4; ++slot) {
        const EdgeEnd end = d.edge_end_at(Port{ref, slot});
        port_end_[si][slot] = 2 * end.edge_index + (end.at_head ? 1 : 0);
      }
    }
    end_site_.assign(2 * d.edges().size(), -1);
    end_slot_.assign(2 * d.edges().size(), -1);
    for (int ei = 0; ei < static_cast<int>(d.edges().size()); ++ei) {
      const Edge& e = d.edges()[ei];
      if (e.is_free_loop()) {
        ++free_loops_;
        continue;
      }
      for (bool at_head : {false, true}) {
        const Port& p = at_head ? *e.head : *e.tail;
        const int si = p.site.kind == SiteKind::Classical
                           ? p.site.index
                           : d.classical_count() + p.site.index;
        end_site_[2 * ei + (at_head ? 1 : 0)] = si;
        end_slot_[2 * ei + (at_head ? 1 : 0)] = p.slot;
      }
    }
    signs_.resize(d.classical_count());
    for (int i = 0; i < d.classical_count(); ++i) signs_[i] = d.classical(i).sign();
    visited_.assign(2 * d.edges().size(), 0);
    site_pairing_.assign(d.classical_count(), 0);
    site_cusped_.assign(d.classical_count(), 0);
  }

  // Traces the state given by `disoriented` (bit i = site i disoriented).
  // Results land in the public scratch fields, valid until the next call.
  void trace(std::uint64_t disoriented) {
    alpha = beta = 0;
    marks.clear();
    loop_offsets.clear();
    for (int i = 0; i < static_cast<int>(signs_.size()); ++i) {
      const bool dis = (disoriented >> i) & 1;
      const bool carries_a = (signs_[i] > 0) == !dis;
      carries_a ? ++alpha : ++beta;
      site_pairing_[i] = carries_a ? 0 : 1;
      site_cusped_[i] = dis ? 1 : 0;
    }
    ++epoch_;
    loop_count = free_loops_;
    for (std::size_t ei = 0; ei < end_site_.size() / 2; ++ei) {
      const std::size_t start = 2 * ei + 1;
      if (end_site_[start] < 0 || visited_[start] == epoch_) continue;
      ++loop_count;
      loop_offsets.push_back(static_cast<int>(marks.size()));
      std::size_t arrival = start;
      do {
        visited_[arrival] = epoch_;
        visited_[arrival ^ 1] = epoch_;
        const int si = end_site_[arrival];
        const int slot = end_slot_[arrival];
        int exit;
        if (si < static_cast<int>(signs_.size())) {
          const int pairing = site_pairing_[si];
          exit = kPairingExit[pairing][slot];
          if (site_cusped_[si]) {
            marks.push_back(CuspMark{si, side_of(slot, exit)});
          }
        } else {
          exit = (slot + 2) % 4;
        }
        arrival = static_cast<std::size_t>(port_end_[si][exit]) ^ 1;
      } while (arrival != start);
    }
    loop_offsets.push_back(static_cast<int>(marks.size()));
  }

  int classical_count() const { return static_cast<int>(signs_.size()); }
  int free_loops() const { return free_loops_; }

  // Scratch results of the latest trace.
  int alpha = 0;
  int beta = 0;
  int loop_count = 0;  // includes free loops
  std::vector<CuspMark> marks;
  std::vector<int> loop_offsets;  // marks offsets of the non-free loops

 private:
  const Diagram& diagram_;
  std::vector<std::array<int, 4>> port_end_;
  std::vector<int> end_site_;
  std::vector<int> end_slot_;
  std::vector<int> signs_;
  std::vector<std::uint32_t> visited_;
  std::vector<std::uint8_t> site_pairing_;
  std::vector<std::uint8_t> site_cusped_;
  std::uint32_t epoch_ = 0;
  int free_loops_ = 0;
};

int reduce_sides(std::span<const CuspSide> sides, std::vector<CuspSide>& stack) {
  if (sides.size() % 2 != 0) {
    throw std::logic_error("cusp word has odd length");
  }
  stack.clear();
  for (CuspSide s : sides) {
    if (!stack.empty() && stack.back() == s) {
      stack.pop_back();
    } else {
      stack.push_back(s);
    }
  }
  // The word is cyclic: cancel across the seam too.
  std::size_t lo = 0, hi = stack.size();
  while (hi - lo >= 2 && stack[lo] == stack[hi - 1]) {
    ++lo;
    --hi;
  }
  return static_cast<int>(hi - lo) / 2;
}

// d^k expansions are shared and extended on demand.
const Polynomial& cached_d_power(int k) {
  static std::vector<Polynomial> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  while (static_cast<int>(cache.size()) <= k) {
    cache.push_back(d_power(static_cast<int>(cache.size())));
  }
  return cache[k];
}

// Shared accumulation used by both the fast bracket path and
// evaluate_state: adds A^{alpha-beta} d^{loops-1} K-part to out.
void accumulate_term(Polynomial& out, int alpha, int beta, int loop_count,
                     std::vector<int>& k_indices) {
  std::sort(k_indices.begin(), k_indices.end());
  if (loop_count == 0) {
    // Empty diagram: single empty state worth 1.
    out.add_term(Monomial{}, 1);
    return;
  }
  const Polynomial& d_part = cached_d_power(loop_count - 1);
  for (const auto& [m, c] : d_part.terms()) {
    out.add_term(Monomial{alpha - beta + m.a_power, k_indices}, c);
  }
}

Polynomial bracket_range(const Diagram& d, std::uint64_t begin, std::uint64_t end) {
  Tracer tracer(d);
  Polynomial out;
  std::vector<CuspSide> side_scratch;
  std::vector<CuspSide> stack_scratch;
  std::vector<int> k_scratch;
  for (std::uint64_t mask = begin; mask < end; ++mask) {
    tracer.trace(mask);
    k_scratch.clear();
    for (std::size_t li = 0; li + 1 < tracer.loop_offsets.size(); ++li) {
      side_scratch.clear();
      for (int mi = tracer.loop_offsets[li]; mi < tracer.loop_offsets[li + 1]; ++mi) {
        side_scratch.push_back(tracer.marks[mi].side);
      }
      const int n = reduce_sides(side_scratch, stack_scratch);
      if (n > 0) k_scratch.push_back(n);
    }
    accumulate_term(out, tracer.alpha, tracer.beta, tracer.loop_count, k_scratch);
  }
  return out;
}

StateEvaluation evaluation_from_tracer(const Tracer& tracer) {
  StateEvaluation state;
  state.alpha = tracer.alpha;
  state.beta = tracer.beta;
  for (std::size_t li = 0; li + 1 < tracer.loop_offsets.size(); ++li) {
    LoopWord word;
    word.marks.assign(tracer.marks.begin() + tracer.loop_offsets[li],
                      tracer.marks.begin() + tracer.loop_offsets[li + 1]);
    state.loops.push_back(std::move(word));
  }
  for (int i = 0; i < tracer.free_loops(); ++i) state.loops.push_back(LoopWord{});
  return state;
}

}  // namespace

SmoothingArcs smoothing_arcs(const ClassicalSite& site, Smoothing choice) {
  SmoothingArcs arcs;
  const bool dis = choice == Smoothing::Disoriented;
  arcs.carries_a = (site.sign() > 0) == !dis;
  arcs.cusped = dis;
  arcs.exit_slot = kPairingExit[arcs.carries_a ? 0 : 1];
  if (dis) {
    // The in-arc joins the two slots where strands enter the site.
    arcs.in_arc_slots = {0, site.over_entry_slot};
  }
  return arcs;
}

StateEvaluation trace_state(const Diagram& d, std::span<const Smoothing> choice) {
  if (static_cast<int>(choice.size()) != d.classical_count()) {
    throw std::invalid_argument("one smoothing choice per classical site required");
  }
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < choice.size(); ++i) {
    if (choice[i] == Smoothing::Disoriented) mask |= std::uint64_t{1} << i;
  }
  Tracer tracer(d);
  tracer.trace(mask);
  return evaluation_from_tracer(tracer);
}

int reduce_cusp_word(const LoopWord& word) {
  std::vector<CuspSide> sides;
  sides.reserve(word.marks.size());
  for (const CuspMark& m : word.marks) sides.push_back(m.side);
  return reduce_cusp_word(sides);
}

int reduce_cusp_word(std::span<const CuspSide> sides) {
  std::vector<CuspSide> stack;
  return reduce_sides(sides, stack);
}

Polynomial evaluate_state(const StateEvaluation& state) {
  std::vector<int> k_indices;
  for (const LoopWord& loop : state.loops) {
    const int n = reduce_cusp_word(loop);
    if (n > 0) k_indices.push_back(n);
  }
  Polynomial out;
  accumulate_term(out, state.alpha, state.beta, state.loop_count(), k_indices);
  return out;
}

Polynomial arrow_bracket(const Diagram& d, const BracketOptions& options) {
  const int n = d.classical_count();
  if (n > options.max_crossings) {
    throw BracketLimitError("diagram has " + std::to_string(n) +
                            " classical crossings, cap is " +
                            std::to_string(options.max_crossings));
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  int threads = options.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  if (total < 1024 || threads == 1) return bracket_range(d, 0, total);

  threads = static_cast<int>(std::min<std::uint64_t>(threads, 64));
  std::vector<Polynomial> partial(threads);
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::uint64_t begin = chunk * t;
    const std::uint64_t end = std::min(total, begin + chunk);
    workers.emplace_back([&, t, begin, end] {
      if (begin < end) partial[t] = bracket_range(d, begin, end);
    });
  }
  for (auto& w : workers) w.join();
  Polynomial out;
  for (const Polynomial& p : partial) out += p;
  return out;
}

void for_each_state(const Diagram& d,
                    const std::function<void(std::uint64_t, const StateEvaluation&)>& fn) {
  const int n = d.classical_count();
  if (n > 24) {
    throw BracketLimitError("state enumeration capped at 24 crossings");
  }
  Tracer tracer(d);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    tracer.trace(mask);
    fn(mask, evaluation_from_tracer(tracer));
  }
}

std::vector<int> labeled_arrow_numbers(const StateEvaluation& state,
                                       std::span<const int> labeling) {
  if (labeling.size() != state.loops.size()) {
    throw std::invalid_argument("one labeling bit per loop required");
  }
  std::vector<int> out;
  out.reserve(state.loops.size());
  for (std::size_t li = 0; li < state.loops.size(); ++li) {
    const auto& marks = state.loops[li].marks;
    if (marks.size() % 2 != 0) throw std::logic_error("odd cusp word");
    int sum = 0;
    for (std::size_t j = 0; j < marks.size(); ++j) {
      const int incoming_label = (labeling[li] & 1) ^ static_cast<int>(j & 1);
      const bool is_left = marks[j].side == CuspSide::L;
      sum += (is_left == (incoming_label == 0)) ? 1 : -1;
    }
    out.push_back(sum / 2);
  }
  return out;
}

int cpair_linking(const StateEvaluation& state, std::span<const int> labeling) {
  if (labeling.size() != state.loops.size()) {
    throw std::invalid_argument("one labeling bit per loop required");
  }
  std::map<int, int> val_sum_by_site;
  std::map<int, int> cusps_by_site;
  for (std::size_t li = 0; li < state.loops.size(); ++li) {
    const auto& marks = state.loops[li].marks;
    for (std::size_t j = 0; j < marks.size(); ++j) {
      const int incoming_label = (labeling[li] & 1) ^ static_cast<int>(j & 1);
      const bool is_left = marks[j].side == CuspSide::L;
      const int val = (is_left == (incoming_label == 0)) ? 1 : -1;
      val_sum_by_site[marks[j].site_index] += val;
      cusps_by_site[marks[j].site_index] += 1;
    }
  }
  int linking = 0;
  for (const auto& [site, count] : cusps_by_site) {
    if (count != 2) throw std::logic_error("disoriented site without two cusps");
    linking += val_sum_by_site[site] / 2;
  }
  return linking;
}

}  // namespace arrowpoly
