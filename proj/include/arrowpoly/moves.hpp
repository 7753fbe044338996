#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "arrowpoly/diagram.hpp"

namespace arrowpoly {

class MoveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Expanding-direction rewrites. Each move references edges by id in the
// diagram it is applied to and yields a new valid diagram; only R1 kinks
// change the writhe (by their sign).

struct R1Kink {
  int edge_id = 0;      // edge or free loop to kink
  int sign = 1;         // sign of the new crossing
  bool over_first = false;  // which passage the strand meets first (the side)
};

struct R2Finger {
  int moving_edge_id = 0;
  int target_edge_id = 0;  // must differ from moving_edge_id
  bool moving_over = true;
};

// Slide across a triangular face whose corners are classical and where one
// side's strand passes the two opposite corners at the same level. The
// face is named by its three side edges; c_edge is the sliding strand's
// side.
struct R3Slide {
  int c_edge_id = 0;
  int a_edge_id = 0;
  int b_edge_id = 0;
};

struct VR1Kink {
  int edge_id = 0;
};

struct VR2Finger {
  int moving_edge_id = 0;
  int target_edge_id = 0;
};

// Reroute the maximal crossing-free chain leaving `start_edge_id` through
// a fresh set of virtual crossings over the listed target edges.
struct DetourRewire {
  int start_edge_id = 0;
  std::vector<int> target_edge_ids;  // crossed in order by the new segment
};

using Move = std::variant<R1Kink, R2Finger, R3Slide, VR1Kink, VR2Finger, DetourRewire>;

Diagram apply_move(const Diagram& d, const Move& move);

// All R3 patterns currently present in the diagram.
std::vector<R3Slide> find_r3_candidates(const Diagram& d);

struct FuzzLimits {
  int max_classical = 12;
  int max_edges = 160;
};

// Applies n_moves random applicable moves, deterministically in the seed.
// Draws that do not apply (missing pattern, over the limits) are skipped
// and redrawn.
Diagram random_equivalent(const Diagram& d, int n_moves, std::uint64_t seed,
                          const FuzzLimits& limits = {});

}  // namespace arrowpoly
