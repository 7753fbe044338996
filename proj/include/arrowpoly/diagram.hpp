#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arrowpoly {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SiteKind : std::uint8_t { Classical, Virtual };

struct SiteRef {
  SiteKind kind = SiteKind::Classical;
  int index = -1;

  bool operator==(const SiteRef&) const = default;
  auto operator<=>(const SiteRef&) const = default;
};

// One of the four edge attachment points of a site. Slots run
// counterclockwise, 0..3.
struct Port {
  SiteRef site;
  int slot = 0;

  bool operator==(const Port&) const = default;
  auto operator<=>(const Port&) const = default;
};

// Classical crossing. Slot 0 is the incoming under-strand, slot 2 the
// outgoing under-strand; slots 1 and 3 carry the over-strand, entering at
// over_entry_slot. Sign is +1 when the over-strand runs 3 -> 1.
struct ClassicalSite {
  int over_entry_slot = 3;  // 1 or 3

  int sign() const { return over_entry_slot == 3 ? 1 : -1; }
  int over_exit_slot() const { return 4 - over_entry_slot; }

  bool operator==(const ClassicalSite&) const = default;
};

// Virtual crossing: strands pass straight through, slot p <-> slot (p+2)%4.
// The rotation is kept only so input codes round-trip.
struct VirtualSite {
  bool operator==(const VirtualSite&) const = default;
};

// Directed edge (tail -> head follows the diagram orientation). An edge with
// no ports is a free loop: a closed crossing-free component.
struct Edge {
  int id = 0;
  std::optional<Port> tail;
  std::optional<Port> head;

  bool is_free_loop() const { return !tail.has_value(); }

  bool operator==(const Edge&) const = default;
};

struct EdgeEnd {
  int edge_index = -1;
  bool at_head = false;

  bool operator==(const EdgeEnd&) const = default;
};

// Immutable oriented virtual link diagram: a 4-regular combinatorial map
// with classical and virtual sites. Built through Diagram::Builder, which
// validates port coverage, orientation coherence and component closure.
class Diagram {
 public:
  class Builder {
   public:
    SiteRef add_classical(int over_entry_slot);
    SiteRef add_virtual();
    void add_edge(int id, Port tail, Port head);
    void add_free_loop(int id);
    Diagram build() &&;

   private:
    std::vector<ClassicalSite> classical_;
    std::vector<VirtualSite> virtuals_;
    std::vector<Edge> edges_;
  };

  int classical_count() const { return static_cast<int>(classical_.size()); }
  int virtual_count() const { return static_cast<int>(virtuals_.size()); }
  const ClassicalSite& classical(int index) const { return classical_.at(index); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int index) const { return edges_.at(index); }
  int edge_index_of(int edge_id) const;

  // Sum of classical crossing signs.
  int writhe() const;

  // Partition of the edges into oriented strand cycles (edge ids in
  // traversal order; free loops are singleton cycles). Deterministic: each
  // cycle starts at its smallest edge id, cycles sorted by that id.
  const std::vector<std::vector<int>>& components() const { return components_; }

  // The edge end attached to a port.
  EdgeEnd edge_end_at(const Port& p) const;

  // Strand successor: the port reached when a strand entering `entry`
  // passes through the site (classical: under 0->2 / over in->out;
  // virtual: p -> (p+2)%4).
  Port strand_exit(const Port& entry) const;

  bool operator==(const Diagram& other) const;

 private:
  friend class Builder;
  Diagram() = default;

  void validate_and_index();
  void compute_components();
  int table_index(const SiteRef& s) const;

  std::vector<ClassicalSite> classical_;
  std::vector<VirtualSite> virtuals_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> components_;
  // port_table_[table_index][slot]; classical sites first, then virtual.
  std::vector<std::array<EdgeEnd, 4>> port_table_;
};

// Orientation reversal of every component. Slots renumber by +2 so slot 0
// stays the incoming under-strand; crossing signs are preserved.
Diagram reverse_all(const Diagram& d);

// Orientation reversal of the components containing the given edge ids.
// Signs flip at crossings between reversed and unreversed strands.
Diagram reverse_components(const Diagram& d, const std::vector<int>& edge_ids);

// Over and under exchanged at every classical site, in place (slots
// renumber so slot 0 stays the incoming under-strand). Negates the writhe.
Diagram switch_all_crossings(const Diagram& d);

// Genus of the closed surface the map is drawn on, from the Euler
// characteristic (faces traced with the counterclockwise rotation at every
// site). 0 means the diagram is planar. Free loops are ignored.
int map_genus(const Diagram& d);

}  // namespace arrowpoly
