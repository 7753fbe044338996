#include "arrowpoly/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>

namespace arrowpoly {

namespace {

std::string port_name(const Port& p) {
  return std::string(p.site.kind == SiteKind::Classical ? "X" : "V") +
         std::to_string(p.site.index) + "." + std::to_string(p.slot);
}

}  // namespace

SiteRef Diagram::Builder::add_classical(int over_entry_slot) {
  if (over_entry_slot != 1 && over_entry_slot != 3) {
    throw ValidationError("over_entry_slot must be 1 or 3");
  }
  classical_.push_back(ClassicalSite{over_entry_slot});
  return SiteRef{SiteKind::Classical, static_cast<int>(classical_.size()) - 1};
}

SiteRef Diagram::Builder::add_virtual() {
  virtuals_.push_back(VirtualSite{});
  return SiteRef{SiteKind::Virtual, static_cast<int>(virtuals_.size()) - 1};
}

void Diagram::Builder::add_edge(int id, Port tail, Port head) {
  edges_.push_back(Edge{id, tail, head});
}

void Diagram::Builder::add_free_loop(int id) {
  edges_.push_back(Edge{id, std::nullopt, std::nullopt});
}

Diagram Diagram::Builder::build() && {
  Diagram d;
  d.classical_ = std::move(classical_);
  d.virtuals_ = std::move(virtuals_);
  d.edges_ = std::move(edges_);
  d.validate_and_index();
  d.compute_components();
  return d;
}

int Diagram::table_index(const SiteRef& s) const {
  return s.kind == SiteKind::Classical ? s.index : classical_count() + s.index;
}

void Diagram::validate_and_index() {
  const int site_count = classical_count() + virtual_count();
  port_table_.assign(site_count, {EdgeEnd{}, EdgeEnd{}, EdgeEnd{}, EdgeEnd{}});

  std::set<int> seen_ids;
  for (int ei = 0; ei < static_cast<int>(edges_.size()); ++ei) {
    const Edge& e = edges_[ei];
    if (e.id <= 0) throw ValidationError("edge id must be positive");
    if (!seen_ids.insert(e.id).second) {
      throw ValidationError("duplicate edge id " + std::to_string(e.id));
    }
    if (e.tail.has_value() != e.head.has_value()) {
      throw ValidationError("edge " + std::to_string(e.id) +
                            " must have both ends or none");
    }
    if (e.is_free_loop()) continue;
    for (bool at_head : {false, true}) {
      const Port& p = at_head ? *e.head : *e.tail;
      if (p.slot < 0 || p.slot > 3) {
        throw ValidationError("slot out of range at edge " + std::to_string(e.id));
      }
      const bool site_ok =
          (p.site.kind == SiteKind::Classical && p.site.index >= 0 &&
           p.site.index < classical_count()) ||
          (p.site.kind == SiteKind::Virtual && p.site.index >= 0 &&
           p.site.index < virtual_count());
      if (!site_ok) {
        throw ValidationError("edge " + std::to_string(e.id) +
                              " references unknown site");
      }
      EdgeEnd& cell = port_table_[table_index(p.site)][p.slot];
      if (cell.edge_index >= 0) {
        throw ValidationError("port used twice: " + port_name(p));
      }
      cell = EdgeEnd{ei, at_head};
    }
  }

  for (int si = 0; si < site_count; ++si) {
    const bool is_classical = si < classical_count();
    const SiteRef ref{is_classical ? SiteKind::Classical : SiteKind::Virtual,
                      is_classical ? si : si - classical_count()};
    for (int slot = 0; slot < 4; ++slot) {
      if (port_table_[si][slot].edge_index < 0) {
        throw ValidationError("dangling port: " + port_name(Port{ref, slot}));
      }
    }
    if (is_classical) {
      const ClassicalSite& site = classical_[si];
      const int over_in = site.over_entry_slot;
      const int over_out = site.over_exit_slot();
      if (!port_table_[si][0].at_head || port_table_[si][2].at_head ||
          !port_table_[si][over_in].at_head || port_table_[si][over_out].at_head) {
        throw ValidationError("orientation incoherence at site X" +
                              std::to_string(ref.index));
      }
    } else {
      for (int slot : {0, 1}) {
        if (port_table_[si][slot].at_head == port_table_[si][slot + 2].at_head) {
          throw ValidationError("orientation incoherence at site V" +
                                std::to_string(ref.index));
        }
      }
    }
  }
}

void Diagram::compute_components() {
  components_.clear();
  std::vector<int> order(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return edges_[a].id < edges_[b].id; });

  std::vector<bool> visited(edges_.size(), false);
  for (int start : order) {
    if (visited[start]) continue;
    if (edges_[start].is_free_loop()) {
      visited[start] = true;
      components_.push_back({edges_[start].id});
      continue;
    }
    std::vector<int> cycle;
    int current = start;
    while (!visited[current]) {
      visited[current] = true;
      cycle.push_back(edges_[current].id);
      const Port exit = strand_exit(*edges_[current].head);
      const EdgeEnd next = edge_end_at(exit);
      assert(!next.at_head && "open component");
      current = next.edge_index;
    }
    assert(current == start && "open component");
    components_.push_back(std::move(cycle));
  }
}

int Diagram::edge_index_of(int edge_id) const {
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    if (edges_[i].id == edge_id) return i;
  }
  throw ValidationError("unknown edge id " + std::to_string(edge_id));
}

int Diagram::writhe() const {
  int w = 0;
  for (const ClassicalSite& site : classical_) w += site.sign();
  return w;
}

EdgeEnd Diagram::edge_end_at(const Port& p) const {
  return port_table_.at(table_index(p.site)).at(p.slot);
}

Port Diagram::strand_exit(const Port& entry) const {
  if (entry.site.kind == SiteKind::Virtual) {
    return Port{entry.site, (entry.slot + 2) % 4};
  }
  const ClassicalSite& site = classical_.at(entry.site.index);
  if (entry.slot == 0) return Port{entry.site, 2};
  if (entry.slot == site.over_entry_slot) {
    return Port{entry.site, site.over_exit_slot()};
  }
  throw ValidationError("strand_exit called on a non-entry slot");
}

bool Diagram::operator==(const Diagram& other) const {
  return classical_ == other.classical_ && virtuals_.size() == other.virtuals_.size() &&
         edges_ == other.edges_;
}

namespace {

// Rebuilds a diagram with per-site slot remaps, per-site over_entry
// replacements, and a set of edges whose direction flips.
Diagram rebuild(const Diagram& d, const std::vector<int>& slot_shift,
                const std::vector<int>& new_over_entry,
                const std::vector<bool>& flip_edge) {
  Diagram::Builder b;
  for (int i = 0; i < d.classical_count(); ++i) b.add_classical(new_over_entry[i]);
  for (int i = 0; i < d.virtual_count(); ++i) b.add_virtual();
  auto remap = [&](const Port& p) {
    const int site_pos = p.site.kind == SiteKind::Classical
                             ? p.site.index
                             : d.classical_count() + p.site.index;
    return Port{p.site, (p.slot + slot_shift[site_pos]) % 4};
  };
  for (int ei = 0; ei < static_cast<int>(d.edges().size()); ++ei) {
    const Edge& e = d.edges()[ei];
    if (e.is_free_loop()) {
      b.add_free_loop(e.id);
    } else if (flip_edge[ei]) {
      b.add_edge(e.id, remap(*e.head), remap(*e.tail));
    } else {
      b.add_edge(e.id, remap(*e.tail), remap(*e.head));
    }
  }
  return std::move(b).build();
}

}  // namespace

Diagram reverse_all(const Diagram& d) {
  const int sites = d.classical_count() + d.virtual_count();
  std::vector<int> shift(sites, 2);
  std::vector<int> over_entry(d.classical_count());
  for (int i = 0; i < d.classical_count(); ++i) {
    over_entry[i] = d.classical(i).over_entry_slot;
  }
  std::vector<bool> flip(d.edges().size(), true);
  return rebuild(d, shift, over_entry, flip);
}

Diagram reverse_components(const Diagram& d, const std::vector<int>& edge_ids) {
  std::set<int> reversed_edge_indices;
  for (int id : edge_ids) {
    const int idx = d.edge_index_of(id);
    for (const auto& cycle : d.components()) {
      if (std::find(cycle.begin(), cycle.end(), d.edges()[idx].id) != cycle.end()) {
        for (int cid : cycle) reversed_edge_indices.insert(d.edge_index_of(cid));
      }
    }
  }
  std::vector<bool> flip(d.edges().size(), false);
  for (int idx : reversed_edge_indices) flip[idx] = true;

  const int sites = d.classical_count() + d.virtual_count();
  std::vector<int> shift(sites, 0);
  std::vector<int> over_entry(d.classical_count());
  for (int i = 0; i < d.classical_count(); ++i) {
    const ClassicalSite& site = d.classical(i);
    const SiteRef ref{SiteKind::Classical, i};
    const bool under_rev = flip[d.edge_end_at(Port{ref, 0}).edge_index];
    const bool over_rev =
        flip[d.edge_end_at(Port{ref, site.over_entry_slot}).edge_index];
    if (under_rev) {
      // Slot 0 must become the new incoming under-strand (old slot 2).
      shift[i] = 2;
      over_entry[i] = over_rev ? site.over_entry_slot
                               : (site.over_entry_slot + 2) % 4;
    } else {
      shift[i] = 0;
      over_entry[i] = over_rev ? site.over_exit_slot() : site.over_entry_slot;
    }
  }
  // Virtual sites need a shift only if exactly one passage reverses; the
  // pass-through pairing is rotation independent, so no renumbering needed.
  return rebuild(d, shift, over_entry, flip);
}

Diagram switch_all_crossings(const Diagram& d) {
  const int sites = d.classical_count() + d.virtual_count();
  std::vector<int> shift(sites, 0);
  std::vector<int> over_entry(d.classical_count());
  for (int i = 0; i < d.classical_count(); ++i) {
    const int eta = d.classical(i).over_entry_slot;
    // Old over-in becomes the new under-in: renumber so it lands on slot 0.
    shift[i] = (4 - eta) % 4;
    over_entry[i] = 4 - eta;
  }
  std::vector<bool> flip(d.edges().size(), false);
  return rebuild(d, shift, over_entry, flip);
}

int map_genus(const Diagram& d) {
  int vertex_count = d.classical_count() + d.virtual_count();
  if (vertex_count == 0) return 0;

  // Union the map into connected pieces over sites.
  std::vector<int> parent(vertex_count);
  for (int i = 0; i < vertex_count; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto site_pos = [&](const SiteRef& s) {
    return s.kind == SiteKind::Classical ? s.index : d.classical_count() + s.index;
  };

  int edge_count = 0;
  for (const Edge& e : d.edges()) {
    if (e.is_free_loop()) continue;
    ++edge_count;
    parent[find(site_pos(e.tail->site))] = find(site_pos(e.head->site));
  }

  // Face count: orbits of darts under "arrive at slot p, leave from slot
  // (p+1)%4". Dart 2*ei is tail->head, 2*ei+1 is head->tail.
  std::vector<bool> seen(2 * d.edges().size(), false);
  int face_count = 0;
  for (std::size_t start = 0; start < seen.size(); ++start) {
    const Edge& e0 = d.edges()[start / 2];
    if (e0.is_free_loop() || seen[start]) continue;
    ++face_count;
    std::size_t dart = start;
    while (!seen[dart]) {
      seen[dart] = true;
      const Edge& e = d.edges()[dart / 2];
      const Port arrival = (dart % 2 == 0) ? *e.head : *e.tail;
      const Port next{arrival.site, (arrival.slot + 1) % 4};
      const EdgeEnd out = d.edge_end_at(next);
      dart = 2 * static_cast<std::size_t>(out.edge_index) + (out.at_head ? 1 : 0);
    }
  }

  std::set<int> roots;
  for (int i = 0; i < vertex_count; ++i) roots.insert(find(i));
  const int pieces = static_cast<int>(roots.size());
  const int euler = vertex_count - edge_count + face_count;
  const int genus2 = 2 * pieces - euler;
  assert(genus2 >= 0 && genus2 % 2 == 0);
  return genus2 / 2;
}

}  // namespace arrowpoly
