#include "arrowpoly/moves.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <random>
#include <set>

namespace arrowpoly {

namespace {

// Mutable edge/site workspace for surgery; rebuilt into a Diagram at the
// end (dead virtual sites are compacted away).
class Surgeon {
 public:
  explicit Surgeon(const Diagram& d) {
    for (int i = 0; i < d.classical_count(); ++i) classical_.push_back(d.classical(i));
    virtual_alive_.assign(d.virtual_count(), true);
    for (const Edge& e : d.edges()) {
      edges_[e.id] = e;
      next_id_ = std::max(next_id_, e.id + 1);
    }
  }

  SiteRef add_classical(int over_entry_slot) {
    classical_.push_back(ClassicalSite{over_entry_slot});
    return SiteRef{SiteKind::Classical, static_cast<int>(classical_.size()) - 1};
  }

  SiteRef add_virtual() {
    virtual_alive_.push_back(true);
    return SiteRef{SiteKind::Virtual, static_cast<int>(virtual_alive_.size()) - 1};
  }

  void kill_virtual(int index) { virtual_alive_.at(index) = false; }

  bool has_edge(int id) const { return edges_.count(id) > 0; }
  const Edge& edge(int id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw MoveError("edge " + std::to_string(id) + " not found");
    return it->second;
  }

  int add_edge(Port tail, Port head) {
    const int id = next_id_++;
    edges_[id] = Edge{id, tail, head};
    return id;
  }

  int add_free_loop() {
    const int id = next_id_++;
    edges_[id] = Edge{id, std::nullopt, std::nullopt};
    return id;
  }

  void remove_edge(int id) { edges_.erase(id); }
  void set_head(int id, Port p) { edges_.at(id).head = p; }
  void set_tail(int id, Port p) { edges_.at(id).tail = p; }

  // Replace edge `id` by a pass through a site: tail -> in_port, then
  // out_port -> head. A free loop becomes the single edge out -> in.
  void split(int id, Port in_port, Port out_port) {
    const Edge e = edge(id);
    remove_edge(id);
    if (e.is_free_loop()) {
      add_edge(out_port, in_port);
    } else {
      add_edge(*e.tail, in_port);
      add_edge(out_port, *e.head);
    }
  }

  // The edge end attached at a port, or {-1, false} if nothing is.
  std::pair<int, bool> end_at(const Port& p) const {
    for (const auto& [id, e] : edges_) {
      if (e.is_free_loop()) continue;
      if (*e.tail == p) return {id, false};
      if (*e.head == p) return {id, true};
    }
    return {-1, false};
  }

  Diagram build() const {
    std::vector<int> virtual_remap(virtual_alive_.size(), -1);
    Diagram::Builder b;
    for (const ClassicalSite& s : classical_) b.add_classical(s.over_entry_slot);
    for (std::size_t i = 0; i < virtual_alive_.size(); ++i) {
      if (virtual_alive_[i]) {
        virtual_remap[i] = b.add_virtual().index;
      }
    }
    auto remap = [&](const Port& p) {
      if (p.site.kind == SiteKind::Classical) return p;
      const int idx = virtual_remap.at(p.site.index);
      if (idx < 0) throw MoveError("edge attached to a removed virtual site");
      return Port{SiteRef{SiteKind::Virtual, idx}, p.slot};
    };
    for (const auto& [id, e] : edges_) {
      if (e.is_free_loop()) {
        b.add_free_loop(id);
      } else {
        b.add_edge(id, remap(*e.tail), remap(*e.head));
      }
    }
    try {
      return std::move(b).build();
    } catch (const ValidationError& e) {
      throw MoveError(std::string("surgery produced an invalid diagram: ") + e.what());
    }
  }

 private:
  std::vector<ClassicalSite> classical_;
  std::vector<bool> virtual_alive_;
  std::map<int, Edge> edges_;
  int next_id_ = 1;
};

Diagram apply_r1(const Diagram& d, const R1Kink& m) {
  Surgeon s(d);
  if (!s.has_edge(m.edge_id)) throw MoveError("R1: edge not found");
  if (m.sign != 1 && m.sign != -1) throw MoveError("R1: sign must be +1 or -1");
  const SiteRef site = s.add_classical(m.sign > 0 ? 3 : 1);
  const int over_in = m.sign > 0 ? 3 : 1;
  const int over_out = 4 - over_in;
  if (m.over_first) {
    s.split(m.edge_id, Port{site, over_in}, Port{site, 2});
    s.add_edge(Port{site, over_out}, Port{site, 0});
  } else {
    s.split(m.edge_id, Port{site, 0}, Port{site, over_out});
    s.add_edge(Port{site, 2}, Port{site, over_in});
  }
  return s.build();
}

Diagram apply_r2(const Diagram& d, const R2Finger& m) {
  if (m.moving_edge_id == m.target_edge_id) {
    throw MoveError("R2: moving and target edges must differ");
  }
  Surgeon s(d);
  if (!s.has_edge(m.moving_edge_id) || !s.has_edge(m.target_edge_id)) {
    throw MoveError("R2: edge not found");
  }
  const SiteRef p = s.add_classical(3);  // positive crossing
  const SiteRef q = s.add_classical(1);  // cancelling negative crossing
  const int over = m.moving_over ? m.moving_edge_id : m.target_edge_id;
  const int under = m.moving_over ? m.target_edge_id : m.moving_edge_id;
  s.split(over, Port{p, 3}, Port{q, 3});
  s.add_edge(Port{p, 1}, Port{q, 1});
  s.split(under, Port{p, 0}, Port{q, 2});
  s.add_edge(Port{p, 2}, Port{q, 0});
  return s.build();
}

Diagram apply_vr1(const Diagram& d, const VR1Kink& m) {
  Surgeon s(d);
  if (!s.has_edge(m.edge_id)) throw MoveError("VR1: edge not found");
  const SiteRef v = s.add_virtual();
  s.split(m.edge_id, Port{v, 0}, Port{v, 3});
  s.add_edge(Port{v, 2}, Port{v, 1});
  return s.build();
}

Diagram apply_vr2(const Diagram& d, const VR2Finger& m) {
  if (m.moving_edge_id == m.target_edge_id) {
    throw MoveError("VR2: moving and target edges must differ");
  }
  Surgeon s(d);
  if (!s.has_edge(m.moving_edge_id) || !s.has_edge(m.target_edge_id)) {
    throw MoveError("VR2: edge not found");
  }
  const SiteRef a = s.add_virtual();
  const SiteRef b = s.add_virtual();
  s.split(m.moving_edge_id, Port{a, 3}, Port{b, 3});
  s.add_edge(Port{a, 1}, Port{b, 1});
  s.split(m.target_edge_id, Port{a, 0}, Port{b, 2});
  s.add_edge(Port{a, 2}, Port{b, 0});
  return s.build();
}

struct FaceCorner {
  SiteRef site;
  int arrival_slot;
};

struct Triangle {
  std::array<int, 3> edge_ids;          // side i arrives at corner i
  std::array<FaceCorner, 3> corners;
};

std::vector<Triangle> find_triangles(const Diagram& d) {
  std::vector<Triangle> out;
  const auto& edges = d.edges();
  std::vector<bool> seen(2 * edges.size(), false);
  for (std::size_t start = 0; start < seen.size(); ++start) {
    if (edges[start / 2].is_free_loop() || seen[start]) continue;
    std::vector<std::size_t> darts;
    std::size_t dart = start;
    while (!seen[dart]) {
      seen[dart] = true;
      darts.push_back(dart);
      const Edge& e = edges[dart / 2];
      const Port arrival = (dart % 2 == 0) ? *e.head : *e.tail;
      const Port next{arrival.site, (arrival.slot + 1) % 4};
      const EdgeEnd out_end = d.edge_end_at(next);
      dart = 2 * static_cast<std::size_t>(out_end.edge_index) + (out_end.at_head ? 1 : 0);
    }
    if (darts.size() != 3) continue;
    Triangle t;
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      const Edge& e = edges[darts[i] / 2];
      const Port arrival = (darts[i] % 2 == 0) ? *e.head : *e.tail;
      t.edge_ids[i] = e.id;
      t.corners[i] = FaceCorner{arrival.site, arrival.slot};
      if (arrival.site.kind != SiteKind::Classical) ok = false;
    }
    if (!ok) continue;
    if (t.corners[0].site == t.corners[1].site ||
        t.corners[1].site == t.corners[2].site ||
        t.corners[0].site == t.corners[2].site) {
      continue;
    }
    if (t.edge_ids[0] == t.edge_ids[1] || t.edge_ids[1] == t.edge_ids[2] ||
        t.edge_ids[0] == t.edge_ids[2]) {
      continue;
    }
    out.push_back(t);
  }
  return out;
}

std::vector<R3Slide> find_r3_in_triangles(const std::vector<Triangle>& triangles) {
  std::vector<R3Slide> out;
  for (const Triangle& t : triangles) {
    // Side i sits at slot arrival_slot(i) of corner i and at slot
    // arrival_slot(i-1)+1 of corner i-1. It can slide when both slots have
    // the same parity: the strand passes over at both corners or under at
    // both.
    for (int i = 0; i < 3; ++i) {
      const int slot_here = t.corners[i].arrival_slot;
      const int slot_prev = (t.corners[(i + 2) % 3].arrival_slot + 1) % 4;
      if ((slot_here & 1) == (slot_prev & 1)) {
        out.push_back(R3Slide{t.edge_ids[i], t.edge_ids[(i + 1) % 3],
                              t.edge_ids[(i + 2) % 3]});
      }
    }
  }
  return out;
}

Diagram apply_r3(const Diagram& d, const R3Slide& m) {
  for (const Triangle& t : find_triangles(d)) {
    bool matches = false;
    for (const R3Slide& candidate : find_r3_in_triangles({t})) {
      if (candidate.c_edge_id == m.c_edge_id && candidate.a_edge_id == m.a_edge_id &&
          candidate.b_edge_id == m.b_edge_id) {
        matches = true;
      }
    }
    if (!matches) continue;
    // Each triangle side is a strand segment between two corner sites. The
    // slide moves every side to the far side of the opposite corner, which
    // amounts to swapping, per side strand, the edge ends attached at its
    // in-slots of the two sites, and likewise at its out-slots.
    Surgeon s(d);
    std::vector<std::pair<Port, Port>> swaps;
    for (int i = 0; i < 3; ++i) {
      const Edge& side = d.edges()[d.edge_index_of(t.edge_ids[i])];
      auto strand_slots = [&](const Port& at) {
        const ClassicalSite& site = d.classical(at.site.index);
        if (at.slot % 2 == 0) return std::pair<int, int>(0, 2);
        return std::pair<int, int>(site.over_entry_slot, site.over_exit_slot());
      };
      const auto [in_a, out_a] = strand_slots(*side.tail);
      const auto [in_b, out_b] = strand_slots(*side.head);
      swaps.emplace_back(Port{side.tail->site, in_a}, Port{side.head->site, in_b});
      swaps.emplace_back(Port{side.tail->site, out_a}, Port{side.head->site, out_b});
    }
    for (const auto& [pa, pb] : swaps) {
      const auto [ea, ea_head] = s.end_at(pa);
      const auto [eb, eb_head] = s.end_at(pb);
      if (ea < 0 || eb < 0) throw MoveError("R3: dangling port during rewire");
      if (ea_head) s.set_head(ea, pb); else s.set_tail(ea, pb);
      if (eb_head) s.set_head(eb, pa); else s.set_tail(eb, pa);
    }
    return s.build();
  }
  throw MoveError("R3: pattern not present");
}

struct Chain {
  std::vector<int> edge_ids;
  std::vector<int> virtual_passes;
  Port start;
  Port end;
};

// The maximal crossing-free chain starting at the tail of `edge_id`; the
// tail must sit at a classical port.
Chain trace_chain(const Diagram& d, int edge_id) {
  const Edge* e = &d.edges()[d.edge_index_of(edge_id)];
  if (e->is_free_loop()) throw MoveError("detour: free loops have no chain");
  if (e->tail->site.kind != SiteKind::Classical) {
    throw MoveError("detour: chain must start at a classical port");
  }
  Chain chain;
  chain.start = *e->tail;
  while (true) {
    chain.edge_ids.push_back(e->id);
    const Port head = *e->head;
    if (head.site.kind == SiteKind::Classical) {
      chain.end = head;
      return chain;
    }
    chain.virtual_passes.push_back(head.site.index);
    const Port exit = d.strand_exit(head);
    const EdgeEnd next = d.edge_end_at(exit);
    e = &d.edges()[next.edge_index];
  }
}

Diagram apply_detour(const Diagram& d, const DetourRewire& m) {
  const Chain chain = trace_chain(d, m.start_edge_id);
  Surgeon s(d);
  for (int id : chain.edge_ids) s.remove_edge(id);

  // Virtual sites passed twice vanish with the chain; sites passed once
  // splice the other strand straight through.
  std::map<int, int> pass_count;
  for (int v : chain.virtual_passes) ++pass_count[v];
  for (const auto& [v, count] : pass_count) {
    s.kill_virtual(v);
    if (count == 2) continue;
    const SiteRef ref{SiteKind::Virtual, v};
    int head_id = -1, tail_id = -1;
    for (int slot = 0; slot < 4; ++slot) {
      const auto [id, at_head] = s.end_at(Port{ref, slot});
      if (id < 0) continue;  // chain slot, already removed
      (at_head ? head_id : tail_id) = id;
    }
    if (head_id < 0 || tail_id < 0) throw MoveError("detour: splice failed");
    if (head_id == tail_id) {
      // The other strand loops straight back through v: splicing closes it
      // into a crossing-free loop.
      s.remove_edge(head_id);
      s.add_free_loop();
      continue;
    }
    const Port new_tail = *s.edge(head_id).tail;
    const Port new_head = *s.edge(tail_id).head;
    s.remove_edge(head_id);
    s.remove_edge(tail_id);
    s.add_edge(new_tail, new_head);
  }

  // Insert the replacement segment, crossing each target virtually.
  Port prev = chain.start;
  for (int target : m.target_edge_ids) {
    if (!s.has_edge(target)) throw MoveError("detour: target edge not found");
    const SiteRef w = s.add_virtual();
    s.add_edge(prev, Port{w, 0});
    s.split(target, Port{w, 1}, Port{w, 3});
    prev = Port{w, 2};
  }
  s.add_edge(prev, chain.end);
  return s.build();
}

}  // namespace

Diagram apply_move(const Diagram& d, const Move& move) {
  return std::visit(
      [&](const auto& m) -> Diagram {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, R1Kink>) {
          return apply_r1(d, m);
        } else if constexpr (std::is_same_v<T, R2Finger>) {
          return apply_r2(d, m);
        } else if constexpr (std::is_same_v<T, R3Slide>) {
          return apply_r3(d, m);
        } else if constexpr (std::is_same_v<T, VR1Kink>) {
          return apply_vr1(d, m);
        } else if constexpr (std::is_same_v<T, VR2Finger>) {
          return apply_vr2(d, m);
        } else {
          return apply_detour(d, m);
        }
      },
      move);
}

std::vector<R3Slide> find_r3_candidates(const Diagram& d) {
  return find_r3_in_triangles(find_triangles(d));
}

Diagram random_equivalent(const Diagram& d, int n_moves, std::uint64_t seed,
                          const FuzzLimits& limits) {
  if (n_moves < 0) throw MoveError("n_moves must be nonnegative");
  std::mt19937_64 rng(seed);
  Diagram current = d;
  auto pick_edge_id = [&](const Diagram& dia) {
    const auto& edges = dia.edges();
    return edges[rng() % edges.size()].id;
  };
  for (int done = 0; done < n_moves; ++done) {
    if (current.edges().empty()) throw MoveError("cannot fuzz an empty diagram");
    bool applied = false;
    for (int attempt = 0; attempt < 1000 && !applied; ++attempt) {
      const int kind = static_cast<int>(rng() % 6);
      try {
        switch (kind) {
          case 0: {
            if (current.classical_count() + 1 > limits.max_classical) break;
            const R1Kink m{pick_edge_id(current), rng() % 2 ? 1 : -1,
                           rng() % 2 == 0};
            current = apply_move(current, m);
            applied = true;
            break;
          }
          case 1: {
            if (current.classical_count() + 2 > limits.max_classical) break;
            if (current.edges().size() < 2) break;
            const R2Finger m{pick_edge_id(current), pick_edge_id(current),
                             rng() % 2 == 0};
            if (m.moving_edge_id == m.target_edge_id) break;
            current = apply_move(current, m);
            applied = true;
            break;
          }
          case 2: {
            const auto candidates = find_r3_candidates(current);
            if (candidates.empty()) break;
            current = apply_move(current, candidates[rng() % candidates.size()]);
            applied = true;
            break;
          }
          case 3: {
            if (static_cast<int>(current.edges().size()) + 1 > limits.max_edges) break;
            current = apply_move(current, VR1Kink{pick_edge_id(current)});
            applied = true;
            break;
          }
          case 4: {
            if (current.edges().size() < 2 ||
                static_cast<int>(current.edges().size()) + 4 > limits.max_edges) {
              break;
            }
            const VR2Finger m{pick_edge_id(current), pick_edge_id(current)};
            if (m.moving_edge_id == m.target_edge_id) break;
            current = apply_move(current, m);
            applied = true;
            break;
          }
          case 5: {
            if (static_cast<int>(current.edges().size()) + 8 > limits.max_edges) break;
            std::vector<int> starts;
            for (const Edge& e : current.edges()) {
              if (!e.is_free_loop() && e.tail->site.kind == SiteKind::Classical) {
                starts.push_back(e.id);
              }
            }
            if (starts.empty()) break;
            DetourRewire m;
            m.start_edge_id = starts[rng() % starts.size()];
            const Chain chain = trace_chain(current, m.start_edge_id);
            std::vector<int> targets;
            for (const Edge& e : current.edges()) {
              if (std::find(chain.edge_ids.begin(), chain.edge_ids.end(), e.id) ==
                  chain.edge_ids.end()) {
                targets.push_back(e.id);
              }
            }
            const int k = static_cast<int>(rng() % 4);
            for (int i = 0; i < k && !targets.empty(); ++i) {
              const std::size_t pos = rng() % targets.size();
              m.target_edge_ids.push_back(targets[pos]);
              targets.erase(targets.begin() + pos);
            }
            current = apply_move(current, m);
            applied = true;
            break;
          }
        }
      } catch (const MoveError&) {
        // Redraw.
      }
    }
    if (!applied) throw MoveError("no applicable move found");
  }
  return current;
}

}  // namespace arrowpoly
