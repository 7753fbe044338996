#include "arrowpoly/codec.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace arrowpoly {

namespace {

// ---------------------------------------------------------------------
// PD parsing

struct PdItem {
  SiteKind kind = SiteKind::Classical;
  std::array<int, 4> labels{};
  std::size_t position = 0;
};

class PdLexer {
 public:
  explicit PdLexer(std::string_view text) : text_(text) {}

  std::vector<PdItem> items() {
    std::vector<PdItem> out;
    skip_ws();
    if (at_end()) throw ParseError("empty PD code", pos_);
    while (true) {
      out.push_back(item());
      skip_ws();
      if (at_end()) break;
      expect(';');
      skip_ws();
      if (at_end()) throw ParseError("trailing ';'", pos_);
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  void expect(char c) {
    if (at_end() || peek() != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }
  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) throw ParseError("expected edge label", pos_);
    long value = 0;
    for (std::size_t i = start; i < pos_; ++i) {
      value = value * 10 + (text_[i] - '0');
      if (value > 1'000'000) throw ParseError("edge label too large", start);
    }
    if (value == 0) throw ParseError("edge labels are positive", start);
    return static_cast<int>(value);
  }
  PdItem item() {
    skip_ws();
    PdItem out;
    out.position = pos_;
    if (at_end() || (peek() != 'X' && peek() != 'V')) {
      throw ParseError("expected 'X' or 'V'", pos_);
    }
    out.kind = peek() == 'X' ? SiteKind::Classical : SiteKind::Virtual;
    ++pos_;
    skip_ws();
    expect('(');
    for (int i = 0; i < 4; ++i) {
      out.labels[i] = integer();
      skip_ws();
      if (i < 3) {
        expect(',');
      } else if (!at_end() && peek() == ',') {
        throw ParseError("item takes exactly four labels", pos_);
      }
    }
    expect(')');
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct Occurrence {
  int item = -1;
  int slot = -1;

  bool operator<(const Occurrence& o) const {
    return item != o.item ? item < o.item : slot < o.slot;
  }
  bool operator==(const Occurrence&) const = default;
};

// A passage is one strand's pass through one item: even slots (0,2) or odd
// slots (1,3).
struct Passage {
  int item = -1;
  bool odd = false;
  int label_a = 0;  // at slot 0 or 1
  int label_b = 0;  // at slot 2 or 3
  // Resolved direction: which end the strand arrives at (the head of the
  // incoming edge). -1 unknown, 0 = slot a, 1 = slot b.
  int arrives_at = -1;
};

struct PdAnalysis {
  std::vector<PdItem> items;
  std::map<int, std::vector<Occurrence>> occurrences;
  std::vector<Passage> passages;  // 2 per item: even first
  std::map<int, int> successor;   // per-component cyclic numbering
  std::vector<std::vector<int>> component_labels;
};

int passage_index(int item, int slot) { return 2 * item + (slot & 1); }

int label_at(const PdAnalysis& a, int item, int slot) {
  return a.items[item].labels[slot];
}

// The other occurrence of the same label.
Occurrence mate(const PdAnalysis& a, int label, const Occurrence& occ) {
  const auto& occs = a.occurrences.at(label);
  return occs[0] == occ ? occs[1] : occs[0];
}

void collect_occurrences(PdAnalysis& a) {
  for (int i = 0; i < static_cast<int>(a.items.size()); ++i) {
    for (int slot = 0; slot < 4; ++slot) {
      a.occurrences[a.items[i].labels[slot]].push_back(Occurrence{i, slot});
    }
  }
  for (const auto& [label, occs] : a.occurrences) {
    if (occs.size() != 2) {
      throw ParseError("label " + std::to_string(label) + " appears " +
                           std::to_string(occs.size()) + " times, expected 2",
                       a.items[occs[0].item].position);
    }
  }
  a.passages.resize(2 * a.items.size());
  for (int i = 0; i < static_cast<int>(a.items.size()); ++i) {
    a.passages[2 * i] = Passage{i, false, label_at(a, i, 0), label_at(a, i, 2), -1};
    a.passages[2 * i + 1] = Passage{i, true, label_at(a, i, 1), label_at(a, i, 3), -1};
  }
}

// Walks the strand cycles and checks each component's labels form a
// consecutive run, which is what encodes the orientation.
void infer_components(PdAnalysis& a) {
  std::map<int, bool> visited;
  for (const auto& [label, occs] : a.occurrences) visited[label] = false;
  for (const auto& [start_label, start_occs] : a.occurrences) {
    if (visited.at(start_label)) continue;
    std::vector<int> cycle;
    int label = start_label;
    Occurrence occ = start_occs[0];
    do {
      visited.at(label) = true;
      cycle.push_back(label);
      // Cross the passage at `occ`, continue along the other label there.
      const Passage& p = a.passages[passage_index(occ.item, occ.slot)];
      const int other_slot = (occ.slot + 2) % 4;
      const int next_label = label_at(a, occ.item, other_slot);
      const Occurrence next_occ =
          mate(a, next_label, Occurrence{occ.item, other_slot});
      (void)p;
      label = next_label;
      occ = next_occ;
    } while (label != start_label || !(occ == start_occs[0]));
    // Deduplicate: a 1-edge component visits its label once per walk step.
    std::vector<int> unique_cycle;
    for (int l : cycle) {
      if (std::find(unique_cycle.begin(), unique_cycle.end(), l) ==
          unique_cycle.end()) {
        unique_cycle.push_back(l);
      }
    }
    const auto [lo, hi] =
        std::minmax_element(unique_cycle.begin(), unique_cycle.end());
    if (*hi - *lo + 1 != static_cast<int>(unique_cycle.size())) {
      throw ParseError("orientation inference failure: component labels are "
                       "not a consecutive run",
                       a.items[start_occs[0].item].position);
    }
    for (int l : unique_cycle) {
      a.successor[l] = (l == *hi) ? *lo : l + 1;
    }
    a.component_labels.push_back(unique_cycle);
  }
}

void resolve_directions(PdAnalysis& a) {
  auto succ = [&](int label) { return a.successor.at(label); };

  // Slot-role and succession constraints, passage by passage.
  for (Passage& p : a.passages) {
    const bool a_first_ok = succ(p.label_a) == p.label_b;
    const bool b_first_ok = succ(p.label_b) == p.label_a;
    const std::size_t item_pos = a.items[p.item].position;
    if (!p.odd && a.items[p.item].kind == SiteKind::Classical) {
      // Under passage: the strand arrives at slot 0 and leaves at slot 2.
      if (!a_first_ok) {
        throw ParseError("orientation incoherence: under-strand labels " +
                             std::to_string(p.label_a) + "," +
                             std::to_string(p.label_b) + " are not consecutive",
                         item_pos);
      }
      p.arrives_at = 0;
      continue;
    }
    if (!a_first_ok && !b_first_ok) {
      throw ParseError("orientation inference failure: passage labels " +
                           std::to_string(p.label_a) + "," +
                           std::to_string(p.label_b) + " are not consecutive",
                       item_pos);
    }
    if (a_first_ok != b_first_ok) {
      p.arrives_at = a_first_ok ? 0 : 1;
    }
    // Both directions consistent: a 1- or 2-edge component, deferred.
  }

  // Propagate within components: a resolved passage fixes the whole cycle.
  for (const auto& labels : a.component_labels) {
    // Gather this component's passages (each label contributes its two
    // occurrences; dedupe).
    std::vector<int> passage_ids;
    for (int label : labels) {
      for (const Occurrence& occ : a.occurrences.at(label)) {
        const int pid = passage_index(occ.item, occ.slot);
        if (std::find(passage_ids.begin(), passage_ids.end(), pid) ==
            passage_ids.end()) {
          passage_ids.push_back(pid);
        }
      }
    }
    int resolved = -1;
    for (int pid : passage_ids) {
      if (a.passages[pid].arrives_at >= 0) {
        resolved = pid;
        break;
      }
    }
    if (resolved < 0) {
      // Fully ambiguous component: 1 or 2 edges through over/virtual
      // passages only.
      const Passage& p0 = a.passages[passage_ids[0]];
      if (labels.size() == 1) {
        if (a.items[p0.item].kind == SiteKind::Classical) {
          throw ParseError("over-strand direction ambiguous for label " +
                               std::to_string(labels[0]),
                           a.items[p0.item].position);
        }
        // Single edge through one virtual passage: arrive at the lower slot.
        a.passages[passage_ids[0]].arrives_at = 0;
      } else {
        // Tie-break: the lower label's head sits at its earlier occurrence.
        const int low = *std::min_element(labels.begin(), labels.end());
        const auto& occs = a.occurrences.at(low);
        const Occurrence first = std::min(occs[0], occs[1]);
        Passage& p = a.passages[passage_index(first.item, first.slot)];
        p.arrives_at = (first.slot == (p.odd ? 1 : 0)) ? 0 : 1;
      }
    }
    // Walk the cycle from any resolved passage and orient the rest.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int pid : passage_ids) {
        Passage& p = a.passages[pid];
        if (p.arrives_at < 0) continue;
        // The arriving label's other occurrence must be a departure there,
        // i.e. that passage arrives at its *other* label.
        const int arriving = p.arrives_at == 0 ? p.label_a : p.label_b;
        const int departing = p.arrives_at == 0 ? p.label_b : p.label_a;
        const int arr_slot = (p.odd ? 1 : 0) + (p.arrives_at == 0 ? 0 : 2);
        const Occurrence here_arr{p.item, arr_slot};
        const Occurrence other_arr = mate(a, arriving, here_arr);
        Passage& q = a.passages[passage_index(other_arr.item, other_arr.slot)];
        const int q_side = (other_arr.slot == (q.odd ? 1 : 0)) ? 0 : 1;
        // `arriving` departs from q, so q arrives at its other side only if
        // that side's label precedes `arriving`.
        const int expected = 1 - q_side;
        if (q.arrives_at < 0) {
          q.arrives_at = expected;
          changed = true;
        } else if (q.arrives_at != expected) {
          throw ParseError("orientation incoherence around label " +
                               std::to_string(arriving),
                           a.items[q.item].position);
        }
        // Same propagation forward: the departing label's other occurrence
        // is an arrival.
        const int dep_slot = (p.odd ? 1 : 0) + (p.arrives_at == 0 ? 2 : 0);
        const Occurrence here_dep{p.item, dep_slot};
        const Occurrence other_dep = mate(a, departing, here_dep);
        Passage& r = a.passages[passage_index(other_dep.item, other_dep.slot)];
        const int r_side = (other_dep.slot == (r.odd ? 1 : 0)) ? 0 : 1;
        if (r.arrives_at < 0) {
          r.arrives_at = r_side;
          changed = true;
        } else if (r.arrives_at != r_side) {
          throw ParseError("orientation incoherence around label " +
                               std::to_string(departing),
                           a.items[r.item].position);
        }
      }
    }
  }

  for (const Passage& p : a.passages) {
    if (p.arrives_at < 0) {
      throw ParseError("orientation inference failure",
                       a.items[p.item].position);
    }
  }
}

Diagram build_from_analysis(const PdAnalysis& a) {
  Diagram::Builder builder;
  std::vector<SiteRef> site_of_item(a.items.size());
  for (int i = 0; i < static_cast<int>(a.items.size()); ++i) {
    if (a.items[i].kind == SiteKind::Virtual) continue;
    const Passage& over = a.passages[2 * i + 1];
    const int over_entry = over.arrives_at == 0 ? 1 : 3;
    site_of_item[i] = builder.add_classical(over_entry);
  }
  for (int i = 0; i < static_cast<int>(a.items.size()); ++i) {
    if (a.items[i].kind == SiteKind::Classical) continue;
    site_of_item[i] = builder.add_virtual();
  }
  // Head of a label: the slot where its passage says it arrives.
  for (const auto& [label, occs] : a.occurrences) {
    std::optional<Port> head, tail;
    for (const Occurrence& occ : occs) {
      const Passage& p = a.passages[passage_index(occ.item, occ.slot)];
      const int arr_slot = (p.odd ? 1 : 0) + (p.arrives_at == 0 ? 0 : 2);
      const Port port{site_of_item[occ.item], occ.slot};
      if (occ.slot == arr_slot) {
        if (head) {
          throw ParseError("orientation incoherence: label " +
                               std::to_string(label) + " has two heads",
                           a.items[occ.item].position);
        }
        head = port;
      } else {
        if (tail) {
          throw ParseError("orientation incoherence: label " +
                               std::to_string(label) + " has two tails",
                           a.items[occ.item].position);
        }
        tail = port;
      }
    }
    assert(head && tail);
    builder.add_edge(label, *tail, *head);
  }
  try {
    return std::move(builder).build();
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), 0);
  }
}

// ---------------------------------------------------------------------
// Gauss parsing

struct GaussToken {
  bool over = false;
  int label = 0;
  int sign = 0;
  std::size_t position = 0;
};

std::vector<std::vector<GaussToken>> lex_gauss(std::string_view text) {
  std::vector<std::vector<GaussToken>> components(1);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (c == '|') {
      components.emplace_back();
      ++pos;
      continue;
    }
    GaussToken token;
    token.position = pos;
    if (c != 'O' && c != 'U') throw ParseError("expected 'O' or 'U'", pos);
    token.over = c == 'O';
    ++pos;
    const std::size_t digits_start = pos;
    long value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      if (value > 1'000'000) throw ParseError("crossing label too large", pos);
      ++pos;
    }
    if (pos == digits_start || value == 0) {
      throw ParseError("expected positive crossing label", pos);
    }
    token.label = static_cast<int>(value);
    if (pos >= text.size() || (text[pos] != '+' && text[pos] != '-')) {
      throw ParseError("expected sign '+' or '-'", pos);
    }
    token.sign = text[pos] == '+' ? 1 : -1;
    ++pos;
    components.back().push_back(token);
  }
  for (const auto& comp : components) {
    if (comp.empty()) throw ParseError("empty component", text.size());
  }
  return components;
}

}  // namespace

Diagram parse_pd(std::string_view text) {
  PdAnalysis analysis;
  analysis.items = PdLexer(text).items();
  collect_occurrences(analysis);
  infer_components(analysis);
  resolve_directions(analysis);
  return build_from_analysis(analysis);
}

Diagram parse_gauss(std::string_view text, GaussWiring wiring) {
  const auto components = lex_gauss(text);

  std::map<int, std::pair<const GaussToken*, const GaussToken*>> visits;  // O, U
  std::vector<int> label_order;  // first-visit order
  for (const auto& comp : components) {
    for (const auto& token : comp) {
      auto [it, inserted] = visits.emplace(token.label, std::pair{nullptr, nullptr});
      if (inserted) label_order.push_back(token.label);
      auto& slot = token.over ? it->second.first : it->second.second;
      if (slot != nullptr) {
        throw ParseError("label " + std::to_string(token.label) + " visited " +
                             (token.over ? "over" : "under") + " twice",
                         token.position);
      }
      slot = &token;
    }
  }
  for (const auto& [label, pair] : visits) {
    if (!pair.first || !pair.second) {
      throw ParseError("unpaired label " + std::to_string(label),
                       (pair.first ? pair.first : pair.second)->position);
    }
    if (pair.first->sign != pair.second->sign) {
      throw ParseError("sign mismatch for label " + std::to_string(label),
                       pair.second->position);
    }
  }

  if (wiring == GaussWiring::ReversedInsertion) {
    std::reverse(label_order.begin(), label_order.end());
  }
  Diagram::Builder builder;
  std::map<int, SiteRef> site_of_label;
  for (int label : label_order) {
    const int sign = visits.at(label).first->sign;
    site_of_label[label] = builder.add_classical(sign > 0 ? 3 : 1);
  }

  struct PendingEdge {
    int id;
    Port tail, head;
  };
  std::vector<PendingEdge> pending;
  int next_edge_id = 1;
  for (const auto& comp : components) {
    const int first_edge_of_component = next_edge_id;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const GaussToken& from = comp[i];
      const GaussToken& to = comp[(i + 1) % comp.size()];
      const ClassicalSite from_site{from.sign > 0 ? 3 : 1};
      const ClassicalSite to_site{to.sign > 0 ? 3 : 1};
      const int exit_slot = from.over ? from_site.over_exit_slot() : 2;
      const int entry_slot = to.over ? to_site.over_entry_slot : 0;
      pending.push_back(PendingEdge{
          next_edge_id++,
          Port{site_of_label.at(from.label), exit_slot},
          Port{site_of_label.at(to.label), entry_slot},
      });
    }
    if (wiring == GaussWiring::ReversedInsertion) {
      // Rotate the component's edge numbering by one; the abstract diagram
      // is unchanged.
      const int count = next_edge_id - first_edge_of_component;
      if (count > 1) {
        for (int i = 0; i < count; ++i) {
          auto& e = pending[pending.size() - count + i];
          e.id = first_edge_of_component + (i + 1) % count;
        }
      }
    }
  }
  if (wiring == GaussWiring::ReversedInsertion) {
    std::reverse(pending.begin(), pending.end());
  }
  for (const auto& e : pending) builder.add_edge(e.id, e.tail, e.head);
  try {
    return std::move(builder).build();
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), 0);
  }
}

// ---------------------------------------------------------------------
// Serialization

namespace {

std::optional<std::string> try_serialize(const Diagram& d) {
  // Labels per port.
  std::ostringstream out;
  bool first = true;
  auto emit_site = [&](SiteKind kind, int index) {
    if (!first) out << "; ";
    first = false;
    out << (kind == SiteKind::Classical ? 'X' : 'V') << '(';
    for (int slot = 0; slot < 4; ++slot) {
      const EdgeEnd end = d.edge_end_at(Port{SiteRef{kind, index}, slot});
      out << d.edges()[end.edge_index].id << (slot < 3 ? "," : ")");
    }
  };
  for (int i = 0; i < d.classical_count(); ++i) emit_site(SiteKind::Classical, i);
  for (int i = 0; i < d.virtual_count(); ++i) emit_site(SiteKind::Virtual, i);
  std::string text = out.str();
  try {
    if (parse_pd(text) == d) return text;
  } catch (const ParseError&) {
  }
  return std::nullopt;
}

Diagram with_edge_ids(const Diagram& d, const std::map<int, int>& id_map) {
  Diagram::Builder b;
  for (int i = 0; i < d.classical_count(); ++i) {
    b.add_classical(d.classical(i).over_entry_slot);
  }
  for (int i = 0; i < d.virtual_count(); ++i) b.add_virtual();
  std::vector<const Edge*> order;
  for (const Edge& e : d.edges()) order.push_back(&e);
  std::sort(order.begin(), order.end(), [&](const Edge* x, const Edge* y) {
    return id_map.at(x->id) < id_map.at(y->id);
  });
  for (const Edge* e : order) {
    if (e->is_free_loop()) {
      b.add_free_loop(id_map.at(e->id));
    } else {
      b.add_edge(id_map.at(e->id), *e->tail, *e->head);
    }
  }
  return std::move(b).build();
}

}  // namespace

std::string serialize_pd(const Diagram& d) {
  for (const Edge& e : d.edges()) {
    if (e.is_free_loop()) {
      throw ValidationError("PD text cannot express a free loop");
    }
  }
  if (d.edges().empty()) {
    throw ValidationError("PD text cannot express an empty diagram");
  }

  // Renumber each component consecutively along its orientation. For
  // 2-edge components the parser may have to fall back to its tie-break
  // (the lower label's head sits at its textually earlier occurrence), so
  // pick the starting edge that makes the tie-break recover the true
  // direction. Items are emitted classical-first, in site order.
  auto port_position = [&](const Port& p) {
    const int item = p.site.kind == SiteKind::Classical
                         ? p.site.index
                         : d.classical_count() + p.site.index;
    return std::pair<int, int>(item, p.slot);
  };
  auto head_comes_first = [&](int edge_id) {
    const Edge& e = d.edges()[d.edge_index_of(edge_id)];
    return port_position(*e.head) < port_position(*e.tail);
  };

  std::map<int, int> id_map;
  int next = 1;
  for (const auto& cycle : d.components()) {
    std::vector<int> ordered = cycle;
    if (cycle.size() == 2 && !head_comes_first(cycle[0]) &&
        head_comes_first(cycle[1])) {
      std::swap(ordered[0], ordered[1]);
    }
    for (int id : ordered) id_map[id] = next++;
  }
  Diagram canonical = with_edge_ids(d, id_map);
  if (auto text = try_serialize(canonical)) return *text;
  throw ValidationError("diagram direction is not expressible as PD text");
}

// ---------------------------------------------------------------------
// Polynomial rendering

namespace {

std::string render_term(const Monomial& m, const Coeff& magnitude) {
  std::vector<std::string> pieces;
  if (magnitude != 1 || (m.a_power == 0 && m.k_indices.empty())) {
    pieces.push_back(magnitude.str());
  }
  if (m.a_power != 0) {
    pieces.push_back(m.a_power == 1 ? "A" : "A^" + std::to_string(m.a_power));
  }
  for (std::size_t i = 0; i < m.k_indices.size();) {
    std::size_t j = i;
    while (j < m.k_indices.size() && m.k_indices[j] == m.k_indices[i]) ++j;
    std::string piece = "K" + std::to_string(m.k_indices[i]);
    if (j - i > 1) piece += "^" + std::to_string(j - i);
    pieces.push_back(piece);
    i = j;
  }
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i > 0) out += "*";
    out += pieces[i];
  }
  return out;
}

}  // namespace

std::string render_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    const Coeff magnitude = negative ? Coeff(-c) : c;
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    out += render_term(m, magnitude);
  }
  return out;
}

// ---------------------------------------------------------------------
// Reports

std::string emit_report(std::string_view input, const ComputeResult& r) {
  nlohmann::ordered_json j;
  j["input"] = std::string(input);
  j["writhe"] = r.writhe;
  j["unnormalized"] = render_polynomial(r.unnormalized);
  j["normalized"] = render_polynomial(r.normalized);
  j["as_set"] = r.profile.as_set;
  j["max_k_degree"] = r.profile.max_k_degree;
  j["vcn_lower_bound"] = r.profile.vcn_lower_bound;
  j["genus_lower_bound"] = r.profile.genus_lower_bound;
  j["state_count"] = r.state_count;
  j["elapsed_ms"] = r.elapsed_ms;
  return j.dump();
}

std::string render_report_text(std::string_view input, const ComputeResult& r) {
  std::ostringstream out;
  out << "input: " << input << "\n";
  out << "writhe: " << r.writhe << "\n";
  out << "unnormalized: " << render_polynomial(r.unnormalized) << "\n";
  out << "normalized: " << render_polynomial(r.normalized) << "\n";
  out << "as_set: [";
  bool first = true;
  for (int k : r.profile.as_set) {
    if (!first) out << ", ";
    first = false;
    out << k;
  }
  out << "]\n";
  out << "max_k_degree: " << r.profile.max_k_degree << "\n";
  out << "vcn_lower_bound: " << r.profile.vcn_lower_bound << "\n";
  out << "genus_lower_bound: " << r.profile.genus_lower_bound << "\n";
  out << "state_count: " << r.state_count << "\n";
  out << "elapsed_ms: " << r.elapsed_ms << "\n";
  return out.str();
}

}  // namespace arrowpoly
