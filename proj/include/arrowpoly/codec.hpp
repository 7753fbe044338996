#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "arrowpoly/analysis.hpp"
#include "arrowpoly/diagram.hpp"
#include "arrowpoly/poly.hpp"

namespace arrowpoly {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = 0;
};

// Extended PD code: items X(a,b,c,d) / V(a,b,c,d) separated by semicolons,
// labels in counterclockwise slot order starting at the incoming
// under-strand. Orientation is encoded by consecutive edge numbering along
// each component.
Diagram parse_pd(std::string_view text);

// Canonical PD text for a diagram: X items in site order, then V items.
// Edge ids are kept when they already satisfy the PD numbering rules and
// renumbered otherwise, so parse_pd(serialize_pd(d)) reproduces d.
std::string serialize_pd(const Diagram& d);

enum class GaussWiring {
  CodeOrder,          // sites by first visit, edges numbered along the code
  ReversedInsertion,  // same abstract diagram, reversed construction order
};

// Oriented signed Gauss code: per component, whitespace separated tokens
// O<n><s> / U<n><s> with s in {+,-}; components separated by '|'. The
// diagram is wired directly in code order with no virtual sites: any
// realization of a Gauss code is detour-equivalent, so the transparent
// wiring is as good as a drawing.
Diagram parse_gauss(std::string_view text,
                    GaussWiring wiring = GaussWiring::CodeOrder);

// Canonical polynomial text. Terms in canonical monomial order, formatted
// like "-3*A^-2*K1^2*K2", joined with " + " / " - "; the zero polynomial
// renders as "0".
std::string render_polynomial(const Polynomial& p);

// Everything the tool reports about one diagram.
struct ComputeResult {
  int writhe = 0;
  Polynomial unnormalized;
  Polynomial normalized;
  KDegreeProfile profile;
  std::uint64_t state_count = 0;
  std::int64_t elapsed_ms = 0;
};

// JSON report with a fixed field order; round-trips through any JSON
// parser. `input` is echoed verbatim.
std::string emit_report(std::string_view input, const ComputeResult& result);

// The same values as plain "key: value" lines.
std::string render_report_text(std::string_view input, const ComputeResult& result);

}  // namespace arrowpoly
