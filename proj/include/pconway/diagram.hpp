#pragma once
// Oriented link diagrams as signed PD codes, plus crossing surgery.
//
// A crossing is stored as its PD tuple X[a,b,c,d]: arcs listed
// counterclockwise starting at the incoming under-arc, so a -> c is the
// under-strand. The over-strand runs d -> b on a positive crossing and
// b -> d on a negative one. Arc labels are positive integers; every label
// occurs exactly once as an incoming and once as an outgoing arc end.
// Crossingless unknotted components have no PD representation and are
// tracked as a count of free loops.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pconway/errors.hpp"

namespace pconway {

struct Crossing {
  std::array<int, 4> pd{};
  int sign = 1;

  int under_in() const { return pd[0]; }
  int under_out() const { return pd[2]; }
  int over_in() const { return sign > 0 ? pd[3] : pd[1]; }
  int over_out() const { return sign > 0 ? pd[1] : pd[3]; }

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Partition of a diagram's components. Cycles of the arc-succession map
/// are numbered first, ordered by their smallest arc label; free loops take
/// the indices after them.
struct ComponentLabeling {
  int count = 0;
  int free_loop_base = 0;
  /// Indexed by arc label; -1 where the label is unused.
  std::vector<int> of_arc;

  int component_of(int arc) const { return of_arc.at(static_cast<std::size_t>(arc)); }
};

class LinkDiagram {
 public:
  LinkDiagram() = default;

  /// Validates orientation consistency, signs and planarity.
  /// Throws ValidationError.
  LinkDiagram(std::vector<Crossing> crossings, int free_loops);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  std::size_t crossing_count() const { return crossings_.size(); }
  int free_loops() const { return free_loops_; }
  /// Largest arc label in use, 0 when there are no crossings.
  int max_label() const { return max_label_; }
  bool empty() const { return crossings_.empty() && free_loops_ == 0; }

  /// Arcs in ascending label order.
  std::vector<int> arcs() const;

  /// Arc that follows `arc` along its component.
  std::vector<int> successor_map() const;

  friend bool operator==(const LinkDiagram&, const LinkDiagram&) = default;

 private:
  struct Unchecked {};
  LinkDiagram(std::vector<Crossing> crossings, int free_loops, Unchecked);
  friend class DiagramSurgeon;

  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  int max_label_ = 0;
};

/// Parses whitespace-separated tuples "X[a,b,c,d]", optionally wrapped in
/// "PD[...]" and separated by commas. '#' starts a line comment. Crossing
/// signs are inferred from the global orientation; an over-strand whose
/// direction no under-pass determines follows the successive-label
/// convention (b = d + 1, or d > b + 1, means positive).
LinkDiagram parse_pd(std::string_view text);
std::string render_pd(const LinkDiagram& d);

ComponentLabeling components(const LinkDiagram& d);

/// Exchanges over and under at crossing c and negates its sign.
LinkDiagram switch_crossing(const LinkDiagram& d, std::size_t c);

/// Oriented smoothing at crossing c: over-in continues as under-out and
/// under-in as over-out. Merged arc chains keep their smallest surviving
/// label; chains that close up without crossings become free loops.
LinkDiagram smooth_crossing(const LinkDiagram& d, std::size_t c);

/// Reverses the orientation of one component.
LinkDiagram reverse_component(const LinkDiagram& d, int component);

/// Applies Reidemeister I and II reductions until none applies.
LinkDiagram simplify(const LinkDiagram& d);

/// Half the signed count of crossings between components i and j.
/// Throws std::invalid_argument when i == j or an index is out of range.
int linking_number(const LinkDiagram& d, int i, int j);

/// Number of connected pieces of the projection, crossingless loops
/// included. Two or more pieces means the link is split.
int projection_pieces(const LinkDiagram& d);

/// Faces of the projection surface, one entry per face listing darts
/// (4 * crossing + position). Used for planarity and R1/R2 detection.
std::vector<std::vector<int>> diagram_faces(const LinkDiagram& d);

/// Disjoint union; arcs of b are shifted past a's labels.
LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b);

/// Renumbers arcs so that labels are 1..2n, preserving label order.
LinkDiagram compact_labels(const LinkDiagram& d);

}  // namespace pconway
