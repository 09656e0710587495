#pragma once
// Periodic links presented as annular Morse tapes.
//
// A quotient pattern is a left-to-right sequence of events on oriented
// strands inside a rectangle whose left and right edges are glued. The
// glue line is a ray from the rotation axis, so a component's signed number
// of glue-line passes is its linking number with the axis, and the p-fold
// cyclic lift is the annular closure of p concatenated copies of the tape.
//
// Strand positions are numbered from the top. Cross(i) exchanges strands i
// and i+1; Cup(i) inserts a new pair at positions i, i+1; Cap(i) joins the
// pair at i, i+1, which must run in opposite directions.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pconway/diagram.hpp"

namespace pconway {

enum class Direction : std::uint8_t { rightward, leftward };

inline Direction reversed(Direction d) {
  return d == Direction::rightward ? Direction::leftward : Direction::rightward;
}

struct CrossEvent {
  int pos = 0;
  int sign = 1;
  friend bool operator==(const CrossEvent&, const CrossEvent&) = default;
};
struct CupEvent {
  int pos = 0;
  /// Direction of the new strand at `pos`; the one below runs opposite.
  Direction upper = Direction::rightward;
  friend bool operator==(const CupEvent&, const CupEvent&) = default;
};
struct CapEvent {
  int pos = 0;
  friend bool operator==(const CapEvent&, const CapEvent&) = default;
};

using TapeEvent = std::variant<CrossEvent, CupEvent, CapEvent>;

struct QuotientPattern {
  std::vector<Direction> boundary;
  std::vector<TapeEvent> events;

  std::size_t boundary_width() const { return boundary.size(); }
  std::size_t cross_count() const;
  friend bool operator==(const QuotientPattern&, const QuotientPattern&) = default;
};

struct PatternCheck {
  bool ok = true;
  std::string message;
  /// Offending event, or the event count for a boundary mismatch.
  std::size_t event_index = 0;
  int component_count = 0;
};

PatternCheck validate_pattern(const QuotientPattern& q);
/// Throws ValidationError carrying the diagnostic.
void require_valid(const QuotientPattern& q);

/// Lifted components grouped into orbits of the rotation. Orbit i is the
/// preimage of quotient component i; positions within an orbit follow the
/// copy in which a fixed reference point of that quotient component lands.
struct OrbitLabeling {
  std::vector<int> orbit_of;
  std::vector<int> position_of;
  /// Component that the rotation sends each component to.
  std::vector<int> rotation;
  std::vector<int> orbit_sizes;

  /// Lifted component at (orbit, position).
  int component(int orbit, int position) const;
};

struct Lift {
  LinkDiagram diagram;
  OrbitLabeling orbits;
  /// For each lifted crossing: (copy, event index in the quotient tape).
  std::vector<std::pair<int, std::size_t>> crossing_origin;
};

/// Quotient components are numbered as the components of this diagram.
LinkDiagram quotient_diagram(const QuotientPattern& q);
Lift lift(const QuotientPattern& q, int p);

/// Diagram crossing id for each Cross event (by event index), -1 otherwise.
std::vector<int> quotient_crossing_ids(const QuotientPattern& q);

std::vector<long> winding_numbers(const QuotientPattern& q);

/// Every quotient winding vanishes mod p. When true, the lift is checked for
/// a free rotation action and p times as many components; a mismatch throws
/// std::logic_error.
bool is_strongly_periodic(const QuotientPattern& q, int p);

/// All pairwise quotient linking numbers vanish.
bool is_orbitally_separated(const QuotientPattern& q);

struct TypeMDecomposition {
  int m = 0;
  /// Quotient component pairs (K_i, K_i').
  std::vector<std::pair<int, int>> quotient_pairs;
  /// The same pairs as lifted component indices.
  std::vector<std::pair<int, int>> invariant_pairs;
  /// Quotient components of the strongly periodic part.
  std::vector<int> periodic_quotient;
  /// Lifted components of the strongly periodic part.
  std::vector<int> periodic_part;
};

/// Searches for a type-m structure with prime p. Components with winding
/// divisible by p form the periodic part, which must be orbitally
/// separated; the rest must pair up with cancelling windings mod p and
/// opposite linking with every periodic-part component. Returns nullopt
/// when no such pairing exists.
std::optional<TypeMDecomposition> classify_type_m(const QuotientPattern& q, int p);

/// Copy of q with Cross event `event` given the stated sign.
QuotientPattern with_cross_sign(const QuotientPattern& q, std::size_t event, int sign);
/// Oriented smoothing of Cross event `event`: removed when both strands run
/// the same way, otherwise replaced by Cap then Cup at the same position.
QuotientPattern smooth_cross(const QuotientPattern& q, std::size_t event);

struct EquivariantTriple {
  std::size_t crossing = 0;
  QuotientPattern quotient_plus;
  QuotientPattern quotient_minus;
  QuotientPattern quotient_zero;
  Lift plus;
  Lift minus;
  Lift zero;
};

EquivariantTriple equivariant_triple(const QuotientPattern& q, std::size_t event, int p);

struct PatternConfig {
  int boundary_width = 2;
  int event_count = 6;
  int p = 3;
  bool require_os = false;
  bool require_strong = false;
  /// Strand-count ceiling during the tape; negative means width + 4.
  int max_width = -1;
  /// Ceiling on Cross events; negative means unlimited.
  int max_crossings = -1;
  /// Fixed boundary directions; random when absent.
  std::optional<std::vector<Direction>> boundary;
  /// Require classify_type_m to succeed with exactly this m.
  std::optional<int> require_type_m;
  bool require_nonempty = true;
  int max_rejections = 20000;
};

struct PatternGenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Draws tapes uniformly among all valid tapes with the configured boundary,
/// event count and width ceiling, rejecting until the predicates hold.
QuotientPattern random_pattern(const PatternConfig& config, std::uint64_t seed);

bool is_prime(long n);

}  // namespace pconway
