#include "pconway/periodic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "pconway/linking.hpp"
#include "union_find.hpp"

namespace pconway {

std::size_t QuotientPattern::cross_count() const {
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const auto& e) {
    return std::holds_alternative<CrossEvent>(e);
  }));
}

int OrbitLabeling::component(int orbit, int position) const {
  for (std::size_t k = 0; k < orbit_of.size(); ++k)
    if (orbit_of[k] == orbit && position_of[k] == position) return static_cast<int>(k);
  throw std::out_of_range("no lifted component at orbit " + std::to_string(orbit) +
                          ", position " + std::to_string(position));
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

const char* dir_name(Direction d) { return d == Direction::rightward ? "R" : "L"; }

PatternCheck check_events(const QuotientPattern& q) {
  PatternCheck r;
  std::vector<Direction> dirs = q.boundary;
  auto fail = [&](std::size_t k, std::string msg) {
    r.ok = false;
    r.event_index = k;
    r.message = "event " + std::to_string(k) + ": " + std::move(msg);
    return r;
  };
  for (std::size_t k = 0; k < q.events.size(); ++k) {
    const int w = static_cast<int>(dirs.size());
    if (const auto* c = std::get_if<CrossEvent>(&q.events[k])) {
      if (c->pos < 0 || c->pos + 1 >= w)
        return fail(k, "cross at position " + std::to_string(c->pos) + " needs two strands; " +
                           std::to_string(w) + " active");
      if (c->sign != 1 && c->sign != -1) return fail(k, "cross sign must be +1 or -1");
      std::swap(dirs[static_cast<std::size_t>(c->pos)], dirs[static_cast<std::size_t>(c->pos) + 1]);
    } else if (const auto* u = std::get_if<CupEvent>(&q.events[k])) {
      if (u->pos < 0 || u->pos > w)
        return fail(k, "cup at position " + std::to_string(u->pos) + " outside 0.." +
                           std::to_string(w));
      const auto at = dirs.begin() + u->pos;
      dirs.insert(at, {u->upper, reversed(u->upper)});
    } else {
      const auto& a = std::get<CapEvent>(q.events[k]);
      if (a.pos < 0 || a.pos + 1 >= w)
        return fail(k, "cap at position " + std::to_string(a.pos) + " needs two strands; " +
                           std::to_string(w) + " active");
      const auto i = static_cast<std::size_t>(a.pos);
      if (dirs[i] == dirs[i + 1])
        return fail(k, std::string("cap joins two strands both running ") + dir_name(dirs[i]));
      dirs.erase(dirs.begin() + a.pos, dirs.begin() + a.pos + 2);
    }
  }
  if (dirs != q.boundary) {
    std::string have, want;
    for (auto d : dirs) have += dir_name(d);
    for (auto d : q.boundary) want += dir_name(d);
    r.ok = false;
    r.event_index = q.events.size();
    r.message = "tape ends with strands [" + have + "] but the boundary is [" + want + "]";
  }
  return r;
}

/// Direction of every strand just before event `event`.
std::vector<Direction> directions_before(const QuotientPattern& q, std::size_t event) {
  std::vector<Direction> dirs = q.boundary;
  for (std::size_t k = 0; k < event; ++k) {
    if (const auto* c = std::get_if<CrossEvent>(&q.events[k])) {
      std::swap(dirs[static_cast<std::size_t>(c->pos)], dirs[static_cast<std::size_t>(c->pos) + 1]);
    } else if (const auto* u = std::get_if<CupEvent>(&q.events[k])) {
      dirs.insert(dirs.begin() + u->pos, {u->upper, reversed(u->upper)});
    } else {
      const int pos = std::get<CapEvent>(q.events[k]).pos;
      dirs.erase(dirs.begin() + pos, dirs.begin() + pos + 2);
    }
  }
  return dirs;
}

class GrowingUnionFind {
 public:
  int make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<int> parent_;
};

struct TapeCrossing {
  // Segments at the four corners.
  int nw, sw, ne, se;
  Direction upper_dir;  // strand running NW-SE
  Direction lower_dir;  // strand running SW-NE
  int sign;
  int copy;
  std::size_t event;
};

struct ClosedTape {
  LinkDiagram diagram;
  ComponentLabeling labeling;
  /// Diagram component at every (slice, position); slice s sits before
  /// global event s.
  std::vector<std::vector<int>> slice_components;
  std::vector<std::pair<int, std::size_t>> crossing_origin;
  std::vector<long> winding;
};

// Travel direction of the two strands through a crossing cell, in a frame
// with time to the right and position 0 on top.
struct Vec {
  int x, y;
};
Vec upper_vec(Direction d) { return d == Direction::rightward ? Vec{1, -1} : Vec{-1, 1}; }
Vec lower_vec(Direction d) { return d == Direction::rightward ? Vec{1, 1} : Vec{-1, -1}; }

Crossing to_pd(const TapeCrossing& t, const std::vector<int>& label_of_seg_root,
               GrowingUnionFind& arcs) {
  const Vec a = upper_vec(t.upper_dir);
  const Vec b = lower_vec(t.lower_dir);
  const int upper_over_sign = (a.x * b.y - a.y * b.x) > 0 ? 1 : -1;
  const bool upper_is_over = upper_over_sign == t.sign;
  // Corners counterclockwise from the east: NE, NW, SW, SE.
  const std::array<int, 4> ring{t.ne, t.nw, t.sw, t.se};
  int start = 0;
  if (upper_is_over) {
    start = t.lower_dir == Direction::rightward ? 2 : 0;  // lower enters at SW or NE
  } else {
    start = t.upper_dir == Direction::rightward ? 1 : 3;  // upper enters at NW or SE
  }
  Crossing c;
  for (std::size_t k = 0; k < 4; ++k) {
    const int seg = ring[(static_cast<std::size_t>(start) + k) % 4];
    c.pd[k] = label_of_seg_root[static_cast<std::size_t>(arcs.find(seg))];
  }
  c.sign = t.sign;
  return c;
}

ClosedTape close_tape(const QuotientPattern& q, int copies) {
  require_valid(q);
  GrowingUnionFind arcs;
  std::vector<int> seg;
  std::vector<Direction> dirs = q.boundary;
  for (std::size_t i = 0; i < q.boundary.size(); ++i) seg.push_back(arcs.make());
  const std::vector<int> initial = seg;

  std::vector<std::vector<int>> slice_segs;
  std::vector<TapeCrossing> crossings;
  std::vector<std::pair<int, int>> through;  // same strand on both sides of a crossing

  for (int copy = 0; copy < copies; ++copy) {
    for (std::size_t k = 0; k < q.events.size(); ++k) {
      slice_segs.push_back(seg);
      const auto& ev = q.events[k];
      if (const auto* c = std::get_if<CrossEvent>(&ev)) {
        const auto i = static_cast<std::size_t>(c->pos);
        TapeCrossing t{seg[i], seg[i + 1], arcs.make(), arcs.make(), dirs[i], dirs[i + 1],
                       c->sign, copy, k};
        through.emplace_back(t.nw, t.se);
        through.emplace_back(t.sw, t.ne);
        seg[i] = t.ne;
        seg[i + 1] = t.se;
        std::swap(dirs[i], dirs[i + 1]);
        crossings.push_back(t);
      } else if (const auto* u = std::get_if<CupEvent>(&ev)) {
        const int s = arcs.make();
        seg.insert(seg.begin() + u->pos, {s, s});
        dirs.insert(dirs.begin() + u->pos, {u->upper, reversed(u->upper)});
      } else {
        const int pos = std::get<CapEvent>(ev).pos;
        arcs.unite(seg[static_cast<std::size_t>(pos)], seg[static_cast<std::size_t>(pos) + 1]);
        seg.erase(seg.begin() + pos, seg.begin() + pos + 2);
        dirs.erase(dirs.begin() + pos, dirs.begin() + pos + 2);
      }
    }
  }
  slice_segs.push_back(seg);
  for (std::size_t i = 0; i < seg.size(); ++i) arcs.unite(seg[i], initial[i]);

  std::vector<int> label(arcs.size(), 0);
  int next_label = 0;
  for (const auto& t : crossings) {
    for (int s : {t.nw, t.sw, t.ne, t.se}) {
      auto& l = label[static_cast<std::size_t>(arcs.find(s))];
      if (l == 0) l = ++next_label;
    }
  }
  int free_loops = 0;
  std::vector<int> loop_ordinal(arcs.size(), -1);
  for (int s = 0; s < static_cast<int>(arcs.size()); ++s) {
    const int r = arcs.find(s);
    if (label[static_cast<std::size_t>(r)] == 0 && loop_ordinal[static_cast<std::size_t>(r)] < 0)
      loop_ordinal[static_cast<std::size_t>(r)] = free_loops++;
  }

  std::vector<Crossing> pd;
  pd.reserve(crossings.size());
  ClosedTape out;
  for (const auto& t : crossings) {
    pd.push_back(to_pd(t, label, arcs));
    out.crossing_origin.emplace_back(t.copy, t.event);
  }
  out.diagram = LinkDiagram(std::move(pd), free_loops);
  out.labeling = components(out.diagram);

  auto component_of_seg = [&](int s) {
    const int r = arcs.find(s);
    const int l = label[static_cast<std::size_t>(r)];
    if (l > 0) return out.labeling.component_of(l);
    return out.labeling.free_loop_base + loop_ordinal[static_cast<std::size_t>(r)];
  };
  out.slice_components.reserve(slice_segs.size());
  for (const auto& s : slice_segs) {
    std::vector<int> row;
    row.reserve(s.size());
    for (int x : s) row.push_back(component_of_seg(x));
    out.slice_components.push_back(std::move(row));
  }
  out.winding.assign(static_cast<std::size_t>(out.labeling.count), 0);
  for (std::size_t i = 0; i < q.boundary.size(); ++i) {
    const auto comp = static_cast<std::size_t>(out.slice_components.front()[i]);
    out.winding[comp] += q.boundary[i] == Direction::rightward ? 1 : -1;
  }
  return out;
}

}  // namespace

PatternCheck validate_pattern(const QuotientPattern& q) {
  PatternCheck r = check_events(q);
  if (!r.ok) return r;
  r.component_count = close_tape(q, 1).labeling.count;
  return r;
}

void require_valid(const QuotientPattern& q) {
  const PatternCheck r = check_events(q);
  if (!r.ok) throw ValidationError("invalid pattern: " + r.message);
}

LinkDiagram quotient_diagram(const QuotientPattern& q) { return close_tape(q, 1).diagram; }

std::vector<int> quotient_crossing_ids(const QuotientPattern& q) {
  std::vector<int> ids(q.events.size(), -1);
  int next = 0;
  for (std::size_t k = 0; k < q.events.size(); ++k)
    if (std::holds_alternative<CrossEvent>(q.events[k])) ids[k] = next++;
  return ids;
}

std::vector<long> winding_numbers(const QuotientPattern& q) { return close_tape(q, 1).winding; }

Lift lift(const QuotientPattern& q, int p) {
  if (p < 2) throw std::invalid_argument("lift needs p >= 2");
  const ClosedTape base = close_tape(q, 1);
  ClosedTape up = close_tape(q, p);
  const std::size_t events = q.events.size();

  Lift out;
  const auto n = static_cast<std::size_t>(up.labeling.count);
  auto& orb = out.orbits;
  orb.orbit_of.assign(n, -1);
  orb.position_of.assign(n, -1);
  orb.rotation.assign(n, -1);
  for (int i = 0; i < base.labeling.count; ++i) {
    // First (slice, position) of quotient component i.
    std::size_t slice = 0;
    std::size_t pos = 0;
    bool found = false;
    for (std::size_t s = 0; s < base.slice_components.size() && !found; ++s) {
      for (std::size_t k = 0; k < base.slice_components[s].size(); ++k) {
        if (base.slice_components[s][k] == i) {
          slice = s;
          pos = k;
          found = true;
          break;
        }
      }
    }
    if (!found) throw std::logic_error("quotient component never meets a slice");
    if (slice == events) slice = 0;  // the closing slice equals the boundary
    std::vector<int> hit(static_cast<std::size_t>(p));
    for (int c = 0; c < p; ++c) {
      const std::size_t global = static_cast<std::size_t>(c) * events + slice;
      hit[static_cast<std::size_t>(c)] = up.slice_components[global][pos];
    }
    int size = 0;
    for (int c = 0; c < p; ++c) {
      const auto comp = static_cast<std::size_t>(hit[static_cast<std::size_t>(c)]);
      if (orb.orbit_of[comp] < 0) {
        orb.orbit_of[comp] = i;
        orb.position_of[comp] = size++;
      }
      orb.rotation[comp] = hit[static_cast<std::size_t>((c + 1) % p)];
    }
    orb.orbit_sizes.push_back(size);
  }
  for (std::size_t k = 0; k < n; ++k)
    if (orb.orbit_of[k] < 0) throw std::logic_error("lifted component outside every orbit");

  out.diagram = std::move(up.diagram);
  out.crossing_origin = std::move(up.crossing_origin);
  return out;
}

bool is_strongly_periodic(const QuotientPattern& q, int p) {
  if (p < 2) throw std::invalid_argument("period must be >= 2");
  const auto w = winding_numbers(q);
  const bool strong = std::all_of(w.begin(), w.end(), [p](long x) { return x % p == 0; });
  if (strong) {
    const Lift l = lift(q, p);
    const bool free_action = std::all_of(l.orbits.orbit_sizes.begin(), l.orbits.orbit_sizes.end(),
                                         [p](int s) { return s == p; });
    const bool counts = components(l.diagram).count == p * static_cast<int>(w.size());
    if (!free_action || !counts)
      throw std::logic_error("strong periodicity conditions disagree on the lift");
  }
  return strong;
}

bool is_orbitally_separated(const QuotientPattern& q) {
  return build_linking_matrix(quotient_diagram(q)).is_zero();
}

std::optional<TypeMDecomposition> classify_type_m(const QuotientPattern& q, int p) {
  if (!is_prime(p)) throw std::invalid_argument("type-m classification needs a prime period");
  const auto w = winding_numbers(q);
  const auto lk = build_linking_matrix(quotient_diagram(q));
  const int n = static_cast<int>(w.size());
  const auto mod = [p](long x) { return ((x % p) + p) % p; };

  std::vector<int> periodic, candidates;
  for (int i = 0; i < n; ++i) (mod(w[static_cast<std::size_t>(i)]) == 0 ? periodic : candidates).push_back(i);
  for (std::size_t a = 0; a < periodic.size(); ++a)
    for (std::size_t b = a + 1; b < periodic.size(); ++b)
      if (sgn(lk(static_cast<std::size_t>(periodic[a]), static_cast<std::size_t>(periodic[b]))) != 0)
        return std::nullopt;
  if (candidates.size() % 2 != 0) return std::nullopt;

  auto compatible = [&](int a, int b) {
    if (mod(w[static_cast<std::size_t>(a)] + w[static_cast<std::size_t>(b)]) != 0) return false;
    for (int l : periodic)
      if (lk(static_cast<std::size_t>(a), static_cast<std::size_t>(l)) !=
          -lk(static_cast<std::size_t>(b), static_cast<std::size_t>(l)))
        return false;
    return true;
  };

  std::vector<std::pair<int, int>> pairs;
  std::vector<char> used(candidates.size(), 0);
  // Exhaustive perfect-matching search; the candidate list is tiny.
  auto search = [&](auto&& self) -> bool {
    std::size_t first = 0;
    while (first < candidates.size() && used[first]) ++first;
    if (first == candidates.size()) return true;
    used[first] = 1;
    for (std::size_t j = first + 1; j < candidates.size(); ++j) {
      if (used[j] || !compatible(candidates[first], candidates[j])) continue;
      used[j] = 1;
      pairs.emplace_back(candidates[first], candidates[j]);
      if (self(self)) return true;
      pairs.pop_back();
      used[j] = 0;
    }
    used[first] = 0;
    return false;
  };
  if (!search(search)) return std::nullopt;

  const Lift l = lift(q, p);
  TypeMDecomposition t;
  t.m = static_cast<int>(pairs.size());
  t.quotient_pairs = pairs;
  t.periodic_quotient = periodic;
  for (auto [a, b] : pairs)
    t.invariant_pairs.emplace_back(l.orbits.component(a, 0), l.orbits.component(b, 0));
  for (std::size_t k = 0; k < l.orbits.orbit_of.size(); ++k)
    if (std::find(periodic.begin(), periodic.end(), l.orbits.orbit_of[k]) != periodic.end())
      t.periodic_part.push_back(static_cast<int>(k));
  return t;
}

QuotientPattern with_cross_sign(const QuotientPattern& q, std::size_t event, int sign) {
  if (event >= q.events.size() || !std::holds_alternative<CrossEvent>(q.events[event]))
    throw std::invalid_argument("event " + std::to_string(event) + " is not a crossing");
  QuotientPattern r = q;
  std::get<CrossEvent>(r.events[event]).sign = sign;
  return r;
}

QuotientPattern smooth_cross(const QuotientPattern& q, std::size_t event) {
  if (event >= q.events.size() || !std::holds_alternative<CrossEvent>(q.events[event]))
    throw std::invalid_argument("event " + std::to_string(event) + " is not a crossing");
  require_valid(q);
  const int pos = std::get<CrossEvent>(q.events[event]).pos;
  const auto dirs = directions_before(q, event);
  const Direction upper = dirs[static_cast<std::size_t>(pos)];
  const Direction lower = dirs[static_cast<std::size_t>(pos) + 1];
  QuotientPattern r = q;
  r.events.erase(r.events.begin() + static_cast<std::ptrdiff_t>(event));
  if (upper != lower) {
    // The turnback keeps the post-crossing directions: lower's on top.
    r.events.insert(r.events.begin() + static_cast<std::ptrdiff_t>(event),
                    {CapEvent{pos}, CupEvent{pos, lower}});
  }
  return r;
}

EquivariantTriple equivariant_triple(const QuotientPattern& q, std::size_t event, int p) {
  EquivariantTriple t;
  t.crossing = event;
  t.quotient_plus = with_cross_sign(q, event, 1);
  t.quotient_minus = with_cross_sign(q, event, -1);
  t.quotient_zero = smooth_cross(q, event);
  t.plus = lift(t.quotient_plus, p);
  t.minus = lift(t.quotient_minus, p);
  t.zero = lift(t.quotient_zero, p);
  return t;
}

// ---------------------------------------------------------------------------
// Random tapes
// ---------------------------------------------------------------------------

namespace {

/// Strand direction words up to a fixed length, packed as
/// (2^len - 1) + bits with bit k set when position k runs leftward.
class WordSpace {
 public:
  explicit WordSpace(int max_len) : max_len_(max_len) {}

  std::size_t size() const { return (std::size_t{1} << (max_len_ + 1)) - 1; }
  static std::size_t index(int len, std::uint32_t bits) {
    return ((std::size_t{1} << len) - 1) + bits;
  }
  static std::pair<int, std::uint32_t> decode(std::size_t index) {
    int len = 0;
    while (((std::size_t{1} << (len + 1)) - 1) <= index) ++len;
    return {len, static_cast<std::uint32_t>(index - ((std::size_t{1} << len) - 1))};
  }

  /// Legal events from a word, with the resulting word.
  std::vector<std::pair<TapeEvent, std::size_t>> moves(std::size_t word) const {
    const auto [len, bits] = decode(word);
    std::vector<std::pair<TapeEvent, std::size_t>> out;
    auto bit = [&](int k) { return (bits >> k) & 1u; };
    for (int pos = 0; pos + 1 < len; ++pos) {
      std::uint32_t swapped = bits & ~((1u << pos) | (1u << (pos + 1)));
      swapped |= bit(pos) << (pos + 1);
      swapped |= bit(pos + 1) << pos;
      for (int sign : {1, -1}) out.emplace_back(CrossEvent{pos, sign}, index(len, swapped));
    }
    if (len + 2 <= max_len_) {
      for (int pos = 0; pos <= len; ++pos) {
        const std::uint32_t low = bits & ((1u << pos) - 1);
        const std::uint32_t high = (bits >> pos) << (pos + 2);
        for (Direction up : {Direction::rightward, Direction::leftward}) {
          const std::uint32_t pair = up == Direction::leftward ? 1u : 2u;
          out.emplace_back(CupEvent{pos, up}, index(len + 2, low | (pair << pos) | high));
        }
      }
    }
    for (int pos = 0; pos + 1 < len; ++pos) {
      if (bit(pos) == bit(pos + 1)) continue;
      const std::uint32_t low = bits & ((1u << pos) - 1);
      const std::uint32_t high = (bits >> (pos + 2)) << pos;
      out.emplace_back(CapEvent{pos}, index(len - 2, low | high));
    }
    return out;
  }

 private:
  int max_len_;
};

std::uint32_t encode(const std::vector<Direction>& dirs) {
  std::uint32_t bits = 0;
  for (std::size_t k = 0; k < dirs.size(); ++k)
    if (dirs[k] == Direction::leftward) bits |= 1u << k;
  return bits;
}

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Counts of tapes of each remaining length ending at the target word.
struct TapeCounts {
  std::vector<std::vector<double>> ways;  // [remaining][word]
};

TapeCounts count_tapes(const WordSpace& space, std::size_t target, int steps) {
  TapeCounts t;
  t.ways.assign(static_cast<std::size_t>(steps) + 1, std::vector<double>(space.size(), 0.0));
  t.ways[0][target] = 1.0;
  std::vector<std::vector<std::pair<TapeEvent, std::size_t>>> moves(space.size());
  for (std::size_t w = 0; w < space.size(); ++w) moves[w] = space.moves(w);
  for (std::size_t r = 1; r <= static_cast<std::size_t>(steps); ++r)
    for (std::size_t w = 0; w < space.size(); ++w) {
      double sum = 0.0;
      for (const auto& m : moves[w]) sum += t.ways[r - 1][m.second];
      t.ways[r][w] = sum;
    }
  return t;
}

}  // namespace

QuotientPattern random_pattern(const PatternConfig& config, std::uint64_t seed) {
  if (config.boundary_width < 0 || config.event_count < 0 || config.p < 2)
    throw std::invalid_argument("random_pattern: width and event count must be >= 0, p >= 2");
  const int max_width = config.max_width >= 0 ? config.max_width : config.boundary_width + 4;
  if (max_width < config.boundary_width || max_width > 20)
    throw std::invalid_argument("random_pattern: width ceiling out of range");
  if (config.boundary && static_cast<int>(config.boundary->size()) != config.boundary_width)
    throw std::invalid_argument("random_pattern: fixed boundary has the wrong width");

  const WordSpace space(max_width);
  std::mt19937_64 rng(seed);
  std::map<std::uint32_t, TapeCounts> counts;

  for (int attempt = 0; attempt < config.max_rejections; ++attempt) {
    QuotientPattern q;
    if (config.boundary) {
      q.boundary = *config.boundary;
    } else {
      for (int k = 0; k < config.boundary_width; ++k)
        q.boundary.push_back((rng() >> 63) ? Direction::leftward : Direction::rightward);
    }
    const std::uint32_t bits = encode(q.boundary);
    const std::size_t target = WordSpace::index(config.boundary_width, bits);
    auto it = counts.find(bits);
    if (it == counts.end()) it = counts.emplace(bits, count_tapes(space, target, config.event_count)).first;
    const auto& ways = it->second.ways;
    if (ways[static_cast<std::size_t>(config.event_count)][target] == 0.0) {
      if (config.boundary) break;
      continue;
    }

    std::size_t word = target;
    for (int r = config.event_count; r >= 1; --r) {
      const auto moves = space.moves(word);
      const auto& next = ways[static_cast<std::size_t>(r) - 1];
      double total = 0.0;
      for (const auto& m : moves) total += next[m.second];
      const double u = unit_interval(rng) * total;
      double acc = 0.0;
      std::size_t pick = moves.size();
      for (std::size_t k = 0; k < moves.size(); ++k) {
        if (next[moves[k].second] == 0.0) continue;
        pick = k;
        acc += next[moves[k].second];
        if (u < acc) break;
      }
      q.events.push_back(moves[pick].first);
      word = moves[pick].second;
    }

    if (config.max_crossings >= 0 && static_cast<int>(q.cross_count()) > config.max_crossings)
      continue;
    const auto w = winding_numbers(q);
    if (config.require_nonempty && w.empty()) continue;
    if (config.require_strong &&
        !std::all_of(w.begin(), w.end(), [&](long x) { return x % config.p == 0; }))
      continue;
    if (config.require_os && !is_orbitally_separated(q)) continue;
    if (config.require_type_m) {
      const auto t = classify_type_m(q, config.p);
      if (!t || t->m != *config.require_type_m) continue;
    }
    return q;
  }
  throw PatternGenerationError("random_pattern: no tape satisfying the constraints after " +
                               std::to_string(config.max_rejections) + " attempts (width " +
                               std::to_string(config.boundary_width) + ", " +
                               std::to_string(config.event_count) + " events, p = " +
                               std::to_string(config.p) + ")");
}

}  // namespace pconway
