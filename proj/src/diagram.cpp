#include "pconway/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "union_find.hpp"

namespace pconway {

namespace {

int max_label_of(const std::vector<Crossing>& crossings) {
  int m = 0;
  for (const auto& c : crossings)
    for (int a : c.pd) m = std::max(m, a);
  return m;
}

/// For each label, the two darts (4 * crossing + position) where it occurs.
std::vector<std::array<int, 2>> dart_table(const std::vector<Crossing>& crossings,
                                           int max_label) {
  std::vector<std::array<int, 2>> table(static_cast<std::size_t>(max_label) + 1, {-1, -1});
  for (std::size_t x = 0; x < crossings.size(); ++x) {
    for (int i = 0; i < 4; ++i) {
      auto& slot = table[static_cast<std::size_t>(crossings[x].pd[static_cast<std::size_t>(i)])];
      const int dart = static_cast<int>(4 * x) + i;
      if (slot[0] < 0) {
        slot[0] = dart;
      } else {
        slot[1] = dart;
      }
    }
  }
  return table;
}

std::vector<int> dart_partners(const std::vector<Crossing>& crossings, int max_label) {
  std::vector<int> partner(4 * crossings.size(), -1);
  const auto table = dart_table(crossings, max_label);
  for (const auto& t : table) {
    if (t[0] < 0) continue;
    partner[static_cast<std::size_t>(t[0])] = t[1];
    partner[static_cast<std::size_t>(t[1])] = t[0];
  }
  return partner;
}

int crossing_pieces(const std::vector<Crossing>& crossings, int max_label) {
  if (crossings.empty()) return 0;
  UnionFind uf(crossings.size());
  const auto table = dart_table(crossings, max_label);
  for (const auto& t : table) {
    if (t[0] < 0) continue;
    uf.unite(static_cast<std::size_t>(t[0] / 4), static_cast<std::size_t>(t[1] / 4));
  }
  return static_cast<int>(uf.set_count());
}

std::vector<std::vector<int>> faces_of(const std::vector<Crossing>& crossings, int max_label) {
  const auto partner = dart_partners(crossings, max_label);
  std::vector<std::vector<int>> faces;
  std::vector<char> seen(partner.size(), 0);
  for (std::size_t start = 0; start < partner.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> face;
    int dart = static_cast<int>(start);
    while (!seen[static_cast<std::size_t>(dart)]) {
      seen[static_cast<std::size_t>(dart)] = 1;
      face.push_back(dart);
      const int far = partner[static_cast<std::size_t>(dart)];
      dart = (far & ~3) | ((far + 1) & 3);
    }
    faces.push_back(std::move(face));
  }
  return faces;
}

void validate(const std::vector<Crossing>& crossings, int free_loops) {
  if (free_loops < 0) throw ValidationError("negative free loop count");
  const int max_label = max_label_of(crossings);
  std::vector<int> ins(static_cast<std::size_t>(max_label) + 1, 0);
  std::vector<int> outs(ins.size(), 0);
  for (std::size_t x = 0; x < crossings.size(); ++x) {
    const auto& c = crossings[x];
    if (c.sign != 1 && c.sign != -1)
      throw ValidationError("crossing " + std::to_string(x) + " has sign other than +1/-1");
    for (int a : c.pd)
      if (a < 1)
        throw ValidationError("crossing " + std::to_string(x) + " uses non-positive arc label");
    ++ins[static_cast<std::size_t>(c.under_in())];
    ++ins[static_cast<std::size_t>(c.over_in())];
    ++outs[static_cast<std::size_t>(c.under_out())];
    ++outs[static_cast<std::size_t>(c.over_out())];
  }
  for (std::size_t a = 1; a < ins.size(); ++a) {
    if (ins[a] == 0 && outs[a] == 0) continue;
    if (ins[a] != 1 || outs[a] != 1)
      throw ValidationError("arc " + std::to_string(a) + " enters " + std::to_string(ins[a]) +
                            " and leaves " + std::to_string(outs[a]) +
                            " crossings; expected exactly one each");
  }
  const auto n = static_cast<int>(crossings.size());
  const auto faces = static_cast<int>(faces_of(crossings, max_label).size());
  if (faces != n + 2 * crossing_pieces(crossings, max_label))
    throw ValidationError("PD code does not describe a planar diagram");
}

}  // namespace

// Surgery that is valid by construction skips revalidation.
class DiagramSurgeon {
 public:
  static LinkDiagram make(std::vector<Crossing> crossings, int free_loops) {
    return LinkDiagram(std::move(crossings), free_loops, LinkDiagram::Unchecked{});
  }

  /// Deletes the `removed` crossings. Each join (in, out) says that a strand
  /// arriving on arc `in` at a deleted crossing leaves on arc `out`.
  static LinkDiagram reconnect(const LinkDiagram& d, const std::vector<char>& removed,
                               const std::vector<std::pair<int, int>>& joins) {
    const auto& cs = d.crossings();
    const auto labels = static_cast<std::size_t>(d.max_label()) + 1;
    UnionFind uf(labels);
    for (auto [in, out] : joins) uf.unite(static_cast<std::size_t>(in), static_cast<std::size_t>(out));

    std::vector<char> survives(labels, 0);
    std::vector<char> touched(labels, 0);
    for (std::size_t x = 0; x < cs.size(); ++x)
      for (int a : cs[x].pd) (removed[x] ? touched : survives)[static_cast<std::size_t>(a)] = 1;

    // Smallest surviving label per touched class, or 0 for a closed loop.
    std::vector<int> rep(labels, -1);
    for (std::size_t a = 1; a < labels; ++a) {
      if (!touched[a] && !survives[a]) continue;
      const std::size_t r = uf.find(a);
      if (rep[r] < 0) rep[r] = 0;
      if (survives[a] && (rep[r] == 0)) rep[r] = static_cast<int>(a);
    }
    int free_loops = d.free_loops();
    std::vector<char> counted(labels, 0);
    for (std::size_t a = 1; a < labels; ++a) {
      if (!touched[a]) continue;
      const std::size_t r = uf.find(a);
      if (rep[r] == 0 && !counted[r]) {
        counted[r] = 1;
        ++free_loops;
      }
    }

    std::vector<Crossing> kept;
    kept.reserve(cs.size());
    for (std::size_t x = 0; x < cs.size(); ++x) {
      if (removed[x]) continue;
      Crossing c = cs[x];
      for (int& a : c.pd) a = rep[uf.find(static_cast<std::size_t>(a))];
      kept.push_back(c);
    }
    return make(std::move(kept), free_loops);
  }
};

LinkDiagram::LinkDiagram(std::vector<Crossing> crossings, int free_loops)
    : crossings_(std::move(crossings)), free_loops_(free_loops) {
  validate(crossings_, free_loops_);
  max_label_ = max_label_of(crossings_);
}

LinkDiagram::LinkDiagram(std::vector<Crossing> crossings, int free_loops, Unchecked)
    : crossings_(std::move(crossings)), free_loops_(free_loops) {
  max_label_ = max_label_of(crossings_);
}

std::vector<int> LinkDiagram::arcs() const {
  std::vector<int> out;
  std::vector<char> used(static_cast<std::size_t>(max_label_) + 1, 0);
  for (const auto& c : crossings_)
    for (int a : c.pd) used[static_cast<std::size_t>(a)] = 1;
  for (std::size_t a = 1; a < used.size(); ++a)
    if (used[a]) out.push_back(static_cast<int>(a));
  return out;
}

std::vector<int> LinkDiagram::successor_map() const {
  std::vector<int> next(static_cast<std::size_t>(max_label_) + 1, -1);
  for (const auto& c : crossings_) {
    next[static_cast<std::size_t>(c.under_in())] = c.under_out();
    next[static_cast<std::size_t>(c.over_in())] = c.over_out();
  }
  return next;
}

// ---------------------------------------------------------------------------
// PD text
// ---------------------------------------------------------------------------

namespace {

class PdLexer {
 public:
  explicit PdLexer(std::string_view text) : text_(text) {}

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' || ch == ',') {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  bool accept(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word) return false;
    for (std::size_t i = 0; i < word.size(); ++i) advance();
    return true;
  }

  void expect(char ch) {
    skip_spaces();
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    advance();
  }

  int integer() {
    skip_spaces();
    const std::size_t start = pos_;
    long value = 0;
    while (!at_end() && peek() >= '0' && peek() <= '9') {
      value = value * 10 + (peek() - '0');
      if (value > 1'000'000'000) fail("arc label too large");
      advance();
    }
    if (start == pos_) fail("expected a positive arc label");
    if (value == 0) fail("arc labels are 1-based");
    return static_cast<int>(value);
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column_); }

 private:
  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) advance();
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

enum class Role : signed char { unknown = 0, in = 1, out = -1 };

Role opposite(Role r) { return static_cast<Role>(-static_cast<int>(r)); }

/// Decides which of b, d is the incoming over-arc at every crossing.
std::vector<int> infer_signs(const std::vector<std::array<int, 4>>& tuples) {
  std::vector<Crossing> shells(tuples.size());
  for (std::size_t x = 0; x < tuples.size(); ++x) shells[x].pd = tuples[x];
  const int max_label = max_label_of(shells);
  const auto table = dart_table(shells, max_label);

  std::vector<int> seen(static_cast<std::size_t>(max_label) + 1, 0);
  for (const auto& t : tuples)
    for (int a : t) ++seen[static_cast<std::size_t>(a)];
  for (std::size_t a = 1; a < seen.size(); ++a)
    if (seen[a] != 0 && seen[a] != 2)
      throw ValidationError("arc " + std::to_string(a) + " appears " + std::to_string(seen[a]) +
                            " times; expected exactly 2");

  auto label_partner = [&](int dart) {
    const auto& t = table[static_cast<std::size_t>(tuples[static_cast<std::size_t>(dart / 4)]
                                                         [static_cast<std::size_t>(dart % 4)])];
    return t[0] == dart ? t[1] : t[0];
  };

  std::vector<Role> role(4 * tuples.size(), Role::unknown);
  std::vector<int> queue;
  auto assign = [&](int dart, Role r) {
    auto& slot = role[static_cast<std::size_t>(dart)];
    if (slot == Role::unknown) {
      slot = r;
      queue.push_back(dart);
    } else if (slot != r) {
      const int arc = tuples[static_cast<std::size_t>(dart / 4)][static_cast<std::size_t>(dart % 4)];
      throw ValidationError("inconsistent orientation along arc " + std::to_string(arc));
    }
  };
  auto propagate = [&]() {
    while (!queue.empty()) {
      const int dart = queue.back();
      queue.pop_back();
      const Role r = role[static_cast<std::size_t>(dart)];
      assign(label_partner(dart), opposite(r));
      if (dart % 2 == 1) assign(dart ^ 2, opposite(r));
    }
  };

  for (std::size_t x = 0; x < tuples.size(); ++x) {
    assign(static_cast<int>(4 * x), Role::in);
    assign(static_cast<int>(4 * x + 2), Role::out);
  }
  propagate();
  for (std::size_t x = 0; x < tuples.size(); ++x) {
    if (role[4 * x + 3] != Role::unknown) continue;
    const int b = tuples[x][1];
    const int d = tuples[x][3];
    const bool positive = (b - d == 1) || (d - b > 1);
    assign(static_cast<int>(4 * x + 3), positive ? Role::in : Role::out);
    propagate();
  }

  std::vector<int> signs(tuples.size());
  for (std::size_t x = 0; x < tuples.size(); ++x)
    signs[x] = role[4 * x + 3] == Role::in ? 1 : -1;
  return signs;
}

}  // namespace

LinkDiagram parse_pd(std::string_view text) {
  PdLexer lex(text);
  std::vector<std::array<int, 4>> tuples;
  int free_loops = 0;
  int open_wrappers = 0;
  lex.skip_blank();
  while (!lex.at_end()) {
    if (lex.accept("PD[")) {
      ++open_wrappers;
    } else if (lex.peek() == ']' && open_wrappers > 0) {
      lex.expect(']');
      --open_wrappers;
    } else if (lex.accept("X[")) {
      std::array<int, 4> t{};
      for (std::size_t i = 0; i < 4; ++i) {
        if (i > 0) lex.expect(',');
        t[i] = lex.integer();
      }
      lex.expect(']');
      tuples.push_back(t);
    } else if (lex.accept("O")) {
      ++free_loops;
    } else {
      lex.fail(std::string("unexpected character '") + lex.peek() + "'");
    }
    lex.skip_blank();
  }
  if (open_wrappers != 0) lex.fail("unterminated PD[ wrapper");

  const auto signs = infer_signs(tuples);
  std::vector<Crossing> crossings(tuples.size());
  for (std::size_t x = 0; x < tuples.size(); ++x) crossings[x] = Crossing{tuples[x], signs[x]};
  return LinkDiagram(std::move(crossings), free_loops);
}

std::string render_pd(const LinkDiagram& d) {
  std::ostringstream out;
  bool first = true;
  for (const auto& c : d.crossings()) {
    if (!first) out << ' ';
    first = false;
    out << "X[" << c.pd[0] << ',' << c.pd[1] << ',' << c.pd[2] << ',' << c.pd[3] << ']';
  }
  for (int i = 0; i < d.free_loops(); ++i) {
    if (!first) out << ' ';
    first = false;
    out << 'O';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Components and surgery
// ---------------------------------------------------------------------------

ComponentLabeling components(const LinkDiagram& d) {
  ComponentLabeling lab;
  const auto next = d.successor_map();
  lab.of_arc.assign(next.size(), -1);
  for (std::size_t a = 1; a < next.size(); ++a) {
    if (next[a] < 0 || lab.of_arc[a] >= 0) continue;
    int arc = static_cast<int>(a);
    while (lab.of_arc[static_cast<std::size_t>(arc)] < 0) {
      lab.of_arc[static_cast<std::size_t>(arc)] = lab.count;
      arc = next[static_cast<std::size_t>(arc)];
    }
    ++lab.count;
  }
  lab.free_loop_base = lab.count;
  lab.count += d.free_loops();
  return lab;
}

namespace {
void check_crossing(const LinkDiagram& d, std::size_t c) {
  if (c >= d.crossing_count())
    throw std::out_of_range("no crossing with id " + std::to_string(c));
}
}  // namespace

LinkDiagram switch_crossing(const LinkDiagram& d, std::size_t c) {
  check_crossing(d, c);
  auto cs = d.crossings();
  const auto [a, b, cc, dd] = cs[c].pd;
  cs[c] = cs[c].sign > 0 ? Crossing{{dd, a, b, cc}, -1} : Crossing{{b, cc, dd, a}, 1};
  return DiagramSurgeon::make(std::move(cs), d.free_loops());
}

LinkDiagram smooth_crossing(const LinkDiagram& d, std::size_t c) {
  check_crossing(d, c);
  std::vector<char> removed(d.crossing_count(), 0);
  removed[c] = 1;
  const auto& x = d.crossings()[c];
  return DiagramSurgeon::reconnect(d, removed,
                                   {{x.over_in(), x.under_out()}, {x.under_in(), x.over_out()}});
}

LinkDiagram reverse_component(const LinkDiagram& d, int component) {
  const auto lab = components(d);
  if (component < 0 || component >= lab.count)
    throw std::invalid_argument("no component " + std::to_string(component));
  auto cs = d.crossings();
  for (auto& c : cs) {
    const bool under_rev = lab.component_of(c.under_in()) == component;
    const bool over_rev = lab.component_of(c.over_in()) == component;
    if (under_rev) c.pd = {c.pd[2], c.pd[3], c.pd[0], c.pd[1]};
    if (under_rev != over_rev) c.sign = -c.sign;
  }
  return DiagramSurgeon::make(std::move(cs), d.free_loops());
}

LinkDiagram simplify(const LinkDiagram& d) {
  LinkDiagram cur = d;
  for (;;) {
    const auto& cs = cur.crossings();
    if (cs.empty()) return cur;
    const auto faces = faces_of(cs, cur.max_label());
    std::vector<char> removed(cs.size(), 0);
    bool found = false;

    for (const auto& f : faces) {
      if (f.size() == 1) {
        removed[static_cast<std::size_t>(f[0] / 4)] = 1;
        found = true;
        break;
      }
    }
    if (!found) {
      for (const auto& f : faces) {
        if (f.size() != 2) continue;
        const int x = f[0] / 4, i = f[0] % 4;
        const int y = f[1] / 4, j = f[1] % 4;
        if (x == y) continue;
        // Arc leaving x at position i lands on y at position j - 1; R2 needs
        // it to be over at both ends or under at both ends.
        if (i % 2 != ((j + 3) % 4) % 2) continue;
        removed[static_cast<std::size_t>(x)] = 1;
        removed[static_cast<std::size_t>(y)] = 1;
        found = true;
        break;
      }
    }
    if (!found) return cur;

    std::vector<std::pair<int, int>> joins;
    for (std::size_t x = 0; x < cs.size(); ++x) {
      if (!removed[x]) continue;
      joins.emplace_back(cs[x].under_in(), cs[x].under_out());
      joins.emplace_back(cs[x].over_in(), cs[x].over_out());
    }
    cur = DiagramSurgeon::reconnect(cur, removed, joins);
  }
}

int linking_number(const LinkDiagram& d, int i, int j) {
  if (i == j) throw std::invalid_argument("linking_number needs two distinct components");
  const auto lab = components(d);
  if (i < 0 || j < 0 || i >= lab.count || j >= lab.count)
    throw std::invalid_argument("component index out of range");
  int sum = 0;
  for (const auto& c : d.crossings()) {
    const int u = lab.component_of(c.under_in());
    const int o = lab.component_of(c.over_in());
    if ((u == i && o == j) || (u == j && o == i)) sum += c.sign;
  }
  if (sum % 2 != 0) throw ValidationError("odd crossing count between two components");
  return sum / 2;
}

int projection_pieces(const LinkDiagram& d) {
  return crossing_pieces(d.crossings(), d.max_label()) + d.free_loops();
}

std::vector<std::vector<int>> diagram_faces(const LinkDiagram& d) {
  return faces_of(d.crossings(), d.max_label());
}

LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b) {
  auto cs = a.crossings();
  const int shift = a.max_label();
  for (auto c : b.crossings()) {
    for (int& l : c.pd) l += shift;
    cs.push_back(c);
  }
  return DiagramSurgeon::make(std::move(cs), a.free_loops() + b.free_loops());
}

LinkDiagram compact_labels(const LinkDiagram& d) {
  const auto arcs = d.arcs();
  std::vector<int> map(static_cast<std::size_t>(d.max_label()) + 1, 0);
  for (std::size_t k = 0; k < arcs.size(); ++k)
    map[static_cast<std::size_t>(arcs[k])] = static_cast<int>(k) + 1;
  auto cs = d.crossings();
  for (auto& c : cs)
    for (int& l : c.pd) l = map[static_cast<std::size_t>(l)];
  return DiagramSurgeon::make(std::move(cs), d.free_loops());
}

}  // namespace pconway
