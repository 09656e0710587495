#include "pconway/skein.hpp"

#include <algorithm>
#include <future>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "union_find.hpp"

namespace pconway {

SkeinNode make_skein_node(const LinkDiagram& d) {
  SkeinNode node{d, {}, {}};
  const auto next = d.successor_map();
  // Crossing where each arc ends, and whether it arrives there as over.
  std::vector<std::size_t> end_crossing(next.size(), 0);
  std::vector<char> arrives_over(next.size(), 0);
  const auto& cs = d.crossings();
  for (std::size_t x = 0; x < cs.size(); ++x) {
    end_crossing[static_cast<std::size_t>(cs[x].under_in())] = x;
    end_crossing[static_cast<std::size_t>(cs[x].over_in())] = x;
    arrives_over[static_cast<std::size_t>(cs[x].over_in())] = 1;
  }
  std::vector<char> arc_done(next.size(), 0);
  std::vector<char> crossing_seen(cs.size(), 0);
  for (std::size_t a = 1; a < next.size(); ++a) {
    if (next[a] < 0 || arc_done[a]) continue;
    node.basepoints.push_back(static_cast<int>(a));
    auto arc = a;
    while (!arc_done[arc]) {
      arc_done[arc] = 1;
      const std::size_t x = end_crossing[arc];
      if (!crossing_seen[x]) {
        crossing_seen[x] = 1;
        if (arrives_over[arc]) node.bad_crossings.push_back(x);
      }
      arc = static_cast<std::size_t>(next[arc]);
    }
  }
  return node;
}

namespace {

/// Code of one connected projection piece given by its crossing ids.
std::vector<int> piece_code(const LinkDiagram& d, const std::vector<std::size_t>& piece) {
  const auto& cs = d.crossings();
  const auto next = d.successor_map();
  const std::size_t labels = next.size();
  std::vector<std::size_t> end_crossing(labels, 0);
  for (std::size_t x : piece) {
    end_crossing[static_cast<std::size_t>(cs[x].under_in())] = x;
    end_crossing[static_cast<std::size_t>(cs[x].over_in())] = x;
  }
  std::vector<int> starts;
  for (std::size_t x : piece) {
    starts.push_back(cs[x].under_in());
    starts.push_back(cs[x].over_in());
  }

  std::vector<int> best;
  std::vector<int> relabel(labels, 0);
  std::vector<std::size_t> order;
  std::vector<char> listed(cs.size(), 0);
  std::vector<int> code;
  for (int start : starts) {
    std::fill(relabel.begin(), relabel.end(), 0);
    order.clear();
    int counter = 0;
    auto trace = [&](int from) {
      int arc = from;
      while (relabel[static_cast<std::size_t>(arc)] == 0) {
        relabel[static_cast<std::size_t>(arc)] = ++counter;
        const std::size_t x = end_crossing[static_cast<std::size_t>(arc)];
        if (!listed[x]) {
          listed[x] = 1;
          order.push_back(x);
        }
        arc = next[static_cast<std::size_t>(arc)];
      }
    };
    trace(start);
    // Next component: the unlabeled in-arc at the earliest listed crossing.
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto& c = cs[order[k]];
      if (relabel[static_cast<std::size_t>(c.under_in())] == 0) trace(c.under_in());
      if (relabel[static_cast<std::size_t>(c.over_in())] == 0) trace(c.over_in());
    }
    code.clear();
    for (std::size_t x : order) {
      for (int l : cs[x].pd) code.push_back(relabel[static_cast<std::size_t>(l)]);
      code.push_back(cs[x].sign);
    }
    for (std::size_t x : order) listed[x] = 0;
    if (best.empty() || code < best) best = code;
  }
  return best;
}

}  // namespace

std::string canonical_code(const LinkDiagram& d) {
  if (d.empty()) return "empty";
  const auto& cs = d.crossings();
  UnionFind uf(cs.size());
  {
    std::vector<int> first(static_cast<std::size_t>(d.max_label()) + 1, -1);
    for (std::size_t x = 0; x < cs.size(); ++x) {
      for (int l : cs[x].pd) {
        auto& f = first[static_cast<std::size_t>(l)];
        if (f < 0) {
          f = static_cast<int>(x);
        } else {
          uf.unite(static_cast<std::size_t>(f), x);
        }
      }
    }
  }
  std::vector<std::vector<std::size_t>> pieces;
  std::vector<int> piece_of(cs.size(), -1);
  for (std::size_t x = 0; x < cs.size(); ++x) {
    const std::size_t r = uf.find(x);
    if (piece_of[r] < 0) {
      piece_of[r] = static_cast<int>(pieces.size());
      pieces.emplace_back();
    }
    pieces[static_cast<std::size_t>(piece_of[r])].push_back(x);
  }
  std::vector<std::vector<int>> codes;
  codes.reserve(pieces.size());
  for (const auto& p : pieces) codes.push_back(piece_code(d, p));
  std::sort(codes.begin(), codes.end());

  std::string out;
  for (const auto& code : codes) {
    out += '[';
    for (std::size_t k = 0; k < code.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(code[k]);
    }
    out += ']';
  }
  if (d.free_loops() > 0) out += "O" + std::to_string(d.free_loops());
  return out;
}

SkeinTriple skein_triple(const LinkDiagram& d, std::size_t c) {
  auto switched = switch_crossing(d, c);
  auto smoothed = smooth_crossing(d, c);
  if (d.crossings()[c].sign > 0) return {d, std::move(switched), std::move(smoothed)};
  return {std::move(switched), d, std::move(smoothed)};
}

// ---------------------------------------------------------------------------

std::optional<IntPolynomial> MemoCache::get(const std::string& key) const {
  std::shared_lock lock(mu_);
  auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void MemoCache::put(const std::string& key, const IntPolynomial& value) {
  std::unique_lock lock(mu_);
  if (map_.size() >= max_entries_) return;
  map_.try_emplace(key, value);
}

std::size_t MemoCache::size() const {
  std::shared_lock lock(mu_);
  return map_.size();
}

void MemoCache::clear() {
  std::unique_lock lock(mu_);
  map_.clear();
}

std::vector<std::pair<std::string, IntPolynomial>> MemoCache::entries() const {
  std::shared_lock lock(mu_);
  std::vector<std::pair<std::string, IntPolynomial>> out(map_.begin(), map_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// ---------------------------------------------------------------------------

ConwayEngine::ConwayEngine(SkeinOptions options, std::shared_ptr<MemoCache> cache)
    : options_(options), cache_(std::move(cache)) {
  if (options_.use_cache && !cache_) cache_ = std::make_shared<MemoCache>();
}

IntPolynomial ConwayEngine::conway(const LinkDiagram& d) {
  return conway(d, Clock::time_point::max());
}

IntPolynomial ConwayEngine::conway(const LinkDiagram& d, Clock::time_point deadline) {
  if (d.empty()) throw std::invalid_argument("the empty diagram has no Conway polynomial");
  if (d.crossing_count() > options_.max_crossings)
    throw ResourceLimitError("diagram has " + std::to_string(d.crossing_count()) +
                             " crossings; ceiling is " + std::to_string(options_.max_crossings));
  if (options_.time_limit.count() > 0)
    deadline = std::min(deadline, Clock::now() + options_.time_limit);
  return evaluate(d, 0, deadline);
}

IntPolynomial ConwayEngine::evaluate(const LinkDiagram& input, int depth,
                                     Clock::time_point deadline) {
  if (deadline != Clock::time_point::max() && Clock::now() > deadline)
    throw TimeLimitError("skein evaluation exceeded its time limit");
  nodes_.fetch_add(1, std::memory_order_relaxed);

  const LinkDiagram d = simplify(input);
  if (d.crossing_count() == 0) return d.free_loops() == 1 ? IntPolynomial{1} : IntPolynomial{};
  if (d.free_loops() > 0 || projection_pieces(d) > 1) return {};

  std::string key;
  const bool caching = options_.use_cache && cache_;
  if (caching) {
    key = canonical_code(d);
    if (auto hit = cache_->get(key)) {
      hits_.fetch_add(1, std::memory_order_relaxed);
      return *hit;
    }
  }

  const SkeinNode node = make_skein_node(d);
  IntPolynomial result;
  if (node.bad_crossings.empty()) {
    if (node.basepoints.size() == 1) result = IntPolynomial{1};
  } else {
    const std::size_t c = node.bad_crossings.front();
    const LinkDiagram switched = switch_crossing(d, c);
    const LinkDiagram smoothed = smooth_crossing(d, c);
    IntPolynomial sw, sm;
    if (depth < options_.parallel_depth) {
      auto fut = std::async(std::launch::async,
                            [&] { return evaluate(switched, depth + 1, deadline); });
      sm = evaluate(smoothed, depth + 1, deadline);
      sw = fut.get();
    } else {
      sw = evaluate(switched, depth + 1, deadline);
      sm = evaluate(smoothed, depth + 1, deadline);
    }
    // Positive c: d = L+, so L+ = L- + z L0. Negative c: d = L-, L- = L+ - z L0.
    result = d.crossings()[c].sign > 0 ? sw + sm.shifted(1) : sw - sm.shifted(1);
  }
  if (caching) cache_->put(key, result);
  return result;
}

IntPolynomial conway(const LinkDiagram& d, const SkeinOptions& options) {
  ConwayEngine engine(options);
  return engine.conway(d);
}

}  // namespace pconway
