#pragma once
// Conway polynomial by skein recursion down to ascending diagrams.

#include <atomic>
#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "pconway/diagram.hpp"
#include "pconway/polynomial.hpp"

namespace pconway {

/// A diagram together with its traversal data. Basepoints are the smallest
/// arc of each component, components are visited in the order of those
/// basepoints, and a crossing is bad when the traversal reaches it on the
/// over-strand first.
struct SkeinNode {
  LinkDiagram diagram;
  std::vector<int> basepoints;
  /// Bad crossing ids in traversal order.
  std::vector<std::size_t> bad_crossings;
};

SkeinNode make_skein_node(const LinkDiagram& d);

/// Equal for diagrams that differ only by arc relabeling and crossing order.
std::string canonical_code(const LinkDiagram& d);

struct SkeinTriple {
  LinkDiagram plus;
  LinkDiagram minus;
  LinkDiagram zero;
};

/// (L+, L-, L0) at crossing c, one of the first two being d itself.
SkeinTriple skein_triple(const LinkDiagram& d, std::size_t c);

/// Thread-safe memo from canonical code to Conway polynomial. A key is
/// written at most once; concurrent writers of one key carry equal values.
class MemoCache {
 public:
  explicit MemoCache(std::size_t max_entries = std::size_t{1} << 21) : max_entries_(max_entries) {}

  std::optional<IntPolynomial> get(const std::string& key) const;
  void put(const std::string& key, const IntPolynomial& value);
  std::size_t size() const;
  void clear();
  /// Snapshot sorted by key.
  std::vector<std::pair<std::string, IntPolynomial>> entries() const;

 private:
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, IntPolynomial> map_;
  std::size_t max_entries_;
};

struct SkeinOptions {
  bool use_cache = true;
  std::size_t max_crossings = 64;
  /// Wall-clock budget per conway() call; zero means unlimited.
  std::chrono::milliseconds time_limit{0};
  /// Evaluate the two branches concurrently down to this recursion depth.
  int parallel_depth = 0;
};

struct SkeinStats {
  std::size_t nodes = 0;
  std::size_t cache_hits = 0;
};

class ConwayEngine {
 public:
  explicit ConwayEngine(SkeinOptions options = {}, std::shared_ptr<MemoCache> cache = nullptr);

  /// Exact Conway polynomial. Throws ResourceLimitError above the crossing
  /// ceiling, TimeLimitError past the time budget and std::invalid_argument
  /// for the empty diagram.
  IntPolynomial conway(const LinkDiagram& d);
  /// Same, with an explicit deadline shared across several calls; the
  /// tighter of it and the configured time limit applies.
  IntPolynomial conway(const LinkDiagram& d, std::chrono::steady_clock::time_point deadline);

  const SkeinOptions& options() const { return options_; }
  std::shared_ptr<MemoCache> cache() const { return cache_; }
  SkeinStats stats() const { return {nodes_.load(), hits_.load()}; }

 private:
  using Clock = std::chrono::steady_clock;
  IntPolynomial evaluate(const LinkDiagram& d, int depth, Clock::time_point deadline);

  SkeinOptions options_;
  std::shared_ptr<MemoCache> cache_;
  std::atomic<std::size_t> nodes_{0};
  std::atomic<std::size_t> hits_{0};
};

/// One-shot evaluation with a private cache.
IntPolynomial conway(const LinkDiagram& d, const SkeinOptions& options = {});

}  // namespace pconway
