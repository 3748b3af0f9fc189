#pragma once

// Backtracking search for S-sequencings and rotational S-sequencings, the
// small-k exception patterns, and the scans built on top of them.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "dpseq/error.hpp"
#include "dpseq/group.hpp"
#include "dpseq/sequencing.hpp"

namespace dpseq {

enum class SearchMode { SSequencing, Rotational, Either };
enum class Objective { Exists, FirstLexicographic, CountAll };
enum class SearchStatus { Found, NotFound, Inconclusive };

inline const char* to_string(SearchMode m) {
  switch (m) {
    case SearchMode::SSequencing: return "s-sequencing";
    case SearchMode::Rotational: return "rotational";
    case SearchMode::Either: return "either";
  }
  return "?";
}

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::NotFound: return "not-found";
    case SearchStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// Sets with more elements than this are searched under a node budget.
inline constexpr int kExhaustiveCap = 12;

struct SearchRequest {
  const FiniteGroup* group = nullptr;
  std::vector<int> subset;
  SearchMode mode = SearchMode::SSequencing;
  Objective objective = Objective::Exists;
  long long node_budget = 20'000'000;  // only applies when |S| > kExhaustiveCap
  int threads = 0;                     // 0: DPSEQ_THREADS or 1
};

struct SearchResult {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<ElementSequence> sequence;
  SearchMode kind = SearchMode::SSequencing;  // which kind the witness is
  long long count = 0;                        // CountAll only
  long long nodes = 0;
};

/// Thread count from DPSEQ_THREADS (default 1).
inline int default_thread_count() {
  if (const char* env = std::getenv("DPSEQ_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return std::min(v, 64);
  }
  return 1;
}

namespace detail {

struct Backtracker {
  const FiniteGroup& g;
  std::vector<int> elems;  // ascending
  bool rotational = false;
  bool count_all = false;
  long long budget = -1;  // negative: unlimited
  const std::atomic<bool>* stop = nullptr;

  std::vector<char> used, visited;
  std::vector<int> seq;
  long long nodes = 0, count = 0;
  bool aborted = false;
  std::optional<std::vector<int>> witness;

  Backtracker(const FiniteGroup& group, std::vector<int> s, bool rot, bool all, long long b)
      : g(group), elems(std::move(s)), rotational(rot), count_all(all), budget(b) {
    used.assign(elems.size(), 0);
    visited.assign(g.order(), 0);
  }

  // h is the current partial product; visited marks products already taken.
  bool step(int h) {
    if (budget >= 0 && nodes > budget) {
      aborted = true;
      return true;
    }
    if (stop && stop->load(std::memory_order_relaxed)) return true;
    ++nodes;
    const std::size_t k = elems.size();
    if (seq.size() == k) {
      if (rotational && h != g.identity()) return false;
      ++count;
      if (!witness) witness = seq;
      return !count_all;
    }
    const bool last = seq.size() + 1 == k;
    for (std::size_t i = 0; i < k; ++i) {
      if (used[i]) continue;
      const int nh = g.mul(h, elems[i]);
      if (rotational) {
        if (last ? nh != g.identity() : (nh == g.identity() || visited[nh])) continue;
      } else if (visited[nh]) {
        continue;
      }
      used[i] = 1;
      visited[nh] = 1;
      seq.push_back(elems[i]);
      const bool done = step(nh);
      seq.pop_back();
      visited[nh] = 0;
      used[i] = 0;
      if (done) return true;
    }
    return false;
  }

  // Explores orderings whose first element is elems[first].
  void run_from(std::size_t first) {
    const int e = g.identity();
    if (!rotational) visited[e] = 1;
    const int h = g.mul(e, elems[first]);
    if (rotational && elems.size() > 1 && h == e) return;
    if (rotational && elems.size() == 1) {
      // A single element returns to e only if it is e, which S excludes.
      return;
    }
    used[first] = 1;
    visited[h] = 1;
    seq.push_back(elems[first]);
    step(h);
    seq.clear();
    std::fill(used.begin(), used.end(), 0);
    std::fill(visited.begin(), visited.end(), 0);
  }
};

inline SearchResult search_one_mode(const FiniteGroup& g, const std::vector<int>& s, bool rotational,
                                    Objective obj, long long budget, int threads) {
  SearchResult res;
  res.kind = rotational ? SearchMode::Rotational : SearchMode::SSequencing;
  if (s.empty()) {
    // The empty ordering trivially has distinct partial products; it is not
    // rotational because there is no closing step.
    if (!rotational) {
      res.status = SearchStatus::Found;
      res.sequence = ElementSequence{};
      res.count = 1;
    }
    return res;
  }
  const bool count_all = obj == Objective::CountAll;
  const std::size_t k = s.size();
  const int t = std::max(1, std::min<int>(threads, static_cast<int>(k)));
  const long long per_task_budget = budget < 0 ? -1 : budget / static_cast<long long>(k) + 1;

  struct Slot {
    std::optional<std::vector<int>> witness;
    long long count = 0, nodes = 0;
    bool aborted = false;
  };
  std::vector<Slot> slots(k);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best_found{k};  // lowest first-position index with a witness
  std::atomic<bool> never{false};

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= k) return;
      // A lower first element already yielded the (lexicographically least) witness.
      if (!count_all && best_found.load() < i) continue;
      Backtracker bt(g, s, rotational, count_all, per_task_budget);
      bt.stop = &never;
      bt.run_from(i);
      slots[i] = {bt.witness, bt.count, bt.nodes, bt.aborted};
      if (bt.witness && !count_all) {
        std::size_t cur = best_found.load();
        while (i < cur && !best_found.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  if (t == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  bool aborted = false;
  for (std::size_t i = 0; i < k; ++i) {
    res.nodes += slots[i].nodes;
    res.count += slots[i].count;
    if (!count_all && i > best_found.load()) continue;
    aborted = aborted || slots[i].aborted;
  }
  const std::size_t b = best_found.load();
  if (!count_all && b < k) {
    // Slots before b either finished empty or aborted; an aborted earlier slot
    // leaves first-lexicographic undecided but existence settled.
    bool earlier_aborted = false;
    for (std::size_t i = 0; i < b; ++i) earlier_aborted = earlier_aborted || slots[i].aborted;
    if (obj == Objective::FirstLexicographic && earlier_aborted) {
      res.status = SearchStatus::Inconclusive;
      return res;
    }
    res.status = SearchStatus::Found;
    res.sequence = ElementSequence{*slots[b].witness};
    return res;
  }
  if (count_all) {
    for (const auto& sl : slots)
      if (sl.witness && !res.sequence) res.sequence = ElementSequence{*sl.witness};
    if (aborted) res.status = SearchStatus::Inconclusive;
    else res.status = res.count > 0 ? SearchStatus::Found : SearchStatus::NotFound;
    return res;
  }
  res.status = aborted ? SearchStatus::Inconclusive : SearchStatus::NotFound;
  return res;
}

inline std::vector<int> normalized_subset(const FiniteGroup& g, std::vector<int> s) {
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= g.order()) throw InvalidParameter("subset element out of range");
    if (s[i] == g.identity()) throw InvalidParameter("subset contains the identity");
    if (i > 0 && s[i] == s[i - 1]) throw InvalidParameter("subset repeats " + g.label(s[i]));
  }
  return s;
}

}  // namespace detail

/// Searches orderings of S in ascending index order.  NotFound is returned
/// only after the space is exhausted; a spent node budget gives Inconclusive.
inline SearchResult find_s_sequencing(const SearchRequest& req) {
  if (!req.group) throw InvalidParameter("search request has no group");
  const FiniteGroup& g = *req.group;
  const auto s = detail::normalized_subset(g, req.subset);
  const long long budget = static_cast<int>(s.size()) > kExhaustiveCap ? req.node_budget : -1;
  const int threads = req.threads > 0 ? req.threads : default_thread_count();

  auto check = [&](SearchResult r) {
    if (r.sequence) {
      const bool ok = r.kind == SearchMode::Rotational ? is_rotational_s_sequencing(g, *r.sequence)
                                                      : is_s_sequencing(g, *r.sequence);
      if (!ok) throw InternalInconsistency("search returned a sequence that fails verification");
    }
    return r;
  };
  switch (req.mode) {
    case SearchMode::SSequencing:
      return check(detail::search_one_mode(g, s, false, req.objective, budget, threads));
    case SearchMode::Rotational:
      return check(detail::search_one_mode(g, s, true, req.objective, budget, threads));
    case SearchMode::Either: {
      auto a = detail::search_one_mode(g, s, false, req.objective, budget, threads);
      if (a.status == SearchStatus::Found && req.objective != Objective::CountAll) return check(a);
      auto b = detail::search_one_mode(g, s, true, req.objective, budget, threads);
      if (req.objective == Objective::CountAll) {
        SearchResult r = a.status == SearchStatus::Found ? a : b;
        r.count = a.count + b.count;
        r.nodes = a.nodes + b.nodes;
        if (a.status == SearchStatus::Inconclusive || b.status == SearchStatus::Inconclusive)
          r.status = SearchStatus::Inconclusive;
        else
          r.status = r.count > 0 ? SearchStatus::Found : SearchStatus::NotFound;
        return check(r);
      }
      b.nodes += a.nodes;
      if (b.status == SearchStatus::NotFound && a.status == SearchStatus::Inconclusive)
        b.status = SearchStatus::Inconclusive;
      return check(b);
    }
  }
  return {};
}

inline SearchResult find_s_sequencing(const FiniteGroup& g, std::vector<int> subset,
                                      SearchMode mode = SearchMode::SSequencing,
                                      Objective objective = Objective::Exists) {
  SearchRequest req;
  req.group = &g;
  req.subset = std::move(subset);
  req.mode = mode;
  req.objective = objective;
  return find_s_sequencing(req);
}

/// Depth-first search with shuffled branch order, restarted with a fresh
/// seed every `restart_nodes` nodes.  Seeds are seed, seed+1, ..., so the
/// result is reproducible.  Never proves nonexistence: NotFound is not
/// returned, only Found or Inconclusive.
inline SearchResult randomized_s_sequencing(const FiniteGroup& g, std::vector<int> subset, long long restart_nodes,
                                            long long total_nodes, std::uint64_t seed = 1) {
  subset = detail::normalized_subset(g, std::move(subset));
  const int k = static_cast<int>(subset.size());
  SearchResult res;
  res.status = SearchStatus::Inconclusive;
  std::vector<char> used(k), seen(g.order());
  std::vector<int> seq;
  long long nodes = 0, cap = 0;
  std::mt19937_64 rng;
  auto dfs = [&](auto&& self, int cur) -> bool {
    if (static_cast<int>(seq.size()) == k) return true;
    if (++nodes > cap) return false;
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int i : order) {
      if (used[i]) continue;
      const int nx = g.mul(cur, subset[i]);
      if (seen[nx]) continue;
      used[i] = seen[nx] = 1;
      seq.push_back(subset[i]);
      if (self(self, nx)) return true;
      seq.pop_back();
      used[i] = seen[nx] = 0;
      if (nodes > cap) return false;
    }
    return false;
  };
  for (std::uint64_t s = seed; res.nodes < total_nodes; ++s) {
    std::fill(used.begin(), used.end(), 0);
    std::fill(seen.begin(), seen.end(), 0);
    seen[g.identity()] = 1;
    seq.clear();
    nodes = 0;
    cap = std::min(restart_nodes, total_nodes - res.nodes);
    rng.seed(s);
    const bool ok = dfs(dfs, g.identity());
    res.nodes += nodes;
    if (ok) {
      res.status = SearchStatus::Found;
      res.sequence = ElementSequence{seq};
      res.kind = SearchMode::SSequencing;
      break;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Exception patterns for |S| = 4.

enum class PatternId { P1, P2 };

inline const char* to_string(PatternId p) { return p == PatternId::P1 ? "P1" : "P2"; }

struct ExceptionPattern {
  PatternId id = PatternId::P1;
  /// Variable name to element: P1 uses x, x^-1, y, z; P2 uses w, x, y, z.
  std::vector<std::pair<std::string, int>> witness;
};

/// P1: S = {x, x^-1, y, z} with xyz = x^-1 zy = e.
/// P2: S = {w, x, y, z} with wxy = wyz = wzx = xzy = e.
inline std::optional<ExceptionPattern> detect_exception_pattern(const FiniteGroup& g, std::vector<int> s) {
  if (s.size() != 4) throw InvalidParameter("exception patterns are defined for |S| = 4");
  s = detail::normalized_subset(g, std::move(s));
  const int e = g.identity();
  auto prod = [&](int a, int b, int c) { return g.mul(g.mul(a, b), c); };
  std::vector<int> p = s;
  do {
    const int x = p[0], xi = p[1], y = p[2], z = p[3];
    if (g.inv(x) == xi && prod(x, y, z) == e && prod(xi, z, y) == e)
      return ExceptionPattern{PatternId::P1, {{"x", x}, {"x^-1", xi}, {"y", y}, {"z", z}}};
  } while (std::next_permutation(p.begin(), p.end()));
  p = s;
  do {
    const int w = p[0], x = p[1], y = p[2], z = p[3];
    if (prod(w, x, y) == e && prod(w, y, z) == e && prod(w, z, x) == e && prod(x, z, y) == e)
      return ExceptionPattern{PatternId::P2, {{"w", w}, {"x", x}, {"y", y}, {"z", z}}};
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

/// True if some ordering of S has total product different from e.
inline bool has_non_identity_product_ordering(const FiniteGroup& g, std::vector<int> s) {
  std::sort(s.begin(), s.end());
  do {
    int h = g.identity();
    for (int x : s) h = g.mul(h, x);
    if (h != g.identity()) return true;
  } while (std::next_permutation(s.begin(), s.end()));
  return false;
}

/// Calls f(subset) for every subset of G \ {e} with min_k <= |S| <= max_k,
/// in increasing size and lexicographic order.
template <typename F>
void for_each_subset(const FiniteGroup& g, int min_k, int max_k, F&& f) {
  const int n = g.order();
  std::vector<int> pool;
  for (int a = 0; a < n; ++a)
    if (a != g.identity()) pool.push_back(a);
  const int N = static_cast<int>(pool.size());
  for (int k = std::max(min_k, 0); k <= std::min(max_k, N); ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<int> s(k);
      for (int i = 0; i < k; ++i) s[i] = pool[idx[i]];
      f(s);
      int i = k - 1;
      while (i >= 0 && idx[i] == N - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

struct SmallKReport {
  std::string group;
  int kmax = 4;
  long long subsets_checked = 0;    // subsets meeting the product precondition
  long long subsets_skipped = 0;    // every ordering has product e
  long long sequenced = 0;
  long long pattern_but_sequenced = 0;  // a pattern matches yet an S-sequencing exists
  std::vector<std::pair<std::vector<int>, ExceptionPattern>> exceptions;  // no S-sequencing, pattern matches
  std::vector<std::vector<int>> violations;  // no S-sequencing and no pattern
  bool ok() const { return violations.empty(); }
};

/// For every S with |S| <= kmax having an ordering with non-identity product:
/// either an S-sequencing is found or an exception pattern fires.  The
/// patterns are not sufficient (D_10 has matching sets that sequence), so
/// those are only counted.
inline SmallKReport classify_small_k(const FiniteGroup& g, int kmax = 4) {
  if (g.order() > 24) throw InvalidParameter("classify_small_k is limited to groups of order <= 24");
  SmallKReport rep;
  rep.group = g.name();
  rep.kmax = kmax;
  for_each_subset(g, 1, kmax, [&](const std::vector<int>& s) {
    if (!has_non_identity_product_ordering(g, s)) {
      ++rep.subsets_skipped;
      return;
    }
    ++rep.subsets_checked;
    SearchRequest req;
    req.group = &g;
    req.subset = s;
    req.threads = 1;
    const bool found = find_s_sequencing(req).status == SearchStatus::Found;
    std::optional<ExceptionPattern> pat;
    if (s.size() == 4) pat = detect_exception_pattern(g, s);
    if (found) {
      ++rep.sequenced;
      if (pat) ++rep.pattern_but_sequenced;
    } else if (pat) {
      rep.exceptions.push_back({s, *pat});
    } else {
      rep.violations.push_back(s);
    }
  });
  return rep;
}

struct StrongScanReport {
  std::string group;
  SearchStatus status = SearchStatus::Found;  // Inconclusive when the group is too large
  long long subsets = 0;
  long long with_s_sequencing = 0;
  long long with_rotational = 0;
  std::vector<std::vector<int>> failures;  // subsets with neither
  bool strongly_sequenceable() const { return status != SearchStatus::Inconclusive && failures.empty(); }
};

/// Checks every nonempty S inside G \ {e} for an S-sequencing and for a
/// rotational S-sequencing.
inline StrongScanReport strong_sequenceability_scan(const FiniteGroup& g) {
  StrongScanReport rep;
  rep.group = g.name();
  if (g.order() > 12) {
    rep.status = SearchStatus::Inconclusive;
    return rep;
  }
  for_each_subset(g, 1, g.order() - 1, [&](const std::vector<int>& s) {
    ++rep.subsets;
    SearchRequest req;
    req.group = &g;
    req.subset = s;
    req.threads = 1;
    const bool a = find_s_sequencing(req).status == SearchStatus::Found;
    req.mode = SearchMode::Rotational;
    const bool b = find_s_sequencing(req).status == SearchStatus::Found;
    rep.with_s_sequencing += a;
    rep.with_rotational += b;
    if (!a && !b) rep.failures.push_back(s);
  });
  return rep;
}

/// Rotational sequencing of D_{2m} for even m.  With W the Walecki
/// arrangement of {0..k-1} (k = m/2), P its reverse-complement and
/// b_i = P_{i+1} - P_i, the sequence is
///   u^{-b_1}, ..., u^{-b_{k-1}}; u^k; v, u^{-1}v, ..., u^{-(M-1)}v;
///   u^{m-M-1}v, ..., uv; u^{b_{k-1}}, ..., u^{b_1}; u^{m-M}v
/// where M = k for k even and k - 1 for k odd.  The pattern came out of a
/// structured search and is checked on every call.
inline ElementSequence dihedral_rotational_sequencing(const FiniteGroup& g) {
  const int m = g.dihedral_m();
  if (m % 2 != 0) throw DocumentedNonexistence("D_{2m} has no rotational sequencing for odd m");
  const int k = m / 2;
  std::vector<int> w(k), p(k);
  for (int i = 0; i < k; ++i) w[i] = i % 2 == 0 ? i / 2 : k - 1 - i / 2;
  for (int i = 0; i < k; ++i) p[i] = k - 1 - w[k - 1 - i];
  std::vector<int> b;
  for (int i = 0; i + 1 < k; ++i) b.push_back(p[i + 1] - p[i]);
  const int big_m = k % 2 == 0 ? k : k - 1;
  ElementSequence s;
  for (int x : b) s.elements.push_back(g.rotation(-x));
  s.elements.push_back(g.rotation(k));
  for (int i = 0; i < big_m; ++i) s.elements.push_back(g.reflection(-i));
  for (int e = m - big_m - 1; e >= 1; --e) s.elements.push_back(g.reflection(e));
  for (auto it = b.rbegin(); it != b.rend(); ++it) s.elements.push_back(g.rotation(*it));
  s.elements.push_back(g.reflection(m - big_m));
  if (static_cast<int>(s.size()) != g.order() - 1 || !is_rotational_s_sequencing(g, s))
    throw ConstructionBug("dihedral rotational pattern failed verification for m = " + std::to_string(m));
  return s;
}

/// Full-length rotational sequencing.  Groups of order <= 12 are searched
/// exhaustively; larger dihedral groups with even m use the explicit
/// pattern; anything else is searched under a node budget.
inline SearchResult find_rotational_sequencing(const FiniteGroup& g, long long node_budget = 20'000'000) {
  std::vector<int> all;
  for (int a = 0; a < g.order(); ++a)
    if (a != g.identity()) all.push_back(a);
  if (g.order() > kExhaustiveCap && g.is_dihedral()) {
    SearchResult r;
    r.kind = SearchMode::Rotational;
    if (g.dihedral_m() % 2 == 0) {
      r.status = SearchStatus::Found;
      r.sequence = dihedral_rotational_sequencing(g);
    } else {
      r.status = SearchStatus::NotFound;  // none exist for odd m
    }
    return r;
  }
  SearchRequest req;
  req.group = &g;
  req.subset = all;
  req.mode = SearchMode::Rotational;
  req.node_budget = node_budget;
  return find_s_sequencing(req);
}

}  // namespace dpseq
