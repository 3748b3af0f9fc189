#pragma once

// Graceful, cracked graceful and bipartite graceful permutations, together
// with the generators and splicing constructions that feed the dihedral
// sequencing constructions.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpseq/error.hpp"
#include "dpseq/search.hpp"

namespace dpseq {

using Perm = std::vector<int>;

inline std::string to_string(std::span<const int> a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

/// Signed differences a_{i+1} - a_i.
inline std::vector<int> signed_differences(std::span<const int> a) {
  std::vector<int> d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] - a[i - 1]);
  return d;
}

namespace detail {

// Absolute differences are exactly {1, ..., n-1}.
inline bool differences_complete(std::span<const int> a) {
  const std::size_t n = a.size();
  std::vector<char> seen(n);
  for (std::size_t i = 1; i < n; ++i) {
    const long long d = std::llabs(static_cast<long long>(a[i]) - a[i - 1]);
    if (d < 1 || d >= static_cast<long long>(n) || seen[d]) return false;
    seen[d] = 1;
  }
  return true;
}

}  // namespace detail

/// {a_i} = {0..n-1} and {|a_{i+1} - a_i|} = {1..n-1}.
inline bool verify_graceful(std::span<const int> a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return false;
  std::vector<char> seen(n);
  for (int x : a) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return detail::differences_complete(a);
}

struct CrackedCheck {
  bool ok = false;
  int crack = -1;
};

/// n distinct values from {0..n} with absolute differences {1..n-1}; the
/// missing value is the crack.
inline CrackedCheck verify_cracked(std::span<const int> a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return {};
  std::vector<char> seen(n + 1);
  for (int x : a) {
    if (x < 0 || x > n || seen[x]) return {};
    seen[x] = 1;
  }
  if (!detail::differences_complete(a)) return {};
  for (int v = 0; v <= n; ++v)
    if (!seen[v]) return {true, v};
  return {};
}

/// Bipartite: even length 2p, graceful, odd positions all < p or all >= p.
inline bool verify_bipartite(std::span<const int> c) {
  if (c.size() % 2 != 0 || !verify_graceful(c)) return false;
  const int p = static_cast<int>(c.size()) / 2;
  const bool low = c[0] < p;
  for (std::size_t i = 0; i < c.size(); i += 2)
    if ((c[i] < p) != low || (c[i + 1] < p) == low) return false;
  return true;
}

/// Walecki arrangement: (0, n-1, 1, n-2, ...).
inline Perm walecki(int n) {
  if (n < 1) throw InvalidParameter("walecki: length must be positive");
  Perm a(n);
  for (int i = 0; i < n; ++i) a[i] = i % 2 == 0 ? i / 2 : n - 1 - i / 2;
  return a;
}

/// The two arrangements for odd l: length 2l+1 starting (l, 0, 2l, ...) and
/// length 2l starting (l, 2l-1, 0, ...); both end at l-1.  The general
/// pattern needs l >= 3; for l = 1 the length-3 case is (1, 2, 0).
inline Perm isbell_graceful_odd_l(int l, int length) {
  if (l == 1 && length == 3) return {1, 2, 0};
  if (l < 3 || l % 2 == 0) throw InvalidParameter("isbell_graceful_odd_l: l must be odd and >= 3");
  Perm a;
  if (length == 2 * l + 1) {
    a.push_back(l);
    for (int i = 0; i <= l; ++i) {  // 0, 2l, 1, 2l-1, ..., (l-1)/2, (3l+1)/2
      if (i % 2 == 0) a.push_back(i / 2);
      else a.push_back(2 * l - i / 2);
    }
    // (3l-1)/2, (l+1)/2, (3l-3)/2, (l+3)/2, ..., l+1, l-1
    for (int j = 0; j + 1 < l; ++j) {
      if (j % 2 == 0) a.push_back((3 * l - 1) / 2 - j / 2);
      else a.push_back((l + 1) / 2 + j / 2);
    }
  } else if (length == 2 * l) {
    a.push_back(l);
    for (int i = 0; i <= l; ++i) {  // 2l-1, 0, 2l-2, 1, ..., (3l-1)/2, (l-1)/2
      if (i % 2 == 0) a.push_back(2 * l - 1 - i / 2);
      else a.push_back(i / 2);
    }
    // (l+1)/2, (3l-3)/2, (l+3)/2, ..., l+1, l-1
    for (int j = 0; j + 2 < l; ++j) {
      if (j % 2 == 0) a.push_back((l + 1) / 2 + j / 2);
      else a.push_back((3 * l - 3) / 2 - j / 2);
    }
  } else {
    throw InvalidParameter("isbell_graceful_odd_l: length must be 2l or 2l+1");
  }
  if (!verify_graceful(a)) throw ConstructionBug("isbell_graceful_odd_l produced " + to_string(a));
  return a;
}

/// a_i -> n-1-a_i.
inline Perm complement(const Perm& a) {
  if (!verify_graceful(a)) throw InvalidParameter("complement: input is not graceful");
  Perm c(a.size());
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) c[i] = n - 1 - a[i];
  return c;
}

inline Perm reversed(Perm a) {
  std::reverse(a.begin(), a.end());
  return a;
}

/// Necessary endpoint conditions for a graceful permutation of length n.
inline bool gvozdjak_feasible(int n, int x, int y) {
  if (x < 0 || y < 0 || x >= n || y >= n) return false;
  if (n == 1) return x == y;
  if (x == y) return false;
  const int d = std::abs(x - y);
  if (d % 2 != (n / 2) % 2) return false;
  if (2 * d > n) return false;
  return n - 1 <= 2 * (x + y) && 2 * (x + y) <= 3 * n - 3;
}

/// Parity condition for a cracked graceful permutation of length n.
inline bool cracked_parity_feasible(int n, int x, int y) {
  if (x < 0 || y < 0 || x > n || y > n || x == y) return false;
  return std::abs(x - y) % 2 == (n / 2) % 2;
}

// ---------------------------------------------------------------------------
// Backtracking over (cracked) graceful arrangements.

struct GracefulConstraints {
  std::optional<int> first_element;
  std::optional<int> last_element;
  std::optional<std::vector<int>> last_element_set;
  std::optional<int> first_abs_diff;
  std::optional<int> crack;  // cracked search only: the value left out
};

struct GracefulSearchResult {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<Perm> perm;
};

/// Lengths up to this are searched exhaustively; longer ones use seeded
/// randomised restarts and may return Inconclusive.
inline constexpr int kGracefulExhaustiveCap = 24;

namespace detail {

struct GracefulDfs {
  int n = 0;
  int top = 0;      // values range over [0, top]
  int last = -1;    // reserved final value, or -1
  std::vector<char> value_free, diff_used;
  std::optional<int> first_diff;
  Perm seq;
  long long nodes = 0, budget = -1;
  bool aborted = false;
  std::optional<std::mt19937_64> rng;  // jitters the large-first order

  // Largest unused difference must still be realisable between free values,
  // the current end or the reserved last value.
  bool feasible() const {
    int d = n - 1;
    while (d >= 1 && diff_used[d]) --d;
    if (d < 1) return true;
    const int cur = seq.back();
    auto open = [&](int v) { return value_free[v] || v == cur || v == last; };
    for (int a = 0; a + d <= top; ++a)
      if (open(a) && open(a + d)) return true;
    return false;
  }

  bool step() {
    if (budget >= 0 && ++nodes > budget) {
      aborted = true;
      return false;
    }
    const int k = static_cast<int>(seq.size());
    const int cur = seq.back();
    if (k == n) return true;
    if (last >= 0 && k == n - 1) {
      const int d = std::abs(last - cur);
      if (diff_used[d] || (k == 1 && first_diff && d != *first_diff)) return false;
      seq.push_back(last);
      return true;
    }
    if (!feasible()) return false;
    std::vector<std::pair<double, int>> cand;
    for (int d = n - 1; d >= 1; --d) {
      if (diff_used[d]) continue;
      if (k == 1 && first_diff && d != *first_diff) continue;
      for (int sgn : {1, -1}) {
        const int v = cur + sgn * d;
        if (v < 0 || v > top || !value_free[v]) continue;
        double w = d;
        if (rng) w += std::uniform_real_distribution<double>(0.0, 3.0)(*rng);
        cand.emplace_back(w, v);
      }
    }
    std::stable_sort(cand.begin(), cand.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (const auto& [w, v] : cand) {
      const int d = std::abs(v - cur);
      value_free[v] = 0;
      diff_used[d] = 1;
      seq.push_back(v);
      if (step()) return true;
      seq.pop_back();
      diff_used[d] = 0;
      value_free[v] = 1;
      if (aborted) return false;
    }
    return false;
  }
};

}  // namespace detail

/// Searches arrangements of length n over {0..n-1} (or {0..n} minus the
/// crack when constraints.crack is set) meeting the constraints.  Up to
/// kGracefulExhaustiveCap the answer is exact; above it the search runs
/// seeded restarts within `budget` nodes in total.
inline GracefulSearchResult search_graceful(int n, const GracefulConstraints& c, long long budget = 50'000'000) {
  GracefulSearchResult res;
  if (n < 1) throw InvalidParameter("search_graceful: length must be positive");
  const bool cracked = c.crack.has_value();
  const int top = cracked ? n : n - 1;
  if (cracked && (*c.crack < 0 || *c.crack > n)) return res;
  auto usable = [&](int v) { return v >= 0 && v <= top && !(cracked && v == *c.crack); };

  std::vector<int> firsts, lasts;
  for (int v = 0; v <= top; ++v) {
    if (!usable(v)) continue;
    if (!c.first_element || *c.first_element == v) firsts.push_back(v);
  }
  const bool fixed_last = c.last_element || c.last_element_set;
  if (fixed_last) {
    for (int v = 0; v <= top; ++v) {
      if (!usable(v)) continue;
      if (c.last_element && *c.last_element != v) continue;
      if (c.last_element_set && std::find(c.last_element_set->begin(), c.last_element_set->end(), v) ==
                                    c.last_element_set->end())
        continue;
      lasts.push_back(v);
    }
  } else {
    lasts.push_back(-1);
  }

  auto valid = [&](const Perm& a) {
    if (cracked) {
      const auto chk = verify_cracked(a);
      return chk.ok && chk.crack == *c.crack;
    }
    return verify_graceful(a);
  };

  // Endpoint pairs that pass the necessary conditions.
  std::vector<std::pair<int, int>> pairs;
  for (int x : firsts)
    for (int y : lasts) {
      if (n == 1) {
        if (y < 0 || y == x) pairs.emplace_back(x, -1);
        continue;
      }
      if (y == x) continue;
      if (y >= 0 && !(cracked ? cracked_parity_feasible(n, x, y) : gvozdjak_feasible(n, x, y))) continue;
      pairs.emplace_back(x, y);
    }
  if (n == 1) {
    if (!pairs.empty()) {
      res.status = SearchStatus::Found;
      res.perm = Perm{pairs.front().first};
    }
    return res;
  }

  auto run = [&](int x, int y, long long b, std::optional<std::uint64_t> seed, bool& aborted) -> std::optional<Perm> {
    detail::GracefulDfs dfs;
    dfs.n = n;
    dfs.top = top;
    dfs.last = y;
    dfs.value_free.assign(top + 1, 1);
    if (cracked) dfs.value_free[*c.crack] = 0;
    dfs.diff_used.assign(n + 1, 0);
    dfs.first_diff = c.first_abs_diff;
    dfs.budget = b;
    if (seed) dfs.rng.emplace(*seed);
    dfs.value_free[x] = 0;
    if (y >= 0) dfs.value_free[y] = 0;
    dfs.seq.push_back(x);
    const bool ok = dfs.step();
    aborted = dfs.aborted;
    if (!ok) return std::nullopt;
    if (!valid(dfs.seq)) throw InternalInconsistency("graceful search produced an invalid arrangement");
    return dfs.seq;
  };

  if (n <= kGracefulExhaustiveCap) {
    for (auto [x, y] : pairs) {
      bool aborted = false;
      if (auto a = run(x, y, -1, std::nullopt, aborted)) {
        res.status = SearchStatus::Found;
        res.perm = std::move(a);
        return res;
      }
    }
    return res;
  }

  if (pairs.empty()) return res;  // ruled out by the endpoint conditions
  const long long per_try = std::max<long long>(20'000, 200LL * n);
  long long spent = 0;
  for (std::uint64_t seed = 0; spent < budget; ++seed) {
    for (auto [x, y] : pairs) {
      bool aborted = false;
      const auto s = seed == 0 ? std::nullopt : std::optional<std::uint64_t>(seed);
      if (auto a = run(x, y, per_try, s, aborted)) {
        res.status = SearchStatus::Found;
        res.perm = std::move(a);
        return res;
      }
      spent += per_try;
      if (spent >= budget) break;
    }
  }
  res.status = SearchStatus::Inconclusive;
  return res;
}

// ---------------------------------------------------------------------------
// Twizzler permutations.

/// Walecki arrangement of length n = pq + r with each of the first q blocks
/// of length p reversed, followed by `tail` (a graceful permutation of
/// length r) translated onto the values the Walecki arrangement leaves.
inline Perm twizzler(int n, int p, int q, int r, const Perm& tail) {
  if (p < 1 || q < 1 || r < 0 || n != p * q + r) throw InvalidParameter("twizzler: need n = pq + r with p, q >= 1");
  if (2 * r < p) throw InvalidParameter("twizzler: need r >= p/2");
  if (static_cast<int>(tail.size()) != r || !verify_graceful(tail))
    throw InvalidParameter("twizzler: tail must be a graceful permutation of length r");
  const Perm w = walecki(n);
  Perm out;
  for (int b = 0; b < q; ++b)
    for (int i = p - 1; i >= 0; --i) out.push_back(w[b * p + i]);
  int lo = n;
  for (int i = p * q; i < n; ++i) lo = std::min(lo, w[i]);
  for (int x : tail) out.push_back(x + lo);
  if (!verify_graceful(out)) throw ConstructionBug("twizzler produced " + to_string(out));
  return out;
}

/// Tail chosen by search so the junction difference is r; `last_set`
/// optionally restricts the final element of the whole permutation.
inline std::optional<Perm> twizzler_search(int n, int p, int q, int r,
                                           const std::optional<std::vector<int>>& last_set = std::nullopt) {
  if (p < 1 || q < 1 || r < 1 || n != p * q + r || 2 * r < p) return std::nullopt;
  const Perm w = walecki(n);
  int lo = n;
  for (int i = p * q; i < n; ++i) lo = std::min(lo, w[i]);
  const int junction = w[(q - 1) * p];  // first element of the last reversed block, now at position pq
  for (int sgn : {-1, 1}) {
    const int first = junction + sgn * r - lo;
    if (first < 0 || first >= r) continue;
    GracefulConstraints c;
    c.first_element = first;
    if (last_set) {
      std::vector<int> shifted;
      for (int y : *last_set) shifted.push_back(y - lo);
      c.last_element_set = shifted;
    }
    const auto found = search_graceful(r, c);
    if (found.perm) return twizzler(n, p, q, r, *found.perm);
  }
  return std::nullopt;
}

inline std::optional<Perm> twizzler(int n, int p, int q, int r) { return twizzler_search(n, p, q, r); }

// ---------------------------------------------------------------------------
// Bipartite graceful permutations and the insertion construction.

namespace detail {

// Places differences from largest to smallest as edges (s, s + d) between
// small and large values, keeping every degree <= 2 (<= 1 at the two ends)
// and the edge set acyclic.  2p-1 such edges form the required path.
struct BipartiteEdgeDfs {
  int p = 0, x = 0;
  std::vector<int> deg, parent;
  std::vector<std::pair<int, int>> edges;
  long long nodes = 0, budget = 0;

  int root(int v) const {
    while (parent[v] != v) v = parent[v];
    return v;
  }

  bool place(int d) {
    if (++nodes > budget) return false;
    if (d == 0) return true;
    const int lo = std::max(0, p - d), hi = std::min(p - 1, 2 * p - 1 - d);
    for (int s = lo; s <= hi; ++s) {
      const int l = s + d;
      if (deg[s] >= (s == x ? 1 : 2) || deg[l] >= (l == x + p ? 1 : 2)) continue;
      const int rs = root(s), rl = root(l);
      if (rs == rl) continue;
      // The two ends may only meet through the final edge.
      const int rx = root(x), ry = root(x + p);
      if (d > 1 && ((rs == rx && rl == ry) || (rs == ry && rl == rx))) continue;
      ++deg[s];
      ++deg[l];
      parent[rs] = rl;
      edges.emplace_back(s, l);
      if (place(d - 1)) return true;
      edges.pop_back();
      parent[rs] = rs;
      --deg[s];
      --deg[l];
      if (nodes > budget) return false;
    }
    return false;
  }
};

inline std::optional<Perm> bipartite_search(int p, int x, long long budget) {
  BipartiteEdgeDfs dfs;
  dfs.p = p;
  dfs.x = x;
  dfs.budget = budget;
  dfs.deg.assign(2 * p, 0);
  dfs.parent.resize(2 * p);
  std::iota(dfs.parent.begin(), dfs.parent.end(), 0);
  if (!dfs.place(2 * p - 1)) return std::nullopt;
  std::vector<std::vector<int>> adj(2 * p);
  for (auto [s, l] : dfs.edges) {
    adj[s].push_back(l);
    adj[l].push_back(s);
  }
  Perm seq{x};
  int prev = -1, cur = x;
  while (static_cast<int>(seq.size()) < 2 * p) {
    const int next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
    prev = cur;
    cur = next;
    seq.push_back(cur);
  }
  return seq;
}

}  // namespace detail

/// A bipartite graceful permutation of length 2p starting at x in [0, p).
/// x = 0 is the Walecki arrangement; other starts come from backtracking
/// (trying the mirror x -> p-1-x at each budget as well), cached.
inline Perm bipartite_with_start(int p, int x) {
  if (p < 1 || x < 0 || x >= p) throw InvalidParameter("bipartite_with_start: need 0 <= x < p");
  static std::mutex mu;
  static std::map<std::pair<int, int>, Perm> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find({p, x}); it != cache.end()) return it->second;
  }
  Perm out;
  if (x == 0) {
    out = walecki(2 * p);
  } else {
    // The map s -> p-1-s on small values and l -> 3p-1-l on large values
    // preserves differences, so a witness for p-1-x gives one for x.
    std::optional<Perm> found;
    for (long long budget = 200'000; !found; budget *= 4) {
      if ((found = detail::bipartite_search(p, x, budget))) break;
      if (auto mirror = detail::bipartite_search(p, p - 1 - x, budget)) {
        for (int& v : *mirror) v = v < p ? p - 1 - v : 3 * p - 1 - v;
        found = std::move(mirror);
        break;
      }
      if (budget > 4'000'000'000LL) throw ConstructionInfeasible("bipartite_with_start: search did not finish");
    }
    out = std::move(*found);
  }
  if (!verify_bipartite(out) || out[0] != x || out.back() != x + p)
    throw ConstructionBug("bipartite_with_start produced " + to_string(out));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(p, x), out);
  return out;
}

/// Splices c (bipartite, length 2p, c_1 = y) into a between positions i and
/// i+1 (1-based), where a_i = x < a_{i+1} = y < 2(y - x) = p.
inline Perm insertion(const Perm& a, int i, const Perm& c) {
  if (!verify_graceful(a)) throw InvalidParameter("insertion: a is not graceful");
  if (!verify_bipartite(c)) throw InvalidParameter("insertion: c is not a bipartite graceful permutation");
  const int q = static_cast<int>(a.size());
  const int p = static_cast<int>(c.size()) / 2;
  if (i < 1 || i >= q) throw InvalidParameter("insertion: position out of range");
  const int x = a[i - 1], y = a[i];
  if (!(x < y)) throw InvalidParameter("insertion: need a_i < a_{i+1}");
  if (!(y < 2 * (y - x))) throw InvalidParameter("insertion: need y < 2(y - x)");
  if (2 * (y - x) != p) throw InvalidParameter("insertion: need 2(y - x) = p");
  if (c[0] != y) throw InvalidParameter("insertion: need c_1 = a_{i+1}");
  Perm out;
  for (int j = 0; j < i; ++j) out.push_back(a[j] + p);
  for (int j = 0; j < 2 * p; ++j) out.push_back(j % 2 == 0 ? c[j] : c[j] + q);
  for (int j = i; j < q; ++j) out.push_back(a[j] + p);
  if (!verify_graceful(out)) throw ConstructionBug("insertion produced " + to_string(out));
  return out;
}

enum class InsertionTransform { None, Reverse, Complement, ComplementReverse };

struct InsertionPoint {
  int position = 0;  // 1-based i in the transformed permutation
  InsertionTransform transform = InsertionTransform::None;
};

inline Perm apply_transform(const Perm& a, InsertionTransform t) {
  switch (t) {
    case InsertionTransform::None: return a;
    case InsertionTransform::Reverse: return reversed(a);
    case InsertionTransform::Complement: return complement(a);
    case InsertionTransform::ComplementReverse: return reversed(complement(a));
  }
  return a;
}

/// A place where a bipartite permutation of length 2p can be inserted,
/// possibly after reversing and/or complementing a.
inline std::optional<InsertionPoint> find_insertion_point(const Perm& a, int p) {
  if (p % 2 != 0 || p < 2) return std::nullopt;
  for (auto t : {InsertionTransform::None, InsertionTransform::Reverse, InsertionTransform::Complement,
                 InsertionTransform::ComplementReverse}) {
    const Perm b = apply_transform(a, t);
    for (int i = 1; i < static_cast<int>(b.size()); ++i) {
      const int x = b[i - 1], y = b[i];
      if (x < y && 2 * (y - x) == p && y < p) return InsertionPoint{i, t};
    }
  }
  return std::nullopt;
}

/// Inserts a bipartite permutation of length 2p into a, undoing any
/// transform afterwards so the endpoints become a_1 + p and a_q + p.
inline std::optional<Perm> insert_bipartite(const Perm& a, int p) {
  const auto pt = find_insertion_point(a, p);
  if (!pt) return std::nullopt;
  const Perm b = apply_transform(a, pt->transform);
  Perm out = insertion(b, pt->position, bipartite_with_start(p, b[pt->position]));
  switch (pt->transform) {
    case InsertionTransform::None: break;
    case InsertionTransform::Reverse: out = reversed(out); break;
    case InsertionTransform::Complement: out = complement(out); break;
    case InsertionTransform::ComplementReverse: out = complement(reversed(out)); break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cracked permutations built from the ad hoc pattern for even l.

namespace detail {

inline void push_block(Perm& a, std::initializer_list<int> xs) {
  for (int x : xs) a.push_back(x);
}

// Value following the ad hoc prefix: (l-2)/2, the long zigzag and the tail.
inline void cracked_suffix(Perm& a, int l) {
  a.push_back((l - 2) / 2);
  for (int j = 0; j <= (l - 4) / 2; ++j) {
    a.push_back((3 * l - 2) / 2 + j);
    a.push_back((l - 4) / 2 - j);
  }
  push_block(a, {2 * l - 2, 2 * l - 1, l});
}

}  // namespace detail

/// Cracked graceful permutation of length 2l-1, crack l-2, starting l+1 and
/// ending l, for even l.
inline Perm cracked_isbell(int l) {
  if (l < 2 || l % 2 != 0) throw InvalidParameter("cracked_isbell: l must be even and >= 2");
  Perm a;
  if (l == 2) {
    a = {3, 1, 2};
  } else if (l == 4) {
    a = {5, 0, 6, 7, 3, 1, 4};
  } else if (l == 8) {
    a = {9, 5, 7, 12, 11, 2, 10, 4, 14, 3, 0, 13, 1, 15, 8};
  } else {
    int blocks = 0, shift = 0;
    if (l % 6 == 0) {
      detail::push_block(a, {l + 1, l - 3, l - 1});
      blocks = l / 6 - 1;
      shift = 1;
    } else if (l % 6 == 2) {
      detail::push_block(a, {l + 1, l - 6, l + 3, l - 1, l - 3, l + 2, l - 4, l + 4, l - 7, l + 5, l - 5});
      blocks = (l - 14) / 6;
      shift = 5;
    } else {
      detail::push_block(a, {l + 1, l - 1, l - 5, l + 3, l - 4, l + 2, l - 3});
      blocks = (l - 10) / 6;
      shift = 3;
    }
    // Zigzag blocks of length six; the first one after the ad hoc prefix is
    // block 1.
    for (int k = 1; k <= blocks; ++k) {
      const int h = l + 3 * k + shift, lo = l - 3 * k - shift - 2;
      detail::push_block(a, {h, lo, h - 1, lo + 1, h - 2, lo + 2});
    }
    detail::cracked_suffix(a, l);
  }
  const auto chk = verify_cracked(a);
  if (!chk.ok || chk.crack != l - 2 || a.front() != l + 1 || a.back() != l || static_cast<int>(a.size()) != 2 * l - 1)
    throw ConstructionBug("cracked_isbell(" + std::to_string(l) + ") produced " + to_string(a));
  return a;
}

namespace detail {

struct VariantPrefix {
  int residue, d, t;
  std::vector<int> seq;
};

// Zero-centred replacement prefixes, keyed by l mod 6 and first difference.
inline const std::vector<VariantPrefix>& variant_prefixes() {
  static const std::vector<VariantPrefix> table = {
      {0, 5, 2, {2, -3, 3, -4, 7, -7, 8, -8, 5, -5, 4, 0, -2, 6, -6}},
      {0, 6, 1, {2, -4, 5, -5, 3, -2, 0, 4, -3}},
      {0, 7, 1, {2, -5, 5, -4, 4, 0, -2, 3, -3}},
      {2, 5, 0, {2, -3, 3, -6, 6, -5, 5, -2, 0, 4, -4}},
      {2, 6, 1, {2, -4, 3, -2, 0, 4, -6, 7, -8, 8, -9, 9, -5, 6, -3, 5, -7}},
      {2, 7, 0, {2, -5, 5, -6, 6, -3, 3, -2, 0, 4, -4}},
      {4, 5, 0, {2, -3, 3, -4, 4, 0, -2}},
      {4, 6, 1, {2, -4, 3, -2, 0, 4, -7, 7, -6, 6, -3, 5, -5}},
      {4, 7, 2, {2, -5, 4, 0, -2, 3, -3, 5, -7, 6, -4, 7, -10, 10, -9, 9, -6, 8, -8}},
  };
  return table;
}

// Full permutations for the pairs the prefix substitution cannot reach.
inline const std::map<std::pair<int, int>, Perm>& variant_exceptions() {
  static const std::map<std::pair<int, int>, Perm> table = {
      {{4, 5}, {5, 0, 1, 7, 3, 6, 4}},
      {{6, 5}, {7, 2, 5, 11, 3, 1, 8, 9, 0, 10, 6}},
      {{6, 6}, {7, 1, 5, 10, 0, 3, 11, 2, 9, 8, 6}},
      {{6, 7}, {7, 0, 2, 10, 1, 11, 5, 9, 8, 3, 6}},
      {{8, 5}, {9, 4, 12, 3, 13, 14, 2, 15, 1, 5, 11, 0, 7, 10, 8}},
      {{8, 6}, {9, 3, 10, 14, 2, 1, 15, 5, 7, 12, 4, 13, 0, 11, 8}},
      {{8, 7}, {9, 2, 13, 11, 7, 1, 14, 0, 10, 15, 3, 12, 4, 5, 8}},
      {{10, 6}, {11, 5, 13, 15, 0, 1, 19, 2, 18, 4, 16, 3, 12, 9, 14, 7, 17, 6, 10}},
      {{10, 7}, {11, 4, 13, 15, 0, 5, 6, 12, 9, 17, 7, 18, 1, 19, 3, 16, 2, 14, 10}},
      {{12, 5}, {13, 8, 15, 17, 0, 1, 23, 2, 22, 3, 21, 5, 19, 4, 16, 6, 14, 11, 7, 20, 9, 18, 12}},
      {{14, 6}, {15, 9, 17, 19, 1, 27, 2, 26, 3, 25, 4, 0, 20, 10, 21, 7, 16, 23, 8, 11, 24, 5, 22, 6, 18, 13, 14}},
      {{16, 7}, {17, 10, 19, 21, 1, 31, 2, 30, 3, 29, 4, 28, 5, 27, 6, 0, 18, 15, 11, 25, 20, 8, 23, 7, 26, 9, 22, 12,
                 13, 24, 16}},
  };
  return table;
}

}  // namespace detail

/// Cracked graceful permutation of length 2l-1 with crack l-2, first
/// element l+1, last element l and first absolute difference d.
inline Perm cracked_variant_start(int l, int d) {
  if (l <= 2 || l % 2 != 0) throw InvalidParameter("cracked_variant_start: l must be even and > 2");
  if (d < 5 || d > 7) throw InvalidParameter("cracked_variant_start: d must be 5, 6 or 7");
  if (l == 4 && (d == 6 || d == 7))
    throw DocumentedNonexistence("no cracked graceful permutation with l = 4 and first difference " +
                                 std::to_string(d));
  Perm a;
  const auto& ex = detail::variant_exceptions();
  if (auto it = ex.find({l, d}); it != ex.end()) {
    a = it->second;
  } else {
    const int res = l % 6;
    const detail::VariantPrefix* vp = nullptr;
    for (const auto& v : detail::variant_prefixes())
      if (v.residue == res && v.d == d) vp = &v;
    const int len = res == 0 ? 6 * vp->t + 3 : res == 2 ? 6 * vp->t + 11 : 6 * vp->t + 7;
    a = cracked_isbell(l);
    if (static_cast<int>(vp->seq.size()) != len || len > static_cast<int>(a.size()))
      throw ConstructionBug("cracked_variant_start: prefix length mismatch");
    for (int i = 0; i < len; ++i) a[i] = vp->seq[i] + (l - 1);
  }
  const auto chk = verify_cracked(a);
  if (!chk.ok || chk.crack != l - 2 || a.front() != l + 1 || a.back() != l || std::abs(a[1] - a[0]) != d)
    throw ConstructionBug("cracked_variant_start(" + std::to_string(l) + "," + std::to_string(d) + ") produced " +
                          to_string(a));
  return a;
}

}  // namespace dpseq
