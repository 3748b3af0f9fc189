#pragma once

// Partial products, S-sequencings and directed terraces.
//
// A sequence g = (g_1, ..., g_k) of distinct non-identity elements has
// partial products h_0 = e, h_i = h_{i-1} g_i.  It is an S-sequencing when
// all k+1 partial products are distinct, and a rotational S-sequencing
// when h_1, ..., h_k are distinct and h_k = e.

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpseq/error.hpp"
#include "dpseq/group.hpp"

namespace dpseq {

/// An ordering of distinct non-identity elements (by index).
struct ElementSequence {
  std::vector<int> elements;

  std::size_t size() const { return elements.size(); }
  int operator[](std::size_t i) const { return elements[i]; }
  friend bool operator==(const ElementSequence&, const ElementSequence&) = default;
};

/// (h_0, ..., h_k); basic when h_0 is the identity.
struct DirectedTerrace {
  std::vector<int> entries;

  std::size_t size() const { return entries.size(); }
  int operator[](std::size_t i) const { return entries[i]; }
  friend bool operator==(const DirectedTerrace&, const DirectedTerrace&) = default;
};

/// Throws unless `seq` lists distinct, in-range, non-identity elements.
inline void check_element_sequence(const FiniteGroup& g, std::span<const int> seq) {
  std::vector<char> seen(g.order());
  for (int x : seq) {
    if (x < 0 || x >= g.order()) throw InvalidParameter("element index " + std::to_string(x) + " out of range");
    if (x == g.identity()) throw InvalidParameter("sequence contains the identity");
    if (seen[x]) throw InvalidParameter("sequence repeats " + g.label(x));
    seen[x] = 1;
  }
}

inline DirectedTerrace partial_products(const FiniteGroup& g, const ElementSequence& seq) {
  check_element_sequence(g, seq.elements);
  DirectedTerrace t;
  t.entries.reserve(seq.size() + 1);
  int h = g.identity();
  t.entries.push_back(h);
  for (int x : seq.elements) {
    h = g.mul(h, x);
    t.entries.push_back(h);
  }
  return t;
}

/// Quotients h_{i-1}^{-1} h_i of any sequence of elements.
inline ElementSequence associated_sequencing(const FiniteGroup& g, const DirectedTerrace& t) {
  ElementSequence s;
  for (std::size_t i = 1; i < t.size(); ++i) s.elements.push_back(g.mul(g.inv(t[i - 1]), t[i]));
  return s;
}

inline bool all_distinct(const FiniteGroup& g, std::span<const int> xs) {
  std::vector<char> seen(g.order());
  for (int x : xs) {
    if (seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

/// True iff the k+1 partial products are distinct.  Invalid sequences
/// (repeats, identity) are rejected with false.
inline bool is_s_sequencing(const FiniteGroup& g, const ElementSequence& seq) {
  try {
    check_element_sequence(g, seq.elements);
  } catch (const InvalidParameter&) {
    return false;
  }
  return all_distinct(g, partial_products(g, seq).entries);
}

/// True iff t starts at the identity and has no repeated entry.
inline bool is_basic_directed_terrace(const FiniteGroup& g, const DirectedTerrace& t) {
  if (t.size() == 0 || t[0] != g.identity()) return false;
  for (int x : t.entries)
    if (x < 0 || x >= g.order()) return false;
  return all_distinct(g, t.entries);
}

/// True iff h_1..h_k are distinct and h_k = e.
inline bool is_rotational_s_sequencing(const FiniteGroup& g, const ElementSequence& seq) {
  try {
    check_element_sequence(g, seq.elements);
  } catch (const InvalidParameter&) {
    return false;
  }
  if (seq.size() == 0) return false;
  const auto t = partial_products(g, seq);
  if (t.entries.back() != g.identity()) return false;
  return all_distinct(g, std::span<const int>(t.entries).subspan(1));
}

/// A directed terrace for G: n distinct entries whose successive quotients
/// are the n-1 distinct non-identity elements.
inline bool is_directed_terrace(const FiniteGroup& g, const DirectedTerrace& t) {
  if (static_cast<int>(t.size()) != g.order()) return false;
  for (int x : t.entries)
    if (x < 0 || x >= g.order()) return false;
  if (!all_distinct(g, t.entries)) return false;
  const auto q = associated_sequencing(g, t);
  for (int x : q.elements)
    if (x == g.identity()) return false;
  return all_distinct(g, q.elements);
}

/// A full sequencing: an S-sequencing with S = G \ {e}.
inline bool is_sequencing(const FiniteGroup& g, const ElementSequence& seq) {
  return static_cast<int>(seq.size()) == g.order() - 1 && is_s_sequencing(g, seq);
}

inline void require_directed_terrace(const FiniteGroup& g, const DirectedTerrace& t, const char* op) {
  if (!is_directed_terrace(g, t))
    throw InvalidParameter(std::string(op) + ": input is not a full-length directed terrace of " + g.name());
}

inline DirectedTerrace reverse_terrace(const FiniteGroup& g, const DirectedTerrace& t) {
  require_directed_terrace(g, t, "reverse_terrace");
  DirectedTerrace r = t;
  std::reverse(r.entries.begin(), r.entries.end());
  return r;
}

/// Cuts the terrace at the unique step whose quotient equals the wrap-around
/// quotient h_{n-1}^{-1} h_0 and rotates it so the wrap becomes interior.
/// With g_j = h_{j-1}^{-1} h_j, the output is (h_j, ..., h_{n-1}, h_0, ..., h_{j-1}).
inline DirectedTerrace translate_terrace(const FiniteGroup& g, const DirectedTerrace& t) {
  require_directed_terrace(g, t, "translate_terrace");
  const std::size_t n = t.size();
  const int wrap = g.mul(g.inv(t[n - 1]), t[0]);
  for (std::size_t j = 1; j < n; ++j) {
    if (g.mul(g.inv(t[j - 1]), t[j]) == wrap) {
      DirectedTerrace out;
      out.entries.reserve(n);
      for (std::size_t i = j; i < n; ++i) out.entries.push_back(t[i]);
      for (std::size_t i = 0; i < j; ++i) out.entries.push_back(t[i]);
      if (!is_directed_terrace(g, out)) throw InternalInconsistency("translation did not yield a directed terrace");
      return out;
    }
  }
  throw InternalInconsistency("translate_terrace: wrap-around quotient is not a step of the terrace");
}

/// Left-translates a directed terrace so it starts at the identity.
inline DirectedTerrace normalize_terrace(const FiniteGroup& g, const DirectedTerrace& t) {
  if (t.size() == 0) return t;
  const int shift = g.inv(t[0]);
  DirectedTerrace out;
  out.entries.reserve(t.size());
  for (int x : t.entries) out.entries.push_back(g.mul(shift, x));
  return out;
}

/// Rotates a rotational sequencing so that `x` is last, then drops it.
/// The result is an S-sequencing for S = G \ {e, x}.
inline ElementSequence drop_via_rotational(const FiniteGroup& g, const ElementSequence& rs, int x) {
  if (x == g.identity()) throw InvalidParameter("drop_via_rotational: cannot exclude the identity");
  if (static_cast<int>(rs.size()) != g.order() - 1 || !is_rotational_s_sequencing(g, rs))
    throw InvalidParameter("drop_via_rotational: input is not a rotational sequencing of " + g.name());
  const auto it = std::find(rs.elements.begin(), rs.elements.end(), x);
  if (it == rs.elements.end()) throw InvalidParameter("drop_via_rotational: element not in sequence");
  // Cyclic shifts of a rotational sequencing are rotational sequencings.
  const std::size_t pos = static_cast<std::size_t>(it - rs.elements.begin());
  ElementSequence out;
  const std::size_t k = rs.size();
  for (std::size_t i = 1; i < k; ++i) out.elements.push_back(rs[(pos + i) % k]);
  if (!is_s_sequencing(g, out)) throw InternalInconsistency("drop_via_rotational produced an invalid sequence");
  return out;
}

/// Removes the first element of a sequencing; the remainder is an
/// S-sequencing for S = G \ {e, s_1}.
inline ElementSequence drop_via_prefix(const FiniteGroup& g, const ElementSequence& s) {
  if (!is_sequencing(g, s)) throw InvalidParameter("drop_via_prefix: input is not a sequencing of " + g.name());
  ElementSequence out{std::vector<int>(s.elements.begin() + 1, s.elements.end())};
  if (!is_s_sequencing(g, out)) throw InternalInconsistency("drop_via_prefix produced an invalid sequence");
  return out;
}

/// For S inside the reflection coset: order by descending exponent.  The
/// partial products alternate cosets with strictly monotone exponents.
inline ElementSequence order_reflections_descending(const FiniteGroup& g, std::vector<int> subset) {
  for (int x : subset)
    if (g.coset_of(x) != Coset::Reflection) throw InvalidParameter("subset is not inside the reflection coset");
  std::sort(subset.begin(), subset.end(), std::greater<>());
  ElementSequence s{std::move(subset)};
  check_element_sequence(g, s.elements);
  return s;
}

inline std::vector<std::string> labels_of(const FiniteGroup& g, std::span<const int> xs) {
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (int x : xs) out.push_back(g.label(x));
  return out;
}

inline std::vector<int> parse_labels(const FiniteGroup& g, std::span<const std::string> labels) {
  std::vector<int> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(g.parse(l));
  return out;
}

}  // namespace dpseq
