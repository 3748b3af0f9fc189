#pragma once

// Isbell-style sequencings of D_{2m} for odd m built from (cracked) graceful
// permutations, certificates that replay them, and the cascade that finds
// an S-sequencing for S = D_{2m} \ {e, x}.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dpseq/error.hpp"
#include "dpseq/graceful.hpp"
#include "dpseq/group.hpp"
#include "dpseq/search.hpp"
#include "dpseq/sequencing.hpp"

namespace dpseq {

enum class IsbellVariant { First, Second4l3, Second4l1, Third4l1, Third4l3 };

inline const char* to_string(IsbellVariant v) {
  switch (v) {
    case IsbellVariant::First: return "isbell-first";
    case IsbellVariant::Second4l3: return "isbell-second-4l3";
    case IsbellVariant::Second4l1: return "isbell-second-4l1";
    case IsbellVariant::Third4l1: return "isbell-third-4l1";
    case IsbellVariant::Third4l3: return "isbell-third-4l3";
  }
  return "?";
}

/// Accepts "first", "second-4l3", ... with or without the "isbell-" prefix.
inline std::optional<IsbellVariant> parse_isbell_variant(std::string s) {
  if (s.rfind("isbell-", 0) == 0) s = s.substr(7);
  if (s == "first") return IsbellVariant::First;
  if (s == "second-4l3") return IsbellVariant::Second4l3;
  if (s == "second-4l1") return IsbellVariant::Second4l1;
  if (s == "third-4l1") return IsbellVariant::Third4l1;
  if (s == "third-4l3") return IsbellVariant::Third4l3;
  return std::nullopt;
}

inline int isbell_m(IsbellVariant v, int l) {
  switch (v) {
    case IsbellVariant::First:
    case IsbellVariant::Second4l1:
    case IsbellVariant::Third4l1: return 4 * l + 1;
    default: return 4 * l + 3;
  }
}

/// Throws InvalidParameter unless `a` meets the variant's preconditions.
inline void check_isbell_input(IsbellVariant v, int l, const Perm& a) {
  auto fail = [&](const std::string& why) {
    throw InvalidParameter(std::string(to_string(v)) + " (l = " + std::to_string(l) + "): " + why);
  };
  if (l < 1) fail("l must be positive");
  const int n = static_cast<int>(a.size());
  switch (v) {
    case IsbellVariant::First:
      if (n != 2 * l || !verify_graceful(a)) fail("need a graceful permutation of length 2l");
      if (a.back() != l) fail("need final element l");
      break;
    case IsbellVariant::Second4l3:
    case IsbellVariant::Second4l1:
      if (l % 2 == 0) fail("l must be odd; the required graceful permutation cannot exist for even l");
      if (n != (v == IsbellVariant::Second4l3 ? 2 * l + 1 : 2 * l) || !verify_graceful(a))
        fail("need a graceful permutation of length " + std::to_string(v == IsbellVariant::Second4l3 ? 2 * l + 1 : 2 * l));
      if (a.front() != l || a.back() != l - 1) fail("need endpoints l and l-1");
      break;
    case IsbellVariant::Third4l1: {
      if (l % 2 != 0 || l < 4) fail("l must be even and at least 4");
      const auto c = verify_cracked(a);
      if (n != 2 * l - 2 || !c.ok || c.crack != l - 4) fail("need a cracked permutation of length 2l-2 with crack l-4");
      if (a.front() != l - 1 || a.back() != l - 2) fail("need endpoints l-1 and l-2");
      break;
    }
    case IsbellVariant::Third4l3: {
      if (l % 2 != 0) fail("l must be even");
      const auto c = verify_cracked(a);
      if (n != 2 * l - 1 || !c.ok || c.crack != l - 2) fail("need a cracked permutation of length 2l-1 with crack l-2");
      if (a.front() != l + 1 || a.back() != l) fail("need endpoints l+1 and l");
      break;
    }
  }
}

/// The sequencing of D_{2m} (m = 4l+1 or 4l+3) for the given variant.
inline ElementSequence isbell_construct(IsbellVariant v, int l, const Perm& a) {
  check_isbell_input(v, l, a);
  const int m = isbell_m(v, l);
  const FiniteGroup g = FiniteGroup::dihedral(m);
  const auto b = signed_differences(a);
  ElementSequence s;
  auto rot = [&](long long e) { s.elements.push_back(g.rotation(e)); };
  auto ref = [&](long long e) { s.elements.push_back(g.reflection(e)); };
  auto refs = [&](long long lo, long long hi) {
    for (long long e = lo; e <= hi; ++e) ref(e);
  };
  for (int x : b) rot(x);
  switch (v) {
    case IsbellVariant::First:
      rot(2 * l);
      refs(0, 2 * l - 1);
      ref(4 * l);
      refs(2 * l, 4 * l - 1);
      rot(2 * l + 1);
      for (auto it = b.rbegin(); it != b.rend(); ++it) rot(-*it);
      break;
    case IsbellVariant::Second4l3:
      rot(2 * l + 2);
      refs(0, 2 * l);
      ref(4 * l + 2);
      refs(2 * l + 1, 4 * l + 1);
      rot(2 * l + 1);
      for (int x : b) rot(-x);
      break;
    case IsbellVariant::Second4l1:
      rot(2 * l + 1);
      refs(0, 2 * l - 1);
      ref(4 * l);
      refs(2 * l, 4 * l - 1);
      rot(2 * l);
      for (int x : b) rot(-x);
      break;
    case IsbellVariant::Third4l1:
      rot(2 * l + 1);
      rot(2 * l - 2);
      rot(2 * l + 2);
      refs(0, 2 * l - 2);
      ref(4 * l - 2);
      ref(4 * l - 1);
      ref(4 * l);
      refs(2 * l - 1, 4 * l - 3);
      rot(2 * l - 1);
      for (int x : b) rot(-x);
      rot(2 * l);
      rot(2 * l + 3);
      break;
    case IsbellVariant::Third4l3:
      rot(2 * l + 2);
      rot(2 * l - 1);
      rot(2 * l + 3);
      refs(0, 2 * l - 1);
      ref(4 * l);
      ref(4 * l + 1);
      ref(4 * l + 2);
      refs(2 * l, 4 * l - 1);
      rot(2 * l);
      for (int x : b) rot(-x);
      rot(2 * l + 1);
      rot(2 * l + 4);
      break;
  }
  if (!is_sequencing(g, s))
    throw ConstructionBug(std::string(to_string(v)) + " failed verification for l = " + std::to_string(l) +
                          " with input " + to_string(a));
  return s;
}

inline ElementSequence isbell_first(int l, const Perm& a) { return isbell_construct(IsbellVariant::First, l, a); }

inline ElementSequence isbell_second(int l, IsbellVariant v, const Perm& a) {
  if (v != IsbellVariant::Second4l3 && v != IsbellVariant::Second4l1)
    throw InvalidParameter("isbell_second: variant must be second-4l3 or second-4l1");
  return isbell_construct(v, l, a);
}

inline ElementSequence isbell_third(int l, IsbellVariant v, const Perm& a) {
  if (v != IsbellVariant::Third4l1 && v != IsbellVariant::Third4l3)
    throw InvalidParameter("isbell_third: variant must be third-4l1 or third-4l3");
  return isbell_construct(v, l, a);
}

/// Cracked input for the 4l+1 third construction: length 2l-2, crack l-4,
/// endpoints l-1 and l-2, optionally with a given first absolute
/// difference.  Found by endpoint-constrained search (exact up to length
/// 24, seeded restarts beyond).
inline std::optional<Perm> third_4l1_input(int l, std::optional<int> first_abs_diff = std::nullopt,
                                           long long budget = 50'000'000) {
  if (l < 4 || l % 2 != 0) return std::nullopt;
  GracefulConstraints c;
  c.first_element = l - 1;
  c.last_element = l - 2;
  c.crack = l - 4;
  c.first_abs_diff = first_abs_diff;
  auto r = search_graceful(2 * l - 2, c, budget);
  return r.perm;
}

/// The variant and input used for odd m >= 5 when no particular first
/// element is wanted: first construction with the Walecki arrangement for
/// m = 1 mod 4, second with the odd-l arrangement for m = 7 mod 8, third
/// with the cracked arrangement for m = 3 mod 8.
inline std::pair<IsbellVariant, Perm> standard_isbell_input(int m) {
  if (m < 5 || m % 2 == 0) throw InvalidParameter("standard_isbell_input: m must be odd and >= 5");
  if (m % 4 == 1) {
    const int l = (m - 1) / 4;
    return {IsbellVariant::First, walecki(2 * l)};
  }
  const int l = (m - 3) / 4;
  if (l % 2 == 1) return {IsbellVariant::Second4l3, isbell_graceful_odd_l(l, 2 * l + 1)};
  return {IsbellVariant::Third4l3, cracked_isbell(l)};
}

/// The input each variant uses by default for a given l.
inline Perm default_isbell_input(IsbellVariant v, int l) {
  if (l < 1) throw InvalidParameter("isbell: l must be positive");
  switch (v) {
    case IsbellVariant::First: return walecki(2 * l);
    case IsbellVariant::Second4l3:
    case IsbellVariant::Second4l1:
      if (l % 2 == 0) throw InvalidParameter(std::string(to_string(v)) + " needs odd l");
      if (v == IsbellVariant::Second4l1 && l < 3) throw InvalidParameter("isbell-second-4l1 needs l >= 3");
      return isbell_graceful_odd_l(l, v == IsbellVariant::Second4l3 ? 2 * l + 1 : 2 * l);
    case IsbellVariant::Third4l1: {
      if (l % 2 != 0 || l < 4) throw InvalidParameter("isbell-third-4l1 needs even l >= 4");
      auto a = third_4l1_input(l);
      if (!a) throw ConstructionInfeasible("no cracked input found for isbell-third-4l1 within budget");
      return *a;
    }
    case IsbellVariant::Third4l3:
      if (l % 2 != 0) throw InvalidParameter("isbell-third-4l3 needs even l");
      return cracked_isbell(l);
  }
  throw InvalidParameter("unknown variant");
}

// ---------------------------------------------------------------------------
// Certificates.

struct Certificate {
  std::string construction;  // isbell-*, lemma-r0, search, rotational-drop, prefix-drop
  int m = 0;
  int l = -1;
  std::string base;                  // underlying construction for the drop routes
  Perm perm;                         // (cracked) graceful input
  std::vector<std::string> derivation;  // "translate" / "reverse", applied in order
  std::optional<DihedralAutomorphism> automorphism;
  std::optional<int> excluded;       // element index dropped
  std::vector<int> witness;          // explicit sequence for search / lemma-r0 bases
  std::string route;                 // human-readable note on how the base was chosen
};

namespace detail {

inline ElementSequence apply_derivation(const FiniteGroup& g, const ElementSequence& s,
                                        const std::vector<std::string>& steps) {
  DirectedTerrace t = partial_products(g, s);
  for (const auto& st : steps) {
    if (st == "translate") t = translate_terrace(g, t);
    else if (st == "reverse") t = reverse_terrace(g, t);
    else throw InvalidParameter("unknown derivation step '" + st + "'");
  }
  return associated_sequencing(g, t);
}

inline ElementSequence apply_automorphism(const FiniteGroup& g, const ElementSequence& s,
                                          const DihedralAutomorphism& a) {
  ElementSequence out;
  out.elements.reserve(s.size());
  for (int x : s.elements) out.elements.push_back(a.apply(g, x));
  return out;
}

inline bool is_isbell_name(const std::string& n) { return parse_isbell_variant(n).has_value() && n.rfind("isbell-", 0) == 0; }

// Full sequencing described by the base part of a certificate.
inline ElementSequence replay_base(const FiniteGroup& g, const Certificate& c, const std::string& name) {
  ElementSequence s;
  if (is_isbell_name(name)) {
    s = isbell_construct(*parse_isbell_variant(name), c.l, c.perm);
  } else if (name == "search" || name == "rotational-search" || name == "lemma-r0") {
    s.elements = c.witness;
  } else if (name == "rotational-pattern") {
    s = dihedral_rotational_sequencing(g);
  } else {
    throw InvalidParameter("unknown construction '" + name + "'");
  }
  if (!c.derivation.empty()) s = apply_derivation(g, s, c.derivation);
  if (c.automorphism) s = apply_automorphism(g, s, *c.automorphism);
  return s;
}

}  // namespace detail

/// Rebuilds the sequence a certificate describes, verifying it on the way.
inline ElementSequence replay(const Certificate& c) {
  const FiniteGroup g = FiniteGroup::dihedral(c.m);
  ElementSequence out;
  if (c.construction == "prefix-drop") {
    const auto full = detail::replay_base(g, c, c.base);
    out = drop_via_prefix(g, full);
    if (c.excluded && full[0] != *c.excluded) throw InternalInconsistency("certificate excludes a different element");
  } else if (c.construction == "rotational-drop") {
    if (!c.excluded) throw InvalidParameter("rotational-drop certificate needs the excluded element");
    out = drop_via_rotational(g, detail::replay_base(g, c, c.base), *c.excluded);
  } else if (c.construction == "search") {
    out.elements = c.witness;
    if (!is_s_sequencing(g, out)) throw InternalInconsistency("search certificate does not verify");
  } else {
    out = detail::replay_base(g, c, c.construction);
    if (!is_s_sequencing(g, out)) throw InternalInconsistency("certificate does not replay to an S-sequencing");
  }
  return out;
}

struct DerivedSequencing {
  ElementSequence sequence;
  Certificate certificate;
};

/// A sequencing of D_{2m} (m odd, m >= 5) whose first element is a
/// reflection, from the translated (and, for m = 1 mod 4 and m = 7 mod 8,
/// reversed) terrace of the standard construction.  When that chain starts
/// with a rotation (only m = 5 among small cases) the remaining chains are
/// tried in a fixed order.
inline DerivedSequencing sequencing_with_reflection_start(int m) {
  if (m < 5 || m % 2 == 0) throw InvalidParameter("sequencing_with_reflection_start: m must be odd and >= 5");
  const auto [v, a] = standard_isbell_input(m);
  const FiniteGroup g = FiniteGroup::dihedral(m);
  std::vector<std::vector<std::string>> chains;
  if (v == IsbellVariant::Third4l3) chains = {{"translate"}, {"translate", "reverse"}};
  else chains = {{"translate", "reverse"}, {"translate"}};
  chains.push_back({"reverse", "translate", "reverse"});
  for (auto& chain : chains) {
    Certificate c;
    c.construction = to_string(v);
    c.m = m;
    c.l = v == IsbellVariant::First ? (m - 1) / 4 : (m - 3) / 4;
    c.perm = a;
    c.derivation = chain;
    ElementSequence s = replay(c);
    if (!is_sequencing(g, s)) throw ConstructionBug("derived sequence failed verification for m = " + std::to_string(m));
    if (g.coset_of(s[0]) == Coset::Reflection) return {std::move(s), std::move(c)};
  }
  throw ConstructionBug("no derivation starts with a reflection for m = " + std::to_string(m));
}

// ---------------------------------------------------------------------------
// Order coverage from twizzler permutations.

/// Orders of u^{2l-p+1} in C_{4l+1} over all 2l = pq + r with q >= 1 and
/// p/2 <= r <= 20.
inline std::set<int> constr20_coverage(int l) {
  if (l < 1) throw InvalidParameter("constr20_coverage: l must be positive");
  const long long m = 4LL * l + 1;
  std::set<int> orders;
  for (int r = 1; r <= 20 && r < 2 * l; ++r) {
    const int rest = 2 * l - r;
    for (int p = 1; p <= 2 * r && p <= rest; ++p) {
      if (rest % p != 0) continue;
      const long long e = 2LL * l - p + 1;
      orders.insert(static_cast<int>(m / std::gcd(e % m, m)));
    }
  }
  return orders;
}

/// Orders > 1 of rotations in C_m.
inline std::set<int> rotation_orders(int m) {
  std::set<int> out;
  for (int d = 2; d <= m; ++d)
    if (m % d == 0) out.insert(d);
  return out;
}

// ---------------------------------------------------------------------------
// Insertion chains.

namespace detail {

// Extends `a` (endpoints at the centre) to `target` length by repeated
// insertion, trying step sizes largest first.  `accept` filters finished
// permutations.
inline std::optional<Perm> insertion_chain(const Perm& a, int target, const std::function<bool(const Perm&)>& accept,
                                           int& attempts) {
  const int q = static_cast<int>(a.size());
  if (q == target) return accept(a) ? std::optional<Perm>(a) : std::nullopt;
  if (q > target || --attempts < 0) return std::nullopt;
  for (int p = std::min(2 * q - 1, (target - q) / 2); p >= 2; --p) {
    if (p % 2 != 0 || 3 * p <= 2 * (q - 1)) continue;
    auto b = insert_bipartite(a, p);
    if (!b) continue;
    if (auto r = insertion_chain(*b, target, accept, attempts)) return r;
    if (attempts < 0) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

/// Bases for insertion chains: graceful permutations of length q whose
/// endpoints are (q-1)/2, (q-3)/2 (odd q) or q/2, q/2-1 (even q).
inline std::vector<std::pair<std::string, Perm>> centred_bases(bool odd_length, int max_length) {
  std::vector<std::pair<std::string, Perm>> out;
  if (odd_length) {
    static const std::vector<Perm> printed = {
        {5, 8, 0, 10, 1, 6, 7, 3, 9, 2, 4},
        {7, 10, 0, 14, 1, 13, 2, 8, 3, 12, 4, 11, 9, 5, 6},
        {9, 12, 0, 18, 1, 17, 2, 16, 3, 7, 13, 5, 14, 4, 15, 8, 6, 11, 10},
    };
    for (const auto& p : printed)
      if (static_cast<int>(p.size()) <= max_length) out.emplace_back("first-difference-3 base", p);
    for (int lp = 1; 2 * lp + 1 <= max_length; lp += 2)
      out.emplace_back("odd-l arrangement l=" + std::to_string(lp), isbell_graceful_odd_l(lp, 2 * lp + 1));
  } else {
    for (int lp = 3; 2 * lp <= max_length; lp += 2)
      out.emplace_back("odd-l arrangement l=" + std::to_string(lp), isbell_graceful_odd_l(lp, 2 * lp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The missing-element cascade.

enum class MissingStatus { Resolved, Unresolved };

struct MissingResult {
  MissingStatus status = MissingStatus::Unresolved;
  std::optional<ElementSequence> sequence;
  std::optional<Certificate> certificate;
  std::string reason;
  std::vector<std::string> trace;
};

struct MissingOptions {
  int max_search_order = 30;                 // direct S-sequencing search only up to this |G|
  long long search_budget = 20'000'000;      // nodes for the direct search
  long long graceful_budget = 2'000'000;     // nodes per graceful-input search
  int max_random_order = 130;                // randomized restarts only up to this |G|
  long long random_budget = 100'000'000;     // total nodes across restarts
};

namespace detail {

// Turns a full sequencing certificate whose first element has the order of
// x into a prefix-drop certificate excluding x.
inline std::optional<MissingResult> finish_prefix(const FiniteGroup& g, Certificate c, int x,
                                                  std::vector<std::string>& trace) {
  c.base = c.construction;
  c.construction = "prefix-drop";
  c.automorphism.reset();
  ElementSequence full = replay_base(g, c, c.base);
  const auto aut = dihedral_automorphism_between(g, full[0], x);
  if (!aut) return std::nullopt;
  c.automorphism = *aut;
  c.excluded = x;
  MissingResult r;
  r.sequence = replay(c);
  if (!is_s_sequencing(g, *r.sequence) || static_cast<int>(r.sequence->size()) != g.order() - 2)
    throw ConstructionBug("cascade produced an invalid S-sequencing");
  r.status = MissingStatus::Resolved;
  r.certificate = std::move(c);
  trace.push_back("resolved via " + r.certificate->base + (r.certificate->route.empty() ? "" : " (" + r.certificate->route + ")"));
  r.trace = trace;
  return r;
}

}  // namespace detail

/// An S-sequencing of D_{2m} for S = D_{2m} \ {e, x}, with certificate, or
/// Unresolved with the reason.
inline MissingResult s_sequencing_missing(int m, int x, const MissingOptions& opt = {}) {
  if (m < 5) throw OutOfScope("s_sequencing_missing: m must be at least 5 (D_6 and D_8 are not sequenceable)");
  const FiniteGroup g = FiniteGroup::dihedral(m);
  if (x <= 0 || x >= g.order()) throw InvalidParameter("s_sequencing_missing: x must be a non-identity element");
  std::vector<std::string> trace;

  // (i) even m: drop x from a rotational sequencing.
  if (m % 2 == 0) {
    const auto rs = find_rotational_sequencing(g);
    if (rs.status == SearchStatus::Found) {
      Certificate c;
      c.construction = "rotational-drop";
      c.m = m;
      c.excluded = x;
      if (g.order() > kExhaustiveCap) {
        c.base = "rotational-pattern";
      } else {
        c.base = "rotational-search";
        c.witness = rs.sequence->elements;
      }
      MissingResult r;
      r.sequence = replay(c);
      r.status = MissingStatus::Resolved;
      r.certificate = std::move(c);
      trace.push_back("even m: rotational sequencing with x dropped");
      r.trace = trace;
      return r;
    }
    trace.push_back("even m: no rotational sequencing found");
  }

  if (m % 2 == 1) {
    // (ii) reflections: every reflection is equivalent under automorphisms.
    if (g.coset_of(x) == Coset::Reflection) {
      auto d = sequencing_with_reflection_start(m);
      if (auto r = detail::finish_prefix(g, d.certificate, x, trace)) return *r;
      trace.push_back("reflection start could not be mapped to x");
    } else {
      // (iii) rotations: find a sequencing whose first element has x's order.
      const int o = g.element_order(x);
      auto order_of = [&](long long e) { return g.element_order(g.rotation(e)); };
      auto attempt = [&](IsbellVariant v, int l, const Perm& a, std::vector<std::string> deriv,
                         const std::string& route) -> std::optional<MissingResult> {
        Certificate c;
        c.construction = to_string(v);
        c.m = m;
        c.l = l;
        c.perm = a;
        c.derivation = std::move(deriv);
        c.route = route;
        const auto full = detail::replay_base(g, c, c.construction);
        if (g.element_order(full[0]) != o) return std::nullopt;
        return detail::finish_prefix(g, c, x, trace);
      };
      // Forward and reversed sequencings of one construction.
      auto both = [&](IsbellVariant v, int l, const Perm& a, const std::string& route) -> std::optional<MissingResult> {
        if (auto r = attempt(v, l, a, {}, route)) return r;
        return attempt(v, l, a, {"reverse"}, route + ", reversed");
      };
      const std::vector<int> diffs_for_order = [&] {
        std::vector<int> ds;
        for (int d = 1; d <= (m - 1) / 2; ++d)
          if (order_of(d) == o) ds.push_back(d);
        return ds;
      }();

      if (m % 4 == 1) {
        const int l = (m - 1) / 4;
        if (auto r = both(IsbellVariant::First, l, walecki(2 * l), "Walecki input")) return *r;
        // Twizzler inputs: first difference 2l-p+1, final element l-1 or l.
        for (int r = 1; r <= 20 && r < 2 * l; ++r) {
          const int rest = 2 * l - r;
          for (int p = 2; p <= 2 * r && p <= rest; ++p) {
            if (rest % p != 0 || order_of(2 * l - p + 1) != o) continue;
            const int q = rest / p;
            auto t = twizzler_search(2 * l, p, q, r, std::vector<int>{l - 1, l});
            if (!t) continue;
            if (t->back() != l) *t = complement(*t);
            const std::string route = "twizzler p=" + std::to_string(p) + " q=" + std::to_string(q) +
                                      " r=" + std::to_string(r);
            if (auto res = attempt(IsbellVariant::First, l, *t, {}, route)) return *res;
          }
        }
        if (l % 2 == 1 && l >= 3) {
          if (auto r = both(IsbellVariant::Second4l1, l, isbell_graceful_odd_l(l, 2 * l), "odd-l arrangement"))
            return *r;
          for (const auto& [name, base] : centred_bases(false, 2 * l - 1)) {
            int attempts = 64;
            auto accept = [&](const Perm& p) {
              return order_of(p[1] - p[0]) == o || order_of(p.back() - p[p.size() - 2]) == o;
            };
            if (auto chain = detail::insertion_chain(base, 2 * l, accept, attempts))
              if (auto r = both(IsbellVariant::Second4l1, l, *chain, "insertion chain from " + name)) return *r;
          }
        }
        if (l % 2 == 0 && l >= 4) {
          if (auto a = third_4l1_input(l, std::nullopt, opt.graceful_budget * 10))
            if (auto r = both(IsbellVariant::Third4l1, l, *a, "searched cracked input")) return *r;
        }
        // Graceful inputs with a prescribed first difference.
        for (int d : diffs_for_order) {
          if (d >= 2 * l) break;
          GracefulConstraints c;
          c.last_element = l;
          c.first_abs_diff = d;
          if (auto a = search_graceful(2 * l, c, opt.graceful_budget).perm)
            if (auto r = attempt(IsbellVariant::First, l, *a, {}, "searched input, first difference " + std::to_string(d)))
              return *r;
          if (l % 2 == 0 && l >= 4 && d < 2 * l - 2) {
            if (auto a = third_4l1_input(l, d, opt.graceful_budget))
              if (auto r = attempt(IsbellVariant::Third4l1, l, *a, {}, "searched cracked input, first difference " +
                                                                         std::to_string(d)))
                return *r;
          }
        }
      } else {
        const int l = (m - 3) / 4;
        if (l % 2 == 1) {
          if (auto r = both(IsbellVariant::Second4l3, l, isbell_graceful_odd_l(l, 2 * l + 1), "odd-l arrangement"))
            return *r;
          for (const auto& [name, base] : centred_bases(true, 2 * l)) {
            int attempts = 64;
            auto accept = [&](const Perm& p) {
              return order_of(p[1] - p[0]) == o || order_of(p.back() - p[p.size() - 2]) == o;
            };
            const bool useful = order_of(base[1] - base[0]) == o || order_of(base.back() - base[base.size() - 2]) == o;
            if (!useful) continue;
            if (auto chain = detail::insertion_chain(base, 2 * l + 1, accept, attempts))
              if (auto r = both(IsbellVariant::Second4l3, l, *chain, "insertion chain from " + name)) return *r;
          }
          for (int d : diffs_for_order) {
            if (d > 2 * l) break;
            GracefulConstraints c;
            c.first_element = l;
            c.last_element = l - 1;
            c.first_abs_diff = d;
            if (auto a = search_graceful(2 * l + 1, c, opt.graceful_budget).perm)
              if (auto r = attempt(IsbellVariant::Second4l3, l, *a, {},
                                   "searched input, first difference " + std::to_string(d)))
                return *r;
          }
        } else if (l >= 2) {
          if (auto r = both(IsbellVariant::Third4l3, l, cracked_isbell(l), "cracked arrangement")) return *r;
          if (l > 2)
            for (int d : {5, 6, 7}) {
              if (order_of(d) != o) continue;
              try {
                if (auto r = attempt(IsbellVariant::Third4l3, l, cracked_variant_start(l, d), {},
                                     "cracked variant start d=" + std::to_string(d)))
                  return *r;
              } catch (const DocumentedNonexistence&) {
              }
            }
          for (int d : diffs_for_order) {
            if (d > 2 * l - 2) break;
            GracefulConstraints c;
            c.first_element = l + 1;
            c.last_element = l;
            c.crack = l - 2;
            c.first_abs_diff = d;
            if (auto a = search_graceful(2 * l - 1, c, opt.graceful_budget).perm)
              if (auto r = attempt(IsbellVariant::Third4l3, l, *a, {},
                                   "searched cracked input, first difference " + std::to_string(d)))
                return *r;
          }
        }
      }
      trace.push_back("no construction gives a first element of order " + std::to_string(o));
    }
  }

  // (iv) direct search for small groups.
  if (g.order() <= opt.max_search_order) {
    std::vector<int> s;
    for (int a = 1; a < g.order(); ++a)
      if (a != x) s.push_back(a);
    SearchRequest req;
    req.group = &g;
    req.subset = s;
    req.node_budget = opt.search_budget;
    const auto found = find_s_sequencing(req);
    if (found.status == SearchStatus::Found) {
      Certificate c;
      c.construction = "search";
      c.m = m;
      c.excluded = x;
      c.witness = found.sequence->elements;
      MissingResult r;
      r.sequence = replay(c);
      r.status = MissingStatus::Resolved;
      r.certificate = std::move(c);
      trace.push_back("resolved via direct search");
      r.trace = trace;
      return r;
    }
    trace.push_back(std::string("direct search: ") + to_string(found.status));
  }

  // (v) seeded randomized restarts; reaches the order-3 rotations with
  // 3 | m, m = 3 mod 4, that no construction above covers.
  if (g.order() <= opt.max_random_order && opt.random_budget > 0) {
    std::vector<int> s;
    for (int a = 1; a < g.order(); ++a)
      if (a != x) s.push_back(a);
    const auto found = randomized_s_sequencing(g, s, 1000LL * g.order(), opt.random_budget);
    if (found.status == SearchStatus::Found) {
      Certificate c;
      c.construction = "search";
      c.m = m;
      c.excluded = x;
      c.witness = found.sequence->elements;
      c.route = "randomized restarts";
      MissingResult r;
      r.sequence = replay(c);
      r.status = MissingStatus::Resolved;
      r.certificate = std::move(c);
      trace.push_back("resolved via randomized restarts after " + std::to_string(found.nodes) + " nodes");
      r.trace = trace;
      return r;
    }
    trace.push_back("randomized restarts: no sequence within " + std::to_string(opt.random_budget) + " nodes");
  }

  MissingResult r;
  r.reason = "no route applies for m = " + std::to_string(m) + ", x = " + g.label(x);
  r.trace = trace;
  return r;
}

}  // namespace dpseq
