#pragma once

// Finite groups with integer-indexed elements.
//
// Dihedral groups D_{2m} = <u, v : u^m = v^2 = e, vu = u^{m-1} v> use
// closed-form arithmetic, so m may be arbitrarily large.  Every other
// group is a dense Cayley table (order <= kMaxTableOrder).  In both cases
// element 0 is the identity.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dpseq/error.hpp"

namespace dpseq {

inline constexpr int kMaxTableOrder = 512;

enum class Coset { Rotation, Reflection };

/// u^rot v^refl in D_{2m}.
struct DihedralElement {
  int rot = 0;
  int refl = 0;

  friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
};

inline int mod(long long a, long long m) {
  long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

class FiniteGroup {
 public:
  enum class Kind { Dihedral, Table };

  /// D_{2m}; element index a is u^a, index m + a is u^a v.
  static FiniteGroup dihedral(int m) {
    if (m < 2) throw InvalidParameter("dihedral group needs m >= 2, got " + std::to_string(m));
    FiniteGroup g;
    g.kind_ = Kind::Dihedral;
    g.m_ = m;
    g.n_ = 2 * m;
    g.name_ = "D" + std::to_string(2 * m);
    return g;
  }

  /// Validates `table` (row-major, n*n) and freezes it.  Throws
  /// IngestionError naming the first violated group axiom.
  static FiniteGroup from_table(std::string name, int n, std::vector<int> table,
                                std::vector<std::string> labels = {}) {
    validate_table(n, table);
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
      throw IngestionError("label count " + std::to_string(labels.size()) + " != order " + std::to_string(n));
    FiniteGroup g;
    g.kind_ = Kind::Table;
    g.n_ = n;
    g.name_ = std::move(name);
    g.table_ = std::move(table);
    g.labels_ = std::move(labels);
    g.inverse_.resize(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (g.table_[a * n + b] == 0) g.inverse_[a] = b;
    g.elem_order_.resize(n);
    for (int a = 0; a < n; ++a) {
      int k = 1;
      for (int x = a; x != 0; x = g.table_[x * n + a]) ++k;
      g.elem_order_[a] = k;
    }
    for (int a = 0; a < static_cast<int>(g.labels_.size()); ++a) g.label_index_.emplace(g.labels_[a], a);
    return g;
  }

  /// Checks the Cayley-table axioms: entries in range, element 0 is the
  /// identity, Latin square, associativity.
  static void validate_table(int n, const std::vector<int>& table) {
    if (n < 1) throw IngestionError("group order must be positive, got " + std::to_string(n));
    if (n > kMaxTableOrder)
      throw IngestionError("table groups are capped at order " + std::to_string(kMaxTableOrder));
    if (static_cast<long long>(table.size()) != static_cast<long long>(n) * n)
      throw IngestionError("expected " + std::to_string(n * n) + " table entries, got " +
                           std::to_string(table.size()));
    auto at = [&](int a, int b) { return table[static_cast<std::size_t>(a) * n + b]; };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (at(a, b) < 0 || at(a, b) >= n)
          throw IngestionError("entry (" + std::to_string(a) + "," + std::to_string(b) + ") = " +
                               std::to_string(at(a, b)) + " out of range");
    for (int a = 0; a < n; ++a)
      if (at(0, a) != a || at(a, 0) != a)
        throw IngestionError("no identity: element 0 does not fix element " + std::to_string(a));
    std::vector<char> seen(n);
    for (int a = 0; a < n; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int b = 0; b < n; ++b) {
        if (seen[at(a, b)])
          throw IngestionError("not a Latin square: row " + std::to_string(a) + " repeats " +
                               std::to_string(at(a, b)));
        seen[at(a, b)] = 1;
      }
    }
    for (int b = 0; b < n; ++b) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int a = 0; a < n; ++a) {
        if (seen[at(a, b)])
          throw IngestionError("not a Latin square: column " + std::to_string(b) + " repeats " +
                               std::to_string(at(a, b)));
        seen[at(a, b)] = 1;
      }
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (at(at(a, b), c) != at(a, at(b, c)))
            throw IngestionError("not associative: (" + std::to_string(a) + "*" + std::to_string(b) + ")*" +
                                 std::to_string(c) + " != " + std::to_string(a) + "*(" + std::to_string(b) +
                                 "*" + std::to_string(c) + ")");
  }

  Kind kind() const { return kind_; }
  bool is_dihedral() const { return kind_ == Kind::Dihedral; }
  const std::string& name() const { return name_; }
  int order() const { return n_; }
  int identity() const { return 0; }

  /// Half-order m of a dihedral group.
  int dihedral_m() const {
    require_dihedral();
    return m_;
  }

  int mul(int a, int b) const {
    if (kind_ == Kind::Table) return table_[static_cast<std::size_t>(a) * n_ + b];
    // (a1, b1)(a2, b2) = (a1 + (-1)^b1 a2, b1 xor b2)
    const int ra = a % m_, fa = a / m_;
    const int rb = b % m_, fb = b / m_;
    int r = fa ? ra - rb : ra + rb;
    if (r < 0) r += m_;
    if (r >= m_) r -= m_;
    return r + ((fa ^ fb) ? m_ : 0);
  }

  int inv(int a) const {
    if (kind_ == Kind::Table) return inverse_[a];
    if (a >= m_) return a;
    return a == 0 ? 0 : m_ - a;
  }

  /// Least k >= 1 with a^k = e.
  int element_order(int a) const {
    if (kind_ == Kind::Table) return elem_order_[a];
    if (a >= m_) return 2;
    return m_ / std::gcd(a, m_);
  }

  int power(int a, long long k) const {
    int result = 0;
    int base = a;
    if (k < 0) {
      base = inv(a);
      k = -k;
    }
    while (k > 0) {
      if (k & 1) result = mul(result, base);
      base = mul(base, base);
      k >>= 1;
    }
    return result;
  }

  DihedralElement dihedral_element(int idx) const {
    require_dihedral();
    return {idx % m_, idx / m_};
  }

  int index_of(DihedralElement d) const {
    require_dihedral();
    if (d.rot < 0 || d.rot >= m_ || (d.refl != 0 && d.refl != 1))
      throw InvalidParameter("dihedral element out of range");
    return d.rot + d.refl * m_;
  }

  /// u^a (a reduced mod m).
  int rotation(long long a) const {
    require_dihedral();
    return mod(a, m_);
  }
  /// u^a v (a reduced mod m).
  int reflection(long long a) const {
    require_dihedral();
    return mod(a, m_) + m_;
  }

  std::string label(int idx) const {
    if (idx < 0 || idx >= n_) throw InvalidParameter("element index out of range");
    if (kind_ == Kind::Table) return labels_.empty() ? std::to_string(idx) : labels_[idx];
    const int a = idx % m_;
    const bool refl = idx >= m_;
    std::string s;
    if (a == 1)
      s = "u";
    else if (a > 1)
      s = "u^" + std::to_string(a);
    if (!refl) return s.empty() ? "e" : s;
    return s.empty() ? "v" : s + "*v";
  }

  /// Inverse of label().  Dihedral grammar: e | v | u[^a] | u[^a]*v with
  /// 0 <= a < m.  Table groups accept their labels or a plain index.
  int parse(std::string_view text) const {
    auto fail = [&] { return InvalidParameter("cannot parse element '" + std::string(text) + "' in " + name_); };
    if (kind_ == Kind::Table) {
      if (auto it = label_index_.find(std::string(text)); it != label_index_.end()) return it->second;
      int v = 0;
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || p != text.data() + text.size() || v < 0 || v >= n_) throw fail();
      return v;
    }
    if (text == "e") return 0;
    if (text == "v") return m_;
    std::string_view rest = text;
    if (rest.empty() || rest.front() != 'u') throw fail();
    rest.remove_prefix(1);
    long long a = 1;
    if (!rest.empty() && rest.front() == '^') {
      rest.remove_prefix(1);
      auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), a);
      if (ec != std::errc() || p == rest.data() || a < 0 || a >= m_) throw fail();
      rest.remove_prefix(static_cast<std::size_t>(p - rest.data()));
    }
    if (a >= m_) throw fail();
    bool refl = false;
    if (rest == "*v")
      refl = true;
    else if (!rest.empty())
      throw fail();
    return static_cast<int>(a) + (refl ? m_ : 0);
  }

  Coset coset_of(int idx) const {
    require_dihedral();
    return idx >= m_ ? Coset::Reflection : Coset::Rotation;
  }

  /// Dense Cayley table (generated on demand for dihedral groups).
  std::vector<int> cayley_table() const {
    if (kind_ == Kind::Table) return table_;
    if (static_cast<long long>(n_) * n_ > 64LL * 1024 * 1024) throw InvalidParameter("group too large for a dense table");
    std::vector<int> t(static_cast<std::size_t>(n_) * n_);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) t[static_cast<std::size_t>(a) * n_ + b] = mul(a, b);
    return t;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.kind_ == b.kind_ && a.n_ == b.n_ && a.m_ == b.m_ && a.table_ == b.table_;
  }

 private:
  void require_dihedral() const {
    if (kind_ != Kind::Dihedral) throw InvalidParameter(name_ + " is not a dihedral group");
  }

  Kind kind_ = Kind::Table;
  int n_ = 0;
  int m_ = 0;
  std::string name_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> elem_order_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> label_index_;
};

/// An element bound to its group, for call sites that want operand checks.
class Element {
 public:
  Element(const FiniteGroup& group, int index) : group_(&group), index_(index) {
    if (index < 0 || index >= group.order()) throw InvalidParameter("element index out of range");
  }
  const FiniteGroup& group() const { return *group_; }
  int index() const { return index_; }
  std::string label() const { return group_->label(index_); }
  int order() const { return group_->element_order(index_); }
  Element inv() const { return {*group_, group_->inv(index_)}; }

  friend Element operator*(const Element& a, const Element& b) {
    if (a.group_ != b.group_ && !(*a.group_ == *b.group_))
      throw InvalidParameter("cannot multiply elements of " + a.group_->name() + " and " + b.group_->name());
    return {*a.group_, a.group_->mul(a.index_, b.index_)};
  }
  friend bool operator==(const Element& a, const Element& b) {
    return a.index_ == b.index_ && (a.group_ == b.group_ || *a.group_ == *b.group_);
  }

 private:
  const FiniteGroup* group_;
  int index_;
};

inline Element mul(const Element& a, const Element& b) { return a * b; }
inline Element inv(const Element& a) { return a.inv(); }
inline int order(const Element& a) { return a.order(); }

/// Partition of the elements by element order.  For odd m this is exactly
/// the partition of D_{2m} into automorphism classes.
inline std::map<int, std::vector<int>> automorphism_order_classes(const FiniteGroup& g) {
  std::map<int, std::vector<int>> classes;
  for (int a = 0; a < g.order(); ++a) classes[g.element_order(a)].push_back(a);
  return classes;
}

/// The automorphism u -> u^k, v -> u^j v of D_{2m} (gcd(k, m) = 1).
struct DihedralAutomorphism {
  int k = 1;
  int j = 0;

  int apply(const FiniteGroup& g, int idx) const {
    const auto d = g.dihedral_element(idx);
    const long long m = g.dihedral_m();
    const long long rot = static_cast<long long>(k) * d.rot + (d.refl ? j : 0);
    return mod(rot, m) + d.refl * static_cast<int>(m);
  }
};

/// An automorphism of D_{2m} (m odd or even) sending `from` to `to`, if one
/// exists.  Rotations map to rotations of the same order; for m > 2
/// reflections only map to reflections.
inline std::optional<DihedralAutomorphism> dihedral_automorphism_between(const FiniteGroup& g, int from, int to) {
  const int m = g.dihedral_m();
  const auto a = g.dihedral_element(from);
  const auto b = g.dihedral_element(to);
  if (a.refl != b.refl) return std::nullopt;
  if (a.refl) return DihedralAutomorphism{1, mod(static_cast<long long>(b.rot) - a.rot, m)};
  if (g.element_order(from) != g.element_order(to)) return std::nullopt;
  for (int k = 1; k <= m; ++k) {
    if (std::gcd(k, m) != 1) continue;
    if (mod(static_cast<long long>(k) * a.rot, m) == b.rot) return DihedralAutomorphism{k, 0};
  }
  return std::nullopt;
}

namespace detail {

/// Closes `generators` under `op` and freezes the result into a table group.
/// Element 0 is `identity`; the remaining order is breadth-first.
template <typename T, typename Op, typename Label>
FiniteGroup closure_group(std::string name, const T& identity, const std::vector<T>& generators, Op op,
                          Label label) {
  std::vector<T> elems{identity};
  std::map<T, int> index{{identity, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& gen : generators) {
      T next = op(elems[i], gen);
      if (!index.count(next)) {
        if (static_cast<int>(elems.size()) >= kMaxTableOrder) throw InvalidParameter("closure exceeds table cap");
        index.emplace(next, static_cast<int>(elems.size()));
        elems.push_back(next);
      }
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = index.at(op(elems[a], elems[b]));
  std::vector<std::string> labels;
  for (const auto& e : elems) labels.push_back(label(e));
  return FiniteGroup::from_table(std::move(name), n, std::move(table), std::move(labels));
}

using Mat2 = std::array<int, 4>;  // row-major 2x2 over Z_3

inline Mat2 mat_mul_f3(const Mat2& a, const Mat2& b) {
  return {(a[0] * b[0] + a[1] * b[2]) % 3, (a[0] * b[1] + a[1] * b[3]) % 3, (a[2] * b[0] + a[3] * b[2]) % 3,
          (a[2] * b[1] + a[3] * b[3]) % 3};
}

inline std::string mat_label(const Mat2& a) {
  return "M" + std::to_string(a[0]) + std::to_string(a[1]) + std::to_string(a[2]) + std::to_string(a[3]);
}

using Quat = std::array<int, 4>;  // a + bi + cj + dk

inline Quat quat_mul(const Quat& p, const Quat& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3], p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1], p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

inline std::string quat_label(const Quat& q) {
  static const char* units[] = {"1", "i", "j", "k"};
  for (int i = 0; i < 4; ++i)
    if (q[i] != 0) return (q[i] < 0 ? "-" : "") + std::string(units[i]);
  return "0";
}

}  // namespace detail

/// Cyclic group Z_n as a table group, written multiplicatively.
inline FiniteGroup cyclic_group(int n) {
  if (n < 1 || n > kMaxTableOrder) throw InvalidParameter("cyclic group order out of range");
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  return FiniteGroup::from_table("Z" + std::to_string(n), n, std::move(table));
}

/// Quaternion group; elements are labelled 1, -1, i, -i, ...
inline FiniteGroup quaternion_group() {
  return detail::closure_group<detail::Quat>("Q8", {1, 0, 0, 0}, {{0, 1, 0, 0}, {0, 0, 1, 0}}, detail::quat_mul,
                                             detail::quat_label);
}

/// SL(2,3) generated by closure; elements are labelled Mabcd for the matrix
/// with rows (a b) and (c d).
inline FiniteGroup special_linear_2_3() {
  return detail::closure_group<detail::Mat2>("SL23", {1, 0, 0, 1}, {{1, 1, 0, 1}, {1, 0, 1, 1}},
                                             detail::mat_mul_f3, detail::mat_label);
}

/// Alternating group A4 on {0,1,2,3}; labels are one-line images, e.g. p1203.
inline FiniteGroup alternating_group_4() {
  using Perm = std::array<int, 4>;
  auto compose = [](const Perm& a, const Perm& b) {  // apply a then b
    Perm c{};
    for (int i = 0; i < 4; ++i) c[i] = b[a[i]];
    return c;
  };
  auto label = [](const Perm& p) {
    std::string s = "p";
    for (int x : p) s += std::to_string(x);
    return s;
  };
  return detail::closure_group<Perm>("A4", {0, 1, 2, 3}, {{1, 2, 0, 3}, {1, 0, 3, 2}}, compose, label);
}

struct GroupCatalogEntry {
  std::string name;
  std::string family;  // dihedral | cyclic | quaternion | sl23 | alternating
  int parameter = 0;   // m for dihedral, n for cyclic
};

/// Builds a group from a catalog name: D<2m>, Z<n>, Q8, SL23 (or SL(2,3)), A4.
inline FiniteGroup make_group(std::string_view name) {
  auto number_after = [&](std::size_t skip) {
    int v = 0;
    auto s = name.substr(skip);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
      throw InvalidParameter("unknown group '" + std::string(name) + "'");
    return v;
  };
  if (name == "Q8") return quaternion_group();
  if (name == "SL23" || name == "SL(2,3)") return special_linear_2_3();
  if (name == "A4") return alternating_group_4();
  if (name.size() > 1 && name[0] == 'D') {
    const int n = number_after(1);
    if (n % 2 != 0 || n < 4) throw InvalidParameter("dihedral group name needs an even order >= 4: " + std::string(name));
    return FiniteGroup::dihedral(n / 2);
  }
  if (name.size() > 1 && name[0] == 'Z') return cyclic_group(number_after(1));
  throw InvalidParameter("unknown group '" + std::string(name) + "'");
}

/// Every catalog group of order at most `max_order`.
inline std::vector<GroupCatalogEntry> catalog_entries(int max_order) {
  std::vector<GroupCatalogEntry> out;
  for (int n = 1; n <= max_order; ++n) out.push_back({"Z" + std::to_string(n), "cyclic", n});
  for (int m = 2; 2 * m <= max_order; ++m) out.push_back({"D" + std::to_string(2 * m), "dihedral", m});
  if (max_order >= 8) out.push_back({"Q8", "quaternion", 8});
  if (max_order >= 12) out.push_back({"A4", "alternating", 4});
  if (max_order >= 24) out.push_back({"SL23", "sl23", 24});
  return out;
}

/// Parses the group table file format: line 1 is n, then n rows of n
/// whitespace-separated indices.  Element 0 must be the identity.
inline FiniteGroup ingest_group_table(std::string_view text, std::string name = "table") {
  std::istringstream in{std::string(text)};
  long long n = 0;
  if (!(in >> n)) throw IngestionError("missing group order on line 1");
  if (n < 1 || n > kMaxTableOrder) throw IngestionError("group order " + std::to_string(n) + " out of range [1, 512]");
  std::vector<int> table;
  table.reserve(static_cast<std::size_t>(n * n));
  for (long long i = 0; i < n * n; ++i) {
    long long v = 0;
    if (!(in >> v))
      throw IngestionError("table truncated at row " + std::to_string(i / n) + ", column " + std::to_string(i % n));
    if (v < 0 || v >= n)
      throw IngestionError("entry (" + std::to_string(i / n) + "," + std::to_string(i % n) + ") = " +
                           std::to_string(v) + " out of range");
    table.push_back(static_cast<int>(v));
  }
  std::string extra;
  if (in >> extra) throw IngestionError("trailing data after table: '" + extra + "'");
  return FiniteGroup::from_table(std::move(name), static_cast<int>(n), std::move(table));
}

}  // namespace dpseq
