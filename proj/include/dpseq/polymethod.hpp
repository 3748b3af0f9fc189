#pragma once

// The polynomial pi_{r,s} whose nonvanishing at (x_1..x_r, y_1..y_s) over Z_m
// certifies an S-sequencing of D_{2m} of a fixed shape, plus exact monomial
// coefficient extraction by exponent-capped expansion.
//
// Variables are numbered x_1..x_r as 0..r-1 and y_1..y_s as r..r+s-1.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dpseq/error.hpp"

namespace dpseq {

using BigInt = boost::multiprecision::cpp_int;

struct LinearForm {
  std::vector<int> coef;  // one entry per variable

  bool is_zero() const {
    return std::all_of(coef.begin(), coef.end(), [](int c) { return c == 0; });
  }
  LinearForm operator+(const LinearForm& o) const {
    LinearForm out{coef};
    for (size_t i = 0; i < coef.size(); ++i) out.coef[i] += o.coef[i];
    return out;
  }
  LinearForm operator-(const LinearForm& o) const {
    LinearForm out{coef};
    for (size_t i = 0; i < coef.size(); ++i) out.coef[i] -= o.coef[i];
    return out;
  }
  bool operator==(const LinearForm&) const = default;
};

inline std::string variable_name(int r, int v) {
  return v < r ? "x" + std::to_string(v + 1) : "y" + std::to_string(v - r + 1);
}

inline std::string to_string(const LinearForm& f, int r) {
  std::string out;
  for (size_t v = 0; v < f.coef.size(); ++v) {
    int c = f.coef[v];
    if (c == 0) continue;
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (c != 1 && c != -1) out += std::to_string(c < 0 ? -c : c);
    out += variable_name(r, static_cast<int>(v));
  }
  return out.empty() ? "0" : out;
}

struct LinearFormProduct {
  int r = 0;
  int s = 0;
  bool s_odd = true;
  std::vector<LinearForm> forms;

  int num_vars() const { return r + s; }
  int degree() const { return static_cast<int>(forms.size()); }

  BigInt evaluate(const std::vector<BigInt>& point) const {
    BigInt prod = 1;
    for (const auto& f : forms) {
      BigInt sum = 0;
      for (size_t v = 0; v < f.coef.size(); ++v)
        if (f.coef[v] != 0) sum += f.coef[v] * point[v];
      prod *= sum;
    }
    return prod;
  }
};

inline std::string to_string(const LinearFormProduct& pi) {
  std::string out;
  for (const auto& f : pi.forms) out += "(" + to_string(f, pi.r) + ")";
  return out;
}

/// Builds pi_{r,s}. Factor order: x pairs, y pairs, z pairs, the extra
/// (z_{p+q+1} - z_{p+q}) factor when s is even, t pairs.
inline LinearFormProduct build_pi(int r, int s) {
  if (s == 0) throw OutOfScope("s = 0 reduces to the cyclic group C_m");
  if (r == 0)
    throw OutOfScope("r = 0: every S inside the reflection coset is handled by ordering exponents descending");
  if (r < 0 || s < 0) throw InvalidParameter("build_pi: r and s must be positive");
  const int n = r + s;
  const int p = r / 2, delta = r % 2;
  const bool odd = s % 2 == 1;
  const int q = odd ? (s - 1) / 2 : (s - 2) / 2;
  auto var = [&](int v) {
    LinearForm f{std::vector<int>(n, 0)};
    f.coef[v] = 1;
    return f;
  };
  auto x = [&](int i) { return var(i - 1); };
  auto y = [&](int j) { return var(r + j - 1); };
  LinearForm zero{std::vector<int>(n, 0)};

  // z_0..z_{p+q}, plus z_{p+q+1} in the even case
  std::vector<LinearForm> z(p + q + 2, zero);
  for (int i = 1; i <= p; ++i) z[i] = z[i - 1] + x(i);
  for (int i = p + 1; i <= p + q; ++i) {
    int k = 2 * (i - p);
    z[i] = z[i - 1] + y(k - 1) - y(k);
  }
  const int tmax = p + q + 1 + delta;
  std::vector<LinearForm> t(tmax + 1, zero);
  for (int i = 1; i <= q + 1; ++i) {
    LinearForm acc = z[p];
    for (int k = 1; k <= 2 * i - 1; ++k) acc = k % 2 ? acc + y(k) : acc - y(k);
    t[i] = acc;
  }
  for (int i = q + 2; i <= tmax; ++i) t[i] = t[i - 1] - x(i - q + p - 1);
  const int zmax = odd ? p + q : p + q + 1;
  if (!odd) z[p + q + 1] = t[tmax] - y(2 * q + 2);

  LinearFormProduct out{r, s, odd, {}};
  for (int j = 1; j <= r; ++j)
    for (int i = 1; i < j; ++i) out.forms.push_back(x(j) - x(i));
  for (int j = 1; j <= s; ++j)
    for (int i = 1; i < j; ++i) out.forms.push_back(y(j) - y(i));
  for (int j = 0; j <= zmax; ++j)
    for (int i = 0; i + 1 < j; ++i) out.forms.push_back(z[j] - z[i]);
  if (!odd) out.forms.push_back(z[p + q + 1] - z[p + q]);
  for (int j = 1; j <= tmax; ++j)
    for (int i = 1; i + 1 < j; ++i) out.forms.push_back(t[j] - t[i]);
  for (const auto& f : out.forms)
    if (f.is_zero()) throw InternalInconsistency("build_pi produced a zero factor");
  return out;
}

struct MonomialTarget {
  std::vector<int> exps;

  int degree() const {
    int d = 0;
    for (int e : exps) d += e;
    return d;
  }
  bool operator==(const MonomialTarget&) const = default;
  auto operator<=>(const MonomialTarget&) const = default;
};

inline bool is_admissible(const MonomialTarget& t, int r, int s) {
  if (static_cast<int>(t.exps.size()) != r + s) return false;
  for (int v = 0; v < r + s; ++v)
    if (t.exps[v] < 0 || t.exps[v] >= (v < r ? r : s)) return false;
  return true;
}

/// Space-separated, e.g. "x1^2 x2 y1". Zero exponents are omitted.
inline std::string to_string(const MonomialTarget& t, int r) {
  std::string out;
  for (size_t v = 0; v < t.exps.size(); ++v) {
    if (t.exps[v] == 0) continue;
    if (!out.empty()) out += ' ';
    out += variable_name(r, static_cast<int>(v));
    if (t.exps[v] > 1) out += "^" + std::to_string(t.exps[v]);
  }
  return out.empty() ? "1" : out;
}

/// Accepts "x1^2 x2 y1", "x_1^2x_2y_1" and "x1^2*x2*y1".
inline MonomialTarget parse_monomial(std::string_view text, int r, int s) {
  MonomialTarget t{std::vector<int>(r + s, 0)};
  size_t i = 0;
  auto number = [&]() {
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw InvalidParameter("monomial: expected a number in '" + std::string(text) + "'");
    int v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > 1000000) throw InvalidParameter("monomial: number too large");
      ++i;
    }
    return v;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') { ++i; continue; }
    if (c != 'x' && c != 'y')
      throw InvalidParameter("monomial: unexpected character '" + std::string(1, c) + "'");
    ++i;
    if (i < text.size() && text[i] == '_') ++i;
    int idx = number();
    int limit = c == 'x' ? r : s;
    if (idx < 1 || idx > limit)
      throw InvalidParameter("monomial: variable " + std::string(1, c) + std::to_string(idx) + " out of range");
    int e = 1;
    if (i < text.size() && text[i] == '^') { ++i; e = number(); }
    t.exps[(c == 'x' ? 0 : r) + idx - 1] += e;
  }
  return t;
}

/// Sparse polynomial over exponent vectors bounded by per-variable caps.
class SparsePoly {
 public:
  explicit SparsePoly(std::vector<int> caps) : caps_(std::move(caps)), stride_(caps_.size()) {
    std::uint64_t st = 1;
    for (size_t v = 0; v < caps_.size(); ++v) {
      if (caps_[v] < 0) throw InvalidParameter("SparsePoly: negative cap");
      stride_[v] = st;
      if (st > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(caps_[v] + 1))
        throw InvalidParameter("SparsePoly: exponent space too large");
      st *= static_cast<std::uint64_t>(caps_[v] + 1);
    }
    terms_[0] = 1;
  }

  const std::vector<int>& caps() const { return caps_; }
  size_t size() const { return terms_.size(); }

  std::vector<int> decode(std::uint64_t key) const {
    std::vector<int> e(caps_.size());
    for (size_t v = 0; v < caps_.size(); ++v)
      e[v] = static_cast<int>((key / stride_[v]) % static_cast<std::uint64_t>(caps_[v] + 1));
    return e;
  }
  std::uint64_t encode(const std::vector<int>& e) const {
    std::uint64_t k = 0;
    for (size_t v = 0; v < caps_.size(); ++v) k += stride_[v] * static_cast<std::uint64_t>(e[v]);
    return k;
  }

  /// Multiplies by f, dropping terms over a cap. If `need` is given, also
  /// drops terms whose deficit on some variable exceeds need[v] (the number
  /// of later factors that mention v); only valid for an exact target.
  void multiply(const LinearForm& f, const std::vector<int>* need = nullptr) {
    std::unordered_map<std::uint64_t, BigInt> next;
    next.reserve(terms_.size() * 2);
    std::vector<int> e;
    for (const auto& [key, c] : terms_) {
      e = decode(key);
      for (size_t v = 0; v < caps_.size(); ++v) {
        if (f.coef[v] == 0 || e[v] >= caps_[v]) continue;
        if (need) {
          bool ok = true;
          for (size_t w = 0; w < caps_.size() && ok; ++w)
            ok = caps_[w] - e[w] - (w == v ? 1 : 0) <= (*need)[w];
          if (!ok) continue;
        }
        auto& slot = next[key + stride_[v]];
        if (f.coef[v] == 1) slot += c;
        else if (f.coef[v] == -1) slot -= c;
        else slot += c * f.coef[v];
      }
    }
    terms_.clear();
    for (auto& [k, c] : next)
      if (c != 0) terms_.emplace(k, std::move(c));
  }

  BigInt coefficient(const std::vector<int>& e) const {
    for (size_t v = 0; v < caps_.size(); ++v)
      if (e[v] < 0 || e[v] > caps_[v]) return 0;
    auto it = terms_.find(encode(e));
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  BigInt evaluate(const std::vector<BigInt>& point) const {
    BigInt sum = 0;
    for (const auto& [key, c] : terms_) {
      auto e = decode(key);
      BigInt term = c;
      for (size_t v = 0; v < e.size(); ++v)
        for (int k = 0; k < e[v]; ++k) term *= point[v];
      sum += term;
    }
    return sum;
  }

  /// Terms sorted lexicographically by exponent vector.
  std::vector<std::pair<std::vector<int>, BigInt>> sorted_terms() const {
    std::vector<std::pair<std::vector<int>, BigInt>> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_) out.emplace_back(decode(k), c);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

 private:
  std::vector<int> caps_;
  std::vector<std::uint64_t> stride_;
  std::unordered_map<std::uint64_t, BigInt> terms_;
};

using ExpansionObserver = std::function<void(size_t forms_done, const SparsePoly&)>;

/// Expands pi keeping only exponents within caps.
inline SparsePoly expand_capped(const LinearFormProduct& pi, const std::vector<int>& caps,
                                const ExpansionObserver& observer = {}) {
  if (static_cast<int>(caps.size()) != pi.num_vars())
    throw InvalidParameter("expand_capped: caps size mismatch");
  SparsePoly poly(caps);
  for (size_t i = 0; i < pi.forms.size(); ++i) {
    poly.multiply(pi.forms[i]);
    if (observer) observer(i + 1, poly);
  }
  return poly;
}

/// Full expansion; caps equal the degree.
inline SparsePoly expand_full(const LinearFormProduct& pi) {
  return expand_capped(pi, std::vector<int>(pi.num_vars(), pi.degree()));
}

inline BigInt coefficient_of(const LinearFormProduct& pi, const MonomialTarget& target) {
  const int n = pi.num_vars();
  if (static_cast<int>(target.exps.size()) != n)
    throw InvalidParameter("coefficient_of: target has wrong number of variables");
  for (int e : target.exps)
    if (e < 0) throw InvalidParameter("coefficient_of: negative exponent");
  if (target.degree() != pi.degree()) return 0;  // pi is homogeneous
  // need[i][v]: factors at index >= i that mention v
  std::vector<std::vector<int>> need(pi.forms.size() + 1, std::vector<int>(n, 0));
  for (size_t i = pi.forms.size(); i-- > 0;)
    for (int v = 0; v < n; ++v) need[i][v] = need[i + 1][v] + (pi.forms[i].coef[v] != 0 ? 1 : 0);
  for (int v = 0; v < n; ++v)
    if (target.exps[v] > need[0][v]) return 0;
  SparsePoly poly(target.exps);
  for (size_t i = 0; i < pi.forms.size(); ++i) poly.multiply(pi.forms[i], &need[i + 1]);
  return poly.coefficient(target.exps);
}

/// Naive oracle: term-by-term expansion with no caps or pruning.
inline std::map<std::vector<int>, BigInt> expand_naive(const LinearFormProduct& pi) {
  std::map<std::vector<int>, BigInt> poly;
  poly[std::vector<int>(pi.num_vars(), 0)] = 1;
  for (const auto& f : pi.forms) {
    std::map<std::vector<int>, BigInt> next;
    for (const auto& [e, c] : poly)
      for (size_t v = 0; v < f.coef.size(); ++v) {
        if (f.coef[v] == 0) continue;
        auto e2 = e;
        ++e2[v];
        next[e2] += c * f.coef[v];
      }
    poly.clear();
    for (auto& [e, c] : next)
      if (c != 0) poly.emplace(e, c);
  }
  return poly;
}

/// Prime factors of |n| in increasing order; empty for 0 and +-1.
inline std::vector<BigInt> prime_factors(BigInt n) {
  std::vector<BigInt> out;
  if (n < 0) n = -n;
  if (n < 2) return out;
  for (BigInt d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::string factor_string(const BigInt& n) {
  auto f = prime_factors(n);
  if (f.empty()) return "-";
  std::string out;
  for (size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i].str();
  return out;
}

inline bool is_prime(long long m) {
  if (m < 2) return false;
  for (long long d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

inline bool nonvanishing_applicable(long long m, int r, int s, const MonomialTarget& target) {
  if (m < 3 || m % 2 == 0 || !is_prime(m)) throw InvalidParameter("nonvanishing_applicable: m must be an odd prime");
  auto pi = build_pi(r, s);
  if (!is_admissible(target, r, s) || target.degree() != pi.degree())
    throw InvalidParameter("nonvanishing_applicable: target monomial is not admissible for (r, s)");
  return coefficient_of(pi, target) % m != 0;
}

/// First admissible full-degree monomial (lexicographic on exponent vectors)
/// whose coefficient is nonzero with every prime factor <= bound.
inline std::optional<std::pair<MonomialTarget, BigInt>> find_admissible_monomial(
    const LinearFormProduct& pi, int small_prime_bound) {
  std::vector<int> caps(pi.num_vars());
  for (int v = 0; v < pi.num_vars(); ++v) caps[v] = (v < pi.r ? pi.r : pi.s) - 1;
  auto poly = expand_capped(pi, caps);
  for (auto& [e, c] : poly.sorted_terms()) {
    auto f = prime_factors(c);
    if (f.empty() || f.back() <= small_prime_bound) return std::make_pair(MonomialTarget{e}, c);
  }
  return std::nullopt;
}

struct PublishedRow {
  int k, r, degree;
  const char* monomial;
  long long coefficient;
  const char* factors;
};

inline const std::vector<PublishedRow>& published_rows() {
  static const std::vector<PublishedRow> rows = {
      {5, 1, 9, "y_1^3y_3^3y_4^3", 4, "2"},
      {5, 2, 6, "x_2y_1y_2^2y_3^2", -3, "3"},
      {5, 3, 7, "x_1^2x_2x_3^2y_1y_2", 6, "2,3"},
      {5, 4, 8, "x_2^3x_3^2x_4^3", 1, "-"},
      {6, 1, 14, "y_2^2y_3^4y_4^4y_5^4", -4, "2"},
      {6, 2, 12, "x_2y_1^3y_2^2y_3^3y_4^3", 16, "2"},
      {6, 3, 10, "x_1^2x_3^2y_1^2y_2^2y_3^2", -3, "3"},
      {6, 4, 12, "x_1^3x_2^3x_3^2x_4^3y_2", -4, "2"},
      {6, 5, 14, "x_1^2x_2^4x_4^4x_5^4", -2, "2"},
      {7, 1, 22, "y_2^5y_3^5y_4^5y_5^5y_6^2", -16, "2"},
      {7, 2, 17, "x_2y_2^4y_3^4y_4^4y_5^4", -4, "2"},
      {7, 3, 16, "x_1^2x_3^2y_1^3y_2^3y_3^3y_4^3", 32, "2"},
      {7, 4, 16, "x_1^3x_2^3x_3^3x_4^3y_2y_3^2", 2, "2"},
      {7, 5, 18, "x_1^4x_2^4x_4^4x_5^4y_1y_2", 12, "2,3"},
      {7, 6, 21, "x_2^5x_3^5x_4x_5^5x_6^5", -2, "2"},
      {8, 1, 30, "y_2y_3^6y_4^5y_5^6y_6^6y_7^6", -64, "2"},
      {8, 2, 26, "x_2y_2^5y_3^5y_4^5y_5^5y_6^5", -72, "2,3"},
      {8, 3, 22, "x_1^2x_2^2x_3^2y_1^4y_3^4y_4^4y_5^4", -1, "-"},
      {8, 4, 23, "x_1^2x_2^2x_3^3x_4^3y_1^3y_2^3y_3^3y_4^3", -48, "2,3"},
      {8, 5, 24, "x_1^4x_2^4x_3^3x_4^4x_5^4y_2y_3^2", -3, "3"},
      {8, 6, 26, "x_1^4x_2^5x_3^5x_4x_5^5x_6^5y_2", 48, "2,3"},
      {8, 7, 30, "x_2^6x_3x_4^5x_5^6x_6^6x_7^6", 1, "-"},
      {9, 1, 41, "y_2y_3^7y_4^7y_5^7y_6^7y_7^6y_8^6", 720, "2,3,5"},
      {9, 2, 34, "x_2y_2^6y_3^6y_4^6y_5^6y_6^5y_7^4", -512, "2"},
      {9, 3, 31, "x_1x_2^2x_3^2y_1^5y_2^5y_3^5y_4y_5^5y_6^5", -384, "2,3"},
      {9, 4, 28, "x_1^3x_2^3x_3^3x_4^3y_1^4y_2y_3^4y_4^3y_5^4", 12, "2,3"},
      {9, 5, 29, "x_1^3x_2^4x_3^3x_4^4x_5^4y_1^3y_2^3y_3^3y_4^2", 8, "2"},
      {9, 6, 30, "x_1x_2^5x_3^5x_4^5x_5^5x_6^5y_1^2y_3^2", -16, "2"},
      {9, 7, 35, "x_1^5x_2^6x_3^6x_5^5x_6^6x_7^6y_2", 64, "2"},
      {9, 8, 40, "x_2^7x_3x_4^7x_5^4x_6^7x_7^7x_8^7", -3, "3"},
  };
  return rows;
}

struct TableRow {
  int r = 0;
  int degree = 0;
  MonomialTarget monomial;
  BigInt coefficient;
  std::string factors;
};

inline std::vector<TableRow> reproduce_table(int k) {
  if (k < 5 || k > 9) throw InvalidParameter("reproduce_table: k must be in [5, 9]");
  std::vector<TableRow> out;
  for (const auto& row : published_rows()) {
    if (row.k != k) continue;
    auto pi = build_pi(row.r, k - row.r);
    TableRow t;
    t.r = row.r;
    t.degree = pi.degree();
    t.monomial = parse_monomial(row.monomial, row.r, k - row.r);
    t.coefficient = coefficient_of(pi, t.monomial);
    t.factors = factor_string(t.coefficient);
    out.push_back(std::move(t));
  }
  return out;
}

inline std::string format_table(int k, const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "|S| = " << k << "\n";
  os << "r  deg  monomial                                      coefficient  prime factors\n";
  for (const auto& row : rows) {
    std::string mono = to_string(row.monomial, row.r);
    os << row.r << std::string(row.r < 10 ? 2 : 1, ' ') << row.degree
       << std::string(row.degree < 10 ? 4 : 3, ' ') << mono
       << std::string(mono.size() < 46 ? 46 - mono.size() : 1, ' ') << row.coefficient.str()
       << std::string(row.coefficient.str().size() < 13 ? 13 - row.coefficient.str().size() : 1, ' ')
       << row.factors << "\n";
  }
  return os.str();
}

}  // namespace dpseq
