#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sigsym/error.hpp"

namespace sigsym {

/// Element of a finite field, encoded as sum(c_i * p^i) over its polynomial
/// coefficients. Meaningful only together with its Field.
struct Elem {
  std::uint16_t v = 0;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

inline constexpr std::size_t kMaxFieldOrder = 512;

namespace detail {

struct FieldTables {
  int p = 0;
  int k = 0;
  int q = 0;
  std::vector<int> modulus;  // k+1 coefficients, constant term first, monic
  std::vector<Elem> add;     // q*q
  std::vector<Elem> mul;     // q*q
  std::vector<Elem> neg;
  std::vector<Elem> inv;     // inv[0] unused
  std::vector<Elem> frob;    // x -> x^p
};

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using Poly = std::vector<int>;  // constant term first

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over GF(p).
inline Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

// A degree-k polynomial is reducible iff it has a monic factor of degree
// 1..k/2; search all of them.
inline bool is_irreducible(const Poly& modulus, int p) {
  const int k = static_cast<int>(modulus.size()) - 1;
  for (int d = 1; 2 * d <= k; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      Poly divisor(static_cast<std::size_t>(d) + 1, 0);
      int c = code;
      for (int i = 0; i < d; ++i) {
        divisor[static_cast<std::size_t>(i)] = c % p;
        c /= p;
      }
      divisor[static_cast<std::size_t>(d)] = 1;
      if (poly_mod(modulus, divisor, p).empty()) return false;
    }
  }
  return true;
}

inline std::shared_ptr<const FieldTables> build_tables(int p, int k, Poly modulus) {
  auto t = std::make_shared<FieldTables>();
  t->p = p;
  t->k = k;
  int q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  t->q = q;
  t->modulus = std::move(modulus);
  const auto uq = static_cast<std::size_t>(q);

  auto decode = [&](int code) {
    Poly c(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
      c[static_cast<std::size_t>(i)] = code % p;
      code /= p;
    }
    return c;
  };
  auto encode = [&](const Poly& c) {
    int code = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) code = code * p + c[static_cast<std::size_t>(i)];
    return Elem{static_cast<std::uint16_t>(code)};
  };

  std::vector<Poly> coeffs(uq);
  for (int x = 0; x < q; ++x) coeffs[static_cast<std::size_t>(x)] = decode(x);

  t->add.resize(uq * uq);
  t->mul.resize(uq * uq);
  for (std::size_t x = 0; x < uq; ++x) {
    for (std::size_t y = 0; y < uq; ++y) {
      Poly s(static_cast<std::size_t>(k));
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = (coeffs[x][i] + coeffs[y][i]) % p;
      t->add[x * uq + y] = encode(s);

      Poly prod(2 * static_cast<std::size_t>(k), 0);
      for (std::size_t i = 0; i < coeffs[x].size(); ++i)
        for (std::size_t j = 0; j < coeffs[y].size(); ++j)
          prod[i + j] = (prod[i + j] + coeffs[x][i] * coeffs[y][j]) % p;
      Poly r = poly_mod(prod, t->modulus, p);
      r.resize(static_cast<std::size_t>(k), 0);
      t->mul[x * uq + y] = encode(r);
    }
  }
  t->neg.resize(uq);
  t->inv.resize(uq);
  t->frob.resize(uq);
  for (std::size_t x = 0; x < uq; ++x) {
    for (std::size_t y = 0; y < uq; ++y) {
      if (t->add[x * uq + y].v == 0) t->neg[x] = Elem{static_cast<std::uint16_t>(y)};
      if (t->mul[x * uq + y].v == 1) t->inv[x] = Elem{static_cast<std::uint16_t>(y)};
    }
    Elem acc{1};
    for (int i = 0; i < p; ++i) acc = t->mul[acc.v * uq + x];
    t->frob[x] = acc;
  }
  return t;
}

}  // namespace detail

/// A finite field GF(p^k) given by a monic irreducible modulus over GF(p).
/// Cheap to copy; all copies share the same arithmetic tables.
class Field {
 public:
  /// Validated construction. `modulus` lists k+1 coefficients, constant
  /// term first, and must be monic.
  static Field make(int p, int k, std::vector<int> modulus) {
    if (!detail::is_prime(p)) fail(ErrorKind::NonPrimeCharacteristic, "characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) fail(ErrorKind::InvalidArgument, "extension degree must be at least 1");
    if (static_cast<int>(modulus.size()) != k + 1 || modulus.back() != 1)
      fail(ErrorKind::InvalidArgument, "modulus must be monic of degree " + std::to_string(k));
    for (int c : modulus)
      if (c < 0 || c >= p) fail(ErrorKind::InvalidArgument, "modulus coefficient out of range");
    long q = 1;
    for (int i = 0; i < k; ++i) {
      q *= p;
      if (q > static_cast<long>(kMaxFieldOrder)) fail(ErrorKind::FieldTooLarge, "field order exceeds 512");
    }
    if (!detail::is_irreducible(modulus, p)) fail(ErrorKind::ReducibleModulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
    return Field(detail::build_tables(p, k, std::move(modulus)));
  }

  /// GF(p^k) with the canonical modulus: the least monic irreducible
  /// polynomial under the element encoding (x^2+x+1 for GF(4), x^3+x+1 for
  /// GF(8), x^2+1 for GF(9)).
  static Field canonical(int p, int k) { return make(p, k, canonical_modulus(p, k)); }

  static Field prime(int p) { return make(p, 1, {0, 1}); }

  static std::vector<int> canonical_modulus(int p, int k) {
    if (!detail::is_prime(p)) fail(ErrorKind::NonPrimeCharacteristic, "characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) fail(ErrorKind::InvalidArgument, "extension degree must be at least 1");
    if (k == 1) return {0, 1};
    long count = 1;
    for (int i = 0; i < k; ++i) {
      count *= p;
      if (count > static_cast<long>(kMaxFieldOrder)) fail(ErrorKind::FieldTooLarge, "field order exceeds 512");
    }
    for (long code = 0; code < count; ++code) {
      std::vector<int> m(static_cast<std::size_t>(k) + 1, 0);
      long c = code;
      for (int i = 0; i < k; ++i) {
        m[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
        c /= p;
      }
      m[static_cast<std::size_t>(k)] = 1;
      if (detail::is_irreducible(m, p)) return m;
    }
    fail(ErrorKind::ReducibleModulus, "no irreducible polynomial found");
  }

  int characteristic() const { return t_->p; }
  int degree() const { return t_->k; }
  int order() const { return t_->q; }
  const std::vector<int>& modulus() const { return t_->modulus; }
  bool is_prime_field() const { return t_->k == 1; }
  bool is_gf4() const { return t_->p == 2 && t_->k == 2; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  bool contains(Elem x) const { return x.v < t_->q; }

  Elem add(Elem a, Elem b) const { return t_->add[idx(a, b)]; }
  Elem sub(Elem a, Elem b) const { return add(a, t_->neg[b.v]); }
  Elem neg(Elem a) const { return t_->neg[a.v]; }
  Elem mul(Elem a, Elem b) const { return t_->mul[idx(a, b)]; }
  Elem inv(Elem a) const {
    if (a.v == 0) fail(ErrorKind::InvalidArgument, "division by zero");
    return t_->inv[a.v];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem frobenius(Elem a) const { return t_->frob[a.v]; }

  /// a^e for any integer e (negative exponents require a != 0).
  Elem pow(Elem a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    Elem result = one();
    Elem base = a;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  /// Image of an integer under Z -> GF(p).
  Elem from_int(long n) const {
    const long p = t_->p;
    return Elem{static_cast<std::uint16_t>(((n % p) + p) % p)};
  }

  Elem from_coeffs(std::span<const int> c) const {
    if (static_cast<int>(c.size()) > t_->k) fail(ErrorKind::InvalidArgument, "too many coefficients");
    int code = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
      const int ci = c[static_cast<std::size_t>(i)];
      if (ci < 0 || ci >= t_->p) fail(ErrorKind::InvalidArgument, "coefficient out of range");
      code = code * t_->p + ci;
    }
    return Elem{static_cast<std::uint16_t>(code)};
  }

  std::vector<int> coeffs(Elem a) const {
    std::vector<int> c(static_cast<std::size_t>(t_->k));
    int code = a.v;
    for (auto& ci : c) {
      ci = code % t_->p;
      code /= t_->p;
    }
    return c;
  }

  /// All elements in canonical order (by encoding).
  std::vector<Elem> elements() const {
    std::vector<Elem> out(static_cast<std::size_t>(t_->q));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Elem{static_cast<std::uint16_t>(i)};
    return out;
  }

  std::vector<Elem> units() const {
    auto all = elements();
    all.erase(all.begin());
    return all;
  }

  /// Text form: integers for prime fields, `a`/`a2` for GF(4), otherwise
  /// `poly:c0,c1,...`.
  std::string format(Elem a) const {
    if (is_prime_field()) return std::to_string(a.v);
    if (is_gf4()) {
      static constexpr const char* names[] = {"0", "1", "a", "a2"};
      return names[a.v];
    }
    std::string s = "poly:";
    auto c = coeffs(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(c[i]);
    }
    return s;
  }

  Elem parse(std::string_view text) const {
    if (is_gf4()) {
      if (text == "a") return Elem{2};
      if (text == "a2" || text == "a^2") return Elem{3};
    }
    if (text.starts_with("poly:")) {
      std::vector<int> c;
      std::string_view rest = text.substr(5);
      while (!rest.empty()) {
        auto comma = rest.find(',');
        auto tok = rest.substr(0, comma);
        c.push_back(parse_int(tok, text));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      try {
        return from_coeffs(c);
      } catch (const Error&) {
        fail(ErrorKind::ParseError, "bad element '" + std::string(text) + "'");
      }
    }
    int n = parse_int(text, text);
    if (n < 0 || n >= t_->p) fail(ErrorKind::ParseError, "element '" + std::string(text) + "' out of range");
    return Elem{static_cast<std::uint16_t>(n)};
  }

  /// Same characteristic, degree and modulus.
  friend bool operator==(const Field& a, const Field& b) {
    return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->modulus == b.t_->modulus);
  }

  std::string describe() const {
    std::string s = "GF(" + std::to_string(t_->q) + ")";
    if (t_->k > 1) {
      s += " mod [";
      for (std::size_t i = 0; i < t_->modulus.size(); ++i) s += (i ? " " : "") + std::to_string(t_->modulus[i]);
      s += "]";
    }
    return s;
  }

 private:
  explicit Field(std::shared_ptr<const detail::FieldTables> t) : t_(std::move(t)) {}

  std::size_t idx(Elem a, Elem b) const {
    return static_cast<std::size_t>(a.v) * static_cast<std::size_t>(t_->q) + b.v;
  }

  static int parse_int(std::string_view tok, std::string_view whole) {
    int n = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
      fail(ErrorKind::ParseError, "bad element '" + std::string(whole) + "'");
    return n;
  }

  std::shared_ptr<const detail::FieldTables> t_;
};

inline void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) fail(ErrorKind::FieldMismatch, a.describe() + " vs " + b.describe());
}

/// Field element bundled with its field, with checked operators.
struct FieldElement {
  Field field;
  Elem value;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a.field, b.field);
    return {a.field, a.field.add(a.value, b.value)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_field(a.field, b.field);
    return {a.field, a.field.sub(a.value, b.value)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a.field, b.field);
    return {a.field, a.field.mul(a.value, b.value)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    require_same_field(a.field, b.field);
    return {a.field, a.field.div(a.value, b.value)};
  }
  FieldElement operator-() const { return {field, field.neg(value)}; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field == b.field && a.value == b.value;
  }
  std::string str() const { return field.format(value); }
};

/// An involution sigma of GF(p^k) whose normalization x -> sigma(x)/sigma(1)
/// is a field automorphism. Stored in normal form sigma(x) = s * x^(p^j).
class SesquiMorphism {
 public:
  static SesquiMorphism make(const Field& field, int frobenius_power, Elem unit) {
    if (frobenius_power < 0 || frobenius_power >= field.degree())
      fail(ErrorKind::InvalidArgument, "frobenius power out of range");
    if (!field.contains(unit) || unit == field.zero()) fail(ErrorKind::InvalidArgument, "sigma(1) must be a unit");
    SesquiMorphism s(field, frobenius_power, unit);
    for (Elem x : field.elements())
      if (s(s(x)) != x) fail(ErrorKind::NotInvolution, "sigma o sigma is not the identity");
    return s;
  }

  static SesquiMorphism identity(const Field& field) { return make(field, 0, field.one()); }

  const Field& field() const { return field_; }
  int frobenius_power() const { return j_; }
  /// sigma(1).
  Elem unit() const { return s_; }

  Elem operator()(Elem x) const { return table_[x.v]; }
  /// The automorphism x -> sigma(x)/sigma(1).
  Elem normalized(Elem x) const { return tilde_[x.v]; }

  FieldElement apply(const FieldElement& x) const {
    require_same_field(field_, x.field);
    return {field_, (*this)(x.value)};
  }

  bool is_identity() const { return j_ == 0 && s_ == field_.one(); }

  friend bool operator==(const SesquiMorphism& a, const SesquiMorphism& b) {
    return a.field_ == b.field_ && a.j_ == b.j_ && a.s_ == b.s_;
  }

  std::string describe() const {
    return "sigma(x) = " + field_.format(s_) + " * x^(" + std::to_string(field_.characteristic()) + "^" +
           std::to_string(j_) + ")";
  }

 private:
  SesquiMorphism(const Field& field, int j, Elem s) : field_(field), j_(j), s_(s) {
    const auto q = static_cast<std::size_t>(field.order());
    table_.resize(q);
    tilde_.resize(q);
    for (Elem x : field.elements()) {
      Elem y = x;
      for (int i = 0; i < j; ++i) y = field.frobenius(y);
      tilde_[x.v] = y;
      table_[x.v] = field.mul(s, y);
    }
  }

  Field field_;
  int j_;
  Elem s_;
  std::vector<Elem> table_;
  std::vector<Elem> tilde_;
};

/// Every sesqui-morphism of the field, ordered by (frobenius power, sigma(1)).
inline std::vector<SesquiMorphism> enumerate_sesqui(const Field& field) {
  std::vector<SesquiMorphism> out;
  for (int j = 0; j < field.degree(); ++j) {
    if ((2 * j) % field.degree() != 0) continue;
    for (Elem s : field.units()) {
      try {
        out.push_back(SesquiMorphism::make(field, j, s));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotInvolution) throw;
      }
    }
  }
  return out;
}

}  // namespace sigsym
