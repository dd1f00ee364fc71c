#pragma once

// Formal Laurent monomials in named generators (unramified character values
// such as chi(p), sigma(p)), optionally scaled by a nonzero rational.

#include <cctype>
#include <map>
#include <sstream>
#include <string>

#include "paramod/errors.hpp"
#include "paramod/linalg.hpp"

namespace paramod {

class Monomial {
 public:
  Monomial() = default;

  static Monomial generator(const std::string& name, int exponent = 1) {
    Monomial m;
    m.set(name, exponent);
    return m;
  }

  int exponent(const std::string& name) const {
    auto it = exps_.find(name);
    return it == exps_.end() ? 0 : it->second;
  }

  void set(const std::string& name, int exponent) {
    if (name.empty()) throw InvalidInput("monomial generator name is empty");
    if (exponent == 0)
      exps_.erase(name);
    else
      exps_[name] = exponent;
  }

  bool is_one() const noexcept { return exps_.empty(); }
  const std::map<std::string, int>& exponents() const noexcept { return exps_; }

  Monomial inverse() const {
    Monomial out;
    for (const auto& [g, e] : exps_) out.exps_[g] = -e;
    return out;
  }

  Monomial pow(int n) const {
    Monomial out;
    if (n == 0) return out;
    for (const auto& [g, e] : exps_) out.exps_[g] = e * n;
    return out;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out = a;
    for (const auto& [g, e] : b.exps_) out.set(g, out.exponent(g) + e);
    return out;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  // "1", "chi", "chi^2*sigma^-1"
  std::string to_string() const {
    if (exps_.empty()) return "1";
    std::string s;
    for (const auto& [g, e] : exps_) {
      if (!s.empty()) s += '*';
      s += g;
      if (e != 1) s += '^' + std::to_string(e);
    }
    return s;
  }

 private:
  std::map<std::string, int> exps_;
};

// A nonzero rational times a monomial. Products of character values and the
// prime p stay in this form, so identities like (chi*sigma)^2 = chi^2*sigma^2
// are checked by plain equality.
struct Scalar {
  Rational coefficient{1};
  Monomial monomial;

  Scalar() = default;
  Scalar(Rational c, Monomial m = {}) : coefficient(std::move(c)), monomial(std::move(m)) {
    if (coefficient == 0) throw InvalidInput("character values must be nonzero");
  }

  static Scalar symbol(const std::string& name) { return Scalar(Rational(1), Monomial::generator(name)); }

  // Accepts "3", "-1/2", "a", "chi_p". Rationals win when the text parses as one.
  static Scalar parse(const std::string& text) {
    if (text.empty()) throw InvalidInput("empty character value");
    const bool numeric = std::isdigit(static_cast<unsigned char>(text[0])) || text[0] == '-' || text[0] == '+';
    if (numeric) {
      Rational r;
      try {
        r = Rational(text);
      } catch (const std::exception&) {
        throw InvalidInput("cannot parse character value '" + text + "'");
      }
      return Scalar(r);
    }
    for (char ch : text)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
        throw InvalidInput("invalid symbol name '" + text + "'");
    return symbol(text);
  }

  Scalar inverse() const { return Scalar(1 / coefficient, monomial.inverse()); }

  Scalar pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    Rational c = 1;
    for (int i = 0; i < n; ++i) c *= coefficient;
    return Scalar(c, monomial.pow(n));
  }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(a.coefficient * b.coefficient, a.monomial * b.monomial);
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.coefficient == b.coefficient && a.monomial == b.monomial;
  }

  bool is_one() const { return coefficient == 1 && monomial.is_one(); }

  std::string to_string() const {
    std::ostringstream os;
    if (monomial.is_one()) {
      os << coefficient;
      return os.str();
    }
    if (coefficient == -1)
      os << '-';
    else if (coefficient != 1)
      os << coefficient << '*';
    os << monomial.to_string();
    return os.str();
  }
};

}  // namespace paramod
