#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpe/rational.hpp"

// Exact arithmetic in the ordered field of rational functions in a formal
// infinitesimal eps. The order is the one induced by eps -> 0+: an element is
// positive iff its value is positive for all sufficiently small eps > 0,
// which is decided by the sign of the lowest-order coefficient.

namespace qpe {

class DivisionByZero : public std::runtime_error {
 public:
  explicit DivisionByZero(const std::string& what) : std::runtime_error(what) {}
};

class PoleAtZero : public std::runtime_error {
 public:
  explicit PoleAtZero(const std::string& what) : std::runtime_error(what) {}
};

class DegreeCapExceeded : public std::runtime_error {
 public:
  explicit DegreeCapExceeded(const std::string& what)
      : std::runtime_error(what) {}
};

/// Process-wide guard against runaway symbolic degrees. The solvers only ever
/// place eps powers on constraint right-hand sides, so degrees stay bounded
/// by the constraint degrees; blowing past the cap signals a bug upstream.
inline int& eps_degree_cap() {
  static int cap = 64;
  return cap;
}

inline void check_degree_cap(int degree) {
  if (degree > eps_degree_cap())
    throw DegreeCapExceeded("eps-polynomial degree " + std::to_string(degree) +
                            " exceeds cap " +
                            std::to_string(eps_degree_cap()));
}

/// Polynomial in eps with exact rational coefficients, stored as an ascending
/// coefficient list with no trailing zeros (the zero polynomial is empty).
class EpsPoly {
 public:
  EpsPoly() = default;
  EpsPoly(const Rat& constant) {  // NOLINT: implicit by design
    if (constant != 0) coeffs_.push_back(constant);
  }
  EpsPoly(int constant) : EpsPoly(Rat(constant)) {}

  static EpsPoly from_coeffs(std::vector<Rat> ascending) {
    EpsPoly p;
    p.coeffs_ = std::move(ascending);
    p.trim();
    return p;
  }

  /// coeff * eps^power
  static EpsPoly power(int power, const Rat& coeff = Rat(1)) {
    if (power < 0) throw std::invalid_argument("negative eps power");
    check_degree_cap(power);
    EpsPoly p;
    if (coeff != 0) {
      p.coeffs_.assign(static_cast<size_t>(power) + 1, Rat(0));
      p.coeffs_.back() = coeff;
    }
    return p;
  }

  /// eps^{k+1} + eps^{k+2} + ... + eps^{k+m-1} (empty for m = 1).
  static EpsPoly tail_sum(int k, int m) {
    EpsPoly p;
    if (m <= 1) return p;
    check_degree_cap(k + m - 1);
    p.coeffs_.assign(static_cast<size_t>(k + m), Rat(0));
    for (int i = k + 1; i <= k + m - 1; ++i) p.coeffs_[i] = 1;
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// Lowest power with a nonzero coefficient; -1 for the zero polynomial.
  int order() const {
    for (size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return static_cast<int>(i);
    return -1;
  }

  Rat coeff(int k) const {
    if (k < 0 || k > degree()) return Rat(0);
    return coeffs_[static_cast<size_t>(k)];
  }

  const std::vector<Rat>& coeffs() const { return coeffs_; }

  /// Sign as eps -> 0+: the sign of the lowest-order nonzero coefficient.
  int sign() const {
    int ord = order();
    return ord < 0 ? 0 : sign_of(coeffs_[static_cast<size_t>(ord)]);
  }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  EpsPoly& operator+=(const EpsPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  EpsPoly& operator-=(const EpsPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rat(0));
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  EpsPoly& operator*=(const Rat& s) {
    if (s == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  EpsPoly& operator/=(const Rat& s) {
    if (s == 0) throw DivisionByZero("eps-polynomial divided by zero scalar");
    for (auto& c : coeffs_) c /= s;
    return *this;
  }

  friend EpsPoly operator+(EpsPoly a, const EpsPoly& b) { return a += b; }
  friend EpsPoly operator-(EpsPoly a, const EpsPoly& b) { return a -= b; }
  friend EpsPoly operator-(EpsPoly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
    if (a.is_zero() || b.is_zero()) return EpsPoly();
    check_degree_cap(a.degree() + b.degree());
    std::vector<Rat> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (size_t j = 0; j < b.coeffs_.size(); ++j)
        out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return from_coeffs(std::move(out));
  }
  friend EpsPoly operator*(EpsPoly a, const Rat& s) { return a *= s; }
  friend EpsPoly operator*(const Rat& s, EpsPoly a) { return a *= s; }
  friend EpsPoly operator/(EpsPoly a, const Rat& s) { return a /= s; }

  friend bool operator==(const EpsPoly& a, const EpsPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Order as eps -> 0+.
  friend std::strong_ordering operator<=>(const EpsPoly& a, const EpsPoly& b) {
    int s = (b - a).sign();
    if (s > 0) return std::strong_ordering::less;
    if (s < 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Division with remainder; divisor must be nonzero.
  static std::pair<EpsPoly, EpsPoly> divmod(const EpsPoly& num,
                                            const EpsPoly& den) {
    if (den.is_zero()) throw DivisionByZero("polynomial division by zero");
    EpsPoly rem = num;
    std::vector<Rat> quot;
    int dd = den.degree();
    const Rat& lead = den.coeffs_[static_cast<size_t>(dd)];
    while (!rem.is_zero() && rem.degree() >= dd) {
      int shift = rem.degree() - dd;
      Rat factor = rem.coeffs_.back() / lead;
      if (static_cast<int>(quot.size()) < shift + 1)
        quot.resize(static_cast<size_t>(shift) + 1, Rat(0));
      quot[static_cast<size_t>(shift)] += factor;
      for (int i = 0; i <= dd; ++i)
        rem.coeffs_[static_cast<size_t>(shift + i)] -=
            factor * den.coeffs_[static_cast<size_t>(i)];
      rem.trim();
    }
    return {from_coeffs(std::move(quot)), rem};
  }

  /// Monic gcd (Euclid); gcd(0, 0) = 0.
  static EpsPoly gcd(EpsPoly a, EpsPoly b) {
    while (!b.is_zero()) {
      EpsPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.is_zero()) a /= a.coeffs_.back();
    return a;
  }

  /// Exact quotient; throws if the division has a remainder.
  static EpsPoly divexact(const EpsPoly& num, const EpsPoly& den) {
    auto [q, r] = divmod(num, den);
    if (!r.is_zero())
      throw std::logic_error("divexact called on a non-multiple");
    return q;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += to_string(coeffs_[i]);
      if (i == 1) out += "*e";
      if (i > 1) out += "*e^" + std::to_string(i);
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const EpsPoly& p) {
    return os << p.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rat> coeffs_;
};

/// Rational function in eps, kept in canonical form: coprime numerator and
/// denominator with the denominator's lowest-order nonzero coefficient
/// normalized to 1. Canonical form is unique, so value equality is
/// representation equality.
class EpsRat {
 public:
  EpsRat() = default;
  EpsRat(const Rat& constant) : num_(constant), den_(Rat(1)) {}  // NOLINT
  EpsRat(int constant) : EpsRat(Rat(constant)) {}
  EpsRat(const EpsPoly& p) : num_(p), den_(Rat(1)) {}  // NOLINT
  EpsRat(EpsPoly num, EpsPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("eps-rational with zero denominator");
    normalize();
  }

  const EpsPoly& num() const { return num_; }
  const EpsPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  /// Sign as eps -> 0+.
  int sign() const { return num_.sign() * den_.sign(); }

  EpsRat& operator+=(const EpsRat& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
  }
  EpsRat& operator-=(const EpsRat& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
  }
  EpsRat& operator*=(const EpsRat& o) {
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
  }
  EpsRat& operator/=(const EpsRat& o) {
    if (o.is_zero()) throw DivisionByZero("eps-rational division by zero");
    num_ = num_ * o.den_;
    den_ = den_ * o.num_;
    normalize();
    return *this;
  }

  friend EpsRat operator+(EpsRat a, const EpsRat& b) { return a += b; }
  friend EpsRat operator-(EpsRat a, const EpsRat& b) { return a -= b; }
  friend EpsRat operator*(EpsRat a, const EpsRat& b) { return a *= b; }
  friend EpsRat operator/(EpsRat a, const EpsRat& b) { return a /= b; }
  friend EpsRat operator-(EpsRat a) {
    a.num_ = -a.num_;
    return a;
  }

  friend bool operator==(const EpsRat& a, const EpsRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const EpsRat& a, const EpsRat& b) {
    int s = (b - a).sign();
    if (s > 0) return std::strong_ordering::less;
    if (s < 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Value at eps = 0 after canceling the common power of eps.
  Rat limit_at_zero() const {
    if (num_.is_zero()) return Rat(0);
    int strip = std::min(num_.order(), den_.order());
    Rat n = num_.coeff(strip);
    Rat d = den_.coeff(strip);
    if (d == 0) throw PoleAtZero("pole at eps = 0: " + str());
    return n / d;
  }

  /// Exact evaluation at a numeric eps.
  Rat eval_at(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d == 0)
      throw DivisionByZero("denominator vanishes at eps = " + to_string(x));
    return num_.eval(x) / d;
  }

  std::string str() const {
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const EpsRat& r) {
    return os << r.str();
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = EpsPoly(Rat(1));
      return;
    }
    EpsPoly g = EpsPoly::gcd(num_, den_);
    if (g.degree() > 0 || g.coeff(0) != 1) {
      num_ = EpsPoly::divexact(num_, g);
      den_ = EpsPoly::divexact(den_, g);
    }
    Rat low = den_.coeff(den_.order());
    if (low != 1) {
      num_ /= low;
      den_ /= low;
    }
  }

  EpsPoly num_;          // zero polynomial for the value 0
  EpsPoly den_{Rat(1)};  // nonzero, lowest-order coefficient 1
};

inline int compare(const EpsRat& a, const EpsRat& b) {
  int s = (a - b).sign();
  return s;
}

}  // namespace qpe
