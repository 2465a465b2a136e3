#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpe {

/// Exact arbitrary-precision rational number. Arithmetic results are kept in
/// canonical form (coprime numerator/denominator, positive denominator).
using Rat = mpq_class;

class BadRational : public std::runtime_error {
 public:
  explicit BadRational(const std::string& what) : std::runtime_error(what) {}
};

/// Parse "p/q" or "p" (optionally signed). Decimal notation is rejected.
inline Rat rat_from_string(const std::string& text) {
  if (text.empty()) throw BadRational("empty rational literal");
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw BadRational("malformed rational literal '" + text + "'");
  if (q.get_den() == 0)
    throw BadRational("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

/// p/q in canonical form (mpq_class(p, q) alone does not canonicalize).
inline Rat make_rat(long p, long q) {
  if (q == 0) throw BadRational("zero denominator");
  Rat r(p, q);
  r.canonicalize();
  return r;
}

inline int sign_of(const Rat& q) { return sgn(q); }

inline Rat rat_pow(const Rat& base, unsigned long exp) {
  Rat out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  out.canonicalize();
  return out;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

/// Nearest exact rational for a finite double (dyadic, no rounding).
inline Rat rat_from_double(double x) { return mpq_class(x); }

}  // namespace qpe
