#ifndef RES1D_SIGNED_LOG_HPP
#define RES1D_SIGNED_LOG_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace res1d {

// Signed log-scale number: value = sign * exp(log_abs).
// sign in {-1, 0, +1}; for sign == 0 the log field is -inf by convention.
// Products and quotients are exact in this representation; additions go
// through log-sum-exp and are only valid when the operands' magnitudes sit
// within ~600 decades of each other (they always do here).
struct SignedLog {
  int sign = 0;
  double log_abs = -std::numeric_limits<double>::infinity();

  SignedLog() = default;
  SignedLog(int s, double l) : sign(s), log_abs(s == 0 ? -std::numeric_limits<double>::infinity() : l) {}

  static SignedLog from_double(double x) {
    if (x == 0.0) return SignedLog();
    return SignedLog(x > 0 ? 1 : -1, std::log(std::abs(x)));
  }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  bool is_zero() const { return sign == 0; }

  SignedLog operator*(const SignedLog& o) const {
    if (sign == 0 || o.sign == 0) return SignedLog();
    return SignedLog(sign * o.sign, log_abs + o.log_abs);
  }
  SignedLog operator/(const SignedLog& o) const {
    return SignedLog(sign * o.sign, log_abs - o.log_abs);
  }
  SignedLog operator-() const { return SignedLog(-sign, log_abs); }

  // a + b via shifted exponentials; exact cancellation yields zero.
  friend SignedLog add(const SignedLog& a, const SignedLog& b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    const double m = std::max(a.log_abs, b.log_abs);
    const double s = a.sign * std::exp(a.log_abs - m) + b.sign * std::exp(b.log_abs - m);
    if (s == 0.0) return SignedLog();
    return SignedLog(s > 0 ? 1 : -1, m + std::log(std::abs(s)));
  }
  friend SignedLog sub(const SignedLog& a, const SignedLog& b) { return add(a, -b); }
};

// log(sum_i exp(logs[i])) with the usual max shift; -inf entries are skipped.
inline double log_sum_exp(const std::vector<double>& logs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double l : logs) m = std::max(m, l);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double l : logs) s += std::exp(l - m);
  return m + std::log(s);
}

}  // namespace res1d

#endif
