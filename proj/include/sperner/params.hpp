#pragma once

#include <stdexcept>
#include <string>

namespace sperner {

/// Validated (n, k) together with the quotient/remainder frame n = c k + r,
/// 0 <= r < k.
class Params {
 public:
  /// Throws std::invalid_argument unless n >= k >= 1.
  Params(int n, int k) : n_(n), k_(k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1 (got k=" + std::to_string(k) + ")");
    if (n < k)
      throw std::invalid_argument("n must be >= k (got n=" + std::to_string(n) +
                                  ", k=" + std::to_string(k) + ")");
    c_ = n / k;
    r_ = n % k;
  }

  int n() const { return n_; }
  int k() const { return k_; }
  int c() const { return c_; }
  int r() const { return r_; }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  int n_;
  int k_;
  int c_;
  int r_;
};

/// Raised when a formula or construction's hypotheses do not hold for the
/// given parameters. The message names the violated condition.
class NotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sperner
