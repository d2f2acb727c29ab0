#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vdm {

/// Exact rational number. All arithmetic in the library is exact; no
/// floating point appears anywhere in a computation path.
using Rat = mpq_class;

inline int sgn(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

/// num/den in canonical form. Prefer this over the two-argument mpq_class
/// constructor, which does not reduce the fraction.
inline Rat rat_frac(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "a/b" or a plain integer string.
Rat rat_from_string(const std::string& s);

/// Canonical form: "a/b" with b > 0, or just "a" when b == 1.
std::string rat_to_string(const Rat& x);

/// A rational extended by +infinity: the codomain of lifting functions
/// and valuations. Sums absorb infinity; positive scaling preserves it.
class Val {
 public:
  Val() : finite_(true), v_(0) {}
  Val(Rat v) : finite_(true), v_(std::move(v)) {}
  Val(long v) : finite_(true), v_(v) {}
  Val(int v) : finite_(true), v_(v) {}

  static Val infinity() {
    Val r;
    r.finite_ = false;
    return r;
  }

  bool is_finite() const { return finite_; }
  const Rat& finite_value() const {
    if (!finite_) throw std::logic_error("Val: infinite value has no rational part");
    return v_;
  }

  friend Val operator+(const Val& a, const Val& b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return Val(a.v_ + b.v_);
  }
  Val& operator+=(const Val& o) { return *this = *this + o; }

  friend Val operator-(const Val& a) {
    if (!a.finite_) throw std::logic_error("Val: cannot negate infinity");
    return Val(-a.v_);
  }
  friend Val operator-(const Val& a, const Rat& b) {
    if (!a.finite_) return infinity();
    return Val(a.v_ - b);
  }

  /// Scale by a positive rational (infinity stays infinite).
  Val scaled(const Rat& c) const {
    if (sgn(c) <= 0) throw std::invalid_argument("Val: scale factor must be positive");
    if (!finite_) return infinity();
    return Val(v_ * c);
  }

  friend bool operator==(const Val& a, const Val& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.v_ == b.v_;
  }
  friend bool operator!=(const Val& a, const Val& b) { return !(a == b); }
  friend bool operator<(const Val& a, const Val& b) {
    if (!a.finite_) return false;
    if (!b.finite_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Val& a, const Val& b) { return a < b || a == b; }
  friend bool operator>(const Val& a, const Val& b) { return b < a; }
  friend bool operator>=(const Val& a, const Val& b) { return b <= a; }

  std::string to_string() const { return finite_ ? rat_to_string(v_) : "inf"; }
  static Val from_string(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "∞") return infinity();
    return Val(rat_from_string(s));
  }

 private:
  bool finite_;
  Rat v_;
};

}  // namespace vdm
