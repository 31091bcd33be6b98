#pragma once

#include <gmpxx.h>

#include <string>

namespace numerans {

/// Exact rational number, canonical form.
using Ratio = mpq_class;

Ratio make_ratio(long num, long den = 1);
Ratio parse_ratio(const std::string& text);  // "p/q" or "p"
std::string format_ratio(const Ratio& q);    // "p/q", "p" when integral
std::string format_decimal(const Ratio& q, int digits);  // rounded

/// Exact rational, or a certified enclosure [lo, hi] of the true value.
class RealValue {
 public:
  RealValue() : lo_(0), hi_(0), exact_(true) {}

  static RealValue exact(Ratio x);
  static RealValue enclosure(Ratio lo, Ratio hi);

  bool is_exact() const { return exact_; }
  const Ratio& lo() const { return lo_; }
  const Ratio& hi() const { return hi_; }
  // Exact value; throws when this is a proper enclosure.
  const Ratio& value() const;
  Ratio midpoint() const;
  Ratio width() const { return hi_ - lo_; }

  bool contains(const Ratio& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RealValue& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  RealValue& operator+=(const RealValue& other);
  friend RealValue operator+(RealValue a, const RealValue& b) {
    a += b;
    return a;
  }

  std::string str() const;

 private:
  Ratio lo_, hi_;
  bool exact_;
};

/// I_y = [alpha_y, alpha_y + r_y] with its center-word label.
struct Interval {
  RealValue lo;
  RealValue hi;
  std::vector<int> label;  // Word

  bool certainly_contains(const Ratio& x) const {
    return lo.hi() <= x && x <= hi.lo();
  }
  bool possibly_contains(const Ratio& x) const {
    return lo.lo() <= x && x <= hi.hi();
  }
};

}  // namespace numerans
