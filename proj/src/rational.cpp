#include "numerans/rational.hpp"

#include <stdexcept>

#include "numerans/words.hpp"

namespace numerans {

Ratio make_ratio(long num, long den) {
  Ratio q(num, den);
  q.canonicalize();
  return q;
}

Ratio parse_ratio(const std::string& text) {
  try {
    Ratio q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw input_error("bad rational literal '" + text + "'");
  }
}

std::string format_ratio(const Ratio& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_decimal(const Ratio& q, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpq_class scaled = q * scale;
  // round half away from zero
  mpz_class num = scaled.get_num(), den = scaled.get_den();
  mpz_class twice = 2 * num + (num >= 0 ? den : -den);
  mpz_class rounded = twice / (2 * den);
  bool neg = rounded < 0;
  mpz_class mag = abs(rounded);
  std::string s = mag.get_str();
  if (static_cast<int>(s.size()) <= digits)
    s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

RealValue RealValue::exact(Ratio x) {
  RealValue v;
  v.lo_ = x;
  v.hi_ = std::move(x);
  v.exact_ = true;
  return v;
}

RealValue RealValue::enclosure(Ratio lo, Ratio hi) {
  if (lo > hi) throw std::invalid_argument("enclosure with lo > hi");
  RealValue v;
  v.lo_ = std::move(lo);
  v.hi_ = std::move(hi);
  v.exact_ = (v.lo_ == v.hi_);
  return v;
}

const Ratio& RealValue::value() const {
  if (!exact_) throw value_error("enclosure used where an exact value is required");
  return lo_;
}

Ratio RealValue::midpoint() const { return (lo_ + hi_) / 2; }

RealValue& RealValue::operator+=(const RealValue& other) {
  lo_ += other.lo_;
  hi_ += other.hi_;
  exact_ = exact_ && other.exact_;
  return *this;
}

std::string RealValue::str() const {
  if (exact_) return format_ratio(lo_);
  return "[" + format_ratio(lo_) + ", " + format_ratio(hi_) + "]";
}

}  // namespace numerans
