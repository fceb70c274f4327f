#include "gwb/integer.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gwb {

namespace {

constexpr int64_t kMin = std::numeric_limits<int64_t>::min();
constexpr int64_t kMax = std::numeric_limits<int64_t>::max();

}  // namespace

Integer::Integer(const BigInt& v) { *this = from_big(v); }

Integer Integer::from_big(BigInt v) {
  Integer out;
  if (v >= kMin && v <= kMax) {
    out.small_ = static_cast<int64_t>(v);
  } else {
    out.big_ = std::make_shared<const BigInt>(std::move(v));
  }
  return out;
}

Integer Integer::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("bad integer literal: " + s);
  for (size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  return from_big(BigInt(s));
}

BigInt Integer::to_big() const { return big_ ? *big_ : BigInt(small_); }

int Integer::sign() const {
  if (big_) return big_->sign();
  return (small_ > 0) - (small_ < 0);
}

Integer Integer::abs() const { return sign() < 0 ? -*this : *this; }

std::string Integer::to_string() const { return big_ ? big_->str() : std::to_string(small_); }

Integer operator+(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) {
    int64_t r;
    if (!__builtin_add_overflow(a.small_, b.small_, &r)) return Integer(r);
  }
  return Integer::from_big(a.to_big() + b.to_big());
}

Integer operator-(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) {
    int64_t r;
    if (!__builtin_sub_overflow(a.small_, b.small_, &r)) return Integer(r);
  }
  return Integer::from_big(a.to_big() - b.to_big());
}

Integer operator*(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) {
    int64_t r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &r)) return Integer(r);
  }
  return Integer::from_big(a.to_big() * b.to_big());
}

Integer Integer::operator-() const {
  if (!big_ && small_ != kMin) return Integer(-small_);
  return from_big(-to_big());
}

void Integer::divmod_trunc(const Integer& a, const Integer& b, Integer& q, Integer& r) {
  if (b.is_zero()) throw std::domain_error("integer division by zero");
  if (!a.big_ && !b.big_ && !(a.small_ == kMin && b.small_ == -1)) {
    q = Integer(a.small_ / b.small_);
    r = Integer(a.small_ % b.small_);
    return;
  }
  BigInt bq, br;
  boost::multiprecision::divide_qr(a.to_big(), b.to_big(), bq, br);
  q = from_big(std::move(bq));
  r = from_big(std::move(br));
}

void Integer::divmod_floor(const Integer& a, const Integer& b, Integer& q, Integer& r) {
  divmod_trunc(a, b, q, r);
  if (!r.is_zero() && (r.sign() != b.sign())) {
    q = q - Integer(1);
    r = r + b;
  }
}

Integer operator/(const Integer& a, const Integer& b) {
  Integer q, r;
  Integer::divmod_trunc(a, b, q, r);
  return q;
}

Integer operator%(const Integer& a, const Integer& b) {
  Integer q, r;
  Integer::divmod_trunc(a, b, q, r);
  return r;
}

bool operator==(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // representations are canonical
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  const BigInt x = a.to_big();
  const BigInt y = b.to_big();
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Integer gcd(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small() && a.small_value() != kMin && b.small_value() != kMin) {
    return Integer(std::gcd(a.small_value(), b.small_value()));
  }
  return Integer(boost::multiprecision::gcd(a.to_big(), b.to_big()));
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (!r.is_zero()) {
    Integer q, rem;
    Integer::divmod_trunc(old_r, r, q, rem);
    old_r = r;
    r = rem;
    Integer ns = old_s - q * s;
    old_s = s;
    s = ns;
    Integer nt = old_t - q * t;
    old_t = t;
    t = nt;
  }
  if (old_r.sign() < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<int64_t> prime_divisors(int64_t n) {
  if (n < 1) throw std::invalid_argument("prime_divisors requires n >= 1");
  std::vector<int64_t> out;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace gwb
