#include "latticode/dyadic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace latticode {

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in addition");
  return r;
}

std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in subtraction");
  return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in multiplication");
  return r;
}

std::int64_t shl(std::int64_t a, int bits) {
  if (bits < 0) throw std::invalid_argument("negative shift");
  if (bits >= 63) {
    if (a == 0) return 0;
    throw std::overflow_error("int64 overflow in shift");
  }
  return mul(a, std::int64_t{1} << bits);
}

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("value does not fit in int64");
  return static_cast<std::int64_t>(v);
}

}  // namespace checked

std::int64_t floor_shift(std::int64_t a, int bits) {
  if (bits <= 0) return checked::shl(a, -bits);
  if (bits >= 63) return a < 0 ? -1 : 0;
  return a >> bits;  // arithmetic shift is floor division for two's complement
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("modulus must be positive");
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

int exact_log2(std::int64_t v) {
  if (!is_power_of_two(v)) throw std::invalid_argument("value is not a power of two: " + std::to_string(v));
  return 63 - __builtin_clzll(static_cast<unsigned long long>(v));
}

// ---------------------------------------------------------------- Dyadic

Dyadic::Dyadic(std::int64_t num, int log2_den) : num_(num), log2_den_(log2_den) {
  if (log2_den_ < 0) {
    num_ = checked::shl(num_, -log2_den_);
    log2_den_ = 0;
  }
  if (num_ == 0) {
    log2_den_ = 0;
    return;
  }
  while (log2_den_ > 0 && (num_ & 1) == 0) {
    num_ /= 2;
    --log2_den_;
  }
}

Dyadic Dyadic::pow2(int exponent) {
  return exponent >= 0 ? Dyadic(checked::shl(1, exponent), 0) : Dyadic(1, -exponent);
}

std::int64_t Dyadic::at_scale(int scale) const {
  if (scale < log2_den_) throw std::invalid_argument("scale below denominator");
  return checked::shl(num_, scale - log2_den_);
}

double Dyadic::to_double() const { return static_cast<double>(num_) / static_cast<double>(__int128{1} << log2_den_); }

std::string Dyadic::to_string() const {
  if (log2_den_ == 0) return std::to_string(num_);
  std::ostringstream os;
  os << num_ << "/" << (std::int64_t{1} << log2_den_);
  return os.str();
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  int s = std::max(a.log2_den_, b.log2_den_);
  return Dyadic(checked::add(a.at_scale(s), b.at_scale(s)), s);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  int s = std::max(a.log2_den_, b.log2_den_);
  return Dyadic(checked::sub(a.at_scale(s), b.at_scale(s)), s);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(checked::mul(a.num_, b.num_), a.log2_den_ + b.log2_den_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int s = std::max(a.log2_den_, b.log2_den_);
  return a.at_scale(s) <=> b.at_scale(s);
}

// ---------------------------------------------------------------- Rational

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = checked::sub(0, num);
    den = checked::sub(0, den);
  }
  std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational::Rational(const Dyadic& d) : Rational(d.num(), checked::shl(1, d.log2_den())) {}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {
Rational make_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(checked::narrow(num), checked::narrow(den));
}
}  // namespace

Rational operator+(const Rational& a, const Rational& b) {
  return make_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return make_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
}

// ---------------------------------------------------------------- DyadicVector

DyadicVector::DyadicVector(IntVector numerators, int log2_den) : num_(std::move(numerators)), log2_den_(log2_den) {
  if (log2_den_ < 0) {
    for (auto& v : num_) v = checked::shl(v, -log2_den_);
    log2_den_ = 0;
  }
  canonicalize();
}

DyadicVector DyadicVector::from_dyadics(std::span<const Dyadic> entries) {
  int s = 0;
  for (const auto& e : entries) s = std::max(s, e.log2_den());
  IntVector nums;
  nums.reserve(entries.size());
  for (const auto& e : entries) nums.push_back(e.at_scale(s));
  return DyadicVector(std::move(nums), s);
}

void DyadicVector::canonicalize() {
  while (log2_den_ > 0 && std::all_of(num_.begin(), num_.end(), [](std::int64_t v) { return (v & 1) == 0; })) {
    for (auto& v : num_) v /= 2;
    --log2_den_;
  }
}

IntVector DyadicVector::to_integers() const {
  if (log2_den_ != 0) throw std::domain_error("vector has non-integer entries");
  return num_;
}

IntVector DyadicVector::at_scale(int scale) const {
  if (scale < log2_den_) throw std::invalid_argument("scale below denominator");
  IntVector out(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) out[i] = checked::shl(num_[i], scale - log2_den_);
  return out;
}

DyadicVector DyadicVector::scaled_pow2(int k) const { return DyadicVector(num_, log2_den_ - k); }

DyadicVector DyadicVector::slice(std::size_t offset, std::size_t count) const {
  if (offset + count > num_.size()) throw std::out_of_range("slice out of range");
  return DyadicVector(IntVector(num_.begin() + static_cast<std::ptrdiff_t>(offset),
                                num_.begin() + static_cast<std::ptrdiff_t>(offset + count)),
                      log2_den_);
}

std::vector<double> DyadicVector::to_doubles() const {
  std::vector<double> out;
  out.reserve(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) out.push_back((*this)[i].to_double());
  return out;
}

std::string DyadicVector::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (i) s += ", ";
    s += (*this)[i].to_string();
  }
  return s + "]";
}

namespace {
void require_same_size(const DyadicVector& a, const DyadicVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
}
}  // namespace

DyadicVector operator+(const DyadicVector& a, const DyadicVector& b) {
  require_same_size(a, b);
  int s = std::max(a.log2_den_, b.log2_den_);
  IntVector x = a.at_scale(s), y = b.at_scale(s);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = checked::add(x[i], y[i]);
  return DyadicVector(std::move(x), s);
}

DyadicVector operator-(const DyadicVector& a, const DyadicVector& b) {
  require_same_size(a, b);
  int s = std::max(a.log2_den_, b.log2_den_);
  IntVector x = a.at_scale(s), y = b.at_scale(s);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = checked::sub(x[i], y[i]);
  return DyadicVector(std::move(x), s);
}

std::strong_ordering operator<=>(const DyadicVector& a, const DyadicVector& b) {
  int s = std::max(a.log2_den_, b.log2_den_);
  IntVector x = a.at_scale(s), y = b.at_scale(s);
  return x <=> y;
}

DyadicVector concat(std::span<const DyadicVector> parts) {
  int s = 0;
  for (const auto& p : parts) s = std::max(s, p.log2_den());
  IntVector all;
  for (const auto& p : parts) {
    IntVector v = p.at_scale(s);
    all.insert(all.end(), v.begin(), v.end());
  }
  return DyadicVector(std::move(all), s);
}

// ---------------------------------------------------------------- SquaredLength

double SquaredLength::to_double() const {
  return static_cast<double>(num) / static_cast<double>(__int128{1} << log2_den);
}

std::strong_ordering operator<=>(const SquaredLength& a, const SquaredLength& b) {
  auto lift = [](__int128 v, int bits) {
    for (int i = 0; i < bits; ++i) {
      if (v > (static_cast<__int128>(1) << 125) || v < -(static_cast<__int128>(1) << 125))
        throw std::overflow_error("squared length comparison overflow");
      v *= 2;
    }
    return v;
  };
  int s = std::max(a.log2_den, b.log2_den);
  return lift(a.num, s - a.log2_den) <=> lift(b.num, s - b.log2_den);
}

SquaredLength squared_norm(const DyadicVector& v) {
  __int128 acc = 0;
  for (auto x : v.numerators()) acc += static_cast<__int128>(x) * x;
  return {acc, 2 * v.log2_den()};
}

SquaredLength squared_distance(const DyadicVector& a, const DyadicVector& b) { return squared_norm(a - b); }

}  // namespace latticode
