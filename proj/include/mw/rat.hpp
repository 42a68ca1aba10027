// Exact rational scalar for Eigen dense types.
//
// All geometry in this project is exact: the scalar is an arbitrary-precision
// rational wrapped in a small value class so that Eigen's scalar-promotion
// machinery sees a plain type with controlled constructors.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace mw {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

class Rat {
 public:
  Rat() : v_(0) {}
  template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
  Rat(T n) : v_(n) {}
  Rat(const BigInt& n) : v_(n) {}
  Rat(const BigInt& n, const BigInt& d) : v_(n, d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
  }
  explicit Rat(const BigRat& v) : v_(v) {}

  const BigRat& raw() const { return v_; }
  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }
  bool is_integer() const { return den() == 1; }
  int sign() const { return v_.sign(); }

  Rat operator-() const { return Rat(BigRat(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.v_ == 0) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }
  friend Rat abs(const Rat& a) { return a.v_ < 0 ? Rat(BigRat(-a.v_)) : a; }
  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  BigRat v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace mw

namespace Eigen {
template <>
struct NumTraits<mw::Rat> {
  using Real = mw::Rat;
  using NonInteger = mw::Rat;
  using Literal = mw::Rat;
  using Nested = mw::Rat;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 80,
    MulCost = 80
  };
  static inline Real epsilon() { return mw::Rat(0); }
  static inline Real dummy_precision() { return mw::Rat(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace mw {

using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

/// Floor of a rational as a big integer.
BigInt rat_floor(const Rat& r);
BigInt rat_ceil(const Rat& r);

/// Parses "p/q" or "p" (no decimal point allowed, exactness contract).
Rat parse_rat(const std::string& s);

/// Reduced "p/q", or "p" when the denominator is one.
std::string rat_str(const Rat& r);

/// Fixed 6-digit decimal rendering, round-half-away-from-zero. Display only.
std::string rat_decimal6(const Rat& r);

RatVec parse_rat_vec(const std::string& s, char sep = ',');
std::string rat_vec_str(const RatVec& v);

inline RatVec make_vec(std::initializer_list<Rat> xs) {
  RatVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline bool lex_less(const RatVec& a, const RatVec& b) {
  for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return a.size() < b.size();
}

inline bool is_integer_vec(const RatVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_integer()) return false;
  return true;
}

// Small integer vectors index lattice points (z^k at desk scale).
using IVec = std::vector<long long>;

inline RatVec to_rat_vec(const IVec& v) {
  RatVec r(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) r(static_cast<Eigen::Index>(i)) = v[i];
  return r;
}

inline IVec to_ivec(const RatVec& v) {
  IVec r(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!v(i).is_integer()) throw std::domain_error("to_ivec: non-integer entry");
    r[static_cast<size_t>(i)] = v(i).num().convert_to<long long>();
  }
  return r;
}

}  // namespace mw

