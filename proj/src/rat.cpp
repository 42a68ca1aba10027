#include "mw/rat.hpp"

#include <cctype>

namespace mw {

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << rat_str(r); }

BigInt rat_floor(const Rat& r) {
  BigInt q = r.num() / r.den();
  if (r.num() < 0 && q * r.den() != r.num()) q -= 1;
  return q;
}

BigInt rat_ceil(const Rat& r) { return -rat_floor(-r); }

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (s.find('.') != std::string::npos)
    throw std::invalid_argument("decimal input rejected, use p/q: " + s);
  auto slash = s.find('/');
  auto check_int = [](const std::string& t) {
    if (t.empty()) throw std::invalid_argument("malformed rational");
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw std::invalid_argument("malformed rational");
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        throw std::invalid_argument("malformed rational: " + t);
  };
  if (slash == std::string::npos) {
    check_int(s);
    return Rat(BigInt(s));
  }
  std::string p = s.substr(0, slash), q = s.substr(slash + 1);
  check_int(p);
  check_int(q);
  BigInt d(q);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  return Rat(BigInt(p), d);
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r.num();
  if (!r.is_integer()) os << "/" << r.den();
  return os.str();
}

std::string rat_decimal6(const Rat& r) {
  const BigInt scale = 1000000;
  BigInt n = r.num() * scale * 2;
  BigInt d = r.den();
  BigInt q = n / d;  // truncation toward zero
  // round half away from zero on the doubled value
  BigInt rounded = (q >= 0 ? BigInt(q + 1) : BigInt(q - 1)) / 2;
  if ((n % d) == 0) rounded = q / 2;
  bool neg = rounded < 0;
  BigInt a = neg ? BigInt(-rounded) : rounded;
  BigInt ip = a / scale, fp = a % scale;
  std::ostringstream os;
  if (neg) os << '-';
  os << ip << '.';
  std::string f = fp.str();
  os << std::string(6 - f.size(), '0') << f;
  return os.str();
}

RatVec parse_rat_vec(const std::string& s, char sep) {
  std::vector<Rat> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(parse_rat(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(parse_rat(cur));
  RatVec v(static_cast<Eigen::Index>(out.size()));
  for (size_t i = 0; i < out.size(); ++i) v(static_cast<Eigen::Index>(i)) = out[i];
  return v;
}

std::string rat_vec_str(const RatVec& v) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << rat_str(v(i));
  }
  return os.str();
}

}  // namespace mw
