#include "kpzlab/treealg/exact.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace kpzlab::treealg {

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << '/' << denominator(q);
  return os.str();
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(boost::multiprecision::cpp_int(std::string(text)));
    }
    const boost::multiprecision::cpp_int num(std::string(text.substr(0, slash)));
    const boost::multiprecision::cpp_int den(std::string(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  }
}

double ExactDegree::approx(double kappa_value) const {
  return static_cast<double>(rational_) + static_cast<double>(kappa_) * kappa_value;
}

ExactDegree& ExactDegree::operator+=(const ExactDegree& other) {
  rational_ += other.rational_;
  kappa_ += other.kappa_;
  return *this;
}

ExactDegree& ExactDegree::operator-=(const ExactDegree& other) {
  rational_ -= other.rational_;
  kappa_ -= other.kappa_;
  return *this;
}

int ExactDegree::sign() const {
  // r + k*kappa is affine in kappa; its sign is constant on (0, 1/10) iff the
  // values at the two endpoints are not of strictly opposite sign.
  const Rational left = rational_;
  const Rational right = rational_ + kappa_ / 10;
  if (left * right < 0) {
    throw std::domain_error("sign of degree " + to_string() + " depends on kappa");
  }
  const Rational mid = rational_ + kappa_ / 20;
  return mid > 0 ? 1 : (mid < 0 ? -1 : 0);
}

std::strong_ordering operator<=>(const ExactDegree& a, const ExactDegree& b) {
  const int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExactDegree::to_string() const {
  std::string out;
  if (rational_ != 0 || kappa_ == 0) out = treealg::to_string(rational_);
  if (kappa_ != 0) {
    const Rational mag = abs(kappa_);
    const std::string coeff = mag == 1 ? "" : treealg::to_string(mag);
    if (out.empty()) {
      out = (kappa_ < 0 ? "-" : "") + coeff + "k";
    } else {
      out += (kappa_ < 0 ? " - " : " + ") + coeff + "k";
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const ExactDegree& d) { return os << d.to_string(); }

ExactDegree parse_degree(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty degree");
  ExactDegree result;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '/')) ++end;
    Rational coeff = end > pos ? parse_rational(std::string_view(s).substr(pos, end - pos)) : Rational(1);
    if (end < s.size() && s[end] == 'k') {
      result += ExactDegree(0, sign * coeff);
      ++end;
    } else {
      if (end == pos) throw std::invalid_argument("malformed degree: '" + std::string(text) + "'");
      result += ExactDegree(sign * coeff, 0);
    }
    pos = end;
    if (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
      throw std::invalid_argument("malformed degree: '" + std::string(text) + "'");
    }
  }
  return result;
}

}  // namespace kpzlab::treealg
