#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace kpzlab::treealg {

using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& q);

/// Parses "3", "-3/2" or "0".
Rational parse_rational(std::string_view text);

/// Element of Q + Q*kappa, the degree of a tree.
///
/// kappa is a fixed but unspecified number in (0, 1/10). Comparisons are
/// exact: two degrees are ordered only if their order is the same for every
/// admissible kappa, otherwise std::domain_error is thrown.
class ExactDegree {
 public:
  ExactDegree() = default;
  ExactDegree(Rational rational_part, Rational kappa_part = 0)
      : rational_(std::move(rational_part)), kappa_(std::move(kappa_part)) {}

  static ExactDegree kappa() { return {0, 1}; }

  const Rational& rational_part() const { return rational_; }
  const Rational& kappa_part() const { return kappa_; }

  /// Value at a concrete kappa.
  Rational at(const Rational& kappa_value) const { return rational_ + kappa_ * kappa_value; }
  double approx(double kappa_value = 0.05) const;

  ExactDegree& operator+=(const ExactDegree& other);
  ExactDegree& operator-=(const ExactDegree& other);
  friend ExactDegree operator+(ExactDegree a, const ExactDegree& b) { return a += b; }
  friend ExactDegree operator-(ExactDegree a, const ExactDegree& b) { return a -= b; }
  friend ExactDegree operator-(const ExactDegree& a) { return {-a.rational_, -a.kappa_}; }
  friend ExactDegree operator*(const Rational& s, const ExactDegree& d) {
    return {s * d.rational_, s * d.kappa_};
  }

  friend bool operator==(const ExactDegree&, const ExactDegree&) = default;
  friend std::strong_ordering operator<=>(const ExactDegree& a, const ExactDegree& b);

  /// Sign of the degree on the whole interval kappa in (0, 1/10); throws if it changes.
  int sign() const;

  /// Canonical text, e.g. "-3/2 - k", "-4k", "0".
  std::string to_string() const;

 private:
  Rational rational_{0};
  Rational kappa_{0};
};

std::ostream& operator<<(std::ostream& os, const ExactDegree& d);

/// Parses the text form produced by ExactDegree::to_string ("1/2 - 3k", "-2k", "1").
ExactDegree parse_degree(std::string_view text);

}  // namespace kpzlab::treealg
