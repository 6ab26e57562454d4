#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ballchain/types.hpp"

namespace ballchain {

/// Exact rational p/q with q > 0, normalized by gcd.  Used for the
/// exact-eigenvalue input mode of the resonance detector and for validating
/// normalization of exact-coefficient inputs.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT(runtime/explicit)
  Rational(std::int64_t n, std::int64_t d);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const { return num == 0; }
  int sign() const { return num > 0 ? 1 : (num < 0 ? -1 : 0); }
  std::string to_string() const;

  /// Parses "p", "-p" or "p/q".  Returns nullopt on malformed text.
  static std::optional<Rational> parse(const std::string& text);
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
Rational operator-(const Rational& a);
bool operator==(const Rational& a, const Rational& b);
bool operator!=(const Rational& a, const Rational& b);
bool operator<(const Rational& a, const Rational& b);
bool operator<=(const Rational& a, const Rational& b);

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i) : re(r), im(i) {}

  cdouble to_complex() const { return {re.to_double(), im.to_double()}; }
};

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator*(int k, const GaussianRational& a);
bool operator==(const GaussianRational& a, const GaussianRational& b);

}  // namespace ballchain
