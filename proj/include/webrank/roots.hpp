#pragma once

#include <optional>
#include <vector>

#include "webrank/field.hpp"
#include "webrank/univariate.hpp"

namespace webrank {

struct ComplexRoot {
  BigFloat re;
  BigFloat im;
};

/// All complex roots of p (degree >= 1) by simultaneous Weierstrass iteration
/// at the current precision. Multiple roots converge linearly and come out as
/// tight clusters.
std::vector<ComplexRoot> complex_roots(const UniPoly<BigFloat>& p);

/// Continued-fraction recognition: the rational with denominator <= max_den
/// closest to v, provided it lies within tol·max(1, |v|).
std::optional<Rational> recognize_rational(const BigFloat& v, long max_den, const BigFloat& tol);

/// Rational roots of p, each with its multiplicity, sorted ascending.
std::vector<std::pair<Rational, int>> rational_roots(const UniPoly<Rational>& p);

}  // namespace webrank
