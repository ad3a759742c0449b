#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "webrank/field.hpp"
#include "webrank/forms.hpp"
#include "webrank/polynomial.hpp"

namespace webrank {

enum class FoliationSource { FirstIntegral, OneForm, Slope, VectorField };

/// Germ of a regular foliation at the basepoint.
///
/// `slope` is dy/dx along the leaves, or dx/dy when `vertical` (the leaf
/// through the basepoint is tangent to the second axis).
template <class F>
struct FoliationGerm {
  OneForm<F> form;
  Series<F> slope;
  bool vertical = false;
  FoliationSource source = FoliationSource::OneForm;

  int order() const { return form.order(); }
};

template <class F>
struct PlanarWeb {
  std::vector<FoliationGerm<F>> foliations;
  std::array<Rational, 2> basepoint{Rational(0), Rational(0)};
  int order = 0;
  Variables vars;

  int size() const { return static_cast<int>(foliations.size()); }
};

/// Slope germ given by its Taylor coefficients in local coordinates.
struct SlopeTable {
  bool vertical = false;
  std::vector<std::tuple<int, int, Rational>> terms;
};

nlohmann::json field_to_json(const CoefficientField& f);
CoefficientField field_from_json(const nlohmann::json& j);

/// Input document for a web; foliations are ordered first integrals, then
/// forms, then slope tables.
struct WebSpecDocument {
  std::vector<std::string> first_integrals;
  std::vector<std::array<std::string, 2>> forms;
  std::vector<SlopeTable> slopes;
  std::array<Rational, 2> basepoint{Rational(0), Rational(0)};
  std::optional<std::array<std::string, 2>> automorphism;
  CoefficientField field;
  std::optional<int> order;

  int foliation_count() const {
    return static_cast<int>(first_integrals.size() + forms.size() + slopes.size());
  }

  static WebSpecDocument from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Jet order used when a document does not specify one.
inline int default_web_order(int k) { return 2 * k + 2; }

/// Foliation germ from a defining form; throws Regularity if the form vanishes at the basepoint.
template <class F>
FoliationGerm<F> foliation_from_form(OneForm<F> form, FoliationSource source);

/// Foliation germ from a slope series (dy/dx, or dx/dy when vertical).
template <class F>
FoliationGerm<F> foliation_from_slope(const Series<F>& slope, bool vertical);

/// Foliation by first integral: a polynomial in ambient coordinates.
template <class F>
FoliationGerm<F> foliation_from_first_integral(const Polynomial& p, const std::array<Rational, 2>& basepoint,
                                               int order, const Variables& vars = {});

/// Trajectories of X; requires X(basepoint) != 0.
template <class F>
FoliationGerm<F> foliation_of_field(const VectorField<F>& x);

/// Assembles and validates a web (k >= 1, pairwise distinct tangents).
template <class F>
PlanarWeb<F> make_web(std::vector<FoliationGerm<F>> foliations, const std::array<Rational, 2>& basepoint, int order,
                      const Variables& vars = {});

template <class F>
PlanarWeb<F> build_web(const WebSpecDocument& doc);

/// The (k+1)-web W ⊠ F.
template <class F>
PlanarWeb<F> adjoin(const PlanarWeb<F>& web, const FoliationGerm<F>& extra);

/// Vector field from two polynomial component expressions, re-centered.
template <class F>
VectorField<F> vector_field_from_polynomials(const Polynomial& cx, const Polynomial& cy,
                                             const std::array<Rational, 2>& basepoint, int order,
                                             const Variables& vars = {});

/// One flag per foliation: true iff the slope is constant along the leaves.
template <class F>
std::vector<bool> linearity_check(const PlanarWeb<F>& web);

template <class F>
bool is_linear(const FoliationGerm<F>& foliation);

/// First integral v with v(0) = 0, dv ∧ ω = 0, normalized to restrict to the
/// transverse coordinate on the axis through the basepoint. Order is one more
/// than the slope order.
template <class F>
Series<F> first_integral(const FoliationGerm<F>& foliation);

/// Exchanges the exponents of the two variables (labels unchanged).
template <class F>
Series<F> transpose(const Series<F>& s);

}  // namespace webrank
