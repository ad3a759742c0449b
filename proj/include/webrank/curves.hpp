#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "webrank/abelian.hpp"
#include "webrank/polynomial.hpp"
#include "webrank/web.hpp"

namespace webrank {

/// F = x^e1 y^e2 z^e3 · ∏ (x^a + λ_i y^b z^(a-b)).
struct CurveFamilyParams {
  std::array<int, 3> eps{0, 0, 0};
  int k = 1;
  int a = 2;
  int b = 1;
  std::vector<Rational> lambdas{Rational(1)};

  int degree() const { return k * a + eps[0] + eps[1] + eps[2]; }
  /// Throws Validation naming the violated constraint.
  void validate() const;
};

struct ProjectiveCurve {
  Polynomial f;
  int degree = 0;
};

ProjectiveCurve build_curve(const CurveFamilyParams& params);

/// Reducedness test on restrictions to random lines (deterministic seed).
bool is_square_free(const Polynomial& f);

struct FamilyTuple {
  std::array<int, 3> eps{0, 0, 0};
  int k = 0;
  int a = 0;
  int b = 0;
  friend bool operator==(const FamilyTuple&, const FamilyTuple&) = default;
  friend auto operator<=>(const FamilyTuple&, const FamilyTuple&) = default;
};

/// Discrete family types of degree d (d >= 4), with the y<->z swap removed when a = 2.
std::vector<FamilyTuple> enumerate_families(int d);

/// 4d - 10
int family_count_formula(int d);

/// ⌊d/2⌋ + 3⌊(d-1)/2⌋ + 3⌊(d-2)/2⌋ + ⌊(d-3)/2⌋ - 2
int family_count_floor_sum(int d);

/// Common weighted degree of all monomials, or nullopt when F is not weighted homogeneous.
std::optional<int> weighted_degree(const Polynomial& f, const std::array<int, 3>& weights);

struct ActionWeights {
  std::array<int, 3> weights{0, 0, 0};
  /// F(t^wx x, t^wy y, t^wz z) = t^m F(x, y, z)
  int m = 0;
};

/// (b, a, 0), checked against build_curve(params); throws Internal if not invariant.
ActionWeights action_weights(const CurveFamilyParams& params);

/// Generator of the dual action on lines {y = p x + q z}: (wy-wx)·p ∂p + (wy-wz)·q ∂q,
/// re-centered at the basepoint. In the swapped chart {x = p y + q z} the roles of wx, wy exchange.
template <class F>
VectorField<F> dual_action_field(const std::array<int, 3>& weights, const std::array<Rational, 2>& basepoint,
                                 int order, bool swapped_chart = false);

template <class F>
VectorField<F> dual_action_field(const CurveFamilyParams& params, const std::array<Rational, 2>& basepoint, int order);

enum class DualChart { Primary, Swapped, Auto };

struct DualWebOptions {
  std::optional<std::array<Rational, 2>> basepoint;
  DualChart chart = DualChart::Auto;
  int order = 0;
  std::uint64_t seed = 1;
  int max_attempts = 400;
  /// Weights of a C*-action; when set the dual action field and W_C ⊠ F_X are attached.
  std::optional<std::array<int, 3>> weights;
  /// Also require F_y != 0 at every finite intersection point (needed by verify_trace).
  bool regular_adjoints = false;
};

template <class F>
struct DualWebPackage {
  bool swapped_chart = false;
  /// Curve in chart coordinates (x, y exchanged in the swapped chart).
  Polynomial chart_curve;
  std::array<Rational, 2> basepoint{Rational(0), Rational(0)};
  std::uint64_t seed = 0;
  int attempts = 0;
  /// Abscissae x_i(p, q) of the finite intersection points.
  std::vector<Series<F>> branches;
  /// The line z = 0 is a component of C; its foliation dp is the last one of the web.
  bool line_at_infinity = false;
  PlanarWeb<F> web;
  std::optional<VectorField<F>> fx_field;
  std::optional<PlanarWeb<F>> combined;
};

/// Dual web W_C in the chart of lines {y = p x + q z}, variables (p, q).
template <class F>
DualWebPackage<F> dual_web(const ProjectiveCurve& curve, const DualWebOptions& options);

/// Monomials x^i y^j with i + j <= d - 3.
std::vector<Polynomial> adjoint_basis(int d);

template <class F>
struct TraceReport {
  F residual = F(0);
  bool vanishes = false;
  /// Components P(x_i, y_i)/F_y · dx_i, zero on the line at infinity.
  AbelianRelation<F> relation;
};

/// Σ γ_i^*(P dx / F_y) over the tracked branches.
template <class F>
TraceReport<F> verify_trace(const ProjectiveCurve& curve, const Polynomial& adjoint, const DualWebPackage<F>& pkg);

nlohmann::json family_descriptor(const CurveFamilyParams& params, std::optional<std::uint64_t> seed,
                                 const std::optional<std::array<Rational, 2>>& basepoint);

}  // namespace webrank
