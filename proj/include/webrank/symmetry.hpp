#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "webrank/abelian.hpp"
#include "webrank/linalg.hpp"
#include "webrank/web.hpp"

namespace webrank {

template <class F>
struct AutomorphismResidual {
  /// max |L_X ω_i ∧ ω_i|
  F lie_wedge = F(0);
  bool preserved = false;
  /// i_X ω_i is a unit.
  bool transverse = false;
};

template <class F>
std::vector<AutomorphismResidual<F>> check_automorphism(const PlanarWeb<F>& web, const VectorField<F>& x);

template <class F>
struct CanonicalFirstIntegral {
  Series<F> u;
  int foliation_index = 0;
};

/// u = ∫ ω_i / i_X ω_i with u(0) = 0; throws Singularity when i_X ω_i is not a unit.
template <class F>
CanonicalFirstIntegral<F> canonical_first_integral(const PlanarWeb<F>& web, const VectorField<F>& x, int i);

/// Everything derived once from a web and a validated automorphism.
template <class F>
struct SymmetryFrame {
  PlanarWeb<F> web;
  VectorField<F> field;
  std::vector<CanonicalFirstIntegral<F>> integrals;
  /// First integral of F_X vanishing at the basepoint.
  Series<F> transverse;
  /// W ⊠ F_X
  PlanarWeb<F> combined;
};

/// Validates X against the web (preserved, transverse, nonzero at the basepoint).
template <class F>
SymmetryFrame<F> symmetry_frame(const PlanarWeb<F>& web, const VectorField<F>& x);

struct Eigenvalue {
  std::optional<Rational> rational;
  double re = 0;
  double im = 0;
  /// Exact rational, or a float rendering of the real part (with imaginary part when nonreal).
  std::string text;
  int multiplicity = 0;
  /// Exact mode, irrational eigenvalues: the square-free rational factor they are roots of.
  std::optional<UniPoly<Rational>> factor;
  bool is_zero() const { return rational && rational->is_zero(); }
  bool is_real() const { return im == 0; }
};

template <class F>
struct LieOperator {
  /// Column ν holds the coordinates of L_X(basis_ν) in the basis.
  Matrix<F> matrix;
  UniPoly<F> charpoly;
  std::vector<Eigenvalue> eigenvalues;
  int zero_block_dim = 0;
  int nonzero_block_dim = 0;
  /// Smallest n with (matrix restricted to the generalized 0-eigenspace)^n = 0.
  int nilpotency_index = 0;
  bool nilpotent_zero_block = false;
};

template <class F>
LieOperator<F> lie_on_relations(const SymmetryFrame<F>& frame, const AbelianRelationSpace<F>& space);

template <class F>
LieOperator<F> lie_on_relations(const PlanarWeb<F>& web, const VectorField<F>& x, const AbelianRelationSpace<F>& space);

/// Σ P_i(u_i)·e^{λ u_i}·du_i = 0
template <class F>
struct StructuredRelation {
  Eigenvalue eigenvalue;
  F lambda = F(0);
  std::vector<UniPoly<F>> polys;
  int degree = 0;
  /// Series expansion through the canonical first integrals.
  AbelianRelation<F> expanded;

  std::string text() const;
};

template <class F>
struct StructuredBasis {
  std::vector<StructuredRelation<F>> relations;
  /// Largest deg P observed per eigenvalue text.
  std::map<std::string, int> max_degree;
  /// False when some eigenvalue is not representable in the field (nonreal, or irrational in exact mode).
  bool complete = true;
  LieOperator<F> op;
};

template <class F>
StructuredBasis<F> structured_basis(const SymmetryFrame<F>& frame, const AbelianRelationSpace<F>& space);

template <class F>
StructuredBasis<F> structured_basis(const PlanarWeb<F>& web, const VectorField<F>& x);

/// du_1 − du_j − g_j(t)·dt = 0 on W ⊠ F_X, t the transverse coordinate.
template <class F>
struct BaseRelation {
  int j = 0;
  UniPoly<F> g;
  AbelianRelation<F> relation;
};

template <class F>
std::vector<BaseRelation<F>> base_relations(const SymmetryFrame<F>& frame);

template <class F>
std::vector<BaseRelation<F>> base_relations(const PlanarWeb<F>& web, const VectorField<F>& x);

/// Φ(Σ P_i(u_i)du_i) = Σ Q_i(u_i)du_i + g(t)dt with Q_i' = P_i, Q_i(0) = 0;
/// throws Domain for a relation outside A₀.
template <class F>
AbelianRelation<F> phi_section(const SymmetryFrame<F>& frame, const StructuredRelation<F>& rel);

/// max |L_X η_i − ρ_i| over components, ρ extended by zero for extra components.
template <class F>
F lie_residual(const VectorField<F>& x, const AbelianRelation<F>& eta, const AbelianRelation<F>& rho);

struct Theorem1Report {
  RankReport base;
  RankReport extended;
  int delta = 0;
  int expected_delta = 0;
  bool holds = false;
  bool maximality_agrees = false;
};

template <class F>
Theorem1Report theorem1_check(const PlanarWeb<F>& web, const VectorField<F>& x, const std::vector<int>& orders);

}  // namespace webrank
