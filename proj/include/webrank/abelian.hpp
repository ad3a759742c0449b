#pragma once

#include <map>
#include <optional>
#include <vector>

#include "webrank/linalg.hpp"
#include "webrank/web.hpp"

namespace webrank {

/// (η_1, …, η_k) with each η_i closed, tangent to F_i and Σ η_i = 0 to `order`.
template <class F>
struct AbelianRelation {
  std::vector<OneForm<F>> components;
  int order = 0;
};

template <class F>
struct AbelianRelationSpace {
  std::vector<AbelianRelation<F>> basis;
  /// Per basis element and foliation: H_i with η_i = d(H_i(v_i)), v_i = first_integral(F_i).
  std::vector<std::vector<UniPoly<F>>> potentials;
  std::map<int, int> kernel_dims;
  int stabilized_at = 0;
  int rank = 0;
  std::optional<double> gap;
};

struct RankReport {
  int k = 0;
  int rank = 0;
  int bol_bound = 0;
  bool is_maximal = false;
  bool stabilized = false;
  std::map<int, int> kernel_dims;
  CoefficientField mode;
  std::optional<double> gap;
};

/// ½(k−1)(k−2), and 0 for k <= 2.
int bol_bound(int k);

/// The default certificate pair (2k, 2k+2).
std::vector<int> default_orders(int k);

/// Abelian relations of `web` truncated at jet order `order`.
///
/// Each η_i is sought as h_i(v_i)·dv_i where v_i is the normalized first
/// integral of F_i, which makes closedness and tangency automatic. The
/// remaining condition Σ H_i(v_i) = 0 (H_i' = h_i, H_i(0) = 0) is imposed on
/// all monomials up to degree order + 1 and its kernel is returned as a basis.
template <class F>
AbelianRelationSpace<F> abelian_relations(const PlanarWeb<F>& web, int order);

/// Kernel dimensions at each order; throws Internal when they increase and
/// TheoremViolation when the final rank exceeds Bol's bound.
template <class F>
RankReport rank_with_certificate(const PlanarWeb<F>& web, const std::vector<int>& orders);

template <class F>
struct RelationResiduals {
  std::vector<F> closedness;
  std::vector<F> tangency;
  F sum = F(0);
  bool passes = false;
};

/// Independent check of the three defining conditions on each component.
template <class F>
RelationResiduals<F> verify_relation(const PlanarWeb<F>& web, const AbelianRelation<F>& rel);

/// Coefficient vector of a relation (all components, both form parts, degrees <= order).
template <class F>
std::vector<F> flatten(const AbelianRelation<F>& rel, int order);

/// Coordinates of each relation in the basis of `space`, at the given order.
/// Returns nullopt when some relation is not in the span.
template <class F>
std::optional<std::vector<std::vector<F>>> coordinates_in_basis(const AbelianRelationSpace<F>& space,
                                                                const std::vector<AbelianRelation<F>>& rels,
                                                                int order);

/// Dimension of the span of a set of relations at the given order.
template <class F>
int span_dimension(const std::vector<AbelianRelation<F>>& rels, int order);

}  // namespace webrank
