#include "webrank/abelian.hpp"

#include <algorithm>

namespace webrank {

int bol_bound(int k) { return k <= 2 ? 0 : (k - 1) * (k - 2) / 2; }

std::vector<int> default_orders(int k) { return {2 * k, 2 * k + 2}; }

template <class F>
AbelianRelationSpace<F> abelian_relations(const PlanarWeb<F>& web, int order) {
  const int k = web.size();
  AbelianRelationSpace<F> space;
  if (k <= 2) {
    space.kernel_dims[order] = 0;
    space.stabilized_at = order;
    return space;
  }
  if (order < k - 2)
    fail(ErrorKind::Validation, "jet order " + std::to_string(order) + " is below k-2 = " + std::to_string(k - 2));
  if (order > web.order)
    fail(ErrorKind::Validation, "jet order " + std::to_string(order) + " exceeds the web order " +
                                    std::to_string(web.order));

  const int top = order + 1;
  const int rows = term_count(top) - 1;
  const int per = top;
  Matrix<F> m(rows, k * per);
  std::vector<Series<F>> integrals;
  for (int i = 0; i < k; ++i) {
    Series<F> v = first_integral(web.foliations[static_cast<std::size_t>(i)]).truncated(top);
    Series<F> pw = v;
    for (int n = 1; n <= top; ++n) {
      for (int d = 1; d <= top; ++d)
        for (int j = 0; j <= d; ++j) m(term_index(d - j, j) - 1, i * per + n - 1) = pw(d - j, j);
      if (n < top) pw = pw * v;
    }
    integrals.push_back(std::move(v));
  }

  KernelResult<F> ker = kernel(m);
  space.gap = ker.gap;
  for (const auto& vec : ker.basis) {
    AbelianRelation<F> rel;
    rel.order = order;
    std::vector<UniPoly<F>> hs;
    for (int i = 0; i < k; ++i) {
      std::vector<F> coeffs(static_cast<std::size_t>(top) + 1, F(0));
      for (int n = 1; n <= top; ++n) coeffs[static_cast<std::size_t>(n)] = vec[static_cast<std::size_t>(i * per + n - 1)];
      UniPoly<F> h(std::move(coeffs));
      rel.components.push_back(exterior_derivative(compose(h, integrals[static_cast<std::size_t>(i)])));
      hs.push_back(std::move(h));
    }
    space.basis.push_back(std::move(rel));
    space.potentials.push_back(std::move(hs));
  }
  space.rank = static_cast<int>(space.basis.size());
  space.kernel_dims[order] = space.rank;
  space.stabilized_at = order;
  return space;
}

template <class F>
RankReport rank_with_certificate(const PlanarWeb<F>& web, const std::vector<int>& orders) {
  if (orders.size() < 2) fail(ErrorKind::Validation, "a rank certificate needs at least two jet orders");
  if (!std::is_sorted(orders.begin(), orders.end()) ||
      std::adjacent_find(orders.begin(), orders.end()) != orders.end())
    fail(ErrorKind::Validation, "jet orders must be strictly ascending");
  RankReport report;
  report.k = web.size();
  report.bol_bound = bol_bound(report.k);
  if constexpr (FieldTraits<F>::exact) {
    report.mode.mode = FieldMode::ExactRational;
  } else {
    report.mode.mode = FieldMode::BigFloat;
    report.mode.precision_bits = current_precision_bits();
    report.mode.rank_gap_tolerance = FieldTraits<BigFloat>::tolerance();
  }
  int previous = -1;
  for (int order : orders) {
    AbelianRelationSpace<F> space = abelian_relations(web, order);
    report.kernel_dims[order] = space.rank;
    if (space.gap && (!report.gap || *space.gap < *report.gap)) report.gap = space.gap;
    if (previous >= 0 && space.rank > previous)
      fail(ErrorKind::Internal, "kernel dimension increased from " + std::to_string(previous) + " to " +
                                    std::to_string(space.rank) + " at order " + std::to_string(order));
    previous = space.rank;
  }
  report.rank = previous;
  auto last = report.kernel_dims.rbegin();
  report.stabilized = std::next(last)->second == last->second;
  report.is_maximal = report.rank == report.bol_bound;
  if (report.rank > report.bol_bound)
    fail(ErrorKind::TheoremViolation, "rank " + std::to_string(report.rank) + " exceeds Bol's bound " +
                                          std::to_string(report.bol_bound));
  return report;
}

template <class F>
RelationResiduals<F> verify_relation(const PlanarWeb<F>& web, const AbelianRelation<F>& rel) {
  if (static_cast<int>(rel.components.size()) != web.size())
    fail(ErrorKind::Validation, "relation has " + std::to_string(rel.components.size()) + " components for a " +
                                    std::to_string(web.size()) + "-web");
  if (rel.order > web.order) fail(ErrorKind::Validation, "relation order exceeds web order");
  const int n = rel.order;
  RelationResiduals<F> out;
  bool ok = true;
  std::optional<OneForm<F>> total;
  for (int i = 0; i < web.size(); ++i) {
    const OneForm<F> eta = rel.components[static_cast<std::size_t>(i)].truncated(n);
    const OneForm<F> omega = web.foliations[static_cast<std::size_t>(i)].form.truncated(n);
    Series<F> closed = n >= 1 ? exterior_derivative(eta).truncated(n - 1) : Series<F>(0, eta.a.variables());
    Series<F> tangent = wedge(eta, omega);
    out.closedness.push_back(closed.max_abs());
    out.tangency.push_back(tangent.max_abs());
    ok = ok && closed.is_zero() && tangent.is_zero();
    total = total ? *total + eta : eta;
  }
  out.sum = std::max(total->a.max_abs(), total->b.max_abs());
  out.passes = ok && total->is_zero();
  return out;
}

template <class F>
std::vector<F> flatten(const AbelianRelation<F>& rel, int order) {
  std::vector<F> v;
  v.reserve(rel.components.size() * 2 * static_cast<std::size_t>(term_count(order)));
  for (const auto& c : rel.components)
    for (const Series<F>* s : {&c.a, &c.b})
      for (int d = 0; d <= order; ++d)
        for (int j = 0; j <= d; ++j) v.push_back(s->coeff(d - j, j));
  return v;
}

template <class F>
std::optional<std::vector<std::vector<F>>> coordinates_in_basis(const AbelianRelationSpace<F>& space,
                                                                const std::vector<AbelianRelation<F>>& rels,
                                                                int order) {
  const int dim = static_cast<int>(space.basis.size());
  std::vector<std::vector<F>> cols;
  for (const auto& b : space.basis) cols.push_back(flatten(b, order));
  const int rows = cols.empty() ? 0 : static_cast<int>(cols[0].size());
  Matrix<F> m(rows, dim);
  for (int c = 0; c < dim; ++c) m.set_column(c, cols[static_cast<std::size_t>(c)]);
  std::vector<std::vector<F>> out;
  for (const auto& r : rels) {
    std::vector<F> rhs = flatten(r, order);
    if (dim == 0) {
      if (!std::all_of(rhs.begin(), rhs.end(), [](const F& v) { return is_zero(v); })) return std::nullopt;
      out.emplace_back();
      continue;
    }
    auto x = solve_consistent(m, rhs);
    if (!x) return std::nullopt;
    out.push_back(std::move(*x));
  }
  return out;
}

template <class F>
int span_dimension(const std::vector<AbelianRelation<F>>& rels, int order) {
  if (rels.empty()) return 0;
  std::vector<std::vector<F>> cols;
  for (const auto& r : rels) cols.push_back(flatten(r, order));
  Matrix<F> m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(static_cast<int>(c), cols[c]);
  return matrix_rank(m);
}

#define WEBRANK_INSTANTIATE_ABELIAN(F)                                                                       \
  template AbelianRelationSpace<F> abelian_relations(const PlanarWeb<F>&, int);                              \
  template RankReport rank_with_certificate(const PlanarWeb<F>&, const std::vector<int>&);                   \
  template RelationResiduals<F> verify_relation(const PlanarWeb<F>&, const AbelianRelation<F>&);             \
  template std::vector<F> flatten(const AbelianRelation<F>&, int);                                           \
  template std::optional<std::vector<std::vector<F>>> coordinates_in_basis(                                  \
      const AbelianRelationSpace<F>&, const std::vector<AbelianRelation<F>>&, int);                          \
  template int span_dimension(const std::vector<AbelianRelation<F>>&, int);

WEBRANK_INSTANTIATE_ABELIAN(Rational)
WEBRANK_INSTANTIATE_ABELIAN(BigFloat)

}  // namespace webrank
