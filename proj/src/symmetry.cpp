#include "webrank/symmetry.hpp"

#include <algorithm>
#include <numeric>

#include "webrank/roots.hpp"

namespace webrank {

namespace {

template <class F>
VectorField<F> truncate_field(const VectorField<F>& x, int order) {
  return {x.cx.truncated(std::min(order, x.cx.order())), x.cy.truncated(std::min(order, x.cy.order()))};
}

template <class F>
OneForm<F> zero_form(int order, const Variables& vars) {
  return {Series<F>(order, vars), Series<F>(order, vars)};
}

/// G with G(0) = 0 and G(t) = b to the order of b.
template <class F>
UniPoly<F> solve_in_transverse(const Series<F>& t, const Series<F>& b) {
  const int n = std::min(t.order(), b.order());
  const int rows = term_count(n) - 1;
  Matrix<F> m(rows, n);
  Series<F> pw = t.truncated(n);
  const Series<F> base = pw;
  for (int e = 1; e <= n; ++e) {
    for (int d = 1; d <= n; ++d)
      for (int j = 0; j <= d; ++j) m(term_index(d - j, j) - 1, e - 1) = pw(d - j, j);
    if (e < n) pw = pw * base;
  }
  std::vector<F> rhs(static_cast<std::size_t>(rows));
  for (int d = 1; d <= n; ++d)
    for (int j = 0; j <= d; ++j) rhs[static_cast<std::size_t>(term_index(d - j, j) - 1)] = b(d - j, j);
  if (!is_zero(b.constant_term())) fail(ErrorKind::Internal, "potential does not vanish at the basepoint");
  auto sol = solve_consistent(m, rhs);
  if (!sol) fail(ErrorKind::Internal, "potential is not a function of the transverse coordinate");
  std::vector<F> coeffs(static_cast<std::size_t>(n) + 1, F(0));
  for (int e = 1; e <= n; ++e) coeffs[static_cast<std::size_t>(e)] = (*sol)[static_cast<std::size_t>(e - 1)];
  return UniPoly<F>(std::move(coeffs));
}

std::string complex_text(const BigFloat& re, const BigFloat& im) {
  std::string s = render_float(re, 20);
  if (im != 0) {
    std::string t = render_float(abs(im), 20);
    s += (im > 0 ? "+" : "-") + t + "i";
  }
  return s;
}

template <class F>
Matrix<F> power(const Matrix<F>& m, int n) {
  Matrix<F> r = Matrix<F>::identity(m.rows());
  for (int i = 0; i < n; ++i) r = r * m;
  return r;
}

template <class F>
void extract_spectrum(LieOperator<F>& op, std::vector<std::optional<F>>& values) {
  const int n = op.matrix.rows();
  if (n == 0) return;
  struct Entry {
    Eigenvalue e;
    std::optional<F> value;
  };
  std::vector<Entry> entries;
  if constexpr (FieldTraits<F>::exact) {
    std::vector<UniPoly<Rational>> parts = squarefree_decomposition(op.charpoly);
    for (std::size_t m = 0; m < parts.size(); ++m) {
      UniPoly<Rational> f = parts[m];
      if (f.degree() < 1) continue;
      for (const auto& [q, mult] : rational_roots(f)) {
        Eigenvalue e;
        e.rational = q;
        e.re = FieldTraits<Rational>::to_double(q);
        e.text = render_rational(q);
        e.multiplicity = static_cast<int>(m) + 1;
        entries.push_back({e, q});
        f = divmod(f, UniPoly<Rational>(std::vector<Rational>{-q, Rational(1)})).first;
      }
      if (f.degree() < 1) continue;
      PrecisionScope scope(256, 1e-30);
      std::vector<BigFloat> fc;
      for (int i = 0; i <= f.degree(); ++i) fc.push_back(from_rational<BigFloat>(f[i]));
      for (const ComplexRoot& r : complex_roots(UniPoly<BigFloat>(fc))) {
        Eigenvalue e;
        e.re = FieldTraits<BigFloat>::to_double(r.re);
        e.im = FieldTraits<BigFloat>::to_double(r.im);
        e.text = complex_text(r.re, abs(r.im) < BigFloat(1e-40) ? BigFloat(0) : r.im);
        e.multiplicity = static_cast<int>(m) + 1;
        e.factor = f;
        entries.push_back({e, std::nullopt});
      }
    }
  } else {
    std::vector<ComplexRoot> roots = complex_roots(op.charpoly);
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (used[i]) continue;
      std::vector<std::size_t> cluster{i};
      used[i] = true;
      // Multiple eigenvalues perturbed by rounding spread as a small circle.
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        if (used[j]) continue;
        BigFloat scale = std::max(BigFloat(1), BigFloat(abs(roots[i].re) + abs(roots[i].im)));
        BigFloat dist = abs(roots[j].re - roots[i].re) + abs(roots[j].im - roots[i].im);
        if (dist <= BigFloat(1e-6) * scale) {
          cluster.push_back(j);
          used[j] = true;
        }
      }
      BigFloat re(0), im(0);
      for (auto c : cluster) {
        re += roots[c].re;
        im += roots[c].im;
      }
      re /= static_cast<int>(cluster.size());
      im /= static_cast<int>(cluster.size());
      Eigenvalue e;
      e.multiplicity = static_cast<int>(cluster.size());
      std::optional<F> value;
      const BigFloat tol(1e-25);
      if (abs(im) <= tol * std::max(BigFloat(1), BigFloat(abs(re)))) {
        im = 0;
        value = re;
        if (auto q = recognize_rational(re, 10000, tol)) {
          e.rational = *q;
          value = from_rational<BigFloat>(*q);
          re = *value;
        }
      }
      e.re = FieldTraits<BigFloat>::to_double(re);
      e.im = FieldTraits<BigFloat>::to_double(im);
      e.text = e.rational ? render_rational(*e.rational) : complex_text(re, im);
      entries.push_back({e, value});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.e.re != b.e.re) return a.e.re < b.e.re;
    return a.e.im < b.e.im;
  });
  for (auto& en : entries) {
    op.eigenvalues.push_back(en.e);
    values.push_back(en.value);
  }
}

}  // namespace

template <class F>
std::vector<AutomorphismResidual<F>> check_automorphism(const PlanarWeb<F>& web, const VectorField<F>& x) {
  std::vector<AutomorphismResidual<F>> out;
  for (const auto& fol : web.foliations) {
    const OneForm<F>& w = fol.form;
    Series<F> lw = wedge(lie_derivative(x, w), w);
    AutomorphismResidual<F> r;
    r.lie_wedge = lw.max_abs();
    r.preserved = lw.is_zero();
    r.transverse = contract(x, w).is_unit();
    out.push_back(std::move(r));
  }
  return out;
}

template <class F>
CanonicalFirstIntegral<F> canonical_first_integral(const PlanarWeb<F>& web, const VectorField<F>& x, int i) {
  if (i < 0 || i >= web.size()) fail(ErrorKind::Validation, "foliation index out of range");
  const OneForm<F>& w = web.foliations[static_cast<std::size_t>(i)].form;
  Series<F> c = contract(x, w);
  if (!c.is_unit())
    fail(ErrorKind::Singularity, "automorphism not transverse to foliation " + std::to_string(i + 1) + " here");
  OneForm<F> eta = invert_unit(c) * w;
  return {potential_of_closed_form(eta), i};
}

template <class F>
SymmetryFrame<F> symmetry_frame(const PlanarWeb<F>& web, const VectorField<F>& x) {
  if (!(x.cx.variables() == web.vars) || !(x.cy.variables() == web.vars))
    fail(ErrorKind::Validation, "vector field and web use different variables");
  if (x.order() < web.order)
    fail(ErrorKind::Validation, "vector field is known only to order " + std::to_string(x.order()));
  if (x.vanishes_at_basepoint())
    fail(ErrorKind::DegenerateBasepoint, "automorphism vanishes at the basepoint; choose another basepoint");
  SymmetryFrame<F> frame;
  frame.web = web;
  frame.field = truncate_field(x, web.order);
  auto residuals = check_automorphism(web, frame.field);
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    if (!residuals[i].preserved)
      fail(ErrorKind::Validation, "vector field does not preserve foliation " + std::to_string(i + 1));
    if (!residuals[i].transverse)
      fail(ErrorKind::Singularity, "automorphism not transverse to foliation " + std::to_string(i + 1) + " here");
  }
  for (int i = 0; i < web.size(); ++i) frame.integrals.push_back(canonical_first_integral(web, frame.field, i));
  frame.combined = adjoin(web, foliation_of_field(frame.field));
  frame.transverse = first_integral(frame.combined.foliations.back());
  return frame;
}

template <class F>
LieOperator<F> lie_on_relations(const SymmetryFrame<F>& frame, const AbelianRelationSpace<F>& space) {
  LieOperator<F> op;
  const int dim = static_cast<int>(space.basis.size());
  op.matrix = Matrix<F>(dim, dim);
  op.charpoly = UniPoly<F>(std::vector<F>{F(1)});
  op.nilpotent_zero_block = true;
  if (dim == 0) return op;
  const int m = space.basis.front().order;
  if (m < 1 || m > frame.web.order) fail(ErrorKind::Validation, "relation space order does not fit the web");
  if (span_dimension(space.basis, m - 1) != dim)
    fail(ErrorKind::Internal, "basis degenerates at order " + std::to_string(m - 1) + "; raise the jet order");
  std::vector<AbelianRelation<F>> images;
  for (const auto& rel : space.basis) {
    AbelianRelation<F> img;
    img.order = m - 1;
    for (const auto& c : rel.components) img.components.push_back(lie_derivative(frame.field, c).truncated(m - 1));
    images.push_back(std::move(img));
  }
  auto coords = coordinates_in_basis(space, images, m - 1);
  if (!coords) fail(ErrorKind::Internal, "image of L_X is not in the span of the abelian relations");
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) op.matrix(r, c) = (*coords)[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
  op.charpoly = characteristic_polynomial(op.matrix);
  std::vector<std::optional<F>> values;
  extract_spectrum(op, values);
  for (const auto& e : op.eigenvalues)
    if (e.is_zero()) op.zero_block_dim += e.multiplicity;
  op.nonzero_block_dim = dim - op.zero_block_dim;

  KernelResult<F> gen = kernel(power(op.matrix, dim));
  const int z = static_cast<int>(gen.basis.size());
  if (z != op.zero_block_dim)
    fail(ErrorKind::Internal, "generalized 0-eigenspace has dimension " + std::to_string(z) + ", expected " +
                                  std::to_string(op.zero_block_dim));
  op.nilpotent_zero_block = z == 0;
  if (z > 0) {
    Matrix<F> basis(dim, z);
    for (int c = 0; c < z; ++c) basis.set_column(c, gen.basis[static_cast<std::size_t>(c)]);
    Matrix<F> image = op.matrix * basis;
    Matrix<F> restricted(z, z);
    for (int c = 0; c < z; ++c) {
      auto col = solve_consistent(basis, image.column(c));
      if (!col) fail(ErrorKind::Internal, "generalized 0-eigenspace is not invariant");
      restricted.set_column(c, *col);
    }
    Matrix<F> p = restricted;
    for (int e = 1; e <= z; ++e) {
      if (p.is_zero()) {
        op.nilpotency_index = e;
        op.nilpotent_zero_block = true;
        break;
      }
      p = p * restricted;
    }
  }
  return op;
}

template <class F>
LieOperator<F> lie_on_relations(const PlanarWeb<F>& web, const VectorField<F>& x, const AbelianRelationSpace<F>& space) {
  return lie_on_relations(symmetry_frame(web, x), space);
}

template <class F>
std::string StructuredRelation<F>::text() const {
  std::string out;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].is_zero_poly()) continue;
    const std::string u = "u" + std::to_string(i + 1);
    std::string term = "(" + render_poly(polys[i], u) + ")";
    if (!eigenvalue.is_zero()) term += "*exp(" + eigenvalue.text + "*" + u + ")";
    term += "*d" + u;
    out += out.empty() ? term : " + " + term;
  }
  return (out.empty() ? "0" : out) + " = 0";
}

template <class F>
StructuredBasis<F> structured_basis(const SymmetryFrame<F>& frame, const AbelianRelationSpace<F>& space) {
  StructuredBasis<F> out;
  out.op = lie_on_relations(frame, space);
  // Recover representable eigenvalues in the working field.
  const int n = frame.web.order;
  const int k = frame.web.size();
  const Variables& vars = frame.web.vars;

  for (const Eigenvalue& ev : out.op.eigenvalues) {
    std::optional<F> lambda;
    if (ev.rational) {
      lambda = from_rational<F>(*ev.rational);
    } else if constexpr (!FieldTraits<F>::exact) {
      if (ev.is_real()) {
        // Refine from the characteristic polynomial by Newton steps.
        F t(ev.re);
        UniPoly<F> dp = out.op.charpoly.derivative();
        for (int it = 0; it < 200; ++it) {
          F d = dp(t);
          if (d == 0) break;
          F step = out.op.charpoly(t) / d;
          t -= step;
          if (abs(step) <= F(1e-60)) break;
        }
        lambda = t;
      }
    }
    if (!lambda) {
      out.complete = false;
      continue;
    }
    const int sigma = ev.multiplicity;
    const int per = sigma + 1;
    std::vector<OneForm<F>> columns;
    UniPoly<F> ex = exp_series(*lambda, n + 1);
    for (int i = 0; i < k; ++i) {
      const Series<F>& u = frame.integrals[static_cast<std::size_t>(i)].u;
      OneForm<F> du = exterior_derivative(u);
      UniPoly<F> mono = ex;
      for (int d = 0; d <= sigma; ++d) {
        columns.push_back(compose(mono.truncated(n + 1), u) * du);
        mono = (UniPoly<F>::monomial(F(1), 1) * mono).truncated(n + 1);
      }
    }
    const int tc = term_count(n);
    Matrix<F> sys(2 * tc, k * per);
    for (int c = 0; c < k * per; ++c) {
      const OneForm<F>& w = columns[static_cast<std::size_t>(c)];
      for (int d = 0; d <= n; ++d)
        for (int j = 0; j <= d; ++j) {
          sys(term_index(d - j, j), c) = w.a.coeff(d - j, j);
          sys(tc + term_index(d - j, j), c) = w.b.coeff(d - j, j);
        }
    }
    KernelResult<F> ker = kernel(sys);
    if (static_cast<int>(ker.basis.size()) != sigma)
      fail(ErrorKind::Internal, "eigenvalue " + ev.text + " yields " + std::to_string(ker.basis.size()) +
                                    " structured relations, expected " + std::to_string(sigma));

    // Reduced echelon form with columns ordered by (degree descending, foliation).
    std::vector<int> order;
    for (int d = sigma; d >= 0; --d)
      for (int i = 0; i < k; ++i) order.push_back(i * per + d);
    const int rows = sigma;
    Matrix<F> e(rows, k * per);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < k * per; ++c) e(r, c) = ker.basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(order[static_cast<std::size_t>(c)])];
    std::vector<int> pivots;
    int prow = 0;
    for (int c = 0; c < k * per && prow < rows; ++c) {
      int best = prow;
      for (int r = prow + 1; r < rows; ++r)
        if (abs(e(r, c)) > abs(e(best, c))) best = r;
      if (is_zero(e(best, c))) continue;
      for (int cc = 0; cc < k * per; ++cc) std::swap(e(prow, cc), e(best, cc));
      F inv = F(1) / e(prow, c);
      for (int cc = 0; cc < k * per; ++cc) e(prow, cc) *= inv;
      for (int r = 0; r < rows; ++r) {
        if (r == prow || e(r, c) == 0) continue;
        F f = e(r, c);
        for (int cc = 0; cc < k * per; ++cc) e(r, cc) -= f * e(prow, cc);
      }
      pivots.push_back(c);
      ++prow;
    }
    int max_deg = 0;
    for (int r = rows - 1; r >= 0; --r) {
      StructuredRelation<F> rel;
      rel.eigenvalue = ev;
      rel.lambda = *lambda;
      rel.expanded.order = n;
      for (int i = 0; i < k; ++i) {
        std::vector<F> coeffs(static_cast<std::size_t>(per), F(0));
        OneForm<F> comp = zero_form<F>(n, vars);
        for (int d = 0; d <= sigma; ++d) {
          const int col = i * per + d;
          const int pos = static_cast<int>(std::find(order.begin(), order.end(), col) - order.begin());
          F v = e(r, pos);
          if (is_zero(v)) v = F(0);
          coeffs[static_cast<std::size_t>(d)] = v;
          if (v != 0) comp = comp + v * columns[static_cast<std::size_t>(col)];
        }
        UniPoly<F> p(std::move(coeffs));
        p.trim();
        rel.degree = std::max(rel.degree, p.degree());
        rel.polys.push_back(std::move(p));
        rel.expanded.components.push_back(comp.truncated(n));
      }
      max_deg = std::max(max_deg, rel.degree);
      out.relations.push_back(std::move(rel));
    }
    out.max_degree[ev.text] = max_deg;
  }
  return out;
}

template <class F>
StructuredBasis<F> structured_basis(const PlanarWeb<F>& web, const VectorField<F>& x) {
  SymmetryFrame<F> frame = symmetry_frame(web, x);
  return structured_basis(frame, abelian_relations(web, web.order));
}

template <class F>
std::vector<BaseRelation<F>> base_relations(const SymmetryFrame<F>& frame) {
  std::vector<BaseRelation<F>> out;
  const int k = frame.web.size();
  const int n = frame.combined.order;
  const Variables& vars = frame.web.vars;
  const Series<F>& u1 = frame.integrals.front().u;
  for (int j = 1; j < k; ++j) {
    const Series<F>& uj = frame.integrals[static_cast<std::size_t>(j)].u;
    UniPoly<F> big_g = solve_in_transverse(frame.transverse, u1 - uj);
    BaseRelation<F> br;
    br.j = j + 1;
    br.g = big_g.derivative();
    br.relation.order = n;
    for (int i = 0; i <= k; ++i) br.relation.components.push_back(zero_form<F>(n, vars));
    br.relation.components[0] = exterior_derivative(u1).truncated(n);
    br.relation.components[static_cast<std::size_t>(j)] = (F(-1) * exterior_derivative(uj)).truncated(n);
    br.relation.components[static_cast<std::size_t>(k)] =
        (F(-1) * exterior_derivative(compose(big_g, frame.transverse))).truncated(n);
    out.push_back(std::move(br));
  }
  return out;
}

template <class F>
std::vector<BaseRelation<F>> base_relations(const PlanarWeb<F>& web, const VectorField<F>& x) {
  return base_relations(symmetry_frame(web, x));
}

template <class F>
AbelianRelation<F> phi_section(const SymmetryFrame<F>& frame, const StructuredRelation<F>& rel) {
  if (!rel.eigenvalue.is_zero()) fail(ErrorKind::Domain, "relation is not in the generalized 0-eigenspace");
  const int k = frame.web.size();
  if (static_cast<int>(rel.polys.size()) != k) fail(ErrorKind::Validation, "relation does not match the web");
  const int n = frame.combined.order;
  AbelianRelation<F> out;
  out.order = n;
  std::optional<Series<F>> potential;
  for (int i = 0; i < k; ++i) {
    const Series<F>& u = frame.integrals[static_cast<std::size_t>(i)].u;
    UniPoly<F> q = rel.polys[static_cast<std::size_t>(i)].integral();
    Series<F> r = compose(q.integral(), u);
    potential = potential ? *potential + r : r;
    out.components.push_back((compose(q, u) * exterior_derivative(u)).truncated(n));
  }
  UniPoly<F> big_g = solve_in_transverse(frame.transverse, *potential);
  out.components.push_back((F(-1) * exterior_derivative(compose(big_g, frame.transverse))).truncated(n));
  return out;
}

template <class F>
F lie_residual(const VectorField<F>& x, const AbelianRelation<F>& eta, const AbelianRelation<F>& rho) {
  const int n = std::min(eta.order - 1, rho.order);
  F worst(0);
  for (std::size_t i = 0; i < eta.components.size(); ++i) {
    OneForm<F> l = lie_derivative(x, eta.components[i]).truncated(n);
    if (i < rho.components.size()) l = l - rho.components[i].truncated(n);
    worst = std::max(worst, std::max(l.a.max_abs(), l.b.max_abs()));
  }
  return worst;
}

template <class F>
Theorem1Report theorem1_check(const PlanarWeb<F>& web, const VectorField<F>& x, const std::vector<int>& orders) {
  SymmetryFrame<F> frame = symmetry_frame(web, x);
  Theorem1Report rep;
  rep.base = rank_with_certificate(web, orders);
  rep.extended = rank_with_certificate(frame.combined, orders);
  rep.delta = rep.extended.rank - rep.base.rank;
  rep.expected_delta = web.size() - 1;
  rep.holds = rep.delta == rep.expected_delta;
  rep.maximality_agrees = rep.base.is_maximal == rep.extended.is_maximal;
  return rep;
}

#define WEBRANK_INSTANTIATE_SYMMETRY(F)                                                                         \
  template std::vector<AutomorphismResidual<F>> check_automorphism(const PlanarWeb<F>&, const VectorField<F>&); \
  template CanonicalFirstIntegral<F> canonical_first_integral(const PlanarWeb<F>&, const VectorField<F>&, int); \
  template SymmetryFrame<F> symmetry_frame(const PlanarWeb<F>&, const VectorField<F>&);                         \
  template LieOperator<F> lie_on_relations(const SymmetryFrame<F>&, const AbelianRelationSpace<F>&);            \
  template LieOperator<F> lie_on_relations(const PlanarWeb<F>&, const VectorField<F>&,                          \
                                           const AbelianRelationSpace<F>&);                                     \
  template struct StructuredRelation<F>;                                                                        \
  template StructuredBasis<F> structured_basis(const SymmetryFrame<F>&, const AbelianRelationSpace<F>&);        \
  template StructuredBasis<F> structured_basis(const PlanarWeb<F>&, const VectorField<F>&);                     \
  template std::vector<BaseRelation<F>> base_relations(const SymmetryFrame<F>&);                                \
  template std::vector<BaseRelation<F>> base_relations(const PlanarWeb<F>&, const VectorField<F>&);             \
  template AbelianRelation<F> phi_section(const SymmetryFrame<F>&, const StructuredRelation<F>&);               \
  template F lie_residual(const VectorField<F>&, const AbelianRelation<F>&, const AbelianRelation<F>&);         \
  template Theorem1Report theorem1_check(const PlanarWeb<F>&, const VectorField<F>&, const std::vector<int>&);

WEBRANK_INSTANTIATE_SYMMETRY(Rational)
WEBRANK_INSTANTIATE_SYMMETRY(BigFloat)

}  // namespace webrank
