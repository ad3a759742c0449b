#include <doctest.h>

#include <random>

#include "webrank/parser.hpp"
#include "webrank/symmetry.hpp"

using namespace webrank;

namespace {

using S = Series<Rational>;

PlanarWeb<Rational> web_of(std::vector<std::string> integrals, int x0, int y0, int order) {
  WebSpecDocument d;
  d.first_integrals = std::move(integrals);
  d.basepoint = {Rational(x0), Rational(y0)};
  d.order = order;
  return build_web<Rational>(d);
}

VectorField<Rational> field(const char* cx, const char* cy, int x0, int y0, int order) {
  return vector_field_from_polynomials<Rational>(parse_expression(cx), parse_expression(cy), {Rational(x0), Rational(y0)},
                                                 order);
}

AbelianRelation<Rational> exact_relation(const std::vector<std::string>& potentials, int x0, int y0, int order) {
  AbelianRelation<Rational> r;
  r.order = order;
  for (const auto& p : potentials)
    r.components.push_back(
        exterior_derivative(parse_expression(p).recentered<Rational>(Rational(x0), Rational(y0), order + 1)).truncated(order));
  return r;
}

bool has_eigenvalue(const LieOperator<Rational>& op, int v) {
  for (const auto& e : op.eigenvalues)
    if (e.rational && *e.rational == v) return true;
  return false;
}

}  // namespace

TEST_CASE("automorphism residuals") {
  auto hex = web_of({"x", "y", "x+y"}, 0, 0, 8);
  for (const auto& r : check_automorphism(hex, field("1", "1", 0, 0, 8))) {
    CHECK(r.preserved);
    CHECK(r.transverse);
  }
  auto five = web_of({"x", "y", "x+y", "x-y", "x^2+y^2"}, 1, 2, 8);
  for (const auto& r : check_automorphism(five, field("x", "y", 1, 2, 8))) {
    CHECK(r.preserved);
    CHECK(r.transverse);
  }
  auto rot = check_automorphism(five, field("-y", "x", 1, 2, 8));
  CHECK_FALSE(rot[0].preserved);

  // dx, dy, dy - u(x+y)dx with u(s) = s, around a point where x + y = 1
  S one = S::constant(Rational(1), 8), zero(8, {});
  S s = one + S::variable(0, 8) + S::variable(1, 8);
  std::vector<FoliationGerm<Rational>> fol{foliation_from_form(OneForm<Rational>{one, zero}, FoliationSource::OneForm),
                                           foliation_from_form(OneForm<Rational>{zero, one}, FoliationSource::OneForm),
                                           foliation_from_form(OneForm<Rational>{-s, one}, FoliationSource::OneForm)};
  auto cartan = make_web(std::move(fol), {Rational(0), Rational(0)}, 8);
  CHECK(check_automorphism(cartan, field("1", "-1", 0, 0, 8))[2].lie_wedge == 0);
}

TEST_CASE("canonical first integrals") {
  auto hex = web_of({"y", "x", "x+y"}, 0, 0, 6);
  auto x = field("1", "1", 0, 0, 6);
  CHECK((canonical_first_integral(hex, x, 0).u - S::variable(1, 7)).truncated(6).is_zero());
  auto u3 = canonical_first_integral(hex, x, 2).u;
  CHECK(u3.coeff(1, 0) == Rational(1, 2));
  CHECK(u3.coeff(0, 1) == Rational(1, 2));

  auto xw = web_of({"x", "y", "x+y"}, 1, 1, 6);
  auto radial = field("x", "y", 1, 1, 6);
  auto u = canonical_first_integral(xw, radial, 0).u;
  for (int i = 1; i <= 6; ++i) CHECK(u.coeff(i, 0) == Rational(i % 2 ? 1 : -1, i));
  auto lu = apply(radial, u);
  CHECK((lu - S::constant(Rational(1), lu.order())).is_zero());

  CHECK_THROWS_AS(canonical_first_integral(hex, field("1", "0", 0, 0, 6), 0), Error);
}

TEST_CASE("spectrum of the translation on the hexagonal web") {
  auto web = web_of({"x", "y", "x+y"}, 0, 0, 8);
  auto x = field("1", "1", 0, 0, 8);
  auto frame = symmetry_frame(web, x);
  auto space = abelian_relations(web, 8);
  auto op = lie_on_relations(frame, space);
  CHECK(op.matrix(0, 0) == 0);
  CHECK(op.zero_block_dim == 1);
  CHECK(op.nilpotent_zero_block);

  auto basis = structured_basis(frame, space);
  REQUIRE(basis.relations.size() == 1);
  const auto& rel = basis.relations[0];
  CHECK(rel.eigenvalue.is_zero());
  REQUIRE(rel.polys.size() == 3);
  CHECK(rel.polys[0][0] == rel.polys[1][0]);
  CHECK(rel.polys[2][0] == -2 * rel.polys[0][0]);

  auto bases = base_relations(frame);
  REQUIRE(bases.size() == 2);
  for (const auto& b : bases) {
    CHECK(b.g.degree() <= 0);
    CHECK(verify_relation(frame.combined, b.relation).passes);
    CHECK(lie_residual(frame.field, b.relation, AbelianRelation<Rational>{{}, b.relation.order}) == 0);
  }

  auto phi = phi_section(frame, rel);
  CHECK(verify_relation(frame.combined, phi).passes);
  CHECK(lie_residual(frame.field, phi, rel.expanded) == 0);
}

TEST_CASE("five-web with the radial field") {
  auto web = web_of({"x", "y", "x+y", "x-y", "x^2+y^2"}, 1, 2, 14);
  auto x = field("x", "y", 1, 2, 14);
  auto frame = symmetry_frame(web, x);
  auto space = abelian_relations(web, 14);
  auto basis = structured_basis(frame, space);
  const auto& op = basis.op;
  CHECK(has_eigenvalue(op, 1));
  CHECK(has_eigenvalue(op, 2));
  CHECK(op.zero_block_dim + op.nonzero_block_dim == 6);
  CHECK(basis.complete);
  CHECK(static_cast<int>(basis.relations.size()) == 6);
  CHECK(span_dimension(
            [&] {
              std::vector<AbelianRelation<Rational>> v;
              for (const auto& r : basis.relations) v.push_back(r.expanded);
              return v;
            }(),
            12) == 6);

  // oracle eigenvectors
  auto e1 = exact_relation({"x", "y", "-(x+y)", "0", "0"}, 1, 2, 12);
  auto e2 = exact_relation({"x^2", "y^2", "0", "0", "-(x^2+y^2)"}, 1, 2, 12);
  CHECK(verify_relation(web, e1).passes);
  CHECK(verify_relation(web, e2).passes);
  auto scaled = [](Rational c, AbelianRelation<Rational> r) {
    for (auto& comp : r.components) comp = c * comp;
    return r;
  };
  CHECK(lie_residual(frame.field, e1, scaled(1, e1)) == 0);
  CHECK(lie_residual(frame.field, e2, scaled(2, e2)) == 0);

  auto bases = base_relations(frame);
  CHECK(bases.size() == 4);
  for (const auto& b : bases) CHECK(verify_relation(frame.combined, b.relation).passes);

  for (const auto& r : basis.relations) {
    for (const auto& c : r.expanded.components) {
      auto img = lie_derivative(frame.field, c);
      auto expect = r.lambda * c;
      CHECK(r.degree == 0);
      CHECK((img.a - expect.a.truncated(img.order())).is_zero());
    }
  }
}

TEST_CASE("the characteristic polynomial does not depend on the basis") {
  auto web = web_of({"x", "y", "x+y", "x-y", "x^2+y^2"}, 1, 2, 12);
  auto frame = symmetry_frame(web, field("x", "y", 1, 2, 12));
  auto space = abelian_relations(web, 12);
  auto reference = lie_on_relations(frame, space).charpoly;

  std::mt19937 rng(29);
  std::uniform_int_distribution<int> d(-3, 3);
  const int n = static_cast<int>(space.basis.size());
  for (int t = 0; t < 3; ++t) {
    Matrix<Rational> change(n, n);
    do {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) change(i, j) = d(rng);
    } while (matrix_rank(change) < n);
    AbelianRelationSpace<Rational> mixed = space;
    for (int j = 0; j < n; ++j) {
      AbelianRelation<Rational> r{{}, space.basis[0].order};
      for (std::size_t c = 0; c < space.basis[0].components.size(); ++c) {
        OneForm<Rational> acc{Series<Rational>(r.order, {}), Series<Rational>(r.order, {})};
        for (int i = 0; i < n; ++i) acc = acc + change(i, j) * space.basis[static_cast<std::size_t>(i)].components[c];
        r.components.push_back(acc);
      }
      mixed.basis[static_cast<std::size_t>(j)] = r;
    }
    auto p = lie_on_relations(frame, mixed).charpoly;
    REQUIRE(p.degree() == reference.degree());
    for (int i = 0; i <= p.degree(); ++i) CHECK(p[i] == reference[i]);
  }
}

TEST_CASE("theorem 1 on translations and the radial five-web") {
  auto hex = web_of({"x", "y", "x+y"}, 0, 0, 10);
  auto rep = theorem1_check(hex, field("1", "1", 0, 0, 10), {8, 10});
  CHECK(rep.base.rank == 1);
  CHECK(rep.extended.rank == 3);
  CHECK(rep.holds);
  CHECK(rank_with_certificate(web_of({"x", "y", "x+y", "x-y"}, 0, 0, 10), {8, 10}).rank == 3);

  auto five = web_of({"x", "y", "x+y", "x-y", "x^2+y^2"}, 1, 2, 14);
  auto r5 = theorem1_check(five, field("x", "y", 1, 2, 14), {12, 14});
  CHECK(r5.base.rank == 6);
  CHECK(r5.extended.rank == 10);
  CHECK(r5.delta == 4);
  CHECK(r5.maximality_agrees);
}

TEST_CASE("symmetry frame errors") {
  auto five = web_of({"x", "y", "x+y", "x-y", "x^2+y^2"}, 1, 2, 8);
  auto kind = [&](const VectorField<Rational>& x) {
    try {
      symmetry_frame(five, x);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  CHECK(kind(field("-y", "x", 1, 2, 8)) == ErrorKind::Validation);
  CHECK(kind(field("x-1", "y-2", 1, 2, 8)) == ErrorKind::DegenerateBasepoint);
  CHECK(kind(field("x", "y", 1, 2, 4)) == ErrorKind::Validation);
}

TEST_CASE("float mode reproduces the exact spectrum") {
  PrecisionScope scope(256, 1e-30);
  WebSpecDocument d;
  d.first_integrals = {"x", "y", "x+y", "x-y", "x^2+y^2"};
  d.basepoint = {Rational(1), Rational(2)};
  d.order = 14;
  d.field.mode = FieldMode::BigFloat;
  auto web = build_web<BigFloat>(d);
  auto x = vector_field_from_polynomials<BigFloat>(parse_expression("x"), parse_expression("y"), d.basepoint, 14);
  auto basis = structured_basis(web, x);
  std::vector<std::string> texts;
  for (const auto& e : basis.op.eigenvalues) texts.push_back(e.text);
  CHECK(texts == std::vector<std::string>{"1", "2", "4", "6"});
  auto frame = symmetry_frame(web, x);
  for (const auto& r : basis.relations) CHECK(verify_relation(frame.web, r.expanded).passes);
}
