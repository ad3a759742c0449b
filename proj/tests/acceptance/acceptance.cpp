#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "webrank/curves.hpp"
#include "webrank/parser.hpp"
#include "webrank/symmetry.hpp"

using namespace webrank;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <class F>
using Web = PlanarWeb<F>;

Web<Rational> exact_web(std::vector<std::string> integrals, int x0, int y0, int order) {
  WebSpecDocument d;
  d.first_integrals = std::move(integrals);
  d.basepoint = {Rational(x0), Rational(y0)};
  d.order = order;
  return build_web<Rational>(d);
}

VectorField<Rational> exact_field(const char* cx, const char* cy, int x0, int y0, int order) {
  return vector_field_from_polynomials<Rational>(parse_expression(cx), parse_expression(cy), {Rational(x0), Rational(y0)},
                                                 order);
}

CurveFamilyParams family(std::array<int, 3> eps, int k, int a, int b, std::vector<int> lambdas) {
  CurveFamilyParams p;
  p.eps = eps;
  p.k = k;
  p.a = a;
  p.b = b;
  p.lambdas.clear();
  for (int l : lambdas) p.lambdas.push_back(Rational(l));
  return p;
}

CoefficientField float256() {
  CoefficientField f;
  f.mode = FieldMode::BigFloat;
  f.precision_bits = 256;
  f.rank_gap_tolerance = 1e-30;
  return f;
}

struct Member {
  std::string name;
  CurveFamilyParams params;
};

const std::vector<Member>& members() {
  static const std::vector<Member> m{
      {"d=4 lambda=(1,2)", family({0, 0, 0}, 2, 2, 1, {1, 2})},
      {"d=4 lambda=(1,3)", family({0, 0, 0}, 2, 2, 1, {1, 3})},
      {"d=5 eps1=1", family({1, 0, 0}, 2, 2, 1, {1, 2})},
      {"d=6 k=3 a=2", family({0, 0, 0}, 3, 2, 1, {1, 2, 3})},
  };
  return m;
}

DualWebPackage<BigFloat> member_package(const CurveFamilyParams& p, std::uint64_t seed = 1) {
  ProjectiveCurve c = build_curve(p);
  DualWebOptions o;
  o.order = 2 * (c.degree + 1) + 2;
  o.seed = seed;
  o.weights = action_weights(p).weights;
  return dual_web<BigFloat>(c, o);
}

struct MemberRanks {
  RankReport base, extended;
  std::vector<bool> linear;
  bool fx_linear = true;
};

std::vector<MemberRanks>& member_ranks() {
  static std::vector<MemberRanks> cache;
  if (cache.empty())
    for (const auto& m : members()) {
      auto pkg = member_package(m.params);
      const int k = pkg.web.size();
      cache.push_back({rank_with_certificate(pkg.web, default_orders(k)),
                       rank_with_certificate(*pkg.combined, default_orders(k + 1)), linearity_check(pkg.web),
                       is_linear(pkg.combined->foliations.back())});
    }
  return cache;
}

Outcome criterion1() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5), deg(0, 6);
  int hexagonal = 0, agree = 0, constant = 0;
  for (int t = 0; t < 20; ++t) {
    const int n = 8;
    Series<Rational> s = Series<Rational>::variable(0, n) + Series<Rational>::variable(1, n);
    Series<Rational> u(n, {}), pw = Series<Rational>::constant(Rational(1), n);
    const int d = deg(rng);
    int top = 0;
    for (int i = 0; i <= d; ++i) {
      Rational c(num(rng), den(rng));
      // u(0) must avoid 0 (tangent to dy) and -1
      if (i == 0 && (c == 0 || c == -1)) c = Rational(1, 2);
      if (c != 0) top = i;
      u += c * pw;
      pw = pw * s;
    }
    Series<Rational> one = Series<Rational>::constant(Rational(1), n), zero(n, {});
    std::vector<FoliationGerm<Rational>> fol{foliation_from_form(OneForm<Rational>{one, zero}, FoliationSource::OneForm),
                                             foliation_from_form(OneForm<Rational>{zero, one}, FoliationSource::OneForm),
                                             foliation_from_form(OneForm<Rational>{-u, one}, FoliationSource::OneForm)};
    auto web = make_web(std::move(fol), {Rational(0), Rational(0)}, n);
    const int r = rank_with_certificate(web, default_orders(3)).rank;
    // curvature (log u)'' vanishes identically iff the polynomial u is constant
    const bool flat = top == 0;
    constant += flat ? 1 : 0;
    hexagonal += r == 1 ? 1 : 0;
    agree += (r == 1) == flat ? 1 : 0;
  }
  return {hexagonal == 20, std::to_string(hexagonal) + "/20 random webs of rank 1 (" + std::to_string(constant) +
                               " with constant u); rank agrees with the curvature test on " + std::to_string(agree) +
                               "/20"};
}

Outcome criterion2() {
  auto rep = rank_with_certificate(exact_web({"x", "y", "x+y", "x-y", "x^2+y^2"}, 1, 2, 12), {10, 12});
  return {rep.rank == 6 && rep.bol_bound == 6 && rep.stabilized && rep.kernel_dims.at(10) == 6,
          "rank " + std::to_string(rep.rank) + ", bound " + std::to_string(rep.bol_bound) + ", dims (10,12) = (" +
              std::to_string(rep.kernel_dims.at(10)) + "," + std::to_string(rep.kernel_dims.at(12)) + ")"};
}

Outcome criterion3() {
  auto web = exact_web({"x", "y", "x+y", "x-y", "x^2+y^2"}, 1, 2, 14);
  auto x = exact_field("x", "y", 1, 2, 14);
  auto six = adjoin(web, foliation_of_field(x));
  auto rep = rank_with_certificate(six, default_orders(6));
  auto t = theorem1_check(web, x, default_orders(6));
  return {rep.rank == 10 && rep.is_maximal && t.delta == 4 && t.holds,
          "rank with radial foliation " + std::to_string(rep.rank) + ", delta " + std::to_string(t.delta)};
}

Outcome criterion4() {
  auto web = exact_web({"x", "y", "x+y"}, 0, 0, 10);
  auto t = theorem1_check(web, exact_field("1", "1", 0, 0, 10), {8, 10});
  auto four = rank_with_certificate(exact_web({"x", "y", "x+y", "x-y"}, 0, 0, 10), {8, 10});
  return {t.base.rank == 1 && t.extended.rank == 3 && four.rank == 3 && t.holds,
          std::to_string(t.base.rank) + " + " + std::to_string(t.delta) + " = " + std::to_string(t.extended.rank) +
              ", rank {x,y,x+y,x-y} = " + std::to_string(four.rank)};
}

Outcome member_criterion(std::size_t first, std::size_t last) {
  PrecisionScope scope(float256());
  bool ok = true;
  std::ostringstream d;
  for (std::size_t i = first; i <= last; ++i) {
    const auto& m = member_ranks()[i];
    const int deg = build_curve(members()[i].params).degree;
    const bool gap_ok = m.base.gap.value_or(1e300) >= kMinGapRatio && m.extended.gap.value_or(1e300) >= kMinGapRatio;
    ok = ok && m.base.rank == bol_bound(deg) && m.extended.rank == bol_bound(deg + 1) && gap_ok;
    d << (i == first ? "" : "; ") << members()[i].name << ": " << m.base.rank << " -> " << m.extended.rank;
    if (m.base.gap) d << " (gap " << *m.base.gap << ")";
  }
  return {ok, d.str()};
}

Outcome criterion7() {
  bool formula_ok = true, brute_ok = true;
  std::ostringstream d;
  for (int deg = 4; deg <= 20; ++deg) {
    const int count = static_cast<int>(enumerate_families(deg).size());
    int brute = 0;
    for (int mask = 0; mask < 8; ++mask) {
      const int e1 = mask & 1, e2 = (mask >> 1) & 1, e3 = (mask >> 2) & 1;
      const int rest = deg - e1 - e2 - e3;
      for (int a = 2; a <= rest; ++a)
        for (int b = 1; 2 * b <= a; ++b)
          if (rest % a == 0 && std::gcd(a, b) == 1 && !(a == 2 && e2 < e3)) ++brute;
    }
    brute_ok = brute_ok && brute == count;
    if (count != 4 * deg - 10) {
      if (formula_ok) d << "enumerated vs 4d-10:";
      d << " d=" << deg << " " << count << "/" << 4 * deg - 10;
      formula_ok = false;
    }
  }
  d << (brute_ok ? "; brute force agrees with the enumeration" : "; brute force disagrees");
  return {formula_ok && brute_ok, d.str()};
}

Outcome criterion8() {
  int checked = 0, ok = 0;
  for (int deg = 4; deg <= 10; ++deg)
    for (const auto& t : enumerate_families(deg)) {
      std::vector<int> l(static_cast<std::size_t>(t.k));
      std::iota(l.begin(), l.end(), 1);
      auto p = family(t.eps, t.k, t.a, t.b, l);
      auto w = action_weights(p);
      ++checked;
      if (weighted_degree(build_curve(p).f, w.weights) == std::optional<int>(w.m)) ++ok;
    }
  return {ok == checked, std::to_string(ok) + "/" + std::to_string(checked) + " tuples invariant"};
}

template <class F>
std::string contract(const PlanarWeb<F>& web, const VectorField<F>& x, int order, bool& ok) {
  auto frame = symmetry_frame(web, x);
  F worst = 0;
  auto track = [&](const F& v) {
    if (abs(v) > worst) worst = abs(v);
  };
  for (const auto& ci : frame.integrals) {
    auto lu = apply(frame.field, ci.u);
    track((lu - Series<F>::constant(F(1), lu.order(), lu.variables())).max_abs());
  }
  auto bases = base_relations(frame);
  bool verified = true;
  for (const auto& b : bases) {
    verified = verified && verify_relation(frame.combined, b.relation).passes;
    track(lie_residual(frame.field, b.relation, AbelianRelation<F>{{}, b.relation.order}));
  }
  auto space = abelian_relations(web, order);
  auto basis = structured_basis(frame, space);
  int phis = 0;
  for (const auto& rel : basis.relations) {
    if (!rel.eigenvalue.is_zero()) continue;
    auto phi = phi_section(frame, rel);
    verified = verified && verify_relation(frame.combined, phi).passes;
    track(lie_residual(frame.field, phi, rel.expanded));
    ++phis;
  }
  const bool exact = FieldTraits<F>::exact;
  const bool small = exact ? worst == 0 : worst < F("1e-30");
  ok = ok && verified && small && static_cast<int>(bases.size()) == web.size() - 1;
  std::ostringstream d;
  d << bases.size() << " base, " << phis << " phi, max residual " << FieldTraits<F>::to_double(worst);
  return d.str();
}

Outcome criterion9() {
  bool ok = true;
  std::ostringstream d;
  d << "hexagonal: " << contract(exact_web({"x", "y", "x+y"}, 0, 0, 8), exact_field("1", "1", 0, 0, 8), 8, ok);
  d << "; five-web: "
    << contract(exact_web({"x", "y", "x+y", "x-y", "x^2+y^2"}, 1, 2, 14), exact_field("x", "y", 1, 2, 14), 14, ok);
  PrecisionScope scope(float256());
  for (std::size_t i : {0u, 2u}) {
    auto pkg = member_package(members()[i].params);
    d << "; " << members()[i].name << ": " << contract(pkg.web, *pkg.fx_field, pkg.web.order, ok);
  }
  return {ok, d.str()};
}

Outcome criterion10() {
  const int n = 14;
  auto web = exact_web({"x", "y", "x+y", "x-y", "x^2+y^2"}, 1, 2, n);
  auto frame = symmetry_frame(web, exact_field("x", "y", 1, 2, n));
  auto space = abelian_relations(web, n);
  auto op = lie_on_relations(frame, space);
  bool has1 = false, has2 = false;
  for (const auto& e : op.eigenvalues) {
    has1 = has1 || (e.rational && *e.rational == 1);
    has2 = has2 || (e.rational && *e.rational == 2);
  }
  auto relation = [&](std::vector<std::string> potentials) {
    AbelianRelation<Rational> r{{}, n - 1};
    for (const auto& p : potentials)
      r.components.push_back(
          exterior_derivative(parse_expression(p).recentered<Rational>(Rational(1), Rational(2), n)).truncated(n - 1));
    return r;
  };
  auto scaled = [](const AbelianRelation<Rational>& r, int c) {
    AbelianRelation<Rational> s = r;
    for (auto& comp : s.components) comp = Rational(c) * comp;
    return s;
  };
  auto r1 = relation({"x", "y", "-(x+y)", "0", "0"});
  auto r2 = relation({"x^2", "y^2", "0", "0", "-(x^2+y^2)"});
  const bool valid = verify_relation(web, r1).passes && verify_relation(web, r2).passes &&
                     coordinates_in_basis(space, {r1, r2}, n - 2).has_value();
  const bool eigen = lie_residual(frame.field, r1, scaled(r1, 1)) == 0 && lie_residual(frame.field, r2, scaled(r2, 2)) == 0;
  std::string spectrum;
  for (const auto& e : op.eigenvalues) spectrum += (spectrum.empty() ? "" : ",") + e.text + "^" + std::to_string(e.multiplicity);
  return {has1 && has2 && valid && eigen, "spectrum {" + spectrum + "}, witnesses " + (valid && eigen ? "verified" : "rejected")};
}

Outcome criterion11() {
  PrecisionScope scope(float256());
  bool ok = true;
  std::ostringstream d;
  struct Case {
    std::string name;
    ProjectiveCurve curve;
  };
  std::vector<Case> cases{{"cubic", {parse_expression("y^2*z-x^3-x*z^2+z^3", true), 3}},
                          {"d=4 member", build_curve(members()[0].params)}};
  for (const auto& c : cases) {
    std::vector<std::array<Rational, 2>> seen;
    for (std::uint64_t seed : {1u, 2u}) {
      DualWebOptions o;
      o.order = 2 * c.curve.degree + 4;
      o.seed = seed;
      o.regular_adjoints = true;
      auto pkg = dual_web<BigFloat>(c.curve, o);
      seen.push_back(pkg.basepoint);
      std::vector<AbelianRelation<BigFloat>> rels;
      BigFloat worst = 0;
      for (const auto& a : adjoint_basis(c.curve.degree)) {
        auto tr = verify_trace(c.curve, a, pkg);
        if (tr.residual > worst) worst = tr.residual;
        rels.push_back(tr.relation);
      }
      const int n = pkg.web.order - 1;
      const int span = span_dimension(rels, n);
      const int rank = rank_with_certificate(pkg.web, default_orders(pkg.web.size())).rank;
      auto space = abelian_relations(pkg.web, n);
      const bool inside = coordinates_in_basis(space, rels, n).has_value();
      ok = ok && worst < BigFloat("1e-30") && span == bol_bound(c.curve.degree) && span == rank && inside;
      d << (d.tellp() ? "; " : "") << c.name << " at " << render_rational(pkg.basepoint[0]) << ","
        << render_rational(pkg.basepoint[1]) << ": residual " << worst.convert_to<double>() << ", span " << span << "/"
        << rank;
    }
    ok = ok && seen[0] != seen[1];
  }
  return {ok, d.str()};
}

Outcome criterion12() {
  bool ok = true;
  std::ostringstream d;
  for (std::size_t i = 0; i < members().size(); ++i) {
    const auto& m = member_ranks()[i];
    const bool all = std::all_of(m.linear.begin(), m.linear.end(), [](bool b) { return b; });
    ok = ok && all && !m.fx_linear;
    d << (i ? "; " : "") << members()[i].name << ": W_C linear " << (all ? "yes" : "no") << ", F_X linear "
      << (m.fx_linear ? "yes" : "no");
  }
  return {ok, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1},
      {2, criterion2},
      {3, criterion3},
      {4, criterion4},
      {5, [] { return member_criterion(0, 1); }},
      {6, [] { return member_criterion(2, 3); }},
      {7, criterion7},
      {8, criterion8},
      {9, criterion9},
      {10, criterion10},
      {11, criterion11},
      {12, criterion12},
  };
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d: %s  %s [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
