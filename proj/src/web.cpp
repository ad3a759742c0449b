#include "webrank/web.hpp"

#include "webrank/parser.hpp"

namespace webrank {

template <class F>
Series<F> transpose(const Series<F>& s) {
  Series<F> r(s.order(), s.variables());
  for (int d = 0; d <= s.order(); ++d)
    for (int j = 0; j <= d; ++j) r(j, d - j) = s(d - j, j);
  return r;
}

template <class F>
FoliationGerm<F> foliation_from_form(OneForm<F> form, FoliationSource source) {
  require_same_variables(form.a, form.b);
  if (!form.regular_at_basepoint())
    fail(ErrorKind::Regularity, "defining 1-form vanishes at the basepoint");
  FoliationGerm<F> g;
  if (form.b.is_unit()) {
    g.slope = -(form.a * invert_unit(form.b));
    g.vertical = false;
  } else {
    g.slope = -(form.b * invert_unit(form.a));
    g.vertical = true;
  }
  g.form = std::move(form);
  g.source = source;
  return g;
}

template <class F>
FoliationGerm<F> foliation_from_slope(const Series<F>& slope, bool vertical) {
  const Series<F> one = Series<F>::constant(F(1), slope.order(), slope.variables());
  FoliationGerm<F> g;
  g.form = vertical ? OneForm<F>{one, -slope} : OneForm<F>{-slope, one};
  g.slope = slope;
  g.vertical = vertical;
  g.source = FoliationSource::Slope;
  return g;
}

template <class F>
FoliationGerm<F> foliation_from_first_integral(const Polynomial& p, const std::array<Rational, 2>& basepoint,
                                               int order, const Variables& vars) {
  Series<F> u = p.recentered<F>(basepoint[0], basepoint[1], order + 1, vars);
  OneForm<F> du = exterior_derivative(u);
  if (!du.regular_at_basepoint())
    fail(ErrorKind::Regularity, "first integral " + p.str() + " is not a submersion at the basepoint");
  return foliation_from_form(std::move(du), FoliationSource::FirstIntegral);
}

template <class F>
FoliationGerm<F> foliation_of_field(const VectorField<F>& x) {
  if (x.vanishes_at_basepoint()) fail(ErrorKind::Singularity, "vector field vanishes at the basepoint");
  return foliation_from_form(annihilator(x), FoliationSource::VectorField);
}

template <class F>
PlanarWeb<F> make_web(std::vector<FoliationGerm<F>> foliations, const std::array<Rational, 2>& basepoint, int order,
                      const Variables& vars) {
  if (foliations.empty()) fail(ErrorKind::Validation, "a web needs at least one foliation");
  for (std::size_t i = 0; i < foliations.size(); ++i) {
    if (foliations[i].order() < order)
      fail(ErrorKind::Validation, "foliation " + std::to_string(i + 1) + " is known only to order " +
                                      std::to_string(foliations[i].order()));
    if (!(foliations[i].form.a.variables() == vars))
      fail(ErrorKind::Validation, "foliation " + std::to_string(i + 1) + " uses different variables");
  }
  for (std::size_t i = 0; i < foliations.size(); ++i) {
    for (std::size_t j = i + 1; j < foliations.size(); ++j) {
      const auto& wi = foliations[i].form;
      const auto& wj = foliations[j].form;
      F det = wi.a.constant_term() * wj.b.constant_term() - wi.b.constant_term() * wj.a.constant_term();
      if (is_zero(det))
        fail(ErrorKind::NotAWeb, "foliations " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                     " tangent at basepoint");
    }
  }
  PlanarWeb<F> web;
  for (auto& f : foliations) {
    if (f.order() > order) {
      f.form = f.form.truncated(order);
      f.slope = f.slope.truncated(std::min(order, f.slope.order()));
    }
  }
  web.foliations = std::move(foliations);
  web.basepoint = basepoint;
  web.order = order;
  web.vars = vars;
  return web;
}

template <class F>
PlanarWeb<F> build_web(const WebSpecDocument& doc) {
  const int k = doc.foliation_count();
  const int order = doc.order.value_or(default_web_order(k));
  if (order < 2) fail(ErrorKind::Validation, "jet order must be at least 2");
  const Variables vars;
  std::vector<FoliationGerm<F>> fols;
  int index = 0;
  for (const auto& text : doc.first_integrals) {
    ++index;
    Polynomial p = parse_expression(text);
    try {
      fols.push_back(foliation_from_first_integral<F>(p, doc.basepoint, order, vars));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Regularity) throw;
      fail(ErrorKind::Regularity, "foliation " + std::to_string(index) + ": first integral " + text +
                                      " is not a submersion at the basepoint");
    }
  }
  for (const auto& [ta, tb] : doc.forms) {
    ++index;
    Polynomial a = parse_expression(ta);
    Polynomial b = parse_expression(tb);
    OneForm<F> w{a.recentered<F>(doc.basepoint[0], doc.basepoint[1], order, vars),
                 b.recentered<F>(doc.basepoint[0], doc.basepoint[1], order, vars)};
    if (!w.regular_at_basepoint())
      fail(ErrorKind::Regularity, "foliation " + std::to_string(index) + ": 1-form vanishes at the basepoint");
    fols.push_back(foliation_from_form(std::move(w), FoliationSource::OneForm));
  }
  for (const auto& table : doc.slopes) {
    ++index;
    Series<F> s(order, vars);
    for (const auto& [i, j, c] : table.terms) {
      if (i < 0 || j < 0) fail(ErrorKind::Validation, "negative exponent in slope table");
      if (i + j <= order) s(i, j) += from_rational<F>(c);
    }
    fols.push_back(foliation_from_slope(s, table.vertical));
  }
  return make_web(std::move(fols), doc.basepoint, order, vars);
}

template <class F>
PlanarWeb<F> adjoin(const PlanarWeb<F>& web, const FoliationGerm<F>& extra) {
  auto fols = web.foliations;
  fols.push_back(extra);
  return make_web(std::move(fols), web.basepoint, std::min(web.order, extra.order()), web.vars);
}

template <class F>
VectorField<F> vector_field_from_polynomials(const Polynomial& cx, const Polynomial& cy,
                                             const std::array<Rational, 2>& basepoint, int order,
                                             const Variables& vars) {
  return {cx.recentered<F>(basepoint[0], basepoint[1], order, vars),
          cy.recentered<F>(basepoint[0], basepoint[1], order, vars)};
}

template <class F>
bool is_linear(const FoliationGerm<F>& foliation) {
  // Derivative of the slope along the leaves: D = ∂x + s ∂y (axes exchanged when vertical).
  const Series<F>& s = foliation.slope;
  if (s.order() == 0) return true;
  const int u = foliation.vertical ? 1 : 0;
  Series<F> along = differentiate(s, u) + s * differentiate(s, 1 - u);
  return along.is_zero();
}

template <class F>
std::vector<bool> linearity_check(const PlanarWeb<F>& web) {
  std::vector<bool> out;
  for (const auto& f : web.foliations) out.push_back(is_linear(f));
  return out;
}

template <class F>
Series<F> first_integral(const FoliationGerm<F>& foliation) {
  // Solve v_x + s v_y = 0 with v(0, y) = y; the vertical case is the transpose.
  const Series<F> s = foliation.vertical ? transpose(foliation.slope) : foliation.slope;
  const int n = s.order();
  Series<F> v(n + 1, s.variables());
  v(0, 1) = F(1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      F acc(0);
      for (int i1 = 0; i1 <= i; ++i1) {
        for (int j1 = 0; j1 <= j; ++j1) {
          const F& c = s(i1, j1);
          if (c == 0) continue;
          const int i2 = i - i1;
          const int j2 = j - j1;
          const F& w = v(i2, j2 + 1);
          if (w == 0) continue;
          acc += c * F(j2 + 1) * w;
        }
      }
      v(i + 1, j) = -acc / F(i + 1);
    }
  }
  return foliation.vertical ? transpose(v) : v;
}

nlohmann::json field_to_json(const CoefficientField& f) {
  nlohmann::json j;
  j["mode"] = f.exact() ? "exact" : "float";
  if (!f.exact()) {
    j["precision_bits"] = f.precision_bits;
    j["rank_gap_tolerance"] = f.rank_gap_tolerance;
  }
  return j;
}

CoefficientField field_from_json(const nlohmann::json& j) {
  CoefficientField f;
  const std::string mode = j.value("mode", std::string("exact"));
  if (mode == "exact" || mode == "exact-rational")
    f.mode = FieldMode::ExactRational;
  else if (mode == "float" || mode == "big-float")
    f.mode = FieldMode::BigFloat;
  else
    fail(ErrorKind::Validation, "unknown field mode '" + mode + "'");
  f.precision_bits = j.value("precision_bits", 256u);
  f.rank_gap_tolerance = j.value("rank_gap_tolerance", 1e-30);
  f.validate();
  return f;
}

namespace {

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  fail(ErrorKind::Validation, "rationals must be strings \"p/q\" or integers");
}

}  // namespace

WebSpecDocument WebSpecDocument::from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorKind::Validation, "web document must be a JSON object");
  WebSpecDocument d;
  try {
    if (j.contains("first_integrals"))
      d.first_integrals = j.at("first_integrals").get<std::vector<std::string>>();
    if (j.contains("forms"))
      for (const auto& f : j.at("forms")) {
        if (!f.is_array() || f.size() != 2) fail(ErrorKind::Validation, "each form is a pair of expressions");
        d.forms.push_back({f[0].get<std::string>(), f[1].get<std::string>()});
      }
    if (j.contains("slopes"))
      for (const auto& s : j.at("slopes")) {
        SlopeTable t;
        t.vertical = s.value("vertical", false);
        for (const auto& term : s.at("terms")) {
          if (!term.is_array() || term.size() != 3)
            fail(ErrorKind::Validation, "slope terms are [i, j, \"p/q\"] triples");
          t.terms.emplace_back(term[0].get<int>(), term[1].get<int>(), rational_from_json(term[2]));
        }
        d.slopes.push_back(std::move(t));
      }
    if (j.contains("basepoint")) {
      const auto& b = j.at("basepoint");
      if (!b.is_array() || b.size() != 2) fail(ErrorKind::Validation, "basepoint is a pair of rationals");
      d.basepoint = {rational_from_json(b[0]), rational_from_json(b[1])};
    }
    if (j.contains("automorphism") && !j.at("automorphism").is_null()) {
      const auto& a = j.at("automorphism");
      if (!a.is_array() || a.size() != 2) fail(ErrorKind::Validation, "automorphism is a pair of expressions");
      d.automorphism = std::array<std::string, 2>{a[0].get<std::string>(), a[1].get<std::string>()};
    }
    if (j.contains("field")) d.field = field_from_json(j.at("field"));
    if (j.contains("order") && !j.at("order").is_null()) d.order = j.at("order").get<int>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Validation, std::string("malformed web document: ") + e.what());
  }
  if (d.foliation_count() == 0) fail(ErrorKind::Validation, "web document lists no foliations");
  return d;
}

nlohmann::json WebSpecDocument::to_json() const {
  nlohmann::json j;
  j["first_integrals"] = first_integrals;
  nlohmann::json forms_json = nlohmann::json::array();
  for (const auto& [a, b] : forms) forms_json.push_back({a, b});
  j["forms"] = forms_json;
  nlohmann::json slopes_json = nlohmann::json::array();
  for (const auto& t : slopes) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [i, jj, c] : t.terms) terms.push_back({i, jj, render_rational(c)});
    slopes_json.push_back({{"vertical", t.vertical}, {"terms", terms}});
  }
  j["slopes"] = slopes_json;
  j["basepoint"] = {render_rational(basepoint[0]), render_rational(basepoint[1])};
  j["automorphism"] = automorphism ? nlohmann::json{(*automorphism)[0], (*automorphism)[1]} : nlohmann::json();
  j["field"] = field_to_json(field);
  j["order"] = order ? nlohmann::json(*order) : nlohmann::json();
  return j;
}

#define WEBRANK_INSTANTIATE_WEB(F)                                                                             \
  template Series<F> transpose(const Series<F>&);                                                              \
  template FoliationGerm<F> foliation_from_form(OneForm<F>, FoliationSource);                                  \
  template FoliationGerm<F> foliation_from_slope(const Series<F>&, bool);                                      \
  template FoliationGerm<F> foliation_from_first_integral<F>(const Polynomial&, const std::array<Rational, 2>&, \
                                                             int, const Variables&);                           \
  template FoliationGerm<F> foliation_of_field(const VectorField<F>&);                                         \
  template PlanarWeb<F> make_web(std::vector<FoliationGerm<F>>, const std::array<Rational, 2>&, int,           \
                                 const Variables&);                                                            \
  template PlanarWeb<F> build_web<F>(const WebSpecDocument&);                                                  \
  template PlanarWeb<F> adjoin(const PlanarWeb<F>&, const FoliationGerm<F>&);                                  \
  template VectorField<F> vector_field_from_polynomials<F>(const Polynomial&, const Polynomial&,               \
                                                           const std::array<Rational, 2>&, int,                \
                                                           const Variables&);                                  \
  template bool is_linear(const FoliationGerm<F>&);                                                            \
  template std::vector<bool> linearity_check(const PlanarWeb<F>&);                                             \
  template Series<F> first_integral(const FoliationGerm<F>&);

WEBRANK_INSTANTIATE_WEB(Rational)
WEBRANK_INSTANTIATE_WEB(BigFloat)

}  // namespace webrank
