#include "webrank/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "webrank/curves.hpp"
#include "webrank/parser.hpp"
#include "webrank/report.hpp"

namespace webrank {

namespace {

struct CommonFlags {
  std::string mode;
  unsigned precision = 0;
  std::optional<std::uint64_t> seed;
  std::string orders;
  std::string output;
  bool json = false;
  bool timings = false;
};

struct CurveFlags {
  std::vector<std::string> params;
  std::string lambdas;
  std::string curve;
  std::string basepoint;
  bool auto_basepoint = false;
  std::string chart = "auto";
  int order = 0;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--mode", f.mode, "Coefficient field: exact or float")->check(CLI::IsMember({"exact", "float"}));
  app->add_option("--precision", f.precision, "Big-float precision in bits");
  app->add_option("--seed", f.seed, "Seed for random choices");
  app->add_option("--orders", f.orders, "Ascending jet orders, e.g. 8,10");
  app->add_option("-o,--output", f.output, "Write the JSON report to this path");
  app->add_flag("--json", f.json, "Print the JSON report instead of the text summary");
  app->add_flag("--timings", f.timings, "Record wall-clock time in the report");
}

void add_curve(CLI::App* app, CurveFlags& f) {
  app->add_option("--params", f.params, "Family parameters: eps=E1,E2,E3 k=K a=A b=B");
  app->add_option("--lambdas", f.lambdas, "Comma-separated rationals, the first equal to 1");
  app->add_option("--curve", f.curve, "Homogeneous curve polynomial in x, y, z (instead of --params)");
  app->add_option("--basepoint", f.basepoint, "Basepoint p0,q0 in the dual chart");
  app->add_flag("--auto", f.auto_basepoint, "Search a basepoint with the seeded generator (default)");
  app->add_option("--chart", f.chart, "primary, swapped or auto")->check(CLI::IsMember({"primary", "swapped", "auto"}));
  app->add_option("--order", f.order, "Jet order of the dual web");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::Validation, "invalid integer for " + what + ": '" + s + "'");
  }
}

std::vector<int> parse_orders(const std::string& s) {
  std::vector<int> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_int(t, "--orders"));
  if (out.size() < 2) fail(ErrorKind::Validation, "--orders needs at least two values");
  return out;
}

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

CoefficientField resolve_field(CoefficientField base, const CommonFlags& f) {
  if (auto bits = env("WEBRANK_PRECISION_BITS")) base.precision_bits = static_cast<unsigned>(parse_int(*bits, "WEBRANK_PRECISION_BITS"));
  if (f.precision) base.precision_bits = f.precision;
  if (f.mode == "exact") base.mode = FieldMode::ExactRational;
  if (f.mode == "float") base.mode = FieldMode::BigFloat;
  base.validate();
  return base;
}

std::uint64_t resolve_seed(const CommonFlags& f) {
  if (f.seed) return *f.seed;
  if (auto s = env("WEBRANK_SEED")) {
    try {
      return std::stoull(*s);
    } catch (const std::exception&) {
      fail(ErrorKind::Validation, "invalid WEBRANK_SEED '" + *s + "'");
    }
  }
  return 1;
}

WebSpecDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Validation, "cannot open input file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Validation, "input is not valid JSON: " + std::string(e.what()));
  }
  return WebSpecDocument::from_json(j);
}

std::array<Polynomial, 2> parse_field_pair(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 2) fail(ErrorKind::Validation, "--auto expects two expressions separated by a comma");
  return {parse_expression(parts[0]), parse_expression(parts[1])};
}

std::array<Rational, 2> parse_point(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 2) fail(ErrorKind::Validation, "basepoint expects p0,q0");
  return {parse_rational(parts[0]), parse_rational(parts[1])};
}

struct CurveInput {
  ProjectiveCurve curve;
  std::optional<CurveFamilyParams> params;
  std::optional<std::array<int, 3>> weights;
};

CurveFamilyParams parse_params(const std::vector<std::string>& tokens, const std::string& lambdas) {
  CurveFamilyParams p;
  bool have_k = false;
  for (const auto& tok : tokens) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) fail(ErrorKind::Validation, "parameter '" + tok + "' is not key=value");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "eps") {
      auto e = split(val, ',');
      if (e.size() != 3) fail(ErrorKind::Validation, "eps expects three values");
      for (int i = 0; i < 3; ++i) p.eps[static_cast<std::size_t>(i)] = parse_int(e[static_cast<std::size_t>(i)], "eps");
    } else if (key == "k") {
      p.k = parse_int(val, "k");
      have_k = true;
    } else if (key == "a") {
      p.a = parse_int(val, "a");
    } else if (key == "b") {
      p.b = parse_int(val, "b");
    } else {
      fail(ErrorKind::Validation, "unknown family parameter '" + key + "'");
    }
  }
  if (lambdas.empty()) fail(ErrorKind::Validation, "--lambdas is required with --params");
  p.lambdas.clear();
  for (const auto& l : split(lambdas, ',')) p.lambdas.push_back(parse_rational(l));
  if (!have_k) p.k = static_cast<int>(p.lambdas.size());
  p.validate();
  return p;
}

CurveInput curve_input(const CurveFlags& f) {
  CurveInput in;
  if (!f.curve.empty()) {
    if (!f.params.empty()) fail(ErrorKind::Validation, "give either --curve or --params, not both");
    Polynomial poly = parse_expression(f.curve, true);
    if (!poly.is_homogeneous()) fail(ErrorKind::Validation, "curve polynomial must be homogeneous");
    in.curve = {poly, poly.degree()};
    return in;
  }
  if (f.params.empty()) fail(ErrorKind::Validation, "--params or --curve is required");
  in.params = parse_params(f.params, f.lambdas);
  in.curve = build_curve(*in.params);
  in.weights = action_weights(*in.params).weights;
  return in;
}

DualWebOptions dual_options(const CurveFlags& f, int order, std::uint64_t seed) {
  DualWebOptions o;
  if (!f.basepoint.empty()) {
    if (f.auto_basepoint) fail(ErrorKind::Validation, "--basepoint and --auto are exclusive");
    o.basepoint = parse_point(f.basepoint);
  }
  o.chart = f.chart == "primary" ? DualChart::Primary : f.chart == "swapped" ? DualChart::Swapped : DualChart::Auto;
  o.order = order;
  o.seed = seed;
  return o;
}

template <class F>
nlohmann::json value_json(const F& v) {
  return FieldTraits<F>::render(v);
}

template <class F>
std::string series_text(const Series<F>& s) {
  return FieldTraits<F>::render(s.constant_term());
}

struct Context {
  std::string subcommand;
  std::vector<std::string> args;
  CommonFlags common;
  CoefficientField field;
  std::optional<std::uint64_t> seed;
  nlohmann::json payload;
  int status = 0;
  std::string failure;
};

void cmd_rank(Context& ctx, const std::string& input) {
  WebSpecDocument doc = load_document(input);
  ctx.field = resolve_field(doc.field, ctx.common);
  const int k = doc.foliation_count();
  std::vector<int> orders = ctx.common.orders.empty() ? default_orders(k) : parse_orders(ctx.common.orders);
  doc.order = std::max(doc.order.value_or(0), *std::max_element(orders.begin(), orders.end()));
  doc.field = ctx.field;
  ctx.payload = with_field(ctx.field, [&]<class F>() {
    PlanarWeb<F> web = build_web<F>(doc);
    return rank_payload(rank_with_certificate(web, orders));
  });
}

template <class F>
VectorField<F> automorphism_of(const WebSpecDocument& doc, const std::string& flag, int order) {
  std::array<Polynomial, 2> x;
  if (!flag.empty())
    x = parse_field_pair(flag);
  else if (doc.automorphism)
    x = {parse_expression((*doc.automorphism)[0]), parse_expression((*doc.automorphism)[1])};
  else
    fail(ErrorKind::Validation, "an automorphism is required (--auto or the document's automorphism)");
  return vector_field_from_polynomials<F>(x[0], x[1], doc.basepoint, order);
}

template <class F>
nlohmann::json automorphism_contract(const SymmetryFrame<F>& frame, const StructuredBasis<F>& basis) {
  bool canonical = true;
  for (const auto& ci : frame.integrals) {
    Series<F> lu = apply(frame.field, ci.u);
    Series<F> one = Series<F>::constant(F(1), lu.order(), lu.variables());
    canonical = canonical && (lu - one).is_zero();
  }
  bool base_ok = true;
  auto bases = base_relations(frame);
  for (const auto& b : bases) {
    AbelianRelation<F> zero{{}, b.relation.order};
    base_ok = base_ok && verify_relation(frame.combined, b.relation).passes &&
              is_zero(lie_residual(frame.field, b.relation, zero));
  }
  bool phi_ok = true;
  int phi_count = 0;
  for (const auto& rel : basis.relations) {
    if (!rel.eigenvalue.is_zero()) continue;
    AbelianRelation<F> phi = phi_section(frame, rel);
    phi_ok = phi_ok && verify_relation(frame.combined, phi).passes && is_zero(lie_residual(frame.field, phi, rel.expanded));
    ++phi_count;
  }
  nlohmann::json j;
  j["canonical_integrals_ok"] = canonical;
  j["base_relations"] = static_cast<int>(bases.size());
  j["base_relations_ok"] = base_ok;
  j["phi_checked"] = phi_count;
  j["phi_ok"] = phi_ok;
  return j;
}

void cmd_spectrum(Context& ctx, const std::string& input, const std::string& autom) {
  WebSpecDocument doc = load_document(input);
  ctx.field = resolve_field(doc.field, ctx.common);
  const int k = doc.foliation_count();
  int order = doc.order.value_or(default_web_order(k));
  if (!ctx.common.orders.empty()) {
    auto orders = parse_orders(ctx.common.orders);
    order = *std::max_element(orders.begin(), orders.end());
  }
  doc.order = order;
  doc.field = ctx.field;
  ctx.payload = with_field(ctx.field, [&]<class F>() {
    PlanarWeb<F> web = build_web<F>(doc);
    VectorField<F> x = automorphism_of<F>(doc, autom, order);
    SymmetryFrame<F> frame = symmetry_frame(web, x);
    AbelianRelationSpace<F> space = abelian_relations(web, order);
    StructuredBasis<F> basis = structured_basis(frame, space);
    nlohmann::json j = spectrum_payload(basis, space.rank);
    j["order"] = order;
    j["automorphism_contract"] = automorphism_contract(frame, basis);
    return j;
  });
}

void cmd_theorem1(Context& ctx, const std::string& input, const std::string& autom) {
  WebSpecDocument doc = load_document(input);
  ctx.field = resolve_field(doc.field, ctx.common);
  const int k = doc.foliation_count();
  std::vector<int> orders = ctx.common.orders.empty() ? default_orders(k + 1) : parse_orders(ctx.common.orders);
  const int order = std::max(doc.order.value_or(0), *std::max_element(orders.begin(), orders.end()));
  doc.order = order;
  doc.field = ctx.field;
  Theorem1Report rep = with_field(ctx.field, [&]<class F>() {
    PlanarWeb<F> web = build_web<F>(doc);
    return theorem1_check(web, automorphism_of<F>(doc, autom, order), orders);
  });
  ctx.payload = theorem1_payload(rep);
  if (!rep.holds) {
    ctx.status = exit_code(ErrorKind::TheoremViolation);
    ctx.failure = "theorem-violation: rank(W+F_X) - rank(W) = " + std::to_string(rep.delta) + ", expected " +
                  std::to_string(rep.expected_delta);
  }
}

nlohmann::json tuple_json(const FamilyTuple& t) {
  return {{"eps", t.eps}, {"k", t.k}, {"a", t.a}, {"b", t.b}, {"degree", t.k * t.a + t.eps[0] + t.eps[1] + t.eps[2]}};
}

template <class F>
nlohmann::json dual_summary(const CurveInput& in, const DualWebPackage<F>& pkg, bool with_rank,
                            const std::vector<int>& orders_flag) {
  nlohmann::json j;
  j["curve"] = in.curve.f.str();
  j["degree"] = in.curve.degree;
  j["chart"] = pkg.swapped_chart ? "swapped" : "primary";
  j["basepoint"] = {render_rational(pkg.basepoint[0]), render_rational(pkg.basepoint[1])};
  j["attempts"] = pkg.attempts;
  j["order"] = pkg.web.order;
  j["web_size"] = pkg.web.size();
  j["line_at_infinity"] = pkg.line_at_infinity;
  nlohmann::json xs = nlohmann::json::array();
  for (const auto& b : pkg.branches) xs.push_back(series_text(b));
  j["intersection_abscissae"] = xs;
  j["web_linear"] = linearity_check(pkg.web);
  if (in.params) j["family"] = family_descriptor(*in.params, pkg.seed, pkg.basepoint);
  if (pkg.fx_field) {
    j["fx_linear"] = is_linear(pkg.combined->foliations.back());
    bool ok = true;
    for (const auto& r : check_automorphism(pkg.web, *pkg.fx_field)) ok = ok && r.preserved && r.transverse;
    j["fx_automorphism_ok"] = ok;
  }
  if (with_rank) {
    const int k = pkg.web.size();
    auto pick = [&](int size) { return orders_flag.empty() ? default_orders(size) : orders_flag; };
    RankReport base = rank_with_certificate(pkg.web, pick(k));
    j["rank"] = rank_payload(base);
    if (pkg.combined) {
      RankReport ext = rank_with_certificate(*pkg.combined, pick(k + 1));
      j["rank_with_fx"] = rank_payload(ext);
      j["theorem1_delta"] = ext.rank - base.rank;
    }
  }
  return j;
}

struct MemberResult {
  nlohmann::json json;
  bool pass = false;
  bool unsupported = false;
};

MemberResult verify_member(const FamilyTuple& t, const CoefficientField& field, std::uint64_t seed) {
  MemberResult res;
  CurveFamilyParams p;
  p.eps = t.eps;
  p.k = t.k;
  p.a = t.a;
  p.b = t.b;
  p.lambdas.clear();
  for (int i = 1; i <= t.k; ++i) p.lambdas.push_back(Rational(i));
  nlohmann::json j = family_descriptor(p, seed, std::nullopt);
  try {
    ProjectiveCurve curve = build_curve(p);
    ActionWeights w = action_weights(p);
    const int d = curve.degree;
    j["weights"] = w.weights;
    PrecisionScope scope(field);
    DualWebOptions o;
    o.order = 2 * (d + 1) + 2;
    o.seed = seed;
    o.weights = w.weights;
    DualWebPackage<BigFloat> pkg = dual_web<BigFloat>(curve, o);
    j["basepoint"] = {render_rational(pkg.basepoint[0]), render_rational(pkg.basepoint[1])};
    j["chart"] = pkg.swapped_chart ? "swapped" : "primary";
    RankReport base = rank_with_certificate(pkg.web, default_orders(pkg.web.size()));
    RankReport ext = rank_with_certificate(*pkg.combined, default_orders(pkg.web.size() + 1));
    auto lin = linearity_check(pkg.web);
    const bool web_linear = std::all_of(lin.begin(), lin.end(), [](bool b) { return b; });
    const bool fx_linear = is_linear(pkg.combined->foliations.back());
    j["rank"] = base.rank;
    j["rank_with_fx"] = ext.rank;
    j["web_linear"] = web_linear;
    j["fx_linear"] = fx_linear;
    res.pass = base.rank == bol_bound(d) && ext.rank == bol_bound(d + 1) && web_linear && !fx_linear;
    j["status"] = res.pass ? "pass" : "fail";
  } catch (const Error& e) {
    res.unsupported = e.kind() == ErrorKind::NoValidBasepoint;
    j["status"] = res.unsupported ? "unsupported" : "error";
    j["error"] = e.what();
  }
  j["pass"] = res.pass;
  res.json = j;
  return res;
}

void cmd_family(Context& ctx, int degree, bool count, bool list, bool verify_all) {
  ctx.seed = resolve_seed(ctx.common);
  std::vector<FamilyTuple> tuples = enumerate_families(degree);
  nlohmann::json j;
  j["degree"] = degree;
  j["count"] = static_cast<int>(tuples.size());
  j["formula_count"] = family_count_formula(degree);
  j["floor_sum"] = family_count_floor_sum(degree);
  j["matches_formula"] = static_cast<int>(tuples.size()) == family_count_formula(degree);
  if (list || verify_all) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : tuples) arr.push_back(tuple_json(t));
    j["families"] = arr;
  }
  if (verify_all) {
    CoefficientField field = ctx.field;
    field.mode = FieldMode::BigFloat;
    ctx.field = field;
    PrecisionScope scope(field);
    std::vector<std::future<MemberResult>> jobs;
    for (const auto& t : tuples)
      jobs.push_back(std::async(std::launch::async, verify_member, t, field, *ctx.seed));
    nlohmann::json members = nlohmann::json::array();
    bool all = true;
    int verified = 0, unsupported = 0;
    for (auto& f : jobs) {
      MemberResult r = f.get();
      all = all && (r.pass || r.unsupported);
      verified += r.pass ? 1 : 0;
      unsupported += r.unsupported ? 1 : 0;
      members.push_back(r.json);
    }
    j["members"] = members;
    j["verified"] = verified;
    j["unsupported"] = unsupported;
    j["no_failures"] = all;
    if (!all) {
      ctx.status = exit_code(ErrorKind::TheoremViolation);
      ctx.failure = "theorem-violation: a computed family member is not of maximal rank";
    }
  }
  if (count && !j["matches_formula"].get<bool>()) {
    ctx.status = exit_code(ErrorKind::TheoremViolation);
    ctx.failure = "theorem-violation: enumeration gives " + std::to_string(tuples.size()) +
                  " families of degree " + std::to_string(degree) + ", 4d-10 gives " +
                  std::to_string(family_count_formula(degree));
  }
  ctx.payload = j;
}

void cmd_dualweb(Context& ctx, const CurveFlags& cf, bool with_fx, bool rank) {
  CoefficientField base;
  base.mode = FieldMode::BigFloat;
  ctx.field = resolve_field(base, ctx.common);
  ctx.seed = resolve_seed(ctx.common);
  CurveInput in = curve_input(cf);
  if (with_fx && !in.weights) fail(ErrorKind::Validation, "--with-fx needs a family curve (--params)");
  std::vector<int> orders = ctx.common.orders.empty() ? std::vector<int>{} : parse_orders(ctx.common.orders);
  const int d = in.curve.degree;
  int order = cf.order ? cf.order : (with_fx ? 2 * (d + 1) + 2 : 2 * d + 2);
  if (!orders.empty()) order = std::max(order, *std::max_element(orders.begin(), orders.end()));
  DualWebOptions o = dual_options(cf, order, *ctx.seed);
  if (with_fx) o.weights = in.weights;
  ctx.payload = with_field(ctx.field, [&]<class F>() {
    DualWebPackage<F> pkg = dual_web<F>(in.curve, o);
    return dual_summary(in, pkg, rank, orders);
  });
}

void cmd_trace(Context& ctx, const CurveFlags& cf, const std::string& adjoint) {
  CoefficientField base;
  base.mode = FieldMode::BigFloat;
  ctx.field = resolve_field(base, ctx.common);
  ctx.seed = resolve_seed(ctx.common);
  CurveInput in = curve_input(cf);
  const int d = in.curve.degree;
  const int order = cf.order ? cf.order : 2 * d + 2;
  DualWebOptions o = dual_options(cf, order, *ctx.seed);
  o.regular_adjoints = true;
  std::vector<Polynomial> adjoints;
  if (!adjoint.empty())
    adjoints.push_back(parse_expression(adjoint));
  else
    adjoints = adjoint_basis(d);
  bool all = true;
  ctx.payload = with_field(ctx.field, [&]<class F>() {
    DualWebPackage<F> pkg = dual_web<F>(in.curve, o);
    nlohmann::json j;
    j["curve"] = in.curve.f.str();
    j["degree"] = d;
    j["basepoint"] = {render_rational(pkg.basepoint[0]), render_rational(pkg.basepoint[1])};
    j["chart"] = pkg.swapped_chart ? "swapped" : "primary";
    j["expected_dimension"] = bol_bound(d);
    if (in.params) j["family"] = family_descriptor(*in.params, pkg.seed, pkg.basepoint);
    nlohmann::json items = nlohmann::json::array();
    std::vector<AbelianRelation<F>> rels;
    for (const auto& p : adjoints) {
      TraceReport<F> tr = verify_trace(in.curve, p, pkg);
      items.push_back({{"adjoint", p.str()}, {"residual", value_json(tr.residual)}, {"vanishes", tr.vanishes}});
      all = all && tr.vanishes;
      rels.push_back(tr.relation);
    }
    j["traces"] = items;
    j["all_vanish"] = all;
    const int n = pkg.web.order - 1;
    j["span_dimension"] = span_dimension(rels, n);
    if (pkg.web.size() >= 3 && n >= pkg.web.size() - 2) {
      AbelianRelationSpace<F> space = abelian_relations(pkg.web, n);
      j["web_rank"] = space.rank;
      j["in_abelian_space"] = coordinates_in_basis(space, rels, n).has_value();
    }
    return j;
  });
  if (!all) {
    ctx.status = exit_code(ErrorKind::TheoremViolation);
    ctx.failure = "theorem-violation: an adjoint trace does not vanish";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Abelian relations and rank of planar webs", "webrank"};
  app.require_subcommand(1);
  Context ctx;
  std::string input, autom, adjoint;
  int degree = 0;
  bool count = false, list = false, verify_all = false, with_fx = false, rank = false;
  CurveFlags cf;

  CLI::App* rank_cmd = app.add_subcommand("rank", "Rank of a web with a stabilization certificate");
  rank_cmd->add_option("-i,--input", input, "Web document (JSON)")->required();
  add_common(rank_cmd, ctx.common);

  CLI::App* spec_cmd = app.add_subcommand("spectrum", "Spectrum of L_X on the abelian relations");
  spec_cmd->add_option("-i,--input", input, "Web document (JSON)")->required();
  spec_cmd->add_option("--auto", autom, "Infinitesimal automorphism \"Xx,Xy\"");
  add_common(spec_cmd, ctx.common);

  CLI::App* thm_cmd = app.add_subcommand("theorem1", "Compare rank(W) and rank(W + F_X)");
  thm_cmd->add_option("-i,--input", input, "Web document (JSON)")->required();
  thm_cmd->add_option("--auto", autom, "Infinitesimal automorphism \"Xx,Xy\"");
  add_common(thm_cmd, ctx.common);

  CLI::App* fam_cmd = app.add_subcommand("family", "Enumerate the invariant curve families of a degree");
  fam_cmd->add_option("--degree", degree, "Curve degree")->required();
  fam_cmd->add_flag("--count", count, "Report the count");
  fam_cmd->add_flag("--list", list, "List the discrete types");
  fam_cmd->add_flag("--verify-all", verify_all, "Check maximal rank of one member per type");
  add_common(fam_cmd, ctx.common);

  CLI::App* dual_cmd = app.add_subcommand("dualweb", "Dual web of a plane curve");
  add_curve(dual_cmd, cf);
  dual_cmd->add_flag("--with-fx", with_fx, "Attach the dual action foliation");
  dual_cmd->add_flag("--rank", rank, "Compute ranks");
  add_common(dual_cmd, ctx.common);

  CLI::App* trace_cmd = app.add_subcommand("trace", "Abel trace of adjoint forms");
  add_curve(trace_cmd, cf);
  trace_cmd->add_option("--adjoint", adjoint, "Adjoint polynomial in x, y (default: all monomials of degree <= d-3)");
  add_common(trace_cmd, ctx.common);

  std::vector<std::string> argv_store{"webrank"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "validation: " << e.what() << "\n";
      return 1;
    }
    CLI::App* sub = app.get_subcommands().front();
    if (sub->get_subcommands().size() > 0) fail(ErrorKind::Validation, "unexpected nested subcommand");
    ctx.subcommand = sub->get_name();
    ctx.args = args;
    ctx.field = resolve_field(CoefficientField{}, ctx.common);
    const auto start = std::chrono::steady_clock::now();

    if (ctx.subcommand == "rank") cmd_rank(ctx, input);
    else if (ctx.subcommand == "spectrum") cmd_spectrum(ctx, input, autom);
    else if (ctx.subcommand == "theorem1") cmd_theorem1(ctx, input, autom);
    else if (ctx.subcommand == "family") cmd_family(ctx, degree, count || (!list && !verify_all), list, verify_all);
    else if (ctx.subcommand == "dualweb") cmd_dualweb(ctx, cf, with_fx, rank);
    else if (ctx.subcommand == "trace") cmd_trace(ctx, cf, adjoint);

    ReportEnvelope env;
    env.subcommand = ctx.subcommand;
    env.arguments = ctx.args;
    env.mode = ctx.field;
    env.seed = ctx.seed;
    if (ctx.common.timings)
      env.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    env.payload = ctx.payload;
    out << emit_report(env, ctx.common.json ? ReportFormat::Json : ReportFormat::Text);
    if (!ctx.common.output.empty()) {
      std::ofstream f(ctx.common.output, std::ios::binary);
      if (!f) fail(ErrorKind::Validation, "cannot write output file '" + ctx.common.output + "'");
      f << emit_report(env, ReportFormat::Json);
    }
    if (ctx.status != 0) err << ctx.failure << "\n";
    return ctx.status;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal: " << e.what() << "\n";
    return exit_code(ErrorKind::Internal);
  }
}

}  // namespace webrank
