#include "webrank/curves.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "webrank/roots.hpp"

namespace webrank {

void CurveFamilyParams::validate() const {
  for (int e : eps)
    if (e != 0 && e != 1) fail(ErrorKind::Validation, "eps entries must be 0 or 1");
  if (k < 1) fail(ErrorKind::Validation, "k must be at least 1");
  if (a < 2) fail(ErrorKind::Validation, "a must be at least 2");
  if (b < 1 || 2 * b > a) fail(ErrorKind::Validation, "b must satisfy 1 <= b <= a/2");
  if (std::gcd(a, b) != 1) fail(ErrorKind::Validation, "gcd(a,b) must be 1");
  if (static_cast<int>(lambdas.size()) != k)
    fail(ErrorKind::Validation, "expected " + std::to_string(k) + " lambdas, got " + std::to_string(lambdas.size()));
  if (lambdas.front() != 1) fail(ErrorKind::Validation, "lambda_1 must be 1");
  std::set<Rational> seen;
  for (const auto& l : lambdas) {
    if (l == 0) fail(ErrorKind::Validation, "lambdas must be nonzero");
    if (!seen.insert(l).second) fail(ErrorKind::Validation, "lambdas must be distinct");
  }
}

ProjectiveCurve build_curve(const CurveFamilyParams& params) {
  params.validate();
  Polynomial f = Polynomial::constant(Rational(1));
  for (int v = 0; v < 3; ++v)
    if (params.eps[static_cast<std::size_t>(v)]) f = f * Polynomial::variable(v);
  const Polynomial x = Polynomial::variable(0);
  const Polynomial y = Polynomial::variable(1);
  const Polynomial z = Polynomial::variable(2);
  for (const auto& l : params.lambdas)
    f = f * (x.pow(params.a) + l * (y.pow(params.b) * z.pow(params.a - params.b)));
  ProjectiveCurve c{f, f.degree()};
  if (c.degree != params.degree()) fail(ErrorKind::Internal, "family curve has unexpected degree");
  if (!is_square_free(f)) fail(ErrorKind::Validation, "curve is not reduced");
  return c;
}

namespace {

/// f(P + tQ) as a univariate polynomial in t.
UniPoly<Rational> restrict_to_line(const Polynomial& f, const std::array<Rational, 3>& p,
                                   const std::array<Rational, 3>& q) {
  std::array<UniPoly<Rational>, 3> lin;
  for (int v = 0; v < 3; ++v)
    lin[static_cast<std::size_t>(v)] =
        UniPoly<Rational>(std::vector<Rational>{p[static_cast<std::size_t>(v)], q[static_cast<std::size_t>(v)]});
  UniPoly<Rational> out;
  for (const auto& [e, c] : f.terms()) {
    UniPoly<Rational> term(std::vector<Rational>{c});
    for (int v = 0; v < 3; ++v)
      for (int n = 0; n < e[static_cast<std::size_t>(v)]; ++n) term = term * lin[static_cast<std::size_t>(v)];
    out = out + term;
  }
  out.trim();
  return out;
}

class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}
  Rational next(long bound) {
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, bound);
    return Rational(num(rng_), den(rng_));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

bool is_square_free(const Polynomial& f) {
  if (f.is_zero()) return false;
  const int d = f.degree();
  if (d <= 1) return true;
  RationalSampler rng(0x5eedULL);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::array<Rational, 3> p{rng.next(30), rng.next(30), rng.next(30)};
    std::array<Rational, 3> q{rng.next(30), rng.next(30), rng.next(30)};
    UniPoly<Rational> g = restrict_to_line(f, p, q);
    if (g.degree() != d) continue;
    if (gcd(g, g.derivative()).degree() == 0) return true;
  }
  return false;
}

std::vector<FamilyTuple> enumerate_families(int d) {
  if (d < 4) fail(ErrorKind::Domain, "family enumeration needs degree >= 4");
  std::vector<FamilyTuple> out;
  for (int e1 = 0; e1 <= 1; ++e1)
    for (int e2 = 0; e2 <= 1; ++e2)
      for (int e3 = 0; e3 <= 1; ++e3) {
        const int rest = d - e1 - e2 - e3;
        for (int a = 2; a <= rest; ++a) {
          if (rest % a != 0) continue;
          for (int b = 1; 2 * b <= a; ++b) {
            if (std::gcd(a, b) != 1) continue;
            if (a == 2 && e2 < e3) continue;
            out.push_back({{e1, e2, e3}, rest / a, a, b});
          }
        }
      }
  std::sort(out.begin(), out.end());
  return out;
}

int family_count_formula(int d) { return 4 * d - 10; }

int family_count_floor_sum(int d) { return d / 2 + 3 * ((d - 1) / 2) + 3 * ((d - 2) / 2) + (d - 3) / 2 - 2; }

std::optional<int> weighted_degree(const Polynomial& f, const std::array<int, 3>& weights) {
  std::optional<int> m;
  for (const auto& [e, c] : f.terms()) {
    int w = 0;
    for (int v = 0; v < 3; ++v) w += weights[static_cast<std::size_t>(v)] * e[static_cast<std::size_t>(v)];
    if (m && *m != w) return std::nullopt;
    m = w;
  }
  return m;
}

ActionWeights action_weights(const CurveFamilyParams& params) {
  params.validate();
  // a·wx = b·wy + (a-b)·wz with wz = 0 has primitive solution (b, a).
  ActionWeights w;
  w.weights = {params.b, params.a, 0};
  if (params.a * w.weights[0] != params.b * w.weights[1] + (params.a - params.b) * w.weights[2])
    fail(ErrorKind::Internal, "weights do not solve the invariance constraint");
  auto m = weighted_degree(build_curve(params).f, w.weights);
  if (!m) fail(ErrorKind::Internal, "curve is not invariant under the derived action");
  w.m = *m;
  return w;
}

template <class F>
VectorField<F> dual_action_field(const std::array<int, 3>& weights, const std::array<Rational, 2>& basepoint,
                                 int order, bool swapped_chart) {
  const int wx = swapped_chart ? weights[1] : weights[0];
  const int wy = swapped_chart ? weights[0] : weights[1];
  const int wz = weights[2];
  const Variables vars{"p", "q"};
  Polynomial cx = Rational(wy - wx) * Polynomial::variable(0);
  Polynomial cy = Rational(wy - wz) * Polynomial::variable(1);
  return vector_field_from_polynomials<F>(cx, cy, basepoint, order, vars);
}

template <class F>
VectorField<F> dual_action_field(const CurveFamilyParams& params, const std::array<Rational, 2>& basepoint,
                                 int order) {
  return dual_action_field<F>(action_weights(params).weights, basepoint, order, false);
}

namespace {

/// Coefficients C_m(p, q) of F(x, p·x + q, 1) = Σ C_m x^m, with p, q in the slots of x, y.
std::vector<Polynomial> chart_coefficients(const Polynomial& f) {
  std::vector<Polynomial> out;
  for (const auto& [e, c] : f.terms()) {
    const int i = e[0];
    const int j = e[1];
    for (int m = 0; m <= j; ++m) {
      const std::size_t idx = static_cast<std::size_t>(i + m);
      if (out.size() <= idx) out.resize(idx + 1);
      Polynomial mono = Rational(c * Rational(binomial(j, m))) *
                        (Polynomial::variable(0).pow(m) * Polynomial::variable(1).pow(j - m));
      out[idx] += mono;
    }
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

/// Isolating intervals of the real roots of a square-free polynomial.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UniPoly<Rational>& f) {
  const int n = f.degree();
  Rational bound(0);
  for (int i = 0; i < n; ++i) bound = std::max(bound, Rational(abs(f[i] / f[n])));
  bound += 1;
  std::vector<std::pair<Rational, Rational>> out;
  std::vector<std::tuple<Rational, Rational, int>> stack;
  const Rational lo0 = -bound;
  stack.emplace_back(lo0, bound, sturm_count(f, lo0, bound));
  while (!stack.empty()) {
    auto [lo, hi, count] = stack.back();
    stack.pop_back();
    if (count == 0) continue;
    if (count == 1) {
      out.emplace_back(lo, hi);
      continue;
    }
    Rational mid = (lo + hi) / 2;
    for (int shift = 1; f(mid) == 0; ++shift) mid = (lo + hi) / 2 + (hi - lo) / (7 * shift + 3);
    const int left = sturm_count(f, lo, mid);
    stack.emplace_back(lo, mid, left);
    stack.emplace_back(mid, hi, count - left);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BigFloat refine_root(const UniPoly<Rational>& f, Rational lo, Rational hi) {
  if (f(hi) == 0) return from_rational<BigFloat>(hi);
  for (int i = 0; i < 80; ++i) {
    Rational mid = (lo + hi) / 2;
    const Rational v = f(mid);
    if (v == 0) return from_rational<BigFloat>(mid);
    if ((v > 0) == (f(hi) > 0))
      hi = mid;
    else
      lo = mid;
  }
  std::vector<BigFloat> c;
  for (int i = 0; i <= f.degree(); ++i) c.push_back(from_rational<BigFloat>(f[i]));
  UniPoly<BigFloat> g(c);
  UniPoly<BigFloat> dg = g.derivative();
  BigFloat t = from_rational<BigFloat>((lo + hi) / 2);
  for (int i = 0; i < 20; ++i) t -= g(t) / dg(t);
  return t;
}

template <class F>
Series<F> substitute(const Polynomial& p, const Series<F>& x, const Series<F>& y) {
  const int n = std::min(x.order(), y.order());
  Series<F> out(n, x.variables());
  std::vector<Series<F>> xp{Series<F>::constant(F(1), n, x.variables())};
  std::vector<Series<F>> yp{Series<F>::constant(F(1), n, x.variables())};
  for (int i = 1; i <= p.degree_in(0); ++i) xp.push_back(xp.back() * x);
  for (int j = 1; j <= p.degree_in(1); ++j) yp.push_back(yp.back() * y);
  for (const auto& [e, c] : p.terms())
    out += from_rational<F>(c) * (xp[static_cast<std::size_t>(e[0])] * yp[static_cast<std::size_t>(e[1])]);
  return out;
}

struct Candidate {
  bool ok = false;
  std::string reason;
  std::vector<Rational> exact_roots;
  std::vector<BigFloat> roots;
};

/// Basepoint conditions checked at the constant-term level.
template <class F>
Candidate examine(const Polynomial& chart_curve, const std::vector<Polynomial>& coeffs, bool line_at_infinity,
                  const std::array<Rational, 2>& bp, const std::optional<std::array<int, 3>>& weights, bool swapped,
                  int expected_degree, bool regular_adjoints) {
  Candidate c;
  std::vector<Rational> f0c;
  for (const auto& cm : coeffs) f0c.push_back(cm.evaluate(bp[0], bp[1]));
  UniPoly<Rational> f0(f0c);
  f0.trim();
  if (f0.degree() != expected_degree) {
    c.reason = "a line through the basepoint meets the curve at infinity";
    return c;
  }
  if (gcd(f0, f0.derivative()).degree() != 0) {
    c.reason = "multiple intersection point at the basepoint";
    return c;
  }
  auto intervals = isolate_real_roots(f0);
  if (static_cast<int>(intervals.size()) != expected_degree) {
    c.reason = "intersection points are not all real at the basepoint";
    return c;
  }
  if constexpr (FieldTraits<F>::exact) {
    auto rr = rational_roots(f0);
    if (static_cast<int>(rr.size()) != expected_degree) {
      c.reason = "exact mode needs rational intersection points; use float mode";
      return c;
    }
    for (const auto& [q, m] : rr) c.exact_roots.push_back(q);
  }
  for (const auto& [lo, hi] : intervals) c.roots.push_back(refine_root(f0, lo, hi));

  if (regular_adjoints) {
    const Polynomial fy = chart_curve.derivative(1);
    for (const BigFloat& x : c.roots) {
      BigFloat y = from_rational<BigFloat>(bp[0]) * x + from_rational<BigFloat>(bp[1]);
      BigFloat v(0);
      for (const auto& [e, cf] : fy.terms()) v += from_rational<BigFloat>(cf) * pow(x, e[0]) * pow(y, e[1]);
      if (abs(v) < BigFloat(1e-20)) {
        c.reason = "F_y vanishes at an intersection point";
        return c;
      }
    }
  }
  if (weights) {
    const int wx = swapped ? (*weights)[1] : (*weights)[0];
    const int wy = swapped ? (*weights)[0] : (*weights)[1];
    const BigFloat cp = BigFloat(wy - wx) * from_rational<BigFloat>(bp[0]);
    const BigFloat cq = BigFloat(wy - (*weights)[2]) * from_rational<BigFloat>(bp[1]);
    if (cp == 0 && cq == 0) {
      c.reason = "the dual action vanishes at the basepoint";
      return c;
    }
    // i_X (dq + x_i dp) and i_X dp
    for (const BigFloat& x : c.roots)
      if (abs(cp * x + cq) < BigFloat(1e-20)) {
        c.reason = "the dual action is tangent to a web foliation at the basepoint";
        return c;
      }
    if (line_at_infinity && cp == 0) {
      c.reason = "the dual action is tangent to the foliation of the line at infinity";
      return c;
    }
  }
  c.ok = true;
  return c;
}

}  // namespace

template <class F>
DualWebPackage<F> dual_web(const ProjectiveCurve& curve, const DualWebOptions& options) {
  if (!curve.f.is_homogeneous() || curve.f.degree() != curve.degree)
    fail(ErrorKind::Validation, "curve polynomial must be homogeneous of its stated degree");
  if (curve.degree < 1) fail(ErrorKind::Validation, "curve degree must be positive");
  if (options.order < 2) fail(ErrorKind::Validation, "dual web order must be at least 2");
  if (!is_square_free(curve.f)) fail(ErrorKind::Validation, "curve is not reduced");

  std::vector<bool> charts;
  if (options.chart != DualChart::Swapped) charts.push_back(false);
  if (options.chart != DualChart::Primary) charts.push_back(true);

  std::string last_reason = "no attempt made";
  int attempts = 0;
  for (bool swapped : charts) {
    const Polynomial chart_curve = swapped ? curve.f.swapped(0, 1) : curve.f;
    bool infinity = true;
    for (const auto& [e, c] : chart_curve.terms())
      if (e[2] == 0) infinity = false;
    const std::vector<Polynomial> coeffs = chart_coefficients(chart_curve);
    const int expected = curve.degree - (infinity ? 1 : 0);
    if (static_cast<int>(coeffs.size()) - 1 != expected) {
      last_reason = "the curve passes through the chart's point at infinity";
      continue;
    }

    RationalSampler rng(options.seed);
    std::optional<std::array<Rational, 2>> found;
    Candidate cand;
    if (options.basepoint) {
      ++attempts;
      cand = examine<F>(chart_curve, coeffs, infinity, *options.basepoint, options.weights, swapped, expected,
                          options.regular_adjoints);
      if (!cand.ok) {
        if (options.chart == DualChart::Auto && !swapped) {
          last_reason = cand.reason;
          continue;
        }
        fail(ErrorKind::DegenerateBasepoint, cand.reason);
      }
      found = *options.basepoint;
    } else {
      long bound = 50;
      for (int t = 0; t < options.max_attempts; ++t) {
        if (t > 0 && t % 100 == 0) bound *= 2;
        std::array<Rational, 2> bp{rng.next(bound), rng.next(bound)};
        ++attempts;
        cand = examine<F>(chart_curve, coeffs, infinity, bp, options.weights, swapped, expected,
                            options.regular_adjoints);
        if (cand.ok) {
          found = bp;
          break;
        }
        last_reason = cand.reason;
      }
    }
    if (!found) continue;

    DualWebPackage<F> pkg;
    pkg.swapped_chart = swapped;
    pkg.chart_curve = chart_curve;
    pkg.basepoint = *found;
    pkg.seed = options.seed;
    pkg.attempts = attempts;
    pkg.line_at_infinity = infinity;
    const Variables vars{"p", "q"};
    const int n = options.order;
    SeriesPolynomial<F> poly;
    for (const auto& cm : coeffs) poly.push_back(cm.recentered<F>((*found)[0], (*found)[1], n, vars));
    std::vector<F> seeds;
    if constexpr (FieldTraits<F>::exact) {
      seeds = cand.exact_roots;
    } else {
      seeds = cand.roots;
    }
    pkg.branches = newton_algebraic_roots(poly, seeds);
    std::vector<FoliationGerm<F>> fols;
    for (const auto& x : pkg.branches) fols.push_back(foliation_from_slope(F(-1) * x, false));
    if (infinity) fols.push_back(foliation_from_slope(Series<F>(n, vars), true));
    pkg.web = make_web(std::move(fols), *found, n, vars);
    if (options.weights) {
      pkg.fx_field = dual_action_field<F>(*options.weights, *found, n, swapped);
      pkg.combined = adjoin(pkg.web, foliation_of_field(*pkg.fx_field));
    }
    return pkg;
  }
  if (options.basepoint) fail(ErrorKind::DegenerateBasepoint, last_reason);
  fail(ErrorKind::NoValidBasepoint, "no valid basepoint after " + std::to_string(attempts) +
                                        " attempts (last: " + last_reason + "); try another seed or chart");
}

std::vector<Polynomial> adjoint_basis(int d) {
  std::vector<Polynomial> out;
  for (int t = 0; t <= d - 3; ++t)
    for (int j = 0; j <= t; ++j)
      out.push_back(Polynomial::variable(0).pow(t - j) * Polynomial::variable(1).pow(j));
  return out;
}

template <class F>
TraceReport<F> verify_trace(const ProjectiveCurve& curve, const Polynomial& adjoint, const DualWebPackage<F>& pkg) {
  if (adjoint.uses(2)) fail(ErrorKind::Validation, "adjoint must be a polynomial in x and y");
  if (!adjoint.is_zero() && adjoint.degree() > curve.degree - 3)
    fail(ErrorKind::Validation, "adjoint degree exceeds deg C - 3");
  if (pkg.line_at_infinity) fail(ErrorKind::Domain, "trace check needs a curve without the line at infinity");
  const Polynomial p = pkg.swapped_chart ? adjoint.swapped(0, 1) : adjoint;
  const Polynomial fy = pkg.chart_curve.derivative(1).dehomogenized();
  const Variables& vars = pkg.web.vars;
  const int n = pkg.web.order;
  const Series<F> pv = Polynomial::variable(0).recentered<F>(pkg.basepoint[0], pkg.basepoint[1], n, vars);
  const Series<F> qv = Polynomial::variable(1).recentered<F>(pkg.basepoint[0], pkg.basepoint[1], n, vars);

  TraceReport<F> rep;
  rep.relation.order = n - 1;
  std::optional<OneForm<F>> total;
  for (std::size_t i = 0; i < pkg.branches.size(); ++i) {
    const Series<F>& x = pkg.branches[i];
    const Series<F> y = pv * x + qv;
    Series<F> den = substitute(fy, x, y);
    if (!den.is_unit())
      fail(ErrorKind::AdjointPole, "F_y vanishes at intersection point " + std::to_string(i + 1));
    Series<F> h = substitute(p, x, y) * invert_unit(den);
    OneForm<F> eta = (h * exterior_derivative(x)).truncated(n - 1);
    total = total ? *total + eta : eta;
    rep.relation.components.push_back(eta);
  }
  rep.residual = std::max(total->a.max_abs(), total->b.max_abs());
  rep.vanishes = total->is_zero();
  return rep;
}

nlohmann::json family_descriptor(const CurveFamilyParams& params, std::optional<std::uint64_t> seed,
                                 const std::optional<std::array<Rational, 2>>& basepoint) {
  nlohmann::json j;
  j["eps"] = params.eps;
  j["k"] = params.k;
  j["a"] = params.a;
  j["b"] = params.b;
  std::vector<Rational> sorted = params.lambdas;
  std::sort(sorted.begin() + 1, sorted.end());
  nlohmann::json ls = nlohmann::json::array();
  for (const auto& l : sorted) ls.push_back(render_rational(l));
  j["lambdas"] = ls;
  j["degree"] = params.degree();
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  if (basepoint)
    j["basepoint"] = {render_rational((*basepoint)[0]), render_rational((*basepoint)[1])};
  else
    j["basepoint"] = nullptr;
  return j;
}

#define WEBRANK_INSTANTIATE_CURVES(F)                                                                          \
  template VectorField<F> dual_action_field<F>(const std::array<int, 3>&, const std::array<Rational, 2>&, int, \
                                               bool);                                                          \
  template VectorField<F> dual_action_field<F>(const CurveFamilyParams&, const std::array<Rational, 2>&, int); \
  template DualWebPackage<F> dual_web<F>(const ProjectiveCurve&, const DualWebOptions&);                       \
  template TraceReport<F> verify_trace(const ProjectiveCurve&, const Polynomial&, const DualWebPackage<F>&);

WEBRANK_INSTANTIATE_CURVES(Rational)
WEBRANK_INSTANTIATE_CURVES(BigFloat)

}  // namespace webrank
