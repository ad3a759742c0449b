#include <doctest.h>

#include "webrank/parser.hpp"
#include "webrank/web.hpp"

using namespace webrank;

namespace {

WebSpecDocument doc(std::vector<std::string> integrals, int x0, int y0, int order = 6) {
  WebSpecDocument d;
  d.first_integrals = std::move(integrals);
  d.basepoint = {Rational(x0), Rational(y0)};
  d.order = order;
  return d;
}

ErrorKind kind_of(const WebSpecDocument& d) {
  try {
    build_web<Rational>(d);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error");
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("coordinate 3-web") {
  auto web = build_web<Rational>(doc({"x", "y", "x+y"}, 0, 0));
  REQUIRE(web.size() == 3);
  CHECK(web.foliations[0].vertical);
  CHECK_FALSE(web.foliations[1].vertical);
  CHECK(web.foliations[1].slope.constant_term() == 0);
  CHECK(web.foliations[2].slope.constant_term() == -1);
  CHECK(linearity_check(web) == std::vector<bool>{true, true, true});
}

TEST_CASE("five-web at (1,2) is valid; circles are not linear") {
  auto web = build_web<Rational>(doc({"x", "y", "x+y", "x-y", "x^2+y^2"}, 1, 2, 10));
  CHECK(web.size() == 5);
  auto lin = linearity_check(web);
  CHECK(lin == std::vector<bool>{true, true, true, true, false});
}

TEST_CASE("web validation errors") {
  CHECK(kind_of(doc({"x", "y", "x^2+y^2"}, 0, 0)) == ErrorKind::Regularity);
  CHECK(kind_of(doc({"x", "y", "x+y", "2*x+2*y"}, 1, 2)) == ErrorKind::NotAWeb);
  CHECK(kind_of(doc({}, 0, 0)) == ErrorKind::Validation);
  CHECK(kind_of(doc({"x+"}, 0, 0)) == ErrorKind::Syntax);

  try {
    build_web<Rational>(doc({"x", "y", "x+y", "y^2"}, 1, 2));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "not-a-web: foliations 2 and 4 tangent at basepoint");
  }
}

TEST_CASE("first integrals are normalized and annihilate the forms") {
  auto web = build_web<Rational>(doc({"x", "y", "x+y", "x*y"}, 1, 2, 8));
  for (const auto& f : web.foliations) {
    auto v = first_integral(f);
    CHECK(v.constant_term() == 0);
    auto dv = exterior_derivative(v);
    CHECK(wedge(dv, f.form).truncated(f.order() - 1).is_zero());
  }
}

TEST_CASE("slope and form inputs") {
  WebSpecDocument d;
  d.forms.push_back({"1", "0"});
  d.forms.push_back({"0", "1"});
  d.slopes.push_back({false, {{0, 0, Rational(-1)}}});
  d.order = 6;
  auto web = build_web<Rational>(d);
  CHECK(web.size() == 3);
  CHECK(linearity_check(web) == std::vector<bool>{true, true, true});
}

TEST_CASE("document JSON round trip") {
  auto d = doc({"x", "y", "x+y"}, 1, 2, 9);
  d.automorphism = std::array<std::string, 2>{"x", "y"};
  d.field.mode = FieldMode::BigFloat;
  d.field.precision_bits = 200;
  auto back = WebSpecDocument::from_json(d.to_json());
  CHECK(back.to_json() == d.to_json());
  CHECK(back.field == d.field);
  CHECK_THROWS_AS(WebSpecDocument::from_json(nlohmann::json::array()), Error);
}

TEST_CASE("field validation") {
  CoefficientField f;
  f.mode = FieldMode::BigFloat;
  f.precision_bits = 64;
  CHECK_THROWS_AS(f.validate(), Error);
  f.precision_bits = 128;
  f.rank_gap_tolerance = 0;
  CHECK_THROWS_AS(f.validate(), Error);
}
