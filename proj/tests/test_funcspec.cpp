#include <cmath>
#include <cstring>

#include "doctest.h"
#include "tauber/error.hpp"
#include "tauber/funcspec.hpp"

using namespace tauber;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1)));
  return out;
}

}  // namespace

TEST_CASE("print then parse evaluates bit for bit") {
  for (const auto& e : builtin_corpus()) {
    CAPTURE(e.name);
    const SpecPtr back = parse_spec(print_spec(*e.spec), e.name);
    for (double x : log_spaced(1.0, 1e9, 1000)) {
      const Value a = e.spec->eval(x), b = back->eval(x);
      CHECK(same_bits(a.real(), b.real()));
      CHECK(same_bits(a.imag(), b.imag()));
    }
  }
}

TEST_CASE("json form round trips") {
  for (const auto& e : builtin_corpus()) {
    const SpecPtr back = spec_from_json(spec_to_json(*e.spec));
    CHECK(back->name() == e.name);
    for (double x : log_spaced(1.0, 1e6, 200)) CHECK(same_bits(e.spec->eval(x).real(), back->eval(x).real()));
  }
}

TEST_CASE("every x in [1, 1e9] lies in exactly one piece") {
  for (const auto& e : builtin_corpus()) {
    CAPTURE(e.name);
    const auto& pieces = e.spec->pieces();
    for (double x : log_spaced(1.0, 1e9, 2000)) {
      int hits = 0;
      for (const auto& p : pieces) hits += (p.lo <= x && x < p.hi) ? 1 : 0;
      if (e.spec->family()) {
        // past the pieces the family covers everything
        CHECK(hits <= 1);
        if (hits == 0) CHECK_NOTHROW(e.spec->eval(x));
      } else {
        CHECK(hits == 1);
      }
    }
  }
}

TEST_CASE("half-open pieces take the right value at a breakpoint") {
  const SpecPtr s = parse_spec("piece [1, 2): 1; piece [2, inf): 5;");
  CHECK(s->eval(2.0).real() == 5.0);
  CHECK(s->eval(std::nextafter(2.0, 0.0)).real() == 1.0);
  CHECK(s->breakpoints(1.0, 10.0) == std::vector<double>{2.0});
}

TEST_CASE("spike family matches the squares") {
  const FunctionPtr s2 = find_corpus_entry("S2")->spec;
  for (int n = 2; n < 300; ++n) {
    const double a = double(n) * n;
    CHECK(s2->eval(a).real() == 1.0);
    CHECK(s2->eval(a + 0.5).real() == 1.0);
    CHECK(s2->eval(a + 1.0).real() == 0.0);
    CHECK(s2->eval(a - 0.5).real() == 0.0);
  }
  CHECK(s2->eval(2.0).real() == 0.0);
}

TEST_CASE("malformed specs are rejected with a location") {
  CHECK_THROWS_AS(parse_spec("piece [1, 3): 0; piece [2, inf): 1;"), ParseError);
  CHECK_THROWS_AS(parse_spec("piece [1, 2): 0; piece [3, inf): 1;"), ParseError);
  CHECK_THROWS_AS(parse_spec("sin(x"), ParseError);
  try {
    parse_spec("piece [1, 2): 0;\npiece [3, inf): 1;");
    FAIL("expected a gap error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::gap);
  }
}

TEST_CASE("domain errors surface at evaluation") {
  // a piece whose formula is undefined at its own left end is refused up front
  CHECK_THROWS_AS(parse_spec("loglog(x)"), ParseError);
  const Expression e = parse_expression("loglog(x)");
  CHECK_THROWS_AS(e.evaluate(1.0), DomainError);
  CHECK(e.evaluate(std::exp(std::exp(1.0))) == doctest::Approx(1.0));
}

TEST_CASE("complex bodies carry both parts") {
  const SpecPtr s = parse_spec("piece [1, e): 0; piece [e, inf): complex(cos(loglog(x)), sin(loglog(x)));");
  CHECK(s->is_complex());
  const double x = std::exp(std::exp(0.5));
  CHECK(s->eval(x).real() == doctest::Approx(std::cos(0.5)));
  CHECK(s->eval(x).imag() == doctest::Approx(std::sin(0.5)));
}
