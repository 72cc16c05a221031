#include <doctest.h>

#include <cmath>
#include <random>

#include "metrize/errors.hpp"
#include "metrize/expr.hpp"

using namespace metrize;

namespace {

const std::vector<std::string> kR = {"r"};
const std::vector<std::string> kTP = {"theta", "phi"};

Jet2 jet1(const char* src, double x) {
  const Expr e = Expr::parse(src, kR);
  const double p[1] = {x};
  return e.eval_jet(std::span<const double>(p, 1));
}

}  // namespace

TEST_CASE("parse produces the expected tree shapes") {
  CHECK(Expr::parse("r^2", kR).str() == "r^2");
  CHECK(Expr::parse("sin(theta)*cos(phi)", kTP).str() == "sin(theta)*cos(phi)");
  // precedence and associativity
  CHECK(Expr::parse("1+2*3", kR).eval(std::vector<double>{1.0}) == doctest::Approx(7.0));
  CHECK(Expr::parse("2^3^2", kR).eval(std::vector<double>{1.0}) == doctest::Approx(512.0));
  CHECK(Expr::parse("8/4/2", kR).eval(std::vector<double>{1.0}) == doctest::Approx(1.0));
  CHECK(Expr::parse("-r^2", kR).eval(std::vector<double>{3.0}) == doctest::Approx(-9.0));
  CHECK(Expr::parse("2^-2", kR).eval(std::vector<double>{1.0}) == doctest::Approx(0.25));
}

TEST_CASE("parse reports syntax errors with byte offsets") {
  CHECK_THROWS_WITH_AS(Expr::parse("1/+r", kR), doctest::Contains("offset 2"), SyntaxError);
  try {
    Expr::parse("1/+r", kR);
  } catch (const SyntaxError& e) {
    CHECK(e.offset == 2);
  }
  CHECK_THROWS_AS(Expr::parse("", kR), SyntaxError);
  CHECK_THROWS_AS(Expr::parse("sin(", kR), SyntaxError);
  CHECK_THROWS_AS(Expr::parse("(r", kR), SyntaxError);
  CHECK_THROWS_AS(Expr::parse("r +", kR), SyntaxError);
  CHECK_THROWS_AS(Expr::parse("1.e3", kR), SyntaxError);
  CHECK_THROWS_AS(Expr::parse("sin r", kR), SyntaxError);
}

TEST_CASE("unknown identifiers carry the offending name") {
  try {
    Expr::parse("r + q", kR);
    FAIL("expected UnknownIdentifier");
  } catch (const UnknownIdentifier& e) {
    CHECK(e.name == "q");
    CHECK(e.offset == 4);
  }
}

TEST_CASE("pi is a reserved constant") {
  CHECK(Expr::parse("cos(pi)", kR).eval(std::vector<double>{1.0}) == doctest::Approx(-1.0));
}

TEST_CASE("jets of the stated examples") {
  {
    const Jet2 j = jet1("r^2", 3.0);
    CHECK(j.value() == doctest::Approx(9.0));
    CHECK(j.d(0) == doctest::Approx(6.0));
    CHECK(j.dd(0, 0) == doctest::Approx(2.0));
  }
  {
    const Jet2 j = jet1("sin(r)", 3.14159265358979323846 / 2);
    CHECK(j.value() == doctest::Approx(1.0));
    CHECK(j.d(0) == doctest::Approx(0.0));
    CHECK(j.dd(0, 0) == doctest::Approx(-1.0));
  }
  {
    const Jet2 j = jet1("exp(2*r)", 0.0);
    CHECK(j.value() == doctest::Approx(1.0));
    CHECK(j.d(0) == doctest::Approx(2.0));
    CHECK(j.dd(0, 0) == doctest::Approx(4.0));
  }
}

TEST_CASE("cot is a primitive") {
  const Jet2 j = jet1("cot(r)", 3.14159265358979323846 / 4);
  CHECK(j.value() == doctest::Approx(1.0));
  CHECK(j.d(0) == doctest::Approx(-2.0));  // -(1 + cot^2)
}

TEST_CASE("integer powers accept any base, fractional powers need base > 0") {
  CHECK(jet1("r^3", -2.0).value() == doctest::Approx(-8.0));
  CHECK(jet1("r^-2", -2.0).value() == doctest::Approx(0.25));
  CHECK(jet1("r^0", -5.0).value() == doctest::Approx(1.0));
  CHECK_THROWS_AS(jet1("r^2.5", -2.0), DomainError);
  CHECK(jet1("r^2.5", 4.0).value() == doctest::Approx(32.0));
}

TEST_CASE("domain errors name the function") {
  try {
    jet1("log(r)", -1.0);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.fn == "log");
    CHECK(e.arg == doctest::Approx(-1.0));
  }
  CHECK_THROWS_AS(jet1("sqrt(r)", -1.0), DomainError);
  CHECK_THROWS_AS(jet1("1/(r-1)", 1.0), DomainError);
}

TEST_CASE("parsing is deterministic and printing round-trips") {
  const std::vector<std::string> vars = {"r", "theta", "phi"};
  const std::vector<const char*> corpus = {
      "r^2",
      "sin(theta)*cos(phi)",
      "1/r + 1/(1+r^2)",
      "-(r + theta)/2",
      "r/(1+r^2)",
      "exp(2*r)*log(r + 1)",
      "cot(theta)*sin(phi) - sqrt(r)",
      "2^-3 + r^2^2",
      "-r^2",
      "r - (theta - phi)",
      "1.5e-3*r + pi",
      "tan(theta/4)",
      "neg(r) + neg(theta*phi)",
  };
  for (const char* src : corpus) {
    const Expr a = Expr::parse(src, vars);
    const Expr b = Expr::parse(src, vars);
    CHECK_MESSAGE(a.same_structure(b), src);
    const Expr c = Expr::parse(a.str(), vars);
    CHECK_MESSAGE(a.same_structure(c), "round-trip of ", src, " via ", a.str());
  }
}

TEST_CASE("value path and jet value lane agree bitwise") {
  const std::vector<std::string> vars = {"r", "theta"};
  const std::vector<const char*> corpus = {"r^2*sin(theta)", "exp(r)/(1+theta^2)",
                                           "2^r + cot(theta)", "sqrt(r)*log(r)"};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.4, 2.8);
  for (const char* src : corpus) {
    const Expr e = Expr::parse(src, vars);
    for (int i = 0; i < 20; ++i) {
      const double p[2] = {u(rng), u(rng)};
      const std::span<const double> pt(p, 2);
      CHECK(e.eval(pt) == e.eval_jet(pt).value());
    }
  }
}
