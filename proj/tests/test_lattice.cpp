#include "doctest.h"

#include "oracles.hpp"
#include "pbpo/error.hpp"
#include "pbpo/lattice.hpp"

using namespace pbpo;

namespace {

LabelLattice diamond() {
  return LabelLattice("diamond", {"BOT", "a", "b", "TOP"}, {{"BOT", "a"}, {"BOT", "b"}, {"a", "TOP"}, {"b", "TOP"}},
                      "TOP", "BOT");
}

}  // namespace

TEST_CASE("diamond joins and meets") {
  auto d = diamond();
  CHECK(validate_lattice(d).ok());
  CHECK(d.element(d.join(d.at("a"), d.at("b"))) == "TOP");
  CHECK(d.element(d.meet(d.at("a"), d.at("b"))) == "BOT");
  CHECK(d.element(d.join(d.at("a"), d.at("BOT"))) == "a");
  CHECK(d.join({}) == d.bottom());
  CHECK(d.meet({}) == d.top());
  CHECK(d.leq("BOT", "TOP"));
  CHECK_FALSE(d.leq("a", "b"));
}

TEST_CASE("order is closed under reflexivity and transitivity") {
  LabelLattice chain("chain", {"0", "1", "2"}, {{"0", "1"}, {"1", "2"}}, "2", "0");
  CHECK(chain.leq("0", "2"));
  CHECK(chain.leq("1", "1"));
  CHECK(chain.covering_pairs().size() == 2);
  CHECK(chain.order_pairs().size() == 6);
}

TEST_CASE("bdd lattice against the hand-written order") {
  const std::vector<std::string> vars{"x1", "x2", "x3"};
  auto lat = bdd_lattice(vars);
  auto order = oracle::bdd_order(vars);
  CHECK(validate_lattice(*lat).ok());
  REQUIRE(lat->size() == static_cast<std::size_t>(order.size()));
  for (int a = 0; a < order.size(); ++a)
    for (int b = 0; b < order.size(); ++b) {
      const auto la = lat->at(order.name(a)), lb = lat->at(order.name(b));
      CHECK(lat->leq(la, lb) == order.le(a, b));
      CHECK(lat->element(lat->join(la, lb)) == order.name(order.join(a, b)));
      CHECK(lat->element(lat->meet(la, lb)) == order.name(order.meet(a, b)));
    }
  CHECK(lat->is_bdd_lattice());
  CHECK(lat->bdd_variables() == vars);
}

TEST_CASE("bdd lattice rejects bad variable lists") {
  CHECK_THROWS_AS(bdd_lattice({}), Error);
  try {
    bdd_lattice({"p", "p"});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::duplicate_variable);
  }
  try {
    bdd_lattice({"TOP"});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::duplicate_variable);
  }
}

TEST_CASE("constant bdd lattice still orders BOT below VAR") {
  auto lat = constant_bdd_lattice();
  CHECK(validate_lattice(*lat).ok());
  CHECK(lat->leq("BOT", "VAR"));
  CHECK(lat->bdd_variables().empty());
}

TEST_CASE("validator finds a missing supremum") {
  // a, b below both c and d: no least upper bound for {a, b}.
  LabelLattice bowtie("bowtie", {"BOT", "a", "b", "c", "d", "TOP"},
                      {{"BOT", "a"}, {"BOT", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "TOP"},
                       {"d", "TOP"}},
                      "TOP", "BOT");
  auto report = validate_lattice(bowtie);
  CHECK(report.has("missing-supremum"));
  CHECK(report.has("missing-infimum"));
  CHECK_THROWS_AS(bowtie.join(bowtie.at("a"), bowtie.at("b")), Error);
}

TEST_CASE("validator finds antisymmetry and misplaced bounds") {
  LabelLattice cyc("cyc", {"a", "b"}, {{"a", "b"}, {"b", "a"}}, "a", "b");
  CHECK(validate_lattice(cyc).has("antisymmetry"));
  CHECK(validate_lattice(cyc).has("non-unique-supremum"));
  LabelLattice two("two", {"a", "b"}, {}, "a", "b");
  auto report = validate_lattice(two);
  CHECK(report.has("bottom-not-least"));
  CHECK(report.has("top-not-greatest"));
}

TEST_CASE("bad constructor input") {
  CHECK_THROWS_AS(LabelLattice("e", {}, {}, "x", "x"), Error);
  CHECK_THROWS_AS(LabelLattice("d", {"a", "a"}, {}, "a", "a"), Error);
  auto d = diamond();
  CHECK_THROWS_AS(d.at("nope"), Error);
}

TEST_CASE("unit lattice") {
  auto u = unit_lattice();
  CHECK(u->size() == 1);
  CHECK(u->top() == u->bottom());
}
