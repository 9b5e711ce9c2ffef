#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "tame/geometry.hpp"
#include "tame/ineqspec.hpp"
#include "tame/planegraph.hpp"
#include "tame/sexpr.hpp"
#include "tame/verify.hpp"
#include "test_util.hpp"

using namespace tame;
using namespace tame::testutil;

namespace {

double runif(std::mt19937& rng, double a, double b) {
  double u = (rng() >> 5) * (1.0 / 134217728.0);  // 27 random bits
  return a + (b - a) * u;
}

IneqSpec parse_one(const std::string& text) {
  auto v = parse_ineq_specs(text, "test");
  REQUIRE(v.size() == 1);
  return v[0];
}

std::vector<IneqSpec> load_specs(const std::string& file) {
  return parse_ineq_specs(read_text_file(data_dir() + "/specs/" + file),
                          file);
}

// Uniform box over [lo, hi]^6.
IneqSpec boxed_claim(double lo, double hi, const std::string& claim) {
  std::string d = "(domain";
  for (int i = 1; i <= 6; ++i)
    d += " (y" + std::to_string(i) + " " + std::to_string(lo) + " " +
         std::to_string(hi) + ")";
  d += ")";
  return parse_one("(ineq box " + d + " (constraint (>= (delta) 0)) (claim " +
                   claim + "))");
}

}  // namespace

TEST_CASE("parser reads domains, side conditions, and claims") {
  const IneqSpec s = parse_one(
      "(ineq 42 (domain (y2 2 2.168) (y6 two_t0 4.678))"
      " (constraint (>= (delta) 0)) (claim (< (dih) 1.63)))");
  CHECK(s.id == "42");
  // Unlisted coordinates default to [2, two_t0].
  CHECK(s.domain.y[0].lo == 2.0);
  CHECK(s.domain.y[0].hi >= 2.51);
  CHECK(s.domain.y[0].hi < 2.5101);
  CHECK(s.domain.y[1].hi == doctest::Approx(2.168).epsilon(1e-12));
  // Symbolic endpoints cover the real constant from outside.
  CHECK(s.domain.y[5].lo <= 2.51);
  CHECK(s.domain.y[5].lo > 2.5099);
  CHECK(s.domain.y[5].hi >= 4.678);
  REQUIRE(s.constraints.size() == 1);
  CHECK(s.constraints[0].rel == IneqRel::kGe);
  CHECK(s.constraints[0].lhs.kind == IneqExpr::kDelta);
  CHECK(s.claim.rel == IneqRel::kLt);
  CHECK(s.claim.lhs.kind == IneqExpr::kDih);
  CHECK(s.claim.rhs.kind == IneqExpr::kNumber);
  CHECK(contains(s.claim.rhs.number, 1.63));

  // All symbolic constants resolve; the sum is provable in one cell.
  const IneqSpec c = parse_one(
      "(ineq sym (claim (< (+ pi two_pi t0 two_t0 sqrt2 sqrt8) 17.5)))");
  const std::array<double, 6> y{2, 2, 2, 2, 2, 2};
  CHECK(eval_point(c.claim.lhs, y) ==
        doctest::Approx(3 * std::acos(-1.0) + 3.765 + std::sqrt(2.0) +
                        std::sqrt(8.0))
            .epsilon(1e-12));
  const VerifyOutcome o = verify_serial(c);
  CHECK(o.status == VerifyStatus::kProven);
  CHECK(o.cells == 1);
}

TEST_CASE("parser rejects malformed specs") {
  CHECK_THROWS_AS(parse_one("(ineq 1 (claim (< (dih) 1 2)))"), SexprError);
  CHECK_THROWS_AS(parse_one("(ineq 1 (claim (== 1 2)))"), SexprError);
  CHECK_THROWS_AS(parse_one("(ineq 1 (claim (< (frob) 1)))"), SexprError);
  CHECK_THROWS_AS(parse_one("(ineq 1 (claim (< (- 1 2 3) 1)))"), SexprError);
  CHECK_THROWS_AS(parse_one("(ineq 1 (domain (y7 2 3)) (claim (< 1 2)))"),
                  SexprError);
  CHECK_THROWS_AS(parse_one("(ineq 1 (domain (y1 2)) (claim (< 1 2)))"),
                  SexprError);
  CHECK_THROWS_AS(parse_one("(ineq 1 (domain (y1 2 3)))"), SexprError);
  CHECK_THROWS_AS(parse_one("(ineq 1 (claim (< (eta y1 y2) 9)))"),
                  SexprError);
  CHECK_THROWS_AS(parse_one("(quux 1 (claim (< 1 2)))"), SexprError);
}

TEST_CASE("interval evaluation encloses point evaluation") {
  const IneqSpec s = parse_one(
      "(ineq e (claim (< (+ (dih) (* 0.5 (sol)) (- (dih2) (dih3))"
      " (/ (eta y1 y2 y6) (sqrt (delta))) (atan (arc y1 y2 y6))) 99)))");
  std::mt19937 rng(29);
  for (int i = 0; i < 2000; ++i) {
    std::array<double, 6> y;
    IntervalBox wide;
    for (int j = 0; j < 6; ++j) {
      const double lo = runif(rng, 2.0, 2.15);
      const double w = runif(rng, 0.0, 0.1);
      wide.y[j] = Interval(lo, lo + w);
      y[j] = runif(rng, lo, lo + w);
    }
    IntervalBox point;
    for (int j = 0; j < 6; ++j) point.y[j] = Interval(y[j]);
    const double v = eval_point(s.claim.lhs, y);
    CHECK(contains(eval_interval(s.claim.lhs, point), v));
    CHECK(contains(eval_interval(s.claim.lhs, wide), v));
  }
}

TEST_CASE("claims decided at the root resolve in one cell") {
  const IneqSpec t = parse_one("(ineq t (claim (< 1 2)))");
  const VerifyOutcome ot = verify_serial(t);
  CHECK(ot.status == VerifyStatus::kProven);
  CHECK(ot.cells == 1);
  CHECK(ot.min_margin == doctest::Approx(1.0).epsilon(1e-12));

  const IneqSpec f = parse_one("(ineq f (claim (> 1 2)))");
  const VerifyOutcome of = verify_serial(f);
  CHECK(of.status == VerifyStatus::kFailed);
  CHECK(of.cells == 1);
  for (int i = 0; i < 6; ++i) CHECK(contains(f.domain.y[i], of.witness[i]));
}

TEST_CASE("dihedral claims on a small box") {
  const VerifyOutcome hi = verify_serial(boxed_claim(2.0, 2.1, "(< (dih) 1.35)"));
  CHECK(hi.status == VerifyStatus::kProven);
  CHECK(hi.min_margin > 0);
  CHECK(hi.cells < 100000);

  const VerifyOutcome lo = verify_serial(boxed_claim(2.0, 2.1, "(> (dih) 1.1)"));
  CHECK(lo.status == VerifyStatus::kProven);

  // The equilateral point has dih = acos(1/3) > 1.23, so this claim fails.
  const IneqSpec bad = boxed_claim(2.0, 2.1, "(< (dih) 1.23)");
  const VerifyOutcome ob = verify_serial(bad);
  REQUIRE(ob.status == VerifyStatus::kFailed);
  for (int i = 0; i < 6; ++i) CHECK(contains(bad.domain.y[i], ob.witness[i]));
  CHECK(!holds_at(bad.claim, ob.witness));
  for (const auto& c : bad.constraints) CHECK(holds_at(c, ob.witness));
}

TEST_CASE("serial and parallel kernels walk the same tree") {
  const std::vector<std::string> claims{
      "(< (dih) 1.35)", "(> (dih) 1.1)", "(< (+ (dih) (sol)) 2.0)"};
  for (const std::string& c : claims) {
    const IneqSpec s = boxed_claim(2.0, 2.1, c);
    const VerifyOutcome a = verify_serial(s);
    VerifyOptions one;
    one.threads = 1;
    VerifyOptions four;
    four.threads = 4;
    const VerifyOutcome b = verify_parallel(s, one);
    const VerifyOutcome d = verify_parallel(s, four);
    REQUIRE(a.status == VerifyStatus::kProven);
    CHECK(b.status == a.status);
    CHECK(d.status == a.status);
    CHECK(b.cells == a.cells);  // same split tree, counted fully by both
    CHECK(d.cells == a.cells);
    CHECK(b.min_margin == a.min_margin);  // folded over the same leaves
    CHECK(d.min_margin == b.min_margin);
  }

  // Reruns are bitwise-stable.
  const IneqSpec s = boxed_claim(2.0, 2.1, "(< (dih) 1.35)");
  const VerifyOutcome r1 = verify_serial(s), r2 = verify_serial(s);
  CHECK(r1.cells == r2.cells);
  CHECK(r1.min_margin == r2.min_margin);
}

TEST_CASE("cell budget exhaustion is reported, not mislabeled") {
  VerifyOptions tight;
  tight.max_cells = 3;
  const IneqSpec s = boxed_claim(2.0, 2.1, "(< (dih) 1.35)");
  const VerifyOutcome a = verify_serial(s, tight);
  CHECK(a.status == VerifyStatus::kUnknown);
  CHECK(a.cells == 3);
  CHECK(a.note == "cell budget exhausted");
  const VerifyOutcome b = verify_parallel(s, tight);
  CHECK(b.status == VerifyStatus::kUnknown);
  CHECK(b.cells == 3);
}

TEST_CASE("committed dihedral bounds and direct facts all prove") {
  const auto dih_specs = load_specs("dih_bounds.ineq");
  REQUIRE(dih_specs.size() == 8);
  for (const IneqSpec& s : dih_specs) {
    CAPTURE(s.id);
    const VerifyOutcome o = verify_serial(s);
    CHECK(o.status == VerifyStatus::kProven);
    CHECK(o.min_margin > 0);
    CHECK(o.cells > 1);
    CHECK(o.cells <= 1000000);
  }

  const auto facts = load_specs("direct_facts.ineq");
  REQUIRE(facts.size() == 3);
  for (const IneqSpec& s : facts) {
    CAPTURE(s.id);
    const VerifyOutcome o = verify_serial(s);
    CHECK(o.status == VerifyStatus::kProven);
    CHECK(o.cells == 1);
    CHECK(o.min_margin > 0);
  }
}

TEST_CASE("falsified variants are never proven") {
  // Shifting each bound well past the true extremum makes the claim false;
  // the prover must find a counterexample (or at worst run out of budget).
  const double kShift = 0.3;
  VerifyOptions opts;
  opts.max_cells = 50000;
  for (IneqSpec s : load_specs("dih_bounds.ineq")) {
    CAPTURE(s.id);
    REQUIRE(s.claim.rhs.kind == IneqExpr::kNumber);
    const double delta =
        s.claim.rel == IneqRel::kLt || s.claim.rel == IneqRel::kLe ? -kShift
                                                                   : kShift;
    s.claim.rhs.number =
        Interval(s.claim.rhs.number.lo + delta, s.claim.rhs.number.hi + delta);
    const VerifyOutcome o = verify_serial(s, opts);
    CHECK(o.status != VerifyStatus::kProven);
    if (o.status == VerifyStatus::kFailed) {
      CHECK(!holds_at(s.claim, o.witness));
      for (const auto& c : s.constraints) CHECK(holds_at(c, o.witness));
      for (int i = 0; i < 6; ++i)
        CHECK(contains(s.domain.y[i], o.witness[i]));
    }
    const VerifyOutcome p = verify_parallel(s, opts);
    CHECK(p.status != VerifyStatus::kProven);
  }
}

TEST_CASE("report formatting") {
  VerifyOutcome a;
  a.status = VerifyStatus::kProven;
  a.cells = 17;
  a.seconds = 0.25;
  VerifyOutcome b;
  b.status = VerifyStatus::kFailed;
  b.cells = 3;
  const std::string tsv = verify_report_tsv({{"one", a}, {"two", b}});
  CHECK(tsv.substr(0, 23) == "id\tstatus\tcells\tseconds");
  CHECK(tsv.find("one\tproven\t17\t0.250\n") != std::string::npos);
  CHECK(tsv.find("two\tfailed\t3\t") != std::string::npos);
}
