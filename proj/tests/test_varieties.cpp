#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "ffr/common.hpp"
#include "ffr/varieties.hpp"

using namespace ffr;

namespace {

PointIndex pt(const Field& f, std::vector<int> coords) {
  std::vector<Elt> c;
  for (int v : coords) c.push_back(Elt(static_cast<std::uint16_t>(v)));
  return encode_point(f, c);
}

// enumeration oracle for the zero set
std::set<PointIndex> brute_zero_set(const PolynomialExpr& poly) {
  const Field& f = *poly.field;
  std::uint64_t cells = 1;
  for (int i = 0; i < poly.dim; ++i) cells *= f.q();
  std::set<PointIndex> out;
  for (std::uint64_t idx = 0; idx < cells; ++idx) {
    const auto coords = decode_point(f, poly.dim, static_cast<PointIndex>(idx));
    if (evaluate(poly, coords) == f.zero()) out.insert(static_cast<PointIndex>(idx));
  }
  return out;
}

}  // namespace

TEST_CASE("zero sets") {
  auto f3 = Field::build(3, 1);
  const PointSet hyperplane = zero_set(parse_polynomial("x1", f3, 2));
  CHECK(hyperplane.size() == 3);
  for (PointIndex idx : hyperplane.members)
    CHECK(decode_point(*f3, 2, idx)[0] == f3->zero());

  const PointSet circle = zero_set(parse_polynomial("x1^2+x2^2-1", f3, 2));
  const std::vector<PointIndex> expected{pt(*f3, {0, 1}), pt(*f3, {0, 2}), pt(*f3, {1, 0}),
                                         pt(*f3, {2, 0})};
  std::vector<PointIndex> sorted = expected;
  std::sort(sorted.begin(), sorted.end());
  CHECK(circle.members == sorted);

  CHECK(zero_set(parse_polynomial("1", f3, 2)).size() == 0);

  // random cross-check against direct evaluation
  SplitMix64 rng(17);
  auto f9 = Field::build(3, 2);
  for (int rep = 0; rep < 10; ++rep) {
    PolynomialExpr poly{f9, 2, {}};
    for (int t = 0; t < 4; ++t) {
      Monomial mono{static_cast<std::uint16_t>(rng.bounded(3)),
                    static_cast<std::uint16_t>(rng.bounded(3))};
      poly.add_term(mono, Elt(static_cast<std::uint16_t>(rng.bounded(9))));
    }
    if (poly.is_zero()) continue;
    const auto brute = brute_zero_set(poly);
    const PointSet v = zero_set(poly);
    CHECK(std::set<PointIndex>(v.members.begin(), v.members.end()) == brute);
  }
}

TEST_CASE("sphere sizes match the closed form on a full sweep") {
  for (auto [p, n] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    auto f = Field::build(p, n);
    for (int d = 2; d <= 3; ++d) {
      const auto spheres = all_spheres(f, d);  // checks the formula internally
      std::uint64_t total = 0;
      for (const auto& s : spheres) total += s.size();
      std::uint64_t cells = 1;
      for (int i = 0; i < d; ++i) cells *= f->q();
      CHECK(total == cells);
    }
  }
}

TEST_CASE("pinned sphere cardinalities") {
  auto f3 = Field::build(3, 1);
  CHECK(sphere(f3, 2, Elt(1)).size() == 4);
  CHECK(sphere_cardinality_formula(*f3, 2, Elt(1)) == 4);
  CHECK(sphere(f3, 3, Elt(0)).size() == 9);
  CHECK(sphere_cardinality_formula(*f3, 3, Elt(0)) == 9);
  auto f5 = Field::build(5, 1);
  CHECK(sphere(f5, 2, Elt(0)).size() == 9);
  CHECK(sphere_cardinality_formula(*f5, 2, Elt(0)) == 9);
  CHECK_THROWS_AS(sphere_cardinality_formula(*f5, 1, Elt(0)), std::invalid_argument);
}

TEST_CASE("paraboloid") {
  auto f3 = Field::build(3, 1);
  const PointSet p3 = paraboloid(f3, 2);
  CHECK(p3.size() == 3);
  for (PointIndex idx : p3.members) {
    const auto c = decode_point(*f3, 2, idx);
    CHECK(f3->square(c[0]) == c[1]);  // graph of x -> x^2
  }
  auto f5 = Field::build(5, 1);
  CHECK(paraboloid(f5, 3).size() == 25);
  CHECK(paraboloid(f3, 3).contains(pt(*f3, {1, 1, 2})));  // 1 + 1 = 2
}

TEST_CASE("regularity reports") {
  auto f5 = Field::build(5, 1);
  const auto sphere_rep = regularity_report(sphere(f5, 3, Elt(1)));
  CHECK(sphere_rep.c_decay <= 2.0 + 1e-9);
  CHECK(sphere_rep.is_regular);

  const auto parab_rep = regularity_report(paraboloid(f5, 2));
  CHECK(parab_rep.c_size == 1.0);
  CHECK(parab_rep.c_decay <= 2.0 + 1e-9);

  // hyperplane: |Vhat(m)| = 1/q on the dual line, so the decay constant is
  // sqrt(q) > 2 for q >= 5
  const auto hyper_rep = regularity_report(zero_set(parse_polynomial("x1", f5, 2)));
  CHECK(hyper_rep.c_decay == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK_FALSE(hyper_rep.is_regular);

  CHECK_THROWS_AS(regularity_report(zero_set(parse_polynomial("1", f5, 2))),
                  std::invalid_argument);
}

TEST_CASE("linear factors") {
  auto f3 = Field::build(3, 1);
  const auto xy = linear_factor_test(parse_polynomial("x1*x2", f3, 2));
  REQUIRE(xy.size() == 2);
  CHECK(print_polynomial(xy[0]) == "x1");
  CHECK(print_polynomial(xy[1]) == "x2");

  CHECK(linear_factor_test(parse_polynomial("x1^2+x2^2-1", f3, 2)).empty());

  auto f5 = Field::build(5, 1);
  const auto iso = linear_factor_test(parse_polynomial("x1^2+x2^2", f5, 2));
  REQUIRE(iso.size() == 2);
  CHECK(print_polynomial(iso[0]) == "x1 + 2*x2");
  CHECK(print_polynomial(iso[1]) == "x1 + 3*x2");

  CHECK_THROWS_AS(linear_factor_test(parse_polynomial("0", f3, 2)), std::invalid_argument);

  // randomized self-test: plant linear factors next to a factor-free
  // quadratic and recover exactly the planted ones
  SplitMix64 rng(42);
  for (int rep = 0; rep < 8; ++rep) {
    const PolynomialExpr quad = parse_polynomial("x1^2+x2^2-1", f3, 2);  // no linear factors
    std::set<std::string> planted;
    PolynomialExpr prod = quad;
    for (int i = 0; i < 2; ++i) {
      const int b = static_cast<int>(rng.bounded(3));
      const int c = static_cast<int>(rng.bounded(3));
      const PolynomialExpr lin = parse_polynomial(
          "x1 + " + std::to_string(b) + "*x2 + " + std::to_string(c), f3, 2);
      planted.insert(print_polynomial(lin));
      prod = poly_mul(prod, lin);
    }
    std::set<std::string> found;
    for (const auto& factor : linear_factor_test(prod)) found.insert(print_polynomial(factor));
    CHECK(found == planted);
  }
}

TEST_CASE("sharp example") {
  auto f5 = Field::build(5, 1);
  const PointSet e5 = construct_sharp_example(f5, 3);
  CHECK(e5.size() == 25);
  CHECK(f5->sqrt_minus_one() == Elt(2));
  // every pairwise difference has a square norm
  const auto eta_ok = [&](Elt t) { return f5->eta(t) >= 0; };
  for (PointIndex a : e5.members)
    for (PointIndex b : e5.members) {
      const auto ca = decode_point(*f5, 3, a);
      const auto cb = decode_point(*f5, 3, b);
      std::vector<Elt> diff(3);
      for (int i = 0; i < 3; ++i) diff[i] = f5->sub(ca[i], cb[i]);
      CHECK(eta_ok(norm_of(*f5, diff)));
    }

  auto f13 = Field::build(13, 1);
  CHECK(construct_sharp_example(f13, 3).size() == 169);
  CHECK(f13->sqrt_minus_one() == Elt(5));

  auto f7 = Field::build(7, 1);
  CHECK_THROWS_AS(construct_sharp_example(f7, 3), std::invalid_argument);
  CHECK_THROWS_AS(construct_sharp_example(f5, 2), std::invalid_argument);
}

TEST_CASE("isotropic example") {
  auto f5 = Field::build(5, 1);
  const PointSet e = construct_isotropic_example(f5, 2);
  CHECK(e.size() == 5);
  std::vector<PointIndex> expected;
  for (int t = 0; t < 5; ++t) expected.push_back(pt(*f5, {t, (2 * t) % 5}));
  std::sort(expected.begin(), expected.end());
  CHECK(e.members == expected);
  for (PointIndex idx : e.members) CHECK(e.norm(idx) == f5->zero());

  CHECK(construct_isotropic_example(f5, 4).size() == 25);
  auto f13 = Field::build(13, 1);
  CHECK(construct_isotropic_example(f13, 2).size() == 13);
  CHECK_THROWS_AS(construct_isotropic_example(f5, 3), std::invalid_argument);
}

TEST_CASE("subfield example") {
  auto f9 = Field::build(3, 2);
  const PointSet e = construct_subfield_example(f9, 2);
  CHECK(e.size() == 9);
  for (PointIndex idx : e.members) {
    const auto c = decode_point(*f9, 2, idx);
    CHECK(c[0].v < 3);
    CHECK(c[1].v < 3);
  }
  CHECK_THROWS_AS(construct_subfield_example(f9, 1), std::invalid_argument);
  auto f5 = Field::build(5, 1);
  CHECK_THROWS_AS(construct_subfield_example(f5, 2), std::invalid_argument);
}
