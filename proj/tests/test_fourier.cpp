#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffr/common.hpp"
#include "ffr/fourier.hpp"

using namespace ffr;

namespace {

// independent O(q^{2d}) oracle: the defining double sum, evaluated directly
std::vector<cplx> naive_forward(const GridFunction& f) {
  const Field& field = *f.field;
  const std::size_t cells = f.values.size();
  std::vector<cplx> out(cells);
  for (std::size_t m = 0; m < cells; ++m) {
    cplx acc = 0.0;
    for (std::size_t x = 0; x < cells; ++x) {
      const auto mc = decode_point(field, f.dim, static_cast<PointIndex>(m));
      const auto xc = decode_point(field, f.dim, static_cast<PointIndex>(x));
      Elt dot = field.zero();
      for (int i = 0; i < f.dim; ++i) dot = field.add(dot, field.mul(mc[i], xc[i]));
      acc += field.chi_neg(dot) * f.values[x];
    }
    out[m] = acc / static_cast<double>(cells);
  }
  return out;
}

GridFunction random_grid(FieldPtr field, int d, SplitMix64& rng, bool complex_valued = true) {
  GridFunction f(field, d);
  for (auto& v : f.values) {
    const double re = static_cast<double>(rng.bounded(2000)) / 1000.0 - 1.0;
    const double im = complex_valued ? static_cast<double>(rng.bounded(2000)) / 1000.0 - 1.0 : 0.0;
    v = {re, im};
  }
  return f;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("indicator of the origin transforms to the constant q^-d") {
  auto field = Field::build(5, 1);
  GridFunction f(field, 2);
  f.values[0] = 1.0;
  const Spectrum spec = forward_transform(f);
  for (const cplx& v : spec.values) CHECK(std::abs(v - cplx(1.0 / 25.0, 0.0)) < 1e-12);
}

TEST_CASE("constant function concentrates at the zero frequency") {
  auto field = Field::build(3, 1);
  GridFunction f(field, 2);
  for (auto& v : f.values) v = 1.0;
  const Spectrum spec = forward_transform(f);
  CHECK(std::abs(spec.values[0] - cplx(1.0, 0.0)) < 1e-12);
  for (std::size_t m = 1; m < spec.values.size(); ++m) CHECK(std::abs(spec.values[m]) < 1e-12);
}

TEST_CASE("zero frequency of an indicator is the density") {
  auto field = Field::build(3, 1);
  PointSet e(field, 2, {0, 2, 4, 7, 8});
  const Spectrum spec = forward_transform(GridFunction::indicator(e));
  CHECK(std::abs(spec.values[0].real() - 5.0 / 9.0) < 1e-12 * (5.0 / 9.0));
  CHECK(std::abs(spec.values[0].imag()) < 1e-15);
}

TEST_CASE("inverse of zero is zero; single spike inverts to a character") {
  auto field = Field::build(5, 1);
  Spectrum spec{field, 2, std::vector<cplx>(25, 0.0)};
  GridFunction g = inverse_transform(spec);
  for (const cplx& v : g.values) CHECK(std::abs(v) == 0.0);

  const PointIndex m0 = 7;
  spec.values[m0] = 1.0;
  g = inverse_transform(spec);
  const auto mc = decode_point(*field, 2, m0);
  for (std::size_t x = 0; x < g.values.size(); ++x) {
    const auto xc = decode_point(*field, 2, static_cast<PointIndex>(x));
    Elt dot = field->zero();
    for (int i = 0; i < 2; ++i) dot = field->add(dot, field->mul(mc[i], xc[i]));
    CHECK(std::abs(g.values[x] - field->chi(dot)) < 1e-12);
  }
}

TEST_CASE("round trip within 1e-9") {
  SplitMix64 rng(2024);
  for (auto [p, n, d] : {std::tuple{5, 1, 2}, {3, 1, 3}, {3, 2, 2}, {7, 1, 2}}) {
    auto field = Field::build(p, n);
    for (int rep = 0; rep < 5; ++rep) {
      GridFunction f = random_grid(field, d, rng);
      GridFunction back = inverse_transform(forward_transform(f));
      CHECK(max_abs_diff(f.values, back.values) < 1e-9);
    }
  }
}

TEST_CASE("Parseval mass of an indicator and the residual bound") {
  auto field = Field::build(5, 1);
  PointSet e(field, 2, {1, 2, 3, 5, 8, 13, 21});
  GridFunction f = GridFunction::indicator(e);
  const Spectrum spec = forward_transform(f);
  double mass = 0.0;
  for (const cplx& v : spec.values) mass += std::norm(v);
  CHECK(std::abs(mass - 7.0 / 25.0) < 1e-12);
  CHECK(plancherel_residual(f) < 1e-9 * (7.0 / 25.0));

  GridFunction zero(field, 2);
  CHECK(plancherel_residual(zero) == 0.0);

  SplitMix64 rng(7);
  auto f27 = Field::build(3, 1);
  for (int rep = 0; rep < 10; ++rep) {
    GridFunction g = random_grid(f27, 3, rng);
    double energy = 0.0;
    for (const cplx& v : g.values) energy += std::norm(v);
    energy /= static_cast<double>(g.values.size());
    CHECK(plancherel_residual(g) < 1e-9 * energy);
  }
}

TEST_CASE("dimension splitting equals the naive double sum") {
  SplitMix64 rng(99);
  for (auto [p, n, d] : {std::tuple{5, 1, 2}, {3, 1, 3}, {3, 2, 2}, {5, 1, 3}, {7, 1, 2}}) {
    auto field = Field::build(p, n);
    GridFunction f = random_grid(field, d, rng);
    const Spectrum spec = forward_transform(f);
    CHECK(max_abs_diff(spec.values, naive_forward(f)) < 1e-10);
  }
}

TEST_CASE("real input gives a conjugate-symmetric spectrum") {
  SplitMix64 rng(5);
  auto field = Field::build(5, 1);
  GridFunction f = random_grid(field, 2, rng, /*complex_valued=*/false);
  const Spectrum spec = forward_transform(f);
  for (std::size_t m = 0; m < spec.values.size(); ++m) {
    const auto mc = decode_point(*field, 2, static_cast<PointIndex>(m));
    std::vector<Elt> neg(2);
    for (int i = 0; i < 2; ++i) neg[i] = field->neg(mc[i]);
    const PointIndex mneg = encode_point(*field, neg);
    CHECK(std::abs(spec.values[m] - std::conj(spec.values[mneg])) < 1e-12);
  }
}

TEST_CASE("grid budget is enforced") {
  auto field = Field::build(31, 1);
  CHECK_THROWS_AS(GridFunction(field, 5), std::invalid_argument);  // 31^5 > 10^6
}
