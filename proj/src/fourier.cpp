#include "ffr/fourier.hpp"

namespace ffr {
namespace {

enum class Direction { Forward, Inverse };

// one length-q transform along every axis in turn
std::vector<cplx> transform(const Field& field, int dim, const std::vector<cplx>& input,
                            Direction dir) {
  const std::uint32_t q = field.q();
  std::vector<cplx> data = input;
  std::vector<cplx> row(q), out(q);
  const double scale = (dir == Direction::Forward) ? 1.0 / q : 1.0;

  std::size_t stride = 1;
  for (int axis = 0; axis < dim; ++axis) {
    const std::size_t block = stride * q;
    for (std::size_t base0 = 0; base0 < data.size(); base0 += block) {
      for (std::size_t offset = 0; offset < stride; ++offset) {
        const std::size_t base = base0 + offset;
        for (std::uint32_t j = 0; j < q; ++j) row[j] = data[base + j * stride];
        for (std::uint32_t m = 0; m < q; ++m) {
          const Elt me(static_cast<std::uint16_t>(m));
          cplx acc = 0.0;
          for (std::uint32_t j = 0; j < q; ++j) {
            const Elt prod = field.mul(me, Elt(static_cast<std::uint16_t>(j)));
            const cplx kernel = (dir == Direction::Forward) ? field.chi_neg(prod) : field.chi(prod);
            acc += kernel * row[j];
          }
          out[m] = acc * scale;
        }
        for (std::uint32_t m = 0; m < q; ++m) data[base + m * stride] = out[m];
      }
    }
    stride = block;
  }
  return data;
}

}  // namespace

GridFunction::GridFunction(FieldPtr f, int d) : field(std::move(f)), dim(d) {
  values.assign(grid_cells(*field, dim), cplx(0.0));
}

GridFunction GridFunction::indicator(const PointSet& set) {
  GridFunction f(set.field, set.dim);
  for (PointIndex idx : set.members) f.values[idx] = 1.0;
  return f;
}

Spectrum forward_transform(const GridFunction& f) {
  return Spectrum{f.field, f.dim, transform(*f.field, f.dim, f.values, Direction::Forward)};
}

GridFunction inverse_transform(const Spectrum& spectrum) {
  GridFunction g(spectrum.field, spectrum.dim);
  g.values = transform(*spectrum.field, spectrum.dim, spectrum.values, Direction::Inverse);
  return g;
}

double plancherel_residual(const GridFunction& f) {
  Spectrum spec = forward_transform(f);
  double lhs = 0.0, rhs = 0.0;
  for (const cplx& v : spec.values) lhs += std::norm(v);
  for (const cplx& v : f.values) rhs += std::norm(v);
  rhs /= static_cast<double>(f.values.size());
  return std::abs(lhs - rhs);
}

}  // namespace ffr
