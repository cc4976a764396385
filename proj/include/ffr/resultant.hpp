#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffr/fourier.hpp"
#include "ffr/pointset.hpp"
#include "ffr/polynomial.hpp"

namespace ffr {

// Values ||e1 x^1 + ... + ek x^k|| over k-tuples from E, with the fixed sign
// pattern e = (+, -, ..., -). Always computed by two independent routes
// (iterated set arithmetic, and the support of the spectral counting
// function) which must agree.
struct DeltaSet {
  std::vector<Elt> values;  // sorted
  bool covers_star = false;
  bool covers_full = false;
  std::vector<int> sign_pattern;

  bool contains(Elt t) const;
};

// Counting function nu_k(t) = #{(x^1,...,x^k) in E^k : ||x^1-...-x^k|| = t},
// with the split nu = M_t + R_t into the zero-frequency main term and the
// spectral remainder, and the decay-based bound on |R_t|.
struct NuEntry {
  long long count = 0;
  double main_term = 0.0;             // M_t = q^{-d} |S_t| |E|^k
  double remainder = 0.0;             // R_t (measured)
  double remainder_bound = 0.0;        // 2 q^{dk-(d+1)/2} sum_{m != 0} |Ehat(m)|^k
  double remainder_bound_all_m = 0.0;  // variant without the factor 2, summed over all m
  bool decay_admissible = true;       // false exactly for t = 0 in even d
};

struct NuProfile {
  int k = 0;
  std::vector<NuEntry> by_t;  // indexed by the field value t
  long long total = 0;        // == |E|^k
};

enum class EnergyMethod { brute, spectral, both };

// Lambda_k(E) for even k: the number of k-tuples whose two half-sums agree.
struct EnergyValue {
  int k = 0;
  long long lambda = 0;
  EnergyMethod method = EnergyMethod::both;
};

// One measured inequality: left <= constant * right with the constant
// reported; `pass` is set only where the constant is pinned (exact
// identities and constant-1 inequalities).
struct BoundRow {
  std::string name;
  double left = 0.0;
  double right = 0.0;
  double constant = 0.0;  // left / right
  bool applicable = true;
  std::optional<bool> pass;
  std::string note;
};

struct BoundLedger {
  int k = 0;
  std::vector<BoundRow> rows;
  bool exact_rows_pass() const;
  const BoundRow* find(const std::string& name) const;
};

DeltaSet delta_k(const PointSet& set, int k, const std::vector<int>* sign_pattern = nullptr);

// {sum_{i<j} zeta_ij x^i . x^j} over k-tuples of E, zeta_1j = +1 and -1
// otherwise; defined for E on the unit sphere, where its cardinality
// matches |Delta_k(E)|.
std::vector<Elt> dot_product_resultant(const PointSet& set, int k);

NuProfile nu_profile(const PointSet& set, int k);

EnergyValue energy(const PointSet& set, int k, EnergyMethod method = EnergyMethod::both);

// sum_m |Ehat(m)|^k for any k >= 2
double spectral_moment(const PointSet& set, int k);

// Evaluates the energy recursion, the induction bounds, the corollary rows
// (when |E| > q^{(d-1)/2}), the extension-estimate constant (d = 2,
// nondegenerate variety polynomial supplied) and the coverage-sufficiency
// test with its prediction cross-checked against the measured resultant set.
BoundLedger bound_ledger(const PointSet& set, const PointSet& variety, int k,
                         const PolynomialExpr* variety_poly = nullptr,
                         double coverage_margin = 4.0);

}  // namespace ffr
