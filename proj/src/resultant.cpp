#include "ffr/resultant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ffr/varieties.hpp"

namespace ffr {
namespace {

long long checked_pow_ll(long long base, int e) {
  long long v = 1;
  for (int i = 0; i < e; ++i) {
    if (base != 0 && v > std::numeric_limits<long long>::max() / base)
      throw numerical_failure("integer power overflows 64 bits");
    v *= base;
  }
  return v;
}

double dpow(double base, double e) { return std::pow(base, e); }

long long round_count(double spectral_real, double spectral_imag, const std::string& what) {
  const double rounded = std::nearbyint(spectral_real);
  const double residual = std::hypot(spectral_real - rounded, spectral_imag);
  if (!(residual < kIntegerResidualGate))
    throw numerical_failure(what + ": rounding residual " + std::to_string(residual) +
                            " exceeds the 1e-3 gate (q^d too large for double precision)");
  return static_cast<long long>(rounded);
}

std::vector<std::vector<Elt>> decode_all(const Field& f, int dim,
                                         const std::vector<PointIndex>& pts) {
  std::vector<std::vector<Elt>> out;
  out.reserve(pts.size());
  for (PointIndex idx : pts) out.push_back(decode_point(f, dim, idx));
  return out;
}

PointIndex encode_coords(const Field& f, const std::vector<Elt>& coords) {
  std::uint64_t v = 0;
  for (std::size_t i = coords.size(); i-- > 0;) v = v * f.q() + coords[i].v;
  return static_cast<PointIndex>(v);
}

void validate_signs(const std::vector<int>& signs, int k) {
  if (static_cast<int>(signs.size()) != k)
    throw std::invalid_argument("sign pattern length must equal k");
  for (int s : signs)
    if (s != 1 && s != -1) throw std::invalid_argument("sign pattern entries must be +1 or -1");
}

std::vector<int> default_signs(int k) {
  std::vector<int> signs(k, -1);
  signs[0] = 1;
  return signs;
}

// support of sum_j sign_j x^j over tuples from E, by iterated set arithmetic
std::vector<PointIndex> signed_sum_support(const PointSet& set, const std::vector<int>& signs) {
  const Field& f = *set.field;
  const int d = set.dim;
  const std::uint64_t cells = grid_cells(f, d);
  const auto e_coords = decode_all(f, d, set.members);

  std::vector<PointIndex> cur;
  cur.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (signs[0] == 1) {
      cur.push_back(set.members[i]);
    } else {
      std::vector<Elt> c = e_coords[i];
      for (Elt& x : c) x = f.neg(x);
      cur.push_back(encode_coords(f, c));
    }
  }
  std::sort(cur.begin(), cur.end());
  cur.erase(std::unique(cur.begin(), cur.end()), cur.end());

  for (std::size_t j = 1; j < signs.size(); ++j) {
    std::vector<char> mark(cells, 0);
    std::vector<PointIndex> next;
    for (PointIndex s : cur) {
      const auto s_coords = decode_point(f, d, s);
      std::vector<Elt> out(d);
      for (const auto& e : e_coords) {
        for (int i = 0; i < d; ++i)
          out[i] = (signs[j] == 1) ? f.add(s_coords[i], e[i]) : f.sub(s_coords[i], e[i]);
        const PointIndex idx = encode_coords(f, out);
        if (!mark[idx]) {
          mark[idx] = 1;
          next.push_back(idx);
        }
      }
    }
    std::sort(next.begin(), next.end());
    cur = std::move(next);
  }
  return cur;
}

// nu values for an arbitrary sign pattern, by the spectral identity:
// nu(t) = q^{dk} sum_m Shat_t(m) prod_j Ehat_or_conj(m)
std::vector<long long> nu_counts_spectral(const PointSet& set, const std::vector<int>& signs) {
  const Field& f = *set.field;
  const int d = set.dim;
  const int k = static_cast<int>(signs.size());
  const auto spheres = all_spheres(set.field, d);

  const Spectrum ehat = forward_transform(GridFunction::indicator(set));
  const std::size_t cells = ehat.values.size();

  // prod_j over the pattern: conj(Ehat) for +, Ehat for -
  int plus = 0;
  for (int s : signs) plus += (s == 1);
  std::vector<cplx> weight(cells);
  for (std::size_t m = 0; m < cells; ++m) {
    cplx w = 1.0;
    const cplx e = ehat.values[m];
    const cplx ec = std::conj(e);
    for (int i = 0; i < plus; ++i) w *= ec;
    for (int i = plus; i < k; ++i) w *= e;
    weight[m] = w;
  }

  const double qdk = dpow(static_cast<double>(f.q()), static_cast<double>(d) * k);
  std::vector<long long> counts(f.q());
  for (std::uint32_t t = 0; t < f.q(); ++t) {
    const Spectrum shat = forward_transform(GridFunction::indicator(spheres[t]));
    cplx acc = 0.0;
    for (std::size_t m = 0; m < cells; ++m) acc += shat.values[m] * weight[m];
    acc *= qdk;
    counts[t] = round_count(acc.real(), acc.imag(), "nu_" + std::to_string(k));
  }
  return counts;
}

long long brute_energy_histogram(const PointSet& set, int k) {
  const Field& f = *set.field;
  const int d = set.dim;
  const std::uint64_t cells = grid_cells(f, d);
  const int half = k / 2;
  const double cost = static_cast<double>(half) * static_cast<double>(cells) *
                      static_cast<double>(set.size());
  if (cost > 5e8) throw std::invalid_argument("brute-force energy budget exceeded");
  if (dpow(static_cast<double>(set.size()), k - 1) > 4e18)
    throw std::invalid_argument("brute-force energy would overflow 64-bit counts");

  const auto e_coords = decode_all(f, d, set.members);
  std::vector<long long> hist(cells, 0);
  for (PointIndex idx : set.members) hist[idx] = 1;
  std::vector<Elt> out(d);
  for (int stage = 2; stage <= half; ++stage) {
    std::vector<long long> next(cells, 0);
    for (std::uint64_t z = 0; z < cells; ++z) {
      if (hist[z] == 0) continue;
      const auto z_coords = decode_point(f, d, static_cast<PointIndex>(z));
      for (const auto& e : e_coords) {
        for (int i = 0; i < d; ++i) out[i] = f.add(z_coords[i], e[i]);
        next[encode_coords(f, out)] += hist[z];
      }
    }
    hist = std::move(next);
  }
  unsigned __int128 lambda = 0;
  for (long long h : hist) lambda += static_cast<unsigned __int128>(h) * static_cast<unsigned __int128>(h);
  if (lambda > static_cast<unsigned __int128>(std::numeric_limits<long long>::max()))
    throw numerical_failure("energy overflows 64 bits");
  return static_cast<long long>(lambda);
}

long long spectral_energy(const PointSet& set, int k) {
  const Field& f = *set.field;
  const double moment = spectral_moment(set, k);
  const double lambda = moment * dpow(static_cast<double>(f.q()),
                                      static_cast<double>(set.dim) * (k - 1));
  return round_count(lambda, 0.0, "Lambda_" + std::to_string(k));
}

// affordable brute value, otherwise spectral; reports which one was used
std::pair<long long, bool> energy_any_method(const PointSet& set, int k) {
  const std::uint64_t cells = grid_cells(*set.field, set.dim);
  const double cost = 0.5 * k * static_cast<double>(cells) * static_cast<double>(set.size());
  if (cost <= 5e8 && dpow(static_cast<double>(set.size()), k - 1) <= 4e18)
    return {brute_energy_histogram(set, k), true};
  return {spectral_energy(set, k), false};
}

}  // namespace

bool DeltaSet::contains(Elt t) const {
  return std::binary_search(values.begin(), values.end(), t);
}

DeltaSet delta_k(const PointSet& set, int k, const std::vector<int>* sign_pattern) {
  if (set.members.empty()) throw std::invalid_argument("resultant set of an empty set");
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  const std::vector<int> signs = sign_pattern ? *sign_pattern : default_signs(k);
  validate_signs(signs, k);
  const Field& f = *set.field;

  // route (a): norms of the iterated signed sumset
  const auto support = signed_sum_support(set, signs);
  std::vector<char> seen(f.q(), 0);
  for (PointIndex idx : support) seen[set.norm(idx).v] = 1;
  std::vector<Elt> via_sets;
  for (std::uint32_t t = 0; t < f.q(); ++t)
    if (seen[t]) via_sets.push_back(Elt(static_cast<std::uint16_t>(t)));

  // route (b): support of the counting function
  const auto counts = nu_counts_spectral(set, signs);
  std::vector<Elt> via_nu;
  for (std::uint32_t t = 0; t < f.q(); ++t)
    if (counts[t] > 0) via_nu.push_back(Elt(static_cast<std::uint16_t>(t)));

  if (via_sets != via_nu)
    throw std::logic_error("resultant-set routes disagree (set arithmetic vs counting function)");

  DeltaSet out;
  out.values = std::move(via_sets);
  out.sign_pattern = signs;
  out.covers_full = out.values.size() == f.q();
  std::size_t nonzero = out.values.size();
  if (!out.values.empty() && out.values.front() == f.zero()) --nonzero;
  out.covers_star = nonzero == f.q() - 1;
  return out;
}

std::vector<Elt> dot_product_resultant(const PointSet& set, int k) {
  if (set.members.empty()) throw std::invalid_argument("dot-product resultant of an empty set");
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  const Field& f = *set.field;
  const int d = set.dim;
  for (PointIndex idx : set.members)
    if (!(set.norm(idx) == f.one()))
      throw std::invalid_argument("dot-product resultant requires E contained in the unit sphere");

  const std::uint64_t cells = grid_cells(f, d);
  const std::uint64_t states = cells * f.q();
  if (states > 100000000ULL)
    throw std::invalid_argument("dot-product resultant state space q^(d+1) exceeds the budget");
  const auto e_coords = decode_all(f, d, set.members);

  // state (w, u): w the running signed vector sum, u the running bilinear value
  std::vector<char> cur(states, 0);
  for (PointIndex e : set.members) cur[static_cast<std::uint64_t>(e) * f.q()] = 1;

  std::vector<Elt> diff(d);
  for (int stage = 2; stage <= k; ++stage) {
    std::vector<char> next(states, 0);
    for (std::uint64_t w = 0; w < cells; ++w) {
      const std::uint64_t base = w * f.q();
      bool active = false;
      for (std::uint32_t u = 0; u < f.q(); ++u)
        if (cur[base + u]) {
          active = true;
          break;
        }
      if (!active) continue;
      const auto w_coords = decode_point(f, d, static_cast<PointIndex>(w));
      for (std::size_t ei = 0; ei < e_coords.size(); ++ei) {
        const auto& e = e_coords[ei];
        Elt dot = f.zero();
        for (int i = 0; i < d; ++i) {
          dot = f.add(dot, f.mul(w_coords[i], e[i]));
          diff[i] = f.sub(w_coords[i], e[i]);
        }
        const std::uint64_t next_base = static_cast<std::uint64_t>(encode_coords(f, diff)) * f.q();
        for (std::uint32_t u = 0; u < f.q(); ++u)
          if (cur[base + u]) next[next_base + f.add(Elt(static_cast<std::uint16_t>(u)), dot).v] = 1;
      }
    }
    cur = std::move(next);
  }

  std::vector<char> seen(f.q(), 0);
  for (std::uint64_t w = 0; w < cells; ++w) {
    const std::uint64_t base = w * f.q();
    for (std::uint32_t u = 0; u < f.q(); ++u)
      if (cur[base + u]) seen[u] = 1;
  }
  std::vector<Elt> values;
  for (std::uint32_t u = 0; u < f.q(); ++u)
    if (seen[u]) values.push_back(Elt(static_cast<std::uint16_t>(u)));
  return values;
}

NuProfile nu_profile(const PointSet& set, int k) {
  if (set.members.empty()) throw std::invalid_argument("counting function of an empty set");
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  const Field& f = *set.field;
  const int d = set.dim;
  const auto spheres = all_spheres(set.field, d);
  const Spectrum ehat = forward_transform(GridFunction::indicator(set));
  const std::size_t cells = ehat.values.size();

  std::vector<cplx> weight(cells);
  double moment_all = 0.0, moment_nonzero = 0.0;
  for (std::size_t m = 0; m < cells; ++m) {
    const cplx e = ehat.values[m];
    cplx w = std::conj(e);
    for (int i = 1; i < k; ++i) w *= e;
    weight[m] = w;
    const double mag = dpow(std::abs(e), k);
    moment_all += mag;
    if (m != 0) moment_nonzero += mag;
  }

  const double q_d = static_cast<double>(cells);
  const double qdk = dpow(static_cast<double>(f.q()), static_cast<double>(d) * k);
  const double size_pow_k = dpow(static_cast<double>(set.size()), k);
  const double decay_scale = qdk / dpow(static_cast<double>(f.q()), (d + 1) / 2.0);

  NuProfile profile;
  profile.k = k;
  profile.by_t.resize(f.q());
  long long sum = 0;
  for (std::uint32_t t = 0; t < f.q(); ++t) {
    const Spectrum shat = forward_transform(GridFunction::indicator(spheres[t]));
    cplx acc = 0.0;
    for (std::size_t m = 0; m < cells; ++m) acc += shat.values[m] * weight[m];
    acc *= qdk;
    NuEntry& entry = profile.by_t[t];
    entry.count = round_count(acc.real(), acc.imag(), "nu_" + std::to_string(k));
    entry.main_term = static_cast<double>(spheres[t].size()) * size_pow_k / q_d;
    entry.remainder = acc.real() - entry.main_term;
    entry.remainder_bound = 2.0 * decay_scale * moment_nonzero;
    entry.remainder_bound_all_m = decay_scale * moment_all;
    entry.decay_admissible = (d % 2 == 1) || t != 0;
    sum += entry.count;
  }
  profile.total = checked_pow_ll(static_cast<long long>(set.size()), k);
  if (sum != profile.total)
    throw numerical_failure("counting function does not conserve |E|^k");

  // exact cross-check against direct enumeration when affordable
  if (dpow(static_cast<double>(set.size()), k) <= 1e7) {
    const auto e_coords = decode_all(f, d, set.members);
    std::vector<long long> brute(f.q(), 0);
    std::vector<Elt> acc(d);
    auto recurse = [&](auto&& self, int depth) -> void {
      if (depth == k) {
        brute[norm_of(f, acc).v] += 1;
        return;
      }
      const std::vector<Elt> saved = acc;
      for (const auto& e : e_coords) {
        for (int i = 0; i < d; ++i) acc[i] = f.sub(saved[i], e[i]);
        self(self, depth + 1);
      }
      acc = saved;
    };
    for (const auto& e : e_coords) {
      acc = e;
      recurse(recurse, 1);
    }
    for (std::uint32_t t = 0; t < f.q(); ++t)
      if (brute[t] != profile.by_t[t].count)
        throw std::logic_error("spectral counting function disagrees with enumeration");
  }
  return profile;
}

EnergyValue energy(const PointSet& set, int k, EnergyMethod method) {
  if (set.members.empty()) throw std::invalid_argument("energy of an empty set");
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("energy needs an even k >= 2");
  EnergyValue out;
  out.k = k;
  out.method = method;
  switch (method) {
    case EnergyMethod::brute:
      out.lambda = brute_energy_histogram(set, k);
      break;
    case EnergyMethod::spectral:
      out.lambda = spectral_energy(set, k);
      break;
    case EnergyMethod::both: {
      const long long brute = brute_energy_histogram(set, k);
      const long long spectral = spectral_energy(set, k);
      if (brute != spectral)
        throw std::logic_error("energy methods disagree: brute " + std::to_string(brute) +
                               ", spectral " + std::to_string(spectral));
      out.lambda = brute;
      break;
    }
  }
  return out;
}

double spectral_moment(const PointSet& set, int k) {
  if (set.members.empty()) throw std::invalid_argument("spectral moment of an empty set");
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  const Spectrum ehat = forward_transform(GridFunction::indicator(set));
  double sum = 0.0;
  for (const cplx& v : ehat.values) sum += dpow(std::abs(v), k);
  return sum;
}

bool BoundLedger::exact_rows_pass() const {
  for (const BoundRow& row : rows)
    if (row.applicable && row.pass.has_value() && !*row.pass) return false;
  return true;
}

const BoundRow* BoundLedger::find(const std::string& name) const {
  for (const BoundRow& row : rows)
    if (row.name == name) return &row;
  return nullptr;
}

BoundLedger bound_ledger(const PointSet& set, const PointSet& variety, int k,
                         const PolynomialExpr* variety_poly, double coverage_margin) {
  require_same_space(set, variety);
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  for (PointIndex idx : set.members)
    if (!variety.contains(idx)) throw std::invalid_argument("E is not contained in V");

  const Field& f = *set.field;
  const int d = set.dim;
  const double q = static_cast<double>(f.q());
  const double size = static_cast<double>(set.size());
  const bool even = (k % 2 == 0);

  BoundLedger ledger;
  ledger.k = k;

  // energies used by the rows below
  auto lam = [&](int j) { return energy_any_method(set, j); };
  const long long lam2 = lam(2).first;
  const long long lam4 = lam(4).first;
  long long lam_k = 0, lam_km2 = 0, lam_km1 = 0, lam_kp1 = 0;
  bool lam_k_brute = false, lam_km1_brute = false;
  if (even) {
    std::tie(lam_k, lam_k_brute) = lam(k);
    if (k >= 4) std::tie(lam_km2, std::ignore) = lam(k - 2);
  } else {
    std::tie(lam_km1, lam_km1_brute) = lam(k - 1);
    std::tie(lam_kp1, std::ignore) = lam(k + 1);
  }

  const double moment_k = spectral_moment(set, k);

  auto push = [&](BoundRow row) { ledger.rows.push_back(std::move(row)); };
  auto ratio_row = [&](std::string name, double left, double right, std::string note = "") {
    BoundRow row;
    row.name = std::move(name);
    row.left = left;
    row.right = right;
    row.constant = (right != 0.0) ? left / right : std::numeric_limits<double>::infinity();
    row.note = std::move(note);
    return row;
  };

  // identity between the k-th spectral moment and the even energy
  {
    const int j = even ? k : k - 1;
    const long long lam_j = even ? lam_k : lam_km1;
    const bool brute_used = even ? lam_k_brute : lam_km1_brute;
    const double moment_j = even ? moment_k : spectral_moment(set, j);
    BoundRow row = ratio_row("moment-energy-identity", moment_j * dpow(q, d * (j - 1)),
                             static_cast<double>(lam_j));
    row.pass = std::abs(row.left - row.right) < kIntegerResidualGate;
    row.note = brute_used ? "energy from exact histogram count" : "energy from the spectral route";
    push(std::move(row));
  }

  if (!even) {
    const double rhs = dpow(q, -static_cast<double>(d) * k + d) *
                       std::sqrt(static_cast<double>(lam_km1) * static_cast<double>(lam_kp1));
    BoundRow row = ratio_row("moment-interpolation", moment_k, rhs);
    row.pass = row.left <= row.right * (1.0 + 1e-9);
    push(std::move(row));
  }
  {
    BoundRow row = ratio_row("moment-trivial-bound", moment_k,
                             dpow(size, k - 1) / dpow(q, static_cast<double>(d) * (k - 1)));
    row.pass = row.left <= row.right * (1.0 + 1e-9);
    push(std::move(row));
  }

  if (even && k >= 4) {
    push(ratio_row("energy-recursion", static_cast<double>(lam_k),
                   dpow(q, d - 1) * static_cast<double>(lam_km2) + dpow(size, k - 1) / q));
    double tail = 0.0;
    for (int j = 0; j <= (k - 4) / 2; ++j) tail += dpow(q, (d - 1) * j) * dpow(size, -2 * j);
    push(ratio_row("energy-induction-from-2", static_cast<double>(lam_k),
                   dpow(q, (d - 1) * (k - 2) / 2.0) * static_cast<double>(lam2) +
                       dpow(size, k - 1) / q * tail));
    if (k >= 6) {
      double tail2 = 0.0;
      for (int j = 0; j <= (k - 6) / 2; ++j) tail2 += dpow(q, (d - 1) * j) * dpow(size, -2 * j);
      push(ratio_row("energy-induction-from-4", static_cast<double>(lam_k),
                     dpow(q, (d - 1) * (k - 4) / 2.0) * static_cast<double>(lam4) +
                         dpow(size, k - 1) / q * tail2));
    }
  }

  const bool large_enough = size > dpow(q, (d - 1) / 2.0);
  const std::string gate_note = "requires |E| > q^((d-1)/2)";
  auto gated = [&](BoundRow row) {
    if (!large_enough) {
      row.applicable = false;
      row.note = gate_note;
    }
    push(std::move(row));
  };
  if (even) {
    gated(ratio_row("energy-vs-size", static_cast<double>(lam_k),
                    dpow(q, (d - 1) * (k - 2) / 2.0) * size + dpow(size, k - 1) / q));
    if (k >= 6)
      gated(ratio_row("energy-vs-quad-energy", static_cast<double>(lam_k),
                      dpow(q, (d - 1) * (k - 4) / 2.0) * static_cast<double>(lam4) +
                          dpow(size, k - 1) / q));
  } else {
    gated(ratio_row("energy-product-vs-size",
                    static_cast<double>(lam_km1) * static_cast<double>(lam_kp1),
                    dpow(q, (d - 1.0) * (k - 2)) * size * size +
                        dpow(q, ((d - 1.0) * (k - 3) - 2) / 2.0) * dpow(size, k + 1) +
                        dpow(size, 2.0 * k - 2) / (q * q)));
    if (k >= 7)
      gated(ratio_row("energy-product-vs-quad-energy",
                      static_cast<double>(lam_km1) * static_cast<double>(lam_kp1),
                      dpow(q, (d - 1.0) * (k - 4)) * dpow(static_cast<double>(lam4), 2.0) +
                          dpow(q, ((d - 1.0) * (k - 5) - 2) / 2.0) * static_cast<double>(lam4) *
                              dpow(size, k) +
                          dpow(size, 2.0 * k - 2) / (q * q)));
  }

  // extension-estimate constant on a certified nondegenerate curve
  {
    BoundRow row = ratio_row("extension-constant", static_cast<double>(lam4), size * size);
    if (d != 2) {
      row.applicable = false;
      row.note = "curve constant is defined for d = 2";
    } else if (variety_poly == nullptr) {
      row.applicable = false;
      row.note = "no variety polynomial supplied";
    } else if (!linear_factor_test(*variety_poly).empty()) {
      row.applicable = false;
      row.note = "variety polynomial has a linear factor";
    } else if (!regularity_report(variety).is_regular) {
      row.applicable = false;
      row.note = "variety failed the regularity thresholds";
    } else {
      row.note = "C = Lambda_4(E) / |E|^2 on a nondegenerate regular curve";
    }
    push(std::move(row));
  }

  // coverage sufficiency: |E|^k large against q^{(d+1)/2} X predicts that
  // the resultant set fills F_q^* (even d) or F_q (odd d)
  {
    const double x_value = even
                               ? static_cast<double>(lam_k)
                               : std::sqrt(static_cast<double>(lam_km1) * static_cast<double>(lam_kp1));
    BoundRow row = ratio_row("coverage-sufficiency", dpow(size, k),
                             dpow(q, (d + 1) / 2.0) * x_value);
    const bool predicted = row.constant >= coverage_margin;
    const DeltaSet delta = delta_k(set, k);
    const bool covered = (d % 2 == 0) ? delta.covers_star : delta.covers_full;
    row.pass = !predicted || covered;
    row.note = std::string(predicted ? "predicted" : "not predicted") + " at margin " +
               std::to_string(coverage_margin) + "; coverage " + (covered ? "observed" : "absent");
    push(std::move(row));
  }

  return ledger;
}

}  // namespace ffr
