// Acceptance suite: every release criterion is run at its stated tolerance
// and reported as a single pass/fail line. Exit status is the number of
// failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ffr/common.hpp"
#include "ffr/harness.hpp"
#include "ffr/resultant.hpp"
#include "ffr/varieties.hpp"

using namespace ffr;

namespace {

int failures = 0;

void report(int number, const std::string& label, bool pass, const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", number, label.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

PointSet random_points(FieldPtr f, int d, std::size_t size, SplitMix64& rng) {
  std::uint64_t cells = 1;
  for (int i = 0; i < d; ++i) cells *= f->q();
  std::vector<PointIndex> pts;
  while (pts.size() < size) {
    const PointIndex idx = static_cast<PointIndex>(rng.bounded(cells));
    if (std::find(pts.begin(), pts.end(), idx) == pts.end()) pts.push_back(idx);
  }
  return PointSet(f, d, std::move(pts));
}

std::vector<long long> brute_nu(const PointSet& e, int k) {
  const Field& f = *e.field;
  std::vector<long long> counts(f.q(), 0);
  std::vector<std::vector<Elt>> coords;
  for (PointIndex idx : e.members) coords.push_back(decode_point(f, e.dim, idx));
  std::vector<std::size_t> pick(k, 0);
  for (;;) {
    std::vector<Elt> acc = coords[pick[0]];
    for (int j = 1; j < k; ++j)
      for (int i = 0; i < e.dim; ++i) acc[i] = f.sub(acc[i], coords[pick[j]][i]);
    counts[norm_of(f, acc).v] += 1;
    int j = k - 1;
    while (j >= 0 && ++pick[j] == coords.size()) pick[j--] = 0;
    if (j < 0) break;
  }
  return counts;
}

const std::vector<std::pair<int, int>> kSmallFields{{3, 1}, {5, 1}, {7, 1},
                                                    {3, 2}, {11, 1}, {13, 1}};

// 1. enumerated sphere sizes match the closed form exactly
void criterion_1() {
  std::uint64_t checked = 0;
  bool ok = true;
  for (auto [p, n] : kSmallFields) {
    auto f = Field::build(p, n);
    for (int d = 2; d <= 4; ++d) {
      const auto spheres = all_spheres(f, d);
      for (std::uint32_t t = 0; t < f->q(); ++t) {
        ok = ok && spheres[t].size() ==
                       sphere_cardinality_formula(*f, d, Elt(static_cast<std::uint16_t>(t)));
        ++checked;
      }
    }
  }
  report(1, "sphere cardinality matches the closed form (0 tolerance)", ok,
         std::to_string(checked) + " (q,d,t) triples");
}

// 2. sphere Fourier decay constant <= 2 at admissible parameters
void criterion_2() {
  bool ok = true;
  double worst = 0.0;
  for (auto [p, n] : kSmallFields) {
    auto f = Field::build(p, n);
    for (int d = 2; d <= 4; ++d) {
      const auto spheres = all_spheres(f, d);
      for (std::uint32_t t = 0; t < f->q(); ++t) {
        if (d % 2 == 0 && t == 0) continue;
        if (spheres[t].members.empty()) continue;
        const Spectrum spec = forward_transform(GridFunction::indicator(spheres[t]));
        double best = 0.0;
        for (std::size_t m = 1; m < spec.values.size(); ++m)
          best = std::max(best, std::abs(spec.values[m]));
        const double constant = best * std::pow(static_cast<double>(f->q()), (d + 1) / 2.0);
        worst = std::max(worst, constant);
        ok = ok && constant <= 2.0 + 1e-9;
      }
    }
  }
  report(2, "sphere Fourier decay constant <= 2 + 1e-9", ok,
         "max over admissible (q,d,t): " + std::to_string(worst));
}

// 3. transform engine: round trip, Parseval, and the naive double-sum oracle
void criterion_3() {
  SplitMix64 rng(30303);
  bool ok = true;
  double worst_rt = 0.0, worst_pl = 0.0, worst_naive = 0.0;
  const std::vector<std::tuple<int, int, int>> grids{{3, 1, 1}, {3, 1, 2}, {3, 1, 3}, {5, 1, 2},
                                                     {5, 1, 3}, {5, 1, 4}, {3, 2, 2}, {7, 1, 2},
                                                     {13, 1, 1}};
  for (auto [p, n, d] : grids) {
    auto f = Field::build(p, n);
    std::uint64_t cells = 1;
    for (int i = 0; i < d; ++i) cells *= f->q();
    for (int rep = 0; rep < 100; ++rep) {
      GridFunction g(f, d);
      for (auto& v : g.values)
        v = {static_cast<double>(rng.bounded(2000)) / 1000.0 - 1.0,
             static_cast<double>(rng.bounded(2000)) / 1000.0 - 1.0};
      const Spectrum spec = forward_transform(g);
      const GridFunction back = inverse_transform(spec);
      double rt = 0.0;
      for (std::size_t i = 0; i < g.values.size(); ++i)
        rt = std::max(rt, std::abs(g.values[i] - back.values[i]));
      double mass = 0.0;
      for (const cplx& v : g.values) mass += std::norm(v);
      mass /= static_cast<double>(cells);
      const double pl = plancherel_residual(g) / mass;
      worst_rt = std::max(worst_rt, rt);
      worst_pl = std::max(worst_pl, pl);
      ok = ok && rt < 1e-9 && pl < 1e-9;

      if (cells <= 625 && rep < 5) {
        // direct evaluation of the defining double sum
        for (std::size_t m = 0; m < cells; ++m) {
          cplx acc = 0.0;
          const auto mc = decode_point(*f, d, static_cast<PointIndex>(m));
          for (std::size_t x = 0; x < cells; ++x) {
            const auto xc = decode_point(*f, d, static_cast<PointIndex>(x));
            Elt dot = f->zero();
            for (int i = 0; i < d; ++i) dot = f->add(dot, f->mul(mc[i], xc[i]));
            acc += f->chi_neg(dot) * g.values[x];
          }
          acc /= static_cast<double>(cells);
          worst_naive = std::max(worst_naive, std::abs(acc - spec.values[m]));
          ok = ok && std::abs(acc - spec.values[m]) < 1e-10;
        }
      }
    }
  }
  report(3, "transform engine: round trip < 1e-9, Parseval < 1e-9, naive oracle < 1e-10", ok,
         "worst: " + std::to_string(worst_rt) + " / " + std::to_string(worst_pl) + " / " +
             std::to_string(worst_naive));
}

// 4. spectral counting function equals enumeration exactly
void criterion_4() {
  SplitMix64 rng(40404);
  auto f = Field::build(5, 1);
  bool ok = true;
  for (int instance = 0; instance < 50; ++instance) {
    const int k = 2 + static_cast<int>(instance % 2);
    const std::size_t size = 2 + rng.bounded(11);  // <= 12
    const PointSet e = random_points(f, 2, size, rng);
    const NuProfile profile = nu_profile(e, k);
    const auto brute = brute_nu(e, k);
    long long total = 0;
    for (std::uint32_t t = 0; t < f->q(); ++t) {
      ok = ok && profile.by_t[t].count == brute[t];
      total += profile.by_t[t].count;
    }
    long long expect = 1;
    for (int i = 0; i < k; ++i) expect *= static_cast<long long>(size);
    ok = ok && total == expect && profile.total == expect;
  }
  report(4, "counting function: spectral == enumeration on 50 instances, mass |E|^k", ok);
}

// 5. spectral energy equals histogram-convolution counts exactly
void criterion_5() {
  SplitMix64 rng(50505);
  const std::vector<std::tuple<int, int, int>> spaces{{11, 1, 2}, {7, 1, 2}, {3, 2, 2},
                                                      {5, 1, 2},  {3, 1, 4}};
  bool ok = true;
  int instance = 0;
  while (instance < 50) {
    for (auto [p, n, d] : spaces) {
      if (instance >= 50) break;
      auto f = Field::build(p, n);
      std::uint64_t cells = 1;
      for (int i = 0; i < d; ++i) cells *= f->q();
      const int k = 2 * (1 + static_cast<int>(instance % 3));  // 2, 4, 6
      const std::size_t size = 2 + rng.bounded(std::min<std::uint64_t>(cells - 2, 39));  // <= 40
      const PointSet e = random_points(f, d, size, rng);
      const long long brute = energy(e, k, EnergyMethod::brute).lambda;
      const long long spectral = energy(e, k, EnergyMethod::spectral).lambda;
      ok = ok && brute == spectral;
      ok = ok && energy(e, 2, EnergyMethod::both).lambda == static_cast<long long>(size);
      ++instance;
    }
  }
  report(5, "energy: spectral == histogram convolution on 50 instances, Lambda_2 = |E|", ok);
}

// 6. the two constant-1 moment inequalities never fail
void criterion_6() {
  SplitMix64 rng(60606);
  bool ok = true;
  int checked = 0;
  while (checked < 200) {
    for (int p : {3, 5, 7}) {
      for (int d : {2, 3}) {
        for (int k : {3, 5}) {
          if (checked >= 200) break;
          auto f = Field::build(p, 1);
          std::uint64_t cells = 1;
          for (int i = 0; i < d; ++i) cells *= f->q();
          const std::size_t size = 2 + rng.bounded(std::min<std::uint64_t>(cells - 2, 18));
          const PointSet e = random_points(f, d, size, rng);
          const double moment = spectral_moment(e, k);
          const double lam_m = static_cast<double>(energy(e, k - 1).lambda);
          const double lam_p = static_cast<double>(energy(e, k + 1).lambda);
          const double qd = std::pow(static_cast<double>(f->q()), d);
          ok = ok && moment <= std::sqrt(lam_m * lam_p) / std::pow(qd, k - 1) * (1 + 1e-9);
          ok = ok && moment <= std::pow(static_cast<double>(size), k - 1) /
                                   std::pow(qd, k - 1) * (1 + 1e-9);
          ++checked;
        }
      }
    }
  }
  report(6, "interpolation and trivial moment bounds hold on 200 random sets", ok);
}

// 7. the three extremal constructions give their exact outcomes
void criterion_7() {
  bool ok = true;
  for (int p : {5, 13}) {
    auto f = Field::build(p, 1);
    const PointSet sharp = construct_sharp_example(f, 3);
    ok = ok && sharp.size() == static_cast<std::size_t>(p) * p;
    std::set<std::uint16_t> squares;
    for (std::uint32_t x = 0; x < f->q(); ++x)
      squares.insert(f->square(Elt(static_cast<std::uint16_t>(x))).v);
    for (int k : {2, 3}) {
      const DeltaSet delta = delta_k(sharp, k);
      std::set<std::uint16_t> got;
      for (Elt t : delta.values) got.insert(t.v);
      ok = ok && got == squares && got.size() == static_cast<std::size_t>((p + 1) / 2);
    }
    const PointSet iso = construct_isotropic_example(f, 2);
    for (int k : {2, 3}) {
      const DeltaSet delta = delta_k(iso, k);
      ok = ok && delta.values.size() == 1 && delta.values.front().v == 0;
    }
  }
  auto f9 = Field::build(3, 2);
  const PointSet sub = construct_subfield_example(f9, 2);
  const DeltaSet d2 = delta_k(sub, 2);
  ok = ok && sub.size() == 9 && d2.values.size() <= 3;
  report(7, "sharpness constructions: squares / {0} / subfield-bounded, exact", ok);
}

// 8. randomized evidence on the sphere in odd dimension
void criterion_8() {
  ExperimentConfig config;
  config.p = 5;
  config.n = 2;  // q = 25
  config.d = 3;
  config.k = 3;
  config.variety = "sphere:1";
  config.threshold_constant = 4.0;
  config.trials = 20;
  config.seed = 8088;
  const SweepResult result = run_theorem1_sweep(config);
  bool ok = result.threshold_size == 500;
  int covered = 0, total = 0;
  bool control_seen = false, control_fails = false;
  for (const TrialResult& row : result.rows) {
    if (row.trial < 0) {
      control_seen = true;
      control_fails = !row.covers_star && !row.covers_full;
      continue;
    }
    ++total;
    covered += row.covers_full ? 1 : 0;
  }
  ok = ok && total == 20 && covered == 20 && control_seen && control_fails;
  report(8, "sphere sweep q=25 d=3 k=3 C=4: covers F_q in 20/20, control fails", ok,
         std::to_string(covered) + "/20 covered; threshold " +
             std::to_string(result.threshold_size));
}

// 9. randomized evidence on the circle
void criterion_9() {
  bool ok = true;
  std::string detail;
  for (int p : {5, 7}) {
    ExperimentConfig config;
    config.p = p;
    config.n = 2;  // q = 25, 49
    config.d = 2;
    config.k = 4;
    config.variety = "poly:x1^2+x2^2-1";
    config.threshold_constant = 4.0;
    config.trials = 20;
    config.seed = 9099;
    const SweepResult result = run_theorem2_sweep(config);
    int covered = 0, total = 0;
    for (const TrialResult& row : result.rows) {
      if (row.trial < 0) continue;
      ++total;
      covered += row.covers_star ? 1 : 0;
    }
    ok = ok && total == 20 && covered == 20;
    detail += "q=" + std::to_string(result.q) + ": " + std::to_string(covered) + "/20  ";
  }
  report(9, "circle sweep q in {25,49}, k=4: covers F_q^* in all trials", ok, detail);
}

// 10. extension-estimate constant tracking on the circle
void criterion_10() {
  SplitMix64 rng(101010);
  const std::vector<std::pair<int, int>> fields{{5, 1},  {7, 1},  {3, 2},  {11, 1}, {13, 1},
                                                {17, 1}, {19, 1}, {23, 1}, {5, 2},  {3, 3},
                                                {29, 1}, {31, 1}, {37, 1}, {41, 1}, {43, 1},
                                                {47, 1}, {7, 2}};
  std::map<std::uint32_t, double> max_constant;
  bool ok = true;
  double overall = 0.0;
  for (auto [p, n] : fields) {
    auto f = Field::build(p, n);
    const PointSet circle = sphere(f, 2, f->one());
    double cmax = 0.0;
    auto record = [&](const PointSet& e) {
      const double lam4 = static_cast<double>(energy(e, 4).lambda);
      const double c = lam4 / (static_cast<double>(e.size()) * static_cast<double>(e.size()));
      cmax = std::max(cmax, c);
    };
    record(circle);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t size = 2 + rng.bounded(circle.size() - 1);
      record(sample_subset(circle, size, rng.next()));
    }
    max_constant[f->q()] = cmax;
    overall = std::max(overall, cmax);
    ok = ok && cmax < 8.0;
  }
  // no growth trend: the max over larger q stays within a factor 2 of the
  // max over smaller q, at every split point
  std::vector<std::pair<std::uint32_t, double>> ordered(max_constant.begin(), max_constant.end());
  double prefix = 0.0;
  for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
    prefix = std::max(prefix, ordered[i].second);
    double suffix = 0.0;
    for (std::size_t j = i + 1; j < ordered.size(); ++j)
      suffix = std::max(suffix, ordered[j].second);
    ok = ok && suffix <= 2.0 * prefix;
  }
  report(10, "circle energy constant Lambda_4/|E|^2 < 8 with no growth trend", ok,
         "max over all q: " + std::to_string(overall));
}

// 11. dot-product route has the same cardinality as the resultant set
void criterion_11() {
  SplitMix64 rng(111111);
  auto f = Field::build(7, 1);
  const PointSet s1 = sphere(f, 3, f->one());
  bool ok = true;
  for (int instance = 0; instance < 30; ++instance) {
    const int k = 2 + static_cast<int>(instance % 2);
    const std::size_t size = 2 + rng.bounded(s1.size() - 1);
    const PointSet e = sample_subset(s1, size, rng.next());
    ok = ok && dot_product_resultant(e, k).size() == delta_k(e, k).values.size();
  }
  report(11, "|Delta_k(E)| = |Pi_k(E)| for 30 random subsets of the unit sphere", ok);
}

// 12. sweeps replay byte-for-byte
void criterion_12() {
  ExperimentConfig config;
  config.p = 3;
  config.n = 2;
  config.d = 3;
  config.k = 3;
  config.variety = "sphere:1";
  config.trials = 3;
  config.sizes = std::array<long long, 3>{30, 60, 15};
  config.seed = 121212;
  const std::string a = run_theorem1_sweep(config).to_csv();
  const std::string b = run_theorem1_sweep(config).to_csv();

  ExperimentConfig curve;
  curve.p = 5;
  curve.n = 1;
  curve.d = 2;
  curve.k = 4;
  curve.variety = "sphere:1";
  curve.trials = 4;
  curve.seed = 3;
  const std::string c = run_theorem2_sweep(curve).to_csv();
  const std::string d = run_theorem2_sweep(curve).to_csv();
  report(12, "identical seeds replay to byte-identical CSV", a == b && c == d);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  std::printf("%d of 12 criteria failed\n", failures);
  return failures;
}
