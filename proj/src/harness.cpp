#include "ffr/harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ffr {
namespace {

std::uint64_t ipow_u64(std::uint64_t base, int e) {
  std::uint64_t v = 1;
  for (int i = 0; i < e; ++i) v *= base;
  return v;
}

long long ceil_threshold(double constant, double q, double exponent) {
  const double x = constant * std::pow(q, exponent);
  const double nearest = std::nearbyint(x);
  if (std::abs(x - nearest) < 1e-9) return static_cast<long long>(nearest);
  return static_cast<long long>(std::ceil(x));
}

// the isotropic-type control set: pairs (t, i*t), padded with a zero
// coordinate in odd dimension; every resultant value is 0
std::optional<PointSet> control_set(FieldPtr field, int d) {
  const Field& f = *field;
  if (f.q() % 4 != 1 || d < 2) return std::nullopt;
  const int pairs = (d % 2 == 0) ? d / 2 : (d - 1) / 2;
  if (pairs < 1) return std::nullopt;
  const Elt i = f.sqrt_minus_one();
  std::vector<PointIndex> pts;
  const std::uint64_t count = ipow_u64(f.q(), pairs);
  std::vector<Elt> coords(d, Elt(0));
  for (std::uint64_t v = 0; v < count; ++v) {
    std::uint64_t rest = v;
    for (int j = 0; j < pairs; ++j) {
      const Elt t(static_cast<std::uint16_t>(rest % f.q()));
      rest /= f.q();
      coords[2 * j] = t;
      coords[2 * j + 1] = f.mul(i, t);
    }
    if (d % 2 == 1) coords[d - 1] = f.zero();
    pts.push_back(encode_point(f, coords));
  }
  return PointSet(field, d, std::move(pts));
}

bool target_met(const DeltaSet& delta, bool target_full) {
  return target_full ? delta.covers_full : delta.covers_star;
}

long long missing_against_target(const DeltaSet& delta, std::uint32_t q, bool target_full) {
  long long have = static_cast<long long>(delta.values.size());
  if (target_full) return static_cast<long long>(q) - have;
  const bool has_zero = !delta.values.empty() && delta.values.front().v == 0;
  return static_cast<long long>(q) - 1 - (have - (has_zero ? 1 : 0));
}

struct SweepSetup {
  FieldPtr field;
  PointSet variety;
  std::optional<PolynomialExpr> poly;
};

SweepSetup prepare(const ExperimentConfig& config) {
  SweepSetup s;
  s.field = Field::build(config.p, config.n);
  s.variety = build_variety(s.field, config.d, config.variety, &s.poly);
  return s;
}

SweepResult run_sweep(const ExperimentConfig& config, const char* theorem) {
  const bool t2 = std::string(theorem) == "t2";
  if (t2) {
    if (config.d != 2) throw std::invalid_argument("curve sweep requires d = 2");
    if (config.k < 4) throw std::invalid_argument("curve sweep requires k >= 4");
  } else {
    if (config.k < 3) throw std::invalid_argument("regular-variety sweep requires k >= 3");
    if (config.d < 2) throw std::invalid_argument("sweep requires d >= 2");
  }

  SweepSetup setup = prepare(config);
  const Field& f = *setup.field;

  SweepResult result;
  result.theorem = theorem;
  result.config = config;
  result.q = f.q();
  result.variety_name = config.variety;
  result.variety_size = setup.variety.size();
  result.coverage_target_full = !t2 && (config.d % 2 == 1);

  if (t2) {
    if (!setup.poly.has_value())
      throw std::invalid_argument("curve sweep needs a defining polynomial");
    const auto factors = linear_factor_test(*setup.poly);
    if (!factors.empty())
      throw std::invalid_argument("curve sweep rejects a degenerate curve: found linear factor " +
                                  print_polynomial(factors.front()));
  }

  result.regularity = regularity_report(setup.variety);
  result.regularity_certified = result.regularity.is_regular;
  if (!result.regularity_certified)
    result.notes.push_back("variety failed the regularity thresholds; sweep results are not certified");

  result.exponent = t2 ? 0.5 + 1.0 / (2.0 * config.k - 4.0)
                       : (config.d - 1) / 2.0 + 1.0 / (config.k - 1.0);
  result.threshold_size = ceil_threshold(config.threshold_constant, f.q(), result.exponent);
  result.effective_threshold =
      std::min<long long>(result.threshold_size, static_cast<long long>(setup.variety.size()));
  result.clamped = result.effective_threshold < result.threshold_size;
  if (result.clamped)
    result.notes.push_back("threshold size exceeds |V|; sizes clamped to the full variety");

  std::vector<std::size_t> schedule;
  if (config.sizes.has_value()) {
    const auto [lo, hi, step] = *config.sizes;
    if (lo < 1 || hi < lo || step < 1) throw std::invalid_argument("bad size schedule");
    for (long long s = lo; s <= hi; s += step)
      schedule.push_back(static_cast<std::size_t>(
          std::min<long long>(s, static_cast<long long>(setup.variety.size()))));
  } else {
    schedule.push_back(static_cast<std::size_t>(result.effective_threshold));
  }
  std::sort(schedule.begin(), schedule.end());
  schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());

  std::uint64_t counter = 0;
  for (std::size_t size : schedule) {
    SizeSummary summary;
    summary.size = size;
    summary.meets_threshold = static_cast<long long>(size) >= result.effective_threshold;
    summary.trials = config.trials;
    for (int trial = 0; trial < config.trials; ++trial) {
      const std::uint64_t trial_seed = mix_seed(config.seed, counter++);
      PointSet sample = sample_subset(setup.variety, size, trial_seed);
      const DeltaSet delta = delta_k(sample, config.k);
      TrialResult row;
      row.q = f.q();
      row.d = config.d;
      row.k = config.k;
      row.variety = config.variety;
      row.size = size;
      row.trial = trial;
      row.covers_star = delta.covers_star;
      row.covers_full = delta.covers_full;
      row.missing = missing_against_target(delta, f.q(), result.coverage_target_full);
      row.seed = trial_seed;
      summary.covered += target_met(delta, result.coverage_target_full) ? 1 : 0;
      result.rows.push_back(std::move(row));
    }

    if (config.exhaustive) {
      if (setup.variety.size() > 20) {
        summary.note = "exhaustive check skipped: |V| > 20";
      } else {
        double combos = 1.0;
        for (std::size_t i = 0; i < size; ++i)
          combos *= static_cast<double>(setup.variety.size() - i) / static_cast<double>(i + 1);
        if (combos > static_cast<double>(config.exhaustive_cap)) {
          summary.note = "exhaustive check skipped: too many subsets";
        } else {
          std::uint64_t checked = 0, violations = 0;
          std::vector<std::size_t> pick(size);
          for (std::size_t i = 0; i < size; ++i) pick[i] = i;
          for (;;) {
            std::vector<PointIndex> pts;
            pts.reserve(size);
            for (std::size_t i : pick) pts.push_back(setup.variety.members[i]);
            const DeltaSet delta = delta_k(PointSet(setup.field, config.d, std::move(pts)), config.k);
            ++checked;
            if (!target_met(delta, result.coverage_target_full)) ++violations;
            // next combination
            std::size_t i = size;
            while (i > 0) {
              --i;
              if (pick[i] != i + setup.variety.size() - size) break;
            }
            if (pick[i] == i + setup.variety.size() - size) break;
            ++pick[i];
            for (std::size_t j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
          }
          summary.exhaustive_checked = checked;
          summary.exhaustive_violations = violations;
        }
      }
    }
    result.summaries.push_back(std::move(summary));
  }

  // known-degenerate control: resultant sets collapse to {0}
  if (auto control = control_set(setup.field, config.d)) {
    const DeltaSet delta = delta_k(*control, config.k);
    TrialResult row;
    row.q = f.q();
    row.d = config.d;
    row.k = config.k;
    row.variety = "isotropic-control";
    row.size = control->size();
    row.trial = -1;
    row.covers_star = delta.covers_star;
    row.covers_full = delta.covers_full;
    row.missing = missing_against_target(delta, f.q(), result.coverage_target_full);
    row.seed = 0;
    result.rows.push_back(std::move(row));
  } else {
    result.notes.push_back("isotropic control skipped: -1 is not a square in F_q");
  }

  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const TrialResult& a, const TrialResult& b) {
                     return std::tie(a.size, a.trial) < std::tie(b.size, b.trial);
                   });
  return result;
}

}  // namespace

bool SweepResult::all_trials_covered() const {
  for (const SizeSummary& s : summaries)
    if (s.covered != s.trials) return false;
  return true;
}

std::string SweepResult::to_csv() const {
  std::ostringstream out;
  out << "q,d,k,variety,size,trial,covers_star,covers_full,missing,seed\n";
  for (const TrialResult& r : rows)
    out << r.q << ',' << r.d << ',' << r.k << ',' << r.variety << ',' << r.size << ','
        << r.trial << ',' << (r.covers_star ? 1 : 0) << ',' << (r.covers_full ? 1 : 0) << ','
        << r.missing << ',' << r.seed << '\n';
  return out.str();
}

PointSet sample_subset(const PointSet& variety, std::size_t size, std::uint64_t seed) {
  if (size < 1) throw std::invalid_argument("sample size must be >= 1");
  if (size > variety.size()) throw std::invalid_argument("sample size exceeds |V|");
  std::vector<PointIndex> pool = variety.members;  // sorted by construction
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.bounded(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  return PointSet(variety.field, variety.dim, std::move(pool));
}

PointSet build_variety(FieldPtr field, int d, const std::string& spec,
                       std::optional<PolynomialExpr>* poly_out) {
  auto set_poly = [&](PolynomialExpr poly) {
    if (poly_out) *poly_out = std::move(poly);
  };
  if (spec.rfind("sphere:", 0) == 0) {
    const long j = std::stol(spec.substr(7));
    if (j < 0 || j >= static_cast<long>(field->q()))
      throw std::invalid_argument("sphere radius must be an element index in [0, q)");
    const Elt radius(static_cast<std::uint16_t>(j));
    set_poly(sphere_polynomial(field, d, radius));
    return sphere(field, d, radius);
  }
  if (spec == "paraboloid") {
    set_poly(paraboloid_polynomial(field, d));
    return paraboloid(field, d);
  }
  if (spec.rfind("poly:", 0) == 0) {
    PolynomialExpr poly = parse_polynomial(spec.substr(5), field, d);
    PointSet v = zero_set(poly);
    set_poly(std::move(poly));
    return v;
  }
  throw std::invalid_argument("variety spec must be sphere:J, paraboloid or poly:EXPR");
}

SweepResult run_theorem1_sweep(const ExperimentConfig& config) { return run_sweep(config, "t1"); }

SweepResult run_theorem2_sweep(const ExperimentConfig& config) { return run_sweep(config, "t2"); }

bool SharpnessReport::all_pass() const {
  for (const SharpnessCase& c : cases)
    if (!c.skipped && !c.pass) return false;
  return true;
}

namespace {

std::pair<int, int> factor_prime_power(std::uint32_t q) {
  for (int p = 2; static_cast<std::uint64_t>(p) * p <= q; ++p) {
    if (q % p == 0) {
      int n = 0;
      std::uint32_t rest = q;
      while (rest % p == 0) {
        rest /= p;
        ++n;
      }
      if (rest != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
      return {p, n};
    }
  }
  return {static_cast<int>(q), 1};
}

std::string delta_description(const DeltaSet& delta, const Field& f) {
  std::string out = "{";
  for (std::size_t i = 0; i < delta.values.size() && i < 12; ++i) {
    if (i) out += ",";
    out += f.to_string(delta.values[i]);
  }
  if (delta.values.size() > 12) out += ",...";
  out += "} (size " + std::to_string(delta.values.size()) + ")";
  return out;
}

std::vector<Elt> squares_of(const Field& f) {
  std::vector<char> seen(f.q(), 0);
  for (std::uint32_t x = 0; x < f.q(); ++x) seen[f.square(Elt(static_cast<std::uint16_t>(x))).v] = 1;
  std::vector<Elt> out;
  for (std::uint32_t x = 0; x < f.q(); ++x)
    if (seen[x]) out.push_back(Elt(static_cast<std::uint16_t>(x)));
  return out;
}

}  // namespace

SharpnessReport run_sharpness_suite(const std::vector<std::uint32_t>& field_orders, int d,
                                    const std::vector<int>& ks) {
  SharpnessReport report;
  for (std::uint32_t q : field_orders) {
    SharpnessCase base;
    base.q = q;
    FieldPtr field;
    try {
      const auto [p, n] = factor_prime_power(q);
      field = Field::build(p, n);
    } catch (const std::exception& e) {
      base.construction = "field";
      base.skipped = true;
      base.reason = e.what();
      report.cases.push_back(base);
      continue;
    }
    const Field& f = *field;

    // odd-dimension extremal set: every resultant value is a square
    for (int k : ks) {
      SharpnessCase c = base;
      c.construction = "sharp-odd";
      c.d = d;
      c.k = k;
      if (d % 2 == 0 || d < 3) {
        c.skipped = true;
        c.reason = "needs odd d >= 3";
      } else if (q % 4 != 1) {
        c.skipped = true;
        c.reason = "-1 is not a square in F_q";
      } else {
        try {
          const PointSet e = construct_sharp_example(field, d);
          c.expected_size = ipow_u64(q, (d + 1) / 2);
          c.actual_size = e.size();
          const auto squares = squares_of(f);
          const DeltaSet delta = delta_k(e, k);
          c.expected = "squares of F_q (size " + std::to_string((q + 1) / 2) + ")";
          c.observed = delta_description(delta, f);
          c.pass = (c.actual_size == c.expected_size) && (delta.values == squares);
        } catch (const std::exception& ex) {
          c.skipped = true;
          c.reason = ex.what();
        }
      }
      report.cases.push_back(std::move(c));
    }

    // even-dimension isotropic set: the resultant set collapses to {0}
    const int d_even = (d % 2 == 0) ? d : d - 1;
    for (int k : ks) {
      SharpnessCase c = base;
      c.construction = "isotropic";
      c.d = d_even;
      c.k = k;
      if (d_even < 2) {
        c.skipped = true;
        c.reason = "needs even d >= 2";
      } else if (q % 4 != 1) {
        c.skipped = true;
        c.reason = "-1 is not a square in F_q";
      } else {
        try {
          const PointSet e = construct_isotropic_example(field, d_even);
          c.expected_size = ipow_u64(q, d_even / 2);
          c.actual_size = e.size();
          const DeltaSet delta = delta_k(e, k);
          c.expected = "{0}";
          c.observed = delta_description(delta, f);
          c.pass = (c.actual_size == c.expected_size) && delta.values.size() == 1 &&
                   delta.values.front() == f.zero();
        } catch (const std::exception& ex) {
          c.skipped = true;
          c.reason = ex.what();
        }
      }
      report.cases.push_back(std::move(c));
    }

    // subfield set: the distance set stays inside the prime subfield
    {
      SharpnessCase c = base;
      c.construction = "subfield";
      c.d = std::max(2, d % 2 == 0 ? d : d - 1);
      c.k = 2;
      if (f.n() != 2) {
        c.skipped = true;
        c.reason = "needs a quadratic extension field";
      } else {
        try {
          const PointSet e = construct_subfield_example(field, c.d);
          c.expected_size = ipow_u64(static_cast<std::uint32_t>(f.p()), c.d);
          c.actual_size = e.size();
          const DeltaSet delta = delta_k(e, 2);
          c.expected = "subset of the prime subfield (size <= " + std::to_string(f.p()) + ")";
          c.observed = delta_description(delta, f);
          bool inside = delta.values.size() <= static_cast<std::size_t>(f.p());
          for (Elt t : delta.values) inside = inside && t.v < static_cast<std::uint32_t>(f.p());
          c.pass = (c.actual_size == c.expected_size) && inside;
        } catch (const std::exception& ex) {
          c.skipped = true;
          c.reason = ex.what();
        }
      }
      report.cases.push_back(std::move(c));
    }
  }
  return report;
}

ThresholdResult threshold_search(const PointSet& variety, int k, int trials, std::uint64_t seed) {
  if (variety.members.empty()) throw std::invalid_argument("threshold search needs a nonempty variety");
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const Field& f = *variety.field;
  const int d = variety.dim;
  const bool target_full = (d % 2 == 1);

  ThresholdResult result;
  result.variety_size = variety.size();
  result.exponent_regular = (d - 1) / 2.0 + 1.0 / (k - 1.0);
  if (d == 2 && k >= 4) result.exponent_curve = 0.5 + 1.0 / (2.0 * k - 4.0);
  const RegularityReport reg = regularity_report(variety);
  result.regularity_certified = reg.is_regular;
  if (!reg.is_regular)
    result.notes.push_back("variety failed the regularity thresholds; search results are not certified");

  auto passes = [&](std::size_t size) {
    for (int trial = 0; trial < trials; ++trial) {
      const std::uint64_t s = mix_seed(seed, size * 1000003ULL + static_cast<std::uint64_t>(trial));
      const DeltaSet delta = delta_k(sample_subset(variety, size, s), k);
      if (!target_met(delta, target_full)) return false;
    }
    return true;
  };

  if (!passes(variety.size())) {
    result.transition_found = false;
    result.notes.push_back("coverage not achieved even at |E| = |V|: no transition");
    return result;
  }
  std::size_t lo = 0, hi = variety.size();
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (passes(mid))
      hi = mid;
    else
      lo = mid;
  }
  result.transition_found = true;
  result.threshold_size = hi;
  result.log_q_threshold = std::log(static_cast<double>(hi)) / std::log(static_cast<double>(f.q()));
  result.verified_at_threshold = passes(hi);
  if (hi / 2 >= 1) result.failed_at_half = !passes(hi / 2);
  return result;
}

}  // namespace ffr
