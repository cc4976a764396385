// ffr: exact computations around k-resultant modulus sets over small finite
// fields. Subcommands cover field inspection, variety certification,
// resultant/energy computations and reproducible experiment sweeps.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffr/harness.hpp"

using nlohmann::json;

namespace {

json report_to_json(const ffr::RegularityReport& rep) {
  return json{{"size", rep.size},          {"c_size", rep.c_size},
              {"c_decay", rep.c_decay},    {"is_regular", rep.is_regular},
              {"argmax_m", rep.argmax_m},  {"size_lo", rep.size_lo},
              {"size_hi", rep.size_hi},    {"decay_cap", rep.decay_cap}};
}

json delta_to_json(const ffr::DeltaSet& delta) {
  json values = json::array();
  for (ffr::Elt t : delta.values) values.push_back(t.v);
  std::string pattern;
  for (int s : delta.sign_pattern) pattern += (s == 1 ? '+' : '-');
  return json{{"values", values},
              {"size", delta.values.size()},
              {"covers_star", delta.covers_star},
              {"covers_full", delta.covers_full},
              {"sign_pattern", pattern}};
}

json ledger_to_json(const ffr::BoundLedger& ledger) {
  json rows = json::array();
  for (const auto& row : ledger.rows) {
    json r{{"name", row.name},
           {"left", row.left},
           {"right", row.right},
           {"constant", row.constant},
           {"applicable", row.applicable},
           {"note", row.note}};
    if (row.pass.has_value()) r["pass"] = *row.pass;
    rows.push_back(std::move(r));
  }
  return json{{"k", ledger.k}, {"rows", rows}, {"exact_rows_pass", ledger.exact_rows_pass()}};
}

json sweep_summary_json(const ffr::SweepResult& result) {
  json sizes = json::array();
  for (const auto& s : result.summaries) {
    json row{{"size", s.size},
             {"meets_threshold", s.meets_threshold},
             {"trials", s.trials},
             {"covered", s.covered}};
    if (s.exhaustive_checked) row["exhaustive_checked"] = *s.exhaustive_checked;
    if (s.exhaustive_violations) row["exhaustive_violations"] = *s.exhaustive_violations;
    if (!s.note.empty()) row["note"] = s.note;
    sizes.push_back(std::move(row));
  }
  return json{{"theorem", result.theorem},
              {"q", result.q},
              {"d", result.config.d},
              {"k", result.config.k},
              {"variety", result.variety_name},
              {"variety_size", result.variety_size},
              {"exponent", result.exponent},
              {"threshold_size", result.threshold_size},
              {"effective_threshold", result.effective_threshold},
              {"clamped", result.clamped},
              {"C", result.config.threshold_constant},
              {"seed", result.config.seed},
              {"coverage_target", result.coverage_target_full ? "full" : "star"},
              {"regularity_certified", result.regularity_certified},
              {"regularity", report_to_json(result.regularity)},
              {"sizes", sizes},
              {"notes", result.notes}};
}

std::vector<int> parse_signs(const std::string& text) {
  std::vector<int> signs;
  for (char c : text) {
    if (c == '+')
      signs.push_back(1);
    else if (c == '-')
      signs.push_back(-1);
    else
      throw std::invalid_argument("sign pattern must use only '+' and '-'");
  }
  return signs;
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(static_cast<T>(std::stoll(text.substr(pos, comma - pos))));
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::array<long long, 3> parse_schedule(const std::string& text) {
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("size schedule must be LO:HI:STEP");
  return {std::stoll(text.substr(0, c1)), std::stoll(text.substr(c1 + 1, c2 - c1 - 1)),
          std::stoll(text.substr(c2 + 1))};
}

std::string resolve_variety_flag(const std::string& poly, long long sphere_j, bool has_sphere,
                                 bool paraboloid) {
  const int given = (!poly.empty() ? 1 : 0) + (has_sphere ? 1 : 0) + (paraboloid ? 1 : 0);
  if (given != 1)
    throw std::invalid_argument("give exactly one of --poly, --sphere, --paraboloid");
  if (!poly.empty()) return "poly:" + poly;
  if (has_sphere) return "sphere:" + std::to_string(sphere_j);
  return "paraboloid";
}

void emit(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-field resultant-set laboratory"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- field info ----------------------------------------------------
  auto* field_cmd = app.add_subcommand("field", "field inspection");
  auto* info = field_cmd->add_subcommand("info", "print field parameters");
  int fi_p = 3, fi_n = 1;
  bool fi_json = false;
  info->add_option("--p", fi_p, "characteristic")->required();
  info->add_option("--n", fi_n, "extension degree")->required();
  info->add_flag("--json", fi_json);
  info->callback([&] {
    auto f = ffr::Field::build(fi_p, fi_n);
    const ffr::Elt minus_one = f->neg(f->one());
    if (fi_json) {
      json j{{"p", f->p()},
             {"n", f->n()},
             {"q", f->q()},
             {"modulus", f->modulus()},
             {"eta_minus_one", f->eta(minus_one)},
             {"generator", f->generator().v}};
      emit(j, "");
    } else {
      std::cout << "F_" << f->q() << " = F_" << f->p() << "^" << f->n() << "\n";
      std::cout << "modulus coefficients (constant first):";
      for (int c : f->modulus()) std::cout << ' ' << c;
      std::cout << "\n";
      std::cout << "eta(-1) = " << f->eta(minus_one) << "\n";
      std::cout << "generator = " << f->to_string(f->generator()) << " (index "
                << f->generator().v << ")\n";
    }
  });

  // ---- variety check / export ----------------------------------------
  auto* variety_cmd = app.add_subcommand("variety", "variety certification");
  auto* check = variety_cmd->add_subcommand("check", "regularity report and linear factors");
  int vc_p = 5, vc_n = 1, vc_d = 2;
  std::string vc_poly;
  long long vc_sphere = 1;
  bool vc_parab = false, vc_json = false;
  double vc_lo = 0.5, vc_hi = 2.0, vc_cap = 2.0;
  check->add_option("--p", vc_p)->required();
  check->add_option("--n", vc_n);
  check->add_option("--d", vc_d)->required();
  check->add_option("--poly", vc_poly, "defining polynomial");
  auto* vc_sphere_opt = check->add_option("--sphere", vc_sphere, "sphere radius (element index)");
  check->add_flag("--paraboloid", vc_parab);
  check->add_option("--size-lo", vc_lo);
  check->add_option("--size-hi", vc_hi);
  check->add_option("--decay-cap", vc_cap);
  check->add_flag("--json", vc_json);
  check->callback([&] {
    auto f = ffr::Field::build(vc_p, vc_n);
    const std::string spec =
        resolve_variety_flag(vc_poly, vc_sphere, vc_sphere_opt->count() > 0, vc_parab);
    std::optional<ffr::PolynomialExpr> poly;
    ffr::PointSet v = ffr::build_variety(f, vc_d, spec, &poly);
    if (v.members.empty()) throw std::invalid_argument("variety is empty; nothing to report");
    const auto rep = ffr::regularity_report(v, vc_lo, vc_hi, vc_cap);
    json factors_json = json::array();
    std::vector<std::string> factor_strings;
    if (vc_d == 2 && poly.has_value()) {
      for (const auto& factor : ffr::linear_factor_test(*poly)) {
        factor_strings.push_back(ffr::print_polynomial(factor));
        factors_json.push_back(factor_strings.back());
      }
    }
    if (vc_json) {
      json j{{"variety", spec}, {"q", f->q()}, {"d", vc_d}, {"report", report_to_json(rep)}};
      if (vc_d == 2 && poly.has_value()) {
        j["linear_factors"] = factors_json;
        j["nondegenerate"] = factor_strings.empty();
      }
      emit(j, "");
    } else {
      std::cout << "variety " << spec << " in F_" << f->q() << "^" << vc_d << "\n";
      std::cout << "|V| = " << rep.size << ", c_size = " << rep.c_size
                << ", c_decay = " << rep.c_decay << " (argmax m = " << rep.argmax_m << ")\n";
      std::cout << "regular (thresholds " << rep.size_lo << ".." << rep.size_hi << ", cap "
                << rep.decay_cap << "): " << (rep.is_regular ? "yes" : "no") << "\n";
      if (vc_d == 2 && poly.has_value()) {
        if (factor_strings.empty()) {
          std::cout << "no linear factors: nondegenerate curve\n";
        } else {
          std::cout << "linear factors:";
          for (const auto& s : factor_strings) std::cout << "  " << s;
          std::cout << "\n";
        }
      }
    }
  });

  auto* vexport = variety_cmd->add_subcommand("export", "write a variety as a point-set file");
  int ve_p = 5, ve_n = 1, ve_d = 2;
  std::string ve_poly, ve_out;
  long long ve_sphere = 1;
  bool ve_parab = false;
  vexport->add_option("--p", ve_p)->required();
  vexport->add_option("--n", ve_n);
  vexport->add_option("--d", ve_d)->required();
  vexport->add_option("--poly", ve_poly);
  auto* ve_sphere_opt = vexport->add_option("--sphere", ve_sphere);
  vexport->add_flag("--paraboloid", ve_parab);
  vexport->add_option("--out", ve_out)->required();
  vexport->callback([&] {
    auto f = ffr::Field::build(ve_p, ve_n);
    const std::string spec =
        resolve_variety_flag(ve_poly, ve_sphere, ve_sphere_opt->count() > 0, ve_parab);
    ffr::PointSet v = ffr::build_variety(f, ve_d, spec, nullptr);
    ffr::save_point_set(v, ve_out);
    std::cout << "wrote " << v.size() << " points to " << ve_out << "\n";
  });

  // ---- delta ----------------------------------------------------------
  auto* delta_cmd = app.add_subcommand("delta", "k-resultant set of a point set");
  std::string dl_set, dl_signs;
  int dl_k = 2;
  bool dl_json = false;
  delta_cmd->add_option("--set", dl_set)->required();
  delta_cmd->add_option("--k", dl_k)->required();
  delta_cmd->add_option("--signs", dl_signs, "alternative sign pattern, e.g. '+-+'");
  delta_cmd->add_flag("--json", dl_json);
  delta_cmd->callback([&] {
    const ffr::PointSet e = ffr::load_point_set(dl_set);
    std::optional<std::vector<int>> signs;
    if (!dl_signs.empty()) signs = parse_signs(dl_signs);
    const ffr::DeltaSet delta = ffr::delta_k(e, dl_k, signs ? &*signs : nullptr);
    if (dl_json) {
      emit(delta_to_json(delta), "");
    } else {
      std::cout << "|Delta_" << dl_k << "| = " << delta.values.size() << " of " << e.field->q()
                << "; covers F_q^*: " << (delta.covers_star ? "yes" : "no")
                << "; covers F_q: " << (delta.covers_full ? "yes" : "no") << "\n";
      std::cout << "values:";
      for (ffr::Elt t : delta.values) std::cout << ' ' << e.field->to_string(t);
      std::cout << "\n";
    }
  });

  // ---- nu ---------------------------------------------------------------
  auto* nu_cmd = app.add_subcommand("nu", "counting function with main/remainder split");
  std::string nu_set;
  int nu_k = 2;
  bool nu_json = false;
  nu_cmd->add_option("--set", nu_set)->required();
  nu_cmd->add_option("--k", nu_k)->required();
  nu_cmd->add_flag("--json", nu_json);
  nu_cmd->callback([&] {
    const ffr::PointSet e = ffr::load_point_set(nu_set);
    const ffr::NuProfile profile = ffr::nu_profile(e, nu_k);
    if (nu_json) {
      json rows = json::array();
      for (std::size_t t = 0; t < profile.by_t.size(); ++t) {
        const auto& entry = profile.by_t[t];
        rows.push_back(json{{"t", t},
                            {"count", entry.count},
                            {"main_term", entry.main_term},
                            {"remainder", entry.remainder},
                            {"remainder_bound", entry.remainder_bound},
                            {"remainder_bound_all_m", entry.remainder_bound_all_m},
                            {"decay_admissible", entry.decay_admissible}});
      }
      emit(json{{"k", profile.k}, {"total", profile.total}, {"by_t", rows}}, "");
    } else {
      std::cout << "t, nu, M_t, R_t, bound(|R_t|)\n";
      for (std::size_t t = 0; t < profile.by_t.size(); ++t) {
        const auto& entry = profile.by_t[t];
        std::cout << t << ", " << entry.count << ", " << entry.main_term << ", "
                  << entry.remainder << ", " << entry.remainder_bound
                  << (entry.decay_admissible ? "" : " (bound not claimed at this t)") << "\n";
      }
      std::cout << "total = " << profile.total << " = |E|^" << profile.k << "\n";
    }
  });

  // ---- energy -----------------------------------------------------------
  auto* energy_cmd = app.add_subcommand("energy", "k-energy by brute force and spectra");
  std::string en_set, en_method = "both";
  int en_k = 2;
  bool en_json = false;
  energy_cmd->add_option("--set", en_set)->required();
  energy_cmd->add_option("--k", en_k)->required();
  energy_cmd->add_option("--method", en_method)->check(CLI::IsMember({"brute", "spectral", "both"}));
  energy_cmd->add_flag("--json", en_json);
  energy_cmd->callback([&] {
    const ffr::PointSet e = ffr::load_point_set(en_set);
    const ffr::EnergyMethod method = en_method == "brute"      ? ffr::EnergyMethod::brute
                                     : en_method == "spectral" ? ffr::EnergyMethod::spectral
                                                               : ffr::EnergyMethod::both;
    const ffr::EnergyValue value = ffr::energy(e, en_k, method);
    if (en_json) {
      emit(json{{"k", value.k}, {"lambda", value.lambda}, {"method", en_method}}, "");
    } else {
      std::cout << "Lambda_" << value.k << " = " << value.lambda << " (" << en_method << ")\n";
    }
  });

  // ---- ledger -------------------------------------------------------------
  auto* ledger_cmd = app.add_subcommand("ledger", "inequality ledger for E inside V");
  std::string lg_set, lg_poly;
  int lg_k = 4;
  double lg_margin = 4.0;
  bool lg_json = false;
  ledger_cmd->add_option("--set", lg_set)->required();
  ledger_cmd->add_option("--variety-poly", lg_poly)->required();
  ledger_cmd->add_option("--k", lg_k)->required();
  ledger_cmd->add_option("--margin", lg_margin, "coverage-prediction margin");
  ledger_cmd->add_flag("--json", lg_json);
  ledger_cmd->callback([&] {
    const ffr::PointSet e = ffr::load_point_set(lg_set);
    const ffr::PolynomialExpr poly = ffr::parse_polynomial(lg_poly, e.field, e.dim);
    const ffr::PointSet v = ffr::zero_set(poly);
    const ffr::BoundLedger ledger = ffr::bound_ledger(e, v, lg_k, &poly, lg_margin);
    if (lg_json) {
      emit(ledger_to_json(ledger), "");
    } else {
      for (const auto& row : ledger.rows) {
        std::cout << row.name << ": ";
        if (!row.applicable) {
          std::cout << "not applicable (" << row.note << ")\n";
          continue;
        }
        std::cout << "left = " << row.left << ", right = " << row.right
                  << ", constant = " << row.constant;
        if (row.pass.has_value()) std::cout << (row.pass.value() ? "  [pass]" : "  [FAIL]");
        if (!row.note.empty()) std::cout << "  (" << row.note << ")";
        std::cout << "\n";
      }
    }
    if (!ledger.exact_rows_pass()) exit_code = 1;
  });

  // ---- sweep ---------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "randomized coverage sweep");
  ffr::ExperimentConfig sw;
  std::string sw_theorem = "t1", sw_variety = "sphere:1", sw_sizes, sw_out, sw_json;
  sweep_cmd->add_option("--theorem", sw_theorem)->check(CLI::IsMember({"t1", "t2"}));
  sweep_cmd->add_option("--p", sw.p)->required();
  sweep_cmd->add_option("--n", sw.n);
  sweep_cmd->add_option("--d", sw.d)->required();
  sweep_cmd->add_option("--k", sw.k)->required();
  sweep_cmd->add_option("--variety", sw_variety);
  sweep_cmd->add_option("--C", sw.threshold_constant);
  sweep_cmd->add_option("--sizes", sw_sizes, "LO:HI:STEP");
  sweep_cmd->add_option("--trials", sw.trials);
  sweep_cmd->add_option("--seed", sw.seed);
  sweep_cmd->add_option("--out", sw_out, "CSV path");
  sweep_cmd->add_option("--json", sw_json, "summary path");
  sweep_cmd->add_flag("--exhaustive", sw.exhaustive, "check every subset (|V| <= 20)");
  sweep_cmd->callback([&] {
    sw.variety = sw_variety;
    if (!sw_sizes.empty()) sw.sizes = parse_schedule(sw_sizes);
    const ffr::SweepResult result =
        (sw_theorem == "t2") ? ffr::run_theorem2_sweep(sw) : ffr::run_theorem1_sweep(sw);
    const std::string csv = result.to_csv();
    if (sw_out.empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(sw_out, std::ios::binary);
      out << csv;
      std::cout << "wrote " << result.rows.size() << " rows to " << sw_out << "\n";
    }
    for (const auto& s : result.summaries)
      std::cout << "size " << s.size << ": " << s.covered << "/" << s.trials << " trials covered"
                << (s.meets_threshold ? "" : " (below threshold)")
                << (s.note.empty() ? "" : ("; " + s.note)) << "\n";
    for (const auto& note : result.notes) std::cout << "note: " << note << "\n";
    if (!sw_json.empty()) emit(sweep_summary_json(result), sw_json);
  });

  // ---- sharpness -------------------------------------------------------------
  auto* sharp_cmd = app.add_subcommand("sharpness", "extremal construction suite");
  std::string sh_fields = "5,13,25", sh_ks = "2,3";
  int sh_d = 3;
  bool sh_json = false;
  sharp_cmd->add_option("--fields", sh_fields, "comma-separated field orders");
  sharp_cmd->add_option("--d", sh_d);
  sharp_cmd->add_option("--k", sh_ks, "comma-separated k values");
  sharp_cmd->add_flag("--json", sh_json);
  sharp_cmd->callback([&] {
    const auto fields = parse_list<std::uint32_t>(sh_fields);
    const auto ks = parse_list<int>(sh_ks);
    const ffr::SharpnessReport report = ffr::run_sharpness_suite(fields, sh_d, ks);
    if (sh_json) {
      json rows = json::array();
      for (const auto& c : report.cases) {
        json row{{"construction", c.construction}, {"q", c.q}, {"d", c.d}, {"k", c.k}};
        if (c.skipped) {
          row["skipped"] = true;
          row["reason"] = c.reason;
        } else {
          row["expected_size"] = c.expected_size;
          row["actual_size"] = c.actual_size;
          row["expected"] = c.expected;
          row["observed"] = c.observed;
          row["pass"] = c.pass;
        }
        rows.push_back(std::move(row));
      }
      emit(json{{"cases", rows}, {"all_pass", report.all_pass()}}, "");
    } else {
      for (const auto& c : report.cases) {
        std::cout << c.construction << " q=" << c.q << " d=" << c.d << " k=" << c.k << ": ";
        if (c.skipped) {
          std::cout << "skipped (" << c.reason << ")\n";
        } else {
          std::cout << (c.pass ? "pass" : "FAIL") << "  |E|=" << c.actual_size << " expected "
                    << c.expected_size << "; Delta = " << c.observed << " expected " << c.expected
                    << "\n";
        }
      }
    }
    if (!report.all_pass()) exit_code = 1;
  });

  // ---- threshold ---------------------------------------------------------------
  auto* thr_cmd = app.add_subcommand("threshold", "empirical coverage threshold search");
  int th_p = 5, th_n = 1, th_d = 2, th_k = 3, th_trials = 5;
  std::uint64_t th_seed = 0;
  std::string th_variety = "sphere:1";
  bool th_json = false;
  thr_cmd->add_option("--p", th_p)->required();
  thr_cmd->add_option("--n", th_n);
  thr_cmd->add_option("--d", th_d)->required();
  thr_cmd->add_option("--k", th_k)->required();
  thr_cmd->add_option("--variety", th_variety);
  thr_cmd->add_option("--trials", th_trials);
  thr_cmd->add_option("--seed", th_seed);
  thr_cmd->add_flag("--json", th_json);
  thr_cmd->callback([&] {
    auto f = ffr::Field::build(th_p, th_n);
    const ffr::PointSet v = ffr::build_variety(f, th_d, th_variety, nullptr);
    const ffr::ThresholdResult result = ffr::threshold_search(v, th_k, th_trials, th_seed);
    if (th_json) {
      json j{{"transition_found", result.transition_found},
             {"variety_size", result.variety_size},
             {"exponent_regular", result.exponent_regular},
             {"regularity_certified", result.regularity_certified},
             {"notes", result.notes}};
      if (result.exponent_curve) j["exponent_curve"] = *result.exponent_curve;
      if (result.transition_found) {
        j["threshold_size"] = result.threshold_size;
        j["log_q_threshold"] = result.log_q_threshold;
        j["verified_at_threshold"] = result.verified_at_threshold;
        if (result.failed_at_half) j["failed_at_half"] = *result.failed_at_half;
      }
      emit(j, "");
    } else {
      if (!result.transition_found) {
        std::cout << "no transition: coverage not reached even at |E| = |V| = "
                  << result.variety_size << "\n";
      } else {
        std::cout << "threshold size " << result.threshold_size << " of |V| = "
                  << result.variety_size << "; log_q = " << result.log_q_threshold
                  << " vs exponent " << result.exponent_regular << "\n";
        std::cout << "verified at threshold: " << (result.verified_at_threshold ? "yes" : "no");
        if (result.failed_at_half)
          std::cout << "; failed at half size: " << (*result.failed_at_half ? "yes" : "no");
        std::cout << "\n";
      }
      for (const auto& note : result.notes) std::cout << "note: " << note << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
