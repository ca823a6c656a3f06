// Batch front end: parse a JSON config describing a measure system and a
// command, run the requested sweep or check, and emit a machine-readable
// report (JSON lines, or CSV with --format csv).
//
// Exit codes: 0 all requested checks passed, 1 a check failed, 2 config
// error, 3 numerical failure.

#include <atomic>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "lmop/hermite_pade.hpp"
#include "lmop/identities.hpp"
#include "lmop/recurrence.hpp"
#include "lmop/serialize.hpp"

namespace {

using namespace lmop;

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  int jobs = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

struct RunResult {
  std::vector<Json> rows;
  bool checks_passed = true;
  bool any_check = false;
};

double tolerance(const Json& cfg, const std::string& name, double fallback) {
  if (!cfg.contains("tolerances")) return fallback;
  const double v = cfg["tolerances"].value(name, fallback);
  if (!(v > 0.0)) fail(Errc::ConfigError, "tolerance '" + name + "' must be positive");
  return v;
}

template <typename Fn>
std::vector<Json> parallel_rows(int jobs, int count, Fn&& fn) {
  std::vector<Json> rows(count);
  if (count == 0) return rows;
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < count;) {
      try {
        rows[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

MultiIndex index_arg(const Json& j) { return multi_index_from_json(j); }

std::vector<std::pair<MultiIndex, MultiIndex>> index_pairs(const Json& cfg) {
  std::vector<std::pair<MultiIndex, MultiIndex>> out;
  for (const auto& e : cfg.value("index_pairs", Json::array())) {
    if (!e.is_array() || e.size() != 2)
      fail(Errc::ConfigError, "index_pairs entries are [[n...],[m...]]");
    out.emplace_back(index_arg(e[0]), index_arg(e[1]));
  }
  return out;
}

Json type1_row(const TypeIVector& v) {
  Json out = Json::array();
  for (const auto& c : v.components) out.push_back(poly_to_json(c));
  return out;
}

// ---------------------------------------------------------------------------
// Commands

RunResult run_moments(const Json& cfg, const LoadedSystem& loaded, const Options&) {
  const MeasureSystem& sys = loaded.system;
  int k_min = -8, k_max = 8;
  if (cfg.contains("k_range")) {
    k_min = cfg["k_range"][0].get<int>();
    k_max = cfg["k_range"][1].get<int>();
  }
  RunResult result;
  for (int j = 0; j < sys.r(); ++j)
    for (int k = k_min; k <= k_max; ++k) {
      Json row{{"j", j}, {"k", k}};
      try {
        row["c"] = complex_to_json(sys.moment(j, k));
      } catch (const Error& e) {
        if (e.code() != Errc::TruncationExceeded) throw;
        row["c"] = nullptr;
        row["note"] = "beyond truncation";
      }
      result.rows.push_back(std::move(row));
    }
  return result;
}

RunResult run_normality_table(const Json& cfg, const LoadedSystem& loaded,
                              const Options& opt) {
  const MeasureSystem& sys = loaded.system;
  const int n_max = cfg.value("n_max", 4);
  const double eps = tolerance(cfg, "eps_normal", defaults::eps_normal);
  const std::vector<MultiIndex> all = indices_up_to(sys.r(), n_max);
  RunResult result;
  result.any_check = true;
  result.rows = parallel_rows(opt.jobs, static_cast<int>(all.size()), [&](int i) {
    const NormalityReport rep = normality(sys, all[i], eps);
    Json row = normality_to_json(rep);
    row["index"] = multi_index_to_json(all[i]);
    return row;
  });
  for (const auto& row : result.rows)
    if (!row["normal"].get<bool>()) result.checks_passed = false;
  return result;
}

RunResult run_solve(const Json& cfg, const LoadedSystem& loaded, const Options& opt) {
  const MeasureSystem& sys = loaded.system;
  const std::string what = cfg.value("what", "phi");
  const double eps = tolerance(cfg, "eps_normal", defaults::eps_normal);
  RunResult result;

  const bool single_index =
      what == "phi" || what == "phi_sharp" || what == "xi" || what == "xi_sharp";
  if (single_index) {
    std::vector<MultiIndex> targets;
    for (const auto& e : cfg.value("indices", Json::array())) targets.push_back(index_arg(e));
    if (targets.empty()) fail(Errc::ConfigError, "solve needs 'indices'");
    result.rows = parallel_rows(opt.jobs, static_cast<int>(targets.size()), [&](int i) {
      const MultiIndex& n = targets[i];
      const NormalityReport rep = normality(sys, n, eps);
      Json row = normality_to_json(rep);
      row["what"] = what;
      row["index"] = multi_index_to_json(n);
      if (!rep.normal) return row;
      if (what == "phi" || what == "phi_sharp") {
        const HalfLaurentPoly p =
            what == "phi" ? solve_type2(sys, n) : solve_type2_reversed(sys, n);
        row["coeffs"] = poly_to_json(p);
        row["residual_max"] = type2_residual(sys, n, p, what == "phi_sharp");
      } else {
        const TypeIVector v =
            what == "xi" ? solve_type1(sys, n) : solve_type1_reversed(sys, n);
        row["components"] = type1_row(v);
        row["residual_max"] = type1_residual(sys, n, v, what == "xi_sharp");
      }
      return row;
    });
    return result;
  }

  if (what != "Phi" && what != "Phi_star" && what != "Lambda" && what != "Lambda_star")
    fail(Errc::ConfigError, "unknown solve target '" + what + "'");
  const auto pairs = index_pairs(cfg);
  if (pairs.empty()) fail(Errc::ConfigError, "solve needs 'index_pairs'");
  result.rows = parallel_rows(opt.jobs, static_cast<int>(pairs.size()), [&](int i) {
    const auto& [n, m] = pairs[i];
    const bool type1 = what == "Lambda" || what == "Lambda_star";
    const NormalityReport rep =
        type1 ? laurent_normality(sys, m, n, eps) : laurent_normality(sys, n, m, eps);
    Json row = normality_to_json(rep);
    row["what"] = what;
    row["n"] = multi_index_to_json(n);
    row["m"] = multi_index_to_json(m);
    if (!rep.normal) return row;
    if (what == "Phi" || what == "Phi_star") {
      const HalfLaurentPoly p = what == "Phi" ? solve_laurent_type2(sys, n, m)
                                              : solve_laurent_type2_star(sys, n, m);
      row["coeffs"] = poly_to_json(p);
      row["residual_max"] = laurent_type2_residual(sys, n, m, p, what == "Phi_star");
      row["alpha"] = complex_to_json(alpha_coefficient(p, m.total()));
      row["beta"] = complex_to_json(beta_coefficient(p, n.total()));
    } else {
      const TypeIVector v = what == "Lambda" ? solve_laurent_type1(sys, n, m)
                                             : solve_laurent_type1_star(sys, n, m);
      row["components"] = type1_row(v);
      row["residual_max"] =
          laurent_type1_residual(sys, n, m, v, what == "Lambda_star");
    }
    return row;
  });
  return result;
}

Json orders_json(const ContactReport& rep) {
  Json required = Json::array(), achieved = Json::array();
  for (const auto& row : rep.rows) {
    required.push_back({row.required_at0, row.required_at_inf});
    achieved.push_back({row.achieved_at0, row.achieved_at_inf});
  }
  return Json{{"orders_required", required},
              {"orders_achieved", achieved},
              {"max_violation", rep.max_violation},
              {"pass", rep.pass}};
}

RunResult run_hp_check(const Json& cfg, const LoadedSystem& loaded, const Options&) {
  const MeasureSystem& sys = loaded.system;
  RunResult result;
  result.any_check = true;

  for (const auto& e : cfg.value("half_indices", Json::array())) {
    const MultiIndex half = index_arg(e);
    const MultiIndex two_n = half.doubled();
    const HalfLaurentPoly phi = solve_type2(sys, two_n);
    const ContactReport plain = type2_contact(sys, phi, half, half);
    const ContactReport star = type2_contact(sys, phi.sharp(), half, half, true);
    Json row = orders_json(plain);
    row["problem"] = "phi";
    row["index"] = multi_index_to_json(half);
    // Orders of the ratio form: the reversed problem at 0 and the plain
    // problem at infinity, both lifted by |n|.
    Json lifted_req = Json::array(), lifted_ach = Json::array();
    for (int j = 0; j < sys.r(); ++j) {
      lifted_req.push_back({half.total() + half[j] + 1, half.total() + half[j] + 1});
      lifted_ach.push_back({half.total() + star.rows[j].achieved_at0,
                            half.total() + plain.rows[j].achieved_at_inf});
    }
    row["ratio_orders_required"] = lifted_req;
    row["ratio_orders_achieved"] = lifted_ach;
    row["pass"] = plain.pass && star.pass;
    row["max_violation"] = std::max(plain.max_violation, star.max_violation);
    result.checks_passed = result.checks_passed && row["pass"].get<bool>();
    result.rows.push_back(std::move(row));
  }

  for (const auto& [n, m] : index_pairs(cfg)) {
    {
      const HalfLaurentPoly phi = solve_laurent_type2(sys, n, m);
      Json row = orders_json(type2_contact(sys, phi, n, m));
      row["problem"] = "Phi";
      row["n"] = multi_index_to_json(n);
      row["m"] = multi_index_to_json(m);
      result.checks_passed = result.checks_passed && row["pass"].get<bool>();
      result.rows.push_back(std::move(row));

      const HalfLaurentPoly star = solve_laurent_type2_star(sys, n, m);
      Json srow = orders_json(type2_contact(sys, star, n, m, true));
      srow["problem"] = "Phi_star";
      srow["n"] = multi_index_to_json(n);
      srow["m"] = multi_index_to_json(m);
      result.checks_passed = result.checks_passed && srow["pass"].get<bool>();
      result.rows.push_back(std::move(srow));
    }
    if (n.total() + m.total() > 0 && laurent_normality(sys, m, n).normal) {
      const TypeIVector lam = solve_laurent_type1(sys, n, m);
      Json row = orders_json(type1_contact(sys, lam, n, m));
      row["problem"] = "Lambda";
      row["n"] = multi_index_to_json(n);
      row["m"] = multi_index_to_json(m);
      result.checks_passed = result.checks_passed && row["pass"].get<bool>();
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

RunResult run_recurrence_report(const Json& cfg, const LoadedSystem& loaded,
                                const Options&) {
  const MeasureSystem& sys = loaded.system;
  const double tol = tolerance(cfg, "recurrence", 1e-8);
  LaurentSolver solver(sys, tolerance(cfg, "eps_normal", defaults::eps_normal));
  RunResult result;
  result.any_check = true;
  for (const auto& [n, m] : index_pairs(cfg)) {
    const RecurrenceCoeffs coeffs = extract_recurrence(solver, n, m, tol);
    Json head{{"n", multi_index_to_json(n)},
              {"m", multi_index_to_json(m)},
              {"alpha", complex_to_json(coeffs.alpha)},
              {"beta", complex_to_json(coeffs.beta)},
              {"rho_residual", coeffs.rho_residual},
              {"sigma_residual", coeffs.sigma_residual}};
    Json rho = Json::array(), sigma = Json::array();
    for (const Complex& v : coeffs.rho) rho.push_back(complex_to_json(v));
    for (const Complex& v : coeffs.sigma) sigma.push_back(complex_to_json(v));
    head["rho"] = rho;
    head["sigma"] = sigma;
    result.rows.push_back(std::move(head));

    const RecurrenceReport rep = verify_recurrences(solver, n, m, tol);
    for (const auto& rel : rep.relations) {
      Json row{{"n", multi_index_to_json(n)},  {"m", multi_index_to_json(m)},
               {"relation", rel.name},         {"k", rel.k},
               {"applicable", rel.applicable}, {"checked", rel.checked},
               {"deviation", rel.deviation},   {"note", rel.note}};
      result.rows.push_back(std::move(row));
    }
    result.checks_passed = result.checks_passed && rep.all_pass;
  }
  return result;
}

RunResult run_szego_check(const Json& cfg, const Options&) {
  if (!cfg.contains("real_system"))
    fail(Errc::ConfigError, "szego-check needs 'real_system'");
  const RealSystem gammas = real_system_from_json(cfg["real_system"]);
  const double tol = tolerance(cfg, "szego", 1e-8);
  RunResult result;
  result.any_check = true;

  for (const auto& e : cfg.value("indices", Json::array())) {
    const MultiIndex n = index_arg(e);
    const SzegoType2Report t2 = check_szego_type2(gammas, n, tol);
    result.rows.push_back(Json{{"check", "szego_type2"},
                               {"index", multi_index_to_json(n)},
                               {"preconditions", t2.preconditions},
                               {"alpha", complex_to_json(t2.alpha)},
                               {"max_deviation", t2.max_deviation},
                               {"note", t2.note},
                               {"pass", t2.pass || !t2.preconditions}});
    if (t2.preconditions) result.checks_passed = result.checks_passed && t2.pass;
    if (n.is_zero()) continue;
    const SzegoType1Report t1 = check_szego_type1(gammas, n, tol);
    Json c = Json::array();
    for (const Complex& v : t1.c) c.push_back(complex_to_json(v));
    result.rows.push_back(Json{{"check", "szego_type1"},
                               {"index", multi_index_to_json(n)},
                               {"preconditions", t1.preconditions},
                               {"c", c},
                               {"span_residual", t1.span_residual},
                               {"lambda_kappa_deviation", t1.lambda_kappa_deviation},
                               {"note", t1.note},
                               {"pass", t1.pass || !t1.preconditions}});
    if (t1.preconditions) result.checks_passed = result.checks_passed && t1.pass;
  }

  for (const auto& [n, m] : index_pairs(cfg)) {
    const SzegoVariantReport v = check_szego_variants(gammas, n, m, tol);
    Json row{{"check", "szego_variant"},
             {"variant", v.variant},
             {"n", multi_index_to_json(n)},
             {"m", multi_index_to_json(m)},
             {"preconditions", v.preconditions},
             {"type2_applicable", v.type2_applicable},
             {"tail_magnitude", v.tail_magnitude},
             {"max_deviation", v.max_deviation},
             {"note", v.note},
             {"pass", v.pass || !v.preconditions}};
    if (v.type1_span_residual) row["type1_span_residual"] = *v.type1_span_residual;
    if (v.preconditions) result.checks_passed = result.checks_passed && v.pass;
    result.rows.push_back(std::move(row));
  }
  return result;
}

RunResult run_verify_identities(const Json& cfg, const Options& opt) {
  const Json idcfg = cfg.value("identities", Json::object());
  const int instances = idcfg.value("instances", 100);
  const int max_n = idcfg.value("max_n", 5);
  const int vdm_count = idcfg.value("vandermonde", 100);
  const int vdm_max_n = idcfg.value("vdm_max_n", 6);
  const int det_nmax = idcfg.value("det_integral_nmax", 4);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  RunResult result;
  result.any_check = true;

  double worst_andreief = 0.0;
  for (int rep = 0; rep < instances; ++rep) {
    std::uniform_int_distribution<int> mdist(1, max_n);
    const int m = mdist(rng);
    std::uniform_int_distribution<int> ndist(m, max_n);
    const int n = ndist(rng);
    std::uniform_int_distribution<int> adist(2, 8);
    const int atoms = adist(rng);
    AndreiefInstance inst;
    inst.weights.resize(atoms);
    for (double& w : inst.weights) w = 0.1 + std::abs(unif(rng));
    inst.f_values = ComplexMatrix(m, atoms);
    inst.g_values = ComplexMatrix(n, atoms);
    inst.a_block = ComplexMatrix(n - m, n);
    for (int i = 0; i < m; ++i)
      for (int a = 0; a < atoms; ++a) inst.f_values(i, a) = Complex(unif(rng), unif(rng));
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < atoms; ++a) inst.g_values(i, a) = Complex(unif(rng), unif(rng));
    for (int i = 0; i < n - m; ++i)
      for (int k = 0; k < n; ++k) inst.a_block(i, k) = Complex(unif(rng), unif(rng));
    const Complex lhs = andreief_lhs(inst);
    const Complex rhs = andreief_rhs(inst);
    worst_andreief =
        std::max(worst_andreief, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  result.rows.push_back(Json{{"check", "andreief"},
                             {"instances", instances},
                             {"max_rel_dev", worst_andreief},
                             {"pass", worst_andreief < 1e-10}});

  double worst_vdm = 0.0;
  for (int rep = 0; rep < vdm_count; ++rep) {
    std::uniform_int_distribution<int> ndist(1, vdm_max_n);
    const int n = ndist(rng);
    std::vector<double> thetas(n);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi - 1e-9);
    for (double& t : thetas) t = angle(rng);
    std::sort(thetas.begin(), thetas.end());
    const VandermondeForms v = unit_circle_vandermonde(thetas, BranchSpec{});
    const double scale = std::max(1.0, std::abs(v.determinant));
    worst_vdm = std::max(worst_vdm, std::abs(v.determinant - v.sine_product) / scale);
    worst_vdm = std::max(worst_vdm, std::abs(v.determinant - v.modulus_product) / scale);
  }
  result.rows.push_back(Json{{"check", "vandermonde"},
                             {"instances", vdm_count},
                             {"max_rel_dev", worst_vdm},
                             {"pass", worst_vdm < 1e-10}});

  double worst_det = 0.0;
  for (int rep = 0; rep < 6; ++rep) {
    const int r = 2 + rep % 2;
    const double gap = 0.3;
    const double len = (2 * std::numbers::pi - r * gap) / r;
    std::vector<AngelescoArc> arcs(r);
    for (int j = 0; j < r; ++j) {
      arcs[j].alpha = gap / 2 + j * (len + gap);
      arcs[j].beta = arcs[j].alpha + len;
      for (int i = 0; i < 4; ++i) {
        const double slot = len / 4;
        arcs[j].atoms.push_back(
            {arcs[j].alpha + slot * (i + 0.2 + 0.6 * std::abs(unif(rng))),
             0.3 + std::abs(unif(rng))});
      }
    }
    MeasureSystem sys = build_angelesco(arcs, BranchSpec{}, true);
    for (const MultiIndex& n : indices_up_to(r, det_nmax)) {
      if (n.is_zero()) continue;
      const Complex lhs = det(build_moment_matrix(sys, n).mat);
      const Complex rhs = angelesco_det_sum(sys, n);
      worst_det = std::max(worst_det, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
  }
  result.rows.push_back(Json{{"check", "angelesco_det_integral"},
                             {"n_max", det_nmax},
                             {"max_rel_dev", worst_det},
                             {"pass", worst_det < 1e-9}});

  for (const auto& row : result.rows)
    result.checks_passed = result.checks_passed && row["pass"].get<bool>();
  return result;
}

// ---------------------------------------------------------------------------
// Output

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += "\"\"";
    else
      out += c;
  }
  return out + "\"";
}

void write_rows(const std::vector<Json>& rows, std::ostream& os,
                const std::string& format) {
  if (format == "json") {
    for (const auto& row : rows) os << row.dump() << "\n";
    return;
  }
  // CSV: union of keys in first-seen order; nested values are JSON-encoded.
  std::vector<std::string> columns;
  for (const auto& row : rows)
    for (auto it = row.begin(); it != row.end(); ++it)
      if (std::find(columns.begin(), columns.end(), it.key()) == columns.end())
        columns.push_back(it.key());
  for (std::size_t i = 0; i < columns.size(); ++i)
    os << (i ? "," : "") << csv_escape(columns[i]);
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) os << ",";
      if (!row.contains(columns[i])) continue;
      const Json& v = row[columns[i]];
      if (v.is_string())
        os << csv_escape(v.get<std::string>());
      else
        os << csv_escape(v.dump());
    }
    os << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laurent multiple orthogonal polynomials on the unit circle"};
  Options opt;
  app.add_option("--config", opt.config_path, "JSON config path")->required();
  app.add_option("--out", opt.out_path, "report output path (default stdout)");
  app.add_option("--format", opt.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", opt.jobs, "worker threads for index sweeps")
      ->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", opt.seed, "RNG seed (overrides config)");
  CLI11_PARSE(app, argc, argv);
  opt.seed_given = seed_opt->count() > 0;

  try {
    std::ifstream in(opt.config_path);
    if (!in) fail(Errc::ConfigError, "cannot open config '" + opt.config_path + "'");
    Json cfg;
    try {
      cfg = Json::parse(in);
    } catch (const std::exception& e) {
      fail(Errc::ConfigError, std::string("malformed JSON: ") + e.what());
    }
    if (!cfg.contains("command")) fail(Errc::ConfigError, "config needs 'command'");
    const std::string command = cfg["command"].get<std::string>();
    if (!opt.seed_given) opt.seed = cfg.value("seed", 0ull);

    RunResult result;
    if (command == "szego-check") {
      result = run_szego_check(cfg, opt);
    } else if (command == "verify-identities") {
      result = run_verify_identities(cfg, opt);
    } else {
      if (!cfg.contains("system")) fail(Errc::ConfigError, "config needs 'system'");
      const LoadedSystem loaded = system_from_json(cfg["system"]);
      if (loaded.at_certificate) {
        const auto& cert = *loaded.at_certificate;
        result.rows.push_back(Json{{"check", "at_certificate"},
                                   {"dimension", cert.dimension},
                                   {"samples", cert.samples},
                                   {"min_abs_det", cert.min_abs_det},
                                   {"sign", cert.sign}});
      }
      RunResult command_result;
      if (command == "moments")
        command_result = run_moments(cfg, loaded, opt);
      else if (command == "normality-table")
        command_result = run_normality_table(cfg, loaded, opt);
      else if (command == "solve")
        command_result = run_solve(cfg, loaded, opt);
      else if (command == "hp-check")
        command_result = run_hp_check(cfg, loaded, opt);
      else if (command == "recurrence-report")
        command_result = run_recurrence_report(cfg, loaded, opt);
      else
        fail(Errc::ConfigError, "unknown command '" + command + "'");
      for (auto& row : command_result.rows) result.rows.push_back(std::move(row));
      result.checks_passed = command_result.checks_passed;
      result.any_check = command_result.any_check;
    }

    std::ostringstream buffer;
    write_rows(result.rows, buffer, opt.format);
    if (opt.out_path.empty()) {
      std::cout << buffer.str();
    } else {
      std::ofstream out(opt.out_path);
      if (!out) fail(Errc::ConfigError, "cannot open output '" + opt.out_path + "'");
      out << buffer.str();
    }
    return (result.any_check && !result.checks_passed) ? 1 : 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::ConfigError ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
