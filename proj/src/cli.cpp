#include "preslab/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "preslab/config.hpp"
#include "preslab/equilibrium.hpp"
#include "preslab/ldp.hpp"
#include "preslab/oracle.hpp"
#include "preslab/pressure.hpp"
#include "preslab/report.hpp"
#include "preslab/selfcheck.hpp"

namespace preslab::cli {

namespace {

SmoothSystem build_system(const SystemConfig& cfg) {
  if (cfg.kind == "expanding") return make_expanding_circle(cfg.degree, cfg.eps);
  return make_torus_endomorphism(cfg.matrix);
}

Potential build_potential(const PotentialConfig& cfg, const SmoothSystem& system) {
  if (cfg.kind == "constant") return make_potential(ConstantPotentialSpec{cfg.value}, system);
  if (cfg.kind == "trig") return make_potential(TrigPotentialSpec{cfg.coeffs}, system);
  return make_potential(GeometricPotentialSpec{cfg.t}, system);
}

int basis_size_for(const RunConfig& cfg, int dim) {
  return cfg.basis_size > 0 ? cfg.basis_size : default_basis_size(dim);
}

Summary base_summary(const RunConfig& cfg) {
  Summary s;
  s.add("artifact_version", std::string(kVersion));
  s.add("study", std::string(study_name(cfg.study)));
  for (const auto& [key, value] : cfg.raw) s.add("config." + key, value);
  return s;
}

std::string join_reals(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_real(values[i]);
  }
  return out;
}

// Oracle Gibbs moments when an independent route exists: the transfer
// operator for expanding circle maps, the closed-form Haar answer for
// hyperbolic toral endomorphisms with constant potentials.
std::optional<std::vector<double>> oracle_moments_for(const SmoothSystem& system,
                                                      const RunConfig& cfg,
                                                      const Potential& potential, int K) {
  if (system.circle) {
    const TransferOperatorModel model = build_operator(system, potential, cfg.oracle_grid);
    const TestFunctionBasis basis(system.dim, K);
    return oracle_gibbs_moments(model, basis, K);
  }
  if (cfg.potential.kind == "constant" && system.known_entropy)
    return std::vector<double>(static_cast<std::size_t>(K), 0.0);
  return std::nullopt;
}

void run_pressure_study(const RunConfig& cfg, const std::string& out, Summary& summary) {
  const SmoothSystem system = build_system(cfg.system);
  const Potential potential = build_potential(cfg.potential, system);
  const PressureEstimate est =
      estimate_pressure(system, potential, PressureParams{cfg.n_range, cfg.samples, cfg.seed});

  CsvTable series;
  series.header = {"n", "log_Zn", "Pn"};
  CsvTable ess;
  ess.header = {"n", "ess"};
  double min_ess = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < est.ns.size(); ++r) {
    series.rows.push_back({std::to_string(est.ns[r]), format_real(est.log_zn[r]),
                           format_real(est.p_n[r])});
    ess.rows.push_back({std::to_string(est.ns[r]), format_real(est.ess[r])});
    min_ess = std::min(min_ess, est.ess[r]);
  }
  write_csv(out + "/pressure.csv", series);
  write_csv(out + "/ess.csv", ess);

  summary.add("pressure_headline", est.slope);
  summary.add("pressure_at_nmax", est.p_at_n_max);
  summary.add("convergence_gap", est.convergence_gap);
  summary.add("intercept", est.intercept);
  summary.add("min_ess", min_ess);
  summary.add_flag("ess_warning", est.ess_warning);
  if (est.ess_warning)
    std::cerr << "warning: effective sample size below " << kEssWarningFraction
              << " of N in the fit window\n";
}

void run_equilibrium_study(const RunConfig& cfg, const std::string& out, Summary& summary) {
  const SmoothSystem system = build_system(cfg.system);
  const Potential potential = build_potential(cfg.potential, system);
  const int K = basis_size_for(cfg, system.dim);
  const TestFunctionBasis basis(system.dim, K);
  const auto oracle_moms = oracle_moments_for(system, cfg, potential, K);

  CsvTable diag;
  diag.header = {"n", "ess", "invariance_defect", "weak_distance_to_oracle", "concentration_mass"};
  CsvTable moms;
  moms.header = {"n", "k", "moment"};

  bool any_warning = false;
  for (std::size_t r = 0; r < cfg.n_range.size(); ++r) {
    const int n = cfg.n_range[r];
    const WeightedEnsemble ens = build_ensemble(system, potential, n, cfg.samples, cfg.seed);
    any_warning = any_warning || ens.ess_warning;
    const std::vector<double> m = ensemble_moments(ens, basis, K);
    for (int k = 1; k <= K; ++k)
      moms.rows.push_back({std::to_string(n), std::to_string(k),
                           format_real(m[static_cast<std::size_t>(k - 1)])});
    const double defect = invariance_defect(ens, basis, K);
    double dist = std::numeric_limits<double>::quiet_NaN();
    double mass = std::numeric_limits<double>::quiet_NaN();
    if (oracle_moms) {
      dist = weak_distance(m, *oracle_moms);
      mass = concentration_mass(ens, basis, *oracle_moms, cfg.concentration_radius);
    }
    diag.rows.push_back({std::to_string(n), format_real(ens.ess), format_real(defect),
                         format_real(dist), format_real(mass)});
    if (r + 1 == cfg.n_range.size()) {
      const HistogramMeasure hist = equilibrium_histogram(ens, cfg.bins);
      CsvTable hcsv;
      if (hist.dim == 1) {
        hcsv.header = {"bin", "mass"};
        for (std::size_t b = 0; b < hist.masses.size(); ++b)
          hcsv.rows.push_back({std::to_string(b), format_real(hist.masses[b])});
      } else {
        hcsv.header = {"bin_x", "bin_y", "mass"};
        for (std::size_t b = 0; b < hist.masses.size(); ++b)
          hcsv.rows.push_back({std::to_string(b / static_cast<std::size_t>(hist.bins_per_axis)),
                               std::to_string(b % static_cast<std::size_t>(hist.bins_per_axis)),
                               format_real(hist.masses[b])});
      }
      write_csv(out + "/histogram.csv", hcsv);
      summary.add("defect_at_nmax", defect);
      if (oracle_moms) {
        summary.add("weak_distance_at_nmax", dist);
        summary.add("concentration_mass_at_nmax", mass);
      }
    }
  }
  write_csv(out + "/equilibrium.csv", diag);
  write_csv(out + "/moments.csv", moms);
  if (oracle_moms) {
    CsvTable ocsv;
    ocsv.header = {"k", "moment"};
    for (int k = 1; k <= K; ++k)
      ocsv.rows.push_back({std::to_string(k),
                           format_real((*oracle_moms)[static_cast<std::size_t>(k - 1)])});
    write_csv(out + "/oracle_moments.csv", ocsv);
  }
  summary.add_flag("oracle_available", oracle_moms.has_value());
  summary.add("basis_k", static_cast<std::int64_t>(K));
  summary.add("weak_metric_tail_bound", weak_metric_tail_bound(K));
  summary.add("concentration_radius", cfg.concentration_radius);
  summary.add_flag("ess_warning", any_warning);
}

ConstraintSet constraint_from(const RunConfig& cfg) {
  ConstraintSet cs;
  cs.obs = cfg.obs;
  cs.lo = cfg.lo;
  cs.hi = cfg.hi;
  return cs;
}

void emit_rate_table(const RateFunctionTable& table, const std::string& out, Summary& summary) {
  const int d = static_cast<int>(table.obs.size());
  CsvTable rcsv;
  if (d == 1)
    rcsv.header = {"alpha", "J", "beta_argmax"};
  else
    rcsv.header = {"alpha1", "alpha2", "J", "beta_argmax1", "beta_argmax2"};
  std::int64_t capped_count = 0;
  std::string capped_list;
  for (std::size_t ai = 0; ai < table.alpha_nodes(); ++ai) {
    const std::vector<double> alpha = table.alpha_at(ai);
    std::vector<std::string> row;
    for (double a : alpha) row.push_back(format_real(a));
    row.push_back(format_real(table.values[ai]));
    for (int c = 0; c < d; ++c)
      row.push_back(format_real(table.beta_argmax[ai * static_cast<std::size_t>(d) +
                                                  static_cast<std::size_t>(c)]));
    rcsv.rows.push_back(std::move(row));
    if (table.capped[ai]) {
      ++capped_count;
      if (!capped_list.empty()) capped_list += ";";
      capped_list += join_reals(alpha);
    }
  }
  write_csv(out + "/rate.csv", rcsv);

  CsvTable qcsv;
  qcsv.header = d == 1 ? std::vector<std::string>{"beta", "Q", "ess_at_nmax"}
                       : std::vector<std::string>{"beta1", "beta2", "Q", "ess_at_nmax"};
  const std::size_t b_count = table.beta_axis.size();
  for (std::size_t bi = 0; bi < table.q_values.size(); ++bi) {
    std::vector<std::string> row;
    if (d == 1) {
      row.push_back(format_real(table.beta_axis[bi]));
    } else {
      row.push_back(format_real(table.beta_axis[bi / b_count]));
      row.push_back(format_real(table.beta_axis[bi % b_count]));
    }
    row.push_back(format_real(table.q_values[bi]));
    row.push_back(format_real(table.ess_at_n_max[bi]));
    qcsv.rows.push_back(std::move(row));
  }
  write_csv(out + "/rate_q.csv", qcsv);

  summary.add("rate_min_value", table.min_value);
  summary.add("rate_alpha_at_min", join_reals(table.alpha_at_min));
  summary.add("rate_capped_entries", capped_count);
  if (capped_count > 0) summary.add("rate_capped_alphas", capped_list);
  summary.add("rate_beta_max", table.beta_axis.back());
}

void run_ldp_study(const RunConfig& cfg, const std::string& out, Summary& summary) {
  const SmoothSystem system = build_system(cfg.system);
  const Potential potential = build_potential(cfg.potential, system);
  const ConstraintSet cs = constraint_from(cfg);
  int max_obs = 1;
  for (int k : cs.obs) max_obs = std::max(max_obs, k);
  const TestFunctionBasis basis(system.dim, max_obs);
  const SampleStats stats = compute_sample_stats(system, potential, cfg.n_range, cfg.samples,
                                                 cfg.seed, &basis, cs.obs);
  const LdpEstimate est = estimate_nu_n_from_stats(stats, cs, cfg.seed, cfg.min_count);

  CsvTable series;
  series.header = {"n", "nu_n", "log_nu_over_n", "satisfying_count"};
  for (std::size_t r = 0; r < est.ns.size(); ++r)
    series.rows.push_back({std::to_string(est.ns[r]), format_real(est.nu[r]),
                           format_real(est.log_nu_over_n[r]), std::to_string(est.count[r])});
  write_csv(out + "/ldp.csv", series);

  summary.add_flag("slope_defined", est.slope_defined);
  if (est.slope_defined) {
    summary.add("slope", est.slope);
    summary.add("intercept", est.intercept);
  }
  summary.add("min_count", est.min_count);

  // companion rate table + contraction record when the grids are configured
  if (cfg.raw.count("rate.alpha_min") || cfg.raw.count("rate.beta_max")) {
    const std::vector<double> beta_axis = make_grid(-cfg.beta_max, cfg.beta_max, cfg.beta_step);
    std::vector<std::vector<double>> alpha_axes(
        cs.obs.size(), make_grid(cfg.alpha_min, cfg.alpha_max, cfg.alpha_step));
    const RateFunctionTable table =
        rate_function_from_stats(stats, cs.obs, alpha_axes, beta_axis, cfg.seed);
    emit_rate_table(table, out, summary);
    const ContractionReport report = contraction_report(est, table, cs);
    summary.add_flag("contraction_too_fast_to_measure", report.too_fast_to_measure);
    if (report.decay_defined) {
      summary.add("contraction_decay_rate", report.decay_rate);
      summary.add("contraction_j_region", report.j_region);
      summary.add("contraction_alpha_at_region_min", join_reals(report.alpha_at_region_min));
      summary.add("contraction_abs_gap", report.abs_gap);
      summary.add("contraction_rel_gap", report.rel_gap);
    } else {
      summary.add("contraction_note", report.note);
    }
  }
}

void run_rate_study(const RunConfig& cfg, const std::string& out, Summary& summary) {
  const SmoothSystem system = build_system(cfg.system);
  const Potential potential = build_potential(cfg.potential, system);
  const std::vector<double> beta_axis = make_grid(-cfg.beta_max, cfg.beta_max, cfg.beta_step);
  std::vector<std::vector<double>> alpha_axes(
      cfg.obs.size(), make_grid(cfg.alpha_min, cfg.alpha_max, cfg.alpha_step));
  const RateFunctionTable table =
      rate_function(system, potential, cfg.obs, alpha_axes, beta_axis,
                    PressureParams{cfg.n_range, cfg.samples, cfg.seed});
  emit_rate_table(table, out, summary);
}

void run_oracle_study(const RunConfig& cfg, const std::string& out, Summary& summary) {
  const SmoothSystem system = build_system(cfg.system);
  const Potential potential = build_potential(cfg.potential, system);
  const int K = basis_size_for(cfg, system.dim);

  double pressure = 0.0;
  double entropy = 0.0;
  std::vector<double> moms;
  if (system.circle) {
    const TransferOperatorModel model = build_operator(system, potential, cfg.oracle_grid);
    const TransferOperatorModel coarse = build_operator(system, potential, cfg.oracle_grid / 2);
    const TestFunctionBasis basis(system.dim, K);
    pressure = oracle_pressure(model);
    const double mean = gibbs_mean(model, potential);
    entropy = oracle_entropy(model, mean);
    moms = oracle_gibbs_moments(model, basis, K);
    summary.add("oracle_lambda", model.eigenvalue);
    summary.add("oracle_grid", static_cast<std::int64_t>(model.grid_size));
    summary.add("oracle_residual", model.residual);
    summary.add("oracle_iterations", static_cast<std::int64_t>(model.iterations));
    summary.add("oracle_potential_mean", mean);
    summary.add("oracle_self_convergence_gap", std::abs(pressure - oracle_pressure(coarse)));
  } else {
    // closed form for hyperbolic toral endomorphisms with constant potentials
    if (cfg.potential.kind != "constant" || !system.known_entropy)
      throw std::invalid_argument(
          "oracle study: closed form needs a hyperbolic torus map with a constant potential");
    entropy = *system.known_entropy;
    pressure = entropy + cfg.potential.value;
    moms.assign(static_cast<std::size_t>(K), 0.0);
    summary.add("oracle_closed_form", std::string("torus"));
  }

  CsvTable mcsv;
  mcsv.header = {"k", "moment"};
  for (int k = 1; k <= K; ++k)
    mcsv.rows.push_back({std::to_string(k), format_real(moms[static_cast<std::size_t>(k - 1)])});
  write_csv(out + "/moments.csv", mcsv);

  summary.add("oracle_pressure", pressure);
  summary.add("oracle_entropy", entropy);
  summary.add("weak_metric_tail_bound", weak_metric_tail_bound(K));

  if (!cfg.n_range.empty() && cfg.samples > 0) {
    const PressureEstimate est =
        estimate_pressure(system, potential, PressureParams{cfg.n_range, cfg.samples, cfg.seed});
    summary.add("estimator_pressure", est.slope);
    summary.add("estimator_minus_oracle", est.slope - pressure);
    summary.add_flag("ess_warning", est.ess_warning);
  }
}

int run_selfcheck_study(const RunConfig& cfg, const std::string& out, Summary& summary) {
  const std::vector<SuiteResult> results = run_selfcheck(cfg.seed);
  bool all_pass = true;
  CsvTable table;
  table.header = {"suite", "pass", "worst", "limit"};
  for (const SuiteResult& r : results) {
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " (worst " << format_real(r.worst)
              << ", limit " << format_real(r.limit) << ")"
              << (r.detail.empty() ? "" : " " + r.detail) << "\n";
    table.rows.push_back({r.name, r.pass ? "1" : "0", format_real(r.worst),
                          format_real(r.limit)});
  }
  write_csv(out + "/selfcheck.csv", table);
  summary.add_flag("selfcheck_pass", all_pass);
  return all_pass ? 0 : 1;
}

struct CliArgs {
  std::string subcommand;
  std::string config_path;
  std::string out_override;
  int threads = 0;
};

CliArgs parse_args(const std::vector<std::string>& args) {
  if (args.empty()) throw ConfigError("usage: preslab <subcommand> --config <path> [--threads N] [--out DIR]");
  CliArgs parsed;
  parsed.subcommand = args[0];
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& arg = args[i];
    auto next = [&](const char* name) -> const std::string& {
      if (i + 1 >= args.size()) throw ConfigError(std::string(name) + " needs a value");
      return args[++i];
    };
    if (arg == "--config") {
      parsed.config_path = next("--config");
    } else if (arg == "--out") {
      parsed.out_override = next("--out");
    } else if (arg == "--threads") {
      const std::string& value = next("--threads");
      try {
        parsed.threads = static_cast<int>(std::stol(value));
      } catch (const std::exception&) {
        throw ConfigError("--threads needs an integer, got: " + value);
      }
    } else {
      throw ConfigError("unknown option: " + arg);
    }
  }
  if (parsed.config_path.empty()) throw ConfigError("--config <path> is required");
  return parsed;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  try {
    const CliArgs cli = parse_args(args);
    const StudyKind study = study_from_name(cli.subcommand);
    const auto kv = read_config_file(cli.config_path);
    RunConfig cfg = parse_run_config(kv, study);
    if (!cli.out_override.empty()) cfg.out_dir = cli.out_override;

#ifdef _OPENMP
    if (cli.threads > 0) omp_set_num_threads(cli.threads);
#endif

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + cfg.out_dir);

    const auto start = std::chrono::steady_clock::now();
    Summary summary = base_summary(cfg);
    int code = 0;
    switch (study) {
      case StudyKind::Pressure: run_pressure_study(cfg, cfg.out_dir, summary); break;
      case StudyKind::Equilibrium: run_equilibrium_study(cfg, cfg.out_dir, summary); break;
      case StudyKind::Ldp: run_ldp_study(cfg, cfg.out_dir, summary); break;
      case StudyKind::Rate: run_rate_study(cfg, cfg.out_dir, summary); break;
      case StudyKind::Oracle: run_oracle_study(cfg, cfg.out_dir, summary); break;
      case StudyKind::Selfcheck: code = run_selfcheck_study(cfg, cfg.out_dir, summary); break;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    summary.add("wall_time_seconds", elapsed.count());
    summary.write(cfg.out_dir + "/summary.txt");
    return code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace preslab::cli
