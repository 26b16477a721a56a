#include "cgwave/cli/commands.hpp"

#include <cstdlib>
#include <fmt/format.h>
#include <ostream>

#include "cgwave/bifurcation.hpp"
#include "cgwave/cli/serialize.hpp"
#include "cgwave/continuation.hpp"
#include "cgwave/errors.hpp"
#include "cgwave/fields.hpp"
#include "cgwave/kernels.hpp"

namespace cgwave::cli {

namespace fs = std::filesystem;

RunConfig resolve_config(const Overrides& o) {
  RunConfig c = o.config_path ? load_config(*o.config_path) : RunConfig{};
  if (o.k) c.physics.k = *o.k;
  if (o.s_max) c.s_max = *o.s_max;
  if (o.steps) c.steps = *o.steps;
  if (o.n_modes) c.n_modes = *o.n_modes;
  if (o.out_dir) {
    c.out_dir = *o.out_dir;
  } else if (const char* env = std::getenv("CGWAVE_OUT_DIR"); env != nullptr && *env != '\0') {
    c.out_dir = env;
  }
  validate_config(c);
  return c;
}

namespace {

NewtonOptions newton_options(const RunConfig& c) {
  NewtonOptions n;
  n.tol = c.tol;
  n.max_iter = c.max_iter;
  return n;
}

// Run metadata lives next to, never inside, the data files.
void write_meta(const RunConfig& c, const std::string& command, const Json& outputs) {
  Json meta;
  meta["tool"] = "cgwave";
  meta["command"] = command;
  meta["simd"] = std::string(kernels::isa_name(kernels::active().isa));
  meta["config"] = Json{{"physics", params_json(c.physics)},
                        {"n_modes", c.n_modes},
                        {"m_y", c.m_y},
                        {"s_max", c.effective_s_max()},
                        {"steps", c.steps},
                        {"tol", c.tol},
                        {"max_iter", c.max_iter}};
  meta["outputs"] = outputs;
  write_file(fs::path(c.out_dir) / (command + ".meta.json"), meta.dump(2) + "\n");
}

std::vector<double> k_grid(const RunConfig& c) {
  std::vector<double> ks(c.k_count);
  for (int i = 0; i < c.k_count; ++i) {
    ks[i] = c.k_count == 1 ? c.k_min
                           : c.k_min + (c.k_max - c.k_min) * static_cast<double>(i) / (c.k_count - 1);
  }
  return ks;
}

fs::path branch_path(const RunConfig& c, const Overrides& o) {
  return o.branch_file ? fs::path(*o.branch_file) : fs::path(c.out_dir) / "branch.json";
}

}  // namespace

int cmd_dispersion(const RunConfig& c, std::ostream& log) {
  const auto ks = k_grid(c);
  const auto rows = dispersion_table(ks, c.physics, c.kernel_n_max, c.kernel_tol);
  const fs::path out = fs::path(c.out_dir) / "dispersion.csv";
  write_file(out, dispersion_csv(rows, c.physics));
  write_meta(c, "dispersion", Json::array({"dispersion.csv"}));
  log << fmt::format("dispersion: {} rows written to {}\n", rows.size(), out.string());
  return kExitOk;
}

int cmd_kernel_check(const RunConfig& c, std::ostream& log) {
  const KernelReport r = kernel_is_simple(c.physics.k, c.physics, c.kernel_n_max, c.kernel_tol);
  const double t = transversality_value(c.physics.k, c.physics);
  const fs::path out = fs::path(c.out_dir) / "kernel_report.json";
  write_file(out, kernel_report_json(r, t).dump(2) + "\n");
  write_meta(c, "kernel-check", Json::array({"kernel_report.json"}));
  log << fmt::format("kernel-check: k = {} simple = {} (closest mode {}, gap {:.3g}), "
                     "transversality = {:.6g}\n",
                     c.physics.k, r.simple, r.closest_mode, r.min_relative_gap, t);
  return kExitOk;
}

int cmd_branch(const RunConfig& c, std::ostream& log) {
  const NewtonOptions newton = newton_options(c);
  Branch b;
  try {
    b = trace_branch(c.physics.k, c.physics, c.effective_s_max(), c.steps, c.n_modes, newton,
                     c.kernel_n_max, c.kernel_tol);
  } catch (const KernelNotSimple& e) {
    log << "branch: refused: " << e.what() << "\n";
    return kExitConfig;
  }
  const fs::path dir(c.out_dir);
  write_file(dir / "branch.json", branch_json(b, newton).dump(2) + "\n");
  write_file(dir / "profiles.csv", profiles_csv(b));
  write_meta(c, "branch", Json::array({"branch.json", "profiles.csv"}));
  log << fmt::format("branch: {} points, lambda* = {:.12g}, transversality = {:.6g}\n",
                     b.points.size(), b.lambda_star, b.transversality);
  if (!b.complete) {
    log << "branch: stopped early: " << b.stop_reason << "\n";
    return kExitConvergence;
  }
  return kExitOk;
}

namespace {

std::vector<std::size_t> selected_points(const Branch& b, const Overrides& o) {
  if (b.points.empty()) throw BranchFileError("branch file holds no points");
  if (o.point) {
    if (*o.point < 0 || static_cast<std::size_t>(*o.point) >= b.points.size()) {
      throw std::invalid_argument("--point " + std::to_string(*o.point) + " out of range (0.." +
                                  std::to_string(b.points.size() - 1) + ")");
    }
    return {static_cast<std::size_t>(*o.point)};
  }
  std::vector<std::size_t> all(b.points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

}  // namespace

int cmd_validate(const RunConfig& c, const Overrides& o, std::ostream& log) {
  const fs::path path = branch_path(c, o);
  const BranchFile file = parse_branch_json(read_file(path), path.string());
  const Branch& b = file.branch;
  const ValidationThresholds th;

  Json points = Json::array();
  bool all_passed = true;
  for (std::size_t i : selected_points(b, o)) {
    const BranchPoint& pt = b.points[i];
    const FlowForceConstants k = params_from_lambda_mu(pt.lambda, pt.mu, b.params);
    try {
      const FlowForceField f = reconstruct_S(pt, b.params, k.S0, c.m_y);
      const ValidationReport r = validate_solution(f, pt, b.params, th);
      all_passed = all_passed && r.passed;
      points.push_back(validation_json(r, i, pt));
      log << fmt::format("validate: point {} s = {:.6g}: {}\n", i, pt.s,
                         r.passed ? "pass" : "FAIL");
      for (const auto& f : r.failures) log << "  " << f << "\n";
    } catch (const Error& e) {
      all_passed = false;
      points.push_back(Json{{"point", i}, {"s", pt.s}, {"passed", false}, {"failures", {e.what()}}});
      log << fmt::format("validate: point {} could not be reconstructed: {}\n", i, e.what());
    }
  }

  Json report;
  report["format"] = "cgwave-validation/1";
  report["params"] = params_json(b.params);
  report["m_y"] = c.m_y;
  report["thresholds"] = Json{{"surface_equation", th.surface_equation},
                              {"trace", th.trace},
                              {"gauge", th.gauge},
                              {"ratio_center", th.ratio_center},
                              {"ratio_halfwidth", th.ratio_halfwidth},
                              {"min_order", th.min_order}};
  report["passed"] = all_passed;
  report["points"] = std::move(points);
  write_file(fs::path(c.out_dir) / "validation.json", report.dump(2) + "\n");
  write_meta(c, "validate", Json::array({"validation.json"}));
  return all_passed ? kExitOk : kExitValidation;
}

int cmd_reconstruct(const RunConfig& c, const Overrides& o, std::ostream& log) {
  const fs::path path = branch_path(c, o);
  const BranchFile file = parse_branch_json(read_file(path), path.string());
  const Branch& b = file.branch;
  if (b.points.empty()) throw BranchFileError(path.string() + ": branch file holds no points");
  const std::size_t i = o.point ? selected_points(b, o).front() : b.points.size() - 1;
  const BranchPoint& pt = b.points[i];
  const FlowForceConstants k = params_from_lambda_mu(pt.lambda, pt.mu, b.params);
  const FlowForceField f = reconstruct_S(pt, b.params, k.S0, c.m_y);
  const std::string name = fmt::format("fields_point{}.csv", i);
  write_file(fs::path(c.out_dir) / name, fields_csv(f));
  write_meta(c, "reconstruct", Json::array({name}));
  log << fmt::format("reconstruct: point {} (s = {:.6g}) on a {}x{} grid written to {}\n", i,
                     pt.s, f.S.mx(), f.S.rows(), name);
  return kExitOk;
}

int run_command(const std::string& command, const Overrides& o, std::ostream& log) {
  try {
    const RunConfig c = resolve_config(o);
    if (command == "dispersion") return cmd_dispersion(c, log);
    if (command == "kernel-check") return cmd_kernel_check(c, log);
    if (command == "branch") return cmd_branch(c, log);
    if (command == "validate") return cmd_validate(c, o, log);
    if (command == "reconstruct") return cmd_reconstruct(c, o, log);
    log << "unknown command '" << command << "'\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BranchFileError& e) {
    log << "branch file error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const KernelNotSimple& e) {
    log << "refused: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NoConvergence& e) {
    log << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const SingularJacobian& e) {
    log << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const InadmissibleIterate& e) {
    log << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::invalid_argument& e) {
    log << "invalid argument: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace cgwave::cli
