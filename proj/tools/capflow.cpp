// Command grammar:
//   capflow gen        --kind ... --out cloud.json
//   capflow perm-check --alpha ... --out report.json
//   capflow energy     --measure cloud.json --alpha ... [--triple]
//   capflow capacity   --set cloud.json --method lp|wolff|energy ...
//   capflow compare    --sets a.json b.json --alphas 0.3 0.5 --ns 1 2 --out prefix
//
// Exit codes: 0 success, 2 usage/domain, 3 resource guard, 4 input
// validation, 5 solver failure, 6 partial experiment failure.
//
// Outputs are deterministic: identical flags, seed, and partition count
// give byte-identical files.

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capflow/capacity.hpp"
#include "capflow/errors.hpp"
#include "capflow/harness.hpp"
#include "capflow/io.hpp"
#include "capflow/measures.hpp"
#include "capflow/sets.hpp"
#include "capflow/version.hpp"

namespace {

using namespace capflow;

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitInput = 4;
constexpr int kExitSolver = 5;
constexpr int kExitPartial = 6;

std::string fmt_flag(double v) { return fmt17(v); }

struct CommonFlags {
  std::uint64_t seed = 1;
  int partitions = kDefaultPartitionCount;
  std::string out;
};

CLI::App* make_subcommand(CLI::App& app, const std::string& name,
                          const std::string& desc) {
  CLI::App* cmd = app.add_subcommand(name, desc);
  cmd->set_help_flag("--help", "print help");  // frees -h/--h for grid spacing
  return cmd;
}

void add_common(CLI::App* cmd, CommonFlags& c, bool out_required = true) {
  cmd->add_option("--seed", c.seed, "root RNG seed");
  cmd->add_option("--partitions", c.partitions, "reduction partition count")
      ->check(CLI::PositiveNumber);
  auto* o = cmd->add_option("--out", c.out, "output file");
  if (out_required) o->required();
}

// ---------------------------------------------------------------------- gen
struct GenArgs {
  std::string kind = "cantor4";
  int generation = 3;
  double ratio = 0.25;
  int n_samples = 100;
  double scale = 1.0;
  double rotate = 0.0;
  std::vector<double> translate{0.0, 0.0};
  double graph_slope = 0.5;
  double graph_kink = 0.5;
  CommonFlags common;
};

int run_gen(const GenArgs& a) {
  auto kind = parse_set_kind(a.kind);
  if (!kind || *kind == SetKind::custom) {
    std::cerr << "unknown --kind " << a.kind << "\n";
    return kExitUsage;
  }
  SetSpec spec;
  spec.kind = *kind;
  spec.generation = a.generation;
  spec.ratio = a.ratio;
  spec.n_samples = a.n_samples;
  spec.graph_slope = a.graph_slope;
  spec.graph_kink = a.graph_kink;
  spec.transform.scale = a.scale;
  spec.transform.rotate = a.rotate;
  spec.transform.tx = a.translate[0];
  spec.transform.ty = a.translate[1];

  PointCloud cloud;
  try {
    cloud = generate(spec);
  } catch (const ResourceGuardError& e) {
    std::cerr << e.what() << "\n";
    return kExitResource;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  RunMeta meta;
  meta.command = "gen";
  meta.flags = {{"kind", a.kind},
                {"generation", std::to_string(a.generation)},
                {"ratio", fmt_flag(a.ratio)},
                {"n_samples", std::to_string(a.n_samples)},
                {"scale", fmt_flag(a.scale)},
                {"rotate", fmt_flag(a.rotate)},
                {"translate", fmt_flag(a.translate[0]) + " " + fmt_flag(a.translate[1])},
                {"graph_slope", fmt_flag(a.graph_slope)},
                {"graph_kink", fmt_flag(a.graph_kink)}};
  meta.seed = a.common.seed;
  meta.partition_count = a.common.partitions;
  write_file(a.common.out, cloud_to_json(cloud, meta) + "\n");
  std::cout << a.common.out << " (" << cloud.size() << " points)\n";
  return 0;
}

// --------------------------------------------------------------- perm-check
struct PermCheckArgs {
  double alpha = 1.0;
  int n = 1;
  int d = 2;
  std::int64_t samples = 10000;
  double theta0 = 0.3;
  CommonFlags common;
};

int run_perm_check(const PermCheckArgs& a) {
  if (!(a.alpha > 0.0 && a.alpha <= 1.0) || a.samples < 1) {
    std::cerr << "need alpha in (0,1] and samples >= 1\n";
    return kExitUsage;
  }
  HarnessConfig cfg;
  cfg.alpha = a.alpha;
  cfg.n = a.n;
  cfg.d = a.d;
  cfg.samples = a.samples;
  cfg.seed = a.common.seed;
  cfg.theta0 = a.theta0;
  cfg.partition_count = a.common.partitions;
  HarnessResult r = run_perm_harness(cfg);

  RunMeta meta;
  meta.command = "perm-check";
  meta.flags = {{"alpha", fmt_flag(a.alpha)}, {"n", std::to_string(a.n)},
                {"d", std::to_string(a.d)},   {"samples", std::to_string(a.samples)},
                {"theta0", fmt_flag(a.theta0)}};
  meta.seed = a.common.seed;
  meta.partition_count = a.common.partitions;

  JsonWriter w;
  w.begin_object();
  write_meta_fields(w, meta);
  w.key("results").begin_object();
  w.key("lower_ratio_min").value(r.lower_ratio_min);
  w.key("lower_ratio_max").value(r.lower_ratio_max);
  w.key("upper_ratio_min").value(r.upper_ratio_min);
  w.key("upper_ratio_max").value(r.upper_ratio_max);
  w.key("total_scaled_min").value(r.total_scaled_min);
  w.key("total_scaled_max").value(r.total_scaled_max);
  w.key("sign_violations").value(r.sign_violations);
  w.key("negative_components").value(r.negative_components);
  w.key("component_count").value(r.component_count);
  w.key("curvature_ratio_min").value(r.curvature_ratio_min);
  w.key("curvature_samples").value(r.curvature_samples);
  w.end_object();
  w.end_object();
  write_file(a.common.out, w.str() + "\n");
  std::cout << "sign_violations=" << r.sign_violations << " total_scaled=["
            << fmt17(r.total_scaled_min) << "," << fmt17(r.total_scaled_max) << "]\n";
  return 0;
}

// ------------------------------------------------------------------- energy
struct EnergyArgs {
  std::string measure;
  double alpha = 0.5;
  int n = 1;
  double wolff_s = 0.0;
  double wolff_p = 0.0;
  bool triple = false;
  CommonFlags common;
};

int run_energy(const EnergyArgs& a) {
  DiscreteMeasure mu;
  try {
    mu = read_measure(a.measure);
    if (mu.size() == 0) throw ValidationError("measure is empty");
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }
  KernelParams params(a.alpha, a.n, mu.dim());
  bool want_wolff = a.wolff_s > 0.0 || a.wolff_p > 0.0;

  RunMeta meta;
  meta.command = "energy";
  meta.flags = {{"measure", a.measure},
                {"alpha", fmt_flag(a.alpha)},
                {"n", std::to_string(a.n)},
                {"wolff_s", fmt_flag(a.wolff_s)},
                {"wolff_p", fmt_flag(a.wolff_p)},
                {"triple", a.triple ? "true" : "false"}};
  meta.seed = a.common.seed;
  meta.partition_count = a.common.partitions;

  JsonWriter w;
  w.begin_object();
  write_meta_fields(w, meta);
  w.key("energies").begin_object();

  double e_sym = sym_energy(mu, params, a.common.partitions);
  w.key("sym_energy").value(e_sym);
  std::cout << "sym_energy = " << fmt17(e_sym) << "\n";
  if (want_wolff) {
    WolffParams wp(a.wolff_s, a.wolff_p);
    if (!(wp.gamma() > 0.0)) {
      std::cerr << "wolff exponents need s p < 2\n";
      return kExitUsage;
    }
    double e_w = wolff_energy(mu, wp, a.common.partitions);
    w.key("wolff_energy").value(e_w);
    std::cout << "wolff_energy = " << fmt17(e_w) << "\n";
  }
  if (a.triple) {
    double e_t = triple_perm_energy(mu, a.n, a.common.partitions);
    w.key("triple_perm_energy").value(e_t);
    std::cout << "triple_perm_energy = " << fmt17(e_t) << "\n";
  }
  w.end_object();
  w.end_object();
  if (!a.common.out.empty()) write_file(a.common.out, w.str() + "\n");
  return 0;
}

// ----------------------------------------------------------------- capacity
struct CapacityArgs {
  std::string set;
  std::string method = "lp";
  double alpha = 0.5;
  int n = 1;
  double h = 0.0;
  double delta_factor = 0.5;
  int steps = 400;
  double wolff_s = 0.0;
  double wolff_p = 0.0;
  int subsample_cap = 320;
  CommonFlags common;
};

void write_estimate(JsonWriter& w, const CapacityEstimate& est) {
  w.key("estimate").begin_object();
  w.key("value").value(est.value);
  w.key("method").value(estimator_method_name(est.method));
  w.key("diagnostics").begin_object();
  w.key("iterations").value(est.diagnostics.iterations);
  w.key("constraints").value(est.diagnostics.constraint_count);
  w.key("max_violation").value(est.diagnostics.max_violation);
  w.key("status").value(est.diagnostics.status);
  w.key("success").value(est.diagnostics.success);
  w.key("objective").value(est.diagnostics.objective);
  w.key("support_size").value(est.diagnostics.support_size);
  w.key("note").value(est.diagnostics.note);
  w.end_object();
  w.end_object();
}

int run_capacity(const CapacityArgs& a) {
  PointCloud cloud;
  try {
    cloud = read_cloud(a.set);
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }

  CapacityEstimate est;
  try {
    if (a.method == "lp") {
      KernelParams params(a.alpha, a.n, cloud.d);
      LPConfig cfg;
      cfg.h = a.h;
      cfg.separation_factor = a.delta_factor;
      est = gamma_plus_lp(cloud, params, cfg);
    } else if (a.method == "wolff") {
      WolffParams wp = (a.wolff_s > 0.0 || a.wolff_p > 0.0)
                           ? WolffParams(a.wolff_s, a.wolff_p)
                           : wolff_params_for_alpha(a.alpha);
      EnergyOptConfig cfg;
      cfg.opt_steps = a.steps;
      cfg.seed = a.common.seed;
      cfg.subsample_cap = a.subsample_cap;
      cfg.partition_count = a.common.partitions;
      est = riesz_capacity_wolff(cloud, wp, cfg);
    } else if (a.method == "energy") {
      KernelParams params(a.alpha, a.n, cloud.d);
      EnergyOptConfig cfg;
      cfg.opt_steps = a.steps;
      cfg.seed = a.common.seed;
      cfg.subsample_cap = a.subsample_cap;
      cfg.partition_count = a.common.partitions;
      est = gamma_plus_energy(cloud, params, cfg);
    } else {
      std::cerr << "unknown --method " << a.method << "\n";
      return kExitUsage;
    }
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceGuardError& e) {
    std::cerr << e.what() << "\n";
    return kExitResource;
  }

  RunMeta meta;
  meta.command = "capacity";
  meta.flags = {{"set", a.set},
                {"method", a.method},
                {"alpha", fmt_flag(a.alpha)},
                {"n", std::to_string(a.n)},
                {"h", fmt_flag(a.h)},
                {"delta_factor", fmt_flag(a.delta_factor)},
                {"steps", std::to_string(a.steps)},
                {"wolff_s", fmt_flag(a.wolff_s)},
                {"wolff_p", fmt_flag(a.wolff_p)},
                {"subsample_cap", std::to_string(a.subsample_cap)}};
  meta.seed = a.common.seed;
  meta.partition_count = a.common.partitions;

  JsonWriter w;
  w.begin_object();
  write_meta_fields(w, meta);
  write_estimate(w, est);
  w.end_object();
  write_file(a.common.out, w.str() + "\n");
  std::cout << estimator_method_name(est.method) << " value = " << fmt17(est.value)
            << " status = " << est.diagnostics.status << "\n";
  return est.diagnostics.success ? 0 : kExitSolver;
}

// ------------------------------------------------------------------ compare
struct CompareArgs {
  std::vector<std::string> sets;
  std::vector<double> alphas;
  std::vector<int> ns;
  double h = 0.0;
  double delta_factor = 0.5;
  int steps = 400;
  int subsample_cap = 320;
  CommonFlags common;
};

int run_compare(const CompareArgs& a) {
  std::vector<NamedCloud> clouds;
  try {
    for (const std::string& path : a.sets) {
      NamedCloud nc;
      nc.cloud = read_cloud(path);
      nc.name = set_kind_name(nc.cloud.provenance.kind);
      nc.generation = nc.cloud.provenance.kind == SetKind::cantor4
                          ? nc.cloud.provenance.generation
                          : nc.cloud.provenance.n_samples;
      clouds.push_back(std::move(nc));
    }
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }

  LPConfig lp_cfg;
  lp_cfg.h = a.h;
  lp_cfg.separation_factor = a.delta_factor;
  EnergyOptConfig opt_cfg;
  opt_cfg.opt_steps = a.steps;
  opt_cfg.seed = a.common.seed;
  opt_cfg.subsample_cap = a.subsample_cap;
  opt_cfg.partition_count = a.common.partitions;

  std::vector<ExperimentRow> rows;
  try {
    rows = comparability_experiment(clouds, a.alphas, a.ns, lp_cfg, opt_cfg);
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  RunMeta meta;
  meta.command = "compare";
  std::string set_list, alpha_list, n_list;
  for (const auto& s : a.sets) set_list += (set_list.empty() ? "" : " ") + s;
  for (double v : a.alphas) alpha_list += (alpha_list.empty() ? "" : " ") + fmt_flag(v);
  for (int v : a.ns) n_list += (n_list.empty() ? "" : " ") + std::to_string(v);
  meta.flags = {{"sets", set_list},
                {"alphas", alpha_list},
                {"ns", n_list},
                {"h", fmt_flag(a.h)},
                {"delta_factor", fmt_flag(a.delta_factor)},
                {"steps", std::to_string(a.steps)},
                {"subsample_cap", std::to_string(a.subsample_cap)}};
  meta.seed = a.common.seed;
  meta.partition_count = a.common.partitions;

  write_file(a.common.out + ".csv", experiment_csv(rows));

  JsonWriter w;
  w.begin_object();
  write_meta_fields(w, meta);
  w.key("rows").begin_array();
  for (const ExperimentRow& r : rows) {
    w.begin_object();
    w.key("set").value(r.set_name);
    w.key("generation").value(r.generation);
    w.key("alpha").value(r.alpha);
    w.key("n").value(r.n);
    w.key("gamma_lp").value(r.lp.value);
    w.key("gamma_energy").value(r.energy.value);
    w.key("riesz_wolff").value(r.wolff.value);
    w.key("ratio_lp_wolff").value(r.ratio_lp_wolff);
    w.key("ratio_energy_wolff").value(r.ratio_energy_wolff);
    w.key("status").value(r.status);
    w.key("lp_diagnostics").begin_object();
    w.key("iterations").value(r.lp.diagnostics.iterations);
    w.key("constraints").value(r.lp.diagnostics.constraint_count);
    w.key("max_violation").value(r.lp.diagnostics.max_violation);
    w.key("status").value(r.lp.diagnostics.status);
    w.end_object();
    w.key("energy_diagnostics").begin_object();
    w.key("iterations").value(r.energy.diagnostics.iterations);
    w.key("objective").value(r.energy.diagnostics.objective);
    w.key("status").value(r.energy.diagnostics.status);
    w.key("support_size").value(r.energy.diagnostics.support_size);
    w.end_object();
    w.key("wolff_diagnostics").begin_object();
    w.key("iterations").value(r.wolff.diagnostics.iterations);
    w.key("objective").value(r.wolff.diagnostics.objective);
    w.key("status").value(r.wolff.diagnostics.status);
    w.end_object();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  write_file(a.common.out + ".json", w.str() + "\n");

  bool all_ok = true;
  for (const ExperimentRow& r : rows) all_ok = all_ok && r.ok;
  std::cout << rows.size() << " rows -> " << a.common.out << ".csv\n";
  return all_ok ? 0 : kExitPartial;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capflow: kernels, curvature energies, and capacity estimators"};
  app.set_version_flag("--version", capflow::kToolVersion);
  app.require_subcommand(1);
  // --h is a real option (grid spacing), so help is long-form only.
  app.set_help_flag("--help", "print help");
  app.set_help_all_flag("--help-all", "print help for all subcommands");

  GenArgs gen;
  auto* cmd_gen = make_subcommand(app, "gen", "generate a test-set point cloud");
  cmd_gen->add_option("--kind", gen.kind, "cantor4|segment|circle|lipschitz_graph");
  cmd_gen->add_option("--generation", gen.generation, "cantor4 generation");
  cmd_gen->add_option("--ratio", gen.ratio, "cantor4 contraction ratio");
  cmd_gen->add_option("--n-samples", gen.n_samples, "curve sample count");
  cmd_gen->add_option("--scale", gen.scale, "similarity scale");
  cmd_gen->add_option("--rotate", gen.rotate, "similarity rotation (radians)");
  cmd_gen->add_option("--translate", gen.translate, "similarity translation")->expected(2);
  cmd_gen->add_option("--graph-slope", gen.graph_slope, "tent graph slope");
  cmd_gen->add_option("--graph-kink", gen.graph_kink, "tent graph kink position");
  add_common(cmd_gen, gen.common);

  PermCheckArgs pc;
  auto* cmd_pc = make_subcommand(app, "perm-check", "permutation bound harness");
  cmd_pc->add_option("--alpha", pc.alpha, "kernel alpha in (0,1]");
  cmd_pc->add_option("--n", pc.n, "kernel n");
  cmd_pc->add_option("--d", pc.d, "ambient dimension");
  cmd_pc->add_option("--samples", pc.samples, "triple count");
  cmd_pc->add_option("--theta0", pc.theta0, "angle condition threshold");
  add_common(cmd_pc, pc.common);

  EnergyArgs en;
  auto* cmd_en = make_subcommand(app, "energy", "energies of a measure file");
  cmd_en->add_option("--measure", en.measure, "measure JSON file")->required();
  cmd_en->add_option("--alpha", en.alpha, "kernel alpha");
  cmd_en->add_option("--n", en.n, "kernel n");
  cmd_en->add_option("--wolff-s", en.wolff_s, "wolff s (with --wolff-p)");
  cmd_en->add_option("--wolff-p", en.wolff_p, "wolff p");
  cmd_en->add_flag("--triple", en.triple, "also compute the triple energy");
  add_common(cmd_en, en.common, /*out_required=*/false);

  CapacityArgs cap;
  auto* cmd_cap = make_subcommand(app, "capacity", "capacity estimate for a set file");
  cmd_cap->add_option("--set", cap.set, "cloud JSON file")->required();
  cmd_cap->add_option("--method", cap.method, "lp|wolff|energy");
  cmd_cap->add_option("--alpha", cap.alpha, "kernel alpha");
  cmd_cap->add_option("--n", cap.n, "kernel n");
  cmd_cap->add_option("--h", cap.h, "constraint grid spacing (0 = auto)");
  cmd_cap->add_option("--delta-factor", cap.delta_factor, "delta = factor * h");
  cmd_cap->add_option("--steps", cap.steps, "optimizer step cap");
  cmd_cap->add_option("--wolff-s", cap.wolff_s, "override wolff s");
  cmd_cap->add_option("--wolff-p", cap.wolff_p, "override wolff p");
  cmd_cap->add_option("--subsample-cap", cap.subsample_cap, "energy support cap");
  add_common(cmd_cap, cap.common);

  CompareArgs cmp;
  auto* cmd_cmp = make_subcommand(app, "compare", "comparability experiment table");
  cmd_cmp->add_option("--sets", cmp.sets, "cloud JSON files")->required()->expected(-1);
  cmd_cmp->add_option("--alphas", cmp.alphas, "alpha values")->required()->expected(-1);
  cmd_cmp->add_option("--ns", cmp.ns, "n values")->required()->expected(-1);
  cmd_cmp->add_option("--h", cmp.h, "constraint grid spacing (0 = auto)");
  cmd_cmp->add_option("--delta-factor", cmp.delta_factor, "delta = factor * h");
  cmd_cmp->add_option("--steps", cmp.steps, "optimizer step cap");
  cmd_cmp->add_option("--subsample-cap", cmp.subsample_cap, "energy support cap");
  add_common(cmd_cmp, cmp.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_gen->parsed()) return run_gen(gen);
    if (cmd_pc->parsed()) return run_perm_check(pc);
    if (cmd_en->parsed()) return run_energy(en);
    if (cmd_cap->parsed()) return run_capacity(cap);
    if (cmd_cmp->parsed()) return run_compare(cmp);
  } catch (const ResourceGuardError& e) {
    std::cerr << e.what() << "\n";
    return kExitResource;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
