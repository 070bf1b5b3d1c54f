// plcheck: command-line front end for the Poisson/Hamiltonian comparison
// library. Verification checks, map evaluation, orbit sampling and the
// Ginzburg-Weinstein flow; reports as JSON (or CSV) to stdout or --out.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "plc/harness.hpp"

namespace {

using plc::Json;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << std::endl;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw plc::ConfigInvalid("cannot open output path: " + out_path);
  out << text << "\n";
}

void emit_json(const Json& j, const std::string& out_path) { emit(j.dump(2), out_path); }

plc::CartanForm load_form(const std::string& path, int rank) {
  if (path.empty()) return plc::CartanForm::zero(rank);
  return plc::cartan_form_from_json(plc::read_json_file(path));
}

plc::RunConfig run_config_from_json(const Json& j) {
  plc::RunConfig cfg;
  if (j.contains("n")) cfg.n = j.at("n").get<int>();
  if (j.contains("family"))
    cfg.family = j.at("family").get<std::string>() == "special" ? plc::Family::special
                                                                : plc::Family::generic;
  if (j.contains("t")) cfg.t = j.at("t").get<double>();
  if (j.contains("u")) cfg.u = plc::cartan_form_from_json(j.at("u"));
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  if (j.contains("group_elements")) cfg.group_elements = j.at("group_elements").get<int>();
  if (j.contains("orbit_count")) cfg.orbit_count = j.at("orbit_count").get<int>();
  if (j.contains("flow_steps")) cfg.flow_steps = j.at("flow_steps").get<int>();
  if (j.contains("flow_pairs")) cfg.flow_pairs = j.at("flow_pairs").get<int>();
  if (j.contains("fd")) {
    cfg.fd.spatial = j.at("fd").value("spatial", cfg.fd.spatial);
    cfg.fd.t_step = j.at("fd").value("t_step", cfg.fd.t_step);
  }
  if (j.contains("tolerances"))
    for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it)
      cfg.tolerance_overrides[it.key()] = it.value().get<double>();
  return cfg;
}

plc::GridConfig grid_config_from_json(const Json& j) {
  plc::GridConfig cfg;
  if (j.contains("ns")) cfg.ns = j.at("ns").get<std::vector<int>>();
  if (j.contains("ts")) cfg.ts = j.at("ts").get<std::vector<double>>();
  if (j.contains("include_random_u")) cfg.include_random_u = j.at("include_random_u").get<bool>();
  if (j.contains("include_special")) cfg.include_special = j.at("include_special").get<bool>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  if (j.contains("flow_steps")) cfg.flow_steps = j.at("flow_steps").get<int>();
  if (j.contains("flow_pairs")) cfg.flow_pairs = j.at("flow_pairs").get<int>();
  if (j.contains("tolerances"))
    for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it)
      cfg.tolerance_overrides[it.key()] = it.value().get<double>();
  return cfg;
}

Json orbit_point_to_json(const plc::OrbitPoint& p, double t) {
  Json j;
  j["mu"] = plc::coalgebra_to_json(p.coadjoint_rep);
  j["kind"] = p.kind == plc::OrbitKind::dressing ? "dressing" : "coadjoint";
  if (p.dual_rep)
    j["dual"] = plc::dual_element_to_json(*p.dual_rep, t);
  else
    j["dual"] = nullptr;
  return j;
}

int cmd_run(const std::string& check, const std::string& config_path, const std::string& out_path,
            const std::string& format) {
  plc::RunConfig cfg =
      config_path.empty() ? plc::RunConfig{} : run_config_from_json(plc::read_json_file(config_path));
  plc::CheckReport rep = plc::run_check(check, cfg);
  if (format == "csv")
    emit(plc::reports_to_csv({rep}), out_path);
  else
    emit_json(plc::report_to_json(rep), out_path);
  return rep.pass ? 0 : 1;
}

int cmd_run_all(const std::string& config_path, const std::string& out_path,
                const std::string& format) {
  plc::GridConfig cfg =
      config_path.empty() ? plc::GridConfig{} : grid_config_from_json(plc::read_json_file(config_path));
  plc::RunAllResult res = plc::run_all(cfg);
  if (format == "csv")
    emit(plc::reports_to_csv(res.reports), out_path);
  else
    emit_json(plc::run_all_to_json(res), out_path);
  return res.summary.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson vs Hamiltonian group actions on SU(n): maps, forms, orbits, flows"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json", check_id;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "write the report to this path instead of stdout");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* run = app.add_subcommand("run", "run a single named check");
  run->add_option("--check", check_id, "check id")->required();
  run->add_option("--config", config_path, "RunConfig JSON path");
  add_io(run);

  CLI::App* run_all = app.add_subcommand("run-all", "run the full grid of checks");
  run_all->add_option("--config", config_path, "GridConfig JSON path");
  add_io(run_all);

  // `check <id>` is a light-weight alias of `run --check <id>` with inline options.
  CLI::App* check = app.add_subcommand("check", "run a named check with inline options");
  std::string u_file;
  plc::RunConfig inline_cfg;
  check->add_option("id", check_id, "check id")->required();
  check->add_option("--n", inline_cfg.n, "group rank");
  check->add_option("--t", inline_cfg.t, "deformation parameter t");
  check->add_option("--u-file", u_file, "Cartan form JSON (u or w)");
  check->add_option("--seed", inline_cfg.seed, "RNG seed");
  check->add_option("--samples", inline_cfg.samples, "sample count");
  check->add_option("--threads", inline_cfg.threads, "worker threads");
  add_io(check);

  CLI::App* emap = app.add_subcommand("emap", "evaluate e_(t,u) on a coalgebra vector");
  std::string in_path;
  double t_param = 0.5;
  emap->add_option("--in", in_path, "CoalgebraVector JSON path")->required();
  emap->add_option("--t", t_param, "deformation parameter t")->required();
  emap->add_option("--u-file", u_file, "Cartan form JSON");
  add_io(emap);

  CLI::App* omega = app.add_subcommand("omega", "evaluate a 2-form at a JSON-specified sample");
  omega->add_option("--in", in_path, "sample JSON: {form, a, X, Y, t, u} or {form, a, X, Y, w}")
      ->required();
  add_io(omega);

  CLI::App* orbit = app.add_subcommand("dressing-orbit", "dressing-orbit operations");
  CLI::App* orbit_sample_cmd = orbit->add_subcommand("sample", "sample points on a dressing orbit");
  int n_param = 2, count = 10;
  std::uint64_t seed = 42;
  std::string base_file;
  orbit_sample_cmd->add_option("--n", n_param, "group rank")->required();
  orbit_sample_cmd->add_option("--t", t_param, "deformation parameter t")->required();
  orbit_sample_cmd->add_option("--u-file", u_file, "Cartan form JSON");
  orbit_sample_cmd->add_option("--base-file", base_file, "base point CoalgebraVector JSON");
  orbit_sample_cmd->add_option("--count", count, "number of samples");
  orbit_sample_cmd->add_option("--seed", seed, "RNG seed");
  add_io(orbit_sample_cmd);
  orbit->require_subcommand(1);

  CLI::App* gw = app.add_subcommand("gw-flow", "integrate the Ginzburg-Weinstein flow");
  double t_start = 0.5, t_end = 0.1;
  int steps = 100, pairs = 6;
  std::string seeds_file;
  gw->add_option("--n", n_param, "group rank")->required();
  gw->add_option("--t-start", t_start, "initial t")->required();
  gw->add_option("--t-end", t_end, "final t")->required();
  gw->add_option("--steps", steps, "RK4 steps");
  gw->add_option("--u-file", u_file, "Cartan form JSON");
  gw->add_option("--seeds-file", seeds_file, "JSON array of CoalgebraVector seeds");
  gw->add_option("--pairs", pairs, "tangent pairs for the symplectomorphism report");
  gw->add_option("--seed", seed, "RNG seed");
  add_io(gw);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(check_id, config_path, out_path, format);
    if (run_all->parsed()) return cmd_run_all(config_path, out_path, format);

    if (check->parsed()) {
      if (!u_file.empty()) inline_cfg.u = load_form(u_file, inline_cfg.n - 1);
      if (check_id == "lemma3") inline_cfg.family = plc::Family::special;
      plc::CheckReport rep = plc::run_check(check_id, inline_cfg);
      if (format == "csv")
        emit(plc::reports_to_csv({rep}), out_path);
      else
        emit_json(plc::report_to_json(rep), out_path);
      return rep.pass ? 0 : 1;
    }

    if (emap->parsed()) {
      plc::CoalgebraVector a = plc::coalgebra_from_json(plc::read_json_file(in_path));
      plc::PoissonParams params =
          plc::PoissonParams::generic(t_param, load_form(u_file, a.dim() - 1));
      plc::DualGroupElement e = plc::e_map(a, params);
      emit_json(plc::dual_element_to_json(e, t_param), out_path);
      return 0;
    }

    if (omega->parsed()) {
      Json j = plc::read_json_file(in_path);
      std::string form = j.at("form").get<std::string>();
      Json result;
      result["form"] = form;
      if (form == "omega_w") {
        plc::SpecialChart a = plc::SpecialChart::from_body(plc::matrix_from_json(j.at("a")));
        plc::SpecialChart x = plc::SpecialChart::from_body(plc::matrix_from_json(j.at("X")));
        plc::SpecialChart y = plc::SpecialChart::from_body(plc::matrix_from_json(j.at("Y")));
        plc::CartanForm w = plc::cartan_form_from_json(j.at("w"));
        result["value"] = plc::omega_w_eval(a, x, y, w);
      } else {
        plc::CoalgebraVector a = plc::coalgebra_from_json(j.at("a"));
        plc::CoalgebraVector x = plc::coalgebra_from_json(j.at("X"));
        plc::CoalgebraVector y = plc::coalgebra_from_json(j.at("Y"));
        double t = j.at("t").get<double>();
        plc::CartanForm u = j.contains("u") ? plc::cartan_form_from_json(j.at("u"))
                                            : plc::CartanForm::zero(a.dim() - 1);
        plc::PoissonParams params = plc::PoissonParams::generic(t, u);
        if (form == "omega1")
          result["value"] = plc::omega1_eval(a, x, y, t);
        else if (form == "omega2")
          result["value"] = plc::omega2_eval(a, x, y, params);
        else if (form == "omega")
          result["value"] = plc::omega_eval(a, x, y, params);
        else
          throw plc::ConfigInvalid("unknown form id: " + form);
      }
      emit_json(result, out_path);
      return 0;
    }

    if (orbit->parsed()) {
      plc::CartanForm u = load_form(u_file, n_param - 1);
      plc::PoissonParams params = plc::PoissonParams::generic(t_param, u);
      plc::CoalgebraVector base =
          base_file.empty() ? plc::random_regular_point(n_param, seed)
                            : plc::coalgebra_from_json(plc::read_json_file(base_file));
      std::vector<plc::OrbitPoint> pts =
          plc::orbit_sample(seed, count, base, plc::OrbitKind::dressing, params);
      Json arr = Json::array();
      for (const plc::OrbitPoint& p : pts) arr.push_back(orbit_point_to_json(p, t_param));
      emit_json(arr, out_path);
      return 0;
    }

    if (gw->parsed()) {
      plc::FlowConfig fc;
      fc.t_start = t_start;
      fc.t_end = t_end;
      fc.steps = steps;
      fc.u = load_form(u_file, n_param - 1);
      std::vector<plc::CoalgebraVector> seeds;
      if (seeds_file.empty()) {
        seeds.push_back(plc::random_regular_point(n_param, seed));
      } else {
        Json arr = plc::read_json_file(seeds_file);
        for (const Json& e : arr) seeds.push_back(plc::coalgebra_from_json(e));
      }
      plc::FlowResult res = plc::integrate_flow(seeds, fc);
      Json j;
      j["t_start"] = t_start;
      j["t_end"] = t_end;
      j["steps"] = steps;
      Json trajs = Json::array();
      for (const plc::FlowTrajectory& tr : res.trajectories) {
        Json jt;
        jt["times"] = tr.times;
        Json pts = Json::array();
        for (const plc::CoalgebraVector& p : tr.points) pts.push_back(plc::coalgebra_to_json(p));
        jt["points"] = pts;
        jt["max_field_norm"] = tr.max_field_norm;
        jt["max_step_error"] = tr.max_step_error;
        trajs.push_back(jt);
      }
      j["trajectories"] = trajs;
      Json syms = Json::array();
      for (const plc::CoalgebraVector& s : seeds) {
        plc::SymplectoReport sym = plc::symplecto_residual(s, fc, pairs, seed + 1);
        syms.push_back(Json{{"max_relative_residual", sym.max_relative_residual},
                            {"median_relative_residual", sym.median_relative_residual},
                            {"pairs", sym.pairs}});
      }
      j["symplecto"] = syms;
      emit_json(j, out_path);
      return 0;
    }
  } catch (const plc::Error& e) {
    std::cerr << e.tag() << ": " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 2;
}
