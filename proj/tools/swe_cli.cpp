// Command-line front end for the shallow-water library.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swe/cases.hpp"
#include "swe/config.hpp"
#include "swe/errors.hpp"
#include "swe/norms.hpp"
#include "swe/output.hpp"

namespace fs = std::filesystem;
using namespace swe;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("not a number in list: '" + item + "'");
    }
  }
  return out;
}

std::string fmt(double v) { return format_double(v); }

// Effective settings after merging flags over the config file over the case
// defaults.
struct RunSettings {
  std::string case_id;
  int order = 1;
  FluxMode flux = FluxMode::FvsTwoRarefaction;
  double cfl = 0.9;
  double g = 9.81;
  int m = 100;
  int nx = 0, ny = 0;
  std::string mesh_path;
  std::vector<double> times;
  int steps = 0;  // lake cases: fixed step count
  std::string out_dir = "out";
  std::string format = "auto";
  int threads = 1;
};

void check_settings(const RunSettings& s) {
  if (s.order != 1 && s.order != 2) throw UsageError("order must be 1 or 2");
  if (!(s.cfl > 0.0 && s.cfl <= 1.0)) throw UsageError("cfl must lie in (0, 1]");
  if (!(s.g > 0.0)) throw UsageError("g must be positive");
  if (s.m < 2) throw UsageError("m must be at least 2");
  if ((s.nx != 0 && s.nx < 2) || (s.ny != 0 && s.ny < 2)) throw UsageError("nx and ny must be at least 2");
  if (s.threads < 1) throw UsageError("threads must be at least 1");
  for (std::size_t i = 1; i < s.times.size(); ++i) {
    if (!(s.times[i] > s.times[i - 1])) throw UsageError("output times must be increasing");
  }
  if (!s.times.empty() && s.times.front() < 0.0) throw UsageError("output times must be non-negative");
  if (s.format != "auto" && s.format != "csv" && s.format != "vtk" && s.format != "none") {
    throw UsageError("format must be auto, csv, vtk or none");
  }
}

bool is_1d(const std::string& id) {
  return id.rfind("riemann", 0) == 0 || id == "bump1d" || id == "lake1d";
}

Case1D make_case_1d(const RunSettings& s, const Config& cfg) {
  if (s.case_id == "riemann1" || s.case_id == "riemann2" || s.case_id == "riemann3") {
    return riemann_case(s.case_id.back() - '0', s.m);
  }
  if (s.case_id == "riemann-custom") {
    const Primitive1D left{cfg.get_double("left_h", 1.0), cfg.get_double("left_u", 0.0), cfg.get_double("left_psi", 1.0)};
    const Primitive1D right{cfg.get_double("right_h", 0.1), cfg.get_double("right_u", 0.0),
                            cfg.get_double("right_psi", 0.0)};
    const double x0 = cfg.get_double("x_min", 0.0), x1 = cfg.get_double("x_max", 30.0);
    const double xs = cfg.get_double("x_split", 0.5 * (x0 + x1));
    Case1D c = riemann_case(1, s.m);
    c.id = s.case_id;
    c.grid = Grid1D::make(x0, x1, s.m);
    c.initial = [=](double x) { return x < xs ? left : right; };
    c.output_times = {cfg.get_double("t_end", 1.0)};
    return c;
  }
  if (s.case_id == "bump1d") return bump_case_1d(s.m);
  if (s.case_id == "lake1d") return lake_at_rest_1d(s.m);
  throw UsageError("unknown case '" + s.case_id + "'");
}

Case2D make_case_2d(const RunSettings& s) {
  Case2D c;
  if (s.case_id == "bump2d") {
    c = bump_case_2d(s.nx ? s.nx : 200, s.ny ? s.ny : 10);
  } else if (s.case_id == "dam2d") {
    c = circular_dam_case(s.nx ? s.nx : 100, s.ny ? s.ny : 100);
  } else if (s.case_id == "lake2d") {
    c = lake_at_rest_2d(s.nx ? s.nx : 20);
  } else if (s.case_id == "manufactured") {
    c = manufactured_case(s.nx ? s.nx : 32);
  } else {
    throw UsageError("unknown case '" + s.case_id + "'");
  }
  if (!s.mesh_path.empty()) c.mesh = load_mesh(s.mesh_path);
  return c;
}

std::string time_tag(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", t);
  return buf;
}

int run_1d(const RunSettings& s, const Config& cfg, Manifest& manifest) {
  const Case1D c = make_case_1d(s, cfg);
  Solver1DOptions opt;
  opt.order = s.order;
  opt.flux = s.flux;
  opt.g = s.g;
  opt.threads = s.threads;
  const Solver1D solver(c.grid, c.bathymetry(), opt);
  RunState1D state = c.initial_state();
  const bool write = s.format == "auto" || s.format == "csv";
  if (write) fs::create_directories(s.out_dir);

  double residual = 0.0;
  const double m0 = total_mass(state, c.grid);
  if (c.id == "lake1d") {
    const double dt = solver.compute_dt(state, s.cfl);
    for (int k = 0; k < s.steps; ++k) solver.step(state, dt);
    double dev = 0.0;
    for (int i = 0; i < c.grid.cells; ++i) {
      dev = std::max(dev, std::abs(state.cells[i].h + solver.bathymetry().cell(i) - 0.5));
    }
    std::cout << "max|H-H0|=" << fmt(dev) << "\n";
    manifest.set("max_abs_H_minus_H0", dev);
  }
  for (double t : s.times) {
    run_until(solver, state, t, s.cfl, [&](const RunState1D&, double r, bool capped) {
      if (!capped) residual = r;
    });
    if (write) {
      const fs::path path = fs::path(s.out_dir) / (c.id + "_t" + time_tag(t) + ".csv");
      std::ofstream out(path);
      write_csv_1d(out, state, c.grid, solver.bathymetry());
      std::cout << "wrote " << path.string() << "\n";
    }
  }
  if (c.id.rfind("riemann", 0) == 0 && !s.times.empty()) {
    const double t = state.time;
    std::vector<double> num(c.grid.cells), ref(c.grid.cells), w(c.grid.cells, c.grid.dx());
    const Primitive1D left = c.initial(c.grid.x_min), right = c.initial(c.grid.x_max);
    double split = 0.5 * (c.grid.x_min + c.grid.x_max);
    if (c.id == "riemann-custom") split = cfg.get_double("x_split", split);
    const ExactSweSolution exact(left, right, s.g);
    for (int i = 0; i < c.grid.cells; ++i) {
      num[i] = state.cells[i].h;
      ref[i] = t > 0.0 ? exact.sample((c.grid.center(i) - split) / t).h : c.initial(c.grid.center(i)).h;
    }
    const Norms n = error_norms(num, ref, w);
    std::cout << "L1(h) vs exact=" << fmt(n.l1) << "\n";
    manifest.set("l1_h_vs_exact", n.l1);
  }
  if (c.id == "bump1d") {
    std::cout << "residual (last full CFL step)=" << fmt(residual) << "\n";
    manifest.set("final_residual", residual);
  }
  manifest.set("final_time", state.time);
  manifest.set("steps", state.steps);
  manifest.set("mass_initial", m0);
  manifest.set("mass_final", total_mass(state, c.grid));
  return 0;
}

int run_2d(const RunSettings& s, Manifest& manifest) {
  const Case2D c = make_case_2d(s);
  const auto problems = validate_mesh(c.mesh);
  if (!problems.empty()) throw UsageError("invalid mesh: " + problems.front());
  Solver2DOptions opt;
  opt.order = s.order;
  opt.flux = s.flux;
  opt.g = s.g;
  opt.threads = s.threads;
  opt.forcing = c.forcing;
  const Solver2D solver(c.mesh, c.bathymetry(), opt);
  RunState2D state = c.initial_state();
  const bool write = s.format == "auto" || s.format == "vtk";
  if (write) fs::create_directories(s.out_dir);
  manifest.set("cells", static_cast<long>(c.mesh.cell_count()));

  const double m0 = total_mass(state, c.mesh);
  if (c.id == "lake2d") {
    const double dt = solver.compute_dt(state, s.cfl);
    for (int k = 0; k < s.steps; ++k) solver.step(state, dt);
    double dev = 0.0;
    for (std::size_t i = 0; i < state.cells.size(); ++i) {
      dev = std::max(dev, std::abs(state.cells[i].h + solver.bathymetry().cell(i) - 1.0));
    }
    std::cout << "max|H-H0|=" << fmt(dev) << "\n";
    manifest.set("max_abs_H_minus_H0", dev);
  }
  double residual = 0.0;
  int index = 0;
  for (double t : s.times) {
    run_until(solver, state, t, s.cfl, [&](const RunState2D&, double r, bool capped) {
      if (!capped) residual = r;
    });
    if (write) {
      char name[64];
      std::snprintf(name, sizeof name, "_%03d.vtk", index);
      const fs::path path = fs::path(s.out_dir) / (c.id + name);
      std::ofstream out(path);
      write_vtk_2d(out, state, c.mesh, solver.bathymetry(), c.id);
      std::cout << "wrote " << path.string() << " (t=" << fmt(state.time) << ")\n";
    }
    ++index;
  }
  if (c.id == "manufactured") {
    std::vector<double> num(state.cells.size()), ref(state.cells.size());
    for (std::size_t i = 0; i < num.size(); ++i) {
      num[i] = state.cells[i].qx;
      ref[i] = manufactured_exact(c.mesh.centroids[i].x, c.mesh.centroids[i].y, state.time).qx;
    }
    const Norms n = error_norms(num, ref, c.mesh.areas);
    std::cout << "qx error L1=" << fmt(n.l1) << " L2=" << fmt(n.l2) << " Linf=" << fmt(n.linf) << "\n";
    manifest.set("qx_l1", n.l1);
  }
  if (c.id == "bump2d") {
    std::cout << "residual (last full CFL step)=" << fmt(residual) << "\n";
    manifest.set("final_residual", residual);
  }
  manifest.set("final_time", state.time);
  manifest.set("steps", state.steps);
  manifest.set("mass_initial", m0);
  manifest.set("mass_final", total_mass(state, c.mesh));
  return 0;
}

// Wave-fan description of the full-SWE solution.
void print_fan(const ExactSweSolution& ex, const Primitive1D& l, const Primitive1D& r, double g) {
  const double cl = std::sqrt(g * l.h), cr = std::sqrt(g * r.h);
  std::cout << "full-swe: h*=" << fmt(ex.h_star()) << " u*=" << fmt(ex.u_star())
            << (ex.dry_middle() ? " (dry middle)" : "") << "\n";
  auto side = [&](const char* name, const Primitive1D& k, double ck, WaveType w, double sign) {
    if (k.h <= kDryDepth) {
      std::cout << "  " << name << ": dry\n";
      return;
    }
    if (w == WaveType::Shock) {
      const double hs = ex.h_star();
      const double qk = std::sqrt(0.5 * (hs + k.h) * hs / (k.h * k.h));
      std::cout << "  " << name << ": shock speed=" << fmt(k.u + sign * ck * qk) << "\n";
    } else {
      const double cs = std::sqrt(g * ex.h_star());
      const double tail = ex.dry_middle() ? k.u - sign * 2.0 * ck : ex.u_star() + sign * cs;
      std::cout << "  " << name << ": rarefaction head=" << fmt(k.u + sign * ck) << " tail=" << fmt(tail) << "\n";
    }
  };
  side("left", l, cl, ex.wave_left(), -1.0);
  std::cout << "  contact speed=" << fmt(ex.u_star()) << "\n";
  side("right", r, cr, ex.wave_right(), 1.0);
}

void print_star(const char* name, const StarState& s) {
  std::cout << name << ": h*=" << fmt(s.h_star) << " q*=" << fmt(s.q_star) << (s.dry ? " (dry)" : "");
  if (!s.dry) {
    std::cout << " left=" << (s.wave_left == WaveType::Shock ? "shock" : "rarefaction")
              << " right=" << (s.wave_right == WaveType::Shock ? "shock" : "rarefaction");
    if (s.s_left) std::cout << " S_L=" << fmt(*s.s_left);
    if (s.s_right) std::cout << " S_R=" << fmt(*s.s_right);
  }
  std::cout << " iterations=" << s.iterations << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shallow-water finite-volume solver"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "Worker threads for flux passes")->check(CLI::PositiveNumber);
  app.fallthrough();

  // run
  auto* run = app.add_subcommand("run", "Run a built-in case");
  std::string config_path, case_id, flux_name, mesh_path, times_text, out_dir, format;
  int order = 1, m = 100, nx = 0, ny = 0, steps = 100;
  double cfl = 0.9, g = 9.81;
  run->add_option("--config", config_path, "key=value config file");
  auto* o_case = run->add_option("--case", case_id,
                                 "riemann1|riemann2|riemann3|riemann-custom|bump1d|bump2d|dam2d|lake1d|lake2d|manufactured");
  auto* o_order = run->add_option("--order", order, "Scheme order (1 or 2)");
  auto* o_flux = run->add_option("--flux", flux_name, "fvs-2r | fvs-exact | godunov-exact");
  auto* o_cfl = run->add_option("--cfl", cfl, "CFL coefficient");
  auto* o_g = run->add_option("--g", g, "Gravity");
  auto* o_m = run->add_option("--m", m, "1D cell count");
  auto* o_nx = run->add_option("--nx", nx, "2D cells in x");
  auto* o_ny = run->add_option("--ny", ny, "2D cells in y");
  auto* o_mesh = run->add_option("--mesh", mesh_path, "Mesh file for 2D cases");
  auto* o_times = run->add_option("--times", times_text, "Comma-separated output times");
  auto* o_steps = run->add_option("--steps", steps, "Step count for lake-at-rest cases");
  auto* o_out = run->add_option("--out", out_dir, "Output directory");
  auto* o_format = run->add_option("--format", format, "auto | csv | vtk | none");

  // convergence
  auto* conv = app.add_subcommand("convergence", "Manufactured-solution convergence study");
  int conv_order = 2;
  double conv_cfl = 0.45;
  std::string conv_flux = "fvs-2r", conv_meshes = "16,32,64,128", conv_out;
  conv->add_option("--order", conv_order, "Scheme order (1 or 2)");
  conv->add_option("--flux", conv_flux, "Flux mode");
  conv->add_option("--cfl", conv_cfl, "CFL coefficient");
  conv->add_option("--meshes", conv_meshes, "Comma-separated n values (n x n squares)");
  conv->add_option("--out", conv_out, "Write the table to this CSV file");

  // mesh gen / mesh check
  auto* mesh = app.add_subcommand("mesh", "Mesh utilities");
  mesh->require_subcommand(1);
  auto* gen = mesh->add_subcommand("gen", "Generate a rectangle mesh");
  int gnx = 10, gny = 10;
  double glx = 1.0, gly = 1.0, gx0 = 0.0, gy0 = 0.0;
  std::string gout;
  gen->add_option("--nx", gnx)->required();
  gen->add_option("--ny", gny)->required();
  gen->add_option("--lx", glx);
  gen->add_option("--ly", gly);
  gen->add_option("--x0", gx0);
  gen->add_option("--y0", gy0);
  gen->add_option("-o,--output", gout, "Mesh file to write")->required();
  auto* check = mesh->add_subcommand("check", "Validate a mesh file");
  std::string check_path;
  check->add_option("path", check_path)->required();

  // riemann
  auto* rp = app.add_subcommand("riemann", "Solve one Riemann problem");
  double hl = 1.0, ul = 0.0, psil = 1.0, hr = 0.1, ur = 0.0, psir = 0.0, rg = 9.81;
  rp->add_option("--hl", hl);
  rp->add_option("--ul", ul);
  rp->add_option("--psil", psil);
  rp->add_option("--hr", hr);
  rp->add_option("--ur", ur);
  rp->add_option("--psir", psir);
  rp->add_option("--g", rg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) {
      Config cfg;
      if (!config_path.empty()) cfg = Config::load(config_path);
      auto flag = [&](CLI::Option* opt, const std::string& key, const std::string& value) {
        if (opt->count() > 0) cfg.set(key, value);
      };
      flag(o_case, "case", case_id);
      flag(o_order, "order", std::to_string(order));
      flag(o_flux, "flux", flux_name);
      flag(o_cfl, "cfl", fmt(cfl));
      flag(o_g, "g", fmt(g));
      flag(o_m, "m", std::to_string(m));
      flag(o_nx, "nx", std::to_string(nx));
      flag(o_ny, "ny", std::to_string(ny));
      flag(o_mesh, "mesh", mesh_path);
      flag(o_times, "times", times_text);
      flag(o_steps, "steps", std::to_string(steps));
      flag(o_out, "out", out_dir);
      flag(o_format, "format", format);
      if (app.get_option("--threads")->count() > 0) cfg.set("threads", std::to_string(threads));

      RunSettings s;
      s.case_id = cfg.get_string("case", "");
      if (s.case_id.empty()) throw UsageError("no case given (--case or case= in the config file)");
      const bool one_d = is_1d(s.case_id);
      s.order = cfg.get_int("order", 1);
      s.flux = parse_flux_mode(cfg.get_string("flux", "fvs-2r"));
      s.cfl = cfg.get_double("cfl", one_d ? 0.9 : 0.45);
      s.g = cfg.get_double("g", 9.81);
      s.m = cfg.get_int("m", s.case_id == "bump1d" ? 200 : 100);
      s.nx = cfg.get_int("nx", 0);
      s.ny = cfg.get_int("ny", 0);
      s.mesh_path = cfg.get_string("mesh", "");
      s.steps = cfg.get_int("steps", 100);
      s.out_dir = cfg.get_string("out", "out");
      s.format = cfg.get_string("format", "auto");
      s.threads = cfg.get_int("threads", 1);
      if (cfg.has("times")) {
        s.times = parse_list(*cfg.get("times"));
      } else if (one_d) {
        s.times = make_case_1d(s, cfg).output_times;
      } else {
        s.times = make_case_2d(s).output_times;
      }
      check_settings(s);

      Manifest manifest;
      manifest.set("case", s.case_id);
      manifest.set("order", s.order);
      manifest.set("flux", to_string(s.flux));
      manifest.set("cfl", s.cfl);
      manifest.set("g", s.g);
      manifest.set("newton_tol", SolverTolerances{}.tol);
      manifest.set("newton_max_iter", SolverTolerances{}.max_iter);
      manifest.set("dry_depth", kDryDepth);
      if (one_d) {
        manifest.set("m", s.m);
      } else {
        manifest.set("nx", s.nx);
        manifest.set("ny", s.ny);
        manifest.set("mesh", s.mesh_path.empty() ? std::string("generated") : s.mesh_path);
      }
      std::string times_out;
      for (double t : s.times) times_out += (times_out.empty() ? "" : ",") + fmt(t);
      manifest.set("times", times_out);
      if (s.case_id.rfind("lake", 0) == 0) manifest.set("lake_steps", s.steps);
      manifest.set("threads", s.threads);
      manifest.set("format", s.format);
      for (const auto& [k, v] : cfg.values()) manifest.set("config." + k, v);

      const auto t0 = std::chrono::steady_clock::now();
      const int rc = one_d ? run_1d(s, cfg, manifest) : run_2d(s, manifest);
      manifest.set("wall_time_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      if (s.format != "none") {
        fs::create_directories(s.out_dir);
        std::ofstream mf(fs::path(s.out_dir) / (s.case_id + "_manifest.txt"));
        manifest.write(mf);
      }
      return rc;
    }
    if (*conv) {
      ConvergenceOptions opt;
      opt.order = conv_order;
      opt.flux = parse_flux_mode(conv_flux);
      opt.cfl = conv_cfl;
      opt.threads = threads;
      if (opt.order != 1 && opt.order != 2) throw UsageError("order must be 1 or 2");
      std::vector<int> meshes;
      for (double v : parse_list(conv_meshes)) meshes.push_back(static_cast<int>(v));
      const auto rows = convergence_study(meshes, opt);
      const std::string table = format_convergence(rows);
      std::cout << table;
      if (!conv_out.empty()) std::ofstream(conv_out) << table;
      return 0;
    }
    if (*gen) {
      const TriMesh tm = generate_rect_mesh(gnx, gny, glx, gly, {gx0, gy0});
      save_mesh(tm, gout);
      std::cout << "wrote " << gout << ": " << tm.nodes.size() << " nodes, " << tm.cell_count() << " triangles\n";
      return 0;
    }
    if (*check) {
      const TriMesh tm = load_mesh(check_path);
      for (const auto& w : tm.warnings) std::cout << "warning: " << w << "\n";
      const auto problems = validate_mesh(tm);
      for (const auto& p : problems) std::cout << "violation: " << p << "\n";
      std::cout << tm.nodes.size() << " nodes, " << tm.cell_count() << " triangles, " << tm.edges.size()
                << " edges, area " << fmt(total_area(tm)) << (problems.empty() ? ", valid" : ", INVALID") << "\n";
      return problems.empty() ? 0 : 1;
    }
    if (*rp) {
      const Primitive1D l{hl, ul, psil}, r{hr, ur, psir};
      if (hl < 0.0 || hr < 0.0) throw UsageError("depths must be non-negative");
      print_star("pressure 2R", two_rarefaction_star(l, r, rg));
      print_star("pressure exact", exact_pressure_star(l, r, rg));
      print_fan(ExactSweSolution(l, r, rg), l, r, rg);
      const Vec3 f1 = fvs_interface_flux(l, r, rg, PressureSolver::TwoRarefaction);
      const Vec3 f2 = godunov_exact_flux(l, r, rg);
      std::cout << "fvs-2r flux=(" << fmt(f1[0]) << ", " << fmt(f1[1]) << ", " << fmt(f1[2]) << ")\n";
      std::cout << "godunov flux=(" << fmt(f2[0]) << ", " << fmt(f2[1]) << ", " << fmt(f2[2]) << ")\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MeshParseError& e) {
    std::cerr << "mesh error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const NegativeDepthError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}
