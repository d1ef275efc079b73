#include "fde/cli.hpp"

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fde/driver.hpp"
#include "fde/precond.hpp"
#include "fde/problem.hpp"
#include "fde/report.hpp"
#include "fde/structured.hpp"
#include "fde/symbols.hpp"
#include "fde/verify.hpp"

namespace fde::cli {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string dstr(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string no_commas(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  return s;
}

double default_alpha(int) { return 1.8; }
double default_beta(int which) { return which == 1 ? 1.6 : 1.9; }

struct SolveFlags {
  int example = 0; // 0 = custom problem from --coeff-preset
  int preset = 0;
  std::size_t n = 32;
  std::size_t m = 0; // 0 = same as n
  std::string precond = "none";
  double tol = 1e-7;
  std::size_t restart = 20;
  std::size_t max_outer = 100;
  double omega = 0.9;
  std::size_t cycles = 1;
  std::string coarse = "sweeps";
  std::size_t coarse_sweeps = 3;
  double alpha = 0.0; // 0 = preset default
  double beta = 0.0;
  std::vector<double> domain; // ax bx ay by
  std::string out_dir = "results";
};

mg::CoarseSolve coarse_from_name(const std::string& name) {
  if (name == "lu") return mg::CoarseSolve::lu;
  if (name == "sweeps") return mg::CoarseSolve::sweeps;
  if (name == "none") return mg::CoarseSolve::none;
  throw std::invalid_argument("unknown coarse solve: " + name);
}

FdeProblem resolve_problem(const SolveFlags& f) {
  const int which = f.example > 0 ? f.example : f.preset;
  const double alpha = f.alpha > 0.0 ? f.alpha : default_alpha(which);
  const double beta = f.beta > 0.0 ? f.beta : default_beta(which);
  FdeProblem p = f.domain.empty()
                     ? make_example(which, alpha, beta)
                     : make_example_on(which, alpha, beta, f.domain[0],
                                       f.domain[1], f.domain[2], f.domain[3]);
  if (f.example == 0) {
    p.index = 0;
    p.name = "custom-" + std::to_string(which);
  }
  return p;
}

int cmd_solve(const SolveFlags& f) {
  if (f.example == 0 && f.preset == 0) {
    std::cerr << "solve needs --example or --coeff-preset\n";
    return 2;
  }
  const FdeProblem p = resolve_problem(f);
  const std::size_t steps = f.m > 0 ? f.m : f.n;
  const Grid g(p, f.n, f.n, steps);

  DriverConfig cfg;
  cfg.precond = precond_from_name(f.precond);
  cfg.tol = f.tol;
  cfg.restart = f.restart;
  cfg.max_outer = f.max_outer;
  cfg.omega = f.omega;
  cfg.cycles = f.cycles;
  cfg.coarse = coarse_from_name(f.coarse);
  cfg.coarse_sweeps = f.coarse_sweeps;
  const SolveReport rep = time_march(p, g, cfg);

  const auto csv = report::results_file(f.out_dir, "solve");
  report::CsvWriter w(csv);
  w.row({"example", "n", "precond", "avg_iters", "error_inf", "wall_time"});
  const std::string label = f.example > 0 ? std::to_string(f.example) : p.name;
  w.row({label, report::CsvWriter::num(f.n), f.precond,
         report::CsvWriter::fixed3(rep.avg_iterations),
         rep.has_error ? report::CsvWriter::sci(rep.error_inf) : "nan",
         report::CsvWriter::fixed3(rep.wall_seconds)});

  report::RunManifest man;
  man.command = "solve";
  man.parameters = {{"example", label},
                    {"n", std::to_string(f.n)},
                    {"m", std::to_string(steps)},
                    {"precond", f.precond},
                    {"tol", dstr(f.tol)},
                    {"restart", std::to_string(f.restart)},
                    {"omega", dstr(f.omega)},
                    {"vcycles-per-apply", std::to_string(f.cycles)},
                    {"alpha", dstr(p.alpha)},
                    {"beta", dstr(p.beta)},
                    {"domain", dstr(p.ax) + " " + dstr(p.bx) + " " +
                                   dstr(p.ay) + " " + dstr(p.by)}};
  report::write_manifest(report::manifest_path(csv), man);

  std::printf("%s n=%zu precond=%s avg_iters=%.3f error_inf=%s wall=%.3fs%s\n",
              label.c_str(), f.n, f.precond.c_str(), rep.avg_iterations,
              rep.has_error ? report::CsvWriter::sci(rep.error_inf).c_str()
                            : "n/a",
              rep.wall_seconds, rep.all_converged ? "" : "  [NOT CONVERGED]");
  std::printf("wrote %s\n", csv.string().c_str());
  return rep.all_converged ? 0 : 1;
}

struct TableFlags {
  int table = 1;
  std::vector<std::size_t> sizes{16, 32, 64, 128};
  double tol = 1e-7;
  std::size_t restart = 20;
  // unpreconditioned runs need hundreds of iterations; restarting every 20
  // inflates their counts, so the bare-GMRES column gets its own length
  std::size_t restart_none = 512;
  double omega = 0.9;
  std::size_t cycles = 1;
  std::string out_dir = "results";
};

int cmd_table(const TableFlags& f) {
  const std::vector<std::string> columns =
      f.table == 1
          ? std::vector<std::string>{"none", "p2", "p2-exact", "mgm", "mgm-galerkin"}
          : std::vector<std::string>{"none", "p2", "mgm"};
  const double alpha = default_alpha(f.table);
  const double beta = default_beta(f.table);
  const FdeProblem p = make_example(f.table, alpha, beta);

  std::vector<std::size_t> sizes = f.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  const auto csv = report::results_file(f.out_dir, "table");
  report::CsvWriter w(csv);
  w.comment("average GMRES iterations per preconditioner, final max-norm error");
  w.comment("P_JLZ column omitted: literature baseline, not reimplemented here");
  std::vector<std::string> header{"n"};
  for (const std::string& c : columns) header.push_back(c);
  header.push_back("error_inf");
  w.row(header);

  bool all_ok = true;
  for (std::size_t n : sizes) {
    const Grid g(p, n, n, n);
    std::vector<std::string> cells{report::CsvWriter::num(n)};
    double err = std::numeric_limits<double>::quiet_NaN();
    for (const std::string& c : columns) {
      DriverConfig cfg;
      cfg.precond = precond_from_name(c);
      cfg.tol = f.tol;
      cfg.restart = cfg.precond == PrecondKind::none ? f.restart_none : f.restart;
      cfg.omega = f.omega;
      cfg.cycles = f.cycles;
      const SolveReport rep = time_march(p, g, cfg);
      all_ok = all_ok && rep.all_converged;
      cells.push_back(report::CsvWriter::fixed3(rep.avg_iterations));
      if (rep.has_error) err = rep.error_inf;
      std::printf("table %d n=%zu precond=%s avg_iters=%.3f wall=%.3fs%s\n",
                  f.table, n, c.c_str(), rep.avg_iterations, rep.wall_seconds,
                  rep.all_converged ? "" : "  [NOT CONVERGED]");
    }
    cells.push_back(report::CsvWriter::sci(err));
    w.row(cells);
  }

  report::RunManifest man;
  man.command = "table";
  std::string size_list;
  for (std::size_t n : sizes)
    size_list += (size_list.empty() ? "" : " ") + std::to_string(n);
  man.parameters = {{"table", std::to_string(f.table)},
                    {"sizes", size_list},
                    {"tol", dstr(f.tol)},
                    {"restart", std::to_string(f.restart)},
                    {"omega", dstr(f.omega)},
                    {"vcycles-per-apply", std::to_string(f.cycles)}};
  report::write_manifest(report::manifest_path(csv), man);
  std::printf("wrote %s\n", csv.string().c_str());
  return all_ok ? 0 : 1;
}

struct VerifyFlags {
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::string out_dir = "results";
};

int cmd_verify(const VerifyFlags& f) {
  const std::vector<verify::SuiteResult> suites = verify::run_suites(f.suite, f.seed);

  const auto csv = report::results_file(f.out_dir, "verify");
  report::CsvWriter w(csv);
  w.row({"suite", "check", "pass", "detail"});
  std::string first_failure;
  for (const verify::SuiteResult& s : suites)
    for (const verify::Check& c : s.checks) {
      w.row({s.suite, c.name, c.pass ? "1" : "0", no_commas(c.detail)});
      std::printf("[%s] %s/%s: %s\n", c.pass ? "PASS" : "FAIL", s.suite.c_str(),
                  c.name.c_str(), c.detail.c_str());
      if (!c.pass && first_failure.empty())
        first_failure = s.suite + "/" + c.name;
    }

  report::RunManifest man;
  man.command = "verify";
  man.seed = f.seed;
  man.parameters = {{"suite", f.suite}, {"seed", std::to_string(f.seed)}};
  report::write_manifest(report::manifest_path(csv), man);
  std::printf("wrote %s\n", csv.string().c_str());

  if (!first_failure.empty()) {
    std::cerr << "verification failed: " << first_failure << "\n";
    return 1;
  }
  return 0;
}

struct SpectraFlags {
  std::string what = "f";
  double gamma = 1.5;
  double alpha = 1.8;
  double beta = 1.6;
  double d = 1.0;
  double e = 1.0;
  double s_over_r = 1.0;
  double inv_r = 0.0;
  double dp = 1.0, dm = 1.0, ep = 1.0, em = 1.0; // constants for h
  double x1 = 0.5, x2 = 0.5;
  std::size_t points = 256;
  std::size_t n = 16;
  std::string out_dir = "results";
};

int cmd_spectra(const SpectraFlags& f) {
  const auto csv = report::results_file(f.out_dir, "spectra");
  report::CsvWriter w(csv);
  const auto angle = [&](std::size_t i) {
    return -kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(f.points);
  };

  if (f.what == "f") {
    w.row({"theta", "re", "im"});
    for (std::size_t i = 0; i <= f.points; ++i) {
      const std::complex<double> v = eval_f_gamma(f.gamma, angle(i));
      w.row({report::CsvWriter::sci(angle(i)), report::CsvWriter::sci(v.real()),
             report::CsvWriter::sci(v.imag())});
    }
  } else if (f.what == "q") {
    w.row({"theta", "q"});
    for (std::size_t i = 0; i <= f.points; ++i)
      w.row({report::CsvWriter::sci(angle(i)),
             report::CsvWriter::sci(eval_q_gamma(f.gamma, angle(i)))});
  } else if (f.what == "F") {
    w.row({"theta1", "theta2", "F"});
    for (std::size_t i = 0; i <= f.points; ++i)
      for (std::size_t j = 0; j <= f.points; ++j)
        w.row({report::CsvWriter::sci(angle(i)), report::CsvWriter::sci(angle(j)),
               report::CsvWriter::sci(eval_F(f.alpha, f.beta, f.d, f.e,
                                             f.s_over_r, angle(i), angle(j)))});
  } else if (f.what == "h") {
    CoeffFns fns;
    fns.d_plus = [v = f.dp](double, double) { return v; };
    fns.d_minus = [v = f.dm](double, double) { return v; };
    fns.e_plus = [v = f.ep](double, double) { return v; };
    fns.e_minus = [v = f.em](double, double) { return v; };
    w.row({"theta1", "theta2", "re", "im"});
    for (std::size_t i = 0; i <= f.points; ++i)
      for (std::size_t j = 0; j <= f.points; ++j) {
        const std::complex<double> v = eval_h(f.alpha, f.beta, fns, f.s_over_r,
                                              {f.x1, f.x2}, angle(i), angle(j));
        w.row({report::CsvWriter::sci(angle(i)), report::CsvWriter::sci(angle(j)),
               report::CsvWriter::sci(v.real()), report::CsvWriter::sci(v.imag())});
      }
  } else { // eigs
    const ToeplitzBlock ta = ToeplitzBlock::fractional(f.alpha, f.n);
    const ToeplitzBlock tb = ToeplitzBlock::fractional(f.beta, f.n);
    const auto sym1d = [&](const ToeplitzBlock& t) {
      Eigen::MatrixXd m(static_cast<Eigen::Index>(f.n), static_cast<Eigen::Index>(f.n));
      for (std::size_t i = 0; i < f.n; ++i)
        for (std::size_t j = 0; j < f.n; ++j)
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              t.entry(i, j) + t.entry(j, i);
      return m;
    };
    const std::size_t sz = f.n * f.n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sz),
                                              static_cast<Eigen::Index>(sz));
    const Eigen::MatrixXd ma = sym1d(ta);
    const Eigen::MatrixXd mb = sym1d(tb);
    for (std::size_t j = 0; j < f.n; ++j)
      for (std::size_t i = 0; i < f.n; ++i) {
        const auto p = static_cast<Eigen::Index>(j * f.n + i);
        for (std::size_t ii = 0; ii < f.n; ++ii)
          m(p, static_cast<Eigen::Index>(j * f.n + ii)) +=
              f.d * ma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(ii));
        for (std::size_t jj = 0; jj < f.n; ++jj)
          m(p, static_cast<Eigen::Index>(jj * f.n + i)) +=
              f.e * f.s_over_r *
              mb(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(jj));
      }
    m.diagonal().array() += f.inv_r;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
    w.row({"index", "lambda"});
    for (std::size_t i = 0; i < sz; ++i)
      w.row({report::CsvWriter::num(i),
             report::CsvWriter::sci(es.eigenvalues()(static_cast<Eigen::Index>(i)))});
  }

  report::RunManifest man;
  man.command = "spectra";
  man.parameters = {{"what", f.what},
                    {"gamma", dstr(f.gamma)},
                    {"alpha", dstr(f.alpha)},
                    {"beta", dstr(f.beta)},
                    {"d", dstr(f.d)},
                    {"e", dstr(f.e)},
                    {"s-over-r", dstr(f.s_over_r)},
                    {"inv-r", dstr(f.inv_r)},
                    {"points", std::to_string(f.points)},
                    {"n", std::to_string(f.n)}};
  report::write_manifest(report::manifest_path(csv), man);
  std::printf("wrote %s\n", csv.string().c_str());
  return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"fractional diffusion solver and spectral verification toolkit"};
  app.require_subcommand(1);

  SolveFlags sf;
  CLI::App* solve = app.add_subcommand(
      "solve", "march one problem to t=T and report iterations and error");
  solve->add_option("--example", sf.example, "built-in problem preset")
      ->check(CLI::IsMember({1, 2, 3}));
  solve->add_option("--coeff-preset", sf.preset,
                    "coefficient family for custom problems")
      ->check(CLI::IsMember({1, 2, 3}));
  solve->add_option("--n", sf.n, "interior nodes per direction")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
  solve->add_option("--m", sf.m, "time steps (default n)");
  solve->add_option("--precond", sf.precond, "preconditioner")
      ->check(CLI::IsMember({"none", "p2", "p2-exact", "mgm", "mgm-galerkin"}));
  solve->add_option("--tol", sf.tol, "relative residual tolerance")
      ->check(CLI::PositiveNumber);
  solve->add_option("--restart", sf.restart, "GMRES restart length")
      ->check(CLI::Range(std::size_t{1}, std::size_t{10000}));
  solve->add_option("--max-outer", sf.max_outer, "maximum restart cycles")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  solve->add_option("--omega", sf.omega, "Jacobi damping in the V-cycles")
      ->check(CLI::PositiveNumber);
  solve->add_option("--vcycles-per-apply", sf.cycles,
                    "V-cycle steps per preconditioner application")
      ->check(CLI::Range(std::size_t{1}, std::size_t{16}));
  solve->add_option("--coarse", sf.coarse,
                    "coarsest-grid treatment in the step-operator V-cycles")
      ->check(CLI::IsMember({"lu", "sweeps", "none"}));
  solve->add_option("--coarse-sweeps", sf.coarse_sweeps,
                    "Jacobi sweeps on the coarsest grid when --coarse=sweeps")
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  solve->add_option("--alpha", sf.alpha, "fractional order in x");
  solve->add_option("--beta", sf.beta, "fractional order in y");
  solve->add_option("--domain", sf.domain, "rectangle: ax bx ay by")
      ->expected(4);
  solve->add_option("--out-dir", sf.out_dir, "report directory");

  TableFlags tf;
  CLI::App* table =
      app.add_subcommand("table", "reproduce one iteration/error table");
  table->add_option("--table", tf.table, "table number")
      ->required()
      ->check(CLI::IsMember({1, 2, 3}));
  table->add_option("--sizes", tf.sizes, "grid sizes")
      ->check(CLI::IsMember({16, 32, 64, 128}));
  table->add_option("--tol", tf.tol, "relative residual tolerance")
      ->check(CLI::PositiveNumber);
  table->add_option("--restart", tf.restart, "GMRES restart length");
  table->add_option("--restart-none", tf.restart_none,
                    "restart length for the unpreconditioned column");
  table->add_option("--omega", tf.omega, "Jacobi damping in the V-cycles")
      ->check(CLI::PositiveNumber);
  table->add_option("--vcycles-per-apply", tf.cycles,
                    "V-cycle steps per preconditioner application")
      ->check(CLI::Range(std::size_t{1}, std::size_t{16}));
  table->add_option("--out-dir", tf.out_dir, "report directory");

  VerifyFlags vf;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the spectral and multigrid check suites");
  verify_cmd->add_option("--suite", vf.suite, "check suite")
      ->check(CLI::IsMember({"weights", "symbols", "distribution", "tgm", "all"}));
  verify_cmd->add_option("--seed", vf.seed, "seed for randomized checks");
  verify_cmd->add_option("--out-dir", vf.out_dir, "report directory");

  SpectraFlags pf;
  CLI::App* spectra =
      app.add_subcommand("spectra", "export symbol samples or small-size spectra");
  spectra->add_option("--what", pf.what, "quantity to sample")
      ->required()
      ->check(CLI::IsMember({"f", "q", "F", "h", "eigs"}));
  spectra->add_option("--gamma", pf.gamma, "order for f and q");
  spectra->add_option("--alpha", pf.alpha, "order in x for F, h, eigs");
  spectra->add_option("--beta", pf.beta, "order in y for F, h, eigs");
  spectra->add_option("--d", pf.d, "x diffusion constant");
  spectra->add_option("--e", pf.e, "y diffusion constant");
  spectra->add_option("--s-over-r", pf.s_over_r, "grid anisotropy constant");
  spectra->add_option("--inv-r", pf.inv_r, "identity shift for eigs");
  spectra->add_option("--d-plus", pf.dp, "constant d+ for h");
  spectra->add_option("--d-minus", pf.dm, "constant d- for h");
  spectra->add_option("--e-plus", pf.ep, "constant e+ for h");
  spectra->add_option("--e-minus", pf.em, "constant e- for h");
  spectra->add_option("--x1", pf.x1, "spatial point for h");
  spectra->add_option("--x2", pf.x2, "spatial point for h");
  spectra->add_option("--points", pf.points, "samples per axis")
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  spectra->add_option("--n", pf.n, "matrix size per direction for eigs")
      ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  spectra->add_option("--out-dir", pf.out_dir, "report directory");

  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.push_back("fde");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<char*> argv;
  argv.reserve(full.size());
  for (std::string& s : full) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(sf);
    if (table->parsed()) return cmd_table(tf);
    if (verify_cmd->parsed()) return cmd_verify(vf);
    if (spectra->parsed()) return cmd_spectra(pf);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

} // namespace fde::cli
