#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "qsvt/baseline.hpp"
#include "qsvt/hs.hpp"
#include "qsvt/qsp.hpp"
#include "qsvt/simulator.hpp"
#include "qsvt/vlasov.hpp"

using json = nlohmann::json;
using namespace qsvt;
using cd = std::complex<double>;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitVerify = 2;

// '.' decimal point, scientific notation below 1e-3, full round-trip digits
std::string fmt(double x) {
  char buf[40];
  if (x != 0.0 && std::abs(x) < 1e-3)
    std::snprintf(buf, sizeof buf, "%.17e", x);
  else
    std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v(n);
  double la = std::log10(a), lb = std::log10(b);
  for (int i = 0; i < n; ++i)
    v[i] = std::min(b, std::pow(10.0, la + (lb - la) * i / (n - 1)));
  return v;
}

// the two published sweep grids: (0.1<=t<=10, 1e-5<=eps<=0.9) and
// (1<=t<=100, 1e-10<=eps<=0.9), 20x20 with linear t and log eps
void sweep_grid(int grid, std::vector<double>& ts, std::vector<double>& es) {
  if (grid == 1) {
    ts = linspace(0.1, 10.0, 20);
    es = logspace(1e-5, 0.9, 20);
  } else if (grid == 2) {
    ts = linspace(1.0, 100.0, 20);
    es = logspace(1e-10, 0.9, 20);
  } else {
    throw std::invalid_argument("grid must be 1 or 2");
  }
}

struct Sink {
  std::ofstream file;
  std::ostream* os;
  explicit Sink(const std::string& path) {
    if (path == "-") {
      os = &std::cout;
    } else {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output path " + path);
      os = &file;
    }
  }
};

json load_config(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in)
        throw std::runtime_error(std::string("cannot read config file ") +
                                 argv[i + 1]);
      return json::parse(in);
    }
  return json::object();
}

// precedence: command-line flag > config file entry > built-in default;
// config sections are keyed by subcommand name, flat keys apply everywhere
template <typename T>
void from_config(const json& cfg, const std::string& sub,
                 const std::string& key, T& value) {
  if (cfg.contains(sub) && cfg[sub].contains(key))
    value = cfg[sub][key].get<T>();
  else if (cfg.contains(key))
    value = cfg[key].get<T>();
}

json fit_block(const std::vector<QuerySample>& samples, ScalingBasis basis,
               const std::vector<std::string>& names) {
  Eigen::VectorXd c = fit_query_scaling(samples, basis);
  double ssr = 0.0;
  for (const auto& s : samples) {
    double L = std::log(1.0 / s.eps);
    double pred = 0.0;
    switch (basis) {
      case ScalingBasis::AffineTL:
        pred = c[0] + c[1] * s.t + c[2] * L;
        break;
      case ScalingBasis::AffineL:
        pred = c[0] + c[1] * L;
        break;
      case ScalingBasis::FullTL:
        pred = c[0] + c[1] * s.t + c[2] * L + c[3] * s.t * L + c[4] * L * L;
        break;
    }
    ssr += (s.q - pred) * (s.q - pred);
  }
  json out;
  out["basis"] = names;
  out["coefficients"] = std::vector<double>(c.data(), c.data() + c.size());
  out["residual_rms"] = std::sqrt(ssr / samples.size());
  return out;
}

json fit_summary(const DampedCosineFit& fit, double t0) {
  return json{{"A", fit.A},     {"gamma", fit.gamma}, {"omega", fit.omega},
              {"rho", fit.rho}, {"E0", fit.E0},       {"residual", fit.residual},
              {"t0", t0}};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,re_E,im_E,eta,D_M\n";
  for (size_t i = 0; i < tr.times.size(); ++i)
    os << fmt(tr.times[i]) << ',' << fmt(tr.E[i][0].real()) << ','
       << fmt(tr.E[i][0].imag()) << ',' << fmt(tr.eta) << ','
       << fmt(tr.d_m[i]) << '\n';
}

std::vector<double> im_series(const Trajectory& tr) {
  std::vector<double> out;
  for (const auto& e : tr.E) out.push_back(e[0].imag());
  return out;
}

int run_queries(const std::string& method, int grid, std::vector<double> ts,
                std::vector<double> es, const std::string& output) {
  if (grid != 0) sweep_grid(grid, ts, es);
  if (ts.empty() || es.empty())
    throw std::invalid_argument("queries: provide --t and --eps, or --grid");
  std::vector<Method> methods;
  if (method == "oaa" || method == "both") methods.push_back(Method::OAA);
  if (method == "fpaa" || method == "both") methods.push_back(Method::FPAA);
  if (methods.empty())
    throw std::invalid_argument("method must be oaa, fpaa, or both");

  Sink sink(output);
  *sink.os << "method,t,eps,Q,R,D,eps_tri,eps_sign\n";
  for (Method m : methods)
    for (double t : ts)
      for (double e : es) {
        QueryCount q = query_count(m, t, e);
        *sink.os << (m == Method::OAA ? "oaa" : "fpaa") << ',' << fmt(t) << ','
                 << fmt(e) << ',' << q.Q << ',' << q.R << ',' << q.D << ','
                 << fmt(q.eps_tri) << ',' << fmt(q.eps_sign) << '\n';
      }
  return 0;
}

int run_fit_queries(int grid, const std::string& output) {
  std::vector<double> ts, es;
  sweep_grid(grid, ts, es);
  std::vector<QuerySample> oaa, fpaa, rs, ds;
  for (double t : ts)
    for (double e : es) {
      QueryCount qo = query_count(Method::OAA, t, e);
      QueryCount qf = query_count(Method::FPAA, t, e);
      oaa.push_back({t, e, static_cast<double>(qo.Q)});
      fpaa.push_back({t, e, static_cast<double>(qf.Q)});
      rs.push_back({t, e, static_cast<double>(qf.R)});
      ds.push_back({t, e, static_cast<double>(qf.D)});
    }
  json out;
  out["grid"] = grid;
  out["t_range"] = {ts.front(), ts.back()};
  out["eps_range"] = {es.front(), es.back()};
  out["oaa"] = fit_block(oaa, ScalingBasis::AffineTL, {"1", "t", "log(1/eps)"});
  out["fpaa"] = fit_block(fpaa, ScalingBasis::FullTL,
                          {"1", "t", "log(1/eps)", "t log(1/eps)",
                           "log^2(1/eps)"});
  out["R"] = fit_block(rs, ScalingBasis::AffineTL, {"1", "t", "log(1/eps)"});
  out["D"] = fit_block(ds, ScalingBasis::AffineL, {"1", "log(1/eps)"});
  Sink sink(output);
  *sink.os << out.dump(2) << '\n';
  return 0;
}

int run_landau(double k, int nv, double vmax, double eps, int steps, double t0,
               const std::string& output, const std::string& summary) {
  VelocityGrid grid = build_grid(1, {nv, 1, 1}, {vmax, 0, 0});
  VlasovHamiltonian h = build_hamiltonian(1, grid, {k, 0, 0});
  PlasmaState s0 = initial_state(grid, {k, 0, 0});
  Trajectory tr = evolve_hs(h, s0, steps, eps);
  {
    Sink sink(output);
    write_trajectory_csv(*sink.os, tr);
  }
  json out;
  out["source"] = "hs";
  out["alpha"] = h.alpha;
  out["dt"] = 1.0 / h.alpha;
  out["eta"] = s0.eta;
  out["fit"] = fit_summary(fit_damped_cosine(tr.times, im_series(tr), t0), t0);
  Sink sink(summary);
  *sink.os << out.dump(2) << '\n';
  return 0;
}

int run_euler(double k, int nv, double vmax, double dt, double t_max,
              int stride, double t0, const std::string& output,
              const std::string& summary) {
  VelocityGrid grid = build_grid(1, {nv, 1, 1}, {vmax, 0, 0});
  Trajectory tr = euler_run(grid, {k, 0, 0}, dt, t_max, stride);
  {
    Sink sink(output);
    write_trajectory_csv(*sink.os, tr);
  }
  json out;
  out["source"] = "euler";
  out["dt"] = dt;
  out["eta"] = tr.eta;
  out["fit"] = fit_summary(fit_damped_cosine(tr.times, im_series(tr), t0), t0);
  Sink sink(summary);
  *sink.os << out.dump(2) << '\n';
  return 0;
}

int run_compare(double k, int nv, double vmax, double eps, int steps,
                double euler_dt, std::vector<double> times, double t0,
                double omega_ref, double gamma_ref, const std::string& output) {
  VelocityGrid grid = build_grid(1, {nv, 1, 1}, {vmax, 0, 0});
  VlasovHamiltonian h = build_hamiltonian(1, grid, {k, 0, 0});
  PlasmaState s0 = initial_state(grid, {k, 0, 0});
  Trajectory hs = evolve_hs(h, s0, steps, eps);

  json out;
  out["alpha"] = h.alpha;
  out["euler_dt"] = euler_dt;
  json deltas = json::array();
  for (double t : times) {
    long l = std::lround(t * h.alpha);
    if (l < 1 || l >= static_cast<long>(hs.times.size()))
      throw std::invalid_argument("compare: requested time outside the run");
    double t_hs = hs.times[l];
    Trajectory eu =
        euler_run(grid, {k, 0, 0}, euler_dt,
                  std::lround(t_hs / euler_dt) * euler_dt, 1 << 30);
    deltas.push_back(
        {{"t_requested", t},
         {"t", t_hs},
         {"delta", distribution_error(hs.f1[l], eu.f1.back(), grid.dv_cell)}});
  }
  out["distribution_errors"] = deltas;

  DampedCosineFit fit = fit_damped_cosine(hs.times, im_series(hs), t0);
  out["fit"] = fit_summary(fit, t0);
  out["omega_ref"] = omega_ref;
  out["gamma_ref"] = gamma_ref;
  out["omega_rel_err"] = std::abs(fit.omega - omega_ref) / omega_ref;
  out["gamma_rel_err"] = std::abs(fit.gamma - gamma_ref) / gamma_ref;
  Sink sink(output);
  *sink.os << out.dump(2) << '\n';
  return 0;
}

Eigen::MatrixXcd random_hermitian(int dim, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cd(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

int run_verify(unsigned seed, int trials) {
  std::mt19937 rng(seed);
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "pass: " : "fail: ") << name << '\n';
    all_ok = all_ok && ok;
  };

  {
    // normalization bounds 4 Lambda / 5 <= alpha <= Lambda and ||H|| <= alpha
    std::uniform_int_distribution<int> ud(1, 3), ue(1, 3);
    std::uniform_real_distribution<double> uv(1.0, 6.0), uk(-2.0, 2.0);
    bool ok = true;
    for (int trial = 0; trial < trials; ++trial) {
      int dims = ud(rng);
      std::array<int, 3> n{1, 1, 1};
      std::array<double, 3> vmax{0, 0, 0}, k{0, 0, 0};
      for (int a = 0; a < dims; ++a) {
        n[a] = 1 << ue(rng);
        vmax[a] = uv(rng);
        k[a] = uk(rng);
      }
      VelocityGrid g = build_grid(dims, n, vmax);
      VlasovHamiltonian h = build_hamiltonian(dims, g, k);
      double norm = h.H.jacobiSvd().singularValues()[0];
      ok = ok && h.alpha >= 0.8 * h.Lambda - 1e-12 &&
           h.alpha <= h.Lambda + 1e-12 && norm <= h.alpha * (1.0 + 1e-9);
    }
    report("normalization bounds over random grids", ok);
  }

  {
    // shifted one-qubit extension encodes (H/alpha + I)/2
    bool ok = true;
    for (int trial = 0; trial < trials; ++trial) {
      Eigen::MatrixXcd h = random_hermitian(4, rng);
      double alpha = 1.1 * h.jacobiSvd().singularValues()[0];
      BlockEncodedOp u;
      u.unitary = direct_block_encoding(h, alpha);
      u.alpha = alpha;
      u.n_anc = 1;
      auto [up, teff] = shift_rescale_encoding(u, 0.5);
      Eigen::MatrixXcd expect =
          (h / alpha + Eigen::MatrixXcd::Identity(4, 4)) / 2.0;
      ok = ok && (project_block(up.unitary, up.n_anc) - expect)
                         .cwiseAbs()
                         .maxCoeff() < 1e-12;
    }
    report("shifted encoding block identity", ok);
  }

  {
    // degree-3 amplification value: T_3(1/2) = -1
    PhaseSequence t3;
    t3.convention = Convention::Wx;
    t3.degree = 3;
    t3.phases = Eigen::VectorXd::Zero(4);
    t3.residual = 0.0;
    report("cubic amplification value at 1/2",
           std::abs(eval_qsp(t3, 0.5) - cd(-1.0, 0.0)) < 1e-12);
  }

  {
    // query dominance on both sweep grids
    bool ok = true;
    for (int grid = 1; grid <= 2; ++grid) {
      std::vector<double> ts, es;
      sweep_grid(grid, ts, es);
      for (double t : ts)
        for (double e : es)
          ok = ok &&
               query_count(Method::OAA, t, e).Q <= query_count(Method::FPAA, t, e).Q;
    }
    report("query dominance over both sweep grids", ok);
  }

  {
    // convention change and negation identities on random phase sequences
    std::uniform_real_distribution<double> up(-M_PI, M_PI);
    std::uniform_int_distribution<int> udeg(1, 12);
    bool ok = true;
    for (int trial = 0; trial < trials; ++trial) {
      PhaseSequence wx;
      wx.convention = Convention::Wx;
      wx.degree = udeg(rng);
      wx.phases = Eigen::VectorXd(wx.degree + 1);
      for (int i = 0; i <= wx.degree; ++i) wx.phases[i] = up(rng);
      wx.residual = 0.0;
      PhaseSequence refl = wx_to_reflection(wx);
      for (int i = 0; i <= 100; ++i) {
        double x = -1.0 + 2.0 * i / 100.0;
        cd a = eval_qsp(wx, x);
        ok = ok && std::abs(a - eval_qsp(refl, x)) < 1e-12 &&
             std::abs(std::conj(a) - eval_qsp(negate(wx), x)) < 1e-12;
      }
    }
    report("phase convention and negation identities", ok);
  }

  {
    // eta conservation along the exact evolution
    VelocityGrid g = build_grid(1, {32, 1, 1}, {4.5, 0, 0});
    VlasovHamiltonian h = build_hamiltonian(1, g, {0.4, 0, 0});
    PlasmaState s0 = initial_state(g, {0.4, 0, 0});
    Trajectory tr = exact_run(h, s0, {0.0, 3.0, 11.0});
    bool ok = true;
    for (size_t i = 0; i < tr.times.size(); ++i) {
      double n2 = std::norm(tr.E[i][0]);
      for (long j = 0; j < g.total; ++j)
        n2 += std::norm(cd(0.0, 1.0) * std::sqrt(g.dv_cell / g.maxwell[j]) *
                        tr.f1[i][j]);
      ok = ok && std::abs(std::sqrt(n2) - s0.eta) < 1e-12;
    }
    report("state norm conservation", ok);
  }

  return all_ok ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QSVT Hamiltonian simulation of the linearized Vlasov-Poisson "
               "system: query sweeps, Landau damping runs, and baselines"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override)")
      ->expected(1);

  json cfg;
  try {
    cfg = load_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  // queries
  std::string q_method = "both", q_output = "-";
  int q_grid = 0;
  std::vector<double> q_t, q_eps;
  from_config(cfg, "queries", "method", q_method);
  from_config(cfg, "queries", "grid", q_grid);
  from_config(cfg, "queries", "t", q_t);
  from_config(cfg, "queries", "eps", q_eps);
  from_config(cfg, "queries", "output", q_output);
  auto* queries = app.add_subcommand(
      "queries", "Query counts over (t, eps) points or a sweep grid (CSV)");
  queries->add_option("--method", q_method, "oaa, fpaa, or both");
  queries->add_option("--grid", q_grid, "preset sweep grid (1 or 2)");
  queries->add_option("--t", q_t, "evolution times");
  queries->add_option("--eps", q_eps, "error tolerances");
  queries->add_option("-o,--output", q_output, "CSV path ('-' for stdout)");

  // fit-queries
  int fq_grid = 1;
  std::string fq_output = "-";
  from_config(cfg, "fit-queries", "grid", fq_grid);
  from_config(cfg, "fit-queries", "output", fq_output);
  auto* fitq = app.add_subcommand(
      "fit-queries", "Fit the query-count scaling models on a sweep grid (JSON)");
  fitq->add_option("--grid", fq_grid, "sweep grid (1 or 2)");
  fitq->add_option("-o,--output", fq_output, "JSON path ('-' for stdout)");

  // landau
  double l_k = 0.4, l_vmax = 4.5, l_eps = 1e-3, l_t0 = 5.23;
  int l_nv = 32, l_steps = 105;
  std::string l_output = "-", l_summary = "-";
  from_config(cfg, "landau", "k", l_k);
  from_config(cfg, "landau", "nv", l_nv);
  from_config(cfg, "landau", "vmax", l_vmax);
  from_config(cfg, "landau", "eps", l_eps);
  from_config(cfg, "landau", "steps", l_steps);
  from_config(cfg, "landau", "t0", l_t0);
  from_config(cfg, "landau", "output", l_output);
  from_config(cfg, "landau", "summary", l_summary);
  auto* landau = app.add_subcommand(
      "landau", "Amplified-exponential evolution of the 1D system (CSV + fit)");
  landau->add_option("--k", l_k, "wavenumber");
  landau->add_option("--nv", l_nv, "velocity points (power of two)");
  landau->add_option("--vmax", l_vmax, "velocity extent");
  landau->add_option("--eps", l_eps, "per-step error tolerance");
  landau->add_option("--steps", l_steps, "number of dt = 1/alpha steps");
  landau->add_option("--t0", l_t0, "fit window start");
  landau->add_option("-o,--output", l_output, "CSV path ('-' for stdout)");
  landau->add_option("--summary", l_summary, "fit summary JSON path");

  // euler
  double e_k = 0.4, e_vmax = 4.5, e_dt = 1e-4, e_tmax = 25.0, e_t0 = 5.23;
  int e_nv = 32, e_stride = 100;
  std::string e_output = "-", e_summary = "-";
  from_config(cfg, "euler", "k", e_k);
  from_config(cfg, "euler", "nv", e_nv);
  from_config(cfg, "euler", "vmax", e_vmax);
  from_config(cfg, "euler", "dt", e_dt);
  from_config(cfg, "euler", "tmax", e_tmax);
  from_config(cfg, "euler", "stride", e_stride);
  from_config(cfg, "euler", "t0", e_t0);
  from_config(cfg, "euler", "output", e_output);
  from_config(cfg, "euler", "summary", e_summary);
  auto* euler = app.add_subcommand(
      "euler", "Forward-Euler integration of the 1D system (CSV + fit)");
  euler->add_option("--k", e_k, "wavenumber");
  euler->add_option("--nv", e_nv, "velocity points (power of two)");
  euler->add_option("--vmax", e_vmax, "velocity extent");
  euler->add_option("--dt", e_dt, "time step");
  euler->add_option("--tmax", e_tmax, "final time");
  euler->add_option("--stride", e_stride, "record every N steps");
  euler->add_option("--t0", e_t0, "fit window start");
  euler->add_option("-o,--output", e_output, "CSV path ('-' for stdout)");
  euler->add_option("--summary", e_summary, "fit summary JSON path");

  // compare
  double c_k = 0.4, c_vmax = 4.5, c_eps = 1e-3, c_dt = 1e-4, c_t0 = 5.23;
  double c_omega = 1.28506, c_gamma = 0.06613;
  int c_nv = 32, c_steps = 105;
  std::vector<double> c_times{8.32, 16.65, 24.97};
  std::string c_output = "-";
  from_config(cfg, "compare", "k", c_k);
  from_config(cfg, "compare", "nv", c_nv);
  from_config(cfg, "compare", "vmax", c_vmax);
  from_config(cfg, "compare", "eps", c_eps);
  from_config(cfg, "compare", "steps", c_steps);
  from_config(cfg, "compare", "euler-dt", c_dt);
  from_config(cfg, "compare", "times", c_times);
  from_config(cfg, "compare", "t0", c_t0);
  from_config(cfg, "compare", "omega-ref", c_omega);
  from_config(cfg, "compare", "gamma-ref", c_gamma);
  from_config(cfg, "compare", "output", c_output);
  auto* compare = app.add_subcommand(
      "compare",
      "Distribution errors and frequency agreement vs the Euler baseline (JSON)");
  compare->add_option("--k", c_k, "wavenumber");
  compare->add_option("--nv", c_nv, "velocity points (power of two)");
  compare->add_option("--vmax", c_vmax, "velocity extent");
  compare->add_option("--eps", c_eps, "per-step error tolerance");
  compare->add_option("--steps", c_steps, "number of dt = 1/alpha steps");
  compare->add_option("--euler-dt", c_dt, "baseline time step");
  compare->add_option("--times", c_times, "comparison times");
  compare->add_option("--t0", c_t0, "fit window start");
  compare->add_option("--omega-ref", c_omega, "reference frequency");
  compare->add_option("--gamma-ref", c_gamma, "reference damping rate");
  compare->add_option("-o,--output", c_output, "JSON path ('-' for stdout)");

  // verify
  unsigned v_seed = 1;
  int v_trials = 25;
  from_config(cfg, "verify", "seed", v_seed);
  from_config(cfg, "verify", "trials", v_trials);
  auto* verify = app.add_subcommand(
      "verify", "Run the structural invariant suites (pass/fail per property)");
  verify->add_option("--seed", v_seed, "random seed");
  verify->add_option("--trials", v_trials, "trials per randomized property");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (queries->parsed())
      return run_queries(q_method, q_grid, q_t, q_eps, q_output);
    if (fitq->parsed()) return run_fit_queries(fq_grid, fq_output);
    if (landau->parsed())
      return run_landau(l_k, l_nv, l_vmax, l_eps, l_steps, l_t0, l_output,
                        l_summary);
    if (euler->parsed())
      return run_euler(e_k, e_nv, e_vmax, e_dt, e_tmax, e_stride, e_t0,
                       e_output, e_summary);
    if (compare->parsed())
      return run_compare(c_k, c_nv, c_vmax, c_eps, c_steps, c_dt, c_times,
                         c_t0, c_omega, c_gamma, c_output);
    if (verify->parsed()) return run_verify(v_seed, v_trials);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
