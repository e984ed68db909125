#ifndef QRABI_CLI_HPP
#define QRABI_CLI_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "errors.hpp"
#include "photon_stats.hpp"
#include "rabi_dynamics.hpp"
#include "squeeze_optimizer.hpp"
#include "verify.hpp"

/// `qrabi` command-line front end. All data goes out as CSV: a '#' provenance
/// line, a header row, then rows with 17 significant digits.
namespace qrabi::cli {

enum ExitCode : int { ok = 0, usage = 1, failure = 2 };

/// Invalid flag values; reported as a usage error.
class usage_error : public precondition_error {
public:
  using precondition_error::precondition_error;
};

struct RunConfig {
  std::string subcommand;
  std::string state = "squeezed";
  std::optional<double> nbar;
  std::optional<double> alpha_abs;
  double alpha_phase = 0.0;
  std::optional<double> r;
  std::optional<double> phi;
  double tail_tol = default_tail_tol;
  std::string out;
  std::string transition;  // empty: "one", or "both" for timescales
  std::optional<double> t_max;
  long steps = 8000;
  int fig_id = 0;
  long dim = 256;
  std::string method = "closed";
};

/// Round-trip-safe decimal rendering.
inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string fmt_opt(const std::optional<double> &x) { return x ? fmt(*x) : "unset"; }

inline std::string provenance(const RunConfig &c) {
  std::ostringstream s;
  s << "# qrabi " << c.subcommand;
  if (c.subcommand == "pmf" || c.subcommand == "moments" || c.subcommand == "rabi" ||
      c.subcommand == "parity" || c.subcommand == "timescales") {
    s << " state=" << c.state << " nbar=" << fmt_opt(c.nbar) << " alpha_abs=" << fmt_opt(c.alpha_abs)
      << " alpha_phase=" << fmt(c.alpha_phase) << " r=" << fmt_opt(c.r)
      << " phi=" << fmt(c.phi.value_or(2.0 * c.alpha_phase)) << " tail_tol=" << fmt(c.tail_tol);
  }
  if (c.subcommand == "rabi" || c.subcommand == "parity" || c.subcommand == "timescales") {
    s << " transition=" << c.transition;
  }
  if (c.subcommand == "rabi" || c.subcommand == "parity") {
    s << " t_max=" << fmt_opt(c.t_max) << " steps=" << c.steps;
  }
  if (c.subcommand == "optimize") {
    s << " alpha_abs=" << fmt_opt(c.alpha_abs) << " method=" << c.method;
  }
  if (c.subcommand == "fig") {
    s << " id=" << c.fig_id;
  }
  if (c.subcommand == "verify") {
    s << " dim=" << c.dim;
  }
  return s.str();
}

inline void require(bool cond, const std::string &msg) {
  if (!cond) {
    throw usage_error(msg);
  }
}

inline bool finite_nonneg(const std::optional<double> &x) {
  return !x || (std::isfinite(*x) && *x >= 0.0);
}

inline void validate(RunConfig &c) {
  require(c.state == "coherent" || c.state == "squeezed", "--state must be coherent or squeezed");
  require(finite_nonneg(c.nbar), "--nbar must be finite and >= 0");
  require(finite_nonneg(c.alpha_abs), "--alpha-abs must be finite and >= 0");
  require(finite_nonneg(c.r), "--r must be finite and >= 0");
  require(std::isfinite(c.alpha_phase), "--alpha-phase must be finite");
  require(!c.phi || std::isfinite(*c.phi), "--phi must be finite");
  require(c.tail_tol > 0.0 && c.tail_tol < 1.0, "--tail-tol must lie in (0, 1)");
  require(c.transition == "one" || c.transition == "two" || c.transition == "both",
          "--transition must be one or two");
  require(!c.t_max || (std::isfinite(*c.t_max) && *c.t_max > 0.0), "--t-max must be > 0");
  require(c.steps >= 2, "--steps must be >= 2");

  const std::string &sub = c.subcommand;
  if (sub == "pmf" || sub == "moments" || sub == "rabi" || sub == "parity") {
    if (c.state == "coherent") {
      require(c.nbar || c.alpha_abs, "coherent state needs --nbar or --alpha-abs");
    } else {
      require(c.alpha_abs.has_value(), "squeezed state needs --alpha-abs");
      require(c.r.has_value(), "squeezed state needs --r");
    }
  }
  if (sub == "rabi" || sub == "parity") {
    require(c.transition != "both", "--transition must be one or two");
  }
  if (sub == "optimize") {
    require(c.alpha_abs && *c.alpha_abs > 0.0, "optimize needs --alpha-abs > 0");
    require(c.method == "closed" || c.method == "numeric", "--method must be closed or numeric");
  }
  if (sub == "timescales") {
    require(c.nbar || c.alpha_abs, "timescales needs --nbar or state parameters");
    require(!c.nbar || *c.nbar > 0.0, "--nbar must be > 0 for timescales");
  }
  if (sub == "fig") {
    require(c.fig_id >= 1 && c.fig_id <= 9, "--id must be in 1..9");
  }
  if (sub == "verify") {
    require(c.dim >= 16 && c.dim % 2 == 0 && c.dim <= 4096, "--dim must be even in [16, 4096]");
  }
}

inline ModeParams mode_params(const RunConfig &c) {
  return {c.alpha_abs.value_or(0.0), c.alpha_phase, c.r.value_or(0.0),
          c.phi.value_or(2.0 * c.alpha_phase)};
}

inline PhotonDistribution distribution(const RunConfig &c) {
  if (c.state == "coherent") {
    const double nbar = c.nbar ? *c.nbar : (*c.alpha_abs) * (*c.alpha_abs);
    return coherent_pmf_adaptive(nbar, c.tail_tol);
  }
  return squeezed_coherent_pmf(mode_params(c), c.tail_tol);
}

inline rabi::Transition transition(const std::string &name) {
  return name == "two" ? rabi::Transition::two_photon : rabi::Transition::one_photon;
}

inline double default_t_max(rabi::Transition t) {
  return t == rabi::Transition::one_photon ? 50.0 : 70.0;
}

inline void write_pmf(std::ostream &os, const PhotonDistribution &dist) {
  os << "n,p\n";
  const auto probs = dist.probs();
  for (std::size_t n = 0; n < probs.size(); ++n) {
    os << n << ',' << fmt(probs[n]) << '\n';
  }
}

inline void write_series(std::ostream &os, const rabi::RabiSeries &s) {
  os << "t,value\n";
  for (std::size_t j = 0; j < s.times.size(); ++j) {
    os << fmt(s.times[j]) << ',' << fmt(s.values[j]) << '\n';
  }
}

inline void cmd_moments(std::ostream &os, const RunConfig &c) {
  const PhotonDistribution dist = distribution(c);
  std::string mean_closed, var_closed, fano_closed, log_parity;
  if (c.state == "coherent") {
    const double nbar = c.nbar ? *c.nbar : (*c.alpha_abs) * (*c.alpha_abs);
    mean_closed = var_closed = fmt(nbar);
    fano_closed = nbar > 0.0 ? fmt(1.0) : "";
    log_parity = fmt(-2.0 * nbar);
  } else if (mode_params(c).is_phase_matched()) {
    const ModeParams p = mode_params(c);
    mean_closed = fmt(mean_closed_form(p));
    var_closed = fmt(variance_closed_form(p));
    fano_closed = mean_closed_form(p) > 0.0 ? fmt(optimize::fano(p)) : "";
    log_parity = fmt(parity_closed_form(p).log_value);
  }
  const double mean_sum = moment_by_sum(dist, 1);
  const double var_sum = variance_by_sum(dist);
  os << "mean_closed,variance_closed,fano_closed,log_parity_closed,mean_sum,variance_sum,"
        "fano_sum,parity_sum,n_max,tail_bound\n";
  os << mean_closed << ',' << var_closed << ',' << fano_closed << ',' << log_parity << ','
     << fmt(mean_sum) << ',' << fmt(var_sum) << ',' << (mean_sum > 0.0 ? fmt(var_sum / mean_sum) : "")
     << ',' << fmt(parity_sum(dist)) << ',' << dist.n_max() << ',' << fmt(dist.tail_bound()) << '\n';
}

inline void cmd_optimize(std::ostream &os, const RunConfig &c) {
  const optimize::OptimizationResult res = c.method == "numeric"
                                               ? optimize::minimize_fano_numeric(*c.alpha_abs)
                                               : optimize::solve_r_for_alpha(*c.alpha_abs);
  os << "alpha_abs,r_opt,nbar,fano\n";
  os << fmt(res.alpha_abs) << ',' << fmt(res.r_opt) << ',' << fmt(res.nbar) << ','
     << fmt(res.fano) << '\n';
}

inline void cmd_series(std::ostream &os, const RunConfig &c, bool parity) {
  const rabi::Transition t = transition(c.transition);
  const auto grid = rabi::uniform_grid(c.t_max.value_or(default_t_max(t)),
                                       static_cast<std::size_t>(c.steps));
  write_series(os, rabi::rabi_series(distribution(c), grid, rabi::series_kind(t, parity)));
}

inline void cmd_timescales(std::ostream &os, const RunConfig &c) {
  double nbar = 0.0;
  if (c.nbar) {
    nbar = *c.nbar;
  } else if (c.state == "coherent") {
    nbar = (*c.alpha_abs) * (*c.alpha_abs);
  } else {
    nbar = moment_by_sum(distribution(c), 1);
  }
  os << "transition,t_collapse,t_revival,t_parity_event\n";
  for (const auto t : {rabi::Transition::one_photon, rabi::Transition::two_photon}) {
    if (c.transition != "both" && transition(c.transition) != t) {
      continue;
    }
    const auto rep = rabi::timescales(nbar, t);
    os << rabi::to_string(t) << ',' << fmt(rep.t_collapse) << ',' << fmt(rep.t_revival) << ','
       << fmt(rep.t_parity_event) << '\n';
  }
}

// Reference states for the figures: coherent with nbar = 24.6, and squeezed
// with |alpha| = 10, r = 0.7136, phi = 2 theta = 0.
inline constexpr double fig_nbar = 24.6;
inline constexpr double fig_alpha_abs = 10.0;
inline constexpr double fig_r = 0.7136;

inline void cmd_fig(std::ostream &os, const RunConfig &c) {
  const PhotonDistribution coh = coherent_pmf_adaptive(fig_nbar, c.tail_tol);
  const PhotonDistribution sq =
      squeezed_coherent_pmf(ModeParams::phase_matched(fig_alpha_abs, fig_r), c.tail_tol);
  if (c.fig_id == 1) {
    os << "n,p_coherent,p_squeezed\n";
    for (std::size_t n = 0; n <= std::max(coh.n_max(), sq.n_max()); ++n) {
      os << n << ',' << fmt(coh[n]) << ',' << fmt(sq[n]) << '\n';
    }
    return;
  }
  // 2..9: (one-photon, two-photon) x (probability, parity) x (coherent, squeezed)
  const int k = c.fig_id - 2;
  const bool squeezed = k % 2 == 1;
  const rabi::Transition t = (k / 2) % 2 == 0 ? rabi::Transition::one_photon
                                              : rabi::Transition::two_photon;
  const bool parity = k >= 4;
  const auto grid = rabi::uniform_grid(default_t_max(t), 8000);
  write_series(os, rabi::rabi_series(squeezed ? sq : coh, grid, rabi::series_kind(t, parity)));
}

inline int cmd_verify(std::ostream &os, const RunConfig &c) {
  const auto results = run_verification(static_cast<std::size_t>(c.dim));
  os << "check,value,threshold,status\n";
  bool all = true;
  for (const auto &r : results) {
    os << r.name << ',' << fmt(r.value) << ',' << fmt(r.threshold) << ','
       << (r.passed ? "pass" : "FAIL") << '\n';
    all = all && r.passed;
  }
  return all ? ok : failure;
}

inline void add_state_options(CLI::App *sub, RunConfig &c) {
  sub->add_option("--state", c.state, "coherent|squeezed")->capture_default_str();
  sub->add_option("--nbar", c.nbar, "mean photon number (coherent state)");
  sub->add_option("--alpha-abs", c.alpha_abs, "displacement magnitude |alpha|");
  sub->add_option("--alpha-phase", c.alpha_phase, "displacement phase theta (rad)")
      ->capture_default_str();
  sub->add_option("--r", c.r, "squeeze magnitude r");
  sub->add_option("--phi", c.phi, "squeeze phase phi (rad), default 2*alpha-phase");
  sub->add_option("--tail-tol", c.tail_tol, "pmf truncation tolerance")->capture_default_str();
}

inline void add_series_options(CLI::App *sub, RunConfig &c) {
  add_state_options(sub, c);
  sub->add_option("--transition", c.transition, "one|two (default one)");
  sub->add_option("--t-max", c.t_max, "grid end in lambda*t or g*t (default 50 / 70)");
  sub->add_option("--steps", c.steps, "number of grid points")->capture_default_str();
}

}  // namespace detail

/// Runs one CLI invocation. argv[0] is the program name.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  RunConfig cfg;
  CLI::App app{"Photon statistics and Rabi collapse/revival of coherent and squeezed coherent states",
               "qrabi"};
  app.require_subcommand(1);
  std::string out_path;

  auto *pmf = app.add_subcommand("pmf", "photon-number distribution (n,p)");
  detail::add_state_options(pmf, cfg);
  auto *moments = app.add_subcommand("moments", "closed-form and summed moments, parity");
  detail::add_state_options(moments, cfg);
  auto *opt = app.add_subcommand("optimize", "squeeze r minimizing the Fano factor");
  opt->add_option("--alpha-abs", cfg.alpha_abs, "displacement magnitude |alpha|");
  opt->add_option("--method", cfg.method, "closed|numeric")->capture_default_str();
  auto *rabi_cmd = app.add_subcommand("rabi", "collapse/revival probability series (t,value)");
  detail::add_series_options(rabi_cmd, cfg);
  auto *parity = app.add_subcommand("parity", "photon-parity series (t,value)");
  detail::add_series_options(parity, cfg);
  auto *ts = app.add_subcommand("timescales", "predicted collapse/revival/parity times");
  detail::add_state_options(ts, cfg);
  ts->add_option("--transition", cfg.transition, "one|two|both (default both)");
  auto *fig = app.add_subcommand("fig", "data behind figure 1..9");
  fig->add_option("--id", cfg.fig_id, "figure number 1..9")->required();
  fig->add_option("--tail-tol", cfg.tail_tol, "pmf truncation tolerance")->capture_default_str();
  auto *ver = app.add_subcommand("verify", "run the numerical invariant suite");
  ver->add_option("--dim", cfg.dim, "Fock cutoff")->capture_default_str();
  for (auto *sub : app.get_subcommands({})) {
    sub->add_option("--out", out_path, "output path (default stdout; fig: fig<id>.csv)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, err, err);
    return usage;
  }

  for (auto *sub : app.get_subcommands()) {
    cfg.subcommand = sub->get_name();
  }
  if (cfg.transition.empty()) {
    cfg.transition = cfg.subcommand == "timescales" ? "both" : "one";
  }

  try {
    detail::validate(cfg);
    if (cfg.subcommand == "fig" && out_path.empty()) {
      out_path = "fig" + std::to_string(cfg.fig_id) + ".csv";
    }
    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) {
        throw usage_error("cannot open --out path " + out_path);
      }
    }
    std::ostream &os = out_path.empty() ? out : file;
    cfg.out = out_path;

    std::ostringstream body;
    int code = ok;
    body << detail::provenance(cfg) << '\n';
    if (cfg.subcommand == "pmf") {
      detail::write_pmf(body, detail::distribution(cfg));
    } else if (cfg.subcommand == "moments") {
      detail::cmd_moments(body, cfg);
    } else if (cfg.subcommand == "optimize") {
      detail::cmd_optimize(body, cfg);
    } else if (cfg.subcommand == "rabi") {
      detail::cmd_series(body, cfg, false);
    } else if (cfg.subcommand == "parity") {
      detail::cmd_series(body, cfg, true);
    } else if (cfg.subcommand == "timescales") {
      detail::cmd_timescales(body, cfg);
    } else if (cfg.subcommand == "fig") {
      detail::cmd_fig(body, cfg);
    } else if (cfg.subcommand == "verify") {
      code = detail::cmd_verify(body, cfg);
    }
    os << body.str();
    os.flush();
    if (code != ok) {
      err << "qrabi: verification failed\n";
    }
    return code;
  } catch (const precondition_error &e) {
    err << "qrabi: usage error: " << e.what() << '\n' << app.help();
    return usage;
  } catch (const error &e) {
    err << "qrabi: numerical failure: " << e.what() << '\n';
    return failure;
  }
}

inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  std::vector<const char *> argv{"qrabi"};
  for (const auto &a : args) {
    argv.push_back(a.c_str());
  }
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qrabi::cli

#endif
