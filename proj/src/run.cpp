#include "bso/run.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <vector>

#include "bso/analytic.hpp"
#include "bso/beam.hpp"
#include "bso/csv.hpp"
#include "bso/dynamics.hpp"
#include "bso/floquet.hpp"
#include "bso/signal.hpp"
#include "bso/svg.hpp"

namespace bso {

namespace {

constexpr double kPi = 3.14159265358979323846;

namespace fs = std::filesystem;

std::string out_path(const RunConfig& cfg, const std::string& file) {
  return (fs::path(cfg.output.dir) / file).string();
}

double resolve_dt(const RunConfig& cfg) {
  return cfg.numerics.dt > 0.0 ? cfg.numerics.dt : default_step(cfg.field);
}

// long enough to saturate the envelope and show a few Rabi cycles
double resolve_t_end(const RunConfig& cfg) {
  if (cfg.numerics.t_end > 0.0) return cfg.numerics.t_end;
  const FieldParams& p = cfg.field;
  const double rabi = p.g0M() > 0.0 ? 6.0 * kPi / p.g0M() : 50.0;
  return 5.0 * p.tau_sw() + rabi;
}

void field_comments(CsvWriter& csv, const RunConfig& cfg) {
  const FieldParams& p = cfg.field;
  csv.comment("bso-sim mode=" + std::string(mode_name(cfg.mode)));
  csv.comment("field: g0M=" + format_number(p.g0M()) +
              " omega=1 phi=" + format_number(p.phi()) +
              " tau_sw=" + format_number(p.tau_sw()) +
              " eta0=" + format_number(p.eta0()) +
              " compensate_bs=" + (p.compensate_bs_shift() ? "true" : "false") +
              " omega_scale=" + format_number(p.omega_scale()));
  for (const auto& w : p.warnings()) csv.comment("warning: " + w);
}

void numerics_comments(CsvWriter& csv, double dt, int stride, double t_end) {
  csv.comment("numerics: dt=" + format_number(dt) +
              " stride=" + std::to_string(stride) +
              " t_end=" + format_number(t_end));
}

void beam_comments(CsvWriter& csv, const BeamParams& b) {
  csv.comment("beam: u=" + format_number(b.u()) + " z0=" + format_number(b.z0()) +
              " z_sw=" + format_number(b.z_sw()) +
              " tau_bar=" + format_number(b.tau_bar()) +
              " quad_order=" + std::to_string(b.quad_order()) +
              " cutoff=" + format_number(b.v_cutoff()));
}

BeamParams make_beam(const RunConfig& cfg) {
  const BeamConfig& b = *cfg.beam;
  return BeamParams::with_pi_half_readout(cfg.field, b.u, b.z0, b.z_sw,
                                          b.quad_order, b.v_cutoff);
}

int run_trajectory(const RunConfig& cfg) {
  const double dt = resolve_dt(cfg);
  const double t_end = resolve_t_end(cfg);
  const Trajectory traj = integrate_full(cfg.field, t_end, dt,
                                         {cfg.numerics.stride, false});

  std::vector<double> ts, pop, rabi;
  CsvWriter csv(out_path(cfg, "trajectory.csv"));
  field_comments(csv, cfg);
  numerics_comments(csv, dt, cfg.numerics.stride, t_end);
  csv.comment("lab-frame amplitudes; pop1 = |c1|^2");
  csv.comment("max_norm_drift=" + format_number(traj.max_norm_drift));
  csv.header({"t", "re_c0", "im_c0", "re_c1", "im_c1", "pop1"});
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const StateAmplitudes lab =
        to_lab_frame(traj.states[i], t, cfg.field);
    csv.row(std::vector<double>{t, lab.c0.real(), lab.c0.imag(), lab.c1.real(),
                                lab.c1.imag(), lab.population1()});
    ts.push_back(t);
    pop.push_back(lab.population1());
    const double s = std::sin(0.5 * pulse_area(cfg.field, t));
    rabi.push_back(s * s);
  }

  if (cfg.output.svg)
    write_svg_plot(out_path(cfg, "trajectory.svg"),
                   "excited-state population vs interaction time", "t (1/omega)",
                   "|C1|^2",
                   {{"full", "#c42727", &ts, &pop}, {"Rabi", "#2754c4", &ts, &rabi}});
  return 0;
}

int run_bso(const RunConfig& cfg) {
  const double dt = resolve_dt(cfg);
  const double t_end = resolve_t_end(cfg);
  const Trajectory full = integrate_full(cfg.field, t_end, dt,
                                         {cfg.numerics.stride, false});
  const TimeSeries res_full = bso_residual(full, cfg.field);

  // closed-form residual on the same grid: the Rabi subtraction applied to
  // the first-order solution, eta(t) sin(g0't) sin(2wt + 2phi) to O(eta^2)
  std::vector<double> res_model(res_full.size()), env(res_full.size());
  for (std::size_t i = 0; i < res_full.size(); ++i) {
    const double t = res_full.t[i];
    const double s = std::sin(0.5 * pulse_area(cfg.field, t));
    res_model[i] =
        t > 0.0 ? analytic_amplitudes(cfg.field, t).population1() - s * s : 0.0;
    env[i] = eta(cfg.field, t) * std::abs(std::sin(pulse_area(cfg.field, t)));
  }

  CsvWriter csv(out_path(cfg, "bso.csv"));
  field_comments(csv, cfg);
  numerics_comments(csv, dt, cfg.numerics.stride, t_end);
  csv.comment("bso = first-order |C1|^2 - sin^2(g0'(t) t / 2); bso_full = same "
              "from the full integration; envelope = eta(t)|sin(g0'(t) t)|");
  csv.header({"t", "bso", "bso_full", "envelope", "g0", "g0_eff"});
  for (std::size_t i = 0; i < res_full.size(); ++i) {
    const double t = res_full.t[i];
    csv.row(std::vector<double>{t, res_model[i], res_full.y[i], env[i],
                                switching_profile(cfg.field, t),
                                t > 0.0 ? effective_rabi(cfg.field, t) : 0.0});
  }

  if (cfg.output.svg)
    write_svg_plot(out_path(cfg, "bso.svg"), "Bloch-Siegert oscillation",
                   "t (1/omega)", "pop1 - Rabi",
                   {{"bso", "#c42727", &res_full.t, &res_model},
                    {"envelope", "#2754c4", &res_full.t, &env}});
  return 0;
}

int run_phi_sweep(const RunConfig& cfg) {
  const double dt = resolve_dt(cfg);
  const FieldParams& base = cfg.field;
  const FieldParams probe(base.g0M(), 1.0, 0.0, base.tau_sw(),
                          base.compensate_bs_shift());
  const double tau = saturated_pi_half_time(probe, cfg.numerics.min_saturation);

  const int n = cfg.numerics.phi_points;
  std::vector<double> phis, full, model, closed;
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i < n; ++i) {
    const double phi = i * kPi / n;
    const FieldParams p(base.g0M(), 1.0, phi, base.tau_sw(),
                        base.compensate_bs_shift());
    const Trajectory traj = integrate_full(p, tau, dt, {cfg.numerics.stride, false});
    phis.push_back(phi);
    full.push_back(traj.states.back().population1());
    closed.push_back(analytic_amplitudes(p, tau).population1());
    model.push_back(readout_population(p, tau));
    samples.emplace_back(phi, full.back());
  }
  const double recovered = estimate_absolute_phase(samples, probe, tau);

  CsvWriter csv(out_path(cfg, "phi_sweep.csv"));
  field_comments(csv, cfg);
  numerics_comments(csv, dt, cfg.numerics.stride, tau);
  csv.comment("pi/2 readout at tau=" + format_number(tau) +
              " (cycle with eta(tau) >= " +
              format_number(cfg.numerics.min_saturation) + " eta0)");
  csv.comment("estimated_omega_tau_mod_pi=" + format_number(recovered));
  csv.comment("true_omega_tau_mod_pi=" + format_number(wrap_pi(tau)));
  csv.header({"phi", "pop_full", "pop_analytic", "pop_model"});
  for (int i = 0; i < n; ++i)
    csv.row(std::vector<double>{phis[i], full[i], closed[i], model[i]});

  if (cfg.output.svg)
    write_svg_plot(out_path(cfg, "phi_sweep.svg"),
                   "pi/2 readout population vs initial phase", "phi (rad)",
                   "|C1(tau)|^2",
                   {{"full", "#c42727", &phis, &full},
                    {"model", "#2754c4", &phis, &model}});
  return 0;
}

int run_beam(const RunConfig& cfg) {
  const BeamParams beam = make_beam(cfg);
  const BeamSignalComponents comps = beam_signal_components(beam, cfg.field);

  const double period = kPi;  // 2w oscillation, omega = 1
  const long n = (long)cfg.numerics.beam_periods * cfg.numerics.samples_per_period;
  std::vector<double> ts, sig;
  for (long i = 0; i <= n; ++i) {
    const double t = (double)i * cfg.numerics.beam_periods * period / (double)n;
    ts.push_back(t);
    sig.push_back(comps.dc + comps.amplitude *
                                 std::sin(2.0 * (t + cfg.field.phi())));
  }

  CsvWriter csv(out_path(cfg, "beam.csv"));
  field_comments(csv, cfg);
  beam_comments(csv, beam);
  csv.comment("S(t) = dc + amplitude sin(2wt + 2phi); dc=" +
              format_number(comps.dc) +
              " amplitude=" + format_number(comps.amplitude));
  csv.header({"t", "S"});
  for (std::size_t i = 0; i < ts.size(); ++i)
    csv.row(std::vector<double>{ts[i], sig[i]});

  if (cfg.output.svg)
    write_svg_plot(out_path(cfg, "beam.svg"),
                   "beam-averaged readout signal", "t (1/omega)", "S(t)",
                   {{"S", "#c42727", &ts, &sig}});
  return 0;
}

int run_lockin(const RunConfig& cfg) {
  const BeamParams beam = make_beam(cfg);
  const int n = cfg.numerics.theta_points;

  std::vector<double> thetas, dc, ratio, cosref;
  const double dc0 =
      lock_in_dc(beam, cfg.field, 0.0, cfg.numerics.lockin_periods);
  for (int i = 0; i < n; ++i) {
    const double theta = i * 2.0 * kPi / n;
    thetas.push_back(theta);
    dc.push_back(lock_in_dc(beam, cfg.field, theta, cfg.numerics.lockin_periods));
    ratio.push_back(dc.back() / dc0);
    cosref.push_back(std::cos(theta));
  }

  CsvWriter csv(out_path(cfg, "lockin.csv"));
  field_comments(csv, cfg);
  beam_comments(csv, beam);
  csv.comment("window=" + format_number(cfg.numerics.lockin_periods) +
              " periods of pi/omega; dc(0)=" + format_number(dc0));
  csv.header({"theta", "dc", "dc_over_dc0", "cos_theta"});
  for (int i = 0; i < n; ++i)
    csv.row(std::vector<double>{thetas[i], dc[i], ratio[i], cosref[i]});

  if (cfg.output.svg)
    write_svg_plot(out_path(cfg, "lockin.svg"), "lock-in dc vs reference phase",
                   "theta (rad)", "dc",
                   {{"dc", "#c42727", &thetas, &dc}});
  return 0;
}

int run_oracle_compare(const RunConfig& cfg) {
  const double dt = resolve_dt(cfg);
  const FieldParams& p = cfg.field;
  const double tau = pi_half_time(p);
  const double bound = 5.0 * p.eta0() * p.eta0();

  const IntegrateOptions opts{cfg.numerics.stride, false};
  const Trajectory full = integrate_full(p, tau, dt, opts);
  const FloquetTrajectory floq = integrate_floquet(p, tau, dt, opts);

  double max_floq = 0.0, max_ana = 0.0;
  CsvWriter csv(out_path(cfg, "oracle_compare.csv"));
  field_comments(csv, cfg);
  numerics_comments(csv, dt, cfg.numerics.stride, tau);
  csv.comment("pi/2 pulse: tau=" + format_number(tau) +
              "; bound 5*eta0^2=" + format_number(bound));
  csv.header({"t", "pop_full", "pop_floquet", "pop_analytic", "diff_floquet",
              "diff_analytic"});
  for (std::size_t i = 0; i < full.size(); ++i) {
    const double t = full.times[i];
    const double pf = full.population1(i);
    const double pq = resum_modes(floq.states[i], t, p).population1();
    const double pa =
        t > 0.0 ? analytic_amplitudes(p, t).population1() : 0.0;
    const double df = std::abs(pq - pf);
    const double da = t > 0.0 ? std::abs(pa - pf) : 0.0;
    max_floq = std::max(max_floq, df);
    max_ana = std::max(max_ana, da);
    csv.row(std::vector<double>{t, pf, pq, pa, df, da});
  }
  const bool pass = max_floq <= bound && max_ana <= bound;
  csv.comment("max_diff_floquet=" + format_number(max_floq));
  csv.comment("max_diff_analytic=" + format_number(max_ana));
  csv.comment(pass ? "result=pass" : "result=FAIL");

  CsvWriter modes(out_path(cfg, "floquet_modes.csv"));
  field_comments(modes, cfg);
  modes.header({"t", "abs_a_m1", "abs_a0", "abs_a_p1", "abs_b_m1", "abs_b0",
                "abs_b_p1"});
  for (std::size_t i = 0; i < floq.size(); ++i) {
    const FloquetState& f = floq.states[i];
    modes.row(std::vector<double>{floq.times[i], std::abs(f.a_mode(-1)),
                                  std::abs(f.a_mode(0)), std::abs(f.a_mode(1)),
                                  std::abs(f.b_mode(-1)), std::abs(f.b_mode(0)),
                                  std::abs(f.b_mode(1))});
  }

  std::cout << "oracle_compare: max_diff_floquet=" << format_number(max_floq)
            << " max_diff_analytic=" << format_number(max_ana)
            << " bound=" << format_number(bound)
            << (pass ? " PASS" : " FAIL") << "\n";
  return pass ? 0 : 2;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    std::error_code ec;
    fs::create_directories(cfg.output.dir, ec);
    if (ec || !fs::is_directory(cfg.output.dir)) {
      std::cerr << "error: cannot create output directory '" << cfg.output.dir
                << "'\n";
      return 1;
    }

    switch (cfg.mode) {
      case RunMode::Trajectory: return run_trajectory(cfg);
      case RunMode::Bso: return run_bso(cfg);
      case RunMode::PhiSweep: return run_phi_sweep(cfg);
      case RunMode::Beam: return run_beam(cfg);
      case RunMode::LockIn: return run_lockin(cfg);
      case RunMode::OracleCompare: return run_oracle_compare(cfg);
    }
    return 1;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical-accuracy error: " << e.what() << "\n";
    return 2;
  } catch (const FitError& e) {
    std::cerr << "numerical-accuracy error: " << e.what() << "\n";
    return 2;
  } catch (const SearchError& e) {
    std::cerr << "numerical-accuracy error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bso
