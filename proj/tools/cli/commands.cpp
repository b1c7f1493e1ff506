#include "cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "nanograting/errors.hpp"
#include "nanograting/imaging.hpp"

namespace nanograting::cli {
namespace {

std::string num(double v, const char* fmt = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

io::Metadata with_run_keys(const RunConfig& cfg, const Invocation& inv) {
  io::Metadata meta = cfg.describe();
  meta.emplace_back("command", inv.command);
  if (cfg.noise > 0.0) {
    meta.emplace_back("noise.relative", num(cfg.noise));
    meta.emplace_back("noise.seed", std::to_string(cfg.seed));
  }
  return meta;
}

void add_multiplicative_noise(Trace& trace, double relative, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, relative);
  for (double& v : trace.intensities) v = std::max(0.0, v * (1.0 + gauss(rng)));
  trace = normalized_to_max(std::move(trace));
}

int count_orders(const Trace& trace, const RunConfig& cfg, int n_max) {
  const auto model = cfg.trace_model();
  const double wavelength = de_broglie_wavelength(model.molecule, model.band.center);
  const auto orders =
      order_population(trace, model.grating.period(), wavelength, model.geometry.L2(), n_max);
  double first = 0.0;
  for (const auto& o : orders) {
    if (o.n == 1 && o.present) first = o.height;
  }
  if (!(first > 0.0)) return 0;
  int count = 0;
  for (const auto& o : orders) {
    if (o.n >= 1 && o.present && o.height >= 0.005 * first) ++count;
  }
  return count;
}

int cmd_simulate(const RunConfig& cfg, const Invocation& inv, std::ostream& out, std::ostream& err) {
  const auto model = cfg.trace_model();
  Trace trace = simulate_trace(model);
  if (cfg.noise > 0.0) add_multiplicative_noise(trace, cfg.noise, cfg.seed);

  const auto meta = with_run_keys(cfg, inv);
  if (inv.out) {
    io::write_trace_csv(*inv.out, trace, meta);
  } else {
    io::write_trace_csv(out, trace, meta);
  }
  io::write_report(err, meta);
  err << "orders above 0.5% of first = " << count_orders(trace, cfg, cfg.detector_orders) << '\n';
  return exit_ok;
}

int cmd_synth_image(const RunConfig& cfg, const Invocation& inv, std::ostream&, std::ostream& err) {
  const auto grid = cfg.image_grid();
  SynthesisOptions opts;
  opts.coherence_prefactor = cfg.coherence_prefactor;
  opts.kirchhoff = cfg.kirchhoff();
  const auto dist = cfg.velocity_distribution();
  const auto result = synthesize_image(dist, cfg.grating(), cfg.molecule(), cfg.source(),
                                       cfg.geometry(), grid, opts);

  const std::string stem = inv.out.value_or("interferogram");
  auto meta = with_run_keys(cfg, inv);
  meta.emplace_back("velocity.distribution", cfg.distribution);
  meta.emplace_back("velocity.classes", std::to_string(dist.classes().size()));
  meta.emplace_back("clipped_classes", std::to_string(result.clipped_classes));
  const auto sidecar = io::write_interferogram(stem, result.image, meta);
  const double stretch = inv.stretch.value_or(cfg.stretch);
  write_binary_file(stem + ".ppm", render_ppm(result.image, ColorMapHot{}, stretch));

  err << "wrote " << sidecar.string() << " (" << result.image.nx() << " x " << result.image.ny()
      << "), " << stem << ".ppm\n";
  err << "clipped " << result.clipped_classes << " of " << dist.classes().size()
      << " velocity classes (weight " << num(result.clipped_weight) << ")\n";
  return exit_ok;
}

int cmd_fit_seff(const RunConfig& cfg, const Invocation& inv, std::ostream& out, std::ostream& err) {
  if (!inv.measured) throw ConfigError("fit-seff needs --measured PATH");
  const Trace measured = io::read_trace_csv(*inv.measured);
  auto model = cfg.trace_model();
  // Fit on the measured grid so the residual compares like with like.
  model.grid.x_min = measured.positions.front();
  model.grid.x_max = measured.positions.back();
  model.grid.pitch = measured.pitch();
  const auto fit = fit_effective_slit(measured, model, cfg.fit);

  const double s = model.grating.slit_width();
  io::Metadata report = {
      {"grating", cfg.grating_preset},
      {"slit_nm", num(s * 1e9)},
      {"effective_slit_nm", num(fit.effective_slit_width * 1e9, "%.3f")},
      {"suppression_ratio", num(fit.suppression_ratio, "%.3f")},
      {"residual_rms", num(fit.residual)},
      {"evaluations", std::to_string(fit.evaluations)},
      {"bracket_nm", num(fit.bracket_lower * 1e9, "%.3f") + " .. " + num(fit.bracket_upper * 1e9, "%.3f")},
  };
  io::write_report(out, report);
  if (inv.out) {
    auto meta = with_run_keys(cfg, inv);
    meta.emplace_back("fit.effective_slit_nm", num(fit.effective_slit_width * 1e9, "%.3f"));
    io::write_trace_csv(*inv.out, fit.best_trace, meta);
    err << "best-fit trace written to " << *inv.out << '\n';
  }
  return exit_ok;
}

int cmd_fit_velocity(const RunConfig& cfg, const Invocation& inv, std::ostream& out, std::ostream&) {
  const auto geom = cfg.geometry();
  if (inv.image) {
    const Interferogram img = io::read_interferogram(*inv.image);
    StripeOptions opts;
    opts.stripes = cfg.stripes;
    opts.min_relative_signal = cfg.stripe_min_signal;
    const auto profile =
        stripe_velocity_profile(img, geom, cfg.grating().period(), cfg.molecule(), opts);
    if (profile.underdetermined) {
      throw FitError("only " + std::to_string(profile.samples.size()) +
                     " stripes carry a first order; the free-fall fit is under-determined");
    }
    out << "# ballistic_intercept_um = " << num(profile.ballistic_intercept * 1e6) << '\n';
    out << "# rms_residual_m_s = " << num(profile.rms_residual) << '\n';
    out << "# skipped_stripes = " << profile.skipped.size() << '\n';
    out << "stripe,y_um,first_order_um,velocity_m_s,fitted_velocity_m_s,residual_m_s\n";
    for (const auto& s : profile.samples) {
      out << s.stripe << ',' << num(s.y * 1e6) << ',' << num(s.first_order_offset * 1e6) << ','
          << num(s.velocity) << ',' << num(s.fitted_velocity) << ',' << num(s.residual) << '\n';
    }
    return exit_ok;
  }
  if (inv.y2_um.empty()) throw ConfigError("fit-velocity needs --image PATH or --y2-um values");
  out << "y2_um,velocity_m_s\n";
  for (double y2 : inv.y2_um) {
    out << num(y2) << ',' << num(fit_velocity(y2 * 1e-6, geom.y0(), geom.y1(), geom), "%.8g")
        << '\n';
  }
  return exit_ok;
}

int cmd_limits(const RunConfig& cfg, const Invocation& inv, std::ostream& out, std::ostream&) {
  const auto in = cfg.limits_input();
  const auto r = limits::compute_limits(in);
  const auto ads = limits::adsorption_coverage(cfg.molecule_count, cfg.open_area, cfg.footprint);
  const io::Metadata report = {
      {"sigma_nm", num(r.sigma_thermal * 1e9, "%.4g")},
      {"sigma_source", cfg.sigma_from_thermal_model() ? "thermal" : "input"},
      {"slit_nm", num(in.slit_width * 1e9)},
      {"period_nm", num(in.period * 1e9)},
      {"dp_diff_kg_m_s", num(r.dp_diff, "%.6e")},
      {"dp_grating_kg_m_s", num(r.dp_grating, "%.6e")},
      {"s_min_nm", num(r.s_min * 1e9, "%.4g")},
      {"coherent", r.coherent ? "true" : "false"},
      {"margin", num(r.margin, "%.4g")},
      {"n_max", std::to_string(in.n_max)},
      {"lambda_ref_nm", num(in.lambda_ref * 1e9, "%.3f")},
      {"momentum_transfer_hk", num(r.momentum_transfer_hk, "%.2f")},
      {"adsorption_per_cm2", num(ads.density_per_cm2, "%.3e")},
      {"surface_fraction", num(ads.surface_fraction, "%.3e")},
  };
  if (inv.csv) {
    for (std::size_t i = 0; i < report.size(); ++i) out << (i ? "," : "") << report[i].first;
    out << '\n';
    for (std::size_t i = 0; i < report.size(); ++i) out << (i ? "," : "") << report[i].second;
    out << '\n';
  } else {
    io::write_report(out, report);
  }
  return exit_ok;
}

int cmd_render(const RunConfig& cfg, const Invocation& inv, std::ostream&, std::ostream& err) {
  if (!inv.image) throw ConfigError("render needs --image PATH");
  if (!inv.out) throw ConfigError("render needs --out PATH");
  const Interferogram img = io::read_interferogram(*inv.image);
  const double stretch = inv.stretch.value_or(cfg.stretch);
  write_binary_file(*inv.out, render_ppm(img, ColorMapHot{}, stretch));
  err << "wrote " << *inv.out << '\n';
  return exit_ok;
}

}  // namespace

RunConfig load_config(const Invocation& inv) {
  RunConfig cfg;
  if (inv.config_path) apply_config_file(cfg, *inv.config_path);
  if (inv.preset) apply_preset(cfg, *inv.preset);
  for (const auto& s : inv.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
    apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  if (inv.seed) cfg.seed = *inv.seed;
  if (inv.stretch && !(*inv.stretch > 0.0)) throw ConfigError("--stretch must be positive");
  return cfg;
}

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = load_config(inv);
    if (inv.command == "simulate") return cmd_simulate(cfg, inv, out, err);
    if (inv.command == "synth-image") return cmd_synth_image(cfg, inv, out, err);
    if (inv.command == "fit-seff") return cmd_fit_seff(cfg, inv, out, err);
    if (inv.command == "fit-velocity") return cmd_fit_velocity(cfg, inv, out, err);
    if (inv.command == "limits") return cmd_limits(cfg, inv, out, err);
    if (inv.command == "render") return cmd_render(cfg, inv, out, err);
    throw ConfigError("unknown command '" + inv.command + "'");
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const DomainError& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return exit_config;
  } catch (const ResolutionError& e) {
    err << "numerical error: " << e.what() << '\n';
    return exit_numerical;
  } catch (const FitError& e) {
    err << "fit failed: " << e.what() << '\n';
    return exit_numerical;
  } catch (const DegenerateGeometryError& e) {
    err << "fit failed: " << e.what() << '\n';
    return exit_numerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_internal;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matter-wave diffraction at nanomechanical gratings", "nanograting"};
  app.require_subcommand(1);
  app.fallthrough();

  Invocation inv;
  app.add_option("--config", inv.config_path, "key = value run configuration file");
  app.add_option("--preset", inv.preset, "grating or molecule preset (sinx, slg, scroll, bilayer, biphenyl, pch2)");
  app.add_option("--out", inv.out, "output path (file, or stem for synth-image)");
  app.add_option("--seed", inv.seed, "seed for stochastic options");
  app.add_option("--set", inv.settings, "extra key=value setting, repeatable");

  app.add_subcommand("simulate", "band-averaged detector trace as CSV");
  auto* synth = app.add_subcommand("synth-image", "2D interferogram (.bin + .json + .ppm)");
  synth->add_option("--stretch", inv.stretch, "vertical stretch of the rendered pixmap");
  auto* fit_seff = app.add_subcommand("fit-seff", "fit the effective slit width to a measured trace");
  fit_seff->add_option("--measured", inv.measured, "trace CSV to fit")->required();
  auto* fit_vel = app.add_subcommand("fit-velocity", "velocities from free fall");
  fit_vel->add_option("--image", inv.image, "interferogram sidecar (.json) for a stripe profile");
  fit_vel->add_option("--y2-um", inv.y2_um, "detector heights in um to invert");
  auto* lim = app.add_subcommand("limits", "coherence and recoil budget");
  lim->add_flag("--csv", inv.csv, "print a CSV header and row instead of a report");
  auto* render = app.add_subcommand("render", "render an interferogram to a P6 pixmap");
  render->add_option("--image", inv.image, "interferogram sidecar (.json)")->required();
  render->add_option("--stretch", inv.stretch, "vertical stretch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_config;
  }
  inv.command = app.get_subcommands().front()->get_name();
  return execute(inv, out, err);
}

}  // namespace nanograting::cli
