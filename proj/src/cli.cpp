#include "cavmag/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cavmag/circuit.hpp"
#include "cavmag/core.hpp"
#include "cavmag/errors.hpp"
#include "cavmag/fit.hpp"
#include "cavmag/hybrid.hpp"
#include "cavmag/io.hpp"
#include "cavmag/polarization.hpp"

namespace cavmag::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// ===== strict config access =====

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& context) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (allowed.find(it.key()) == allowed.end())
      throw ConfigError("unknown key '" + it.key() + "' in " + context);
}

const json& require_key(const json& obj, const std::string& key,
                        const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ConfigError("missing required key '" + key + "' in " + context);
  return *it;
}

const json& require_object(const json& obj, const std::string& key,
                           const std::string& context) {
  const json& v = require_key(obj, key, context);
  if (!v.is_object())
    throw ConfigError("key '" + key + "' in " + context + " must be an object");
  return v;
}

double require_number(const json& obj, const std::string& key,
                      const std::string& context) {
  const json& v = require_key(obj, key, context);
  if (!v.is_number())
    throw ConfigError("key '" + key + "' in " + context + " must be a number");
  return v.get<double>();
}

double optional_number(const json& obj, const std::string& key, double fallback,
                       const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number())
    throw ConfigError("key '" + key + "' in " + context + " must be a number");
  return it->get<double>();
}

std::size_t require_count(const json& obj, const std::string& key,
                          const std::string& context) {
  const json& v = require_key(obj, key, context);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0)
    throw ConfigError("key '" + key + "' in " + context +
                      " must be a positive integer");
  return v.get<std::size_t>();
}

std::string optional_string(const json& obj, const std::string& key,
                            const std::string& fallback, const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string())
    throw ConfigError("key '" + key + "' in " + context + " must be a string");
  return it->get<std::string>();
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded())
    throw ConfigError("config file '" + path + "' is not valid JSON");
  if (!doc.is_object())
    throw ConfigError("config file '" + path + "' must hold a JSON object");
  const std::string version = optional_string(doc, "schema_version", "", "config");
  if (version != "1")
    throw ConfigError("config schema_version must be \"1\"");
  return doc;
}

// ===== shared config blocks =====

std::vector<double> parse_grid(const json& obj, const std::string& key,
                               const std::string& start_key, const std::string& stop_key,
                               double unit_scale, const std::string& context) {
  const json& grid = require_object(obj, key, context);
  check_keys(grid, {start_key, stop_key, "points"}, context + "." + key);
  const double start = require_number(grid, start_key, context + "." + key);
  const double stop = require_number(grid, stop_key, context + "." + key);
  const std::size_t points = require_count(grid, "points", context + "." + key);
  if (points == 1 && stop != start)
    throw ConfigError("single-point grid needs " + start_key + " == " + stop_key +
                      " in " + context + "." + key);
  return linspace(start * unit_scale, stop * unit_scale, points);
}

circuit::TwoModeCircuit parse_circuit(const json& doc) {
  const json& c = require_object(doc, "circuit", "config");
  check_keys(c, {"line", "mode1", "mode2", "m12_nh"}, "circuit");

  const json& line = require_object(c, "line", "circuit");
  check_keys(line, {"l_nh", "c_pf", "z0_ohm"}, "circuit.line");
  const circuit::TransmissionLine tl(require_number(line, "l_nh", "circuit.line") * 1e-9,
                                     require_number(line, "c_pf", "circuit.line") * 1e-12,
                                     require_number(line, "z0_ohm", "circuit.line"));

  auto parse_mode = [&](const std::string& name) {
    const json& m = require_object(c, name, "circuit");
    const std::string ctx = "circuit." + name;
    check_keys(m, {"f0_ghz", "c_pf", "r_ohm", "m_nh"}, ctx);
    return circuit::ResonatorRLC::from_resonance(
        Frequency(require_number(m, "f0_ghz", ctx) * 1e9),
        require_number(m, "c_pf", ctx) * 1e-12, require_number(m, "r_ohm", ctx),
        require_number(m, "m_nh", ctx) * 1e-9);
  };

  return circuit::TwoModeCircuit(tl, parse_mode("mode1"), parse_mode("mode2"),
                                 require_number(c, "m12_nh", "circuit") * 1e-9);
}

hybrid::HybridModeSet parse_hybrid(const json& doc) {
  const json& h = require_object(doc, "hybrid", "config");
  check_keys(h, {"mode1", "mode2", "magnon", "couplings", "kittel"}, "hybrid");

  auto parse_photon = [&](const std::string& name) {
    const json& m = require_object(h, name, "hybrid");
    const std::string ctx = "hybrid." + name;
    check_keys(m, {"f0_ghz", "beta_mhz", "gamma_mhz"}, ctx);
    return hybrid::ModeParams{Frequency(require_number(m, "f0_ghz", ctx) * 1e9),
                              DampingRate(require_number(m, "beta_mhz", ctx) * 1e6),
                              DampingRate(require_number(m, "gamma_mhz", ctx) * 1e6)};
  };

  hybrid::HybridModeSet set;
  set.modes.photon1 = parse_photon("mode1");
  set.modes.photon2 = parse_photon("mode2");

  const json& magnon = require_object(h, "magnon", "hybrid");
  check_keys(magnon, {"beta_mhz", "gamma_mhz"}, "hybrid.magnon");
  set.modes.magnon = {Frequency(0.0),
                      DampingRate(require_number(magnon, "beta_mhz", "hybrid.magnon") * 1e6),
                      DampingRate(require_number(magnon, "gamma_mhz", "hybrid.magnon") * 1e6)};

  const json& g = require_object(h, "couplings", "hybrid");
  check_keys(g, {"g12_mhz", "g23_mhz", "g31_mhz"}, "hybrid.couplings");
  set.couplings = hybrid::CouplingSet(require_number(g, "g12_mhz", "hybrid.couplings") * 1e6,
                                      require_number(g, "g23_mhz", "hybrid.couplings") * 1e6,
                                      require_number(g, "g31_mhz", "hybrid.couplings") * 1e6);

  const json& k = require_object(h, "kittel", "hybrid");
  check_keys(k, {"gyro_mhz_per_oe", "m_eff_g"}, "hybrid.kittel");
  set.kittel = hybrid::KittelParams(require_number(k, "gyro_mhz_per_oe", "hybrid.kittel"),
                                    require_number(k, "m_eff_g", "hybrid.kittel"));
  return set;
}

double parse_noise_sigma(const json& doc) {
  auto it = doc.find("noise");
  if (it == doc.end()) return 0.0;
  check_keys(*it, {"sigma"}, "noise");
  const double sigma = require_number(*it, "sigma", "noise");
  if (!(sigma >= 0.0)) throw ConfigError("noise.sigma must be >= 0");
  return sigma;
}

// Unit handling for fit parameter bounds, keyed by parameter kind.
struct UnitSpec {
  std::string suffix;
  double scale;
};

UnitSpec unit_for_param(const std::string& name) {
  if (name.ends_with(".f0")) return {"ghz", 1e9};
  if (name.ends_with(".c") || name == "line.c") return {"pf", 1e-12};
  if (name.ends_with(".r") || name == "line.z0") return {"ohm", 1.0};
  if (name.ends_with(".m") || name == "line.l" || name == "m12") return {"nh", 1e-9};
  if (name.starts_with("couplings.")) return {"mhz", 1e6};
  if (name == "kittel.gyro") return {"mhz_per_oe", 1.0};
  if (name == "kittel.m_eff") return {"g", 1.0};
  throw ConfigError("no unit convention for fit parameter '" + name + "'");
}

void apply_fit_block(const json& doc, fit::FitConfig& cfg, bool hybrid_stage) {
  const json& f = require_object(doc, "fit", "config");
  std::set<std::string> allowed = {"free",     "max_iterations", "gradient_tol",
                                   "step_tol", "objective_tol",  "residual"};
  if (hybrid_stage) {
    allowed.insert("mode");
    allowed.insert("ridge_prominence");
  }
  check_keys(f, allowed, "fit");

  cfg.max_iterations =
      static_cast<int>(optional_number(f, "max_iterations", cfg.max_iterations, "fit"));
  cfg.gradient_tol = optional_number(f, "gradient_tol", cfg.gradient_tol, "fit");
  cfg.step_tol = optional_number(f, "step_tol", cfg.step_tol, "fit");
  cfg.objective_tol = optional_number(f, "objective_tol", cfg.objective_tol, "fit");

  const std::string residual = optional_string(f, "residual", "magnitude", "fit");
  if (residual == "magnitude") cfg.residual = fit::ResidualKind::magnitude;
  else if (residual == "complex") cfg.residual = fit::ResidualKind::complex_parts;
  else throw ConfigError("fit.residual must be \"magnitude\" or \"complex\"");

  if (hybrid_stage) {
    const std::string mode = optional_string(f, "mode", "ridge", "fit");
    if (mode == "ridge") cfg.hybrid_objective = fit::HybridObjective::ridge;
    else if (mode == "surface") cfg.hybrid_objective = fit::HybridObjective::surface;
    else throw ConfigError("fit.mode must be \"ridge\" or \"surface\"");
    cfg.ridge_prominence =
        optional_number(f, "ridge_prominence", cfg.ridge_prominence, "fit");
  }

  const json& free = require_key(f, "free", "fit");
  if (!free.is_array()) throw ConfigError("fit.free must be an array");
  for (const json& entry : free) {
    if (!entry.is_object()) throw ConfigError("fit.free entries must be objects");
    const std::string name = optional_string(entry, "param", "", "fit.free");
    if (name.empty()) throw ConfigError("fit.free entry missing 'param'");
    fit::ParamSpec* spec = cfg.find(name);
    if (spec == nullptr) throw ConfigError("unknown fit parameter '" + name + "'");

    const UnitSpec unit = unit_for_param(name);
    const std::string lower_key = "lower_" + unit.suffix;
    const std::string upper_key = "upper_" + unit.suffix;
    check_keys(entry, {"param", lower_key, upper_key}, "fit.free['" + name + "']");

    spec->free = true;
    if (spec->initial > 0.0) {
      spec->lower = spec->initial / 2.0;
      spec->upper = spec->initial * 2.0;
    }
    if (entry.contains(lower_key))
      spec->lower = require_number(entry, lower_key, "fit.free") * unit.scale;
    if (entry.contains(upper_key))
      spec->upper = require_number(entry, upper_key, "fit.free") * unit.scale;
  }
  cfg.validate();
}

// ===== output plumbing =====

std::string resolve_output(const std::string& out_dir, const std::string& name) {
  fs::path p(name);
  if (p.is_absolute()) return p.string();
  fs::create_directories(out_dir);
  return (fs::path(out_dir) / p).string();
}

json provenance_block(const std::string& command, const json& config,
                      const std::vector<std::string>& data_files, std::uint64_t seed,
                      bool seeded) {
  json prov;
  prov["schema_version"] = "1";
  prov["command"] = command;
  prov["config"] = config;
  if (!data_files.empty()) prov["data_files"] = data_files;
  if (seeded) prov["seed"] = seed;
  return prov;
}

void write_spectrum_with_provenance(const std::string& path, const fit::Spectrum& spec,
                                    const json& provenance) {
  std::ostringstream out;
  out << "# " << provenance.dump() << '\n';
  out << "freq_hz,re_s21,im_s21,mag_db\n";
  for (std::size_t i = 0; i < spec.f_grid_hz.size(); ++i) {
    const ComplexS21 s{spec.s21[i]};
    out << io::format_sig12(spec.f_grid_hz[i]) << ',' << io::format_sig12(s.re()) << ','
        << io::format_sig12(s.im()) << ',' << io::format_sig12(db_magnitude(s)) << '\n';
  }
  io::atomic_write_text(path, out.str());
}

// ===== subcommands =====

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> data_paths;
  std::string out_dir = ".";
  std::size_t threads = 1;
  std::uint64_t seed = 0;
};

int cmd_simulate_circuit(const CommonArgs& args) {
  const json config = load_config(args.config_path);
  check_keys(config, {"schema_version", "circuit", "f_grid", "noise", "output"},
             "config");
  const auto model = parse_circuit(config);
  const auto f_grid = parse_grid(config, "f_grid", "start_ghz", "stop_ghz", 1e9, "config");
  const double sigma = parse_noise_sigma(config);

  fit::Spectrum spec;
  spec.f_grid_hz = f_grid;
  const auto values = circuit::s21_sweep(model, f_grid, args.threads);
  spec.s21.reserve(values.size());
  for (const auto& v : values) spec.s21.push_back(v.value);

  if (sigma > 0.0) {
    std::mt19937_64 rng(args.seed);
    std::normal_distribution<double> noise(0.0, sigma);
    for (auto& s : spec.s21) s += std::complex<double>(noise(rng), noise(rng));
  }

  const std::string path = resolve_output(
      args.out_dir, optional_string(config, "output", "spectrum.csv", "config"));
  write_spectrum_with_provenance(
      path, spec,
      provenance_block("simulate-circuit", config, {}, args.seed, sigma > 0.0));
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_simulate_hybrid(const CommonArgs& args) {
  const json config = load_config(args.config_path);
  check_keys(config,
             {"schema_version", "hybrid", "h_grid", "f_grid", "angle_deg", "noise",
              "output"},
             "config");
  const auto params = parse_hybrid(config);
  const auto h_grid = parse_grid(config, "h_grid", "start_oe", "stop_oe", 1.0, "config");
  const auto f_grid = parse_grid(config, "f_grid", "start_ghz", "stop_ghz", 1e9, "config");
  const double sigma = parse_noise_sigma(config);

  auto map = hybrid::field_sweep(params, h_grid, f_grid, args.threads);
  map.angle = Angle(optional_number(config, "angle_deg", 0.0, "config"));
  map.provenance =
      provenance_block("simulate-hybrid", config, {}, args.seed, sigma > 0.0).dump();

  if (sigma > 0.0) {
    std::mt19937_64 rng(args.seed);
    std::normal_distribution<double> noise(0.0, sigma);
    for (double& v : map.values) v = std::max(v + noise(rng), 1e-12);
  }

  const std::string path = resolve_output(
      args.out_dir, optional_string(config, "output", "map.grid", "config"));
  io::write_grid_file(path, map);
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_fit_circuit(const CommonArgs& args) {
  const json config = load_config(args.config_path);
  check_keys(config,
             {"schema_version", "circuit", "fit", "output_result", "output_overlay"},
             "config");
  if (args.data_paths.empty())
    throw ConfigError("fit-circuit needs at least one --data file");

  std::vector<fit::Spectrum> spectra;
  for (const auto& p : args.data_paths)
    spectra.push_back(io::load_spectrum(io::describe_data_file(p)));

  fit::FitConfig cfg = fit::circuit_fit_config(parse_circuit(config), {});
  apply_fit_block(config, cfg, false);

  const fit::FitResult result = fit::fit_circuit(spectra, cfg);

  json doc = io::fit_result_to_json(result);
  doc["provenance"] =
      provenance_block("fit-circuit", config, args.data_paths, args.seed, false);
  const std::string result_path = resolve_output(
      args.out_dir, optional_string(config, "output_result", "fit_result.json", "config"));
  io::write_json_file(result_path, doc);

  // Model-vs-data overlay across all ingested points, in file order.
  const auto fitted = fit::circuit_from_params(result.params);
  std::ostringstream overlay;
  overlay << "# " << doc["provenance"].dump() << '\n';
  overlay << "freq_hz,mag_data,mag_model,residual\n";
  for (const auto& s : spectra)
    for (std::size_t i = 0; i < s.f_grid_hz.size(); ++i) {
      const double data = s.magnitude(i);
      const double model =
          circuit::s21_circuit(fitted, Frequency(s.f_grid_hz[i])).magnitude();
      overlay << io::format_sig12(s.f_grid_hz[i]) << ',' << io::format_sig12(data) << ','
              << io::format_sig12(model) << ',' << io::format_sig12(model - data) << '\n';
    }
  const std::string overlay_path = resolve_output(
      args.out_dir,
      optional_string(config, "output_overlay", "fit_overlay.csv", "config"));
  io::atomic_write_text(overlay_path, overlay.str());

  std::cout << "wrote " << result_path << " and " << overlay_path << "\n";
  if (!result.converged) {
    std::cerr << "fit did not converge: " << result.status << "\n";
    return 5;
  }
  return 0;
}

int cmd_fit_hybrid(const CommonArgs& args) {
  const json config = load_config(args.config_path);
  check_keys(config, {"schema_version", "hybrid", "angle_deg", "fit", "output_result"},
             "config");
  if (args.data_paths.size() != 1)
    throw ConfigError("fit-hybrid needs exactly one --data grid file");

  const auto map = io::load_grid_file(args.data_paths[0]);
  const auto initial = parse_hybrid(config);

  fit::FitConfig cfg = fit::hybrid_fit_config(initial, {});
  apply_fit_block(config, cfg, true);

  const fit::FitResult result = fit::fit_hybrid(map, initial, cfg);

  json doc = io::fit_result_to_json(result);
  doc["provenance"] =
      provenance_block("fit-hybrid", config, args.data_paths, args.seed, false);

  // Cooperativities from the fitted couplings and the fixed mode linewidths.
  const auto& modes = initial.modes;
  const DampingRate k1(modes.photon1.beta.hz() + modes.photon1.gamma.hz());
  const DampingRate k2(modes.photon2.beta.hz() + modes.photon2.gamma.hz());
  const DampingRate gm(modes.magnon.beta.hz() + modes.magnon.gamma.hz());
  json derived;
  derived["cooperativity_c1"] =
      polarization::cooperativity(result.value("couplings.g31"), k1, gm);
  derived["cooperativity_c2"] =
      polarization::cooperativity(result.value("couplings.g23"), k2, gm);
  doc["derived"] = derived;

  const std::string result_path = resolve_output(
      args.out_dir, optional_string(config, "output_result", "fit_result.json", "config"));
  io::write_json_file(result_path, doc);
  std::cout << "wrote " << result_path << "\n";
  if (!result.converged) {
    std::cerr << "fit did not converge: " << result.status << "\n";
    return 5;
  }
  return 0;
}

int cmd_polarization_report(const CommonArgs& args) {
  const json config = load_config(args.config_path);
  check_keys(config,
             {"schema_version", "angular", "theta_grid", "delta_grid", "output_report",
              "output_map"},
             "config");

  const json& angular = require_object(config, "angular", "config");
  check_keys(angular, {"gamma1_max_mhz", "gamma2_max_mhz"}, "angular");
  const polarization::AngularCouplingModel model{
      DampingRate(require_number(angular, "gamma1_max_mhz", "angular") * 1e6),
      DampingRate(require_number(angular, "gamma2_max_mhz", "angular") * 1e6)};

  const auto theta_grid =
      parse_grid(config, "theta_grid", "start_deg", "stop_deg", 1.0, "config");
  const auto delta_grid = parse_grid(config, "delta_grid", "start", "stop", 1.0, "config");

  const double delta = model.delta();
  const auto [theta_c1, theta_c2] = polarization::critical_angles(delta);

  json report;
  report["schema_version"] = "1";
  report["kind"] = "polarization_report";
  report["delta"] = delta;
  report["critical_angles_deg"] = {theta_c1.degrees(), theta_c2.degrees()};
  json theta_deg = json::array(), gamma1_hz = json::array(), gamma2_hz = json::array(),
       phi = json::array();
  bool extrapolated = false;
  for (double t : theta_grid) {
    const auto [g1, g2] = polarization::gamma_of_angle(model, Angle(t));
    theta_deg.push_back(t);
    gamma1_hz.push_back(g1.hz());
    gamma2_hz.push_back(g2.hz());
    phi.push_back(polarization::order_parameter(model, Angle(t)));
    if (t < 0.0 || t > 90.0) extrapolated = true;
  }
  report["theta_deg"] = theta_deg;
  report["gamma1_hz"] = gamma1_hz;
  report["gamma2_hz"] = gamma2_hz;
  report["phi"] = phi;
  if (extrapolated)
    report["note"] =
        "angles outside the characterized 0-90 deg range follow the trigonometric "
        "model (extrapolation)";
  report["provenance"] =
      provenance_block("polarization-report", config, {}, args.seed, false);

  const std::string report_path = resolve_output(
      args.out_dir,
      optional_string(config, "output_report", "polarization.json", "config"));
  io::write_json_file(report_path, report);

  const auto map = polarization::transition_map(theta_grid, delta_grid);
  json header;
  header["schema_version"] = "1";
  header["kind"] = "transition_map";
  header["values"] = "phi";
  header["theta_deg"] = map.theta_grid_deg;
  header["delta"] = map.delta_grid;
  json contour = json::array();
  for (const auto& [t, d] : map.zero_contour) contour.push_back({t, d});
  header["zero_contour"] = contour;

  std::ostringstream out;
  out << header.dump() << '\n';
  for (std::size_t r = 0; r < map.delta_grid.size(); ++r) {
    for (std::size_t j = 0; j < map.theta_grid_deg.size(); ++j) {
      if (j) out << ',';
      out << io::format_sig12(map.at(r, j));
    }
    out << '\n';
  }
  const std::string map_path = resolve_output(
      args.out_dir, optional_string(config, "output_map", "transition_map.grid", "config"));
  io::atomic_write_text(map_path, out.str());

  std::cout << "wrote " << report_path << " and " << map_path << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Planar cavity-magnonic transmission: simulation and fitting"};
  app.require_subcommand(1);

  CommonArgs args;
  int (*handler)(const CommonArgs&) = nullptr;

  auto add_common = [&](CLI::App* sub, bool with_data) {
    sub->add_option("--config", args.config_path, "JSON run configuration")
        ->required();
    if (with_data)
      sub->add_option("--data", args.data_paths, "input data file (repeatable)");
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--threads", args.threads, "evaluation threads")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", args.seed, "random seed for noise injection");
  };

  auto* sim_circuit =
      app.add_subcommand("simulate-circuit", "evaluate the circuit model over a grid");
  add_common(sim_circuit, false);
  sim_circuit->callback([&] { handler = cmd_simulate_circuit; });

  auto* sim_hybrid = app.add_subcommand("simulate-hybrid",
                                        "evaluate the three-mode model over a field sweep");
  add_common(sim_hybrid, false);
  sim_hybrid->callback([&] { handler = cmd_simulate_hybrid; });

  auto* fitc =
      app.add_subcommand("fit-circuit", "fit circuit parameters to measured spectra");
  add_common(fitc, true);
  fitc->callback([&] { handler = cmd_fit_circuit; });

  auto* fith = app.add_subcommand("fit-hybrid",
                                  "fit coupling strengths to a field sweep map");
  add_common(fith, true);
  fith->callback([&] { handler = cmd_fit_hybrid; });

  auto* pol = app.add_subcommand("polarization-report",
                                 "angular damping projection and transition map");
  add_common(pol, false);
  pol->callback([&] { handler = cmd_polarization_report; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return handler(args);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const SingularityError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cavmag::cli
