// vlcsim: link-level experiments for quad/dual-LED complex modulation.
//
// Each subcommand reads one sectioned key=value config, runs an experiment,
// and writes CSV artifacts named <command>_<scheme>_<modulation>.csv into
// the output directory.  Exit codes: 0 success, 2 config error, 3 runtime
// error.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "vlcm/analysis.hpp"
#include "vlcm/config.hpp"
#include "vlcm/csv.hpp"
#include "vlcm/montecarlo.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
};

vlcm::ExperimentConfig load_config(const CommonArgs& args) {
  vlcm::ExperimentConfig cfg = args.config_path.empty()
                                   ? vlcm::ExperimentConfig{}
                                   : vlcm::parse_config_file(args.config_path);
  if (args.seed) cfg.master_seed = *args.seed;
  if (args.workers) cfg.workers = *args.workers;
  return cfg;
}

std::string artifact_path(const CommonArgs& args, const std::string& command,
                          const std::string& scheme, const std::string& modulation) {
  std::filesystem::create_directories(args.out_dir);
  return (std::filesystem::path(args.out_dir) /
          (command + "_" + scheme + "_" + modulation + ".csv"))
      .string();
}

void require_map_scheme(const vlcm::ExperimentConfig& cfg) {
  const vlcm::Scheme scheme = vlcm::config_scheme(cfg);
  if (scheme == vlcm::Scheme::QcmPr)
    throw vlcm::ConfigError(0, "spatial maps support qcm, dcm, and sm-dcm");
}

int run_ber_curve(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const auto spec = vlcm::to_sim_spec(cfg);
  const vlcm::BerCurve curve = vlcm::simulate_ber(spec);
  const std::string path = artifact_path(args, "ber-curve", cfg.scheme, cfg.modulation);
  vlcm::write_ber_curve_csv(path, curve);
  std::cout << "ber-curve: wrote " << path << " (" << curve.points.size()
            << " points)\n";
  return 0;
}

int run_bound_curve(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const auto spec = vlcm::to_sim_spec(cfg);
  const vlcm::TransceiverLayout layout = vlcm::build_layout(spec.channel, spec.scheme);
  const vlcm::ChannelMatrix H = vlcm::build_channel_matrix(layout);
  const vlcm::SignalSet set =
      vlcm::enumerate_signal_set(spec.scheme, spec.alphabet, spec.rotation_rad);
  const vlcm::BoundCurve curve = vlcm::bound_curve(set, H, cfg.eb_n0_grid_db);
  const std::string path = artifact_path(args, "bound-curve", cfg.scheme, cfg.modulation);
  vlcm::write_bound_curve_csv(path, curve);
  std::cout << "bound-curve: wrote " << path << " (" << curve.points.size()
            << " points)\n";
  return 0;
}

int run_sweep_dtx(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const auto spec = vlcm::to_sim_spec(cfg);
  const auto sweep = vlcm::sweep_dtx(spec, cfg.eb_n0_db, cfg.d_tx_list_m);
  const std::string path = artifact_path(args, "sweep-dtx", cfg.scheme, cfg.modulation);
  vlcm::write_sweep_csv(path, "d_tx_m", sweep);
  std::cout << "sweep-dtx: wrote " << path << " (" << sweep.size() << " spacings)\n";
  return 0;
}

int run_sweep_rotation(const CommonArgs& args) {
  const auto cfg = load_config(args);
  if (vlcm::config_scheme(cfg) != vlcm::Scheme::QcmPr)
    throw vlcm::ConfigError(0, "sweep-rotation requires scheme = qcm-pr");
  const auto spec = vlcm::to_sim_spec(cfg);
  const auto sweep = vlcm::sweep_rotation(spec, cfg.eb_n0_db, cfg.theta_list_deg);
  const std::string path =
      artifact_path(args, "sweep-rotation", cfg.scheme, cfg.modulation);
  vlcm::write_sweep_csv(path, "theta_deg", sweep);
  std::cout << "sweep-rotation: wrote " << path << " (" << sweep.size()
            << " angles)\n";
  return 0;
}

int run_ofdm_ber(const CommonArgs& args) {
  const auto cfg = load_config(args);
  const vlcm::Scheme scheme = vlcm::config_scheme(cfg);
  if (scheme != vlcm::Scheme::Qcm && scheme != vlcm::Scheme::Dcm)
    throw vlcm::ConfigError(0, "ofdm-ber requires scheme = qcm or dcm");
  const auto spec = vlcm::to_sim_spec(cfg, /*with_ofdm=*/true);
  const vlcm::BerCurve curve = vlcm::simulate_ber(spec);
  const std::string path =
      artifact_path(args, "ofdm-ber", cfg.scheme + "-ofdm", cfg.modulation);
  vlcm::write_ber_curve_csv(path, curve);
  std::cout << "ofdm-ber: wrote " << path << " (" << curve.points.size()
            << " points, " << cfg.ofdm_detector << " detector)\n";
  return 0;
}

int run_placement_metrics(const CommonArgs& args) {
  const auto cfg = load_config(args);
  if (vlcm::config_scheme(cfg) != vlcm::Scheme::SmDcm)
    throw vlcm::ConfigError(0, "placement-metrics requires scheme = sm-dcm");
  const vlcm::ComplexAlphabet alphabet = vlcm::make_alphabet(cfg.modulation);
  const vlcm::SignalSet set = vlcm::enumerate_signal_set(vlcm::Scheme::SmDcm, alphabet);

  std::vector<vlcm::PlacementMetricsRow> rows;
  for (const auto& [kind, name] :
       {std::pair{vlcm::PlacementKind::SmdcmP1, std::string("p1")},
        std::pair{vlcm::PlacementKind::SmdcmP2, std::string("p2")}}) {
    vlcm::ChannelSpec chan = vlcm::to_channel_spec(cfg);
    chan.placement = kind;
    const vlcm::TransceiverLayout layout = vlcm::build_layout(chan, vlcm::Scheme::SmDcm);
    const vlcm::ChannelMatrix H = vlcm::build_channel_matrix(layout);
    const auto [d_min, d_avg] = vlcm::dmin_davg(set, H);
    rows.push_back({name, cfg.modulation, d_min, d_avg});
  }
  const std::string path =
      artifact_path(args, "placement-metrics", cfg.scheme, cfg.modulation);
  vlcm::write_placement_metrics_csv(path, rows);
  std::cout << "placement-metrics: wrote " << path << " (" << rows.size()
            << " rows)\n";
  return 0;
}

int run_snr_map(const CommonArgs& args) {
  const auto cfg = load_config(args);
  require_map_scheme(cfg);
  const vlcm::MapSpec spec = vlcm::to_map_spec(cfg);
  const vlcm::RateMap map =
      vlcm::snr_map(spec, vlcm::config_scheme(cfg),
                    vlcm::make_alphabet(cfg.snr_reference_modulation), cfg.workers);
  const std::string path = artifact_path(args, "snr-map", cfg.scheme, cfg.modulation);
  vlcm::write_gamma_map_csv(path, map);
  std::cout << "snr-map: wrote " << path << " (" << map.nx << "x" << map.ny
            << " grid)\n";
  return 0;
}

int run_rate_contour(const CommonArgs& args) {
  const auto cfg = load_config(args);
  require_map_scheme(cfg);
  const vlcm::MapSpec spec = vlcm::to_map_spec(cfg);
  const vlcm::Scheme scheme = vlcm::config_scheme(cfg);
  const vlcm::RateMap gamma = vlcm::snr_map(
      spec, scheme, vlcm::make_alphabet(cfg.snr_reference_modulation), cfg.workers);
  const vlcm::RateMap rates =
      vlcm::rate_contours(gamma, spec, scheme, cfg.target_ber, cfg.workers);
  const std::string path =
      artifact_path(args, "rate-contour", cfg.scheme, cfg.modulation);
  vlcm::write_rate_map_csv(path, rates);
  std::cout << "rate-contour: wrote " << path << " (" << rates.nx << "x"
            << rates.ny << " grid)\n";
  return 0;
}

int run_coverage(const CommonArgs& args) {
  const auto cfg = load_config(args);
  require_map_scheme(cfg);
  const vlcm::MapSpec spec = vlcm::to_map_spec(cfg);
  const vlcm::Scheme scheme = vlcm::config_scheme(cfg);
  const vlcm::RateMap gamma = vlcm::snr_map(
      spec, scheme, vlcm::make_alphabet(cfg.snr_reference_modulation), cfg.workers);
  const vlcm::RateMap rates =
      vlcm::rate_contours(gamma, spec, scheme, cfg.target_ber, cfg.workers);
  std::vector<std::pair<int, double>> rows;
  for (int eta = 0; eta <= 7; ++eta)
    rows.emplace_back(eta, vlcm::coverage_percentage(rates, eta));
  const std::string path = artifact_path(args, "coverage", cfg.scheme, cfg.modulation);
  vlcm::write_coverage_csv(path, rows);
  std::cout << "coverage: wrote " << path << " (" << rows.size() << " rows)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indoor VLC complex-modulation link simulator"};
  app.require_subcommand(1);

  CommonArgs args;
  const auto add_common = [&args](CLI::App* cmd) {
    cmd->add_option("--config", args.config_path, "Experiment config file")
        ->envname("VLCSIM_CONFIG");
    cmd->add_option("--out", args.out_dir, "Output directory")
        ->envname("VLCSIM_OUT");
    cmd->add_option("--seed", args.seed, "Master seed override")
        ->envname("VLCSIM_SEED");
    cmd->add_option("--workers", args.workers, "Worker thread count override")
        ->envname("VLCSIM_WORKERS");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const CommonArgs&);
  };
  const Command commands[] = {
      {"ber-curve", "Simulated BER versus Eb/N0", run_ber_curve},
      {"bound-curve", "Analytical union-bound BER versus Eb/N0", run_bound_curve},
      {"sweep-dtx", "Simulated BER versus LED spacing", run_sweep_dtx},
      {"sweep-rotation", "Simulated BER versus QCM-PR rotation angle",
       run_sweep_rotation},
      {"ofdm-ber", "Simulated OFDM BER versus Eb/N0 (ZF or MD detector)",
       run_ofdm_ber},
      {"placement-metrics", "Channel-space distance metrics for the SM-DCM placements",
       run_placement_metrics},
      {"snr-map", "Spatial map of average received SNR", run_snr_map},
      {"rate-contour", "Spatial map of the highest rate meeting the BER target",
       run_rate_contour},
      {"coverage", "Room coverage percentage per rate", run_coverage},
  };

  int (*selected)(const CommonArgs&) = nullptr;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    sub->callback([&selected, &c] { selected = c.run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return selected(args);
  } catch (const vlcm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
