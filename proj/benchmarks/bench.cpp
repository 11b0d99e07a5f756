#include <benchmark/benchmark.h>

#include "vlcm/analysis.hpp"
#include "vlcm/config.hpp"
#include "vlcm/detection.hpp"
#include "vlcm/montecarlo.hpp"
#include "vlcm/ofdm.hpp"
#include "vlcm/rng.hpp"

using namespace vlcm;

namespace {

ChannelMatrix reference_channel(Scheme scheme) {
  ChannelSpec chan;
  return build_channel_matrix(build_layout(chan, scheme));
}

void BM_LosGain(benchmark::State& state) {
  const auto led = Luminaire::make({2.5, 2.5, 3.0}, {0, 0, -1}, 60.0);
  Detector pd;
  pd.position = {1.75, 3.25, 0.8};
  for (auto _ : state) benchmark::DoNotOptimize(los_gain(led, pd));
}
BENCHMARK(BM_LosGain);

void BM_BuildChannelMatrix(benchmark::State& state) {
  ChannelSpec chan;
  const TransceiverLayout layout = build_layout(chan, Scheme::Qcm);
  for (auto _ : state) benchmark::DoNotOptimize(build_channel_matrix(layout));
}
BENCHMARK(BM_BuildChannelMatrix);

void BM_MlDetect(benchmark::State& state) {
  const ChannelMatrix H = reference_channel(Scheme::Qcm);
  const auto set = enumerate_signal_set(
      Scheme::Qcm, make_alphabet(AlphabetFamily::Qam, unsigned(state.range(0))));
  const MlDetector detector(H, set);
  RngStream rng(1);
  Eigen::VectorXd y(4);
  for (int i = 0; i < 4; ++i) y(i) = 1e-5 * rng.next_gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(detector.detect(y));
}
BENCHMARK(BM_MlDetect)->Arg(4)->Arg(16)->Arg(64);

void BM_UnionBound(benchmark::State& state) {
  const ChannelMatrix H = reference_channel(Scheme::Qcm);
  const auto set = enumerate_signal_set(
      Scheme::Qcm, make_alphabet(AlphabetFamily::Qam, unsigned(state.range(0))));
  const double sigma = sigma_for_ebn0_db(40.0, H, set);
  for (auto _ : state) benchmark::DoNotOptimize(union_bound_ber(set, H, sigma));
}
BENCHMARK(BM_UnionBound)->Arg(4)->Arg(16)->Arg(64);

void BM_MdDetectBatch(benchmark::State& state) {
  const ChannelMatrix H = reference_channel(Scheme::Qcm);
  OfdmConfig cfg;
  cfg.n_subcarriers = unsigned(state.range(0));
  cfg.alphabet = make_alphabet(AlphabetFamily::Qam, 4);
  cfg.scheme = OfdmScheme::QcmOfdm;
  const MdDetector md(H, cfg);
  RngStream rng(2);
  Eigen::MatrixXd Ys(4 * cfg.n_subcarriers, 64);
  for (Eigen::Index i = 0; i < Ys.size(); ++i)
    Ys(i % Ys.rows(), i / Ys.rows()) = 1e-5 * rng.next_gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(md.detect_flat(Ys));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_MdDetectBatch)->Arg(4)->Arg(8);

void BM_QcmOfdmZfFrame(benchmark::State& state) {
  const ChannelMatrix H = reference_channel(Scheme::Qcm);
  const auto alphabet = make_alphabet(AlphabetFamily::Qam, 4);
  RngStream rng(3);
  Eigen::VectorXcd v(8);
  for (int n = 0; n < 8; ++n) v(n) = alphabet.points[rng.next_bits(2)];
  const Eigen::MatrixXd Y = H.responsivity_a * (H.entries * qcm_ofdm_transmit(v));
  for (auto _ : state) benchmark::DoNotOptimize(qcm_ofdm_zf_detect(Y, H, alphabet));
}
BENCHMARK(BM_QcmOfdmZfFrame);

void BM_SnrMapCoarse(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.d_tx_m = 2.0;
  cfg.resolution_m = 0.5;
  const MapSpec spec = to_map_spec(cfg);
  const auto alphabet = make_alphabet("qam-16");
  for (auto _ : state)
    benchmark::DoNotOptimize(snr_map(spec, Scheme::Qcm, alphabet, 1));
}
BENCHMARK(BM_SnrMapCoarse);

}  // namespace

BENCHMARK_MAIN();
