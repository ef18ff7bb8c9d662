#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "mbcast/backbone.hpp"
#include "mbcast/netgen.hpp"
#include "mbcast/protocols.hpp"
#include "mbcast/selectors.hpp"

using namespace mbc;

namespace {

NetworkInstance bench_net(uint32_t n) {
  SinrParams p;
  return gen_random(n, 0.33 * std::sqrt(double(n)), p.range() / 10, 42, p);
}

void BM_reception_oracle(benchmark::State& state) {
  SinrParams p;
  auto net = bench_net(state.range(0));
  TransmissionSet tx;
  for (size_t i = 0; i < net.stations.size(); i += 7) tx.push_back(net.stations[i].id);
  for (auto _ : state)
    for (const auto& st : net.stations)
      benchmark::DoNotOptimize(receives(tx[0], st.id, tx, net, p));
}
BENCHMARK(BM_reception_oracle)->Arg(50)->Arg(200);

void BM_metrics(benchmark::State& state) {
  SinrParams p;
  auto net = bench_net(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_metrics(net, p));
}
BENCHMARK(BM_metrics)->Arg(50)->Arg(200);

void BM_backbone(benchmark::State& state) {
  SinrParams p;
  auto net = bench_net(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_backbone(net, p));
}
BENCHMARK(BM_backbone)->Arg(50)->Arg(200);

void BM_ssf_build(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_ssf(64, state.range(0)));
}
BENCHMARK(BM_ssf_build)->Arg(4)->Arg(8);

void BM_engine_round_throughput(benchmark::State& state) {
  SinrParams p;
  auto net = bench_net(state.range(0));
  std::map<StationId, std::vector<uint32_t>> src{{net.stations[0].id, {1}}};
  EngineOptions opt;
  opt.record_trace = false;
  uint64_t rounds = 0;
  for (auto _ : state) {
    auto res = run_protocol(net, p, general_multicast(), src, opt);
    rounds += res.rounds;
    benchmark::DoNotOptimize(res.completed);
  }
  state.counters["rounds/s"] =
      benchmark::Counter(double(rounds), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_engine_round_throughput)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
