#include <benchmark/benchmark.h>

#include "svagen/equiv.hpp"
#include "svagen/parser.hpp"

namespace {

svagen::AssertionUnit unit(const char* text) { return *svagen::parse(text).unit; }

// Enumeration sizes from 2^6 up to 2^21 traces; S and L are reported as counters.
struct Case {
  const char* gen;
  const char* ref;
};
constexpr Case kCases[] = {
    {"@(posedge clk) a |=> b", "@(posedge clk) a |-> ##1 b"},
    {"@(posedge clk) a ##[1:2] b |-> c", "@(posedge clk) a ##1 b |-> c"},
    {"@(posedge clk) a[*2] ##1 b |=> c until d", "@(posedge clk) a ##1 a ##1 b |=> c until d"},
    {"@(posedge clk) disable iff (rst) $rose(a) |-> ##[0:2] b && c",
     "@(posedge clk) disable iff (rst) $rose(a) |-> b && c or ##1 b && c"},
    {"@(posedge clk) a ##1 b |-> ##[1:4] c", "@(posedge clk) a ##1 b |-> ##[1:3] c"},
};

template <bool Parallel>
void BM_check_relation(benchmark::State& state) {
  const Case& c = kCases[state.range(0)];
  const auto g = unit(c.gen);
  const auto r = unit(c.ref);
  svagen::equiv::RelationResult res;
  for (auto _ : state) {
    res = Parallel ? svagen::equiv::check_relation(g, r) : svagen::equiv::check_relation_serial(g, r);
    benchmark::DoNotOptimize(res);
  }
  state.counters["S"] = res.signal_count();
  state.counters["L"] = res.length;
  state.counters["traces/s"] = benchmark::Counter(static_cast<double>(std::uint64_t{1} << (res.signal_count() * res.length)),
                                                  benchmark::Counter::kIsIterationInvariantRate);
}

}  // namespace

BENCHMARK(BM_check_relation<false>)->Name("serial")->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_check_relation<true>)->Name("parallel")->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
