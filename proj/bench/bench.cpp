// Serial reference versus OpenMP paths for the realizability checker and the campaign.
#include <benchmark/benchmark.h>

#include <random>

#include "bqc/campaign.hpp"
#include "bqc/extraction.hpp"
#include "bqc/semantics.hpp"
#include "support/derivations.hpp"

using namespace bqc;

namespace {

void BM_pair_roundtrip_native(benchmark::State& st) {
    std::uint64_t a = 12345, b = 0;
    for (auto _ : st) {
        std::uint64_t x, y;
        unpair_u64(pair_u64(a, b++ & 0xffff), x, y);
        benchmark::DoNotOptimize(x + y);
    }
}
BENCHMARK(BM_pair_roundtrip_native);

void BM_pair_roundtrip_big(benchmark::State& st) {
    Nat a = Nat(1) << st.range(0), b = a + 17;
    for (auto _ : st) benchmark::DoNotOptimize(unpair(pair(a, b)));
}
BENCHMARK(BM_pair_roundtrip_big)->Arg(16)->Arg(64)->Arg(1024);

// A rank-0 sequent with two variables over a wide domain: many independent obligations.
struct CheckFixture {
    Derivation d = samples::get("rename_free").d;
    VarList rs = canonical_list(d.conclusion);
    Nat e = extract(d, rs).code;
    Evaluation f;

    explicit CheckFixture(std::size_t domain) {
        std::mt19937_64 rng(5);
        RandomEvaluationOptions eo;
        eo.min_domain = eo.max_domain = domain;
        eo.domain_limit = domain * 2;
        f = random_evaluation(samples::signature(), rng, eo);
    }
};

void run_check(benchmark::State& st, bool parallel) {
    CheckFixture fx(static_cast<std::size_t>(st.range(0)));
    CheckOptions opt;
    opt.parallel = parallel;
    for (auto _ : st) {
        Verdict v = check_sequent(fx.e, fx.d.conclusion, fx.rs, fx.f, opt);
        if (!v.holds()) st.SkipWithError("realizer did not hold");
        benchmark::DoNotOptimize(v);
    }
}
void BM_check_serial(benchmark::State& st) { run_check(st, false); }
void BM_check_parallel(benchmark::State& st) { run_check(st, true); }
BENCHMARK(BM_check_serial)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_check_parallel)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

std::vector<CampaignInput> corpus() {
    std::vector<CampaignInput> in;
    for (auto& s : samples::all()) in.push_back({s.name, samples::signature(), s.d});
    return in;
}

void BM_campaign_serial(benchmark::State& st) {
    auto in = corpus();
    CampaignOptions opt;
    opt.trials = 10;
    for (auto _ : st) benchmark::DoNotOptimize(run_campaign_serial(in, opt));
}
void BM_campaign_parallel(benchmark::State& st) {
    auto in = corpus();
    CampaignOptions opt;
    opt.trials = 10;
    opt.parallel = true;
    for (auto _ : st) benchmark::DoNotOptimize(run_campaign(in, opt));
}
BENCHMARK(BM_campaign_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_campaign_parallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
