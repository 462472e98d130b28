#include <benchmark/benchmark.h>

#include "botdrift/corpus.hpp"
#include "botdrift/features.hpp"
#include "botdrift/relations.hpp"
#include "botdrift/sentiment.hpp"
#include "botdrift/synth.hpp"

using namespace botdrift;

namespace {

// Roughly 20k tweets spread over the default twelve years.
const corpus::Corpus& sample_corpus() {
    static const corpus::Corpus c = [] {
        synth::SynthSpec s;
        s.seed = 17;
        s.accounts_per_generation = 60;
        s.tweeting = {800.0, 20.0, 5.0};
        s.retweeting = {500.0, 10.0, 5.0};
        s.replying = {200.0, 5.0, 2.0};
        return corpus::make_corpus(synth::generate(s));
    }();
    return c;
}

const std::vector<features::FeatureVector>& sample_vectors() {
    static const auto v = features::extract_features(sample_corpus(), sentiment::Lexicon::bundled());
    return v;
}

void BM_ExtractFeatures(benchmark::State& state) {
    const auto& c = sample_corpus();
    const auto threads = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            features::extract_features(c, sentiment::Lexicon::bundled(), {}, threads));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.records.size()));
}
BENCHMARK(BM_ExtractFeatures)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DependencyAnalysis(benchmark::State& state) {
    const auto& v = sample_vectors();
    for (auto _ : state) benchmark::DoNotOptimize(relations::dependency_analysis(v));
}
BENCHMARK(BM_DependencyAnalysis)->Unit(benchmark::kMillisecond);

void BM_CategoryMatrix(benchmark::State& state) {
    const auto& v = sample_vectors();
    const auto gens = relations::tweet_generations(sample_corpus());
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            relations::build_category_matrix(v, gens, corpus::Generation::G2));
    }
}
BENCHMARK(BM_CategoryMatrix)->Unit(benchmark::kMillisecond);

}  // namespace
