#include "mte/align.hpp"
#include "mte/msd.hpp"
#include "mte/spec.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace {

const mte::Specification& spec() {
    static mte::Specification s =
        mte::load_spec_file(std::string(MTE_FIXTURE_DIR) + "/fixture.spec",
                            mte::SpecFormat::tabular);
    return s;
}

std::vector<std::string> sample_msds(size_t count) {
    const mte::LanguageSection* sl = spec().section("sl");
    std::mt19937 rng(7);
    std::vector<std::string> out;
    while (out.size() < count) {
        for (const auto& table : sl->tables) {
            mte::FeatureStructure fs;
            fs.language = "sl";
            fs.category_code = table.category_code;
            for (const auto& attr : table.attributes) {
                std::uniform_int_distribution<size_t> pick(0, attr.values.size());
                size_t i = pick(rng);
                if (i > 0) fs.assignments[attr.name] = attr.values[i - 1].name;
            }
            out.push_back(mte::encode(fs, spec(), mte::Ordering::particular).text);
            if (out.size() == count) break;
        }
    }
    return out;
}

void bm_decode(benchmark::State& state) {
    auto msds = sample_msds(256);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mte::decode(
            mte::Msd{msds[i++ % msds.size()], "sl", mte::Ordering::particular, false},
            spec()));
    }
}
BENCHMARK(bm_decode);

void bm_encode(benchmark::State& state) {
    auto msds = sample_msds(256);
    std::vector<mte::FeatureStructure> structures;
    for (const auto& m : msds)
        structures.push_back(
            mte::decode(mte::Msd{m, "sl", mte::Ordering::particular, false}, spec()));
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            mte::encode(structures[i++ % structures.size()], spec(),
                        mte::Ordering::particular));
    }
}
BENCHMARK(bm_encode);

void bm_collation_sort(benchmark::State& state) {
    auto msds = sample_msds(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        auto copy = msds;
        std::sort(copy.begin(), copy.end(), [](const std::string& a, const std::string& b) {
            return mte::collation_key(mte::Msd{a, "sl", mte::Ordering::particular, false},
                                      spec()) <
                   mte::collation_key(mte::Msd{b, "sl", mte::Ordering::particular, false},
                                      spec());
        });
        benchmark::DoNotOptimize(copy);
    }
}
BENCHMARK(bm_collation_sort)->Arg(64)->Arg(512);

void bm_compose(benchmark::State& state) {
    const int hub = static_cast<int>(state.range(0));
    auto make = [&](const std::string& doc) {
        mte::AlignmentGroup g;
        g.documents = {"hub.xml", doc};
        for (int i = 1; i <= hub; ++i) {
            mte::AlignmentLink link;
            link.targets = {{"h." + std::to_string(i)}, {doc + "." + std::to_string(i)}};
            g.links.push_back(std::move(link));
        }
        return g;
    };
    mte::AlignmentGroup a = make("x.xml"), b = make("y.xml");
    for (auto _ : state) benchmark::DoNotOptimize(mte::compose(a, b));
}
BENCHMARK(bm_compose)->Arg(100)->Arg(1000);

} // namespace

BENCHMARK_MAIN();
