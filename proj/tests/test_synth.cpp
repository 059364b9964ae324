#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "rankrobust/error.hpp"
#include "rankrobust/ingest.hpp"
#include "rankrobust/metrics.hpp"
#include "rankrobust/pairs.hpp"
#include "rankrobust/rng.hpp"
#include "rankrobust/synth.hpp"
#include "rankrobust/taxonomy.hpp"
#include "support.hpp"

using namespace rankrobust;
using namespace rankrobust::synth;
using taxonomy::Label;
using testing_support::L;

namespace {

const auto& cfg() {
    static const auto c = normalize::NormalizationConfig::defaults();
    return c;
}

PerturbationSpec spec(PerturbKind kind, std::size_t param = 0, std::uint64_t seed = 0) {
    PerturbationSpec s;
    s.kind = kind;
    s.param = param;
    s.seed = seed;
    return s;
}

}  // namespace

TEST(Perturb, Examples) {
    const auto base = L("1 2 3 4");
    EXPECT_EQ(perturb(base, spec(PerturbKind::Identity)), base);
    EXPECT_EQ(perturb(base, spec(PerturbKind::AdjacentSwap, 3)), L("1 2 4 3"));
    EXPECT_EQ(perturb(base, spec(PerturbKind::TopSwap)), L("2 1 3 4"));
    EXPECT_EQ(perturb(base, spec(PerturbKind::TailReplace, 2)), L("1 2 5 6"));
    EXPECT_EQ(perturb(base, spec(PerturbKind::Truncate, 2)), L("1 2"));
}

TEST(Perturb, TailReplaceWithNonNumericIds) {
    const auto out = perturb(L("a b c"), spec(PerturbKind::TailReplace, 1));
    ASSERT_EQ(out.size(), 3u);
    EXPECT_EQ(out.at_rank(1), "a");
    EXPECT_EQ(out.at_rank(2), "b");
    EXPECT_FALSE(L("a b c").contains(out.at_rank(3)));
}

TEST(Perturb, ShuffleIsSeededPermutation) {
    const auto base = L("1 2 3 4 5 6 7 8 9 10");
    const auto a = perturb(base, spec(PerturbKind::Shuffle, 0, 42));
    EXPECT_EQ(a, perturb(base, spec(PerturbKind::Shuffle, 0, 42)));
    EXPECT_NE(a, perturb(base, spec(PerturbKind::Shuffle, 0, 43)));
    auto sorted = testing_support::items_of(a);
    std::sort(sorted.begin(), sorted.end());
    auto expected = testing_support::items_of(base);
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(sorted, expected);
}

TEST(Perturb, BoundsAreChecked) {
    const auto base = L("1 2 3");
    EXPECT_THROW((void)perturb(base, spec(PerturbKind::AdjacentSwap, 3)), InvalidInput);
    EXPECT_THROW((void)perturb(base, spec(PerturbKind::AdjacentSwap, 0)), InvalidInput);
    EXPECT_THROW((void)perturb(base, spec(PerturbKind::TailReplace, 4)), InvalidInput);
    EXPECT_THROW((void)perturb(base, spec(PerturbKind::Truncate, 0)), InvalidInput);
    EXPECT_THROW((void)perturb(L("1"), spec(PerturbKind::TopSwap)), InvalidInput);
    auto sized = spec(PerturbKind::Identity);
    sized.list_len = 4;
    EXPECT_THROW((void)perturb(base, sized), InvalidInput);
}

TEST(Perturb, ParseAndPrintRoundTrip) {
    for (const char* text : {"identity", "shuffle", "top_swap", "adjacent_swap:2", "tail_replace:5", "truncate:10"}) {
        EXPECT_EQ(to_string(parse_perturbation(text)), text);
    }
    EXPECT_EQ(parse_perturbation("adjacent_swap:7").param, 7u);
    for (const char* bad : {"", "swap", "adjacent_swap", "truncate:x", "truncate:-1", "identity:2"}) {
        EXPECT_THROW((void)parse_perturbation(bad), InvalidInput) << bad;
    }
}

TEST(Noise, Parse) {
    EXPECT_EQ(parse_noise("identity").kind, NoiseKind::Identity);
    EXPECT_EQ(parse_noise("jitter", 2.5).sigma, 2.5);
    EXPECT_EQ(parse_noise("ab_test").kind, NoiseKind::AbTest);
    const auto p = parse_noise("adjacent_swap:1");
    EXPECT_EQ(p.kind, NoiseKind::Perturb);
    EXPECT_EQ(p.perturbation.kind, PerturbKind::AdjacentSwap);
    EXPECT_THROW((void)parse_noise("loud"), InvalidInput);
    EXPECT_THROW((void)parse_noise("jitter", -1.0), InvalidInput);
}

TEST(GenPair, FixedExamples) {
    const auto article = gen_pair({"heels", Label::Article, default_vocabulary(), 1}, cfg());
    EXPECT_EQ(taxonomy::classify(article.q1, article.q2, cfg()), Label::Article);
    EXPECT_TRUE(article.q1 == "heels" || article.q2 == "heels");

    const auto order = gen_pair({"red watch", Label::WordOrder, default_vocabulary(), 1}, cfg());
    EXPECT_EQ(order.q1, "red watch");
    EXPECT_EQ(order.q2, "watch red");

    const auto space = gen_pair({"1 mm ring", Label::Space, default_vocabulary(), 1}, cfg());
    EXPECT_EQ(space.q1, "1 mm ring");
    EXPECT_EQ(space.q2, "1mm ring");
}

TEST(GenPair, RejectsUnusableSpecs) {
    EXPECT_THROW((void)gen_pair({"red watch", Label::Unclassified, default_vocabulary(), 1}, cfg()), InvalidInput);
    EXPECT_THROW((void)gen_pair({"watch", Label::WordOrder, {}, 1}, cfg()), InvalidInput);
}

TEST(GenPair, EveryLabelRoundTripsOverManyBases) {
    const std::vector<std::string> bases = {
        "heels",          "red watch",         "1 mm ring",       "shoes for women", "24x20 frame",
        "usb c cable",    "12 oz mug",         "wireless mouse",  "men's jacket",    "garden hose 50 ft",
        "kitchen towels", "coffee maker",      "bath mat",        "water bottle",    "phone case",
        "led desk lamp",  "yoga mat for kids", "stainless steel", "toy car",         "dog bed",
    };
    for (const auto& base : bases) {
        for (const auto label : taxonomy::kAllLabels) {
            if (label == Label::Unclassified) continue;
            for (std::uint64_t seed : {1u, 2u, 3u}) {
                const auto p = gen_pair({base, label, default_vocabulary(), seed}, cfg());
                ASSERT_EQ(taxonomy::classify(p.q1, p.q2, cfg()), label) << base << " -> " << p.q1 << " | " << p.q2;
                ASSERT_TRUE(normalize::same_tps(p.q1, p.q2, cfg())) << p.q1 << " | " << p.q2;
                ASSERT_EQ(p.label, label);
            }
        }
    }
}

TEST(GenPair, LabelDistributionIsRecovered) {
    const std::vector<std::string> bases = {"heels", "red watch", "1 mm ring", "phone case", "dog bed"};
    std::map<Label, std::size_t> planted;
    std::vector<std::pair<std::string, std::string>> corpus;
    Rng rng(9);
    for (std::size_t i = 0; i < 1000; ++i) {
        const auto label = taxonomy::kAllLabels[rng.below(8)];
        ++planted[label];
        const auto p = gen_pair({bases[i % bases.size()], label, default_vocabulary(), std::uint64_t(i)}, cfg());
        corpus.emplace_back(p.q1, p.q2);
    }
    const auto table = taxonomy::classify_corpus(corpus, cfg());
    for (const auto& [label, n] : planted) EXPECT_EQ(table.row(label).count, n) << taxonomy::code(label);
    EXPECT_EQ(table.row(Label::Unclassified).count, 0u);
}

TEST(Dates, AddDays) {
    EXPECT_EQ(add_days("2023-04-15", 7), "2023-04-22");
    EXPECT_EQ(add_days("2023-12-28", 7), "2024-01-04");
    EXPECT_EQ(add_days("2024-02-28", 1), "2024-02-29");
    EXPECT_EQ(add_days("2023-02-28", 1), "2023-03-01");
    EXPECT_EQ(add_days("2023-03-01", -1), "2023-02-28");
    EXPECT_THROW((void)add_days("2023-13-01", 1), InvalidInput);
}

namespace {

struct Generated {
    std::string log, truth, sim;
    GenLogSummary summary;
};

Generated generate(const GenLogConfig& c) {
    std::ostringstream log, truth, sim;
    Generated g;
    g.summary = gen_log(c, log, truth, &sim);
    g.log = log.str();
    g.truth = truth.str();
    g.sim = sim.str();
    return g;
}

GenLogConfig small(NoiseKind kind) {
    GenLogConfig c;
    c.n_queries = 30;
    c.weeks = 3;
    c.noise.kind = kind;
    c.seed = 11;
    return c;
}

}  // namespace

TEST(GenLog, ParsesCleanlyAndIsDeterministic) {
    const auto a = generate(small(NoiseKind::Jitter));
    const auto b = generate(small(NoiseKind::Jitter));
    EXPECT_EQ(a.log, b.log);
    EXPECT_EQ(a.truth, b.truth);
    EXPECT_EQ(a.sim, b.sim);
    auto other = small(NoiseKind::Jitter);
    other.seed = 12;
    EXPECT_NE(generate(other).log, a.log);

    std::istringstream in(a.log);
    const auto parsed = ingest::parse_log(in, true);
    EXPECT_EQ(parsed.malformed, 0u);
    EXPECT_EQ(parsed.records.size(), a.summary.log_lines);
    EXPECT_EQ(a.summary.families, 30u);
    EXPECT_GE(a.summary.variant_queries, 60u);
    EXPECT_EQ(a.summary.weeks, (std::vector<std::string>{"2023-04-15", "2023-04-22", "2023-04-29"}));
}

TEST(GenLog, IdentityNoiseReproducesTruth) {
    const auto g = generate(small(NoiseKind::Identity));
    std::istringstream in(g.log);
    auto by_week = ingest::split_by_week(ingest::parse_log(in).records);
    ingest::FilterParams params;
    params.bottom_cut = 0.0;
    for (auto& [week, records] : by_week) {
        const auto ds = ingest::apply_filters(std::move(records), params, cfg());
        ASSERT_FALSE(ds.empty());
        const auto pairs = pairs::tps_pairs(ds, cfg());
        ASSERT_FALSE(pairs.empty());
        for (const auto& p : pairs) {
            EXPECT_EQ(metrics::rds(*ds.find(p.q1), *ds.find(p.q2)).similarity, 1.0) << p.q1 << " | " << p.q2;
        }
    }
}
