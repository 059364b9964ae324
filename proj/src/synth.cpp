#include "rankrobust/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "rankrobust/error.hpp"
#include "rankrobust/ingest.hpp"
#include "rankrobust/rng.hpp"
#include "rankrobust/text.hpp"
#include "rankrobust/tsv.hpp"

namespace rankrobust::synth {

namespace {

using taxonomy::Label;
using Tokens = std::vector<std::string>;

// Days since 1970-01-01 <-> civil date (proleptic Gregorian).
long days_from_civil(long y, unsigned m, unsigned d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

std::string civil_from_days(long z) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long y = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return fmt::format("{:04d}-{:02d}-{:02d}", y + (m <= 2), m, d);
}

bool all_decimal(std::span<const ItemId> items) {
    return std::all_of(items.begin(), items.end(), [](const ItemId& id) { return text::is_digits(id) && id.size() < 18; });
}

std::string pluralize(const std::string& w, const normalize::NormalizationConfig& cfg) {
    for (const auto& [plural, singular] : cfg.irregular_plurals) {
        if (singular == w) return plural;
    }
    auto ends = [&](std::string_view s) { return w.size() >= s.size() && w.compare(w.size() - s.size(), s.size(), s) == 0; };
    if (ends("s") || ends("x") || ends("z") || ends("ch") || ends("sh")) return w + "es";
    if (w.size() >= 2 && ends("y") && std::string_view("aeiou").find(w[w.size() - 2]) == std::string_view::npos) {
        return w.substr(0, w.size() - 1) + "ies";
    }
    return w + "s";
}

std::string join_range(const Tokens& t, std::size_t begin, std::size_t end, std::string_view sep = " ") {
    return text::join(Tokens(t.begin() + static_cast<long>(begin), t.begin() + static_cast<long>(end)), sep);
}

// Canonical unit -> variants that are not stopwords, symbolic ones first.
std::map<std::string, Tokens> unit_variants(const normalize::NormalizationConfig& cfg) {
    std::map<std::string, Tokens> out;
    for (const auto& [variant, canonical] : cfg.abbreviations) {
        if (!cfg.is_stopword(variant)) out[canonical].push_back(variant);
    }
    for (auto& [canonical, variants] : out) {
        std::stable_sort(variants.begin(), variants.end(), [](const std::string& a, const std::string& b) {
            return !text::is_ascii_alpha(a) && text::is_ascii_alpha(b);
        });
    }
    return out;
}

std::string unit_form(const std::string& number, const std::string& variant) {
    // Symbolic marks attach to the number; word abbreviations stand alone.
    return text::is_ascii_alpha(variant) ? number + " " + variant : number + variant;
}

using Candidate = std::pair<std::string, std::string>;

std::vector<Candidate> candidates_for(const SynthPairSpec& spec, const Tokens& t, Rng& rng,
                                      const normalize::NormalizationConfig& cfg) {
    const std::string& base = spec.base;
    const std::size_t n = t.size();
    Tokens vocab;
    for (const auto& w : spec.vocabulary) {
        if (std::find(t.begin(), t.end(), w) == t.end() && !cfg.is_stopword(w)) vocab.push_back(w);
    }
    rng.shuffle(vocab);

    std::vector<Candidate> out;
    switch (spec.label) {
        case Label::Preposition:
            for (std::size_t p = 1; p + 1 < n; ++p) {
                if (cfg.is_preposition(t[p])) out.emplace_back(base, join_range(t, p + 1, n) + " " + join_range(t, 0, p));
            }
            for (const auto& w : vocab) out.emplace_back(base + " for " + w, w + " " + base);
            break;
        case Label::Abbreviation: {
            const auto units = unit_variants(cfg);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                auto it = units.find(t[i + 1]);
                if (!text::is_digits(t[i]) || it == units.end()) continue;
                for (const auto& v : it->second) {
                    out.emplace_back(base, text::join(Tokens(t.begin(), t.begin() + static_cast<long>(i)), " ") +
                                               (i ? " " : "") + unit_form(t[i], v) +
                                               (i + 2 < n ? " " + join_range(t, i + 2, n) : ""));
                }
            }
            static const Tokens kUnits = {"inch", "volt", "pound", "ounce", "watt", "foot"};
            for (int attempt = 0; attempt < 6; ++attempt) {
                const auto& unit = kUnits[rng.below(kUnits.size())];
                auto it = units.find(unit);
                if (it == units.end()) continue;
                const auto number = std::to_string(rng.between(2, 60));
                const auto& v = it->second[rng.below(it->second.size())];
                out.emplace_back(number + " " + unit + " " + base, unit_form(number, v) + " " + base);
            }
            break;
        }
        case Label::SingularPlural: {
            auto pluralizable = [&](const std::string& w) {
                return text::is_ascii_alpha(w) && !cfg.is_stopword(w) && w.size() > 2 &&
                       taxonomy::singularize(w, cfg) == w && taxonomy::singularize(pluralize(w, cfg), cfg) == w;
            };
            for (std::size_t i = n; i-- > 0;) {
                if (!pluralizable(t[i])) continue;
                Tokens q2 = t;
                q2[i] = pluralize(t[i], cfg);
                out.emplace_back(base, text::join(q2));
            }
            for (const auto& w : vocab) {
                if (pluralizable(w)) out.emplace_back(base + " " + w, base + " " + pluralize(w, cfg));
            }
            break;
        }
        case Label::WordOrder:
            for (std::size_t k = 1; k < n; ++k) {
                Tokens q2 = t;
                std::rotate(q2.begin(), q2.begin() + static_cast<long>(k), q2.end());
                if (q2 != t) out.emplace_back(base, text::join(q2));
            }
            for (const auto& w : vocab) out.emplace_back(w + " " + base, base + " " + w);
            break;
        case Label::Article:
            if (n >= 2 && cfg.is_article(t[0])) out.emplace_back(base, join_range(t, 1, n));
            out.emplace_back(base, "the " + base);
            out.emplace_back(base, "a " + base);
            break;
        case Label::Punctuation: {
            static const Tokens kMarks = {".", "!", "?"};
            const auto start = rng.below(kMarks.size());
            for (std::size_t i = 0; i < kMarks.size(); ++i) out.emplace_back(base, base + kMarks[(start + i) % kMarks.size()]);
            break;
        }
        case Label::Space:
            for (std::size_t i = 0; i + 1 < n; ++i) {
                if (!text::is_digits(t[i])) continue;
                if (i + 2 < n && t[i + 1] == "x" && text::is_digits(t[i + 2])) {
                    Tokens q2(t.begin(), t.begin() + static_cast<long>(i));
                    q2.push_back(t[i] + "x" + t[i + 2]);
                    q2.insert(q2.end(), t.begin() + static_cast<long>(i + 3), t.end());
                    out.emplace_back(base, text::join(q2));
                } else if (text::is_ascii_alpha(t[i + 1])) {
                    Tokens q2(t.begin(), t.begin() + static_cast<long>(i));
                    q2.push_back(t[i] + t[i + 1]);
                    q2.insert(q2.end(), t.begin() + static_cast<long>(i + 2), t.end());
                    out.emplace_back(base, text::join(q2));
                }
            }
            for (int attempt = 0; attempt < 4; ++attempt) {
                const auto a = std::to_string(rng.between(1, 60));
                const auto b = std::to_string(rng.between(1, 60));
                out.emplace_back(a + " mm " + base, a + "mm " + base);
                out.emplace_back(a + " x " + b + " " + base, a + "x" + b + " " + base);
            }
            break;
        case Label::WordsConnection:
            if (n >= 2) out.emplace_back(base, text::join(t, "+"));
            for (const auto& w : vocab) out.emplace_back(w + " " + base, w + "+" + text::join(t, "+"));
            break;
        case Label::Unclassified:
            break;
    }
    return out;
}

}  // namespace

std::string add_days(std::string_view iso, int days) {
    if (!ingest::is_iso_date(iso)) throw InvalidInput(fmt::format("'{}' is not an ISO date", iso));
    const long y = std::stol(std::string(iso.substr(0, 4)));
    const auto m = static_cast<unsigned>(std::stoul(std::string(iso.substr(5, 2))));
    const auto d = static_cast<unsigned>(std::stoul(std::string(iso.substr(8, 2))));
    return civil_from_days(days_from_civil(y, m, d) + days);
}

PerturbationSpec parse_perturbation(std::string_view text) {
    PerturbationSpec spec;
    const auto colon = text.find(':');
    const auto name = text.substr(0, colon);
    std::optional<std::uint64_t> param;
    if (colon != std::string_view::npos) {
        param = tsv::parse_uint(text.substr(colon + 1));
        if (!param) throw InvalidInput(fmt::format("bad perturbation parameter in '{}'", text));
    }
    auto need = [&](bool with_param) {
        if (with_param != param.has_value()) {
            throw InvalidInput(fmt::format("perturbation '{}' {} a ':N' parameter", name, with_param ? "needs" : "takes no"));
        }
    };
    if (name == "identity") {
        need(false);
        spec.kind = PerturbKind::Identity;
    } else if (name == "shuffle") {
        need(false);
        spec.kind = PerturbKind::Shuffle;
    } else if (name == "top_swap") {
        need(false);
        spec.kind = PerturbKind::TopSwap;
    } else if (name == "adjacent_swap") {
        need(true);
        spec.kind = PerturbKind::AdjacentSwap;
    } else if (name == "tail_replace") {
        need(true);
        spec.kind = PerturbKind::TailReplace;
    } else if (name == "truncate") {
        need(true);
        spec.kind = PerturbKind::Truncate;
    } else {
        throw InvalidInput(fmt::format("unknown perturbation '{}'", text));
    }
    spec.param = param.value_or(0);
    return spec;
}

std::string to_string(const PerturbationSpec& spec) {
    switch (spec.kind) {
        case PerturbKind::Identity: return "identity";
        case PerturbKind::Shuffle: return "shuffle";
        case PerturbKind::TopSwap: return "top_swap";
        case PerturbKind::AdjacentSwap: return fmt::format("adjacent_swap:{}", spec.param);
        case PerturbKind::TailReplace: return fmt::format("tail_replace:{}", spec.param);
        case PerturbKind::Truncate: return fmt::format("truncate:{}", spec.param);
    }
    return "identity";
}

RankedList perturb(const RankedList& list, const PerturbationSpec& spec) {
    const std::size_t n = list.size();
    if (spec.list_len != 0 && spec.list_len != n) {
        throw InvalidInput(fmt::format("perturbation expects a list of length {}, got {}", spec.list_len, n));
    }
    std::vector<ItemId> items(list.items().begin(), list.items().end());
    auto bounds = [&](std::size_t lo, std::size_t hi) {
        if (spec.param < lo || spec.param > hi) {
            throw InvalidInput(fmt::format("{} is out of bounds for a list of length {}", to_string(spec), n));
        }
    };
    switch (spec.kind) {
        case PerturbKind::Identity:
            break;
        case PerturbKind::AdjacentSwap:
            bounds(1, n - 1);
            std::swap(items[spec.param - 1], items[spec.param]);
            break;
        case PerturbKind::TopSwap:
            if (n < 2) throw InvalidInput("top_swap needs at least two items");
            std::swap(items[0], items[1]);
            break;
        case PerturbKind::TailReplace: {
            bounds(1, n);
            // Fresh ids continue a numeric id space, otherwise "fresh-K".
            const bool numeric = all_decimal(list.items());
            std::uint64_t next = 1;
            if (numeric) {
                for (const auto& id : list.items()) next = std::max(next, *tsv::parse_uint(id) + 1);
            }
            for (std::size_t i = n - spec.param; i < n; ++i) {
                std::string id;
                do {
                    id = numeric ? std::to_string(next++) : fmt::format("fresh-{}", next++);
                } while (list.contains(id));
                items[i] = std::move(id);
            }
            break;
        }
        case PerturbKind::Truncate:
            bounds(1, n);
            items.resize(spec.param);
            break;
        case PerturbKind::Shuffle: {
            Rng rng(spec.seed);
            rng.shuffle(items);
            break;
        }
    }
    return RankedList(std::move(items));
}

const std::vector<std::string>& default_vocabulary() {
    static const std::vector<std::string> kVocab = {"women", "men", "kids", "girls", "boys", "toddlers",
                                                    "outdoor", "travel", "office", "kitchen", "garden", "party"};
    return kVocab;
}

SynthPair gen_pair(const SynthPairSpec& spec, const normalize::NormalizationConfig& cfg) {
    if (spec.label == Label::Unclassified) throw InvalidInput("gen_pair: no transform for Unclassified");
    if (spec.vocabulary.empty()) throw InvalidInput("gen_pair: vocabulary is empty");
    const auto tokens = text::split_whitespace(text::fold_case(spec.base));
    if (tokens.empty()) throw InvalidInput("gen_pair: base query is empty");

    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(spec.label)));
    for (auto& [q1, q2] : candidates_for(spec, tokens, rng, cfg)) {
        if (q1 == q2) continue;
        try {
            if (taxonomy::classify(q1, q2, cfg) == spec.label && normalize::same_tps(q1, q2, cfg)) {
                return {std::move(q1), std::move(q2), spec.label};
            }
        } catch (const InvalidInput&) {
            // candidate normalizes to an empty key; try the next one
        }
    }
    throw InvalidInput(fmt::format("gen_pair: cannot build a {} pair from '{}'", taxonomy::code(spec.label), spec.base));
}

LogNoise parse_noise(std::string_view text, double sigma) {
    LogNoise noise;
    noise.sigma = sigma;
    if (text == "identity") {
        noise.kind = NoiseKind::Identity;
    } else if (text == "shuffle") {
        noise.kind = NoiseKind::Shuffle;
    } else if (text == "jitter") {
        noise.kind = NoiseKind::Jitter;
    } else if (text == "ab_test") {
        noise.kind = NoiseKind::AbTest;
    } else {
        noise.kind = NoiseKind::Perturb;
        noise.perturbation = parse_perturbation(text);
    }
    if (!(sigma >= 0.0)) throw InvalidInput("noise sigma must not be negative");
    return noise;
}

namespace {

const Tokens kAdjectives = {"red",    "blue",   "green",   "black",    "white",      "pink",    "purple",  "grey",
                            "brown",  "yellow", "leather", "cotton",   "wooden",     "metal",   "wireless", "portable",
                            "vintage", "modern", "outdoor", "waterproof", "organic", "silk",   "wool",    "linen",
                            "ceramic", "bamboo", "velvet",  "denim",    "canvas",     "rustic",  "compact", "heavy"};
const Tokens kNouns = {"boot",   "watch",   "dress",   "coat",     "lamp",   "chair",   "table",   "jacket",
                       "shirt",  "bag",     "mug",     "pillow",   "blanket", "rug",    "sofa",    "desk",
                       "speaker", "charger", "cable",  "battery",  "candle", "towel",   "glove",   "sock",
                       "hat",    "belt",    "wallet",  "backpack", "tent",   "kettle",  "blender", "helmet",
                       "mirror", "curtain", "cushion", "basket",   "bottle", "umbrella", "sneaker", "sandal"};
const Tokens kAudiences = {"women", "men", "kids", "girls", "boys", "toddlers"};
const Tokens kUnits = {"inch", "volt", "pound", "ounce", "watt"};

std::string family_base(Rng& rng) {
    const auto& adj = rng.pick(kAdjectives);
    const auto& noun = rng.pick(kNouns);
    switch (rng.below(3)) {
        case 0:
            return adj + " " + noun;
        case 1:
            return adj + " " + noun + " for " + rng.pick(kAudiences);
        default:
            return fmt::format("{} {} {} {}", rng.between(2, 60), rng.pick(kUnits), adj, noun);
    }
}

// Observed top `depth` for one (query, week). `treatment` is the family's
// second ranking, used by the A/B noise.
std::vector<std::size_t> observe(const LogNoise& noise, std::size_t depth, double sigma,
                                 const std::vector<std::size_t>& treatment, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t pool = treatment.size();
    std::vector<std::size_t> ranks(pool);
    for (std::size_t i = 0; i < pool; ++i) ranks[i] = i;
    auto jitter = [&](const std::vector<std::size_t>& order) {
        std::vector<std::pair<double, std::size_t>> scored;
        scored.reserve(pool);
        for (std::size_t i = 0; i < pool; ++i) scored.emplace_back(static_cast<double>(i) + sigma * rng.normal(), order[i]);
        std::sort(scored.begin(), scored.end());
        for (std::size_t i = 0; i < depth; ++i) ranks[i] = scored[i].second;
    };
    switch (noise.kind) {
        case NoiseKind::Identity:
        case NoiseKind::Perturb:
            break;
        case NoiseKind::Shuffle:
            rng.shuffle(ranks);
            break;
        case NoiseKind::Jitter:
            jitter(std::vector<std::size_t>(ranks));
            break;
        case NoiseKind::AbTest:
            if (rng.uniform() < noise.treatment_share) {
                jitter(treatment);
            } else {
                jitter(std::vector<std::size_t>(ranks));
            }
            break;
    }
    ranks.resize(depth);
    return ranks;
}

std::vector<std::size_t> treatment_order(std::size_t pool, double divergence, Rng& rng) {
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(pool);
    for (std::size_t i = 0; i < pool; ++i) scored.emplace_back(static_cast<double>(i) + divergence * rng.normal(), i);
    std::sort(scored.begin(), scored.end());
    std::vector<std::size_t> order;
    order.reserve(pool);
    for (const auto& [score, i] : scored) order.push_back(i);
    return order;
}

}  // namespace

GenLogSummary gen_log(const GenLogConfig& config, std::ostream& log, std::ostream& truth, std::ostream* sim) {
    if (config.n_queries == 0 || config.weeks == 0 || config.depth == 0) {
        throw InvalidInput("gen_log: queries, weeks and depth must be positive");
    }
    if (config.pool_size < config.depth) throw InvalidInput("gen_log: pool_size must be at least depth");
    const auto cfg = normalize::NormalizationConfig::defaults();

    struct Variant {
        std::string query;
        double share;
    };
    struct Family {
        std::string base;
        std::vector<Variant> variants;
        double popularity;
        double sigma;
        std::vector<std::size_t> treatment;
    };

    std::vector<Family> families;
    std::set<std::string> keys;
    for (std::size_t f = 0; f < config.n_queries; ++f) {
        Rng rng(derive_seed(config.seed, 1, f));
        Family fam;
        for (int attempt = 0;; ++attempt) {
            fam.base = family_base(rng);
            if (keys.insert(normalize::normalize_query(fam.base, cfg).key).second) break;
            if (attempt > 10000) throw InvalidInput("gen_log: ran out of distinct query families");
        }
        fam.popularity = std::exp(std::log(50.0) + rng.uniform() * (std::log(5000.0) - std::log(50.0)));
        fam.sigma = config.noise.kind == NoiseKind::Jitter ? config.noise.sigma * std::exp(2.0 * rng.uniform() - 1.0)
                                                          : config.noise.sigma;

        fam.treatment = treatment_order(config.pool_size, config.noise.treatment_divergence, rng);

        const auto want = static_cast<std::size_t>(rng.between(2, 4));
        std::vector<Label> labels(taxonomy::kAllLabels.begin(), taxonomy::kAllLabels.end() - 1);
        rng.shuffle(labels);
        fam.variants.push_back({fam.base, 0.2 + 0.8 * rng.uniform()});
        for (auto label : labels) {
            if (fam.variants.size() >= want) break;
            try {
                auto pair = gen_pair({fam.base, label, default_vocabulary(), rng.next()}, cfg);
                const bool fresh = std::none_of(fam.variants.begin(), fam.variants.end(),
                                                [&](const Variant& v) { return v.query == pair.q2; });
                if (pair.q1 == fam.base && fresh) fam.variants.push_back({pair.q2, 0.2 + 0.8 * rng.uniform()});
            } catch (const InvalidInput&) {
                // label not applicable to this base
            }
        }
        families.push_back(std::move(fam));
    }

    GenLogSummary summary;
    summary.families = families.size();
    for (const auto& fam : families) summary.variant_queries += fam.variants.size();
    for (std::size_t w = 0; w < config.weeks; ++w) {
        summary.weeks.push_back(add_days(config.start_week, static_cast<int>(w) * config.step_days));
    }

    auto item_id = [](std::size_t family, std::size_t rank0) { return fmt::format("F{:05d}-{:03d}", family, rank0 + 1); };
    auto emit = [&](const std::string& week, std::string_view locale, const std::string& query, const ItemId& item,
                    std::size_t rank, double jitter, std::uint64_t freq) {
        log << week << '\t' << locale << '\t' << query << '\t' << item << '\t'
            << fmt::format("{:.2f}", static_cast<double>(rank) + 0.4 * jitter) << '\t' << freq << '\n';
        ++summary.log_lines;
    };

    log << "#week\tlocale\tquery\titem_id\tavg_position\tfrequency\n";
    for (std::size_t w = 0; w < config.weeks; ++w) {
        const auto& week = summary.weeks[w];
        for (std::size_t f = 0; f < families.size(); ++f) {
            const auto& fam = families[f];
            for (std::size_t v = 0; v < fam.variants.size(); ++v) {
                const auto& variant = fam.variants[v];
                const auto seed = derive_seed(config.seed, 2, f, v * 100000 + w);
                Rng rng(derive_seed(seed, 7));
                std::vector<ItemId> observed;
                for (auto r : observe(config.noise, config.depth, fam.sigma, fam.treatment, seed)) {
                    observed.push_back(item_id(f, r));
                }
                if (config.noise.kind == NoiseKind::Perturb) {
                    auto spec = config.noise.perturbation;
                    spec.seed = derive_seed(seed, 11);
                    spec.list_len = 0;
                    const auto perturbed = perturb(RankedList(observed), spec);
                    observed.assign(perturbed.items().begin(), perturbed.items().end());
                }
                const auto freq = static_cast<std::uint64_t>(
                    std::max(1.0, std::round(fam.popularity * variant.share * (0.8 + 0.4 * rng.uniform()))));
                for (std::size_t i = 0; i < observed.size(); ++i) {
                    emit(week, "en-US", variant.query, observed[i], i + 1, rng.uniform(), freq);
                }
            }
            if (config.include_distractors && f % 10 == 0) {
                // Same family shown to another locale; removed by the locale filter.
                Rng rng(derive_seed(config.seed, 3, f, w));
                for (std::size_t i = 0; i < config.depth; ++i) {
                    emit(week, "en-GB", fam.base + " uk", item_id(f, i), i + 1, rng.uniform(), 100);
                }
            }
            if (config.include_distractors && f % 10 == 5) {
                // Short result list; removed by the length filter.
                Rng rng(derive_seed(config.seed, 4, f, w));
                for (std::size_t i = 0; i < std::min<std::size_t>(10, config.depth); ++i) {
                    emit(week, "en-US", fam.base + " clearance", item_id(f, i), i + 1, rng.uniform(), 100);
                }
            }
        }
    }

    truth << "#query\titem_id\ttrue_rank\n";
    for (std::size_t f = 0; f < families.size(); ++f) {
        for (const auto& variant : families[f].variants) {
            for (std::size_t i = 0; i < config.depth; ++i) truth << variant.query << '\t' << item_id(f, i) << '\t' << i + 1 << '\n';
        }
    }

    if (sim) {
        *sim << "#query_a\tquery_b\tscore\n";
        for (std::size_t f = 0; f < families.size(); ++f) {
            Rng rng(derive_seed(config.seed, 5, f));
            const auto& vs = families[f].variants;
            for (std::size_t i = 0; i < vs.size(); ++i) {
                for (std::size_t j = i + 1; j < vs.size(); ++j) {
                    *sim << vs[i].query << '\t' << vs[j].query << '\t' << fmt::format("{:.4f}", 0.6 + 0.4 * rng.uniform()) << '\n';
                }
                if (families.size() > 1) {
                    const auto& other = families[(f + 1) % families.size()].base;
                    *sim << vs[i].query << '\t' << other << '\t' << fmt::format("{:.4f}", 0.6 * rng.uniform()) << '\n';
                }
            }
        }
    }
    return summary;
}

}  // namespace rankrobust::synth
