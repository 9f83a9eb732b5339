#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "locmerge/allocation.hpp"
#include "oracles.hpp"

using namespace locmerge;

namespace {

Locale loc(const char* country, const char* language) {
    return {CountryCode(country), LanguageCode(language)};
}

LocaleMix mix_of(std::initializer_list<std::pair<const char*, std::int64_t>> entries) {
    // country doubles as language where possible; the allocator never looks
    // at the codes, only at the weights
    LocaleMix mix;
    for (const auto& [code, weight] : entries)
        mix.entries.push_back({loc(code, "en"), weight});
    return mix;
}

std::vector<std::int64_t> counts_of(const AllocationVector& allocation) {
    std::vector<std::int64_t> counts;
    for (const auto& lc : allocation.counts) counts.push_back(lc.count);
    return counts;
}

std::vector<std::int64_t> weights_of(const LocaleMix& mix) {
    std::vector<std::int64_t> weights;
    for (const auto& e : mix.entries) weights.push_back(e.weight);
    return weights;
}

} // namespace

TEST_CASE("single locale absorbs the entire budget") {
    const auto allocation = allocate_locale_counts(mix_of({{"tr", 1}}), 5);
    CHECK(counts_of(allocation) == std::vector<std::int64_t>{5});
    CHECK(allocation.total == 5);
    CHECK(allocation.weight_sum == 1);
}

TEST_CASE("budget equal to locale count gives one slot each") {
    const auto allocation = allocate_locale_counts(mix_of({{"de", 1}, {"fr", 1}, {"it", 1}}), 3);
    CHECK(counts_of(allocation) == std::vector<std::int64_t>{1, 1, 1});
}

TEST_CASE("proportional split with remainder distribution") {
    const auto allocation = allocate_locale_counts(mix_of({{"de", 3}, {"fr", 2}, {"it", 1}}), 10);
    CHECK(counts_of(allocation) == std::vector<std::int64_t>{5, 3, 2});
    // and the oracle agrees the result is feasible
    CHECK(oracles::allocation_feasible({3, 2, 1}, 10, {5, 3, 2}));
}

TEST_CASE("allocation validates its input") {
    CHECK_THROWS_AS(allocate_locale_counts(mix_of({{"de", 1}, {"fr", 1}}), 1),
                    BudgetTooSmallError);
    CHECK_THROWS_AS(allocate_locale_counts(mix_of({{"de", 0}}), 3), InvalidWeightError);
    CHECK_THROWS_AS(allocate_locale_counts(mix_of({{"de", -2}}), 3), InvalidWeightError);
    CHECK_THROWS_AS(allocate_locale_counts(LocaleMix{}, 3), std::invalid_argument);
}

TEST_CASE("remainder ties resolve to the lower input index, deterministically") {
    for (int repeat = 0; repeat < 50; ++repeat) {
        const auto allocation = allocate_locale_counts(mix_of({{"de", 1}, {"fr", 1}}), 3);
        CHECK(counts_of(allocation) == std::vector<std::int64_t>{2, 1});
    }
}

TEST_CASE("allocation constraints hold on randomized instances") {
    std::mt19937_64 rng(20240817);
    for (int instance = 0; instance < 2000; ++instance) {
        const auto n = oracles::rand_between(rng, 1, 8);
        std::vector<std::int64_t> weights;
        LocaleMix mix;
        for (std::int64_t i = 0; i < n; ++i) {
            weights.push_back(oracles::rand_between(rng, 1, 20));
            mix.entries.push_back({loc("de", "de"), weights.back()});
        }
        const auto total = oracles::rand_between(rng, n, 10 * n);
        const auto allocation = allocate_locale_counts(mix, total);
        REQUIRE(oracles::allocation_feasible(weights, total, counts_of(allocation)));
    }
}

TEST_CASE("output always lies in the brute-force feasible set on small instances") {
    std::mt19937_64 rng(4711);
    for (int instance = 0; instance < 500; ++instance) {
        const auto n = oracles::rand_between(rng, 1, 4);
        std::vector<std::int64_t> weights;
        LocaleMix mix;
        for (std::int64_t i = 0; i < n; ++i) {
            weights.push_back(oracles::rand_between(rng, 1, 5));
            mix.entries.push_back({loc("fr", "fr"), weights.back()});
        }
        const auto total = oracles::rand_between(rng, n, 12);
        const auto counts = counts_of(allocate_locale_counts(mix, total));

        const auto feasible = oracles::enumerate_feasible(weights, total);
        REQUIRE_FALSE(feasible.empty());
        CHECK(std::find(feasible.begin(), feasible.end(), counts) != feasible.end());
    }
}

TEST_CASE("permuting locales with distinct fractional parts permutes the counts") {
    // weights chosen so every fractional part is distinct
    const std::vector<std::int64_t> weights = {7, 4, 2};
    const std::int64_t total = 9;

    const auto straight =
        counts_of(allocate_locale_counts(mix_of({{"de", 7}, {"fr", 4}, {"it", 2}}), total));
    const auto swapped =
        counts_of(allocate_locale_counts(mix_of({{"it", 2}, {"de", 7}, {"fr", 4}}), total));

    REQUIRE(straight.size() == 3);
    CHECK(swapped == std::vector<std::int64_t>{straight[2], straight[0], straight[1]});
}

// --- mix normalization ------------------------------------------------------

namespace {

const NormalizationConfig kTrConfig{loc("tr", "tr"), 4, 0};

bool mix_equals(const LocaleMix& mix,
                std::initializer_list<std::pair<const char*, std::int64_t>> expected) {
    if (mix.entries.size() != expected.size()) return false;
    std::size_t i = 0;
    for (const auto& [locale_text, weight] : expected) {
        if (mix.entries[i].locale.to_string() != locale_text) return false;
        if (mix.entries[i].weight != weight) return false;
        ++i;
    }
    return true;
}

} // namespace

TEST_CASE("invalid entries are dropped and the default injected") {
    const auto mix = normalize_locale_mix({{"XX", "zz", 2}}, kTrConfig);
    CHECK(mix_equals(mix, {{"tr-tr", 1}}));
}

TEST_CASE("duplicates resolve to the first occurrence") {
    const auto mix =
        normalize_locale_mix({{"de", "de", 3}, {"de", "de", 5}, {"tr", "tr", 1}}, kTrConfig);
    CHECK(mix_equals(mix, {{"de-de", 3}, {"tr-tr", 1}}));
}

TEST_CASE("weights are clamped to at least one") {
    const auto mix = normalize_locale_mix({{"de", "de", 0}}, kTrConfig);
    CHECK(mix_equals(mix, {{"de-de", 1}, {"tr-tr", 1}}));
}

TEST_CASE("truncation keeps the heaviest entries and the default survives") {
    const auto mix = normalize_locale_mix({{"de", "de", 5},
                                           {"fr", "fr", 4},
                                           {"it", "it", 3},
                                           {"es", "es", 2},
                                           {"nl", "nl", 1}},
                                          kTrConfig);
    // five valid entries truncate to four, then the lowest-weight survivor
    // is evicted to make room for the default
    CHECK(mix_equals(mix, {{"de-de", 5}, {"fr-fr", 4}, {"it-it", 3}, {"tr-tr", 1}}));
}

TEST_CASE("codes are case-folded and trimmed before validation") {
    const auto mix = normalize_locale_mix({{" DE ", "De", 2}, {"tr", "tr", 1}}, kTrConfig);
    CHECK(mix_equals(mix, {{"de-de", 2}, {"tr-tr", 1}}));
}

TEST_CASE("normalization agrees with the clause-walk reference on random garbage") {
    std::mt19937_64 rng(90210);
    const char* countries[] = {"de", "tr", "fr", "XX", "us", "", "d", "uk", "DE "};
    const char* languages[] = {"de", "tr", "fr", "zz", "en", "", "e", "EN"};

    for (int instance = 0; instance < 3000; ++instance) {
        std::vector<RawLocaleEntry> raw;
        const auto n = oracles::rand_between(rng, 0, 7);
        for (std::int64_t i = 0; i < n; ++i) {
            raw.push_back({countries[rng() % std::size(countries)],
                           languages[rng() % std::size(languages)],
                           oracles::rand_between(rng, -3, 6)});
        }
        NormalizationConfig config = kTrConfig;
        config.max_locales = static_cast<int>(oracles::rand_between(rng, 1, 5));

        const auto actual = normalize_locale_mix(raw, config);
        const auto expected = oracles::normalize_reference(raw, config);
        REQUIRE(actual.entries == expected.entries);

        // output invariants: valid, unique, bounded, default present
        CHECK_FALSE(actual.entries.empty());
        CHECK(actual.entries.size() <= static_cast<std::size_t>(config.max_locales));
        CHECK(actual.contains(config.default_locale));
        for (std::size_t i = 0; i < actual.entries.size(); ++i) {
            CHECK(actual.entries[i].weight >= 1);
            CHECK(actual.entries[i].locale.country.iso_assigned());
            CHECK(actual.entries[i].locale.language.iso_assigned());
            for (std::size_t j = i + 1; j < actual.entries.size(); ++j)
                CHECK_FALSE(actual.entries[i].locale == actual.entries[j].locale);
        }
    }
}
