#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "locmerge/core.hpp"
#include "locmerge/errors.hpp"

// Weighted locale allocation: distribute an integer keyword budget across
// locales proportionally to their weights, with every locale guaranteed at
// least one slot and per-locale deviation from the ideal share below 1.

namespace locmerge {

struct WeightedLocale {
    Locale locale;
    std::int64_t weight = 1;

    friend bool operator==(const WeightedLocale&, const WeightedLocale&) = default;
};

struct LocaleMix {
    std::vector<WeightedLocale> entries;

    bool contains(const Locale& locale) const {
        return std::any_of(entries.begin(), entries.end(),
                           [&](const WeightedLocale& e) { return e.locale == locale; });
    }
};

struct LocaleCount {
    Locale locale;
    std::int64_t count = 0;
};

struct AllocationVector {
    std::vector<LocaleCount> counts; // aligned with the input mix order
    std::int64_t total = 0;
    std::int64_t weight_sum = 0;
};

struct NormalizationConfig {
    Locale default_locale{CountryCode("us"), LanguageCode("en")};
    int max_locales = 4;
    std::int64_t total_budget = 0;
};

// Three phases: a base slot per locale, floor of the proportional share of
// the remainder, then leftover slots by descending fractional part. Ties on
// equal fractional parts go to the lower input index (stable sort).
inline AllocationVector allocate_locale_counts(const LocaleMix& mix, std::int64_t total) {
    const auto n = static_cast<std::int64_t>(mix.entries.size());
    if (n == 0) throw std::invalid_argument("locale mix is empty");
    for (const auto& e : mix.entries)
        if (e.weight < 1) throw InvalidWeightError(e.weight);
    if (total < n) throw BudgetTooSmallError(total, n);

    std::int64_t weight_sum = 0;
    for (const auto& e : mix.entries) weight_sum += e.weight;
    const std::int64_t remainder = total - n;

    std::vector<std::int64_t> counts(mix.entries.size(), 1);
    std::vector<double> fractional(mix.entries.size(), 0.0);
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < mix.entries.size(); ++i) {
        const double share =
            (static_cast<double>(mix.entries[i].weight) / static_cast<double>(weight_sum)) *
            static_cast<double>(remainder);
        const auto whole = static_cast<std::int64_t>(std::floor(share));
        counts[i] += whole;
        assigned += whole;
        fractional[i] = share - static_cast<double>(whole);
    }

    std::vector<std::size_t> order(mix.entries.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fractional[a] > fractional[b]; });

    const std::int64_t leftover = remainder - assigned;
    for (std::int64_t j = 0; j < leftover; ++j) counts[order[static_cast<std::size_t>(j)]] += 1;

    AllocationVector out;
    out.total = total;
    out.weight_sum = weight_sum;
    out.counts.reserve(mix.entries.size());
    for (std::size_t i = 0; i < mix.entries.size(); ++i)
        out.counts.push_back({mix.entries[i].locale, counts[i]});
    return out;
}

// Raw mix entry as received from an upstream planner; may be garbage.
struct RawLocaleEntry {
    std::string country;
    std::string language;
    std::int64_t weight = 1;
};

namespace detail {

inline std::string trimmed(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace detail

// Repairs a raw locale mix into a valid one. Total by construction: invalid
// entries are dropped, duplicates resolved first-wins, weights clamped to
// >= 1, the list truncated to max_locales (highest weights kept, earlier
// entries win ties) and the default locale injected with weight 1 when
// missing, evicting the lowest-weight non-default entry if the list is full.
inline LocaleMix normalize_locale_mix(const std::vector<RawLocaleEntry>& raw,
                                      const NormalizationConfig& config) {
    std::vector<WeightedLocale> kept;
    for (const auto& entry : raw) {
        auto country = CountryCode::try_make(
            detail::ascii_lower_copy(detail::trimmed(entry.country)));
        auto language = LanguageCode::try_make(
            detail::ascii_lower_copy(detail::trimmed(entry.language)));
        if (!country || !country->iso_assigned()) continue;
        if (!language || !language->iso_assigned()) continue;

        Locale locale{*country, *language};
        bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const WeightedLocale& k) {
            return k.locale == locale;
        });
        if (duplicate) continue;

        kept.push_back({locale, std::max<std::int64_t>(1, entry.weight)});
    }

    const auto limit = static_cast<std::size_t>(std::max(1, config.max_locales));
    if (kept.size() > limit) {
        // pick survivors by weight (earlier entry wins a tie), keep input order
        std::vector<std::size_t> order(kept.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return kept[a].weight > kept[b].weight;
        });
        std::vector<bool> survivor(kept.size(), false);
        for (std::size_t j = 0; j < limit; ++j) survivor[order[j]] = true;

        std::vector<WeightedLocale> pruned;
        pruned.reserve(limit);
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (survivor[i]) pruned.push_back(kept[i]);
        kept = std::move(pruned);
    }

    bool has_default = std::any_of(kept.begin(), kept.end(), [&](const WeightedLocale& k) {
        return k.locale == config.default_locale;
    });
    if (!has_default) {
        if (kept.size() >= limit) {
            // evict the lowest weight; later entry loses a tie
            std::size_t victim = 0;
            for (std::size_t i = 1; i < kept.size(); ++i)
                if (kept[i].weight <= kept[victim].weight) victim = i;
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(victim));
        }
        kept.push_back({config.default_locale, 1});
    }

    return LocaleMix{std::move(kept)};
}

} // namespace locmerge
