#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "locmerge/cascade.hpp"
#include "locmerge/core.hpp"

// Selection-quality metrics: first-party ratio, same-domain pair ratio and
// distinct-country coverage.

namespace locmerge {

struct LabeledSource {
    Source source;
    bool is_first_party = false;
    InferenceResult inferred_country;
};

// fpr and ddr are absent when undefined (empty set, fewer than two sources)
// rather than reported as zero.
struct MetricsReport {
    std::optional<double> fpr;
    std::optional<double> ddr;
    int lc = 0;
};

inline MetricsReport compute_metrics(std::span<const LabeledSource> sources) {
    MetricsReport report;
    const auto n = sources.size();

    if (n >= 1) {
        std::size_t first_party = 0;
        for (const auto& s : sources)
            if (s.is_first_party) ++first_party;
        report.fpr = static_cast<double>(first_party) / static_cast<double>(n);
    }

    if (n >= 2) {
        std::map<std::string, std::size_t> domain_counts;
        for (const auto& s : sources) domain_counts[domain_of(s.source)] += 1;
        std::size_t same_pairs = 0;
        for (const auto& [domain, count] : domain_counts)
            same_pairs += count * (count - 1) / 2;
        const auto all_pairs = n * (n - 1) / 2;
        report.ddr = static_cast<double>(same_pairs) / static_cast<double>(all_pairs);
    }

    std::set<std::string> countries;
    for (const auto& s : sources)
        if (s.inferred_country.country) countries.insert(s.inferred_country.country->value());
    report.lc = static_cast<int>(countries.size());

    return report;
}

} // namespace locmerge
