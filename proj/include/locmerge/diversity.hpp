#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "locmerge/core.hpp"

// Source selection across keyword-ranked lists under the kappa-domain
// diversity constraint: at most kappa selected sources per registrable
// domain, so aggregator platforms cannot fill the selection through many
// distinct URLs.

namespace locmerge {

struct RankedResults {
    std::string keyword;
    std::vector<Source> results; // descending provider relevance, index = rank
};

struct SelectionConfig {
    int kappa = 1;
    int max_sources = 1;
    std::int64_t search_deadline_ms = 10000;
};

// Orders a result list by relevance. The shipped providers are deterministic;
// implementations must be safe for concurrent invocation.
class RelevanceProvider {
public:
    virtual ~RelevanceProvider() = default;
    virtual std::vector<Source> rank(const RankedResults& list) const = 0;
};

// Keeps the provider rank order unchanged.
class RankOrderRelevance final : public RelevanceProvider {
public:
    std::vector<Source> rank(const RankedResults& list) const override {
        return list.results;
    }
};

// Orders by fixture-supplied scores, descending; unscored sources count as
// 0.0 and ties fall back to provider rank.
class ScoredRelevance final : public RelevanceProvider {
public:
    explicit ScoredRelevance(std::map<std::string, double> scores_by_url)
        : scores_(std::move(scores_by_url)) {}

    std::vector<Source> rank(const RankedResults& list) const override {
        std::vector<Source> ordered = list.results;
        std::stable_sort(ordered.begin(), ordered.end(),
                         [&](const Source& a, const Source& b) {
                             return score_of(a) > score_of(b);
                         });
        return ordered;
    }

private:
    double score_of(const Source& s) const {
        auto it = scores_.find(s.url);
        return it == scores_.end() ? 0.0 : it->second;
    }

    std::map<std::string, double> scores_;
};

struct SelectionState {
    std::vector<Source> selected;
    std::unordered_set<std::string> used_urls;
    std::unordered_map<std::string, int> domain_counts;
};

enum class SkipReason { NoResults, AllCandidatesBlocked, BudgetExhausted };

inline std::string_view to_string(SkipReason reason) {
    switch (reason) {
        case SkipReason::NoResults: return "no_results";
        case SkipReason::AllCandidatesBlocked: return "all_candidates_blocked";
        case SkipReason::BudgetExhausted: return "budget_exhausted";
    }
    return "no_results";
}

struct SkippedKeyword {
    std::string keyword;
    SkipReason reason = SkipReason::NoResults;
};

// fallback_depth: 0 = relevance top taken, 1 = URL-dedup fallback fired,
// 2 = domain-cap fallback fired.
struct KeywordChoice {
    std::string keyword;
    std::optional<std::string> chosen_url;
    int fallback_depth = 0;
};

struct SelectionReport {
    std::vector<Source> selected;
    std::vector<SkippedKeyword> skipped_keywords;
    std::vector<KeywordChoice> per_keyword_choice;
    std::size_t candidates_examined = 0;
};

// First result whose URL is unused, in list order.
inline std::optional<Source> next_best(std::span<const Source> results,
                                       const std::unordered_set<std::string>& used_urls,
                                       std::size_t* examined = nullptr) {
    for (const Source& s : results) {
        if (examined) ++*examined;
        if (!used_urls.contains(s.url)) return s;
    }
    return std::nullopt;
}

// First result whose URL is unused and whose domain still has capacity.
inline std::optional<Source> next_different_domain(
    std::span<const Source> results,
    const std::unordered_map<std::string, int>& domain_counts, int kappa,
    const std::unordered_set<std::string>& used_urls, std::size_t* examined = nullptr) {
    for (const Source& s : results) {
        if (examined) ++*examined;
        if (used_urls.contains(s.url)) continue;
        auto it = domain_counts.find(domain_of(s));
        const int count = it == domain_counts.end() ? 0 : it->second;
        if (count < kappa) return s;
    }
    return std::nullopt;
}

using SelectionObserver = std::function<void(const SelectionState&)>;

// Iterates keywords in input order. Per keyword the relevance-top candidate
// is taken, replaced through the URL-dedup fallback if its URL is already
// used, then through the domain-cap fallback if its domain is saturated; a
// keyword whose every candidate is blocked contributes nothing. Selection
// stops contributing once max_sources is reached; remaining keywords are
// reported as budget_exhausted. The observer, when given, sees the state
// after every keyword iteration.
inline SelectionReport select_with_diversity(std::span<const RankedResults> ranked,
                                             const SelectionConfig& config,
                                             const RelevanceProvider& relevance,
                                             const SelectionObserver* observer = nullptr) {
    if (config.kappa < 1) throw std::invalid_argument("kappa must be >= 1");
    if (config.max_sources < 1) throw std::invalid_argument("max_sources must be >= 1");

    SelectionReport report;
    SelectionState state;

    for (const RankedResults& list : ranked) {
        if (static_cast<int>(state.selected.size()) >= config.max_sources) {
            report.skipped_keywords.push_back({list.keyword, SkipReason::BudgetExhausted});
            report.per_keyword_choice.push_back({list.keyword, std::nullopt, 0});
            if (observer) (*observer)(state);
            continue;
        }
        if (list.results.empty()) {
            report.skipped_keywords.push_back({list.keyword, SkipReason::NoResults});
            report.per_keyword_choice.push_back({list.keyword, std::nullopt, 0});
            if (observer) (*observer)(state);
            continue;
        }

        const std::vector<Source> ordered = relevance.rank(list);
        int depth = 0;
        ++report.candidates_examined;
        std::optional<Source> pick = ordered.front();

        if (state.used_urls.contains(pick->url)) {
            depth = 1;
            pick = next_best(ordered, state.used_urls, &report.candidates_examined);
        }
        if (pick) {
            auto it = state.domain_counts.find(domain_of(*pick));
            const int count = it == state.domain_counts.end() ? 0 : it->second;
            if (count >= config.kappa) {
                depth = 2;
                pick = next_different_domain(ordered, state.domain_counts, config.kappa,
                                             state.used_urls, &report.candidates_examined);
            }
        }

        if (!pick) {
            report.skipped_keywords.push_back({list.keyword, SkipReason::AllCandidatesBlocked});
            report.per_keyword_choice.push_back({list.keyword, std::nullopt, depth});
            if (observer) (*observer)(state);
            continue;
        }

        state.selected.push_back(*pick);
        state.used_urls.insert(pick->url);
        state.domain_counts[domain_of(*pick)] += 1;
        report.per_keyword_choice.push_back({list.keyword, pick->url, depth});
        if (observer) (*observer)(state);
    }

    report.selected = std::move(state.selected);
    return report;
}

} // namespace locmerge
