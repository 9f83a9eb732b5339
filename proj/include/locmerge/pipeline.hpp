#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "locmerge/allocation.hpp"
#include "locmerge/brief.hpp"
#include "locmerge/budget.hpp"
#include "locmerge/cascade.hpp"
#include "locmerge/clock.hpp"
#include "locmerge/core.hpp"
#include "locmerge/diversity.hpp"
#include "locmerge/errors.hpp"
#include "locmerge/fixtures.hpp"
#include "locmerge/log.hpp"
#include "locmerge/metrics.hpp"

// End-to-end orchestration: normalize the brief's locale mix, allocate the
// keyword budget, look up per-locale keywords, run the searches against the
// fixture set, select sources under the domain-diversity constraint, fetch
// the winners under the time budget and score the result. Entirely
// deterministic when driven by the virtual clock.

namespace locmerge {

struct CascadeMaps {
    OverrideMap overrides = OverrideMap::defaults();
    LanguageFallbackMap language_fallback = LanguageFallbackMap::defaults();
    GenericTldSet generic_tlds = GenericTldSet::defaults();
};

struct PipelineConfig {
    SelectionConfig selection;
    NormalizationConfig normalization;
    BudgetConfig budget;
    CascadeMaps cascade;
    std::uint64_t seed = 0; // echoed into the run record; the fixture-backed
                            // providers are deterministic and ignore it
};

struct LocaleKeywordAssignment {
    Locale locale;
    std::vector<std::string> keywords;
};

struct PipelineRun {
    std::uint64_t seed = 0;
    ResearchBrief brief;
    AllocationVector allocation;
    std::vector<LocaleKeywordAssignment> keywords;
    SelectionReport selection;
    std::vector<FetchRecord> fetched;
    std::vector<LabeledSource> labeled;
    MetricsReport metrics;
};

// Replays canned attempt latencies; URLs outside the fixture set succeed
// instantly.
class FixtureFetchProvider final : public FetchProvider {
public:
    explicit FixtureFetchProvider(const FixtureSet& fixtures) {
        for (const auto& search : fixtures.searches)
            for (const auto& result : search.results)
                latency_.emplace(result.url, result.simulated_latency_ms);
    }

    FetchAttemptSpec attempt(const std::string& url) const override {
        auto it = latency_.find(url);
        return {it == latency_.end() ? 0 : it->second, true};
    }

private:
    std::unordered_map<std::string, std::int64_t> latency_;
};

namespace detail {

inline Source to_source(const SearchResultFixture& fixture, int rank) {
    Source s;
    s.url = fixture.url;
    s.title = fixture.title;
    s.snippet = fixture.snippet;
    s.rank = rank;
    s.publisher_country = fixture.publisher_country;
    s.language = fixture.language;
    return s;
}

} // namespace detail

inline PipelineRun run_pipeline(const ResearchBrief& brief, const FixtureSet& fixtures,
                                const PipelineConfig& config, Clock& clock) {
    PipelineRun run;
    run.seed = config.seed;

    // Normalization is a total function, so re-applying it to an
    // already-valid mix is the identity; it also repairs briefs loaded from
    // untrusted files.
    std::vector<RawLocaleEntry> raw_mix;
    raw_mix.reserve(brief.locale_mix.entries.size());
    for (const auto& e : brief.locale_mix.entries)
        raw_mix.push_back({e.locale.country.value(), e.locale.language.value(), e.weight});
    run.brief = brief;
    run.brief.locale_mix = normalize_locale_mix(raw_mix, config.normalization);

    run.allocation =
        allocate_locale_counts(run.brief.locale_mix, config.normalization.total_budget);
    log_msg(LogLevel::Info, "allocated ", run.allocation.total, " keyword slots across ",
            run.allocation.counts.size(), " locales");

    // The allocation must be honorable: every locale needs at least its
    // allocated number of fixture keywords.
    for (const auto& lc : run.allocation.counts) {
        const auto* keywords = fixtures.keywords_for(lc.locale);
        if (!keywords)
            throw FixtureError("no keywords for locale \"" + lc.locale.to_string() + "\"");
        if (static_cast<std::int64_t>(keywords->size()) < lc.count)
            throw FixtureError("locale \"" + lc.locale.to_string() + "\" has " +
                               std::to_string(keywords->size()) + " keywords, needs " +
                               std::to_string(lc.count));
        LocaleKeywordAssignment assignment{lc.locale, {}};
        assignment.keywords.assign(keywords->begin(),
                                   keywords->begin() + static_cast<std::ptrdiff_t>(lc.count));
        run.keywords.push_back(std::move(assignment));
    }

    // Searches may all run concurrently under the deadline; results are
    // buffered and consumed in keyword order, so a plain ordered loop over
    // the canned fixtures is observationally identical. A search that would
    // miss the deadline yields an empty list, as does a keyword with no
    // fixture entry.
    std::vector<RankedResults> ranked;
    std::map<std::string, double> scores;
    for (const auto& assignment : run.keywords) {
        for (const auto& keyword : assignment.keywords) {
            RankedResults list;
            list.keyword = keyword;
            const SearchFixture* search = fixtures.find_search(keyword);
            if (search && search->search_latency_ms <= config.selection.search_deadline_ms) {
                int rank = 0;
                for (const auto& result : search->results) {
                    list.results.push_back(detail::to_source(result, rank++));
                    if (result.relevance_score)
                        scores.emplace(result.url, *result.relevance_score);
                }
            } else if (search) {
                log_msg(LogLevel::Info, "search for \"", keyword, "\" missed the ",
                        config.selection.search_deadline_ms, "ms deadline");
            }
            ranked.push_back(std::move(list));
        }
    }

    const ScoredRelevance relevance(scores);
    run.selection = select_with_diversity(ranked, config.selection, relevance);
    log_msg(LogLevel::Info, "selected ", run.selection.selected.size(), " sources (",
            run.selection.skipped_keywords.size(), " keywords skipped)");
    for (const auto& choice : run.selection.per_keyword_choice)
        log_msg(LogLevel::Debug, "keyword \"", choice.keyword, "\" -> ",
                choice.chosen_url ? *choice.chosen_url : std::string("<none>"),
                " (fallback depth ", choice.fallback_depth, ")");

    // Fetch the winners; same-keyword runners-up serve as alternates, except
    // URLs that were themselves selected for another keyword.
    std::unordered_map<std::string, std::string> keyword_of_url;
    for (const auto& choice : run.selection.per_keyword_choice)
        if (choice.chosen_url) keyword_of_url.emplace(*choice.chosen_url, choice.keyword);

    std::unordered_map<std::string, std::vector<std::string>> candidates_of_keyword;
    for (const auto& list : ranked) {
        auto& urls = candidates_of_keyword[list.keyword];
        for (const auto& source : relevance.rank(list)) urls.push_back(source.url);
    }

    std::vector<FetchTask> tasks;
    for (const auto& source : run.selection.selected) {
        FetchTask task;
        task.url = source.url;
        auto kw = keyword_of_url.find(source.url);
        if (kw != keyword_of_url.end()) {
            for (const auto& url : candidates_of_keyword[kw->second]) {
                if (static_cast<int>(task.alternates.size()) >= config.budget.max_alternates)
                    break;
                if (url == source.url) continue;
                if (run.selection.per_keyword_choice.end() !=
                    std::find_if(run.selection.per_keyword_choice.begin(),
                                 run.selection.per_keyword_choice.end(),
                                 [&](const KeywordChoice& c) {
                                     return c.chosen_url && *c.chosen_url == url;
                                 }))
                    continue;
                task.alternates.push_back(url);
            }
        }
        tasks.push_back(std::move(task));
    }

    const FixtureFetchProvider fetcher(fixtures);
    run.fetched = schedule_fetch(tasks, config.budget, fetcher, clock);
    for (const auto& record : run.fetched)
        log_msg(LogLevel::Debug, "fetched ", record.url, ": ", to_string(record.outcome), " (",
                record.charged_ms, "ms charged, ", record.attempts, " attempts)");

    for (const auto& source : run.selection.selected) {
        LabeledSource labeled;
        labeled.source = source;
        auto it = fixtures.labels.find(source.url);
        labeled.is_first_party = it != fixtures.labels.end() && it->second;
        labeled.inferred_country = infer_country(source, config.cascade.overrides,
                                                 config.cascade.language_fallback,
                                                 config.cascade.generic_tlds);
        run.labeled.push_back(std::move(labeled));
    }

    run.metrics = compute_metrics(run.labeled);
    return run;
}

} // namespace locmerge
