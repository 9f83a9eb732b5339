#pragma once

#include <string>

#include <json.hpp>

#include "locmerge/allocation.hpp"
#include "locmerge/brief.hpp"
#include "locmerge/budget.hpp"
#include "locmerge/cascade.hpp"
#include "locmerge/core.hpp"
#include "locmerge/diversity.hpp"
#include "locmerge/metrics.hpp"
#include "locmerge/pipeline.hpp"

// JSON views of the public structs. All serializers emit keys in a fixed
// order (nlohmann::ordered_json) so identical runs produce byte-identical
// documents — the golden-file tests depend on that.

namespace locmerge {

using json = nlohmann::ordered_json;

inline json to_json(const Locale& locale) { return json(locale.to_string()); }

inline json to_json(const WeightedLocale& wl) {
    return json{{"locale", wl.locale.to_string()}, {"weight", wl.weight}};
}

inline json to_json(const LocaleMix& mix) {
    json arr = json::array();
    for (const auto& wl : mix.entries) arr.push_back(to_json(wl));
    return arr;
}

inline json to_json(const AllocationVector& allocation) {
    json arr = json::array();
    for (const auto& lc : allocation.counts)
        arr.push_back(json{{"locale", lc.locale.to_string()}, {"count", lc.count}});
    return json{{"total", allocation.total}, {"counts", arr}};
}

inline json to_json(const Source& source) {
    json obj{{"url", source.url}, {"title", source.title}, {"snippet", source.snippet},
             {"rank", source.rank}};
    if (source.publisher_country)
        obj["publisher_country"] = source.publisher_country->value();
    if (source.language) obj["language"] = source.language->value();
    return obj;
}

inline json to_json(const InferenceResult& result) {
    json obj;
    obj["country"] = result.country ? json(result.country->value()) : json(nullptr);
    obj["branch"] = to_string(result.branch);
    return obj;
}

inline json to_json(const KeywordChoice& choice) {
    json obj{{"keyword", choice.keyword}};
    obj["chosen_url"] = choice.chosen_url ? json(*choice.chosen_url) : json(nullptr);
    obj["fallback_depth"] = choice.fallback_depth;
    return obj;
}

inline json to_json(const SelectionReport& report) {
    json selected = json::array();
    for (const auto& s : report.selected) selected.push_back(to_json(s));
    json skipped = json::array();
    for (const auto& [keyword, reason] : report.skipped_keywords)
        skipped.push_back(json{{"keyword", keyword}, {"reason", to_string(reason)}});
    json choices = json::array();
    for (const auto& c : report.per_keyword_choice) choices.push_back(to_json(c));
    return json{{"selected", selected},
                {"skipped_keywords", skipped},
                {"per_keyword_choice", choices},
                {"candidates_examined", report.candidates_examined}};
}

inline json to_json(const MetricsReport& metrics) {
    json obj = json::object();
    if (metrics.fpr) obj["first_party_ratio"] = *metrics.fpr;
    if (metrics.ddr) obj["domain_duplication_rate"] = *metrics.ddr;
    obj["country_coverage"] = metrics.lc;
    return obj;
}

inline json to_json(const ResearchBrief& brief) {
    return json{{"query_understanding", brief.query_understanding},
                {"source_strategy", brief.source_strategy},
                {"keyword_guidance", brief.keyword_guidance},
                {"summary_style", brief.summary_style},
                {"locale_hint", brief.locale_hint},
                {"locale_mix", to_json(brief.locale_mix)}};
}

inline json to_json(const FetchRecord& record) {
    return json{{"url", record.url},
                {"outcome", to_string(record.outcome)},
                {"charged_ms", record.charged_ms},
                {"attempts", record.attempts}};
}

inline json to_json(const LabeledSource& labeled) {
    return json{{"source", to_json(labeled.source)},
                {"is_first_party", labeled.is_first_party},
                {"inferred_country", to_json(labeled.inferred_country)}};
}

inline json to_json(const PipelineRun& run) {
    json keywords = json::array();
    for (const auto& assignment : run.keywords) {
        json kws = json::array();
        for (const auto& kw : assignment.keywords) kws.push_back(kw);
        keywords.push_back(
            json{{"locale", assignment.locale.to_string()}, {"keywords", kws}});
    }
    json fetched = json::array();
    for (const auto& record : run.fetched) fetched.push_back(to_json(record));
    json labeled = json::array();
    for (const auto& source : run.labeled) labeled.push_back(to_json(source));
    return json{{"seed", run.seed},
                {"brief", to_json(run.brief)},
                {"allocation", to_json(run.allocation)},
                {"keywords", keywords},
                {"selection", to_json(run.selection)},
                {"fetched", fetched},
                {"labeled", labeled},
                {"metrics", to_json(run.metrics)}};
}

} // namespace locmerge
