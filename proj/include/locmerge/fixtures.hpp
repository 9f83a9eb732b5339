#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "locmerge/allocation.hpp"
#include "locmerge/brief.hpp"
#include "locmerge/core.hpp"
#include "locmerge/errors.hpp"

// Fixture-backed provider data: per-locale keyword lists, canned search
// results with simulated latencies, and ground-truth labels. One JSON
// document drives a full offline pipeline run.
//
// {
//   "locales":  { "tr-tr": { "keywords": ["...", ...] }, ... },
//   "searches": { "<keyword>": { "search_latency_ms": 0,
//                                "results": [ { "url": "...", "title": "...",
//                                               "snippet": "...",
//                                               "publisher_country": "de",
//                                               "language": "de",
//                                               "relevance_score": 0.9,
//                                               "simulated_latency_ms": 120 } ] } },
//   "labels":   { "<url>": { "is_first_party": true } }
// }
//
// Unknown fields are ignored everywhere.

namespace locmerge {

using json = nlohmann::ordered_json;

struct SearchResultFixture {
    std::string url;
    std::string title;
    std::string snippet;
    std::optional<CountryCode> publisher_country;
    std::optional<LanguageCode> language;
    std::optional<double> relevance_score;
    std::int64_t simulated_latency_ms = 0;
};

struct SearchFixture {
    std::string keyword;
    std::int64_t search_latency_ms = 0;
    std::vector<SearchResultFixture> results;
};

struct LocaleKeywords {
    Locale locale;
    std::vector<std::string> keywords;
};

struct FixtureSet {
    std::vector<LocaleKeywords> locales;  // file order
    std::vector<SearchFixture> searches;  // file order
    std::map<std::string, bool> labels;   // url -> is_first_party

    const SearchFixture* find_search(const std::string& keyword) const {
        for (const auto& s : searches)
            if (s.keyword == keyword) return &s;
        return nullptr;
    }

    const std::vector<std::string>* keywords_for(const Locale& locale) const {
        for (const auto& lk : locales)
            if (lk.locale == locale) return &lk.keywords;
        return nullptr;
    }
};

namespace detail {

inline std::optional<CountryCode> parse_optional_country(const json& obj, const char* key,
                                                         const std::string& where) {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    if (!obj.at(key).is_string())
        throw FixtureError(where + ": \"" + key + "\" must be a string");
    auto code = CountryCode::try_make(obj.at(key).get<std::string>());
    if (!code)
        throw FixtureError(where + ": \"" + key + "\" must be a 2-letter code");
    return code;
}

inline std::optional<LanguageCode> parse_optional_language(const json& obj, const char* key,
                                                           const std::string& where) {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    if (!obj.at(key).is_string())
        throw FixtureError(where + ": \"" + key + "\" must be a string");
    auto code = LanguageCode::try_make(obj.at(key).get<std::string>());
    if (!code)
        throw FixtureError(where + ": \"" + key + "\" must be a 2-letter code");
    return code;
}

} // namespace detail

inline FixtureSet parse_fixture_set(const json& doc) {
    if (!doc.is_object()) throw FixtureError("fixture document must be a JSON object");

    FixtureSet set;

    if (doc.contains("locales")) {
        const auto& locales = doc.at("locales");
        if (!locales.is_object()) throw FixtureError("\"locales\" must be an object");
        for (const auto& [key, value] : locales.items()) {
            auto locale = Locale::try_parse(key);
            if (!locale)
                throw FixtureError("bad locale key \"" + key + "\" (want \"cc-ll\")");
            LocaleKeywords lk{*locale, {}};
            if (value.contains("keywords")) {
                if (!value.at("keywords").is_array())
                    throw FixtureError("locale \"" + key + "\": \"keywords\" must be an array");
                for (const auto& kw : value.at("keywords")) {
                    if (!kw.is_string())
                        throw FixtureError("locale \"" + key + "\": keywords must be strings");
                    lk.keywords.push_back(kw.get<std::string>());
                }
            }
            set.locales.push_back(std::move(lk));
        }
    }

    if (doc.contains("searches")) {
        const auto& searches = doc.at("searches");
        if (!searches.is_object()) throw FixtureError("\"searches\" must be an object");
        for (const auto& [keyword, value] : searches.items()) {
            SearchFixture fixture;
            fixture.keyword = keyword;
            const std::string where = "search \"" + keyword + "\"";
            if (!value.is_object()) throw FixtureError(where + " must be an object");
            if (value.contains("search_latency_ms")) {
                fixture.search_latency_ms = value.at("search_latency_ms").get<std::int64_t>();
                if (fixture.search_latency_ms < 0)
                    throw FixtureError(where + ": negative search_latency_ms");
            }
            std::unordered_set<std::string> seen_urls;
            if (value.contains("results")) {
                if (!value.at("results").is_array())
                    throw FixtureError(where + ": \"results\" must be an array");
                for (const auto& r : value.at("results")) {
                    SearchResultFixture result;
                    if (!r.contains("url") || !r.at("url").is_string())
                        throw FixtureError(where + ": every result needs a string \"url\"");
                    result.url = r.at("url").get<std::string>();
                    try {
                        parse_url_parts(result.url);
                    } catch (const MalformedUrlError&) {
                        throw FixtureError(where + ": unparseable url \"" + result.url + "\"");
                    }
                    if (!seen_urls.insert(result.url).second)
                        throw FixtureError(where + ": duplicate url \"" + result.url + "\"");
                    if (r.contains("title")) result.title = r.at("title").get<std::string>();
                    if (r.contains("snippet")) result.snippet = r.at("snippet").get<std::string>();
                    result.publisher_country =
                        detail::parse_optional_country(r, "publisher_country", where);
                    result.language = detail::parse_optional_language(r, "language", where);
                    if (r.contains("relevance_score") && !r.at("relevance_score").is_null())
                        result.relevance_score = r.at("relevance_score").get<double>();
                    if (r.contains("simulated_latency_ms")) {
                        result.simulated_latency_ms =
                            r.at("simulated_latency_ms").get<std::int64_t>();
                        if (result.simulated_latency_ms < 0)
                            throw FixtureError(where + ": negative simulated_latency_ms");
                    }
                    fixture.results.push_back(std::move(result));
                }
            }
            set.searches.push_back(std::move(fixture));
        }
    }

    if (doc.contains("labels")) {
        const auto& labels = doc.at("labels");
        if (!labels.is_object()) throw FixtureError("\"labels\" must be an object");
        for (const auto& [url, value] : labels.items()) {
            bool first_party = false;
            if (value.is_object() && value.contains("is_first_party"))
                first_party = value.at("is_first_party").get<bool>();
            set.labels[url] = first_party;
        }
    }

    return set;
}

inline FixtureSet load_fixture_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture file \"" + path + "\"");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw FixtureError("cannot parse \"" + path + "\": " + e.what());
    }
    return parse_fixture_set(doc);
}

// Brief as read from disk, before mix normalization.
struct RawBrief {
    std::string query_understanding;
    std::string source_strategy;
    std::string keyword_guidance;
    std::string summary_style;
    std::string locale_hint;
    std::vector<RawLocaleEntry> locale_mix;
};

inline RawBrief parse_raw_brief(const json& doc) {
    if (!doc.is_object()) throw FixtureError("brief document must be a JSON object");
    RawBrief brief;
    auto text = [&](const char* key) {
        return doc.contains(key) && doc.at(key).is_string() ? doc.at(key).get<std::string>()
                                                            : std::string();
    };
    brief.query_understanding = text("query_understanding");
    brief.source_strategy = text("source_strategy");
    brief.keyword_guidance = text("keyword_guidance");
    brief.summary_style = text("summary_style");
    brief.locale_hint = text("locale_hint");
    if (doc.contains("locale_mix")) {
        if (!doc.at("locale_mix").is_array())
            throw FixtureError("\"locale_mix\" must be an array");
        for (const auto& entry : doc.at("locale_mix")) {
            RawLocaleEntry raw;
            if (entry.contains("country") && entry.at("country").is_string())
                raw.country = entry.at("country").get<std::string>();
            if (entry.contains("language") && entry.at("language").is_string())
                raw.language = entry.at("language").get<std::string>();
            if (entry.contains("weight") && entry.at("weight").is_number())
                raw.weight = entry.at("weight").get<std::int64_t>();
            brief.locale_mix.push_back(std::move(raw));
        }
    }
    return brief;
}

inline RawBrief load_brief_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open brief file \"" + path + "\"");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw FixtureError("cannot parse \"" + path + "\": " + e.what());
    }
    return parse_raw_brief(doc);
}

// Hands out validated briefs; the shipped implementation is fixture-backed,
// a live generator can be slotted in behind the same interface.
class BriefProvider {
public:
    virtual ~BriefProvider() = default;
    virtual ResearchBrief get(const NormalizationConfig& config) = 0;
};

inline ResearchBrief make_research_brief(const RawBrief& raw,
                                         const NormalizationConfig& config) {
    ResearchBrief brief;
    brief.query_understanding = raw.query_understanding;
    brief.source_strategy = raw.source_strategy;
    brief.keyword_guidance = raw.keyword_guidance;
    brief.summary_style = raw.summary_style;
    brief.locale_hint = raw.locale_hint;
    brief.locale_mix = normalize_locale_mix(raw.locale_mix, config);
    return brief;
}

class FixtureBriefProvider final : public BriefProvider {
public:
    explicit FixtureBriefProvider(RawBrief raw) : raw_(std::move(raw)) {}

    ResearchBrief get(const NormalizationConfig& config) override {
        return make_research_brief(raw_, config);
    }

private:
    RawBrief raw_;
};

} // namespace locmerge
