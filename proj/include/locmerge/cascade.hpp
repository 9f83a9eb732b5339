#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "locmerge/core.hpp"

// Country-of-origin inference for a source: a deterministic priority chain
// over TLD structure, upstream publisher metadata and a language fallback.

namespace locmerge {

// TLD aliases resolved before anything else (e.g. uk -> gb).
struct OverrideMap {
    std::map<std::string, CountryCode, std::less<>> entries;

    static OverrideMap defaults() {
        OverrideMap map;
        map.entries.emplace("uk", CountryCode("gb"));
        return map;
    }

    std::optional<CountryCode> find(std::string_view tld) const {
        auto it = entries.find(tld);
        if (it == entries.end()) return std::nullopt;
        return it->second;
    }
};

struct LanguageFallbackMap {
    std::map<std::string, CountryCode, std::less<>> entries;

    static LanguageFallbackMap defaults() {
        LanguageFallbackMap map;
        const std::pair<const char*, const char*> pairs[] = {
            {"tr", "tr"}, {"de", "de"}, {"en", "us"}, {"ar", "sa"}, {"fr", "fr"},
            {"es", "es"}, {"it", "it"}, {"ja", "jp"}, {"ko", "kr"}, {"zh", "cn"},
            {"pt", "br"}, {"ru", "ru"}, {"nl", "nl"},
        };
        for (const auto& [lang, country] : pairs)
            map.entries.emplace(lang, CountryCode(country));
        return map;
    }

    std::optional<CountryCode> find(const LanguageCode& language) const {
        auto it = entries.find(language.value());
        if (it == entries.end()) return std::nullopt;
        return it->second;
    }
};

enum class InferenceBranch { Override, CcTld, ModelMetadata, LanguageFallback, None };

inline std::string_view to_string(InferenceBranch branch) {
    switch (branch) {
        case InferenceBranch::Override: return "override";
        case InferenceBranch::CcTld: return "cc_tld";
        case InferenceBranch::ModelMetadata: return "model_metadata";
        case InferenceBranch::LanguageFallback: return "language_fallback";
        case InferenceBranch::None: return "none";
    }
    return "none";
}

// Absent country encodes "unknown"; the branch records which rule fired.
struct InferenceResult {
    std::optional<CountryCode> country;
    InferenceBranch branch = InferenceBranch::None;

    friend bool operator==(const InferenceResult&, const InferenceResult&) = default;
};

// Priority chain, first satisfied rule wins:
//   1. override entry for the TLD
//   2. two-letter non-generic TLD that is a valid country code
//   3. upstream publisher-country metadata
//   4. language-to-country fallback
//   5. unknown
// A TLD that is neither an override key nor a valid ccTLD (generic TLDs,
// 3+ letter TLDs, two-letter codes outside the ISO table) carries no
// geographic signal and drops to rules 3-5.
inline InferenceResult infer_country(const Source& source,
                                     const OverrideMap& overrides = OverrideMap::defaults(),
                                     const LanguageFallbackMap& fallback =
                                         LanguageFallbackMap::defaults(),
                                     const GenericTldSet& generic = GenericTldSet::defaults()) {
    const UrlParts parts = parse_url_parts(source.url);
    const std::string& tld = parts.tld;

    if (auto code = overrides.find(tld))
        return {*code, InferenceBranch::Override};

    if (tld.size() == 2 && !generic.contains(tld) && iso::is_country(tld))
        return {CountryCode(tld), InferenceBranch::CcTld};

    if (source.publisher_country)
        return {*source.publisher_country, InferenceBranch::ModelMetadata};

    if (source.language)
        if (auto code = fallback.find(*source.language))
            return {*code, InferenceBranch::LanguageFallback};

    return {std::nullopt, InferenceBranch::None};
}

} // namespace locmerge
