#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "locmerge/allocation.hpp"
#include "locmerge/errors.hpp"

// The research brief: a six-field strategic document produced upstream and
// handed to each pipeline stage as a projection of only the fields that
// stage may read. Cross-stage reads are impossible by construction: a
// projection simply does not carry the other fields, and rendering a
// template that names one fails.

namespace locmerge {

struct ResearchBrief {
    std::string query_understanding;
    std::string source_strategy;
    std::string keyword_guidance;
    std::string summary_style;
    std::string locale_hint;
    LocaleMix locale_mix;
};

enum class Stage { Keyword, Selection, Summary };

inline std::string_view to_string(Stage stage) {
    switch (stage) {
        case Stage::Keyword: return "keyword";
        case Stage::Selection: return "selection";
        case Stage::Summary: return "summary";
    }
    return "keyword";
}

// Field names as used in brief JSON and prompt templates.
inline const std::set<std::string>& all_brief_fields() {
    static const std::set<std::string> fields = {
        "query_understanding", "source_strategy", "keyword_guidance",
        "summary_style",       "locale_hint",     "locale_mix",
    };
    return fields;
}

inline const std::set<std::string>& projection_fields(Stage stage) {
    static const std::set<std::string> keyword = {
        "query_understanding", "source_strategy", "keyword_guidance",
        "locale_hint",         "locale_mix",
    };
    static const std::set<std::string> selection = {
        "query_understanding", "source_strategy"};
    static const std::set<std::string> summary = {
        "query_understanding", "source_strategy", "summary_style"};
    switch (stage) {
        case Stage::Keyword: return keyword;
        case Stage::Selection: return selection;
        case Stage::Summary: return summary;
    }
    return keyword;
}

// A per-stage view of the brief. Fields outside the stage's projection are
// structurally absent, not blanked.
struct BriefProjection {
    Stage stage = Stage::Keyword;
    std::map<std::string, std::string> fields;
    std::optional<LocaleMix> locale_mix;

    bool has(std::string_view name) const {
        if (name == "locale_mix") return locale_mix.has_value();
        return fields.contains(std::string(name));
    }
};

inline std::string render_locale_mix(const LocaleMix& mix) {
    std::string out;
    for (const auto& entry : mix.entries) {
        if (!out.empty()) out += ", ";
        out += entry.locale.to_string() + ":" + std::to_string(entry.weight);
    }
    return out;
}

inline BriefProjection project_brief(const ResearchBrief& brief, Stage stage) {
    BriefProjection projection;
    projection.stage = stage;
    const auto& allowed = projection_fields(stage);
    if (allowed.contains("query_understanding"))
        projection.fields["query_understanding"] = brief.query_understanding;
    if (allowed.contains("source_strategy"))
        projection.fields["source_strategy"] = brief.source_strategy;
    if (allowed.contains("keyword_guidance"))
        projection.fields["keyword_guidance"] = brief.keyword_guidance;
    if (allowed.contains("summary_style"))
        projection.fields["summary_style"] = brief.summary_style;
    if (allowed.contains("locale_hint"))
        projection.fields["locale_hint"] = brief.locale_hint;
    if (allowed.contains("locale_mix")) projection.locale_mix = brief.locale_mix;
    return projection;
}

namespace detail {

inline bool is_placeholder_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
}

} // namespace detail

// Single-pass substitution of {field} placeholders from the projection.
// Doubled braces escape literals. Substituted values are inert text and are
// never rescanned, so a field value cannot smuggle another placeholder in.
// Referencing any field the projection does not carry throws MissingField;
// this is where projection decoupling is enforced.
inline std::string render_brief_into_prompt(const BriefProjection& projection,
                                            std::string_view tmpl) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t i = 0;
    while (i < tmpl.size()) {
        const char c = tmpl[i];
        if (c == '{') {
            if (i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
                out += '{';
                i += 2;
                continue;
            }
            const auto close = tmpl.find('}', i + 1);
            if (close == std::string_view::npos)
                throw TemplateSyntaxError("unterminated placeholder");
            std::string name(tmpl.substr(i + 1, close - i - 1));
            if (name.empty())
                throw TemplateSyntaxError("empty placeholder name");
            for (char nc : name)
                if (!detail::is_placeholder_char(nc))
                    throw TemplateSyntaxError("invalid placeholder name \"" + name + "\"");
            if (!projection.has(name)) throw MissingFieldError(name);
            if (name == "locale_mix")
                out += render_locale_mix(*projection.locale_mix);
            else
                out += projection.fields.at(name);
            i = close + 1;
            continue;
        }
        if (c == '}') {
            if (i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
                out += '}';
                i += 2;
                continue;
            }
            throw TemplateSyntaxError("stray '}' outside a placeholder");
        }
        out += c;
        ++i;
    }
    return out;
}

struct LoiParameters {
    double alpha = 1.0;  // instruction-following capability, in (0, 1]
    double beta = 1.0;   // semantic clarity, in (0, 1]
    std::int64_t k = 1;  // downstream stage count
};

// Probability that at least one of k independent downstream stages lands the
// induced objective: 1 - (1 - alpha*beta)^k.
inline double loi_success_probability(const LoiParameters& params) {
    if (!(params.alpha > 0.0) || params.alpha > 1.0)
        throw std::domain_error("alpha must be in (0, 1]");
    if (!(params.beta > 0.0) || params.beta > 1.0)
        throw std::domain_error("beta must be in (0, 1]");
    if (params.k < 1) throw std::domain_error("k must be >= 1");
    return 1.0 - std::pow(1.0 - params.alpha * params.beta, params.k);
}

} // namespace locmerge
