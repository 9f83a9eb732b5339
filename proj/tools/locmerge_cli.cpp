// Command-line front end over the library: allocation, country inference,
// diversity selection, convergence math, metrics and the full offline
// pipeline simulation. All subcommands print JSON on stdout (convergence
// prints the bare value); diagnostics go to stderr, gated by the
// LOCALE_MERGE_LOG environment variable.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "locmerge/json_io.hpp"
#include "locmerge/locmerge.hpp"

namespace {

using locmerge::json;

json read_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw locmerge::FixtureError(std::string("cannot open ") + what + " file \"" + path + "\"");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw locmerge::FixtureError(std::string("cannot parse ") + what + " file \"" + path +
                                     "\": " + e.what());
    }
}

void print_json(const json& doc) { std::cout << doc.dump(2) << "\n"; }

locmerge::CountryCode parse_country_or_throw(const std::string& text, const std::string& where) {
    auto code = locmerge::CountryCode::try_make(text);
    if (!code) throw locmerge::FixtureError(where + ": \"" + text + "\" is not a 2-letter code");
    return *code;
}

// --- allocate ---------------------------------------------------------------

int run_allocate(const std::string& mix_path, std::int64_t total) {
    const json doc = read_json_file(mix_path, "mix");
    if (!doc.is_array()) throw locmerge::FixtureError("mix file must be a JSON array");

    locmerge::LocaleMix mix;
    for (const auto& entry : doc) {
        if (!entry.is_object() || !entry.contains("country") || !entry.contains("language"))
            throw locmerge::FixtureError("every mix entry needs \"country\" and \"language\"");
        auto country = locmerge::CountryCode::try_make(entry.at("country").get<std::string>());
        auto language = locmerge::LanguageCode::try_make(entry.at("language").get<std::string>());
        if (!country || !language)
            throw locmerge::FixtureError("mix entry has a malformed country or language code");
        std::int64_t weight = 1;
        if (entry.contains("weight")) weight = entry.at("weight").get<std::int64_t>();
        mix.entries.push_back({{*country, *language}, weight});
    }

    print_json(locmerge::to_json(locmerge::allocate_locale_counts(mix, total)));
    return 0;
}

// --- infer-country ----------------------------------------------------------

int run_infer_country(const std::string& url, const std::string& publisher_country,
                      const std::string& language, const std::string& overrides_path,
                      const std::string& fallback_path) {
    locmerge::Source source;
    source.url = url;
    if (!publisher_country.empty())
        source.publisher_country = parse_country_or_throw(publisher_country, "--publisher-country");
    if (!language.empty()) {
        auto code = locmerge::LanguageCode::try_make(language);
        if (!code)
            throw locmerge::FixtureError("--language: \"" + language + "\" is not a 2-letter code");
        source.language = code;
    }

    auto overrides = locmerge::OverrideMap::defaults();
    if (!overrides_path.empty()) {
        overrides.entries.clear();
        const json doc = read_json_file(overrides_path, "overrides");
        if (!doc.is_object()) throw locmerge::FixtureError("overrides file must be a JSON object");
        for (const auto& [tld, value] : doc.items())
            overrides.entries.emplace(
                tld, parse_country_or_throw(value.get<std::string>(), "overrides[" + tld + "]"));
    }

    auto fallback = locmerge::LanguageFallbackMap::defaults();
    if (!fallback_path.empty()) {
        fallback.entries.clear();
        const json doc = read_json_file(fallback_path, "fallback");
        if (!doc.is_object()) throw locmerge::FixtureError("fallback file must be a JSON object");
        for (const auto& [lang, value] : doc.items())
            fallback.entries.emplace(
                lang, parse_country_or_throw(value.get<std::string>(), "fallback[" + lang + "]"));
    }

    print_json(locmerge::to_json(locmerge::infer_country(source, overrides, fallback)));
    return 0;
}

// --- select -----------------------------------------------------------------

int run_select(const std::string& fixtures_path, int kappa, int max_sources) {
    const locmerge::FixtureSet fixtures = locmerge::load_fixture_file(fixtures_path);

    std::vector<locmerge::RankedResults> ranked;
    std::map<std::string, double> scores;
    for (const auto& search : fixtures.searches) {
        locmerge::RankedResults list;
        list.keyword = search.keyword;
        int rank = 0;
        for (const auto& result : search.results) {
            locmerge::Source s;
            s.url = result.url;
            s.title = result.title;
            s.snippet = result.snippet;
            s.rank = rank++;
            s.publisher_country = result.publisher_country;
            s.language = result.language;
            list.results.push_back(std::move(s));
            if (result.relevance_score) scores.emplace(result.url, *result.relevance_score);
        }
        ranked.push_back(std::move(list));
    }

    locmerge::SelectionConfig config;
    config.kappa = kappa;
    config.max_sources = max_sources;
    const locmerge::ScoredRelevance relevance(scores);
    print_json(locmerge::to_json(locmerge::select_with_diversity(ranked, config, relevance)));
    return 0;
}

// --- convergence ------------------------------------------------------------

int run_convergence(double alpha, double beta, std::int64_t k) {
    const double value = locmerge::loi_success_probability({alpha, beta, k});
    std::printf("%.17g\n", value);
    return 0;
}

// --- metrics ----------------------------------------------------------------

int run_metrics(const std::string& labeled_path) {
    const json doc = read_json_file(labeled_path, "labeled-source");
    if (!doc.is_array()) throw locmerge::FixtureError("labeled-source file must be a JSON array");

    std::vector<locmerge::LabeledSource> sources;
    for (const auto& entry : doc) {
        if (!entry.is_object() || !entry.contains("url"))
            throw locmerge::FixtureError("every labeled source needs a \"url\"");
        locmerge::LabeledSource labeled;
        labeled.source.url = entry.at("url").get<std::string>();
        if (entry.contains("title")) labeled.source.title = entry.at("title").get<std::string>();
        if (entry.contains("snippet"))
            labeled.source.snippet = entry.at("snippet").get<std::string>();
        if (entry.contains("rank")) labeled.source.rank = entry.at("rank").get<int>();
        if (entry.contains("publisher_country") && !entry.at("publisher_country").is_null())
            labeled.source.publisher_country = parse_country_or_throw(
                entry.at("publisher_country").get<std::string>(), "publisher_country");
        if (entry.contains("language") && !entry.at("language").is_null()) {
            auto code =
                locmerge::LanguageCode::try_make(entry.at("language").get<std::string>());
            if (!code) throw locmerge::FixtureError("malformed \"language\" on a labeled source");
            labeled.source.language = code;
        }
        if (entry.contains("is_first_party"))
            labeled.is_first_party = entry.at("is_first_party").get<bool>();
        labeled.inferred_country = locmerge::infer_country(labeled.source);
        sources.push_back(std::move(labeled));
    }

    print_json(locmerge::to_json(locmerge::compute_metrics(sources)));
    return 0;
}

// --- simulate ---------------------------------------------------------------

int run_simulate(const std::string& brief_path, const std::string& fixtures_path, int kappa,
                 std::int64_t total, std::uint64_t seed, bool virtual_clock) {
    const locmerge::RawBrief raw = locmerge::load_brief_file(brief_path);
    const locmerge::FixtureSet fixtures = locmerge::load_fixture_file(fixtures_path);

    locmerge::PipelineConfig config;
    config.seed = seed;
    config.selection.kappa = kappa;
    config.normalization.default_locale = {locmerge::CountryCode("us"),
                                           locmerge::LanguageCode("en")};

    // A zero total means "derive it": two keyword slots per locale in the
    // normalized mix.
    locmerge::ResearchBrief brief = locmerge::make_research_brief(raw, config.normalization);
    config.normalization.total_budget =
        total > 0 ? total : 2 * static_cast<std::int64_t>(brief.locale_mix.entries.size());
    config.selection.max_sources = static_cast<int>(config.normalization.total_budget);

    locmerge::VirtualClock vclock;
    locmerge::WallClock wclock;
    locmerge::Clock& clock = virtual_clock ? static_cast<locmerge::Clock&>(vclock)
                                           : static_cast<locmerge::Clock&>(wclock);

    const locmerge::PipelineRun run = locmerge::run_pipeline(brief, fixtures, config, clock);
    print_json(locmerge::to_json(run));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"locale-merge toolkit: weighted allocation, country inference, "
                 "diversity selection and offline pipeline simulation"};
    app.require_subcommand(1);

    std::string mix_path;
    std::int64_t total = 0;
    auto* allocate = app.add_subcommand("allocate", "Distribute a keyword budget across locales");
    allocate->add_option("--mix", mix_path, "JSON array of {country, language, weight}")
        ->required();
    allocate->add_option("--total", total, "Total keyword budget")->required();

    std::string url, publisher_country, language, overrides_path, fallback_path;
    auto* infer = app.add_subcommand("infer-country", "Infer a source's country of origin");
    infer->add_option("--url", url, "Source URL")->required();
    infer->add_option("--publisher-country", publisher_country,
                      "Upstream publisher-country metadata (2-letter code)");
    infer->add_option("--language", language, "Source language (2-letter code)");
    infer->add_option("--overrides", overrides_path, "JSON object mapping TLD to country");
    infer->add_option("--fallback", fallback_path, "JSON object mapping language to country");

    std::string fixtures_path;
    int kappa = 1;
    int max_sources = 1;
    auto* select = app.add_subcommand("select", "Select sources under the domain-diversity cap");
    select->add_option("--fixtures", fixtures_path, "Fixture JSON file")->required();
    select->add_option("--kappa", kappa, "Max selected sources per registrable domain")
        ->default_val(1);
    select->add_option("--max-sources", max_sources, "Selection budget")->required();

    double alpha = 0.0, beta = 0.0;
    std::int64_t k = 1;
    auto* convergence =
        app.add_subcommand("convergence", "Probability that k induction rounds succeed");
    convergence->add_option("--alpha", alpha, "Per-round induction probability (0,1]")->required();
    convergence->add_option("--beta", beta, "Per-round manifestation probability (0,1]")
        ->required();
    convergence->add_option("--k", k, "Number of rounds (>= 1)")->required();

    std::string labeled_path;
    auto* metrics = app.add_subcommand("metrics", "Score a labeled source selection");
    metrics->add_option("--labeled", labeled_path, "JSON array of labeled sources")->required();

    std::string brief_path, sim_fixtures_path;
    int sim_kappa = 1;
    std::int64_t sim_total = 0;
    std::uint64_t seed = 0;
    bool virtual_clock = false;
    auto* simulate = app.add_subcommand("simulate", "Run the full offline pipeline");
    simulate->add_option("--brief", brief_path, "Brief JSON file")->required();
    simulate->add_option("--fixtures", sim_fixtures_path, "Fixture JSON file")->required();
    simulate->add_option("--kappa", sim_kappa, "Max selected sources per registrable domain")
        ->default_val(1);
    simulate->add_option("--total", sim_total,
                         "Total keyword budget (default: 2 per normalized locale)");
    simulate->add_option("--seed", seed, "Echoed into the run record");
    simulate->add_flag("--virtual-clock", virtual_clock,
                       "Simulate fetch timing instead of sleeping");

    try {
        app.parse(argc, argv);
        if (allocate->parsed()) return run_allocate(mix_path, total);
        if (infer->parsed())
            return run_infer_country(url, publisher_country, language, overrides_path,
                                     fallback_path);
        if (select->parsed()) return run_select(fixtures_path, kappa, max_sources);
        if (convergence->parsed()) return run_convergence(alpha, beta, k);
        if (metrics->parsed()) return run_metrics(labeled_path);
        if (simulate->parsed())
            return run_simulate(brief_path, sim_fixtures_path, sim_kappa, sim_total, seed,
                                virtual_clock);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const locmerge::FixtureError& e) {
        locmerge::log_msg(locmerge::LogLevel::Error, e.what());
        return 2;
    } catch (const std::exception& e) {
        locmerge::log_msg(locmerge::LogLevel::Error, e.what());
        return 1;
    }
    return 0;
}
