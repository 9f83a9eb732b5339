// Acceptance gate: every release-blocking behavior of the library, checked
// end to end by independent oracles and randomized suites. Prints one
// PASS/FAIL line per criterion and exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "locmerge/json_io.hpp"
#include "locmerge/locmerge.hpp"
#include "oracles.hpp"

using namespace locmerge;

namespace {

Locale locale_of(const char* text) {
    auto parsed = Locale::try_parse(text);
    if (!parsed) throw std::logic_error(std::string("bad locale literal ") + text);
    return *parsed;
}

// ---------------------------------------------------------------- criterion 1

bool allocation_constraints(std::string& detail) {
    std::mt19937_64 rng(907001);
    const char* locales[8] = {"tr-tr", "de-de", "us-en", "fr-fr",
                              "es-es", "it-it", "jp-ja", "gb-en"};
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto n = oracles::rand_between(rng, 1, 8);
        LocaleMix mix;
        std::vector<std::int64_t> weights;
        for (std::int64_t j = 0; j < n; ++j) {
            const auto w = oracles::rand_between(rng, 1, 20);
            mix.entries.push_back({locale_of(locales[j]), w});
            weights.push_back(w);
        }
        const auto total = oracles::rand_between(rng, n, 10 * n);
        const auto out = allocate_locale_counts(mix, total);
        std::vector<std::int64_t> counts;
        for (const auto& c : out.counts) counts.push_back(c.count);
        if (!oracles::allocation_feasible(weights, total, counts)) ++violations;
    }
    detail = "10000 randomized instances, " + std::to_string(violations) +
             " constraint violations";
    return violations == 0;
}

// ---------------------------------------------------------------- criterion 2

bool allocation_oracle(std::string& detail) {
    const char* locales[4] = {"tr-tr", "de-de", "us-en", "fr-fr"};
    long long instances = 0;
    int misses = 0;
    for (int n = 1; n <= 4; ++n) {
        std::vector<std::int64_t> weights(static_cast<std::size_t>(n), 1);
        while (true) {
            for (std::int64_t total = n; total <= 12; ++total) {
                ++instances;
                LocaleMix mix;
                for (int j = 0; j < n; ++j)
                    mix.entries.push_back({locale_of(locales[j]), weights[j]});
                const auto out = allocate_locale_counts(mix, total);
                std::vector<std::int64_t> counts;
                for (const auto& c : out.counts) counts.push_back(c.count);
                const auto feasible = oracles::enumerate_feasible(weights, total);
                if (std::find(feasible.begin(), feasible.end(), counts) == feasible.end())
                    ++misses;
            }
            int pos = 0;
            while (pos < n && ++weights[pos] > 5) {
                weights[pos] = 1;
                ++pos;
            }
            if (pos == n) break;
        }
    }
    detail = std::to_string(instances) + " exhaustive instances, " +
             std::to_string(misses) + " outside the brute-force feasible set";
    return misses == 0;
}

// ---------------------------------------------------------------- criterion 3

bool cascade_truth_table(std::string& detail) {
    int checked = 0;
    int wrong = 0;

    const std::string tlds[3] = {"uk", "de", "com"}; // override key / ccTLD / generic
    for (const auto& tld : tlds) {
        for (int mask = 0; mask < 16; ++mask) {
            const bool with_override = mask & 1;
            const bool with_cc = mask & 2;
            const bool with_publisher = mask & 4;
            const bool with_language = mask & 8;

            OverrideMap overrides; // empty unless the override signal is on
            if (with_override) overrides.entries.emplace(tld, CountryCode("gb"));
            GenericTldSet generic = GenericTldSet::defaults();
            if (with_cc)
                generic.members.erase(tld);
            else
                generic.members.insert(tld);

            Source source;
            source.url = "http://example." + tld + "/page";
            if (with_publisher) source.publisher_country = CountryCode("fr");
            if (with_language) source.language = LanguageCode("de");

            InferenceResult expected;
            if (with_override)
                expected = {CountryCode("gb"), InferenceBranch::Override};
            else if (with_cc && tld.size() == 2 && iso::is_country(tld))
                expected = {CountryCode(tld), InferenceBranch::CcTld};
            else if (with_publisher)
                expected = {CountryCode("fr"), InferenceBranch::ModelMetadata};
            else if (with_language)
                expected = {CountryCode("de"), InferenceBranch::LanguageFallback};
            else
                expected = {std::nullopt, InferenceBranch::None};

            const auto got =
                infer_country(source, overrides, LanguageFallbackMap::defaults(), generic);
            ++checked;
            if (!(got == expected)) ++wrong;
        }
    }

    // Determinism: two invocations on the same input always agree, and an
    // absent country coincides exactly with the "no rule fired" branch.
    std::mt19937_64 rng(907003);
    const char* hosts[] = {"example.uk", "site.de",   "shop.com",  "x.co.uk",
                           "a.io",       "b.museum",  "c.fr",      "d.xx",
                           "e.com.tr",   "f.gov",     "archiv.ac.uk"};
    const char* langs[] = {"tr", "de", "en", "xx", "nl"};
    for (int i = 0; i < 10000; ++i) {
        Source source;
        source.url = std::string("http://") +
                     hosts[oracles::rand_between(rng, 0, 10)] + "/p" +
                     std::to_string(oracles::rand_between(rng, 1, 5));
        if (oracles::rand_between(rng, 0, 1) == 1)
            source.publisher_country = CountryCode("tr");
        if (oracles::rand_between(rng, 0, 1) == 1)
            source.language = LanguageCode(langs[oracles::rand_between(rng, 0, 4)]);
        const auto first = infer_country(source);
        const auto second = infer_country(source);
        ++checked;
        if (!(first == second)) ++wrong;
        if (first.country.has_value() == (first.branch == InferenceBranch::None)) ++wrong;
    }

    detail = "48 truth-table combinations plus 10000 determinism probes, " +
             std::to_string(wrong) + " mismatches";
    return wrong == 0;
}

// ---------------------------------------------------------------- criterion 4

bool diversity_invariants(std::string& detail) {
    std::mt19937_64 rng(907004);
    const RankOrderRelevance relevance;
    int violations = 0;
    long long oracle_checked = 0;

    auto run_instance = [&](const std::vector<RankedResults>& ranked, int kappa,
                            int max_sources) {
        SelectionConfig config;
        config.kappa = kappa;
        config.max_sources = max_sources;
        bool cap_ok = true;
        SelectionObserver observer = [&](const SelectionState& state) {
            for (const auto& [domain, count] : state.domain_counts)
                if (count > kappa) cap_ok = false;
            if (static_cast<int>(state.selected.size()) > max_sources) cap_ok = false;
        };
        const auto report = select_with_diversity(ranked, config, relevance, &observer);
        if (!cap_ok) ++violations;
        return report;
    };

    for (int i = 0; i < 10000; ++i) {
        const int kappa = 1 + i % 3;
        const int max_sources = static_cast<int>(oracles::rand_between(rng, 1, 8));
        const auto ranked = oracles::random_instance(rng, 6, 5, 4);
        run_instance(ranked, kappa, max_sources);
    }

    // Small instances double-checked against the straight-line transcription
    // of the selection loop.
    for (int i = 0; i < 3000; ++i) {
        const int kappa = 1 + i % 3;
        const int max_sources = static_cast<int>(oracles::rand_between(rng, 1, 6));
        const auto ranked = oracles::random_instance(rng, 4, 4, 3);
        const auto report = run_instance(ranked, kappa, max_sources);

        std::vector<std::vector<std::string>> keyword_urls;
        for (const auto& list : ranked) {
            std::vector<std::string> urls;
            for (const auto& s : list.results) urls.push_back(s.url);
            keyword_urls.push_back(std::move(urls));
        }
        const auto expected =
            oracles::straight_line_selection(keyword_urls, kappa, max_sources);
        std::vector<std::string> got;
        for (const auto& s : report.selected) got.push_back(s.url);
        ++oracle_checked;
        if (got != expected) ++violations;
    }

    detail = "10000 randomized instances with per-iteration cap checks, " +
             std::to_string(oracle_checked) + " straight-line oracle comparisons, " +
             std::to_string(violations) + " violations";
    return violations == 0;
}

// ---------------------------------------------------------------- criterion 5

bool aggregator_bound(std::string& detail) {
    std::mt19937_64 rng(907005);
    const std::vector<std::string> aggregators = {"agg-one.com", "agg-two.com",
                                                  "agg-three.com"};
    const RankOrderRelevance relevance;
    int violations = 0;
    long long path_counter = 0;

    for (int i = 0; i < 2000; ++i) {
        std::vector<RankedResults> ranked;
        const auto keywords = oracles::rand_between(rng, 1, 6);
        for (std::int64_t k = 0; k < keywords; ++k) {
            RankedResults list;
            list.keyword = "kw" + std::to_string(k);
            const auto results = oracles::rand_between(rng, 1, 5);
            for (std::int64_t r = 0; r < results; ++r) {
                Source s;
                if (oracles::rand_between(rng, 1, 10) <= 7)
                    s.url = "http://" + aggregators[static_cast<std::size_t>(
                                            oracles::rand_between(rng, 0, 2))] +
                            "/p" + std::to_string(++path_counter);
                else
                    s.url = "http://local" + std::to_string(++path_counter) + ".de/p1";
                s.rank = static_cast<int>(list.results.size());
                list.results.push_back(std::move(s));
            }
            ranked.push_back(std::move(list));
        }

        SelectionConfig config;
        config.kappa = 1;
        config.max_sources = 6;
        const auto report = select_with_diversity(ranked, config, relevance);

        int aggregator_count = 0;
        for (const auto& s : report.selected)
            if (std::find(aggregators.begin(), aggregators.end(), domain_of(s)) !=
                aggregators.end())
                ++aggregator_count;
        if (aggregator_count > 3) ++violations;

        if (report.selected.size() >= 2) {
            std::vector<LabeledSource> labeled;
            for (const auto& s : report.selected)
                labeled.push_back({s, false, infer_country(s)});
            const auto metrics = compute_metrics(labeled);
            if (!metrics.ddr || *metrics.ddr != 0.0) ++violations;
        }
    }

    // Every result drawn from one aggregator domain: exactly one source is
    // ever selected, regardless of how many keywords or URLs it floods.
    for (int i = 0; i < 500; ++i) {
        std::vector<RankedResults> ranked;
        const auto keywords = oracles::rand_between(rng, 1, 5);
        for (std::int64_t k = 0; k < keywords; ++k) {
            RankedResults list;
            list.keyword = "kw" + std::to_string(k);
            const auto results = oracles::rand_between(rng, 1, 4);
            for (std::int64_t r = 0; r < results; ++r) {
                Source s;
                s.url = "http://only-agg.com/p" + std::to_string(++path_counter);
                s.rank = static_cast<int>(list.results.size());
                list.results.push_back(std::move(s));
            }
            ranked.push_back(std::move(list));
        }
        SelectionConfig config;
        config.kappa = 1;
        config.max_sources = 8;
        const auto report = select_with_diversity(ranked, config, relevance);
        if (report.selected.size() != 1) ++violations;
    }

    detail = "2000 mixed instances (aggregator count <= 3, exact-zero duplication) "
             "and 500 single-aggregator instances (exactly 1 selected), " +
             std::to_string(violations) + " violations";
    return violations == 0;
}

// ---------------------------------------------------------------- criterion 6

bool convergence_calculator(std::string& detail) {
    const double grid[] = {0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
    const std::int64_t ks[] = {1, 2, 3, 5, 10, 50, 100, 1000};
    int checked = 0;
    int wrong = 0;

    for (double alpha : grid)
        for (double beta : grid)
            for (std::int64_t k : ks) {
                const double got = loi_success_probability({alpha, beta, k});
                const double want =
                    -std::expm1(static_cast<double>(k) * std::log1p(-alpha * beta));
                ++checked;
                if (!(std::abs(got - want) < 1e-12)) ++wrong;
            }

    for (double alpha : {0.05, 0.3, 0.9})
        for (double beta : {0.1, 0.7}) {
            double previous = 0.0;
            for (std::int64_t k = 1; k <= 200; ++k) {
                const double p = loi_success_probability({alpha, beta, k});
                ++checked;
                if (p < previous - 1e-15) ++wrong;
                previous = p;
            }
        }

    const double limit_probe = loi_success_probability({0.1, 0.5, 1000});
    ++checked;
    if (!(std::abs(limit_probe - 1.0) < 1e-9)) ++wrong;

    detail = std::to_string(checked) + " closed-form, monotonicity and limit checks, " +
             std::to_string(wrong) + " out of tolerance";
    return wrong == 0;
}

// ---------------------------------------------------------------- criterion 7

bool projection_enforcement(std::string& detail) {
    ResearchBrief brief;
    brief.query_understanding = "qu";
    brief.source_strategy = "ss";
    brief.keyword_guidance = "kg";
    brief.summary_style = "st";
    brief.locale_hint = "lh";
    brief.locale_mix.entries.push_back({locale_of("tr-tr"), 1});

    int excluded_pairs = 0;
    int wrong = 0;
    for (Stage stage : {Stage::Keyword, Stage::Selection, Stage::Summary}) {
        const auto projection = project_brief(brief, stage);
        for (const auto& field : all_brief_fields()) {
            const std::string tmpl = "{" + field + "}";
            if (projection_fields(stage).contains(field)) {
                try {
                    render_brief_into_prompt(projection, tmpl);
                } catch (...) {
                    ++wrong;
                }
            } else {
                ++excluded_pairs;
                try {
                    render_brief_into_prompt(projection, tmpl);
                    ++wrong; // absent field rendered: containment is broken
                } catch (const MissingFieldError&) {
                } catch (...) {
                    ++wrong;
                }
            }
        }
    }

    detail = std::to_string(excluded_pairs) +
             " (stage, excluded-field) pairs rejected, allowed fields rendered, " +
             std::to_string(wrong) + " breaches";
    return wrong == 0 && excluded_pairs == 8;
}

// ---------------------------------------------------------------- criterion 8

class MapFetchSpecs final : public FetchProvider {
public:
    std::unordered_map<std::string, FetchAttemptSpec> specs;

    FetchAttemptSpec attempt(const std::string& url) const override {
        auto it = specs.find(url);
        return it == specs.end() ? FetchAttemptSpec{} : it->second;
    }
};

bool scheduler_ledger(std::string& detail) {
    std::mt19937_64 rng(907008);
    const BudgetConfig budget; // 45000 ms per source, 15000 ms per step, 4, 3
    int violations = 0;

    for (int i = 0; i < 1000; ++i) {
        MapFetchSpecs provider;
        std::vector<FetchTask> tasks;
        std::vector<int> alternate_counts;
        int url_counter = 0;
        const auto task_count = oracles::rand_between(rng, 1, 6);
        for (std::int64_t t = 0; t < task_count; ++t) {
            auto fresh_url = [&] {
                std::string url = "http://s" + std::to_string(i) + "-" +
                                  std::to_string(++url_counter) + ".com/x";
                provider.specs[url] = {oracles::rand_between(rng, 0, 40000),
                                       oracles::rand_between(rng, 1, 10) <= 8};
                return url;
            };
            FetchTask task;
            task.url = fresh_url();
            const auto alternates = oracles::rand_between(rng, 0, 6);
            for (std::int64_t a = 0; a < alternates; ++a)
                task.alternates.push_back(fresh_url());
            alternate_counts.push_back(static_cast<int>(alternates));
            tasks.push_back(std::move(task));
        }

        VirtualClock clock;
        bool ok = true;
        int in_flight = 0;
        std::unordered_map<std::string, std::int64_t> started_at;
        SchedulerHooks hooks;
        hooks.on_attempt_start = [&](std::int64_t t_ms, const std::string& url) {
            ++in_flight;
            if (in_flight > budget.fetch_concurrency) ok = false;
            started_at[url] = t_ms;
        };
        hooks.on_attempt_end = [&](std::int64_t t_ms, const std::string& url) {
            --in_flight;
            if (t_ms - started_at[url] > budget.per_step_ms) ok = false;
        };

        const auto records = schedule_fetch(tasks, budget, provider, clock, &hooks);
        if (records.size() != tasks.size()) ok = false;
        for (std::size_t t = 0; t < records.size(); ++t) {
            if (records[t].charged_ms > budget.per_source_total_ms) ok = false;
            if (records[t].attempts >
                1 + std::min(budget.max_alternates, alternate_counts[t]))
                ok = false;
        }
        if (!ok) ++violations;
    }

    detail = "1000 randomized latency schedules under the virtual clock, " +
             std::to_string(violations) + " budget/step/concurrency breaches";
    return violations == 0;
}

// ---------------------------------------------------------------- criterion 9

bool golden_run(std::string& detail) {
    const auto fixtures =
        load_fixture_file(std::string(LOCMERGE_DATA_DIR) + "/demo_fixtures.json");
    const auto raw = load_brief_file(std::string(LOCMERGE_DATA_DIR) + "/demo_brief.json");

    PipelineConfig config;
    config.normalization.default_locale = locale_of("us-en");
    config.normalization.total_budget = 6;
    config.selection.kappa = 1;
    config.selection.max_sources = 6;

    const auto brief = make_research_brief(raw, config.normalization);
    VirtualClock clock;
    const auto run = run_pipeline(brief, fixtures, config, clock);
    const std::string rendered = to_json(run).dump(2) + "\n";

    std::ifstream golden_file(std::string(LOCMERGE_GOLDEN_DIR) + "/pipeline_run.golden.json",
                              std::ios::binary);
    if (!golden_file) {
        detail = "golden file missing";
        return false;
    }
    std::ostringstream buffer;
    buffer << golden_file.rdbuf();

    int wrong = 0;
    if (rendered != buffer.str()) ++wrong;

    if (run.allocation.counts.size() != 3) ++wrong;
    for (const auto& c : run.allocation.counts)
        if (c.count != 2) ++wrong;

    const std::vector<std::string> expected_urls = {
        "http://oteller.com.tr/istanbul",
        "http://tripadvisor.com/HotelReviews-Istanbul",
        "http://hotelpreis-vergleich.de/berlin",
        "http://bewertungen.hotel-kritik.de/berlin",
        "http://hotelrates-usa.com/new-york",
    };
    std::vector<std::string> selected_urls;
    for (const auto& s : run.selection.selected) selected_urls.push_back(s.url);
    if (selected_urls != expected_urls) ++wrong;

    if (run.selection.candidates_examined != 9) ++wrong;
    if (run.selection.skipped_keywords.size() != 1 ||
        run.selection.skipped_keywords[0].keyword != "new york hotel reviews" ||
        run.selection.skipped_keywords[0].reason != SkipReason::NoResults)
        ++wrong;

    if (run.fetched.size() != 5) ++wrong;
    const std::int64_t expected_charges[] = {4000, 2500, 3500, 2000, 18000};
    const int expected_attempts[] = {1, 1, 1, 1, 2};
    for (std::size_t t = 0; t < run.fetched.size() && t < 5; ++t) {
        if (run.fetched[t].outcome != FetchOutcome::Ok) ++wrong;
        if (run.fetched[t].charged_ms != expected_charges[t]) ++wrong;
        if (run.fetched[t].attempts != expected_attempts[t]) ++wrong;
    }

    if (!run.metrics.fpr || *run.metrics.fpr != 0.6) ++wrong;
    if (!run.metrics.ddr || *run.metrics.ddr != 0.0) ++wrong;
    if (run.metrics.lc != 3) ++wrong;

    detail = "byte-stable against the committed golden document; hand-walked "
             "allocation, selection, fetch ledger and metrics agree (" +
             std::to_string(wrong) + " mismatches)";
    return wrong == 0;
}

// --------------------------------------------------------------- criterion 10

bool scaling_proxy(std::string& detail) {
    std::mt19937_64 rng(907010);
    const RankOrderRelevance relevance;
    const int sizes[] = {2, 4, 8, 16};
    const int results_per_keyword = 10;
    std::vector<double> ratios;
    long long path_counter = 0;

    for (int keywords : sizes) {
        double total_examined = 0.0;
        const int instances = 100;
        for (int i = 0; i < instances; ++i) {
            std::vector<RankedResults> ranked;
            for (int k = 0; k < keywords; ++k) {
                RankedResults list;
                list.keyword = "kw" + std::to_string(k);
                for (int r = 0; r < results_per_keyword; ++r) {
                    Source s;
                    s.url = "http://d" +
                            std::to_string(oracles::rand_between(rng, 1, 2 * keywords)) +
                            ".com/p" + std::to_string(++path_counter);
                    s.rank = r;
                    list.results.push_back(std::move(s));
                }
                ranked.push_back(std::move(list));
            }
            SelectionConfig config;
            config.kappa = 1;
            config.max_sources = keywords;
            const auto report = select_with_diversity(ranked, config, relevance);
            total_examined += static_cast<double>(report.candidates_examined);
        }
        ratios.push_back(total_examined / instances /
                         (static_cast<double>(keywords) * results_per_keyword));
    }

    const auto [min_it, max_it] = std::minmax_element(ratios.begin(), ratios.end());
    const bool ok = *max_it <= 2.0 && *max_it / *min_it <= 2.0;
    char buffer[160];
    std::snprintf(buffer, sizeof buffer,
                  "examined/(|K|*R) at |K|=2,4,8,16: %.3f %.3f %.3f %.3f (spread %.2fx)",
                  ratios[0], ratios[1], ratios[2], ratios[3], *max_it / *min_it);
    detail = buffer;
    return ok;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_seconds; // 0 = no stated bound
        bool (*check)(std::string&);
    };
    const Criterion criteria[] = {
        {"allocation constraint suite", 5.0, allocation_constraints},
        {"allocation oracle equivalence", 10.0, allocation_oracle},
        {"country cascade truth table", 5.0, cascade_truth_table},
        {"diversity invariant suite", 10.0, diversity_invariants},
        {"aggregator domain bound", 0.0, aggregator_bound},
        {"convergence calculator", 1.0, convergence_calculator},
        {"projection enforcement", 1.0, projection_enforcement},
        {"scheduler budget ledger", 5.0, scheduler_ledger},
        {"end-to-end golden run", 1.0, golden_run},
        {"candidate-examination scaling", 0.0, scaling_proxy},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = criterion.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("unexpected exception: ") + e.what();
            ok = false;
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && criterion.limit_seconds > 0.0 && seconds > criterion.limit_seconds) {
            ok = false;
            detail += "; exceeded the " + std::to_string(criterion.limit_seconds) +
                      "s runtime bound";
        }
        std::printf("%s - %s (%s; %.2fs)\n", ok ? "PASS" : "FAIL", criterion.name,
                    detail.c_str(), seconds);
        if (!ok) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
