#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "locmerge/clock.hpp"

// Budget-enforcing fetch scheduler. Each source gets a total time budget;
// individual attempts are capped separately; on a cut-off or failed attempt
// the next alternate URL is tried. At most fetch_concurrency sources are in
// flight at once. Execution is a deterministic event simulation driven by
// the injected clock, so identical inputs give identical outcomes and
// identical timing regardless of host load.

namespace locmerge {

struct BudgetConfig {
    std::int64_t per_source_total_ms = 45000;
    std::int64_t per_step_ms = 15000;
    int max_alternates = 4;
    int fetch_concurrency = 3;
};

enum class FetchOutcome { Ok, StepTimeout, BudgetExceeded, ExhaustedAlternates };

inline std::string_view to_string(FetchOutcome outcome) {
    switch (outcome) {
        case FetchOutcome::Ok: return "ok";
        case FetchOutcome::StepTimeout: return "step_timeout";
        case FetchOutcome::BudgetExceeded: return "budget_exceeded";
        case FetchOutcome::ExhaustedAlternates: return "exhausted_alternates";
    }
    return "ok";
}

// What one attempt against a URL would do.
struct FetchAttemptSpec {
    std::int64_t latency_ms = 0;
    bool ok = true;
};

// Must be safe for concurrent invocation; the shipped providers are pure
// lookups.
class FetchProvider {
public:
    virtual ~FetchProvider() = default;
    virtual FetchAttemptSpec attempt(const std::string& url) const = 0;
};

struct FetchTask {
    std::string url;
    std::vector<std::string> alternates;
};

struct FetchRecord {
    std::string url;
    FetchOutcome outcome = FetchOutcome::Ok;
    std::int64_t charged_ms = 0;
    int attempts = 0;
};

// Observability taps for tests; called with the simulation time.
struct SchedulerHooks {
    std::function<void(std::int64_t t_ms, const std::string& url)> on_attempt_start;
    std::function<void(std::int64_t t_ms, const std::string& url)> on_attempt_end;
};

// Charging rule: an attempt that completes is charged its latency; an
// attempt cut off (by the step cap or by the remaining budget) is charged
// the cap it hit. Once the cumulative charge reaches the per-source budget
// the source is abandoned even if alternates remain.
inline std::vector<FetchRecord> schedule_fetch(const std::vector<FetchTask>& tasks,
                                               const BudgetConfig& budget,
                                               const FetchProvider& fetcher, Clock& clock,
                                               const SchedulerHooks* hooks = nullptr) {
    if (budget.per_step_ms < 1 || budget.per_source_total_ms < budget.per_step_ms)
        throw std::invalid_argument("per_step_ms must be in [1, per_source_total_ms]");
    if (budget.max_alternates < 1) throw std::invalid_argument("max_alternates must be >= 1");
    if (budget.fetch_concurrency < 1)
        throw std::invalid_argument("fetch_concurrency must be >= 1");

    struct TaskState {
        std::size_t index = 0;
        int next_attempt = 0; // 0 = primary, 1.. = alternates
        std::int64_t charged_ms = 0;
        int attempts_made = 0;
        // in-flight attempt
        std::string current_url;
        std::int64_t attempt_duration = 0;
        bool attempt_completed = false; // ran to the provider's full latency
        bool attempt_ok = false;
    };

    struct Event {
        std::int64_t finish_ms = 0;
        std::size_t task_index = 0;
        bool operator>(const Event& other) const {
            if (finish_ms != other.finish_ms) return finish_ms > other.finish_ms;
            return task_index > other.task_index;
        }
    };

    std::vector<FetchRecord> records(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) records[i].url = tasks[i].url;

    std::vector<TaskState> states(tasks.size());
    std::deque<std::size_t> pending;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        states[i].index = i;
        pending.push_back(i);
    }

    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> running;
    std::int64_t sim_time = 0;

    auto alternates_cap = [&](std::size_t i) {
        return std::min<std::size_t>(tasks[i].alternates.size(),
                                     static_cast<std::size_t>(budget.max_alternates));
    };

    auto start_attempt = [&](std::size_t i) {
        TaskState& st = states[i];
        st.current_url = st.next_attempt == 0
                             ? tasks[i].url
                             : tasks[i].alternates[static_cast<std::size_t>(st.next_attempt - 1)];
        const FetchAttemptSpec spec = fetcher.attempt(st.current_url);
        const std::int64_t cap =
            std::min(budget.per_step_ms, budget.per_source_total_ms - st.charged_ms);
        st.attempt_duration = std::min(std::max<std::int64_t>(spec.latency_ms, 0), cap);
        st.attempt_completed = spec.latency_ms <= cap;
        st.attempt_ok = spec.ok;
        st.attempts_made += 1;
        st.next_attempt += 1;
        if (hooks && hooks->on_attempt_start) hooks->on_attempt_start(sim_time, st.current_url);
        running.push({sim_time + st.attempt_duration, i});
    };

    int in_flight = 0;
    while (!pending.empty() || !running.empty()) {
        while (in_flight < budget.fetch_concurrency && !pending.empty()) {
            const std::size_t i = pending.front();
            pending.pop_front();
            ++in_flight;
            start_attempt(i);
        }

        const Event ev = running.top();
        running.pop();
        sim_time = ev.finish_ms;
        clock.advance_to(sim_time);

        TaskState& st = states[ev.task_index];
        if (hooks && hooks->on_attempt_end) hooks->on_attempt_end(sim_time, st.current_url);
        st.charged_ms += st.attempt_duration;

        FetchRecord& rec = records[ev.task_index];
        if (st.attempt_completed && st.attempt_ok) {
            rec.outcome = FetchOutcome::Ok;
        } else if (st.charged_ms >= budget.per_source_total_ms) {
            rec.outcome = FetchOutcome::BudgetExceeded;
        } else if (static_cast<std::size_t>(st.next_attempt) <=
                   alternates_cap(ev.task_index)) {
            start_attempt(ev.task_index); // same slot, next alternate
            continue;
        } else {
            rec.outcome = tasks[ev.task_index].alternates.empty()
                              ? FetchOutcome::StepTimeout
                              : FetchOutcome::ExhaustedAlternates;
        }
        rec.charged_ms = st.charged_ms;
        rec.attempts = st.attempts_made;
        --in_flight;
    }

    return records;
}

} // namespace locmerge
