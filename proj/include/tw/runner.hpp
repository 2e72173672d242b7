#ifndef TW_RUNNER_HPP
#define TW_RUNNER_HPP

#include <string_view>
#include <vector>

#include "tw/run.hpp"
#include "tw/transducer.hpp"

namespace tw {

struct RunBudget {
    int visit_bound = 3;     // max configurations per cut
    long step_bound = 400;   // max steps per run
    long run_cap = 20000;    // max successful runs returned
};

struct EnumResult {
    std::vector<Run> runs;
    bool truncated = false;  // run_cap hit before the search space was exhausted
};

// All successful runs on w that respect the visit and step bounds, up to
// run_cap, found depth-first. Total because every step grows some cut's
// visit count.
EnumResult enumerate_runs(const TwoWayTransducer& t, std::string_view w, const RunBudget& b);

bool is_k_visit(const Run& r, int k);

// Decides whether every successful run (on every input) is k-visit, by
// reachability over boundary summaries of width <= k+1: reachable accepting
// products that pass through a boundary with k+1 configurations witness a
// violating run. Throws BoundExceededError past state_cap.
bool check_all_runs_k_visit(const TwoWayTransducer& t, int k, long state_cap = 500000);

// Repeats the input factor under loop i (an interval whose flow in r is
// idempotent) n times and rebuilds the run over the pumped word from
// scratch. Throws NotALoopError / InvalidIntervalError.
Run pump_run(const TwoWayTransducer& t, const Run& r, Interval i, int n);

}  // namespace tw

#endif
