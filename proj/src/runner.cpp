#include "tw/runner.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "tw/errors.hpp"
#include "tw/flow.hpp"
#include "tw/monoid.hpp"

namespace tw {

namespace {

struct Search {
    const TwoWayTransducer& t;
    std::string_view w;
    const RunBudget& b;
    EnumResult& res;
    std::vector<int> visits;  // per cut
    Run cur;
    bool capped = false;

    bool dfs() {
        const Configuration c = cur.configs.back();  // copy: the vector reallocates below
        if (t.final[c.state] && c.cut == static_cast<int>(w.size()) + 1) {
            if (static_cast<long>(res.runs.size()) >= b.run_cap) {
                capped = true;
                return false;
            }
            Run r = cur;
            r.successful = true;
            res.runs.push_back(std::move(r));
        }
        if (static_cast<long>(cur.steps.size()) >= b.step_bound) return true;
        for (int ti = 0; ti < static_cast<int>(t.transitions.size()); ++ti) {
            const Transition& tr = t.transitions[ti];
            if (tr.src != c.state) continue;
            int pos;
            Configuration next;
            if (!apply_transition(t, w, c, tr, &pos, &next)) continue;
            if (visits[next.cut] + 1 > b.visit_bound) continue;
            ++visits[next.cut];
            cur.configs.push_back(next);
            cur.steps.push_back(Step{ti, pos});
            bool go_on = dfs();
            cur.steps.pop_back();
            cur.configs.pop_back();
            --visits[next.cut];
            if (!go_on) return false;
        }
        return true;
    }
};

}  // namespace

EnumResult enumerate_runs(const TwoWayTransducer& t, std::string_view w, const RunBudget& b) {
    EnumResult res;
    for (int q = 0; q < t.state_count(); ++q) {
        if (!t.initial[q]) continue;
        Search s{t, w, b, res, std::vector<int>(w.size() + 2, 0), Run{}, false};
        s.cur.input = std::string(w);
        s.cur.configs.push_back(Configuration{q, 1});
        s.visits[1] = 1;
        s.dfs();
        if (s.capped) {
            res.truncated = true;
            break;
        }
    }
    return res;
}

bool is_k_visit(const Run& r, int k) {
    std::vector<int> visits(r.input.size() + 2, 0);
    for (const Configuration& c : r.configs)
        if (++visits[c.cut] > k) return false;
    return true;
}

bool check_all_runs_k_visit(const TwoWayTransducer& t, int k, long state_cap) {
    int wide = k + 1;
    std::vector<char> letters(t.alphabet.input);

    long flow_cap = state_cap;
    std::unordered_map<char, std::vector<Flow>> gen;
    for (char a : letters) gen[a] = generate_letter_flows(t, a, wide, flow_cap);
    std::vector<Flow> left = generate_letter_flows(t, kLeftMark, wide, flow_cap);
    std::vector<Flow> right = generate_letter_flows(t, kRightMark, wide, flow_cap);

    struct State {
        Flow flow;
        bool wide_seen;
        bool operator==(const State&) const = default;
    };
    struct StateHash {
        std::size_t operator()(const State& s) const {
            return FlowHash{}(s.flow) * 2 + (s.wide_seen ? 1 : 0);
        }
    };

    std::unordered_set<State, StateHash> seen;
    std::deque<State> queue;
    auto push = [&](State s) {
        if (static_cast<long>(seen.size()) >= state_cap)
            throw BoundExceededError("k-visit summary search exceeded state cap");
        if (seen.insert(s).second) queue.push_back(std::move(s));
    };

    for (const Flow& f : left) {
        if (f.l_states.size() != 1 || !t.initial[f.l_states[0]]) continue;
        push(State{f, false});
    }

    auto accepts_wide_run = [&](const State& s) -> bool {
        bool boundary_wide = static_cast<int>(s.flow.r_states.size()) == wide;
        for (const Flow& rf : right) {
            Flow full = compose(s.flow, rf);
            if (full.bottom) continue;
            if (full.r_states.size() != 1 || !t.final[full.r_states[0]]) continue;
            if (full.edges.size() != 1) continue;
            if (s.wide_seen || boundary_wide) return true;
        }
        return false;
    };

    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        if (accepts_wide_run(s)) return false;
        bool boundary_wide = static_cast<int>(s.flow.r_states.size()) == wide;
        for (char a : letters) {
            for (const Flow& g : gen[a]) {
                Flow next = compose(s.flow, g);
                if (next.bottom) continue;
                push(State{std::move(next), s.wide_seen || boundary_wide});
            }
        }
    }
    return true;
}

Run pump_run(const TwoWayTransducer& t, const Run& r, Interval i, int n) {
    int len = static_cast<int>(r.input.size());
    if (i.lo < 1 || i.hi > len + 1 || i.lo >= i.hi)
        throw InvalidIntervalError("pump_run: interval must be a non-empty input interval");
    if (n < 1) throw InvalidIntervalError("pump_run: n must be positive");

    RunFlow loop = flow_of(t, r, i);
    if (!is_idempotent(loop.flow))
        throw NotALoopError("pump_run: flow on the interval is not idempotent");

    std::vector<RunFlow> letter = letter_flows_of(t, r);

    // Letter flows of the pumped padded word, each edge remembering the
    // original step (or -1 for the entry/exit pieces).
    std::vector<Flow> flows;
    std::vector<std::vector<int>> step_of;
    auto add_letter = [&](int p) {
        flows.push_back(letter[p].flow);
        std::vector<int> ids;
        for (auto [c0, c1] : letter[p].witness) ids.push_back(c1 > c0 ? c0 : -1);
        step_of.push_back(std::move(ids));
    };
    for (int p = 0; p < i.lo; ++p) add_letter(p);
    for (int copy = 0; copy < n; ++copy)
        for (int p = i.lo; p < i.hi; ++p) add_letter(p);
    for (int p = i.hi; p <= len + 1; ++p) add_letter(p);

    WalkResult walk = walk_juxtaposition(flows, 0);
    if (!walk.total)
        throw NotALoopError("pump_run: pumped juxtaposition does not glue into one run");

    std::string factor = r.input.substr(i.lo - 1, i.hi - i.lo);
    std::string pumped = r.input.substr(0, i.lo - 1);
    for (int copy = 0; copy < n; ++copy) pumped += factor;
    pumped += r.input.substr(i.hi - 1);

    Run out;
    out.input = pumped;
    out.configs.push_back(r.configs.front());
    for (const WalkEdgeRef& we : walk.order) {
        int step = step_of[we.flow][we.edge];
        if (step < 0) continue;  // entry/exit piece
        const Transition& tr = t.transitions[r.steps[step].transition];
        int pos;
        Configuration next;
        if (!apply_transition(t, pumped, out.configs.back(), tr, &pos, &next))
            throw NotALoopError("pump_run: glued step does not fire on the pumped word");
        out.steps.push_back(Step{r.steps[step].transition, pos});
        out.configs.push_back(next);
    }
    out.successful = run_is_successful(t, out);
    if (!out.successful) throw NotALoopError("pump_run: pumped run is not successful");
    return out;
}

}  // namespace tw
