#include "tw/sparsity.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "tw/errors.hpp"

namespace tw {

namespace {

// Dense configuration ids over a fixed input: state * (n+1) + (cut-1).
struct ConfigGraph {
    const TwoWayTransducer& t;
    int n;
    int configs;
    std::vector<std::vector<std::pair<int, int>>> firings;  // config -> (transition, next config)

    explicit ConfigGraph(const TwoWayTransducer& t_, std::string_view w)
        : t(t_), n(static_cast<int>(w.size())), configs(t_.state_count() * (n + 1)) {
        firings.resize(configs);
        for (int q = 0; q < t.state_count(); ++q) {
            for (int cut = 1; cut <= n + 1; ++cut) {
                Configuration c{q, cut};
                for (int ti = 0; ti < static_cast<int>(t.transitions.size()); ++ti) {
                    Configuration next;
                    if (apply_transition(t, w, c, t.transitions[ti], nullptr, &next))
                        firings[id(c)].emplace_back(ti, id(next));
                }
            }
        }
    }

    int id(const Configuration& c) const { return c.state * (n + 1) + (c.cut - 1); }
    Configuration config(int cid) const { return Configuration{cid / (n + 1), cid % (n + 1) + 1}; }

    std::vector<bool> forward_from(const std::vector<int>& seeds) const {
        std::vector<bool> seen(configs, false);
        std::deque<int> queue;
        for (int s : seeds)
            if (!seen[s]) {
                seen[s] = true;
                queue.push_back(s);
            }
        while (!queue.empty()) {
            int c = queue.front();
            queue.pop_front();
            for (auto [ti, nxt] : firings[c])
                if (!seen[nxt]) {
                    seen[nxt] = true;
                    queue.push_back(nxt);
                }
        }
        return seen;
    }

    std::vector<bool> backward_from(const std::vector<int>& seeds) const {
        std::vector<std::vector<int>> preds(configs);
        for (int c = 0; c < configs; ++c)
            for (auto [ti, nxt] : firings[c]) preds[nxt].push_back(c);
        std::vector<bool> seen(configs, false);
        std::deque<int> queue;
        for (int s : seeds)
            if (!seen[s]) {
                seen[s] = true;
                queue.push_back(s);
            }
        while (!queue.empty()) {
            int c = queue.front();
            queue.pop_front();
            for (int p : preds[c])
                if (!seen[p]) {
                    seen[p] = true;
                    queue.push_back(p);
                }
        }
        return seen;
    }
};

}  // namespace

int TaggedEquivalence::find(const TaggedTransition& tt) const {
    for (int i = 0; i < static_cast<int>(tagged.size()); ++i)
        if (tagged[i] == tt) return i;
    return -1;
}

TaggedEquivalence tagged_equivalence(const TwoWayTransducer& t, std::string_view w,
                                     const RunBudget& budget) {
    (void)budget;  // the configuration graph is finite; no cap needed here
    TaggedEquivalence eq;
    eq.input = std::string(w);
    int n = static_cast<int>(w.size());
    ConfigGraph g(t, w);

    std::vector<int> init_ids, final_ids;
    for (int q = 0; q < t.state_count(); ++q) {
        if (t.initial[q]) init_ids.push_back(g.id(Configuration{q, 1}));
        if (t.final[q]) final_ids.push_back(g.id(Configuration{q, n + 1}));
    }
    std::vector<bool> reach_fwd = g.forward_from(init_ids);
    std::vector<bool> reach_bwd = g.backward_from(final_ids);

    // A firing instance (transition, position) is realizable when its source
    // is reachable from an initial configuration and its target co-reaches a
    // final one.
    struct Instance {
        TaggedTransition tt;
        int src_cfg, dst_cfg;
    };
    std::vector<Instance> inst;
    for (int c = 0; c < g.configs; ++c) {
        if (!reach_fwd[c]) continue;
        Configuration cfg = g.config(c);
        int pos = read_position(t, cfg);
        for (auto [ti, nxt] : g.firings[c]) {
            if (!reach_bwd[nxt]) continue;
            inst.push_back(Instance{TaggedTransition{ti, pos}, c, nxt});
        }
    }
    // one node per distinct tagged transition (a tagged transition fires from
    // a unique configuration, so instances and tags coincide)
    for (const Instance& i : inst) eq.tagged.push_back(i.tt);

    int m = static_cast<int>(inst.size());
    eq.reaches.assign(m, std::vector<bool>(m, false));

    // reachability between firing instances via the configuration graph
    for (int a = 0; a < m; ++a) {
        std::vector<bool> seen = g.forward_from({inst[a].dst_cfg});
        for (int b = 0; b < m; ++b)
            eq.reaches[a][b] = (a == b) || seen[inst[b].src_cfg];
    }

    std::vector<int> cls(m, -1);
    for (int a = 0; a < m; ++a) {
        if (cls[a] >= 0) continue;
        int cid = static_cast<int>(eq.classes.size());
        eq.classes.push_back(TaggedClass{});
        for (int b = 0; b < m; ++b)
            if (cls[b] < 0 && eq.reaches[a][b] && eq.reaches[b][a]) cls[b] = cid;
        TaggedClass& c = eq.classes.back();
        c.anchor = n + 2;
        for (int b = 0; b < m; ++b) {
            if (cls[b] != cid) continue;
            c.members.push_back(eq.tagged[b]);
            c.anchor = std::min(c.anchor, eq.tagged[b].position);
            if (t.transitions[eq.tagged[b].transition].productive())
                c.productive.push_back(eq.tagged[b]);
        }
    }
    return eq;
}

SparsityCheck k_sparse_on_input(const TwoWayTransducer& t, std::string_view w, int K) {
    TaggedEquivalence eq = tagged_equivalence(t, w);
    for (const TaggedClass& c : eq.classes) {
        if (static_cast<int>(c.productive.size()) > K) return SparsityCheck{false, c};
    }
    return SparsityCheck{true, std::nullopt};
}

SparsitySweep k_sparse_bounded_check(const TwoWayTransducer& t, int K, int max_len) {
    std::vector<std::string> words{""};
    for (int len = 0; len <= max_len; ++len) {
        std::vector<std::string> next;
        for (const std::string& w : words) {
            SparsityCheck c = k_sparse_on_input(t, w, K);
            if (!c.sparse) return SparsitySweep{false, w, c.violating};
            for (char a : t.alphabet.input) next.push_back(w + a);
        }
        words = std::move(next);
    }
    return SparsitySweep{true, "", std::nullopt};
}

Run normalize_run(const TwoWayTransducer& t, const Run& r) {
    if (!run_is_successful(t, r)) throw NotSuccessfulError("normalize_run: run not successful");
    Run out;
    out.input = r.input;
    int m = r.length();
    int i = 0;
    for (;;) {
        // skip to the last occurrence of the configuration at i, excising the
        // maximal vertical loop anchored there, then keep the step after it
        int j = i;
        for (int k = m; k > i; --k)
            if (r.configs[k] == r.configs[i]) {
                j = k;
                break;
            }
        out.configs.push_back(r.configs[i]);
        if (j == m) break;
        out.steps.push_back(r.steps[j]);
        i = j + 1;
    }
    out.successful = run_is_successful(t, out);
    return out;
}

}  // namespace tw
