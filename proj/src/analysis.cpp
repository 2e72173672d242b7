#include "tw/analysis.hpp"

#include <algorithm>
#include <unordered_map>

#include "tw/errors.hpp"

namespace tw {

bool is_order_preserving(const SynchronizedPair& s) {
    for (size_t x = 1; x < s.origin.size(); ++x)
        if (s.origin[x - 1] > s.origin[x]) return false;
    return true;
}

CrossWidthResult cross_width(const SynchronizedPair& s) {
    int out_len = static_cast<int>(s.output.size());
    int in_len = static_cast<int>(s.input.size());
    CrossWidthResult best;
    // x1 = positions before the split with origin > threshold,
    // x2 = positions from the split on with origin <= threshold. Every cross
    // embeds into such a pair, and every such pair is a cross.
    for (int split = 2; split <= out_len; ++split) {
        for (int thr = 1; thr < in_len; ++thr) {
            std::set<int> o1, o2;
            std::vector<int> x1, x2;
            for (int x = 1; x < split; ++x)
                if (s.origin[x - 1] > thr) {
                    x1.push_back(x);
                    o1.insert(s.origin[x - 1]);
                }
            for (int x = split; x <= out_len; ++x)
                if (s.origin[x - 1] <= thr) {
                    x2.push_back(x);
                    o2.insert(s.origin[x - 1]);
                }
            int w = static_cast<int>(std::min(o1.size(), o2.size()));
            if (w > best.width) {
                best.width = w;
                best.witness = Cross{std::move(x1), std::move(x2), w};
            }
        }
    }
    return best;
}

int cross_width_bruteforce(const SynchronizedPair& s) {
    int n = static_cast<int>(s.output.size());
    if (n > 12) throw BoundExceededError("cross_width_bruteforce: output too long");
    int best = 0;
    long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;  // each position joins x1, x2, or neither
    for (long mask = 0; mask < total; ++mask) {
        long m = mask;
        std::vector<int> x1, x2;
        for (int i = 0; i < n; ++i) {
            int d = m % 3;
            m /= 3;
            if (d == 1) x1.push_back(i + 1);
            if (d == 2) x2.push_back(i + 1);
        }
        if (x1.empty() || x2.empty()) continue;
        bool ok = true;
        std::set<int> o1, o2;
        for (int a : x1)
            for (int b : x2)
                if (!(a < b && s.origin[a - 1] > s.origin[b - 1])) ok = false;
        if (!ok) continue;
        for (int a : x1) o1.insert(s.origin[a - 1]);
        for (int b : x2) o2.insert(s.origin[b - 1]);
        best = std::max(best, static_cast<int>(std::min(o1.size(), o2.size())));
    }
    return best;
}

TraversalSets traversals(const SynchronizedPair& source, const SynchronizedPair& target) {
    if (source.input != target.input || source.output != target.output)
        throw MismatchedPairError("traversals: pairs differ on input or output");
    TraversalSets res;
    for (size_t x = 0; x < source.origin.size(); ++x) {
        int y = source.origin[x];
        int z = target.origin[x];
        if (z > y) {
            for (int mid = y; mid < z; ++mid) res.left_to_right[mid].insert(y);
        } else if (z < y) {
            for (int mid = z + 1; mid <= y; ++mid) res.right_to_left[mid].insert(y);
        }
    }
    return res;
}

int max_traversal(const SynchronizedPair& source, const SynchronizedPair& target) {
    TraversalSets tr = traversals(source, target);
    std::map<int, std::set<int>> merged;
    for (auto& [pos, ys] : tr.left_to_right) merged[pos].insert(ys.begin(), ys.end());
    for (auto& [pos, ys] : tr.right_to_left) merged[pos].insert(ys.begin(), ys.end());
    size_t best = 0;
    for (auto& [pos, ys] : merged) best = std::max(best, ys.size());
    return static_cast<int>(best);
}

std::optional<Inversion> find_inversion(const TwoWayTransducer& t, const Run& r) {
    int n = static_cast<int>(r.input.size());
    struct LoopInfo {
        Interval iv;
        std::vector<int> edges;        // straight productive, canonical indices
        std::vector<int> start_cfg;    // witness start per edge above
    };
    std::vector<LoopInfo> loops;
    for (int lo = 1; lo <= n; ++lo) {
        for (int hi = lo + 1; hi <= n + 1; ++hi) {
            RunFlow rf = flow_of(t, r, lo, hi);
            if (!is_idempotent(rf.flow)) continue;
            LoopInfo info{Interval{lo, hi}, {}, {}};
            for (int e : rf.flow.straight_productive_edges()) {
                info.edges.push_back(e);
                info.start_cfg.push_back(rf.witness[e].first);
            }
            if (!info.edges.empty()) loops.push_back(std::move(info));
        }
    }
    for (const LoopInfo& a : loops) {
        for (const LoopInfo& b : loops) {
            if (!(a.iv.hi <= b.iv.lo)) continue;  // need loop1 < loop2
            for (size_t i = 0; i < a.edges.size(); ++i)
                for (size_t j = 0; j < b.edges.size(); ++j)
                    if (b.start_cfg[j] < a.start_cfg[i])
                        return Inversion{a.iv, b.iv, a.edges[i], b.edges[j]};
        }
    }
    return std::nullopt;
}

std::string WitnessQuintuple::witness_input() const {
    std::string padded = prefix_word + loop1_word + middle_word + loop2_word + suffix_word;
    std::string out;
    for (char c : padded)
        if (!is_marker(c)) out.push_back(c);
    return out;
}

SymbolicInversionResult has_inversion_symbolic(const TwoWayTransducer& t, int K, long cap) {
    FlowMonoid m = generate_monoid(t, K, cap);

    std::vector<int> lefts, rights, idems, mids;
    for (int i = 0; i < static_cast<int>(m.elements.size()); ++i) {
        unsigned roles = m.elements[i].roles;
        const Flow& f = m.elements[i].flow;
        if ((roles & kRoleLeft) && f.l_states.size() == 1 && t.initial[f.l_states[0]])
            lefts.push_back(i);
        if ((roles & kRoleRight) && f.r_states.size() == 1 && t.final[f.r_states[0]])
            rights.push_back(i);
        if (roles & kRoleInterior) {
            mids.push_back(i);
            if (m.element_idempotent(i) && !f.straight_productive_edges().empty())
                idems.push_back(i);
        }
    }

    // Group by boundary profile so only composable factors meet.
    auto by_l = [&](const std::vector<int>& idxs) {
        std::unordered_map<Flow, std::vector<int>, FlowHash> g;
        for (int i : idxs) {
            Flow key;
            key.l_states = m.elements[i].flow.l_states;
            g[key].push_back(i);
        }
        return g;
    };
    auto l_key = [&](int i) {
        Flow key;
        key.l_states = m.elements[i].flow.l_states;
        return key;
    };
    auto r_key = [&](int i) {
        Flow key;
        key.l_states = m.elements[i].flow.r_states;
        return key;
    };
    auto lefts_by_r = [&] {
        std::unordered_map<Flow, std::vector<int>, FlowHash> g;
        for (int i : lefts) g[r_key(i)].push_back(i);
        return g;
    }();
    auto mids_by_l = by_l(mids);
    auto idems_by_l = by_l(idems);
    auto rights_by_l = by_l(rights);

    auto try_quintuple = [&](int f1, int e1, std::optional<int> f2, int e2,
                             int f3) -> std::optional<WitnessQuintuple> {
        std::vector<Flow> flows{m.elements[f1].flow, m.elements[e1].flow};
        if (f2) flows.push_back(m.elements[*f2].flow);
        flows.push_back(m.elements[e2].flow);
        flows.push_back(m.elements[f3].flow);
        int loop1_group = 1;
        int loop2_group = f2 ? 3 : 2;
        int last_group = loop2_group + 1;

        WalkResult w = walk_juxtaposition(flows, 0);
        if (!w.total) return std::nullopt;
        if (w.end_group != static_cast<int>(flows.size())) return std::nullopt;

        // position of each edge in the traversal
        std::vector<std::vector<int>> pos(flows.size());
        for (size_t f = 0; f < flows.size(); ++f) pos[f].assign(flows[f].edges.size(), -1);
        for (int k = 0; k < static_cast<int>(w.order.size()); ++k)
            pos[w.order[k].flow][w.order[k].edge] = k;

        for (int ea : flows[loop1_group].straight_productive_edges()) {
            for (int eb : flows[loop2_group].straight_productive_edges()) {
                if (pos[loop2_group][eb] < pos[loop1_group][ea]) {
                    WitnessQuintuple q;
                    q.prefix = flows[0];
                    q.loop1 = flows[loop1_group];
                    q.middle = f2 ? flows[2] : Flow{};
                    q.loop2 = flows[loop2_group];
                    q.suffix = flows[last_group];
                    q.has_middle = f2.has_value();
                    q.edge1 = ea;
                    q.edge2 = eb;
                    q.prefix_word = m.elements[f1].left_witness;
                    q.loop1_word = m.elements[e1].interior_witness;
                    q.middle_word = f2 ? m.elements[*f2].interior_witness : "";
                    q.loop2_word = m.elements[e2].interior_witness;
                    q.suffix_word = m.elements[f3].right_witness;
                    return q;
                }
            }
        }
        return std::nullopt;
    };

    for (int e1 : idems) {
        auto fl = lefts_by_r.find(l_key(e1));
        if (fl == lefts_by_r.end()) continue;
        for (int e2 : idems) {
            // adjacent loops
            if (m.elements[e1].flow.r_states == m.elements[e2].flow.l_states) {
                auto fr = rights_by_l.find(r_key(e2));
                if (fr != rights_by_l.end()) {
                    for (int f1 : fl->second)
                        for (int f3 : fr->second)
                            if (auto q = try_quintuple(f1, e1, std::nullopt, e2, f3)) {
                                return SymbolicInversionResult{true, q};
                            }
                }
            }
            // separated loops
            auto fm = mids_by_l.find(r_key(e1));
            if (fm == mids_by_l.end()) continue;
            auto fr = rights_by_l.find(r_key(e2));
            if (fr == rights_by_l.end()) continue;
            for (int f2 : fm->second) {
                if (m.elements[f2].flow.r_states != m.elements[e2].flow.l_states) continue;
                for (int f1 : fl->second)
                    for (int f3 : fr->second)
                        if (auto q = try_quintuple(f1, e1, f2, e2, f3)) {
                            return SymbolicInversionResult{true, q};
                        }
            }
        }
    }
    return SymbolicInversionResult{false, std::nullopt};
}

OneWayDecision decide_one_way_resynchronizable_bounded_visit(const TwoWayTransducer& t, int K,
                                                             long cap, long summary_cap) {
    if (!check_all_runs_k_visit(t, K, summary_cap))
        throw NotKVisitError("decide: some successful run is not " + std::to_string(K) +
                             "-visit; rerun with a larger bound");
    SymbolicInversionResult r = has_inversion_symbolic(t, K, cap);
    return OneWayDecision{!r.found, r.witness};
}

std::optional<ConcreteInversionWitness> materialize_inversion_witness(
    const TwoWayTransducer& t, const WitnessQuintuple& w, const RunBudget& budget) {
    std::string input = w.witness_input();
    // Cut positions of the two loops inside the unpadded input. The prefix
    // word starts with the left marker, so its plain length is |prefix|-1.
    int pre = static_cast<int>(w.prefix_word.size()) - 1;
    int l1 = static_cast<int>(w.loop1_word.size());
    int mid = static_cast<int>(w.middle_word.size());
    int l2 = static_cast<int>(w.loop2_word.size());
    Interval loop1{pre + 1, pre + l1 + 1};
    Interval loop2{pre + l1 + mid + 1, pre + l1 + mid + l2 + 1};

    EnumResult en = enumerate_runs(t, input, budget);
    for (const Run& r : en.runs) {
        RunFlow a = flow_of(t, r, loop1);
        RunFlow b = flow_of(t, r, loop2);
        if (!is_idempotent(a.flow) || !is_idempotent(b.flow)) continue;
        for (int ea : a.flow.straight_productive_edges())
            for (int eb : b.flow.straight_productive_edges())
                if (b.witness[eb].first < a.witness[ea].first)
                    return ConcreteInversionWitness{r, Inversion{loop1, loop2, ea, eb}};
    }
    // fall back to any inversion on this input
    for (const Run& r : en.runs)
        if (auto inv = find_inversion(t, r)) return ConcreteInversionWitness{r, *inv};
    return std::nullopt;
}

}  // namespace tw
