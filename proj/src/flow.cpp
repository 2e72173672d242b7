#include "tw/flow.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "tw/errors.hpp"

namespace tw {

namespace {

const char* kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::LL: return "LL";
        case EdgeKind::LR: return "LR";
        case EdgeKind::RL: return "RL";
        case EdgeKind::RR: return "RR";
    }
    return "?";
}

// Incidence table: per vertex the unique edge touching it, with role.
struct Incidence {
    std::vector<int> l_edge, r_edge;       // edge index or -1
    std::vector<bool> l_is_src, r_is_src;
    bool ok = true;

    explicit Incidence(const Flow& f) {
        l_edge.assign(f.l_states.size(), -1);
        r_edge.assign(f.r_states.size(), -1);
        l_is_src.assign(f.l_states.size(), false);
        r_is_src.assign(f.r_states.size(), false);
        for (int e = 0; e < static_cast<int>(f.edges.size()); ++e) {
            const FlowEdge& ed = f.edges[e];
            auto put = [&](bool left, int idx, bool src) {
                auto& tab = left ? l_edge : r_edge;
                auto& role = left ? l_is_src : r_is_src;
                if (idx < 0 || idx >= static_cast<int>(tab.size()) || tab[idx] != -1) {
                    ok = false;
                    return;
                }
                tab[idx] = e;
                role[idx] = src;
            };
            put(edge_src_on_left(ed.kind), ed.src, true);
            put(edge_dst_on_left(ed.kind), ed.dst, false);
        }
        for (int v : l_edge)
            if (v == -1) ok = false;
        for (int v : r_edge)
            if (v == -1) ok = false;
    }
};

EdgeKind make_kind(bool src_left, bool dst_left) {
    if (src_left) return dst_left ? EdgeKind::LL : EdgeKind::LR;
    return dst_left ? EdgeKind::RL : EdgeKind::RR;
}

}  // namespace

void Flow::canonicalize() {
    std::sort(edges.begin(), edges.end(), [](const FlowEdge& a, const FlowEdge& b) {
        bool al = edge_src_on_left(a.kind), bl = edge_src_on_left(b.kind);
        if (al != bl) return al;
        return a.src < b.src;
    });
}

std::vector<int> Flow::straight_productive_edges() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i)
        if (is_straight(edges[i].kind) && edges[i].productive) out.push_back(i);
    return out;
}

std::string Flow::brief(const TwoWayTransducer& t) const {
    if (bottom) return "bot";
    std::ostringstream os;
    os << "L[";
    for (size_t i = 0; i < l_states.size(); ++i) os << (i ? "," : "") << t.state_names[l_states[i]];
    os << "] R[";
    for (size_t i = 0; i < r_states.size(); ++i) os << (i ? "," : "") << t.state_names[r_states[i]];
    os << "]";
    for (const FlowEdge& e : edges)
        os << " " << kind_name(e.kind) << e.src << "->" << e.dst << (e.productive ? "*" : "");
    return os.str();
}

std::size_t FlowHash::operator()(const Flow& f) const {
    std::size_t h = f.bottom ? 0x9e3779b97f4a7c15ull : 0x2545f4914f6cdd1dull;
    auto mix = [&h](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (int s : f.l_states) mix(static_cast<std::size_t>(s) + 1);
    mix(0xabcdull);
    for (int s : f.r_states) mix(static_cast<std::size_t>(s) + 1);
    for (const FlowEdge& e : f.edges) {
        mix(static_cast<std::size_t>(e.kind));
        mix(static_cast<std::size_t>(e.src) * 31 + static_cast<std::size_t>(e.dst));
        mix(e.productive ? 7 : 3);
    }
    return h;
}

Flow compose(const Flow& f, const Flow& g) {
    if (f.bottom || g.bottom) return Flow::bot();
    if (f.r_states != g.l_states) return Flow::bot();
    Incidence fi(f), gi(g);
    if (!fi.ok || !gi.ok) return Flow::bot();

    Flow out;
    out.l_states = f.l_states;
    out.r_states = g.r_states;

    std::vector<bool> f_used(f.edges.size(), false), g_used(g.edges.size(), false);

    // Walk each maximal path from a composite source vertex; middles are the
    // glued f.R / g.L vertices.
    auto follow = [&](bool start_left, int start_idx) -> bool {
        bool in_f = start_left;
        int edge = start_left ? fi.l_edge[start_idx] : gi.r_edge[start_idx];
        bool productive = false;
        for (;;) {
            const Flow& layer = in_f ? f : g;
            auto& used = in_f ? f_used : g_used;
            if (used[edge]) return false;
            used[edge] = true;
            const FlowEdge& e = layer.edges[edge];
            productive = productive || e.productive;
            bool dst_left_side = edge_dst_on_left(e.kind);
            if (in_f) {
                if (dst_left_side) {  // composite L endpoint
                    if (start_left && e.dst <= start_idx) return false;  // backward bounce
                    out.edges.push_back(
                        FlowEdge{make_kind(start_left, true), start_idx, e.dst, productive});
                    return true;
                }
                int mid = e.dst;
                if (!gi.l_is_src[mid]) return false;
                edge = gi.l_edge[mid];
                in_f = false;
            } else {
                if (!dst_left_side) {  // composite R endpoint
                    if (!start_left && e.dst <= start_idx) return false;  // backward bounce
                    out.edges.push_back(
                        FlowEdge{make_kind(start_left, false), start_idx, e.dst, productive});
                    return true;
                }
                int mid = e.dst;
                if (!fi.r_is_src[mid]) return false;
                edge = fi.r_edge[mid];
                in_f = true;
            }
        }
    };

    for (int i = 0; i < static_cast<int>(f.l_states.size()); ++i)
        if (fi.l_is_src[i] && !follow(true, i)) return Flow::bot();
    for (int j = 0; j < static_cast<int>(g.r_states.size()); ++j)
        if (gi.r_is_src[j] && !follow(false, j)) return Flow::bot();

    // Leftover edges can only sit on cycles through the glued boundary; no
    // run realizes those, so the product is rejected.
    for (bool u : f_used)
        if (!u) return Flow::bot();
    for (bool u : g_used)
        if (!u) return Flow::bot();

    out.canonicalize();
    return out;
}

bool is_idempotent(const Flow& f) {
    if (f.bottom) return false;
    return compose(f, f) == f;
}

std::vector<std::string> check_flow(const TwoWayTransducer& t, const Flow& f, int visit_bound) {
    std::vector<std::string> bad;
    if (f.bottom) return bad;
    int max_side = 2 * visit_bound;
    if (static_cast<int>(f.l_states.size()) > max_side) bad.push_back("too many L vertices");
    if (static_cast<int>(f.r_states.size()) > max_side) bad.push_back("too many R vertices");
    for (int s : f.l_states)
        if (s < 0 || s >= t.state_count()) bad.push_back("bad L label");
    for (int s : f.r_states)
        if (s < 0 || s >= t.state_count()) bad.push_back("bad R label");
    if (!bad.empty()) return bad;

    Incidence inc(f);
    if (!inc.ok) bad.push_back("some vertex is not the endpoint of exactly one edge");

    for (size_t i = 0; i < f.edges.size(); ++i) {
        const FlowEdge& e = f.edges[i];
        std::string where = "edge " + std::to_string(i) + " (" + kind_name(e.kind) + ")";
        bool src_left = edge_src_on_left(e.kind);
        bool dst_left = edge_dst_on_left(e.kind);
        const auto& src_states = src_left ? f.l_states : f.r_states;
        const auto& dst_states = dst_left ? f.l_states : f.r_states;
        if (e.src < 0 || e.src >= static_cast<int>(src_states.size()) || e.dst < 0 ||
            e.dst >= static_cast<int>(dst_states.size())) {
            bad.push_back(where + ": vertex index out of range");
            continue;
        }
        bool src_right_reading = t.right_reading[src_states[e.src]];
        bool dst_right_reading = t.right_reading[dst_states[e.dst]];
        if (src_left ? !src_right_reading : src_right_reading)
            bad.push_back(where + ": source reading direction wrong");
        if (dst_left ? dst_right_reading : !dst_right_reading)
            bad.push_back(where + ": target reading direction wrong");
        if ((e.kind == EdgeKind::LL || e.kind == EdgeKind::RR) && !(e.src < e.dst))
            bad.push_back(where + ": must point forward");
    }
    return bad;
}

// --- extraction -------------------------------------------------------------

RunFlow flow_of(const TwoWayTransducer& t, const Run& r, int lo, int hi) {
    int n = static_cast<int>(r.input.size());
    int m = r.length();
    if (lo < 0 || hi > n + 2 || lo > hi)
        throw InvalidIntervalError("flow_of: interval [" + std::to_string(lo) + "," +
                                   std::to_string(hi) + ") out of range");
    bool vleft = (lo == 0);
    bool vright = (hi == n + 2);

    struct RawEdge {
        int src_side, src_idx, dst_side, dst_idx;
        bool prod;
        int c0, c1;
    };
    std::vector<RawEdge> raw;
    RunFlow out;

    auto cut = [&](int i) { return r.configs[i].cut; };
    auto state = [&](int i) { return r.configs[i].state; };

    if (lo == hi) {
        // Identity-like flow over one cut (or over a virtual boundary).
        if (vleft || vright) {
            int cfg = vleft ? 0 : m;
            out.flow.l_states = {state(cfg)};
            out.flow.r_states = {state(cfg)};
            raw.push_back(RawEdge{0, 0, 1, 0, false, cfg, cfg});
        } else {
            int k = 0;
            for (int i = 0; i <= m; ++i) {
                if (cut(i) != lo) continue;
                out.flow.l_states.push_back(state(i));
                out.flow.r_states.push_back(state(i));
                if (t.right_reading[state(i)])
                    raw.push_back(RawEdge{0, k, 1, k, false, i, i});
                else
                    raw.push_back(RawEdge{1, k, 0, k, false, i, i});
                ++k;
            }
        }
    } else {
        auto inside = [&](int k) { return lo <= r.steps[k].read_pos && r.steps[k].read_pos < hi; };
        bool end_open = (m > 0) ? inside(m - 1) : vleft;

        std::vector<int> l_of(m + 1, -1), r_of(m + 1, -1);
        if (vleft) {
            out.flow.l_states.push_back(state(0));
        } else {
            for (int i = 0; i <= m; ++i)
                if (cut(i) == lo && !(vright && i == m && end_open)) {
                    l_of[i] = static_cast<int>(out.flow.l_states.size());
                    out.flow.l_states.push_back(state(i));
                }
        }
        if (vright) {
            out.flow.r_states.push_back(state(m));
        } else {
            for (int i = 0; i <= m; ++i)
                if (cut(i) == hi) {
                    r_of[i] = static_cast<int>(out.flow.r_states.size());
                    out.flow.r_states.push_back(state(i));
                }
        }

        struct Open {
            int side, idx, start;
            bool prod;
        };
        std::optional<Open> open;
        auto close = [&](int side, int idx, int end) {
            raw.push_back(RawEdge{open->side, open->idx, side, idx, open->prod, open->start, end});
            open.reset();
        };

        if (vleft) open = Open{0, 0, 0, false};
        for (int i = 0; i <= m; ++i) {
            int side = -1, idx = -1;
            if (!vleft && cut(i) == lo && l_of[i] >= 0) {
                side = 0;
                idx = l_of[i];
            } else if (!vright && cut(i) == hi) {
                side = 1;
                idx = r_of[i];
            }
            if (side >= 0) {
                if (open) close(side, idx, i);
                if (i < m && inside(i)) open = Open{side, idx, i, false};
            }
            if (i < m) {
                if (inside(i)) {
                    if (!open)
                        throw InvalidIntervalError("flow_of: run enters the interval off-boundary");
                    open->prod = open->prod || t.transitions[r.steps[i].transition].productive();
                } else if (open) {
                    throw InvalidIntervalError("flow_of: run leaves the interval off-boundary");
                }
            }
        }
        if (vright) {
            if (open) {
                close(1, 0, m);
            } else {
                if (l_of[m] < 0)
                    throw InvalidIntervalError("flow_of: run end not decomposable here");
                raw.push_back(RawEdge{0, l_of[m], 1, 0, false, m, m});
            }
        } else if (open) {
            throw InvalidIntervalError("flow_of: run ends inside the interval");
        }
    }

    // Canonical edge order with the witness array permuted in parallel.
    std::vector<int> perm(raw.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        if (raw[a].src_side != raw[b].src_side) return raw[a].src_side < raw[b].src_side;
        return raw[a].src_idx < raw[b].src_idx;
    });
    for (int p : perm) {
        const RawEdge& e = raw[p];
        out.flow.edges.push_back(
            FlowEdge{make_kind(e.src_side == 0, e.dst_side == 0), e.src_idx, e.dst_idx, e.prod});
        out.witness.emplace_back(e.c0, e.c1);
    }
    return out;
}

std::vector<RunFlow> letter_flows_of(const TwoWayTransducer& t, const Run& r) {
    int n = static_cast<int>(r.input.size());
    std::vector<RunFlow> out;
    out.reserve(n + 2);
    for (int p = 0; p <= n + 1; ++p) out.push_back(flow_of(t, r, p, p + 1));
    return out;
}

std::vector<int> witness_output_positions(const TwoWayTransducer& t, const Run& r,
                                          std::pair<int, int> wit) {
    std::vector<int> offs = run_output_offsets(t, r);
    std::vector<int> out;
    for (int pos = offs[wit.first] + 1; pos <= offs[wit.second]; ++pos) out.push_back(pos);
    return out;
}

// --- juxtaposition ----------------------------------------------------------

WalkResult walk_juxtaposition(const std::vector<Flow>& flows, int start) {
    if (flows.empty()) throw MismatchedPairError("walk: empty juxtaposition");
    int groups = static_cast<int>(flows.size());
    std::vector<Incidence> inc;
    inc.reserve(flows.size());
    size_t total_edges = 0;
    for (int i = 0; i < groups; ++i) {
        if (flows[i].bottom) throw MismatchedPairError("walk: bottom flow in juxtaposition");
        if (i + 1 < groups && flows[i].r_states != flows[i + 1].l_states)
            throw MismatchedPairError("walk: flows " + std::to_string(i) + "," +
                                      std::to_string(i + 1) + " not composable");
        inc.emplace_back(flows[i]);
        if (!inc.back().ok) throw MismatchedPairError("walk: malformed flow");
        total_edges += flows[i].edges.size();
    }

    WalkResult res;
    if (start < 0 || start >= static_cast<int>(flows[0].l_states.size()))
        throw MismatchedPairError("walk: bad start vertex");

    std::vector<std::vector<bool>> used(groups);
    for (int i = 0; i < groups; ++i) used[i].assign(flows[i].edges.size(), false);

    // Position: boundary group g (0..groups), vertex v within it; arriving
    // from the left means the last edge lives in flow g-1.
    int g = 0, v = start;
    bool from_left = true;  // treat the start as if entered from outside on the left
    for (;;) {
        int flow_idx;
        if (from_left) {
            if (g == groups) break;  // far right
            flow_idx = g;
            if (!inc[flow_idx].l_is_src[v]) break;  // stuck: vertex is a target on both sides
        } else {
            if (g == 0) break;  // far left
            flow_idx = g - 1;
            if (!inc[flow_idx].r_is_src[v]) break;
        }
        int e = from_left ? inc[flow_idx].l_edge[v] : inc[flow_idx].r_edge[v];
        if (used[flow_idx][e]) break;  // guard against malformed input
        used[flow_idx][e] = true;
        res.order.push_back(WalkEdgeRef{flow_idx, e});
        const FlowEdge& ed = flows[flow_idx].edges[e];
        if (edge_dst_on_left(ed.kind)) {
            g = flow_idx;
            v = ed.dst;
            from_left = false;  // landed on an L side: continue into the flow to the left
        } else {
            g = flow_idx + 1;
            v = ed.dst;
            from_left = true;
        }
    }
    res.end_group = g;
    res.end_vertex = v;
    res.total = (res.order.size() == total_edges);
    return res;
}

std::vector<WalkEdgeRef> edge_run_order(const TwoWayTransducer& t,
                                        const std::vector<Flow>& flows) {
    if (flows.empty()) throw NotTotallyOrderedError("edge_run_order: empty juxtaposition");
    for (int v = 0; v < static_cast<int>(flows[0].l_states.size()); ++v) {
        if (!t.initial[flows[0].l_states[v]]) continue;
        WalkResult w = walk_juxtaposition(flows, v);
        if (w.total) return w.order;
    }
    throw NotTotallyOrderedError(
        "edge_run_order: no initial-anchored traversal covers every edge");
}

}  // namespace tw
