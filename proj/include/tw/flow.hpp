#ifndef TW_FLOW_HPP
#define TW_FLOW_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tw/run.hpp"
#include "tw/transducer.hpp"

namespace tw {

enum class EdgeKind : std::uint8_t { LL, LR, RL, RR };

inline bool edge_src_on_left(EdgeKind k) { return k == EdgeKind::LL || k == EdgeKind::LR; }
inline bool edge_dst_on_left(EdgeKind k) { return k == EdgeKind::LL || k == EdgeKind::RL; }
inline bool is_straight(EdgeKind k) { return k == EdgeKind::LR || k == EdgeKind::RL; }

struct FlowEdge {
    EdgeKind kind = EdgeKind::LR;
    int src = 0;  // index into the source side's vertex list
    int dst = 0;
    bool productive = false;

    bool operator==(const FlowEdge&) const = default;
};

// Summary of the subruns spanning an input interval: vertices are the
// configurations on the two boundary cuts in occurrence order, labeled by
// states; each maximal subrun inside the interval is one edge. The bottom
// element absorbs undefined compositions.
struct Flow {
    std::vector<int> l_states;
    std::vector<int> r_states;
    std::vector<FlowEdge> edges;  // canonical order, see canonicalize()
    bool bottom = false;

    bool operator==(const Flow&) const = default;

    static Flow bot() {
        Flow f;
        f.bottom = true;
        return f;
    }

    void canonicalize();
    std::vector<int> straight_productive_edges() const;
    std::string brief(const TwoWayTransducer& t) const;
};

struct FlowHash {
    std::size_t operator()(const Flow& f) const;
};

// Glue-and-contract composition; returns bottom when the boundary label
// sequences disagree or the glued graph contains a cycle (a cycle can never
// come from a run, so such products are discarded as unrealizable).
Flow compose(const Flow& f, const Flow& g);

bool is_idempotent(const Flow& f);

// Structural invariants of a flow within visit bound K; empty result = valid.
std::vector<std::string> check_flow(const TwoWayTransducer& t, const Flow& f, int visit_bound);

// Flow of a run on a letter interval [lo,hi) of the padded word, with the
// witnessing subrun of each edge as a configuration index range
// [start_cfg, end_cfg] (start == end for zero-length boundary pieces).
// lo == 0 covers the left marker (the boundary vertex is the run's start),
// hi == n+2 covers the right marker (boundary vertex = the run's end).
struct RunFlow {
    Flow flow;
    std::vector<std::pair<int, int>> witness;  // parallel to flow.edges
};

RunFlow flow_of(const TwoWayTransducer& t, const Run& r, int lo, int hi);
inline RunFlow flow_of(const TwoWayTransducer& t, const Run& r, Interval i) {
    return flow_of(t, r, i.lo, i.hi);
}

// Per-letter flows of the whole padded input, positions 0..n+1.
std::vector<RunFlow> letter_flows_of(const TwoWayTransducer& t, const Run& r);

// Output positions (1-based) produced by steps start_cfg..end_cfg-1.
std::vector<int> witness_output_positions(const TwoWayTransducer& t, const Run& r,
                                          std::pair<int, int> wit);

// --- Juxtaposition ---------------------------------------------------------
// Gluing a composable sequence of flows while keeping the boundary vertex
// groups. Each vertex has one edge per adjacent flow, so following edges is
// deterministic; the walk from a source vertex of the first group orders the
// edges it meets, which is the run order when the flows come from a run.

struct WalkEdgeRef {
    int flow = 0;
    int edge = 0;

    bool operator==(const WalkEdgeRef&) const = default;
};

struct WalkResult {
    std::vector<WalkEdgeRef> order;
    bool total = false;        // every edge of every flow visited
    int end_group = -1;        // boundary group where the walk stopped
    int end_vertex = -1;       // vertex index within that group
};

// Walks from vertex start of the leftmost group (L side of flows[0]).
// Throws MismatchedPairError if consecutive flows are not composable.
WalkResult walk_juxtaposition(const std::vector<Flow>& flows, int start);

// Total accessibility order of all edges, starting from an L-vertex of the
// first flow labeled by an initial state. Throws NotTotallyOrderedError if
// no such traversal covers every edge.
std::vector<WalkEdgeRef> edge_run_order(const TwoWayTransducer& t, const std::vector<Flow>& flows);

}  // namespace tw

#endif
