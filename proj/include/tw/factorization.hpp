#ifndef TW_FACTORIZATION_HPP
#define TW_FACTORIZATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "tw/analysis.hpp"
#include "tw/bigint.hpp"
#include "tw/flow.hpp"
#include "tw/monoid.hpp"
#include "tw/run.hpp"

namespace tw {

// Derived size constants; these overflow machine words for small machines
// already, so they are exact big integers.
struct Constants {
    int K = 1;
    BigUint M;  // flow monoid size bound
    BigUint C;  // M^{2K}, the block-largeness threshold
    BigUint H;  // 3·M, the factorization tree height bound

    static Constants compute(int num_states, int K);
};

// Ordered unranked tree over a sequence of flows; internal labels are the
// products of their children, nodes with more than two children carry equal
// idempotent child labels. Node intervals are letter positions [lo,hi) of
// the padded input.
struct TreeNode {
    Flow label;
    int lo = 0, hi = 0;
    int parent = -1;
    std::vector<int> children;  // empty = leaf
    int height = 0;
};

struct FactorizationTree {
    std::vector<TreeNode> nodes;
    int root = -1;

    int height() const { return root < 0 ? 0 : nodes[root].height; }
    bool is_leaf(int v) const { return nodes[v].children.empty(); }
};

// Builds a tree of height at most 3·|monoid| for the sequence; greedy on
// idempotent groupings, balanced binary splits otherwise. Any tree passing
// check_factorization_tree is acceptable.
FactorizationTree build_factorization_tree(const std::vector<Flow>& seq, const FlowMonoid& monoid);

std::vector<std::string> check_factorization_tree(const FactorizationTree& tree,
                                                  const std::vector<Flow>& seq,
                                                  std::size_t monoid_size);

// Output interval [lo,hi], 1-based and inclusive; empty when lo > hi.
struct OutInterval {
    int lo = 1, hi = 0;
    bool empty() const { return lo > hi; }
    bool operator==(const OutInterval&) const = default;
};

// Maximal intervals of output positions whose origins fall in the input
// interval (letter positions, markers carry no origins).
std::vector<OutInterval> output_blocks(const SynchronizedPair& s, Interval i);
std::vector<OutInterval> output_blocks(const TwoWayTransducer& t, const Run& r, Interval i);

int distinct_origins(const SynchronizedPair& s, const OutInterval& b);

// Smallest output interval containing every block with more than threshold
// distinct origins; empty if none.
OutInterval dominant_output_interval(const SynchronizedPair& s, Interval i, int threshold);
OutInterval dominant_output_interval(const TwoWayTransducer& t, const Run& r, Interval i,
                                     int threshold);

// Level-by-level origin retargeting along a factorization tree. Levels count
// node heights; leaves define nothing, each level moves the positions of the
// node's dominant interval not covered by its children, the root finishes
// (all positions to input position 1 when its dominant interval is empty).
// A target, once defined, persists upward but may be refined: below the
// faithful largeness threshold the child intervals' dominant parts can sit in
// reversed output order, and the per-node monotone clamp restores order.
struct Retargeting {
    int levels = 0;
    std::vector<std::vector<int>> level_target;  // [level][position-1], -1 = undefined
    std::vector<int> defined_level;              // first level with a target
    bool degenerate_root = false;                // the all-to-first-position case

    const std::vector<int>& target() const { return level_target.back(); }
};

Retargeting build_retargeting(const TwoWayTransducer& t, const Run& r,
                              const FactorizationTree& tree, int threshold);

SynchronizedPair apply_retargeting(const SynchronizedPair& s, const Retargeting& ret);

struct RetargetViolation {
    std::string code;
    std::string message;
};

// Checks, per level: defined set = union of dominant intervals, pairs stay
// inside one node interval, targets order-preserving per interval, and at
// most level·4·K·max(threshold,1) moved sources share a target; plus global
// order preservation at the root.
std::vector<RetargetViolation> verify_retargeting(const TwoWayTransducer& t, const Run& r,
                                                  const FactorizationTree& tree,
                                                  const Retargeting& ret, int threshold,
                                                  int visit_bound);

// Block-structure checks behind the retargeting construction, instantiated
// on one run with the given largeness threshold; returns counterexample
// descriptions (empty = all hold). The ordering/gap checks presume the run
// has no inversion and throw HasInversionError otherwise.
struct BlockCheckReport {
    std::vector<std::string> large_block_loop;    // every large block meets a loop crossing
    std::vector<std::string> large_block_order;   // large blocks of ordered intervals are ordered
    std::vector<std::string> binary_gap;          // dominant-interval gap of a split is bounded
    std::vector<std::string> idempotent_gap;      // gaps along equal-flow factors are bounded
    bool ok() const {
        return large_block_loop.empty() && large_block_order.empty() && binary_gap.empty() &&
               idempotent_gap.empty();
    }
};

BlockCheckReport check_block_structure(const TwoWayTransducer& t, const Run& r, int threshold,
                                       int visit_bound, bool require_inversion_free = true);

}  // namespace tw

#endif
