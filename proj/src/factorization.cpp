#include "tw/factorization.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tw/errors.hpp"

namespace tw {

Constants Constants::compute(int num_states, int K) {
    Constants c;
    c.K = K;
    c.M = monoid_size_bound(num_states, K);
    c.C = BigUint::pow(c.M, 2 * K);
    c.H = c.M * BigUint(3);
    return c;
}

// --- factorization trees ----------------------------------------------------

namespace {

struct TreeBuilder {
    const std::vector<Flow>& seq;
    FactorizationTree& tree;

    int leaf(int pos) {
        tree.nodes.push_back(TreeNode{seq[pos], pos, pos + 1, -1, {}, 0});
        return static_cast<int>(tree.nodes.size()) - 1;
    }

    int internal(Flow label, std::vector<int> children) {
        TreeNode n;
        n.label = std::move(label);
        n.children = std::move(children);
        n.lo = tree.nodes[n.children.front()].lo;
        n.hi = tree.nodes[n.children.back()].hi;
        for (int c : n.children) n.height = std::max(n.height, tree.nodes[c].height + 1);
        tree.nodes.push_back(std::move(n));
        int idx = static_cast<int>(tree.nodes.size()) - 1;
        for (int c : tree.nodes[idx].children) tree.nodes[c].parent = idx;
        return idx;
    }

    Flow product(int lo, int hi) {  // fold over seq[lo..hi)
        Flow acc = seq[lo];
        for (int p = lo + 1; p < hi; ++p) acc = compose(acc, seq[p]);
        return acc;
    }

    // Splits seq[lo..hi) into blocks sharing one idempotent product when
    // three or more such blocks tile the range; balanced binary otherwise.
    int build(int lo, int hi) {
        if (hi - lo == 1) return leaf(lo);
        if (hi - lo == 2)
            return internal(product(lo, hi), {build(lo, lo + 1), build(lo + 1, lo + 2)});

        for (int split = lo + 1; split <= hi; ++split) {
            Flow cand = product(lo, split);
            if (!is_idempotent(cand)) continue;
            std::vector<std::pair<int, int>> tiles{{lo, split}};
            int at = split;
            bool ok = true;
            while (at < hi) {
                int next = -1;
                Flow acc = Flow::bot();
                for (int q = at + 1; q <= hi; ++q) {
                    acc = (q == at + 1) ? seq[at] : compose(acc, seq[q - 1]);
                    if (acc == cand) {
                        next = q;
                        break;
                    }
                }
                if (next < 0) {
                    ok = false;
                    break;
                }
                tiles.emplace_back(at, next);
                at = next;
            }
            if (ok && tiles.size() >= 3) {
                std::vector<int> kids;
                for (auto [a, b] : tiles) kids.push_back(build(a, b));
                return internal(cand, std::move(kids));
            }
        }

        int mid = lo + (hi - lo) / 2;
        return internal(product(lo, hi), {build(lo, mid), build(mid, hi)});
    }
};

}  // namespace

FactorizationTree build_factorization_tree(const std::vector<Flow>& seq,
                                           const FlowMonoid& monoid) {
    if (seq.empty()) throw InvalidIntervalError("build_factorization_tree: empty sequence");
    for (const Flow& f : seq)
        if (monoid.index.find(f) == monoid.index.end())
            throw BoundExceededError("build_factorization_tree: sequence element outside monoid");
    FactorizationTree tree;
    TreeBuilder tb{seq, tree};
    tree.root = tb.build(0, static_cast<int>(seq.size()));
    std::size_t bound = 3 * monoid.size();
    if (static_cast<std::size_t>(tree.height()) > bound)
        throw BoundExceededError("build_factorization_tree: height bound exceeded");
    return tree;
}

std::vector<std::string> check_factorization_tree(const FactorizationTree& tree,
                                                  const std::vector<Flow>& seq,
                                                  std::size_t monoid_size) {
    std::vector<std::string> bad;
    if (tree.root < 0) {
        bad.push_back("no root");
        return bad;
    }
    // yield
    std::vector<int> leaves;
    std::vector<int> stack{tree.root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (tree.nodes[v].children.empty()) {
            leaves.push_back(v);
            continue;
        }
        for (auto it = tree.nodes[v].children.rbegin(); it != tree.nodes[v].children.rend(); ++it)
            stack.push_back(*it);
    }
    if (leaves.size() != seq.size()) bad.push_back("yield length mismatch");
    for (size_t i = 0; i < std::min(leaves.size(), seq.size()); ++i) {
        const TreeNode& n = tree.nodes[leaves[i]];
        if (!(n.label == seq[i])) bad.push_back("leaf " + std::to_string(i) + " label mismatch");
        if (n.lo != static_cast<int>(i) || n.hi != static_cast<int>(i) + 1)
            bad.push_back("leaf " + std::to_string(i) + " interval mismatch");
    }
    for (size_t v = 0; v < tree.nodes.size(); ++v) {
        const TreeNode& n = tree.nodes[v];
        if (n.children.empty()) continue;
        if (n.children.size() == 1) bad.push_back("unary node");
        Flow acc = tree.nodes[n.children[0]].label;
        for (size_t c = 1; c < n.children.size(); ++c)
            acc = compose(acc, tree.nodes[n.children[c]].label);
        if (!(acc == n.label)) bad.push_back("node " + std::to_string(v) + " label != product");
        if (n.children.size() > 2) {
            const Flow& f = tree.nodes[n.children[0]].label;
            if (!is_idempotent(f)) bad.push_back("node " + std::to_string(v) + " not idempotent");
            for (int c : n.children)
                if (!(tree.nodes[c].label == f))
                    bad.push_back("node " + std::to_string(v) + " children labels differ");
        }
        int lo = tree.nodes[n.children.front()].lo;
        int hi = tree.nodes[n.children.back()].hi;
        if (n.lo != lo || n.hi != hi) bad.push_back("node " + std::to_string(v) + " bad interval");
        for (size_t c = 1; c < n.children.size(); ++c)
            if (tree.nodes[n.children[c - 1]].hi != tree.nodes[n.children[c]].lo)
                bad.push_back("node " + std::to_string(v) + " children not adjacent");
    }
    if (static_cast<std::size_t>(tree.height()) > 3 * monoid_size)
        bad.push_back("height exceeds 3x monoid size");
    return bad;
}

// --- output blocks ----------------------------------------------------------

std::vector<OutInterval> output_blocks(const SynchronizedPair& s, Interval i) {
    int n = static_cast<int>(s.input.size());
    if (i.lo < 0 || i.hi > n + 2 || i.lo > i.hi)
        throw InvalidIntervalError("output_blocks: interval out of range");
    auto in_interval = [&](int x) {
        int y = s.origin[x - 1];
        return i.lo <= y && y < i.hi;
    };
    std::vector<OutInterval> blocks;
    int out_len = static_cast<int>(s.output.size());
    int x = 1;
    while (x <= out_len) {
        if (!in_interval(x)) {
            ++x;
            continue;
        }
        int start = x;
        while (x <= out_len && in_interval(x)) ++x;
        blocks.push_back(OutInterval{start, x - 1});
    }
    return blocks;
}

std::vector<OutInterval> output_blocks(const TwoWayTransducer& t, const Run& r, Interval i) {
    return output_blocks(origin_graph(t, r), i);
}

int distinct_origins(const SynchronizedPair& s, const OutInterval& b) {
    std::set<int> o;
    for (int x = std::max(1, b.lo); x <= std::min<int>(b.hi, s.origin.size()); ++x)
        o.insert(s.origin[x - 1]);
    return static_cast<int>(o.size());
}

OutInterval dominant_output_interval(const SynchronizedPair& s, Interval i, int threshold) {
    OutInterval dom;
    for (const OutInterval& b : output_blocks(s, i)) {
        if (distinct_origins(s, b) <= threshold) continue;
        if (dom.empty()) {
            dom = b;
        } else {
            dom.lo = std::min(dom.lo, b.lo);
            dom.hi = std::max(dom.hi, b.hi);
        }
    }
    return dom;
}

OutInterval dominant_output_interval(const TwoWayTransducer& t, const Run& r, Interval i,
                                     int threshold) {
    return dominant_output_interval(origin_graph(t, r), i, threshold);
}

// --- retargeting ------------------------------------------------------------

namespace {

// Nodes active at a level partition the input: a node is active when its
// height fits but its parent's does not.
std::vector<int> active_nodes(const FactorizationTree& tree, int level) {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(tree.nodes.size()); ++v) {
        const TreeNode& n = tree.nodes[v];
        if (n.height > level) continue;
        if (n.parent >= 0 && tree.nodes[n.parent].height <= level) continue;
        out.push_back(v);
    }
    return out;
}

OutInterval node_bout(const SynchronizedPair& s, const FactorizationTree& tree, int v,
                      int threshold) {
    if (tree.nodes[v].children.empty()) return OutInterval{};  // leaves define nothing
    return dominant_output_interval(s, Interval{tree.nodes[v].lo, tree.nodes[v].hi}, threshold);
}

int first_position(const TreeNode& n, int input_len) {
    return std::min(std::max(n.lo, 1), input_len);
}
int last_position(const TreeNode& n, int input_len) {
    return std::max(std::min(n.hi - 1, input_len), 1);
}

}  // namespace

Retargeting build_retargeting(const TwoWayTransducer& t, const Run& r,
                              const FactorizationTree& tree, int threshold) {
    if (find_inversion(t, r))
        throw HasInversionError("build_retargeting: run has an inversion");
    SynchronizedPair s = origin_graph(t, r);
    int n = static_cast<int>(s.input.size());
    if (tree.root < 0 || tree.nodes[tree.root].lo != 0 || tree.nodes[tree.root].hi != n + 2)
        throw TreeMismatchError("build_retargeting: tree does not span the padded input");

    int out_len = static_cast<int>(s.output.size());
    Retargeting ret;
    ret.levels = tree.height();
    ret.level_target.assign(ret.levels + 1, std::vector<int>(out_len, -1));
    ret.defined_level.assign(out_len, -1);

    for (int level = 1; level <= ret.levels; ++level) {
        std::vector<int>& cur = ret.level_target[level];
        cur = ret.level_target[level - 1];  // inherit
        for (int v = 0; v < static_cast<int>(tree.nodes.size()); ++v) {
            const TreeNode& node = tree.nodes[v];
            if (node.height != level || node.children.empty()) continue;
            OutInterval dom = node_bout(s, tree, v, threshold);
            if (dom.empty()) continue;
            bool idem_node = node.children.size() > 2;
            std::vector<OutInterval> child_dom;
            for (int c : node.children) child_dom.push_back(node_bout(s, tree, c, threshold));

            for (int x = dom.lo; x <= dom.hi; ++x) {
                if (cur[x - 1] >= 0) continue;
                int y = s.origin[x - 1];
                if (y < node.lo || y >= node.hi) continue;  // origin outside, another node's job
                int ci = -1;
                for (size_t c = 0; c < node.children.size(); ++c) {
                    const TreeNode& ch = tree.nodes[node.children[c]];
                    if (y >= ch.lo && y < ch.hi) {
                        ci = static_cast<int>(c);
                        break;
                    }
                }
                if (ci < 0) continue;
                int z;
                if (!idem_node) {
                    const OutInterval& b1 = child_dom[0];
                    const OutInterval& b2 = child_dom[1];
                    const TreeNode& c1 = tree.nodes[node.children[0]];
                    const TreeNode& c2 = tree.nodes[node.children[1]];
                    if (!b1.empty() && x < b1.lo)
                        z = first_position(c1, n);
                    else if (!b2.empty() && x > b2.hi)
                        z = last_position(c2, n);
                    else
                        z = last_position(c1, n);
                } else {
                    const OutInterval& bc = child_dom[ci];
                    const TreeNode& ch = tree.nodes[node.children[ci]];
                    if (!bc.empty() && x < bc.lo)
                        z = first_position(ch, n);
                    else
                        z = last_position(ch, n);
                }
                cur[x - 1] = z;
                if (ret.defined_level[x - 1] < 0) ret.defined_level[x - 1] = level;
            }

            // Monotone refinement: below the faithful threshold the child
            // dominant intervals may sit out of order; clamping restores
            // order preservation inside this node's interval.
            int floor_target = -1;
            for (int x = 1; x <= out_len; ++x) {
                int z = cur[x - 1];
                if (z < 0 || z < node.lo || z >= node.hi) continue;
                if (z < floor_target)
                    cur[x - 1] = floor_target;
                else
                    floor_target = z;
            }
        }
    }

    OutInterval root_dom = node_bout(s, tree, tree.root, threshold);
    if (root_dom.empty()) {
        ret.degenerate_root = true;
        for (int x = 0; x < out_len; ++x) {
            ret.level_target[ret.levels][x] = 1;
            if (ret.defined_level[x] < 0) ret.defined_level[x] = ret.levels;
        }
    }
    for (int x = 0; x < out_len; ++x)
        if (ret.level_target[ret.levels][x] < 0)
            throw TreeMismatchError("build_retargeting: position " + std::to_string(x + 1) +
                                    " left without a target");
    return ret;
}

SynchronizedPair apply_retargeting(const SynchronizedPair& s, const Retargeting& ret) {
    SynchronizedPair out = s;
    out.origin = ret.target();
    return out;
}

std::vector<RetargetViolation> verify_retargeting(const TwoWayTransducer& t, const Run& r,
                                                  const FactorizationTree& tree,
                                                  const Retargeting& ret, int threshold,
                                                  int visit_bound) {
    std::vector<RetargetViolation> out;
    auto flag = [&](const std::string& code, const std::string& msg) {
        out.push_back(RetargetViolation{code, msg});
    };
    SynchronizedPair s = origin_graph(t, r);
    int levels = tree.height();
    if (ret.levels != levels ||
        static_cast<int>(ret.level_target.size()) != levels + 1 ||
        ret.level_target[0].size() != s.output.size()) {
        flag("shape", "retargeting shape does not match the tree and output");
        return out;
    }

    for (int level = 1; level <= levels; ++level) {
        const std::vector<int>& cur = ret.level_target[level];
        std::vector<int> active = active_nodes(tree, level);
        std::vector<bool> in_dom(s.output.size() + 1, false);
        for (int v : active) {
            OutInterval dom = node_bout(s, tree, v, threshold);
            for (int x = dom.lo; x <= dom.hi; ++x) in_dom[x] = true;
        }
        bool degenerate_now = ret.degenerate_root && level == levels;
        for (size_t x = 1; x <= s.output.size(); ++x) {
            bool defined = cur[x - 1] >= 0;
            if (degenerate_now) {
                if (!defined)
                    flag("defined-set", "level " + std::to_string(level) + ": position " +
                                            std::to_string(x) + " undefined at degenerate root");
                continue;
            }
            if (defined && !in_dom[x])
                flag("defined-set", "level " + std::to_string(level) + ": position " +
                                        std::to_string(x) + " defined outside dominant intervals");
            if (!defined && in_dom[x])
                flag("defined-set", "level " + std::to_string(level) + ": position " +
                                        std::to_string(x) + " in a dominant interval but undefined");
        }

        // interval confinement: source and target of every defined pair fall
        // in the same active node's interval
        if (!degenerate_now) {
            for (size_t x = 1; x <= s.output.size(); ++x) {
                if (cur[x - 1] < 0) continue;
                int y = s.origin[x - 1];
                int z = cur[x - 1];
                bool confined = false;
                for (int v : active) {
                    const TreeNode& node = tree.nodes[v];
                    if (y >= node.lo && y < node.hi) {
                        confined = (z >= node.lo && z < node.hi);
                        break;
                    }
                }
                if (!confined)
                    flag("interval", "level " + std::to_string(level) + ": position " +
                                         std::to_string(x) + " moves outside its interval");
            }
        }

        // per-interval order preservation + boundedness
        long bound = static_cast<long>(level) * 4 * visit_bound * std::max(threshold, 1);
        for (int v : active) {
            const TreeNode& node = tree.nodes[v];
            int prev_target = -1;
            std::map<int, std::set<int>> moved_into;
            for (size_t x = 1; x <= s.output.size(); ++x) {
                if (cur[x - 1] < 0) continue;
                int y = s.origin[x - 1];
                int z = cur[x - 1];
                if (z < node.lo || z >= node.hi) continue;
                if (prev_target >= 0 && z < prev_target)
                    flag("order", "level " + std::to_string(level) + ": targets inside node " +
                                      std::to_string(v) + " not order-preserving at position " +
                                      std::to_string(x));
                prev_target = z;
                if (z != y) moved_into[z].insert(y);
            }
            if (!degenerate_now)
                for (auto& [z, ys] : moved_into)
                    if (static_cast<long>(ys.size()) > bound)
                        flag("boundedness",
                             "level " + std::to_string(level) + ": " + std::to_string(ys.size()) +
                                 " sources moved onto position " + std::to_string(z));
        }
    }

    SynchronizedPair final_pair = apply_retargeting(s, ret);
    if (!is_order_preserving(final_pair))
        flag("global-order", "final retargeted pair is not order-preserving");
    return out;
}

// --- block structure checks --------------------------------------------------

BlockCheckReport check_block_structure(const TwoWayTransducer& t, const Run& r, int threshold,
                                       int visit_bound, bool require_inversion_free) {
    BlockCheckReport rep;
    bool inversion_free = !find_inversion(t, r).has_value();
    if (require_inversion_free && !inversion_free)
        throw HasInversionError("check_block_structure: run has an inversion");
    SynchronizedPair s = origin_graph(t, r);
    int n = static_cast<int>(s.input.size());

    // loop table over plain input intervals
    std::map<std::pair<int, int>, RunFlow> flows;
    auto get_flow = [&](int lo, int hi) -> RunFlow& {
        auto key = std::make_pair(lo, hi);
        auto it = flows.find(key);
        if (it == flows.end()) it = flows.emplace(key, flow_of(t, r, lo, hi)).first;
        return it->second;
    };

    auto large = [&](const OutInterval& b) { return distinct_origins(s, b) > threshold; };

    // every large block meets a productive straight edge of some loop inside
    for (int lo = 1; lo <= n; ++lo) {
        for (int hi = lo + 1; hi <= n + 1; ++hi) {
            Interval iv{lo, hi};
            std::vector<OutInterval> blocks = output_blocks(s, iv);
            std::vector<OutInterval> cands = blocks;
            for (const OutInterval& b : cands) {
                if (!large(b)) continue;
                bool witnessed = false;
                for (int jlo = lo; jlo <= hi - 1 && !witnessed; ++jlo) {
                    for (int jhi = jlo + 1; jhi <= hi && !witnessed; ++jhi) {
                        RunFlow& rf = get_flow(jlo, jhi);
                        if (!is_idempotent(rf.flow)) continue;
                        for (int e : rf.flow.straight_productive_edges()) {
                            std::vector<int> produced =
                                witness_output_positions(t, r, rf.witness[e]);
                            for (int p : produced)
                                if (p >= b.lo && p <= b.hi) {
                                    witnessed = true;
                                    break;
                                }
                            if (witnessed) break;
                        }
                    }
                }
                if (!witnessed)
                    rep.large_block_loop.push_back(
                        "interval [" + std::to_string(lo) + "," + std::to_string(hi) +
                        "): large block [" + std::to_string(b.lo) + "," + std::to_string(b.hi) +
                        "] has no loop crossing");
            }
        }
    }

    if (!inversion_free) return rep;  // ordering/gap checks presume inversion-freeness

    // large blocks of ordered disjoint intervals appear in order
    for (int lo1 = 1; lo1 <= n; ++lo1)
        for (int hi1 = lo1 + 1; hi1 <= n + 1; ++hi1)
            for (int lo2 = hi1; lo2 <= n; ++lo2)
                for (int hi2 = lo2 + 1; hi2 <= n + 1; ++hi2) {
                    for (const OutInterval& b1 : output_blocks(s, Interval{lo1, hi1})) {
                        if (!large(b1)) continue;
                        for (const OutInterval& b2 : output_blocks(s, Interval{lo2, hi2})) {
                            if (!large(b2)) continue;
                            if (!(b1.hi < b2.lo))
                                rep.large_block_order.push_back(
                                    "blocks of [" + std::to_string(lo1) + "," +
                                    std::to_string(hi1) + ") and [" + std::to_string(lo2) + "," +
                                    std::to_string(hi2) + ") out of order");
                        }
                    }
                }

    // dominant-interval gap of a binary split is 4K·threshold-small
    for (int lo = 1; lo <= n; ++lo)
        for (int mid = lo + 1; mid <= n; ++mid)
            for (int hi = mid + 1; hi <= n + 1; ++hi) {
                OutInterval whole = dominant_output_interval(s, Interval{lo, hi}, threshold);
                OutInterval b1 = dominant_output_interval(s, Interval{lo, mid}, threshold);
                OutInterval b2 = dominant_output_interval(s, Interval{mid, hi}, threshold);
                std::set<int> gap_origins;
                for (int x = whole.lo; x <= whole.hi; ++x) {
                    bool covered = (!b1.empty() && x >= b1.lo && x <= b1.hi) ||
                                   (!b2.empty() && x >= b2.lo && x <= b2.hi);
                    if (!covered) gap_origins.insert(s.origin[x - 1]);
                }
                if (static_cast<long>(gap_origins.size()) >
                    4L * visit_bound * std::max(threshold, 1))
                    rep.binary_gap.push_back("split [" + std::to_string(lo) + "," +
                                             std::to_string(mid) + "," + std::to_string(hi) +
                                             "): gap has " + std::to_string(gap_origins.size()) +
                                             " origins");
            }

    // gaps along equal-idempotent-flow factorizations
    for (int lo = 1; lo <= n; ++lo) {
        for (int hi = lo + 2; hi <= n + 1; ++hi) {
            RunFlow& whole_flow = get_flow(lo, hi);
            if (!is_idempotent(whole_flow.flow)) continue;
            int interior = hi - lo - 1;  // candidate cut points lo+1..hi-1
            for (unsigned mask = 1; mask < (1u << interior); ++mask) {
                std::vector<int> bounds{lo};
                for (int b = 0; b < interior; ++b)
                    if (mask & (1u << b)) bounds.push_back(lo + 1 + b);
                bounds.push_back(hi);
                bool same = true;
                for (size_t k = 0; k + 1 < bounds.size() && same; ++k)
                    if (!(get_flow(bounds[k], bounds[k + 1]).flow == whole_flow.flow)) same = false;
                if (!same) continue;

                OutInterval dom = dominant_output_interval(s, Interval{lo, hi}, threshold);
                if (dom.empty()) continue;
                std::vector<OutInterval> child;
                for (size_t k = 0; k + 1 < bounds.size(); ++k)
                    child.push_back(
                        dominant_output_interval(s, Interval{bounds[k], bounds[k + 1]}, threshold));
                std::vector<int> nonempty;
                for (size_t k = 0; k < child.size(); ++k)
                    if (!child[k].empty()) nonempty.push_back(static_cast<int>(k));
                bool ordered = true;
                for (size_t a = 1; a < nonempty.size(); ++a)
                    if (!(child[nonempty[a - 1]].hi < child[nonempty[a]].lo)) ordered = false;
                if (!ordered) {
                    rep.idempotent_gap.push_back("factors of [" + std::to_string(lo) + "," +
                                                 std::to_string(hi) +
                                                 "): child dominant intervals out of order");
                    continue;
                }
                auto check_gap = [&](int xlo, int xhi, int c_from, int c_to) {
                    std::set<int> origins;
                    for (int x = std::max(xlo, dom.lo); x <= std::min(xhi, dom.hi); ++x) {
                        bool in_child = false;
                        for (int k : nonempty)
                            if (x >= child[k].lo && x <= child[k].hi) in_child = true;
                        if (in_child) continue;
                        int y = s.origin[x - 1];
                        origins.insert(y);
                        if (y < bounds[c_from] || y >= bounds[c_to + 1])
                            rep.idempotent_gap.push_back(
                                "factors of [" + std::to_string(lo) + "," + std::to_string(hi) +
                                "): gap origin " + std::to_string(y) +
                                " outside the flanking factors");
                    }
                    long gaps = std::max(c_to - c_from, 1);
                    if (static_cast<long>(origins.size()) >
                        gaps * 2L * visit_bound * std::max(threshold, 1))
                        rep.idempotent_gap.push_back(
                            "factors of [" + std::to_string(lo) + "," + std::to_string(hi) +
                            "): gap with " + std::to_string(origins.size()) + " origins");
                };
                if (nonempty.empty()) {
                    check_gap(dom.lo, dom.hi, 0, static_cast<int>(child.size()) - 1);
                } else {
                    check_gap(dom.lo, child[nonempty.front()].lo - 1, 0, nonempty.front());
                    for (size_t a = 1; a < nonempty.size(); ++a)
                        check_gap(child[nonempty[a - 1]].hi + 1, child[nonempty[a]].lo - 1,
                                  nonempty[a - 1], nonempty[a]);
                    check_gap(child[nonempty.back()].hi + 1, dom.hi, nonempty.back(),
                              static_cast<int>(child.size()) - 1);
                }
            }
        }
    }
    return rep;
}

}  // namespace tw
