#ifndef TW_SPARSITY_HPP
#define TW_SPARSITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "tw/run.hpp"
#include "tw/runner.hpp"
#include "tw/transducer.hpp"

namespace tw {

// A transition together with the input position it reads, restricted to
// those occurring in some successful run on the fixed input.
struct TaggedTransition {
    int transition = -1;
    int position = 0;  // read position, 0 = left marker .. n+1 = right marker

    bool operator==(const TaggedTransition&) const = default;
};

struct TaggedClass {
    std::vector<TaggedTransition> members;
    std::vector<TaggedTransition> productive;
    int anchor = 0;  // leftmost position appearing in the class
};

struct TaggedEquivalence {
    std::string input;
    std::vector<TaggedTransition> tagged;       // realizable tagged transitions
    std::vector<std::vector<bool>> reaches;     // preorder over `tagged` indices
    std::vector<TaggedClass> classes;           // mutual-reachability classes

    bool preceq(int a, int b) const { return reaches[a][b]; }
    int find(const TaggedTransition& tt) const;
};

// Builds the accessibility preorder over tagged transitions on w by
// reachability in the configuration graph, and its equivalence classes.
TaggedEquivalence tagged_equivalence(const TwoWayTransducer& t, std::string_view w,
                                     const RunBudget& budget = RunBudget{});

struct SparsityCheck {
    bool sparse = true;
    std::optional<TaggedClass> violating;
};

// True iff every realizable class on w has at most K productive members.
SparsityCheck k_sparse_on_input(const TwoWayTransducer& t, std::string_view w, int K);

struct SparsitySweep {
    bool sparse_up_to_bound = true;
    std::string witness_input;
    std::optional<TaggedClass> violating;
};

// Sweeps all inputs up to max_len; a refuter and bounded confirmer, not a
// full decision procedure.
SparsitySweep k_sparse_bounded_check(const TwoWayTransducer& t, int K, int max_len);

// Excises maximal vertical loops (factors with equal first and last
// configuration) left to right; the result visits every configuration at
// most once, hence is |transitions|-visit for any machine whose states all
// carry transitions.
Run normalize_run(const TwoWayTransducer& t, const Run& r);

}  // namespace tw

#endif
