#ifndef TW_ANALYSIS_HPP
#define TW_ANALYSIS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tw/flow.hpp"
#include "tw/monoid.hpp"
#include "tw/run.hpp"
#include "tw/runner.hpp"

namespace tw {

bool is_order_preserving(const SynchronizedPair& s);

// Two output position sets, everything in x1 before everything in x2 while
// all origins of x1 lie strictly right of all origins of x2.
struct Cross {
    std::vector<int> x1, x2;
    int width = 0;
};

struct CrossWidthResult {
    int width = 0;
    Cross witness;  // meaningful when width > 0
};

// Maximal cross width. Sweeps a split point over output positions and an
// origin threshold; for ≤ 10 output positions this is property-tested
// against full subset enumeration.
CrossWidthResult cross_width(const SynchronizedPair& s);

// Exponential reference oracle, only for small outputs.
int cross_width_bruteforce(const SynchronizedPair& s);

struct TraversalSets {
    std::map<int, std::set<int>> left_to_right;  // traversed position -> traversing positions
    std::map<int, std::set<int>> right_to_left;
};

TraversalSets traversals(const SynchronizedPair& source, const SynchronizedPair& target);
int max_traversal(const SynchronizedPair& source, const SynchronizedPair& target);

// Two ordered loops whose productive straight edges appear in reversed run
// order: the witness that a run cannot be made order-preserving.
struct Inversion {
    Interval loop1, loop2;
    int edge1 = -1, edge2 = -1;  // canonical edge indices within the loop flows
};

std::optional<Inversion> find_inversion(const TwoWayTransducer& t, const Run& r);

// Witness for the symbolic search: five composable monoid elements spanning
// marker to marker, the two idempotent loops carrying the reversed edges,
// and letter words realizing each factor.
struct WitnessQuintuple {
    Flow prefix, loop1, middle, loop2, suffix;
    bool has_middle = false;
    int edge1 = -1;  // productive straight edge in loop1 (later in run order)
    int edge2 = -1;  // productive straight edge in loop2 (earlier in run order)
    std::string prefix_word, loop1_word, middle_word, loop2_word, suffix_word;

    // Unpadded input word whose runs exhibit the inversion.
    std::string witness_input() const;
};

struct SymbolicInversionResult {
    bool found = false;
    std::optional<WitnessQuintuple> witness;
};

// Decides whether some successful run has an inversion, by searching the
// flow monoid for an accepting product prefix·loop1·middle·loop2·suffix
// whose traversal uses loop2's productive straight edge before loop1's.
// Requires check_all_runs_k_visit(t, K).
SymbolicInversionResult has_inversion_symbolic(const TwoWayTransducer& t, int K,
                                               long cap = 200000);

struct OneWayDecision {
    bool one_way_resynchronizable = false;
    std::optional<WitnessQuintuple> witness;  // set on NO
};

OneWayDecision decide_one_way_resynchronizable_bounded_visit(const TwoWayTransducer& t, int K,
                                                             long cap = 200000,
                                                             long summary_cap = 500000);

// Reconstructs a concrete run with a concrete inversion from a symbolic
// witness, for pumping and reporting.
struct ConcreteInversionWitness {
    Run run;
    Inversion inversion;
};

std::optional<ConcreteInversionWitness> materialize_inversion_witness(
    const TwoWayTransducer& t, const WitnessQuintuple& w, const RunBudget& budget);

}  // namespace tw

#endif
