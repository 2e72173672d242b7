#ifndef TW_RUN_HPP
#define TW_RUN_HPP

#include <string>
#include <vector>

#include "tw/transducer.hpp"

namespace tw {

// Cuts range over 1..|w|+1: cut i sits between the (i-1)-th and i-th letter.
struct Configuration {
    int state = -1;
    int cut = 1;

    bool operator==(const Configuration&) const = default;
};

// Letter positions of the padded word <w>: position 0 is the left marker,
// positions 1..n the letters of w, position n+1 the right marker.
char letter_at(std::string_view w, int pos);

// Read position of a configuration: right-reading states read the letter at
// the cut, left-reading states the letter before it.
int read_position(const TwoWayTransducer& t, const Configuration& c);

struct Step {
    int transition = -1;
    int read_pos = 0;
};

struct Run {
    std::string input;
    std::vector<Configuration> configs;  // length m+1
    std::vector<Step> steps;             // length m
    bool successful = false;

    int length() const { return static_cast<int>(steps.size()); }
};

// Applies transition tr at config c; returns false when the transition does
// not fire there (wrong state, wrong letter, or the head would leave the
// tape). On success fills the read position and the next configuration.
bool apply_transition(const TwoWayTransducer& t, std::string_view w, const Configuration& c,
                      const Transition& tr, int* read_pos, Configuration* next);

// Structural check of the Run invariants; empty result means valid.
std::vector<std::string> check_run(const TwoWayTransducer& t, const Run& r);

bool run_is_successful(const TwoWayTransducer& t, const Run& r);

// Output word of the run, concatenated in step order.
std::string run_output(const TwoWayTransducer& t, const Run& r);

// Starting output offset of every step (prefix sums), plus total at the end.
std::vector<int> run_output_offsets(const TwoWayTransducer& t, const Run& r);

struct SynchronizedPair {
    std::string input;
    std::string output;
    std::vector<int> origin;  // 1-based input positions, one per output position

    bool operator==(const SynchronizedPair&) const = default;
};

// Origin graph of a successful run. Outputs emitted while reading an
// endmarker are clamped to input position 1 (left) or |input| (right).
SynchronizedPair origin_graph(const TwoWayTransducer& t, const Run& r);

// Half-open interval of cut (equivalently letter) indices.
struct Interval {
    int lo = 0;
    int hi = 0;

    bool operator==(const Interval&) const = default;
    bool empty() const { return lo == hi; }
};

}  // namespace tw

#endif
