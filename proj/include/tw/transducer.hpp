#ifndef TW_TRANSDUCER_HPP
#define TW_TRANSDUCER_HPP

#include <string>
#include <string_view>
#include <vector>

namespace tw {

// Endmarker letters. They are reserved and may not appear in the input
// alphabet; the parser spells them the same way.
constexpr char kLeftMark = '<';
constexpr char kRightMark = '>';

inline bool is_marker(char c) { return c == kLeftMark || c == kRightMark; }

struct Alphabet {
    std::vector<char> input;   // sorted, unique
    std::vector<char> output;  // sorted, unique

    bool has_input(char c) const;
    bool has_output(char c) const;
};

struct Transition {
    int src = -1;
    char letter = 0;        // element of input alphabet, kLeftMark or kRightMark
    std::string out;        // output word, possibly empty
    int dst = -1;

    bool productive() const { return !out.empty(); }
};

// Two-way word transducer. States are indices into state_names; each state
// is either right-reading (reads the letter to its right, head moves right
// or stays) or left-reading (reads the letter to its left, head moves left
// or stays). Initial states must be right-reading.
struct TwoWayTransducer {
    Alphabet alphabet;
    std::vector<std::string> state_names;
    std::vector<bool> right_reading;  // indexed by state
    std::vector<bool> initial;
    std::vector<bool> final;
    std::vector<Transition> transitions;

    int state_count() const { return static_cast<int>(state_names.size()); }
    int find_state(std::string_view name) const;
    int add_state(const std::string& name, bool right, bool init = false, bool fin = false);
    void add_transition(int src, char letter, std::string out, int dst);
    void add_transition(std::string_view src, char letter, std::string out, std::string_view dst);

    // Transition indices with the given source state and letter.
    std::vector<int> transitions_from(int state, char letter) const;
};

struct Violation {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<Violation> warnings;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_transducer(const TwoWayTransducer& t);

}  // namespace tw

#endif
