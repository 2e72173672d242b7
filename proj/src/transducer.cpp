#include "tw/transducer.hpp"

#include <algorithm>
#include <set>

namespace tw {

bool Alphabet::has_input(char c) const {
    return std::binary_search(input.begin(), input.end(), c);
}

bool Alphabet::has_output(char c) const {
    return std::binary_search(output.begin(), output.end(), c);
}

int TwoWayTransducer::find_state(std::string_view name) const {
    for (int i = 0; i < state_count(); ++i)
        if (state_names[i] == name) return i;
    return -1;
}

int TwoWayTransducer::add_state(const std::string& name, bool right, bool init, bool fin) {
    state_names.push_back(name);
    right_reading.push_back(right);
    initial.push_back(init);
    final.push_back(fin);
    return state_count() - 1;
}

void TwoWayTransducer::add_transition(int src, char letter, std::string out, int dst) {
    transitions.push_back(Transition{src, letter, std::move(out), dst});
}

void TwoWayTransducer::add_transition(std::string_view src, char letter, std::string out,
                                      std::string_view dst) {
    add_transition(find_state(src), letter, std::move(out), find_state(dst));
}

std::vector<int> TwoWayTransducer::transitions_from(int state, char letter) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(transitions.size()); ++i)
        if (transitions[i].src == state && transitions[i].letter == letter) out.push_back(i);
    return out;
}

ValidationReport validate_transducer(const TwoWayTransducer& t) {
    ValidationReport rep;
    auto fail = [&](const std::string& code, const std::string& msg) {
        rep.violations.push_back(Violation{code, msg});
    };
    auto warn = [&](const std::string& code, const std::string& msg) {
        rep.warnings.push_back(Violation{code, msg});
    };

    if (t.alphabet.input.empty()) fail("empty-input-alphabet", "input alphabet is empty");
    if (t.alphabet.output.empty()) fail("empty-output-alphabet", "output alphabet is empty");
    for (char c : t.alphabet.input)
        if (is_marker(c))
            fail("marker-in-alphabet",
                 std::string("endmarker '") + c + "' used as an input letter");
    for (char c : t.alphabet.output)
        if (is_marker(c))
            warn("marker-in-output", std::string("output letter '") + c + "' collides with an endmarker spelling");

    {
        std::set<char> in(t.alphabet.input.begin(), t.alphabet.input.end());
        if (in.size() != t.alphabet.input.size()) fail("dup-input-letter", "duplicate input letter");
        std::set<char> outl(t.alphabet.output.begin(), t.alphabet.output.end());
        if (outl.size() != t.alphabet.output.size()) fail("dup-output-letter", "duplicate output letter");
    }

    int n = t.state_count();
    if (static_cast<int>(t.right_reading.size()) != n || static_cast<int>(t.initial.size()) != n ||
        static_cast<int>(t.final.size()) != n) {
        fail("state-arrays", "state attribute arrays disagree on state count");
        return rep;
    }
    {
        std::set<std::string> names(t.state_names.begin(), t.state_names.end());
        if (static_cast<int>(names.size()) != n) fail("dup-state", "duplicate state name");
    }

    bool any_initial = false;
    for (int q = 0; q < n; ++q) {
        if (t.initial[q]) {
            any_initial = true;
            if (!t.right_reading[q])
                fail("initial-not-right-reading",
                     "initial state '" + t.state_names[q] + "' is left-reading");
        }
        if (t.final[q] && !t.right_reading[q])
            warn("final-left-reading",
                 "final state '" + t.state_names[q] +
                     "' is left-reading; runs ending there have no flow decomposition "
                     "across the final cut, so the monoid pipeline will not cover them");
    }
    if (!any_initial) warn("no-initial", "no initial state; the relation is empty");

    for (size_t i = 0; i < t.transitions.size(); ++i) {
        const Transition& tr = t.transitions[i];
        std::string where = "transition #" + std::to_string(i);
        if (tr.src < 0 || tr.src >= n) {
            fail("unknown-state", where + ": unknown source state");
            continue;
        }
        if (tr.dst < 0 || tr.dst >= n) {
            fail("unknown-state", where + ": unknown target state");
            continue;
        }
        if (!is_marker(tr.letter) && !t.alphabet.has_input(tr.letter))
            fail("unknown-letter", where + ": letter '" + std::string(1, tr.letter) +
                                       "' not in the input alphabet");
        for (char c : tr.out)
            if (!t.alphabet.has_output(c))
                fail("unknown-output-letter",
                     where + ": output letter '" + std::string(1, c) + "' not in the output alphabet");
        if (is_marker(tr.letter) && tr.productive())
            warn("marker-output", where + ": output produced at an endmarker gets a clamped "
                                          "origin; on the empty input the clamp falls back to "
                                          "position 1");
        // Marker transitions only fire in one shape; the other combinations are dead.
        if (tr.letter == kLeftMark && t.right_reading[tr.src])
            warn("dead-transition", where + ": left marker read by a right-reading state never fires");
        if (tr.letter == kLeftMark && !t.right_reading[tr.src] && !t.right_reading[tr.dst])
            warn("dead-transition", where + ": left marker transition into a left-reading state never fires");
        if (tr.letter == kRightMark && !t.right_reading[tr.src])
            warn("dead-transition", where + ": right marker read by a left-reading state never fires");
        if (tr.letter == kRightMark && t.right_reading[tr.src] && t.right_reading[tr.dst])
            warn("dead-transition", where + ": right marker transition into a right-reading state never fires");
    }
    return rep;
}

}  // namespace tw
