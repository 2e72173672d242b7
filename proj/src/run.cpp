#include "tw/run.hpp"

#include "tw/errors.hpp"

namespace tw {

char letter_at(std::string_view w, int pos) {
    if (pos == 0) return kLeftMark;
    if (pos == static_cast<int>(w.size()) + 1) return kRightMark;
    return w[pos - 1];
}

int read_position(const TwoWayTransducer& t, const Configuration& c) {
    return t.right_reading[c.state] ? c.cut : c.cut - 1;
}

bool apply_transition(const TwoWayTransducer& t, std::string_view w, const Configuration& c,
                      const Transition& tr, int* read_pos, Configuration* next) {
    if (tr.src != c.state) return false;
    int n = static_cast<int>(w.size());
    int pos = t.right_reading[c.state] ? c.cut : c.cut - 1;
    if (pos < 0 || pos > n + 1) return false;
    if (letter_at(w, pos) != tr.letter) return false;
    int next_cut;
    if (t.right_reading[tr.src]) {
        next_cut = t.right_reading[tr.dst] ? c.cut + 1 : c.cut;
    } else {
        next_cut = t.right_reading[tr.dst] ? c.cut : c.cut - 1;
    }
    if (next_cut < 1 || next_cut > n + 1) return false;
    if (read_pos) *read_pos = pos;
    if (next) *next = Configuration{tr.dst, next_cut};
    return true;
}

std::vector<std::string> check_run(const TwoWayTransducer& t, const Run& r) {
    std::vector<std::string> problems;
    int n = static_cast<int>(r.input.size());
    if (r.configs.size() != r.steps.size() + 1) {
        problems.push_back("config/step count mismatch");
        return problems;
    }
    for (size_t i = 0; i < r.configs.size(); ++i) {
        const Configuration& c = r.configs[i];
        if (c.state < 0 || c.state >= t.state_count())
            problems.push_back("config " + std::to_string(i) + ": unknown state");
        if (c.cut < 1 || c.cut > n + 1)
            problems.push_back("config " + std::to_string(i) + ": cut out of bounds");
    }
    if (!problems.empty()) return problems;
    for (size_t k = 0; k < r.steps.size(); ++k) {
        const Step& s = r.steps[k];
        if (s.transition < 0 || s.transition >= static_cast<int>(t.transitions.size())) {
            problems.push_back("step " + std::to_string(k) + ": unknown transition");
            continue;
        }
        int pos = -1;
        Configuration next;
        if (!apply_transition(t, r.input, r.configs[k], t.transitions[s.transition], &pos, &next)) {
            problems.push_back("step " + std::to_string(k) + ": transition does not fire here");
            continue;
        }
        if (pos != s.read_pos)
            problems.push_back("step " + std::to_string(k) + ": recorded read position wrong");
        if (!(next == r.configs[k + 1]))
            problems.push_back("step " + std::to_string(k) + ": successor configuration wrong");
    }
    bool succ = run_is_successful(t, r);
    if (r.successful != succ) problems.push_back("successful flag does not match endpoints");
    return problems;
}

bool run_is_successful(const TwoWayTransducer& t, const Run& r) {
    if (r.configs.empty()) return false;
    int n = static_cast<int>(r.input.size());
    const Configuration& first = r.configs.front();
    const Configuration& last = r.configs.back();
    return t.initial[first.state] && first.cut == 1 && t.final[last.state] && last.cut == n + 1;
}

std::string run_output(const TwoWayTransducer& t, const Run& r) {
    std::string out;
    for (const Step& s : r.steps) out += t.transitions[s.transition].out;
    return out;
}

std::vector<int> run_output_offsets(const TwoWayTransducer& t, const Run& r) {
    std::vector<int> offs;
    offs.reserve(r.steps.size() + 1);
    int acc = 0;
    for (const Step& s : r.steps) {
        offs.push_back(acc);
        acc += static_cast<int>(t.transitions[s.transition].out.size());
    }
    offs.push_back(acc);
    return offs;
}

SynchronizedPair origin_graph(const TwoWayTransducer& t, const Run& r) {
    if (!run_is_successful(t, r)) throw NotSuccessfulError("origin_graph: run is not successful");
    int n = static_cast<int>(r.input.size());
    SynchronizedPair p;
    p.input = r.input;
    for (const Step& s : r.steps) {
        const Transition& tr = t.transitions[s.transition];
        int origin = s.read_pos;
        if (origin < 1) origin = 1;
        if (origin > n) origin = n;
        if (n == 0) origin = 1;  // empty input, flagged by validation elsewhere
        for (char c : tr.out) {
            p.output.push_back(c);
            p.origin.push_back(origin);
        }
    }
    return p;
}

}  // namespace tw
