#include "tw/textio.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tw/errors.hpp"

namespace tw {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) toks.push_back(tok);
    return toks;
}

// Comment lines start with '#'; '#' elsewhere is an ordinary letter.
std::string strip_comment(const std::string& line) {
    auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '#') return "";
    return line;
}

}  // namespace

TwoWayTransducer parse_transducer(const std::string& text) {
    TwoWayTransducer t;
    std::map<std::string, std::pair<bool, int>> pending;  // name -> (right, line)
    std::vector<std::string> initial_names, final_names;
    int initial_line = 0, final_line = 0;

    struct RawTransition {
        std::string src, dst, out;
        char letter;
        int line;
    };
    std::vector<RawTransition> raw;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::vector<std::string> toks = tokenize(strip_comment(line));
        if (toks.empty()) continue;
        const std::string& head = toks[0];
        auto letters_of = [&](size_t from) {
            std::vector<char> out;
            for (size_t i = from; i < toks.size(); ++i) {
                if (toks[i].size() != 1)
                    throw ParseError(lineno, "letter '" + toks[i] + "' must be a single character");
                out.push_back(toks[i][0]);
            }
            return out;
        };
        if (head == "input:") {
            t.alphabet.input = letters_of(1);
            std::sort(t.alphabet.input.begin(), t.alphabet.input.end());
        } else if (head == "output:") {
            t.alphabet.output = letters_of(1);
            std::sort(t.alphabet.output.begin(), t.alphabet.output.end());
        } else if (head == "right:" || head == "left:") {
            for (size_t i = 1; i < toks.size(); ++i) {
                if (pending.count(toks[i]))
                    throw ParseError(lineno, "state '" + toks[i] + "' declared twice");
                pending[toks[i]] = {head == "right:", lineno};
                t.add_state(toks[i], head == "right:");
            }
        } else if (head == "initial:") {
            initial_line = lineno;
            for (size_t i = 1; i < toks.size(); ++i) initial_names.push_back(toks[i]);
        } else if (head == "final:") {
            final_line = lineno;
            for (size_t i = 1; i < toks.size(); ++i) final_names.push_back(toks[i]);
        } else {
            // transition: src , letter -> [output] , dst
            if (toks.size() < 5 || toks[1] != "," || toks[3] != "->")
                throw ParseError(lineno, "expected 'state , letter -> output , state'");
            RawTransition rt;
            rt.src = toks[0];
            if (toks[2].size() != 1) throw ParseError(lineno, "letter must be a single character");
            rt.letter = toks[2][0];
            rt.line = lineno;
            if (toks.size() == 6 && toks[4] == ",") {  // empty output
                rt.out = "";
                rt.dst = toks[5];
            } else if (toks.size() == 7 && toks[5] == ",") {
                rt.out = toks[4];
                rt.dst = toks[6];
            } else {
                throw ParseError(lineno, "expected 'state , letter -> output , state'");
            }
            raw.push_back(std::move(rt));
        }
    }

    for (const std::string& name : initial_names) {
        int q = t.find_state(name);
        if (q < 0) throw ParseError(initial_line, "unknown initial state '" + name + "'");
        t.initial[q] = true;
    }
    for (const std::string& name : final_names) {
        int q = t.find_state(name);
        if (q < 0) throw ParseError(final_line, "unknown final state '" + name + "'");
        t.final[q] = true;
    }
    for (const RawTransition& rt : raw) {
        int src = t.find_state(rt.src);
        if (src < 0) throw ParseError(rt.line, "unknown state '" + rt.src + "'");
        int dst = t.find_state(rt.dst);
        if (dst < 0) throw ParseError(rt.line, "unknown state '" + rt.dst + "'");
        if (!is_marker(rt.letter) && !t.alphabet.has_input(rt.letter))
            throw ParseError(rt.line, std::string("letter '") + rt.letter + "' not declared");
        for (char c : rt.out)
            if (!t.alphabet.has_output(c))
                throw ParseError(rt.line, std::string("output letter '") + c + "' not declared");
        t.add_transition(src, rt.letter, rt.out, dst);
    }
    return t;
}

TwoWayTransducer load_transducer_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_transducer(buf.str());
}

std::string render_transducer(const TwoWayTransducer& t) {
    std::ostringstream os;
    os << "input:";
    for (char c : t.alphabet.input) os << ' ' << c;
    os << "\noutput:";
    for (char c : t.alphabet.output) os << ' ' << c;
    os << "\nright:";
    for (int q = 0; q < t.state_count(); ++q)
        if (t.right_reading[q]) os << ' ' << t.state_names[q];
    os << "\nleft:";
    for (int q = 0; q < t.state_count(); ++q)
        if (!t.right_reading[q]) os << ' ' << t.state_names[q];
    os << "\ninitial:";
    for (int q = 0; q < t.state_count(); ++q)
        if (t.initial[q]) os << ' ' << t.state_names[q];
    os << "\nfinal:";
    for (int q = 0; q < t.state_count(); ++q)
        if (t.final[q]) os << ' ' << t.state_names[q];
    os << '\n';
    for (const Transition& tr : t.transitions) {
        os << t.state_names[tr.src] << " , " << tr.letter << " -> " << tr.out << " , "
           << t.state_names[tr.dst] << '\n';
    }
    return os.str();
}

SynchronizedPair pair_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    SynchronizedPair s;
    s.input = j.at("input").get<std::string>();
    s.output = j.at("output").get<std::string>();
    s.origin = j.at("origin").get<std::vector<int>>();
    if (s.origin.size() != s.output.size())
        throw MismatchedPairError("pair json: origin length != output length");
    for (int y : s.origin)
        if (y < 1 || y > static_cast<int>(s.input.size()))
            throw MismatchedPairError("pair json: origin out of range");
    return s;
}

SynchronizedPair load_pair_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return pair_from_json(buf.str());
}

std::string pair_to_json(const SynchronizedPair& s) {
    nlohmann::json j;
    j["input"] = s.input;
    j["output"] = s.output;
    j["origin"] = s.origin;
    return j.dump();
}

namespace {

void flow_nodes_dot(const TwoWayTransducer& t, const Flow& f, const std::string& prefix,
                    double x_left, double x_right, std::ostringstream& os) {
    for (size_t i = 0; i < f.l_states.size(); ++i)
        os << "  " << prefix << "L" << i << " [label=\"" << t.state_names[f.l_states[i]]
           << "\", pos=\"" << x_left << "," << -(static_cast<double>(i)) << "!\"];\n";
    for (size_t i = 0; i < f.r_states.size(); ++i)
        os << "  " << prefix << "R" << i << " [label=\"" << t.state_names[f.r_states[i]]
           << "\", pos=\"" << x_right << "," << -(static_cast<double>(i)) << "!\"];\n";
    for (const FlowEdge& e : f.edges) {
        std::string a = prefix + (edge_src_on_left(e.kind) ? "L" : "R") + std::to_string(e.src);
        std::string b = prefix + (edge_dst_on_left(e.kind) ? "L" : "R") + std::to_string(e.dst);
        os << "  " << a << " -> " << b << (e.productive ? " [penwidth=2]" : " [style=dashed]")
           << ";\n";
    }
}

}  // namespace

std::string flow_to_dot(const TwoWayTransducer& t, const Flow& f, const std::string& name) {
    std::ostringstream os;
    os << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
    if (f.bottom) {
        os << "  bot [label=\"bottom\"];\n";
    } else {
        flow_nodes_dot(t, f, "v", 0.0, 2.0, os);
    }
    os << "}\n";
    return os.str();
}

std::string juxtaposition_to_dot(const TwoWayTransducer& t, const std::vector<Flow>& flows) {
    std::ostringstream os;
    os << "digraph juxtaposition {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (size_t k = 0; k < flows.size(); ++k)
        flow_nodes_dot(t, flows[k], "f" + std::to_string(k) + "_", 2.0 * k, 2.0 * (k + 1), os);
    os << "}\n";
    return os.str();
}

std::string tree_to_dot(const TwoWayTransducer& t, const FactorizationTree& tree) {
    std::ostringstream os;
    os << "digraph factorization {\n  node [shape=box];\n";
    for (size_t v = 0; v < tree.nodes.size(); ++v) {
        const TreeNode& n = tree.nodes[v];
        os << "  n" << v << " [label=\"[" << n.lo << "," << n.hi << ") "
           << n.label.brief(t) << "\"];\n";
        for (int c : n.children) os << "  n" << v << " -> n" << c << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace tw
