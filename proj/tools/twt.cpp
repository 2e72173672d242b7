#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tw/analysis.hpp"
#include "tw/errors.hpp"
#include "tw/factorization.hpp"
#include "tw/monoid.hpp"
#include "tw/runner.hpp"
#include "tw/sparsity.hpp"
#include "tw/textio.hpp"

using nlohmann::json;
using namespace tw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBound = 3;

struct Options {
    bool as_json = false;
    std::string dot_path;
};

TwoWayTransducer load_checked(const std::string& path) {
    TwoWayTransducer t = load_transducer_file(path);
    ValidationReport rep = validate_transducer(t);
    if (!rep.ok()) {
        std::ostringstream os;
        for (const Violation& v : rep.violations) os << v.code << ": " << v.message << "\n";
        throw std::runtime_error("invalid transducer '" + path + "':\n" + os.str());
    }
    return t;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

json pair_json(const SynchronizedPair& s) {
    return json{{"input", s.input}, {"output", s.output}, {"origin", s.origin}};
}

json quintuple_json(const TwoWayTransducer& t, const WitnessQuintuple& q) {
    json j;
    j["prefix_word"] = q.prefix_word;
    j["loop1_word"] = q.loop1_word;
    j["middle_word"] = q.middle_word;
    j["loop2_word"] = q.loop2_word;
    j["suffix_word"] = q.suffix_word;
    j["witness_input"] = q.witness_input();
    j["loop1_flow"] = q.loop1.brief(t);
    j["loop2_flow"] = q.loop2.brief(t);
    j["loop1_edge"] = q.edge1;
    j["loop2_edge"] = q.edge2;
    return j;
}

int cmd_run(const std::string& file, const std::string& word, const RunBudget& budget,
            const Options& opt) {
    TwoWayTransducer t = load_checked(file);
    EnumResult res = enumerate_runs(t, word, budget);
    if (opt.as_json) {
        json j;
        j["word"] = word;
        j["truncated"] = res.truncated;
        j["pairs"] = json::array();
        for (const Run& r : res.runs) j["pairs"].push_back(pair_json(origin_graph(t, r)));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << res.runs.size() << " successful run(s)" << (res.truncated ? " (truncated)" : "")
                  << "\n";
        for (const Run& r : res.runs) {
            SynchronizedPair p = origin_graph(t, r);
            std::cout << "  output=" << (p.output.empty() ? "(empty)" : p.output) << " origins=";
            for (size_t i = 0; i < p.origin.size(); ++i)
                std::cout << (i ? "," : "") << p.origin[i];
            std::cout << "\n";
        }
    }
    return kExitOk;
}

int cmd_flows(const std::string& file, const std::string& word, int lo, int hi, int run_index,
              const RunBudget& budget, const Options& opt, const std::string& letters_dot) {
    TwoWayTransducer t = load_checked(file);
    EnumResult res = enumerate_runs(t, word, budget);
    if (run_index < 0 || run_index >= static_cast<int>(res.runs.size()))
        throw std::runtime_error("run index out of range; " + std::to_string(res.runs.size()) +
                                 " run(s) found");
    RunFlow rf = flow_of(t, res.runs[run_index], lo, hi);
    if (!opt.dot_path.empty())
        write_file(opt.dot_path, flow_to_dot(t, rf.flow, "flow"));
    if (!letters_dot.empty()) {
        std::vector<Flow> jux;
        for (const RunFlow& f : letter_flows_of(t, res.runs[run_index])) jux.push_back(f.flow);
        write_file(letters_dot, juxtaposition_to_dot(t, jux));
    }
    if (opt.as_json) {
        json j;
        j["interval"] = {lo, hi};
        j["l_states"] = json::array();
        for (int s : rf.flow.l_states) j["l_states"].push_back(t.state_names[s]);
        j["r_states"] = json::array();
        for (int s : rf.flow.r_states) j["r_states"].push_back(t.state_names[s]);
        j["edges"] = json::array();
        const char* names[] = {"LL", "LR", "RL", "RR"};
        for (const FlowEdge& e : rf.flow.edges)
            j["edges"].push_back(json{{"kind", names[static_cast<int>(e.kind)]},
                                      {"src", e.src},
                                      {"dst", e.dst},
                                      {"productive", e.productive}});
        j["idempotent"] = is_idempotent(rf.flow);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << rf.flow.brief(t) << (is_idempotent(rf.flow) ? "  [idempotent]" : "") << "\n";
    }
    return kExitOk;
}

int cmd_monoid(const std::string& file, int k, long cap, const Options& opt) {
    TwoWayTransducer t = load_checked(file);
    FlowMonoid m = generate_monoid(t, k, cap);
    if (opt.as_json) {
        json j;
        j["elements"] = m.size();
        j["size_bound"] = m.size_bound.to_string();
        j["generators"] = m.generators.size();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "monoid elements (with bottom): " << m.size() << "\n"
                  << "size bound: " << m.size_bound.to_string() << "\n";
    }
    return kExitOk;
}

int cmd_decide(const std::string& file, int k, long cap, long summary_cap, const Options& opt) {
    TwoWayTransducer t = load_checked(file);
    OneWayDecision d = decide_one_way_resynchronizable_bounded_visit(t, k, cap, summary_cap);
    if (opt.as_json) {
        json j;
        j["one_way_resynchronizable"] = d.one_way_resynchronizable;
        if (d.witness) j["witness"] = quintuple_json(t, *d.witness);
        std::cout << j.dump(2) << "\n";
    } else if (d.one_way_resynchronizable) {
        std::cout << "YES\n";
    } else {
        std::cout << "NO\n";
        const WitnessQuintuple& q = *d.witness;
        std::cout << "  witness input: " << q.witness_input() << "\n"
                  << "  loop one: '" << q.loop1_word << "' " << q.loop1.brief(t) << "\n"
                  << "  loop two: '" << q.loop2_word << "' " << q.loop2.brief(t) << "\n";
    }
    return d.one_way_resynchronizable ? kExitOk : kExitNo;
}

int cmd_crosswidth(const std::string& path, const Options& opt) {
    SynchronizedPair s = load_pair_file(path);
    CrossWidthResult r = cross_width(s);
    if (opt.as_json) {
        json j;
        j["width"] = r.width;
        j["order_preserving"] = is_order_preserving(s);
        if (r.width > 0) j["witness"] = json{{"x1", r.witness.x1}, {"x2", r.witness.x2}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << r.width << "\n";
    }
    return kExitOk;
}

int cmd_traversal(const std::string& src_path, const std::string& tgt_path, const Options& opt) {
    SynchronizedPair src = load_pair_file(src_path);
    SynchronizedPair tgt = load_pair_file(tgt_path);
    TraversalSets tr = traversals(src, tgt);
    int mt = max_traversal(src, tgt);
    if (opt.as_json) {
        json j;
        auto dump = [](const std::map<int, std::set<int>>& m) {
            json out = json::object();
            for (const auto& [pos, ys] : m) out[std::to_string(pos)] = ys;
            return out;
        };
        j["left_to_right"] = dump(tr.left_to_right);
        j["right_to_left"] = dump(tr.right_to_left);
        j["max_traversal"] = mt;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "max traversal: " << mt << "\n";
    }
    return kExitOk;
}

int cmd_pump(const std::string& file, const std::string& word, int lo, int hi, int reps,
             int run_index, const RunBudget& budget, const Options& opt) {
    TwoWayTransducer t = load_checked(file);
    EnumResult res = enumerate_runs(t, word, budget);
    if (run_index < 0 || run_index >= static_cast<int>(res.runs.size()))
        throw std::runtime_error("run index out of range; " + std::to_string(res.runs.size()) +
                                 " run(s) found");
    Run pumped = pump_run(t, res.runs[run_index], Interval{lo, hi}, reps);
    SynchronizedPair p = origin_graph(t, pumped);
    if (opt.as_json) {
        json j = pair_json(p);
        j["steps"] = pumped.length();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "pumped input: " << pumped.input << "\n"
                  << "pumped output: " << p.output << "\n";
    }
    return kExitOk;
}

int cmd_factorize(const std::string& file, const std::string& word, int k, int threshold,
                  int run_index, long cap, const RunBudget& budget, const Options& opt) {
    TwoWayTransducer t = load_checked(file);
    EnumResult res = enumerate_runs(t, word, budget);
    if (run_index < 0 || run_index >= static_cast<int>(res.runs.size()))
        throw std::runtime_error("run index out of range; " + std::to_string(res.runs.size()) +
                                 " run(s) found");
    const Run& r = res.runs[run_index];
    FlowMonoid m = generate_monoid(t, k, cap);
    std::vector<Flow> seq;
    for (const RunFlow& rf : letter_flows_of(t, r)) seq.push_back(rf.flow);
    FactorizationTree tree = build_factorization_tree(seq, m);
    if (!opt.dot_path.empty()) write_file(opt.dot_path, tree_to_dot(t, tree));
    std::vector<std::string> tree_problems = check_factorization_tree(tree, seq, m.size());

    Retargeting ret = build_retargeting(t, r, tree, threshold);
    std::vector<RetargetViolation> violations =
        verify_retargeting(t, r, tree, ret, threshold, k);
    SynchronizedPair before = origin_graph(t, r);
    SynchronizedPair after = apply_retargeting(before, ret);

    if (opt.as_json) {
        json j;
        j["tree_height"] = tree.height();
        j["tree_ok"] = tree_problems.empty();
        j["source"] = pair_json(before);
        j["retargeted"] = pair_json(after);
        j["order_preserving"] = is_order_preserving(after);
        j["max_traversal"] = max_traversal(before, after);
        j["violations"] = json::array();
        for (const RetargetViolation& v : violations)
            j["violations"].push_back(json{{"code", v.code}, {"message", v.message}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "tree height " << tree.height()
                  << (tree_problems.empty() ? " (valid)" : " (INVALID)") << "\n";
        std::cout << "retargeted origins:";
        for (int z : after.origin) std::cout << " " << z;
        std::cout << "\norder preserving: " << (is_order_preserving(after) ? "yes" : "no") << "\n";
        for (const RetargetViolation& v : violations)
            std::cout << "violation " << v.code << ": " << v.message << "\n";
    }
    return (tree_problems.empty() && violations.empty()) ? kExitOk : kExitNo;
}

int cmd_sparsity(const std::string& file, int k, int max_len, const Options& opt) {
    TwoWayTransducer t = load_checked(file);
    SparsitySweep sweep = k_sparse_bounded_check(t, k, max_len);
    if (opt.as_json) {
        json j;
        j["verdict"] = sweep.sparse_up_to_bound ? "SPARSE_UP_TO_BOUND" : "NOT_SPARSE";
        if (!sweep.sparse_up_to_bound) {
            j["witness_input"] = sweep.witness_input;
            json members = json::array();
            for (const TaggedTransition& tt : sweep.violating->productive)
                members.push_back(json{{"transition", tt.transition}, {"position", tt.position}});
            j["violating_class"] =
                json{{"anchor", sweep.violating->anchor}, {"productive", members}};
        }
        std::cout << j.dump(2) << "\n";
    } else if (sweep.sparse_up_to_bound) {
        std::cout << "SPARSE_UP_TO_BOUND\n";
    } else {
        std::cout << "NOT_SPARSE on input '" << sweep.witness_input << "' ("
                  << sweep.violating->productive.size() << " productive tagged transitions)\n";
    }
    return sweep.sparse_up_to_bound ? kExitOk : kExitNo;
}

int cmd_classes(const std::string& file, const std::string& word, const Options& opt) {
    TwoWayTransducer t = load_checked(file);
    TaggedEquivalence eq = tagged_equivalence(t, word);
    if (opt.as_json) {
        json j;
        j["input"] = word;
        j["classes"] = json::array();
        for (const TaggedClass& c : eq.classes) {
            json members = json::array();
            for (const TaggedTransition& tt : c.members)
                members.push_back(json{{"transition", tt.transition}, {"position", tt.position}});
            j["classes"].push_back(json{{"anchor", c.anchor},
                                        {"members", members},
                                        {"productive_count", c.productive.size()}});
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << eq.classes.size() << " class(es) on '" << word << "'\n";
        for (const TaggedClass& c : eq.classes)
            std::cout << "  anchor " << c.anchor << ", " << c.members.size() << " member(s), "
                      << c.productive.size() << " productive\n";
    }
    return kExitOk;
}

int cmd_validate(const std::string& file, const Options& opt) {
    TwoWayTransducer t = load_transducer_file(file);
    ValidationReport rep = validate_transducer(t);
    if (opt.as_json) {
        json j;
        j["ok"] = rep.ok();
        j["violations"] = json::array();
        for (const Violation& v : rep.violations)
            j["violations"].push_back(json{{"code", v.code}, {"message", v.message}});
        j["warnings"] = json::array();
        for (const Violation& v : rep.warnings)
            j["warnings"].push_back(json{{"code", v.code}, {"message", v.message}});
        std::cout << j.dump(2) << "\n";
    } else {
        for (const Violation& v : rep.violations)
            std::cout << "violation " << v.code << ": " << v.message << "\n";
        for (const Violation& v : rep.warnings)
            std::cout << "warning " << v.code << ": " << v.message << "\n";
        std::cout << (rep.ok() ? "ok" : "invalid") << "\n";
    }
    return rep.ok() ? kExitOk : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis toolkit for two-way word transducers under origin semantics"};
    app.require_subcommand(1);

    Options opt;
    RunBudget budget;
    long cap = 200000;
    long summary_cap = 500000;

    std::string file, word, src, tgt;
    int lo = 1, hi = 2, reps = 2, k = 3, run_index = 0, threshold = 1, max_len = 4;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--json", opt.as_json, "machine-readable output");
    };
    auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("-k,--visits", budget.visit_bound, "visit bound for enumeration");
        cmd->add_option("--steps", budget.step_bound, "step bound per run");
        cmd->add_option("--runs", budget.run_cap, "max runs to enumerate");
    };

    CLI::App* c_run = app.add_subcommand("run", "enumerate successful runs and print origin graphs");
    add_common(c_run);
    c_run->add_option("file", file)->required();
    c_run->add_option("word", word)->required();
    add_budget(c_run);

    CLI::App* c_flows = app.add_subcommand("flows", "extract the flow of a run on an interval");
    add_common(c_flows);
    c_flows->add_option("file", file)->required();
    c_flows->add_option("word", word)->required();
    c_flows->add_option("lo", lo)->required();
    c_flows->add_option("hi", hi)->required();
    c_flows->add_option("--run-index", run_index);
    c_flows->add_option("--dot", opt.dot_path, "write a DOT rendering here");
    std::string letters_dot;
    c_flows->add_option("--dot-letters", letters_dot,
                        "write the run's letter-flow juxtaposition as DOT here");
    add_budget(c_flows);

    CLI::App* c_monoid = app.add_subcommand("monoid", "generate the flow monoid");
    add_common(c_monoid);
    c_monoid->add_option("file", file)->required();
    c_monoid->add_option("-k,--visits", k, "visit bound")->required();
    c_monoid->add_option("--cap", cap, "element cap");

    CLI::App* c_decide =
        app.add_subcommand("decide-oneway", "decide one-way resynchronizability");
    add_common(c_decide);
    c_decide->add_option("file", file)->required();
    c_decide->add_option("-k,--visits", k, "visit bound")->required();
    c_decide->add_option("--cap", cap, "element cap");
    c_decide->add_option("--summary-cap", summary_cap, "state cap of the visit-bound check");

    CLI::App* c_cross = app.add_subcommand("crosswidth", "cross-width of a pair file");
    add_common(c_cross);
    c_cross->add_option("pairs", src)->required();

    CLI::App* c_trav = app.add_subcommand("traversal", "traversals between two pair files");
    add_common(c_trav);
    c_trav->add_option("source", src)->required();
    c_trav->add_option("target", tgt)->required();

    CLI::App* c_pump = app.add_subcommand("pump", "pump a loop of a run");
    add_common(c_pump);
    c_pump->add_option("file", file)->required();
    c_pump->add_option("word", word)->required();
    c_pump->add_option("lo", lo)->required();
    c_pump->add_option("hi", hi)->required();
    c_pump->add_option("-n,--reps", reps)->required();
    c_pump->add_option("--run-index", run_index);
    add_budget(c_pump);

    CLI::App* c_fact = app.add_subcommand(
        "factorize", "factorization tree, retargeting and its verification report");
    add_common(c_fact);
    c_fact->add_option("file", file)->required();
    c_fact->add_option("word", word)->required();
    c_fact->add_option("-k,--visits", k, "visit bound")->required();
    c_fact->add_option("--threshold", threshold, "block largeness threshold");
    c_fact->add_option("--run-index", run_index);
    c_fact->add_option("--cap", cap, "monoid element cap");
    c_fact->add_option("--dot", opt.dot_path, "write the tree as DOT here");

    CLI::App* c_sparse = app.add_subcommand("sparsity", "bounded sparsity sweep");
    add_common(c_sparse);
    c_sparse->add_option("file", file)->required();
    c_sparse->add_option("-k,--limit", k, "max productive tagged transitions per class")
        ->required();
    c_sparse->add_option("--max-len", max_len, "sweep inputs up to this length")->required();

    CLI::App* c_classes =
        app.add_subcommand("classes", "tagged-transition classes of a word");
    add_common(c_classes);
    c_classes->add_option("file", file)->required();
    c_classes->add_option("word", word)->required();

    CLI::App* c_validate = app.add_subcommand("validate", "validate a transducer document");
    add_common(c_validate);
    c_validate->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_run->parsed()) return cmd_run(file, word, budget, opt);
        if (c_flows->parsed())
            return cmd_flows(file, word, lo, hi, run_index, budget, opt, letters_dot);
        if (c_monoid->parsed()) return cmd_monoid(file, k, cap, opt);
        if (c_decide->parsed()) return cmd_decide(file, k, cap, summary_cap, opt);
        if (c_cross->parsed()) return cmd_crosswidth(src, opt);
        if (c_trav->parsed()) return cmd_traversal(src, tgt, opt);
        if (c_pump->parsed())
            return cmd_pump(file, word, lo, hi, reps, run_index, budget, opt);
        if (c_fact->parsed())
            return cmd_factorize(file, word, k, threshold, run_index, cap, budget, opt);
        if (c_sparse->parsed()) return cmd_sparsity(file, k, max_len, opt);
        if (c_classes->parsed()) return cmd_classes(file, word, opt);
        if (c_validate->parsed()) return cmd_validate(file, opt);
    } catch (const BoundExceededError& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return kExitBound;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
