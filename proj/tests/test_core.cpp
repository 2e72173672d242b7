#include <doctest.h>

#include "corpus.hpp"
#include "tw/errors.hpp"
#include "tw/run.hpp"
#include "tw/runner.hpp"
#include "tw/transducer.hpp"

using namespace tw;

TEST_CASE("validation accepts the identity copier") {
    ValidationReport rep = validate_transducer(corpus::identity());
    CHECK(rep.ok());
    CHECK(rep.violations.empty());
}

TEST_CASE("validation flags a left-reading initial state") {
    TwoWayTransducer t;
    t.alphabet.input = {'a'};
    t.alphabet.output = {'a'};
    t.add_state("q0", false, true, true);
    ValidationReport rep = validate_transducer(t);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const Violation& v : rep.violations)
        if (v.code == "initial-not-right-reading") found = true;
    CHECK(found);
}

TEST_CASE("validation flags transitions over undeclared states") {
    TwoWayTransducer t;
    t.alphabet.input = {'a'};
    t.alphabet.output = {'a'};
    t.add_state("q0", true, true, true);
    t.add_transition(0, 'a', "a", 7);
    ValidationReport rep = validate_transducer(t);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations.size() == 1);
    CHECK(rep.violations[0].code == "unknown-state");
}

TEST_CASE("validation flags marker letters inside the alphabet") {
    TwoWayTransducer t;
    t.alphabet.input = {'<', 'a'};
    t.alphabet.output = {'a'};
    t.add_state("q0", true, true, true);
    ValidationReport rep = validate_transducer(t);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("origin graph of the identity copier") {
    TwoWayTransducer t = corpus::identity();
    EnumResult res = enumerate_runs(t, "ab", RunBudget{1, 100, 10});
    REQUIRE(res.runs.size() == 1);
    SynchronizedPair p = origin_graph(t, res.runs[0]);
    CHECK(p.input == "ab");
    CHECK(p.output == "ab");
    CHECK(p.origin == std::vector<int>{1, 2});
}

TEST_CASE("origin graph of the last-to-front transducer on baca") {
    TwoWayTransducer t = corpus::t1_last_to_front();
    EnumResult res = enumerate_runs(t, "baca", RunBudget{3, 200, 100});
    REQUIRE(res.runs.size() == 1);
    SynchronizedPair p = origin_graph(t, res.runs[0]);
    CHECK(p.input == "baca");
    CHECK(p.output == "abac");
    CHECK(p.origin == std::vector<int>{4, 1, 2, 3});
}

TEST_CASE("origin graph of the reverse transducer on ab") {
    TwoWayTransducer t = corpus::reverse();
    EnumResult res = enumerate_runs(t, "ab", RunBudget{3, 200, 100});
    REQUIRE(res.runs.size() == 1);
    SynchronizedPair p = origin_graph(t, res.runs[0]);
    CHECK(p.output == "ba");
    CHECK(p.origin == std::vector<int>{2, 1});
}

TEST_CASE("origin graph rejects unsuccessful runs") {
    TwoWayTransducer t = corpus::identity();
    Run r;
    r.input = "ab";
    r.configs = {Configuration{0, 1}};
    r.successful = false;
    CHECK_THROWS_AS(origin_graph(t, r), NotSuccessfulError);
}

TEST_CASE("run invariants hold on everything enumerated, and the origin map is total") {
    for (const corpus::Named& named : corpus::bounded_corpus()) {
        const TwoWayTransducer& t = named.machine;
        for (const std::string& w : corpus::words_up_to(t.alphabet.input, 4)) {
            EnumResult res = enumerate_runs(t, w, RunBudget{named.visit_bound, 300, 500});
            for (const Run& r : res.runs) {
                CHECK(check_run(t, r).empty());
                SynchronizedPair p = origin_graph(t, r);
                size_t total = 0;
                for (const Step& s : r.steps) total += t.transitions[s.transition].out.size();
                CHECK(p.output.size() == total);
                CHECK(p.origin.size() == p.output.size());
                for (int y : p.origin) {
                    CHECK(y >= 1);
                    CHECK(y <= static_cast<int>(w.size()));
                }
            }
        }
    }
}

TEST_CASE("per-step outputs are recoverable from the origin graph") {
    TwoWayTransducer t = corpus::t1_last_to_front();
    EnumResult res = enumerate_runs(t, "abc", RunBudget{3, 200, 10});
    REQUIRE(res.runs.size() == 1);
    const Run& r = res.runs[0];
    SynchronizedPair p = origin_graph(t, r);
    std::vector<int> offs = run_output_offsets(t, r);
    for (int k = 0; k < r.length(); ++k) {
        const Transition& tr = t.transitions[r.steps[k].transition];
        CHECK(p.output.substr(offs[k], tr.out.size()) == tr.out);
    }
}

TEST_CASE("outputs produced at an endmarker are clamped to the nearest position") {
    TwoWayTransducer t = corpus::marker_looper();
    // one loop through the marker, then accept
    EnumResult res = enumerate_runs(t, "a", RunBudget{4, 60, 100});
    bool found = false;
    for (const Run& r : res.runs) {
        SynchronizedPair p = origin_graph(t, r);
        if (p.output == "c") {
            found = true;
            CHECK(p.origin == std::vector<int>{1});  // read at the left marker, clamped
        }
    }
    CHECK(found);
    bool warned = false;
    for (const Violation& v : validate_transducer(t).warnings)
        if (v.code == "marker-output") warned = true;
    CHECK(warned);
}

TEST_CASE("empty input word is legal") {
    TwoWayTransducer t = corpus::reverse();
    EnumResult res = enumerate_runs(t, "", RunBudget{3, 50, 10});
    REQUIRE(res.runs.size() == 1);
    SynchronizedPair p = origin_graph(t, res.runs[0]);
    CHECK(p.output.empty());
}
