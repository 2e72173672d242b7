#include <doctest.h>

#include "corpus.hpp"
#include "tw/analysis.hpp"
#include "tw/errors.hpp"
#include "tw/runner.hpp"
#include "tw/textio.hpp"

using namespace tw;

namespace {

const char* kIdentityDoc = R"(# one-state copier
input: a b
output: a b
right: q0
left:
initial: q0
final: q0
q0 , a -> a , q0
q0 , b -> b , q0
)";

}  // namespace

TEST_CASE("parsing the identity document") {
    TwoWayTransducer t = parse_transducer(kIdentityDoc);
    CHECK(t.state_count() == 1);
    CHECK(validate_transducer(t).ok());
    EnumResult res = enumerate_runs(t, "ab", RunBudget{1, 50, 5});
    REQUIRE(res.runs.size() == 1);
    CHECK(origin_graph(t, res.runs[0]).output == "ab");
}

TEST_CASE("round-trip through render and parse") {
    for (const corpus::Named& named : corpus::bounded_corpus()) {
        std::string text = render_transducer(named.machine);
        TwoWayTransducer back = parse_transducer(text);
        CHECK(render_transducer(back) == text);
        CHECK(back.state_count() == named.machine.state_count());
        CHECK(back.transitions.size() == named.machine.transitions.size());
    }
}

TEST_CASE("unknown letters are positioned parse errors") {
    std::string doc = "input: a\noutput: a\nright: q0\ninitial: q0\nfinal: q0\nq0 , z -> a , q0\n";
    try {
        parse_transducer(doc);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 6);
        CHECK(std::string(e.what()).find("'z'") != std::string::npos);
    }
}

TEST_CASE("malformed transition lines are rejected") {
    std::string doc = "input: a\noutput: a\nright: q0\ninitial: q0\nfinal: q0\nq0 a -> a q0\n";
    CHECK_THROWS_AS(parse_transducer(doc), ParseError);
}

TEST_CASE("parsed last-to-front document decides YES end to end") {
    std::string text = render_transducer(corpus::t1_last_to_front());
    TwoWayTransducer t = parse_transducer(text);
    OneWayDecision d = decide_one_way_resynchronizable_bounded_visit(t, 3);
    CHECK(d.one_way_resynchronizable);
}

TEST_CASE("pair json round trip") {
    SynchronizedPair s{"baca", "abac", {4, 1, 2, 3}};
    SynchronizedPair back = pair_from_json(pair_to_json(s));
    CHECK(back == s);
    CHECK_THROWS_AS(pair_from_json(R"({"input":"a","output":"xy","origin":[1]})"),
                    MismatchedPairError);
    CHECK_THROWS_AS(pair_from_json(R"({"input":"a","output":"x","origin":[4]})"),
                    MismatchedPairError);
}

TEST_CASE("dot exports are structurally sound") {
    TwoWayTransducer t = corpus::reverse();
    EnumResult res = enumerate_runs(t, "ab", RunBudget{3, 100, 5});
    REQUIRE(res.runs.size() == 1);
    RunFlow f = flow_of(t, res.runs[0], 2, 3);
    std::string dot = flow_to_dot(t, f.flow, "loop");
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
    CHECK(dot.rfind("}\n") == dot.size() - 2);
}
