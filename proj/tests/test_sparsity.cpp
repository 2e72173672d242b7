#include <doctest.h>

#include <set>

#include "corpus.hpp"
#include "tw/analysis.hpp"
#include "tw/errors.hpp"
#include "tw/runner.hpp"
#include "tw/sparsity.hpp"

using namespace tw;

TEST_CASE("one-way machines have singleton classes") {
    TwoWayTransducer t = corpus::identity();
    TaggedEquivalence eq = tagged_equivalence(t, "ab");
    CHECK_FALSE(eq.classes.empty());
    for (const TaggedClass& c : eq.classes) {
        CHECK(c.members.size() == 1);
        CHECK(c.productive.size() <= 1);
    }
}

TEST_CASE("a productive marker loop forms a class with one productive member") {
    TwoWayTransducer t = corpus::marker_looper();
    TaggedEquivalence eq = tagged_equivalence(t, "a");
    bool found = false;
    for (const TaggedClass& c : eq.classes) {
        if (c.productive.size() == 1 && c.members.size() >= 2) {
            found = true;
            CHECK(c.anchor == 0);  // the loop reads the left marker
        }
    }
    CHECK(found);
    CHECK(k_sparse_on_input(t, "a", 1).sparse);
}

TEST_CASE("multipass copier classes collect one productive transition per position") {
    TwoWayTransducer t = corpus::multipass_copier();
    SparsityCheck c = k_sparse_on_input(t, "abc", 2);
    REQUIRE_FALSE(c.sparse);
    REQUIRE(c.violating.has_value());
    CHECK(c.violating->productive.size() == 3);
    std::set<int> positions;
    for (const TaggedTransition& tt : c.violating->productive) positions.insert(tt.position);
    CHECK(positions == std::set<int>{1, 2, 3});
}

TEST_CASE("sparsity sweeps") {
    SparsitySweep id = k_sparse_bounded_check(corpus::identity(), 1, 5);
    CHECK(id.sparse_up_to_bound);
    SparsitySweep t2 = k_sparse_bounded_check(corpus::t2_swap_halves(), 1, 4);
    CHECK(t2.sparse_up_to_bound);
    SparsitySweep mp = k_sparse_bounded_check(corpus::multipass_copier(), 1, 3);
    REQUIRE_FALSE(mp.sparse_up_to_bound);
    CHECK(mp.witness_input.size() <= 2);
    CHECK(k_sparse_on_input(corpus::t1_last_to_front(), "aba", 1).sparse);
}

TEST_CASE("normalization leaves loop-free runs unchanged") {
    TwoWayTransducer t = corpus::reverse();
    EnumResult res = enumerate_runs(t, "ab", RunBudget{3, 100, 10});
    REQUIRE(res.runs.size() == 1);
    Run norm = normalize_run(t, res.runs[0]);
    CHECK(norm.configs == res.runs[0].configs);
}

TEST_CASE("normalization excises vertical loops and is idempotent") {
    TwoWayTransducer t = corpus::multipass_copier();
    EnumResult res = enumerate_runs(t, "ab", RunBudget{5, 300, 4000});
    REQUIRE_FALSE(res.runs.empty());
    int with_loops = 0;
    for (const Run& r : res.runs) {
        Run norm = normalize_run(t, r);
        CHECK(check_run(t, norm).empty());
        CHECK(norm.successful);
        if (norm.length() < r.length()) ++with_loops;
        // all configurations distinct after normalization
        std::set<std::pair<int, int>> seen;
        for (const Configuration& c : norm.configs)
            CHECK(seen.insert({c.state, c.cut}).second);
        Run twice = normalize_run(t, norm);
        CHECK(twice.configs == norm.configs);
        CHECK(is_k_visit(norm, static_cast<int>(t.transitions.size())));
    }
    CHECK(with_loops > 0);
}

TEST_CASE("normalized output interleaves the removed loop outputs") {
    TwoWayTransducer t = corpus::multipass_copier();
    EnumResult res = enumerate_runs(t, "ab", RunBudget{5, 300, 4000});
    for (const Run& r : res.runs) {
        Run norm = normalize_run(t, r);
        // the normalized output is a subsequence of the original, obtained by
        // dropping whole loop factors
        std::string full = run_output(t, r);
        std::string kept = run_output(t, norm);
        size_t at = 0;
        bool subseq = true;
        for (char c : kept) {
            at = full.find(c, at);
            if (at == std::string::npos) {
                subseq = false;
                break;
            }
            ++at;
        }
        CHECK(subseq);
    }
}

TEST_CASE("sparse classes bound loop origins in enumerated runs") {
    // machines sparse at K: every vertical loop of an enumerated run touches
    // at most K distinct origins with its outputs
    struct Entry {
        TwoWayTransducer t;
        int K;
    };
    for (Entry e : {Entry{corpus::identity(), 1}, Entry{corpus::marker_looper(), 1},
                    Entry{corpus::t2_swap_halves(), 1}}) {
        for (const std::string& w : corpus::words_up_to(e.t.alphabet.input, 3)) {
            if (!k_sparse_on_input(e.t, w, e.K).sparse) continue;
            EnumResult res = enumerate_runs(e.t, w, RunBudget{4, 200, 500});
            for (const Run& r : res.runs) {
                std::vector<int> offs = run_output_offsets(e.t, r);
                for (int i = 0; i <= r.length(); ++i)
                    for (int j = i + 1; j <= r.length(); ++j) {
                        if (!(r.configs[i] == r.configs[j])) continue;
                        std::set<int> origins;
                        for (int k = i; k < j; ++k)
                            if (e.t.transitions[r.steps[k].transition].productive())
                                origins.insert(r.steps[k].read_pos);
                        CHECK(static_cast<int>(origins.size()) <= e.K);
                    }
            }
        }
    }
}

TEST_CASE("non-sparse witnesses pump into wide crosses") {
    // run the multipass copier over a^(2n) copying positions in decreasing
    // order: the origin sequence reverses, so the cross width reaches n
    TwoWayTransducer t = corpus::multipass_copier();
    for (int n : {2, 3}) {
        int len = 2 * n;
        std::string w(len, 'a');
        Run r;
        r.input = w;
        r.configs.push_back(Configuration{t.find_state("m0"), 1});
        auto step_with = [&](const char* src, char letter, const char* dst) {
            int ti = -1;
            for (int i = 0; i < static_cast<int>(t.transitions.size()); ++i) {
                const Transition& tr = t.transitions[i];
                if (tr.letter == letter && t.state_names[tr.src] == src &&
                    t.state_names[tr.dst] == dst)
                    ti = i;
            }
            REQUIRE(ti >= 0);
            int pos;
            Configuration next;
            REQUIRE(apply_transition(t, w, r.configs.back(), t.transitions[ti], &pos, &next));
            r.steps.push_back(Step{ti, pos});
            r.configs.push_back(next);
        };
        for (int pass = 0; pass < len; ++pass) {
            int copy_at = len - pass;  // decreasing positions
            for (int pos = 1; pos < copy_at; ++pos) step_with("m0", 'a', "m0");
            step_with("m0", 'a', "m1");
            for (int pos = copy_at + 1; pos <= len; ++pos) step_with("m1", 'a', "m1");
            if (pass + 1 < len) {
                step_with("m1", '>', "mb");
                for (int pos = len; pos >= 1; --pos) step_with("mb", 'a', "mb");
                step_with("mb", '<', "m0");
            }
        }
        r.successful = run_is_successful(t, r);
        REQUIRE(r.successful);
        REQUIRE(check_run(t, r).empty());
        SynchronizedPair p = origin_graph(t, r);
        CHECK(cross_width(p).width >= n);
    }
}
