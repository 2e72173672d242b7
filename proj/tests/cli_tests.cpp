// Drives the command-line tool and checks outputs and exit codes.
// argv[1] = path to the binary, argv[2] = data directory.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

namespace {

int failures = 0;

struct Result {
    int exit_code;
    std::string out;
};

Result run_cmd(const std::string& cmd) {
    std::string full = cmd + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: cli_tests <twt> <data-dir>\n";
        return 2;
    }
    std::string twt = argv[1];
    std::string data = argv[2];

    Result r = run_cmd(twt + " decide-oneway " + data + "/t1.tw -k 3");
    expect(r.exit_code == 0 && contains(r.out, "YES"), "t1 decides YES with exit 0");

    r = run_cmd(twt + " decide-oneway " + data + "/t2.tw -k 3");
    expect(r.exit_code == 1 && contains(r.out, "NO"), "t2 decides NO with exit 1");
    expect(contains(r.out, "witness input"), "t2 witness emitted");

    r = run_cmd(twt + " decide-oneway " + data + "/reverse.tw -k 3 --json");
    expect(r.exit_code == 1 && contains(r.out, "\"one_way_resynchronizable\": false"),
           "reverse decides NO as json");
    expect(contains(r.out, "\"witness\""), "reverse witness in json");

    r = run_cmd(twt + " run " + data + "/t1.tw baca --json");
    expect(r.exit_code == 0 && contains(r.out, "\"output\": \"abac\""), "run json output");

    r = run_cmd(twt + " crosswidth " + data + "/fig1_left.json");
    expect(r.exit_code == 0 && r.out == "1\n", "fig1 left cross width prints 1");

    r = run_cmd(twt + " crosswidth " + data + "/fig1_right.json --json");
    expect(r.exit_code == 0 && contains(r.out, "\"order_preserving\": true"),
           "fig1 right is order preserving");

    r = run_cmd(twt + " traversal " + data + "/fig1_left.json " + data + "/fig1_right.json --json");
    expect(r.exit_code == 0 && contains(r.out, "\"max_traversal\": 1"), "fig1 traversal is 1");

    r = run_cmd(twt + " pump " + data + "/identity.tw ab 2 3 -n 3");
    expect(r.exit_code == 0 && contains(r.out, "abbb"), "identity pump duplicates the letter");

    r = run_cmd(twt + " flows " + data + "/reverse.tw ab 2 3 -k 3 --json");
    expect(r.exit_code == 0 && contains(r.out, "\"idempotent\": true"), "reverse loop flow json");

    r = run_cmd(twt + " monoid " + data + "/t2.tw -k 3 --json");
    expect(r.exit_code == 0 && contains(r.out, "\"size_bound\": \"1838265626\""),
           "t2 monoid size bound");

    r = run_cmd(twt + " factorize " + data + "/t1.tw ba -k 3 --threshold 0 --json");
    expect(r.exit_code == 0 && contains(r.out, "\"order_preserving\": true"),
           "t1 retargeting is order-preserving");
    expect(contains(r.out, "\"violations\": []"), "t1 retargeting verifies clean");

    r = run_cmd(twt + " sparsity " + data + "/multipass.tw -k 1 --max-len 3");
    expect(r.exit_code == 1 && contains(r.out, "NOT_SPARSE"), "multipass is not 1-sparse");

    r = run_cmd(twt + " sparsity " + data + "/identity.tw -k 1 --max-len 5");
    expect(r.exit_code == 0 && contains(r.out, "SPARSE_UP_TO_BOUND"), "identity is 1-sparse");

    r = run_cmd(twt + " validate " + data + "/t2.tw");
    expect(r.exit_code == 0 && contains(r.out, "ok"), "t2 validates");

    r = run_cmd(twt + " decide-oneway " + data + "/missing.tw -k 3");
    expect(r.exit_code == 2, "missing file is a usage error");

    r = run_cmd(twt + " decide-oneway");
    expect(r.exit_code == 2, "missing arguments are a usage error");

    std::string dot = data + "/.flow_dot_out";
    r = run_cmd(twt + " flows " + data + "/reverse.tw ab 2 3 -k 3 --dot " + dot);
    Result cat = run_cmd("cat " + dot + " && rm " + dot);
    expect(r.exit_code == 0 && contains(cat.out, "digraph"), "dot export written");

    r = run_cmd(twt + " flows " + data + "/reverse.tw ab 2 3 -k 3 --dot-letters " + dot);
    cat = run_cmd("cat " + dot + " && rm " + dot);
    expect(r.exit_code == 0 && contains(cat.out, "digraph juxtaposition"),
           "letter juxtaposition dot written");

    r = run_cmd(twt + " classes " + data + "/multipass.tw aa --json");
    expect(r.exit_code == 0 && contains(r.out, "\"productive_count\": 2"),
           "class report shows the two productive members");

    if (failures == 0) {
        std::cout << "cli tests passed\n";
        return 0;
    }
    std::cerr << failures << " cli test(s) failed\n";
    return 1;
}
