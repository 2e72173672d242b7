#include "tw/monoid.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <tuple>

#include "tw/errors.hpp"

namespace tw {

namespace {

struct Cand {
    int src, dst;
    bool prod;
};

// Candidate edges per kind for one letter, deduplicated on (src,dst,prod).
struct LetterCands {
    std::vector<Cand> lr, ll, rr, rl;
};

LetterCands collect_cands(const TwoWayTransducer& t, char letter) {
    std::set<std::tuple<int, int, int, bool>> seen;
    LetterCands c;
    for (const Transition& tr : t.transitions) {
        if (tr.letter != letter) continue;
        bool sr = t.right_reading[tr.src], dr = t.right_reading[tr.dst];
        int kind = sr ? (dr ? 0 : 1) : (dr ? 2 : 3);  // LR, LL, RR, RL
        if (!seen.insert({kind, tr.src, tr.dst, tr.productive()}).second) continue;
        Cand cand{tr.src, tr.dst, tr.productive()};
        switch (kind) {
            case 0: c.lr.push_back(cand); break;
            case 1: c.ll.push_back(cand); break;
            case 2: c.rr.push_back(cand); break;
            case 3: c.rl.push_back(cand); break;
        }
    }
    return c;
}

struct Builder {
    std::vector<int> l_lab, r_lab;  // -1 = unfilled
    std::vector<FlowEdge> edges;
    std::vector<Flow>* out;
    long cap;

    void emit() {
        Flow f;
        f.l_states = l_lab;
        f.r_states = r_lab;
        f.edges = edges;
        f.canonicalize();
        out->push_back(std::move(f));
        if (static_cast<long>(out->size()) > cap)
            throw BoundExceededError("letter flow generation exceeded cap");
    }
};

// Fills the first open L slot, then the first open R slot, trying every
// transition-backed edge shape; each valid flow is produced exactly once.
void fill(Builder& b, const LetterCands& c) {
    int li = -1;
    for (size_t i = 0; i < b.l_lab.size(); ++i)
        if (b.l_lab[i] == -1) {
            li = static_cast<int>(i);
            break;
        }
    if (li >= 0) {
        for (const Cand& cd : c.lr) {  // source of a crossing
            for (size_t j = 0; j < b.r_lab.size(); ++j) {
                if (b.r_lab[j] != -1) continue;
                b.l_lab[li] = cd.src;
                b.r_lab[j] = cd.dst;
                b.edges.push_back(FlowEdge{EdgeKind::LR, li, static_cast<int>(j), cd.prod});
                fill(b, c);
                b.edges.pop_back();
                b.l_lab[li] = -1;
                b.r_lab[j] = -1;
            }
        }
        for (const Cand& cd : c.ll) {  // left-boundary bounce
            for (size_t j = li + 1; j < b.l_lab.size(); ++j) {
                if (b.l_lab[j] != -1) continue;
                b.l_lab[li] = cd.src;
                b.l_lab[j] = cd.dst;
                b.edges.push_back(FlowEdge{EdgeKind::LL, li, static_cast<int>(j), cd.prod});
                fill(b, c);
                b.edges.pop_back();
                b.l_lab[li] = -1;
                b.l_lab[j] = -1;
            }
        }
        for (const Cand& cd : c.rl) {  // target of a backwards crossing
            for (size_t j = 0; j < b.r_lab.size(); ++j) {
                if (b.r_lab[j] != -1) continue;
                b.r_lab[j] = cd.src;
                b.l_lab[li] = cd.dst;
                b.edges.push_back(FlowEdge{EdgeKind::RL, static_cast<int>(j), li, cd.prod});
                fill(b, c);
                b.edges.pop_back();
                b.r_lab[j] = -1;
                b.l_lab[li] = -1;
            }
        }
        return;
    }
    int ri = -1;
    for (size_t i = 0; i < b.r_lab.size(); ++i)
        if (b.r_lab[i] == -1) {
            ri = static_cast<int>(i);
            break;
        }
    if (ri >= 0) {
        for (const Cand& cd : c.rr) {  // right-boundary bounce
            for (size_t j = ri + 1; j < b.r_lab.size(); ++j) {
                if (b.r_lab[j] != -1) continue;
                b.r_lab[ri] = cd.src;
                b.r_lab[j] = cd.dst;
                b.edges.push_back(FlowEdge{EdgeKind::RR, ri, static_cast<int>(j), cd.prod});
                fill(b, c);
                b.edges.pop_back();
                b.r_lab[ri] = -1;
                b.r_lab[j] = -1;
            }
        }
        return;
    }
    b.emit();
}

// Matches slots of one boundary side among themselves (marker flows).
void match_side(std::vector<int>& lab, std::vector<FlowEdge>& edges, int from,
                const std::vector<Cand>& cands, EdgeKind kind,
                const std::function<void()>& emit) {
    int i = -1;
    for (size_t k = from; k < lab.size(); ++k)
        if (lab[k] == -1) {
            i = static_cast<int>(k);
            break;
        }
    if (i < 0) {
        emit();
        return;
    }
    for (const Cand& cd : cands) {
        for (size_t j = i + 1; j < lab.size(); ++j) {
            if (lab[j] != -1) continue;
            lab[i] = cd.src;
            lab[j] = cd.dst;
            edges.push_back(FlowEdge{kind, i, static_cast<int>(j), cd.prod});
            match_side(lab, edges, from, cands, kind, emit);
            edges.pop_back();
            lab[i] = -1;
            lab[j] = -1;
        }
    }
}

}  // namespace

std::vector<Flow> generate_letter_flows(const TwoWayTransducer& t, char letter, int max_side,
                                        long cap) {
    std::vector<Flow> out;
    LetterCands cands = collect_cands(t, letter);

    if (letter == kLeftMark) {
        // One L vertex: the run entry. R side: the entry target followed by
        // bounce pairs off the marker.
        for (int q = 0; q < t.state_count(); ++q) {
            if (!t.right_reading[q]) continue;
            for (int pairs = 0; 1 + 2 * pairs <= max_side; ++pairs) {
                std::vector<int> r_lab(1 + 2 * pairs, -1);
                r_lab[0] = q;
                std::vector<FlowEdge> edges{FlowEdge{EdgeKind::LR, 0, 0, false}};
                match_side(r_lab, edges, 1, cands.rr, EdgeKind::RR, [&] {
                    Flow f;
                    f.l_states = {q};
                    f.r_states = r_lab;
                    f.edges = edges;
                    f.canonicalize();
                    out.push_back(std::move(f));
                    if (static_cast<long>(out.size()) > cap)
                        throw BoundExceededError("letter flow generation exceeded cap");
                });
            }
        }
        return out;
    }
    if (letter == kRightMark) {
        // One R vertex: the run exit, reached by a zero-length edge from the
        // last L vertex; before it, bounce pairs off the marker.
        for (int q = 0; q < t.state_count(); ++q) {
            if (!t.right_reading[q]) continue;
            for (int pairs = 0; 1 + 2 * pairs <= max_side; ++pairs) {
                std::vector<int> l_lab(2 * pairs, -1);
                std::vector<FlowEdge> edges;
                match_side(l_lab, edges, 0, cands.ll, EdgeKind::LL, [&] {
                    Flow f;
                    f.l_states = l_lab;
                    f.l_states.push_back(q);
                    f.r_states = {q};
                    f.edges = edges;
                    f.edges.push_back(FlowEdge{EdgeKind::LR, 2 * pairs, 0, false});
                    f.canonicalize();
                    out.push_back(std::move(f));
                    if (static_cast<long>(out.size()) > cap)
                        throw BoundExceededError("letter flow generation exceeded cap");
                });
            }
        }
        return out;
    }

    Builder b;
    b.out = &out;
    b.cap = cap;
    for (int ml = 0; ml <= max_side; ++ml) {
        for (int mr = 0; mr <= max_side; ++mr) {
            if (ml == 0 && mr == 0) continue;
            b.l_lab.assign(ml, -1);
            b.r_lab.assign(mr, -1);
            fill(b, cands);
        }
    }
    return out;
}

BigUint monoid_size_bound(int num_states, int K) {
    BigUint base(static_cast<std::uint64_t>(num_states) * (2 * K + 1));
    return BigUint::pow(base, 2 * K) + BigUint(1);
}

bool FlowMonoid::element_idempotent(int idx) {
    MonoidElement& e = elements[idx];
    if (e.idempotent < 0) e.idempotent = is_idempotent(e.flow) ? 1 : 0;
    return e.idempotent == 1;
}

const std::string& FlowMonoid::witness(int idx, unsigned role) const {
    const MonoidElement& e = elements[idx];
    if (role == kRoleLeft) return e.left_witness;
    if (role == kRoleRight) return e.right_witness;
    return e.interior_witness;
}

FlowMonoid generate_monoid(const TwoWayTransducer& t, int K, long cap) {
    FlowMonoid m;
    m.visit_bound = K;
    m.size_bound = monoid_size_bound(t.state_count(), K);

    std::vector<char> letters(t.alphabet.input);
    letters.push_back(kLeftMark);
    letters.push_back(kRightMark);

    std::deque<int> queue;
    std::vector<bool> queued;

    auto add_element = [&](const Flow& f) -> int {
        auto it = m.index.find(f);
        if (it != m.index.end()) return it->second;
        int idx = static_cast<int>(m.elements.size());
        if (static_cast<long>(m.elements.size()) + 1 > cap)
            throw BoundExceededError("flow monoid generation exceeded cap of " +
                                     std::to_string(cap) + " elements");
        m.elements.push_back(MonoidElement{f, 0, "", "", "", -1});
        m.index.emplace(f, idx);
        queued.push_back(false);
        return idx;
    };
    auto enqueue = [&](int idx) {
        if (!queued[idx]) {
            queued[idx] = true;
            queue.push_back(idx);
        }
    };
    auto give_role = [&](int idx, unsigned role, const std::string& wit) {
        MonoidElement& e = m.elements[idx];
        if (e.roles & role) return;
        e.roles |= role;
        if (role == kRoleInterior) e.interior_witness = wit;
        if (role == kRoleLeft) e.left_witness = wit;
        if (role == kRoleRight) e.right_witness = wit;
        enqueue(idx);
    };

    for (char a : letters) {
        for (const Flow& f : generate_letter_flows(t, a, K, cap)) {
            int idx = add_element(f);
            m.generators.emplace_back(a, idx);
            if (a == kLeftMark)
                give_role(idx, kRoleLeft, std::string(1, a));
            else if (a == kRightMark)
                give_role(idx, kRoleRight, std::string(1, a));
            else
                give_role(idx, kRoleInterior, std::string(1, a));
            enqueue(idx);
        }
    }

    while (!queue.empty()) {
        int e = queue.front();
        queue.pop_front();
        queued[e] = false;
        unsigned roles = m.elements[e].roles;
        std::string iw = m.elements[e].interior_witness;
        std::string lw = m.elements[e].left_witness;
        for (const auto& [letter, gidx] : m.generators) {
            if (m.elements[e].flow.r_states != m.elements[gidx].flow.l_states) continue;
            Flow prod = compose(m.elements[e].flow, m.elements[gidx].flow);
            if (prod.bottom) continue;
            int pidx = add_element(prod);
            if (letter != kLeftMark && letter != kRightMark) {
                if (roles & kRoleInterior) give_role(pidx, kRoleInterior, iw + letter);
                if (roles & kRoleLeft) give_role(pidx, kRoleLeft, lw + letter);
            } else if (letter == kRightMark) {
                if (roles & kRoleInterior) give_role(pidx, kRoleRight, iw + letter);
            }
        }
    }
    return m;
}

}  // namespace tw
