#ifndef TW_MONOID_HPP
#define TW_MONOID_HPP

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "tw/bigint.hpp"
#include "tw/flow.hpp"

namespace tw {

// All structurally valid flows over a single letter whose edges are backed by
// transitions reading it. Marker letters additionally carry the run entry
// (left marker) or run exit (right marker) vertex. max_side bounds the vertex
// count per side; runs under visit bound K realize at most K per side.
std::vector<Flow> generate_letter_flows(const TwoWayTransducer& t, char letter, int max_side,
                                        long cap);

// Where an element can sit inside a padded word's flow product.
enum RoleBits : unsigned {
    kRoleInterior = 1u,  // product of plain letters only
    kRoleLeft = 2u,      // starts with a left-marker flow
    kRoleRight = 4u,     // ends with a right-marker flow
};

struct MonoidElement {
    Flow flow;
    unsigned roles = 0;
    std::string interior_witness;  // letter word realizing the element in that role
    std::string left_witness;
    std::string right_witness;
    int idempotent = -1;  // lazily computed: -1 unknown, 0 no, 1 yes
};

struct FlowMonoid {
    int visit_bound = 1;
    std::vector<MonoidElement> elements;  // distinct non-bottom flows
    std::unordered_map<Flow, int, FlowHash> index;
    std::vector<std::pair<char, int>> generators;  // (letter, element index)
    BigUint size_bound;                            // (|Q|(2K+1))^{2K} + 1

    // Element count including the absorbing bottom.
    std::size_t size() const { return elements.size() + 1; }
    bool element_idempotent(int idx);
    const std::string& witness(int idx, unsigned role) const;
};

BigUint monoid_size_bound(int num_states, int K);

// Closure of all letter flows (markers included) under composition, with the
// anchoring roles tracked per element. Throws BoundExceededError past cap.
FlowMonoid generate_monoid(const TwoWayTransducer& t, int K, long cap = 200000);

}  // namespace tw

#endif
