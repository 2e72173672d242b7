#ifndef TW_TEXTIO_HPP
#define TW_TEXTIO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "tw/analysis.hpp"
#include "tw/factorization.hpp"
#include "tw/run.hpp"
#include "tw/transducer.hpp"

namespace tw {

// Text format, one declaration per line, '#' starts a comment:
//   input: a b c
//   output: a b c
//   right: q0 q2          (right-reading states)
//   left: q1
//   initial: q0
//   final: q2
//   q0 , a -> ab , q1     (transition; empty output allowed)
// The endmarkers are spelled '<' and '>' in transitions.
TwoWayTransducer parse_transducer(const std::string& text);
TwoWayTransducer load_transducer_file(const std::string& path);
std::string render_transducer(const TwoWayTransducer& t);

// Pair JSON: {"input": "...", "output": "...", "origin": [1-based...]}.
SynchronizedPair pair_from_json(const std::string& json_text);
SynchronizedPair load_pair_file(const std::string& path);
std::string pair_to_json(const SynchronizedPair& s);

std::string flow_to_dot(const TwoWayTransducer& t, const Flow& f, const std::string& name);
std::string juxtaposition_to_dot(const TwoWayTransducer& t, const std::vector<Flow>& flows);
std::string tree_to_dot(const TwoWayTransducer& t, const FactorizationTree& tree);

}  // namespace tw

#endif
