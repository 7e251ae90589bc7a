#pragma once

#include <map>
#include <string>

#include "crnbal/core.hpp"
#include "crnbal/rational.hpp"

namespace crnbal {

// Exact rational values for (a subset of) the network's rate-constant labels.
struct RateAssignment {
    std::map<std::string, Rat> values;

    bool has(const std::string& label) const { return values.count(label) != 0; }
    // Throws IncompleteRates when the label has no value.
    const Rat& at(const std::string& label) const;
    // True when every label of the network has a value.
    bool complete(const ReactionNetwork& net) const;
};

struct ParsedNetwork {
    ReactionNetwork network;
    RateAssignment rates;
};

// Text format, one reversible reaction per line:
//
//   # comment
//   2A + B <-> 3A ; kf=13.5, kr=1/250
//   A <-> C ; kf=k3, kr=k-3
//
// Complexes are "0" or integer-weighted species sums. A numeric rate (decimal
// or fraction, converted exactly) is a value for the positional default label
// k<i>/k-<i> of reaction i; an identifier names the label symbolically and
// leaves the value unassigned. The "; kf=..., kr=..." clause may be omitted
// entirely. Species are indexed in order of first appearance.
//
// Errors: SyntaxError with line/column (an irreversible "->" arrow is reported
// as such), NegativeOrZeroRate, plus everything ReactionNetwork::build raises.
ParsedNetwork parse_network(const std::string& text);

// Inverse of parse_network on its image: emits numeric rates for default
// labels with values and symbolic labels otherwise, so
// serialize(parse(serialize(x))) == serialize(x).
std::string serialize_network(const ReactionNetwork& net, const RateAssignment& rates);

// "label = value" lines (# comments allowed); used for the CLI --rates file.
RateAssignment parse_rate_file(const std::string& text);

}  // namespace crnbal
