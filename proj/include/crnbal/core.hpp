#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crnbal/vec.hpp"

namespace crnbal {

// A complex is a nonnegative stoichiometric vector over the species axis; the
// zero vector is the empty complex "0". A state is a population vector.
using Complex = IntVec;
using State = IntVec;

// One reversible pair y <-> y' with its two rate-constant labels.
struct ReversibleReaction {
    Complex reactant;            // y  (forward direction is reactant -> product)
    Complex product;             // y'
    std::string forward_label;   // label of y -> y'
    std::string backward_label;  // label of y' -> y
};

// One directed channel of a reaction-vector class: a reaction y -> y + u.
// forward_label names that reaction, backward_label its reverse y + u -> y.
struct ReactionChannel {
    Complex reactant;
    std::string forward_label;
    std::string backward_label;
};

// All reversible reactions sharing the same reaction vector, keyed by the
// canonical sign of u (first nonzero component positive). channels[i] lists
// the reactions with vector exactly u, in input order; their reverses form
// the class of -u. min_reactant is the componentwise minimum m(u) of the
// channel reactants.
struct ReactionVectorClass {
    IntVec u;
    std::vector<ReactionChannel> channels;
    IntVec min_reactant;

    std::size_t channel_count() const { return channels.size(); }
};

// Flip the canonical sign when the first nonzero component is negative.
IntVec canonical_reaction_vector(const IntVec& u);

// Immutable, validated reversible network. Construction checks:
//   DuplicateSpecies   repeated species name
//   DimensionMismatch  complex length != species count, or negative entry
//   SelfLoop           reactant == product (zero reaction vector)
//   DuplicateRateLabel repeated rate-constant label
//   OrphanSpecies      species absent from every complex
class ReactionNetwork {
public:
    static ReactionNetwork build(std::vector<std::string> species,
                                 std::vector<ReversibleReaction> reactions);

    std::size_t species_count() const { return species_.size(); }
    const std::vector<std::string>& species() const { return species_; }
    const std::vector<ReversibleReaction>& reactions() const { return reactions_; }
    const std::vector<ReactionVectorClass>& classes() const { return classes_; }

    // All rate-constant labels in input order (forward then backward per
    // reaction). This is the label ordering constraint systems use.
    const std::vector<std::string>& rate_labels() const { return rate_labels_; }

    // Index into classes() for the class containing vector u or -u;
    // returns -1 when no such class exists.
    int class_index_of(const IntVec& u) const;

    // Largest single stoichiometric coefficient and largest total complex
    // size appearing anywhere in the network.
    std::int64_t max_coefficient() const { return max_coefficient_; }
    std::int64_t max_complex_size() const { return max_complex_size_; }

private:
    ReactionNetwork() = default;

    std::vector<std::string> species_;
    std::vector<ReversibleReaction> reactions_;
    std::vector<ReactionVectorClass> classes_;
    std::vector<std::string> rate_labels_;
    std::int64_t max_coefficient_ = 0;
    std::int64_t max_complex_size_ = 0;
};

// The classes, in first-appearance order (same object the network stores).
const std::vector<ReactionVectorClass>& reaction_vector_classes(const ReactionNetwork& net);

// Canonical basis (Hermite rows) of the stoichiometric lattice spanned by the
// reaction vectors.
std::vector<IntVec> stoichiometric_lattice_basis(const ReactionNetwork& net);

// Do two states differ by a lattice element (same compatibility class)?
bool same_compatibility_class(const ReactionNetwork& net, const State& a, const State& b);

}  // namespace crnbal
