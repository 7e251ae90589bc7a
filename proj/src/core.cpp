#include "crnbal/core.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "crnbal/algebra.hpp"
#include "crnbal/error.hpp"

namespace crnbal {

IntVec canonical_reaction_vector(const IntVec& u) {
    for (auto x : u) {
        if (x > 0) return u;
        if (x < 0) return vec_neg(u);
    }
    return u;  // zero vector; callers reject it beforehand
}

ReactionNetwork ReactionNetwork::build(std::vector<std::string> species,
                                       std::vector<ReversibleReaction> reactions) {
    if (species.empty()) fail(ErrorCode::InvalidArgument, "network needs at least one species");
    if (reactions.empty()) fail(ErrorCode::InvalidArgument, "network needs at least one reaction");
    {
        std::set<std::string> seen;
        for (const auto& name : species) {
            if (name.empty()) fail(ErrorCode::InvalidArgument, "empty species name");
            if (!seen.insert(name).second)
                fail(ErrorCode::DuplicateSpecies, "species " + name + " declared twice");
        }
    }
    const std::size_t s = species.size();
    std::vector<bool> used(s, false);
    std::set<std::string> labels_seen;
    ReactionNetwork net;
    for (const auto& rxn : reactions) {
        for (const Complex* cpx : {&rxn.reactant, &rxn.product}) {
            if (cpx->size() != s)
                fail(ErrorCode::DimensionMismatch, "complex length does not match species count");
            for (std::size_t j = 0; j < s; ++j) {
                const auto c = (*cpx)[j];
                if (c < 0) fail(ErrorCode::DimensionMismatch, "negative stoichiometric coefficient");
                if (c > 0) used[j] = true;
                net.max_coefficient_ = std::max(net.max_coefficient_, c);
            }
            std::int64_t total = 0;
            for (auto c : *cpx) total += c;
            net.max_complex_size_ = std::max(net.max_complex_size_, total);
        }
        if (rxn.reactant == rxn.product)
            fail(ErrorCode::SelfLoop, "reaction with equal reactant and product complex");
        for (const std::string* label : {&rxn.forward_label, &rxn.backward_label}) {
            if (label->empty()) fail(ErrorCode::InvalidArgument, "empty rate label");
            if (!labels_seen.insert(*label).second)
                fail(ErrorCode::DuplicateRateLabel, "rate label " + *label + " used twice");
        }
    }
    for (std::size_t j = 0; j < s; ++j)
        if (!used[j]) fail(ErrorCode::OrphanSpecies, "species " + species[j] +
                                                         " appears in no complex");

    net.species_ = std::move(species);
    net.reactions_ = std::move(reactions);
    for (const auto& rxn : net.reactions_) {
        net.rate_labels_.push_back(rxn.forward_label);
        net.rate_labels_.push_back(rxn.backward_label);
    }

    // Group reactions into reaction-vector classes, canonical sign up front,
    // channels in input order.
    std::map<IntVec, std::size_t> index_of;
    for (const auto& rxn : net.reactions_) {
        const IntVec u = vec_sub(rxn.product, rxn.reactant);
        const IntVec cu = canonical_reaction_vector(u);
        auto [it, fresh] = index_of.try_emplace(cu, net.classes_.size());
        if (fresh) net.classes_.push_back(ReactionVectorClass{cu, {}, {}});
        auto& cls = net.classes_[it->second];
        if (u == cu)
            cls.channels.push_back({rxn.reactant, rxn.forward_label, rxn.backward_label});
        else  // the directed reaction with vector cu is the reverse one
            cls.channels.push_back({rxn.product, rxn.backward_label, rxn.forward_label});
    }
    for (auto& cls : net.classes_) {
        cls.min_reactant = cls.channels.front().reactant;
        for (const auto& ch : cls.channels)
            for (std::size_t j = 0; j < s; ++j)
                cls.min_reactant[j] = std::min(cls.min_reactant[j], ch.reactant[j]);
    }
    return net;
}

int ReactionNetwork::class_index_of(const IntVec& u) const {
    const IntVec cu = canonical_reaction_vector(u);
    for (std::size_t i = 0; i < classes_.size(); ++i)
        if (classes_[i].u == cu) return static_cast<int>(i);
    return -1;
}

const std::vector<ReactionVectorClass>& reaction_vector_classes(const ReactionNetwork& net) {
    return net.classes();
}

std::vector<IntVec> stoichiometric_lattice_basis(const ReactionNetwork& net) {
    ZMatrix rows;
    for (const auto& cls : net.classes()) rows.push_back(to_zvec(cls.u));
    rows = hnf_rows(std::move(rows));
    std::vector<IntVec> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(to_intvec(r));
    return out;
}

bool same_compatibility_class(const ReactionNetwork& net, const State& a, const State& b) {
    if (a.size() != net.species_count() || b.size() != net.species_count())
        fail(ErrorCode::DimensionMismatch, "state length does not match species count");
    if (!vec_all_nonneg(a) || !vec_all_nonneg(b))
        fail(ErrorCode::InvalidArgument, "states must be nonnegative");
    ZMatrix basis;
    for (const auto& cls : net.classes()) basis.push_back(to_zvec(cls.u));
    basis = hnf_rows(std::move(basis));
    return lattice_contains(basis, to_zvec(vec_sub(a, b)));
}

}  // namespace crnbal
