#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crnbal/rational.hpp"
#include "crnbal/vec.hpp"

namespace crnbal {

// ---------------------------------------------------------------------------
// Falling factorials
// ---------------------------------------------------------------------------

// Scalar falling factorial (x)_y = x(x-1)...(x-y+1) for y >= 1, and 1 for
// y <= 0. For x >= 0 the value is the number of ordered ways to draw y items
// from x, which is what stochastic mass-action uses; for x < 0 and y >= 1 we
// return 0 ("no molecules available") so that vector entries stay nonnegative.
Int falling_factorial(std::int64_t x, std::int64_t y);

// Componentwise product prod_j (a_j)_{y_j}. Throws DimensionMismatch.
Int falling_factorial(const IntVec& a, const IntVec& y);

// ---------------------------------------------------------------------------
// Integer lattices (all exact, arbitrary precision)
// ---------------------------------------------------------------------------

using ZVec = std::vector<Int>;
using ZMatrix = std::vector<ZVec>;

ZVec to_zvec(const IntVec& v);
IntVec to_intvec(const ZVec& v);  // throws InvalidArgument on overflow

// Canonical row-style Hermite normal form of the row span: echelon shape,
// positive pivots, entries above each pivot reduced into [0, pivot). Zero rows
// are dropped, so two row sets generate the same lattice iff their forms are
// identical.
ZMatrix hnf_rows(ZMatrix rows);

// Membership of v in the lattice spanned by the rows of a canonical HNF.
bool lattice_contains(const ZMatrix& hnf, ZVec v);

// Coefficients of v over the HNF rows, if v lies in the lattice.
std::optional<ZVec> lattice_coefficients(const ZMatrix& hnf, ZVec v);

// Basis (canonical HNF rows) of { alpha in Z^n : sum_i alpha_i columns[i] = 0 }.
ZMatrix integer_kernel_basis(const std::vector<IntVec>& columns);

// Rank of the rational span of the rows.
std::size_t rational_rank(const std::vector<IntVec>& rows);

// Integer diagonalization a = p * original * q with unimodular row and column
// transforms; a is diagonal, its nonzero entries exactly a[t][t] for t < rank.
struct Diagonalization {
    ZMatrix a;
    ZMatrix p;
    ZMatrix q;
    std::size_t rank = 0;
};

Diagonalization diagonalize(ZMatrix m);

// One integer solution alpha of sum_i alpha_i generators[i] = target,
// deterministic for fixed input (via an integer diagonalization of the
// generator matrix). Throws NotInLattice when no integer solution exists.
ZVec solve_integer_combination(const std::vector<IntVec>& generators, const IntVec& target);

// ---------------------------------------------------------------------------
// Multiplicative monomial constraint systems
// ---------------------------------------------------------------------------

// A single relation prod_label k_label^{e_label} = 1, exponents integral and
// sparse (zero exponents omitted).
struct MonomialConstraint {
    std::map<std::string, std::int64_t> exponents;

    // "k1 k2 k4 = k-1 k-2 k-4" style rendering; exponents beyond 1 appear as
    // k^2. The trivial constraint renders as "1 = 1".
    std::string render() const;
};

// A set of monomial relations, canonicalized as the integer lattice generated
// by the exponent vectors over a fixed label ordering. Equality and
// containment are decided on the canonical Hermite basis, so algebraically
// equivalent presentations compare equal.
class ConstraintSystem {
public:
    ConstraintSystem() = default;
    ConstraintSystem(std::vector<std::string> label_order,
                     std::vector<MonomialConstraint> generators);

    const std::vector<std::string>& label_order() const { return label_order_; }
    const std::vector<MonomialConstraint>& generators() const { return generators_; }
    const ZMatrix& canonical_basis() const { return basis_; }

    bool trivial() const { return basis_.empty(); }
    std::size_t rank() const { return basis_.size(); }

    // Exact test that every relation holds at the given positive rates.
    // Throws IncompleteRates if a label in the system has no value.
    bool holds(const std::map<std::string, Rat>& rates) const;

    // Same lattice of relations? Label universes are merged before comparing,
    // so systems over different label orders still compare correctly.
    bool equals(const ConstraintSystem& other) const;

    // Does every relation of `other` follow from this system (lattice
    // containment of other's exponent vectors in ours)?
    bool contains(const ConstraintSystem& other) const;

private:
    ZMatrix basis_in_order(const std::vector<std::string>& order) const;

    std::vector<std::string> label_order_;
    std::vector<MonomialConstraint> generators_;
    ZMatrix basis_;
};

// Evaluates prod k^e at the given rates; shared by ConstraintSystem and the
// balance analyses. Throws IncompleteRates on a missing label.
Rat evaluate_monomial(const std::map<std::string, std::int64_t>& exponents,
                      const std::map<std::string, Rat>& rates);

}  // namespace crnbal
