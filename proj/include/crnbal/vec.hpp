#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace crnbal {

// Dense integer vector over the species axis. Used for complexes, reaction
// vectors and states; population counts stay far below the int64 range, all
// combinatorially large values live in arbitrary-precision types.
using IntVec = std::vector<std::int64_t>;

IntVec vec_add(const IntVec& a, const IntVec& b);
IntVec vec_sub(const IntVec& a, const IntVec& b);
IntVec vec_neg(const IntVec& a);
bool vec_is_zero(const IntVec& a);
bool vec_all_ge(const IntVec& a, const IntVec& b);  // componentwise a >= b
bool vec_all_nonneg(const IntVec& a);
std::string vec_to_string(const IntVec& a);  // "(1,-1,0)"

struct IntVecHash {
    std::size_t operator()(const IntVec& v) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace crnbal
