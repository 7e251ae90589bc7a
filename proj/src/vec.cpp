#include "crnbal/vec.hpp"

#include "crnbal/error.hpp"

namespace crnbal {

namespace {
void check_dims(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size())
        fail(ErrorCode::DimensionMismatch, "vector lengths " + std::to_string(a.size()) +
                                               " and " + std::to_string(b.size()));
}
}  // namespace

IntVec vec_add(const IntVec& a, const IntVec& b) {
    check_dims(a, b);
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

IntVec vec_sub(const IntVec& a, const IntVec& b) {
    check_dims(a, b);
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

IntVec vec_neg(const IntVec& a) {
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

bool vec_is_zero(const IntVec& a) {
    for (auto x : a)
        if (x != 0) return false;
    return true;
}

bool vec_all_ge(const IntVec& a, const IntVec& b) {
    check_dims(a, b);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

bool vec_all_nonneg(const IntVec& a) {
    for (auto x : a)
        if (x < 0) return false;
    return true;
}

std::string vec_to_string(const IntVec& a) {
    std::string out = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(a[i]);
    }
    return out + ")";
}

}  // namespace crnbal
