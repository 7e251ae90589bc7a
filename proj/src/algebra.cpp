#include "crnbal/algebra.hpp"

#include <algorithm>
#include <set>

#include "crnbal/error.hpp"

namespace crnbal {

// ---------------------------------------------------------------------------
// Falling factorials
// ---------------------------------------------------------------------------

Int falling_factorial(std::int64_t x, std::int64_t y) {
    if (y <= 0) return Int(1);
    if (x < 0) return Int(0);
    if (y > x) return Int(0);  // the product runs through zero
    Int out(1);
    for (std::int64_t k = 0; k < y; ++k) out *= Int(x - k);
    return out;
}

Int falling_factorial(const IntVec& a, const IntVec& y) {
    if (a.size() != y.size())
        fail(ErrorCode::DimensionMismatch, "falling_factorial over vectors of different length");
    Int out(1);
    for (std::size_t j = 0; j < a.size(); ++j) {
        out *= falling_factorial(a[j], y[j]);
        if (out == 0) return out;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

ZVec to_zvec(const IntVec& v) {
    ZVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Int(static_cast<long>(v[i]));
    return out;
}

IntVec to_intvec(const ZVec& v) {
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].fits_slong_p())
            fail(ErrorCode::InvalidArgument, "lattice entry exceeds machine range");
        out[i] = v[i].get_si();
    }
    return out;
}

namespace {

int abs_cmp(const Int& a, const Int& b) {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

void row_subtract(ZMatrix& m, std::size_t target, std::size_t source, const Int& q) {
    if (q == 0) return;
    auto& t = m[target];
    const auto& s = m[source];
    for (std::size_t j = 0; j < t.size(); ++j) t[j] -= q * s[j];
}

// Row echelon over the integers using unimodular row operations, restricted to
// pivot columns < limit_cols (the full row width still participates in the
// operations). Returns the number of pivot rows; rows at and beyond that index
// are zero in the first limit_cols columns. Pivots are positive and entries
// above each pivot are reduced into [0, pivot).
std::size_t hnf_core(ZMatrix& m, std::size_t limit_cols) {
    const std::size_t rows = m.size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < limit_cols && r < rows; ++c) {
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (m[i][c] != 0 && (best == rows || abs_cmp(m[i][c], m[best][c]) < 0)) best = i;
            if (best == rows) break;
            std::swap(m[r], m[best]);
            bool cleared = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
                row_subtract(m, i, r, q);
                if (m[i][c] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (m[r][c] == 0) continue;  // column already zero below r
        if (m[r][c] < 0)
            for (auto& x : m[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
            row_subtract(m, i, r, q);
        }
        ++r;
    }
    return r;
}

std::size_t pivot_column(const ZVec& row) {
    for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) return j;
    return row.size();
}

}  // namespace

ZMatrix hnf_rows(ZMatrix rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols) fail(ErrorCode::DimensionMismatch, "ragged matrix");
    const std::size_t rank = hnf_core(rows, cols);
    rows.resize(rank);
    return rows;
}

bool lattice_contains(const ZMatrix& hnf, ZVec v) {
    return lattice_coefficients(hnf, std::move(v)).has_value();
}

std::optional<ZVec> lattice_coefficients(const ZMatrix& hnf, ZVec v) {
    ZVec coeffs(hnf.size(), Int(0));
    for (std::size_t r = 0; r < hnf.size(); ++r) {
        const std::size_t c = pivot_column(hnf[r]);
        if (c == hnf[r].size()) fail(ErrorCode::InvalidArgument, "zero row in canonical basis");
        if (v.size() != hnf[r].size())
            fail(ErrorCode::DimensionMismatch, "vector length does not match basis");
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v[c].get_mpz_t(), hnf[r][c].get_mpz_t());
        if (rem != 0) return std::nullopt;
        if (q != 0)
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * hnf[r][j];
        coeffs[r] = q;
    }
    for (const auto& x : v)
        if (x != 0) return std::nullopt;
    return coeffs;
}

ZMatrix integer_kernel_basis(const std::vector<IntVec>& columns) {
    const std::size_t n = columns.size();
    if (n == 0) return {};
    const std::size_t m = columns[0].size();
    ZMatrix aug(n, ZVec(m + n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (columns[i].size() != m) fail(ErrorCode::DimensionMismatch, "ragged column list");
        for (std::size_t j = 0; j < m; ++j) aug[i][j] = Int(static_cast<long>(columns[i][j]));
        aug[i][m + i] = 1;
    }
    const std::size_t rank = hnf_core(aug, m);
    ZMatrix kernel;
    for (std::size_t i = rank; i < n; ++i)
        kernel.emplace_back(aug[i].begin() + m, aug[i].end());
    return hnf_rows(std::move(kernel));
}

std::size_t rational_rank(const std::vector<IntVec>& rows) {
    if (rows.empty()) return 0;
    ZMatrix m;
    m.reserve(rows.size());
    for (const auto& r : rows) m.push_back(to_zvec(r));
    return hnf_core(m, m[0].size());
}

// ---------------------------------------------------------------------------
// Integer diagonalization and linear solving
// ---------------------------------------------------------------------------

namespace {

ZMatrix identity(std::size_t n) {
    ZMatrix out(n, ZVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
    return out;
}

void col_subtract(ZMatrix& m, std::size_t target, std::size_t source, const Int& q) {
    if (q == 0) return;
    for (auto& row : m) row[target] -= q * row[source];
}

void col_swap(ZMatrix& m, std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}

}  // namespace

Diagonalization diagonalize(ZMatrix a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    Diagonalization d{std::move(a), identity(rows), identity(cols), 0};
    auto& m = d.a;
    const std::size_t steps = std::min(rows, cols);
    for (std::size_t t = 0; t < steps; ++t) {
        // Move a minimal nonzero entry of the trailing block to (t, t).
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (pi == rows || abs_cmp(m[i][j], m[pi][pj]) < 0)) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        std::swap(m[t], m[pi]);
        std::swap(d.p[t], d.p[pi]);
        if (pj != t) {
            col_swap(m, t, pj);
            col_swap(d.q, t, pj);
        }
        while (true) {
            bool retry = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
                row_subtract(m, i, t, q);
                row_subtract(d.p, i, t, q);
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]);
                    std::swap(d.p[t], d.p[i]);
                    retry = true;
                }
            }
            if (retry) continue;
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
                col_subtract(m, j, t, q);
                col_subtract(d.q, j, t, q);
                if (m[t][j] != 0) {
                    col_swap(m, t, j);
                    col_swap(d.q, t, j);
                    retry = true;
                }
            }
            if (!retry) break;
        }
        ++d.rank;
    }
    return d;
}

ZVec solve_integer_combination(const std::vector<IntVec>& generators, const IntVec& target) {
    const std::size_t n = generators.size();
    const std::size_t s = target.size();
    ZMatrix a(s, ZVec(n, Int(0)));
    for (std::size_t j = 0; j < n; ++j) {
        if (generators[j].size() != s)
            fail(ErrorCode::DimensionMismatch, "generator length does not match target");
        for (std::size_t i = 0; i < s; ++i) a[i][j] = Int(static_cast<long>(generators[j][i]));
    }
    Diagonalization d = diagonalize(std::move(a));
    ZVec rhs(s, Int(0));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) rhs[i] += d.p[i][j] * Int(static_cast<long>(target[j]));
    ZVec beta(n, Int(0));
    for (std::size_t i = 0; i < s; ++i) {
        if (i < d.rank) {
            Int q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), rhs[i].get_mpz_t(),
                        d.a[i][i].get_mpz_t());
            if (rem != 0)
                fail(ErrorCode::NotInLattice,
                     "target is not an integer combination of the generators");
            beta[i] = q;
        } else if (rhs[i] != 0) {
            fail(ErrorCode::NotInLattice,
                 "target is not an integer combination of the generators");
        }
    }
    ZVec alpha(n, Int(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) alpha[i] += d.q[i][j] * beta[j];
    return alpha;
}

// ---------------------------------------------------------------------------
// Constraint systems
// ---------------------------------------------------------------------------

std::string MonomialConstraint::render() const {
    std::string lhs, rhs;
    const auto append = [](std::string& side, const std::string& label, std::int64_t e) {
        if (!side.empty()) side += " ";
        side += label;
        if (e > 1) side += "^" + std::to_string(e);
    };
    for (const auto& [label, e] : exponents) {
        if (e > 0)
            append(lhs, label, e);
        else if (e < 0)
            append(rhs, label, -e);
    }
    if (lhs.empty()) lhs = "1";
    if (rhs.empty()) rhs = "1";
    return lhs + " = " + rhs;
}

Rat evaluate_monomial(const std::map<std::string, std::int64_t>& exponents,
                      const std::map<std::string, Rat>& rates) {
    Rat out(1);
    for (const auto& [label, e] : exponents) {
        auto it = rates.find(label);
        if (it == rates.end()) fail(ErrorCode::IncompleteRates, "no value for rate " + label);
        out *= rat_pow(it->second, e);
    }
    return out;
}

ConstraintSystem::ConstraintSystem(std::vector<std::string> label_order,
                                   std::vector<MonomialConstraint> generators)
    : label_order_(std::move(label_order)), generators_(std::move(generators)) {
    basis_ = basis_in_order(label_order_);
}

ZMatrix ConstraintSystem::basis_in_order(const std::vector<std::string>& order) const {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
    ZMatrix rows;
    const auto add_row = [&](const std::map<std::string, std::int64_t>& exponents) {
        ZVec row(order.size(), Int(0));
        for (const auto& [label, e] : exponents) {
            auto it = index.find(label);
            if (it == index.end())
                fail(ErrorCode::UnknownLabel, "constraint uses unknown rate label " + label);
            row[it->second] = static_cast<long>(e);
        }
        rows.push_back(std::move(row));
    };
    if (!basis_.empty() && order != label_order_) {
        // Re-express the already-canonical basis instead of the raw generators.
        for (const auto& row : basis_) {
            std::map<std::string, std::int64_t> exps;
            for (std::size_t j = 0; j < row.size(); ++j)
                if (row[j] != 0) exps[label_order_[j]] = row[j].get_si();
            add_row(exps);
        }
    } else {
        for (const auto& g : generators_) add_row(g.exponents);
    }
    return hnf_rows(std::move(rows));
}

bool ConstraintSystem::holds(const std::map<std::string, Rat>& rates) const {
    for (const auto& row : basis_) {
        std::map<std::string, std::int64_t> exps;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) exps[label_order_[j]] = row[j].get_si();
        if (evaluate_monomial(exps, rates) != 1) return false;
    }
    return true;
}

namespace {
std::vector<std::string> merged_order(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
    std::set<std::string> all(a.begin(), a.end());
    all.insert(b.begin(), b.end());
    return {all.begin(), all.end()};
}
}  // namespace

bool ConstraintSystem::equals(const ConstraintSystem& other) const {
    if (label_order_ == other.label_order_) return basis_ == other.basis_;
    const auto order = merged_order(label_order_, other.label_order_);
    return basis_in_order(order) == other.basis_in_order(order);
}

bool ConstraintSystem::contains(const ConstraintSystem& other) const {
    const auto order = merged_order(label_order_, other.label_order_);
    const ZMatrix mine = basis_in_order(order);
    for (const auto& row : other.basis_in_order(order))
        if (!lattice_contains(mine, row)) return false;
    return true;
}

}  // namespace crnbal
