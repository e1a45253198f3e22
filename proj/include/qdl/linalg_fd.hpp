#pragma once

// Small dense linear algebra over F_d: row reduction, rank, nullspace.
// Matrices are row-major vectors of int rows; dimensions stay tiny
// (at most 6x6), so no attention is paid to asymptotics.

#include "qdl/gf.hpp"

#include <vector>

namespace qdl {

using FdMatrix = std::vector<std::vector<int>>;

// In-place reduced row echelon form; returns the rank.
inline int rref(FdMatrix& m, const PrimeField& F) {
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        const int piv_inv = F.inv(m[rank][c]);
        for (int j = 0; j < cols; ++j) m[rank][j] = F.mul(m[rank][j], piv_inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            const int factor = m[r][c];
            for (int j = 0; j < cols; ++j)
                m[r][j] = F.sub(m[r][j], F.mul(factor, m[rank][j]));
        }
        ++rank;
    }
    m.resize(rank > 0 ? rank : 1);
    if (rank == 0) m[0].assign(cols, 0);
    return rank;
}

inline int rank_fd(FdMatrix m, const PrimeField& F) { return rref(m, F); }

// Basis of the right nullspace {x : M x = 0}, one vector per column without
// a pivot in the RREF.
inline FdMatrix nullspace(FdMatrix m, const PrimeField& F) {
    if (m.empty()) return {};
    const int cols = static_cast<int>(m[0].size());
    const int rank = rref(m, F);
    std::vector<int> pivot_col(rank, -1);
    std::vector<bool> is_pivot(cols, false);
    for (int r = 0; r < rank; ++r) {
        for (int c = 0; c < cols; ++c)
            if (m[r][c] != 0) { pivot_col[r] = c; is_pivot[c] = true; break; }
    }
    FdMatrix basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<int> x(cols, 0);
        x[c] = 1;
        for (int r = 0; r < rank; ++r)
            x[pivot_col[r]] = F.neg(m[r][c]);
        basis.push_back(std::move(x));
    }
    return basis;
}

inline std::vector<int> mat_vec(const FdMatrix& m, const std::vector<int>& x, const PrimeField& F) {
    std::vector<int> y(m.size(), 0);
    for (std::size_t r = 0; r < m.size(); ++r) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < x.size(); ++c) acc += static_cast<std::int64_t>(m[r][c]) * x[c];
        y[r] = F.reduce(acc);
    }
    return y;
}

} // namespace qdl
