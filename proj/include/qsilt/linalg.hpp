#pragma once

#include "qsilt/fp.hpp"

#include <vector>

namespace qsilt {

// Exact dense linear algebra over F_p.  Lists of vectors are matrices with
// one vector per row.  Pivot search is leftmost-column, topmost-row, which
// keeps every result deterministic.

struct RrefResult {
    FpMatrix mat;
    Eigen::Index rank = 0;
    std::vector<Eigen::Index> pivots;  // pivot column per row, ascending
};

template <class Derived>
RrefResult rref(const Eigen::MatrixBase<Derived>& input) {
    RrefResult res;
    res.mat = input;
    FpMatrix& m = res.mat;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = r; i < rows; ++i) {
            if (!m(i, c).isZero()) {
                piv = i;
                break;
            }
        }
        if (piv < 0)
            continue;
        if (piv != r)
            m.row(piv).swap(m.row(r));
        Fp s = m(r, c).inv();
        for (Eigen::Index j = c; j < cols; ++j)
            m(r, j) = m(r, j) * s;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || m(i, c).isZero())
                continue;
            Fp f = m(i, c);
            for (Eigen::Index j = c; j < cols; ++j)
                m(i, j) = m(i, j) - f * m(r, j);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

template <class Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
    return rref(m).rank;
}

/// Row basis (rref rows) of the span of the input rows.
template <class Derived>
FpMatrix rowBasis(const Eigen::MatrixBase<Derived>& m) {
    RrefResult r = rref(m);
    return r.mat.topRows(r.rank);
}

/// Basis of the kernel {x : M x = 0}, one vector per row.
template <class Derived>
FpMatrix nullspaceBasis(const Eigen::MatrixBase<Derived>& input, uint64_t p) {
    RrefResult r = rref(input);
    const Eigen::Index cols = input.cols();
    std::vector<bool> isPivot(static_cast<size_t>(cols), false);
    for (Eigen::Index c : r.pivots)
        isPivot[static_cast<size_t>(c)] = true;
    FpMatrix ker = fpZeros(cols - r.rank, cols, p);
    Eigen::Index row = 0;
    for (Eigen::Index freeCol = 0; freeCol < cols; ++freeCol) {
        if (isPivot[static_cast<size_t>(freeCol)])
            continue;
        ker(row, freeCol) = Fp::raw(1, p);
        for (Eigen::Index i = 0; i < r.rank; ++i)
            ker(row, r.pivots[static_cast<size_t>(i)]) = -r.mat(i, freeCol);
        ++row;
    }
    return ker;
}

struct SolveResult {
    bool consistent = false;
    FpVector x;        // one solution, free coordinates set to 0
    FpMatrix kernel;   // rows span the nullspace of M
};

/// Solve M x = b exactly; reports inconsistency and the full solution set.
inline SolveResult solveLinear(const FpMatrix& M, const FpVector& b, uint64_t p) {
    SolveResult out;
    FpMatrix aug = fpZeros(M.rows(), M.cols() + 1, p);
    if (M.cols() > 0)
        aug.leftCols(M.cols()) = M;
    aug.col(M.cols()) = b;
    RrefResult r = rref(aug);
    out.x = fpZeroVec(M.cols(), p);
    for (Eigen::Index i = 0; i < r.rank; ++i) {
        if (r.pivots[static_cast<size_t>(i)] == M.cols())
            return out;  // pivot in the augmented column: inconsistent
        out.x(r.pivots[static_cast<size_t>(i)]) = r.mat(i, M.cols());
    }
    out.consistent = true;
    out.kernel = nullspaceBasis(M, p);
    return out;
}

/// Reusable solver for "express v in the row span of B": factorizes once,
/// then each query is a rank-1 sweep.
class RowSpanSolver {
public:
    RowSpanSolver() = default;
    RowSpanSolver(const FpMatrix& basisRows, uint64_t p) : p_(p), n_(basisRows.cols()) {
        // rref of [B | I] records the row operations: mat = [R | T] with R = T B.
        const Eigen::Index k = basisRows.rows();
        FpMatrix aug = fpZeros(k, n_ + k, p);
        if (n_ > 0)
            aug.leftCols(n_) = basisRows;
        for (Eigen::Index i = 0; i < k; ++i)
            aug(i, n_ + i) = Fp::raw(1, p);
        RrefResult full = rref(aug);
        rrefRows_ = full.mat;
        rank_ = 0;
        pivots_.clear();
        for (Eigen::Index i = 0; i < k; ++i) {
            Eigen::Index c = -1;
            for (Eigen::Index j = 0; j < n_; ++j) {
                if (!rrefRows_(i, j).isZero()) {
                    c = j;
                    break;
                }
            }
            if (c < 0)
                break;
            pivots_.push_back(c);
            ++rank_;
        }
    }

    Eigen::Index rank() const { return rank_; }

    /// Coordinates c with c^T B = v if v lies in the span; empty otherwise.
    bool reduce(const FpVector& v, FpVector* coords = nullptr) const {
        FpVector w = v;
        FpVector c = fpZeroVec(rrefRows_.rows(), p_);
        for (Eigen::Index i = 0; i < rank_; ++i) {
            Fp f = w(pivots_[static_cast<size_t>(i)]);
            if (f.isZero())
                continue;
            for (Eigen::Index j = 0; j < n_; ++j)
                w(j) = w(j) - f * rrefRows_(i, j);
            for (Eigen::Index j = 0; j < rrefRows_.rows(); ++j)
                c(j) = c(j) + f * rrefRows_(i, n_ + j);
        }
        for (Eigen::Index j = 0; j < n_; ++j)
            if (!w(j).isZero())
                return false;
        if (coords)
            *coords = c;
        return true;
    }

private:
    uint64_t p_ = 0;
    Eigen::Index n_ = 0;
    Eigen::Index rank_ = 0;
    std::vector<Eigen::Index> pivots_;
    FpMatrix rrefRows_;  // [R | T] with R = rref(B), R = T B
};

/// Coset-representative basis: rows extending a basis of `subspace` to one of
/// `span`.  Throws if `subspace` is not contained in `span`.
inline FpMatrix quotientBasis(const FpMatrix& span, const FpMatrix& subspace, uint64_t p) {
    const Eigen::Index n = span.cols();
    FpMatrix stacked = fpZeros(span.rows() + subspace.rows(), n, p);
    if (span.rows() > 0)
        stacked.topRows(span.rows()) = span;
    if (subspace.rows() > 0)
        stacked.bottomRows(subspace.rows()) = subspace;
    Eigen::Index rs = rank(span);
    if (rank(stacked) != rs)
        throw ComputationError("quotient_basis: not a subspace");

    // grow from the subspace, keeping span rows that increase the rank
    FpMatrix subBasis = rowBasis(subspace);
    Eigen::Index have = subBasis.rows();
    std::vector<Eigen::Index> chosen;
    FpMatrix acc = subBasis;
    for (Eigen::Index i = 0; i < span.rows() && have + static_cast<Eigen::Index>(chosen.size()) < rs; ++i) {
        FpMatrix trial = fpZeros(acc.rows() + 1, n, p);
        if (acc.rows() > 0)
            trial.topRows(acc.rows()) = acc;
        trial.row(acc.rows()) = span.row(i);
        if (rank(trial) > acc.rows()) {
            chosen.push_back(i);
            acc = trial;
        }
    }
    FpMatrix reps = fpZeros(static_cast<Eigen::Index>(chosen.size()), n, p);
    for (size_t k = 0; k < chosen.size(); ++k)
        reps.row(static_cast<Eigen::Index>(k)) = span.row(chosen[k]);
    return reps;
}

/// True if v lies in the row span of rowsBasis.
inline bool inRowSpan(const FpMatrix& rows, const FpVector& v, uint64_t p) {
    FpMatrix stacked = fpZeros(rows.rows() + 1, rows.cols(), p);
    if (rows.rows() > 0)
        stacked.topRows(rows.rows()) = rows;
    stacked.row(rows.rows()) = v.transpose();
    return rank(stacked) == rank(rows);
}

/// Inverse of a square matrix; throws if singular.
inline FpMatrix inverse(const FpMatrix& M, uint64_t p) {
    const Eigen::Index n = M.rows();
    FpMatrix aug = fpZeros(n, 2 * n, p);
    aug.leftCols(n) = M;
    aug.rightCols(n) = fpIdentity(n, p);
    RrefResult r = rref(aug);
    if (r.rank < n || r.pivots[static_cast<size_t>(n - 1)] >= n)
        throw ComputationError("inverse: singular matrix");
    return r.mat.rightCols(n);
}

inline bool isInvertible(const FpMatrix& M) {
    return M.rows() == M.cols() && rank(M) == M.rows();
}

}  // namespace qsilt
