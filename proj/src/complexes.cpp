#include "qsilt/complexes.hpp"

#include "qsilt/sca.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace qsilt {

const std::vector<int>& ProjComplex::compsAt(int deg) const {
    static const std::vector<int> none;
    if (!hasDeg(deg))
        return none;
    return comps[static_cast<size_t>(deg - minDeg)];
}

void ProjComplex::checkDsquared() const {
    for (size_t k = 0; k + 1 < diffs.size(); ++k) {
        const ElemMatrix& d1 = diffs[k];
        const ElemMatrix& d2 = diffs[k + 1];
        for (Eigen::Index r = 0; r < d2.rows; ++r) {
            for (Eigen::Index c = 0; c < d1.cols; ++c) {
                FpVector acc = A->zeroVec();
                for (Eigen::Index m = 0; m < d1.rows; ++m)
                    acc += A->multiply(d2.at(r, m), d1.at(m, c));
                for (Eigen::Index t = 0; t < acc.size(); ++t)
                    if (!acc(t).isZero())
                        throw ComputationError("complex: differential does not square to zero");
            }
        }
    }
}

void ProjComplex::trim() {
    while (!comps.empty() && comps.front().empty()) {
        comps.erase(comps.begin());
        if (!diffs.empty())
            diffs.erase(diffs.begin());
        ++minDeg;
    }
    while (!comps.empty() && comps.back().empty()) {
        comps.pop_back();
        if (!diffs.empty())
            diffs.pop_back();
    }
    if (comps.empty()) {
        minDeg = 0;
        diffs.clear();
    }
}

const ElemMatrix* ChainMap::matAt(int deg) const {
    if (!X || deg < X->minDeg || deg > X->maxDeg())
        return nullptr;
    return &mats[static_cast<size_t>(deg - X->minDeg)];
}

ProjComplex stalkComplex(const BoundQuiverAlgebra& A, int vertex, int degree) {
    ProjComplex X;
    X.A = &A;
    X.minDeg = degree;
    X.comps = {{vertex}};
    return X;
}

ProjComplex shiftComplex(const ProjComplex& X, int k) {
    ProjComplex Y = X;
    if (Y.empty())
        return Y;
    Y.minDeg -= k;
    if (k % 2 != 0) {
        for (auto& d : Y.diffs)
            for (auto& e : d.entries)
                e = -e;
    }
    return Y;
}

ProjComplex directSum(const ProjComplex& X, const ProjComplex& Y) {
    if (X.empty())
        return Y;
    if (Y.empty())
        return X;
    ProjComplex Z;
    Z.A = X.A;
    Z.minDeg = std::min(X.minDeg, Y.minDeg);
    int hi = std::max(X.maxDeg(), Y.maxDeg());
    for (int d = Z.minDeg; d <= hi; ++d) {
        std::vector<int> cs = X.compsAt(d);
        const auto& ys = Y.compsAt(d);
        cs.insert(cs.end(), ys.begin(), ys.end());
        Z.comps.push_back(std::move(cs));
    }
    for (int d = Z.minDeg; d < hi; ++d) {
        Eigen::Index rows = static_cast<Eigen::Index>(Z.compsAt(d + 1).size());
        Eigen::Index cols = static_cast<Eigen::Index>(Z.compsAt(d).size());
        ElemMatrix m(rows, cols, *Z.A);
        Eigen::Index xr = static_cast<Eigen::Index>(X.compsAt(d + 1).size());
        Eigen::Index xc = static_cast<Eigen::Index>(X.compsAt(d).size());
        if (X.hasDeg(d) && X.hasDeg(d + 1)) {
            const ElemMatrix& dx = X.diffs[static_cast<size_t>(d - X.minDeg)];
            for (Eigen::Index r = 0; r < dx.rows; ++r)
                for (Eigen::Index c = 0; c < dx.cols; ++c)
                    m.at(r, c) = dx.at(r, c);
        }
        if (Y.hasDeg(d) && Y.hasDeg(d + 1)) {
            const ElemMatrix& dy = Y.diffs[static_cast<size_t>(d - Y.minDeg)];
            for (Eigen::Index r = 0; r < dy.rows; ++r)
                for (Eigen::Index c = 0; c < dy.cols; ++c)
                    m.at(xr + r, xc + c) = dy.at(r, c);
        }
        Z.diffs.push_back(std::move(m));
    }
    return Z;
}

ProjComplex conePlain(const ChainMap& f) {
    const ProjComplex& X = *f.X;
    const ProjComplex& Y = *f.Y;
    const BoundQuiverAlgebra& A = *(X.A ? X.A : Y.A);
    if (X.empty())
        return Y;
    ProjComplex C;
    C.A = &A;
    // C_d = Y_d + X_{d+1}, d(y,x) = (dY y + f x, -dX x)
    int lo = Y.empty() ? X.minDeg - 1 : std::min(Y.minDeg, X.minDeg - 1);
    int hi = Y.empty() ? X.maxDeg() - 1 : std::max(Y.maxDeg(), X.maxDeg() - 1);
    C.minDeg = lo;
    for (int d = lo; d <= hi; ++d) {
        std::vector<int> cs = Y.compsAt(d);
        const auto& xs = X.compsAt(d + 1);
        cs.insert(cs.end(), xs.begin(), xs.end());
        C.comps.push_back(std::move(cs));
    }
    for (int d = lo; d < hi; ++d) {
        Eigen::Index rows = static_cast<Eigen::Index>(C.compsAt(d + 1).size());
        Eigen::Index cols = static_cast<Eigen::Index>(C.compsAt(d).size());
        ElemMatrix m(rows, cols, A);
        Eigen::Index yr = static_cast<Eigen::Index>(Y.compsAt(d + 1).size());
        Eigen::Index yc = static_cast<Eigen::Index>(Y.compsAt(d).size());
        if (Y.hasDeg(d) && Y.hasDeg(d + 1)) {
            const ElemMatrix& dy = Y.diffs[static_cast<size_t>(d - Y.minDeg)];
            for (Eigen::Index r = 0; r < dy.rows; ++r)
                for (Eigen::Index c = 0; c < dy.cols; ++c)
                    m.at(r, c) = dy.at(r, c);
        }
        if (X.hasDeg(d + 1)) {
            const ElemMatrix* fm = f.matAt(d + 1);
            if (fm && Y.hasDeg(d + 1)) {
                for (Eigen::Index r = 0; r < fm->rows; ++r)
                    for (Eigen::Index c = 0; c < fm->cols; ++c)
                        m.at(r, yc + c) = fm->at(r, c);
            }
            if (X.hasDeg(d + 2)) {
                const ElemMatrix& dx = X.diffs[static_cast<size_t>(d + 1 - X.minDeg)];
                for (Eigen::Index r = 0; r < dx.rows; ++r)
                    for (Eigen::Index c = 0; c < dx.cols; ++c)
                        m.at(yr + r, yc + c) = -dx.at(r, c);
            }
        }
        C.diffs.push_back(std::move(m));
    }
    return C;
}

bool entryIsUnit(const BoundQuiverAlgebra& A, const FpVector& z, int i, int j) {
    if (i != j)
        return false;
    return !z(A.vertexBasisIndex(i)).isZero();
}

namespace {

/// Inverse of a unit z in the corner e_i A e_i.
FpVector cornerInverse(const BoundQuiverAlgebra& A, const FpVector& z, int i) {
    FpMatrix lm = A.leftMultOnPair(z, i, i, i);
    FpVector rhs = A.restrictToPair(A.basisVec(A.vertexBasisIndex(i)), i, i);
    SolveResult s = solveLinear(lm, rhs, A.p);
    if (!s.consistent)
        throw ComputationError("minimize: corner element is not a unit");
    return A.expandFromPair(s.x, i, i);
}

void eraseRow(ElemMatrix& m, Eigen::Index r) {
    m.entries.erase(m.entries.begin() + static_cast<std::ptrdiff_t>(r * m.cols),
                    m.entries.begin() + static_cast<std::ptrdiff_t>((r + 1) * m.cols));
    --m.rows;
}

void eraseCol(ElemMatrix& m, Eigen::Index c) {
    ElemMatrix out;
    out.rows = m.rows;
    out.cols = m.cols - 1;
    out.entries.reserve(static_cast<size_t>(out.rows * out.cols));
    for (Eigen::Index r = 0; r < m.rows; ++r)
        for (Eigen::Index j = 0; j < m.cols; ++j)
            if (j != c)
                out.entries.push_back(std::move(m.entries[static_cast<size_t>(r * m.cols + j)]));
    m = std::move(out);
}

}  // namespace

ProjComplex minimize(ProjComplex X) {
    if (X.empty())
        return X;
    const BoundQuiverAlgebra& A = *X.A;
    bool found = true;
    while (found) {
        found = false;
        for (size_t k = 0; k < X.diffs.size() && !found; ++k) {
            ElemMatrix& D = X.diffs[k];
            for (Eigen::Index r = 0; r < D.rows && !found; ++r) {
                for (Eigen::Index c = 0; c < D.cols && !found; ++c) {
                    int i = X.comps[k][static_cast<size_t>(c)];
                    int j = X.comps[k + 1][static_cast<size_t>(r)];
                    if (!entryIsUnit(A, D.at(r, c), i, j))
                        continue;
                    found = true;
                    FpVector zinv = cornerInverse(A, D.at(r, c), i);
                    for (Eigen::Index r2 = 0; r2 < D.rows; ++r2) {
                        if (r2 == r)
                            continue;
                        FpVector left = A.multiply(D.at(r2, c), zinv);
                        for (Eigen::Index c2 = 0; c2 < D.cols; ++c2) {
                            if (c2 == c)
                                continue;
                            D.at(r2, c2) -= A.multiply(left, D.at(r, c2));
                        }
                    }
                    eraseRow(D, r);
                    eraseCol(D, c);
                    X.comps[k + 1].erase(X.comps[k + 1].begin() + static_cast<std::ptrdiff_t>(r));
                    X.comps[k].erase(X.comps[k].begin() + static_cast<std::ptrdiff_t>(c));
                    if (k > 0)
                        eraseRow(X.diffs[k - 1], c);
                    if (k + 1 < X.diffs.size())
                        eraseCol(X.diffs[k + 1], r);
                }
            }
        }
    }
    X.trim();
    return X;
}

ProjComplex cone(const ChainMap& f) { return minimize(conePlain(f)); }

ProjComplex applyAutomorphismToComplex(const ProjComplex& X, const AlgebraAutomorphism& aut) {
    ProjComplex Y = X;
    for (auto& level : Y.comps)
        for (auto& v : level)
            v = aut.vertexPerm[static_cast<size_t>(v)];
    for (auto& d : Y.diffs)
        for (auto& e : d.entries)
            e = aut.matrix * e;
    return Y;
}

ProjComplex applyNu(const ProjComplex& X, const NakayamaData& nd) {
    return applyAutomorphismToComplex(X, nd.nu);
}

std::vector<long long> gVector(const ProjComplex& X) {
    if (!X.A)
        return {};
    std::vector<long long> g(static_cast<size_t>(X.A->vertexCount()), 0);
    for (size_t k = 0; k < X.comps.size(); ++k) {
        int deg = X.minDeg + static_cast<int>(k);
        long long sign = (deg % 2 == 0) ? 1 : -1;
        for (int v : X.comps[k])
            g[static_cast<size_t>(v)] += sign;
    }
    return g;
}

std::string gVectorKey(const std::vector<long long>& g) {
    std::ostringstream os;
    for (size_t i = 0; i < g.size(); ++i) {
        if (i)
            os << ",";
        os << g[i];
    }
    return os.str();
}

ChainMap composeMaps(const ChainMap& f, const ChainMap& g) {
    // f after g: g : A -> B, f : B -> C
    const ProjComplex& Adom = *g.X;
    const ProjComplex& C = *f.Y;
    const BoundQuiverAlgebra& alg = *Adom.A;
    ChainMap h;
    h.X = g.X;
    h.Y = f.Y;
    for (int d = Adom.minDeg; d <= Adom.maxDeg(); ++d) {
        Eigen::Index rows = static_cast<Eigen::Index>(C.compsAt(d).size());
        Eigen::Index cols = static_cast<Eigen::Index>(Adom.compsAt(d).size());
        ElemMatrix m(rows, cols, alg);
        const ElemMatrix* gm = g.matAt(d);
        const ElemMatrix* fm = f.matAt(d);
        if (gm && fm && fm->cols == gm->rows) {
            for (Eigen::Index r = 0; r < rows; ++r)
                for (Eigen::Index c = 0; c < cols; ++c) {
                    FpVector acc = alg.zeroVec();
                    for (Eigen::Index k = 0; k < gm->rows; ++k)
                        acc += alg.multiply(fm->at(r, k), gm->at(k, c));
                    m.at(r, c) = acc;
                }
        }
        h.mats.push_back(std::move(m));
    }
    return h;
}

ChainMap identityMap(const ProjComplex& X) {
    ChainMap f;
    f.X = &X;
    f.Y = &X;
    const BoundQuiverAlgebra& A = *X.A;
    for (int d = X.minDeg; d <= X.maxDeg(); ++d) {
        Eigen::Index n = static_cast<Eigen::Index>(X.compsAt(d).size());
        ElemMatrix m(n, n, A);
        for (Eigen::Index k = 0; k < n; ++k)
            m.at(k, k) = A.basisVec(A.vertexBasisIndex(X.compsAt(d)[static_cast<size_t>(k)]));
        f.mats.push_back(std::move(m));
    }
    return f;
}

// ---- HomSpace ----------------------------------------------------------

namespace {

struct UnknownLayout {
    struct Block {
        int deg;
        Eigen::Index row, col;
        int pairSource, pairTarget;
        Eigen::Index offset, len;
    };
    std::vector<Block> blocks;
    std::map<std::tuple<int, Eigen::Index, Eigen::Index>, size_t> lookup;
    Eigen::Index total = 0;

    void add(int deg, Eigen::Index r, Eigen::Index c, int ps, int pt, Eigen::Index len) {
        if (len == 0)
            return;
        lookup[{deg, r, c}] = blocks.size();
        blocks.push_back({deg, r, c, ps, pt, total, len});
        total += len;
    }
    const Block* find(int deg, Eigen::Index r, Eigen::Index c) const {
        auto it = lookup.find({deg, r, c});
        return it == lookup.end() ? nullptr : &blocks[it->second];
    }
};

/// Layout for degreewise maps X_d -> Y_{d+degShift}.
UnknownLayout mapLayout(const BoundQuiverAlgebra& A, const ProjComplex& X, const ProjComplex& Y,
                        int degShift) {
    UnknownLayout L;
    for (int d = X.minDeg; d <= X.maxDeg(); ++d) {
        if (!Y.hasDeg(d + degShift))
            continue;
        const auto& xs = X.compsAt(d);
        const auto& ys = Y.compsAt(d + degShift);
        for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(ys.size()); ++r) {
            for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(xs.size()); ++c) {
                int i = xs[static_cast<size_t>(c)];
                int j = ys[static_cast<size_t>(r)];
                // morphism P(i) -> P(j) = a path j -> i
                L.add(d, r, c,
                      j, i,
                      static_cast<Eigen::Index>(A.pathBasis(j, i).size()));
            }
        }
    }
    return L;
}

/// Rows of the linear operator taking an `in`-layout map H to the
/// `out`-layout map d_Y H + sign * H d_X  (degreewise output at outShift).
FpMatrix mapOperator(const BoundQuiverAlgebra& A, const ProjComplex& X, const ProjComplex& Y,
                     const UnknownLayout& in, int inShift, const UnknownLayout& out, int outShift,
                     bool includeLeft, bool includeRight, const Fp& rightSign) {
    FpMatrix op = fpZeros(out.total, in.total, A.p);
    (void)outShift;
    for (const auto& ob : out.blocks) {
        int d = ob.deg;
        // left part: sum_r dY(t, r) * H_d(r, c), with H_d landing at d+inShift
        if (includeLeft && Y.hasDeg(d + inShift) && Y.hasDeg(d + inShift + 1)) {
            const ElemMatrix& dy = Y.diffs[static_cast<size_t>(d + inShift - Y.minDeg)];
            const auto& mids = Y.compsAt(d + inShift);
            for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(mids.size()); ++r) {
                const auto* ib = in.find(d, r, ob.col);
                if (!ib)
                    continue;
                const FpVector& z = dy.at(ob.row, r);
                FpMatrix lm = A.leftMultOnPair(z, ob.pairSource, ib->pairSource, ib->pairTarget);
                for (Eigen::Index rr = 0; rr < lm.rows(); ++rr)
                    for (Eigen::Index cc = 0; cc < lm.cols(); ++cc)
                        op(ob.offset + rr, ib->offset + cc) += lm(rr, cc);
            }
        }
        // right part: sign * sum_b H_{d+1}(t, b) * dX_d(b, c)
        if (includeRight && X.hasDeg(d + 1)) {
            const ElemMatrix& dx = X.diffs[static_cast<size_t>(d - X.minDeg)];
            const auto& mids = X.compsAt(d + 1);
            for (Eigen::Index b = 0; b < static_cast<Eigen::Index>(mids.size()); ++b) {
                const auto* ib = in.find(d + 1, ob.row, b);
                if (!ib)
                    continue;
                const FpVector& w = dx.at(b, ob.col);
                FpMatrix rm = A.rightMultOnPair(w, ib->pairSource, ib->pairTarget, ob.pairTarget);
                for (Eigen::Index rr = 0; rr < rm.rows(); ++rr)
                    for (Eigen::Index cc = 0; cc < rm.cols(); ++cc)
                        op(ob.offset + rr, ib->offset + cc) += rightSign * rm(rr, cc);
            }
        }
    }
    return op;
}

}  // namespace

HomSpace::HomSpace(const ProjComplex& X, const ProjComplex& Y, int shift) {
    X_ = &X;
    Yk_ = std::make_shared<ProjComplex>(shiftComplex(Y, shift));
    const BoundQuiverAlgebra& A = *(X.A ? X.A : Y.A);
    p_ = A.p;

    UnknownLayout unknowns = mapLayout(A, X, *Yk_, 0);
    total_ = unknowns.total;
    for (const auto& b : unknowns.blocks)
        blocks_.push_back({b.deg - X.minDeg, b.row, b.col, b.pairSource, b.pairTarget, b.offset,
                           b.len});

    if (total_ == 0) {
        cycles_ = fpZeros(0, 0, p_);
        boundary_ = fpZeros(0, 0, p_);
        repRows_ = fpZeros(0, 0, p_);
        dim_ = 0;
        return;
    }

    // commuting equations: dYk H - H dX = 0, landing one degree up
    UnknownLayout eqs = mapLayout(A, X, *Yk_, 1);
    FpMatrix eqOp = mapOperator(A, X, *Yk_, unknowns, 0, eqs, 1, true, true, -Fp::raw(1, p_));
    cycles_ = eqs.total == 0 ? fpIdentity(total_, p_) : nullspaceBasis(eqOp, p_);

    // null-homotopic subspace: image of h -> dYk h + h dX
    UnknownLayout hs = mapLayout(A, X, *Yk_, -1);
    if (hs.total == 0) {
        boundary_ = fpZeros(0, total_, p_);
    } else {
        FpMatrix bOp = mapOperator(A, X, *Yk_, hs, -1, unknowns, 0, true, true, Fp::raw(1, p_));
        boundary_ = rowBasis(bOp.transpose());
    }

    repRows_ = quotientBasis(cycles_, boundary_, p_);
    dim_ = repRows_.rows();
    FpMatrix full = fpZeros(dim_ + boundary_.rows(), total_, p_);
    if (dim_ > 0)
        full.topRows(dim_) = repRows_;
    if (boundary_.rows() > 0)
        full.bottomRows(boundary_.rows()) = boundary_;
    reducer_ = RowSpanSolver(full, p_);
}

ChainMap HomSpace::rep(Eigen::Index k) const { return fromCoords(repRows_.row(k).transpose()); }

ChainMap HomSpace::fromCoords(const FpVector& coords) const {
    const BoundQuiverAlgebra& A = *X_->A;
    ChainMap f;
    f.X = X_;
    f.Y = Yk_.get();
    for (int d = X_->minDeg; d <= X_->maxDeg(); ++d) {
        Eigen::Index rows = static_cast<Eigen::Index>(Yk_->compsAt(d).size());
        Eigen::Index cols = static_cast<Eigen::Index>(X_->compsAt(d).size());
        f.mats.emplace_back(rows, cols, A);
    }
    for (const auto& b : blocks_) {
        ElemMatrix& m = f.mats[static_cast<size_t>(b.degOffset)];
        FpVector local = fpZeroVec(b.len, p_);
        for (Eigen::Index t = 0; t < b.len; ++t)
            local(t) = coords(b.offset + t);
        m.at(b.row, b.col) = A.expandFromPair(local, b.pairSource, b.pairTarget);
    }
    return f;
}

FpVector HomSpace::coordsOf(const ChainMap& f) const {
    const BoundQuiverAlgebra& A = *X_->A;
    FpVector coords = fpZeroVec(total_, p_);
    for (const auto& b : blocks_) {
        const ElemMatrix* m = &f.mats[static_cast<size_t>(b.degOffset)];
        FpVector local = A.restrictToPair(m->at(b.row, b.col), b.pairSource, b.pairTarget);
        for (Eigen::Index t = 0; t < b.len; ++t)
            coords(b.offset + t) = local(t);
    }
    return coords;
}

FpVector HomSpace::classOfCoords(const FpVector& coords) const {
    FpVector c;
    if (!reducer_.reduce(coords, &c))
        throw ComputationError("hom_space: vector is not a chain map class");
    FpVector cls = fpZeroVec(dim_, p_);
    for (Eigen::Index k = 0; k < dim_; ++k)
        cls(k) = c(k);
    return cls;
}

FpVector HomSpace::classOf(const ChainMap& f) const { return classOfCoords(coordsOf(f)); }

ChainMap HomSpace::fromClass(const FpVector& cls) const {
    FpVector coords = fpZeroVec(total_, p_);
    for (Eigen::Index k = 0; k < dim_; ++k)
        if (!cls(k).isZero())
            coords += cls(k) * FpVector(repRows_.row(k).transpose());
    return fromCoords(coords);
}

ChainMap HomSpace::randomMap(std::mt19937_64& rng) const {
    FpVector coords = fpZeroVec(total_, p_);
    for (Eigen::Index k = 0; k < dim_; ++k)
        coords += Fp::raw(1 + rng() % (p_ - 1), p_) * FpVector(repRows_.row(k).transpose());
    return fromCoords(coords);
}

HomSpace homSpace(const ProjComplex& X, const ProjComplex& Y, int shift) {
    return HomSpace(X, Y, shift);
}

Eigen::Index homDim(const ProjComplex& X, const ProjComplex& Y, int shift) {
    if (X.empty() || Y.empty())
        return 0;
    const BoundQuiverAlgebra& A = *X.A;
    ProjComplex Yk = shiftComplex(Y, shift);
    UnknownLayout unknowns = mapLayout(A, X, Yk, 0);
    if (unknowns.total == 0)
        return 0;
    UnknownLayout eqs = mapLayout(A, X, Yk, 1);
    Eigen::Index cycleDim = unknowns.total;
    if (eqs.total > 0) {
        FpMatrix eqOp =
            mapOperator(A, X, Yk, unknowns, 0, eqs, 1, true, true, -Fp::raw(1, A.p));
        cycleDim = unknowns.total - rank(eqOp);
    }
    UnknownLayout hs = mapLayout(A, X, Yk, -1);
    Eigen::Index bRank = 0;
    if (hs.total > 0) {
        FpMatrix bOp = mapOperator(A, X, Yk, hs, -1, unknowns, 0, true, true, Fp::raw(1, A.p));
        // null-homotopic maps always commute, so this lands inside the cycles
        bRank = rank(bOp);
    }
    return cycleDim - bRank;
}

bool isContractible(const ProjComplex& X) { return minimize(X).empty(); }

IsoResult isIsomorphic(const ProjComplex& X, const ProjComplex& Y, uint64_t seed, int retries) {
    IsoResult res;
    if (X.empty() && Y.empty()) {
        res.isomorphic = true;
        return res;
    }
    if (X.empty() != Y.empty())
        return res;
    if (X.minDeg != Y.minDeg || X.comps.size() != Y.comps.size())
        return res;
    for (size_t k = 0; k < X.comps.size(); ++k) {
        std::vector<int> a = X.comps[k], b = Y.comps[k];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            return res;
    }
    HomSpace H(X, Y, 0);
    if (H.dimension() == 0)
        return res;
    std::mt19937_64 rng(seed ^ 0x150150ULL);
    for (int t = 0; t < retries; ++t) {
        ChainMap f = H.randomMap(rng);
        ProjComplex c = conePlain(f);
        if (minimize(c).empty()) {
            res.isomorphic = true;
            return res;
        }
    }
    res.inconclusive = true;
    return res;
}

bool isPresilting(const std::vector<ComplexPtr>& T) {
    for (const auto& X : T) {
        for (const auto& Y : T) {
            if (X->empty() || Y->empty())
                continue;
            int klo = std::max(1, Y->minDeg - X->maxDeg());
            int khi = Y->maxDeg() - X->minDeg;
            for (int k = klo; k <= khi; ++k)
                if (homDim(*X, *Y, k) != 0)
                    return false;
        }
    }
    return true;
}

bool isTilting(const std::vector<ComplexPtr>& T) {
    if (!isPresilting(T))
        return false;
    for (const auto& X : T) {
        for (const auto& Y : T) {
            if (X->empty() || Y->empty())
                continue;
            int klo = Y->minDeg - X->maxDeg();
            int khi = std::min(-1, Y->maxDeg() - X->minDeg);
            for (int k = klo; k <= khi; ++k)
                if (homDim(*X, *Y, k) != 0)
                    return false;
        }
    }
    return true;
}

LocalEndReport localEndReport(const ProjComplex& X) {
    LocalEndReport rep;
    std::vector<ComplexPtr> one{std::make_shared<ProjComplex>(X)};
    StructureConstantAlgebra E = endAlgebra(one, false);
    rep.endDim = E.dim();
    FpMatrix rad = radicalOfSCA(E);
    rep.topDim = E.dim() - rad.rows();
    rep.local = (rep.topDim == 1);
    if (rep.topDim > 1) {
        // a commutative semisimple quotient over F_p may hide a field
        // extension: report rather than decide
        bool comm = true;
        for (Eigen::Index i = 0; i < E.dim() && comm; ++i)
            for (Eigen::Index j = 0; j < E.dim() && comm; ++j) {
                FpVector d = E.multiply(E.basis(static_cast<size_t>(i)),
                                        E.basis(static_cast<size_t>(j))) -
                             E.multiply(E.basis(static_cast<size_t>(j)),
                                        E.basis(static_cast<size_t>(i)));
                comm = inRowSpan(rad, d, E.p);
            }
        rep.possiblyNonSplit = comm;
    }
    return rep;
}

class EndAlgebraBuilder {
public:
    static StructureConstantAlgebra run(const std::vector<ComplexPtr>& T, bool checkLocal) {
        const size_t n = T.size();
        if (n == 0)
            throw ComputationError("end_algebra: empty summand list");
        const BoundQuiverAlgebra& A = *T[0]->A;

        std::vector<std::vector<HomSpace>> homs(n);
        for (size_t u = 0; u < n; ++u) {
            homs[u].resize(n);
            for (size_t v = 0; v < n; ++v)
                homs[u][v] = HomSpace(*T[u], *T[v], 0);
        }
        // seed the identity as the first representative of each End
        for (size_t u = 0; u < n; ++u) {
            HomSpace& H = homs[u][u];
            FpVector idCoords = H.coordsOf(identityMap(*T[u]));
            FpMatrix span = fpZeros(H.cycles_.rows() + 1, H.total_, A.p);
            span.row(0) = idCoords.transpose();
            span.bottomRows(H.cycles_.rows()) = H.cycles_;
            H.repRows_ = quotientBasis(span, H.boundary_, A.p);
            H.dim_ = H.repRows_.rows();
            FpMatrix full = fpZeros(H.dim_ + H.boundary_.rows(), H.total_, A.p);
            full.topRows(H.dim_) = H.repRows_;
            if (H.boundary_.rows() > 0)
                full.bottomRows(H.boundary_.rows()) = H.boundary_;
            H.reducer_ = RowSpanSolver(full, A.p);
            if (!(FpVector(H.repRows_.row(0).transpose()) == idCoords))
                throw ComputationError("end_algebra: identity not independent of homotopies");
        }

        StructureConstantAlgebra S;
        S.p = A.p;
        struct BasisRef {
            size_t u, v;      // morphism T_u -> T_v
            Eigen::Index k;   // representative index in homs[u][v]
        };
        std::vector<BasisRef> refs;
        std::vector<std::vector<Eigen::Index>> offset(n, std::vector<Eigen::Index>(n, 0));
        for (size_t u = 0; u < n; ++u)
            for (size_t v = 0; v < n; ++v) {
                offset[u][v] = static_cast<Eigen::Index>(refs.size());
                for (Eigen::Index k = 0; k < homs[u][v].dimension(); ++k) {
                    refs.push_back({u, v, k});
                    S.labels.push_back("hom(" + std::to_string(u) + "->" + std::to_string(v) +
                                       ")#" + std::to_string(k));
                }
            }
        const Eigen::Index dim = static_cast<Eigen::Index>(refs.size());

        S.table.assign(static_cast<size_t>(dim),
                       std::vector<FpVector>(static_cast<size_t>(dim), fpZeroVec(dim, A.p)));
        std::vector<std::vector<std::vector<ChainMap>>> reps(n);
        for (size_t u = 0; u < n; ++u) {
            reps[u].resize(n);
            for (size_t v = 0; v < n; ++v)
                for (Eigen::Index k = 0; k < homs[u][v].dimension(); ++k)
                    reps[u][v].push_back(homs[u][v].rep(k));
        }
        for (Eigen::Index a = 0; a < dim; ++a) {
            const BasisRef& ra = refs[static_cast<size_t>(a)];
            for (Eigen::Index b = 0; b < dim; ++b) {
                const BasisRef& rb = refs[static_cast<size_t>(b)];
                // product = composition: (a*b) = a after b, defined when the
                // codomain of b is the domain of a
                if (rb.v != ra.u)
                    continue;
                ChainMap comp = composeMaps(reps[ra.u][ra.v][static_cast<size_t>(ra.k)],
                                            reps[rb.u][rb.v][static_cast<size_t>(rb.k)]);
                FpVector cls = homs[rb.u][ra.v].classOf(comp);
                FpVector col = fpZeroVec(dim, A.p);
                for (Eigen::Index t = 0; t < cls.size(); ++t)
                    col(offset[rb.u][ra.v] + t) = cls(t);
                S.table[static_cast<size_t>(a)][static_cast<size_t>(b)] = col;
            }
        }
        for (size_t u = 0; u < n; ++u) {
            FpVector e = fpZeroVec(dim, A.p);
            e(offset[u][u]) = Fp::raw(1, A.p);
            S.idempotents.push_back(e);
            S.idempotentLabels.push_back("T" + std::to_string(u));
        }

        if (checkLocal) {
            for (size_t u = 0; u < n; ++u)
                for (size_t v = u + 1; v < n; ++v)
                    if (gVector(*T[u]) == gVector(*T[v]))
                        throw ComputationError("end_algebra: summands share a g-vector");
        }
        S.verifyAssociativity();
        S.verifyIdempotents();
        if (checkLocal) {
            FpMatrix rad = radicalOfSCA(S);
            if (S.dim() - rad.rows() != static_cast<Eigen::Index>(n))
                throw ComputationError("end_algebra: non-split local ring among the summands");
        }
        return S;
    }
};

StructureConstantAlgebra endAlgebra(const std::vector<ComplexPtr>& T, bool checkLocal) {
    return EndAlgebraBuilder::run(T, checkLocal);
}

Eigen::Index homDimFromList(const std::vector<ComplexPtr>& T, const ProjComplex& Y) {
    Eigen::Index total = 0;
    for (const auto& X : T)
        total += homDim(*X, Y, 0);
    return total;
}

}  // namespace qsilt
