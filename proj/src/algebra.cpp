#include "qsilt/algebra.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace qsilt {

namespace {

struct PathOrder {
    const std::vector<int>* rank;
    bool less(const PathWord& a, const PathWord& b) const {
        if (a.length() != b.length())
            return a.length() < b.length();
        for (size_t k = 0; k < a.arrows.size(); ++k) {
            int ra = (*rank)[static_cast<size_t>(a.arrows[k])];
            int rb = (*rank)[static_cast<size_t>(b.arrows[k])];
            if (ra != rb)
                return ra < rb;
        }
        return a.source < b.source;
    }
};

int relationMinLen(const Relation& r) {
    int m = 1 << 30;
    for (const auto& t : r)
        m = std::min(m, t.path.length());
    return m;
}
int relationMaxLen(const Relation& r) {
    int m = 0;
    for (const auto& t : r)
        m = std::max(m, t.path.length());
    return m;
}
bool relationHomogeneous(const Relation& r) {
    return relationMinLen(r) == relationMaxLen(r);
}

/// Row-reduced span accumulator for one (source,target) group.  Columns are
/// path indices in descending shortest-then-lex order, so pivots eliminate
/// the largest paths and the surviving columns give the normal basis.
struct GroupEchelon {
    uint64_t p = 0;
    std::vector<int> cols;  // global path indices, descending order
    std::unordered_map<int, int> colPos;
    std::vector<FpVector> rows;  // kept in rref form
    std::vector<Eigen::Index> rowPivot;

    Eigen::Index width() const { return static_cast<Eigen::Index>(cols.size()); }
    Eigen::Index rank() const { return static_cast<Eigen::Index>(rows.size()); }

    /// Reduce and insert; returns true if the rank grew.
    bool insert(FpVector row) {
        for (size_t i = 0; i < rows.size(); ++i) {
            Fp f = row(rowPivot[i]);
            if (!f.isZero())
                row -= f * rows[i];
        }
        Eigen::Index lead = -1;
        for (Eigen::Index j = 0; j < row.size(); ++j) {
            if (!row(j).isZero()) {
                lead = j;
                break;
            }
        }
        if (lead < 0)
            return false;
        row *= row(lead).inv();
        for (size_t i = 0; i < rows.size(); ++i) {
            Fp f = rows[i](lead);
            if (!f.isZero())
                rows[i] -= f * row;
        }
        auto at = std::lower_bound(rowPivot.begin(), rowPivot.end(), lead);
        size_t pos = static_cast<size_t>(at - rowPivot.begin());
        rowPivot.insert(at, lead);
        rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(pos), std::move(row));
        return true;
    }

    /// e_pos lies in the span iff some rref row equals that unit vector.
    bool unitInSpan(Eigen::Index pos) const {
        auto it = std::lower_bound(rowPivot.begin(), rowPivot.end(), pos);
        if (it == rowPivot.end() || *it != pos)
            return false;
        const FpVector& r = rows[static_cast<size_t>(it - rowPivot.begin())];
        for (Eigen::Index j = 0; j < r.size(); ++j)
            if (j != pos && !r(j).isZero())
                return false;
        return true;
    }
};

}  // namespace

std::string BoundQuiverAlgebra::encodePath(const PathWord& w) {
    std::string s = std::to_string(w.source);
    for (int a : w.arrows) {
        s.push_back('.');
        s += std::to_string(a);
    }
    return s;
}

struct AlgebraBuilder {
    BoundQuiverAlgebra& A;
    PathOrder ord;
    std::vector<std::vector<int>> outArrows;  // per vertex
    std::vector<std::vector<int>> inArrows;

    std::vector<PathWord> paths;
    std::unordered_map<std::string, int> index;
    std::vector<std::vector<int>> pathsFrom;  // per vertex

    AlgebraBuilder(BoundQuiverAlgebra& alg, const std::vector<int>& ranks)
        : A(alg), ord{&ranks} {
        outArrows.resize(static_cast<size_t>(A.quiver.vertexCount()));
        inArrows.resize(static_cast<size_t>(A.quiver.vertexCount()));
        for (int a = 0; a < A.quiver.arrowCount(); ++a) {
            outArrows[static_cast<size_t>(A.quiver.arrows[static_cast<size_t>(a)].source)].push_back(a);
            inArrows[static_cast<size_t>(A.quiver.arrows[static_cast<size_t>(a)].target)].push_back(a);
        }
    }

    void enumeratePaths(int maxLen) {
        paths.clear();
        index.clear();
        pathsFrom.assign(static_cast<size_t>(A.quiver.vertexCount()), {});
        std::vector<PathWord> frontier;
        for (int v = 0; v < A.quiver.vertexCount(); ++v)
            frontier.push_back(PathWord{v, {}});
        for (int len = 0; len <= maxLen; ++len) {
            for (const auto& w : frontier) {
                int id = static_cast<int>(paths.size());
                index[BoundQuiverAlgebra::encodePath(w)] = id;
                pathsFrom[static_cast<size_t>(w.source)].push_back(id);
                paths.push_back(w);
            }
            if (len == maxLen)
                break;
            std::vector<PathWord> next;
            for (const auto& w : frontier) {
                int t = w.target(A.quiver);
                for (int a : outArrows[static_cast<size_t>(t)]) {
                    PathWord e = w;
                    e.arrows.push_back(a);
                    next.push_back(std::move(e));
                }
            }
            frontier = std::move(next);
            if (paths.size() + frontier.size() > 4000000)
                throw ComputationError("build_algebra: path space too large at this cap");
        }
    }

    int groupOf(int pathId) const {
        const PathWord& w = paths[static_cast<size_t>(pathId)];
        return w.source * A.quiver.vertexCount() + w.target(A.quiver);
    }

    std::vector<GroupEchelon> makeGroups(int dropLen) const {
        const int V = A.quiver.vertexCount();
        std::vector<GroupEchelon> gs(static_cast<size_t>(V * V));
        for (auto& g : gs)
            g.p = A.p;
        for (size_t k = 0; k < paths.size(); ++k) {
            if (paths[k].length() >= dropLen)
                continue;
            gs[static_cast<size_t>(groupOf(static_cast<int>(k)))].cols.push_back(static_cast<int>(k));
        }
        for (auto& g : gs) {
            std::sort(g.cols.begin(), g.cols.end(), [&](int x, int y) {
                return ord.less(paths[static_cast<size_t>(y)], paths[static_cast<size_t>(x)]);
            });
            for (size_t i = 0; i < g.cols.size(); ++i)
                g.colPos[g.cols[i]] = static_cast<int>(i);
        }
        return gs;
    }

    /// Span of the image of the two-sided ideal in the length-< dropLen
    /// truncation: right translates of the relations, closed under left
    /// multiplication by arrows.  Exact whenever truncation is legitimate
    /// (homogeneous relations, or rad^dropLen already certified inside I).
    void closeIdeal(std::vector<GroupEchelon>& gs, int dropLen) const {
        struct Work {
            int group;
            FpVector row;
        };
        std::deque<Work> queue;
        auto push = [&](int group, FpVector row) {
            if (gs[static_cast<size_t>(group)].insert(row))
                queue.push_back({group, std::move(row)});
        };

        for (const auto& rel : A.relations) {
            int rt = rel.front().path.target(A.quiver);
            for (int vId : pathsFrom[static_cast<size_t>(rt)]) {
                const PathWord& v = paths[static_cast<size_t>(vId)];
                int group = rel.front().path.source * A.quiver.vertexCount() + v.target(A.quiver);
                GroupEchelon& g = gs[static_cast<size_t>(group)];
                FpVector row = fpZeroVec(g.width(), A.p);
                bool any = false;
                for (const auto& t : rel) {
                    if (t.path.length() + v.length() >= dropLen)
                        continue;
                    PathWord full = t.path;
                    full.arrows.insert(full.arrows.end(), v.arrows.begin(), v.arrows.end());
                    auto it = index.find(BoundQuiverAlgebra::encodePath(full));
                    if (it == index.end())
                        throw ComputationError("build_algebra: internal path lookup failure");
                    row(g.colPos.at(it->second)) += Fp::raw(t.coeff.v, A.p);
                    any = true;
                }
                if (any)
                    push(group, std::move(row));
            }
        }

        while (!queue.empty()) {
            Work w = std::move(queue.front());
            queue.pop_front();
            const GroupEchelon& g = gs[static_cast<size_t>(w.group)];
            int src = w.group / A.quiver.vertexCount();
            int tgt = w.group % A.quiver.vertexCount();
            for (int a : inArrows[static_cast<size_t>(src)]) {
                int newGroup = A.quiver.arrows[static_cast<size_t>(a)].source *
                                   A.quiver.vertexCount() + tgt;
                GroupEchelon& g2 = gs[static_cast<size_t>(newGroup)];
                FpVector row = fpZeroVec(g2.width(), A.p);
                bool any = false;
                for (Eigen::Index j = 0; j < w.row.size(); ++j) {
                    if (w.row(j).isZero())
                        continue;
                    const PathWord& base = paths[static_cast<size_t>(g.cols[static_cast<size_t>(j)])];
                    if (base.length() + 1 >= dropLen)
                        continue;
                    PathWord ext;
                    ext.source = A.quiver.arrows[static_cast<size_t>(a)].source;
                    ext.arrows.push_back(a);
                    ext.arrows.insert(ext.arrows.end(), base.arrows.begin(), base.arrows.end());
                    auto it = index.find(BoundQuiverAlgebra::encodePath(ext));
                    if (it == index.end())
                        throw ComputationError("build_algebra: internal path lookup failure");
                    row(g2.colPos.at(it->second)) += w.row(j);
                    any = true;
                }
                if (any)
                    push(newGroup, std::move(row));
            }
        }
    }

    /// All length-`cap` paths lie in the (omission-exact) ideal span?
    bool topLayerCovered(std::vector<GroupEchelon>& gs, int cap) const {
        for (auto& g : gs) {
            for (size_t j = 0; j < g.cols.size(); ++j) {
                if (paths[static_cast<size_t>(g.cols[j])].length() != cap)
                    continue;
                if (!g.unitInSpan(static_cast<Eigen::Index>(j)))
                    return false;
            }
        }
        return true;
    }

    /// Sound certification for inhomogeneous relations: enumerate whole
    /// products u*r*v whose every term fits under the cap (no truncation).
    std::vector<GroupEchelon> inhomogeneousSpan(int cap) {
        auto gs = makeGroups(cap + 1);
        for (const auto& rel : A.relations) {
            int rs = rel.front().path.source;
            int rt = rel.front().path.target(A.quiver);
            int rMax = relationMaxLen(rel);
            for (size_t ui = 0; ui < paths.size(); ++ui) {
                const PathWord& u = paths[ui];
                if (u.target(A.quiver) != rs || u.length() + rMax > cap)
                    continue;
                for (int vId : pathsFrom[static_cast<size_t>(rt)]) {
                    const PathWord& v = paths[static_cast<size_t>(vId)];
                    if (u.length() + rMax + v.length() > cap)
                        continue;
                    int group = u.source * A.quiver.vertexCount() + v.target(A.quiver);
                    GroupEchelon& g = gs[static_cast<size_t>(group)];
                    FpVector row = fpZeroVec(g.width(), A.p);
                    for (const auto& t : rel) {
                        PathWord full = u;
                        full.arrows.insert(full.arrows.end(), t.path.arrows.begin(),
                                           t.path.arrows.end());
                        full.arrows.insert(full.arrows.end(), v.arrows.begin(), v.arrows.end());
                        auto it = index.find(BoundQuiverAlgebra::encodePath(full));
                        if (it == index.end())
                            throw ComputationError("build_algebra: internal path lookup failure");
                        row(g.colPos.at(it->second)) += Fp::raw(t.coeff.v, A.p);
                    }
                    g.insert(std::move(row));
                }
            }
        }
        return gs;
    }
};

BoundQuiverAlgebra BoundQuiverAlgebra::build(Quiver q, std::vector<Relation> rels, uint64_t p,
                                             int maxCap) {
    q.validate();
    if (p < 2 || !isPrime64(p))
        throw ComputationError("build_algebra: field modulus must be prime");

    BoundQuiverAlgebra A;
    A.quiver = std::move(q);
    A.p = p;
    A.nameRank_ = A.quiver.nameRanks();

    // normalize relations: merge duplicate paths, drop vanishing terms
    for (auto& rel : rels) {
        std::map<std::string, size_t> seen;
        Relation merged;
        for (auto& t : rel) {
            if (t.path.length() < 2)
                throw ComputationError("build_algebra: relation not in rad2");
            if (!t.path.arrows.empty() &&
                A.quiver.arrows[static_cast<size_t>(t.path.arrows.front())].source != t.path.source)
                throw ComputationError("build_algebra: relation path source mismatch");
            for (size_t k = 0; k + 1 < t.path.arrows.size(); ++k) {
                const auto& cur = A.quiver.arrows[static_cast<size_t>(t.path.arrows[k])];
                const auto& nxt = A.quiver.arrows[static_cast<size_t>(t.path.arrows[k + 1])];
                if (cur.target != nxt.source)
                    throw ComputationError("build_algebra: relation path not composable");
            }
            if (t.coeff.p != 0 && t.coeff.p != p)
                throw ComputationError("build_algebra: relation coefficient modulus mismatch");
            Fp c = Fp::raw(t.coeff.v, p);
            std::string key = encodePath(t.path);
            auto it = seen.find(key);
            if (it == seen.end()) {
                seen[key] = merged.size();
                merged.push_back({c, t.path});
            } else {
                merged[it->second].coeff += c;
            }
        }
        Relation cleaned;
        for (auto& t : merged)
            if (!t.coeff.isZero())
                cleaned.push_back(t);
        if (cleaned.empty())
            continue;
        int s = cleaned.front().path.source;
        int t0 = cleaned.front().path.target(A.quiver);
        for (const auto& t : cleaned)
            if (t.path.source != s || t.path.target(A.quiver) != t0)
                throw ComputationError("build_algebra: relation terms not parallel");
        A.relations.push_back(std::move(cleaned));
    }

    AlgebraBuilder builder(A, A.nameRank_);
    bool homogeneous = true;
    int startCap = 2;
    for (const auto& r : A.relations) {
        startCap = std::max(startCap, relationMaxLen(r));
        homogeneous = homogeneous && relationHomogeneous(r);
    }

    int certified = -1;
    for (int cap = startCap; cap <= maxCap; ++cap) {
        builder.enumeratePaths(cap);
        bool anyTop = false;
        for (const auto& w : builder.paths)
            if (w.length() == cap)
                anyTop = true;
        if (!anyTop) {  // acyclic quiver ran out of paths
            certified = cap;
            break;
        }
        std::vector<GroupEchelon> gs;
        if (homogeneous) {
            gs = builder.makeGroups(cap + 1);
            builder.closeIdeal(gs, cap + 1);
        } else {
            gs = builder.inhomogeneousSpan(cap);
        }
        if (builder.topLayerCovered(gs, cap)) {
            certified = cap;
            break;
        }
    }
    if (certified < 0)
        throw ComputationError("build_algebra: not admissible within cap");
    A.capUsed = certified;

    // final elimination in the truncation at the certified bound; truncation
    // is exact here because rad^capUsed lies in the ideal
    builder.enumeratePaths(certified - 1);
    auto groups = builder.makeGroups(certified);
    builder.closeIdeal(groups, certified);
    A.allPaths_ = builder.paths;
    A.pathIndex_ = builder.index;

    A.pathRewrite_.assign(A.allPaths_.size(), SparseVec{});
    std::vector<int> normalGlobal;
    std::vector<char> isNormal(A.allPaths_.size(), 0);
    struct PendingRewrite {
        int pathIdx;
        std::vector<std::pair<int, Fp>> overPaths;  // (allPaths index, coeff)
    };
    std::vector<PendingRewrite> pend;

    for (auto& g : groups) {
        std::vector<char> pivotCol(g.cols.size(), 0);
        for (size_t i = 0; i < g.rows.size(); ++i) {
            Eigen::Index pc = g.rowPivot[i];
            pivotCol[static_cast<size_t>(pc)] = 1;
            PendingRewrite pr;
            pr.pathIdx = g.cols[static_cast<size_t>(pc)];
            for (Eigen::Index j = 0; j < g.rows[i].size(); ++j)
                if (j != pc && !g.rows[i](j).isZero())
                    pr.overPaths.push_back({g.cols[static_cast<size_t>(j)], -g.rows[i](j)});
            pend.push_back(std::move(pr));
        }
        for (size_t c = 0; c < g.cols.size(); ++c)
            if (!pivotCol[c]) {
                isNormal[static_cast<size_t>(g.cols[c])] = 1;
                normalGlobal.push_back(g.cols[c]);
            }
    }

    PathOrder ord{&A.nameRank_};
    std::sort(normalGlobal.begin(), normalGlobal.end(), [&](int x, int y) {
        return ord.less(A.allPaths_[static_cast<size_t>(x)], A.allPaths_[static_cast<size_t>(y)]);
    });
    std::vector<int> basisIndexOfPath(A.allPaths_.size(), -1);
    for (size_t k = 0; k < normalGlobal.size(); ++k) {
        basisIndexOfPath[static_cast<size_t>(normalGlobal[k])] = static_cast<int>(k);
        A.basis.push_back(A.allPaths_[static_cast<size_t>(normalGlobal[k])]);
    }
    for (size_t k = 0; k < A.allPaths_.size(); ++k)
        if (isNormal[k])
            A.pathRewrite_[k] = {{basisIndexOfPath[k], Fp::raw(1, A.p)}};

    // pivot rewrites refer to strictly smaller paths in the elimination
    // order; resolving ascending makes every reference already final
    std::sort(pend.begin(), pend.end(), [&](const PendingRewrite& x, const PendingRewrite& y) {
        return ord.less(A.allPaths_[static_cast<size_t>(x.pathIdx)],
                        A.allPaths_[static_cast<size_t>(y.pathIdx)]);
    });
    for (auto& pr : pend) {
        std::map<int, Fp> acc;
        for (auto& [pi, c] : pr.overPaths) {
            for (auto& [bi, c2] : A.pathRewrite_[static_cast<size_t>(pi)]) {
                auto it = acc.find(bi);
                if (it == acc.end())
                    acc[bi] = c * c2;
                else
                    it->second += c * c2;
            }
        }
        SparseVec sv;
        for (auto& [bi, c] : acc)
            if (!c.isZero())
                sv.push_back({bi, c});
        A.pathRewrite_[static_cast<size_t>(pr.pathIdx)] = std::move(sv);
    }

    A.finalize();
    return A;
}

void BoundQuiverAlgebra::finalize() {
    const int V = vertexCount();
    basisSource.clear();
    basisTarget.clear();
    byPair_.assign(static_cast<size_t>(V * V), {});
    posInPair_.assign(basis.size(), 0);
    vertexBasis_.assign(static_cast<size_t>(V), -1);
    for (size_t k = 0; k < basis.size(); ++k) {
        int s = basis[k].source;
        int t = basis[k].target(quiver);
        basisSource.push_back(s);
        basisTarget.push_back(t);
        auto& group = byPair_[static_cast<size_t>(s * V + t)];
        posInPair_[k] = static_cast<int>(group.size());
        group.push_back(static_cast<int>(k));
        if (basis[k].length() == 0)
            vertexBasis_[static_cast<size_t>(s)] = static_cast<int>(k);
    }
    for (int v = 0; v < V; ++v)
        if (vertexBasis_[static_cast<size_t>(v)] < 0)
            throw ComputationError("build_algebra: missing vertex idempotent in basis");

    loewyLength = capUsed;
    for (int l = 1; l < capUsed; ++l) {
        bool allZero = true;
        for (size_t k = 0; k < allPaths_.size(); ++k) {
            if (allPaths_[k].length() == l && !pathRewrite_[k].empty()) {
                allZero = false;
                break;
            }
        }
        if (allZero) {
            loewyLength = l;
            break;
        }
    }

    const size_t n = basis.size();
    products_.assign(n * n, SparseVec{});
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (basisTarget[i] != basisSource[j])
                continue;
            if (basis[i].length() + basis[j].length() >= capUsed)
                continue;
            PathWord w = basis[i];
            w.arrows.insert(w.arrows.end(), basis[j].arrows.begin(), basis[j].arrows.end());
            auto it = pathIndex_.find(encodePath(w));
            if (it == pathIndex_.end())
                throw ComputationError("build_algebra: product path missing from table");
            products_[i * n + j] = pathRewrite_[static_cast<size_t>(it->second)];
        }
    }
}

FpVector BoundQuiverAlgebra::multiply(const FpVector& x, const FpVector& y) const {
    FpVector out = zeroVec();
    const size_t n = basis.size();
    for (size_t i = 0; i < n; ++i) {
        if (x(static_cast<Eigen::Index>(i)).isZero())
            continue;
        for (size_t j = 0; j < n; ++j) {
            if (y(static_cast<Eigen::Index>(j)).isZero())
                continue;
            const SparseVec& prod = products_[i * n + j];
            if (prod.empty())
                continue;
            Fp c = x(static_cast<Eigen::Index>(i)) * y(static_cast<Eigen::Index>(j));
            for (const auto& [k, v] : prod)
                out(k) += c * v;
        }
    }
    return out;
}

FpVector BoundQuiverAlgebra::unit() const {
    FpVector u = zeroVec();
    for (int v = 0; v < vertexCount(); ++v)
        u(vertexBasisIndex(v)) = Fp::raw(1, p);
    return u;
}

FpVector BoundQuiverAlgebra::basisVec(int k) const {
    FpVector u = zeroVec();
    u(k) = Fp::raw(1, p);
    return u;
}

FpMatrix BoundQuiverAlgebra::leftMultMatrix(const FpVector& z) const {
    FpMatrix m = fpZeros(dim(), dim(), p);
    const size_t n = basis.size();
    for (Eigen::Index i = 0; i < dim(); ++i) {
        if (z(i).isZero())
            continue;
        for (size_t j = 0; j < n; ++j) {
            const SparseVec& prod = products_[static_cast<size_t>(i) * n + j];
            for (const auto& [k, v] : prod)
                m(k, static_cast<Eigen::Index>(j)) += z(i) * v;
        }
    }
    return m;
}

FpMatrix BoundQuiverAlgebra::rightMultMatrix(const FpVector& z) const {
    FpMatrix m = fpZeros(dim(), dim(), p);
    const size_t n = basis.size();
    for (Eigen::Index i = 0; i < dim(); ++i) {
        if (z(i).isZero())
            continue;
        for (size_t j = 0; j < n; ++j) {
            const SparseVec& prod = products_[j * n + static_cast<size_t>(i)];
            for (const auto& [k, v] : prod)
                m(k, static_cast<Eigen::Index>(j)) += z(i) * v;
        }
    }
    return m;
}

FpMatrix BoundQuiverAlgebra::leftMultOnPair(const FpVector& z, int c, int a, int b) const {
    const auto& colsIdx = pathBasis(a, b);
    const auto& rowsIdx = pathBasis(c, b);
    FpMatrix m = fpZeros(static_cast<Eigen::Index>(rowsIdx.size()),
                         static_cast<Eigen::Index>(colsIdx.size()), p);
    const size_t n = basis.size();
    for (size_t jc = 0; jc < colsIdx.size(); ++jc) {
        int w = colsIdx[jc];
        for (int zi : pathBasis(c, a)) {
            Fp coeff = z(zi);
            if (coeff.isZero())
                continue;
            const SparseVec& prod = products_[static_cast<size_t>(zi) * n + static_cast<size_t>(w)];
            for (const auto& [k, v] : prod)
                m(posInPair(k), static_cast<Eigen::Index>(jc)) += coeff * v;
        }
    }
    return m;
}

FpMatrix BoundQuiverAlgebra::rightMultOnPair(const FpVector& z, int a, int b, int d) const {
    const auto& colsIdx = pathBasis(a, b);
    const auto& rowsIdx = pathBasis(a, d);
    FpMatrix m = fpZeros(static_cast<Eigen::Index>(rowsIdx.size()),
                         static_cast<Eigen::Index>(colsIdx.size()), p);
    const size_t n = basis.size();
    for (size_t jc = 0; jc < colsIdx.size(); ++jc) {
        int w = colsIdx[jc];
        for (int zi : pathBasis(b, d)) {
            Fp coeff = z(zi);
            if (coeff.isZero())
                continue;
            const SparseVec& prod = products_[static_cast<size_t>(w) * n + static_cast<size_t>(zi)];
            for (const auto& [k, v] : prod)
                m(posInPair(k), static_cast<Eigen::Index>(jc)) += coeff * v;
        }
    }
    return m;
}

FpVector BoundQuiverAlgebra::restrictToPair(const FpVector& x, int i, int j) const {
    const auto& idx = pathBasis(i, j);
    FpVector out = fpZeroVec(static_cast<Eigen::Index>(idx.size()), p);
    for (size_t k = 0; k < idx.size(); ++k)
        out(static_cast<Eigen::Index>(k)) = x(idx[k]);
    return out;
}

FpVector BoundQuiverAlgebra::expandFromPair(const FpVector& local, int i, int j) const {
    const auto& idx = pathBasis(i, j);
    FpVector out = zeroVec();
    for (size_t k = 0; k < idx.size(); ++k)
        out(idx[k]) = local(static_cast<Eigen::Index>(k));
    return out;
}

FpMatrix BoundQuiverAlgebra::radicalBasis() const {
    std::vector<int> radIdx;
    for (size_t k = 0; k < basis.size(); ++k)
        if (basis[k].length() >= 1)
            radIdx.push_back(static_cast<int>(k));
    FpMatrix m = fpZeros(static_cast<Eigen::Index>(radIdx.size()), dim(), p);
    for (size_t k = 0; k < radIdx.size(); ++k)
        m(static_cast<Eigen::Index>(k), radIdx[k]) = Fp::raw(1, p);
    return m;
}

FpMatrix BoundQuiverAlgebra::radicalPowerBasis(int k) const {
    if (k <= 0)
        return fpIdentity(dim(), p);
    if (k == 1)
        return radicalBasis();
    std::vector<FpVector> rows;
    for (size_t i = 0; i < allPaths_.size(); ++i) {
        if (allPaths_[i].length() < k || pathRewrite_[i].empty())
            continue;
        FpVector v = zeroVec();
        for (const auto& [b, c] : pathRewrite_[i])
            v(b) = c;
        rows.push_back(std::move(v));
    }
    FpMatrix m = fpZeros(static_cast<Eigen::Index>(rows.size()), dim(), p);
    for (size_t i = 0; i < rows.size(); ++i)
        m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    return rowBasis(m);
}

FpMatrix BoundQuiverAlgebra::socleOfProjective(int i) const {
    std::vector<int> projIdx;
    for (size_t k = 0; k < basis.size(); ++k)
        if (basisSource[k] == i)
            projIdx.push_back(static_cast<int>(k));
    const Eigen::Index n = static_cast<Eigen::Index>(projIdx.size());
    FpMatrix sys = fpZeros(dim() * quiver.arrowCount(), n, p);
    for (int a = 0; a < quiver.arrowCount(); ++a) {
        PathWord w{quiver.arrows[static_cast<size_t>(a)].source, {a}};
        FpVector nf = normalFormOfPath(w);
        for (Eigen::Index c = 0; c < n; ++c)
            sys.block(dim() * a, c, dim(), 1) =
                multiply(basisVec(projIdx[static_cast<size_t>(c)]), nf);
    }
    FpMatrix ker = nullspaceBasis(sys, p);
    FpMatrix full = fpZeros(ker.rows(), dim(), p);
    for (Eigen::Index r = 0; r < ker.rows(); ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            full(r, projIdx[static_cast<size_t>(c)]) = ker(r, c);
    return full;
}

FpMatrix BoundQuiverAlgebra::socleBasis() const {
    std::vector<FpMatrix> per;
    Eigen::Index rows = 0;
    for (int i = 0; i < vertexCount(); ++i) {
        per.push_back(socleOfProjective(i));
        rows += per.back().rows();
    }
    FpMatrix m = fpZeros(rows, dim(), p);
    Eigen::Index at = 0;
    for (const auto& b : per) {
        m.middleRows(at, b.rows()) = b;
        at += b.rows();
    }
    return m;
}

std::string BoundQuiverAlgebra::pathToString(const PathWord& w) const {
    if (w.arrows.empty())
        return "e_" + quiver.vertexLabels[static_cast<size_t>(w.source)];
    std::string s;
    for (int a : w.arrows)
        s += quiver.arrows[static_cast<size_t>(a)].name;
    return s;
}

std::string BoundQuiverAlgebra::elementToString(const FpVector& x) const {
    std::ostringstream os;
    bool first = true;
    for (Eigen::Index k = 0; k < dim(); ++k) {
        if (x(k).isZero())
            continue;
        if (!first)
            os << " + ";
        first = false;
        if (x(k).v != 1)
            os << x(k).v << "*";
        os << pathToString(basis[static_cast<size_t>(k)]);
    }
    if (first)
        os << "0";
    return os.str();
}

FpVector BoundQuiverAlgebra::evalRelation(const Relation& r) const {
    FpVector out = zeroVec();
    for (const auto& t : r)
        out += Fp::raw(t.coeff.v, p) * normalFormOfPath(t.path);
    return out;
}

FpVector BoundQuiverAlgebra::normalFormOfPath(const PathWord& w) const {
    FpVector out = zeroVec();
    if (w.length() >= capUsed)
        return out;
    auto it = pathIndex_.find(encodePath(w));
    if (it == pathIndex_.end())
        throw ComputationError("normal form: path not composable in this quiver");
    for (const auto& [b, c] : pathRewrite_[static_cast<size_t>(it->second)])
        out(b) = c;
    return out;
}

std::vector<PathWord> BoundQuiverAlgebra::nonzeroPathsFrom(int i) const {
    std::vector<PathWord> out;
    for (size_t k = 0; k < allPaths_.size(); ++k)
        if (allPaths_[k].source == i && !pathRewrite_[k].empty())
            out.push_back(allPaths_[k]);
    return out;
}

bool BoundQuiverAlgebra::isConnected() const {
    const int V = vertexCount();
    if (V == 0)
        return true;
    std::vector<char> seen(static_cast<size_t>(V), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& a : quiver.arrows) {
            int other = -1;
            if (a.source == v)
                other = a.target;
            else if (a.target == v)
                other = a.source;
            if (other >= 0 && !seen[static_cast<size_t>(other)]) {
                seen[static_cast<size_t>(other)] = 1;
                stack.push_back(other);
            }
        }
    }
    for (char c : seen)
        if (!c)
            return false;
    return true;
}

AlgebraAutomorphism makeAutomorphism(const BoundQuiverAlgebra& A,
                                     const std::vector<int>& vertexPerm,
                                     const std::vector<FpVector>& arrowImages) {
    const int V = A.vertexCount();
    std::vector<char> hit(static_cast<size_t>(V), 0);
    for (int v = 0; v < V; ++v) {
        int w = vertexPerm[static_cast<size_t>(v)];
        if (w < 0 || w >= V || hit[static_cast<size_t>(w)]++)
            throw ComputationError("automorphism: vertex map is not a permutation");
    }

    AlgebraAutomorphism out;
    out.vertexPerm = vertexPerm;
    out.matrix = fpZeros(A.dim(), A.dim(), A.p);
    for (Eigen::Index k = 0; k < A.dim(); ++k) {
        const PathWord& w = A.basis[static_cast<size_t>(k)];
        FpVector img = A.basisVec(A.vertexBasisIndex(vertexPerm[static_cast<size_t>(w.source)]));
        for (int a : w.arrows)
            img = A.multiply(img, arrowImages[static_cast<size_t>(a)]);
        out.matrix.col(k) = img;
    }
    if (!isInvertible(out.matrix))
        throw ComputationError("automorphism: singular on the basis");

    for (const auto& rel : A.relations) {
        FpVector img = A.zeroVec();
        for (const auto& t : rel) {
            FpVector term =
                A.basisVec(A.vertexBasisIndex(vertexPerm[static_cast<size_t>(t.path.source)]));
            for (int a : t.path.arrows)
                term = A.multiply(term, arrowImages[static_cast<size_t>(a)]);
            img += Fp::raw(t.coeff.v, A.p) * term;
        }
        for (Eigen::Index k = 0; k < A.dim(); ++k)
            if (!img(k).isZero())
                throw ComputationError("automorphism: relation image is nonzero");
    }

    for (Eigen::Index i = 0; i < A.dim(); ++i) {
        for (Eigen::Index j = 0; j < A.dim(); ++j) {
            const SparseVec& prod = A.productOfBasis(static_cast<int>(i), static_cast<int>(j));
            FpVector lhs = A.multiply(out.matrix.col(i), out.matrix.col(j));
            FpVector rhs = A.zeroVec();
            for (const auto& [k, c] : prod)
                rhs += c * out.matrix.col(k);
            if (!(lhs == rhs))
                throw ComputationError("automorphism: not multiplicative");
        }
    }
    return out;
}

}  // namespace qsilt
