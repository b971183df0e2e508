#include "qsilt/mutation.hpp"

#include "qsilt/sca.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace qsilt {

namespace {

std::string summandKey(const ProjComplex& Z) { return gVectorKey(gVector(Z)); }

std::string orbitLabel(const SiltingObject& T, const std::vector<size_t>& S) {
    std::ostringstream os;
    for (size_t i = 0; i < S.size(); ++i) {
        if (i)
            os << " | ";
        os << summandKey(*T.summands[S[i]]);
    }
    return os.str();
}

}  // namespace

void SiltingObject::sortSummands() {
    std::sort(summands.begin(), summands.end(), [](const ComplexPtr& a, const ComplexPtr& b) {
        return gVector(*a) < gVector(*b);
    });
}

std::string SiltingObject::key() const {
    std::vector<std::vector<long long>> gs;
    for (const auto& s : summands)
        gs.push_back(gVector(*s));
    std::sort(gs.begin(), gs.end());
    std::ostringstream os;
    for (size_t i = 0; i < gs.size(); ++i) {
        if (i)
            os << ";";
        os << gVectorKey(gs[i]);
    }
    return os.str();
}

SiltingObject stalkSilting(const BoundQuiverAlgebra& A) {
    SiltingObject T;
    for (int v = 0; v < A.vertexCount(); ++v)
        T.summands.push_back(std::make_shared<ProjComplex>(stalkComplex(A, v)));
    T.sortSummands();
    T.provenance.push_back("stalk");
    return T;
}

SiltingObject shiftSilting(const SiltingObject& T, int k) {
    SiltingObject S;
    for (const auto& x : T.summands)
        S.summands.push_back(std::make_shared<ProjComplex>(shiftComplex(*x, k)));
    S.sortSummands();
    S.provenance = T.provenance;
    S.provenance.push_back("shift " + std::to_string(k));
    return S;
}

const HomSpace& HomCache::get(const ComplexPtr& X, const ComplexPtr& Y) {
    auto key = std::make_pair(static_cast<const ProjComplex*>(X.get()),
                              static_cast<const ProjComplex*>(Y.get()));
    auto it = homs_.find(key);
    if (it == homs_.end()) {
        keepAlive_.push_back(X);
        keepAlive_.push_back(Y);
        it = homs_.emplace(key, std::make_unique<HomSpace>(*X, *Y, 0)).first;
    }
    return *it->second;
}

const FpMatrix& HomCache::radEnd(const ComplexPtr& X) {
    auto it = radEnds_.find(X.get());
    if (it != radEnds_.end())
        return it->second;
    const HomSpace& E = get(X, X);
    const Eigen::Index d = E.dimension();
    const uint64_t p = X->A->p;
    StructureConstantAlgebra S;
    S.p = p;
    S.labels.assign(static_cast<size_t>(d), "end");
    S.table.assign(static_cast<size_t>(d), std::vector<FpVector>(static_cast<size_t>(d)));
    std::vector<ChainMap> reps;
    for (Eigen::Index k = 0; k < d; ++k)
        reps.push_back(E.rep(k));
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            S.table[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                E.classOf(composeMaps(reps[static_cast<size_t>(i)], reps[static_cast<size_t>(j)]));
    FpMatrix rad = radicalOfSCA(S);
    return radEnds_.emplace(X.get(), std::move(rad)).first->second;
}

ComplexPtr HomCache::intern(const ProjComplex& Z) {
    std::string key = summandKey(Z);
    auto it = interned_.find(key);
    if (it != interned_.end())
        return it->second;
    auto ptr = std::make_shared<ProjComplex>(Z);
    interned_[key] = ptr;
    return ptr;
}

namespace {

/// Chosen classes of Hom(X, N_j) (left) or Hom(N_j, X) (right) modulo
/// radical factorizations through add(N).
std::vector<std::vector<FpVector>> approximationQuotients(const ComplexPtr& X,
                                                          const std::vector<ComplexPtr>& N,
                                                          HomCache& cache, bool left) {
    const BoundQuiverAlgebra& A = *X->A;
    std::vector<std::vector<FpVector>> out(N.size());
    for (size_t j = 0; j < N.size(); ++j) {
        const HomSpace& Hj = left ? cache.get(X, N[j]) : cache.get(N[j], X);
        const Eigen::Index d = Hj.dimension();
        if (d == 0)
            continue;
        std::vector<FpVector> radRows;
        for (size_t l = 0; l < N.size(); ++l) {
            const HomSpace& Hl = left ? cache.get(X, N[l]) : cache.get(N[l], X);
            if (Hl.dimension() == 0)
                continue;
            std::vector<ChainMap> connectors;
            if (l == j) {
                const FpMatrix& rad = cache.radEnd(N[j]);
                const HomSpace& E = cache.get(N[j], N[j]);
                for (Eigen::Index r = 0; r < rad.rows(); ++r)
                    connectors.push_back(E.fromClass(rad.row(r).transpose()));
            } else {
                const HomSpace& C = left ? cache.get(N[l], N[j]) : cache.get(N[j], N[l]);
                for (Eigen::Index r = 0; r < C.dimension(); ++r)
                    connectors.push_back(C.rep(r));
            }
            for (const auto& conn : connectors) {
                for (Eigen::Index r = 0; r < Hl.dimension(); ++r) {
                    ChainMap base = Hl.rep(r);
                    ChainMap comp = left ? composeMaps(conn, base) : composeMaps(base, conn);
                    radRows.push_back(Hj.classOf(comp));
                }
            }
        }
        FpMatrix radMat = fpZeros(static_cast<Eigen::Index>(radRows.size()), d, A.p);
        for (size_t r = 0; r < radRows.size(); ++r)
            radMat.row(static_cast<Eigen::Index>(r)) = radRows[r].transpose();
        FpMatrix reps = quotientBasis(fpIdentity(d, A.p), rowBasis(radMat), A.p);
        for (Eigen::Index r = 0; r < reps.rows(); ++r)
            out[j].push_back(reps.row(r).transpose());
    }
    return out;
}

}  // namespace

Approximation minimalLeftApproximation(const ComplexPtr& X, const std::vector<ComplexPtr>& N,
                                       HomCache& cache, bool verify) {
    const BoundQuiverAlgebra& A = *X->A;
    auto quot = approximationQuotients(X, N, cache, true);

    Approximation ap;
    ap.domain = X;
    ap.multiplicities.assign(N.size(), 0);
    ProjComplex target;
    target.A = &A;
    std::vector<ChainMap> components;
    for (size_t j = 0; j < N.size(); ++j) {
        const HomSpace& Hj = cache.get(X, N[j]);
        for (const auto& cls : quot[j]) {
            ++ap.multiplicities[j];
            components.push_back(Hj.fromClass(cls));
            target = directSum(target, *N[j]);
        }
    }
    ap.target = std::make_shared<ProjComplex>(std::move(target));

    ChainMap f;
    f.X = X.get();
    f.Y = ap.target.get();
    for (int d = X->minDeg; d <= X->maxDeg(); ++d) {
        Eigen::Index rows = static_cast<Eigen::Index>(ap.target->compsAt(d).size());
        Eigen::Index cols = static_cast<Eigen::Index>(X->compsAt(d).size());
        f.mats.emplace_back(rows, cols, A);
    }
    {
        std::map<int, Eigen::Index> offsets;  // running row offset per degree
        for (const auto& comp : components) {
            const ProjComplex& Nj = *comp.Y;
            for (int d = X->minDeg; d <= X->maxDeg(); ++d) {
                Eigen::Index off = offsets.count(d) ? offsets[d] : 0;
                const ElemMatrix* m = comp.matAt(d);
                if (m && m->rows > 0) {
                    ElemMatrix& dst = f.mats[static_cast<size_t>(d - X->minDeg)];
                    for (Eigen::Index r = 0; r < m->rows; ++r)
                        for (Eigen::Index c = 0; c < m->cols; ++c)
                            dst.at(off + r, c) = m->at(r, c);
                }
                offsets[d] = off + static_cast<Eigen::Index>(Nj.compsAt(d).size());
            }
        }
    }
    ap.map = std::move(f);

    if (verify) {
        for (size_t j = 0; j < N.size(); ++j) {
            const HomSpace& Hj = cache.get(X, N[j]);
            if (Hj.dimension() == 0)
                continue;
            HomSpace fromTarget(*ap.target, *N[j], 0);
            FpMatrix image = fpZeros(fromTarget.dimension(), Hj.dimension(), A.p);
            for (Eigen::Index r = 0; r < fromTarget.dimension(); ++r)
                image.row(r) = Hj.classOf(composeMaps(fromTarget.rep(r), ap.map)).transpose();
            if (rank(image) != Hj.dimension())
                throw ComputationError("approximation: Hom(f, N) is not surjective");
        }
    }
    return ap;
}

Approximation minimalRightApproximation(const ComplexPtr& X, const std::vector<ComplexPtr>& N,
                                        HomCache& cache, bool verify) {
    const BoundQuiverAlgebra& A = *X->A;
    auto quot = approximationQuotients(X, N, cache, false);

    Approximation ap;
    ap.domain = X;
    ap.multiplicities.assign(N.size(), 0);
    ProjComplex target;
    target.A = &A;
    std::vector<ChainMap> components;  // maps N_j -> X
    for (size_t j = 0; j < N.size(); ++j) {
        const HomSpace& Hj = cache.get(N[j], X);
        for (const auto& cls : quot[j]) {
            ++ap.multiplicities[j];
            components.push_back(Hj.fromClass(cls));
            target = directSum(target, *N[j]);
        }
    }
    ap.target = std::make_shared<ProjComplex>(std::move(target));

    ChainMap g;
    g.X = ap.target.get();
    g.Y = X.get();
    for (int d = ap.target->minDeg; d <= ap.target->maxDeg(); ++d) {
        Eigen::Index rows = static_cast<Eigen::Index>(X->compsAt(d).size());
        Eigen::Index cols = static_cast<Eigen::Index>(ap.target->compsAt(d).size());
        g.mats.emplace_back(rows, cols, A);
    }
    {
        std::map<int, Eigen::Index> offsets;  // running column offset per degree
        for (const auto& comp : components) {
            const ProjComplex& Nj = *comp.X;
            for (int d = ap.target->minDeg; d <= ap.target->maxDeg(); ++d) {
                Eigen::Index off = offsets.count(d) ? offsets[d] : 0;
                const ElemMatrix* m = comp.matAt(d);
                if (m && m->cols > 0 && m->rows > 0) {
                    ElemMatrix& dst = g.mats[static_cast<size_t>(d - ap.target->minDeg)];
                    for (Eigen::Index r = 0; r < m->rows; ++r)
                        for (Eigen::Index c = 0; c < m->cols; ++c)
                            dst.at(r, off + c) = m->at(r, c);
                }
                offsets[d] = off + static_cast<Eigen::Index>(Nj.compsAt(d).size());
            }
        }
    }
    ap.map = std::move(g);

    if (verify) {
        for (size_t j = 0; j < N.size(); ++j) {
            const HomSpace& Hj = cache.get(N[j], X);
            if (Hj.dimension() == 0)
                continue;
            HomSpace toTarget(*N[j], *ap.target, 0);
            FpMatrix image = fpZeros(toTarget.dimension(), Hj.dimension(), A.p);
            for (Eigen::Index r = 0; r < toTarget.dimension(); ++r)
                image.row(r) = Hj.classOf(composeMaps(ap.map, toTarget.rep(r))).transpose();
            if (rank(image) != Hj.dimension())
                throw ComputationError("approximation: Hom(N, g) is not surjective");
        }
    }
    return ap;
}

namespace {

SiltingObject mutateImpl(const SiltingObject& T, const std::vector<size_t>& S, HomCache& cache,
                         const MutationOptions& opts, bool left) {
    if (S.empty())
        throw ComputationError("mutation: empty summand subset");
    std::set<size_t> sel(S.begin(), S.end());
    std::vector<ComplexPtr> complement;
    for (size_t k = 0; k < T.summands.size(); ++k)
        if (!sel.count(k))
            complement.push_back(T.summands[k]);

    SiltingObject out;
    out.summands = complement;
    for (size_t k : S) {
        const ComplexPtr& X = T.summands[k];
        ProjComplex Z;
        if (left) {
            Approximation ap = minimalLeftApproximation(X, complement, cache, opts.verifyApprox);
            Z = cone(ap.map);
        } else {
            Approximation ap = minimalRightApproximation(X, complement, cache, opts.verifyApprox);
            Z = minimize(shiftComplex(conePlain(ap.map), -1));
        }
        if (Z.empty() || Z.width() > opts.maxWindow)
            throw ComputationError("mutation: window overflow");
        out.summands.push_back(std::make_shared<ProjComplex>(std::move(Z)));
    }
    out.sortSummands();
    out.provenance = T.provenance;
    out.provenance.push_back(std::string(left ? "left" : "right") + " at {" + orbitLabel(T, S) +
                             "}");

    if (opts.verifyOrder) {
        const SiltingObject& hi = left ? T : out;
        const SiltingObject& lo = left ? out : T;
        if (!orderGe(hi, lo) || orderGe(lo, hi))
            throw ComputationError("mutation: strict order move failed");
    }
    return out;
}

}  // namespace

SiltingObject leftMutation(const SiltingObject& T, const std::vector<size_t>& S, HomCache& cache,
                           const MutationOptions& opts) {
    return mutateImpl(T, S, cache, opts, true);
}

SiltingObject rightMutation(const SiltingObject& T, const std::vector<size_t>& S, HomCache& cache,
                            const MutationOptions& opts) {
    return mutateImpl(T, S, cache, opts, false);
}

bool orderGe(const SiltingObject& M, const SiltingObject& N) {
    for (const auto& X : M.summands) {
        for (const auto& Y : N.summands) {
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

bool isTwoTermObject(const SiltingObject& T) {
    for (const auto& X : T.summands)
        if (X->minDeg < -1 || X->maxDeg() > 0)
            return false;
    return true;
}

namespace {

bool fitsTwoTerm(const ProjComplex& Z) { return Z.minDeg >= -1 && Z.maxDeg() <= 0; }

/// Left-else-right exchange of the summand set S, demanding two-term output.
ExchangeResult exchangeImpl(const SiltingObject& T, const std::vector<size_t>& S,
                            HomCache& cache) {
    ExchangeResult res;
    MutationOptions opts;
    opts.verifyOrder = false;
    opts.maxWindow = 4;
    for (bool left : {true, false}) {
        bool ok = true;
        SiltingObject cand;
        try {
            cand = left ? leftMutation(T, S, cache, opts) : rightMutation(T, S, cache, opts);
        } catch (const ComputationError&) {
            ok = false;
        }
        if (ok) {
            for (const auto& z : cand.summands)
                ok = ok && fitsTwoTerm(*z);
        }
        if (ok) {
            // intern mutated summands so complex identities are stable
            for (auto& z : cand.summands)
                z = cache.intern(*z);
            res.object = std::move(cand);
            res.usedLeft = left;
            return res;
        }
    }
    res.blocked = true;
    return res;
}

}  // namespace

ExchangeResult twoTermExchange(const SiltingObject& T, size_t k, HomCache& cache) {
    ExchangeResult res = exchangeImpl(T, {k}, cache);
    if (res.blocked)
        throw ComputationError("two_term_exchange: no two-term partner exists");
    return res;
}

std::vector<std::vector<size_t>> nuOrbitsOfSummands(const SiltingObject& T,
                                                    const NakayamaData& nd) {
    const size_t n = T.summands.size();
    std::map<std::string, size_t> byKey;
    for (size_t k = 0; k < n; ++k)
        byKey[summandKey(*T.summands[k])] = k;
    std::vector<int> image(n, -1);
    for (size_t k = 0; k < n; ++k) {
        std::vector<long long> g = gVector(*T.summands[k]);
        std::vector<long long> pg(g.size());
        for (size_t v = 0; v < g.size(); ++v)
            pg[static_cast<size_t>(nd.perm[v])] = g[v];
        auto it = byKey.find(gVectorKey(pg));
        if (it == byKey.end())
            throw ComputationError("nu_orbits: object is not nu-stable at the g-vector level");
        image[k] = static_cast<int>(it->second);
    }
    std::vector<std::vector<size_t>> orbits;
    std::vector<char> seen(n, 0);
    for (size_t k = 0; k < n; ++k) {
        if (seen[k])
            continue;
        std::vector<size_t> orbit;
        size_t cur = k;
        while (!seen[cur]) {
            seen[cur] = 1;
            orbit.push_back(cur);
            cur = static_cast<size_t>(image[cur]);
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    std::sort(orbits.begin(), orbits.end());
    return orbits;
}

SiltingObject nuStableOrbitMutation(const SiltingObject& T, const NakayamaData& nd,
                                    size_t orbitIndex, HomCache& cache,
                                    const MutationOptions& opts) {
    auto orbits = nuOrbitsOfSummands(T, nd);
    if (orbitIndex >= orbits.size())
        throw ComputationError("orbit mutation: orbit index out of range");
    SiltingObject out = leftMutation(T, orbits[orbitIndex], cache, opts);
    (void)nuOrbitsOfSummands(out, nd);  // result must again be nu-stable
    return out;
}

ExchangeResult nuOrbitExchange(const SiltingObject& T, const std::vector<size_t>& orbit,
                               HomCache& cache) {
    return exchangeImpl(T, orbit, cache);
}

namespace {

MutationGraphResult enumerateImpl(const BoundQuiverAlgebra& A, const NakayamaData* nd, int cutoff,
                                  bool verifyNodes, uint64_t seed) {
    MutationGraphResult res;
    res.cutoff = cutoff;
    HomCache cache;

    SiltingObject start = stalkSilting(A);
    for (auto& s : start.summands)
        s = cache.intern(*s);
    start.sortSummands();
    std::map<std::string, int> ids;
    ids[start.key()] = 0;
    res.nodes.push_back(start);
    std::deque<int> queue{0};

    auto verify = [&](const SiltingObject& T) {
        if (!verifyNodes || !nd)
            return;
        if (!isTilting(T.summands))
            throw VerificationFailure("nu-stable enumeration: node is not tilting");
        for (const auto& X : T.summands) {
            ProjComplex nuX = applyNu(*X, *nd);
            bool matched = false;
            for (const auto& Y : T.summands) {
                if (gVector(*Y) != gVector(nuX))
                    continue;
                matched = isIsomorphic(minimize(nuX), *Y, seed).isomorphic;
                break;
            }
            if (!matched)
                throw VerificationFailure("nu-stable enumeration: node is not nu-stable");
        }
    };
    verify(res.nodes[0]);

    bool truncated = false;
    while (!queue.empty()) {
        if (static_cast<int>(res.nodes.size()) >= cutoff) {
            truncated = true;
            break;
        }
        int u = queue.front();
        queue.pop_front();
        SiltingObject T = res.nodes[static_cast<size_t>(u)];

        std::vector<std::vector<size_t>> moves;
        if (nd) {
            moves = nuOrbitsOfSummands(T, *nd);
        } else {
            for (size_t k = 0; k < T.summands.size(); ++k)
                moves.push_back({k});
        }
        for (const auto& mv : moves) {
            ExchangeResult ex =
                nd ? nuOrbitExchange(T, mv, cache) : twoTermExchange(T, mv[0], cache);
            if (ex.blocked) {
                ++res.blockedCount;
                continue;
            }
            std::string key = ex.object.key();
            auto it = ids.find(key);
            int v;
            if (it == ids.end()) {
                v = static_cast<int>(res.nodes.size());
                ids[key] = v;
                verify(ex.object);
                res.nodes.push_back(ex.object);
                queue.push_back(v);
            } else {
                v = it->second;
            }
            res.edges.push_back({u, v, orbitLabel(T, mv), ex.usedLeft});
        }
    }
    res.complete = !truncated;
    return res;
}

}  // namespace

MutationGraphResult enumerateTwoTerm(const BoundQuiverAlgebra& A, int cutoff) {
    return enumerateImpl(A, nullptr, cutoff, false, 0);
}

MutationGraphResult enumerateTwoTermNuStable(const BoundQuiverAlgebra& A, const NakayamaData& nd,
                                             int cutoff, bool verifyNodes, uint64_t seed) {
    return enumerateImpl(A, &nd, cutoff, verifyNodes, seed);
}

HasseQuiver hasseQuiver(const MutationGraphResult& result) {
    if (!result.complete)
        throw ComputationError("hasse_quiver: partial result");
    HasseQuiver H;
    for (const auto& n : result.nodes)
        H.nodeKeys.push_back(n.key());
    std::set<std::pair<int, int>> seen;
    for (const auto& e : result.edges) {
        bool ge = orderGe(result.nodes[static_cast<size_t>(e.from)],
                          result.nodes[static_cast<size_t>(e.to)]);
        int from = ge ? e.from : e.to;
        int to = ge ? e.to : e.from;
        if (seen.count({from, to}))
            continue;
        seen.insert({from, to});
        H.arrows.push_back({from, to, e.label, true});
    }
    const size_t n = H.nodeKeys.size();
    std::vector<std::vector<int>> adj(n);
    std::vector<int> indeg(n, 0);
    for (const auto& e : H.arrows) {
        adj[static_cast<size_t>(e.from)].push_back(e.to);
        ++indeg[static_cast<size_t>(e.to)];
    }
    std::vector<int> stack;
    for (size_t v = 0; v < n; ++v)
        if (indeg[v] == 0)
            stack.push_back(static_cast<int>(v));
    size_t seenCount = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seenCount;
        for (int w : adj[static_cast<size_t>(v)])
            if (--indeg[static_cast<size_t>(w)] == 0)
                stack.push_back(w);
    }
    if (seenCount != n)
        throw VerificationFailure("hasse_quiver: oriented exchange graph has a cycle");
    return H;
}

}  // namespace qsilt
