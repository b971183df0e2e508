#include "qsilt/selfinjective.hpp"

#include <random>

namespace qsilt {

namespace {

/// Supporting target vertex of a socle generator; -1 if the support mixes
/// targets (the socle is then not simple).
int socleTargetVertex(const BoundQuiverAlgebra& A, const FpVector& gen) {
    int t = -1;
    for (Eigen::Index k = 0; k < A.dim(); ++k) {
        if (gen(k).isZero())
            continue;
        int tk = A.basisTarget[static_cast<size_t>(k)];
        if (t < 0)
            t = tk;
        else if (t != tk)
            return -1;
    }
    return t;
}

}  // namespace

SelfInjectivityReport isSelfInjective(const BoundQuiverAlgebra& A, uint64_t seed) {
    SelfInjectivityReport rep;
    const int V = A.vertexCount();
    rep.socPerm.assign(static_cast<size_t>(V), -1);
    std::vector<int> hit(static_cast<size_t>(V), 0);

    for (int i = 0; i < V; ++i) {
        FpMatrix soc = A.socleOfProjective(i);
        if (soc.rows() != 1) {
            rep.witnessVertex = i;
            return rep;
        }
        int j = socleTargetVertex(A, soc.row(0).transpose());
        if (j < 0) {
            rep.witnessVertex = i;
            return rep;
        }
        rep.socPerm[static_cast<size_t>(i)] = j;
        ++hit[static_cast<size_t>(j)];
    }
    for (int j = 0; j < V; ++j) {
        if (hit[static_cast<size_t>(j)] != 1) {
            rep.witnessVertex = j;
            return rep;
        }
    }

    // Module isomorphism P(i) = D(A e_j) for j = sigma(i).  The commuting
    // system for an intertwiner B(y, x) has exact solution set
    // {B_f(y, x) = f(yx) : f a functional on e_i A e_j}; an isomorphism is
    // an f whose pairing matrix on the bases is invertible.
    std::mt19937_64 rng(seed ^ 0x5e1f1ULL);
    for (int i = 0; i < V; ++i) {
        int j = rep.socPerm[static_cast<size_t>(i)];
        std::vector<int> projIdx, injIdx;
        for (Eigen::Index k = 0; k < A.dim(); ++k) {
            if (A.basisSource[static_cast<size_t>(k)] == i)
                projIdx.push_back(static_cast<int>(k));
            if (A.basisTarget[static_cast<size_t>(k)] == j)
                injIdx.push_back(static_cast<int>(k));
        }
        if (projIdx.size() != injIdx.size()) {
            rep.witnessVertex = i;
            return rep;
        }
        const auto& corner = A.pathBasis(i, j);
        bool found = false;
        for (int t = 0; t < 20 && !found; ++t) {
            FpVector f = fpZeroVec(static_cast<Eigen::Index>(corner.size()), A.p);
            for (Eigen::Index c = 0; c < f.size(); ++c)
                f(c) = (t == 0) ? Fp::raw(1, A.p) : Fp::raw(1 + rng() % (A.p - 1), A.p);
            FpMatrix pairing = fpZeros(static_cast<Eigen::Index>(projIdx.size()),
                                       static_cast<Eigen::Index>(injIdx.size()), A.p);
            for (size_t r = 0; r < projIdx.size(); ++r) {
                for (size_t c = 0; c < injIdx.size(); ++c) {
                    Fp acc = Fp::raw(0, A.p);
                    for (const auto& [k, v] : A.productOfBasis(projIdx[r], injIdx[c]))
                        acc += v * f(A.posInPair(k));
                    pairing(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
                }
            }
            found = isInvertible(pairing);
        }
        if (!found) {
            rep.inconclusiveIso = true;
            rep.witnessVertex = i;
            return rep;
        }
    }
    rep.selfInjective = true;
    return rep;
}

FpVector frobeniusForm(const BoundQuiverAlgebra& A, uint64_t seed, int budget) {
    const int V = A.vertexCount();
    std::vector<FpVector> socGen;
    for (int i = 0; i < V; ++i) {
        FpMatrix soc = A.socleOfProjective(i);
        for (Eigen::Index r = 0; r < soc.rows(); ++r)
            socGen.push_back(soc.row(r).transpose());
    }

    auto gramOf = [&](const FpVector& lambda) {
        FpMatrix gram = fpZeros(A.dim(), A.dim(), A.p);
        for (Eigen::Index i = 0; i < A.dim(); ++i)
            for (Eigen::Index j = 0; j < A.dim(); ++j) {
                Fp acc = Fp::raw(0, A.p);
                for (const auto& [k, v] : A.productOfBasis(static_cast<int>(i), static_cast<int>(j)))
                    acc += v * lambda(k);
                gram(i, j) = acc;
            }
        return gram;
    };

    std::mt19937_64 rng(seed ^ 0xfab0ULL);
    for (int t = 0; t <= budget; ++t) {
        FpVector lambda = A.zeroVec();
        for (const auto& s : socGen)
            lambda += (t == 0 ? Fp::raw(1, A.p) : Fp::raw(1 + rng() % (A.p - 1), A.p)) * s;
        if (isInvertible(gramOf(lambda)))
            return lambda;
    }
    throw ComputationError("frobenius_form: no form found");
}

NakayamaData nakayamaAutomorphism(const BoundQuiverAlgebra& A, const FpVector& lambda) {
    NakayamaData nd;
    nd.lambda = lambda;
    const Eigen::Index n = A.dim();
    nd.gram = fpZeros(n, n, A.p);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            Fp acc = Fp::raw(0, A.p);
            for (const auto& [k, v] : A.productOfBasis(static_cast<int>(i), static_cast<int>(j)))
                acc += v * lambda(k);
            nd.gram(i, j) = acc;
        }
    if (!isInvertible(nd.gram))
        throw ComputationError("nakayama_automorphism: degenerate form");
    nd.rawAut = inverse(nd.gram, A.p) * nd.gram.transpose();

    if (!(FpVector(nd.rawAut * A.unit()) == A.unit()))
        throw ComputationError("automorphism check failed: not unital");

    // permutation from the idempotent images: v(e_i) = e_j + radical part
    const int V = A.vertexCount();
    nd.perm.assign(static_cast<size_t>(V), -1);
    for (int i = 0; i < V; ++i) {
        FpVector img = nd.rawAut * A.basisVec(A.vertexBasisIndex(i));
        int j = -1;
        for (int w = 0; w < V; ++w) {
            Fp c = img(A.vertexBasisIndex(w));
            if (c.isZero())
                continue;
            if (c.v != 1 || j >= 0)
                throw ComputationError("automorphism check failed: idempotent image malformed");
            j = w;
        }
        if (j < 0)
            throw ComputationError("automorphism check failed: idempotent image malformed");
        nd.perm[static_cast<size_t>(i)] = j;
    }

    // normalize by the inner automorphism u = sum e_{pi(k)} v(e_k), making
    // the idempotent images exact; the complex-relabeling functor needs that
    FpVector u = A.zeroVec();
    for (int k = 0; k < V; ++k) {
        FpVector ve = nd.rawAut * A.basisVec(A.vertexBasisIndex(k));
        u += A.multiply(A.basisVec(A.vertexBasisIndex(nd.perm[static_cast<size_t>(k)])), ve);
    }
    FpMatrix lu = A.leftMultMatrix(u);
    SolveResult inv = solveLinear(lu, A.unit(), A.p);
    if (!inv.consistent)
        throw ComputationError("automorphism check failed: inner normalizer not invertible");
    nd.nu.vertexPerm = nd.perm;
    nd.nu.matrix = lu * A.rightMultMatrix(inv.x) * nd.rawAut;
    for (int i = 0; i < V; ++i) {
        FpVector img = nd.nu.matrix * A.basisVec(A.vertexBasisIndex(i));
        if (!(img == A.basisVec(A.vertexBasisIndex(nd.perm[static_cast<size_t>(i)]))))
            throw ComputationError("automorphism check failed: normalization broken");
    }

    auto checkPair = [&](Eigen::Index i, Eigen::Index j, const FpMatrix& aut) {
        const SparseVec& prod = A.productOfBasis(static_cast<int>(i), static_cast<int>(j));
        FpVector lhs = A.zeroVec();
        for (const auto& [k, c] : prod)
            lhs += c * FpVector(aut.col(k));
        FpVector rhs = A.multiply(aut.col(i), aut.col(j));
        if (!(lhs == rhs))
            throw ComputationError("automorphism check failed: not multiplicative");
    };
    if (n <= 120) {
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                checkPair(i, j, nd.rawAut);
                checkPair(i, j, nd.nu.matrix);
            }
    } else {
        // generators x whole basis, then a seeded sample of full pairs
        std::vector<Eigen::Index> gens;
        for (int v = 0; v < V; ++v)
            gens.push_back(A.vertexBasisIndex(v));
        for (Eigen::Index k = 0; k < n; ++k)
            if (A.basis[static_cast<size_t>(k)].length() == 1)
                gens.push_back(k);
        for (Eigen::Index g : gens)
            for (Eigen::Index j = 0; j < n; ++j) {
                checkPair(g, j, nd.rawAut);
                checkPair(g, j, nd.nu.matrix);
            }
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
        for (int t = 0; t < 2000; ++t)
            checkPair(static_cast<Eigen::Index>(rng() % static_cast<uint64_t>(n)),
                      static_cast<Eigen::Index>(rng() % static_cast<uint64_t>(n)), nd.rawAut);
    }

    return nd;
}

NakayamaData nakayamaData(const BoundQuiverAlgebra& A, uint64_t seed) {
    SelfInjectivityReport rep = isSelfInjective(A, seed);
    if (!rep.selfInjective)
        throw ComputationError("nakayama_data: algebra is not self-injective (witness vertex " +
                               std::to_string(rep.witnessVertex) + ")");
    FpVector lambda = frobeniusForm(A, seed);
    NakayamaData nd = nakayamaAutomorphism(A, lambda);
    nd.socPerm = rep.socPerm;
    for (int i = 0; i < A.vertexCount(); ++i)
        if (nd.socPerm[static_cast<size_t>(nd.perm[static_cast<size_t>(i)])] != i)
            throw ComputationError("automorphism check failed: socle permutation mismatch");
    return nd;
}

NuOrbits nuOrbitPartition(const std::vector<int>& perm) {
    NuOrbits out;
    const int V = static_cast<int>(perm.size());
    std::vector<char> seen(static_cast<size_t>(V), 0);
    for (int i = 0; i < V; ++i) {
        if (seen[static_cast<size_t>(i)])
            continue;
        std::vector<int> orbit;
        int cur = i;
        while (!seen[static_cast<size_t>(cur)]) {
            seen[static_cast<size_t>(cur)] = 1;
            orbit.push_back(cur);
            cur = perm[static_cast<size_t>(cur)];
        }
        out.orbits.push_back(std::move(orbit));
    }
    out.weaklySymmetric = true;
    for (int i = 0; i < V; ++i)
        if (perm[static_cast<size_t>(i)] != i)
            out.weaklySymmetric = false;
    out.nuCyclic = (out.orbits.size() == 1);
    return out;
}

}  // namespace qsilt
