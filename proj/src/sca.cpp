#include "qsilt/sca.hpp"

#include <algorithm>

namespace qsilt {

FpVector StructureConstantAlgebra::unit() const {
    FpVector u = zero();
    for (const auto& e : idempotents)
        u += e;
    return u;
}

FpVector StructureConstantAlgebra::basis(size_t k) const {
    FpVector b = zero();
    b(static_cast<Eigen::Index>(k)) = Fp::raw(1, p);
    return b;
}

FpVector StructureConstantAlgebra::multiply(const FpVector& x, const FpVector& y) const {
    FpVector out = zero();
    for (Eigen::Index i = 0; i < dim(); ++i) {
        if (x(i).isZero())
            continue;
        for (Eigen::Index j = 0; j < dim(); ++j) {
            if (y(j).isZero())
                continue;
            out += (x(i) * y(j)) * table[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    }
    return out;
}

FpMatrix StructureConstantAlgebra::leftMult(const FpVector& x) const {
    FpMatrix m = fpZeros(dim(), dim(), p);
    for (Eigen::Index j = 0; j < dim(); ++j) {
        FpVector col = zero();
        for (Eigen::Index i = 0; i < dim(); ++i)
            if (!x(i).isZero())
                col += x(i) * table[static_cast<size_t>(i)][static_cast<size_t>(j)];
        m.col(j) = col;
    }
    return m;
}

void StructureConstantAlgebra::verifyAssociativity(uint64_t seed, size_t sampleBudget) const {
    const size_t n = static_cast<size_t>(dim());
    auto check = [&](size_t i, size_t j, size_t k) {
        FpVector lhs = multiply(table[i][j], basis(k));
        FpVector rhs = multiply(basis(i), table[j][k]);
        if (!(lhs == rhs))
            throw ComputationError("structure constants: associativity fails on a basis triple");
    };
    if (n * n * n <= sampleBudget) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (size_t k = 0; k < n; ++k)
                    check(i, j, k);
    } else {
        std::mt19937_64 rng(seed ^ 0x5ca1ab1eULL);
        std::uniform_int_distribution<size_t> pick(0, n - 1);
        for (size_t t = 0; t < 2000; ++t)
            check(pick(rng), pick(rng), pick(rng));
    }
}

void StructureConstantAlgebra::verifyIdempotents() const {
    FpVector u = unit();
    for (size_t i = 0; i < idempotents.size(); ++i) {
        for (size_t j = 0; j < idempotents.size(); ++j) {
            FpVector prod = multiply(idempotents[i], idempotents[j]);
            FpVector expect = (i == j) ? idempotents[i] : zero();
            if (!(prod == expect))
                throw ComputationError("structure constants: idempotents not orthogonal");
        }
    }
    for (Eigen::Index j = 0; j < dim(); ++j) {
        FpVector lu = multiply(u, basis(static_cast<size_t>(j)));
        FpVector ru = multiply(basis(static_cast<size_t>(j)), u);
        if (!(lu == basis(static_cast<size_t>(j))) || !(ru == basis(static_cast<size_t>(j))))
            throw ComputationError("structure constants: idempotents do not sum to the identity");
    }
}

StructureConstantAlgebra idempotentSubalgebra(const BoundQuiverAlgebra& A,
                                              const std::vector<int>& E) {
    if (E.empty())
        throw ComputationError("idempotent_subalgebra: empty vertex set");
    std::vector<int> basisIdx;
    for (Eigen::Index k = 0; k < A.dim(); ++k) {
        int s = A.basisSource[static_cast<size_t>(k)];
        int t = A.basisTarget[static_cast<size_t>(k)];
        bool sIn = std::find(E.begin(), E.end(), s) != E.end();
        bool tIn = std::find(E.begin(), E.end(), t) != E.end();
        if (sIn && tIn)
            basisIdx.push_back(static_cast<int>(k));
    }
    StructureConstantAlgebra S;
    S.p = A.p;
    const size_t n = basisIdx.size();
    std::vector<int> posOf(static_cast<size_t>(A.dim()), -1);
    for (size_t k = 0; k < n; ++k) {
        posOf[static_cast<size_t>(basisIdx[k])] = static_cast<int>(k);
        S.labels.push_back(A.pathToString(A.basis[static_cast<size_t>(basisIdx[k])]));
    }
    S.table.assign(n, std::vector<FpVector>(n, fpZeroVec(static_cast<Eigen::Index>(n), A.p)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            // a product of paths with endpoints in E is a combination of
            // basis paths with endpoints in E, so the corner is closed
            for (const auto& [k, c] : A.productOfBasis(basisIdx[i], basisIdx[j])) {
                if (posOf[static_cast<size_t>(k)] < 0)
                    throw ComputationError("idempotent_subalgebra: product escapes the corner");
                S.table[i][j](posOf[static_cast<size_t>(k)]) = c;
            }
        }
    }
    for (int v : E) {
        int k = A.vertexBasisIndex(v);
        FpVector e = fpZeroVec(static_cast<Eigen::Index>(n), A.p);
        e(posOf[static_cast<size_t>(k)]) = Fp::raw(1, A.p);
        S.idempotents.push_back(e);
        S.idempotentLabels.push_back(A.quiver.vertexLabels[static_cast<size_t>(v)]);
    }
    S.verifyAssociativity();
    S.verifyIdempotents();
    return S;
}

StructureConstantAlgebra tableOfAlgebra(const BoundQuiverAlgebra& A) {
    std::vector<int> all;
    for (int v = 0; v < A.vertexCount(); ++v)
        all.push_back(v);
    return idempotentSubalgebra(A, all);
}

FpMatrix radicalOfSCA(const StructureConstantAlgebra& S) {
    const Eigen::Index n = S.dim();
    if (static_cast<uint64_t>(n) >= S.p)
        throw ComputationError("radical: field too small for the trace-form algorithm");
    // gram(i,j) = tr(L_{b_i b_j}); its kernel is rad S when p > dim S
    FpVector traces = fpZeroVec(n, S.p);
    for (Eigen::Index w = 0; w < n; ++w) {
        Fp t = Fp::raw(0, S.p);
        for (Eigen::Index g = 0; g < n; ++g)
            t += S.table[static_cast<size_t>(w)][static_cast<size_t>(g)](g);
        traces(w) = t;
    }
    FpMatrix gram = fpZeros(n, n, S.p);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            Fp acc = Fp::raw(0, S.p);
            const FpVector& prod = S.table[static_cast<size_t>(i)][static_cast<size_t>(j)];
            for (Eigen::Index w = 0; w < n; ++w)
                if (!prod(w).isZero())
                    acc += prod(w) * traces(w);
            gram(i, j) = acc;
        }
    return nullspaceBasis(gram, S.p);
}

GabrielPresentation gabrielPresentation(const StructureConstantAlgebra& S) {
    const Eigen::Index n = S.dim();
    const size_t k = S.idempotents.size();
    FpMatrix rad = radicalOfSCA(S);
    if (n - rad.rows() != static_cast<Eigen::Index>(k))
        throw ComputationError("gabriel_presentation: not basic");

    auto sandwich = [&](const FpMatrix& rows, size_t u, size_t v) {
        FpMatrix out = fpZeros(rows.rows(), n, S.p);
        for (Eigen::Index r = 0; r < rows.rows(); ++r) {
            FpVector x = rows.row(r).transpose();
            out.row(r) = S.multiply(S.multiply(S.idempotents[u], x), S.idempotents[v]).transpose();
        }
        return rowBasis(out);
    };
    // corners must be split local: dim f_u (S/rad) f_u = 1
    for (size_t u = 0; u < k; ++u) {
        FpMatrix cornerRad = sandwich(rad, u, u);
        FpMatrix corner = sandwich(fpIdentity(n, S.p), u, u);
        if (corner.rows() - cornerRad.rows() != 1)
            throw ComputationError("gabriel_presentation: not basic");
    }

    std::vector<FpVector> sqRows;
    for (Eigen::Index i = 0; i < rad.rows(); ++i)
        for (Eigen::Index j = 0; j < rad.rows(); ++j)
            sqRows.push_back(S.multiply(rad.row(i).transpose(), rad.row(j).transpose()));
    FpMatrix radSq = fpZeros(static_cast<Eigen::Index>(sqRows.size()), n, S.p);
    for (size_t i = 0; i < sqRows.size(); ++i)
        radSq.row(static_cast<Eigen::Index>(i)) = sqRows[i].transpose();
    radSq = rowBasis(radSq);

    GabrielPresentation out;
    out.radDim = rad.rows();
    out.radSqDim = radSq.rows();
    out.quiver.vertexLabels = S.idempotentLabels;
    for (size_t u = 0; u < k; ++u) {
        for (size_t v = 0; v < k; ++v) {
            FpMatrix top = sandwich(rad, u, v);
            FpMatrix bottom = sandwich(radSq, u, v);
            FpMatrix reps = quotientBasis(top, bottom, S.p);
            for (Eigen::Index r = 0; r < reps.rows(); ++r) {
                Quiver::Arrow a;
                a.name = "x" + std::to_string(out.quiver.arrows.size());
                a.source = static_cast<int>(u);
                a.target = static_cast<int>(v);
                out.quiver.arrows.push_back(a);
                out.arrowReps.push_back(reps.row(r).transpose());
            }
        }
    }

    // acyclic quivers admit a finite path count: the dimension of KQ
    const int V = static_cast<int>(k);
    std::vector<std::vector<int>> adj(static_cast<size_t>(V));
    std::vector<int> indeg(static_cast<size_t>(V), 0);
    for (const auto& a : out.quiver.arrows) {
        adj[static_cast<size_t>(a.source)].push_back(a.target);
        ++indeg[static_cast<size_t>(a.target)];
    }
    std::vector<int> order, stack;
    for (int v = 0; v < V; ++v)
        if (indeg[static_cast<size_t>(v)] == 0)
            stack.push_back(v);
    std::vector<int> indegWork = indeg;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int w : adj[static_cast<size_t>(v)])
            if (--indegWork[static_cast<size_t>(w)] == 0)
                stack.push_back(w);
    }
    if (static_cast<int>(order.size()) == V) {
        std::vector<long long> pathsFrom(static_cast<size_t>(V), 1);
        for (auto it = order.rbegin(); it != order.rend(); ++it)
            for (int w : adj[static_cast<size_t>(*it)])
                pathsFrom[static_cast<size_t>(*it)] += pathsFrom[static_cast<size_t>(w)];
        long long total = 0;
        for (int v = 0; v < V; ++v)
            total += pathsFrom[static_cast<size_t>(v)];
        out.pathAlgebraDim = total;
        out.hereditaryCertificate = (total == n);
    }
    return out;
}

FrobeniusSearchResult frobeniusFormSearch(const StructureConstantAlgebra& S, uint64_t seed,
                                          int budget) {
    FrobeniusSearchResult res;
    const Eigen::Index n = S.dim();
    FpMatrix rad = radicalOfSCA(S);
    // right socle {x : r x = 0 for all r in rad}; for rad = 0 the whole algebra
    FpMatrix soc;
    if (rad.rows() == 0) {
        soc = fpIdentity(n, S.p);
    } else {
        FpMatrix sys = fpZeros(rad.rows() * n, n, S.p);
        for (Eigen::Index r = 0; r < rad.rows(); ++r)
            sys.middleRows(r * n, n) = S.leftMult(rad.row(r).transpose());
        soc = nullspaceBasis(sys, S.p);
    }

    std::mt19937_64 rng(seed ^ 0xf0b0ULL);
    auto tryLambda = [&](const FpVector& lambda) -> bool {
        FpMatrix gram = fpZeros(n, n, S.p);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                Fp acc = Fp::raw(0, S.p);
                const FpVector& prod = S.table[static_cast<size_t>(i)][static_cast<size_t>(j)];
                for (Eigen::Index w = 0; w < n; ++w)
                    if (!prod(w).isZero())
                        acc += prod(w) * lambda(w);
                gram(i, j) = acc;
            }
        if (!isInvertible(gram))
            return false;
        res.found = true;
        res.lambda = lambda;
        res.gram = gram;
        return true;
    };

    // deterministic first: socle coordinates as functional coefficients
    FpVector lambda0 = fpZeroVec(n, S.p);
    for (Eigen::Index r = 0; r < soc.rows(); ++r)
        lambda0 += soc.row(r).transpose();
    if (tryLambda(lambda0))
        return res;
    for (int t = 0; t < budget; ++t) {
        FpVector lambda = fpZeroVec(n, S.p);
        for (Eigen::Index r = 0; r < soc.rows(); ++r)
            lambda += Fp::raw(1 + rng() % (S.p - 1), S.p) * soc.row(r).transpose();
        if (tryLambda(lambda))
            return res;
    }
    return res;
}

}  // namespace qsilt
