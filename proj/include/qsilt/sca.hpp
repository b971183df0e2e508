#pragma once

#include "qsilt/algebra.hpp"

#include <random>
#include <string>
#include <vector>

namespace qsilt {

/// Finite-dimensional associative algebra given by a multiplication table on
/// an explicit basis, with distinguished orthogonal idempotents.  Carrier for
/// eAe, Gamma/J'', skew group algebras and End(T).
struct StructureConstantAlgebra {
    uint64_t p = 0;
    std::vector<std::string> labels;              // one per basis element
    std::vector<std::string> idempotentLabels;    // one per idempotent
    std::vector<FpVector> idempotents;            // coordinate vectors
    std::vector<std::vector<FpVector>> table;     // table[i][j] = b_i * b_j

    Eigen::Index dim() const { return static_cast<Eigen::Index>(table.size()); }
    FpVector zero() const { return fpZeroVec(dim(), p); }
    FpVector basis(size_t k) const;
    FpVector unit() const;
    FpVector multiply(const FpVector& x, const FpVector& y) const;
    FpMatrix leftMult(const FpVector& x) const;

    /// Exhaustive below the budget, seeded sampling above it.
    void verifyAssociativity(uint64_t seed = 0, size_t sampleBudget = 1000000) const;
    void verifyIdempotents() const;
};

/// Subalgebra e A e for e the sum of the vertex idempotents in E; basis is
/// the set of normal paths with both endpoints in E.
StructureConstantAlgebra idempotentSubalgebra(const BoundQuiverAlgebra& A,
                                              const std::vector<int>& E);

/// Full multiplication table of A itself (E = all vertices).
StructureConstantAlgebra tableOfAlgebra(const BoundQuiverAlgebra& A);

/// Radical as a row basis, by the trace-form kernel.  Exact for p > dim.
FpMatrix radicalOfSCA(const StructureConstantAlgebra& S);

struct GabrielPresentation {
    Quiver quiver;                       // vertices = idempotents of S
    Eigen::Index radDim = 0;
    Eigen::Index radSqDim = 0;
    std::vector<FpVector> arrowReps;     // one representative per arrow
    Eigen::Index pathAlgebraDim = -1;    // dim of KQ when Q is acyclic
    bool hereditaryCertificate = false;  // acyclic and dim S == dim KQ
};

/// Gabriel quiver of a basic algebra: arrow count i -> j equals
/// dim(f_i rad f_j / f_i rad^2 f_j) in the left-to-right sandwich.
GabrielPresentation gabrielPresentation(const StructureConstantAlgebra& S);

struct FrobeniusSearchResult {
    bool found = false;
    FpVector lambda;  // functional on the basis
    FpMatrix gram;    // gram(i,j) = lambda(b_i b_j)
};

/// Search for a Frobenius form: socle-dual candidate first, then seeded
/// random socle rescalings.  Nondegeneracy certifies self-injectivity.
FrobeniusSearchResult frobeniusFormSearch(const StructureConstantAlgebra& S,
                                          uint64_t seed = 0, int budget = 100);

}  // namespace qsilt
