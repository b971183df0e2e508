#pragma once

#include "qsilt/algebra.hpp"

#include <vector>

namespace qsilt {

/// Frobenius form, Nakayama permutation and automorphism of a basic
/// self-injective algebra.  The permutation convention is
/// nu P(i) = P(perm[i]) with nu = D Hom(-, A); the socle rule is
/// soc P(perm[i]) = S(i), i.e. socPerm is the inverse of perm.
struct NakayamaData {
    FpVector lambda;          // Frobenius functional on the normal basis
    FpMatrix gram;            // gram(i,j) = lambda(b_i b_j), invertible
    FpMatrix rawAut;          // v with lambda(ab) = lambda(b v(a))
    std::vector<int> perm;    // pi
    std::vector<int> socPerm; // sigma = pi^{-1}
    AlgebraAutomorphism nu;   // inner-normalized v: nu.matrix(e_i) = e_{pi(i)} exactly
};

struct SelfInjectivityReport {
    bool selfInjective = false;
    int witnessVertex = -1;       // vertex violating the socle/iso conditions
    bool inconclusiveIso = false; // intertwiner retries exhausted somewhere
    std::vector<int> socPerm;     // sigma with soc P(i) = S(sigma(i))
};

/// Socle-simplicity, the socle permutation, and an explicit module
/// isomorphism P(i) = D(A e_{sigma(i)}) per vertex.
SelfInjectivityReport isSelfInjective(const BoundQuiverAlgebra& A, uint64_t seed = 0);

/// Frobenius functional with invertible Gram matrix; deterministic socle-dual
/// candidate first, then seeded socle rescalings.  Throws "no form found".
FpVector frobeniusForm(const BoundQuiverAlgebra& A, uint64_t seed = 0, int budget = 100);

/// Nakayama automorphism from a nondegenerate form, with the permutation
/// cross-checked against the socle data.
NakayamaData nakayamaAutomorphism(const BoundQuiverAlgebra& A, const FpVector& lambda);

/// Full pipeline: self-injectivity check, form search, automorphism.
NakayamaData nakayamaData(const BoundQuiverAlgebra& A, uint64_t seed = 0);

struct NuOrbits {
    std::vector<std::vector<int>> orbits;
    bool weaklySymmetric = false;
    bool nuCyclic = false;
};
NuOrbits nuOrbitPartition(const std::vector<int>& perm);

}  // namespace qsilt
