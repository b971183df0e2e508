#pragma once

#include "qsilt/complexes.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qsilt {

/// Basic silting object: pairwise non-isomorphic indecomposable summands,
/// canonically ordered by g-vector, with a replayable mutation provenance.
struct SiltingObject {
    std::vector<ComplexPtr> summands;
    std::vector<std::string> provenance;  // steps from the algebra stalk

    std::string key() const;  // sorted g-vector matrix
    void sortSummands();
};

SiltingObject stalkSilting(const BoundQuiverAlgebra& A);
SiltingObject shiftSilting(const SiltingObject& T, int k);

/// Shared Hom-space computations keyed by complex identity; also keeps the
/// interned complexes alive.  Interning is by summand g-vector, which is a
/// sound identity exactly in the two-term enumeration setting.
class HomCache {
public:
    const HomSpace& get(const ComplexPtr& X, const ComplexPtr& Y);
    /// Radical of End(X) in representative-class coordinates.
    const FpMatrix& radEnd(const ComplexPtr& X);
    ComplexPtr intern(const ProjComplex& Z);

private:
    std::map<std::pair<const ProjComplex*, const ProjComplex*>, std::unique_ptr<HomSpace>> homs_;
    std::map<const ProjComplex*, FpMatrix> radEnds_;
    std::map<std::string, ComplexPtr> interned_;
    std::vector<ComplexPtr> keepAlive_;
};

struct Approximation {
    ComplexPtr domain;                         // X
    std::shared_ptr<ProjComplex> target;       // N' in add(N)
    ChainMap map;                              // X -> N' (left) or N' -> X (right)
    std::vector<Eigen::Index> multiplicities;  // copies of each N_j in N'
};

/// Minimal left add(N)-approximation of X; multiplicity of N_j equals the
/// dimension of Hom(X, N_j) modulo radical compositions through add(N).
Approximation minimalLeftApproximation(const ComplexPtr& X, const std::vector<ComplexPtr>& N,
                                       HomCache& cache, bool verify = false);
Approximation minimalRightApproximation(const ComplexPtr& X, const std::vector<ComplexPtr>& N,
                                        HomCache& cache, bool verify = false);

struct MutationOptions {
    int maxWindow = 6;
    bool verifyOrder = true;     // strict order move across the mutation
    bool verifyApprox = false;   // surjectivity of Hom(f, N)
    uint64_t seed = 0;
};

/// Left mutation at the summand subset S (indices into T.summands); each
/// member is replaced by the minimized cone of its approximation into the
/// complement.
SiltingObject leftMutation(const SiltingObject& T, const std::vector<size_t>& S, HomCache& cache,
                           const MutationOptions& opts = {});
SiltingObject rightMutation(const SiltingObject& T, const std::vector<size_t>& S, HomCache& cache,
                            const MutationOptions& opts = {});

/// M >= N in the silting order: Hom(M, N[i]) = 0 for all i > 0.
bool orderGe(const SiltingObject& M, const SiltingObject& N);

bool isTwoTermObject(const SiltingObject& T);

struct ExchangeResult {
    SiltingObject object;
    bool usedLeft = false;
    bool blocked = false;
};

/// The unique two-term silting partner at summand k: left mutation when the
/// result stays two-term, otherwise right mutation.
ExchangeResult twoTermExchange(const SiltingObject& T, size_t k, HomCache& cache);

/// nu-orbits of the summands, matched through permuted g-vectors.
std::vector<std::vector<size_t>> nuOrbitsOfSummands(const SiltingObject& T,
                                                    const NakayamaData& nd);

/// Mutation at a whole <nu>-orbit of summands (a minimal nu-stable summand).
SiltingObject nuStableOrbitMutation(const SiltingObject& T, const NakayamaData& nd,
                                    size_t orbitIndex, HomCache& cache,
                                    const MutationOptions& opts = {});

/// Orbit exchange inside the two-term window; blocked when neither side
/// stays two-term.
ExchangeResult nuOrbitExchange(const SiltingObject& T, const std::vector<size_t>& orbit,
                               HomCache& cache);

struct MutationEdge {
    int from = 0;
    int to = 0;
    std::string label;       // mutated summand/orbit as g-vector rows
    bool leftFromParent = true;
};

struct MutationGraphResult {
    std::vector<SiltingObject> nodes;
    std::vector<MutationEdge> edges;
    bool complete = false;
    int cutoff = 0;
    int blockedCount = 0;  // orbit exchanges leaving the window on both sides
};

MutationGraphResult enumerateTwoTerm(const BoundQuiverAlgebra& A, int cutoff = 2000);

/// BFS over nu-stable orbit exchanges; every node is verified nu-stable and
/// tilting when `verifyNodes` is set.
MutationGraphResult enumerateTwoTermNuStable(const BoundQuiverAlgebra& A, const NakayamaData& nd,
                                             int cutoff = 2000, bool verifyNodes = true,
                                             uint64_t seed = 0);

struct HasseQuiver {
    std::vector<std::string> nodeKeys;
    std::vector<MutationEdge> arrows;  // oriented by the silting order
};

/// Cover-relation quiver of a complete enumeration; arrows oriented by
/// order_ge, verified acyclic.
HasseQuiver hasseQuiver(const MutationGraphResult& result);

}  // namespace qsilt
