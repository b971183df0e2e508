#pragma once

#include "qsilt/linalg.hpp"
#include "qsilt/quiver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qsilt {

/// Sparse coordinate vector over the normal basis of an algebra.
using SparseVec = std::vector<std::pair<int, Fp>>;

/// Bound quiver algebra KQ/I over F_p with an exact normal-form path basis.
///
/// The normal basis is chosen by eliminating the largest paths in the
/// shortest-then-lexicographic order, so bases and rewrite tables are
/// reproducible.  Conventions fixed here and used everywhere downstream:
/// paths compose left to right (wv = "w then v"); a path w : i -> j is the
/// morphism P(j) -> P(i) acting by left multiplication, so
/// Hom(P(i), P(j)) has basis pathBasis(j, i).
class BoundQuiverAlgebra {
public:
    Quiver quiver;
    std::vector<Relation> relations;
    uint64_t p = 0;

    std::vector<PathWord> basis;         // normal paths; vertices come first
    std::vector<int> basisSource;        // per basis path
    std::vector<int> basisTarget;
    int loewyLength = 0;                 // smallest L with every length-L path zero
    int capUsed = 0;                     // certified truncation bound (rad^capUsed = 0)

    static BoundQuiverAlgebra build(Quiver q, std::vector<Relation> rels, uint64_t p,
                                    int maxCap = 40);

    Eigen::Index dim() const { return static_cast<Eigen::Index>(basis.size()); }
    int vertexCount() const { return quiver.vertexCount(); }

    /// Index of the length-0 basis path at vertex i.
    int vertexBasisIndex(int i) const { return vertexBasis_[static_cast<size_t>(i)]; }

    /// Indices of normal paths i -> j (basis of e_i A e_j, left-to-right).
    const std::vector<int>& pathBasis(int i, int j) const {
        return byPair_[static_cast<size_t>(i * vertexCount() + j)];
    }
    /// Position of basis element k inside its pathBasis group.
    int posInPair(int k) const { return posInPair_[static_cast<size_t>(k)]; }

    /// Normal form of the product of two basis elements, precomputed.
    const SparseVec& productOfBasis(int i, int j) const {
        return products_[static_cast<size_t>(i) * basis.size() + static_cast<size_t>(j)];
    }

    FpVector multiply(const FpVector& x, const FpVector& y) const;
    FpVector unit() const;
    FpVector basisVec(int k) const;
    FpVector zeroVec() const { return fpZeroVec(dim(), p); }

    /// Matrix of left multiplication by z on the whole algebra.
    FpMatrix leftMultMatrix(const FpVector& z) const;
    FpMatrix rightMultMatrix(const FpVector& z) const;

    /// Left multiplication by z : c -> a as a map e_a A e_b -> e_c A e_b.
    /// Rows index pathBasis(c, b), columns pathBasis(a, b).
    FpMatrix leftMultOnPair(const FpVector& z, int c, int a, int b) const;
    /// Right multiplication by z : b -> d as a map e_a A e_b -> e_a A e_d.
    FpMatrix rightMultOnPair(const FpVector& z, int a, int b, int d) const;

    /// Restriction of a full coordinate vector to a path-basis group.
    FpVector restrictToPair(const FpVector& x, int i, int j) const;
    /// Embed group coordinates back into a full vector.
    FpVector expandFromPair(const FpVector& local, int i, int j) const;

    FpMatrix radicalBasis() const;            // rows: normal paths of length >= 1
    FpMatrix radicalPowerBasis(int k) const;  // row basis of rad^k
    /// Socle of P(i) = e_i A: rows are full coordinate vectors.
    FpMatrix socleOfProjective(int i) const;
    FpMatrix socleBasis() const;  // socle of A as a right module

    std::string pathToString(const PathWord& w) const;
    std::string elementToString(const FpVector& x) const;

    /// Evaluate a combination of paths to its normal form.
    FpVector evalRelation(const Relation& r) const;
    /// Normal form of an arbitrary composable path (zero if it vanishes).
    FpVector normalFormOfPath(const PathWord& w) const;

    /// Enumerated paths from i with nonzero normal form, every length.
    std::vector<PathWord> nonzeroPathsFrom(int i) const;

    bool isConnected() const;

private:
    std::vector<int> vertexBasis_;
    std::vector<int> posInPair_;
    std::vector<std::vector<int>> byPair_;
    std::vector<SparseVec> products_;
    std::vector<PathWord> allPaths_;
    std::vector<SparseVec> pathRewrite_;  // aligned with allPaths_
    std::unordered_map<std::string, int> pathIndex_;
    std::vector<int> nameRank_;

    static std::string encodePath(const PathWord& w);
    void finalize();
    friend struct AlgebraBuilder;
};

/// Labeled algebra automorphism acting by a vertex permutation on idempotents
/// and a compatible linear map on the normal basis.
struct AlgebraAutomorphism {
    std::vector<int> vertexPerm;  // i -> image vertex
    FpMatrix matrix;              // action on coordinates: x -> matrix * x
};

/// Automorphism from generator images; verifies relations map to zero and the
/// map is multiplicative and invertible.
AlgebraAutomorphism makeAutomorphism(const BoundQuiverAlgebra& A,
                                     const std::vector<int>& vertexPerm,
                                     const std::vector<FpVector>& arrowImages);

}  // namespace qsilt
