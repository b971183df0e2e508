#pragma once

#include "qsilt/algebra.hpp"
#include "qsilt/selfinjective.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace qsilt {

/// Matrix with entries in a bound quiver algebra (full coordinate vectors).
struct ElemMatrix {
    Eigen::Index rows = 0, cols = 0;
    std::vector<FpVector> entries;  // row-major

    ElemMatrix() = default;
    ElemMatrix(Eigen::Index r, Eigen::Index c, const BoundQuiverAlgebra& A)
        : rows(r), cols(c), entries(static_cast<size_t>(r * c), A.zeroVec()) {}
    FpVector& at(Eigen::Index r, Eigen::Index c) {
        return entries[static_cast<size_t>(r * cols + c)];
    }
    const FpVector& at(Eigen::Index r, Eigen::Index c) const {
        return entries[static_cast<size_t>(r * cols + c)];
    }
};

/// Bounded complex of projectives; degree d summands are P(comps[d - minDeg])
/// and diffs[k] maps degree minDeg+k to degree minDeg+k+1.  An entry from the
/// P(i)-slot to the P(j)-slot is a path j -> i acting by left multiplication.
struct ProjComplex {
    const BoundQuiverAlgebra* A = nullptr;
    int minDeg = 0;
    std::vector<std::vector<int>> comps;
    std::vector<ElemMatrix> diffs;

    bool empty() const { return comps.empty(); }
    int width() const { return comps.empty() ? 0 : static_cast<int>(comps.size()) - 1; }
    int maxDeg() const { return minDeg + width(); }
    const std::vector<int>& compsAt(int deg) const;
    bool hasDeg(int deg) const { return !comps.empty() && deg >= minDeg && deg <= maxDeg(); }
    void checkDsquared() const;
    void trim();  // drop empty boundary degrees
};

using ComplexPtr = std::shared_ptr<const ProjComplex>;

/// Degreewise map between two complexes (no commuting requirement by itself).
struct ChainMap {
    const ProjComplex* X = nullptr;
    const ProjComplex* Y = nullptr;
    std::vector<ElemMatrix> mats;  // indexed by X-degree offset: X_{minDeg+k} -> Y_{same degree}

    const ElemMatrix* matAt(int deg) const;
};

ProjComplex stalkComplex(const BoundQuiverAlgebra& A, int vertex, int degree = 0);
ProjComplex shiftComplex(const ProjComplex& X, int k);
ProjComplex directSum(const ProjComplex& X, const ProjComplex& Y);
ProjComplex conePlain(const ChainMap& f);   // mapping cone, not minimized
ProjComplex cone(const ChainMap& f);        // minimized mapping cone
ProjComplex minimize(ProjComplex X);
ProjComplex applyAutomorphismToComplex(const ProjComplex& X, const AlgebraAutomorphism& aut);
ProjComplex applyNu(const ProjComplex& X, const NakayamaData& nd);

std::vector<long long> gVector(const ProjComplex& X);
std::string gVectorKey(const std::vector<long long>& g);

ChainMap composeMaps(const ChainMap& f, const ChainMap& g);  // f after g
ChainMap identityMap(const ProjComplex& X);

bool entryIsUnit(const BoundQuiverAlgebra& A, const FpVector& z, int i, int j);

/// Hom space X -> Y[shift] modulo homotopy, with explicit representatives
/// and a reducer for expressing arbitrary chain maps in those classes.
class HomSpace {
public:
    HomSpace() = default;
    HomSpace(const ProjComplex& X, const ProjComplex& Y, int shift);

    Eigen::Index dimension() const { return dim_; }
    Eigen::Index homotopyDim() const { return boundary_.rows(); }
    Eigen::Index cycleDim() const { return cycles_.rows(); }

    /// Chain-map representative of class k (as a map X -> shifted Y).
    ChainMap rep(Eigen::Index k) const;
    const ProjComplex& shiftedCodomain() const { return *Yk_; }

    /// Class coordinates of an arbitrary chain map X -> Y[shift] in the
    /// chosen representative basis; throws if the map does not commute.
    FpVector classOf(const ChainMap& f) const;
    FpVector classOfCoords(const FpVector& coords) const;

    FpVector coordsOf(const ChainMap& f) const;
    ChainMap fromCoords(const FpVector& coords) const;
    /// Chain map realizing a combination of the class representatives.
    ChainMap fromClass(const FpVector& cls) const;

    /// Random class-representative with seeded coefficients.
    ChainMap randomMap(std::mt19937_64& rng) const;

private:
    struct Block {
        int degOffset;      // index into X->comps
        Eigen::Index row;   // Y[k] summand
        Eigen::Index col;   // X summand
        int pairSource;     // hom group of the entry: pathBasis(pairSource, pairTarget)
        int pairTarget;
        Eigen::Index offset;
        Eigen::Index len;
    };

    const ProjComplex* X_ = nullptr;
    std::shared_ptr<ProjComplex> Yk_;
    uint64_t p_ = 0;
    Eigen::Index total_ = 0;  // raw unknown count
    std::vector<Block> blocks_;
    FpMatrix cycles_;      // rows: basis of chain maps
    FpMatrix boundary_;    // rows: basis of null-homotopic maps
    FpMatrix repRows_;     // rows: chosen class representatives
    RowSpanSolver reducer_;  // over [repRows_; boundary_]
    Eigen::Index dim_ = 0;

    friend class EndAlgebraBuilder;
};

HomSpace homSpace(const ProjComplex& X, const ProjComplex& Y, int shift);
Eigen::Index homDim(const ProjComplex& X, const ProjComplex& Y, int shift);

/// Zero-object test in the homotopy category: the minimal form is empty.
bool isContractible(const ProjComplex& X);

struct IsoResult {
    bool isomorphic = false;
    bool inconclusive = false;  // dimension data matched but no witness found
};
IsoResult isIsomorphic(const ProjComplex& X, const ProjComplex& Y, uint64_t seed = 0,
                       int retries = 20);

/// Hom(X, Y[i]) = 0 for all i > 0 over every ordered pair of summands.
bool isPresilting(const std::vector<ComplexPtr>& T);
/// Presilting and Hom in all negative shifts vanish as well.
bool isTilting(const std::vector<ComplexPtr>& T);

/// Local endomorphism ring test: dim End/rad = 1.  Split failure is reported
/// separately from a decomposable verdict.
struct LocalEndReport {
    bool local = false;
    bool possiblyNonSplit = false;
    Eigen::Index endDim = 0;
    Eigen::Index topDim = 0;
};
LocalEndReport localEndReport(const ProjComplex& X);

struct StructureConstantAlgebra;

/// End algebra of a list of pairwise non-isomorphic indecomposable
/// complexes, with composition as multiplication (x*y = "y then x").
StructureConstantAlgebra endAlgebra(const std::vector<ComplexPtr>& T, bool checkLocal = true);

/// Hom-space dimension from one list to a single complex.
Eigen::Index homDimFromList(const std::vector<ComplexPtr>& T, const ProjComplex& Y);

}  // namespace qsilt
