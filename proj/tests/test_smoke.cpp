#include "qsilt/algebra.hpp"

#include <cassert>
#include <cstdio>

using namespace qsilt;

int main() {
    // rref over F_5: [[1,2],[2,4]] -> [[1,2],[0,0]], rank 1
    {
        uint64_t p = 5;
        FpMatrix m = fpZeros(2, 2, p);
        m(0, 0) = Fp(1, p);
        m(0, 1) = Fp(2, p);
        m(1, 0) = Fp(2, p);
        m(1, 1) = Fp(4, p);
        RrefResult r = rref(m);
        assert(r.rank == 1);
        assert(r.mat(0, 0).v == 1 && r.mat(0, 1).v == 2);
        assert(r.mat(1, 0).v == 0 && r.mat(1, 1).v == 0);
    }
    // solve [[1,1]] x = [1] over F_7: x = (1,0), kernel dim 1
    {
        uint64_t p = 7;
        FpMatrix m = fpZeros(1, 2, p);
        m(0, 0) = Fp(1, p);
        m(0, 1) = Fp(1, p);
        FpVector b = fpZeroVec(1, p);
        b(0) = Fp(1, p);
        SolveResult s = solveLinear(m, b, p);
        assert(s.consistent && s.x(0).v == 1 && s.x(1).v == 0);
        assert(s.kernel.rows() == 1);
    }
    // primitive roots
    {
        assert(primitiveRootOfUnity(5, 2).v == 4);
        assert(primitiveRootOfUnity(13, 4).v == 5);
        assert(primitiveRootOfUnity(7, 1).v == 1);
    }
    // Example: Nakayama algebra with 2 simples, Loewy length 4
    {
        Quiver q;
        q.vertexLabels = {"1", "2"};
        q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
        uint64_t p = kDefaultPrime;
        Relation abab{{Fp(1, p), PathWord{0, {0, 1, 0, 1}}}};
        Relation baba{{Fp(1, p), PathWord{1, {1, 0, 1, 0}}}};
        BoundQuiverAlgebra A = BoundQuiverAlgebra::build(q, {abab, baba}, p);
        assert(A.dim() == 8);
        assert(A.loewyLength == 4);
        // basis: e1,e2,a,b,ab,ba,aba,bab
        assert(A.pathBasis(0, 1).size() == 2);  // a, aba
        FpVector a = A.normalFormOfPath(PathWord{0, {0}});
        FpVector b = A.normalFormOfPath(PathWord{1, {1}});
        FpVector ab = A.multiply(a, b);
        FpVector abab2 = A.multiply(ab, ab);
        for (Eigen::Index i = 0; i < A.dim(); ++i)
            assert(abab2(i).isZero());
        // soc P(1) is spanned by aba
        FpMatrix soc = A.socleOfProjective(0);
        assert(soc.rows() == 1);
    }
    // one vertex, no arrows
    {
        Quiver q;
        q.vertexLabels = {"v"};
        BoundQuiverAlgebra A = BoundQuiverAlgebra::build(q, {}, 101);
        assert(A.dim() == 1);
    }
    std::puts("smoke ok");
    return 0;
}
