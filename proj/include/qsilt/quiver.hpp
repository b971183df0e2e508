#pragma once

#include "qsilt/fp.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace qsilt {

struct Quiver {
    struct Arrow {
        std::string name;
        int source = 0;
        int target = 0;
    };

    std::vector<std::string> vertexLabels;
    std::vector<Arrow> arrows;

    int vertexCount() const { return static_cast<int>(vertexLabels.size()); }
    int arrowCount() const { return static_cast<int>(arrows.size()); }

    int vertexIndex(const std::string& label) const {
        for (int i = 0; i < vertexCount(); ++i)
            if (vertexLabels[static_cast<size_t>(i)] == label)
                return i;
        throw ComputationError("quiver: unknown vertex '" + label + "'");
    }
    int arrowIndex(const std::string& name) const {
        for (int i = 0; i < arrowCount(); ++i)
            if (arrows[static_cast<size_t>(i)].name == name)
                return i;
        throw ComputationError("quiver: unknown arrow '" + name + "'");
    }

    void validate() const {
        std::map<std::string, int> seenV;
        for (const auto& v : vertexLabels)
            if (++seenV[v] > 1)
                throw ComputationError("quiver: duplicate vertex label '" + v + "'");
        std::map<std::string, int> seenA;
        for (const auto& a : arrows) {
            if (++seenA[a.name] > 1)
                throw ComputationError("quiver: duplicate arrow name '" + a.name + "'");
            if (a.source < 0 || a.source >= vertexCount() || a.target < 0 || a.target >= vertexCount())
                throw ComputationError("quiver: arrow '" + a.name + "' has undeclared endpoint");
        }
    }

    /// Rank of each arrow in the lexicographic order of arrow names; used for
    /// the deterministic shortest-then-lex normal form.
    std::vector<int> nameRanks() const {
        std::vector<int> idx(arrows.size());
        for (size_t i = 0; i < arrows.size(); ++i)
            idx[i] = static_cast<int>(i);
        std::vector<int> rank(arrows.size());
        std::vector<int> order = idx;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return arrows[static_cast<size_t>(a)].name < arrows[static_cast<size_t>(b)].name;
        });
        for (size_t r = 0; r < order.size(); ++r)
            rank[static_cast<size_t>(order[r])] = static_cast<int>(r);
        return rank;
    }

    bool hasMultipleArrow() const {
        std::map<std::pair<int, int>, int> counts;
        for (const auto& a : arrows)
            if (++counts[{a.source, a.target}] > 1)
                return true;
        return false;
    }
};

/// A path in a quiver: a composable arrow sequence anchored at a source
/// vertex.  Paths compose left to right: wv means "w then v".
struct PathWord {
    int source = 0;
    std::vector<int> arrows;

    int length() const { return static_cast<int>(arrows.size()); }
    int target(const Quiver& q) const {
        return arrows.empty() ? source : q.arrows[static_cast<size_t>(arrows.back())].target;
    }

    friend bool operator==(const PathWord& a, const PathWord& b) {
        return a.source == b.source && a.arrows == b.arrows;
    }
};

/// One term of a relation: coefficient times a path.
struct RelationTerm {
    Fp coeff;
    PathWord path;
};
using Relation = std::vector<RelationTerm>;

}  // namespace qsilt
