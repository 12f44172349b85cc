#pragma once

#include "ceq/profile.hpp"
#include "ceq/rational.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <unordered_map>
#include <vector>

namespace ceq {

/// A subset of the vertices of the n-cube, backed by a bitset over all 2^n
/// codes. Iteration is always in ascending code order.
class VertexSet {
public:
    explicit VertexSet(int n);
    static VertexSet full(int n);
    static VertexSet of(int n, std::initializer_list<std::uint64_t> codes);

    int dimension() const { return n_; }
    std::uint64_t universe_size() const { return std::uint64_t{1} << n_; }

    bool contains(Profile s) const;
    void insert(Profile s);
    void erase(Profile s);

    std::uint64_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    /// Smallest member code. Throws on an empty set.
    Profile min_element() const;

    std::vector<Profile> to_vector() const;

    template <typename F>
    void for_each(F&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int b = std::countr_zero(bits);
                fn(Profile(static_cast<std::uint64_t>(w) * 64 + static_cast<std::uint64_t>(b)));
                bits &= bits - 1;
            }
        }
    }

    bool operator==(const VertexSet& other) const;

private:
    int n_;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

/// The n neighbors s¬1 ... s¬n of s, in player order.
std::vector<Profile> neighbors(Profile s, int n);

/// Connected components of V \ removed under hypercube adjacency, sorted by
/// (size descending, minimum member code ascending). BFS explores vertices in
/// ascending code order and coordinates in ascending order, so the result is
/// fully deterministic.
std::vector<VertexSet> components(int n, const VertexSet& removed);

/// First component of components(n, removed). Throws if removed covers V.
VertexSet largest_component(int n, const VertexSet& removed);

/// BFS tree of the subgraph induced by `vertices`, rooted at `root`.
struct SpanningTree {
    struct Edge {
        Profile parent;
        int coord;  // the coordinate in which child and parent differ
    };

    Profile root;
    std::unordered_map<std::uint64_t, Edge> parents;  // keyed by child code
    /// All vertices of the tree with every child listed before its parent
    /// (reverse BFS order); the root is last. This is the schedule for
    /// leaf-to-root passes.
    std::vector<Profile> order;

    const Edge* parent_of(Profile s) const {
        auto it = parents.find(s.code());
        return it == parents.end() ? nullptr : &it->second;
    }
};

/// Throws if some vertex of `vertices` is unreachable from `root` inside the
/// induced subgraph, naming the first unreachable vertex.
SpanningTree spanning_tree(const VertexSet& vertices, Profile root, int n);

/// Number of hypercube edges with one endpoint in S and the other in T.
/// S and T must be disjoint.
std::uint64_t edge_boundary(int n, const VertexSet& S, const VertexSet& T);

/// Exact edge expansion h of the n-cube, by brute force over all nonempty
/// proper vertex subsets. Only feasible for n <= 4; larger n throws and
/// points callers at cheeger_lower_bound.
Rational edge_expansion_exact(int n);

/// The spectral lower bound 1/n on the edge expansion of the n-cube
/// (Cheeger's inequality applied to the cube's second eigenvalue).
Rational cheeger_lower_bound(int n);

/// True iff the largest connected component of V \ removed has more than
/// 2^(n-1) vertices. For |removed| < 2^n/(n^2+1) this always holds.
bool giant_component_holds(int n, const VertexSet& removed);

}  // namespace ceq
