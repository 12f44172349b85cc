#include "ceq/hypercube.hpp"

#include "ceq/error.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace ceq {

VertexSet::VertexSet(int n) : n_(n) {
    if (n < 1 || n > 63) {
        throw Error("vertex set dimension must be in [1, 63], got " + std::to_string(n));
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    words_.assign((total + 63) / 64, 0);
}

VertexSet VertexSet::full(int n) {
    VertexSet v(n);
    const std::uint64_t total = v.universe_size();
    for (std::size_t w = 0; w < v.words_.size(); ++w) {
        const std::uint64_t base = static_cast<std::uint64_t>(w) * 64;
        const std::uint64_t in_word = std::min<std::uint64_t>(64, total - base);
        v.words_[w] = in_word == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << in_word) - 1;
    }
    v.count_ = total;
    return v;
}

VertexSet VertexSet::of(int n, std::initializer_list<std::uint64_t> codes) {
    VertexSet v(n);
    for (std::uint64_t c : codes) v.insert(Profile(c));
    return v;
}

bool VertexSet::contains(Profile s) const {
    const std::uint64_t c = s.code();
    if (c >= universe_size()) return false;
    return (words_[c / 64] >> (c % 64)) & 1;
}

void VertexSet::insert(Profile s) {
    const std::uint64_t c = s.code();
    if (c >= universe_size()) {
        throw Error("profile code " + std::to_string(c) + " out of range for n=" + std::to_string(n_));
    }
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    if (!(words_[c / 64] & mask)) {
        words_[c / 64] |= mask;
        ++count_;
    }
}

void VertexSet::erase(Profile s) {
    const std::uint64_t c = s.code();
    if (c >= universe_size()) return;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    if (words_[c / 64] & mask) {
        words_[c / 64] &= ~mask;
        --count_;
    }
}

Profile VertexSet::min_element() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (words_[w] != 0) {
            return Profile(static_cast<std::uint64_t>(w) * 64 +
                           static_cast<std::uint64_t>(std::countr_zero(words_[w])));
        }
    }
    throw Error("min_element of empty vertex set");
}

std::vector<Profile> VertexSet::to_vector() const {
    std::vector<Profile> out;
    out.reserve(count_);
    for_each([&](Profile s) { out.push_back(s); });
    return out;
}

bool VertexSet::operator==(const VertexSet& other) const {
    return n_ == other.n_ && words_ == other.words_;
}

std::vector<Profile> neighbors(Profile s, int n) {
    std::vector<Profile> out;
    out.reserve(n);
    for (int i = 1; i <= n; ++i) out.push_back(s.flip(i));
    return out;
}

std::vector<VertexSet> components(int n, const VertexSet& removed) {
    VertexSet seen(n);
    std::vector<VertexSet> comps;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t c = 0; c < total; ++c) {
        const Profile start(c);
        if (removed.contains(start) || seen.contains(start)) continue;
        VertexSet comp(n);
        std::deque<Profile> queue{start};
        seen.insert(start);
        comp.insert(start);
        while (!queue.empty()) {
            const Profile s = queue.front();
            queue.pop_front();
            for (int i = 1; i <= n; ++i) {
                const Profile t = s.flip(i);
                if (removed.contains(t) || seen.contains(t)) continue;
                seen.insert(t);
                comp.insert(t);
                queue.push_back(t);
            }
        }
        comps.push_back(std::move(comp));
    }
    std::stable_sort(comps.begin(), comps.end(), [](const VertexSet& a, const VertexSet& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.min_element().code() < b.min_element().code();
    });
    return comps;
}

VertexSet largest_component(int n, const VertexSet& removed) {
    auto comps = components(n, removed);
    if (comps.empty()) {
        throw Error("no component: removed set covers the whole cube");
    }
    return comps.front();
}

SpanningTree spanning_tree(const VertexSet& vertices, Profile root, int n) {
    if (!vertices.contains(root)) {
        throw Error("spanning tree root " + root.bitstring(n) + " is not in the vertex set");
    }
    SpanningTree tree;
    tree.root = root;
    VertexSet seen(n);
    seen.insert(root);
    std::deque<Profile> queue{root};
    std::vector<Profile> bfs_order{root};
    while (!queue.empty()) {
        const Profile s = queue.front();
        queue.pop_front();
        for (int i = 1; i <= n; ++i) {
            const Profile t = s.flip(i);
            if (!vertices.contains(t) || seen.contains(t)) continue;
            seen.insert(t);
            tree.parents.emplace(t.code(), SpanningTree::Edge{s, i});
            bfs_order.push_back(t);
            queue.push_back(t);
        }
    }
    if (seen.size() != vertices.size()) {
        Profile missing(0);
        bool found = false;
        vertices.for_each([&](Profile s) {
            if (!found && !seen.contains(s)) {
                missing = s;
                found = true;
            }
        });
        throw Error("vertex set is disconnected: " + missing.bitstring(n) +
                    " unreachable from root " + root.bitstring(n));
    }
    tree.order.assign(bfs_order.rbegin(), bfs_order.rend());
    return tree;
}

std::uint64_t edge_boundary(int n, const VertexSet& S, const VertexSet& T) {
    std::uint64_t overlap_witness = 0;
    bool overlap = false;
    S.for_each([&](Profile s) {
        if (!overlap && T.contains(s)) {
            overlap = true;
            overlap_witness = s.code();
        }
    });
    if (overlap) {
        throw Error("edge_boundary: sets overlap at " + Profile(overlap_witness).bitstring(n));
    }
    std::uint64_t count = 0;
    S.for_each([&](Profile s) {
        for (int i = 1; i <= n; ++i) {
            if (T.contains(s.flip(i))) ++count;
        }
    });
    return count;
}

Rational edge_expansion_exact(int n) {
    if (n < 1 || n > 4) {
        throw Error("edge_expansion_exact is brute force and limited to n <= 4; "
                    "use cheeger_lower_bound for larger n");
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::uint64_t half = total / 2;
    bool have = false;
    Rational best;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << total); ++mask) {
        const auto size = static_cast<std::uint64_t>(std::popcount(mask));
        if (size == 0 || size > half) continue;
        std::uint64_t cut = 0;
        for (std::uint64_t c = 0; c < total; ++c) {
            if (!((mask >> c) & 1)) continue;
            for (int i = 1; i <= n; ++i) {
                const std::uint64_t d = c ^ (std::uint64_t{1} << (i - 1));
                if (!((mask >> d) & 1)) ++cut;
            }
        }
        const Rational ratio = make_rational(Int(cut), Int(size));
        if (!have || ratio < best) {
            best = ratio;
            have = true;
        }
    }
    return best;
}

Rational cheeger_lower_bound(int n) {
    if (n < 1) throw Error("cheeger_lower_bound needs n >= 1");
    return make_rational(Int(1), Int(n));
}

bool giant_component_holds(int n, const VertexSet& removed) {
    auto comps = components(n, removed);
    if (comps.empty()) return false;
    return comps.front().size() > (std::uint64_t{1} << (n - 1));
}

}  // namespace ceq
