#pragma once

#include <numeric>
#include <utility>
#include <vector>

namespace aapsm {

/// Union-find that tracks each element's parity relative to its root.
/// unite(a, b, p) records color(a) xor color(b) == p and reports whether
/// that is consistent with what is already known.
class ParityDsu {
public:
    explicit ParityDsu(std::size_t n) : parent_(n), rank_(n, 0), parity_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    /// (root, parity of x relative to root)
    std::pair<int, int> find(int x) {
        int p = 0;
        int r = x;
        while (parent_[r] != r) {
            p ^= parity_[r];
            r = parent_[r];
        }
        // path compression, rewriting parities relative to the root
        int acc = p;
        while (parent_[x] != x) {
            const int next = parent_[x];
            const int next_par = acc ^ parity_[x];
            parent_[x] = r;
            parity_[x] = acc;
            acc = next_par;
            x = next;
        }
        return {r, p};
    }

    bool same_set(int a, int b) { return find(a).first == find(b).first; }

    /// Returns false when a and b are already joined with the other parity.
    bool unite(int a, int b, int relation) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == relation;
        if (rank_[ra] < rank_[rb]) {
            std::swap(ra, rb);
            std::swap(pa, pb);
        }
        parent_[rb] = ra;
        parity_[rb] = pa ^ pb ^ relation;
        if (rank_[ra] == rank_[rb]) ++rank_[ra];
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
    std::vector<int> parity_;
};

}  // namespace aapsm
