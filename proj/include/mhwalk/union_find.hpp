#pragma once

// Disjoint-set structure with union by rank and path halving; amortized
// near-constant per operation.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhwalk {

class UnionFind {
  public:
    // Registers a new singleton and returns its element id.
    uint32_t make_set() {
        const uint32_t id = static_cast<uint32_t>(parent_.size());
        parent_.push_back(id);
        rank_.push_back(0);
        ++classes_;
        return id;
    }

    // Representative of x's class; x must be registered.
    uint32_t find(uint32_t x) {
        if (x >= parent_.size()) {
            throw std::invalid_argument("find on unregistered element " + std::to_string(x));
        }
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];  // path halving
            x = parent_[x];
        }
        return x;
    }

    // Merges the classes of a and b; true iff they were distinct.
    bool unite(uint32_t a, uint32_t b) {
        uint32_t ra = find(a);
        uint32_t rb = find(b);
        if (ra == rb) {
            return false;
        }
        if (rank_[ra] < rank_[rb]) {
            std::swap(ra, rb);
        }
        parent_[rb] = ra;
        if (rank_[ra] == rank_[rb]) {
            ++rank_[ra];
        }
        --classes_;
        return true;
    }

    bool same(uint32_t a, uint32_t b) { return find(a) == find(b); }

    uint32_t element_count() const { return static_cast<uint32_t>(parent_.size()); }
    uint32_t class_count() const { return classes_; }

  private:
    std::vector<uint32_t> parent_;
    std::vector<uint8_t> rank_;
    uint32_t classes_ = 0;
};

}  // namespace mhwalk
