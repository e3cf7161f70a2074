#pragma once

// Exhaustive enumeration of small groups of elements, with optional
// multiplication tables for sweep memoization.  BFS from the identity in
// generator order, so the element ordering is deterministic.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "coxsigns/coxeter.hpp"

namespace coxsigns {

inline std::vector<GroupElement> generate_subgroup(std::span<const GroupElement> gens,
                                                   std::size_t limit = 1u << 22) {
    if (gens.empty()) throw IndexError("generate_subgroup: no generators");
    std::vector<GroupElement> elems;
    std::unordered_multimap<std::uint64_t, std::uint32_t> index;
    auto find = [&](const GroupElement& g) -> long {
        auto [lo, hi] = index.equal_range(g.hash());
        for (auto it = lo; it != hi; ++it)
            if (elems[it->second] == g) return it->second;
        return -1;
    };
    auto push = [&](const GroupElement& g) {
        index.emplace(g.hash(), static_cast<std::uint32_t>(elems.size()));
        elems.push_back(g);
    };
    GroupElement id = gens[0] * gens[0].inverse();
    push(id);
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : gens) {
            GroupElement h = elems[head] * g;
            if (find(h) < 0) {
                if (elems.size() >= limit) throw Error("generate_subgroup: limit exceeded");
                push(h);
            }
        }
    }
    return elems;
}

class EnumeratedGroup {
public:
    static EnumeratedGroup enumerate(const CoxeterSystem& sys) {
        EnumeratedGroup eg(sys);
        std::vector<GroupElement> gens;
        for (int s = 0; s < sys.rank(); ++s) gens.push_back(sys.simple_reflection(s));
        eg.elems_ = generate_subgroup(gens);
        for (std::uint32_t i = 0; i < eg.elems_.size(); ++i)
            eg.index_.emplace(eg.elems_[i].hash(), i);
        eg.lengths_.reserve(eg.elems_.size());
        for (const auto& w : eg.elems_) eg.lengths_.push_back(static_cast<std::uint32_t>(w.length()));
        return eg;
    }

    std::size_t size() const { return elems_.size(); }
    const GroupElement& operator[](std::size_t i) const { return elems_[i]; }
    const CoxeterSystem& system() const { return sys_; }
    std::uint32_t length_of(std::size_t i) const { return lengths_[i]; }

    std::uint32_t index_of(const GroupElement& g) const {
        auto [lo, hi] = index_.equal_range(g.hash());
        for (auto it = lo; it != hi; ++it)
            if (elems_[it->second] == g) return it->second;
        throw Error("element not in enumerated group");
    }

    // Optional |W|^2 multiplication table; worthwhile for |W| <= ~1000.
    void build_tables() {
        if (!mult_.empty()) return;
        const std::size_t n = elems_.size();
        mult_.assign(n, std::vector<std::uint32_t>(n));
        inv_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) mult_[i][j] = index_of(elems_[i] * elems_[j]);
            inv_[i] = index_of(elems_[i].inverse());
        }
    }
    bool has_tables() const { return !mult_.empty(); }
    std::uint32_t mult(std::uint32_t i, std::uint32_t j) const { return mult_[i][j]; }
    std::uint32_t inv(std::uint32_t i) const { return inv_[i]; }

private:
    explicit EnumeratedGroup(CoxeterSystem sys) : sys_(std::move(sys)) {}

    CoxeterSystem sys_;
    std::vector<GroupElement> elems_;
    std::unordered_multimap<std::uint64_t, std::uint32_t> index_;
    std::vector<std::uint32_t> lengths_;
    std::vector<std::vector<std::uint32_t>> mult_;
    std::vector<std::uint32_t> inv_;
};

} // namespace coxsigns
