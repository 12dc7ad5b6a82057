#include "rum/types.hpp"

#include <stdexcept>
#include <string>

namespace rum {

std::vector<int> BehavioralType::flat(const PatchLayout& layout) const {
    std::vector<int> bits(layout.total, 0);
    for (std::size_t j = 0; j < choice.size(); ++j)
        bits[layout.flat(j, choice[j])] = 1;
    return bits;
}

BehavioralType BehavioralType::from_flat(const PatchLayout& layout,
                                         const std::vector<int>& bits) {
    if (bits.size() != layout.total)
        throw std::invalid_argument("flat type vector has wrong length");
    BehavioralType a;
    const std::size_t J = layout.patches.size();
    a.choice.resize(J);
    for (std::size_t j = 0; j < J; ++j) {
        std::size_t ones = 0;
        for (std::size_t i = 0; i < layout.count(j); ++i) {
            if (bits[layout.flat(j, i)] == 1) {
                a.choice[j] = i;
                ++ones;
            } else if (bits[layout.flat(j, i)] != 0) {
                throw std::invalid_argument("type vector entries must be 0 or 1");
            }
        }
        if (ones != 1)
            throw std::invalid_argument(
                "type must choose exactly one patch in budget " + std::to_string(j + 1));
    }
    return a;
}

bool revealed_prefers(const PatchLayout& layout, const BehavioralType& a,
                      std::size_t j_from, std::size_t j_to) {
    if (j_from == j_to) throw std::invalid_argument("budgets must differ");
    const Patch& chosen = layout.patch(j_to, a.choice[j_to]);
    return chosen.signs[j_from] == Sign::Below;
}

SarpVerdict satisfies_sarp(const PatchLayout& layout, const BehavioralType& a) {
    const std::size_t J = layout.patches.size();
    // adjacency: edge j -> j' iff choice on j is revealed preferred to j'
    std::vector<std::vector<std::size_t>> adj(J);
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t jp = 0; jp < J; ++jp)
            if (j != jp && revealed_prefers(layout, a, j, jp))
                adj[j].push_back(jp);

    enum { White, Grey, Black };
    std::vector<int> color(J, White);
    std::vector<std::size_t> parent(J, J);
    for (std::size_t start = 0; start < J; ++start) {
        if (color[start] != White) continue;
        // explicit-stack DFS; frame = (node, next child position)
        std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
        color[start] = Grey;
        while (!stack.empty()) {
            auto& [v, pos] = stack.back();
            if (pos == adj[v].size()) {
                color[v] = Black;
                stack.pop_back();
                continue;
            }
            std::size_t w = adj[v][pos++];
            if (color[w] == Grey) {
                // unwind the stack from v back to w
                std::vector<std::size_t> cycle;
                for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                    cycle.insert(cycle.begin(), it->first);
                    if (it->first == w) break;
                }
                return {false, cycle};
            }
            if (color[w] == White) {
                color[w] = Grey;
                stack.emplace_back(w, 0);
            }
        }
    }
    return {true, {}};
}

TypeEnumeration enumerate_types(const PatchLayout& layout, std::uint64_t cap) {
    const std::size_t J = layout.patches.size();
    std::uint64_t product = 1;
    for (std::size_t j = 0; j < J; ++j) {
        product *= layout.count(j);
        if (product > cap)
            throw std::length_error("type count " + std::to_string(product) +
                                    "+ exceeds cap " + std::to_string(cap));
    }

    TypeEnumeration out;
    out.all.reserve(product);
    BehavioralType a;
    a.choice.assign(J, 0);
    for (std::uint64_t k = 0; k < product; ++k) {
        out.all.push_back(a);
        // lexicographic increment, last budget fastest
        for (std::size_t j = J; j-- > 0;) {
            if (++a.choice[j] < layout.count(j)) break;
            a.choice[j] = 0;
        }
    }
    out.is_rational.reserve(product);
    for (const auto& t : out.all) {
        bool ok = satisfies_sarp(layout, t).consistent;
        out.is_rational.push_back(ok);
        if (ok) out.rational.push_back(t);
    }
    return out;
}

}  // namespace rum
