#pragma once

// Test-side oracles, kept independent of the library's evaluation paths:
// exhaustive multiset enumeration, set-partition expansion of kappa_1
// powers into pure psi-pairings, and small combinatorial helpers.

#include <functional>
#include <vector>

#include "taut/pairing_engine.hpp"

namespace taut_tests {

/// All ascending-sorted exponent vectors of length n summing to total.
inline std::vector<std::vector<int>> sorted_multisets(int n, int total) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    std::function<void(int, int, int)> walk = [&](int slot, int minval, int left) {
        if (slot == n) {
            if (left == 0) out.push_back(cur);
            return;
        }
        for (int e = minval; e <= left; ++e) {
            cur[slot] = e;
            walk(slot + 1, e, left - e);
        }
    };
    walk(0, 0, total);
    return out;
}

/// All set partitions of {0..count-1} as block lists.
inline std::vector<std::vector<std::vector<int>>> set_partitions(int count) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> blocks;
    std::function<void(int)> walk = [&](int item) {
        if (item == count) {
            out.push_back(blocks);
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b].push_back(item);
            walk(item + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({item});
        walk(item + 1);
        blocks.pop_back();
    };
    walk(0);
    return out;
}

/// Set-partition expansion of a mixed pairing into pure psi-pairings:
/// each kappa_1 block B of size s contributes a fresh point carrying
/// tau_{s+1} and a sign (-1)^{s-1},
///   <kappa_1^l  prod tau_d>_{g,n}
///     = sum over partitions P of {1..l}
///         prod_{B in P} (-1)^{|B|-1} · <prod tau_d  prod_B tau_{|B|+1}>_{g,n+|P|} .
/// Summed term-by-term through PairingEngine::tau only, so it exercises
/// none of the kappa reduction code it cross-checks.
inline taut::Rational kappa_set_partition_oracle(const taut::PairingEngine& engine,
                                                 const taut::TauKappaKey& key) {
    using taut::Rational;
    if (key.ell == 0) return engine.tau(key.tau_part());
    Rational total(0);
    for (const auto& partition : set_partitions(key.ell)) {
        int sign = 0;
        std::vector<int> d = key.d;
        for (const auto& block : partition) {
            d.push_back(static_cast<int>(block.size()) + 1);
            sign += static_cast<int>(block.size()) - 1;
        }
        Rational term = engine.tau(taut::TauVector(key.g, std::move(d)));
        total += (sign % 2 ? -term : term);
    }
    return total;
}

}  // namespace taut_tests
