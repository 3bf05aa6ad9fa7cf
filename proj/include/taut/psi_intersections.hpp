#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "taut/keys.hpp"
#include "taut/rational.hpp"

namespace taut {

/// One string-equation step: for t = (g, {0} ∪ rest), the pairing with a
/// τ₀ removed distributes over the remaining points,
///     ⟨τ₀ ∏ τ_{d_i}⟩_g = Σ_j ⟨τ_{d_j - 1} ∏_{i≠j} τ_{d_i}⟩_g ,
/// skipping slots with d_j = 0.  Terms are returned with their (unit)
/// coefficients, one entry per contributing slot.
inline std::vector<std::pair<TauVector, Rational>> string_reduce(const TauVector& t) {
    require(!t.d.empty() && t.d.front() == 0, "string_reduce: no τ₀ insertion present");
    require(stable(t.g, t.n() - 1), "string_reduce: removal would be unstable");
    std::vector<int> rest(t.d.begin() + 1, t.d.end());  // drop one zero
    std::vector<std::pair<TauVector, Rational>> terms;
    for (std::size_t j = 0; j < rest.size(); ++j) {
        if (rest[j] == 0) continue;
        std::vector<int> next = rest;
        next[j] -= 1;
        terms.emplace_back(TauVector(t.g, std::move(next)), Rational(1));
    }
    return terms;
}

/// One dilaton-equation step: removing a τ₁ insertion multiplies by the
/// Euler-characteristic factor 2g - 2 + n' of the reduced vector.
inline std::pair<TauVector, Rational> dilaton_reduce(const TauVector& t) {
    auto it = std::find(t.d.begin(), t.d.end(), 1);
    require(it != t.d.end(), "dilaton_reduce: no τ₁ insertion present");
    require(stable(t.g, t.n() - 1), "dilaton_reduce: removal would be unstable");
    std::vector<int> next = t.d;
    next.erase(next.begin() + (it - t.d.begin()));
    int n_reduced = t.n() - 1;
    return {TauVector(t.g, std::move(next)), Rational(2 * t.g - 2 + n_reduced)};
}

/// Closed form for genus-zero pairings, used as an independent oracle for
/// the recursion: ⟨τ_{d_1}⋯τ_{d_n}⟩₀ = (n-3)! / ∏ d_i!  when Σd_i = n-3,
/// and 0 otherwise.
inline Rational genus0_closed(const std::vector<int>& d) {
    require(d.size() >= 3, "genus0_closed: needs n >= 3");
    int total = 0;
    for (int e : d) {
        require(e >= 0, "genus0_closed: exponents must be >= 0");
        total += e;
    }
    if (total != static_cast<int>(d.size()) - 3) return Rational(0);
    Rational value = Rational::factorial(static_cast<int>(d.size()) - 3);
    for (int e : d) value /= Rational::factorial(e);
    return value;
}

}  // namespace taut
