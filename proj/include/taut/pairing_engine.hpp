#pragma once

#include <cstddef>
#include <vector>

#include "taut/keys.hpp"
#include "taut/memo_store.hpp"
#include "taut/psi_intersections.hpp"
#include "taut/rational.hpp"

namespace taut {

/// Which exponent the Virasoro-style recursion peels off.  The value of a
/// pairing is independent of the choice; that independence is a tested
/// property, not an assumption.  largest_exponent generates the fewest
/// boundary terms and is the default.
enum class PivotChoice {
    largest_exponent,
    smallest_nonzero,
    hash_spread,  // deterministic pseudo-random pick among nonzero slots
};

struct EngineLimits {
    std::size_t max_memo_entries = 4'000'000;
    int max_depth = 256;
};

/// Exact evaluator for ψ/κ₁ pairings on compactified moduli of stable
/// pointed curves.
///
/// Pure ψ-pairings ⟨τ_{d_1}⋯τ_{d_n}⟩_g are computed by the DVV recursion
/// (the constructive form of the Virasoro constraints): with
/// ⟨τ₀³⟩₀ = 1 and ⟨τ₁⟩₁ = 1/24, peeling a pivot exponent k = d₁ ≥ 1,
///
///   (2k+1)!!⟨τ_k ∏_{i≥2} τ_{d_i}⟩_g =
///       Σ_{j≥2} ((2k+2d_j-1)!!/(2d_j-1)!!) ⟨τ_{k+d_j-1} ∏_{i≠j}⟩_g
///     + ½ Σ_{a+b=k-2} (2a+1)!!(2b+1)!! [ ⟨τ_a τ_b ∏_{i≥2}⟩_{g-1}
///           + Σ_{g₁+g₂=g, I⊔J={2..n}} ⟨τ_a ∏_I⟩_{g₁} ⟨τ_b ∏_J⟩_{g₂} ] ,
///
/// with (-1)!! = 1 and unstable factors dropped.  The ⟨τ₁⟩₁ base value
/// carries the elliptic-involution convention (integration over tori
/// modulo the involution), so everything downstream inherits it.
///
/// Mixed pairings ⟨κ₁^ℓ ∏τ⟩ are reduced by trading one κ₁ for a ψ-power
/// at a fresh point (push-pull along the forgetful map):
///
///   ⟨κ₁^ℓ ∏τ_{d_i}⟩_{g,n}
///     = Σ_{m=0}^{ℓ-1} C(ℓ-1,m) (-1)^m ⟨κ₁^{ℓ-1-m} τ_{m+2} ∏τ_{d_i}⟩_{g,n+1}.
///
/// Results are memoized in a shared TauKappaKey store; evaluation is a
/// pure function of the key, so engines may be shared across threads.
class PairingEngine {
public:
    explicit PairingEngine(EngineLimits limits = {},
                           PivotChoice pivot = PivotChoice::largest_exponent)
        : store_(limits.max_memo_entries), max_depth_(limits.max_depth), pivot_(pivot) {}

    /// ⟨τ_{d_1}⋯τ_{d_n}⟩_g; zero unless Σd_i = 3g-3+n.
    Rational tau(const TauVector& t) const { return tau_impl(t, 0); }

    /// ⟨κ₁^ℓ τ_{d_1}⋯τ_{d_n}⟩_g; zero unless ℓ + Σd_i = 3g-3+n.
    Rational kappa_psi(const TauKappaKey& key) const { return kappa_impl(key, 0); }

    MemoStore& store() const { return store_; }
    PivotChoice pivot() const { return pivot_; }

private:
    mutable MemoStore store_;
    int max_depth_;
    PivotChoice pivot_;

    void check_depth(int depth) const {
        if (depth > max_depth_)
            throw resource_limit_error("recursion depth exceeded " +
                                       std::to_string(max_depth_));
    }

    int pick_pivot(const TauVector& t) const {
        // d is sorted ascending, so nonzero exponents form a suffix
        int first_nz = 0;
        while (first_nz < t.n() && t.d[first_nz] == 0) ++first_nz;
        switch (pivot_) {
            case PivotChoice::largest_exponent:
                return t.n() - 1;
            case PivotChoice::smallest_nonzero:
                return first_nz;
            case PivotChoice::hash_spread: {
                std::size_t h = TauKappaKeyHash{}(TauKappaKey(t, 0));
                return first_nz + static_cast<int>(h % (t.n() - first_nz));
            }
        }
        return t.n() - 1;
    }

    Rational tau_impl(const TauVector& t, int depth) const {
        if (!dimension_matches(t)) return Rational(0);
        TauKappaKey key(t, 0);
        if (auto hit = store_.find(key)) return *hit;
        check_depth(depth);
        Rational value = dvv(t, depth);
        store_.insert(key, value);
        return value;
    }

    Rational dvv(const TauVector& t, int depth) const {
        static const std::vector<int> kSphereBase{0, 0, 0};
        static const std::vector<int> kTorusBase{1};
        if (t.g == 0 && t.d == kSphereBase) return Rational(1);
        if (t.g == 1 && t.d == kTorusBase) return Rational(1, 24);

        const int pivot = pick_pivot(t);
        const int k = t.d[pivot];
        if (k < 1) throw std::logic_error("dvv: dimension-matched vector with no pivot");
        std::vector<int> rest = t.d;
        rest.erase(rest.begin() + pivot);
        const int nrest = static_cast<int>(rest.size());

        Rational total(0);
        for (int j = 0; j < nrest; ++j) {
            std::vector<int> next = rest;
            next[j] = k + rest[j] - 1;
            Rational coeff = Rational::double_factorial(2 * k + 2 * rest[j] - 1) /
                             Rational::double_factorial(2 * rest[j] - 1);
            total += coeff * tau_impl(TauVector(t.g, std::move(next)), depth + 1);
        }

        Rational boundary(0);
        for (int a = 0; a + 2 <= k; ++a) {
            const int b = k - 2 - a;
            Rational w = Rational::double_factorial(2 * a + 1) *
                         Rational::double_factorial(2 * b + 1);
            if (t.g >= 1 && stable(t.g - 1, nrest + 2)) {
                std::vector<int> next = rest;
                next.push_back(a);
                next.push_back(b);
                boundary += w * tau_impl(TauVector(t.g - 1, std::move(next)), depth + 1);
            }
            for (int g1 = 0; g1 <= t.g; ++g1) {
                const int g2 = t.g - g1;
                for (unsigned mask = 0; mask < (1u << nrest); ++mask) {
                    std::vector<int> left{a}, right{b};
                    for (int j = 0; j < nrest; ++j)
                        ((mask >> j) & 1u ? left : right).push_back(rest[j]);
                    if (!stable(g1, static_cast<int>(left.size())) ||
                        !stable(g2, static_cast<int>(right.size())))
                        continue;
                    boundary += w * tau_impl(TauVector(g1, std::move(left)), depth + 1) *
                                tau_impl(TauVector(g2, std::move(right)), depth + 1);
                }
            }
        }
        total += boundary * Rational(1, 2);
        return total / Rational::double_factorial(2 * k + 1);
    }

    Rational kappa_impl(const TauKappaKey& key, int depth) const {
        if (!key.dimension_matches()) return Rational(0);
        if (key.ell == 0) return tau_impl(key.tau_part(), depth);
        if (auto hit = store_.find(key)) return *hit;
        check_depth(depth);
        Rational value(0);
        for (int m = 0; m < key.ell; ++m) {
            std::vector<int> next = key.d;
            next.push_back(m + 2);
            Rational coeff = Rational::binomial(key.ell - 1, m);
            if (m % 2 != 0) coeff = -coeff;
            value += coeff *
                     kappa_impl(TauKappaKey(key.g, std::move(next), key.ell - 1 - m),
                                depth + 1);
        }
        store_.insert(key, value);
        return value;
    }
};

}  // namespace taut
