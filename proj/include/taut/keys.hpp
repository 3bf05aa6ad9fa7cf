#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace taut {

inline void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

/// Index set of a pure ψ-pairing ⟨τ_{d_1}⋯τ_{d_n}⟩_g.
///
/// Exponents are kept sorted ascending, so two vectors with the same
/// genus and the same multiset of exponents compare equal and hash equal:
/// this is the canonical memoization key shape.
struct TauVector {
    int g = 0;
    std::vector<int> d;  // sorted ascending

    TauVector(int genus, std::vector<int> exps) : g(genus), d(std::move(exps)) {
        require(g >= 0, "TauVector: genus must be >= 0");
        require(!d.empty(), "TauVector: needs at least one point");
        for (int e : d) require(e >= 0, "TauVector: exponents must be >= 0");
        require(2 * g - 2 + n() > 0, "TauVector: unstable (2g-2+n <= 0)");
        std::sort(d.begin(), d.end());
    }

    int n() const { return static_cast<int>(d.size()); }
    int total_degree() const {
        int s = 0;
        for (int e : d) s += e;
        return s;
    }
    int complex_dimension() const { return 3 * g - 3 + n(); }

    friend bool operator==(const TauVector&, const TauVector&) = default;
    friend auto operator<=>(const TauVector&, const TauVector&) = default;

    std::string to_string() const {
        std::string s = "(g=" + std::to_string(g) + "; d=";
        for (std::size_t i = 0; i < d.size(); ++i)
            s += (i ? "," : "") + std::to_string(d[i]);
        return s + ")";
    }
};

/// Would (g, n) be a stable pointed curve type?
inline bool stable(int g, int n) { return g >= 0 && n >= 1 && 2 * g - 2 + n > 0; }

/// Top-dimensionality test: a pure ψ-pairing is nonzero only when the
/// exponents fill the dimension, Σd_i = 3g-3+n.
inline bool dimension_matches(const TauVector& t) {
    return t.total_degree() == t.complex_dimension();
}

/// Key of a mixed pairing ⟨κ₁^ell · τ_{d_1}⋯τ_{d_n}⟩_g.  ell = 0 is a
/// pure ψ-pairing; the single memo store is keyed on this type.
struct TauKappaKey {
    int g = 0;
    std::vector<int> d;  // sorted ascending
    int ell = 0;

    TauKappaKey(int genus, std::vector<int> exps, int kappa_power)
        : g(genus), d(std::move(exps)), ell(kappa_power) {
        require(ell >= 0, "TauKappaKey: kappa power must be >= 0");
        require(genus >= 0, "TauKappaKey: genus must be >= 0");
        require(!d.empty(), "TauKappaKey: needs at least one point");
        for (int e : d) require(e >= 0, "TauKappaKey: exponents must be >= 0");
        require(2 * g - 2 + n() > 0, "TauKappaKey: unstable (2g-2+n <= 0)");
        std::sort(d.begin(), d.end());
    }

    TauKappaKey(const TauVector& t, int kappa_power) : TauKappaKey(t.g, t.d, kappa_power) {}

    int n() const { return static_cast<int>(d.size()); }
    int total_degree() const {
        int s = ell;
        for (int e : d) s += e;
        return s;
    }
    int complex_dimension() const { return 3 * g - 3 + n(); }
    bool dimension_matches() const { return total_degree() == complex_dimension(); }

    TauVector tau_part() const { return TauVector(g, d); }

    friend bool operator==(const TauKappaKey&, const TauKappaKey&) = default;

    std::string to_string() const {
        std::string s = "(g=" + std::to_string(g) + "; d=";
        for (std::size_t i = 0; i < d.size(); ++i)
            s += (i ? "," : "") + std::to_string(d[i]);
        return s + "; k^" + std::to_string(ell) + ")";
    }
};

struct TauKappaKeyHash {
    std::size_t operator()(const TauKappaKey& k) const {
        std::size_t h = static_cast<std::size_t>(k.g) * 0x9e3779b97f4a7c15ull + k.ell;
        for (int e : k.d) h = (h ^ static_cast<std::size_t>(e + 1)) * 0x100000001b3ull;
        return h;
    }
};

}  // namespace taut
