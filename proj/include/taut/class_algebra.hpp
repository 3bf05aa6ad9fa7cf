#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "taut/pairing_engine.hpp"
#include "taut/pi_scalar.hpp"

namespace taut {

/// Generator index inside a ClassExpression: 0 is κ₁, j >= 1 is ψ_j.
struct Generator {
    int idx = 0;

    static Generator kappa1() { return {0}; }
    static Generator psi(int j) { return {j}; }

    bool is_kappa1() const { return idx == 0; }
    int psi_index() const { return idx; }

    friend auto operator<=>(const Generator&, const Generator&) = default;

    std::string name() const { return idx == 0 ? "kappa1" : "psi_" + std::to_string(idx); }
};

/// Formal ℚ[π²]-linear combination of the degree-one generators
/// {ψ_1..ψ_n, κ₁} on an n-pointed moduli space.  Every geometric class in
/// scope — the Weil–Petersson form, the per-puncture TZ forms, the
/// determinant-index class, the pinched WP expansion — reduces to this
/// basis, which keeps pairing evaluation closed.
class ClassExpression {
public:
    explicit ClassExpression(int n) : n_(n) {
        require(n >= 1, "ClassExpression: needs n >= 1 punctures");
    }

    int n() const { return n_; }
    const std::map<Generator, PiScalar>& coeffs() const { return coeffs_; }

    PiScalar coeff(Generator g) const {
        auto it = coeffs_.find(g);
        return it == coeffs_.end() ? PiScalar::zero() : it->second;
    }

    void add(Generator g, const PiScalar& c) {
        require(g.idx >= 0 && g.idx <= n_, "ClassExpression: generator index out of range");
        if (c.is_zero()) return;
        auto it = coeffs_.find(g);
        if (it == coeffs_.end()) {
            coeffs_.emplace(g, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    friend ClassExpression operator+(const ClassExpression& a, const ClassExpression& b) {
        require(a.n_ == b.n_, "ClassExpression: mismatched puncture counts");
        ClassExpression r = a;
        for (const auto& [g, c] : b.coeffs_) r.add(g, c);
        return r;
    }

    friend ClassExpression operator*(const ClassExpression& a, const PiScalar& s) {
        ClassExpression r(a.n_);
        for (const auto& [g, c] : a.coeffs_) r.add(g, c * s);
        return r;
    }
    friend ClassExpression operator*(const PiScalar& s, const ClassExpression& a) {
        return a * s;
    }
    friend ClassExpression operator*(const ClassExpression& a, const Rational& q) {
        return a * PiScalar::from_rational(q);
    }

    friend bool operator==(const ClassExpression&, const ClassExpression&) = default;

private:
    int n_;
    std::map<Generator, PiScalar> coeffs_;
};

/// ψ_j as an expression.
inline ClassExpression psi_class(int j, int n) {
    require(j >= 1 && j <= n, "psi_class: puncture index out of range");
    ClassExpression e(n);
    e.add(Generator::psi(j), PiScalar::one());
    return e;
}

/// κ₁ as an expression.
inline ClassExpression kappa1_class(int n) {
    ClassExpression e(n);
    e.add(Generator::kappa1(), PiScalar::one());
    return e;
}

/// Weil–Petersson Kähler class: ω_WP = π²·κ₁.
inline ClassExpression wp_class(int n) {
    ClassExpression e(n);
    e.add(Generator::kappa1(), PiScalar::pi_power(2));
    return e;
}

/// Takhtajan–Zograf class of the j-th puncture: ω_TZ,j = (3/4)·ψ_j,
/// inverting the canonical-norm Chern form relation c₁ = (4/3)·ω_TZ,j.
inline ClassExpression tz_class(int j, int n) {
    require(j >= 1 && j <= n, "tz_class: puncture index out of range");
    ClassExpression e(n);
    e.add(Generator::psi(j), PiScalar::from_rational(Rational(3, 4)));
    return e;
}

/// Sum of the per-puncture TZ classes (the TZ Kähler form).
inline ClassExpression tz_total_class(int n) {
    ClassExpression e(n);
    for (int j = 1; j <= n; ++j) e.add(Generator::psi(j), PiScalar::from_rational(Rational(3, 4)));
    return e;
}

/// First Chern class of the determinant of the index bundle of the
/// k-th ∂̄-family:  c₁ = (6k²-6k+1)/12 · κ₁ - (1/12) Σ_j ψ_j.
inline ClassExpression det_index_class(int k, int n) {
    require(k >= 0, "det_index_class: k must be >= 0");
    ClassExpression e(n);
    e.add(Generator::kappa1(), PiScalar::from_rational(
                                   Rational(6LL * k * k - 6LL * k + 1, 12)));
    for (int j = 1; j <= n; ++j)
        e.add(Generator::psi(j), PiScalar::from_rational(Rational(-1, 12)));
    return e;
}

/// Second-order pinching expansion of the WP class along a node of
/// length ell:  ω_WP + (ell²/4) Σ_j ψ_j  (the O(ell³) tail is truncated).
/// ell is exact, so downstream pairings stay exact for exact inputs.
inline ClassExpression pinched_wp_class(const Rational& ell, int n) {
    require(ell.sign() >= 0, "pinched_wp_class: ell must be >= 0");
    ClassExpression e = wp_class(n);
    Rational quarter_sq = ell * ell / Rational(4);
    for (int j = 1; j <= n; ++j)
        e.add(Generator::psi(j), PiScalar::from_rational(quarter_sq));
    return e;
}

namespace detail {

/// Monomial in the (ψ, κ₁) generators: per-puncture ψ-exponents plus a
/// κ₁-power.  Used as expansion key inside pair().
struct ClassMonomial {
    std::vector<int> alpha;
    int kappa = 0;

    friend auto operator<=>(const ClassMonomial&, const ClassMonomial&) = default;
};

}  // namespace detail

/// Exact pairing of a monomial list of degree-one class expressions
/// against the fundamental class:
///   ∫ ∏_k expr_k^{e_k}  =  Σ_monomials coeff · ⟨∏ψ_j^{α_j} κ₁^m⟩_g .
/// Returns zero when the total degree misses 3g-3+n.
inline PiScalar pair(const PairingEngine& engine, int g,
                     const std::vector<std::pair<ClassExpression, int>>& monomials) {
    require(!monomials.empty(), "pair: needs at least one factor");
    const int n = monomials.front().first.n();
    int degree = 0;
    for (const auto& [expr, e] : monomials) {
        require(expr.n() == n, "pair: mismatched puncture counts across factors");
        require(e >= 0, "pair: exponents must be >= 0");
        degree += e;
    }
    require(stable(g, n), "pair: unstable (g, n)");
    if (degree != 3 * g - 3 + n) return PiScalar::zero();

    // multiply out ∏ expr_k^{e_k} over the monomial basis
    std::map<detail::ClassMonomial, PiScalar> poly{
        {detail::ClassMonomial{std::vector<int>(n, 0), 0}, PiScalar::one()}};
    for (const auto& [expr, e] : monomials) {
        for (int rep = 0; rep < e; ++rep) {
            std::map<detail::ClassMonomial, PiScalar> next;
            for (const auto& [mono, c] : poly) {
                for (const auto& [gen, gc] : expr.coeffs()) {
                    detail::ClassMonomial m = mono;
                    if (gen.is_kappa1())
                        m.kappa += 1;
                    else
                        m.alpha[gen.psi_index() - 1] += 1;
                    PiScalar contrib = c * gc;
                    auto it = next.find(m);
                    if (it == next.end())
                        next.emplace(std::move(m), std::move(contrib));
                    else
                        it->second += contrib;
                }
            }
            poly = std::move(next);
        }
    }

    PiScalar total;
    for (const auto& [mono, c] : poly) {
        if (c.is_zero()) continue;
        Rational value = engine.kappa_psi(TauKappaKey(g, mono.alpha, mono.kappa));
        if (value.is_zero()) continue;
        total += c * value;
    }
    return total;
}

/// Mixed TZ/WP pairing ∫ ω_TZ,1^{a_1} ⋯ ω_TZ,n^{a_n} ω_WP^m, evaluated
/// through the generator substitutions ω_TZ,j = (3/4)ψ_j, ω_WP = π²κ₁:
///   (3/4)^{|a|} · π^{2m} · ⟨∏ψ^{a_j} κ₁^m⟩_g .
inline PiScalar tz_wp_pairing(const PairingEngine& engine, int g, int n,
                              const std::vector<int>& a, int m) {
    require(static_cast<int>(a.size()) == n, "tz_wp_pairing: exponent vector length != n");
    require(m >= 0, "tz_wp_pairing: WP power must be >= 0");
    int total = 0;
    for (int e : a) total += e;
    Rational value = engine.kappa_psi(TauKappaKey(g, a, m));
    if (value.is_zero()) return PiScalar::zero();
    return PiScalar(2 * m, Rational::pow(Rational(3, 4), total) * value);
}

}  // namespace taut
