#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "taut/class_algebra.hpp"
#include "taut/pairing_engine.hpp"
#include "taut/pi_scalar.hpp"

namespace taut {

/// Two conventions for the symplectic form behind the volume:
///   kaehler     — ω_WP itself (= π²κ₁), boundary twist b²/4·ψ;
///   mirzakhani  — 2ω_WP, boundary twist b²/2·ψ.
/// Coefficients differ by exactly 2^{3g-3+n}.
enum class WpNormalization { kaehler, mirzakhani };

inline const char* to_string(WpNormalization n) {
    return n == WpNormalization::kaehler ? "kaehler" : "mirzakhani";
}

/// Volume of the moduli space of bordered surfaces as a polynomial in the
/// squared boundary lengths:  V_{g,n}(b) = Σ_α c(α) · b^{2α}.
///
/// Every coefficient is strictly positive with π-grade exactly
/// 6g-6+2n-2|α|, and the coefficient map is symmetric under permuting α.
struct VolumePolynomial {
    int g = 0;
    int n = 0;
    WpNormalization normalization = WpNormalization::mirzakhani;
    std::map<std::vector<int>, PiScalar> coefficients;

    const PiScalar& coeff(const std::vector<int>& alpha) const {
        static const PiScalar kZero;
        auto it = coefficients.find(alpha);
        return it == coefficients.end() ? kZero : it->second;
    }

    PiScalar constant_term() const { return coeff(std::vector<int>(n, 0)); }

    /// Numeric evaluation at boundary lengths b (presentation only).
    double evaluate(const std::vector<double>& b) const {
        if (static_cast<int>(b.size()) != n)
            throw std::invalid_argument("VolumePolynomial::evaluate: need n boundary lengths");
        for (double v : b)
            if (v < 0) throw std::invalid_argument("VolumePolynomial::evaluate: lengths must be >= 0");
        double total = 0.0;
        for (const auto& [alpha, c] : coefficients) {
            double term = c.to_double();
            for (int j = 0; j < n; ++j)
                for (int rep = 0; rep < alpha[j]; ++rep) term *= b[j] * b[j];
            total += term;
        }
        return total;
    }
};

namespace detail {

inline void for_each_alpha(int n, int max_total,
                           const std::function<void(const std::vector<int>&, int)>& fn) {
    std::vector<int> alpha(n, 0);
    std::function<void(int, int)> walk = [&](int slot, int used) {
        if (slot == n) {
            fn(alpha, used);
            return;
        }
        for (int e = 0; e + used <= max_total; ++e) {
            alpha[slot] = e;
            walk(slot + 1, used + e);
        }
        alpha[slot] = 0;
    };
    walk(0, 0);
}

}  // namespace detail

/// Reconstructs the volume polynomial from intersection pairings via the
/// symplectic-reduction expansion of the twisted Kähler class
///     ω(b) = c_ω·κ₁ + Σ_j (b_j²/s)·ψ_j ,
/// integrating exp ω(b) in top degree:
///     V(b) = Σ_{|α|+m = 3g-3+n} ∏_j (1/α_j!)(1/s)^{α_j} · c_ω^m/m!
///                · ⟨∏ψ_j^{α_j} κ₁^m⟩_g · b^{2α} ,
/// with (s, c_ω) = (4, π²) for the kaehler convention and (2, 2π²) for
/// the mirzakhani convention.
inline VolumePolynomial volume_polynomial(const PairingEngine& engine, int g, int n,
                                          WpNormalization norm) {
    require(stable(g, n), "volume_polynomial: unstable (g, n)");
    const int dim = 3 * g - 3 + n;
    const Rational s = norm == WpNormalization::kaehler ? Rational(4) : Rational(2);
    const Rational c_omega = norm == WpNormalization::kaehler ? Rational(1) : Rational(2);

    VolumePolynomial vol;
    vol.g = g;
    vol.n = n;
    vol.normalization = norm;
    detail::for_each_alpha(n, dim, [&](const std::vector<int>& alpha, int total) {
        const int m = dim - total;
        Rational value = engine.kappa_psi(TauKappaKey(g, alpha, m));
        if (value.is_zero()) return;
        Rational coeff = value * Rational::pow(c_omega, m) / Rational::factorial(m);
        for (int e : alpha) coeff /= Rational::factorial(e) * Rational::pow(s, e);
        vol.coefficients.emplace(alpha, PiScalar(2 * m, coeff));
    });
    return vol;
}

/// Takhtajan–Zograf volume: the top power of the TZ Kähler form
/// Σ_j ω_TZ,j over dimension factorial,  ∫ (Σ_j ω_TZ,j)^d / d!  with
/// d = 3g-3+n.  In dimension one this is the TZ volume form on the nose;
/// the d!-normalization in higher dimension is this library's convention.
inline PiScalar tz_volume(const PairingEngine& engine, int g, int n) {
    require(stable(g, n), "tz_volume: unstable (g, n)");
    const int dim = 3 * g - 3 + n;
    PiScalar total;
    detail::for_each_alpha(n, dim, [&](const std::vector<int>& alpha, int used) {
        if (used != dim) return;
        PiScalar term = tz_wp_pairing(engine, g, n, alpha, 0);
        if (term.is_zero()) return;
        Rational scale(1);
        for (int e : alpha) scale /= Rational::factorial(e);
        total += term * scale;
    });
    return total;
}

// ---------------------------------------------------------------------------
// rendering

namespace render {

/// "\tfrac12" for small positive fractions, "\tfrac{169}{2880}" otherwise.
inline std::string latex_fraction(const Rational& q) {
    std::string sign = q.sign() < 0 ? "-" : "";
    Rational mag = q.sign() < 0 ? -q : q;
    if (mag.is_integer()) return sign + mag.num().to_decimal();
    std::string num = mag.num().to_decimal(), den = mag.den().to_decimal();
    if (num.size() == 1 && den.size() == 1) return sign + "\\tfrac" + num + den;
    return sign + "\\tfrac{" + num + "}{" + den + "}";
}

inline std::string latex_pi_power(int p) {
    if (p == 0) return "";
    if (p < 10) return "\\pi^" + std::to_string(p);
    return "\\pi^{" + std::to_string(p) + "}";
}

/// One π-term as a LaTeX factor, e.g. "2\pi^2", "\tfrac{1}{12}\pi^2", "5".
inline std::string latex_pi_term(int p, const Rational& q, bool omit_unit_coeff) {
    std::string pi = latex_pi_power(p);
    if (pi.empty()) return latex_fraction(q);
    if (omit_unit_coeff && q.is_one()) return pi;
    if (omit_unit_coeff && q == Rational(-1)) return "-" + pi;
    return latex_fraction(q) + pi;
}

inline std::string latex_pi_scalar(const PiScalar& v) {
    if (v.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [p, q] : v.terms()) {
        if (!first) out += q.sign() < 0 ? " - " : " + ";
        Rational shown = (!first && q.sign() < 0) ? -q : q;
        out += latex_pi_term(p, shown, true);
        first = false;
    }
    return out;
}

inline std::string plain_pi_scalar(const PiScalar& v) { return v.to_string(); }

}  // namespace render

namespace detail {

struct VolumeOrbit {
    std::vector<int> rep;                   // sorted descending
    std::vector<std::vector<int>> members;  // lex descending
    PiScalar coeff;
};

/// Groups the symmetric coefficient map into permutation orbits, ordered
/// by total degree then by representative.
inline std::vector<VolumeOrbit> volume_orbits(const VolumePolynomial& v) {
    std::map<std::vector<int>, VolumeOrbit> orbits;
    for (const auto& [alpha, c] : v.coefficients) {
        std::vector<int> rep = alpha;
        std::sort(rep.begin(), rep.end(), std::greater<>());
        auto it = orbits.find(rep);
        if (it == orbits.end()) {
            VolumeOrbit o;
            o.rep = rep;
            o.coeff = c;
            o.members.push_back(alpha);
            orbits.emplace(std::move(rep), std::move(o));
        } else {
            it->second.members.push_back(alpha);
        }
    }
    std::vector<VolumeOrbit> out;
    for (auto& [rep, o] : orbits) {
        std::sort(o.members.begin(), o.members.end(), std::greater<>());
        out.push_back(std::move(o));
    }
    std::sort(out.begin(), out.end(), [](const VolumeOrbit& a, const VolumeOrbit& b) {
        int ta = 0, tb = 0;
        for (int e : a.rep) ta += e;
        for (int e : b.rep) tb += e;
        if (ta != tb) return ta < tb;
        return a.rep < b.rep;
    });
    return out;
}

inline std::string monomial_latex(const std::vector<int>& alpha) {
    std::string out;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j] == 0) continue;
        std::string idx = std::to_string(j + 1);
        out += "b_" + (idx.size() == 1 ? idx : "{" + idx + "}");
        int p = 2 * alpha[j];
        out += p < 10 ? "^" + std::to_string(p) : "^{" + std::to_string(p) + "}";
    }
    return out;
}

inline std::string monomial_plain(const std::vector<int>& alpha) {
    std::string out;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j] == 0) continue;
        if (!out.empty()) out += "*";
        out += "b" + std::to_string(j + 1) + "^" + std::to_string(2 * alpha[j]);
    }
    return out;
}

}  // namespace detail

/// LaTeX form with permutation orbits grouped, e.g. for (g,n) = (0,4):
/// "2\pi^2 + \tfrac12(b_1^2+b_2^2+b_3^2+b_4^2)".
inline std::string to_latex(const VolumePolynomial& v) {
    auto orbits = detail::volume_orbits(v);
    if (orbits.empty()) return "0";
    std::string out;
    for (const auto& o : orbits) {
        if (!out.empty()) out += " + ";
        bool constant = o.members.size() == 1 && detail::monomial_latex(o.rep).empty();
        if (constant) {
            out += render::latex_pi_scalar(o.coeff);
            continue;
        }
        std::string coeff;
        if (o.coeff.is_monomial()) {
            const auto& [p, q] = *o.coeff.terms().begin();
            coeff = q.is_one() && p == 0 ? "" : render::latex_pi_term(p, q, true);
        } else {
            coeff = "(" + render::latex_pi_scalar(o.coeff) + ")";
        }
        if (o.members.size() == 1) {
            out += coeff + detail::monomial_latex(o.members.front());
        } else {
            std::string group;
            for (const auto& alpha : o.members) {
                if (!group.empty()) group += "+";
                group += detail::monomial_latex(alpha);
            }
            out += coeff + "(" + group + ")";
        }
    }
    return out;
}

/// Plain-text form, e.g. "2*pi^2 + 1/2*(b1^2+b2^2+b3^2+b4^2)".
inline std::string to_plain(const VolumePolynomial& v) {
    auto orbits = detail::volume_orbits(v);
    if (orbits.empty()) return "0";
    std::string out;
    for (const auto& o : orbits) {
        if (!out.empty()) out += " + ";
        bool constant = o.members.size() == 1 && detail::monomial_plain(o.rep).empty();
        if (constant) {
            out += render::plain_pi_scalar(o.coeff);
            continue;
        }
        std::string coeff;
        if (o.coeff.is_monomial()) {
            const auto& [p, q] = *o.coeff.terms().begin();
            if (!(q.is_one() && p == 0)) coeff = PiScalar(p, q).to_string() + "*";
        } else {
            coeff = "(" + o.coeff.to_string() + ")*";
        }
        if (o.members.size() == 1) {
            out += coeff + detail::monomial_plain(o.members.front());
        } else {
            std::string group;
            for (const auto& alpha : o.members) {
                if (!group.empty()) group += "+";
                group += detail::monomial_plain(alpha);
            }
            out += coeff + "(" + group + ")";
        }
    }
    return out;
}

}  // namespace taut
