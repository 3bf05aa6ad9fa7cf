#pragma once

#include <algorithm>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "taut/cusp.hpp"
#include "taut/json_io.hpp"
#include "taut/pairing_engine.hpp"
#include "taut/volume.hpp"

namespace taut::cli {

enum class Format { plain, json, latex };

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

inline Rational parse_decimal_rational(const std::string& text) {
    std::string s = text;
    auto slash = s.find('/');
    if (slash != std::string::npos) return Rational::parse(s);
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational::parse(s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    BigInt den(1);
    for (std::size_t k = dot + 1; k < s.size(); ++k) den = den * BigInt(10);
    return Rational(BigInt::from_decimal(digits), std::move(den));
}

inline std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stoi(item));
    if (out.empty()) throw std::invalid_argument("expected a comma-separated integer list");
    return out;
}

inline std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stod(item));
    if (out.empty()) throw std::invalid_argument("expected a comma-separated number list");
    return out;
}

/// Germs arrive as a flat comma list of re,im coefficient pairs:
/// "2,0,1,0" is h(z) = 2z + z².
inline GermSeries parse_germ(const std::string& text) {
    auto values = parse_double_list(text);
    if (values.size() % 2 != 0)
        throw std::invalid_argument("germ: expected re,im pairs (even count of numbers)");
    std::vector<std::complex<double>> coeffs;
    for (std::size_t i = 0; i < values.size(); i += 2)
        coeffs.emplace_back(values[i], values[i + 1]);
    return GermSeries(std::move(coeffs));
}

/// Term grammar for generic pairings: NAME[^POWER] with NAME one of
/// wp | kappa1 | psi:J | tz:J | det:K | pinched:ELL.
inline std::pair<ClassExpression, int> parse_class_term(const std::string& text, int n) {
    std::string name = text;
    int power = 1;
    if (auto caret = text.find('^'); caret != std::string::npos) {
        name = text.substr(0, caret);
        power = std::stoi(text.substr(caret + 1));
        if (power < 0) throw std::invalid_argument("term: power must be >= 0");
    }
    std::string arg;
    if (auto colon = name.find(':'); colon != std::string::npos) {
        arg = name.substr(colon + 1);
        name = name.substr(0, colon);
    }
    if (name == "wp") return {wp_class(n), power};
    if (name == "kappa1") return {kappa1_class(n), power};
    if (name == "psi") return {psi_class(std::stoi(arg), n), power};
    if (name == "tz") return {tz_class(std::stoi(arg), n), power};
    if (name == "tz-total") return {tz_total_class(n), power};
    if (name == "det") return {det_index_class(std::stoi(arg), n), power};
    if (name == "pinched") return {pinched_wp_class(parse_decimal_rational(arg), n), power};
    throw std::invalid_argument("term: unknown class '" + name + "'");
}

inline std::string latex_class_expression(const ClassExpression& e) {
    if (e.coeffs().empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [gen, c] : e.coeffs()) {
        std::string idx = std::to_string(gen.psi_index());
        std::string sym = gen.is_kappa1()
                              ? "\\kappa_1"
                              : "\\psi_" + (idx.size() == 1 ? idx : "{" + idx + "}");
        if (!c.is_monomial()) {  // mixed π-grades: keep the whole scalar visible
            out += (first ? "" : " + ") + ("(" + render::latex_pi_scalar(c) + ")") + sym;
            first = false;
            continue;
        }
        const auto& [p, q] = *c.terms().begin();
        bool negative = q.sign() < 0;
        Rational shown = (!first && negative) ? -q : q;
        if (!first) out += negative ? " - " : " + ";
        std::string coeff = render::latex_pi_term(p, shown, true);
        if (coeff == "1")
            coeff.clear();
        else if (coeff == "-1")
            coeff = "-";
        out += coeff + sym;
        first = false;
    }
    return out;
}

inline std::string plain_class_expression(const ClassExpression& e) {
    if (e.coeffs().empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [gen, c] : e.coeffs()) {
        Rational q = c.terms().begin()->second;
        int p = c.terms().begin()->first;
        bool negative = q.sign() < 0;
        if (first) {
            first = false;
        } else {
            out += negative ? " - " : " + ";
            if (negative) q = -q;
        }
        out += PiScalar(p, q).to_string() + "*" + gen.name();
    }
    return out;
}

struct CliState {
    Format format = Format::plain;
    std::string cache_path;
    bool no_cache = false;
    std::size_t max_memo_entries = 4'000'000;
    int max_depth = 256;

    std::unique_ptr<PairingEngine> engine;

    PairingEngine& get_engine() {
        if (!engine)
            engine = std::make_unique<PairingEngine>(
                EngineLimits{max_memo_entries, max_depth});
        return *engine;
    }

    std::string resolved_cache() const {
        if (no_cache) return {};
        if (!cache_path.empty()) return cache_path;
        if (const char* env = std::getenv("TAUT_CACHE")) return env;
        return {};
    }

    void load_cache() {
        std::string path = resolved_cache();
        if (!path.empty()) load_cache_file(get_engine().store(), path);
    }

    void save_cache() {
        std::string path = resolved_cache();
        if (!path.empty()) save_cache_file(get_engine().store(), path);
    }
};

/// Runs one CLI invocation.  argv excludes the program name.
/// Exit codes: 0 success, 2 validation / usage error, 3 resource limit.
inline int run_cli(std::vector<std::string> argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact tautological intersection pairings and Weil-Petersson volumes"};
    app.require_subcommand(1);

    CliState st;
    std::map<std::string, Format> format_names{
        {"plain", Format::plain}, {"json", Format::json}, {"latex", Format::latex}};
    app.add_option("--format", st.format, "output format")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case))
        ->default_val("plain");
    app.add_option("--cache", st.cache_path,
                   "memo-cache file (JSON lines); TAUT_CACHE is the env fallback");
    app.add_flag("--no-cache", st.no_cache, "disable cache load/store");
    app.add_option("--max-memo-entries", st.max_memo_entries, "memo store size cap");
    app.add_option("--max-depth", st.max_depth, "recursion depth cap");

    auto emit_scalar = [&](const PiScalar& v) {
        switch (st.format) {
            case Format::plain: out << v.to_string() << "\n"; break;
            case Format::json: out << to_json(v).dump() << "\n"; break;
            case Format::latex: out << render::latex_pi_scalar(v) << "\n"; break;
        }
    };

    // --- psi ------------------------------------------------------------
    auto* psi_cmd = app.add_subcommand("psi", "pure psi-pairing <tau_{d_1}...tau_{d_n}>_g");
    int psi_g = 0;
    std::string psi_d;
    psi_cmd->add_option("--g", psi_g, "genus")->required();
    psi_cmd->add_option("--d", psi_d, "comma-separated psi exponents")->required();
    psi_cmd->callback([&] {
        st.load_cache();
        Rational v = st.get_engine().tau(TauVector(psi_g, parse_int_list(psi_d)));
        st.save_cache();
        emit_scalar(PiScalar::from_rational(v));
    });

    // --- kappa-psi --------------------------------------------------------
    auto* kp_cmd = app.add_subcommand("kappa-psi", "mixed pairing <kappa_1^ell tau_{d_1}...>_g");
    int kp_g = 0, kp_ell = 0;
    std::string kp_d;
    kp_cmd->add_option("--g", kp_g, "genus")->required();
    kp_cmd->add_option("--d", kp_d, "comma-separated psi exponents")->required();
    kp_cmd->add_option("--ell", kp_ell, "kappa_1 power")->required();
    kp_cmd->callback([&] {
        st.load_cache();
        Rational v = st.get_engine().kappa_psi(TauKappaKey(kp_g, parse_int_list(kp_d), kp_ell));
        st.save_cache();
        emit_scalar(PiScalar::from_rational(v));
    });

    // --- pairing ----------------------------------------------------------
    auto* pair_cmd = app.add_subcommand(
        "pairing", "pairing of class-expression monomials, e.g. --term wp --term psi:1^2");
    int pr_g = 0, pr_n = 0;
    std::vector<std::string> pr_terms;
    pair_cmd->add_option("--g", pr_g, "genus")->required();
    pair_cmd->add_option("--n", pr_n, "punctures")->required();
    pair_cmd->add_option("--term", pr_terms, "NAME[^POWER]; NAME: wp|kappa1|psi:J|tz:J|tz-total|det:K|pinched:ELL")
        ->required();
    pair_cmd->callback([&] {
        std::vector<std::pair<ClassExpression, int>> monomials;
        for (const auto& t : pr_terms) monomials.push_back(parse_class_term(t, pr_n));
        st.load_cache();
        PiScalar v = pair(st.get_engine(), pr_g, monomials);
        st.save_cache();
        emit_scalar(v);
    });

    // --- tz-pairing ---------------------------------------------------------
    auto* tzp_cmd = app.add_subcommand("tz-pairing",
                                       "TZ/WP pairing with per-puncture TZ exponents");
    int tz_g = 0, tz_n = 0, tz_m = 0;
    std::string tz_a;
    tzp_cmd->add_option("--g", tz_g, "genus")->required();
    tzp_cmd->add_option("--n", tz_n, "punctures")->required();
    tzp_cmd->add_option("--a", tz_a, "comma-separated TZ exponents (length n)")->required();
    tzp_cmd->add_option("--m", tz_m, "WP power")->required();
    tzp_cmd->callback([&] {
        st.load_cache();
        PiScalar v = tz_wp_pairing(st.get_engine(), tz_g, tz_n, parse_int_list(tz_a), tz_m);
        st.save_cache();
        emit_scalar(v);
    });

    // --- tz-volume ----------------------------------------------------------
    auto* tzv_cmd = app.add_subcommand("tz-volume", "top power of the TZ Kaehler form / d!");
    int tzv_g = 0, tzv_n = 0;
    tzv_cmd->add_option("--g", tzv_g, "genus")->required();
    tzv_cmd->add_option("--n", tzv_n, "punctures")->required();
    tzv_cmd->callback([&] {
        st.load_cache();
        PiScalar v = tz_volume(st.get_engine(), tzv_g, tzv_n);
        st.save_cache();
        emit_scalar(v);
    });

    // --- volume ----------------------------------------------------------
    auto* vol_cmd = app.add_subcommand("volume", "Weil-Petersson volume polynomial V_{g,n}(b)");
    int vol_g = 0, vol_n = 0;
    WpNormalization vol_norm = WpNormalization::mirzakhani;
    std::map<std::string, WpNormalization> norm_names{
        {"kaehler", WpNormalization::kaehler}, {"mirzakhani", WpNormalization::mirzakhani}};
    vol_cmd->add_option("--g", vol_g, "genus")->required();
    vol_cmd->add_option("--n", vol_n, "boundary components")->required();
    vol_cmd->add_option("--normalization", vol_norm, "kaehler | mirzakhani")
        ->transform(CLI::CheckedTransformer(norm_names, CLI::ignore_case))
        ->default_val("mirzakhani");
    vol_cmd->callback([&] {
        st.load_cache();
        VolumePolynomial v = volume_polynomial(st.get_engine(), vol_g, vol_n, vol_norm);
        st.save_cache();
        if (vol_g == 1 && vol_n == 1)
            err << "note: V_{1,1} uses the elliptic-involution convention "
                   "(pairings halved); some published tables differ by a factor of 2.\n";
        switch (st.format) {
            case Format::plain: out << to_plain(v) << "\n"; break;
            case Format::json: out << to_json(v).dump() << "\n"; break;
            case Format::latex: out << to_latex(v) << "\n"; break;
        }
    });

    // --- volume-eval ---------------------------------------------------------
    auto* ve_cmd = app.add_subcommand("volume-eval", "numeric volume at boundary lengths b");
    int ve_g = 0, ve_n = 0;
    WpNormalization ve_norm = WpNormalization::mirzakhani;
    std::string ve_b;
    ve_cmd->add_option("--g", ve_g, "genus")->required();
    ve_cmd->add_option("--n", ve_n, "boundary components")->required();
    ve_cmd->add_option("--b", ve_b, "comma-separated boundary lengths (length n)")->required();
    ve_cmd->add_option("--normalization", ve_norm, "kaehler | mirzakhani")
        ->transform(CLI::CheckedTransformer(norm_names, CLI::ignore_case))
        ->default_val("mirzakhani");
    ve_cmd->callback([&] {
        if (st.format == Format::latex)
            throw CLI::ValidationError("volume-eval", "latex output not supported here");
        st.load_cache();
        VolumePolynomial v = volume_polynomial(st.get_engine(), ve_g, ve_n, ve_norm);
        st.save_cache();
        if (ve_g == 1 && ve_n == 1)
            err << "note: V_{1,1} uses the elliptic-involution convention "
                   "(pairings halved); some published tables differ by a factor of 2.\n";
        auto b = parse_double_list(ve_b);
        double value = v.evaluate(b);
        if (st.format == Format::json) {
            ordered_json j;
            j["g"] = ve_g;
            j["n"] = ve_n;
            j["normalization"] = to_string(ve_norm);
            j["b"] = b;
            j["value"] = value;
            out << j.dump() << "\n";
        } else {
            out << fmt_double(value) << "\n";
        }
    });

    // --- det-index -------------------------------------------------------------
    auto* det_cmd = app.add_subcommand("det-index",
                                       "determinant-index class (1/12)[(6k^2-6k+1) kappa_1 - sum psi_j]");
    int det_k = 0, det_n = 0;
    det_cmd->add_option("--k", det_k, "symmetric-power index k >= 0")->required();
    det_cmd->add_option("--n", det_n, "punctures")->required();
    det_cmd->callback([&] {
        ClassExpression e = det_index_class(det_k, det_n);
        switch (st.format) {
            case Format::plain: out << plain_class_expression(e) << "\n"; break;
            case Format::json: out << to_json(e).dump() << "\n"; break;
            case Format::latex: out << latex_class_expression(e) << "\n"; break;
        }
    });

    // --- cusp-ratio ----------------------------------------------------------
    auto* cr_cmd = app.add_subcommand("cusp-ratio", "pullback/base cusp metric ratio at z");
    std::string cr_germ, cr_z;
    cr_cmd->add_option("--germ", cr_germ, "re,im coefficient pairs for a1,a2,...")->required();
    cr_cmd->add_option("--z", cr_z, "evaluation point re,im")->required();
    cr_cmd->callback([&] {
        if (st.format == Format::latex)
            throw CLI::ValidationError("cusp-ratio", "latex output not supported here");
        auto zv = parse_double_list(cr_z);
        if (zv.size() != 2) throw std::invalid_argument("--z: expected re,im");
        std::complex<double> z(zv[0], zv[1]);
        double ratio = metric_ratio(parse_germ(cr_germ), z);
        if (st.format == Format::json) {
            ordered_json j;
            j["z"] = zv;
            j["ratio"] = ratio;
            out << j.dump() << "\n";
        } else {
            out << fmt_double(ratio) << "\n";
        }
    });

    // --- cusp-limit -------------------------------------------------------------
    auto* cl_cmd = app.add_subcommand(
        "cusp-limit", "extrapolate (2pi/l)·log(ratio) -> 2·log|h'(0)| toward the puncture");
    std::string cl_germ;
    double cl_start = 1e-3, cl_stop = 1e-8, cl_angle = 0.0, cl_tol = 1e-3;
    int cl_count = 6;
    cl_cmd->add_option("--germ", cl_germ, "re,im coefficient pairs")->required();
    cl_cmd->add_option("--start", cl_start, "largest |z| (default 1e-3)");
    cl_cmd->add_option("--stop", cl_stop, "smallest |z| (default 1e-8)");
    cl_cmd->add_option("--count", cl_count, "number of log-spaced samples (default 6)");
    cl_cmd->add_option("--angle", cl_angle, "ray angle in radians");
    cl_cmd->add_option("--tolerance", cl_tol, "convergence tolerance (default 1e-3)");
    cl_cmd->callback([&] {
        if (st.format == Format::latex)
            throw CLI::ValidationError("cusp-limit", "latex output not supported here");
        GermSeries h = parse_germ(cl_germ);
        LimitReport rep =
            limit_norm_estimate(h, radial_sequence(cl_start, cl_stop, cl_count, cl_angle), cl_tol);
        if (st.format == Format::json) {
            ordered_json samples = ordered_json::array();
            for (const auto& s : rep.samples) {
                ordered_json rec;
                rec["abs_z"] = s.abs_z;
                rec["value"] = s.value;
                samples.push_back(std::move(rec));
            }
            ordered_json j;
            j["samples"] = std::move(samples);
            j["estimate"] = rep.estimate;
            j["target"] = rep.target;
            j["converged"] = rep.converged;
            out << j.dump() << "\n";
        } else {
            for (const auto& s : rep.samples)
                out << "|z|=" << fmt_double(s.abs_z) << "  value=" << fmt_double(s.value)
                    << "\n";
            out << "estimate " << fmt_double(rep.estimate) << "\n";
            out << "target " << fmt_double(rep.target) << "\n";
            out << "converged " << (rep.converged ? "yes" : "no") << "\n";
        }
    });

    // --- cusp-monotone -------------------------------------------------------------
    auto* cm_cmd = app.add_subcommand(
        "cusp-monotone", "max/min of the metric ratio over shrinking horocycles");
    std::string cm_germ;
    double cm_lmin = 0.25, cm_lmax = 1.0;
    int cm_steps = 12, cm_samples = 256;
    cm_cmd->add_option("--germ", cm_germ, "re,im coefficient pairs")->required();
    cm_cmd->add_option("--lmin", cm_lmin, "smallest horocycle length");
    cm_cmd->add_option("--lmax", cm_lmax, "largest horocycle length");
    cm_cmd->add_option("--steps", cm_steps, "grid size (default 12)");
    cm_cmd->add_option("--samples", cm_samples, "angles per horocycle (default 256)");
    cm_cmd->callback([&] {
        if (st.format == Format::latex)
            throw CLI::ValidationError("cusp-monotone", "latex output not supported here");
        if (!(cm_lmin > 0 && cm_lmax > cm_lmin && cm_steps >= 2))
            throw std::invalid_argument("cusp-monotone: need 0 < lmin < lmax, steps >= 2");
        std::vector<double> grid;
        for (int k = 0; k < cm_steps; ++k)
            grid.push_back(cm_lmin + (cm_lmax - cm_lmin) * k / (cm_steps - 1));
        MonotonicityReport rep =
            schwarz_monotonicity_check(parse_germ(cm_germ), grid, cm_samples);
        if (st.format == Format::json) {
            ordered_json j;
            j["lengths"] = rep.lengths;
            j["max_ratio"] = rep.max_ratio;
            j["min_ratio"] = rep.min_ratio;
            j["max_shape"] = to_string(rep.max_shape);
            j["min_shape"] = to_string(rep.min_shape);
            out << j.dump() << "\n";
        } else {
            for (std::size_t i = 0; i < rep.lengths.size(); ++i)
                out << "l=" << fmt_double(rep.lengths[i])
                    << "  max=" << fmt_double(rep.max_ratio[i])
                    << "  min=" << fmt_double(rep.min_ratio[i]) << "\n";
            out << "max: " << to_string(rep.max_shape) << "\n";
            out << "min: " << to_string(rep.min_shape) << "\n";
        }
    });

    // --- cache -------------------------------------------------------------
    auto* cache_cmd = app.add_subcommand("cache", "inspect or clear the persisted memo cache");
    auto* cache_inspect = cache_cmd->add_subcommand("inspect", "show cache stats");
    auto* cache_clear = cache_cmd->add_subcommand("clear", "delete the cache file");
    cache_cmd->require_subcommand(1);
    cache_inspect->callback([&] {
        std::string path = st.resolved_cache();
        if (path.empty()) throw std::invalid_argument("cache: no cache path (use --cache or TAUT_CACHE)");
        MemoStore probe;
        std::size_t entries = load_cache_file(probe, path);
        out << "path " << path << "\n";
        out << "entries " << entries << "\n";
    });
    cache_clear->callback([&] {
        std::string path = st.resolved_cache();
        if (path.empty()) throw std::invalid_argument("cache: no cache path (use --cache or TAUT_CACHE)");
        bool existed = std::filesystem::remove(path);
        out << (existed ? "cleared " : "no cache at ") << path << "\n";
    });

    for (auto* sub : {psi_cmd, kp_cmd, pair_cmd, tzp_cmd, tzv_cmd, vol_cmd, ve_cmd,
                      det_cmd, cr_cmd, cl_cmd, cm_cmd, cache_cmd, cache_inspect,
                      cache_clear})
        sub->fallthrough();  // lets --format etc. appear after the subcommand

    try {
        std::reverse(argv.begin(), argv.end());  // CLI11 vector parse wants reversed args
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_limit_error& e) {
        err << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace taut::cli
