#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "taut/class_algebra.hpp"
#include "taut/memo_store.hpp"
#include "taut/pi_scalar.hpp"
#include "taut/volume.hpp"

namespace taut {

using ordered_json = nlohmann::ordered_json;

// --- PiScalar ---------------------------------------------------------------
// {"terms":[{"pi_power":2k,"num":"...","den":"..."}]}, pi_power ascending.
// Numerator/denominator travel as decimal strings so consumers never
// overflow a native integer.

inline ordered_json to_json(const PiScalar& v) {
    ordered_json terms = ordered_json::array();
    for (const auto& [p, q] : v.terms()) {
        ordered_json t;
        t["pi_power"] = p;
        t["num"] = q.num().to_decimal();
        t["den"] = q.den().to_decimal();
        terms.push_back(std::move(t));
    }
    ordered_json out;
    out["terms"] = std::move(terms);
    return out;
}

inline PiScalar pi_scalar_from_json(const ordered_json& j) {
    PiScalar v;
    for (const auto& t : j.at("terms")) {
        int p = t.at("pi_power").get<int>();
        Rational q(BigInt::from_decimal(t.at("num").get<std::string>()),
                   BigInt::from_decimal(t.at("den").get<std::string>()));
        v.add_term(p, std::move(q));
    }
    return v;
}

// --- ClassExpression ---------------------------------------------------------
// {"n":n,"coeffs":{"kappa1":<PiScalar>,"psi_1":<PiScalar>,...}}

inline ordered_json to_json(const ClassExpression& e) {
    ordered_json coeffs = ordered_json::object();
    for (const auto& [gen, c] : e.coeffs()) coeffs[gen.name()] = to_json(c);
    ordered_json out;
    out["n"] = e.n();
    out["coeffs"] = std::move(coeffs);
    return out;
}

// --- VolumePolynomial ---------------------------------------------------------
// {"g":g,"n":n,"normalization":"...","terms":[{"alpha":[...],"coeff":<PiScalar>}]}
// Terms in ascending lexicographic alpha order.

inline ordered_json to_json(const VolumePolynomial& v) {
    ordered_json terms = ordered_json::array();
    for (const auto& [alpha, c] : v.coefficients) {
        ordered_json t;
        t["alpha"] = alpha;
        t["coeff"] = to_json(c);
        terms.push_back(std::move(t));
    }
    ordered_json out;
    out["g"] = v.g;
    out["n"] = v.n;
    out["normalization"] = to_string(v.normalization);
    out["terms"] = std::move(terms);
    return out;
}

// --- memo-cache persistence ----------------------------------------------------
// JSON-lines: a versioned header record, then one record per key,
//   {"g":0,"d":[0,0,0,1],"ell":0,"num":"1","den":"1"}
// sorted by (g, ell, d) so a cache file is byte-reproducible and merges
// cleanly under line-based tools.

inline constexpr int kCacheFormatVersion = 1;
inline constexpr const char* kCacheFormatName = "taut-cache";

inline std::string cache_to_jsonl(const MemoStore& store) {
    auto entries = store.snapshot();
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return std::tie(a.first.g, a.first.ell, a.first.d) <
               std::tie(b.first.g, b.first.ell, b.first.d);
    });
    ordered_json header;
    header["format"] = kCacheFormatName;
    header["version"] = kCacheFormatVersion;
    std::string out = header.dump() + "\n";
    for (const auto& [key, value] : entries) {
        ordered_json rec;
        rec["g"] = key.g;
        rec["d"] = key.d;
        rec["ell"] = key.ell;
        rec["num"] = value.num().to_decimal();
        rec["den"] = value.den().to_decimal();
        out += rec.dump() + "\n";
    }
    return out;
}

/// Loads records into the store.  Returns the number of entries read.
/// Malformed input throws std::invalid_argument.
inline std::size_t cache_from_jsonl(MemoStore& store, std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("cache: empty file (missing header)");
    ordered_json header = ordered_json::parse(line, nullptr, false);
    if (header.is_discarded() || header.value("format", "") != kCacheFormatName)
        throw std::invalid_argument("cache: not a taut-cache file");
    if (header.value("version", -1) != kCacheFormatVersion)
        throw std::invalid_argument("cache: unsupported version");
    std::size_t count = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ordered_json rec = ordered_json::parse(line, nullptr, false);
        if (rec.is_discarded()) throw std::invalid_argument("cache: malformed record");
        TauKappaKey key(rec.at("g").get<int>(), rec.at("d").get<std::vector<int>>(),
                        rec.at("ell").get<int>());
        Rational value(BigInt::from_decimal(rec.at("num").get<std::string>()),
                       BigInt::from_decimal(rec.at("den").get<std::string>()));
        if (!store.find(key)) store.insert(key, std::move(value));
        ++count;
    }
    return count;
}

inline std::size_t load_cache_file(MemoStore& store, const std::string& path) {
    std::ifstream in(path);
    if (!in) return 0;  // absent cache is a cold start, not an error
    return cache_from_jsonl(store, in);
}

inline void save_cache_file(const MemoStore& store, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp);
        out << cache_to_jsonl(store);
    }
    std::rename(tmp.c_str(), path.c_str());
}

}  // namespace taut
