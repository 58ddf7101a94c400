#pragma once

// Export formats (CSV / JSON), content hashing, and the on-disk result cache.
// All data sections are emitted from sorted containers, so byte-identical
// output is independent of thread count.

#include "tmtlc/tlc.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace tmtlc {

using json = nlohmann::ordered_json;

// Coefficient rendering, uniform across domains (Z[u] prints in u).
inline std::string coeff_str(const Int& x) { return to_string(x); }
inline std::string coeff_str(const Rat& x) { return to_string(x); }
inline std::string coeff_str(const Fp& x) { return to_string(x); }
inline std::string coeff_str(const Poly<Int>& x) { return to_string(x, "u"); }
inline std::string coeff_str(const RatFunc& x) { return to_string(x); }

inline std::string fnv1a_hex(const std::string& data) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", h);
    return buf;
}

// ---- Series ----

template <class K>
std::string series_to_csv(const LaurentSeries<K>& s) {
    std::ostringstream out;
    out << "k,coefficient\n";
    for (long k = s.kmin(); k <= s.trunc(); ++k) out << k << "," << coeff_str(s.coeff(k)) << "\n";
    return out.str();
}

template <class K>
json series_to_json(const LaurentSeries<K>& s) {
    json arr = json::array();
    for (long k = s.kmin(); k <= s.trunc(); ++k)
        arr.push_back(json{{"k", k}, {"coefficient", coeff_str(s.coeff(k))}});
    return arr;
}

template <class K>
std::string coefficient_table_hash(const LaurentSeries<K>& s) {
    return fnv1a_hex(series_to_csv(s));
}

// ---- Continued fractions ----

template <class K>
json cf_to_json(const ContinuedFraction<K>& cf) {
    json terms = json::array();
    for (const auto& t : cf.terms) {
        json jt{{"beta", coeff_str(t.beta)}, {"bstar", to_string(t.bstar, "t")}};
        if (t.alpha_lin) jt["alphaLin"] = coeff_str(*t.alpha_lin);
        terms.push_back(std::move(jt));
    }
    return json{{"b0", to_string(cf.b0, "t")},
                {"terms", std::move(terms)},
                {"certifiedCount", cf.certified_count},
                {"terminating", cf.terminating}};
}

// ---- Grids ----

template <class K>
std::string grid_to_csv(const HankelGrid<K>& g) {
    std::ostringstream out;
    out << "n,l,degree,singular,doublyMonic,det\n";
    for (const auto& c : g.cells) {
        out << c.n << "," << c.l << ",";
        if constexpr (std::is_same_v<K, Poly<Int>>) {
            if (c.singular)
                out << "-inf";
            else
                out << c.degree;
        }
        out << "," << (c.singular ? 1 : 0) << ",";
        if (c.doubly_monic) out << (*c.doubly_monic ? 1 : 0);
        out << "," << coeff_str(c.det) << "\n";
    }
    return out.str();
}

template <class K>
json grid_to_json(const HankelGrid<K>& g) {
    json cells = json::array();
    for (const auto& c : g.cells) {
        json jc{{"n", c.n}, {"l", c.l}, {"singular", c.singular}, {"det", coeff_str(c.det)}};
        if constexpr (std::is_same_v<K, Poly<Int>>) {
            if (!c.singular) jc["degree"] = c.degree;
            if (c.doubly_monic) jc["doublyMonic"] = *c.doubly_monic;
        }
        cells.push_back(std::move(jc));
    }
    return json{{"N", g.N}, {"cells", std::move(cells)}};
}

// ---- Certification reports ----

inline json report_to_json(const CertificationReport& r) {
    json w = json::array();
    for (const auto& x : r.witnesses) w.push_back(json{{"n", x.n}, {"l", x.l}, {"det", x.det}});
    return json{{"version", 1},
                {"params", {{"u", r.u}, {"domain", r.domain}, {"N", r.N}, {"mode", r.mode}}},
                {"verdict", to_string(r.verdict)},
                {"witnesses", std::move(w)},
                {"counts",
                 {{"cells", r.cells}, {"singular", r.singular}, {"doublyMonic", r.doubly_monic}}},
                {"runtimeMs", r.runtime_ms},
                {"coefficientTableHash", r.coefficient_table_hash}};
}

// ---- Result cache ----
//
// JSON payload files beside a manifest index; payloads are verified against
// their stored content hash on read, and corrupt entries are evicted.

struct CacheKey {
    std::string spec;    // e.g. "g:t+u:d2"
    std::string domain;  // "Q" | "Fp:<p>" | "Zu" | "Qu"
    std::string u;       // parameter rendering, "" for symbolic domains
    long N = 0;
    std::string kind;    // "grid" | "cf" | "series"

    std::string id() const {
        return fnv1a_hex(spec + "|" + domain + "|" + u + "|" + std::to_string(N) + "|" + kind);
    }
};

class ResultCache {
  public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    static std::filesystem::path default_dir() {
        if (const char* env = std::getenv("TMTLC_CACHE_DIR")) return env;
        return std::filesystem::temp_directory_path() / "tmtlc-cache";
    }

    std::optional<std::string> load(const CacheKey& key) {
        auto mpath = manifest_path(key);
        std::ifstream mf(mpath);
        if (!mf) return std::nullopt;
        json manifest;
        try {
            mf >> manifest;
        } catch (...) {
            evict(key);
            return std::nullopt;
        }
        auto ppath = dir_ / (key.id() + ".payload");
        std::ifstream pf(ppath, std::ios::binary);
        if (!pf) return std::nullopt;
        std::ostringstream buf;
        buf << pf.rdbuf();
        std::string payload = buf.str();
        if (!manifest.contains("hash") || manifest["hash"] != fnv1a_hex(payload)) {
            evict(key);  // corrupt payloads are never used
            return std::nullopt;
        }
        return payload;
    }

    void store(const CacheKey& key, const std::string& payload) {
        auto ppath = dir_ / (key.id() + ".payload");
        {
            std::ofstream pf(ppath, std::ios::binary | std::ios::trunc);
            if (!pf) throw std::runtime_error("cache: cannot write " + ppath.string());
            pf << payload;
        }
        json manifest{{"spec", key.spec}, {"domain", key.domain},   {"u", key.u},
                      {"N", key.N},       {"kind", key.kind},       {"hash", fnv1a_hex(payload)}};
        std::ofstream mf(manifest_path(key), std::ios::trunc);
        if (!mf) throw std::runtime_error("cache: cannot write manifest for " + key.id());
        mf << manifest.dump(2) << "\n";
    }

    void evict(const CacheKey& key) {
        std::error_code ec;
        std::filesystem::remove(manifest_path(key), ec);
        std::filesystem::remove(dir_ / (key.id() + ".payload"), ec);
    }

    const std::filesystem::path& dir() const { return dir_; }

  private:
    std::filesystem::path manifest_path(const CacheKey& key) const {
        return dir_ / (key.id() + ".manifest.json");
    }

    std::filesystem::path dir_;
};

}  // namespace tmtlc
