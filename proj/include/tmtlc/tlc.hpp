#pragma once

// Certification pipeline: symbolic doubly-monic certificates over Z[u],
// numeric spot checks over Q, finite-field counterexample search, and
// badly-approximable evidence from the recurrence engines.

#include "tmtlc/hankel.hpp"

#include <chrono>
#include <string>

namespace tmtlc {

enum class Verdict {
    certified_up_to_bound,
    symbolic_certificate,
    counterexample,
    aborted_precision,
};

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::certified_up_to_bound: return "certified-up-to-bound";
        case Verdict::symbolic_certificate: return "symbolic-certificate";
        case Verdict::counterexample: return "counterexample";
        case Verdict::aborted_precision: return "aborted-precision";
    }
    return "?";
}

struct Witness {
    long n;
    long l;
    std::string det;
};

struct CertificationReport {
    std::string u;       // parameter rendering ("symbolic" for Z[u])
    std::string domain;  // "Zu", "Q", "Fp:<p>"
    long N = 0;
    std::string mode;    // "symbolic" | "numeric" | "finite-field"
    Verdict verdict = Verdict::certified_up_to_bound;
    std::vector<Witness> witnesses;  // singular (or non-doubly-monic) cells
    long cells = 0;
    long singular = 0;
    long doubly_monic = 0;
    bool degrees_verified = false;
    long runtime_ms = 0;
    std::string coefficient_table_hash;
};

// Deficiency threshold of Prop-1 type: deg(P) / (d - 1). Membership rule:
// g_P is a t-LC exception iff its deficiency is at most this value.
template <class K>
Rat elc_threshold(const Poly<K>& P, long d) {
    if (d < 2) throw undefined_input("elc_threshold: d must be >= 2");
    if (P.degree() < 1) throw undefined_input("elc_threshold: deg P must be >= 1");
    Rat r(P.degree(), d - 1);
    r.canonicalize();
    return r;
}

namespace detail {

inline long now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

}  // namespace detail

// Symbolic certificate over Z[u]: every det H(n,l) with n + 2l <= N must be
// doubly monic; then P2 certifies nonvanishing for every rational u outside
// {-1, 0, 1} simultaneously on the covered cells. Degrees are checked against
// the sigma formula cell-wise.
inline CertificationReport certify_symbolic(long N, int threads = 0) {
    long t0 = detail::now_ms();
    Poly<Int> u = Poly<Int>::monomial(Int(1), 1);
    auto g = expand_product(gu_spec(u), N);
    auto grid = grid_compute(g, N, threads);

    CertificationReport rep;
    rep.u = "symbolic";
    rep.domain = "Zu";
    rep.N = N;
    rep.mode = "symbolic";
    rep.cells = static_cast<long>(grid.cells.size());
    bool all_dm = true;
    bool degrees_ok = true;
    for (const auto& c : grid.cells) {
        if (c.singular) ++rep.singular;
        if (c.doubly_monic && *c.doubly_monic)
            ++rep.doubly_monic;
        else {
            all_dm = false;
            rep.witnesses.push_back({c.n, c.l, to_string(c.det, "u")});
        }
        if (!c.singular && c.degree != degree_formula_h(c.n, c.l)) degrees_ok = false;
    }
    rep.degrees_verified = degrees_ok;
    if (rep.singular > 0)
        rep.verdict = Verdict::counterexample;
    else if (all_dm && degrees_ok)
        rep.verdict = Verdict::symbolic_certificate;
    else
        rep.verdict = Verdict::certified_up_to_bound;  // downgraded, witnesses attached
    rep.runtime_ms = detail::now_ms() - t0;
    return rep;
}

// Grid scan over Q without the Thm-1.2 precondition; used to exhibit the
// u = -1 counterexample.
inline CertificationReport certify_numeric_unchecked(const Rat& u, long N, int threads = 0) {
    long t0 = detail::now_ms();
    auto g = expand_product(gu_spec(u), N);
    auto grid = grid_compute(g, N, threads);
    CertificationReport rep;
    rep.u = to_string(u);
    rep.domain = "Q";
    rep.N = N;
    rep.mode = "numeric";
    rep.cells = static_cast<long>(grid.cells.size());
    for (const auto& c : grid.cells) {
        if (c.singular) {
            ++rep.singular;
            rep.witnesses.push_back({c.n, c.l, to_string(c.det)});
        }
    }
    rep.verdict = rep.singular ? Verdict::counterexample : Verdict::certified_up_to_bound;
    rep.runtime_ms = detail::now_ms() - t0;
    return rep;
}

// Numeric spot check over Q for a fixed rational u not in {-1, 0, 1}.
inline CertificationReport certify_numeric(const Rat& u, long N, int threads = 0) {
    if (u == 0 || u == 1 || u == -1)
        throw undefined_input("certify_numeric: u must avoid {-1, 0, 1} (u=0,1 give rational "
                              "g_u; u=-1 is the Thue-Morse counterexample path)");
    return certify_numeric_unchecked(u, N, threads);
}

struct FiniteFieldWitness {
    long n;
    long l;
    bool verified;                       // det recomputed independently
    std::optional<std::pair<long, long>> least_witness;  // exhaustive-scan mode
};

// Thm-1.3 witness: u = 1 gives the all-ones series, singular at (3,1);
// otherwise the minimal even n with v2(n) = ord(u) is n = 2^{ord(u)} and
// det H(n,1) = u^{2 tau2(n)} (u^{v2(n)} - 1) = 0.
inline FiniteFieldWitness finite_field_search(const Int& p, const Int& uval,
                                              bool exhaustive_scan = false) {
    Fp u = Fp::make(p, uval);
    if (u.is_zero())
        throw undefined_input("finite_field_search: u = 0 (g_0 is rational, out of scope)");
    long n;
    if (u.residue() == 1) {
        n = 3;
    } else {
        n = 1L << u.mult_order();
    }
    auto g = expand_product(gu_spec(u), n + 2);
    Fp det = det_exact(hankel_matrix(g, n, 1), u);
    FiniteFieldWitness w{n, 1, det.is_zero(), std::nullopt};
    if (exhaustive_scan) {
        long bound = n + 2;
        auto gg = expand_product(gu_spec(u), bound);
        for (long nn = 1; nn <= bound && !w.least_witness; ++nn)
            for (long ll = 0; nn + 2 * ll <= bound; ++ll) {
                Fp d = det_exact(hankel_matrix(gg, nn, ll), u);
                if (d.is_zero()) {
                    w.least_witness = std::make_pair(nn, ll);
                    break;
                }
            }
    }
    return w;
}

struct BadEvidence {
    long max_quotient_degree = 0;
    long terms = 0;
    bool recurrence_aborted = false;
    long abort_index = 0;
};

// Evidence (not proof) of Bad_{1/2} membership: a finite all-linear prefix.
template <class K>
BadEvidence bad_evidence(const K& u, long Kterms) {
    if (dom::is_zero(u) || u == dom::one_like(u))
        throw undefined_input("bad_evidence: g_u is rational for u in {0, 1}");
    BadEvidence ev;
    auto rec = beta_recurrence(u, Kterms);
    if (rec.aborted) {
        ev.recurrence_aborted = true;
        ev.abort_index = rec.abort_index;
        ev.terms = static_cast<long>(rec.terms.size());
        return ev;
    }
    // independent expansion: certified terms and the observed quotient degrees
    long N = 2 * Kterms + 4;
    auto g = expand_product(gu_spec(u), N);
    auto cf = cf_expand(g, Kterms);
    ev.terms = cf.certified_count;
    ev.max_quotient_degree = cf.max_quotient_degree();
    return ev;
}

}  // namespace tmtlc
