#pragma once

// Exact integer/rational scalars and the 2-adic counting functions used
// throughout the continued-fraction and Hankel machinery.

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace tmtlc {

using Int = mpz_class;
using Rat = mpq_class;

struct undefined_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Number of ones in the binary expansion of n >= 0.
inline long tau2(const Int& n) {
    if (n < 0) throw undefined_input("tau2: negative argument");
    if (n == 0) return 0;
    return static_cast<long>(mpz_popcount(n.get_mpz_t()));
}

// Standard 2-adic valuation: largest k with 2^k | n, n >= 1.
inline long v2(const Int& n) {
    if (n <= 0) throw undefined_input("v2: argument must be positive");
    return static_cast<long>(mpz_scan1(n.get_mpz_t(), 0));
}

struct TwoAdicStats {
    long tau2;
    long v2;  // valid only when the queried n >= 1
};

inline TwoAdicStats two_adic_stats(const Int& n) {
    TwoAdicStats s{};
    s.tau2 = tau2(n);
    s.v2 = (n >= 1) ? v2(n) : 0;
    return s;
}

// sigma(n) = sum_{i=1}^{n} tau2(i), with sigma(n) = 0 for n <= 0.
inline Int sigma(long n) {
    if (n <= 0) return 0;
    Int acc = 0;
    for (long i = 1; i <= n; ++i) acc += tau2(i);
    return acc;
}

// The bijection {l+1,...,2l+1} -> {0,...,l}: m -> (m / 2^{v2(m)} - 1) / 2.
// Satisfies tau2(m) = tau2(phi(m)) + 1.
inline Int phi(const Int& m) {
    if (m <= 0) throw undefined_input("phi: argument must be positive");
    Int odd = m >> v2(m);
    return (odd - 1) / 2;
}

inline std::string to_string(const Int& n) { return n.get_str(); }

inline std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat parse_rational(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw undefined_input("cannot parse rational: " + s);
    q.canonicalize();
    return q;
}

inline bool is_probable_prime(const Int& p) {
    return mpz_probab_prime_p(p.get_mpz_t(), 32) != 0;
}

}  // namespace tmtlc
