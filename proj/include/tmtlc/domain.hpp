#pragma once

// Customization points so the series / continued-fraction / Hankel code can
// stay generic over coefficient domains. Fp elements carry their modulus, so
// zero/one are always derived from an exemplar element ("like").

#include "tmtlc/fp.hpp"
#include "tmtlc/numutil.hpp"

namespace tmtlc::dom {

template <class K>
struct traits;  // specialized per domain

template <>
struct traits<Int> {
    static constexpr bool is_field = false;
    static Int zero(const Int&) { return Int(0); }
    static Int one(const Int&) { return Int(1); }
    static Int from_long(const Int&, long n) { return Int(n); }
    static bool is_zero(const Int& x) { return x == 0; }
    static Int inv(const Int&) { throw undefined_input("Int: not a field"); }
};

template <>
struct traits<Rat> {
    static constexpr bool is_field = true;
    static Rat zero(const Rat&) { return Rat(0); }
    static Rat one(const Rat&) { return Rat(1); }
    static Rat from_long(const Rat&, long n) { return Rat(n); }
    static bool is_zero(const Rat& x) { return x == 0; }
    static Rat inv(const Rat& x) {
        if (x == 0) throw undefined_input("Rat: inverse of zero");
        return 1 / x;
    }
};

template <>
struct traits<Fp> {
    static constexpr bool is_field = true;
    static Fp zero(const Fp& like) { return Fp(like.modulus(), 0); }
    static Fp one(const Fp& like) { return Fp(like.modulus(), 1); }
    static Fp from_long(const Fp& like, long n) { return Fp(like.modulus(), Int(n)); }
    static bool is_zero(const Fp& x) { return x.is_zero(); }
    static Fp inv(const Fp& x) { return x.inv(); }
};

template <class K>
inline constexpr bool is_field_v = traits<K>::is_field;

template <class K>
K zero_like(const K& like) { return traits<K>::zero(like); }
template <class K>
K one_like(const K& like) { return traits<K>::one(like); }
template <class K>
K from_long(const K& like, long n) { return traits<K>::from_long(like, n); }
template <class K>
bool is_zero(const K& x) { return traits<K>::is_zero(x); }
template <class K>
K inv(const K& x) { return traits<K>::inv(x); }

template <class K>
K pow_long(const K& x, long e) {
    if (e < 0) return pow_long(inv(x), -e);
    K acc = one_like(x);
    K base = x;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

}  // namespace tmtlc::dom
