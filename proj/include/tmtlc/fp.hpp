#pragma once

// Prime field F_p. Elements carry their modulus; mixing moduli is a bug
// and asserts. The primality check happens once, at domain construction.

#include "tmtlc/numutil.hpp"

#include <cassert>
#include <utility>

namespace tmtlc {

class Fp {
  public:
    Fp() : p_(0), v_(0) {}  // uninitialized sentinel; only valid as assignment target

    Fp(Int p, Int v) : p_(std::move(p)), v_(std::move(v)) {
        assert(p_ >= 2);
        v_ %= p_;
        if (v_ < 0) v_ += p_;
    }

    // Domain constructor: validates primality.
    static Fp make(const Int& p, const Int& v) {
        if (p < 2 || !is_probable_prime(p))
            throw undefined_input("Fp: modulus " + p.get_str() + " is not prime");
        return Fp(p, v);
    }

    const Int& modulus() const { return p_; }
    const Int& residue() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    friend Fp operator+(const Fp& a, const Fp& b) {
        assert(a.p_ == b.p_);
        return Fp(a.p_, a.v_ + b.v_);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        assert(a.p_ == b.p_);
        return Fp(a.p_, a.v_ - b.v_);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        assert(a.p_ == b.p_);
        return Fp(a.p_, a.v_ * b.v_);
    }
    Fp operator-() const { return Fp(p_, -v_); }

    Fp inv() const {
        if (is_zero()) throw undefined_input("Fp: inverse of zero");
        Int r;
        mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), p_.get_mpz_t());
        return Fp(p_, r);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }

    friend bool operator==(const Fp& a, const Fp& b) {
        assert(a.p_ == b.p_);
        return a.v_ == b.v_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp pow(long e) const {
        if (e < 0) return inv().pow(-e);
        Int r;
        mpz_powm_ui(r.get_mpz_t(), v_.get_mpz_t(), static_cast<unsigned long>(e),
                    p_.get_mpz_t());
        return Fp(p_, r);
    }

    // Multiplicative order: smallest k >= 1 with u^k = 1.
    long mult_order() const {
        if (is_zero()) throw undefined_input("mult_order: zero element");
        Fp acc = *this;
        long k = 1;
        while (acc.v_ != 1) {
            acc = acc * *this;
            ++k;
        }
        return k;
    }

  private:
    Int p_;
    Int v_;
};

inline std::string to_string(const Fp& x) { return x.residue().get_str(); }

}  // namespace tmtlc
