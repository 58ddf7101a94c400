#pragma once

// Elements of Q(u) kept as reduced fractions e(u)/d(u) of integer-coefficient
// polynomials: gcd(e,d) constant, d primitive with positive leading
// coefficient. This normal form makes the doubly-monic predicate a direct
// coefficient inspection.

#include "tmtlc/poly.hpp"

#include <utility>

namespace tmtlc {

class RatFunc {
  public:
    RatFunc() : num_(), den_(Int(1)) {}
    explicit RatFunc(Poly<Int> num) : num_(std::move(num)), den_(Int(1)) {}
    explicit RatFunc(const Int& n) : num_(Poly<Int>(n)), den_(Int(1)) {}
    explicit RatFunc(const Rat& q)
        : num_(Poly<Int>(Int(q.get_num()))), den_(Poly<Int>(Int(q.get_den()))) {}

    RatFunc(Poly<Int> num, Poly<Int> den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    // The generator u itself.
    static RatFunc u() { return RatFunc(Poly<Int>::monomial(Int(1), 1)); }

    const Poly<Int>& num() const { return num_; }
    const Poly<Int>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    // Degree as a rational function of u (paper valuation of beta_m).
    long degree() const {
        if (is_zero()) return kNegInfDeg;
        return num_.degree() - den_.degree();
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw undefined_input("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc inv() const {
        if (is_zero()) throw undefined_input("RatFunc: inverse of zero");
        return RatFunc(den_, num_);
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    Rat eval(const Rat& x) const {
        Rat n = to_rational(num_).eval(x);
        Rat d = to_rational(den_).eval(x);
        if (d == 0) throw undefined_input("RatFunc: pole at evaluation point");
        return n / d;
    }

  private:
    void normalize() {
        if (den_.is_zero()) throw undefined_input("RatFunc: zero denominator");
        if (num_.is_zero()) {
            den_ = Poly<Int>(Int(1));
            return;
        }
        if (num_.degree() > 0 && den_.degree() > 0) {
            Poly<Int> g = gcd_int(num_, den_);
            if (g.degree() > 0) {
                num_ = div_exact(num_, g);
                den_ = div_exact(den_, g);
            }
        }
        Int cn = content(num_);
        Int cd = content(den_);
        Int cg;
        mpz_gcd(cg.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
        if (den_.lead() < 0) cg = -cg;
        if (cg != 1) {
            num_ = div_scalar_exact(num_, cg);
            den_ = div_scalar_exact(den_, cg);
        }
    }

    Poly<Int> num_;
    Poly<Int> den_;
};

// Doubly monic: in the reduced form e/d, the leading and the lowest-order
// nonzero coefficients of both e and d are +-1. Such functions are finite
// and nonzero at every rational u outside {-1, 0, 1}.
inline bool is_doubly_monic(const RatFunc& r) {
    if (r.is_zero()) throw undefined_input("is_doubly_monic: zero input");
    auto pm1 = [](const Int& x) { return x == 1 || x == -1; };
    return pm1(r.num().lead()) && pm1(r.num().trail()) && pm1(r.den().lead()) &&
           pm1(r.den().trail());
}

inline bool is_doubly_monic(const Poly<Int>& p) {
    if (p.is_zero()) throw undefined_input("is_doubly_monic: zero input");
    auto pm1 = [](const Int& x) { return x == 1 || x == -1; };
    return pm1(p.lead()) && pm1(p.trail());
}

inline std::string to_string(const RatFunc& r) {
    std::string n = to_string(r.num(), "u");
    if (r.den().degree() == 0 && r.den().lead() == 1) return n;
    return "(" + n + ")/(" + to_string(r.den(), "u") + ")";
}

namespace dom {

template <>
struct traits<RatFunc> {
    static constexpr bool is_field = true;
    static RatFunc zero(const RatFunc&) { return RatFunc(); }
    static RatFunc one(const RatFunc&) { return RatFunc(Int(1)); }
    static RatFunc from_long(const RatFunc&, long n) { return RatFunc(Int(n)); }
    static bool is_zero(const RatFunc& x) { return x.is_zero(); }
    static RatFunc inv(const RatFunc& x) { return x.inv(); }
};

}  // namespace dom

}  // namespace tmtlc
