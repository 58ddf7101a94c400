#pragma once

// Exact Hankel matrices H(n,l) and twisted matrices Ht(n,l) over the series
// coefficient domain, determinants (fraction-free Bareiss over Z[u], Gaussian
// elimination over fields), the block factorizations, degree formulas, Han
// product formulas, and deficiency measurement.
//
// Grid computation exists in two forms: a serial reference kernel and an
// OpenMP kernel. Cells are independent given the coefficient table, so the
// results are identical; tests and the benchmark target compare them.

#include "tmtlc/contfrac.hpp"
#include "tmtlc/ratfunc.hpp"

#include <omp.h>

#include <optional>
#include <vector>

namespace tmtlc {

template <class K>
class SquareMatrix {
  public:
    explicit SquareMatrix(long size, K fill) : size_(size), e_(size * size, std::move(fill)) {}
    SquareMatrix() : size_(0) {}

    long size() const { return size_; }
    K& at(long i, long j) { return e_[static_cast<size_t>(i * size_ + j)]; }
    const K& at(long i, long j) const { return e_[static_cast<size_t>(i * size_ + j)]; }

    SquareMatrix transposed() const {
        SquareMatrix t = *this;
        for (long i = 0; i < size_; ++i)
            for (long j = 0; j < size_; ++j) t.at(i, j) = at(j, i);
        return t;
    }

  private:
    long size_;
    std::vector<K> e_;
};

// H(n,l): entry(i,j) = a_{n+i+j}, size (l+1)x(l+1). l = -1 gives the empty
// matrix (determinant 1), needed by the block identities at the boundary.
template <class K>
SquareMatrix<K> hankel_matrix(const LaurentSeries<K>& a, long n, long l) {
    if (n < 1) throw undefined_input("hankel_matrix: n must be >= 1");
    if (l < 0) return SquareMatrix<K>();
    if (!a.known(n + 2 * l)) throw precision_error("hankel_matrix: insufficient coefficients");
    SquareMatrix<K> m(l + 1, a.exemplar());
    for (long i = 0; i <= l; ++i)
        for (long j = 0; j <= l; ++j) m.at(i, j) = a.coeff(n + i + j);
    return m;
}

// Ht(n,l): entry(i,j) = a_{n+1+i+j} - u^2 a_{n+i+j}.
template <class K>
SquareMatrix<K> twisted_hankel_matrix(const LaurentSeries<K>& a, long n, long l, const K& u) {
    if (n < 1) throw undefined_input("twisted_hankel_matrix: n must be >= 1");
    if (l < 0) return SquareMatrix<K>();
    if (!a.known(n + 2 * l + 1))
        throw precision_error("twisted_hankel_matrix: insufficient coefficients");
    K usq = u * u;
    SquareMatrix<K> m(l + 1, a.exemplar());
    for (long i = 0; i <= l; ++i)
        for (long j = 0; j <= l; ++j)
            m.at(i, j) = a.coeff(n + 1 + i + j) - usq * a.coeff(n + i + j);
    return m;
}

namespace detail {

template <class K>
K det_field(SquareMatrix<K> m) {
    long n = m.size();
    if (n == 0) throw undefined_input("det_field: needs an exemplar for the empty matrix");
    K det = dom::one_like(m.at(0, 0));
    bool negate = false;
    for (long k = 0; k < n; ++k) {
        long piv = -1;
        for (long r = k; r < n; ++r)
            if (!dom::is_zero(m.at(r, k))) {
                piv = r;
                break;
            }
        if (piv < 0) return dom::zero_like(m.at(0, 0));
        if (piv != k) {
            for (long j = k; j < n; ++j) std::swap(m.at(piv, j), m.at(k, j));
            negate = !negate;
        }
        det = det * m.at(k, k);
        K pinv = dom::inv(m.at(k, k));
        for (long r = k + 1; r < n; ++r) {
            if (dom::is_zero(m.at(r, k))) continue;
            K f = m.at(r, k) * pinv;
            for (long j = k; j < n; ++j) m.at(r, j) = m.at(r, j) - f * m.at(k, j);
        }
    }
    return negate ? -det : det;
}

// Bareiss single-step fraction-free elimination: all intermediate entries
// stay in Z[u]; each division is exact.
inline Poly<Int> det_bareiss(SquareMatrix<Poly<Int>> m) {
    long n = m.size();
    Poly<Int> prev(Int(1));
    bool negate = false;
    for (long k = 0; k + 1 < n; ++k) {
        long piv = -1;
        for (long r = k; r < n; ++r)
            if (!m.at(r, k).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return Poly<Int>();
        if (piv != k) {
            for (long j = k; j < n; ++j) std::swap(m.at(piv, j), m.at(k, j));
            negate = !negate;
        }
        for (long r = k + 1; r < n; ++r) {
            for (long j = k + 1; j < n; ++j)
                m.at(r, j) = div_exact(m.at(k, k) * m.at(r, j) - m.at(r, k) * m.at(k, j), prev);
            m.at(r, k) = Poly<Int>();
        }
        prev = m.at(k, k);
    }
    Poly<Int> det = m.at(n - 1, n - 1);
    return negate ? -det : det;
}

}  // namespace detail

// Exact determinant; the empty matrix has determinant 1 by convention.
// exemplar supplies the domain (modulus etc.) for degenerate sizes.
template <class K>
K det_exact(const SquareMatrix<K>& m, const K& exemplar) {
    if (m.size() == 0) return dom::one_like(exemplar);
    if constexpr (dom::is_field_v<K>) {
        return detail::det_field(m);
    } else {
        static_assert(std::is_same_v<K, Poly<Int>>,
                      "non-field determinants implemented for Z[u] only");
        return detail::det_bareiss(m);
    }
}

// All leading principal minors d_1..d_n of m (d_k = top-left k x k
// determinant) from a single fraction-free elimination pass: the pivot after
// step k is exactly d_{k+1} / d_k * d_k = the next minor. No row exchanges,
// so every minor must be nonzero; a zero pivot aborts.
inline std::vector<Poly<Int>> leading_minors_bareiss(SquareMatrix<Poly<Int>> m) {
    long n = m.size();
    std::vector<Poly<Int>> out;
    out.reserve(static_cast<size_t>(n));
    Poly<Int> prev(Int(1));
    for (long k = 0; k < n; ++k) {
        if (m.at(k, k).is_zero())
            throw undefined_input("leading_minors_bareiss: vanishing principal minor");
        out.push_back(m.at(k, k));
        for (long r = k + 1; r < n; ++r) {
            for (long j = k + 1; j < n; ++j)
                m.at(r, j) = div_exact(m.at(k, k) * m.at(r, j) - m.at(r, k) * m.at(k, j), prev);
            m.at(r, k) = Poly<Int>();
        }
        prev = m.at(k, k);
    }
    return out;
}

// Cofactor expansion, exponential; retained as the independent test oracle
// for small sizes.
template <class K>
K det_cofactor(const SquareMatrix<K>& m, const K& exemplar) {
    long n = m.size();
    if (n == 0) return dom::one_like(exemplar);
    if (n == 1) return m.at(0, 0);
    K acc = dom::zero_like(exemplar);
    for (long j = 0; j < n; ++j) {
        SquareMatrix<K> sub(n - 1, dom::zero_like(exemplar));
        for (long r = 1; r < n; ++r) {
            long cc = 0;
            for (long c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(r - 1, cc++) = m.at(r, c);
            }
        }
        K term = m.at(0, j) * det_cofactor(sub, exemplar);
        if (j % 2 == 0)
            acc = acc + term;
        else
            acc = acc - term;
    }
    return acc;
}

// ---- Grid ----

template <class K>
struct GridCell {
    long n;
    long l;
    K det;
    bool singular;
    long degree;                      // deg in u over Z[u]; kNegInfDeg if singular
    std::optional<bool> doubly_monic; // Z[u] cells only
};

enum class GridStrategy { direct, block_accelerated };

template <class K>
struct HankelGrid {
    long N = 0;  // coverage: all n >= 1, l >= 0 with n + 2l <= N
    GridStrategy strategy = GridStrategy::direct;
    std::vector<GridCell<K>> cells;  // sorted by (n, l)

    const GridCell<K>* find(long n, long l) const {
        for (const auto& c : cells)
            if (c.n == n && c.l == l) return &c;
        return nullptr;
    }

    std::vector<K> row_dets(long n) const {
        std::vector<K> out;
        for (const auto& c : cells)
            if (c.n == n) out.push_back(c.det);
        return out;
    }
};

namespace detail {

template <class K>
void annotate_cell(GridCell<K>& cell) {
    if constexpr (std::is_same_v<K, Poly<Int>>) {
        cell.degree = cell.det.degree();
        cell.doubly_monic = cell.singular ? std::optional<bool>(false)
                                          : std::optional<bool>(is_doubly_monic(cell.det));
    } else {
        cell.degree = 0;
    }
}

template <class K>
std::vector<std::pair<long, long>> grid_indices(long N) {
    std::vector<std::pair<long, long>> idx;
    for (long n = 1; n <= N; ++n)
        for (long l = 0; n + 2 * l <= N; ++l) idx.emplace_back(n, l);
    return idx;
}

}  // namespace detail

// Serial reference kernel.
template <class K>
HankelGrid<K> grid_compute_serial(const LaurentSeries<K>& a, long N) {
    if (!a.known(N)) throw precision_error("grid_compute: insufficient coefficients");
    auto idx = detail::grid_indices<K>(N);
    HankelGrid<K> g;
    g.N = N;
    g.cells.resize(idx.size());
    K ex = a.exemplar();
    for (size_t i = 0; i < idx.size(); ++i) {
        auto [n, l] = idx[i];
        GridCell<K>& cell = g.cells[i];
        cell.n = n;
        cell.l = l;
        cell.det = det_exact(hankel_matrix(a, n, l), ex);
        cell.singular = dom::is_zero(cell.det);
        detail::annotate_cell(cell);
    }
    return g;
}

// OpenMP kernel: one task per cell; the cell list is ordered up front, so the
// output is deterministic regardless of thread count.
template <class K>
HankelGrid<K> grid_compute(const LaurentSeries<K>& a, long N, int threads = 0) {
    if (!a.known(N)) throw precision_error("grid_compute: insufficient coefficients");
    auto idx = detail::grid_indices<K>(N);
    HankelGrid<K> g;
    g.N = N;
    g.cells.resize(idx.size());
    K ex = a.exemplar();
    if (threads > 0) omp_set_num_threads(threads);
    long count = static_cast<long>(idx.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        auto [n, l] = idx[static_cast<size_t>(i)];
        GridCell<K>& cell = g.cells[static_cast<size_t>(i)];
        cell.n = n;
        cell.l = l;
        cell.det = det_exact(hankel_matrix(a, n, l), ex);
        cell.singular = dom::is_zero(cell.det);
        detail::annotate_cell(cell);
    }
    return g;
}

// Block-accelerated strategy: determinants assembled from the Section-5
// factorizations (smaller direct H cells plus directly computed twisted
// determinants). Values agree with the direct strategy up to sign; used as a
// magnitude cross-check.
template <class K>
HankelGrid<K> grid_compute_block(const LaurentSeries<K>& a, long N, const K& u) {
    if (!a.known(N)) throw precision_error("grid_compute_block: insufficient coefficients");
    HankelGrid<K> g;
    g.N = N;
    g.strategy = GridStrategy::block_accelerated;
    K ex = a.exemplar();
    // cells in order of increasing n + 2l so factor cells are already present
    auto idx = detail::grid_indices<K>(N);
    std::sort(idx.begin(), idx.end(), [](auto x, auto y) {
        long wx = x.first + 2 * x.second, wy = y.first + 2 * y.second;
        return wx != wy ? wx < wy : x < y;
    });
    std::vector<GridCell<K>> out;
    out.reserve(idx.size());
    auto lookup = [&](long n, long l) -> const K& {
        for (const auto& c : out)
            if (c.n == n && c.l == l) return c.det;
        throw undefined_input("grid_compute_block: missing factor cell");
    };
    for (auto [n, l] : idx) {
        GridCell<K> cell;
        cell.n = n;
        cell.l = l;
        if (l == 0) {
            cell.det = a.coeff(n);
        } else if (n % 2 == 0 && l % 2 == 0) {
            K ht = det_exact(twisted_hankel_matrix(a, n / 2 + 1, l / 2 - 1, u), ex);
            cell.det = u * lookup(n / 2, l / 2) * ht;
        } else {
            K ht = det_exact(twisted_hankel_matrix(a, (n + 1) / 2, (l - 1) / 2, u), ex);
            cell.det = lookup(n / 2 + 1, l / 2) * ht;
        }
        cell.singular = dom::is_zero(cell.det);
        detail::annotate_cell(cell);
        out.push_back(std::move(cell));
    }
    std::sort(out.begin(), out.end(), [](const GridCell<K>& x, const GridCell<K>& y) {
        return x.n != y.n ? x.n < y.n : x.l < y.l;
    });
    g.cells = std::move(out);
    return g;
}

// ---- Paper identities ----

// Block identity, both sides computed directly; true iff lhs = +-rhs.
template <class K>
bool block_factor_check(const LaurentSeries<K>& a, long n, long l, const K& u) {
    K ex = a.exemplar();
    K lhs = det_exact(hankel_matrix(a, n, l), ex);
    K rhs;
    if (n % 2 == 0 && l % 2 == 0) {
        if (l == 0) {
            rhs = u * a.coeff(n / 2);  // empty twisted factor
        } else {
            rhs = u * det_exact(hankel_matrix(a, n / 2, l / 2), ex) *
                  det_exact(twisted_hankel_matrix(a, n / 2 + 1, l / 2 - 1, u), ex);
        }
    } else {
        long lt = (l >= 1) ? (l - 1) / 2 : -1;  // floor((l-1)/2); empty matrix at l = 0
        rhs = det_exact(hankel_matrix(a, n / 2 + 1, l / 2), ex) *
              det_exact(twisted_hankel_matrix(a, (n + 1) / 2, lt, u), ex);
    }
    return lhs == rhs || lhs == -rhs;
}

inline long degree_formula_h(long n, long l) {
    return Int(sigma(l) + sigma(n + l - 1) - sigma(n - 2)).get_si();
}
inline long degree_formula_twisted(long n, long l) {
    return 2 * (l + 1) + degree_formula_h(n, l);
}

// deg det H(n,l) = sigma(l) + sigma(n+l-1) - sigma(n-2), Z[u] cells only.
inline bool degree_formula_check(const HankelGrid<Poly<Int>>& g, long n, long l) {
    const GridCell<Poly<Int>>* c = g.find(n, l);
    if (!c) throw undefined_input("degree_formula_check: cell not covered");
    if (c->singular) throw undefined_input("degree_formula_check: singular cell");
    return c->degree == degree_formula_h(n, l);
}

// Han product formula for all-linear continued fractions:
// det H(1,n-1) = (-1)^{n(n-1)/2} beta_1^n beta_2^{n-1} ... beta_n.
template <class K>
K han_product_linear(const std::vector<K>& beta, long n) {
    K acc = dom::one_like(beta.at(0));
    for (long i = 1; i <= n; ++i) acc = acc * dom::pow_long(beta.at(static_cast<size_t>(i - 1)), n + 1 - i);
    long e = (n * (n - 1) / 2) % 2;
    return e ? -acc : acc;
}

// General Han formula (with the corrected signs):
// det H(1,s_n-1) = (-1)^eps beta_1^{s_n} (-beta_2)^{s_n-s_1} ... (-beta_n)^{s_n-s_{n-1}},
// eps = sum k_i (k_i - 1)/2, k_i = s_i - s_{i-1}.
template <class K>
K han_product_general(const ContinuedFraction<K>& cf, long n) {
    if (n < 1 || n > static_cast<long>(cf.terms.size()))
        throw undefined_input("han_product_general: insufficient certified CF depth");
    std::vector<long> s{0};
    for (long i = 1; i <= n; ++i) s.push_back(s.back() + cf.term(i).bstar.degree());
    long eps = 0;
    for (long i = 1; i <= n; ++i) {
        long k = s[i] - s[i - 1];
        eps += k * (k - 1) / 2;
    }
    K acc = dom::pow_long(cf.term(1).beta, s[n]);
    for (long i = 2; i <= n; ++i) {
        K nb = -cf.term(i).beta;
        acc = acc * dom::pow_long(nb, s[n] - s[i - 1]);
    }
    return (eps % 2) ? -acc : acc;
}

// ---- Deficiency ----

struct SingularRun {
    long n;
    long l_start;
    long length;
};

struct DeficiencyReport {
    long N = 0;
    long max_singular_run = 0;
    long deficiency_lower_bound = 1;
    bool exact = false;  // set by a symbolic certificate, never by enumeration
    std::vector<SingularRun> witnesses;
};

template <class K>
DeficiencyReport deficiency(const HankelGrid<K>& g) {
    DeficiencyReport rep;
    rep.N = g.N;
    for (long n = 1; n <= g.N; ++n) {
        long run = 0, start = 0;
        for (long l = 0; n + 2 * l <= g.N; ++l) {
            const GridCell<K>* c = g.find(n, l);
            if (c && c->singular) {
                if (run == 0) start = l;
                ++run;
                if (run > rep.max_singular_run) {
                    rep.max_singular_run = run;
                    rep.witnesses.clear();
                }
                if (run == rep.max_singular_run) rep.witnesses.push_back({n, start, run});
            } else {
                run = 0;
            }
        }
    }
    rep.deficiency_lower_bound = rep.max_singular_run + 1;
    return rep;
}

}  // namespace tmtlc
