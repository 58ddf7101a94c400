// Compares the serial reference grid kernel against the OpenMP kernel and
// checks that they produce identical cells. Usage: bench_grid [N] [threads].

#include "tmtlc/io.hpp"

#include <chrono>
#include <iostream>

using namespace tmtlc;

namespace {

long now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

template <class K>
void bench(const std::string& label, const LaurentSeries<K>& g, long N, int threads) {
    long t0 = now_ms();
    auto serial = grid_compute_serial(g, N);
    long t1 = now_ms();
    auto parallel = grid_compute(g, N, threads);
    long t2 = now_ms();

    bool same = serial.cells.size() == parallel.cells.size();
    for (size_t i = 0; same && i < serial.cells.size(); ++i) {
        const auto& a = serial.cells[i];
        const auto& b = parallel.cells[i];
        same = a.n == b.n && a.l == b.l && a.det == b.det && a.singular == b.singular;
    }
    bool same_bytes = grid_to_csv(serial) == grid_to_csv(parallel);

    double speedup = t2 > t1 ? static_cast<double>(t1 - t0) / static_cast<double>(t2 - t1) : 0.0;
    std::cout << label << "  N=" << N << "  cells=" << serial.cells.size()
              << "  serial=" << (t1 - t0) << "ms  openmp=" << (t2 - t1) << "ms"
              << "  speedup=" << speedup << "x  identical=" << (same && same_bytes ? "yes" : "NO")
              << "\n";
    if (!(same && same_bytes)) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
    long N = argc > 1 ? std::atol(argv[1]) : 40;
    int threads = argc > 2 ? std::atoi(argv[2]) : 0;

    Poly<Int> usym = Poly<Int>::monomial(Int(1), 1);
    bench("Z[u] symbolic", expand_product(gu_spec(usym), N), N, threads);

    Rat uq(3, 5);
    bench("Q u=3/5     ", expand_product(gu_spec(uq), N), N, threads);

    Fp uf = Fp::make(Int(5), 2);
    bench("F_5 u=2     ", expand_product(gu_spec(uf), N), N, threads);
    return 0;
}
