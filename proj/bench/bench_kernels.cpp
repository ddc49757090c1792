// Times the OpenMP kernels against their serial references on the shapes the
// trainer actually runs. Usage: bench_kernels [--quick]
#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "sv/kernels.hpp"
#include "sv/rng.hpp"

using clk = std::chrono::steady_clock;

namespace {

double secs(clk::time_point a, clk::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

std::vector<double> randvec(std::size_t n, std::uint64_t seed) {
  sv::Rng r(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = r.uniform(-1.0, 1.0);
  return v;
}

template <typename F>
double time_best(int reps, F&& f) {
  double best = 1e30;
  for (int i = 0; i < reps; ++i) {
    auto t0 = clk::now();
    f();
    best = std::min(best, secs(t0, clk::now()));
  }
  return best;
}

void bench_gemm(int m, int n, int k, bool run_ref) {
  auto A = randvec(static_cast<std::size_t>(m) * k, 1);
  auto B = randvec(static_cast<std::size_t>(k) * n, 2);
  std::vector<double> C(static_cast<std::size_t>(m) * n);
  double fl = 2.0 * m * n * k;
  double t = time_best(3, [&] {
    sv::kern::dgemm(false, false, m, n, k, A.data(), k, B.data(), n, C.data(),
                    n, false);
  });
  std::printf("dgemm  %5dx%5dx%5d  %8.2f ms  %7.2f GF/s", m, n, k, t * 1e3,
              fl / t * 1e-9);
  if (run_ref) {
    std::vector<double> Cr(C.size());
    double tr = time_best(1, [&] {
      sv::kern::dgemm_ref(false, false, m, n, k, A.data(), k, B.data(), n,
                          Cr.data(), n, false);
    });
    std::printf("  | ref %8.2f ms (%.1fx)", tr * 1e3, tr / t);
  }
  std::printf("\n");
}

void bench_conv(sv::kern::ConvShape s, bool run_ref) {
  auto x = randvec(static_cast<std::size_t>(s.n) * s.cin * s.h * s.w, 3);
  auto w = randvec(static_cast<std::size_t>(s.cout) * s.cin * s.kh * s.kw, 4);
  auto b = randvec(s.cout, 5);
  std::size_t ylen = static_cast<std::size_t>(s.n) * s.cout * s.hout() * s.wout();
  std::vector<double> y(ylen), dx(x.size()), dw(w.size()), db(s.cout);
  auto dy = randvec(ylen, 6);
  double fl = 2.0 * s.n * s.cout * s.hout() * s.wout() * s.cin * s.kh * s.kw;

  double tf = time_best(3, [&] {
    sv::kern::conv2d_fwd(s, x.data(), w.data(), b.data(), y.data());
  });
  double tx = time_best(3, [&] {
    sv::kern::conv2d_dx(s, dy.data(), w.data(), dx.data());
  });
  double tw = time_best(3, [&] {
    sv::kern::conv2d_dw(s, x.data(), dy.data(), dw.data(), db.data());
  });
  std::printf(
      "conv   n%-3d %3d->%3d %2dx%-2d fwd %8.2f ms %7.2f GF/s | dx %8.2f ms "
      "%7.2f GF/s | dw %8.2f ms %7.2f GF/s",
      s.n, s.cin, s.cout, s.kh, s.kw, tf * 1e3, fl / tf * 1e-9, tx * 1e3,
      fl / tx * 1e-9, tw * 1e3, fl / tw * 1e-9);
  if (run_ref) {
    std::vector<double> yr(ylen);
    double tr = time_best(1, [&] {
      sv::kern::conv2d_fwd_ref(s, x.data(), w.data(), b.data(), yr.data());
    });
    std::printf("  | ref fwd %8.2f ms (%.1fx)", tr * 1e3, tr / tf);
  }
  std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  int threads = sv::kern::init_threads_from_env();
  std::printf("threads: %d\n", threads);

  if (quick) {
    bench_gemm(64, 1024, 1024, true);
    bench_conv({8, 16, 32, 32, 16, 5, 5, 2}, true);
    return 0;
  }

  // FC layer shapes (full preset, batch 64): forward and both gradients.
  bench_gemm(64, 8192, 4096, false);
  bench_gemm(64, 4096, 8192, false);
  bench_gemm(4096, 8192, 64, false);
  // Small enough that the reference finishes in reasonable time.
  bench_gemm(512, 512, 512, true);

  // Conv stack shapes (full preset, batch 16 to keep the reference sane).
  bench_conv({16, 1, 64, 64, 64, 5, 5, 2}, true);
  bench_conv({16, 64, 64, 64, 64, 5, 5, 2}, false);
  bench_conv({16, 64, 64, 64, 1, 7, 7, 3}, false);
  return 0;
}
