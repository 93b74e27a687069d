// Same computation and output as dgemm.f90, for hosts without a Fortran
// compiler. Row-major output order matches the Fortran write loop.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 16;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 1;
  const double alpha = 1.0, beta = 2.0;
  std::vector<double> a(n * n), b(n * n), c(n * n, 0.0);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      a[(i - 1) * n + (j - 1)] = ((i + j) % 7) * 0.25;
      b[(i - 1) * n + (j - 1)] = ((i * j) % 5) * 0.5;
    }
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
        c[i * n + j] = alpha * s + beta * c[i * n + j];
      }
  const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::FILE* f = std::fopen("functionality_output.csv", "w");
  for (double v : c) std::fprintf(f, "%.17g\n", v);
  std::fclose(f);
  std::printf("Kernel time: %.6f s\n", t);
  return 0;
}
