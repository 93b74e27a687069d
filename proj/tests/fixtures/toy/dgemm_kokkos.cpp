#include <Kokkos_Core.hpp>
#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
  Kokkos::initialize(argc, argv);
  {
    const int n = argc > 1 ? std::atoi(argv[1]) : 16;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 1;
    const double alpha = 1.0;
    const double beta = 2.0;
    Kokkos::View<double**> A("A", n, n);
    Kokkos::View<double**> B("B", n, n);
    Kokkos::View<double**> C("C", n, n);
    Kokkos::parallel_for("init", n, KOKKOS_LAMBDA(const int i) {
      for (int j = 0; j < n; ++j) {
        A(i, j) = ((i + j + 2) % 7) * 0.25;
        B(i, j) = (((i + 1) * (j + 1)) % 5) * 0.5;
        C(i, j) = 0.0;
      }
    });
    Kokkos::Timer timer;
    for (int r = 0; r < reps; ++r) {
      Kokkos::parallel_for("dgemm", n, KOKKOS_LAMBDA(const int i) {
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int k = 0; k < n; ++k) s += A(i, k) * B(k, j);
          C(i, j) = alpha * s + beta * C(i, j);
        }
      });
    }
    Kokkos::fence();
    std::printf("Kernel time: %.6f s\n", timer.seconds());
  }
  Kokkos::finalize();
  return 0;
}
