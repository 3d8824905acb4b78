#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <vector>

#include "rearr/kernels.hpp"
#include "rearr/rng.hpp"

using namespace rearr;
using namespace rearr::kernels;

namespace {

struct Batch {
  StateLayout layout;
  std::vector<double> weights;
  std::vector<std::vector<double>> columns;
  std::vector<const double*> col_ptrs;
  std::vector<double> query;

  MetricParams params(double rw, double wt) const {
    return MetricParams{rw, wt, weights.data()};
  }
};

Batch make_batch(Rng& rng, int dof, int objects, std::size_t n) {
  Batch b;
  b.layout = StateLayout{dof, objects};
  const int stride = b.layout.stride();
  b.columns.assign(stride, {});
  for (int c = 0; c < stride; ++c) {
    b.columns[c].resize(n);
    for (std::size_t i = 0; i < n; ++i) b.columns[c][i] = rng.uniform(-8.0, 8.0);
    b.col_ptrs.push_back(b.columns[c].data());
  }
  for (int c = 0; c < stride; ++c) b.query.push_back(rng.uniform(-8.0, 8.0));
  for (int o = 0; o < objects; ++o) b.weights.push_back(rng.uniform(0.1, 3.0));
  return b;
}

}  // namespace

TEST_CASE("scalar kernel equals the single-pair reference") {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int dof = 2 + static_cast<int>(rng.uniform_index(5));
    const int objects = static_cast<int>(rng.uniform_index(6));
    const std::size_t n = 1 + rng.uniform_index(40);
    Batch b = make_batch(rng, dof, objects, n);
    const MetricParams mp = b.params(rng.uniform(0.2, 2.0), rng.uniform(0.0, 0.5));

    std::vector<double> out(n);
    batch_state_distance_scalar(b.query.data(), b.col_ptrs.data(), n, b.layout, mp, out.data());

    std::vector<double> point(b.layout.stride());
    for (std::size_t i = 0; i < n; ++i) {
      for (int c = 0; c < b.layout.stride(); ++c) point[c] = b.columns[c][i];
      const double ref = state_distance(b.query.data(), point.data(), b.layout, mp);
      CHECK(out[i] == ref);  // bitwise
    }
  }
}

TEST_CASE("distance of a state to itself is exactly zero") {
  Rng rng(77);
  Batch b = make_batch(rng, 3, 4, 8);
  const MetricParams mp = b.params(1.0, 0.1);
  std::vector<double> point(b.layout.stride());
  for (int c = 0; c < b.layout.stride(); ++c) point[c] = b.columns[c][3];
  CHECK(state_distance(point.data(), point.data(), b.layout, mp) == 0.0);
}

TEST_CASE("angle wrap uses the shortest arc") {
  const StateLayout layout{0, 1};
  const double w[1] = {1.0};
  const MetricParams mp{1.0, 1.0, w};
  const double a[3] = {0.0, 0.0, 3.0};
  const double b[3] = {0.0, 0.0, -3.0};
  // Wrapped gap is 2*pi - 6, not 6.
  CHECK(state_distance(a, b, layout, mp) == doctest::Approx(kTwoPi - 6.0).epsilon(1e-12));
}

#if defined(REARR_KERNELS_AVX2_TEST)
TEST_CASE("avx2 kernel is bit-identical to the scalar reference") {
  if (!__builtin_cpu_supports("avx2")) {
    MESSAGE("avx2 not available on this host; skipping");
    return;
  }
  Rng rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const int dof = 2 + static_cast<int>(rng.uniform_index(6));
    const int objects = static_cast<int>(rng.uniform_index(8));
    const std::size_t n = 1 + rng.uniform_index(300);
    Batch b = make_batch(rng, dof, objects, n);
    const MetricParams mp = b.params(rng.uniform(0.2, 2.0), rng.uniform(0.0, 0.5));

    std::vector<double> ref(n), simd(n);
    batch_state_distance_scalar(b.query.data(), b.col_ptrs.data(), n, b.layout, mp, ref.data());
    batch_state_distance_avx2(b.query.data(), b.col_ptrs.data(), n, b.layout, mp, simd.data());
    CHECK(std::memcmp(ref.data(), simd.data(), n * sizeof(double)) == 0);
  }
}

TEST_CASE("runtime dispatch selects a working kernel") {
  CHECK(select_batch_distance() != nullptr);
  const std::string name = active_kernel_name();
  CHECK((name == "avx2" || name == "scalar"));
}
#endif
