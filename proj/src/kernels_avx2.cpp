#include "rearr/kernels.hpp"

#if defined(REARR_KERNELS_AVX2)

#include <immintrin.h>

// AVX2 lanes mirror the scalar reference operation-for-operation (no FMA),
// so results are bit-identical to batch_state_distance_scalar.

namespace rearr::kernels {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559005768;
constexpr double kInvTwoPi = 1.0 / kTwoPi;

inline __m256d abs_pd(__m256d v) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
  return _mm256_and_pd(v, mask);
}
}  // namespace

void batch_state_distance_avx2(const double* query, const double* const* cols,
                               std::size_t n, const StateLayout& layout,
                               const MetricParams& params, double* out) {
  const int dof = layout.robot_dof;
  const int m = layout.object_count;
  const __m256d two_pi = _mm256_set1_pd(kTwoPi);
  const __m256d inv_two_pi = _mm256_set1_pd(kInvTwoPi);
  const __m256d rw = _mm256_set1_pd(params.robot_weight);
  const __m256d wt = _mm256_set1_pd(params.w_theta);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_setzero_pd();
    for (int d = 0; d < dof; ++d) {
      const __m256d diff =
          _mm256_sub_pd(_mm256_set1_pd(query[d]), _mm256_loadu_pd(cols[d] + i));
      s = _mm256_add_pd(s, _mm256_mul_pd(diff, diff));
    }
    __m256d acc = _mm256_mul_pd(rw, _mm256_sqrt_pd(s));
    for (int o = 0; o < m; ++o) {
      const int base = dof + 3 * o;
      const __m256d dx = _mm256_sub_pd(_mm256_set1_pd(query[base]),
                                       _mm256_loadu_pd(cols[base] + i));
      const __m256d dy = _mm256_sub_pd(_mm256_set1_pd(query[base + 1]),
                                       _mm256_loadu_pd(cols[base + 1] + i));
      __m256d dth = _mm256_sub_pd(_mm256_set1_pd(query[base + 2]),
                                  _mm256_loadu_pd(cols[base + 2] + i));
      const __m256d k = _mm256_round_pd(_mm256_mul_pd(dth, inv_two_pi),
                                        _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
      dth = _mm256_sub_pd(dth, _mm256_mul_pd(two_pi, k));
      __m256d p = _mm256_mul_pd(dx, dx);
      p = _mm256_add_pd(p, _mm256_mul_pd(dy, dy));
      const __m256d term =
          _mm256_add_pd(_mm256_sqrt_pd(p), _mm256_mul_pd(wt, abs_pd(dth)));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(params.object_weights[o]), term));
    }
    _mm256_storeu_pd(out + i, acc);
  }
  if (i < n) {
    // Tail through the scalar reference on shifted column views.
    const double* tail_cols[kMaxStride];
    const int stride = layout.stride();
    for (int c = 0; c < stride; ++c) tail_cols[c] = cols[c] + i;
    batch_state_distance_scalar(query, tail_cols, n - i, layout, params, out + i);
  }
}

}  // namespace rearr::kernels

#endif  // REARR_KERNELS_AVX2
