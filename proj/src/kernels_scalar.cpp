#include "rearr/kernels.hpp"

#include <cmath>

// Reference kernel. Compiled with -ffp-contract=off so the operation
// sequence (and therefore every rounding) matches the SIMD variants exactly.

namespace rearr::kernels {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559005768;
constexpr double kInvTwoPi = 1.0 / kTwoPi;
}  // namespace

void batch_state_distance_scalar(const double* query, const double* const* cols,
                                 std::size_t n, const StateLayout& layout,
                                 const MetricParams& params, double* out) {
  const int dof = layout.robot_dof;
  const int m = layout.object_count;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int d = 0; d < dof; ++d) {
      const double diff = query[d] - cols[d][i];
      s = s + diff * diff;
    }
    double acc = params.robot_weight * std::sqrt(s);
    for (int o = 0; o < m; ++o) {
      const int base = dof + 3 * o;
      const double dx = query[base] - cols[base][i];
      const double dy = query[base + 1] - cols[base + 1][i];
      double dth = query[base + 2] - cols[base + 2][i];
      dth = dth - kTwoPi * std::nearbyint(dth * kInvTwoPi);
      double p = dx * dx;
      p = p + dy * dy;
      const double term = std::sqrt(p) + params.w_theta * std::fabs(dth);
      acc = acc + params.object_weights[o] * term;
    }
    out[i] = acc;
  }
}

double state_distance(const double* a, const double* b, const StateLayout& layout,
                      const MetricParams& params) {
  const int stride = layout.stride();
  // Column views over the single point b.
  const double* cols[kMaxStride];
  for (int c = 0; c < stride; ++c) cols[c] = b + c;
  double out;
  batch_state_distance_scalar(a, cols, 1, layout, params, &out);
  return out;
}

}  // namespace rearr::kernels
