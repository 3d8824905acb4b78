#pragma once

#include <cstddef>

namespace rearr::kernels {

/// Upper bound on flattened state width (robot DOF + 3 per object).
inline constexpr int kMaxStride = 128;

/// Flattened world-state layout: robot DOF values first, then (x, y, theta)
/// per object. Column c of a batch holds component c of every stored state.
struct StateLayout {
  int robot_dof = 0;
  int object_count = 0;
  int stride() const { return robot_dof + 3 * object_count; }
};

struct MetricParams {
  double robot_weight = 1.0;
  double w_theta = 0.1;
  const double* object_weights = nullptr;  // length = object_count
};

/// Distances from one query state to n stored states:
///   robot_weight * |dq|_2  +  sum_i w_i * (|dxy_i|_2 + w_theta*|wrap(dtheta_i)|)
/// `cols[c]` points at column c (length n). Results land in out[0..n).
using BatchDistanceFn = void (*)(const double* query, const double* const* cols,
                                 std::size_t n, const StateLayout& layout,
                                 const MetricParams& params, double* out);

void batch_state_distance_scalar(const double* query, const double* const* cols,
                                 std::size_t n, const StateLayout& layout,
                                 const MetricParams& params, double* out);

#if defined(REARR_KERNELS_AVX2)
void batch_state_distance_avx2(const double* query, const double* const* cols,
                               std::size_t n, const StateLayout& layout,
                               const MetricParams& params, double* out);
#endif

/// Single-pair distance through the scalar reference path (both states as
/// flat component vectors).
double state_distance(const double* a, const double* b, const StateLayout& layout,
                      const MetricParams& params);

/// Kernel picked once at first use from runtime CPU features. All variants
/// produce bit-identical outputs.
BatchDistanceFn select_batch_distance();
const char* active_kernel_name();

}  // namespace rearr::kernels
