#include "rearr/kernels.hpp"

namespace rearr::kernels {

namespace {

struct Selection {
  BatchDistanceFn fn;
  const char* name;
};

Selection select() {
#if defined(REARR_KERNELS_AVX2)
  if (__builtin_cpu_supports("avx2")) {
    return {&batch_state_distance_avx2, "avx2"};
  }
#endif
  return {&batch_state_distance_scalar, "scalar"};
}

const Selection& cached() {
  static const Selection s = select();
  return s;
}

}  // namespace

BatchDistanceFn select_batch_distance() { return cached().fn; }

const char* active_kernel_name() { return cached().name; }

}  // namespace rearr::kernels
