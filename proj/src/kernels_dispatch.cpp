#include "btlab/kernels.hpp"
#include "btlab/util.hpp"

namespace btlab::kernels {

namespace {

const Impl* pick_default() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return &avx2_impl();
#endif
  return &scalar_impl();
}

const Impl*& current() {
  static const Impl* impl = pick_default();
  return impl;
}

}  // namespace

const Impl& active() { return *current(); }

void force_impl(const std::string& name) {
  if (name == "scalar") {
    current() = &scalar_impl();
    return;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (name == "avx2") {
    if (!__builtin_cpu_supports("avx2"))
      throw InvalidArgument("kernels: avx2 not supported on this CPU");
    current() = &avx2_impl();
    return;
  }
#endif
  throw InvalidArgument("kernels: unknown implementation '" + name + "'");
}

std::string active_name() { return current()->name; }

}  // namespace btlab::kernels
