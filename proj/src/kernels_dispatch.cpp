#include "qeorbit/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace qeorbit::kernels {
namespace {

const KernelSet* lookup(const char* name) {
  if (name && std::strcmp(name, "scalar") == 0) return &scalar_kernels();
  if (name && std::strcmp(name, "avx2") == 0) return avx2_kernels();
  return nullptr;
}

const KernelSet* choose() {
  if (const char* env = std::getenv("QEORBIT_KERNELS"))
    if (const KernelSet* k = lookup(env)) return k;
  if (const KernelSet* k = avx2_kernels()) return k;
  return &scalar_kernels();
}

std::atomic<const KernelSet*> g_active{nullptr};

}  // namespace

const KernelSet& active_kernels() {
  const KernelSet* k = g_active.load(std::memory_order_acquire);
  if (!k) {
    k = choose();
    g_active.store(k, std::memory_order_release);
  }
  return *k;
}

bool force_kernels(const char* name) {
  const KernelSet* k = lookup(name);
  if (!k) return false;
  g_active.store(k, std::memory_order_release);
  return true;
}

}  // namespace qeorbit::kernels
