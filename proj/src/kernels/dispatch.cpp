#include <atomic>
#include <cstdlib>
#include <string>

#include "kernel_table.hpp"
#include "pseudospec/error.hpp"
#include "pseudospec/kernels.hpp"

namespace pseudospec::kernels {

namespace {

const detail::KernelTable& table_for(Isa isa) {
  switch (isa) {
#if defined(PSEUDOSPEC_HAVE_AVX2)
    case Isa::avx2: return detail::avx2_table();
#endif
#if defined(PSEUDOSPEC_HAVE_NEON)
    case Isa::neon: return detail::neon_table();
#endif
    default: return detail::scalar_table();
  }
}

Isa detect() noexcept {
  if (const char* env = std::getenv("PSEUDOSPEC_SIMD")) {
    const std::string want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == to_string(isa) && is_supported(isa)) return isa;
    }
  }
  if (is_supported(Isa::avx2)) return Isa::avx2;
  if (is_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{detect()};
  return slot;
}

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(ErrorCode::invalid_argument, std::string("kernel size mismatch: ") + what);
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool is_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(PSEUDOSPEC_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(PSEUDOSPEC_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!is_supported(isa)) {
    throw Error(ErrorCode::invalid_argument,
                std::string("kernel ISA not supported here: ") + std::string(to_string(isa)));
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

void tridiag_apply(Isa isa, std::span<const double> sub, std::span<const double> diag,
                   std::span<const double> sup, std::span<const double> x, std::span<double> y) {
  const std::size_t n = diag.size();
  if (n == 0) return;
  require_same(sub.size(), n - 1, "sub");
  require_same(sup.size(), n - 1, "sup");
  require_same(x.size(), n, "x");
  require_same(y.size(), n, "y");
  table_for(isa).tridiag_apply(sub.data(), diag.data(), sup.data(), x.data(), y.data(), n);
}

void sturm_counts(Isa isa, std::span<const double> diag, std::span<const double> offdiag_sq,
                  double pivmin, std::span<const double> shifts, std::span<int> counts) {
  const std::size_t n = diag.size();
  if (n > 0) require_same(offdiag_sq.size(), n - 1, "offdiag_sq");
  require_same(shifts.size(), counts.size(), "counts");
  table_for(isa).sturm_counts(diag.data(), offdiag_sq.data(), n, pivmin, shifts.data(),
                              counts.data(), shifts.size());
}

double dot(Isa isa, std::span<const double> a, std::span<const double> b) {
  require_same(a.size(), b.size(), "dot");
  return table_for(isa).dot(a.data(), b.data(), a.size());
}

double weighted_dot(Isa isa, std::span<const double> a, std::span<const double> w,
                    std::span<const double> b) {
  require_same(a.size(), b.size(), "weighted_dot");
  require_same(a.size(), w.size(), "weighted_dot weights");
  return table_for(isa).weighted_dot(a.data(), w.data(), b.data(), a.size());
}

}  // namespace pseudospec::kernels
