#ifndef HOLOZERO_FUNCTION_HANDLE_HPP
#define HOLOZERO_FUNCTION_HANDLE_HPP

#include <atomic>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>

namespace holozero {

using cplx = std::complex<double>;
using ComplexFn = std::function<cplx(cplx)>;

/// A user function together with its derivative (exact or numerical) and
/// shared evaluation counters. Copies share the counters. Both callables must
/// be reentrant if the handle is used from several threads.
class FunctionHandle {
 public:
  struct Counts {
    std::uint64_t f = 0;
    std::uint64_t fprime = 0;
  };

  FunctionHandle(ComplexFn f, ComplexFn fprime);

  cplx f(cplx z) const;
  cplx fprime(cplx z) const;
  /// f'(z)/f(z); non-finite when f(z) = 0.
  cplx log_derivative(cplx z) const { return fprime(z) / f(z); }

  Counts counts() const;
  void reset_counts() const;

  /// Set by wrap_derivative_free; the engine loosens its AAA tolerance.
  bool derivative_free() const { return derivative_free_; }

  /// Calls the raw function without touching the counters.
  const ComplexFn& raw_f() const { return f_; }

 private:
  friend FunctionHandle make_derivative_free_handle(ComplexFn, std::function<cplx(const FunctionHandle&, cplx)>);

  struct Counters {
    std::atomic<std::uint64_t> f{0};
    std::atomic<std::uint64_t> fprime{0};
  };

  ComplexFn f_;
  ComplexFn fprime_;
  std::shared_ptr<Counters> counters_;
  bool derivative_free_ = false;
};

/// Builds a handle whose derivative channel is computed from the counted f
/// channel of the handle itself.
FunctionHandle make_derivative_free_handle(
    ComplexFn f, std::function<cplx(const FunctionHandle&, cplx)> derivative);

}  // namespace holozero

#endif  // HOLOZERO_FUNCTION_HANDLE_HPP
