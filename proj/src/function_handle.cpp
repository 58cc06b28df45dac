#include "holozero/function_handle.hpp"

#include <utility>

namespace holozero {

FunctionHandle::FunctionHandle(ComplexFn f, ComplexFn fprime)
    : f_(std::move(f)), fprime_(std::move(fprime)), counters_(std::make_shared<Counters>()) {}

cplx FunctionHandle::f(cplx z) const {
  counters_->f.fetch_add(1, std::memory_order_relaxed);
  return f_(z);
}

cplx FunctionHandle::fprime(cplx z) const {
  counters_->fprime.fetch_add(1, std::memory_order_relaxed);
  return fprime_(z);
}

FunctionHandle::Counts FunctionHandle::counts() const {
  return {counters_->f.load(), counters_->fprime.load()};
}

void FunctionHandle::reset_counts() const {
  counters_->f.store(0);
  counters_->fprime.store(0);
}

FunctionHandle make_derivative_free_handle(
    ComplexFn f, std::function<cplx(const FunctionHandle&, cplx)> derivative) {
  FunctionHandle handle(std::move(f), nullptr);
  // The derivative channel needs a handle sharing the same counters; a copy
  // without the derivative channel avoids a reference cycle.
  FunctionHandle counted_f = handle;
  handle.fprime_ = [counted_f, derivative = std::move(derivative)](cplx z) {
    return derivative(counted_f, z);
  };
  handle.derivative_free_ = true;
  return handle;
}

}  // namespace holozero
