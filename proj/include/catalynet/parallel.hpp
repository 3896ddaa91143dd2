#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <type_traits>
#include <vector>

namespace catalynet {

// Worker count: CATALYNET_THREADS when set to a positive integer, otherwise
// the OpenMP default (logical cores).
int worker_count();

enum class Execution { serial, parallel };

namespace detail {
void run_indexed(std::size_t n, int workers, void (*body)(std::size_t, void*), void* ctx);
}

// Evaluates f(0..n-1) and returns the results in index order. The parallel
// path distributes indices over worker_count() threads; the first exception
// thrown by any index is rethrown after the loop.
template <class F>
auto parallel_map(std::size_t n, F&& f, Execution mode = Execution::parallel)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(n);
  if (mode == Execution::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  using Fn = std::remove_reference_t<F>;
  struct Ctx {
    Fn* f;
    std::vector<R>* out;
    std::exception_ptr err;
    std::mutex mu;
  } ctx{&f, &out, nullptr, {}};
  detail::run_indexed(
      n, worker_count(),
      [](std::size_t i, void* p) {
        auto* c = static_cast<Ctx*>(p);
        try {
          (*c->out)[i] = (*c->f)(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(c->mu);
          if (!c->err) c->err = std::current_exception();
        }
      },
      &ctx);
  if (ctx.err) std::rethrow_exception(ctx.err);
  return out;
}

}  // namespace catalynet
