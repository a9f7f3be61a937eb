#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace nvsinc {

/// Neumaier (improved Kahan-Babuska) running sum.
template <class T>
class CompensatedSum {
 public:
  void add(T x) noexcept {
    const T s = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - s) + x;
    else
      comp_ += (x - s) + sum_;
    sum_ = s;
  }

  /// Folds in another partial, keeping its compensation term.
  void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }

  T result() const noexcept { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

/// Componentwise compensation for complex values.
template <class R>
class CompensatedSum<std::complex<R>> {
 public:
  void add(std::complex<R> x) noexcept {
    re_.add(x.real());
    im_.add(x.imag());
  }
  void add(const CompensatedSum& other) noexcept {
    re_.add(other.re_);
    im_.add(other.im_);
  }
  std::complex<R> result() const noexcept { return {re_.result(), im_.result()}; }

 private:
  CompensatedSum<R> re_;
  CompensatedSum<R> im_;
};

/// Worker count from NVSINC_THREADS, else the hardware concurrency.
inline unsigned default_thread_count() {
  if (const char* env = std::getenv("NVSINC_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 1024));
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Terms per chunk.  Chunk boundaries depend only on the index range, so the
/// result is bit-identical for every thread count.
inline constexpr std::int64_t kSumChunk = 4096;

/// Sum of term(k) for k in [lo, hi], compensated within fixed-size chunks and
/// across chunk partials in ascending order.
template <class T, class Term>
T deterministic_sum(std::int64_t lo, std::int64_t hi, Term&& term, unsigned threads = default_thread_count()) {
  if (hi < lo) return T{};
  const std::int64_t count = hi - lo + 1;
  const std::int64_t chunks = (count + kSumChunk - 1) / kSumChunk;
  std::vector<CompensatedSum<T>> partials(static_cast<std::size_t>(chunks));

  auto run_chunk = [&](std::int64_t c) {
    const std::int64_t a = lo + c * kSumChunk;
    const std::int64_t b = std::min(hi, a + kSumChunk - 1);
    CompensatedSum<T> acc;
    for (std::int64_t k = a; k <= b; ++k) acc.add(term(k));
    partials[static_cast<std::size_t>(c)] = acc;
  };

  const auto workers = static_cast<std::int64_t>(std::min<std::int64_t>(threads, chunks));
  if (workers <= 1) {
    for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (std::int64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          try {
            for (std::int64_t c = next++; c < chunks; c = next++) run_chunk(c);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  CompensatedSum<T> total;
  for (const auto& p : partials) total.add(p);
  return total.result();
}

}  // namespace nvsinc
