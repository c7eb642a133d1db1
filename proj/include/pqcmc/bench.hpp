#pragma once

// Timing harness for the invertible-matrix generators. Each trial repeats
// one generator call until a minimum wall time has elapsed and records the
// per-call cost; a row reports the median over trials.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pqcmc/errors.hpp"
#include "pqcmc/rand_gen.hpp"

namespace pqcmc {

enum class MatGenMethod {
  kPermutation,       // shuffled index order only (the linear-time generator)
  kPermutationDense,  // order plus materialized M1/M2, Theta(n^2) bits written
  kBaseline,         // rejection sampling with a scalar elimination rank test
};

inline const char* method_name(MatGenMethod m) {
  switch (m) {
    case MatGenMethod::kPermutation: return "permutation";
    case MatGenMethod::kPermutationDense: return "permutation-dense";
    case MatGenMethod::kBaseline: return "baseline";
  }
  return "?";
}

inline MatGenMethod parse_method(const std::string& name) {
  for (auto m : {MatGenMethod::kPermutation, MatGenMethod::kPermutationDense, MatGenMethod::kBaseline}) {
    if (name == method_name(m)) return m;
  }
  throw InvalidArgument("unknown benchmark method '" + name + "'");
}

struct BenchRow {
  std::string method;
  std::size_t n = 0;
  double median_ns = 0.0;
  std::optional<double> ratio;  // t(n) / t(n/2) when the previous size is n/2
};

struct BenchReport {
  std::vector<BenchRow> rows;

  const BenchRow* find(const std::string& method, std::size_t n) const {
    for (const auto& r : rows) {
      if (r.method == method && r.n == n) return &r;
    }
    return nullptr;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << std::left << std::setw(18) << "method" << std::right << std::setw(8) << "n" << std::setw(16)
       << "median_ns" << std::setw(12) << "t(2n)/t(n)" << '\n';
    for (const auto& r : rows) {
      os << std::left << std::setw(18) << r.method << std::right << std::setw(8) << r.n << std::setw(16)
         << std::fixed << std::setprecision(1) << r.median_ns << std::setw(12);
      if (r.ratio) {
        os << std::setprecision(2) << *r.ratio;
      } else {
        os << "-";
      }
      os << '\n';
    }
    return os.str();
  }

  /// One record per line: `method=<m> n=<n> median_ns=<t> ratio=<r|->`.
  std::string to_kv() const {
    std::ostringstream os;
    for (const auto& r : rows) {
      os << "method=" << r.method << " n=" << r.n << " median_ns=" << std::fixed << std::setprecision(1)
         << r.median_ns << " ratio=";
      if (r.ratio) {
        os << std::setprecision(4) << *r.ratio;
      } else {
        os << "-";
      }
      os << '\n';
    }
    return os.str();
  }
};

struct BenchOptions {
  std::size_t trials = 5;
  std::chrono::nanoseconds min_batch = std::chrono::milliseconds(10);
  std::vector<MatGenMethod> methods = {MatGenMethod::kPermutation, MatGenMethod::kBaseline};
};

namespace detail {

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

inline std::size_t run_method(MatGenMethod method, std::uint64_t seed, std::size_t n) {
  switch (method) {
    case MatGenMethod::kPermutation: return shuffled_order(seed, n).back();
    case MatGenMethod::kPermutationDense: return permutation_pair(seed, n).m1.weight();
    case MatGenMethod::kBaseline: return baseline_random_invertible(seed, n).packed()[0];
  }
  return 0;
}

}  // namespace detail

/// Median per-call time of `method` at size n over `trials` batches.
inline double time_method(MatGenMethod method, std::size_t n, const BenchOptions& opts) {
  using clock = std::chrono::steady_clock;
  std::vector<double> samples;
  samples.reserve(opts.trials);
  std::uint64_t seed = 0;
  volatile std::size_t sink = 0;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    std::size_t calls = 0;
    const auto start = clock::now();
    auto elapsed = clock::duration::zero();
    do {
      sink = sink + detail::run_method(method, seed++, n);
      ++calls;
      elapsed = clock::now() - start;
    } while (elapsed < opts.min_batch);
    samples.push_back(std::chrono::duration<double, std::nano>(elapsed).count() / static_cast<double>(calls));
  }
  return detail::median(std::move(samples));
}

inline BenchReport bench_matrix_gen(const std::vector<std::size_t>& sizes, const BenchOptions& opts) {
  if (opts.trials < 3) throw InvalidArgument("benchmark needs at least 3 trials");
  BenchReport report;
  for (auto method : opts.methods) {
    std::optional<BenchRow> previous;
    for (auto n : sizes) {
      BenchRow row{method_name(method), n, time_method(method, n, opts), std::nullopt};
      if (previous && previous->n * 2 == n && previous->median_ns > 0) {
        row.ratio = row.median_ns / previous->median_ns;
      }
      report.rows.push_back(row);
      previous = row;
    }
  }
  return report;
}

inline BenchReport bench_matrix_gen(const std::vector<std::size_t>& sizes, std::size_t trials) {
  BenchOptions opts;
  opts.trials = trials;
  return bench_matrix_gen(sizes, opts);
}

}  // namespace pqcmc
