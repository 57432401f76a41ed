// Benchmark: serial reference path (threads = 1) vs. OpenMP path for the
// embarrassingly parallel sweeps. Also checks that both paths produce
// bit-identical records, which the per-sample RNG substreams guarantee.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "bellpair/families.hpp"
#include "bellpair/parallel.hpp"
#include "bellpair/tolerances.hpp"
#include "bellpair/verify.hpp"

namespace {

double seconds_of(const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

bool identical(const std::vector<bellpair::RegionRecord>& a,
               const std::vector<bellpair::RegionRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].c != b[i].c || a[i].beta != b[i].beta ||
        a[i].purity != b[i].purity || a[i].entropy != b[i].entropy)
      return false;
  }
  return true;
}

bool same_suite(const bellpair::SuiteResult& a, const bellpair::SuiteResult& b) {
  if (a.properties.size() != b.properties.size()) return false;
  for (std::size_t i = 0; i < a.properties.size(); ++i) {
    const auto& pa = a.properties[i];
    const auto& pb = b.properties[i];
    if (pa.violations != pb.violations || pa.worst_margin != pb.worst_margin)
      return false;
  }
  return true;
}

void report(const char* name, double serial, double parallel, bool match) {
  std::printf("%-24s %10.3f s %10.3f s %8.2fx   %s\n", name, serial, parallel,
              serial / parallel, match ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  std::int64_t region_n = 20000;
  std::int64_t verify_n = 4000;
  if (argc > 1) region_n = std::atoll(argv[1]);
  if (argc > 2) verify_n = std::atoll(argv[2]);
  const std::uint64_t seed = bellpair::kDefaultSeed;

  std::printf("hardware threads: %d\n", bellpair::hardware_threads());
  std::printf("%-24s %12s %12s %9s   %s\n", "sweep", "serial", "parallel",
              "speedup", "result check");

  {
    std::vector<bellpair::RegionRecord> serial_records, parallel_records;
    const double ts = seconds_of([&] {
      serial_records = bellpair::region_sample(
          seed, region_n, bellpair::RegionKind::kMixedHs, 1);
    });
    const double tp = seconds_of([&] {
      parallel_records = bellpair::region_sample(
          seed, region_n, bellpair::RegionKind::kMixedHs, 0);
    });
    report("region mixed-hs", ts, tp, identical(serial_records, parallel_records));
  }
  {
    std::vector<bellpair::RegionRecord> serial_records, parallel_records;
    const double ts = seconds_of([&] {
      serial_records = bellpair::region_sample(
          seed, region_n, bellpair::RegionKind::kPureHaar, 1);
    });
    const double tp = seconds_of([&] {
      parallel_records = bellpair::region_sample(
          seed, region_n, bellpair::RegionKind::kPureHaar, 0);
    });
    report("region pure-haar", ts, tp, identical(serial_records, parallel_records));
  }
  {
    bellpair::SuiteResult serial_suite, parallel_suite;
    const double ts = seconds_of(
        [&] { serial_suite = bellpair::run_bounds_suite(seed, verify_n, 1); });
    const double tp = seconds_of(
        [&] { parallel_suite = bellpair::run_bounds_suite(seed, verify_n, 0); });
    report("verify bounds", ts, tp, same_suite(serial_suite, parallel_suite));
  }
  return 0;
}
