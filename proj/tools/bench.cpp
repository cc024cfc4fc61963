// Benchmark of the data-parallel kernels against the serial reference.
// Both paths must produce identical bytes; the table reports the timings.
#include <chrono>
#include <iostream>

#include "psl/report.hpp"

using namespace psl;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(const std::function<void()>& fn) {
  auto t0 = Clock::now();
  fn();
  auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

struct Row {
  std::string name;
  double serial_ms, parallel_ms;
  bool equal;
};

}  // namespace

int main(int argc, char** argv) {
  long samples = argc > 1 ? std::stol(argv[1]) : 120;
  std::cout << "threads available: " << max_threads()
            << (openmp_compiled() ? "" : " (OpenMP not compiled in)") << "\n";
  auto K3 = PadicField::make(3, 1, {3, 3, 1});
  auto K9 = PadicField::make(3, 1, {3, 9, 18, 21, 15, 6, 1});
  // warm the per-field caches outside the timed region
  (void)HilbertContext::get(K3);
  (void)HilbertContext::get(K9);
  (void)UnitsContext::get(K3);
  (void)UnitsContext::get(K9);

  std::vector<Row> rows;
  {
    // one verification suite end to end (grid + batches over one field)
    SessionConfig cfg = parse_config(R"({
      "fields": [{"name": "q3zeta9", "p": 3, "f": 1, "eisenstein": [3, 9, 18, 21, 15, 6, 1]}],
      "suites": ["lemma33-grid"], "seed": 3, "samples": )" +
                                     std::to_string(samples) + "}");
    std::string a, b;
    (void)run_report(cfg, Policy::Serial);  // warm the per-line caches for both paths
    double s = run_ms([&] { a = run_report(cfg, Policy::Serial).render("csv"); });
    double p = run_ms([&] { b = run_report(cfg, Policy::Parallel).render("csv"); });
    rows.push_back({"certification suite (larger field)", s, p, a == b});
  }
  {
    std::string a, b;
    double s = run_ms([&] { a = mackey_dims_grid(K3, K3->pe0() + 1, false, samples, 7,
                                                 Policy::Serial); });
    double p = run_ms([&] { b = mackey_dims_grid(K3, K3->pe0() + 1, false, samples, 7,
                                                 Policy::Parallel); });
    rows.push_back({"product grid with certification", s, p, a == b});
  }
  {
    // witness batch: sample, witness, replay
    auto uctx = UnitsContext::get(K9);
    auto hc = HilbertContext::get(K9);
    auto batch = [&](Policy pol, std::vector<int>& out) {
      out.assign(size_t(samples), -1);
      par_for(size_t(samples),
              [&](size_t t) {
                SplitMix rng = stream(1234, t);
                for (int tries = 0; tries < 300; ++tries) {
                  UnitClass a = sample_class_in_block(*uctx, BlockSpec::lvl(0), rng);
                  FpVec cb(uctx->dim(), 0);
                  for (auto& v : cb) v = unsigned(rng.below(3));
                  UnitClass b = uctx->class_from_coords(cb);
                  if (a.is_trivial() || b.is_trivial()) continue;
                  if (hc->exponent(a.coords, b.coords) != 0) continue;
                  auto tr = zero_witness(K9, a, b);
                  out[t] = tr.replay() ? 1 : 0;
                  return;
                }
                out[t] = 0;
              },
              pol);
    };
    std::vector<int> ra, rb;
    // one throwaway serial run so the norm-subgroup line cache is warm for both
    batch(Policy::Serial, ra);
    double s = run_ms([&] { batch(Policy::Serial, ra); });
    double p = run_ms([&] { batch(Policy::Parallel, rb); });
    rows.push_back({"witness batch (warm caches)", s, p, ra == rb});
  }
  std::cout << "kernel, serial_ms, parallel_ms, speedup, outputs_equal\n";
  bool all_eq = true;
  for (auto& r : rows) {
    std::cout << r.name << ", " << r.serial_ms << ", " << r.parallel_ms << ", "
              << (r.parallel_ms > 0 ? r.serial_ms / r.parallel_ms : 0.0) << ", "
              << (r.equal ? "yes" : "NO") << "\n";
    all_eq = all_eq && r.equal;
  }
  return all_eq ? 0 : 1;
}
