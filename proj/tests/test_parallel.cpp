#include "doctest.h"
#include "psl/report.hpp"

using namespace psl;

TEST_CASE("parallel kernels reproduce the serial reference bytes") {
  auto K = PadicField::make(3, 1, {3, 3, 1});
  auto serial_tbl = hilbert_table(K, false, Policy::Serial);
  auto par_tbl = hilbert_table(K, false, Policy::Parallel);
  CHECK(serial_tbl == par_tbl);

  auto serial_grid = mackey_dims_grid(K, K->pe0() + 1, false, 10, 3, Policy::Serial);
  auto par_grid = mackey_dims_grid(K, K->pe0() + 1, false, 10, 3, Policy::Parallel);
  CHECK(serial_grid == par_grid);
}

TEST_CASE("report output independent of the execution policy") {
  std::string cfgtext = R"({
    "fields": [{"name": "q3zeta3", "p": 3, "f": 1, "eisenstein": [3, 3, 1]}],
    "curves": [{"name": "ord", "field": "q3zeta3", "a": [[0], [-1], [1], [0], [0]]}],
    "suites": ["lemma34", "lemma33-grid"],
    "seed": 5, "samples": 8
  })";
  auto cfg = parse_config(cfgtext);
  auto ser = run_report(cfg, Policy::Serial);
  auto par = run_report(cfg, Policy::Parallel);
  CHECK(ser.render("csv") == par.render("csv"));
}

TEST_CASE("par_for propagates exceptions") {
  CHECK_THROWS_AS(par_for(8,
                          [](size_t i) {
                            if (i == 5) fail(Err::Internal, "boom");
                          },
                          Policy::Parallel),
                  Error);
}
