#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "psl/report.hpp"

using namespace psl;

namespace {

// --field accepts a preset name, inline JSON, or a path to a JSON file
FieldPtr field_from_arg(const std::string& arg) {
  static const std::map<std::string, FieldCfg> presets = {
      {"q3", {"q3", 3, 1, {-3, 1}, -1}},
      {"q3zeta3", {"q3zeta3", 3, 1, {3, 3, 1}, -1}},
      {"q3zeta9", {"q3zeta9", 3, 1, {3, 9, 18, 21, 15, 6, 1}, -1}},
      {"q3zeta3_unr2", {"q3zeta3_unr2", 3, 2, {3, 3, 1}, -1}},
      {"q5zeta5", {"q5zeta5", 5, 1, {5, 10, 10, 5, 1}, -1}},
      {"q3_octic", {"q3_octic", 3, 1, {3, 0, 0, 0, 0, 0, 0, 0, 1}, -1}},
  };
  auto it = presets.find(arg);
  if (it != presets.end()) return make_field_cfg(it->second);
  std::string text = arg;
  if (!arg.empty() && arg[0] != '{') {
    std::ifstream in(arg);
    if (!in) fail(Err::ConfigParse, "cannot open field file " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  SessionConfig one = parse_config("{\"fields\": [" +
                                   (text.find("\"name\"") == std::string::npos
                                        ? text.substr(0, text.size() - 1) + ", \"name\": \"cli\"}"
                                        : text) +
                                   "]}");
  return make_field_cfg(one.fields.at(0));
}

std::array<std::vector<long long>, 5> parse_curve_coeffs(const std::string& text) {
  auto cfg = parse_config(
      "{\"fields\": [{\"name\": \"x\", \"p\": 3, \"f\": 1, \"eisenstein\": [3,3,1]}],"
      "\"curves\": [{\"name\": \"c\", \"field\": \"x\", \"a\": " +
      text + "}]}");
  return cfg.curves.at(0).a;
}

FpVec parse_coords(const std::string& text, size_t dim, unsigned p) {
  FpVec c;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) c.push_back(unsigned((std::stol(tok) % p + p) % p));
  if (c.size() != dim)
    fail(Err::ConfigParse, "expected " + std::to_string(dim) + " coordinates");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic symbol calculus: unit filtrations, symbol pairings, curve invariants"};
  app.require_subcommand(1);

  std::string field_arg = "q3zeta3";
  std::string format = "csv";
  uint64_t seed = 1;

  // field describe
  auto* sc_field = app.add_subcommand("field", "field operations")->require_subcommand(1);
  auto* sc_fd = sc_field->add_subcommand("describe", "print the field invariants");
  sc_fd->add_option("--field", field_arg, "preset name, inline JSON, or file");

  // units basis
  auto* sc_units = app.add_subcommand("units", "unit filtration")->require_subcommand(1);
  auto* sc_ub = sc_units->add_subcommand("basis", "canonical basis of K^x mod p-th powers (CSV)");
  sc_ub->add_option("--field", field_arg, "field");

  // hilbert table
  auto* sc_h = app.add_subcommand("hilbert", "symbol pairing")->require_subcommand(1);
  auto* sc_ht = sc_h->add_subcommand("table", "order table with predictions");
  bool ht_md = false;
  sc_ht->add_option("--field", field_arg, "field");
  sc_ht->add_flag("--markdown", ht_md, "markdown grid instead of CSV");

  // curve analyze
  auto* sc_c = app.add_subcommand("curve", "elliptic curves")->require_subcommand(1);
  auto* sc_ca = sc_c->add_subcommand("analyze", "classification, polygon, invariants");
  std::string curve_a = "[[0],[0],[0],[1],[0]]";
  sc_ca->add_option("--field", field_arg, "field");
  sc_ca->add_option("--a", curve_a, "JSON [a1,a2,a3,a4,a6], entries int or pi-digit arrays");

  // mackey dims / witness
  auto* sc_m = app.add_subcommand("mackey", "symbol products")->require_subcommand(1);
  auto* sc_md = sc_m->add_subcommand("dims", "product-dimension grid");
  long max_level = -1;
  bool md_md = false;
  long md_samples = 25;
  sc_md->add_option("--field", field_arg, "field");
  sc_md->add_option("--max-level", max_level, "largest level (default p*e0+1)");
  sc_md->add_option("--samples", md_samples, "samples per zero cell");
  sc_md->add_option("--seed", seed, "sampling seed");
  sc_md->add_flag("--markdown", md_md, "markdown grid instead of CSV");
  auto* sc_mw = sc_m->add_subcommand("witness", "zero-witness trace for a base symbol");
  std::string w_a, w_b;
  sc_mw->add_option("--field", field_arg, "field");
  sc_mw->add_option("--level0", w_a, "coordinates of the first entry, comma separated");
  sc_mw->add_option("--entry", w_b, "coordinates of the second entry, comma separated");
  sc_mw->add_option("--seed", seed, "seed used when coordinates are omitted");

  // chow rank
  auto* sc_chow = app.add_subcommand("chow", "zero-cycle ranks")->require_subcommand(1);
  auto* sc_cr = sc_chow->add_subcommand("rank", "rank of the degree-n quotient for a pair");
  std::string e1_a = "[[0],[-1],[1],[0],[0]]", e2_a = "[[1],[0],[0],[0],[0,1]]";
  long rank_n = 1;
  sc_cr->add_option("--field", field_arg, "field");
  sc_cr->add_option("--e1", e1_a, "first curve [a1..a6]");
  sc_cr->add_option("--e2", e2_a, "second curve [a1..a6]");
  sc_cr->add_option("-n", rank_n, "exponent n");

  // report
  auto* sc_r = app.add_subcommand("report", "run the verification suites");
  std::string config_path, report_format = "md";
  bool serial = false;
  sc_r->add_option("--config", config_path, "config JSON (bundled default when omitted)");
  sc_r->add_option("--format", report_format, "md | csv | json");
  sc_r->add_option("--seed", seed, "sampling seed override");
  sc_r->add_flag("--serial", serial, "run the kernels on the serial reference path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sc_fd) {
      auto K = field_from_arg(field_arg);
      std::cout << "descriptor: " << K->to_json() << "\n";
      std::cout << "e = " << K->e() << ", f = " << K->f() << ", [K:Qp] = " << K->degree() << "\n";
      std::cout << "v(p) = " << K->from_int(K->p()).valuation() << ", e0 = " << K->e0().str()
                << (K->e0_integral() ? "" : " (not integral)") << "\n";
      std::cout << "residue modulus:";
      for (auto c : K->residue_field().modulus()) std::cout << " " << c;
      std::cout << "\nmu_p in K: " << (contains_mu_p(K) ? "yes" : "no") << "\n";
      if (!contains_mu_p(K)) std::cout << "note: unit-filtration operations are unavailable\n";
      return 0;
    }
    if (*sc_ub) {
      std::cout << units_basis_csv(field_from_arg(field_arg));
      return 0;
    }
    if (*sc_ht) {
      std::cout << hilbert_table(field_from_arg(field_arg), ht_md);
      return 0;
    }
    if (*sc_ca) {
      auto K = field_from_arg(field_arg);
      auto E = CurveModel::make(K, parse_curve_coeffs(curve_a));
      std::cout << "reduction: " << reduction_name(E->reduction()) << "\n";
      std::cout << "v(disc) = " << E->disc_valuation() << ", v(j) = " << E->j_valuation()
                << ", e0 = " << K->e0().str() << "\n";
      if (E->reduction() == ReductionClass::GoodOrdinary ||
          E->reduction() == ReductionClass::GoodSupersingular) {
        for (auto& s : p_series_newton(E))
          std::cout << "polygon segment: slope " << s.slope.str() << ", length " << s.length
                    << "\n";
      }
      if (E->reduction() == ReductionClass::GoodSupersingular) {
        try {
          std::cout << "t0 = " << t0_invariant(E) << "\n";
        } catch (const Error& e) {
          std::cout << "t0: " << e.what() << "\n";
        }
      }
      try {
        auto d = kummer_image(E);
        std::cout << "image descriptor: (" << d.first.str() << ", " << d.second.str()
                  << "), dim " << d.total_dim << "\n";
        std::cout << "torsion: " << d.torsion_note << "\n";
      } catch (const Error& e) {
        std::cout << "image descriptor: " << e.what() << "\n";
      }
      return 0;
    }
    if (*sc_md) {
      auto K = field_from_arg(field_arg);
      if (max_level < 0) max_level = K->pe0() + 1;
      std::cout << mackey_dims_grid(K, max_level, md_md, md_samples, seed);
      return 0;
    }
    if (*sc_mw) {
      auto K = field_from_arg(field_arg);
      auto ctx = UnitsContext::get(K);
      auto hc = HilbertContext::get(K);
      UnitClass a, b;
      if (!w_a.empty() && !w_b.empty()) {
        a = ctx->class_from_coords(parse_coords(w_a, ctx->dim(), K->p()));
        b = ctx->class_from_coords(parse_coords(w_b, ctx->dim(), K->p()));
      } else {
        SplitMix rng = stream(seed, 0);
        for (int tries = 0;; ++tries) {
          if (tries > 2000) fail(Err::Internal, "no vanishing symbol found");
          a = sample_class_in_block(*ctx, BlockSpec::lvl(0), rng);
          FpVec cb(ctx->dim(), 0);
          for (auto& v : cb) v = unsigned(rng.below(K->p()));
          b = ctx->class_from_coords(cb);
          if (!a.is_trivial() && !b.is_trivial() &&
              hc->exponent(a.coords, b.coords) == 0)
            break;
        }
      }
      auto tr = zero_witness(K, a, b);
      std::cout << tr.str();
      std::cout << "replay: " << (tr.replay() ? "ok" : "FAILED") << "\n";
      return tr.replay() ? 0 : 1;
    }
    if (*sc_cr) {
      auto K = field_from_arg(field_arg);
      auto E1 = CurveModel::make(K, parse_curve_coeffs(e1_a));
      auto E2 = CurveModel::make(K, parse_curve_coeffs(e2_a));
      auto r = chow_rank(E1, E2, rank_n, true);
      std::cout << "total rank: " << r.total << " (degree 1 + " << r.e1_part << " + " << r.e2_part
                << " + symbol part " << r.kgroup_part << ")\n";
      std::cout << (r.matches_formula ? "matches" : "DOES NOT match")
                << " the closed formula 2[K:Qp]+" << (r.evidence.same_reduction_type ? 6 : 7)
                << "\n";
      std::cout << r.interpretation << "\n";
      for (auto& bl : r.evidence.blocks)
        std::cout << "  block (" << bl.left.str() << ", " << bl.right.str() << "): dim " << bl.dim
                  << " [" << bl.rule << "]\n";
      return r.matches_formula ? 0 : 1;
    }
    if (*sc_r) {
      SessionConfig cfg;
      if (config_path.empty()) {
        cfg = default_config();
      } else {
        std::ifstream in(config_path);
        if (!in) fail(Err::ConfigParse, "cannot open config " + config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = parse_config(ss.str());
      }
      if (sc_r->count("--format")) cfg.format = report_format;
      if (sc_r->count("--seed")) cfg.seed = seed;
      auto doc = run_report(cfg, serial ? Policy::Serial : default_policy());
      std::cout << doc.render(cfg.format);
      return doc.all_pass ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (e.code == Err::ConfigParse) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
