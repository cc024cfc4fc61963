#include "psl/hilbert.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace psl {

std::string BlockSpec::str() const {
  switch (kind) {
    case Full: return "full";
    case Level: return std::to_string(level);
    case TrivialBlock: return "trivial";
  }
  return "?";
}

namespace {

FpVec canon_line(const FpVec& c, unsigned p) {
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i]) return fp_scale(c, fp_inv(c[i], p), p);
  fail(Err::TrivialKummer, "class is trivial");
}

std::string line_key(const FpVec& c) {
  std::string s;
  for (unsigned v : c) s += char('0' + v);
  return s;
}

}  // namespace

std::optional<FpVec> NormSubgroup::solve_preimage(const FpVec& target, long min_level) const {
  if (min_level <= -2) return image.express(target);
  FpSpan restricted(K->p(), target.size());
  std::vector<size_t> chosen;
  for (size_t i = 0; i < norm_coords.size(); ++i) {
    if (cand_levels[i] < min_level) continue;
    restricted.add(norm_coords[i]);
    chosen.push_back(i);
  }
  auto sol = restricted.express(target);
  if (!sol) return std::nullopt;
  FpVec full(norm_coords.size(), 0);
  for (size_t k = 0; k < chosen.size(); ++k) full[chosen[k]] = (*sol)[k];
  return full;
}

// ---------------------------------------------------------------------------
// HilbertContext
// ---------------------------------------------------------------------------

std::shared_ptr<const HilbertContext> HilbertContext::get(const FieldPtr& K) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const HilbertContext>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(K->key());
  if (it != cache.end()) return it->second;
  auto ctx = std::shared_ptr<const HilbertContext>(new HilbertContext(K));
  cache[K->key()] = ctx;
  return ctx;
}

std::shared_ptr<const NormSubgroup> HilbertContext::norm_subgroup_line(const FpVec& coords) const {
  FpVec line = canon_line(coords, K_->p());
  std::string key = line_key(line);
  {
    std::lock_guard<std::mutex> lk(line_mu_);
    auto it = lines_.find(key);
    if (it != lines_.end()) return it->second;
  }
  auto data = build_line(line);
  std::lock_guard<std::mutex> lk(line_mu_);
  auto it = lines_.find(key);
  if (it != lines_.end()) return it->second;
  lines_[key] = data;
  return data;
}

std::shared_ptr<const NormSubgroup> HilbertContext::norm_subgroup(const PadicElement& b) const {
  FpVec c = units_->coords_of(b);
  if (fp_is_zero(c)) fail(Err::TrivialKummer, "b is a p-th power, the norm subgroup is everything");
  return norm_subgroup_line(c);
}

std::shared_ptr<const NormSubgroup> HilbertContext::build_line(const FpVec& line) const {
  auto ns = std::make_shared<NormSubgroup>();
  ns->K = K_;
  ns->line = line;
  ns->image = FpSpan(K_->p(), units_->dim());
  unsigned p = K_->p();
  LevelTag tag = units_->level_of(line);
  bool unram = (tag.kind == LevelTag::UnitLevel && tag.level == K_->pe0());

  if (unram) {
    // canonical tower presentation of the unique unramified degree-p extension
    ns->b_rep = units_->class_from_coords(line).rep;
    ns->handle = adjoin_pth_root(K_, ns->b_rep);
    if (ns->handle->cls() != ExtClass::Unramified)
      fail(Err::Internal, "top-level line did not produce an unramified adjunction");
    ns->tower = std::make_shared<const UnramifiedTower>(K_, p);
    auto Lctx = UnitsContext::get(ns->tower->top());
    for (size_t i = 0; i < Lctx->dim(); ++i) {
      const auto& cand = Lctx->basis()[i].rep;
      ns->tower_cands.push_back(cand);
      ns->cand_levels.push_back(Lctx->slot_level(i));
      ns->norm_values.push_back(ns->tower->norm(cand));
      ns->norm_coords.push_back(units_->coords_of(ns->norm_values.back()));
      ns->image.add(ns->norm_coords.back());
    }
  } else {
    // Determinant-based norms in the quotient presentation can carry
    // conductor denominators, so the ramified computation runs over a
    // higher-precision twin of K. The canonical basis depends only on
    // (p, f, eisenstein), so class coordinates transfer verbatim.
    long needN = K_->precision() + long(p) * long(K_->e()) + K_->pe0() + 8;
    FieldPtr W = PadicField::make(K_->p(), K_->f(), K_->eisenstein(), needN);
    auto uW = UnitsContext::get(W);
    ns->b_rep = uW->class_from_coords(line).rep;
    ns->handle = adjoin_pth_root(W, ns->b_rep);
    if (ns->handle->cls() != ExtClass::TotallyRamified)
      fail(Err::Internal, "line classification changed over the precision twin");
    long pe0L = long(p) * K_->pe0();
    // Candidates walk through the unit filtration of L: the uniformizer
    // ladder reaches every level but costs norm precision through conductor
    // denominators; the integral monomial family gamma^a pi^i is
    // precision-free and covers the complementary directions. Candidates
    // whose class cannot be decided at the working precision are skipped;
    // the rank certification below catches any genuine deficit.
    auto push = [&](const ExtElem& cand, const PadicElement& n, long lvl) {
      if (n.is_zero()) return;  // norm value starved of precision: skip
      FpVec coords;
      try {
        coords = uW->coords_of(n);
      } catch (const Error& e) {
        if (e.code == Err::PrecisionInsufficient) return;
        throw;
      }
      ns->hand_cands.push_back(cand);
      ns->cand_levels.push_back(lvl);
      ns->norm_values.push_back(n);
      ns->norm_coords.push_back(coords);
      ns->image.add(coords);
    };
    ExtElem gamma = ns->b_rep.is_unit() ? ns->handle->root() - ns->handle->one()
                                        : ns->handle->root();
    long vgamma = ns->handle->val(gamma);
    {
      const auto& root = ns->handle->root();
      push(root, ns->handle->norm(root), ns->handle->val(root) == 0 ? 0 : -1);
      const auto& unif = ns->handle->uniformizer();
      push(unif, ns->handle->norm(unif), -1);
    }
    const auto& fq = W->residue_field();
    PadicElement piW = W->uniformizer();
    for (unsigned a = 0; a < p; ++a) {
      ExtElem ga = gamma.pow(a);
      for (long i = 0; i * long(p) + long(a) * vgamma <= pe0L + 1; ++i) {
        if (a == 0 && i == 0) continue;
        long vz = long(a) * vgamma + i * long(p);
        ExtElem mono = ga * ns->handle->embed(piW.pow(i));
        if (vz >= 1) {
          for (unsigned j = 0; j < W->f(); ++j) {
            FqElem wj = (j == 0) ? fq.one() : fq.pow(fq.gen(), j);
            ExtElem z = ns->handle->embed(W->teichmuller(wj)) * mono;
            push(ns->handle->one() + z, ns->handle->norm_one_plus(z), vz);
          }
        }
        push(mono, ns->handle->norm(mono), -1);
      }
    }
    // independent binary powers keep the precision drain logarithmic
    std::vector<ExtElem> unif_pow(size_t(pe0L + 2), ns->handle->one());
    for (long s = 1; s <= pe0L + 1; ++s)
      unif_pow[size_t(s)] = ns->handle->uniformizer().pow(s);
    for (unsigned j = 0; j < W->f(); ++j) {
      FqElem wj = (j == 0) ? fq.one() : fq.pow(fq.gen(), j);
      ExtElem t = ns->handle->embed(W->teichmuller(wj));
      for (long s = 1; s <= pe0L + 1; ++s) {
        ExtElem z = t * unif_pow[size_t(s)];
        push(ns->handle->one() + z, ns->handle->norm_one_plus(z), s);
      }
    }
    // at the top level the graded piece is only Z/p; sweep every residue so a
    // generator is hit whichever coset the additive map leaves out
    for (uint64_t idx = 2; idx < fq.q(); ++idx) {
      ExtElem t = ns->handle->embed(W->teichmuller(fq.from_index(idx)));
      ExtElem z = t * unif_pow[size_t(pe0L)];
      push(ns->handle->one() + z, ns->handle->norm_one_plus(z), pe0L);
    }
  }
  if (ns->image.rank() != units_->dim() - 1)
    fail(Err::Internal, "norm image rank " + std::to_string(ns->image.rank()) +
                            " does not have codimension 1 for line " + line_key(line));
  return ns;
}

FpVec HilbertContext::functional_of_line(const FpVec& line) const {
  auto ns = norm_subgroup_line(line);
  auto ker = fp_kernel(ns->image.reduced_rows(), units_->dim(), K_->p());
  if (ker.size() != 1) fail(Err::DegeneratePairing, "norm subgroup functional not unique");
  FpVec phi = ker[0];
  for (size_t i = 0; i < phi.size(); ++i)
    if (phi[i]) return fp_scale(phi, fp_inv(phi[i], K_->p()), K_->p());
  fail(Err::DegeneratePairing, "zero functional");
}

HilbertContext::HilbertContext(const FieldPtr& K) : K_(K), units_(UnitsContext::get(K)) {
  unsigned p = K->p();
  size_t d = units_->dim();
  std::vector<FpVec> phi(d);
  for (size_t j = 0; j < d; ++j) {
    FpVec line(d, 0);
    line[j] = 1;
    phi[j] = functional_of_line(line);
  }
  // solve for the column scalars: skew-symmetry ties them together
  std::vector<FpVec> rows;
  size_t nvars = d;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i; j < d; ++j) {
      FpVec r(nvars, 0);
      r[j] = (r[j] + phi[j][i]) % p;
      r[i] = (r[i] + phi[i][j]) % p;
      if (!fp_is_zero(r)) rows.push_back(r);
    }
  auto lambda_rank = [&](const std::vector<FpVec>& kerbasis) {
    FpSpan s(p, d);
    for (const auto& v : kerbasis) s.add(FpVec(v.begin(), v.begin() + long(d)));
    return s.rank();
  };
  auto pad_rows = [&]() {
    for (auto& r : rows) r.resize(nvars, 0);
  };
  auto ker = fp_kernel(rows, nvars, p);
  if (lambda_rank(ker) > 1) {
    // augment with product-line functionals until the scalars are pinned
    for (size_t j = 0; j < d && lambda_rank(ker) > 1; ++j)
      for (size_t k = j + 1; k < d && lambda_rank(ker) > 1; ++k) {
        FpVec line(d, 0);
        line[j] = 1;
        line[k] = 1;
        FpVec psi = functional_of_line(line);
        // mu * psi = lambda_j phi_j + lambda_k phi_k, one fresh variable mu
        ++nvars;
        pad_rows();
        for (size_t i = 0; i < d; ++i) {
          FpVec r(nvars, 0);
          r[j] = phi[j][i];
          r[k] = (r[k] + phi[k][i]) % p;
          r[nvars - 1] = fp_neg(psi[i], p);
          if (!fp_is_zero(r)) rows.push_back(r);
        }
        ker = fp_kernel(rows, nvars, p);
      }
  }
  if (ker.empty()) fail(Err::DegeneratePairing, "no consistent pairing normalization");
  FpVec lambda;
  {
    FpSpan s(p, d);
    size_t rank = 0;
    for (const auto& v : ker) {
      FpVec lam(v.begin(), v.begin() + long(d));
      if (s.add(lam)) {
        ++rank;
        lambda = lam;
      }
    }
    if (rank != 1) fail(Err::DegeneratePairing, "pairing determined only up to >1 scalars");
  }
  for (size_t j = 0; j < d; ++j)
    if (lambda[j] == 0) fail(Err::DegeneratePairing, "vanishing column scalar");

  mat_.K = K_;
  mat_.m.assign(d, FpVec(d, 0));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) mat_.m[i][j] = lambda[j] * phi[j][i] % p;
  // skew-symmetry and nondegeneracy
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      if ((mat_.m[i][j] + mat_.m[j][i]) % p != 0)
        fail(Err::DegeneratePairing, "matrix is not skew-symmetric");
  {
    FpSpan s(p, d);
    for (size_t i = 0; i < d; ++i) s.add(mat_.m[i]);
    if (s.rank() != d) fail(Err::DegeneratePairing, "pairing matrix is rank-deficient");
  }
  // normalization certificate: lexicographically first nonzero entry becomes 1
  bool done = false;
  for (size_t i = 0; i < d && !done; ++i)
    for (size_t j = 0; j < d && !done; ++j)
      if (mat_.m[i][j]) {
        unsigned scale = fp_inv(mat_.m[i][j], p);
        for (auto& row : mat_.m) row = fp_scale(row, scale, p);
        mat_.ref_i = i;
        mat_.ref_j = j;
        done = true;
      }
}

unsigned HilbertContext::exponent(const FpVec& a, const FpVec& b) const {
  unsigned p = K_->p();
  unsigned acc = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    unsigned row = 0;
    for (size_t j = 0; j < b.size(); ++j) row = (row + mat_.m[i][j] * b[j]) % p;
    acc = (acc + a[i] * row) % p;
  }
  return acc;
}

unsigned HilbertContext::exponent(const PadicElement& a, const PadicElement& b) const {
  return exponent(units_->coords_of(a), units_->coords_of(b));
}

bool HilbertContext::trivial_by_norms(const PadicElement& a, const PadicElement& b) const {
  FpVec cb = units_->coords_of(b);
  if (fp_is_zero(cb)) return true;
  return norm_subgroup_line(cb)->contains(units_->coords_of(a));
}

// ---------------------------------------------------------------------------
// public surface
// ---------------------------------------------------------------------------

std::shared_ptr<const NormSubgroup> norm_subgroup(const FieldPtr& K, const PadicElement& b) {
  return HilbertContext::get(K)->norm_subgroup(b);
}

bool symbol_trivial(const PadicElement& a, const PadicElement& b) {
  if (a.is_zero() || b.is_zero()) fail(Err::ZeroValuation, "pairing with zero");
  return HilbertContext::get(a.field())->trivial_by_norms(a, b);
}

bool symbol_trivial(const UnitClass& a, const PadicElement& b) {
  auto ctx = HilbertContext::get(a.K);
  FpVec cb = ctx->units().coords_of(b);
  if (fp_is_zero(cb)) return true;
  return ctx->norm_subgroup_line(cb)->contains(a.coords);
}

PairingMatrix pairing_matrix(const FieldPtr& K) { return HilbertContext::get(K)->matrix(); }

std::vector<size_t> block_slots(const UnitsContext& ctx, const BlockSpec& s) {
  std::vector<size_t> slots;
  switch (s.kind) {
    case BlockSpec::TrivialBlock: break;
    case BlockSpec::Full:
      for (size_t i = 0; i < ctx.dim(); ++i) slots.push_back(i);
      break;
    case BlockSpec::Level: {
      if (s.level > ctx.pe0()) break;
      long lo = std::max(s.level, 1L);
      for (size_t i = 1; i < ctx.dim(); ++i)
        if (ctx.slot_level(i) >= lo) slots.push_back(i);
      break;
    }
  }
  return slots;
}

long image_order(const FieldPtr& K, const BlockSpec& mspec, const BlockSpec& nspec) {
  auto ctx = HilbertContext::get(K);
  auto rows = block_slots(ctx->units(), mspec);
  auto cols = block_slots(ctx->units(), nspec);
  for (size_t i : rows)
    for (size_t j : cols)
      if (ctx->matrix().m[i][j]) return long(K->p());
  return 1;
}

long predicted_image_order(const FieldPtr& K, long m, long n) {
  long pe0 = K->pe0();
  unsigned p = K->p();
  if (m % p != 0 || n % p != 0) return (m + n <= pe0) ? long(p) : 1;
  return (m + n < pe0) ? long(p) : 1;
}

}  // namespace psl
