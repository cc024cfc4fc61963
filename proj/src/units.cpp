#include "psl/units.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace psl {

std::string LevelTag::str() const {
  switch (kind) {
    case Trivial: return "trivial";
    case UnitLevel: return std::to_string(level);
    case HasUniformizer: return "uniformizer";
  }
  return "?";
}

LevelTag UnitClass::level() const { return UnitsContext::get(K)->level_of(coords); }

std::shared_ptr<const UnitsContext> UnitsContext::get(const FieldPtr& K) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const UnitsContext>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(K->key());
  if (it != cache.end()) return it->second;
  auto ctx = std::shared_ptr<const UnitsContext>(new UnitsContext(K));
  cache[K->key()] = ctx;
  return ctx;
}

UnitsContext::UnitsContext(const FieldPtr& K) : K_(K), top_solver_(K->p(), K->f()) {
  if (!K->e0_integral() || !contains_mu_p(K))
    fail(Err::NoMuP, "field does not contain the p-th roots of unity: " + K->key());
  pe0_ = K->pe0();
  const auto& fq = K->residue_field();
  unsigned p = K->p(), f = K->f();

  // slot 0: the uniformizer class
  basis_.push_back({K_, FpVec(), K->uniformizer()});
  slot_level_.push_back(-1);

  for (long m = 1; m < pe0_; ++m) {
    if (m % p == 0) continue;
    levels_.push_back(m);
    for (unsigned j = 0; j < f; ++j) {
      FqElem wj = fq.pow(fq.gen(), j);
      if (f == 1) wj = fq.one();
      PadicElement rep = K->one() + K->teichmuller(wj) * K->uniformizer().pow(m);
      basis_.push_back({K_, FpVec(), rep});
      slot_level_.push_back(m);
    }
  }

  // top level: 1 + c*pi^{pe0} with the first Teichmuller representative whose
  // class is nontrivial (p-th-root absence decided by root finding)
  {
    bool found = false;
    for (uint64_t idx = 1; idx < fq.q() && !found; ++idx) {
      PadicElement g = K->one() + K->teichmuller(fq.from_index(idx)) * K->uniformizer().pow(pe0_);
      if (!is_pth_power(g)) {
        basis_.push_back({K_, FpVec(), g});
        slot_level_.push_back(pe0_);
        levels_.push_back(pe0_);
        found = true;
      }
    }
    if (!found)
      fail(Err::DegenerateBasis, "no nontrivial class at the top filtration level");
  }

  size_t dim = basis_.size();
  if (dim != size_t(K->degree()) + 2)
    fail(Err::DegenerateBasis, "basis size does not match [K:Qp]+2");
  for (size_t i = 0; i < dim; ++i) {
    basis_[i].coords.assign(dim, 0);
    basis_[i].coords[i] = 1;
  }

  // additive map x -> x^p + a x at the top graded level, a = class of p*pi^{-e}
  PadicElement a_elt = K->from_int((long long)p).shift(-long(K->e()));
  sigma_a_ = a_elt.residue();
  sigma_rows_ = fq.artin_schreier_matrix(sigma_a_);

  // solver expressing any residue as t*c_top + sigma(y); generators in order
  // (c_top, sigma(w^0), ..., sigma(w^{f-1}))
  FqElem c_top = (basis_.back().rep - K->one()).shift(-pe0_).residue();
  top_solver_.add(c_top);
  for (unsigned j = 0; j < f; ++j) {
    FpVec col(f, 0);
    for (unsigned i = 0; i < f; ++i) col[i] = sigma_rows_[i][j];
    top_solver_.add(col);
  }
  if (top_solver_.rank() != f)
    fail(Err::DegenerateBasis, "top-level class does not complement the additive-map image");
  // the additive map must have a one-dimensional kernel (mu_p in K)
  FpSpan sig_span(p, f);
  for (unsigned j = 0; j < f; ++j) {
    FpVec col(f, 0);
    for (unsigned i = 0; i < f; ++i) col[i] = sigma_rows_[i][j];
    sig_span.add(col);
  }
  if (sig_span.rank() != f - 1)
    fail(Err::DegenerateBasis, "additive map kernel is not one-dimensional");

  level_first_slot_.clear();
}

FpVec UnitsContext::coords_of(const PadicElement& x) const {
  if (x.is_zero()) fail(Err::ZeroValuation, "class of zero");
  const auto& fq = K_->residue_field();
  unsigned p = K_->p(), f = K_->f();
  size_t dim = basis_.size();
  FpVec c(dim, 0);
  long v = x.valuation();
  c[0] = unsigned(((v % (long)p) + p) % p);
  PadicElement u = x.shift(-v);
  // Teichmuller part is a p-th power (Frobenius is onto), so strip it
  FqElem r = u.residue();
  if (!(r == fq.one())) u = u * K_->teichmuller(r).inv();

  long guard = 0;
  while (true) {
    if (++guard > pe0_ + 4) fail(Err::Internal, "class reduction failed to terminate");
    PadicElement t = u - K_->one();
    // the class is decided by the digits up to pe0; refuse to guess beyond
    // the carried precision
    if (t.is_zero()) {
      if (t.abs_precision() <= pe0_)
        fail(Err::PrecisionInsufficient,
             "class undecidable at precision " + std::to_string(t.abs_precision()));
      break;
    }
    if (t.valuation() > pe0_) break;
    long m = t.valuation();
    FqElem xbar = t.shift(-m).residue();
    if (m == pe0_) {
      auto sol = top_solver_.express(xbar);
      if (!sol) fail(Err::Internal, "top-level peel failed");
      unsigned tcoef = (*sol)[0];
      // slot index of the top class is dim-1
      c[dim - 1] = (c[dim - 1] + tcoef) % p;
      PadicElement corr = basis_[dim - 1].rep.pow(tcoef);
      FqElem y(f, 0);
      for (unsigned j = 0; j < f; ++j) y[j] = (*sol)[1 + j];
      if (!fq.is_zero(y))
        corr = corr * (K_->one() + K_->teichmuller(y) * K_->uniformizer().pow(pe0_ / p)).pow(p);
      u = u * corr.inv();
    } else if (m % p == 0) {
      FqElem y = fq.frobenius_inverse(xbar);
      PadicElement corr =
          (K_->one() + K_->teichmuller(y) * K_->uniformizer().pow(m / p)).pow(p);
      u = u * corr.inv();
    } else {
      // xbar's coordinates in the w-power basis are the block coordinates
      size_t slot = 1;
      for (size_t lv = 0; lv < levels_.size(); ++lv) {
        if (levels_[lv] == m) break;
        if (levels_[lv] < pe0_) slot += f;
      }
      PadicElement corr = K_->one();
      for (unsigned j = 0; j < f; ++j) {
        if (!xbar[j]) continue;
        c[slot + j] = (c[slot + j] + xbar[j]) % p;
        corr = corr * basis_[slot + j].rep.pow(xbar[j]);
      }
      u = u * corr.inv();
    }
  }
  return c;
}

UnitClass UnitsContext::class_of(const PadicElement& x) const {
  return {K_, coords_of(x), x};
}

UnitClass UnitsContext::class_from_coords(const FpVec& c) const {
  if (c.size() != basis_.size()) fail(Err::Internal, "coordinate size mismatch");
  // balanced product keeps the precision bookkeeping logarithmic in the
  // number of factors
  std::vector<PadicElement> fs;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i]) fs.push_back(basis_[i].rep.pow(c[i]));
  PadicElement rep = K_->one();
  while (fs.size() > 1) {
    std::vector<PadicElement> next;
    for (size_t i = 0; i + 1 < fs.size(); i += 2) next.push_back(fs[i] * fs[i + 1]);
    if (fs.size() % 2) next.push_back(fs.back());
    fs = std::move(next);
  }
  if (!fs.empty()) rep = fs[0];
  return {K_, c, rep};
}

UnitClass UnitsContext::class_mul(const UnitClass& a, const UnitClass& b) const {
  FpVec c = fp_add(a.coords, b.coords, K_->p());
  return {K_, c, a.rep * b.rep};
}

LevelTag UnitsContext::level_of(const FpVec& coords) const {
  if (coords.size() != basis_.size()) fail(Err::Internal, "coordinate size mismatch");
  if (coords[0]) return {LevelTag::HasUniformizer, 0};
  long best = -1;
  for (size_t i = 1; i < coords.size(); ++i)
    if (coords[i]) {
      long lv = slot_level_[i];
      if (best < 0 || lv < best) best = lv;
    }
  if (best < 0) return {LevelTag::Trivial, 0};
  return {LevelTag::UnitLevel, best};
}

long UnitsContext::subgroup_dim(long m) const {
  if (m > pe0_) return 0;
  long lo = std::max(m, 1L);
  long count = 0;
  for (long i = lo; i < pe0_; ++i)
    if (i % K_->p() != 0) ++count;
  return 1 + long(K_->f()) * count;
}

// public surface --------------------------------------------------------------

std::vector<UnitClass> kstar_basis(const FieldPtr& K) { return UnitsContext::get(K)->basis(); }

LevelTag filtration_level(const PadicElement& x) {
  if (x.is_zero()) fail(Err::ZeroValuation, "level of zero");
  auto ctx = UnitsContext::get(x.field());
  long v = x.valuation();
  if (v % (long)x.field()->p() != 0)
    fail(Err::NotAUnit, "valuation " + std::to_string(v) + " is not divisible by p");
  return ctx->level_of(ctx->coords_of(x));
}

LevelTag filtration_level(const UnitClass& c) {
  auto ctx = UnitsContext::get(c.K);
  auto tag = ctx->level_of(c.coords);
  if (tag.kind == LevelTag::HasUniformizer && c.coords[0] != 0) return tag;
  return tag;
}

long subgroup_dim(const FieldPtr& K, long m) {
  if (m < 0) fail(Err::Internal, "negative level");
  return UnitsContext::get(K)->subgroup_dim(m);
}

long subgroup_dim_full(const FieldPtr& K) { return UnitsContext::get(K)->full_dim(); }

std::string units_basis_csv(const FieldPtr& K) {
  auto ctx = UnitsContext::get(K);
  std::ostringstream o;
  o << "level,representative,coordinates\n";
  for (size_t i = 0; i < ctx->basis().size(); ++i) {
    const auto& b = ctx->basis()[i];
    long lv = ctx->slot_level(i);
    o << (lv < 0 ? std::string("uniformizer") : std::to_string(lv)) << ",\"" << b.rep.str(8)
      << "\",\"";
    for (size_t j = 0; j < b.coords.size(); ++j) o << (j ? ";" : "") << b.coords[j];
    o << "\"\n";
  }
  return o.str();
}

}  // namespace psl
