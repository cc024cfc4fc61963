#include "psl/mackey.hpp"

#include <algorithm>
#include <sstream>

namespace psl {

// ---------------------------------------------------------------------------
// FieldLattice
// ---------------------------------------------------------------------------

FieldLattice::FieldLattice(FieldPtr base) : base_(std::move(base)) {
  nodes_.push_back({NodeKind::Base, nullptr, nullptr, 1});
}

const FieldPtr& FieldLattice::node_field(int n) const {
  const Node& nd = nodes_.at(size_t(n));
  if (nd.kind == NodeKind::Base) return base_;
  if (nd.kind == NodeKind::Tower) return nd.tower->top();
  fail(Err::NodeMismatch, "quotient-presentation node has no tower field");
}

const UnramifiedTower& FieldLattice::tower(int n) const {
  const Node& nd = nodes_.at(size_t(n));
  if (nd.kind != NodeKind::Tower) fail(Err::NodeMismatch, "not a tower node");
  return *nd.tower;
}

const ExtPtr& FieldLattice::handle(int n) const {
  const Node& nd = nodes_.at(size_t(n));
  if (nd.kind != NodeKind::Kummer) fail(Err::NodeMismatch, "not a quotient node");
  return nd.kummer;
}

unsigned FieldLattice::rel_degree(int n) const {
  const Node& nd = nodes_.at(size_t(n));
  switch (nd.kind) {
    case NodeKind::Base: return 1;
    case NodeKind::Tower: return nd.tower->rel_degree();
    case NodeKind::Kummer: return nd.kummer->degree();
  }
  return 1;
}

unsigned FieldLattice::pairing_scale(int n) const { return nodes_.at(size_t(n)).scale; }

int FieldLattice::add_unramified(unsigned d) {
  auto tw = std::make_shared<const UnramifiedTower>(base_, d);
  // calibrate the pairing of the top so that evaluation commutes with the
  // norm to the base: scale * exponent_L(Res x, y) == exponent_K(x, N y)
  auto hK = HilbertContext::get(base_);
  auto hL = HilbertContext::get(tw->top());
  auto uK = UnitsContext::get(base_);
  auto uL = UnitsContext::get(tw->top());
  unsigned p = base_->p();
  unsigned scale = 1;
  bool found = false;
  for (size_t i = 0; i < uK->dim() && !found; ++i) {
    FpVec rx = uL->coords_of(tw->embed(uK->basis()[i].rep));
    for (size_t j = 0; j < uL->dim() && !found; ++j) {
      unsigned tL = hL->exponent(rx, uL->basis()[j].coords);
      unsigned tK = hK->exponent(uK->basis()[i].coords,
                                 uK->coords_of(tw->norm(uL->basis()[j].rep)));
      if (tL != 0 && tK != 0) {
        scale = tK * fp_inv(tL, p) % p;
        found = true;
      }
    }
  }
  if (!found) fail(Err::Internal, "no witness pair to calibrate the node pairing");
  nodes_.push_back({NodeKind::Tower, tw, nullptr, scale});
  return int(nodes_.size()) - 1;
}

int FieldLattice::add_kummer(const PadicElement& b) {
  nodes_.push_back({NodeKind::Kummer, nullptr, adjoin_pth_root(base_, b), 1});
  return int(nodes_.size()) - 1;
}

// ---------------------------------------------------------------------------
// entries and terms
// ---------------------------------------------------------------------------

bool NodeClass::certified_trivial() const {
  if (cls) return cls->is_trivial();
  return pth_root.has_value();
}

NodeClass base_entry(const FieldLattice& lat, const UnitClass& c) {
  (void)lat;
  NodeClass e;
  e.node = 0;
  e.cls = c;
  return e;
}

NodeClass tower_entry(const FieldLattice& lat, int node, const PadicElement& rep) {
  NodeClass e;
  e.node = node;
  e.cls = UnitsContext::get(lat.node_field(node))->class_of(rep);
  return e;
}

NodeClass kummer_entry(const FieldLattice& lat, int node, const ExtElem& rep) {
  if (lat.kind(node) != FieldLattice::NodeKind::Kummer)
    fail(Err::NodeMismatch, "kummer_entry needs a quotient node");
  NodeClass e;
  e.node = node;
  e.rep = rep;
  return e;
}

NodeClass restrict_entry(const FieldLattice& lat, int node, const PadicElement& x) {
  NodeClass e;
  e.node = node;
  switch (lat.kind(node)) {
    case FieldLattice::NodeKind::Base:
      e.cls = UnitsContext::get(lat.node_field(0))->class_of(x);
      break;
    case FieldLattice::NodeKind::Tower: {
      PadicElement ex = lat.tower(node).embed(x);
      e.cls = UnitsContext::get(lat.node_field(node))->class_of(ex);
      e.from_base = x;
      break;
    }
    case FieldLattice::NodeKind::Kummer: {
      e.rep = lat.handle(node)->embed(x);
      e.from_base = x;
      break;
    }
  }
  return e;
}

SymbolTerm make_symbol(const FieldLattice& lat, int node, const NodeClass& x,
                       const NodeClass& y) {
  if (x.node != node || y.node != node)
    fail(Err::NodeMismatch, "symbol entries live over different nodes");
  (void)lat;
  SymbolTerm t;
  t.node = node;
  t.x = x;
  t.y = y;
  t.coeff = (x.certified_trivial() || y.certified_trivial()) ? 0 : 1;
  return t;
}

unsigned evaluate_h(const FieldLattice& lat, const SymbolTerm& t) {
  if (t.is_zero_term()) return 0;
  unsigned p = lat.node_field(0)->p();
  switch (lat.kind(t.node)) {
    case FieldLattice::NodeKind::Base: {
      auto h = HilbertContext::get(lat.node_field(0));
      return h->exponent(t.x.cls->coords, t.y.cls->coords) * t.coeff % p;
    }
    case FieldLattice::NodeKind::Tower: {
      auto h = HilbertContext::get(lat.node_field(t.node));
      unsigned raw = h->exponent(t.x.cls->coords, t.y.cls->coords);
      return raw * lat.pairing_scale(t.node) % p * t.coeff % p;
    }
    case FieldLattice::NodeKind::Kummer: {
      if (t.x.from_base && t.y.from_base) {
        // both entries restricted: the term equals deg * {x, y} at the base
        unsigned d = lat.rel_degree(t.node) % p;
        auto h = HilbertContext::get(lat.node_field(0));
        auto u = UnitsContext::get(lat.node_field(0));
        return h->exponent(u->coords_of(*t.x.from_base), u->coords_of(*t.y.from_base)) * d % p *
               t.coeff % p;
      }
      fail(Err::PatternUnsupported,
           "evaluation at a quotient-presentation node needs restricted or trivial entries");
    }
  }
  return 0;
}

std::vector<SymbolTerm> pf_rewrite(const FieldLattice& lat, const SymbolTerm& t, PfDirection dir,
                                   int node_for_pull, const NodeClass* lift, int lifted_slot) {
  unsigned p = lat.node_field(0)->p();
  auto u0 = UnitsContext::get(lat.node_field(0));
  if (t.is_zero_term()) return {};
  if (dir == PfDirection::Push) {
    if (lat.kind(t.node) == FieldLattice::NodeKind::Base)
      fail(Err::EdgeMismatch, "push needs a term over an extension node");
    const NodeClass &ex = t.x, &ey = t.y;
    bool xr = ex.from_base.has_value(), yr = ey.from_base.has_value();
    if (!xr && !yr) fail(Err::EdgeMismatch, "no restricted entry to push along");
    if (xr && yr) {
      // {Res x, Res y}_{L/K} == deg * {x, y}_{K/K}
      unsigned d = lat.rel_degree(t.node) % p;
      unsigned c = t.coeff * d % p;
      if (c == 0) return {};
      SymbolTerm r;
      r.node = 0;
      r.x = base_entry(lat, u0->class_of(*ex.from_base));
      r.y = base_entry(lat, u0->class_of(*ey.from_base));
      r.coeff = c;
      if (r.x.certified_trivial() || r.y.certified_trivial()) return {};
      return {r};
    }
    const NodeClass& restricted = xr ? ex : ey;
    const NodeClass& other = xr ? ey : ex;
    PadicElement normed;
    if (lat.kind(t.node) == FieldLattice::NodeKind::Tower) {
      normed = lat.tower(t.node).norm(other.cls->rep);
    } else {
      if (!other.rep) fail(Err::EdgeMismatch, "missing representative over the quotient node");
      normed = lat.handle(t.node)->norm(*other.rep);
    }
    SymbolTerm r;
    r.node = 0;
    NodeClass nb = base_entry(lat, u0->class_of(normed));
    NodeClass rb = base_entry(lat, u0->class_of(*restricted.from_base));
    r.x = xr ? rb : nb;
    r.y = xr ? nb : rb;
    r.coeff = t.coeff;
    if (r.x.certified_trivial() || r.y.certified_trivial()) r.coeff = 0;
    return r.coeff ? std::vector<SymbolTerm>{r} : std::vector<SymbolTerm>{};
  }
  // Pull
  if (lat.kind(t.node) != FieldLattice::NodeKind::Base)
    fail(Err::EdgeMismatch, "pull starts from a base term");
  if (node_for_pull <= 0 || lift == nullptr) fail(Err::EdgeMismatch, "pull needs a node and lift");
  const NodeClass& slot = lifted_slot == 0 ? t.x : t.y;
  const NodeClass& fixed = lifted_slot == 0 ? t.y : t.x;
  PadicElement normed;
  if (lat.kind(node_for_pull) == FieldLattice::NodeKind::Tower)
    normed = lat.tower(node_for_pull).norm(lift->cls->rep);
  else
    normed = lat.handle(node_for_pull)->norm(*lift->rep);
  if (!(u0->coords_of(normed) == slot.cls->coords))
    fail(Err::NotANorm, "lift does not norm to the designated entry");
  SymbolTerm r;
  r.node = node_for_pull;
  NodeClass res = restrict_entry(lat, node_for_pull, fixed.cls->rep);
  r.x = lifted_slot == 0 ? *lift : res;
  r.y = lifted_slot == 0 ? res : *lift;
  r.coeff = t.coeff;
  if (r.x.certified_trivial() || r.y.certified_trivial()) r.coeff = 0;
  return r.coeff ? std::vector<SymbolTerm>{r} : std::vector<SymbolTerm>{};
}

// ---------------------------------------------------------------------------
// zero witnesses
// ---------------------------------------------------------------------------

namespace {

// Multiply many factors as a balanced tree: the per-multiplication precision
// bookkeeping then costs O(log n) along any root path instead of O(n).
template <class T>
T balanced_product(std::vector<T> fs, const T& unit) {
  if (fs.empty()) return unit;
  while (fs.size() > 1) {
    std::vector<T> next;
    for (size_t i = 0; i + 1 < fs.size(); i += 2) next.push_back(fs[i] * fs[i + 1]);
    if (fs.size() % 2) next.push_back(fs.back());
    fs = std::move(next);
  }
  return fs[0];
}

PadicElement rebuild_tower_preimage(const NormSubgroup& line, const FpVec& expo) {
  std::vector<PadicElement> fs;
  for (size_t i = 0; i < expo.size() && i < line.tower_cands.size(); ++i)
    if (expo[i]) fs.push_back(line.tower_cands[i].pow(expo[i]));
  return balanced_product(std::move(fs), line.tower->top()->one());
}

ExtElem rebuild_handle_preimage(const NormSubgroup& line, const FpVec& expo) {
  std::vector<ExtElem> fs;
  for (size_t i = 0; i < expo.size() && i < line.hand_cands.size(); ++i)
    if (expo[i]) fs.push_back(line.hand_cands[i].pow(expo[i]));
  return balanced_product(std::move(fs), line.handle->one());
}

PadicElement norm_of_preimage(const NormSubgroup& line, const FpVec& expo) {
  // N is multiplicative: the norm of the product is the product of the
  // stored candidate norms
  std::vector<PadicElement> fs;
  for (size_t i = 0; i < expo.size() && i < line.norm_values.size(); ++i)
    if (expo[i]) fs.push_back(line.norm_values[i].pow(expo[i]));
  return balanced_product(std::move(fs), line.handle->base()->one());
}

}  // namespace

WitnessTrace zero_witness(const FieldPtr& K, const UnitClass& a_in, const UnitClass& b_in) {
  auto hc = HilbertContext::get(K);
  WitnessTrace tr;
  tr.K = K;
  tr.a_coords = a_in.coords;
  tr.b_coords = b_in.coords;
  if (hc->exponent(a_in.coords, b_in.coords) != 0)
    fail(Err::NotANorm, "pairing of the symbol is nontrivial");
  if (a_in.is_trivial() || b_in.is_trivial()) {
    tr.trivially_zero = true;
    tr.steps.push_back({TraceStep::TrivialEntry, "an entry is a p-th power: zero term"});
    return tr;
  }
  auto uctx = UnitsContext::get(K);
  LevelTag la = uctx->level_of(a_in.coords);
  LevelTag lb = uctx->level_of(b_in.coords);
  FpVec a = a_in.coords, b = b_in.coords;
  if (la.kind == LevelTag::HasUniformizer) {
    if (lb.kind == LevelTag::HasUniformizer)
      fail(Err::PatternUnsupported, "both entries carry uniformizer components");
    std::swap(a, b);
    std::swap(la, lb);
    tr.swapped = true;
    tr.steps.push_back({TraceStep::Swap, "witness runs on the transposed symbol"});
  }
  tr.a_coords = a;
  tr.b_coords = b;
  bool pattern_top = (la.kind == LevelTag::UnitLevel && la.level == uctx->pe0() &&
                      lb.kind == LevelTag::UnitLevel);
  if (pattern_top) {
    // b is a norm from the unramified adjunction of a, within its level
    auto line = hc->norm_subgroup_line(a);
    if (line->handle->cls() != ExtClass::Unramified)
      fail(Err::Internal, "top-level entry did not give an unramified adjunction");
    tr.top_pattern = true;
    tr.line = line;
    tr.min_level = lb.level;
    auto sol = line->solve_preimage(b, tr.min_level);
    if (!sol) fail(Err::PatternUnsupported, "level-restricted norm preimage not found");
    tr.preimage_exponents = *sol;
    tr.steps.push_back({TraceStep::NormSubstitution,
                        "replace the second entry by the norm of a lift from the unramified "
                        "adjunction of the first, within its filtration level"});
    tr.steps.push_back(
        {TraceStep::ProjectionFormula, "{a, N(lift)}_{K/K} = {Res(a), lift}_{L/K}"});
    tr.steps.push_back(
        {TraceStep::TrivialEntry, "Res(a) is a p-th power over L = K(a^{1/p}): zero term"});
    return tr;
  }
  if (la.kind == LevelTag::HasUniformizer)
    fail(Err::PatternUnsupported, "first entry carries a uniformizer component");
  // generic pattern: the vanishing pairing makes a a norm from K(b^{1/p})
  auto line = hc->norm_subgroup_line(b);
  tr.line = line;
  tr.min_level = 0;
  auto sol = line->solve_preimage(a, tr.min_level);
  if (!sol) fail(Err::NotANorm, "unit-restricted norm preimage not found");
  tr.preimage_exponents = *sol;
  tr.steps.push_back({TraceStep::NormSubstitution,
                      "replace the first entry by the norm of a unit lift from K(b^{1/p})"});
  tr.steps.push_back(
      {TraceStep::ProjectionFormula, "{N(lift), b}_{K/K} = {lift, Res(b)}_{L/K}"});
  tr.steps.push_back(
      {TraceStep::TrivialEntry, "Res(b) is a p-th power over L = K(b^{1/p}): zero term"});
  return tr;
}

bool WitnessTrace::replay() const {
  auto hc = HilbertContext::get(K);
  if (hc->exponent(a_coords, b_coords) != 0) return false;
  if (trivially_zero) return fp_is_zero(a_coords) || fp_is_zero(b_coords);
  if (!line) return false;
  const FpVec& target = top_pattern ? b_coords : a_coords;
  const FpVec& kummer_side = top_pattern ? a_coords : b_coords;
  // the adjoined entry must span the line the subgroup was built for
  {
    bool multiple = false;
    for (unsigned c = 1; c < K->p(); ++c)
      if (fp_scale(line->line, c, K->p()) == kummer_side) multiple = true;
    if (!multiple) return false;
  }
  // the chosen candidates respect the level restriction
  for (size_t i = 0; i < preimage_exponents.size(); ++i)
    if (preimage_exponents[i] && line->cand_levels[i] < min_level) return false;
  // the rebuilt preimage norms to the target class (norm multiplicativity,
  // then an independent recomputation from the product itself)
  const FieldPtr& W = line->handle->base();
  auto uW = UnitsContext::get(W);
  if (!(uW->coords_of(norm_of_preimage(*line, preimage_exponents)) == target)) return false;
  if (line->tower) {
    PadicElement pre = rebuild_tower_preimage(*line, preimage_exponents);
    if (!(UnitsContext::get(K)->coords_of(line->tower->norm(pre)) == target)) return false;
  } else {
    ExtElem pre = rebuild_handle_preimage(*line, preimage_exponents);
    if (!(uW->coords_of(line->handle->norm(pre)) == target)) return false;
  }
  // the final entry of the rewritten symbol is certified trivial over L
  if (line->tower) {
    PadicElement res = line->tower->embed(line->b_rep);
    auto uL = UnitsContext::get(line->tower->top());
    if (!fp_is_zero(uL->coords_of(res))) return false;
  } else {
    ExtElem rootp = line->handle->root().pow(K->p());
    ExtElem diff = rootp - line->handle->embed(line->b_rep);
    if (!diff.is_zero()) return false;
  }
  return true;
}

std::string WitnessTrace::str() const {
  std::ostringstream o;
  o << "symbol {a, b}_{K/K} over " << K->key() << "\n";
  auto pv = [&](const FpVec& v) {
    o << "(";
    for (size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i];
    o << ")";
  };
  o << "  a = ";
  pv(a_coords);
  o << "  b = ";
  pv(b_coords);
  o << "\n";
  for (const auto& s : steps) {
    const char* k = s.kind == TraceStep::Swap                ? "swap"
                    : s.kind == TraceStep::NormSubstitution  ? "norm-substitution"
                    : s.kind == TraceStep::ProjectionFormula ? "projection-formula"
                                                             : "trivial-entry";
    o << "  [" << k << "] " << s.note << "\n";
  }
  if (line) {
    o << "  preimage: ";
    bool first = true;
    for (size_t i = 0; i < preimage_exponents.size(); ++i) {
      if (!preimage_exponents[i]) continue;
      if (!first) o << " * ";
      first = false;
      o << "cand[" << i << "]^" << preimage_exponents[i];
    }
    if (first) o << "(empty product)";
    o << "\n";
  }
  return o.str();
}

// ---------------------------------------------------------------------------
// product dimensions
// ---------------------------------------------------------------------------

ProductDim product_dimension(const FieldPtr& K, const BlockSpec& b1, const BlockSpec& b2) {
  long pe0 = K->pe0();
  auto dead = [&](const BlockSpec& b) {
    return b.kind == BlockSpec::TrivialBlock || (b.kind == BlockSpec::Level && b.level > pe0);
  };
  if (dead(b1) || dead(b2)) return {0, "zero factor"};
  auto with_full = [&](const BlockSpec& o) -> ProductDim {
    if (o.kind == BlockSpec::Full || (o.kind == BlockSpec::Level && o.level == 0))
      return {1, "two-variable full product"};
    return {1, "full times level"};
  };
  if (b1.kind == BlockSpec::Full) return with_full(b2);
  if (b2.kind == BlockSpec::Full) return with_full(b1);
  long m = std::min(b1.level, b2.level), n = std::max(b1.level, b2.level);
  if (n == pe0) return {0, "top level kills"};
  if (m == 0) {
    if (n == 0) return {1, "two-variable full product"};
    return {1, "unit times level"};  // 0 < n < pe0
  }
  fail(Err::Unclassified,
       "block pair (" + b1.str() + ", " + b2.str() + ") is outside the classification");
}

UnitClass sample_class_in_block(const UnitsContext& ctx, const BlockSpec& s, SplitMix& rng) {
  auto slots = block_slots(ctx, s);
  unsigned p = ctx.field()->p();
  FpVec c(ctx.dim(), 0);
  if (slots.empty()) return ctx.class_from_coords(c);
  for (int tries = 0; tries < 64; ++tries) {
    for (size_t i : slots) c[i] = unsigned(rng.below(p));
    bool nz = false;
    for (size_t i : slots) nz = nz || c[i];
    if (nz) break;
  }
  return ctx.class_from_coords(c);
}

CertifiedDim certify_product_dimension(const FieldPtr& K, const BlockSpec& b1,
                                       const BlockSpec& b2, long samples, uint64_t seed) {
  CertifiedDim out;
  out.pd = product_dimension(K, b1, b2);
  auto hc = HilbertContext::get(K);
  auto uctx = UnitsContext::get(K);
  if (out.pd.dim == 1) {
    auto r1 = block_slots(*uctx, b1);
    auto r2 = block_slots(*uctx, b2);
    for (size_t i : r1)
      for (size_t j : r2)
        if (hc->matrix().m[i][j]) {
          std::ostringstream o;
          o << "symbol of basis slots (" << i << ", " << j << ") evaluates to "
            << hc->matrix().m[i][j];
          out.evidence = o.str();
          out.certified = true;
          return out;
        }
    out.certified = false;
    out.evidence = "no nontrivially evaluating symbol found";
    return out;
  }
  long ok = 0, wit = 0;
  for (long t = 0; t < samples; ++t) {
    SplitMix rng = stream(seed, uint64_t(t));
    UnitClass a = sample_class_in_block(*uctx, b1, rng);
    UnitClass b = sample_class_in_block(*uctx, b2, rng);
    if (hc->exponent(a.coords, b.coords) != 0) {
      out.certified = false;
      out.evidence = "sampled symbol evaluates nontrivially";
      out.samples = ok;
      return out;
    }
    ++ok;
    WitnessTrace tr = zero_witness(K, a, b);
    if (!tr.replay()) {
      out.certified = false;
      out.evidence = "witness trace failed to replay";
      out.samples = ok;
      return out;
    }
    ++wit;
  }
  out.certified = true;
  out.samples = ok;
  out.witnesses = wit;
  out.evidence = "all sampled symbols vanish with replayable traces";
  return out;
}

TripleVanish triple_vanishes(const FieldPtr& K, const BlockSpec& b1, const BlockSpec& b2,
                             const BlockSpec& b3) {
  long pe0 = K->pe0();
  std::array<BlockSpec, 3> b = {b1, b2, b3};
  for (auto& s : b)
    if (s.kind == BlockSpec::TrivialBlock || (s.kind == BlockSpec::Level && s.level > pe0))
      return {true, "zero factor"};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      ProductDim pd;
      try {
        pd = product_dimension(K, b[size_t(i)], b[size_t(j)]);
      } catch (const Error& e) {
        if (e.code == Err::Unclassified) continue;
        throw;
      }
      if (pd.dim == 0) return {true, "a zero block kills the product (" + pd.rule + ")"};
      const BlockSpec& r = b[size_t(3 - i - j)];
      if (r.kind == BlockSpec::Full || (r.kind == BlockSpec::Level && r.level <= pe0))
        return {true, "pair reduces to the full product (" + pd.rule +
                          "); three-variable products of the full functor vanish"};
    }
  fail(Err::RuleChainNotFound, "no applicable reduction for (" + b1.str() + ", " + b2.str() +
                                   ", " + b3.str() + ")");
}

// ---------------------------------------------------------------------------
// curve pair blocks
// ---------------------------------------------------------------------------

CurvePairReport curve_pair_blocks(const CurvePtr& E1, const CurvePtr& E2) {
  if (!E1->field()->same_field(*E2->field()))
    fail(Err::FieldMismatch, "curves live over different fields");
  if (E1->reduction() == ReductionClass::GoodSupersingular)
    fail(Err::SupersingularFirstArgument, "the first curve must not be supersingular");
  CurvePairReport rep;
  rep.d1 = kummer_image(E1);
  rep.d2 = kummer_image(E2);
  const FieldPtr& K = E1->field();
  rep.total_dim = 0;
  rep.injective_blockwise = true;
  for (const BlockSpec& l : {rep.d1.first, rep.d1.second})
    for (const BlockSpec& r : {rep.d2.first, rep.d2.second}) {
      ProductDim pd = product_dimension(K, l, r);
      rep.blocks.push_back({l, r, pd.dim, pd.rule});
      rep.total_dim += pd.dim;
    }
  rep.same_reduction_type = (E1->reduction() == E2->reduction());
  int expect = rep.same_reduction_type ? 1 : 2;
  if (rep.total_dim != expect)
    fail(Err::Internal, "block dimension count disagrees with the label comparison");
  return rep;
}

}  // namespace psl
