#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psl/formal.hpp"
#include "psl/hilbert.hpp"

namespace psl {

// ---------------------------------------------------------------------------
// field lattice: the base field, unramified tower nodes with calibrated
// pairings, and Kummer-quotient handles
// ---------------------------------------------------------------------------

class FieldLattice {
 public:
  enum class NodeKind { Base, Tower, Kummer };

  explicit FieldLattice(FieldPtr base);

  int base_node() const { return 0; }
  // unramified extension of relative degree d, with the pairing scale
  // calibrated so evaluation commutes with the norm to the base
  int add_unramified(unsigned d);
  int add_kummer(const PadicElement& b);
  size_t size() const { return nodes_.size(); }

  NodeKind kind(int n) const { return nodes_[size_t(n)].kind; }
  const FieldPtr& node_field(int n) const;           // base and tower nodes
  const UnramifiedTower& tower(int n) const;          // tower nodes
  const ExtPtr& handle(int n) const;                  // kummer nodes
  unsigned rel_degree(int n) const;
  unsigned pairing_scale(int n) const;                // F_p unit

 private:
  struct Node {
    NodeKind kind;
    std::shared_ptr<const UnramifiedTower> tower;
    ExtPtr kummer;
    unsigned scale = 1;
  };
  FieldPtr base_;
  std::vector<Node> nodes_;
};

// one entry of a symbol: a class over a lattice node
struct NodeClass {
  int node = 0;
  // base/tower nodes: canonical coordinates over that field
  std::optional<UnitClass> cls;
  // kummer nodes: a representative plus optional certificates
  std::optional<ExtElem> rep;
  std::optional<ExtElem> pth_root;        // triviality certificate
  std::optional<PadicElement> from_base;  // restriction provenance

  bool certified_trivial() const;
};

struct SymbolTerm {
  int node = 0;
  NodeClass x, y;
  unsigned coeff = 1;  // in F_p; 0 encodes the zero term
  bool is_zero_term() const { return coeff == 0; }
};

// public surface ----------------------------------------------------------

// canonical term; entries certified trivial collapse to the zero term
SymbolTerm make_symbol(const FieldLattice& lat, int node, const NodeClass& x, const NodeClass& y);

NodeClass base_entry(const FieldLattice& lat, const UnitClass& c);
NodeClass tower_entry(const FieldLattice& lat, int node, const PadicElement& rep);
NodeClass kummer_entry(const FieldLattice& lat, int node, const ExtElem& rep);
// restriction of a base element to a node (records provenance)
NodeClass restrict_entry(const FieldLattice& lat, int node, const PadicElement& x);

// evaluation through the pairing of the node, corestricted to the base
unsigned evaluate_h(const FieldLattice& lat, const SymbolTerm& t);

enum class PfDirection { Push, Pull };
// Push: a term at an extension node with one entry restricted from the base
// becomes a base-node term with the other entry normed down. Pull: a base
// term {x, N(y)} with a supplied lift y becomes {Res x, y} at the node.
std::vector<SymbolTerm> pf_rewrite(const FieldLattice& lat, const SymbolTerm& t,
                                   PfDirection dir, int node_for_pull = -1,
                                   const NodeClass* lift = nullptr, int lifted_slot = 1);

// ---------------------------------------------------------------------------
// zero witnesses
// ---------------------------------------------------------------------------

struct TraceStep {
  enum Kind { Swap, NormSubstitution, ProjectionFormula, TrivialEntry } kind;
  std::string note;
};

// Self-contained certificate that a base symbol {a, b}_{K/K} vanishes in the
// Mackey product: an explicit norm preimage over L plus the projection-formula
// rewrite landing on a certified-trivial entry.
struct WitnessTrace {
  FieldPtr K;
  FpVec a_coords, b_coords;
  bool swapped = false;          // pattern applied to {b, a}
  bool trivially_zero = false;   // an entry was already a p-th power
  bool top_pattern = false;      // unramified-adjunction pattern used
  std::shared_ptr<const NormSubgroup> line;  // extension data for L
  FpVec preimage_exponents;      // exponents over the line's candidate list
  long min_level = -2;           // restriction used for the preimage solve
  std::vector<TraceStep> steps;

  bool replay() const;  // re-derives every step; true iff the trace is valid
  std::string str() const;
};

// Witness for a single base symbol with trivial pairing. Patterns:
//  - first entry a unit class: a is a norm from K(b^(1/p));
//  - first entry at the top filtration level: b is a norm from the unramified
//    adjunction of a (restricted to the level of b).
WitnessTrace zero_witness(const FieldPtr& K, const UnitClass& a, const UnitClass& b);

// ---------------------------------------------------------------------------
// product dimensions and vanishing rules
// ---------------------------------------------------------------------------

struct ProductDim {
  int dim;           // 0 or 1
  std::string rule;  // which classification case decided it
};

// classification of (block1 x block2) as a sub-product of the two-variable
// multiplicative product; throws Unclassified for the cells the rules do not
// reach (both levels strictly between 0 and the top)
ProductDim product_dimension(const FieldPtr& K, const BlockSpec& b1, const BlockSpec& b2);

struct CertifiedDim {
  ProductDim pd;
  bool certified;
  long samples = 0;
  long witnesses = 0;
  std::string evidence;  // nontrivial symbol for dim 1, sampling note for dim 0
};

// certification: an explicitly evaluated nontrivial symbol for a 1-cell;
// seeded sampling plus witness traces for a 0-cell
CertifiedDim certify_product_dimension(const FieldPtr& K, const BlockSpec& b1,
                                       const BlockSpec& b2, long samples, uint64_t seed);

struct TripleVanish {
  bool vanishes;
  std::string rule_chain;
};

TripleVanish triple_vanishes(const FieldPtr& K, const BlockSpec& b1, const BlockSpec& b2,
                             const BlockSpec& b3);

// ---------------------------------------------------------------------------
// curve pair blocks
// ---------------------------------------------------------------------------

struct CurvePairBlock {
  BlockSpec left, right;
  int dim;
  std::string rule;
};

struct CurvePairReport {
  KummerImageDescriptor d1, d2;
  std::vector<CurvePairBlock> blocks;
  int total_dim;
  bool injective_blockwise;
  bool same_reduction_type;
};

CurvePairReport curve_pair_blocks(const CurvePtr& E1, const CurvePtr& E2);

// sampling helper shared with the report suites
UnitClass sample_class_in_block(const UnitsContext& ctx, const BlockSpec& s, SplitMix& rng);

}  // namespace psl
