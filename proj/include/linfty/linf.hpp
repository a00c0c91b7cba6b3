#ifndef LINFTY_LINF_HPP
#define LINFTY_LINF_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linfty/gmod.hpp"

namespace linfty {

/// Sorted multiset of basis indices (a monomial of Sym^k(V[1])).
using SymWord = std::vector<Index>;

/// Curved L-infinity algebra over a NilCdga (A, I): a free module V stored in
/// its shifted form V[1], with symmetric Taylor brackets l_k on the monomial
/// basis of Sym^k(V[1]), each of total degree +1.  The base differential acts
/// on coefficients through the Leibniz rule and is not part of the l_1 table.
class CurvedLinf {
 public:
  CurvedLinf(AlgebraPtr base, std::vector<BasisLabel> unshifted_basis, int kmax,
             std::string name = "L");

  const AlgebraPtr& base() const { return m_base; }
  const ModulePtr& shifted() const { return m_shifted; }  // V[1]
  const std::string& name() const { return m_name; }
  Index rank() const { return m_shifted->rank(); }
  int kmax() const { return m_kmax; }
  int sdeg(Index i) const { return m_shifted->degree(i); }
  /// Degrees of the shifted basis, for straightening words.
  const std::vector<int>& sdegrees() const { return m_sdegrees; }

  /// value: element of V[1] of degree sum(sdeg over mono) + 1; mono sorted.
  void set_bracket(const SymWord& mono, MElement value);
  const MElement* bracket(const SymWord& sorted_mono) const;
  /// Straightens the word, then looks up the table (zero when absent).
  MElement bracket_word(const SymWord& word) const;
  /// Multilinear evaluation of l_k on module elements.
  MElement eval(int k, const std::vector<MElement>& args) const;
  /// l_0 as an element of V[1] (zero when absent).
  MElement curvature() const;

 private:
  AlgebraPtr m_base;
  ModulePtr m_shifted;
  int m_kmax;
  std::string m_name;
  std::vector<int> m_sdegrees;
  std::vector<std::map<SymWord, MElement>> m_brackets;
};

using LinfPtr = std::shared_ptr<CurvedLinf>;
using CLinfPtr = std::shared_ptr<const CurvedLinf>;

// ---------------------------------------------------------------------------
// Symmetric powers
// ---------------------------------------------------------------------------

/// Sorted monomials of weight w over a basis with the given degrees (odd
/// degrees never repeat).
std::vector<SymWord> sym_monomials(const std::vector<int>& degrees, Index rank, int weight);

/// Module ⊕_{w <= wmax} Sym^w(V[1]) with one label per monomial.
struct SymModule {
  ModulePtr mod;
  std::vector<SymWord> monos;
  std::map<SymWord, Index> pos;
  int wmax = 0;
  Index index_of(const SymWord& m) const;
  int weight(Index i) const { return static_cast<int>(monos[static_cast<size_t>(i)].size()); }
};

SymModule sym_module(const CurvedLinf& L, int wmax);

/// Ordered basis of Sym^weight(V) for a plain free module (graded-core op).
std::vector<SymWord> sym_basis(const ModulePtr& V, int weight);

/// Symmetric product of module elements as an element of the Sym module.
MElement sym_product(const CurvedLinf& L, const SymModule& target,
                     const std::vector<MElement>& factors);

// ---------------------------------------------------------------------------
// Coderivation and structure check
// ---------------------------------------------------------------------------

/// Matrix block of the coderivation induced by the brackets, from the
/// monomials of `src` into `dst` (dst must be wide enough to hold every
/// image, i.e. dst.wmax >= src.wmax + 1).
GradedMap coderivation_block(const CurvedLinf& L, const SymModule& src, const SymModule& dst);

/// Coderivation on ⊕_{w <= wcap+1} Sym^w with the base-differential Leibniz
/// term, restricted to sources of weight <= wcap.
Operator coderivation(const CurvedLinf& L, int wcap);

struct StructureReport {
  bool ok = true;
  int weight_cap = 0;
  std::string witness;  // first failing d^2 component, empty when ok
  std::vector<std::string> notes;
};

/// Verifies curvature containment l_0 in I·V and all d^2 = 0 components from
/// sources of weight <= wcap (intermediate weights fully expanded).
StructureReport check_structure(const CurvedLinf& L, int wcap);

// ---------------------------------------------------------------------------
// Chevalley-Eilenberg complexes
// ---------------------------------------------------------------------------

/// Weight-truncated CE chains or cochains with the (signed transpose) matrix
/// of the coderivation and the base Leibniz term.
struct CEComplex {
  bool cochain = false;
  int weight_cap = 0;
  ModulePtr mod;
  GradedMap dmat;
  std::shared_ptr<const std::vector<Element>> leibniz;
  std::vector<int> weights;  // per label
  Operator op() const { return Operator(dmat, leibniz); }
};

CEComplex ce_chains(const CurvedLinf& L, int wcap);
CEComplex ce_cochains(const CurvedLinf& L, int wcap);

/// Presentation of the CE cochain algebra as a NilCdga: the base generators
/// together with one dual generator per basis label, with the differential
/// acting as a derivation.  `dual_group` is the window group of the duals.
struct CEAlgebra {
  AlgebraPtr alg;
  int first_dual = 0;
  int dual_group = 0;
  Index rank = 0;
};

CEAlgebra ce_algebra(const CurvedLinf& L, int wcap);

/// Reads Taylor brackets off a derivation differential on a CE-algebra
/// presentation: the inverse of ce_algebra's dictionary, up to weight wcap.
LinfPtr brackets_from_ce_algebra(const AlgebraPtr& base, const CEAlgebra& cea,
                                 const std::vector<BasisLabel>& unshifted_basis, int wcap,
                                 const std::string& name);

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

class LinfMorphism {
 public:
  LinfMorphism(CLinfPtr src, CLinfPtr dst, int kmax, std::string name = "phi");

  const CLinfPtr& src() const { return m_src; }
  const CLinfPtr& dst() const { return m_dst; }
  int kmax() const { return m_kmax; }

  void set_component(const SymWord& mono, MElement value_in_dst_shifted);
  const MElement* component(const SymWord& sorted_mono) const;
  MElement component_word(const SymWord& word) const;

  /// Induced coalgebra map on a source monomial, landing in the target Sym
  /// module (sum over set partitions with Koszul signs).
  MElement induced(const SymWord& mono, const SymModule& target) const;

  static LinfMorphism identity(const CLinfPtr& L);

 private:
  CLinfPtr m_src, m_dst;
  int m_kmax;
  std::string m_name;
  std::vector<std::map<SymWord, MElement>> m_components;
};

struct MorphismReport {
  bool ok = true;
  int weight_cap = 0;
  std::string witness;
};

/// Verifies that the induced coalgebra map intertwines the coderivations on
/// sources of weight <= wcap.
MorphismReport check_morphism(const LinfMorphism& phi, int wcap);

/// Weak equivalence: the linear component induces an isomorphism on the
/// cohomology of the mod-I reductions (decided by an exact mapping-cone rank
/// computation over the quotient ring, within the window).
bool is_weak_equivalence(const LinfMorphism& phi, const Window& w = Window());

/// Scalar extension along R = A/I -> A: brackets extended A-multilinearly;
/// the extended l_1 acquires the base differential through the Leibniz term.
LinfPtr extend_scalars(const CurvedLinf& n, const AlgebraPtr& target_base);

/// dg Lie algebra encoder: l_1 from the differential table (values in V),
/// l_2(x[1], y[1]) = (-1)^{|x|} [x, y][1] from the bracket table on pairs
/// i <= j of unshifted basis indices.
LinfPtr dgla_to_linf(const AlgebraPtr& base, const std::vector<BasisLabel>& unshifted,
                     const std::vector<std::vector<Element>>& d_values,
                     const std::map<std::pair<Index, Index>, std::vector<Element>>& bracket,
                     const std::string& name);

}  // namespace linfty

#endif
