#ifndef LINFTY_GMOD_HPP
#define LINFTY_GMOD_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "linfty/algebra.hpp"
#include "linfty/linalg.hpp"

namespace linfty {

struct BasisLabel {
  std::string name;
  int degree = 0;
};

/// Free graded module over a NilCdga with a finite homogeneous basis.
class FreeModule {
 public:
  FreeModule(AlgebraPtr base, std::vector<BasisLabel> basis, std::string name = "");

  const AlgebraPtr& base() const { return m_base; }
  const std::string& name() const { return m_name; }
  Index rank() const { return static_cast<Index>(m_basis.size()); }
  const BasisLabel& label(Index i) const { return m_basis[static_cast<size_t>(i)]; }
  int degree(Index i) const { return label(i).degree; }
  Index index_of(const std::string& name) const;

 private:
  AlgebraPtr m_base;
  std::vector<BasisLabel> m_basis;
  std::string m_name;
};

using ModulePtr = std::shared_ptr<const FreeModule>;

inline ModulePtr make_module(AlgebraPtr base, std::vector<BasisLabel> basis,
                             std::string name = "") {
  return std::make_shared<FreeModule>(std::move(base), std::move(basis), std::move(name));
}

/// Element of a free module: one base-algebra coefficient per basis label,
/// coefficients written on the left.
class MElement {
 public:
  MElement() = default;
  explicit MElement(ModulePtr mod);
  static MElement basis(ModulePtr mod, Index i);
  static MElement with_coef(ModulePtr mod, Index i, Element c);

  const ModulePtr& module() const { return m_mod; }
  const Element& coef(Index i) const { return m_coef[static_cast<size_t>(i)]; }
  void set_coef(Index i, Element c);
  void add_coef(Index i, const Element& c);

  bool is_zero() const;
  /// Total degree |coefficient| + |label|, when homogeneous.
  bool is_homogeneous(int* degree_out = nullptr) const;
  int degree() const;

  MElement operator-() const;
  MElement& operator+=(const MElement& o);
  MElement& operator-=(const MElement& o);
  friend MElement operator+(MElement a, const MElement& b) { return a += b; }
  friend MElement operator-(MElement a, const MElement& b) { return a -= b; }
  friend MElement operator*(const Element& a, MElement x);
  friend MElement operator*(const Scalar& c, MElement x);
  friend bool operator==(const MElement& a, const MElement& b);
  friend bool operator!=(const MElement& a, const MElement& b) { return !(a == b); }

  std::string str() const;

 private:
  ModulePtr m_mod;
  std::vector<Element> m_coef;
};

/// Base-linear map of free modules with a definite degree shift; the matrix
/// entry (i, j) is the m_i-coefficient of the image of m_j.  Application
/// passes coefficients with the Koszul sign (-1)^{deg(map)·|a|}.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(ModulePtr src, ModulePtr dst, int degree);
  static GradedMap identity(ModulePtr m);

  const ModulePtr& src() const { return m_src; }
  const ModulePtr& dst() const { return m_dst; }
  int degree() const { return m_degree; }

  const Element& entry(Index i, Index j) const;
  void set_entry(Index i, Index j, Element e);
  MElement column(Index j) const;
  void set_column(Index j, const MElement& v);

  bool is_zero() const;
  MElement apply(const MElement& x) const;
  /// this ∘ inner.
  GradedMap after(const GradedMap& inner) const;
  /// Entrywise application of the degree-+1 derivation with the given
  /// generator table.
  GradedMap entrywise_derivation(const std::vector<Element>& table) const;
  /// Reinterpret columns in a larger target module (labels matched by name).
  GradedMap include_into(ModulePtr new_dst) const;

  GradedMap& operator+=(const GradedMap& o);
  friend GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }

 private:
  ModulePtr m_src, m_dst;
  int m_degree = 0;
  std::vector<Element> m_entries;  // column-major: entry(i,j) = m_entries[j*dst_rank + i]
};

/// Degree-+1 operator T(a·m) = δ(a)·m + (-1)^{|a|} a·G(m): a matrix part G
/// plus, optionally, the Leibniz term of a base derivation δ given by a
/// generator table (the base differential, or a Kahler differential).
class Operator {
 public:
  Operator() = default;
  explicit Operator(GradedMap mat) : m_mat(std::move(mat)) {}
  Operator(GradedMap mat, std::shared_ptr<const std::vector<Element>> leibniz_table);

  const GradedMap& matrix() const { return m_mat; }
  bool has_leibniz() const { return static_cast<bool>(m_table); }
  const std::vector<Element>* table() const { return m_table.get(); }

  MElement apply(const MElement& x) const;
  /// Matrix of T^2 (valid because the base derivation squares to zero):
  /// entrywise δ of G plus G∘G.
  GradedMap square_matrix() const;

 private:
  GradedMap m_mat;
  std::shared_ptr<const std::vector<Element>> m_table;
};

/// Matrix of T_outer ∘ T_inner for two operator blocks sharing one Leibniz
/// table (or none): entrywise δ of inner plus outer ∘ inner.
GradedMap operator_square(const GradedMap& outer, const GradedMap& inner,
                          const std::vector<Element>* table);

// ---------------------------------------------------------------------------
// Flattening to exact matrices over the scalars
// ---------------------------------------------------------------------------

/// Basis of (label, monomial) pairs spanning a window of a free module.
struct FlatBasis {
  ModulePtr mod;
  std::vector<std::pair<Index, Monomial>> items;
  std::map<std::pair<Index, Monomial>, Index> pos;

  Index size() const { return static_cast<Index>(items.size()); }
  Index find(Index label, const Monomial& m) const;
  MElement unflatten(const Vec& v) const;
  Vec flatten(const MElement& x, bool truncate = false) const;
  std::string item_str(Index k) const;
};

FlatBasis flat_basis(const ModulePtr& mod, const Window& w);
FlatBasis flat_basis_degree(const ModulePtr& mod, const Window& w, int degree);
FlatBasis flat_basis_filtered(const ModulePtr& mod, const Window& w,
                              const std::function<bool(Index, const Monomial&)>& keep);

/// Matrix of a linear map on flat bases; entries landing outside dst either
/// raise WindowError or are dropped when truncate is set.
Mat flatten_map(const std::function<MElement(const MElement&)>& fn, const FlatBasis& src,
                const FlatBasis& dst, bool truncate = false);

// ---------------------------------------------------------------------------
// Cohomology of finite complexes
// ---------------------------------------------------------------------------

struct CohomologySlice {
  int degree = 0;
  Index dim = 0;
  std::vector<MElement> representatives;
};

/// Cohomology of the degree-graded complex carried by a single module with a
/// degree-+1 operator, flattened over the window.  Checks d∘d = 0 on the
/// window and reports the first offending basis vector otherwise.
std::vector<CohomologySlice> cohomology_slices(const std::function<MElement(const MElement&)>& d,
                                               const ModulePtr& mod, const Window& w,
                                               int deg_min, int deg_max, bool truncate = false);

/// Cohomology of an explicit finite complex M_0 -> M_1 -> ... -> M_k given by
/// graded maps; spot i reports ker(maps[i]) / im(maps[i-1]).
std::vector<CohomologySlice> cohomology(const std::vector<GradedMap>& maps, const Window& w);

}  // namespace linfty

#endif
