#ifndef LINFTY_ALGEBRA_HPP
#define LINFTY_ALGEBRA_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "linfty/scalar.hpp"

namespace linfty {

/// One generator of a finitely presented graded-commutative algebra.
/// cap = -1 means unbounded exponent; cap >= 0 is the largest allowed
/// exponent (so cap = 2 encodes the relation g^3 = 0).  Odd-degree
/// generators are forced to cap 1.  `group` names the window group used when
/// enumerating monomials of unbounded generators; `weight` is the Kahler form
/// weight (1 for d-generators of an Omega-algebra, else 0).
struct Generator {
  std::string name;
  int degree = 0;
  int cap = -1;
  int group = 0;
  int weight = 0;
};

/// Exponent vector over the generator list of one algebra.
using Monomial = std::vector<int>;

class NilCdga;
using AlgebraPtr = std::shared_ptr<const NilCdga>;

/// Element of a NilCdga: a finite Scalar-combination of normal-form
/// monomials, kept in canonical (lexicographic) order.  The zero element may
/// carry a null algebra pointer.
class Element {
 public:
  Element() = default;
  explicit Element(AlgebraPtr alg) : m_alg(std::move(alg)) {}

  static Element term(AlgebraPtr alg, Monomial m, Scalar c);

  const AlgebraPtr& algebra() const { return m_alg; }
  const std::map<Monomial, Scalar>& terms() const { return m_terms; }
  bool is_zero() const { return m_terms.empty(); }

  Scalar coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Scalar& c);

  /// Total cohomological degree; requires a homogeneous nonzero element.
  int degree() const;
  bool is_homogeneous(int* degree_out = nullptr) const;

  Element operator-() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator*(const Scalar& c, Element a);
  friend bool operator==(const Element& a, const Element& b) { return a.m_terms == b.m_terms; }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

  /// Image under the algebra differential.
  Element d() const;

  /// Sub-sum of terms whose monomial satisfies the predicate.
  template <class Pred>
  Element filter(Pred&& p) const {
    Element out(m_alg);
    for (const auto& [m, c] : m_terms)
      if (p(m)) out.m_terms.emplace(m, c);
    return out;
  }

  std::string str() const;

 private:
  AlgebraPtr m_alg;
  std::map<Monomial, Scalar> m_terms;
  friend class NilCdga;
};

/// Exponent caps per window group, used to enumerate monomials of unbounded
/// generators.  A group without a cap entry admits no unbounded exponents.
struct Window {
  std::map<int, int> group_caps;
  Window() = default;
  explicit Window(int group0_cap) { group_caps[0] = group0_cap; }
  Window& cap(int group, int c) {
    group_caps[group] = c;
    return *this;
  }
  int cap_of(int group) const {
    auto it = group_caps.find(group);
    return it == group_caps.end() ? 0 : it->second;
  }
};

struct CheckIssue {
  std::string identity;
  std::string witness;
};

struct CheckReport {
  bool ok = true;
  std::vector<CheckIssue> issues;
  int max_ideal_weight = 0;
  void fail(std::string identity, std::string witness) {
    ok = false;
    issues.push_back({std::move(identity), std::move(witness)});
  }
};

/// Finitely presented graded-commutative dg algebra with monomial relations
/// (exponent caps), a differential given on generators, and a designated
/// nilpotent ideal generated by a subset of the generators.  This is the
/// desk-scale model of a dg nil-thickened manifold: A with ideal I and
/// quotient ring R = A/I.
class NilCdga : public std::enable_shared_from_this<NilCdga> {
 public:
  static std::shared_ptr<NilCdga> create(std::string name, std::vector<Generator> gens);

  // -- setup (before the algebra is shared as const) --
  void set_d(const std::string& gen, Element value);
  void set_ideal(const std::vector<std::string>& gen_names, int nilpotency_order);

  // -- presentation --
  const std::string& name() const { return m_name; }
  int num_gens() const { return static_cast<int>(m_gens.size()); }
  const Generator& gen(int i) const { return m_gens[i]; }
  const std::vector<Generator>& gens() const { return m_gens; }
  int gen_index(const std::string& name) const;
  const std::vector<int>& ideal_gens() const { return m_ideal; }
  bool in_ideal(int gen) const;
  int nilpotency_order() const { return m_order; }
  const Element& d_gen(int i) const { return m_d[i]; }
  const std::vector<Element>& d_table() const { return m_d; }

  // -- elements --
  Element zero() const { return Element(shared_from_this()); }
  Element one() const;
  Element gen_elt(int i) const;
  Element gen_elt(const std::string& name) const { return gen_elt(gen_index(name)); }
  Element constant(const Scalar& c) const;

  // -- monomials --
  bool mono_valid(const Monomial& m) const;
  int mono_degree(const Monomial& m) const;
  int ideal_weight(const Monomial& m) const;
  int form_weight(const Monomial& m) const;
  int group_weight(const Monomial& m, int group) const;
  std::string mono_str(const Monomial& m) const;
  /// (sign, product) with sign 0 when the product dies by caps or odd squares.
  std::pair<int, Monomial> mono_mul(const Monomial& a, const Monomial& b) const;

  Element mul(const Element& a, const Element& b) const;
  Element d(const Element& x) const;

  /// All valid monomials whose unbounded exponents obey the window caps,
  /// sorted by (degree, lex).
  std::vector<Monomial> window_basis(const Window& w) const;
  bool mono_in_window(const Monomial& m, const Window& w) const;
  bool finite_dimensional() const;

  // -- structure checks --
  /// Differential well-definedness: homogeneous degree +1 values, d^2 = 0 on
  /// generators, compatibility with exponent caps.
  CheckReport check_dg() const;
  /// Full dg nil-thickened manifold check: check_dg plus d(I) in I, ideal
  /// nilpotency I^{n+1} = 0 with I^n != 0, and A/I concentrated in degree 0
  /// with zero differential.
  CheckReport check_nil_manifold() const;

  /// Basis of I^k over the non-ideal subalgebra: monomials in the ideal
  /// generators of ideal weight >= k (k = 0 gives the module basis of A).
  std::vector<Monomial> ideal_power(int k) const;
  int max_ideal_weight() const;

  /// Quotient ring R = A/I: same generator list with ideal generators capped
  /// to exponent 0 and zero differential.
  AlgebraPtr quotient_ring() const;
  /// Image of x under A -> A/I (drops ideal-weight > 0 monomials).
  Element reduce_mod_ideal(const Element& x) const;

 private:
  std::string m_name;
  std::vector<Generator> m_gens;
  std::vector<Element> m_d;
  std::vector<int> m_ideal;
  int m_order = 0;
};

/// Moves an element into another algebra by matching generator names.
Element transport(const Element& x, const AlgebraPtr& target);

/// Same generator names, degrees and caps (differentials not compared).
bool same_presentation(const NilCdga& a, const NilCdga& b);

/// Applies the algebra map sending generator i of x's algebra to images[i]
/// (extended multiplicatively; images must be homogeneous of the generator's
/// degree, or zero).
Element apply_morphism(const std::vector<Element>& images, const AlgebraPtr& target,
                       const Element& x);

/// Applies the graded derivation with the given values on generators and the
/// given degree parity to x (Leibniz rule with Koszul signs).
Element apply_derivation(const std::vector<Element>& values, int derivation_degree,
                         const Element& x);

}  // namespace linfty

#endif
