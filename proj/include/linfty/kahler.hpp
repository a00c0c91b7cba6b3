#ifndef LINFTY_KAHLER_HPP
#define LINFTY_KAHLER_HPP

#include <memory>
#include <vector>

#include "linfty/algebra.hpp"
#include "linfty/gmod.hpp"

namespace linfty {

/// The Kahler forms Omega^*_B of a monomial NilCdga B whose even generators
/// are uncapped: a new generator d_g of total degree |g|+1 and form weight 1
/// per generator of B, with the universal derivation d_dR(g) = d_g and the
/// internal differential extending B's by [d_int, d_dR] = 0.  Form weight k
/// carves out Omega^k_B as the free B-module on the weight-k d-monomials.
class KahlerAlgebra {
 public:
  explicit KahlerAlgebra(AlgebraPtr base);

  const AlgebraPtr& base() const { return m_base; }
  const AlgebraPtr& omega() const { return m_omega; }
  int dgen_index(int base_gen) const { return m_base->num_gens() + base_gen; }

  Element to_omega(const Element& x) const { return transport(x, m_omega); }
  Element ddr(const Element& x) const { return apply_derivation(*m_ddr, 1, x); }
  Element dint(const Element& x) const { return m_omega->d(x); }

  std::shared_ptr<const std::vector<Element>> ddr_table() const { return m_ddr; }
  std::shared_ptr<const std::vector<Element>> dint_table() const { return m_dint; }

  int weight(const Monomial& m) const { return m_omega->form_weight(m); }
  Element weight_part(const Element& x, int k) const {
    return x.filter([&](const Monomial& m) { return weight(m) == k; });
  }

  /// Euler homotopy for d_dR: splits x by letter count and contracts each
  /// d-generator back to its generator; d_dR h + h d_dR = id away from
  /// letter-free terms.
  Element poincare_homotopy(const Element& x) const;

 private:
  AlgebraPtr m_base;
  AlgebraPtr m_omega;
  std::shared_ptr<std::vector<Element>> m_ddr;
  std::shared_ptr<std::vector<Element>> m_dint;
};

}  // namespace linfty

#endif
