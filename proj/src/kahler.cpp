#include "linfty/kahler.hpp"

#include "linfty/errors.hpp"

namespace linfty {

KahlerAlgebra::KahlerAlgebra(AlgebraPtr base) : m_base(std::move(base)) {
  const int n = m_base->num_gens();
  std::vector<Generator> gens = m_base->gens();
  for (const auto& g : gens) {
    if (!(g.degree & 1) && g.cap >= 0)
      throw UnsupportedError("Kahler forms of a base with capped even generator '" + g.name +
                             "' are not free; unsupported");
  }
  for (int i = 0; i < n; ++i) {
    Generator dg = gens[i];
    dg.name = "d_" + gens[i].name;
    dg.degree = gens[i].degree + 1;
    dg.cap = (dg.degree & 1) ? 1 : -1;
    dg.weight = gens[i].weight + 1;
    gens.push_back(dg);
  }
  auto omega = NilCdga::create(m_base->name() + ".omega", std::move(gens));

  m_ddr = std::make_shared<std::vector<Element>>();
  for (int i = 0; i < n; ++i) m_ddr->push_back(omega->gen_elt(n + i));
  for (int i = 0; i < n; ++i) m_ddr->push_back(omega->zero());

  m_dint = std::make_shared<std::vector<Element>>();
  AlgebraPtr om = omega;
  for (int i = 0; i < n; ++i) m_dint->push_back(transport(m_base->d_gen(i), om));
  for (int i = 0; i < n; ++i)
    m_dint->push_back(-apply_derivation(*m_ddr, 1, (*m_dint)[static_cast<size_t>(i)]));
  for (int i = 0; i < 2 * n; ++i)
    omega->set_d(omega->gen(i).name, (*m_dint)[static_cast<size_t>(i)]);
  m_omega = omega;
}

Element KahlerAlgebra::poincare_homotopy(const Element& x) const {
  const int n = m_base->num_gens();
  std::vector<Element> contract;
  for (int i = 0; i < n; ++i) contract.push_back(m_omega->zero());
  for (int i = 0; i < n; ++i) contract.push_back(m_omega->gen_elt(i));
  // split by letter count, then divide the contraction by it
  std::map<int, Element> by_count;
  for (const auto& [m, c] : x.terms()) {
    int count = 0;
    for (int e : m) count += e;
    by_count.try_emplace(count, Element(m_omega)).first->second.add_term(m, c);
  }
  Element out(m_omega);
  for (auto& [count, part] : by_count) {
    if (count == 0) continue;
    out += Scalar(Rational(1, count)) * apply_derivation(contract, -1, part);
  }
  return out;
}

}  // namespace linfty
