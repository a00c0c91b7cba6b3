#include "linfty/algebra.hpp"

#include <algorithm>
#include <set>

#include "linfty/errors.hpp"

namespace linfty {

// ---------------------------------------------------------------------------
// Element
// ---------------------------------------------------------------------------

Element Element::term(AlgebraPtr alg, Monomial m, Scalar c) {
  Element e(std::move(alg));
  if (!e.m_alg) throw ArgumentError("Element::term: null algebra");
  if (!e.m_alg->mono_valid(m)) return e;
  if (!c.is_zero()) e.m_terms.emplace(std::move(m), std::move(c));
  return e;
}

Scalar Element::coefficient(const Monomial& m) const {
  auto it = m_terms.find(m);
  return it == m_terms.end() ? Scalar(0) : it->second;
}

void Element::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m_terms.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) m_terms.erase(it);
  }
}

int Element::degree() const {
  int d = 0;
  if (!is_homogeneous(&d) || is_zero())
    throw ArgumentError("degree of a zero or inhomogeneous element: " + str());
  return d;
}

bool Element::is_homogeneous(int* degree_out) const {
  bool first = true;
  int deg = 0;
  for (const auto& [m, c] : m_terms) {
    const int d = m_alg->mono_degree(m);
    if (first) {
      deg = d;
      first = false;
    } else if (d != deg) {
      return false;
    }
  }
  if (!first && degree_out) *degree_out = deg;
  return true;
}

Element Element::operator-() const {
  Element out(m_alg);
  for (const auto& [m, c] : m_terms) out.m_terms.emplace(m, -c);
  return out;
}

static void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a && b && a != b) throw ArgumentError("elements over different algebras");
}

Element& Element::operator+=(const Element& o) {
  require_same_algebra(m_alg, o.m_alg);
  if (!m_alg) m_alg = o.m_alg;
  for (const auto& [m, c] : o.m_terms) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  require_same_algebra(m_alg, o.m_alg);
  if (!m_alg) m_alg = o.m_alg;
  for (const auto& [m, c] : o.m_terms) add_term(m, -c);
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  require_same_algebra(a.m_alg, b.m_alg);
  const AlgebraPtr& alg = a.m_alg ? a.m_alg : b.m_alg;
  if (!alg) return Element();
  return alg->mul(a, b);
}

Element operator*(const Scalar& c, Element a) {
  if (c.is_zero()) return Element(a.m_alg);
  for (auto& [m, coef] : a.m_terms) coef *= c;
  return a;
}

Element Element::d() const {
  if (!m_alg) return Element();
  return m_alg->d(*this);
}

std::string Element::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : m_terms) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    const std::string ms = m_alg->mono_str(m);
    if (ms == "1")
      out += cs;
    else if (cs == "1")
      out += ms;
    else
      out += cs + "*" + ms;
  }
  return out;
}

// ---------------------------------------------------------------------------
// NilCdga
// ---------------------------------------------------------------------------

std::shared_ptr<NilCdga> NilCdga::create(std::string name, std::vector<Generator> gens) {
  auto alg = std::shared_ptr<NilCdga>(new NilCdga());
  std::set<std::string> names;
  for (auto& g : gens) {
    if (!names.insert(g.name).second)
      throw ArgumentError("duplicate generator name '" + g.name + "'");
    if ((g.degree & 1) && (g.cap < 0 || g.cap > 1)) g.cap = 1;
  }
  alg->m_name = std::move(name);
  alg->m_gens = std::move(gens);
  alg->m_d.assign(alg->m_gens.size(), Element());
  return alg;
}

int NilCdga::gen_index(const std::string& name) const {
  for (int i = 0; i < num_gens(); ++i)
    if (m_gens[i].name == name) return i;
  throw LookupError("unknown generator '" + name + "' in algebra " + m_name);
}

void NilCdga::set_d(const std::string& gen, Element value) {
  const int i = gen_index(gen);
  if (!value.is_zero()) {
    if (value.algebra().get() != this)
      throw ArgumentError("differential value lives in a different algebra");
  }
  m_d[i] = std::move(value);
}

void NilCdga::set_ideal(const std::vector<std::string>& gen_names, int nilpotency_order) {
  m_ideal.clear();
  for (const auto& n : gen_names) m_ideal.push_back(gen_index(n));
  std::sort(m_ideal.begin(), m_ideal.end());
  m_order = nilpotency_order;
}

bool NilCdga::in_ideal(int gen) const {
  return std::binary_search(m_ideal.begin(), m_ideal.end(), gen);
}

Element NilCdga::one() const { return constant(Scalar(1)); }

Element NilCdga::constant(const Scalar& c) const {
  return Element::term(shared_from_this(), Monomial(m_gens.size(), 0), c);
}

Element NilCdga::gen_elt(int i) const {
  Monomial m(m_gens.size(), 0);
  m[i] = 1;
  if (!mono_valid(m))
    throw ArgumentError("generator '" + m_gens[i].name + "' is capped to exponent 0");
  return Element::term(shared_from_this(), std::move(m), Scalar(1));
}

bool NilCdga::mono_valid(const Monomial& m) const {
  if (static_cast<int>(m.size()) != num_gens())
    throw ArgumentError("monomial length does not match generator count");
  for (int i = 0; i < num_gens(); ++i) {
    if (m[i] < 0) throw ArgumentError("negative exponent");
    if (m_gens[i].cap >= 0 && m[i] > m_gens[i].cap) return false;
  }
  return true;
}

int NilCdga::mono_degree(const Monomial& m) const {
  int d = 0;
  for (int i = 0; i < num_gens(); ++i) d += m[i] * m_gens[i].degree;
  return d;
}

int NilCdga::ideal_weight(const Monomial& m) const {
  int w = 0;
  for (int i : m_ideal) w += m[i];
  return w;
}

int NilCdga::form_weight(const Monomial& m) const {
  int w = 0;
  for (int i = 0; i < num_gens(); ++i) w += m[i] * m_gens[i].weight;
  return w;
}

int NilCdga::group_weight(const Monomial& m, int group) const {
  int w = 0;
  for (int i = 0; i < num_gens(); ++i)
    if (m_gens[i].group == group && m_gens[i].cap < 0) w += m[i];
  return w;
}

std::string NilCdga::mono_str(const Monomial& m) const {
  std::string out;
  for (int i = 0; i < num_gens(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += m_gens[i].name;
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::pair<int, Monomial> NilCdga::mono_mul(const Monomial& a, const Monomial& b) const {
  Monomial prod(num_gens());
  for (int i = 0; i < num_gens(); ++i) {
    prod[i] = a[i] + b[i];
    if ((m_gens[i].degree & 1) && prod[i] > 1) return {0, {}};
    if (m_gens[i].cap >= 0 && prod[i] > m_gens[i].cap) return {0, {}};
  }
  // Koszul sign: each odd letter of b moves left past the odd letters of a
  // with a larger generator index.
  int inversions = 0;
  int odd_tail = 0;  // odd letters of a with index > j, accumulated from the right
  for (int j = num_gens() - 1; j >= 0; --j) {
    if ((m_gens[j].degree & 1) && b[j]) inversions += b[j] * odd_tail;
    if ((m_gens[j].degree & 1) && a[j]) odd_tail += a[j];
  }
  return {(inversions & 1) ? -1 : 1, std::move(prod)};
}

Element NilCdga::mul(const Element& a, const Element& b) const {
  Element out(shared_from_this());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      auto [sign, m] = mono_mul(ma, mb);
      if (sign == 0) continue;
      Scalar c = ca * cb;
      if (sign < 0) c = -c;
      out.add_term(m, c);
    }
  return out;
}

Element NilCdga::d(const Element& x) const { return apply_derivation(m_d, 1, x); }

bool NilCdga::finite_dimensional() const {
  for (const auto& g : m_gens)
    if (g.cap < 0) return false;
  return true;
}

bool NilCdga::mono_in_window(const Monomial& m, const Window& w) const {
  std::map<int, int> used;
  for (int i = 0; i < num_gens(); ++i)
    if (m[i] > 0 && m_gens[i].cap < 0) used[m_gens[i].group] += m[i];
  for (const auto& [g, tot] : used)
    if (tot > w.cap_of(g)) return false;
  return true;
}

std::vector<Monomial> NilCdga::window_basis(const Window& w) const {
  std::vector<Monomial> out;
  Monomial cur(num_gens(), 0);
  std::map<int, int> used;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == num_gens()) {
      out.push_back(cur);
      return;
    }
    const Generator& g = m_gens[i];
    int top;
    if (g.cap >= 0) {
      top = g.cap;
    } else {
      top = w.cap_of(g.group) - used[g.group];
      if (top < 0) top = 0;
    }
    for (int e = 0; e <= top; ++e) {
      cur[i] = e;
      if (g.cap < 0) used[g.group] += e;
      self(self, i + 1);
      if (g.cap < 0) used[g.group] -= e;
    }
    cur[i] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [this](const Monomial& a, const Monomial& b) {
    const int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

CheckReport NilCdga::check_dg() const {
  CheckReport rep;
  for (int i = 0; i < num_gens(); ++i) {
    const Element& v = m_d[i];
    if (v.is_zero()) continue;
    int deg = 0;
    if (!v.is_homogeneous(&deg) || deg != m_gens[i].degree + 1)
      rep.fail("d is homogeneous of degree +1",
               "d(" + m_gens[i].name + ") = " + v.str());
    // Compatibility with the relation g^{cap+1} = 0 for even generators.
    if (m_gens[i].cap >= 1 && !(m_gens[i].degree & 1)) {
      Monomial top(num_gens(), 0);
      top[i] = m_gens[i].cap;
      Element t = Element::term(shared_from_this(), top, Scalar(m_gens[i].cap + 1));
      if (!mul(t, v).is_zero())
        rep.fail("d respects the relation " + m_gens[i].name + "^" +
                     std::to_string(m_gens[i].cap + 1) + " = 0",
                 "d(" + m_gens[i].name + ") = " + v.str());
    }
  }
  for (int i = 0; i < num_gens(); ++i) {
    Element dd = d(m_d[i]);
    if (!dd.is_zero())
      rep.fail("d^2 = 0", "d^2(" + m_gens[i].name + ") = " + dd.str());
  }
  rep.max_ideal_weight = max_ideal_weight();
  return rep;
}

int NilCdga::max_ideal_weight() const {
  int w = 0;
  for (int i : m_ideal) w += (m_gens[i].cap >= 0 ? m_gens[i].cap : 0);
  return w;
}

CheckReport NilCdga::check_nil_manifold() const {
  CheckReport rep = check_dg();
  for (int i : m_ideal) {
    if (m_gens[i].cap < 0)
      rep.fail("ideal generators are nilpotent", m_gens[i].name + " has unbounded exponent");
    Element di = m_d[i];
    for (const auto& [m, c] : di.terms())
      if (ideal_weight(m) < 1) {
        rep.fail("d(I) contained in I",
                 "d(" + m_gens[i].name + ") has term " + mono_str(m) + " outside I");
        break;
      }
  }
  const int maxw = max_ideal_weight();
  if (maxw > m_order) {
    std::string witness;
    Monomial top(num_gens(), 0);
    for (int i : m_ideal) top[i] = std::max(m_gens[i].cap, 0);
    witness = "I^" + std::to_string(m_order + 1) + " contains " + mono_str(top);
    rep.fail("I^{n+1} = 0 for n = " + std::to_string(m_order), witness);
  }
  for (int i = 0; i < num_gens(); ++i) {
    if (in_ideal(i) || m_gens[i].cap == 0) continue;
    if (m_gens[i].degree != 0)
      rep.fail("A/I concentrated in degree 0",
               m_gens[i].name + " has degree " + std::to_string(m_gens[i].degree));
    for (const auto& [m, c] : m_d[i].terms())
      if (ideal_weight(m) < 1) {
        rep.fail("A/I has zero differential",
                 "d(" + m_gens[i].name + ") has term " + mono_str(m) + " outside I");
        break;
      }
  }
  rep.max_ideal_weight = maxw;
  return rep;
}

std::vector<Monomial> NilCdga::ideal_power(int k) const {
  if (k < 0) throw ArgumentError("ideal_power: negative power");
  std::vector<Monomial> out;
  Monomial cur(num_gens(), 0);
  auto rec = [&](auto&& self, size_t pos) -> void {
    if (pos == m_ideal.size()) {
      if (ideal_weight(cur) >= k) out.push_back(cur);
      return;
    }
    const int i = m_ideal[pos];
    const int top = std::max(m_gens[i].cap, 0);
    for (int e = 0; e <= top; ++e) {
      cur[i] = e;
      self(self, pos + 1);
    }
    cur[i] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [this](const Monomial& a, const Monomial& b) {
    const int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

AlgebraPtr NilCdga::quotient_ring() const {
  std::vector<Generator> gens = m_gens;
  for (int i : m_ideal) gens[i].cap = 0;
  auto q = NilCdga::create(m_name + "/I", std::move(gens));
  return q;
}

Element NilCdga::reduce_mod_ideal(const Element& x) const {
  AlgebraPtr q = quotient_ring();
  Element out(q);
  for (const auto& [m, c] : x.terms())
    if (ideal_weight(m) == 0) out.add_term(m, c);
  return out;
}

// ---------------------------------------------------------------------------
// free functions
// ---------------------------------------------------------------------------

Element transport(const Element& x, const AlgebraPtr& target) {
  if (x.is_zero()) return Element(target);
  const NilCdga& src = *x.algebra();
  std::vector<int> map(src.num_gens());
  for (int i = 0; i < src.num_gens(); ++i) {
    map[i] = target->gen_index(src.gen(i).name);
    if (target->gen(map[i]).degree != src.gen(i).degree)
      throw ArgumentError("transport: generator '" + src.gen(i).name + "' changes degree");
  }
  Element out(target);
  for (const auto& [m, c] : x.terms()) {
    Monomial t(target->num_gens(), 0);
    for (int i = 0; i < src.num_gens(); ++i) t[map[i]] = m[i];
    if (!target->mono_valid(t))
      throw ArgumentError("transport: monomial " + src.mono_str(m) + " not valid in target");
    out.add_term(t, c);
  }
  return out;
}

bool same_presentation(const NilCdga& a, const NilCdga& b) {
  if (a.num_gens() != b.num_gens()) return false;
  for (int i = 0; i < a.num_gens(); ++i) {
    const Generator &x = a.gen(i), &y = b.gen(i);
    if (x.name != y.name || x.degree != y.degree || x.cap != y.cap) return false;
  }
  return true;
}

Element apply_morphism(const std::vector<Element>& images, const AlgebraPtr& target,
                       const Element& x) {
  if (x.is_zero()) return Element(target);
  const NilCdga& src = *x.algebra();
  if (static_cast<int>(images.size()) != src.num_gens())
    throw ArgumentError("apply_morphism: one image per generator required");
  Element out(target);
  for (const auto& [m, c] : x.terms()) {
    Element acc = target->constant(c);
    for (int i = 0; i < src.num_gens() && !acc.is_zero(); ++i)
      for (int e = 0; e < m[i]; ++e) acc = acc * images[i];
    out += acc;
  }
  return out;
}

Element apply_derivation(const std::vector<Element>& values, int derivation_degree,
                         const Element& x) {
  if (x.is_zero()) return Element();
  const AlgebraPtr alg = x.algebra();
  const NilCdga& A = *alg;
  if (static_cast<int>(values.size()) != A.num_gens())
    throw ArgumentError("apply_derivation: one value per generator required");
  const bool odd_derivation = derivation_degree & 1;
  Element out(alg);
  for (const auto& [m, c] : x.terms()) {
    int prefix_parity = 0;  // parity of the degree of the prefix word
    for (int i = 0; i < A.num_gens(); ++i) {
      if (m[i] == 0) continue;
      const int gdeg = A.gen(i).degree;
      if (!values[i].is_zero()) {
        for (int t = 0; t < m[i]; ++t) {
          Monomial prefix(A.num_gens(), 0), suffix(A.num_gens(), 0);
          for (int j = 0; j < i; ++j) prefix[j] = m[j];
          prefix[i] = t;
          suffix[i] = m[i] - 1 - t;
          for (int j = i + 1; j < A.num_gens(); ++j) suffix[j] = m[j];
          const int sign_par = odd_derivation ? (prefix_parity + t * gdeg) & 1 : 0;
          Scalar coef = sign_par ? -c : c;
          Element term = Element::term(alg, std::move(prefix), coef) * values[i] *
                         Element::term(alg, std::move(suffix), Scalar(1));
          out += term;
        }
      }
      prefix_parity = (prefix_parity + m[i] * gdeg) & 1;
    }
  }
  return out;
}

}  // namespace linfty
