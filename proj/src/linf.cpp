#include "linfty/linf.hpp"

#include <algorithm>

#include "linfty/errors.hpp"
#include "linfty/koszul.hpp"

namespace linfty {

// ---------------------------------------------------------------------------
// CurvedLinf
// ---------------------------------------------------------------------------

CurvedLinf::CurvedLinf(AlgebraPtr base, std::vector<BasisLabel> unshifted_basis, int kmax,
                       std::string name)
    : m_base(std::move(base)), m_kmax(kmax), m_name(std::move(name)) {
  if (kmax < 0) throw ArgumentError("CurvedLinf: negative bracket arity bound");
  std::vector<BasisLabel> shifted = std::move(unshifted_basis);
  for (auto& l : shifted) l.degree -= 1;
  m_shifted = make_module(m_base, std::move(shifted), m_name + "[1]");
  for (Index i = 0; i < m_shifted->rank(); ++i) m_sdegrees.push_back(m_shifted->degree(i));
  m_brackets.assign(static_cast<size_t>(kmax) + 1, {});
}

void CurvedLinf::set_bracket(const SymWord& mono, MElement value) {
  const int k = static_cast<int>(mono.size());
  if (k > m_kmax) throw ArgumentError("bracket arity exceeds kmax");
  if (!std::is_sorted(mono.begin(), mono.end()))
    throw ArgumentError("bracket monomial must be sorted");
  for (size_t t = 0; t + 1 < mono.size(); ++t)
    if (mono[t] == mono[t + 1] && (m_sdegrees[static_cast<size_t>(mono[t])] & 1))
      throw ArgumentError("bracket monomial repeats an odd generator");
  if (value.module() && value.module() != m_shifted)
    throw ArgumentError("bracket value must live in V[1]");
  if (value.is_zero()) return;
  int expected = 1;
  for (Index i : mono) expected += sdeg(i);
  int got = 0;
  if (!value.is_homogeneous(&got) || got != expected)
    throw StructureError("bracket degree violation: l_" + std::to_string(k) + " value " +
                         value.str() + " is not homogeneous of degree " +
                         std::to_string(expected));
  m_brackets[static_cast<size_t>(k)][mono] = std::move(value);
}

const MElement* CurvedLinf::bracket(const SymWord& sorted_mono) const {
  const size_t k = sorted_mono.size();
  if (k >= m_brackets.size()) return nullptr;
  auto it = m_brackets[k].find(sorted_mono);
  return it == m_brackets[k].end() ? nullptr : &it->second;
}

MElement CurvedLinf::bracket_word(const SymWord& word) const {
  std::vector<int> w(word.begin(), word.end());
  auto s = straighten_word(w, m_sdegrees);
  if (s.sign == 0) return MElement(m_shifted);
  SymWord sorted(s.word.begin(), s.word.end());
  const MElement* v = bracket(sorted);
  if (!v) return MElement(m_shifted);
  return s.sign < 0 ? -*v : *v;
}

MElement CurvedLinf::curvature() const {
  const MElement* v = bracket({});
  return v ? *v : MElement(m_shifted);
}

MElement CurvedLinf::eval(int k, const std::vector<MElement>& args) const {
  if (static_cast<int>(args.size()) != k)
    throw ArgumentError("eval: wrong number of arguments");
  MElement out(m_shifted);
  struct Choice {
    const Monomial* amono;
    Scalar c;
    Index v;
  };
  std::vector<Choice> cur(static_cast<size_t>(k));
  auto rec = [&](auto&& self, int t) -> void {
    if (t == k) {
      // move each coefficient out to the left past the preceding letters
      int sign = 0;
      int sigma_prefix = 0;
      for (int s = 0; s < k; ++s) {
        const auto& ch = cur[static_cast<size_t>(s)];
        sign += (m_base->mono_degree(*ch.amono) & 1) * sigma_prefix;
        sigma_prefix += m_sdegrees[static_cast<size_t>(ch.v)] & 1;
        sigma_prefix &= 1;
      }
      SymWord word;
      Element coef = m_base->one();
      for (int s = 0; s < k; ++s) {
        const auto& ch = cur[static_cast<size_t>(s)];
        word.push_back(ch.v);
        coef = coef * Element::term(m_base, *ch.amono, ch.c);
        if (coef.is_zero()) return;
      }
      MElement val = bracket_word(word);
      if (val.is_zero()) return;
      if (sign & 1) coef = -coef;
      out += coef * val;
      return;
    }
    const MElement& arg = args[static_cast<size_t>(t)];
    for (Index v = 0; v < m_shifted->rank(); ++v)
      for (const auto& [m, c] : arg.coef(v).terms()) {
        cur[static_cast<size_t>(t)] = {&m, c, v};
        self(self, t + 1);
      }
  };
  rec(rec, 0);
  return out;
}

// ---------------------------------------------------------------------------
// symmetric powers
// ---------------------------------------------------------------------------

std::vector<SymWord> sym_monomials(const std::vector<int>& degrees, Index rank, int weight) {
  std::vector<SymWord> out;
  SymWord cur;
  auto rec = [&](auto&& self, Index from, int left) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (Index i = from; i < rank; ++i) {
      if (!cur.empty() && cur.back() == i && (degrees[static_cast<size_t>(i)] & 1)) continue;
      cur.push_back(i);
      self(self, i, left - 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, weight);
  return out;
}

static std::string word_name(const ModulePtr& m, const SymWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t t = 0; t < w.size(); ++t) {
    if (t) s += "*";
    s += m->label(w[t]).name;
  }
  return s;
}

SymModule sym_module(const CurvedLinf& L, int wmax) {
  SymModule sm;
  sm.wmax = wmax;
  std::vector<BasisLabel> labels;
  for (int w = 0; w <= wmax; ++w)
    for (auto& mono : sym_monomials(L.sdegrees(), L.rank(), w)) {
      int deg = 0;
      for (Index i : mono) deg += L.sdeg(i);
      labels.push_back({word_name(L.shifted(), mono), deg});
      sm.monos.push_back(mono);
    }
  sm.mod = make_module(L.base(), std::move(labels),
                       "Sym(" + L.name() + "[1])<=" + std::to_string(wmax));
  for (Index i = 0; i < sm.mod->rank(); ++i) sm.pos[sm.monos[static_cast<size_t>(i)]] = i;
  return sm;
}

Index SymModule::index_of(const SymWord& m) const {
  auto it = pos.find(m);
  if (it == pos.end()) throw ArgumentError("sym monomial outside the truncation");
  return it->second;
}

std::vector<SymWord> sym_basis(const ModulePtr& V, int weight) {
  if (weight < 0) throw ArgumentError("sym_basis: negative weight");
  std::vector<int> degrees;
  for (Index i = 0; i < V->rank(); ++i) degrees.push_back(V->degree(i));
  return sym_monomials(degrees, V->rank(), weight);
}

MElement sym_product(const CurvedLinf& L, const SymModule& target,
                     const std::vector<MElement>& factors) {
  MElement out(target.mod);
  const int k = static_cast<int>(factors.size());
  struct Choice {
    const Monomial* amono;
    Scalar c;
    Index v;
  };
  std::vector<Choice> cur(static_cast<size_t>(k));
  auto rec = [&](auto&& self, int t) -> void {
    if (t == k) {
      int sign = 0;
      int sigma_prefix = 0;
      for (int s = 0; s < k; ++s) {
        const auto& ch = cur[static_cast<size_t>(s)];
        sign += (L.base()->mono_degree(*ch.amono) & 1) * sigma_prefix;
        sigma_prefix += L.sdeg(ch.v) & 1;
        sigma_prefix &= 1;
      }
      std::vector<int> word;
      Element coef = L.base()->one();
      for (int s = 0; s < k; ++s) {
        word.push_back(static_cast<int>(cur[static_cast<size_t>(s)].v));
        coef = coef * Element::term(L.base(), *cur[static_cast<size_t>(s)].amono,
                                    cur[static_cast<size_t>(s)].c);
        if (coef.is_zero()) return;
      }
      auto st = straighten_word(word, L.sdegrees());
      if (st.sign == 0) return;
      const bool neg = (st.sign < 0) != ((sign & 1) != 0);
      if (neg) coef = -coef;
      SymWord sorted(st.word.begin(), st.word.end());
      out.add_coef(target.index_of(sorted), coef);
      return;
    }
    for (Index v = 0; v < L.rank(); ++v)
      for (const auto& [m, c] : factors[static_cast<size_t>(t)].coef(v).terms()) {
        cur[static_cast<size_t>(t)] = {&m, c, v};
        self(self, t + 1);
      }
  };
  rec(rec, 0);
  return out;
}

// ---------------------------------------------------------------------------
// coderivation
// ---------------------------------------------------------------------------

GradedMap coderivation_block(const CurvedLinf& L, const SymModule& src, const SymModule& dst) {
  GradedMap out(src.mod, dst.mod, 1);
  const auto& sdeg = L.sdegrees();
  for (Index j = 0; j < src.mod->rank(); ++j) {
    const SymWord& w = src.monos[static_cast<size_t>(j)];
    const int p = static_cast<int>(w.size());
    MElement acc(dst.mod);
    for (int k = 0; k <= std::min(L.kmax(), p); ++k) {
      std::vector<int> subset(static_cast<size_t>(k));
      std::vector<bool> chosen(static_cast<size_t>(p), false);
      auto rec = [&](auto&& self, int from, int depth) -> void {
        if (depth == k) {
          int sign = 0;
          int before = 0;
          {
            // letters not in the subset, scanned left to right
            int s = 0;
            before = 0;
            for (int t = 0; t < p; ++t) {
              if (s < k && subset[static_cast<size_t>(s)] == t) {
                sign += (sdeg[static_cast<size_t>(w[static_cast<size_t>(t)])] & 1) * before;
                ++s;
              } else {
                before += sdeg[static_cast<size_t>(w[static_cast<size_t>(t)])] & 1;
                before &= 1;
              }
            }
          }
          SymWord sub, rest;
          {
            int s = 0;
            for (int t = 0; t < p; ++t) {
              if (s < k && subset[static_cast<size_t>(s)] == t) {
                sub.push_back(w[static_cast<size_t>(t)]);
                ++s;
              } else {
                rest.push_back(w[static_cast<size_t>(t)]);
              }
            }
          }
          const MElement* val = L.bracket(sub);
          if (!val) return;
          for (Index i = 0; i < L.rank(); ++i) {
            const Element& a = val->coef(i);
            if (a.is_zero()) continue;
            std::vector<int> word;
            word.push_back(static_cast<int>(i));
            for (Index r : rest) word.push_back(static_cast<int>(r));
            auto st = straighten_word(word, sdeg);
            if (st.sign == 0) continue;
            Element coef = a;
            if (((sign & 1) != 0) != (st.sign < 0)) coef = -coef;
            SymWord sorted(st.word.begin(), st.word.end());
            acc.add_coef(dst.index_of(sorted), coef);
          }
          return;
        }
        for (int t = from; t <= p - (k - depth); ++t) {
          subset[static_cast<size_t>(depth)] = t;
          self(self, t + 1, depth + 1);
        }
      };
      rec(rec, 0, 0);
    }
    out.set_column(j, acc);
  }
  return out;
}

Operator coderivation(const CurvedLinf& L, int wcap) {
  if (wcap < 0) throw ArgumentError("coderivation: negative weight cap");
  SymModule src = sym_module(L, wcap);
  SymModule dst = sym_module(L, wcap + 1);
  GradedMap block = coderivation_block(L, src, dst);
  return Operator(std::move(block),
                  std::make_shared<std::vector<Element>>(L.base()->d_table()));
}

StructureReport check_structure(const CurvedLinf& L, int wcap) {
  StructureReport rep;
  rep.weight_cap = wcap;
  MElement l0 = L.curvature();
  for (Index i = 0; i < L.rank(); ++i)
    for (const auto& [m, c] : l0.coef(i).terms())
      if (L.base()->ideal_weight(m) < 1) {
        rep.ok = false;
        rep.witness = "curvature term " + L.base()->mono_str(m) + "*" +
                      L.shifted()->label(i).name + " is not in I.V";
        return rep;
      }
  SymModule s0 = sym_module(L, wcap);
  SymModule s1 = sym_module(L, wcap + 1);
  SymModule s2 = sym_module(L, wcap + 2);
  GradedMap d1 = coderivation_block(L, s0, s1);
  GradedMap d2 = coderivation_block(L, s1, s2);
  GradedMap sq = operator_square(d2, d1, &L.base()->d_table());
  for (Index j = 0; j < sq.src()->rank() && rep.ok; ++j)
    for (Index i = 0; i < sq.dst()->rank(); ++i)
      if (!sq.entry(i, j).is_zero()) {
        rep.ok = false;
        rep.witness = "d^2(" + s0.mod->label(j).name + ") has component (" +
                      sq.entry(i, j).str() + ")*" + s2.mod->label(i).name;
        break;
      }
  return rep;
}

// ---------------------------------------------------------------------------
// CE complexes
// ---------------------------------------------------------------------------

CEComplex ce_chains(const CurvedLinf& L, int wcap) {
  CEComplex ce;
  ce.cochain = false;
  ce.weight_cap = wcap;
  SymModule s0 = sym_module(L, wcap);
  SymModule s1 = sym_module(L, wcap + 1);
  GradedMap full = coderivation_block(L, s0, s1);
  ce.mod = s0.mod;
  GradedMap trunc(s0.mod, s0.mod, 1);
  for (Index j = 0; j < s0.mod->rank(); ++j)
    for (Index i = 0; i < s0.mod->rank(); ++i) {
      const Element& e = full.entry(s1.index_of(s0.monos[static_cast<size_t>(i)]), j);
      if (!e.is_zero()) trunc.set_entry(i, j, e);
    }
  ce.dmat = std::move(trunc);
  ce.leibniz = std::make_shared<std::vector<Element>>(L.base()->d_table());
  for (Index i = 0; i < s0.mod->rank(); ++i)
    ce.weights.push_back(static_cast<int>(s0.monos[static_cast<size_t>(i)].size()));
  return ce;
}

CEComplex ce_cochains(const CurvedLinf& L, int wcap) {
  CEComplex ce;
  ce.cochain = true;
  ce.weight_cap = wcap;
  SymModule s0 = sym_module(L, wcap);
  SymModule s1 = sym_module(L, wcap + 1);
  GradedMap block = coderivation_block(L, s0, s1);

  std::vector<BasisLabel> duals;
  for (Index i = 0; i < s0.mod->rank(); ++i)
    duals.push_back({s0.mod->label(i).name + "~", -s0.mod->degree(i)});
  ce.mod = make_module(L.base(), std::move(duals),
                       "C*(" + L.name() + ")<=" + std::to_string(wcap));
  GradedMap dual(ce.mod, ce.mod, 1);
  // (d m~)(m'') = -(-1)^{|m|(1+|c|)} c with c the coderivation entry at
  // (row m, col m'').
  for (Index col = 0; col < s0.mod->rank(); ++col) {
    const int dm = s0.mod->degree(col);
    for (Index row = 0; row < s0.mod->rank(); ++row) {
      const Element& c = block.entry(s1.index_of(s0.monos[static_cast<size_t>(col)]), row);
      if (c.is_zero()) continue;
      const int dc = s0.mod->degree(row) + 1 - dm;
      const bool flip = ((dm & 1) * (1 + (dc & 1))) & 1;
      dual.set_entry(row, col, flip ? c : -c);
    }
  }
  ce.dmat = std::move(dual);
  ce.leibniz = std::make_shared<std::vector<Element>>(L.base()->d_table());
  for (Index i = 0; i < s0.mod->rank(); ++i)
    ce.weights.push_back(static_cast<int>(s0.monos[static_cast<size_t>(i)].size()));
  return ce;
}

// ---------------------------------------------------------------------------
// CE algebra presentation
// ---------------------------------------------------------------------------

static Scalar factorial_norm(const SymWord& mono) {
  Rational k = 1;
  long run = 1;
  for (size_t t = 1; t < mono.size(); ++t) {
    if (mono[t] == mono[t - 1]) {
      ++run;
      k *= run;
    } else {
      run = 1;
    }
  }
  return Scalar(k);
}

CEAlgebra ce_algebra(const CurvedLinf& L, int wcap) {
  (void)wcap;  // the dual table is finite; wcap only matters to consumers
  CEAlgebra cea;
  const AlgebraPtr& B = L.base();
  int max_group = 0;
  for (const auto& g : B->gens()) max_group = std::max(max_group, g.group);
  cea.dual_group = max_group + 1;
  cea.first_dual = B->num_gens();
  cea.rank = L.rank();

  std::vector<Generator> gens = B->gens();
  for (Index i = 0; i < L.rank(); ++i) {
    Generator g;
    g.name = L.shifted()->label(i).name + "~";
    g.degree = -L.sdeg(i);
    g.cap = -1;
    g.group = cea.dual_group;
    gens.push_back(g);
  }
  auto alg = NilCdga::create("C*(" + L.name() + ")", std::move(gens));
  AlgebraPtr ap = alg;

  for (int b = 0; b < B->num_gens(); ++b)
    alg->set_d(B->gen(b).name, transport(B->d_gen(b), ap));

  for (Index i = 0; i < L.rank(); ++i) {
    const int sigma_i = L.sdeg(i);
    Element val(ap);
    for (int k = 0; k <= L.kmax(); ++k) {
      for (const auto& mono : sym_monomials(L.sdegrees(), L.rank(), k)) {
        const MElement* br = L.bracket(mono);
        if (!br) continue;
        const Element& a = br->coef(i);
        if (a.is_zero()) continue;
        int dmono = 0;
        for (Index t : mono) dmono += L.sdeg(t);
        const int dc = dmono + 1 - sigma_i;
        const bool flip = ((sigma_i & 1) * (1 + (dc & 1))) & 1;
        Scalar norm = Scalar(1) / factorial_norm(mono);
        if (!flip) norm = -norm;
        for (const auto& [am, ac] : a.terms()) {
          Monomial m(static_cast<size_t>(ap->num_gens()), 0);
          for (int b = 0; b < B->num_gens(); ++b)
            m[static_cast<size_t>(b)] = am[static_cast<size_t>(b)];
          for (Index t : mono) m[static_cast<size_t>(cea.first_dual + t)] += 1;
          val.add_term(m, ac * norm);
        }
      }
    }
    alg->set_d(L.shifted()->label(i).name + "~", val);
  }
  cea.alg = ap;
  return cea;
}

LinfPtr brackets_from_ce_algebra(const AlgebraPtr& base, const CEAlgebra& cea,
                                 const std::vector<BasisLabel>& unshifted_basis, int wcap,
                                 const std::string& name) {
  auto L = std::make_shared<CurvedLinf>(base, unshifted_basis, wcap, name);
  const AlgebraPtr& big = cea.alg;
  std::map<SymWord, MElement> values;
  for (Index i = 0; i < cea.rank; ++i) {
    const Element& dval = big->d_gen(cea.first_dual + static_cast<int>(i));
    const int sigma_i = L->sdeg(i);
    for (const auto& [m, c] : dval.terms()) {
      SymWord mono;
      Monomial bm(static_cast<size_t>(base->num_gens()), 0);
      for (int g = 0; g < big->num_gens(); ++g) {
        if (g >= cea.first_dual) {
          for (int e = 0; e < m[static_cast<size_t>(g)]; ++e)
            mono.push_back(static_cast<Index>(g - cea.first_dual));
        } else {
          bm[static_cast<size_t>(base->gen_index(big->gen(g).name))] = m[static_cast<size_t>(g)];
        }
      }
      const int k = static_cast<int>(mono.size());
      if (k > wcap) continue;
      int dmono = 0;
      for (Index t : mono) dmono += L->sdeg(t);
      const int dc = dmono + 1 - sigma_i;
      const bool flip = ((sigma_i & 1) * (1 + (dc & 1))) & 1;
      Scalar norm = factorial_norm(mono);
      if (!flip) norm = -norm;
      Element a = Element::term(base, bm, c * norm);
      auto it = values.find(mono);
      if (it == values.end()) {
        MElement v(L->shifted());
        v.add_coef(i, a);
        values.emplace(mono, std::move(v));
      } else {
        it->second.add_coef(i, a);
      }
    }
  }
  for (auto& [mono, v] : values) L->set_bracket(mono, std::move(v));
  return L;
}

// ---------------------------------------------------------------------------
// morphisms
// ---------------------------------------------------------------------------

LinfMorphism::LinfMorphism(CLinfPtr src, CLinfPtr dst, int kmax, std::string name)
    : m_src(std::move(src)), m_dst(std::move(dst)), m_kmax(kmax), m_name(std::move(name)) {
  if (m_src->base() != m_dst->base())
    throw ArgumentError("LinfMorphism: source and target over different bases");
  if (kmax < 1) throw ArgumentError("LinfMorphism: kmax must be >= 1");
  m_components.assign(static_cast<size_t>(kmax) + 1, {});
}

void LinfMorphism::set_component(const SymWord& mono, MElement value) {
  const int k = static_cast<int>(mono.size());
  if (k < 1 || k > m_kmax) throw ArgumentError("morphism component arity out of range");
  if (!std::is_sorted(mono.begin(), mono.end()))
    throw ArgumentError("morphism component monomial must be sorted");
  if (value.module() && value.module() != m_dst->shifted())
    throw ArgumentError("morphism component must land in the target W[1]");
  if (value.is_zero()) return;
  int expected = 0;
  for (Index i : mono) expected += m_src->sdeg(i);
  int got = 0;
  if (!value.is_homogeneous(&got) || got != expected)
    throw StructureError("morphism component degree violation at arity " + std::to_string(k));
  m_components[static_cast<size_t>(k)][mono] = std::move(value);
}

const MElement* LinfMorphism::component(const SymWord& sorted_mono) const {
  const size_t k = sorted_mono.size();
  if (k >= m_components.size()) return nullptr;
  auto it = m_components[k].find(sorted_mono);
  return it == m_components[k].end() ? nullptr : &it->second;
}

MElement LinfMorphism::component_word(const SymWord& word) const {
  std::vector<int> w(word.begin(), word.end());
  auto s = straighten_word(w, m_src->sdegrees());
  if (s.sign == 0) return MElement(m_dst->shifted());
  SymWord sorted(s.word.begin(), s.word.end());
  const MElement* v = component(sorted);
  if (!v) return MElement(m_dst->shifted());
  return s.sign < 0 ? -*v : *v;
}

LinfMorphism LinfMorphism::identity(const CLinfPtr& L) {
  LinfMorphism phi(L, L, 1, "id");
  for (Index i = 0; i < L->rank(); ++i)
    phi.set_component({i}, MElement::basis(L->shifted(), i));
  return phi;
}

namespace {
void set_partitions(int n, const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
  std::vector<int> assign(static_cast<size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int blocks) -> void {
    if (i == n) {
      std::vector<std::vector<int>> parts(static_cast<size_t>(blocks));
      for (int t = 0; t < n; ++t)
        parts[static_cast<size_t>(assign[static_cast<size_t>(t)])].push_back(t);
      fn(parts);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      assign[static_cast<size_t>(i)] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0)
    fn({});
  else
    rec(rec, 0, 0);
}
}  // namespace

MElement LinfMorphism::induced(const SymWord& mono, const SymModule& target) const {
  const int p = static_cast<int>(mono.size());
  MElement out(target.mod);
  const auto& sdeg = m_src->sdegrees();
  set_partitions(p, [&](const std::vector<std::vector<int>>& parts) {
    std::vector<int> order;
    for (const auto& b : parts)
      for (int t : b) order.push_back(t);
    int sign = 0;
    for (size_t a = 0; a < order.size(); ++a)
      for (size_t b = a + 1; b < order.size(); ++b)
        if (order[a] > order[b])
          sign += (sdeg[static_cast<size_t>(mono[static_cast<size_t>(order[a])])] & 1) *
                  (sdeg[static_cast<size_t>(mono[static_cast<size_t>(order[b])])] & 1);
    std::vector<MElement> factors;
    for (const auto& b : parts) {
      SymWord w;
      for (int t : b) w.push_back(mono[static_cast<size_t>(t)]);
      MElement v = component_word(w);
      if (v.is_zero()) return;
      factors.push_back(std::move(v));
    }
    MElement prod = (p == 0) ? MElement::with_coef(target.mod, target.index_of({}),
                                                   m_dst->base()->one())
                             : sym_product(*m_dst, target, factors);
    if (sign & 1) prod = -prod;
    out += prod;
  });
  return out;
}

MorphismReport check_morphism(const LinfMorphism& phi, int wcap) {
  MorphismReport rep;
  rep.weight_cap = wcap;
  const CurvedLinf& S = *phi.src();
  const CurvedLinf& T = *phi.dst();
  SymModule s0 = sym_module(S, wcap);
  SymModule s1 = sym_module(S, wcap + 1);
  SymModule t1 = sym_module(T, wcap + 1);
  SymModule t2 = sym_module(T, wcap + 2);
  GradedMap dS = coderivation_block(S, s0, s1);
  GradedMap dT = coderivation_block(T, t1, t2);

  auto phi_on = [&](const MElement& x, const SymModule& xsym, const SymModule& tgt) {
    MElement out(tgt.mod);
    for (Index j = 0; j < x.module()->rank(); ++j) {
      const Element& a = x.coef(j);
      if (a.is_zero()) continue;
      out += a * phi.induced(xsym.monos[static_cast<size_t>(j)], tgt);
    }
    return out;
  };

  for (Index j = 0; j < s0.mod->rank() && rep.ok; ++j) {
    const SymWord& m = s0.monos[static_cast<size_t>(j)];
    MElement lhs = phi_on(dS.column(j), s1, t1);
    MElement rhs = dT.apply(phi.induced(m, t1));
    MElement lhs2(t2.mod);
    for (Index i = 0; i < t1.mod->rank(); ++i)
      if (!lhs.coef(i).is_zero())
        lhs2.add_coef(t2.index_of(t1.monos[static_cast<size_t>(i)]), lhs.coef(i));
    if (lhs2 != rhs) {
      rep.ok = false;
      rep.witness = "phi does not intertwine d on " + s0.mod->label(j).name;
    }
  }
  return rep;
}

bool is_weak_equivalence(const LinfMorphism& phi, const Window& w) {
  const CurvedLinf& S = *phi.src();
  const CurvedLinf& T = *phi.dst();
  AlgebraPtr R = S.base()->quotient_ring();

  std::vector<BasisLabel> slab, tlab, clab;
  for (Index i = 0; i < S.rank(); ++i)
    slab.push_back({"V:" + S.shifted()->label(i).name, S.sdeg(i)});
  for (Index i = 0; i < T.rank(); ++i)
    tlab.push_back({"W:" + T.shifted()->label(i).name, T.sdeg(i)});
  auto Vbar = make_module(R, slab, "Vbar");
  auto Wbar = make_module(R, tlab, "Wbar");

  auto reduced_l1 = [&](const CurvedLinf& L, const ModulePtr& mod) {
    GradedMap d(mod, mod, 1);
    for (Index j = 0; j < L.rank(); ++j) {
      const MElement* v = L.bracket({j});
      if (!v) continue;
      for (Index i = 0; i < L.rank(); ++i) {
        Element e = L.base()->reduce_mod_ideal(v->coef(i));
        if (!e.is_zero()) d.set_entry(i, j, e);
      }
    }
    return d;
  };
  GradedMap dV = reduced_l1(S, Vbar), dW = reduced_l1(T, Wbar);
  if (!dV.after(dV).is_zero() || !dW.after(dW).is_zero())
    throw StructureError("mod-I linear part does not square to zero");

  for (const auto& l : tlab) clab.push_back(l);
  for (Index i = 0; i < S.rank(); ++i)
    clab.push_back({"V:" + S.shifted()->label(i).name, S.sdeg(i) - 1});
  auto cone = make_module(R, clab, "cone");
  GradedMap dc(cone, cone, 1);
  const Index tr = T.rank();
  for (Index j = 0; j < tr; ++j)
    for (Index i = 0; i < tr; ++i)
      if (!dW.entry(i, j).is_zero()) dc.set_entry(i, j, dW.entry(i, j));
  for (Index j = 0; j < S.rank(); ++j) {
    const MElement* c1 = phi.component({j});
    if (c1)
      for (Index i = 0; i < tr; ++i) {
        Element e = S.base()->reduce_mod_ideal(c1->coef(i));
        if (!e.is_zero()) dc.set_entry(i, tr + j, e);
      }
    for (Index i = 0; i < S.rank(); ++i)
      if (!dV.entry(i, j).is_zero()) dc.set_entry(tr + i, tr + j, -dV.entry(i, j));
  }
  if (!dc.after(dc).is_zero())
    throw StructureError("mapping cone differential does not square to zero");

  int dmin = 0, dmax = 0;
  for (Index i = 0; i < cone->rank(); ++i) {
    dmin = std::min(dmin, cone->degree(i));
    dmax = std::max(dmax, cone->degree(i));
  }
  auto slices = cohomology_slices([&](const MElement& x) { return dc.apply(x); }, cone, w,
                                  dmin - 1, dmax + 1, /*truncate=*/true);
  for (const auto& s : slices)
    if (s.dim != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// scalar extension and dgla encoding
// ---------------------------------------------------------------------------

static bool quotient_matches(const NilCdga& small, const NilCdga& big) {
  for (const auto& g : small.gens()) {
    if (g.cap == 0) continue;
    bool found = false;
    for (int i = 0; i < big.num_gens(); ++i) {
      const Generator& h = big.gen(i);
      if (h.name == g.name && h.degree == g.degree && h.cap == g.cap && !big.in_ideal(i))
        found = true;
    }
    if (!found) return false;
  }
  for (int i = 0; i < big.num_gens(); ++i) {
    const Generator& h = big.gen(i);
    if (big.in_ideal(i) || h.cap == 0) continue;
    bool found = false;
    for (const auto& g : small.gens())
      if (g.name == h.name && g.degree == h.degree) found = true;
    if (!found) return false;
  }
  return true;
}

LinfPtr extend_scalars(const CurvedLinf& n, const AlgebraPtr& target_base) {
  if (!quotient_matches(*n.base(), *target_base))
    throw ArgumentError("extend_scalars: target base does not thicken the source base");
  std::vector<BasisLabel> labels;
  for (Index i = 0; i < n.rank(); ++i)
    labels.push_back({n.shifted()->label(i).name, n.sdeg(i) + 1});
  auto out = std::make_shared<CurvedLinf>(target_base, labels, n.kmax(),
                                          n.name() + "@" + target_base->name());
  for (int k = 0; k <= n.kmax(); ++k)
    for (const auto& mono : sym_monomials(n.sdegrees(), n.rank(), k)) {
      const MElement* v = n.bracket(mono);
      if (!v) continue;
      MElement w(out->shifted());
      for (Index i = 0; i < n.rank(); ++i)
        if (!v->coef(i).is_zero()) w.add_coef(i, transport(v->coef(i), target_base));
      out->set_bracket(mono, std::move(w));
    }
  return out;
}

LinfPtr dgla_to_linf(const AlgebraPtr& base, const std::vector<BasisLabel>& unshifted,
                     const std::vector<std::vector<Element>>& d_values,
                     const std::map<std::pair<Index, Index>, std::vector<Element>>& bracket,
                     const std::string& name) {
  auto L = std::make_shared<CurvedLinf>(base, unshifted, 2, name);
  const Index r = L->rank();
  if (!d_values.empty()) {
    for (Index j = 0; j < r; ++j) {
      MElement v(L->shifted());
      bool nonzero = false;
      for (Index i = 0; i < r; ++i) {
        const Element& e = d_values[static_cast<size_t>(j)][static_cast<size_t>(i)];
        if (!e.is_zero()) {
          v.add_coef(i, e);
          nonzero = true;
        }
      }
      if (nonzero) L->set_bracket({j}, std::move(v));
    }
  }
  for (const auto& [pair, coefs] : bracket) {
    auto [i, j] = pair;
    if (i > j) throw ArgumentError("dgla bracket table uses pairs i <= j");
    if (i == j && (L->sdeg(i) & 1)) continue;  // odd square dies in Sym(V[1])
    const int xi = unshifted[static_cast<size_t>(i)].degree;
    MElement v(L->shifted());
    bool nonzero = false;
    for (Index t = 0; t < r; ++t) {
      const Element& e = coefs[static_cast<size_t>(t)];
      if (!e.is_zero()) {
        v.add_coef(t, (xi & 1) ? -e : e);
        nonzero = true;
      }
    }
    if (nonzero) L->set_bracket({i, j}, std::move(v));
  }
  return L;
}

}  // namespace linfty
