#include "linfty/gmod.hpp"

#include <algorithm>

#include "linfty/errors.hpp"

namespace linfty {

// ---------------------------------------------------------------------------
// FreeModule
// ---------------------------------------------------------------------------

FreeModule::FreeModule(AlgebraPtr base, std::vector<BasisLabel> basis, std::string name)
    : m_base(std::move(base)), m_basis(std::move(basis)), m_name(std::move(name)) {
  if (!m_base) throw ArgumentError("FreeModule: null base algebra");
  for (size_t i = 0; i < m_basis.size(); ++i)
    for (size_t j = i + 1; j < m_basis.size(); ++j)
      if (m_basis[i].name == m_basis[j].name)
        throw ArgumentError("FreeModule: duplicate basis label '" + m_basis[i].name + "'");
}

Index FreeModule::index_of(const std::string& name) const {
  for (Index i = 0; i < rank(); ++i)
    if (m_basis[static_cast<size_t>(i)].name == name) return i;
  throw LookupError("unknown basis label '" + name + "' in module " + m_name);
}

// ---------------------------------------------------------------------------
// MElement
// ---------------------------------------------------------------------------

MElement::MElement(ModulePtr mod) : m_mod(std::move(mod)) {
  if (!m_mod) throw ArgumentError("MElement: null module");
  m_coef.assign(static_cast<size_t>(m_mod->rank()), Element(m_mod->base()));
}

MElement MElement::basis(ModulePtr mod, Index i) {
  return with_coef(std::move(mod), i, Element());
}

MElement MElement::with_coef(ModulePtr mod, Index i, Element c) {
  MElement x(std::move(mod));
  if (c.is_zero() && !c.algebra()) c = x.m_mod->base()->one();
  x.set_coef(i, std::move(c));
  return x;
}

void MElement::set_coef(Index i, Element c) {
  if (i < 0 || i >= m_mod->rank()) throw ArgumentError("MElement: label index out of range");
  if (!c.is_zero() && c.algebra() != m_mod->base())
    c = transport(c, m_mod->base());
  m_coef[static_cast<size_t>(i)] = std::move(c);
}

void MElement::add_coef(Index i, const Element& c) {
  if (i < 0 || i >= m_mod->rank()) throw ArgumentError("MElement: label index out of range");
  m_coef[static_cast<size_t>(i)] += c;
}

bool MElement::is_zero() const {
  for (const auto& c : m_coef)
    if (!c.is_zero()) return false;
  return true;
}

bool MElement::is_homogeneous(int* degree_out) const {
  bool first = true;
  int deg = 0;
  for (Index i = 0; i < (m_mod ? m_mod->rank() : 0); ++i) {
    const Element& c = m_coef[static_cast<size_t>(i)];
    for (const auto& [m, s] : c.terms()) {
      const int d = c.algebra()->mono_degree(m) + m_mod->degree(i);
      if (first) {
        deg = d;
        first = false;
      } else if (d != deg) {
        return false;
      }
    }
  }
  if (!first && degree_out) *degree_out = deg;
  return true;
}

int MElement::degree() const {
  int d = 0;
  if (is_zero() || !is_homogeneous(&d))
    throw ArgumentError("degree of a zero or inhomogeneous module element");
  return d;
}

MElement MElement::operator-() const {
  MElement out = *this;
  for (auto& c : out.m_coef) c = -c;
  return out;
}

static void require_same_module(const ModulePtr& a, const ModulePtr& b) {
  if (a && b && a != b) throw ArgumentError("module elements over different modules");
}

MElement& MElement::operator+=(const MElement& o) {
  if (!m_mod) return *this = o;
  require_same_module(m_mod, o.m_mod);
  if (o.m_mod)
    for (size_t i = 0; i < m_coef.size(); ++i) m_coef[i] += o.m_coef[i];
  return *this;
}

MElement& MElement::operator-=(const MElement& o) {
  if (!m_mod) return *this = -o;
  require_same_module(m_mod, o.m_mod);
  if (o.m_mod)
    for (size_t i = 0; i < m_coef.size(); ++i) m_coef[i] -= o.m_coef[i];
  return *this;
}

MElement operator*(const Element& a, MElement x) {
  for (auto& c : x.m_coef) c = a * c;
  return x;
}

MElement operator*(const Scalar& s, MElement x) {
  for (auto& c : x.m_coef) c = s * c;
  return x;
}

bool operator==(const MElement& a, const MElement& b) {
  if (!a.m_mod || !b.m_mod) return a.is_zero() && b.is_zero();
  require_same_module(a.m_mod, b.m_mod);
  return a.m_coef == b.m_coef;
}

std::string MElement::str() const {
  if (!m_mod || is_zero()) return "0";
  std::string out;
  for (Index i = 0; i < m_mod->rank(); ++i) {
    const Element& c = m_coef[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")*" + m_mod->label(i).name;
  }
  return out;
}

// ---------------------------------------------------------------------------
// GradedMap
// ---------------------------------------------------------------------------

GradedMap::GradedMap(ModulePtr src, ModulePtr dst, int degree)
    : m_src(std::move(src)), m_dst(std::move(dst)), m_degree(degree) {
  if (!m_src || !m_dst) throw ArgumentError("GradedMap: null module");
  if (m_src->base() != m_dst->base())
    throw ArgumentError("GradedMap: source and target over different base algebras");
  m_entries.assign(static_cast<size_t>(m_src->rank() * m_dst->rank()),
                   Element(m_src->base()));
}

GradedMap GradedMap::identity(ModulePtr m) {
  GradedMap g(m, m, 0);
  for (Index i = 0; i < m->rank(); ++i) g.set_entry(i, i, m->base()->one());
  return g;
}

const Element& GradedMap::entry(Index i, Index j) const {
  return m_entries[static_cast<size_t>(j * m_dst->rank() + i)];
}

void GradedMap::set_entry(Index i, Index j, Element e) {
  if (!e.is_zero()) {
    if (e.algebra() != m_src->base()) e = transport(e, m_src->base());
    int deg = 0;
    if (!e.is_homogeneous(&deg) ||
        deg != m_src->degree(j) + m_degree - m_dst->degree(i))
      throw ArgumentError("GradedMap entry violates the degree shift: (" +
                          m_dst->label(i).name + ", " + m_src->label(j).name + ") = " + e.str());
  }
  m_entries[static_cast<size_t>(j * m_dst->rank() + i)] = std::move(e);
}

MElement GradedMap::column(Index j) const {
  MElement v(m_dst);
  for (Index i = 0; i < m_dst->rank(); ++i) v.set_coef(i, entry(i, j));
  return v;
}

void GradedMap::set_column(Index j, const MElement& v) {
  if (v.module() && v.module() != m_dst)
    throw ArgumentError("GradedMap::set_column: value in wrong module");
  for (Index i = 0; i < m_dst->rank(); ++i)
    if (v.module())
      set_entry(i, j, v.coef(i));
}

bool GradedMap::is_zero() const {
  for (const auto& e : m_entries)
    if (!e.is_zero()) return false;
  return true;
}

MElement GradedMap::apply(const MElement& x) const {
  if (x.module() != m_src) throw ArgumentError("GradedMap::apply: element in wrong module");
  MElement out(m_dst);
  const AlgebraPtr& alg = m_src->base();
  const bool odd = m_degree & 1;
  for (Index j = 0; j < m_src->rank(); ++j) {
    const Element& a = x.coef(j);
    if (a.is_zero()) continue;
    for (const auto& [mono, c] : a.terms()) {
      const bool flip = odd && (alg->mono_degree(mono) & 1);
      Element factor = Element::term(alg, mono, flip ? -c : c);
      for (Index i = 0; i < m_dst->rank(); ++i) {
        const Element& e = entry(i, j);
        if (!e.is_zero()) out.add_coef(i, factor * e);
      }
    }
  }
  return out;
}

GradedMap GradedMap::after(const GradedMap& inner) const {
  if (inner.dst() != m_src) throw ArgumentError("GradedMap::after: modules do not compose");
  GradedMap out(inner.src(), m_dst, m_degree + inner.degree());
  for (Index j = 0; j < inner.src()->rank(); ++j)
    out.set_column(j, apply(inner.column(j)));
  return out;
}

GradedMap GradedMap::entrywise_derivation(const std::vector<Element>& table) const {
  GradedMap out(m_src, m_dst, m_degree + 1);
  for (Index j = 0; j < m_src->rank(); ++j)
    for (Index i = 0; i < m_dst->rank(); ++i) {
      const Element& e = entry(i, j);
      if (!e.is_zero()) out.set_entry(i, j, apply_derivation(table, 1, e));
    }
  return out;
}

GradedMap GradedMap::include_into(ModulePtr new_dst) const {
  GradedMap out(m_src, std::move(new_dst), m_degree);
  std::vector<Index> row(static_cast<size_t>(m_dst->rank()), -1);
  for (Index i = 0; i < m_dst->rank(); ++i)
    row[static_cast<size_t>(i)] = out.dst()->index_of(m_dst->label(i).name);
  for (Index j = 0; j < m_src->rank(); ++j)
    for (Index i = 0; i < m_dst->rank(); ++i) {
      const Element& e = entry(i, j);
      if (!e.is_zero()) out.set_entry(row[static_cast<size_t>(i)], j, e);
    }
  return out;
}

GradedMap& GradedMap::operator+=(const GradedMap& o) {
  if (o.m_src != m_src || o.m_dst != m_dst || o.m_degree != m_degree)
    throw ArgumentError("GradedMap sum: shape mismatch");
  for (size_t k = 0; k < m_entries.size(); ++k) m_entries[k] += o.m_entries[k];
  return *this;
}

// ---------------------------------------------------------------------------
// Operator
// ---------------------------------------------------------------------------

Operator::Operator(GradedMap mat, std::shared_ptr<const std::vector<Element>> leibniz_table)
    : m_mat(std::move(mat)), m_table(std::move(leibniz_table)) {
  if (m_table && m_mat.degree() != 1)
    throw ArgumentError("Operator with Leibniz term must have degree +1");
}

MElement Operator::apply(const MElement& x) const {
  MElement out = m_mat.apply(x);
  if (m_table) {
    const ModulePtr& src = m_mat.src();
    const ModulePtr& dst = m_mat.dst();
    for (Index j = 0; j < src->rank(); ++j) {
      const Element& a = x.coef(j);
      if (a.is_zero()) continue;
      Element da = apply_derivation(*m_table, 1, a);
      if (da.is_zero()) continue;
      const Index i = (src == dst) ? j : dst->index_of(src->label(j).name);
      out.add_coef(i, da);
    }
  }
  return out;
}

GradedMap Operator::square_matrix() const {
  return operator_square(m_mat, m_mat, m_table.get());
}

GradedMap operator_square(const GradedMap& outer, const GradedMap& inner,
                          const std::vector<Element>* table) {
  GradedMap comp = outer.after(inner);
  if (!table) return comp;
  return comp + inner.entrywise_derivation(*table).include_into(outer.dst());
}

// ---------------------------------------------------------------------------
// FlatBasis
// ---------------------------------------------------------------------------

Index FlatBasis::find(Index label, const Monomial& m) const {
  auto it = pos.find({label, m});
  return it == pos.end() ? -1 : it->second;
}

MElement FlatBasis::unflatten(const Vec& v) const {
  MElement x(mod);
  for (Index k = 0; k < size(); ++k) {
    if (v(k).is_zero()) continue;
    const auto& [label, mono] = items[static_cast<size_t>(k)];
    x.add_coef(label, Element::term(mod->base(), mono, v(k)));
  }
  return x;
}

Vec FlatBasis::flatten(const MElement& x, bool truncate) const {
  Vec v = zero_mat(size(), 1);
  for (Index j = 0; j < mod->rank(); ++j) {
    for (const auto& [mono, c] : x.coef(j).terms()) {
      const Index k = find(j, mono);
      if (k < 0) {
        if (truncate) continue;
        throw WindowError("element term " + mod->base()->mono_str(mono) + "*" +
                          mod->label(j).name + " falls outside the window basis");
      }
      v(k) += c;
    }
  }
  return v;
}

std::string FlatBasis::item_str(Index k) const {
  const auto& [label, mono] = items[static_cast<size_t>(k)];
  const std::string ms = mod->base()->mono_str(mono);
  return (ms == "1" ? "" : ms + "*") + mod->label(label).name;
}

static FlatBasis build_flat(const ModulePtr& mod, const Window& w,
                            const std::function<bool(Index, const Monomial&)>& keep) {
  FlatBasis fb;
  fb.mod = mod;
  const auto monos = mod->base()->window_basis(w);
  for (Index j = 0; j < mod->rank(); ++j)
    for (const auto& m : monos)
      if (!keep || keep(j, m)) fb.items.emplace_back(j, m);
  std::sort(fb.items.begin(), fb.items.end(),
            [&](const std::pair<Index, Monomial>& a, const std::pair<Index, Monomial>& b) {
              const int da = mod->base()->mono_degree(a.second) + mod->degree(a.first);
              const int db = mod->base()->mono_degree(b.second) + mod->degree(b.first);
              if (da != db) return da < db;
              if (a.first != b.first) return a.first < b.first;
              return a.second < b.second;
            });
  for (Index k = 0; k < fb.size(); ++k) fb.pos[fb.items[static_cast<size_t>(k)]] = k;
  return fb;
}

FlatBasis flat_basis(const ModulePtr& mod, const Window& w) {
  return build_flat(mod, w, nullptr);
}

FlatBasis flat_basis_degree(const ModulePtr& mod, const Window& w, int degree) {
  return build_flat(mod, w, [&](Index j, const Monomial& m) {
    return mod->base()->mono_degree(m) + mod->degree(j) == degree;
  });
}

FlatBasis flat_basis_filtered(const ModulePtr& mod, const Window& w,
                              const std::function<bool(Index, const Monomial&)>& keep) {
  return build_flat(mod, w, keep);
}

Mat flatten_map(const std::function<MElement(const MElement&)>& fn, const FlatBasis& src,
                const FlatBasis& dst, bool truncate) {
  Mat m = zero_mat(dst.size(), src.size());
  for (Index k = 0; k < src.size(); ++k) {
    const auto& [label, mono] = src.items[static_cast<size_t>(k)];
    MElement x = MElement::with_coef(src.mod, label,
                                     Element::term(src.mod->base(), mono, Scalar(1)));
    m.col(k) = dst.flatten(fn(x), truncate);
  }
  return m;
}

// ---------------------------------------------------------------------------
// cohomology
// ---------------------------------------------------------------------------

static bool mat_is_zero(const Mat& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

std::vector<CohomologySlice> cohomology_slices(const std::function<MElement(const MElement&)>& d,
                                               const ModulePtr& mod, const Window& w,
                                               int deg_min, int deg_max, bool truncate) {
  std::vector<FlatBasis> bases;
  for (int deg = deg_min; deg <= deg_max + 1; ++deg)
    bases.push_back(flat_basis_degree(mod, w, deg));
  std::vector<Mat> mats;
  for (size_t s = 0; s + 1 < bases.size(); ++s)
    mats.push_back(flatten_map(d, bases[s], bases[s + 1], truncate));
  for (size_t s = 0; s + 1 < mats.size(); ++s) {
    Mat sq = mats[s + 1] * mats[s];
    if (!mat_is_zero(sq))
      for (Index c = 0; c < sq.cols(); ++c)
        for (Index r = 0; r < sq.rows(); ++r)
          if (!sq(r, c).is_zero())
            throw StructureError("d^2 != 0 on basis vector " + bases[s].item_str(c));
  }
  std::vector<CohomologySlice> out;
  for (size_t s = 0; s + 1 < bases.size(); ++s) {
    CohomologySlice slice;
    slice.degree = deg_min + static_cast<int>(s);
    Mat d_in = (s == 0) ? zero_mat(bases[s].size(), 0) : mats[s - 1];
    Quotient q = homology_quotient(mats[s], d_in);
    slice.dim = q.dim;
    for (Index c = 0; c < q.reps.cols(); ++c)
      slice.representatives.push_back(bases[s].unflatten(q.reps.col(c)));
    out.push_back(std::move(slice));
  }
  return out;
}

std::vector<CohomologySlice> cohomology(const std::vector<GradedMap>& maps, const Window& w) {
  if (maps.empty()) throw ArgumentError("cohomology: empty complex");
  std::vector<FlatBasis> bases;
  bases.push_back(flat_basis(maps.front().src(), w));
  for (const auto& g : maps) {
    if (g.src() != (bases.size() == 1 ? maps.front().src() : maps[bases.size() - 2].dst()))
      throw ArgumentError("cohomology: maps do not chain");
    bases.push_back(flat_basis(g.dst(), w));
  }
  std::vector<Mat> mats;
  for (size_t s = 0; s < maps.size(); ++s)
    mats.push_back(flatten_map([&](const MElement& x) { return maps[s].apply(x); }, bases[s],
                               bases[s + 1]));
  for (size_t s = 0; s + 1 < mats.size(); ++s) {
    Mat sq = mats[s + 1] * mats[s];
    for (Index c = 0; c < sq.cols(); ++c)
      for (Index r = 0; r < sq.rows(); ++r)
        if (!sq(r, c).is_zero())
          throw StructureError("d^2 != 0 on basis vector " + bases[s].item_str(c));
  }
  std::vector<CohomologySlice> out;
  for (size_t s = 0; s < bases.size(); ++s) {
    CohomologySlice slice;
    slice.degree = static_cast<int>(s);
    Mat d_out = (s < mats.size()) ? mats[s] : zero_mat(0, bases[s].size());
    Mat d_in = (s == 0) ? zero_mat(bases[s].size(), 0) : mats[s - 1];
    Quotient q = homology_quotient(d_out, d_in);
    slice.dim = q.dim;
    for (Index c = 0; c < q.reps.cols(); ++c)
      slice.representatives.push_back(bases[s].unflatten(q.reps.col(c)));
    out.push_back(std::move(slice));
  }
  return out;
}

}  // namespace linfty
