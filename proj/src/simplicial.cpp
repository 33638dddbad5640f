#include "relcone/simplicial.hpp"

#include <algorithm>
#include <set>

#include "relcone/error.hpp"

namespace relcone {

// ------------------------------------------------------------------ complex

SimplicialComplex::SimplicialComplex(std::vector<std::string> vertices,
                                     const std::vector<std::vector<std::string>>& facets)
    : vertices_(std::move(vertices)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!vertex_pos_.emplace(vertices_[i], i).second) {
      throw InvalidSimplicialComplex("repeated vertex '" + vertices_[i] + "'");
    }
  }
  std::vector<Simplex> idx;
  for (const auto& f : facets) {
    Simplex s;
    for (const auto& v : f) s.push_back(vertex_index(v));
    idx.push_back(std::move(s));
  }
  build(idx);
}

SimplicialComplex::SimplicialComplex(std::vector<std::string> vertices, const std::vector<Simplex>& facets)
    : vertices_(std::move(vertices)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!vertex_pos_.emplace(vertices_[i], i).second) {
      throw InvalidSimplicialComplex("repeated vertex '" + vertices_[i] + "'");
    }
  }
  build(facets);
}

void SimplicialComplex::build(const std::vector<Simplex>& facets) {
  std::vector<std::set<Simplex>> by_dim;
  auto add = [&](const Simplex& s) {
    const std::size_t d = s.size() - 1;
    if (by_dim.size() <= d) by_dim.resize(d + 1);
    by_dim[d].insert(s);
  };
  for (std::size_t v = 0; v < vertices_.size(); ++v) add({v});
  for (Simplex f : facets) {
    if (f.empty()) continue;
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) {
      throw InvalidSimplicialComplex("facet repeats a vertex");
    }
    if (f.back() >= vertices_.size()) throw InvalidSimplicialComplex("facet uses an unknown vertex");
    if (f.size() > 24) throw InvalidSimplicialComplex("facet dimension too large");
    const std::size_t n = f.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Simplex s;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) s.push_back(f[i]);
      add(s);
    }
  }
  simplices_.clear();
  lookup_.clear();
  for (const auto& layer : by_dim) {
    simplices_.emplace_back(layer.begin(), layer.end());
    std::map<Simplex, std::size_t> pos;
    for (std::size_t i = 0; i < simplices_.back().size(); ++i) pos.emplace(simplices_.back()[i], i);
    lookup_.push_back(std::move(pos));
  }
}

std::size_t SimplicialComplex::vertex_index(const std::string& name) const {
  auto it = vertex_pos_.find(name);
  if (it == vertex_pos_.end()) throw InvalidSimplicialComplex("unknown vertex '" + name + "'");
  return it->second;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int n) const {
  static const std::vector<Simplex> none;
  if (n < 0 || n > dimension()) return none;
  return simplices_[static_cast<std::size_t>(n)];
}

bool SimplicialComplex::contains(const Simplex& s) const {
  if (s.empty() || s.size() > simplices_.size()) return false;
  return lookup_[s.size() - 1].count(s) > 0;
}

std::size_t SimplicialComplex::index_of(const Simplex& s) const {
  if (!contains(s)) throw InvalidSimplicialComplex("simplex not in complex");
  return lookup_[s.size() - 1].at(s);
}

std::vector<Simplex> SimplicialComplex::facets() const {
  std::vector<Simplex> out;
  for (int n = 0; n <= dimension(); ++n) {
    for (const auto& s : simplices(n)) {
      bool maximal = true;
      for (const auto& t : simplices(n + 1)) {
        if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
          maximal = false;
          break;
        }
      }
      if (maximal) out.push_back(s);
    }
  }
  return out;
}

// --------------------------------------------------------------------- maps

OrientedSimplex orient(std::vector<std::size_t> verts) {
  int sign = 1;
  // Insertion sort, counting transpositions.
  for (std::size_t i = 1; i < verts.size(); ++i) {
    for (std::size_t j = i; j > 0 && verts[j - 1] > verts[j]; --j) {
      std::swap(verts[j - 1], verts[j]);
      sign = -sign;
    }
  }
  if (std::adjacent_find(verts.begin(), verts.end()) != verts.end()) return {0, {}};
  return {sign, std::move(verts)};
}

SimplicialMap::SimplicialMap(SimplicialComplex src, SimplicialComplex dst, std::vector<std::size_t> vmap)
    : src_(std::move(src)), dst_(std::move(dst)), vmap_(std::move(vmap)) {
  if (vmap_.size() != src_.num_vertices()) throw InvalidSimplicialMap("vertex map has the wrong length");
  for (auto w : vmap_)
    if (w >= dst_.num_vertices()) throw InvalidSimplicialMap("vertex map leaves the target");
  for (const auto& s : src_.facets()) {
    std::set<std::size_t> image;
    for (auto v : s) image.insert(vmap_[v]);
    Simplex t(image.begin(), image.end());
    if (!dst_.contains(t)) throw InvalidSimplicialMap("image of a simplex is not a simplex");
  }
}

SimplicialMap SimplicialMap::from_names(SimplicialComplex src, SimplicialComplex dst,
                                        const std::map<std::string, std::string>& vmap) {
  std::vector<std::size_t> m(src.num_vertices());
  for (std::size_t v = 0; v < src.num_vertices(); ++v) {
    auto it = vmap.find(src.vertices()[v]);
    if (it == vmap.end()) throw InvalidSimplicialMap("vertex '" + src.vertices()[v] + "' is not mapped");
    m[v] = dst.vertex_index(it->second);
  }
  return SimplicialMap(std::move(src), std::move(dst), std::move(m));
}

SimplicialMap SimplicialMap::identity(const SimplicialComplex& k) {
  std::vector<std::size_t> m(k.num_vertices());
  for (std::size_t v = 0; v < m.size(); ++v) m[v] = v;
  return SimplicialMap(k, k, std::move(m));
}

// ------------------------------------------------------------------- chains

GradedComplex chain_complex(const SimplicialComplex& k, CoeffRing ring, bool augmented) {
  std::map<int, std::size_t> ranks;
  std::map<int, QMatrix> diff;
  for (int n = 0; n <= k.dimension(); ++n) ranks[n] = k.count(n);
  for (int n = 1; n <= k.dimension(); ++n) {
    QMatrix d(k.count(n - 1), k.count(n));
    const auto& cells = k.simplices(n);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      for (std::size_t i = 0; i < cells[j].size(); ++i) {
        Simplex face = cells[j];
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        d(k.index_of(face), j) += (i % 2 == 0) ? 1 : -1;
      }
    }
    diff[n] = std::move(d);
  }
  if (augmented && k.num_vertices() > 0) {
    ranks[-1] = 1;
    QMatrix eps(1, k.count(0));
    for (std::size_t j = 0; j < k.count(0); ++j) eps(0, j) = 1;
    diff[0] = std::move(eps);
  }
  return GradedComplex(ring, std::move(ranks), std::move(diff));
}

GradedComplex chain_complex_rel_vertex(const SimplicialComplex& k, CoeffRing ring, std::size_t vertex) {
  GradedComplex full = chain_complex(k, ring);
  const std::size_t row = k.index_of({vertex});
  std::map<int, std::size_t> ranks = full.ranks();
  ranks[0] -= 1;
  std::map<int, QMatrix> diff;
  for (int n = 2; n <= k.dimension(); ++n) diff[n] = full.diff(n);
  if (k.dimension() >= 1) {
    QMatrix d1 = full.diff(1);
    QMatrix cut(d1.rows() - 1, d1.cols());
    for (std::size_t i = 0, r = 0; i < d1.rows(); ++i) {
      if (i == row) continue;
      for (std::size_t j = 0; j < d1.cols(); ++j) cut(r, j) = d1(i, j);
      ++r;
    }
    diff[1] = std::move(cut);
  }
  return GradedComplex(ring, std::move(ranks), std::move(diff));
}

std::map<int, AbGroup> reduced_homology(const SimplicialComplex& k, CoeffRing ring) {
  std::map<int, AbGroup> out;
  GradedComplex c = chain_complex(k, ring, true);
  for (int n = 0; n <= std::max(k.dimension(), 0); ++n) out[n] = homology_at(c, n);
  return out;
}

ComplexMap chain_map(const SimplicialMap& phi, CoeffRing ring, bool augmented) {
  const SimplicialComplex& X = phi.src();
  const SimplicialComplex& Y = phi.dst();
  std::map<int, QMatrix> mat;
  for (int n = 0; n <= X.dimension(); ++n) {
    QMatrix m(Y.count(n), X.count(n));
    const auto& cells = X.simplices(n);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      std::vector<std::size_t> image;
      for (auto v : cells[j]) image.push_back(phi(v));
      OrientedSimplex o = orient(std::move(image));
      if (o.sign != 0) m(Y.index_of(o.simplex), j) += o.sign;
    }
    mat[n] = std::move(m);
  }
  if (augmented && X.num_vertices() > 0 && Y.num_vertices() > 0) mat[-1] = QMatrix{{1}};
  return ComplexMap(chain_complex(X, ring, augmented), chain_complex(Y, ring, augmented), std::move(mat));
}

// -------------------------------------------------------------- cylinders

std::string bottom_name(const std::string& x) { return "x:" + x; }
std::string target_name(const std::string& y) { return "y:" + y; }

namespace {

// Prisms of every source simplex with bottom vertex i at `offset + i` and
// target vertex j at `target_offset + j`.
std::vector<Simplex> prisms(const SimplicialMap& phi, std::size_t offset, std::size_t target_offset) {
  std::vector<Simplex> out;
  const SimplicialComplex& X = phi.src();
  for (int n = 0; n <= X.dimension(); ++n) {
    for (const auto& s : X.simplices(n)) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::set<std::size_t> p;
        for (std::size_t a = 0; a <= i; ++a) p.insert(offset + s[a]);
        for (std::size_t a = i; a < s.size(); ++a) p.insert(target_offset + phi(s[a]));
        out.emplace_back(p.begin(), p.end());
      }
    }
  }
  return out;
}

std::vector<Simplex> shifted(const std::vector<Simplex>& cells, std::size_t offset) {
  std::vector<Simplex> out;
  for (auto s : cells) {
    for (auto& v : s) v += offset;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

MappingCylinder mapping_cylinder(const SimplicialMap& phi) {
  const SimplicialComplex& X = phi.src();
  const SimplicialComplex& Y = phi.dst();
  const std::size_t nx = X.num_vertices();
  std::vector<std::string> names;
  for (const auto& x : X.vertices()) names.push_back(bottom_name(x));
  for (const auto& y : Y.vertices()) names.push_back(target_name(y));
  std::vector<Simplex> facets = prisms(phi, 0, nx);
  for (const auto& s : shifted(Y.facets(), nx)) facets.push_back(s);
  SimplicialComplex cyl(names, facets);

  std::vector<std::size_t> inc_x(nx), inc_y(Y.num_vertices()), retract(cyl.num_vertices());
  for (std::size_t i = 0; i < nx; ++i) {
    inc_x[i] = i;
    retract[i] = phi(i);
  }
  for (std::size_t j = 0; j < Y.num_vertices(); ++j) {
    inc_y[j] = nx + j;
    retract[nx + j] = j;
  }
  return MappingCylinder{cyl, SimplicialMap(X, cyl, inc_x), SimplicialMap(Y, cyl, inc_y),
                         SimplicialMap(cyl, Y, retract)};
}

SimplicialComplex mapping_cone_space(const SimplicialMap& phi) {
  const SimplicialComplex& X = phi.src();
  const SimplicialComplex& Y = phi.dst();
  const std::size_t nx = X.num_vertices();
  std::vector<std::string> names{kApex};
  for (const auto& x : X.vertices()) names.push_back(bottom_name(x));
  for (const auto& y : Y.vertices()) names.push_back(target_name(y));
  std::vector<Simplex> facets = prisms(phi, 1, 1 + nx);
  for (const auto& s : shifted(Y.facets(), 1 + nx)) facets.push_back(s);
  for (auto s : shifted(X.facets(), 1)) {
    s.insert(s.begin(), 0);
    facets.push_back(std::move(s));
  }
  return SimplicialComplex(names, facets);
}

ConeOperator cone_operator(const SimplicialComplex& k) {
  std::vector<std::string> names{kApex};
  for (const auto& v : k.vertices()) {
    if (v == kApex) throw InvalidSimplicialComplex("vertex name '*' is reserved for the apex");
    names.push_back(v);
  }
  std::vector<Simplex> facets{{0}};
  for (auto s : shifted(k.facets(), 1)) {
    facets.push_back(s);
    s.insert(s.begin(), 0);
    facets.push_back(std::move(s));
  }
  SimplicialComplex cone(names, facets);

  std::vector<std::size_t> inc(k.num_vertices());
  for (std::size_t v = 0; v < inc.size(); ++v) inc[v] = v + 1;
  const CoeffRing Z = CoeffRing::integers();
  ComplexMap include = chain_map(SimplicialMap(k, cone, inc), Z, true);
  ComplexMap zero = ComplexMap::zero(include.src(), include.dst());

  std::map<int, QMatrix> h;
  if (k.num_vertices() > 0) {
    QMatrix apex(cone.count(0), 1);
    apex(cone.index_of({0}), 0) = 1;
    h[-1] = std::move(apex);
  }
  for (int n = 0; n <= k.dimension(); ++n) {
    QMatrix m(cone.count(n + 1), k.count(n));
    const auto& cells = k.simplices(n);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      Simplex joined{0};
      for (auto v : cells[j]) joined.push_back(v + 1);
      m(cone.index_of(joined), j) = 1;
    }
    h[n] = std::move(m);
  }
  return ConeOperator{cone, Homotopy{include, zero, h}};
}

bool ConeComparison::iso() const {
  if (!anticommutes || !quasi_iso) return false;
  return std::all_of(degrees.begin(), degrees.end(), [](const ConeComparisonDegree& d) { return d.isomorphic; });
}

ConeComparison compare_cones(const SimplicialMap& phi, CoeffRing ring) {
  const SimplicialComplex& X = phi.src();
  const SimplicialComplex& Y = phi.dst();
  const std::size_t nx = X.num_vertices();
  ComplexMap f = chain_map(phi, ring);
  GradedComplex algebraic = cone_of_map(f);

  ConeComparison out;
  out.cone_space = mapping_cone_space(phi);
  const SimplicialComplex& K = out.cone_space;
  GradedComplex space = chain_complex_rel_vertex(K, ring, 0);

  // Cone(X) is the cone space of the identity; its top copy of X maps by f.
  SimplicialComplex cone_x = mapping_cone_space(SimplicialMap::identity(X));
  std::vector<std::size_t> jv(cone_x.num_vertices());
  jv[0] = 0;
  for (std::size_t i = 0; i < nx; ++i) {
    jv[1 + i] = 1 + i;
    jv[1 + nx + i] = 1 + nx + phi(i);
  }
  ComplexMap j = chain_map(SimplicialMap(cone_x, K, jv), ring);
  std::vector<std::size_t> iv(Y.num_vertices());
  for (std::size_t y = 0; y < iv.size(); ++y) iv[y] = 1 + nx + y;
  ComplexMap i = chain_map(SimplicialMap(Y, K, iv), ring);

  const std::size_t apex_row = K.index_of({0});
  for (int n = algebraic.lo(); n <= algebraic.hi(); ++n) {
    // h(s) = [apex, s'] + sum_i (-1)^i [v0'...vi', vi''...v(n-1)''] in Cone(X).
    QMatrix h(cone_x.count(n), X.count(n - 1));
    const auto& cells = X.simplices(n - 1);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const Simplex& s = cells[c];
      Simplex apex_join{0};
      for (auto v : s) apex_join.push_back(1 + v);
      h(cone_x.index_of(apex_join), c) += 1;
      for (std::size_t a = 0; a < s.size(); ++a) {
        Simplex prism;
        for (std::size_t b = 0; b <= a; ++b) prism.push_back(1 + s[b]);
        for (std::size_t b = a; b < s.size(); ++b) prism.push_back(1 + nx + s[b]);
        h(cone_x.index_of(prism), c) += (a % 2 == 0) ? 1 : -1;
      }
    }
    QMatrix l = hstack(j.at(n) * h, -i.at(n));
    if (n == 0) {
      QMatrix cut(l.rows() - 1, l.cols());
      for (std::size_t r = 0, t = 0; r < l.rows(); ++r) {
        if (r == apex_row) continue;
        for (std::size_t col = 0; col < l.cols(); ++col) cut(t, col) = l(r, col);
        ++t;
      }
      l = std::move(cut);
    }
    out.l[n] = std::move(l);
  }

  auto l_at = [&](int n) {
    auto it = out.l.find(n);
    return it != out.l.end() ? it->second : QMatrix(space.rank(n), algebraic.rank(n));
  };
  out.anticommutes = true;
  for (int n = algebraic.lo(); n <= algebraic.hi() + 1; ++n) {
    QMatrix sum = space.diff(n) * l_at(n) + l_at(n - 1) * algebraic.diff(n);
    if (!sum.is_zero()) out.anticommutes = false;
  }
  std::map<int, QMatrix> twisted;
  for (const auto& [n, m] : out.l) twisted[n] = (n % 2 == 0) ? m : -m;
  ComplexMap twisted_map(algebraic, space, twisted);
  out.quasi_iso = twisted_map.is_chain_map() && quasi_iso(twisted_map);

  const int top = std::max(algebraic.hi(), space.hi());
  for (int n = 0; n <= top; ++n) {
    ConeComparisonDegree d;
    d.degree = n;
    d.algebraic = homology_at(algebraic, n);
    d.space = homology_at(space, n);
    d.isomorphic = isomorphic(d.algebraic, d.space);
    out.degrees.push_back(std::move(d));
  }
  return out;
}

// -------------------------------------------------------------------- nerve

SimplicialComplex nerve(const CoverData& cover) {
  std::set<Simplex> declared;
  for (const auto& t : cover.intersections) {
    Simplex s = t;
    std::sort(s.begin(), s.end());
    if (s.size() < 2) throw InconsistentIntersections("intersections need at least two sets");
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw InconsistentIntersections("intersection repeats a set");
    }
    if (s.back() >= cover.sets.size()) throw InconsistentIntersections("intersection names an unknown set");
    declared.insert(std::move(s));
  }
  for (const auto& s : declared) {
    if (s.size() < 3) continue;
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      if (!declared.count(face)) {
        throw InconsistentIntersections("a nonempty intersection has an undeclared sub-intersection");
      }
    }
  }
  std::vector<Simplex> facets(declared.begin(), declared.end());
  return SimplicialComplex(cover.sets, facets);
}

}  // namespace relcone
