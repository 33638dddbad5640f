#include "relcone/json_io.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <sstream>

namespace relcone::io {

namespace {

// Schema violations surface from nlohmann as type or range errors.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::string degree_key(int n) { return std::to_string(n); }

int parse_degree(const std::string& key) {
  try {
    std::size_t pos = 0;
    int n = std::stoi(key, &pos);
    if (pos != key.size()) throw ParseError("bad degree key '" + key + "'");
    return n;
  } catch (const std::logic_error&) {
    throw ParseError("bad degree key '" + key + "'");
  }
}

std::size_t parse_index(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError("bad index '" + s + "'");
  }
  return std::stoul(s);
}

std::string tuple_key(const Simplex& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out;
}

CechCochain cochain_from_json(const Json& j, const Cover* fallback) {
  if (!j.contains("cover") && !fallback) throw ParseError("missing key 'cover'");
  Cover cover = j.contains("cover") ? cover_from_json(j.at("cover")) : *fallback;
  const int p = member(j, "degree").get<int>();
  const CoeffRing ring = ring_from_json(member(j, "ring"));
  const SimplicialComplex& k = cover.nerve();
  std::vector<Rational> values(k.count(p), 0);
  for (const auto& [key, v] : member(j, "values").items()) {
    std::vector<std::size_t> tuple;
    std::stringstream ss(key);
    for (std::string part; std::getline(ss, part, ',');) tuple.push_back(parse_index(part));
    if (tuple.size() != static_cast<std::size_t>(p + 1)) throw ParseError("key '" + key + "' has the wrong length");
    OrientedSimplex o = orient(tuple);
    if (o.sign == 0) throw ParseError("key '" + key + "' repeats an index");
    if (!k.contains(o.simplex)) throw ParseError("key '" + key + "' is not an intersection of the cover");
    values[k.index_of(o.simplex)] = o.sign * scalar_from_json(v, ring).value();
  }
  return CechCochain(std::move(cover), p, ring, std::move(values));
}

}  // namespace

Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

std::string dump(const Json& j) { return j.dump(); }
std::string dump_pretty(const Json& j) { return j.dump(2) + "\n"; }

const Json& member(const Json& j, const std::string& key) {
  if (!j.is_object()) throw ParseError("expected an object holding '" + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing key '" + key + "'");
  return *it;
}

// ---- scalars

Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json to_json(const Rational& value) {
  Rational x = value;
  x.canonicalize();
  if (x.get_den() == 1) return to_json(Integer(x.get_num()));
  return Json(x.get_str());
}

Json to_json(const Scalar& s) {
  switch (s.ring().kind()) {
    case RingKind::IntMod:
      return Json{{"mod", to_json(s.ring().modulus())}, {"val", to_json(s.value())}};
    case RingKind::AngleQ:
      return Json(s.value().get_str());
    default:
      return to_json(s.value());
  }
}

Integer integer_from_json(const Json& j) {
  Rational r = rational_from_json(j);
  if (r.get_den() != 1) throw ParseError("expected an integer, got " + r.get_str());
  return r.get_num();
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(Integer(std::to_string(j.get<unsigned long long>())))
                                  : Rational(Integer(std::to_string(j.get<long long>())));
  }
  if (j.is_number()) throw ParseError("floating-point value " + j.dump() + " is not exact");
  if (j.is_object() && j.contains("val")) return rational_from_json(j.at("val"));
  if (!j.is_string()) throw ParseError("expected a scalar, got " + j.dump());
  const std::string s = j.get<std::string>();
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) throw ParseError("bad scalar '" + s + "'");
  r.canonicalize();
  return r;
}

Scalar scalar_from_json(const Json& j, const CoeffRing& ring) {
  if (j.is_object()) {
    Integer m = integer_from_json(member(j, "mod"));
    if (ring.kind() != RingKind::IntMod || ring.modulus() != m) {
      throw RingMismatch("value mod " + m.get_str() + " in " + ring.name());
    }
  }
  return Scalar(ring, rational_from_json(j));
}

Json to_json(const CoeffRing& ring) { return Json(ring.name()); }

CoeffRing ring_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("ring must be a string");
  return CoeffRing::parse(j.get<std::string>());
}

// ---- matrices

Json to_json(const ZMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const QVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const ZVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

QMatrix qmatrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  return qmatrix_from_json(j, rows, cols);
}

QMatrix qmatrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  return guarded("matrix", [&] {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    if (j.size() != rows) {
      throw ShapeMismatch("expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    }
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      const Json& row = j.at(i);
      if (!row.is_array() || row.size() != cols) {
        throw ShapeMismatch("row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
      }
      for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(row.at(c));
    }
    return m;
  });
}

ZMatrix zmatrix_from_json(const Json& j) { return to_integer(qmatrix_from_json(j)); }

QVector qvector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of scalars");
  QVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

Json to_json(const SNFResult& r) {
  return Json{{"U", to_json(r.U)},
              {"D", to_json(r.D)},
              {"V", to_json(r.V)},
              {"rank", r.rank},
              {"invariant_factors", to_json(ZVector(r.invariant_factors()))}};
}

// ---- complexes

Json to_json(const GradedComplex& c) {
  Json ranks = Json::object(), diff = Json::object();
  for (const auto& [n, r] : c.ranks()) {
    if (r == 0) continue;
    ranks[degree_key(n)] = r;
    if (c.rank(n - 1) > 0) diff[degree_key(n)] = to_json(c.diff(n));
  }
  Json j{{"ring", to_json(c.ring())}, {"ranks", ranks}, {"diff", diff}};
  if (c.grading() == Grading::Cochain) j["grading"] = "cochain";
  return j;
}

GradedComplex complex_from_json(const Json& j) {
  return guarded("complex", [&] {
    const CoeffRing ring = ring_from_json(member(j, "ring"));
    std::map<int, std::size_t> ranks;
    for (const auto& [key, r] : member(j, "ranks").items()) ranks[parse_degree(key)] = r.get<std::size_t>();
    auto rank = [&](int n) {
      auto it = ranks.find(n);
      return it == ranks.end() ? std::size_t{0} : it->second;
    };
    std::map<int, QMatrix> diff;
    if (j.contains("diff")) {
      for (const auto& [key, m] : j.at("diff").items()) {
        const int n = parse_degree(key);
        diff[n] = qmatrix_from_json(m, rank(n - 1), rank(n));
      }
    }
    Grading g = Grading::Chain;
    if (j.contains("grading")) {
      const std::string s = j.at("grading").get<std::string>();
      if (s == "cochain") {
        g = Grading::Cochain;
      } else if (s != "chain") {
        throw ParseError("grading must be 'chain' or 'cochain'");
      }
    }
    return GradedComplex(ring, std::move(ranks), std::move(diff), g);
  });
}

Json to_json(const ComplexMap& f) {
  Json mat = Json::object();
  for (const auto& [n, m] : f.matrices()) {
    if (m.rows() == 0 || m.cols() == 0) continue;
    mat[degree_key(n)] = to_json(m);
  }
  return Json{{"src", to_json(f.src())}, {"dst", to_json(f.dst())}, {"mat", mat}};
}

ComplexMap map_from_json(const Json& j) {
  return guarded("map", [&] {
    GradedComplex src = complex_from_json(member(j, "src"));
    GradedComplex dst = complex_from_json(member(j, "dst"));
    std::map<int, QMatrix> mat;
    for (const auto& [key, m] : member(j, "mat").items()) {
      const int n = parse_degree(key);
      mat[n] = qmatrix_from_json(m, dst.rank(n), src.rank(n));
    }
    return ComplexMap(std::move(src), std::move(dst), std::move(mat));
  });
}

// ---- homology

Json to_json(const AbGroup& g, bool generators) {
  Json j{{"rank", g.free_rank}};
  if (!g.torsion.empty()) j["torsion"] = to_json(ZVector(g.torsion));
  if (generators) {
    Json gens = Json::array();
    for (const auto& v : g.generators) gens.push_back(to_json(v));
    j["generators"] = gens;
  }
  return j;
}

Json to_json(const std::map<int, AbGroup>& groups, bool generators) {
  Json j = Json::object();
  for (const auto& [n, g] : groups) j[degree_key(n)] = to_json(g, generators);
  return j;
}

Json to_json(const LESReport& r) {
  Json terms = Json::array(), maps = Json::array(), positions = Json::array();
  for (const auto& t : r.terms) terms.push_back({{"label", t.label}, {"degree", t.degree}, {"group", to_json(t.group)}});
  for (std::size_t i = 0; i < r.maps.size(); ++i) {
    maps.push_back({{"label", r.map_labels.at(i)}, {"matrix", to_json(r.maps[i])}});
  }
  for (const auto& p : r.positions) {
    Json pj{{"position", p.index}, {"exact", p.exact}};
    if (!p.exact) pj["defect"] = {{"image_rank", p.image_rank}, {"kernel_rank", p.kernel_rank}};
    positions.push_back(std::move(pj));
  }
  return Json{{"exact", r.exact()}, {"terms", terms}, {"maps", maps}, {"positions", positions}};
}

Json to_json(const KerCokerReport& r) {
  return Json{{"injective", r.injective},
              {"surjective", r.surjective},
              {"specialization_holds", r.specialization_holds},
              {"les", to_json(r.les)}};
}

Json to_json(const ConeComparison& c) {
  Json degrees = Json::object();
  for (const auto& d : c.degrees) {
    degrees[degree_key(d.degree)] = {
        {"algebraic", to_json(d.algebraic)}, {"space", to_json(d.space)}, {"isomorphic", d.isomorphic}};
  }
  return Json{{"iso", c.iso()}, {"anticommutes", c.anticommutes}, {"quasi_iso", c.quasi_iso}, {"degrees", degrees}};
}

Json to_json(const DualityReport& r) {
  Json degrees = Json::object();
  for (const auto& d : r.degrees) degrees[degree_key(d.degree)] = d.nonzero;
  return Json{{"ok", r.ok}, {"residual_nonzeros", degrees}};
}

// ---- simplicial

Json to_json(const SimplicialComplex& k) {
  Json facets = Json::array();
  for (const auto& f : k.facets()) {
    Json names = Json::array();
    for (auto v : f) names.push_back(k.vertices()[v]);
    facets.push_back(std::move(names));
  }
  return Json{{"vertices", k.vertices()}, {"facets", facets}};
}

SimplicialComplex simplicial_from_json(const Json& j) {
  return guarded("simplicial complex", [&] {
    auto vertices = member(j, "vertices").get<std::vector<std::string>>();
    auto facets = member(j, "facets").get<std::vector<std::vector<std::string>>>();
    return SimplicialComplex(std::move(vertices), facets);
  });
}

Json to_json(const SimplicialMap& phi) {
  Json vmap = Json::object();
  for (std::size_t v = 0; v < phi.src().num_vertices(); ++v) {
    vmap[phi.src().vertices()[v]] = phi.dst().vertices()[phi(v)];
  }
  return Json{{"src", to_json(phi.src())}, {"dst", to_json(phi.dst())}, {"vmap", vmap}};
}

SimplicialMap simplicial_map_from_json(const Json& j) {
  return guarded("simplicial map", [&] {
    return SimplicialMap::from_names(simplicial_from_json(member(j, "src")), simplicial_from_json(member(j, "dst")),
                                     member(j, "vmap").get<std::map<std::string, std::string>>());
  });
}

// ---- covers

Json to_json(const Cover& c) {
  CoverData d = c.data();
  return Json{{"sets", d.sets}, {"intersections", d.intersections}};
}

Cover cover_from_json(const Json& j) {
  return guarded("cover", [&] {
    CoverData d;
    d.sets = member(j, "sets").get<std::vector<std::string>>();
    if (j.contains("intersections")) {
      d.intersections = j.at("intersections").get<std::vector<std::vector<std::size_t>>>();
    }
    return Cover(d);
  });
}

Json to_json(const CoverMap& m) {
  Json r = Json::object();
  for (std::size_t i = 0; i < m.src().size(); ++i) r[m.src().sets()[i]] = m.dst().sets()[m.r()[i]];
  return Json{{"src", to_json(m.src())}, {"dst", to_json(m.dst())}, {"r", r}};
}

CoverMap cover_map_from_json(const Json& j) {
  return guarded("cover map", [&] {
    Cover src = cover_from_json(member(j, "src"));
    Cover dst = cover_from_json(member(j, "dst"));
    auto names = member(j, "r").get<std::map<std::string, std::string>>();
    std::vector<std::size_t> r;
    for (const auto& set : src.sets()) {
      auto it = names.find(set);
      if (it == names.end()) throw InvalidCoverMap("set '" + set + "' has no image");
      r.push_back(dst.nerve().vertex_index(it->second));
    }
    if (names.size() != src.size()) throw InvalidCoverMap("r names sets outside the source cover");
    return CoverMap(std::move(src), std::move(dst), std::move(r));
  });
}

Json to_json(const CechCochain& c) {
  Json values = Json::object();
  const auto& simplices = c.cover().nerve().simplices(c.degree());
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    values[tuple_key(simplices[i])] = to_json(Scalar(c.ring(), c.values()[i]));
  }
  return Json{{"cover", to_json(c.cover())}, {"degree", c.degree()}, {"ring", to_json(c.ring())}, {"values", values}};
}

CechCochain cochain_from_json(const Json& j) {
  return guarded("cochain", [&] { return cochain_from_json(j, nullptr); });
}

Json to_json(const RelCechCochain& c) { return Json{{"s", to_json(c.s)}, {"t", to_json(c.t)}}; }

RelCechCochain rel_cochain_from_json(const Json& j) {
  return guarded("relative cochain", [&] {
    return RelCechCochain{cochain_from_json(member(j, "s"), nullptr), cochain_from_json(member(j, "t"), nullptr)};
  });
}

Json to_json(const RelCocycle& c) {
  return Json{{"kind", kind_name(c.kind)}, {"map", to_json(c.map)}, {"s", to_json(c.data.s)}, {"t", to_json(c.data.t)}};
}

RelCocycle cocycle_from_json(const Json& j) {
  return guarded("cocycle", [&] {
    const CocycleKind kind = parse_kind(member(j, "kind").get<std::string>());
    CoverMap m = cover_map_from_json(member(j, "map"));
    RelCechCochain data{cochain_from_json(member(j, "s"), &m.src()), cochain_from_json(member(j, "t"), &m.dst())};
    return RelCocycle(kind, std::move(m), std::move(data));
  });
}

Json to_json(const ClassReport& r) {
  return Json{{"class", to_json(ZVector(r.coords))}, {"basis", r.basis}, {"torsion_orders", to_json(ZVector(r.orders))}};
}

Json to_json(const ValidationReport& r) {
  Json defects = Json::array();
  for (const auto& d : r.defects) {
    defects.push_back({{"component", d.component}, {"simplex", d.simplex}, {"value", to_json(d.value)}});
  }
  return Json{{"valid", r.valid}, {"defects", defects}};
}

// ---- real pairs

Json to_json(const RelRealCochainPair& p, const SimplicialMap& phi) {
  return Json{{"map", to_json(phi)}, {"degree", p.degree}, {"beta", to_json(p.beta)}, {"alpha", to_json(p.alpha)}};
}

RelRealCochainPair real_pair_from_json(const Json& j) {
  return guarded("cochain pair", [&] {
    RelRealCochainPair p;
    p.degree = member(j, "degree").get<int>();
    p.beta = qvector_from_json(member(j, "beta"));
    p.alpha = qvector_from_json(member(j, "alpha"));
    return p;
  });
}

Json to_json(const IntegralityReport& r) {
  Json pairings = Json::array();
  for (const auto& g : r.pairings) {
    pairings.push_back({{"generator", g.generator},
                        {"order", to_json(g.order)},
                        {"value", to_json(g.value)},
                        {"integral", g.integral},
                        {"cycle", {{"theta", to_json(g.theta)}, {"eta", to_json(g.eta)}}}});
  }
  return Json{{"integral", r.integral}, {"pairings", pairings}};
}

}  // namespace relcone::io
