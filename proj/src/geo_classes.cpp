#include "relcone/geo_classes.hpp"

#include <numeric>

#include "relcone/snf.hpp"

namespace relcone {

std::string kind_name(CocycleKind kind) {
  switch (kind) {
    case CocycleKind::Function:
      return "function";
    case CocycleKind::LineBundle:
      return "line_bundle";
    case CocycleKind::Gerbe:
      return "gerbe";
  }
  return "";
}

CocycleKind parse_kind(const std::string& name) {
  if (name == "function") return CocycleKind::Function;
  if (name == "line_bundle") return CocycleKind::LineBundle;
  if (name == "gerbe") return CocycleKind::Gerbe;
  throw ParseError("unknown cocycle kind '" + name + "'");
}

int kind_degree(CocycleKind kind) { return kind == CocycleKind::Gerbe ? 2 : 1; }

CoeffRing kind_ring(CocycleKind kind) {
  return kind == CocycleKind::Function ? CoeffRing::integers() : CoeffRing::angles();
}

RelCocycle::RelCocycle(CocycleKind k, CoverMap m, RelCechCochain d) : kind(k), map(std::move(m)), data(std::move(d)) {
  data.check(map);
  if (data.degree() != kind_degree(kind)) {
    throw DegreeMismatch(kind_name(kind) + " cocycles have relative degree " + std::to_string(kind_degree(kind)));
  }
  if (data.ring() != kind_ring(kind)) {
    throw RingMismatch(kind_name(kind) + " cocycles take values in " + kind_ring(kind).name());
  }
}

RelCocycle RelCocycle::zero(CocycleKind kind, const CoverMap& map) {
  return RelCocycle(kind, map, RelCechCochain::zero(map, kind_degree(kind), kind_ring(kind)));
}

namespace {

template <class T>
T typed(const RelCocycle& c, CocycleKind expected) {
  if (c.kind != expected) throw ParseError("expected a " + kind_name(expected) + " cocycle");
  return T{c.map, c.data.s, c.data.t};
}

}  // namespace

RelFunctionCocycle RelFunctionCocycle::from(const RelCocycle& c) {
  return typed<RelFunctionCocycle>(c, CocycleKind::Function);
}
RelLineBundleCocycle RelLineBundleCocycle::from(const RelCocycle& c) {
  return typed<RelLineBundleCocycle>(c, CocycleKind::LineBundle);
}
RelGerbeCocycle RelGerbeCocycle::from(const RelCocycle& c) { return typed<RelGerbeCocycle>(c, CocycleKind::Gerbe); }

// --------------------------------------------------------- validation

ValidationReport validate(const RelCocycle& c) {
  RelCechCochain d = rel_diff(c.map, c.data);
  ValidationReport report;
  auto collect = [&](const CechCochain& part, const std::string& component) {
    const SimplicialComplex& nerve = part.cover().nerve();
    for (std::size_t i = 0; i < part.values().size(); ++i) {
      if (part.values()[i] == 0) continue;
      Defect defect{component, {}, part.values()[i]};
      for (auto v : nerve.simplices(part.degree())[i]) defect.simplex.push_back(nerve.vertices()[v]);
      report.defects.push_back(std::move(defect));
    }
  };
  collect(d.s, "src");
  collect(d.t, "dst");
  report.valid = report.defects.empty();
  return report;
}

RelCocycle group_op(const RelCocycle& a, const RelCocycle& b) {
  if (a.kind != b.kind) throw CoverMismatch("cocycles of different kinds");
  if (a.map.src() != b.map.src() || a.map.dst() != b.map.dst() || a.map.r() != b.map.r()) {
    throw CoverMismatch("cocycles live on different cover maps");
  }
  return RelCocycle(a.kind, a.map, a.data + b.data);
}

RelCocycle inverse(const RelCocycle& c) { return RelCocycle(c.kind, c.map, -c.data); }

// ------------------------------------------------------ classification

bool ClassReport::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Integer& x) { return x == 0; });
}

namespace {

ClassReport make_report(const RelativeCohomology& h, int q, const QVector& coords) {
  ClassReport r;
  r.degree = q;
  r.basis = "H^" + std::to_string(q) + "(Phi,Z)";
  r.group = h.group(q);
  r.orders = h.at(q).orders();
  for (const auto& x : coords) r.coords.push_back(x.get_num());
  return r;
}

ClassReport classify_cochain(const RelativeCohomology& h, const RelCechCochain& u) {
  if (u.ring().kind() == RingKind::AngleQ) {
    BocksteinResult b = bockstein(h, u);
    return make_report(h, u.degree() + 1, b.class_coords);
  }
  return make_report(h, u.degree(), h.class_of(u));
}

// Solve rel_diff(x) = u for x of degree n - 1 in the ring of u.
std::optional<RelCechCochain> solve_coboundary(const RelativeCohomology& h, const RelCechCochain& u) {
  const CoverMap& m = h.cover_map();
  const int n = u.degree();
  const ZMatrix A = to_integer(h.cone().diff(1 - n));
  const QVector c = u.flatten();
  if (A.cols() == 0) {
    if (u.s.is_zero() && u.t.is_zero()) return RelCechCochain::zero(m, n - 1, u.ring());
    return std::nullopt;
  }
  if (u.ring().kind() != RingKind::AngleQ) {
    auto x = solve_integer(A, to_integer(c));
    if (!x) return std::nullopt;
    return RelCechCochain::split(m, n - 1, u.ring(), to_rational(*x));
  }
  // A x = c modulo Z^k: in Smith coordinates D y = U^-1 c + z with z integral.
  SNFResult s = snf(A);
  const QVector w = to_rational(s.U_inv) * c;
  QVector y(A.cols(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < s.rank) {
      y[i] = w[i] / Rational(s.D(i, i));
    } else if (w[i].get_den() != 1) {
      return std::nullopt;
    }
  }
  RelCechCochain x = RelCechCochain::split(m, n - 1, u.ring(), to_rational(s.V_inv) * y);
  if (!(rel_diff(m, x) == u)) throw std::logic_error("angle coboundary solve produced a wrong witness");
  return x;
}

RelCechCochain trivialize_cochain(const RelativeCohomology& h, const RelCechCochain& u) {
  if (!is_rel_cocycle(h.cover_map(), u)) throw NotACocycle("relative cochain is not closed");
  if (auto x = solve_coboundary(h, u)) return *x;
  ClassReport cls = classify_cochain(h, u);
  if (!cls.is_zero()) throw NontrivialClass(std::move(cls));
  throw NotTrivializable("the angle class lifts to a real class that is not a coboundary");
}

RelCechCochain absolute_cochain(const CoverMap& m, const CechCochain& t) {
  return {CechCochain::zero(m.src(), t.degree() - 1, t.ring()), t};
}

void require_valid(const RelCocycle& c) {
  if (!validate(c).valid) throw NotACocycle(kind_name(c.kind) + " cocycle conditions fail");
}

}  // namespace

ClassReport classify(const RelativeCohomology& h, const RelCocycle& c) {
  require_valid(c);
  return classify_cochain(h, c.data);
}

ClassReport classify(const RelCocycle& c) { return classify(RelativeCohomology(c.map), c); }

ClassReport classify_absolute(const CechCochain& t) {
  CoverMap m = CoverMap::absolute(t.cover());
  return classify_cochain(RelativeCohomology(m), absolute_cochain(m, t));
}

RelCechCochain trivialize(const RelativeCohomology& h, const RelCocycle& c) {
  require_valid(c);
  return trivialize_cochain(h, c.data);
}

RelCechCochain trivialize(const RelCocycle& c) { return trivialize(RelativeCohomology(c.map), c); }

CechCochain trivialize_absolute(const CechCochain& t) {
  CoverMap m = CoverMap::absolute(t.cover());
  return trivialize_cochain(RelativeCohomology(m), absolute_cochain(m, t)).t;
}

Equivalence is_equivalent(const RelCocycle& a, const RelCocycle& b) {
  RelCocycle diff = group_op(a, inverse(b));
  try {
    return {true, trivialize(diff)};
  } catch (const NontrivialClass&) {
    return {false, std::nullopt};
  } catch (const NotTrivializable&) {
    return {false, std::nullopt};
  }
}

RelCocycle representative(CocycleKind kind, const CoverMap& m, const std::vector<Integer>& coords) {
  RelativeCohomology h(m);
  QVector q(coords.begin(), coords.end());
  if (kind == CocycleKind::Function) return RelCocycle(kind, m, h.representative(1, q));

  const int n = kind_degree(kind);
  const Subquotient& sq = h.at(n + 1);
  Integer d = 1;
  for (std::size_t g = 0; g < coords.size() && g < sq.orders().size(); ++g) {
    if (coords[g] == 0) continue;
    if (sq.orders()[g] == 0) throw NotTrivializable("free classes are not reached by angle cocycles");
    d = lcm(d, sq.orders()[g]);
  }
  RelCechCochain z = h.representative(n + 1, q);
  const ZMatrix A = to_integer(h.cone().diff(-n));
  QVector dz = z.flatten();
  for (auto& x : dz) x *= d;
  auto y = solve_integer(A, to_integer(dz));
  if (!y) throw std::logic_error("torsion class multiple is not a coboundary");
  QVector u = to_rational(*y);
  for (auto& x : u) x /= d;
  return RelCocycle(kind, m, RelCechCochain::split(m, n, CoeffRing::angles(), u));
}

// ---------------------------------------------------------- integrality

namespace {

struct SimplicialCones {
  GradedComplex chain;
  GradedComplex cochain;
};

SimplicialCones simplicial_cones(const SimplicialMap& phi) {
  ComplexMap f = chain_map(phi, CoeffRing::integers());
  return {cone_of_map(f), cone_of_cochain_map(dual_map(f))};
}

ConeElement as_cochain(const RelRealCochainPair& p, const SimplicialMap& phi) {
  if (p.beta.size() != phi.src().count(p.degree - 1) || p.alpha.size() != phi.dst().count(p.degree)) {
    throw ShapeMismatch("cochain pair does not match the simplex counts of the map");
  }
  return {p.degree, p.beta, p.alpha};
}

bool closed_in(const GradedComplex& cochain_cone, const ConeElement& e) {
  QVector d = cochain_cone.coboundary(e.degree) * e.flatten();
  return std::all_of(d.begin(), d.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace

bool is_relatively_closed(const SimplicialMap& phi, const RelRealCochainPair& p) {
  return closed_in(simplicial_cones(phi).cochain, as_cochain(p, phi));
}

IntegralityReport is_integral(const RelRealCochainPair& p, const SimplicialMap& phi) {
  SimplicialCones cones = simplicial_cones(phi);
  ConeElement a = as_cochain(p, phi);
  if (!closed_in(cones.cochain, a)) throw NotClosed("the pair is not relatively closed");
  Subquotient h = homology_subquotient(cones.chain, p.degree);
  const std::size_t split = phi.src().count(p.degree - 1);
  IntegralityReport report;
  for (std::size_t g = 0; g < h.ngens(); ++g) {
    ConeElement cycle = ConeElement::split(p.degree, to_rational(h.group().generators[g]), split);
    GeneratorPairing gp;
    gp.generator = g;
    gp.order = h.orders()[g];
    // alpha(eta) - beta(theta), the negative of the cone Kronecker pairing.
    gp.value = -kronecker(a, cycle, CoeffRing::rationals()).value();
    const Rational scaled = gp.order == 0 ? gp.value : gp.value * gp.order;
    gp.integral = scaled.get_den() == 1;
    gp.theta = cycle.theta;
    gp.eta = cycle.eta;
    report.integral = report.integral && gp.integral;
    report.pairings.push_back(std::move(gp));
  }
  return report;
}

IntegralityReport bohr_sommerfeld(const QVector& omega, const SimplicialMap& phi) {
  ComplexMap f = chain_map(phi, CoeffRing::integers());
  if (omega.size() != phi.dst().count(2)) throw ShapeMismatch("omega must be a 2-cochain on the target");
  QVector pulled = f.at(2).transpose() * omega;
  if (!std::all_of(pulled.begin(), pulled.end(), [](const Rational& x) { return x == 0; })) {
    throw NotIsotropic("omega does not pull back to zero");
  }
  return is_integral({2, QVector(phi.src().count(1), 0), omega}, phi);
}

RelRealCochainPair add_coboundary(const RelRealCochainPair& p, const SimplicialMap& phi, const QVector& rho,
                                  const QVector& tau) {
  SimplicialCones cones = simplicial_cones(phi);
  ConeElement lower{p.degree - 1, rho, tau};
  QVector d = cones.cochain.coboundary(p.degree - 1) * lower.flatten();
  ConeElement shift = ConeElement::split(p.degree, d, p.beta.size());
  RelRealCochainPair out = p;
  for (std::size_t i = 0; i < out.beta.size(); ++i) out.beta[i] += shift.theta[i];
  for (std::size_t i = 0; i < out.alpha.size(); ++i) out.alpha[i] += shift.eta[i];
  return out;
}

}  // namespace relcone
