// One line per acceptance criterion: "PASS n: ..." or "FAIL n: ...".
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "relcone/cli.hpp"
#include "relcone/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace relcone;

namespace {

const CoeffRing Z = CoeffRing::integers();
const CoeffRing U1 = CoeffRing::angles();

struct Failure {
  std::string why;
};

void require(bool ok, const std::string& why) {
  if (!ok) throw Failure{why};
}

std::string show(const AbGroup& g) {
  std::string s = "Z^" + std::to_string(g.free_rank);
  for (const auto& t : g.torsion) s += " + Z/" + t.get_str();
  return s;
}

bool is(const AbGroup& g, std::size_t rank, std::vector<Integer> torsion = {}) {
  return g.free_rank == rank && g.torsion == torsion;
}

AbGroup at(const std::map<int, AbGroup>& m, int n) {
  auto it = m.find(n);
  return it == m.end() ? AbGroup{} : it->second;
}

QVector random_vector(gen::Rng& rng, std::size_t n, int bound, int den = 1) {
  QVector v(n);
  for (auto& x : v) {
    x = Rational(rng.uniform(-bound, bound), den);
    x.canonicalize();
  }
  return v;
}

// ---- 1

void cone_theorem() {
  for (int d : {0, 1, 2, 3, 6}) {
    const SimplicialMap phi = fixtures::degree_map(d);
    const auto algebraic = homology_all(cone_of_map(chain_map(phi, Z)));
    const auto space = reduced_homology(mapping_cone_space(phi), Z);
    for (int n = 0; n <= 3; ++n) {
      require(isomorphic(at(algebraic, n), at(space, n)),
              "d=" + std::to_string(d) + " degree " + std::to_string(n) + ": " + show(at(algebraic, n)) + " vs " +
                  show(at(space, n)));
    }
    const AbGroup h1 = at(algebraic, 1), h2 = at(algebraic, 2);
    if (d == 0) {
      require(is(h1, 1) && is(h2, 1), "d=0 expects (Z, Z)");
    } else if (d == 1) {
      require(is(h1, 0) && is(h2, 0), "d=1 expects zero");
    } else {
      require(is(h1, 0, {d}) && is(h2, 0), "d=" + std::to_string(d) + " expects Z/d");
    }
  }
}

// ---- 2

void pair_suite() {
  const SimplicialMap phi = fixtures::disk_inclusion();
  const auto algebraic = homology_all(cone_of_map(chain_map(phi, Z)));
  const auto space = reduced_homology(mapping_cone_space(phi), Z);
  require(is(at(algebraic, 2), 1) && is(at(algebraic, 1), 0), "algebraic cone: " + show(at(algebraic, 2)));
  require(is(at(space, 2), 1) && is(at(space, 1), 0), "cone space: " + show(at(space, 2)));
  for (const CoverMap& m : {CoverMap::from_simplicial(phi), fixtures::disk_cover_map()}) {
    const RelativeCohomology h(m);
    require(is(h.group(2), 1) && is(h.group(1), 0), "relative Cech: " + show(h.group(2)));
  }
}

// ---- 3

void les_exactness() {
  gen::Rng rng(1001);
  for (int trial = 0; trial < 50; ++trial) {
    const GradedComplex x = gen::random_complex(rng, 0, 3, 6, 3);
    const GradedComplex y = gen::random_complex(rng, 0, 3, 6, 3);
    const ComplexMap f = gen::random_chain_map(rng, x, y, 3);
    const LESReport r = les_of_cone(f);
    for (const auto& p : r.positions) {
      require(p.exact, "trial " + std::to_string(trial) + " position " + std::to_string(p.index));
    }
  }
}

// ---- 4

void ker_coker() {
  gen::Rng rng(1002);
  auto group = [](const LESReport& r, const std::string& label) {
    for (const auto& t : r.terms)
      if (t.label == label) return t.group;
    return AbGroup{};
  };
  for (int trial = 0; trial < 50; ++trial) {
    const bool inject = trial < 25;
    const GradedComplex c = gen::random_complex(rng, 0, 3, 4, 3);
    const ComplexMap f = inject ? gen::random_injection(rng, c, 3) : gen::random_surjection(rng, c, 3);
    const KerCokerReport r = ker_coker_les(f);
    require(inject ? r.injective : r.surjective, "constructed map lacks the expected property");
    require(r.les.exact(), "sequence not exact");
    const GradedComplex cone = cone_of_map(f);
    for (int n = cone.lo(); n <= cone.hi(); ++n) {
      const AbGroup hf = homology_at(cone, n);
      const AbGroup other = inject ? group(r.les, "H_" + std::to_string(n) + "(coker f)")
                                   : group(r.les, "H_" + std::to_string(n - 1) + "(ker f)");
      require(isomorphic(hf, other), "trial " + std::to_string(trial) + " degree " + std::to_string(n) + ": " +
                                         show(hf) + " vs " + show(other));
    }
  }
}

// ---- 5

void snf_contract() {
  gen::Rng rng(1003);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = rng.uniform(1, 8), cols = rng.uniform(1, 8);
    const ZMatrix A = to_integer(gen::random_matrix(rng, rows, cols, 9));
    const SNFResult r = snf(A);
    require(r.U * r.D * r.V == A, "A != U D V");
    require(abs(determinant(r.U)) == 1 && abs(determinant(r.V)) == 1, "U or V not unimodular");
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) require(i == j || r.D(i, j) == 0, "D not diagonal");
    const auto inv = r.invariant_factors();
    for (std::size_t i = 0; i + 1 < inv.size(); ++i) require(inv[i + 1] % inv[i] == 0, "divisibility chain");
    require(inv == oracle::invariant_factors(A), "invariant factors differ from determinantal divisors");
    if (rows == 2 && cols == 2) {
      Integer g = 0;
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), A(i, j).get_mpz_t());
      const Integer det = abs(A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0));
      std::vector<Integer> expected;
      if (g != 0) expected.push_back(g);
      if (det != 0) expected.push_back(det / g);
      require(inv == expected, "2x2 gcd/determinant oracle");
    }
  }
}

// ---- 6

void duality() {
  gen::Rng rng(1004);
  for (int trial = 0; trial < 100; ++trial) {
    const GradedComplex x = gen::random_complex(rng, 0, 3, 4, 3);
    const GradedComplex y = gen::random_complex(rng, 0, 3, 4, 3);
    const ComplexMap f = gen::random_chain_map(rng, x, y, 3);
    const GradedComplex chain = cone_of_map(f);
    const GradedComplex cochain = cone_of_cochain_map(dual_map(f));
    if (trial < 50) require(verify_cone_duality(f).ok, "duality on random map " + std::to_string(trial));
    for (int n = 0; n <= 4; ++n) {
      const std::size_t split = x.rank(n - 1);
      const ZMatrix cocycles = kernel_basis(to_integer(cochain.coboundary(n)));
      for (std::size_t j = 0; j < cocycles.cols(); ++j) {
        ConeElement a = ConeElement::split(n, to_rational(cocycles.column(j)), split);
        ConeElement b = ConeElement::split(n, chain.diff(n + 1) * random_vector(rng, chain.rank(n + 1), 3), split);
        require(kronecker(a, b, Z).is_zero(), "cocycle does not kill a boundary");
      }
      const ZMatrix cycles = kernel_basis(to_integer(chain.diff(n)));
      for (std::size_t j = 0; j < cycles.cols(); ++j) {
        ConeElement b = ConeElement::split(n, to_rational(cycles.column(j)), split);
        ConeElement a = ConeElement::split(
            n, cochain.coboundary(n - 1) * random_vector(rng, cochain.cochain_rank(n - 1), 3), split);
        require(kronecker(a, b, Z).is_zero(), "coboundary does not kill a cycle");
      }
    }
  }
  std::vector<SimplicialMap> maps;
  for (int d = 0; d <= 6; ++d) maps.push_back(fixtures::degree_map(d));
  maps.push_back(fixtures::disk_inclusion());
  maps.push_back(fixtures::suspended_degree_two());
  for (const auto& phi : maps) require(verify_cone_duality(chain_map(phi, Z)).ok, "duality on a fixture");
}

// ---- 7

void homotopy_invariance() {
  gen::Rng rng(1005);
  for (int trial = 0; trial < 25; ++trial) {
    const GradedComplex x = gen::random_complex(rng, 0, 3, 4, 3);
    const GradedComplex y = gen::random_complex(rng, 0, 3, 4, 3);
    const ComplexMap g = gen::random_chain_map(rng, x, y, 2);
    const auto hmat = gen::random_homotopy(rng, x, y, 2);
    const Homotopy h{homotopic_map(g, hmat), g, hmat};
    require(h.is_valid(), "generated homotopy invalid");
    const ComplexMap F = homotopy_cone_iso(h);
    const ComplexMap G = homotopy_cone_iso_inverse(h);
    require(F.is_chain_map() && G.is_chain_map(), "F is not a chain map");
    const ComplexMap FG = compose(F, G), GF = compose(G, F);
    for (int n = F.src().lo(); n <= F.src().hi(); ++n) {
      const QMatrix id = QMatrix::identity(F.src().rank(n));
      require(FG.at(n) == id && GF.at(n) == id, "F is not invertible in degree " + std::to_string(n));
    }
    const auto hf = homology_all(cone_of_map(h.f)), hg = homology_all(cone_of_map(h.g));
    for (int n = -1; n <= 5; ++n) require(isomorphic(at(hf, n), at(hg, n)), "homology differs");
  }
}

// ---- 8

std::vector<Integer> reduce(std::vector<Integer> v, const std::vector<Integer>& orders) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (orders[i] == 0) continue;
    mpz_fdiv_r(v[i].get_mpz_t(), v[i].get_mpz_t(), orders[i].get_mpz_t());
  }
  return v;
}

void gerbe_torsion() {
  const RelCocycle half = fixtures::half_angle_gerbe();
  const RelativeCohomology h(half.map);
  require(is(h.group(3), 0, {2}), "H^3(Phi,Z) = " + show(h.group(3)));
  require(validate(half).valid, "half-angle cocycle invalid");
  const ClassReport cls = classify(h, half);
  require(cls.coords == std::vector<Integer>{1} && cls.orders == std::vector<Integer>{2}, "not the generator");

  const RelCocycle twice = group_op(half, half);
  require(twice.data.s == scale(2, half.data.s) && twice.data.t.is_zero(), "square is not (2s, 0)");
  const RelCechCochain w = trivialize(h, twice);
  require(rel_diff(half.map, w) == twice.data, "witness fails d(rho, tau) = (2s, 0)");

  gen::Rng rng(1008);
  const std::size_t rho_size = half.map.src().nerve().count(0), tau_size = half.map.dst().nerve().count(1);
  auto shifted = [&](const RelCocycle& c) {
    const RelCechCochain x =
        RelCechCochain::split(half.map, 1, U1, random_vector(rng, rho_size + tau_size, 6, 12));
    return RelCocycle(c.kind, c.map, c.data + rel_diff(c.map, x));
  };
  for (int trial = 0; trial < 50; ++trial) {
    RelCocycle a = RelCocycle::zero(CocycleKind::Gerbe, half.map), b = a;
    for (int i = rng.uniform(0, 3); i > 0; --i) a = group_op(a, half);
    for (int i = rng.uniform(0, 3); i > 0; --i) b = group_op(b, half);
    a = shifted(a);
    b = shifted(b);
    const ClassReport ca = classify(h, a), cb = classify(h, b), cab = classify(h, group_op(a, b));
    std::vector<Integer> sum(ca.coords.size());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ca.coords[i] + cb.coords[i];
    require(cab.coords == reduce(sum, cab.orders), "classify is not additive on trial " + std::to_string(trial));
  }
}

// ---- 9

void integrality() {
  const SimplicialMap phi = fixtures::disk_inclusion();
  const IntegralityReport one = is_integral(fixtures::disk_area(1), phi);
  require(one.integral, "area 1 should be integral");
  const IntegralityReport half = is_integral(fixtures::disk_area(Rational(1, 2)), phi);
  require(!half.integral, "area 1/2 should not be integral");
  require(half.pairings.size() == 1 && half.pairings[0].value == Rational(1, 2), "pairing is not exactly 1/2");
  require(bohr_sommerfeld(fixtures::disk_area(1).alpha, phi).integral, "Bohr-Sommerfeld at area 1");
  require(!bohr_sommerfeld(fixtures::disk_area(Rational(1, 2)).alpha, phi).integral, "Bohr-Sommerfeld at 1/2");
  gen::Rng rng(1009);
  for (const Rational total : {Rational(1), Rational(1, 2)}) {
    const RelRealCochainPair p = fixtures::disk_area(total);
    const bool expected = total == 1;
    for (int trial = 0; trial < 25; ++trial) {
      const RelRealCochainPair q = add_coboundary(p, phi, random_vector(rng, phi.src().count(0), 5, 7),
                                                  random_vector(rng, phi.dst().count(1), 5, 7));
      const IntegralityReport r = is_integral(q, phi);
      require(r.integral == expected && r.pairings[0].value == total, "verdict moved under a coboundary shift");
    }
  }
}

// ---- 10

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism() {
  const std::filesystem::path golden = std::filesystem::path(RELCONE_SOURCE_DIR) / "tests" / "golden";
  const std::string expected = slurp(golden / "sweep.json");
  require(!expected.empty(), "golden sweep missing");
  for (const char* threads : {"1", "3", "1"}) {
    ::setenv("RELCONE_THREADS", threads, 1);
    std::ostringstream out, err;
    require(cli::run({"fixtures", "sweep", "--pretty"}, out, err) == 0, "sweep failed: " + err.str());
    require(out.str() == expected, std::string("sweep differs from golden with RELCONE_THREADS=") + threads);
  }
  ::unsetenv("RELCONE_THREADS");
  for (const auto& name : cli::fixture_names()) {
    std::ostringstream out, err;
    require(cli::run({"fixtures", "emit", name}, out, err) == 0, "emit failed");
    require(out.str() == slurp(golden / "fixtures" / (name + ".json")), "fixture " + name + " differs");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria{
      {"cone theorem on degree-d circle maps", cone_theorem},
      {"S1 into D2 three ways", pair_suite},
      {"long exact sequence on 50 random maps", les_exactness},
      {"kernel/cokernel specializations", ker_coker},
      {"Smith normal form contract", snf_contract},
      {"Kronecker annihilation and cone duality", duality},
      {"homotopy invariance of cones", homotopy_invariance},
      {"relative gerbe torsion class", gerbe_torsion},
      {"integrality and Bohr-Sommerfeld", integrality},
      {"determinism of the fixture sweep", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = true;
    try {
      criteria[i].second();
    } catch (const Failure& f) {
      ok = false;
      detail = f.why;
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    std::cout << (ok ? "PASS " : "FAIL ") << i + 1 << ": " << criteria[i].first;
    if (!ok) std::cout << " (" << detail << ")";
    std::cout << "\n";
    failed += ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
