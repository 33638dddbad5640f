#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relcone/cech.hpp"
#include "relcone/error.hpp"

namespace relcone {

enum class CocycleKind { Function, LineBundle, Gerbe };

/// "function", "line_bundle" or "gerbe".
std::string kind_name(CocycleKind kind);
/// Throws ParseError.
CocycleKind parse_kind(const std::string& name);
/// Relative degree of the cocycle: 1, 1 and 2.
int kind_degree(CocycleKind kind);
/// Z for functions, U1 otherwise.
CoeffRing kind_ring(CocycleKind kind);

/// Relative cocycle of a given kind: a relative Čech cochain (s, t) of
/// degree kind_degree(kind) with values in kind_ring(kind).
struct RelCocycle {
  CocycleKind kind = CocycleKind::Function;
  CoverMap map;
  RelCechCochain data;

  /// Throws CoverMismatch, RingMismatch or DegreeMismatch on malformed data.
  RelCocycle(CocycleKind kind, CoverMap map, RelCechCochain data);
  static RelCocycle zero(CocycleKind kind, const CoverMap& map);
};

/// Integer pair (b, a): b a 0-cochain on the source cover, a a 1-cochain on
/// the target cover, with da = 0 and pullback a = db.
struct RelFunctionCocycle {
  CoverMap map;
  CechCochain b, a;
  RelCocycle generic() const { return RelCocycle(CocycleKind::Function, map, {b, a}); }
  static RelFunctionCocycle from(const RelCocycle& c);
};

/// Angle pair (f, g) with dg = 0 and df = pullback g.
struct RelLineBundleCocycle {
  CoverMap map;
  CechCochain f, g;
  RelCocycle generic() const { return RelCocycle(CocycleKind::LineBundle, map, {f, g}); }
  static RelLineBundleCocycle from(const RelCocycle& c);
};

/// Angle pair (s, t) with dt = 0 and ds = pullback t.
struct RelGerbeCocycle {
  CoverMap map;
  CechCochain s, t;
  RelCocycle generic() const { return RelCocycle(CocycleKind::Gerbe, map, {s, t}); }
  static RelGerbeCocycle from(const RelCocycle& c);
};

struct Defect {
  std::string component;           ///< "src" or "dst"
  std::vector<std::string> simplex;  ///< set names of the failing intersection
  Rational value;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Defect> defects;
};

ValidationReport validate(const RelCocycle& c);

/// Throws CoverMismatch.
RelCocycle group_op(const RelCocycle& a, const RelCocycle& b);
RelCocycle inverse(const RelCocycle& c);

struct ClassReport {
  int degree = 0;  ///< q in H^q(Phi, Z)
  std::string basis;
  std::vector<Integer> coords;
  std::vector<Integer> orders;  ///< 0 for a free generator
  AbGroup group;

  bool is_zero() const;
};

/// Integer cocycles are classified directly in H^1(Phi, Z); angle cocycles
/// through the Bockstein in H^{n+1}(Phi, Z). Throws NotACocycle.
ClassReport classify(const RelCocycle& c);
ClassReport classify(const RelativeCohomology& h, const RelCocycle& c);
/// Class of an angle-valued cocycle t on a single cover in H^{n+1}(N, Z).
ClassReport classify_absolute(const CechCochain& t);

class NontrivialClass : public Error {
 public:
  explicit NontrivialClass(ClassReport cls)
      : Error("NontrivialClass: the cocycle represents a nonzero class"), class_(std::move(cls)) {}
  const ClassReport& report() const { return class_; }

 private:
  ClassReport class_;
};

/// Witness (rho, tau) of degree n - 1 with rel_diff(rho, tau) = c exactly in
/// the cocycle's ring. Throws NotACocycle, NontrivialClass when the class is
/// nonzero and NotTrivializable when the class vanishes but no witness
/// exists (an angle class that lifts to a real one).
RelCechCochain trivialize(const RelCocycle& c);
RelCechCochain trivialize(const RelativeCohomology& h, const RelCocycle& c);
/// Absolute version: s with ds = t.
CechCochain trivialize_absolute(const CechCochain& t);

struct Equivalence {
  bool equivalent = false;
  std::optional<RelCechCochain> witness;
};
/// Whether a - b is a relative coboundary. Throws CoverMismatch.
Equivalence is_equivalent(const RelCocycle& a, const RelCocycle& b);

/// A cocycle whose class has the given coordinates. Angle kinds can only
/// realise torsion classes; free coordinates throw NotTrivializable.
RelCocycle representative(CocycleKind kind, const CoverMap& m, const std::vector<Integer>& coords);

/// (beta, alpha): beta an (n-1)-cochain on the source complex and alpha an
/// n-cochain on the target complex, in the simplex order of each complex.
struct RelRealCochainPair {
  int degree = 0;
  QVector beta;
  QVector alpha;
};

struct GeneratorPairing {
  std::size_t generator = 0;
  Integer order = 0;  ///< 0 for a free generator
  Rational value;
  bool integral = false;  ///< value (times the order for torsion) is an integer
  QVector theta;          ///< source part of the generating cycle
  QVector eta;            ///< target part
};

struct IntegralityReport {
  bool integral = true;
  std::vector<GeneratorPairing> pairings;
};

/// Whether the pair is relatively closed for the simplicial map phi.
bool is_relatively_closed(const SimplicialMap& phi, const RelRealCochainPair& p);
/// Pairs (beta, alpha) with every generator of H_n(phi, Z). Throws NotClosed.
IntegralityReport is_integral(const RelRealCochainPair& p, const SimplicialMap& phi);
/// Integrality of (0, omega) for a 2-cochain omega on the target. Throws
/// NotIsotropic when omega does not pull back to zero and NotClosed.
IntegralityReport bohr_sommerfeld(const QVector& omega, const SimplicialMap& phi);

/// Pairing-preserving change of (beta, alpha) by the coboundary of a
/// degree n - 1 pair.
RelRealCochainPair add_coboundary(const RelRealCochainPair& p, const SimplicialMap& phi, const QVector& rho,
                                  const QVector& tau);

}  // namespace relcone
