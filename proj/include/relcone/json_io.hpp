#pragma once

#include <json.hpp>

#include <string>

#include "relcone/cech.hpp"
#include "relcone/chain.hpp"
#include "relcone/geo_classes.hpp"
#include "relcone/homology.hpp"
#include "relcone/simplicial.hpp"
#include "relcone/snf.hpp"

// JSON encodings of every library type. Objects use sorted keys, so dumping
// the same value always yields the same bytes. Scalars: integers as numbers
// (decimal strings past 64 bits), non-integral rationals and angles as
// "p/q" strings, Z/n values as {"mod": n, "val": v}.
namespace relcone::io {

using Json = nlohmann::json;

/// Throws ParseError carrying line and column.
Json parse_text(const std::string& text, const std::string& source = "<input>");
/// Throws IoError or ParseError.
Json read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
/// Compact single-line form.
std::string dump(const Json& j);
/// Indented form used for emitted fixture files.
std::string dump_pretty(const Json& j);

Json to_json(const Integer& x);
Json to_json(const Rational& x);
Json to_json(const Scalar& s);
Integer integer_from_json(const Json& j);
Rational rational_from_json(const Json& j);
Scalar scalar_from_json(const Json& j, const CoeffRing& ring);
Json to_json(const CoeffRing& ring);
CoeffRing ring_from_json(const Json& j);

Json to_json(const ZMatrix& m);
Json to_json(const QMatrix& m);
Json to_json(const QVector& v);
Json to_json(const ZVector& v);
ZMatrix zmatrix_from_json(const Json& j);
/// `cols` is needed to shape matrices with zero rows.
QMatrix qmatrix_from_json(const Json& j, std::size_t rows, std::size_t cols);
QMatrix qmatrix_from_json(const Json& j);
QVector qvector_from_json(const Json& j);

Json to_json(const SNFResult& r);

/// {"ring", "ranks", "diff"} plus "grading": "cochain" for cochain complexes.
Json to_json(const GradedComplex& c);
GradedComplex complex_from_json(const Json& j);
/// {"src", "dst", "mat"}.
Json to_json(const ComplexMap& f);
ComplexMap map_from_json(const Json& j);

/// {"rank", "torsion"} with "torsion" omitted when empty; "generators" on request.
Json to_json(const AbGroup& g, bool generators = false);
/// Groups keyed by degree.
Json to_json(const std::map<int, AbGroup>& groups, bool generators = false);

Json to_json(const LESReport& r);
Json to_json(const KerCokerReport& r);
Json to_json(const ConeComparison& c);
Json to_json(const DualityReport& r);

/// {"vertices", "facets"}.
Json to_json(const SimplicialComplex& k);
SimplicialComplex simplicial_from_json(const Json& j);
/// {"src", "dst", "vmap"}.
Json to_json(const SimplicialMap& phi);
SimplicialMap simplicial_map_from_json(const Json& j);

/// {"sets", "intersections"}.
Json to_json(const Cover& c);
Cover cover_from_json(const Json& j);
/// {"src", "dst", "r"} with r keyed by set name.
Json to_json(const CoverMap& m);
CoverMap cover_map_from_json(const Json& j);

/// {"cover", "degree", "ring", "values"} with keys "i0,i1,..." in sorted order.
Json to_json(const CechCochain& c);
CechCochain cochain_from_json(const Json& j);
Json to_json(const RelCechCochain& c);
/// {"s", "t"}; both cochains carry their covers.
RelCechCochain rel_cochain_from_json(const Json& j);

/// {"kind", "map", "s", "t"}.
Json to_json(const RelCocycle& c);
RelCocycle cocycle_from_json(const Json& j);
Json to_json(const ClassReport& r);
Json to_json(const ValidationReport& r);

/// {"map", "degree", "beta", "alpha"}.
Json to_json(const RelRealCochainPair& p, const SimplicialMap& phi);
RelRealCochainPair real_pair_from_json(const Json& j);
Json to_json(const IntegralityReport& r);

/// Object member lookup; throws ParseError naming the missing key.
const Json& member(const Json& j, const std::string& key);

}  // namespace relcone::io
