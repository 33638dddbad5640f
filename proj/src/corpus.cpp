#include <functional>
#include <utility>

#include "relcone/cli.hpp"
#include "relcone/fixtures.hpp"
#include "relcone/parallel.hpp"

namespace relcone::cli {

namespace {

using io::Json;
using Builder = std::function<Json()>;

Json with_type(const char* type, Json body) {
  body["type"] = type;
  return body;
}

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> entries = [] {
    std::vector<std::pair<std::string, Builder>> e;
    for (int d = 1; d <= 6; ++d) {
      e.emplace_back("fix-s" + std::to_string(d),
                     [d] { return with_type("simplicial_complex", io::to_json(fixtures::circle(d))); });
    }
    for (int d = 0; d <= 6; ++d) {
      e.emplace_back("fix-d" + std::to_string(d),
                     [d] { return with_type("simplicial_map", io::to_json(fixtures::degree_map(d))); });
    }
    e.emplace_back("fix-disk", [] { return with_type("simplicial_map", io::to_json(fixtures::disk_inclusion())); });
    e.emplace_back("fix-susp-d2",
                   [] { return with_type("simplicial_map", io::to_json(fixtures::suspended_degree_two())); });
    e.emplace_back("rp2", [] { return with_type("simplicial_complex", io::to_json(fixtures::rp2())); });
    e.emplace_back("cover-arcs", [] { return with_type("cover", io::to_json(fixtures::circle_arc_cover())); });
    e.emplace_back("cover-disk", [] { return with_type("cover", io::to_json(fixtures::disk_cover())); });
    e.emplace_back("cover-map-disk", [] { return with_type("cover_map", io::to_json(fixtures::disk_cover_map())); });
    e.emplace_back("cover-map-circle-to-point",
                   [] { return with_type("cover_map", io::to_json(fixtures::circle_to_point())); });
    e.emplace_back("cover-map-point-to-circle",
                   [] { return with_type("cover_map", io::to_json(fixtures::point_to_circle())); });
    e.emplace_back("cover-map-susp-d2",
                   [] { return with_type("cover_map", io::to_json(fixtures::suspended_degree_two_covers())); });
    e.emplace_back("gerbe-half-angle", [] { return with_type("cocycle", io::to_json(fixtures::half_angle_gerbe())); });
    e.emplace_back("function-winding",
                   [] { return with_type("cocycle", io::to_json(fixtures::winding_function())); });
    e.emplace_back("area-disk-1", [] {
      return with_type("real_pair", io::to_json(fixtures::disk_area(1), fixtures::disk_inclusion()));
    });
    e.emplace_back("area-disk-half", [] {
      return with_type("real_pair", io::to_json(fixtures::disk_area(Rational(1, 2)), fixtures::disk_inclusion()));
    });
    return e;
  }();
  return entries;
}

Json homology_json(const GradedComplex& c) { return io::to_json(homology_all(c)); }

Json cohomology_json(const GradedComplex& c) {
  std::map<int, AbGroup> groups;
  for (int p = -c.hi(); p <= -c.lo(); ++p) groups[p] = cohomology_at(c, p);
  return io::to_json(groups);
}

Json relative_json(const RelativeCohomology& h) {
  std::map<int, AbGroup> groups;
  for (int q = -h.cone().hi(); q <= -h.cone().lo(); ++q) groups[q] = h.group(q);
  return io::to_json(groups);
}

Json sweep_entry(const Json& fixture) {
  const std::string type = fixture.at("type").get<std::string>();
  const CoeffRing Z = CoeffRing::integers();
  if (type == "simplicial_complex") {
    SimplicialComplex k = io::simplicial_from_json(fixture);
    return {{"H", homology_json(chain_complex(k, Z))}, {"reduced_H", io::to_json(reduced_homology(k, Z))}};
  }
  if (type == "simplicial_map") {
    SimplicialMap phi = io::simplicial_map_from_json(fixture);
    ComplexMap f = chain_map(phi, Z);
    ConeComparison cmp = compare_cones(phi);
    return {{"H_cone", homology_json(cone_of_map(f))},
            {"compare_cones", io::to_json(cmp)},
            {"les_exact", les_of_cone(f).exact()},
            {"duality", verify_cone_duality(f).ok}};
  }
  if (type == "cover") {
    Cover c = io::cover_from_json(fixture);
    return {{"H", cohomology_json(cech_complex(c, Z))}};
  }
  if (type == "cover_map") {
    return {{"H", relative_json(RelativeCohomology(io::cover_map_from_json(fixture)))}};
  }
  if (type == "cocycle") {
    RelCocycle c = io::cocycle_from_json(fixture);
    ValidationReport v = validate(c);
    Json j{{"valid", v.valid}};
    if (v.valid) j["class"] = io::to_json(classify(c));
    return j;
  }
  if (type == "real_pair") {
    return io::to_json(is_integral(io::real_pair_from_json(fixture), io::simplicial_map_from_json(fixture.at("map"))));
  }
  throw ParseError("unknown fixture type '" + type + "'");
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

Json fixture_json(const std::string& name) {
  for (const auto& [n, build] : registry()) {
    if (n == name) return build();
  }
  throw IoError("unknown fixture '" + name + "'");
}

Json sweep_report() {
  const auto& entries = registry();
  std::vector<Json> results(entries.size());
  parallel_for(entries.size(), [&](std::size_t i) { results[i] = sweep_entry(entries[i].second()); });
  Json report = Json::object();
  for (std::size_t i = 0; i < entries.size(); ++i) report[entries[i].first] = std::move(results[i]);
  return report;
}

}  // namespace relcone::cli
