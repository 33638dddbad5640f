#include "relcone/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace relcone::cli {

namespace {

using io::Json;

struct Options {
  std::string input;
  std::string ring;
  int degree = 0;
  bool has_degree = false;
  std::string out;
  bool pretty = false;
  bool generators = false;
  bool reduced = false;
  bool dual = false;
  bool inverse = false;
  std::string matrix;
  std::string add;
  std::string against;
  std::string kind;
  std::string coords;
  std::string pullback;
  std::string shift;
  std::string action;
  std::string name;
};

struct Result {
  int code = kOk;
  Json body;
  bool pretty = false;
};

Json load(const std::string& path) {
  const std::string prefix = "fixture:";
  if (path.rfind(prefix, 0) == 0) return fixture_json(path.substr(prefix.size()));
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return io::parse_text(ss.str(), "<stdin>");
  }
  return io::read_file(path);
}

std::string input_type(const Json& j) {
  if (!j.is_object()) throw ParseError("input must be a JSON object");
  if (j.contains("type")) return j.at("type").get<std::string>();
  if (j.contains("kind")) return "cocycle";
  if (j.contains("facets")) return "simplicial_complex";
  if (j.contains("vmap")) return "simplicial_map";
  if (j.contains("sets")) return "cover";
  if (j.contains("r")) return "cover_map";
  if (j.contains("ranks")) return "complex";
  if (j.contains("mat")) return "map";
  if (j.contains("h")) return "homotopy";
  if (j.contains("psi")) return "square";
  if (j.contains("omega")) return "omega";
  if (j.contains("alpha")) return "real_pair";
  if (j.contains("map") && j.contains("s")) return "rel_cochain";
  if (j.contains("values")) return "cochain";
  if (j.contains("matrix")) return "matrix";
  throw ParseError("cannot tell what the input describes");
}

CoeffRing ring_or(const Options& o, const CoeffRing& fallback) {
  return o.ring.empty() ? fallback : CoeffRing::parse(o.ring);
}

Json filter_degree(const Options& o, const Json& groups) {
  if (!o.has_degree) return groups;
  const std::string key = std::to_string(o.degree);
  Json only = Json::object();
  only[key] = groups.contains(key) ? groups.at(key) : io::to_json(AbGroup{});
  return only;
}

Json homology_of(const GradedComplex& c, const Options& o) {
  std::map<int, AbGroup> groups;
  if (c.grading() == Grading::Cochain) {
    for (int p = -c.hi(); p <= -c.lo(); ++p) groups[p] = cohomology_at(c, p);
  } else {
    groups = homology_all(c);
  }
  return filter_degree(o, io::to_json(groups, o.generators));
}

ComplexMap map_of(const Json& j, const std::string& type, const Options& o) {
  if (type == "simplicial_map") return chain_map(io::simplicial_map_from_json(j), ring_or(o, CoeffRing::integers()));
  if (type == "map") {
    ComplexMap f = io::map_from_json(j);
    if (o.ring.empty()) return f;
    const CoeffRing r = CoeffRing::parse(o.ring);
    return ComplexMap(f.src().with_ring(r), f.dst().with_ring(r), f.matrices());
  }
  throw ParseError("expected a chain map or a simplicial map, got " + type);
}

SimplicialMap simplicial_map_of(const Json& j, const std::string& type) {
  if (type != "simplicial_map") throw ParseError("expected a simplicial map, got " + type);
  return io::simplicial_map_from_json(j);
}

Json relative_groups(const RelativeCohomology& h, const Options& o) {
  std::map<int, AbGroup> groups;
  for (int q = -h.cone().hi(); q <= -h.cone().lo(); ++q) groups[q] = h.group(q);
  return filter_degree(o, io::to_json(groups, o.generators));
}

bool same_matrices(const ComplexMap& a, const ComplexMap& b) {
  for (int n = std::min(a.lo(), b.lo()); n <= std::max(a.hi(), b.hi()); ++n) {
    if (a.at(n) != b.at(n)) return false;
  }
  return true;
}

// ---- verbs

Result do_snf(const Options& o) {
  Json m;
  if (!o.matrix.empty()) {
    m = io::parse_text(o.matrix, "--matrix");
  } else if (!o.input.empty()) {
    m = io::member(load(o.input), "matrix");
  } else {
    throw ParseError("snf needs --matrix or an input file");
  }
  const ZMatrix A = io::zmatrix_from_json(m);
  const SNFResult r = snf(A);
  Json body = io::to_json(r);
  body["verified"] = snf_postconditions_hold(A, r);
  body["kernel"] = io::to_json(kernel_basis(A, r));
  if (A.rows() == A.cols()) body["determinant"] = io::to_json(determinant(A));
  return {kOk, body};
}

Result do_homology(const Options& o) {
  const Json j = load(o.input);
  const std::string type = input_type(j);
  if (type == "simplicial_complex") {
    const SimplicialComplex k = io::simplicial_from_json(j);
    const CoeffRing ring = ring_or(o, CoeffRing::integers());
    const auto groups = o.reduced ? reduced_homology(k, ring) : homology_all(chain_complex(k, ring));
    return {kOk, {{"H", filter_degree(o, io::to_json(groups, o.generators))}}};
  }
  if (type == "complex") {
    GradedComplex c = io::complex_from_json(j);
    if (!o.ring.empty()) c = c.with_ring(CoeffRing::parse(o.ring));
    return {kOk, {{"H", homology_of(c, o)}}};
  }
  const ComplexMap f = map_of(j, type, o);
  Json induced = Json::object();
  for (int n = f.lo(); n <= f.hi(); ++n) {
    if (o.has_degree && n != o.degree) continue;
    induced[std::to_string(n)] = io::to_json(induced_map(f, n));
  }
  return {kOk, {{"src", homology_of(f.src(), o)}, {"dst", homology_of(f.dst(), o)}, {"induced", induced}}};
}

Result do_cone(const Options& o) {
  const Json j = load(o.input);
  const std::string type = input_type(j);
  if (type == "homotopy") {
    Homotopy h{map_of(io::member(j, "f"), "map", o), map_of(io::member(j, "g"), "map", o), {}};
    for (const auto& [key, m] : io::member(j, "h").items()) {
      const int n = std::stoi(key);
      h.h[n] = io::qmatrix_from_json(m, h.f.dst().rank(n + 1), h.f.src().rank(n));
    }
    const ComplexMap F = homotopy_cone_iso(h);
    const ComplexMap back = compose(homotopy_cone_iso_inverse(h), F);
    const auto hf = homology_all(cone_of_map(h.f)), hg = homology_all(cone_of_map(h.g));
    bool equal = hf.size() == hg.size();
    for (const auto& [n, g] : hf) equal = equal && hg.count(n) && isomorphic(g, hg.at(n));
    Json body{{"F", io::to_json(F)},
              {"chain_map", F.is_chain_map()},
              {"inverse_ok", same_matrices(back, ComplexMap::identity(F.src()))},
              {"H_f", io::to_json(hf)},
              {"H_g", io::to_json(hg)},
              {"homology_equal", equal}};
    return {equal ? kOk : kNegativeVerdict, body};
  }
  if (type == "square") {
    const FiveLemmaReport r =
        five_lemma_transfer(map_of(io::member(j, "phi"), "map", o), map_of(io::member(j, "psi"), "map", o),
                            map_of(io::member(j, "f"), "map", o), map_of(io::member(j, "f_tilde"), "map", o));
    return {kOk,
            {{"cone_map", io::to_json(r.cone_map)},
             {"phi_quasi_iso", r.phi_quasi_iso},
             {"psi_quasi_iso", r.psi_quasi_iso},
             {"cone_map_quasi_iso", r.cone_map_quasi_iso}}};
  }
  const ComplexMap f = map_of(j, type, o);
  if (o.dual) {
    const GradedComplex c = cone_of_cochain_map(dual_map(f));
    return {kOk, {{"cone", io::to_json(c)}, {"H", homology_of(c, o)}, {"dual_src", io::to_json(dual_complex(f.src()))}}};
  }
  const GradedComplex c = cone_of_map(f);
  Json body{{"cone", io::to_json(c)}, {"H", homology_of(c, o)}, {"quasi_iso", quasi_iso(f)}};
  const RingKind k = f.src().ring().kind();
  if (k == RingKind::Int || k == RingKind::Rat) body["duality"] = io::to_json(verify_cone_duality(f));
  return {kOk, body};
}

Result do_cone_space(const Options& o) {
  const Json j = load(o.input);
  const SimplicialMap phi = simplicial_map_of(j, input_type(j));
  const CoeffRing ring = ring_or(o, CoeffRing::integers());
  const SimplicialComplex space = mapping_cone_space(phi);
  const MappingCylinder cyl = mapping_cylinder(phi);
  return {kOk,
          {{"space", io::to_json(space)},
           {"H", filter_degree(o, io::to_json(reduced_homology(space, ring), o.generators))},
           {"cylinder_H", io::to_json(homology_all(chain_complex(cyl.complex, ring)))}}};
}

Result do_compare_cones(const Options& o) {
  const Json j = load(o.input);
  const ConeComparison c = compare_cones(simplicial_map_of(j, input_type(j)), ring_or(o, CoeffRing::integers()));
  return {c.iso() ? kOk : kNegativeVerdict, io::to_json(c)};
}

Result do_les(const Options& o) {
  const Json j = load(o.input);
  const LESReport r = les_of_cone(map_of(j, input_type(j), o));
  return {r.exact() ? kOk : kNegativeVerdict, io::to_json(r)};
}

Result do_kercoker(const Options& o) {
  const Json j = load(o.input);
  const KerCokerReport r = ker_coker_les(map_of(j, input_type(j), o));
  return {r.les.exact() && r.specialization_holds ? kOk : kNegativeVerdict, io::to_json(r)};
}

Result do_cech(const Options& o) {
  const Json j = load(o.input);
  const std::string type = input_type(j);
  if (type == "cover") {
    const Cover c = io::cover_from_json(j);
    const GradedComplex cc = cech_complex(c, ring_or(o, CoeffRing::integers()));
    return {kOk, {{"nerve", io::to_json(c.nerve())}, {"H", homology_of(cc, o)}}};
  }
  if (type == "cover_map") {
    const RelativeCohomology h(io::cover_map_from_json(j), ring_or(o, CoeffRing::integers()));
    return {kOk, {{"H", relative_groups(h, o)}}};
  }
  if (type == "cochain") {
    const CechCochain c = io::cochain_from_json(j);
    if (!o.pullback.empty()) {
      return {kOk, {{"pullback", io::to_json(pullback(c, io::cover_map_from_json(load(o.pullback))))}}};
    }
    const CechCochain d = cech_diff(c);
    return {kOk, {{"d", io::to_json(d)}, {"cocycle", d.is_zero()}}};
  }
  if (type == "rel_cochain") {
    const CoverMap m = io::cover_map_from_json(io::member(j, "map"));
    const RelCechCochain u = io::rel_cochain_from_json(j);
    u.check(m);
    const RelCechCochain d = rel_diff(m, u);
    const bool cocycle = d.s.is_zero() && d.t.is_zero();
    Json body{{"d", io::to_json(d)}, {"cocycle", cocycle}};
    if (cocycle && u.ring().kind() == RingKind::AngleQ) {
      const BocksteinResult b = bockstein(m, u);
      body["bockstein"] = {{"degree", u.degree() + 1},
                           {"class", io::to_json(b.class_coords)},
                           {"group", io::to_json(b.group)},
                           {"cocycle", io::to_json(b.cocycle)}};
    } else if (cocycle && u.ring().kind() == RingKind::Int) {
      body["class"] = io::to_json(RelativeCohomology(m).class_of(u));
    }
    return {kOk, body};
  }
  throw ParseError("cech expects a cover, cover map, cochain or relative cochain, got " + type);
}

std::vector<Integer> parse_coords(const std::string& text) {
  std::vector<Integer> out;
  for (const auto& x : io::parse_text(text, "--coords")) out.push_back(io::integer_from_json(x));
  return out;
}

Result do_classify(const Options& o) {
  const Json j = load(o.input);
  const std::string type = input_type(j);
  if (type == "cover_map") {
    if (o.kind.empty() || o.coords.empty()) throw ParseError("a cover map needs --kind and --coords");
    return {kOk, io::to_json(representative(parse_kind(o.kind), io::cover_map_from_json(j), parse_coords(o.coords)))};
  }
  if (type == "cochain") return {kOk, io::to_json(classify_absolute(io::cochain_from_json(j)))};
  RelCocycle c = io::cocycle_from_json(j);
  if (!o.add.empty()) c = group_op(c, io::cocycle_from_json(load(o.add)));
  if (o.inverse) c = inverse(c);
  const ValidationReport v = validate(c);
  if (!v.valid) return {kNegativeVerdict, io::to_json(v)};
  return {kOk, io::to_json(classify(c))};
}

Result do_trivialize(const Options& o) {
  const Json j = load(o.input);
  const std::string type = input_type(j);
  try {
    if (type == "cochain") return {kOk, io::to_json(trivialize_absolute(io::cochain_from_json(j)))};
    const RelCocycle c = io::cocycle_from_json(j);
    if (!o.against.empty()) {
      const Equivalence e = is_equivalent(c, io::cocycle_from_json(load(o.against)));
      Json body{{"equivalent", e.equivalent}};
      if (e.witness) body["witness"] = io::to_json(*e.witness);
      return {e.equivalent ? kOk : kNegativeVerdict, body};
    }
    const ValidationReport v = validate(c);
    if (!v.valid) return {kNegativeVerdict, io::to_json(v)};
    return {kOk, io::to_json(trivialize(c))};
  } catch (const NontrivialClass& e) {
    return {kNegativeVerdict, {{"nontrivial", io::to_json(e.report())}}};
  } catch (const NotTrivializable& e) {
    return {kNegativeVerdict, {{"not_trivializable", e.what()}}};
  }
}

Result do_integrality(const Options& o) {
  const Json j = load(o.input);
  const SimplicialMap phi = io::simplicial_map_from_json(io::member(j, "map"));
  RelRealCochainPair p = io::real_pair_from_json(j);
  if (!o.shift.empty()) {
    const Json s = load(o.shift);
    p = add_coboundary(p, phi, io::qvector_from_json(io::member(s, "rho")), io::qvector_from_json(io::member(s, "tau")));
  }
  if (!is_relatively_closed(phi, p)) return {kNegativeVerdict, {{"closed", false}}};
  const IntegralityReport r = is_integral(p, phi);
  return {r.integral ? kOk : kNegativeVerdict, io::to_json(r)};
}

Result do_bohr_sommerfeld(const Options& o) {
  const Json j = load(o.input);
  const SimplicialMap phi = io::simplicial_map_from_json(io::member(j, "map"));
  const QVector omega = io::qvector_from_json(j.contains("omega") ? j.at("omega") : io::member(j, "alpha"));
  try {
    const IntegralityReport r = bohr_sommerfeld(omega, phi);
    return {r.integral ? kOk : kNegativeVerdict, io::to_json(r)};
  } catch (const NotIsotropic& e) {
    return {kNegativeVerdict, {{"isotropic", false}}};
  } catch (const NotClosed& e) {
    return {kNegativeVerdict, {{"closed", false}}};
  }
}

Result do_fixtures(const Options& o, bool& written) {
  if (o.action == "list") return {kOk, {{"fixtures", fixture_names()}}};
  if (o.action == "sweep") return {kOk, sweep_report()};
  if (o.action != "emit") throw ParseError("fixtures action must be list, emit or sweep");
  if (o.name.empty()) throw ParseError("fixtures emit needs a name or 'all'");
  const std::vector<std::string> names = o.name == "all" ? fixture_names() : std::vector<std::string>{o.name};
  if (o.out.empty()) {
    if (names.size() != 1) throw ParseError("emitting all fixtures needs --out DIR");
    return {kOk, fixture_json(names.front()), true};
  }
  std::filesystem::create_directories(o.out);
  Json paths = Json::array();
  for (const auto& n : names) {
    const std::string path = (std::filesystem::path(o.out) / (n + ".json")).string();
    io::write_file(path, io::dump_pretty(fixture_json(n)));
    paths.push_back(path);
  }
  written = true;
  return {kOk, {{"written", paths}}};
}

void add_common(CLI::App* sub, Options& o, bool needs_input = true) {
  auto* in = sub->add_option("input", o.input, "input JSON file, fixture:NAME or -");
  if (needs_input) in->required();
  sub->add_option("--ring", o.ring, "Z, Q, Zmod:n or U1");
  sub->add_option("--degree", o.degree, "restrict to one degree")->each([&o](const std::string&) { o.has_degree = true; });
  sub->add_option("--out", o.out, "write the report to this path");
  sub->add_flag("--pretty", o.pretty, "indented output");
  sub->add_flag("--generators", o.generators, "include generator cycles");
}

}  // namespace

const std::vector<VerbInfo>& dispatch_table() {
  static const std::vector<VerbInfo> table{
      {"snf", {"snf", "snf_postconditions_hold", "kernel_basis", "determinant"}},
      {"homology", {"chain_complex", "homology_all", "cohomology_at", "reduced_homology", "induced_map"}},
      {"cone",
       {"cone_of_map", "cone_of_cochain_map", "dual_map", "dual_complex", "verify_cone_duality", "quasi_iso",
        "homotopy_cone_iso", "homotopy_cone_iso_inverse", "five_lemma_transfer", "chain_map"}},
      {"cone-space", {"mapping_cone_space", "mapping_cylinder", "reduced_homology"}},
      {"compare-cones", {"compare_cones", "cone_operator"}},
      {"les", {"les_of_cone", "connecting_hom"}},
      {"kercoker", {"ker_coker_les"}},
      {"cech",
       {"nerve", "cech_complex", "cech_diff", "pullback", "relative_cone_complex", "rel_diff", "class_of",
        "bockstein"}},
      {"classify", {"validate", "classify", "classify_absolute", "group_op", "inverse", "representative"}},
      {"trivialize", {"trivialize", "trivialize_absolute", "is_equivalent"}},
      {"integrality", {"is_relatively_closed", "is_integral", "add_coboundary"}},
      {"bohr-sommerfeld", {"bohr_sommerfeld"}},
      {"fixtures", {"fixture_names", "fixture_json", "sweep_report"}},
  };
  return table;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Relative homology and cohomology of maps, computed exactly", "relcone"};
  app.require_subcommand(1);

  std::map<std::string, CLI::App*> subs;
  auto verb = [&](const std::string& name, const std::string& help, bool needs_input = true) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s, o, needs_input);
    subs[name] = s;
    return s;
  };
  verb("snf", "Smith normal form of an integer matrix", false)->add_option("--matrix", o.matrix, "JSON rows");
  auto* hom = verb("homology", "homology of a complex, simplicial complex or map");
  hom->add_flag("--reduced", o.reduced, "reduced homology of a simplicial complex");
  verb("cone", "algebraic mapping cone")->add_flag("--dual", o.dual, "cochain cone of the dual map");
  verb("cone-space", "topological mapping cone of a simplicial map");
  verb("compare-cones", "compare algebraic and topological cones");
  verb("les", "long exact sequence of the cone");
  verb("kercoker", "kernel/cokernel sequence");
  verb("cech", "Čech cohomology, relative cohomology and coboundaries")
      ->add_option("--pullback", o.pullback, "cover map to pull a cochain back along");
  auto* cls = verb("classify", "class of a relative cocycle");
  cls->add_option("--add", o.add, "cocycle to add first");
  cls->add_flag("--inverse", o.inverse, "classify the inverse");
  cls->add_option("--kind", o.kind, "function, line_bundle or gerbe (with a cover map input)");
  cls->add_option("--coords", o.coords, "class coordinates as a JSON array");
  verb("trivialize", "witness that a cocycle is a coboundary")
      ->add_option("--against", o.against, "test equivalence with this cocycle instead");
  verb("integrality", "pair a relative real class with integral cycles")
      ->add_option("--shift", o.shift, "JSON {rho, tau} coboundary to add first");
  verb("bohr-sommerfeld", "integrality of (0, omega)");
  auto* fx = app.add_subcommand("fixtures", "list, emit or sweep the fixture corpus");
  fx->add_option("action", o.action, "list, emit or sweep")->required();
  fx->add_option("name", o.name, "fixture name or all");
  fx->add_option("--out", o.out, "output path (a directory for emit)");
  fx->add_flag("--pretty", o.pretty, "indented output");
  subs["fixtures"] = fx;

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  std::string chosen;
  for (const auto& [name, s] : subs) {
    if (s->parsed()) chosen = name;
  }

  try {
    bool written = false;
    Result r;
    if (chosen == "snf") r = do_snf(o);
    else if (chosen == "homology") r = do_homology(o);
    else if (chosen == "cone") r = do_cone(o);
    else if (chosen == "cone-space") r = do_cone_space(o);
    else if (chosen == "compare-cones") r = do_compare_cones(o);
    else if (chosen == "les") r = do_les(o);
    else if (chosen == "kercoker") r = do_kercoker(o);
    else if (chosen == "cech") r = do_cech(o);
    else if (chosen == "classify") r = do_classify(o);
    else if (chosen == "trivialize") r = do_trivialize(o);
    else if (chosen == "integrality") r = do_integrality(o);
    else if (chosen == "bohr-sommerfeld") r = do_bohr_sommerfeld(o);
    else r = do_fixtures(o, written);

    const std::string text = o.pretty || r.pretty ? io::dump_pretty(r.body) : io::dump(r.body) + "\n";
    if (!o.out.empty() && !written) {
      io::write_file(o.out, text);
    } else {
      out << text;
    }
    return r.code;
  } catch (const NotACocycle& e) {
    out << io::dump(Json{{"verdict", "NotACocycle"}, {"message", e.what()}}) << "\n";
    return kNegativeVerdict;
  } catch (const NotClosed& e) {
    out << io::dump(Json{{"verdict", "NotClosed"}, {"message", e.what()}}) << "\n";
    return kNegativeVerdict;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: IoError: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace relcone::cli
