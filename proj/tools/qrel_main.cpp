// qrel: load JSON descriptions of algebras, relations and homomorphisms, run
// the constructions, and emit machine-checkable certificates.
//
// Exit codes: 0 all checks passed, 1 some check failed, 2 input error.
//
// stdout carries one JSON document {"certificate": ..., "result": ...};
// --output additionally writes the result payload alone to a file so it can
// feed the next command.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qrel/selftest.hpp"

namespace {

using qrel::json;

struct OutputOptions {
  std::string output_path;
  bool pretty = false;
};

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qrel::schema_error("cannot open input file: " + path);
  return json::parse(in);
}

// stdout carries the whole document; --output receives the result payload
// when the command produces one, the certificate otherwise.
int emit(const qrel::Certificate& cert, const std::optional<json>& result,
         const OutputOptions& out) {
  json doc{{"certificate", qrel::certificate_to_json(cert)}};
  if (result) doc["result"] = *result;
  if (!out.output_path.empty()) {
    std::ofstream f(out.output_path);
    if (!f) throw qrel::schema_error("cannot open output file: " + out.output_path);
    f << qrel::canonical_dump(result ? *result : doc.at("certificate"), out.pretty) << "\n";
  }
  std::cout << qrel::canonical_dump(doc, out.pretty) << "\n";
  return cert.overall() ? 0 : 1;
}

void add_tolerance_flags(CLI::App* cmd, qrel::Tolerances& tol) {
  cmd->add_option("--tol-rank", tol.rank, "relative singular-value cutoff");
  cmd->add_option("--tol-membership", tol.membership, "relative subspace membership bound");
  cmd->add_option("--tol-eq", tol.eq, "Frobenius comparison bound");
}

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("-o,--output", out.output_path, "write the result payload to this file");
  cmd->add_flag("--pretty", out.pretty, "indent the JSON output");
}

int cmd_commutant(const std::string& path, qrel::Tolerances tol, const OutputOptions& out) {
  const json input = load_json_file(path);
  const qrel::Algebra a = qrel::algebra_from_json(input, tol);

  qrel::Certificate cert;
  cert.command = "commutant";
  cert.tolerances = tol;
  cert.inputs_digest = qrel::content_digest(input);

  const qrel::AlgebraCheck chk = qrel::check_algebra(a, tol);
  cert.add("algebra_valid", chk.unital && chk.star_closed && chk.product_closed && chk.commutes,
           chk.worst_residual);
  const qrel::Subspace double_comm = qrel::commutant_of(a.commutant.basis, a.hilbert_dim, tol);
  const double dc_res = qrel::equality_residual(double_comm, a.algebra);
  cert.add("double_commutant", double_comm.dim() == a.algebra.dim() && dc_res <= tol.membership,
           dc_res);

  return emit(cert, qrel::subspace_to_json(a.commutant), out);
}

int cmd_relprops(const std::string& path, qrel::Tolerances tol, const OutputOptions& out) {
  const json input = load_json_file(path);
  const qrel::Relation r = qrel::relation_from_json(input, tol);
  if (!qrel::same_algebra(r.source, r.target, tol))
    throw qrel::schema_error("relprops: source and target algebras must coincide");

  qrel::Certificate cert;
  cert.command = "relprops";
  cert.tolerances = tol;
  cert.inputs_digest = qrel::content_digest(input);

  const qrel::CheckResult bimod = qrel::bimodule_check(r, tol);
  cert.add("bimodule_valid", bimod.pass, bimod.residual);

  // Predicate values are findings, not gates: an irreflexive relation is
  // still a perfectly valid input, so they live in the result payload.
  std::optional<json> result;
  if (bimod.pass) {
    const qrel::Subspace adj = qrel::adjoint_subspace(r.space, tol);
    const double refl = qrel::inclusion_residual(r.source.commutant, r.space);
    const double sym = qrel::equality_residual(adj, r.space);
    const double anti =
        qrel::inclusion_residual(qrel::intersect(r.space, adj, tol), r.source.commutant);
    const double trans =
        qrel::inclusion_residual(qrel::product_span(r.space, r.space, tol), r.space);
    result = json{{"reflexive", json{{"value", refl <= tol.membership}, {"residual", refl}}},
                  {"symmetric", json{{"value", adj.dim() == r.space.dim() && sym <= tol.membership},
                                     {"residual", sym}}},
                  {"antisymmetric", json{{"value", anti <= tol.membership}, {"residual", anti}}},
                  {"transitive", json{{"value", trans <= tol.membership}, {"residual", trans}}}};
  }
  return emit(cert, result, out);
}

void add_hom_checks(qrel::Certificate& cert, const qrel::HomCheck& chk) {
  cert.add("hom_unital", chk.unital, chk.unital_residual);
  cert.add("hom_star_preserving", chk.star_preserving, chk.star_residual);
  cert.add("hom_multiplicative", chk.multiplicative, chk.mult_residual);
  cert.add("hom_range_in_target", chk.range_in_target, chk.range_residual);
}

int cmd_gmap(const std::string& path, qrel::Tolerances tol, const OutputOptions& out) {
  const json input = load_json_file(path);
  const qrel::Homomorphism pi = qrel::hom_from_json(input, tol);

  qrel::Certificate cert;
  cert.command = "gmap";
  cert.tolerances = tol;
  cert.inputs_digest = qrel::content_digest(input);

  const qrel::HomCheck chk = qrel::validate_hom(pi, tol);
  add_hom_checks(cert, chk);
  if (!chk.pass()) return emit(cert, std::nullopt, out);

  const qrel::Relation v = qrel::intertwiner_space(pi, tol);
  const qrel::CheckResult bimod = qrel::bimodule_check(v, tol);
  cert.add("bimodule_valid", bimod.pass, bimod.residual);
  const qrel::CheckResult tot = qrel::totality_check(v, tol);
  cert.add("quantum_function_totality", tot.pass, tot.residual);
  const qrel::CheckResult sv = qrel::single_valuedness_check(v, tol);
  cert.add("quantum_function_single_valuedness", sv.pass, sv.residual);

  return emit(cert, qrel::relation_to_json(v), out);
}

int cmd_ginv(const std::string& path, qrel::Tolerances tol, const std::string& family_path,
             const OutputOptions& out) {
  const json input = load_json_file(path);
  const qrel::Relation r = qrel::relation_from_json(input, tol);

  qrel::Certificate cert;
  cert.command = "ginv";
  cert.tolerances = tol;
  cert.inputs_digest = qrel::content_digest(input);

  const qrel::CheckResult bimod = qrel::bimodule_check(r, tol);
  cert.add("bimodule_valid", bimod.pass, bimod.residual);
  const qrel::CheckResult tot = qrel::totality_check(r, tol);
  cert.add("quantum_function_totality", tot.pass, tot.residual);
  const qrel::CheckResult sv = qrel::single_valuedness_check(r, tol);
  cert.add("quantum_function_single_valuedness", sv.pass, sv.residual);
  if (!bimod.pass || !tot.pass || !sv.pass) {
    std::cerr << "ginv: not a quantum function: "
              << (!tot.pass ? "the inclusion M' in V*V fails (totality analog)"
                            : !sv.pass ? "the inclusion VV* in N' fails (single-valuedness analog)"
                                       : "the bimodule property fails")
              << "\n";
    return emit(cert, std::nullopt, out);
  }

  const qrel::IsometryFamily fam = qrel::extract_family(r, tol);
  const qrel::FamilyCheck fc = qrel::check_family(fam, tol);
  cert.add("family_partial_isometries", fc.partial_isometries, fc.isometry_residual);
  cert.add("family_orthogonal_supports", fc.orthogonal_supports, fc.orthogonality_residual);
  cert.add("family_completeness", fc.complete, fc.completeness_residual);
  if (!family_path.empty()) {
    std::ofstream f(family_path);
    if (!f) throw qrel::schema_error("cannot open family output file: " + family_path);
    f << qrel::canonical_dump(qrel::family_to_json(fam), out.pretty) << "\n";
  }

  const qrel::Homomorphism pi = qrel::induced_homomorphism(r, fam);
  add_hom_checks(cert, qrel::validate_hom(pi, tol));

  return emit(cert, qrel::hom_to_json(pi), out);
}

int cmd_roundtrip(const std::string& path, qrel::Tolerances tol, const OutputOptions& out) {
  const json input = load_json_file(path);
  const qrel::Homomorphism pi = qrel::hom_from_json(input, tol);

  qrel::Certificate cert;
  cert.command = "roundtrip";
  cert.tolerances = tol;
  cert.inputs_digest = qrel::content_digest(input);

  const qrel::HomCheck chk = qrel::validate_hom(pi, tol);
  add_hom_checks(cert, chk);
  if (!chk.pass()) return emit(cert, std::nullopt, out);

  const qrel::Relation v = qrel::intertwiner_space(pi, tol);
  const qrel::Homomorphism back = qrel::induced_homomorphism(v, tol);
  const double residual = qrel::hom_distance(back, pi);
  cert.add("roundtrip_identity", residual <= qrel::selftest_detail::kRoundTripBound, residual);

  return emit(cert, std::nullopt, out);
}

int cmd_dilate(const std::string& path, qrel::Tolerances tol, bool check_generation,
               const OutputOptions& out) {
  const json input = load_json_file(path);
  const qrel::Homomorphism pi = qrel::hom_from_json(input, tol);

  qrel::Certificate cert;
  cert.command = "dilate";
  cert.tolerances = tol;
  cert.inputs_digest = qrel::content_digest(input);

  const qrel::HomCheck chk = qrel::validate_hom(pi, tol);
  add_hom_checks(cert, chk);
  if (!chk.pass()) return emit(cert, std::nullopt, out);

  const qrel::Relation v = qrel::intertwiner_space(pi, tol);
  const qrel::IsometryFamily fam = qrel::extract_family(v, tol);
  const qrel::DilationIsometry w = qrel::isometry_from_family(fam);

  const qrel::CheckResult iso = qrel::isometry_check(w, tol);
  cert.add("isometry", iso.residual <= qrel::selftest_detail::kIsometryBound, iso.residual);
  const qrel::CheckResult inter = qrel::intertwine_check(w, pi, tol);
  cert.add("intertwine", inter.residual <= qrel::selftest_detail::kIntertwineBound, inter.residual);
  if (check_generation) {
    const qrel::CheckResult gen = qrel::generation_check(v, w, tol);
    cert.add("generation", gen.pass, gen.residual);
  }
  return emit(cert, qrel::isometry_to_json(w), out);
}

int cmd_selftest(const qrel::SelfTestOptions& opt, const OutputOptions& out) {
  const qrel::Certificate cert = qrel::selftest_certificate(opt);
  return emit(cert, std::nullopt, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional quantum relations toolkit"};
  app.require_subcommand(1);

  std::string input_path;
  qrel::Tolerances tol;
  OutputOptions out;
  bool check_generation = false;
  bool skip_determinism = false;
  qrel::SelfTestOptions st;

  CLI::App* commutant = app.add_subcommand("commutant", "commutant of a von Neumann algebra");
  commutant->add_option("input", input_path, "algebra JSON file")->required();
  CLI::App* relprops = app.add_subcommand("relprops", "validate a quantum relation and report its properties");
  relprops->add_option("input", input_path, "relation JSON file")->required();
  CLI::App* gmap = app.add_subcommand("gmap", "intertwiner space of a homomorphism");
  gmap->add_option("input", input_path, "homomorphism JSON file")->required();
  CLI::App* ginv = app.add_subcommand("ginv", "homomorphism induced by a quantum function");
  ginv->add_option("input", input_path, "relation JSON file")->required();
  std::string family_path;
  ginv->add_option("--family", family_path, "also write the extracted partial isometry family here");
  CLI::App* roundtrip = app.add_subcommand("roundtrip", "full correspondence round trip on a homomorphism");
  roundtrip->add_option("input", input_path, "homomorphism JSON file")->required();
  CLI::App* dilate = app.add_subcommand("dilate", "dilation isometry of a homomorphism");
  dilate->add_option("input", input_path, "homomorphism JSON file")->required();
  dilate->add_flag("--check-generation", check_generation,
                   "also verify that the isometry generates the intertwiner space");
  CLI::App* selftest = app.add_subcommand("selftest", "run the seeded invariant battery");
  selftest->add_option("--seed", st.seed, "random seed");
  selftest->add_option("--max-dim", st.max_dim, "largest Hilbert dimension drawn");
  selftest->add_option("--instances", st.roundtrip_instances, "round-trip instances");
  selftest->add_option("--pairs", st.composable_pairs, "composable pairs");
  selftest->add_option("--injectivity-pairs", st.injectivity_pairs, "distinct-pair draws");
  selftest->add_flag("--corrupt", st.corrupt, "corrupt the first instance (must fail)");
  selftest->add_flag("--skip-determinism", skip_determinism,
                     "skip the double-run determinism check");

  for (CLI::App* cmd : {commutant, relprops, gmap, ginv, roundtrip, dilate, selftest}) {
    add_tolerance_flags(cmd, tol);
    add_output_flags(cmd, out);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    tol.require_usable();
    if (commutant->parsed()) return cmd_commutant(input_path, tol, out);
    if (relprops->parsed()) return cmd_relprops(input_path, tol, out);
    if (gmap->parsed()) return cmd_gmap(input_path, tol, out);
    if (ginv->parsed()) return cmd_ginv(input_path, tol, family_path, out);
    if (roundtrip->parsed()) return cmd_roundtrip(input_path, tol, out);
    if (dilate->parsed()) return cmd_dilate(input_path, tol, check_generation, out);
    if (selftest->parsed()) {
      st.tol = tol;
      st.check_determinism = !skip_determinism;
      return cmd_selftest(st, out);
    }
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const qrel::schema_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const qrel::shape_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
