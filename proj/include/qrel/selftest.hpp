// The seeded invariant battery behind the selftest command and the
// acceptance suite: round trips of the correspondence, quantum-function
// axioms, well-definedness across extraction orders, functoriality,
// composition closure, dilations, the generation identity, the exhaustive
// classical oracle, an injectivity falsification battery, and byte-level
// determinism of the emitted certificate.
#pragma once

#include <string>
#include <vector>

#include "qrel/certificate.hpp"
#include "qrel/random_instances.hpp"

namespace qrel {

struct SelfTestOptions {
  std::uint64_t seed = 0;
  Index max_dim = 6;
  int roundtrip_instances = 200;
  int composable_pairs = 100;
  int injectivity_pairs = 100;
  bool corrupt = false;             // deliberately break the first instance
  bool check_determinism = true;    // run the battery twice and byte-compare
  Tolerances tol;
};

namespace selftest_detail {

// Acceptance thresholds, fixed here and nowhere else.
inline constexpr double kRoundTripBound = 1e-8;
inline constexpr double kWellDefinedBound = 1e-8;
inline constexpr double kIsometryBound = 1e-9;
inline constexpr double kIntertwineBound = 1e-8;

struct Accum {
  bool pass = true;
  double residual = 0.0;

  void feed(bool ok, double r) {
    pass = pass && ok;
    residual = std::max(residual, r);
  }
  void fail() { pass = false; }
  Check as_check(std::string name) const { return Check{std::move(name), pass, residual}; }
};

}  // namespace selftest_detail

/// Criteria 1-9 in one deterministic pass. Returns one check per criterion,
/// in order.
inline std::vector<Check> selftest_battery(const SelfTestOptions& opt) {
  using namespace selftest_detail;
  const Tolerances tol = opt.tol;
  Rng rng(opt.seed);

  Accum roundtrip, axioms, well_defined, functorial, closure, dilation_acc, generation, classical,
      injectivity;

  // -- shared instance loop: criteria 1, 2, 3, 6 and 7 ---------------------
  for (int i = 0; i < opt.roundtrip_instances; ++i) {
    try {
      Homomorphism pi = random_homomorphism(rng, opt.max_dim, tol);
      if (opt.corrupt && i == 0) pi.images[0](0, 0) += cplx(0.05, 0.0);

      const bool valid = validate(pi, tol);
      roundtrip.feed(valid, 0.0);
      if (!valid) continue;

      const Relation v = intertwiner_space(pi, tol);
      const CheckResult tot = totality_check(v, tol);
      const CheckResult sv = single_valuedness_check(v, tol);
      axioms.feed(tot.pass && sv.pass, std::max(tot.residual, sv.residual));

      const IsometryFamily fam = extract_family(v, tol);
      const Homomorphism back = induced_homomorphism(v, fam);
      const double rt = hom_distance(back, pi);
      roundtrip.feed(rt <= kRoundTripBound, rt);

      const Relation v_perm = permute_space_basis(v, rng);
      const IsometryFamily fam_perm = extract_family(v_perm, tol);
      const Homomorphism back_perm = induced_homomorphism(v_perm, fam_perm);
      const double wd = hom_distance(back, back_perm);
      well_defined.feed(wd <= kWellDefinedBound, wd);

      const DilationIsometry w = isometry_from_family(fam);
      const DilationIsometry w_perm = isometry_from_family(fam_perm);
      const CheckResult iso = isometry_check(w, tol);
      dilation_acc.feed(iso.residual <= kIsometryBound, iso.residual);
      const CheckResult inter = intertwine_check(w, pi, tol);
      dilation_acc.feed(inter.residual <= kIntertwineBound, inter.residual);
      const CheckResult equiv = dilation_equivalence_check(w, w_perm, pi, tol);
      dilation_acc.feed(equiv.pass, equiv.residual);

      if (v.source.hilbert_dim <= 4 && v.target.hilbert_dim <= 4) {
        const CheckResult gen = generation_check(v, w, tol);
        generation.feed(gen.pass, gen.residual);
      }
    } catch (const std::exception&) {
      roundtrip.fail();
      axioms.fail();
      well_defined.fail();
      dilation_acc.fail();
      generation.fail();
    }
  }

  // -- criteria 4 and 5: functor laws and composition closure --------------
  for (int i = 0; i < opt.composable_pairs; ++i) {
    try {
      const auto [pi0, pi1] = random_composable_pair(rng, opt.max_dim, tol);
      const Homomorphism composed = compose_hom(pi0, pi1, tol);

      const Relation lhs = intertwiner_space(composed, tol);
      const Relation r1 = intertwiner_space(pi1, tol);
      const Relation r0 = intertwiner_space(pi0, tol);
      const Relation rhs = compose(r1, r0, tol);

      const double comp_res = equality_residual(lhs.space, rhs.space);
      functorial.feed(lhs.space.dim() == rhs.space.dim() && comp_res <= tol.membership, comp_res);

      const Relation id_rel = intertwiner_space(identity_hom(pi0.target), tol);
      const double id_res = equality_residual(id_rel.space, pi0.target.commutant);
      functorial.feed(id_rel.space.dim() == pi0.target.commutant.dim() && id_res <= tol.membership,
                      id_res);

      const CheckResult tot = totality_check(rhs, tol);
      const CheckResult sv = single_valuedness_check(rhs, tol);
      closure.feed(tot.pass && sv.pass, std::max(tot.residual, sv.residual));
    } catch (const std::exception&) {
      functorial.fail();
      closure.fail();
    }
  }

  // -- criterion 8: exhaustive classical oracle, zero failures allowed -----
  double classical_failures = 0.0;
  try {
    for (Index x = 1; x <= 3; ++x)
      for (Index y = 1; y <= 3; ++y) {
        const Index bits = x * y;
        for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
          ClassicalRelation f;
          f.x_size = x;
          f.y_size = y;
          for (Index yy = 0; yy < y; ++yy)
            for (Index xx = 0; xx < x; ++xx)
              if (mask & (1ull << (yy * x + xx))) f.pairs.insert({yy, xx});

          const Relation q = relation_to_quantum(f, tol);
          if (!validate(q, tol)) classical_failures += 1.0;
          const ClassicalRelation round = quantum_to_relation(q, tol);
          if (round.pairs != f.pairs) classical_failures += 1.0;
          if (is_quantum_function(q, tol) != is_function_graph(f)) classical_failures += 1.0;
          if (x == y) {
            const RelationProperties p = classical_predicates(f);
            if (is_reflexive(q, tol) != p.reflexive) classical_failures += 1.0;
            if (is_symmetric(q, tol) != p.symmetric) classical_failures += 1.0;
            if (is_antisymmetric(q, tol) != p.antisymmetric) classical_failures += 1.0;
            if (is_transitive(q, tol) != p.transitive) classical_failures += 1.0;
          }
        }

        std::vector<Index> map(static_cast<std::size_t>(x), 0);
        for (;;) {
          ClassicalFunction f{x, y, map};
          const Homomorphism pullback = function_to_hom(f, tol);
          if (!validate(pullback, tol)) classical_failures += 1.0;

          const Relation graph_rel = relation_to_quantum(graph_of(f), tol);
          const Relation v = intertwiner_space(pullback, tol);
          if (!subspace_eq(v.space, graph_rel.space, tol)) classical_failures += 1.0;

          const Homomorphism back = induced_homomorphism(graph_rel, tol);
          if (hom_to_function(back, tol).map != f.map) classical_failures += 1.0;
          if (hom_to_function(pullback, tol).map != f.map) classical_failures += 1.0;

          // next function in lexicographic order
          Index pos = 0;
          while (pos < x && map[static_cast<std::size_t>(pos)] == y - 1)
            map[static_cast<std::size_t>(pos++)] = 0;
          if (pos == x) break;
          ++map[static_cast<std::size_t>(pos)];
        }
      }
  } catch (const std::exception&) {
    classical_failures += 1.0;
  }
  classical.feed(classical_failures == 0.0, classical_failures);

  // -- criterion 9: injectivity falsification ------------------------------
  double counterexamples = 0.0;
  if (opt.max_dim >= 2) {
    for (int i = 0; i < opt.injectivity_pairs; ++i) {
      try {
        const auto [a, b] = random_distinct_pair(rng, opt.max_dim, tol);
        const Relation va = intertwiner_space(a, tol);
        const Relation vb = intertwiner_space(b, tol);
        if (subspace_eq(va.space, vb.space, tol)) counterexamples += 1.0;
      } catch (const std::exception&) {
        counterexamples += 1.0;
      }
    }
  }
  injectivity.feed(counterexamples == 0.0, counterexamples);

  return {
      roundtrip.as_check("roundtrip_identity"),
      axioms.as_check("quantum_function_axioms"),
      well_defined.as_check("well_definedness"),
      functorial.as_check("functoriality"),
      closure.as_check("composition_closure"),
      dilation_acc.as_check("dilation"),
      generation.as_check("generation"),
      classical.as_check("classical_exhaustive"),
      injectivity.as_check("injectivity_battery"),
  };
}

inline json selftest_options_json(const SelfTestOptions& opt) {
  return json{{"seed", opt.seed},
              {"max_dim", opt.max_dim},
              {"roundtrip_instances", opt.roundtrip_instances},
              {"composable_pairs", opt.composable_pairs},
              {"injectivity_pairs", opt.injectivity_pairs},
              {"corrupt", opt.corrupt}};
}

/// Full selftest certificate. When check_determinism is set the battery runs
/// twice and the canonical serializations of the two check lists must agree
/// byte for byte.
inline Certificate selftest_certificate(const SelfTestOptions& opt,
                                        const std::string& command = "selftest") {
  Certificate cert;
  cert.command = command;
  cert.tolerances = opt.tol;
  cert.inputs_digest = content_digest(selftest_options_json(opt));
  cert.checks = selftest_battery(opt);

  if (opt.check_determinism) {
    const std::vector<Check> rerun = selftest_battery(opt);
    auto dump_checks = [](const std::vector<Check>& checks) {
      json arr = json::array();
      for (const Check& c : checks)
        arr.push_back(json{{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
      return canonical_dump(arr);
    };
    const bool identical = dump_checks(cert.checks) == dump_checks(rerun);
    cert.add("determinism", identical, identical ? 0.0 : 1.0);
  }
  return cert;
}

}  // namespace qrel
