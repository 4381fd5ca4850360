#include <doctest.h>

#include "pcslab/code.hpp"
#include "pcslab/protocols.hpp"

using namespace pcs;

TEST_CASE("code: extracted family parameters") {
  for (uint32_t r : {1u, 2u, 3u}) {
    CodeSpec code = extract_code(build_pcs_side_encoding(r), 0);
    CHECK(code.n == 2 * (r - 1) + 5);
    CHECK(code.k == 1);
    DistanceResult d = distance(code, 3);
    REQUIRE(d.distance.has_value());
    CHECK(*d.distance == 2);
    REQUIRE(d.witness.has_value());
    CHECK(d.witness->weight() == 2);
  }
}

TEST_CASE("code: base scheme is distance one") {
  CodeSpec base = extract_code(build_pcs_side_encoding(0), 0);
  CHECK(base.n == 3);
  CHECK(base.k == 1);
  DistanceResult d = distance(base, 3);
  REQUIRE(d.distance.has_value());
  CHECK(*d.distance == 1);
}

TEST_CASE("code: known small code sanity") {
  // Bit-flip repetition code: detects X errors, transparent to any Z.
  CodeSpec rep;
  rep.n = 3;
  rep.k = 1;
  rep.generators = {PauliString::from_string("ZZI"), PauliString::from_string("IZZ")};
  rep.logical_x = PauliString::from_string("XXX");
  rep.logical_z = PauliString::from_string("ZII");
  rep.validate();
  DistanceResult d = distance(rep, 3);
  REQUIRE(d.distance.has_value());
  CHECK(*d.distance == 1);
  REQUIRE(d.witness.has_value());
  CHECK(d.witness->weight() == 1);
  CHECK(d.witness->xs() == 0);  // the undetected single-qubit error is a phase flip

}

TEST_CASE("code: group membership") {
  CodeSpec code = extract_code(build_pcs_side_encoding(1), 0);
  PauliString product = code.generators[0] * code.generators[2];
  CHECK(in_group(code.generators, product));
  CHECK_FALSE(in_group(code.generators, code.logical_x));
  CHECK_FALSE(in_group(code.generators, PauliString::single(code.n, 0, 'X')));
}

TEST_CASE("code: minimum-max-weight generating set") {
  for (uint32_t r : {1u, 2u, 3u}) {
    CodeSpec code = extract_code(build_pcs_side_encoding(r), 0);
    GeneratingSet set = min_weight_generating_set(code);
    CHECK(set.generators.size() == code.generators.size());
    CHECK(set.max_weight == 4);
    CHECK(symplectic_rank(set.generators) == set.generators.size());
  }
  // The weight-4 element survives in the level-1 set.
  CodeSpec code = extract_code(build_pcs_side_encoding(1), 0);
  GeneratingSet set = min_weight_generating_set(code);
  bool found = false;
  for (const auto& g : set.generators) found = found || g.str() == "+ZZXIZ";
  CHECK(found);

  // Bell-state stabilizers stay at weight 2.
  CodeSpec bell;
  bell.n = 3;
  bell.k = 1;
  bell.generators = {PauliString::from_string("XXI"), PauliString::from_string("ZZI")};
  bell.logical_x = PauliString::from_string("IIX");
  bell.logical_z = PauliString::from_string("IIZ");
  bell.validate();
  CHECK(min_weight_generating_set(bell).max_weight == 2);
}

TEST_CASE("code: CSS equivalence under the documented pattern") {
  for (uint32_t r : {1u, 2u, 3u}) {
    CodeSpec code = extract_code(build_pcs_side_encoding(r), 0);
    CssResult css = css_equivalence_check(code, css_h_pattern(r));
    CHECK(css.is_css);
    for (const auto& g : css.transformed) {
      bool pure_x = (g.zs() == 0);
      bool pure_z = (g.xs() == 0);
      CHECK((pure_x || pure_z));
    }
  }
  CHECK(css_h_pattern(1) == std::set<uint32_t>{2, 3});
  CHECK(css_h_pattern(3) == std::set<uint32_t>{2, 3, 6, 7});

  // Out-of-range indices are tolerated (the level-2 code has no a7).
  CodeSpec code2 = extract_code(build_pcs_side_encoding(2), 0);
  CHECK(css_equivalence_check(code2, {2, 3, 6, 7}).is_css);

  // Without the pattern the extracted generators are not of pure type.
  CodeSpec code1 = extract_code(build_pcs_side_encoding(1), 0);
  CHECK_FALSE(css_equivalence_check(code1, {}).is_css);
}

TEST_CASE("code: syndrome table for the level-1 circuit") {
  SyndromeTable table = syndrome_table(1, 2);
  CHECK(table.n_checks == 4);

  // Identity has the trivial syndrome.
  auto trivial = table.by_syndrome.find(0);
  REQUIRE(trivial != table.by_syndrome.end());
  bool has_identity = false;
  for (const auto& e : trivial->second) has_identity = has_identity || e.weight() == 0;
  CHECK(has_identity);

  // Exactly one weight-1 error produces [0010], and it is Z on a3.
  uint32_t key = 1u << 2;
  CHECK(table.syndrome_string(key) == "0010");
  auto it = table.by_syndrome.find(key);
  REQUIRE(it != table.by_syndrome.end());
  int weight1 = 0;
  bool z_a3 = false, xx = false;
  for (const auto& e : it->second) {
    if (e.weight() == 1) {
      ++weight1;
      z_a3 = z_a3 || e.str() == "+IIIZI";
    }
    xx = xx || e.str() == "+XXIII";
  }
  CHECK(weight1 == 1);
  CHECK(z_a3);
  CHECK(xx);
}

TEST_CASE("code: circuit syndromes equal generator anticommutation patterns") {
  for (uint32_t r : {1u, 2u}) {
    CodeSpec code = extract_code(build_pcs_side_encoding(r), 0);
    SyndromeTable table = syndrome_table(r, 2);
    for (const auto& [syndrome, errors] : table.by_syndrome) {
      for (const auto& e : errors) {
        uint32_t algebraic = 0;
        for (size_t i = 0; i < code.generators.size(); ++i) {
          if (!e.commutes_with(code.generators[i])) algebraic |= uint32_t(1) << i;
        }
        CHECK(algebraic == syndrome);
      }
    }
  }
}

TEST_CASE("code: errors") {
  CodeSpec code = extract_code(build_pcs_side_encoding(1), 0);
  CHECK_THROWS_AS(distance(code, 0), std::invalid_argument);
  CHECK_THROWS_AS(syndrome_table(1, 3), std::invalid_argument);
  Circuit with_noise = build_pcs_side_encoding(1);
  with_noise.add_noise(0, {1, 0, 0, 0});
  CHECK_THROWS_AS(extract_code(with_noise, 0), std::invalid_argument);
}
