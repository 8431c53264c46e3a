#include <doctest.h>

#include "cogrowth/engine.hpp"
#include "support.hpp"

using namespace cogrowth;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

Dfa all(const GroupDatum& g) { return dfa_all_words(g.generator_names()); }

// Definition of D_R read off the coset-labelled word directly.
bool d_r_by_definition(const GroupDatum& g, const Dfa& R, const SigmaAlphabet& sigma, const Word& u) {
  const GenWord w = mu_decode(sigma, u);
  if (phi_encode(g, w) != u || !run(R, w) || evaluate(g, w).coset != 1) return false;
  FreeWord f;
  for (auto x : u) f = f * sigma.letters[x].h.free;
  return f.empty();
}

}  // namespace

TEST_CASE("sigma alphabet") {
  const SigmaAlphabet z = sigma_alphabet(free_abelian(1));
  REQUIRE(z.size() == 2);
  CHECK(z.letters[0].h.abelian == std::vector<std::int64_t>{1});
  CHECK(z.letters[1].h.abelian == std::vector<std::int64_t>{-1});

  const SigmaAlphabet dih = sigma_alphabet(dihedral_infinite());
  REQUIRE(dih.size() == 6);
  std::vector<std::int64_t> weights;
  for (const auto& l : dih.letters) weights.push_back(l.h.abelian[0]);
  CHECK(weights == std::vector<std::int64_t>{1, -1, -1, 1, 0, 0});
  CHECK(dih.mu == std::vector<std::size_t>{0, 0, 1, 1, 2, 2});

  const GroupDatum bs2 = bs_group(2);
  const SigmaAlphabet bs = sigma_alphabet(bs2);
  CHECK(bs.size() == 8);
  const auto t = *bs2.find_generator("t");
  CHECK(bs.letters[sigma_index(t, 2, 2)].h.free == FreeWord::generator(2));

  const GroupDatum holes("holes", 0, 0, {"x"}, {std::nullopt}, 1, {{std::nullopt}}, {});
  CHECK_THROWS_AS(sigma_alphabet(holes), std::domain_error);
  CHECK(sigma_system(sigma_alphabet(free_group(2))).matrix() == std::vector<IntVector>{IntVector(4, 0)});
}

TEST_CASE("phi_encode and mu_decode") {
  const GroupDatum dih = dihedral_infinite();
  const SigmaAlphabet sigma = sigma_alphabet(dih);
  CHECK(phi_encode(dih, {}).empty());
  CHECK(phi_encode(dih, dih.parse_word("s r s")) ==
        Word{sigma_index(2, 1, 2), sigma_index(0, 2, 2), sigma_index(2, 2, 2)});
  CHECK(mu_decode(sigma, Word{sigma_index(2, 1, 2), sigma_index(2, 1, 2)}) == dih.parse_word("s s"));
  CHECK(mu_decode(sigma, {}).empty());
  CHECK_THROWS_AS(mu_decode(sigma, Word{6}), std::invalid_argument);
  CHECK_THROWS_AS(phi_encode(dih, GenWord{3}), std::invalid_argument);

  const GroupDatum z2 = free_abelian(2);
  CHECK(phi_encode(z2, GenWord{3, 0, 2}) == Word{3, 0, 2});
}

TEST_CASE("property: phi/mu left-inverse law") {
  const auto failure = testing::check_phi_mu_law(1000);
  CHECK_MESSAGE(!failure, failure.value_or(""));
}

TEST_CASE("l_r_automaton and d_r_membership") {
  const GroupDatum f = free_group(2);
  const Dfa lf = l_r_automaton(f, all(f));
  for (const auto& u : all_words(4, 4)) REQUIRE(run(lf, u));

  const GroupDatum dih = dihedral_infinite();
  const Dfa ld = l_r_automaton(dih, all(dih));
  CHECK_FALSE(run(ld, phi_encode(dih, dih.parse_word("s"))));
  CHECK(run(ld, phi_encode(dih, dih.parse_word("s s"))));
  CHECK_THROWS_AS(l_r_automaton(dih, dfa_all_words({"a"})), std::invalid_argument);

  for (const auto& g : testing::sample_groups()) {
    const Dfa R = dfa_reduced_words(g);
    const Dfa L = l_r_automaton(g, R);
    const SigmaAlphabet sigma = sigma_alphabet(g);
    std::vector<BigInt> expected;
    for (std::size_t len = 0; len <= 6; ++len) {
      BigInt c = 0;
      for (const auto& w : all_words(g.generator_count(), len)) c += (run(R, w) && evaluate(g, w).coset == 1) ? 1 : 0;
      expected.push_back(c);
    }
    CHECK_MESSAGE(count_words(L, 6) == expected, g.id());
  }

  const GroupDatum bs = bs_group(2);
  CHECK(d_r_membership(bs, all(bs), {}));
  CHECK(d_r_membership(bs, all(bs), phi_encode(bs, bs.parse_word("t t^-1"))));
  CHECK_FALSE(d_r_membership(bs, all(bs), phi_encode(bs, bs.parse_word("t a"))));
  CHECK_FALSE(d_r_membership(bs, complement(all(bs)), {}));
}

TEST_CASE("property: d_r_membership matches its definition") {
  auto gen = testing::rng("d_r");
  for (const auto& g : {free_group(2), dihedral_infinite(), bs_group(2)}) {
    const SigmaAlphabet sigma = sigma_alphabet(g);
    const Dfa R = testing::random_dfa(gen, g.generator_names(), 3);
    const std::size_t L = sigma.size() > 6 ? 5 : 6;
    for (std::size_t len = 0; len <= L; ++len)
      for (const auto& u : all_words(sigma.size(), len))
        REQUIRE_MESSAGE(d_r_membership(g, R, u) == d_r_by_definition(g, R, sigma, u), g.id());
  }
}

TEST_CASE("oracle engine") {
  const GroupDatum z = free_abelian(1);
  const auto r = cogrowth_oracle(z, all(z), 4, {.language_id = "all"});
  CHECK(r.coefficients == ints({1, 0, 2, 0, 6}));
  CHECK(r.faithful_degree == 4);
  CHECK(r.engine == "oracle");
  CHECK(format_report(r) == "# group=z:1 language=all engine=oracle faithful=4\n0\t1\n1\t0\n2\t2\n3\t0\n4\t6\n");

  const GroupDatum f = free_group(2);
  CHECK(cogrowth_oracle(f, dfa_reduced_words(f), 8).coefficients == ints({1, 0, 0, 0, 0, 0, 0, 0, 0}));
  const GroupDatum dih = dihedral_infinite();
  CHECK(cogrowth_oracle(dih, all(dih), 3).coefficients == ints({1, 0, 3, 0}));
}

TEST_CASE("frozen cogrowth values") {
  // Each table was produced by the independent walkers in support.cpp.
  const auto free2 = ints({1, 0, 4, 0, 28, 0, 232, 0, 2092, 0, 19864, 0, 195352});
  const auto dih = ints({1, 0, 3, 0, 19, 0, 141, 0, 1107, 0, 8953, 0, 73789});
  const auto bs2 = ints({1, 0, 4, 0, 28, 0, 244, 0, 2396, 0, 25324});
  CHECK(testing::free_walks(2, 12) == free2);
  CHECK(testing::dihedral_walks(12) == dih);
  CHECK(testing::table_walks(bs_group(2), all(bs_group(2)), 10) == bs2);

  CHECK(cogrowth_dp(free_group(2), all(free_group(2)), 12).coefficients == free2);
  CHECK(cogrowth_dp(dihedral_infinite(), all(dihedral_infinite()), 12).coefficients == dih);
  CHECK(cogrowth_dp(bs_group(2), all(bs_group(2)), 10).coefficients == bs2);

  std::vector<BigInt> z2;
  for (unsigned k = 0; k <= 12; ++k) z2.push_back(k % 2 ? BigInt(0) : testing::binomial(k, k / 2) * testing::binomial(k, k / 2));
  CHECK(testing::abelian_walks(2, 12) == z2);
  CHECK(cogrowth_dp(free_abelian(2), all(free_abelian(2)), 12).coefficients == z2);
  CHECK(cogrowth_dp(bs_group(1), all(bs_group(1)), 12).coefficients == z2);
}

TEST_CASE("theorem-a pipeline") {
  const GroupDatum z = free_abelian(1);
  const auto pz = theorem_a_paths(z, all(z), 6, 6);
  CHECK(pz.filtered == ints({1, 0, 2, 0, 6, 0, 20}));
  CHECK(pz.literal == pz.filtered);
  CHECK(theorem_a_pipeline(z, all(z), 6).engine == "theorem-a");

  const GroupDatum f = free_group(2);
  const auto pf = theorem_a_paths(f, all(f), 6, 4);
  CHECK(pf.filtered == ints({1, 0, 4, 0, 28, 0, 232}));
  CHECK(pf.literal == ints({1, 0, 4, 0, 28}));
  CHECK_THROWS_AS(theorem_a_paths(f, all(f), 4, 5), std::invalid_argument);

  const GroupDatum bs = bs_group(2);
  CHECK(theorem_a_pipeline(bs, all(bs), 6).coefficients == cogrowth_dp(bs, all(bs), 6).coefficients);
  const auto series = d_r_series(bs, all(bs), 4);
  CHECK(series.var_count() == 9);
  CHECK_FALSE(series.has_negative_coefficient());
}

TEST_CASE("theorem-b pipeline") {
  const GroupDatum z = free_abelian(1);
  CHECK(theorem_b_pipeline(z, all(z), 6).coefficients == ints({1, 0, 2, 0, 6, 0, 20}));
  const GroupDatum dih = dihedral_infinite();
  const auto r = theorem_b_pipeline(dih, all(dih), 6);
  CHECK(r.coefficients == ints({1, 0, 3, 0, 19, 0, 141}));
  CHECK(r.engine == "theorem-b");
  const GroupDatum z2 = free_abelian(2);
  CHECK(theorem_b_pipeline(z2, all(z2), 4).coefficients == ints({1, 0, 4, 0, 36}));
  CHECK_THROWS_AS(theorem_b_pipeline(free_group(2), all(free_group(2)), 4), std::invalid_argument);
  CHECK_THROWS_AS(theorem_b_factors(bs_group(2), all(bs_group(2)), 4), std::invalid_argument);

  const auto factors = theorem_b_factors(dih, all(dih), 8);
  CHECK_FALSE(factors.language_series.has_negative_coefficient());
  CHECK_FALSE(factors.solution_series.has_negative_coefficient());
  CHECK_FALSE(factors.pair_series.has_negative_coefficient());
  CHECK(factors.decomposition.parts.size() >= 1);
}

TEST_CASE("budget") {
  EngineOptions tight;
  tight.max_configurations = 2;
  const GroupDatum f = free_group(2);
  CHECK_THROWS_AS(cogrowth_dp(f, all(f), 6, tight), BudgetExceeded);
  EngineOptions loose;
  loose.prune = false;
  CHECK(cogrowth_dp(f, all(f), 4, loose).engine == "dp-unpruned");
}

TEST_CASE("property: pruned and unpruned layered counts agree") {
  const auto failure = testing::check_pruned_dp(60, 8);
  CHECK_MESSAGE(!failure, failure.value_or(""));
}

TEST_CASE("property: engines agree on random languages") {
  auto gen = testing::rng("engines");
  const auto groups = testing::sample_groups();
  for (int k = 0; k < 30; ++k) {
    const GroupDatum& g = groups[gen() % groups.size()];
    const Dfa R = (k % 4 == 0) ? dfa_reduced_words(g) : testing::random_dfa(gen, g.generator_names(), 3);
    const std::size_t N = g.generator_count() > 3 ? 6 + gen() % 3 : 8 + gen() % 3;
    INFO(g.id() << " N=" << N << " k=" << k);
    const auto expected = testing::table_walks(g, R, N);
    CHECK(cogrowth_oracle(g, R, N).coefficients == expected);
    CHECK(cogrowth_dp(g, R, N).coefficients == expected);
    CHECK(theorem_a_pipeline(g, R, N).coefficients == expected);
    if (g.free_rank() == 0) CHECK(theorem_b_pipeline(g, R, N).coefficients == expected);
  }
}

TEST_CASE("property: parity and reduced-word laws") {
  for (const auto& g : testing::sample_groups()) {
    // Every relator and involution pair has even length, so odd words are never trivial.
    const auto c = cogrowth_dp(g, all(g), 11).coefficients;
    for (std::size_t n = 1; n < c.size(); n += 2) CHECK_MESSAGE(c[n] == 0, g.id() << " n=" << n);
    CHECK(c[0] == 1);
  }
  for (std::size_t m : {1u, 2u, 3u}) {
    const GroupDatum f = free_group(m);
    const auto red = cogrowth_dp(f, dfa_reduced_words(f), 12).coefficients;
    CHECK(red[0] == 1);
    for (std::size_t n = 1; n < red.size(); ++n) CHECK(red[n] == 0);
  }
}
