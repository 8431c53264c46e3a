#include <doctest.h>

#include <sstream>

#include "cogrowth/cli.hpp"
#include "cogrowth/engine.hpp"
#include "cogrowth/io.hpp"
#include "support.hpp"

using namespace cogrowth;

namespace {

std::size_t error_line(auto&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("group files round-trip") {
  for (const auto& g : testing::sample_groups()) {
    const std::string text = write_group(g);
    const GroupDatum back = parse_group(text, "mem", "unused");
    CHECK(back.id() == g.id());
    CHECK(write_group(back) == text);
    CHECK(cogrowth_dp(back, dfa_all_words(back.generator_names()), 6).coefficients ==
          cogrowth_dp(g, dfa_all_words(g.generator_names()), 6).coefficients);
  }
  const GroupDatum plain = parse_group("group n=1 m=0 d=1\ngen a inv=A\ngen A inv=a\n"
                                       "cell a 1 -> 1 vec=1 free=\ncell A 1 -> 1 vec=-1 free=\n",
                                       "mem", "fallback");
  CHECK(plain.id() == "fallback");
  CHECK(validate(plain).ok());
}

TEST_CASE("group file diagnostics carry line numbers") {
  const std::string head = "# comment\ngroup n=1 m=0 d=1\ngen a inv=A\ngen A inv=a\n";
  CHECK(error_line([&] { parse_group(head + "cell a 1 -> 9 vec=1 free=\n", "f", "x"); }) == 5);
  CHECK(error_line([&] { parse_group(head + "cell q 1 -> 1 vec=1 free=\n", "f", "x"); }) == 5);
  CHECK(error_line([&] { parse_group(head + "cell a 1 -> 1 vec=1,2 free=\n", "f", "x"); }) == 5);
  CHECK(error_line([&] { parse_group(head + "\nbogus line\n", "f", "x"); }) == 6);
  CHECK(error_line([&] { parse_group("gen a\n", "f", "x"); }) == 1);
  CHECK(error_line([&] { parse_group("group n=x m=0 d=1\n", "f", "x"); }) == 1);
  CHECK(error_line([&] { parse_group(head + "relator a z\n", "f", "x"); }) == 5);
  CHECK_THROWS_AS(load_group("/nonexistent/file.grp"), ParseError);
  try {
    parse_group(head + "cell a 1 -> 9 vec=1 free=\n", "d8.grp", "x");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("d8.grp:5:", 0) == 0);
    CHECK(e.source() == "d8.grp");
  }
}

TEST_CASE("dfa files") {
  const Dfa red = dfa_reduced_words(free_group(2));
  const Dfa back = parse_dfa(write_dfa(red), "mem");
  CHECK(count_words(back, 6) == count_words(red, 6));
  const Dfa partial = parse_dfa("alphabet a b\nstates 1\nstart 0\naccept 0\ntrans 0 a 0\n", "mem");
  CHECK(partial.state_count() == 2);
  CHECK(error_line([] { parse_dfa("alphabet a\nstates 1\nstart 0\ntrans 0 b 0\n", "f"); }) == 4);
  CHECK(error_line([] { parse_dfa("alphabet a\nstates 1\nstart 3\n", "f"); }) >= 1);
}

TEST_CASE("system and grammar files") {
  const DioSystem sys = parse_system("rows 1 cols 3\nrow 1 1 -2\n", "mem");
  CHECK(sys == DioSystem({{1, 1, -2}}));
  CHECK(error_line([] { parse_system("rows 1 cols 3\nrow 1 1\n", "f"); }) == 2);
  CHECK(error_line([] { parse_system("rows 2 cols 1\nrow 1\n", "f"); }) >= 1);

  const Cfg g = parse_grammar("terminal a b\nnonterminal S\nstart S\nrule S -> a S b | eps\n", "mem");
  CHECK(g.rules().size() == 2);
  CHECK(g.format_rule(g.rules()[0]) == "S -> a S b");
  CHECK(g.rules()[1].body.empty());
  CHECK(error_line([] { parse_grammar("terminal a\nnonterminal S\nstart S\nrule S -> c\n", "f"); }) == 4);
  CHECK(error_line([] { parse_grammar("terminal a\nnonterminal S\nstart T\n", "f"); }) >= 1);
}

TEST_CASE("decomposition output") {
  const auto dec = simple_decomposition(DioSystem({{1, -1}}));
  CHECK(write_decomposition(dec) == "part base=0,0 periods=1,1\n");
}

TEST_CASE("cli commands in process") {
  std::ostringstream out, err;
  RunConfig run;
  run.group = "bs:2";
  run.max_len = 8;
  CHECK(cmd_compute(run, out, err) == kExitOk);
  const GroupDatum bs = bs_group(2);
  auto expected = cogrowth_oracle(bs, dfa_all_words(bs.generator_names()), 8, {.language_id = "all"});
  expected.engine = "dp";
  CHECK(out.str() == format_report(expected));

  out.str("");
  run.group = "free:2";
  run.language = "reduced";
  run.max_len = 6;
  CHECK(cmd_compute(run, out, err) == kExitOk);
  CHECK(out.str().find("6\t0\n") != std::string::npos);

  out.str("");
  run.engine = "theorem-b";
  CHECK(cmd_compute(run, out, err) == kExitInput);
  CHECK(out.str().empty());

  run = RunConfig{};
  run.group = "nope";
  CHECK(cmd_compute(run, out, err) == kExitInput);
  run.group = "z:x";
  CHECK(cmd_compute(run, out, err) == kExitInput);
  run.group = "z:1";
  run.language = "dfa:/nonexistent.dfa";
  CHECK(cmd_compute(run, out, err) == kExitInput);
  run.language = "all";
  run.engine = "quantum";
  CHECK(cmd_compute(run, out, err) == kExitInput);

  out.str("");
  run = RunConfig{};
  run.group = "bs:2";
  CHECK(cmd_verify(run, out, err) == kExitOk);
  CHECK(out.str().find("agree") != std::string::npos);
  run.group = "dihedral";
  run.max_len = 10;
  out.str("");
  CHECK(cmd_verify(run, out, err) == kExitOk);
  CHECK(out.str().find("theorem-b") != std::string::npos);

  out.str("");
  run.engine = "all";
  CHECK(cmd_compute(run, out, err) == kExitOk);
  CHECK(out.str().find("engine=theorem-b") != std::string::npos);

  SemilinearConfig semi;
  semi.group = "dihedral";
  out.str("");
  CHECK(cmd_semilinear(semi, out, err) == kExitOk);
  CHECK(out.str().find("# hilbert basis: 6 elements") != std::string::npos);
  semi.system = "x";
  CHECK(cmd_semilinear(semi, out, err) == kExitInput);

  GrammarConfig gram;
  gram.word = "a b a^-1 a b^-1 a^-1 b b^-1";
  out.str("");
  CHECK(cmd_grammar(gram, out, err) == kExitOk);
  CHECK(out.str() == "1\n");
  gram.grammar = "cancellation:2";
  gram.word = "a a^-1 a a^-1";
  out.str("");
  CHECK(cmd_grammar(gram, out, err) == kExitOk);
  CHECK(out.str() == "2\n");
  gram.word = "a q";
  CHECK(cmd_grammar(gram, out, err) == kExitInput);
}

TEST_CASE("resolve helpers") {
  CHECK(resolve_group("z:3").abelian_rank() == 3);
  CHECK(resolve_group("free:1").free_rank() == 1);
  CHECK(resolve_group("bs:3").coset_count() == 3);
  CHECK(resolve_group("dihedral").id() == "dihedral");
  CHECK_THROWS_AS(resolve_group("bs:"), std::invalid_argument);
  const auto [d, id] = resolve_language("reduced", free_group(2));
  CHECK(id == "reduced");
  CHECK(count_words(d, 2)[2] == 12);
  CHECK_THROWS_AS(resolve_language("even", free_group(2)), std::invalid_argument);
}
