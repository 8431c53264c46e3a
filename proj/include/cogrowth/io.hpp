#pragma once

// Line-oriented text formats. '#' starts a comment; blank lines are ignored.
//
//   group n=<int> m=<int> d=<int> [id=<name>]
//   gen <name> [inv=<name>]
//   cell <gen> <coset> -> <coset> vec=<c1,...,cn> free=<word over s1..sm>
//   relator <gen> <gen> ...
//
//   alphabet <sym> ...      states <int>      start <int>
//   accept <int> ...        trans <state> <sym> <state>
//
//   rows <n> cols <k>       row <c1> ... <ck>
//
//   terminal <sym> ...      nonterminal <sym> ...      start <sym>
//   rule <NT> -> <sym> ... | eps | ...

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cogrowth/automata.hpp"
#include "cogrowth/grammar.hpp"
#include "cogrowth/group_model.hpp"
#include "cogrowth/semilinear.hpp"

namespace cogrowth {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message);

  const std::string& source() const noexcept { return source_; }
  /// 1-based; 0 when the problem is not tied to one line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// `default_id` is used when the header has no id= field.
GroupDatum parse_group(std::string_view text, const std::string& source, const std::string& default_id);
GroupDatum load_group(const std::filesystem::path& path);
std::string write_group(const GroupDatum& g);

Dfa parse_dfa(std::string_view text, const std::string& source);
Dfa load_dfa(const std::filesystem::path& path);
std::string write_dfa(const Dfa& d);

DioSystem parse_system(std::string_view text, const std::string& source);
DioSystem load_system(const std::filesystem::path& path);

Cfg parse_grammar(std::string_view text, const std::string& source);
Cfg load_grammar(const std::filesystem::path& path);

/// One `part base=<v> periods=<u;u;...>` line per part.
std::string write_decomposition(const SemilinearDecomposition& dec);

/// Throws ParseError (line 0) when the file cannot be read.
std::string read_file(const std::filesystem::path& path);

}  // namespace cogrowth
