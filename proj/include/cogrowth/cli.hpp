#pragma once

// Command implementations behind the `cogrowth` executable. Exit statuses:
// 0 success, 1 engine disagreement or engine failure, 2 input error.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "cogrowth/automata.hpp"
#include "cogrowth/group_model.hpp"

namespace cogrowth {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDisagree = 1;
inline constexpr int kExitInput = 2;

struct RunConfig {
  std::string group = "z:1";        // z:<n> | free:<m> | bs:<N> | dihedral | file:<path>
  std::string language = "all";     // all | reduced | dfa:<path>
  std::size_t max_len = 8;
  std::string engine = "dp";        // oracle | dp | theorem-a | theorem-b | all
  std::optional<std::string> output;
  std::optional<std::string> dump;  // write the resolved group datum here
  std::optional<std::size_t> literal_degree;
  std::size_t max_configurations = std::size_t{1} << 24;
};

struct SemilinearConfig {
  std::optional<std::string> system;  // system file
  std::optional<std::string> group;   // or the letter system of a group
  std::size_t degree = 12;
  std::optional<std::string> output;
};

struct GrammarConfig {
  std::string grammar = "free:2";  // free:<m> | cancellation:<m> | file:<path>
  std::size_t max_len = 8;
  std::optional<std::string> word;
  std::optional<std::string> output;
};

/// Throws ParseError or std::invalid_argument on a bad identifier or file.
GroupDatum resolve_group(const std::string& name);
/// Language and its identifier for reports.
std::pair<Dfa, std::string> resolve_language(const std::string& name, const GroupDatum& g);

int cmd_compute(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_semilinear(const SemilinearConfig& config, std::ostream& out, std::ostream& err);
int cmd_grammar(const GrammarConfig& config, std::ostream& out, std::ostream& err);

/// Parses arguments and dispatches; returns the exit status.
int run_cli(int argc, char** argv);

}  // namespace cogrowth
