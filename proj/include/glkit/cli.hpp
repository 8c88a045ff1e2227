#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace glkit {

enum class Command { Prove, Evaluate, Simulate, Oracle, Tower };
enum class OutputFormat { Text, Latex, Json, Csv };
enum class Expectation { Provable, Unprovable };

struct RunConfig {
  Command command = Command::Prove;
  std::optional<std::string> formula;
  OutputFormat format = OutputFormat::Text;
  bool simplify = false;
  std::size_t max_worlds = 5;
  std::optional<Expectation> expect;
  /// oracle sweep only
  std::size_t max_connectives = 3;
  std::vector<std::string> variables{"p", "q"};
  /// Golden directory: NAME.formula inputs checked against
  /// NAME.<command>[.simplified].<format>.
  std::optional<std::string> corpus;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int mismatch = 1;
inline constexpr int input_error = 2;
inline constexpr int violation = 3;
}  // namespace exit_code

/// Runs one batch command. Results go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

std::string command_name(Command c);
std::string format_extension(OutputFormat f);

}  // namespace glkit
