#ifndef EMK_CLI_HPP
#define EMK_CLI_HPP

// Command execution behind the `emk` tool: job description, input loading,
// deterministic JSON/table rendering, and the exit-code policy
// (0 = success, 2 = validation error, 3 = verification mismatch).

#include <iosfwd>
#include <string>
#include <vector>

namespace emk {

struct JobSpec {
  std::string command;                // mu | expand | verify | ehrhart | local-eml
  std::string polyhedron_path;
  std::string scalar_product_path;    // empty: identity matrix
  int order = -1;                     // -1: command-specific default
  std::vector<std::string> t_values;  // rationals as text, e.g. "3/2"
  std::string test_function = "one";  // polynomial mini-grammar
  std::string output_path;            // empty: the stream passed to run_job
  std::string format = "json";        // json | table
  std::string mode = "integer";       // integer | rational-t
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitMismatch = 3;

// Runs the job; the document goes to `out` (or spec.output_path when set),
// diagnostics to `err`.  Returns the exit code.
int run_job(const JobSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace emk

#endif  // EMK_CLI_HPP
