// The `rhodf` command line: close, entail, model, gen, stats.

#ifndef RHODF_CLI_H_
#define RHODF_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace rhodf {

// Exit codes.
inline constexpr int kExitOk = 0;         // success, or entailment holds
inline constexpr int kExitNo = 1;         // entailment / model check fails
inline constexpr int kExitUsage = 2;      // bad arguments, unreadable or invalid input
inline constexpr int kExitCap = 3;        // closure exceeded the triple cap
inline constexpr int kExitUnknown = 4;    // map search budget exhausted

// args excludes the program name. Paths may be "-" for `in`.
int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace rhodf

#endif  // RHODF_CLI_H_
