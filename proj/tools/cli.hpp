#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ddc::cli {

enum ExitCode : int
{
    ok = 0,
    negative = 1,
    usage = 2,
    cap = 3
};

/// Runs one `dd` command. `args` excludes the program name. Verdicts are printed to
/// `out` as `RESULT: key=value ...` lines.
auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

/// File name used by `generate`: 16 hex digits of the FNV-1a hash of the canonical
/// serialization, plus ".g".
auto corpus_file_name(const std::string & canonical_serialization) -> std::string;

} // namespace ddc::cli
