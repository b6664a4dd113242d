/**
 * Command implementations behind the `mframe` executable.
 *
 *   mframe analyze FILE [--mode exact|float] [--json] [--dims-only] [--chains] [-o OUT]
 *   mframe scan FILE -m LIST [-s LIST] [-o OUT]
 *   mframe svg FILE -g SPACE:INDEX -o OUT [--mode exact|float] [--no-svg-values]
 *   mframe generate NAME [--seed N] [--scale P/Q] [-o OUT]
 *
 * Exit codes: 0 success, 1 invalid input or usage, 2 a check failed.
 */
#ifndef MFRAME_CLI_HPP
#define MFRAME_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mframe/scalar.hpp"

namespace mframe {

enum ExitCode : int
{
    kExitOk = 0,
    kExitInvalidInput = 1,
    kExitCheckFailed = 2,
};

struct AnalyzeOptions
{
    std::string input;
    Arithmetic mode = Arithmetic::Exact;
    bool json = false;
    bool dims_only = false;
    bool chains = false;
    std::string output;
};

struct ScanOptions
{
    std::string input;
    std::vector<std::string> magnitudes;
    std::vector<std::string> seeds{"1"};
    std::string output;
};

struct SvgCommandOptions
{
    std::string input;
    std::string generator;
    std::string output;
    Arithmetic mode = Arithmetic::Exact;
    bool values = true;
};

struct GenerateOptions
{
    std::string name;
    std::uint64_t seed = 0;
    std::optional<std::string> scale;
    std::string output;
};

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err);
int cmd_scan(const ScanOptions& opt, std::ostream& out, std::ostream& err);
int cmd_svg(const SvgCommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& err);

/// Expands "1..10" and comma-separated items into a flat list; throws std::invalid_argument.
std::vector<std::uint64_t> expand_seed_list(const std::vector<std::string>& items);

/// Full command line, program name first.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mframe

#endif
