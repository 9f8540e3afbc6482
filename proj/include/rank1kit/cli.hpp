#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rank1kit::cli {

enum class Command { Crossratio, Project, Act, Lemma1, Lemma2, Vogt, Jacobian, Reconstruct, Verify };

const char* command_name(Command c) noexcept;

struct JobConfig {
    Command command = Command::Verify;
    std::string input;   // empty: command default
    std::string output;  // empty: stdout
    std::uint64_t seed = 0;
    std::optional<double> tol;
    std::optional<int> n;
    std::optional<std::string> words;

    friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum ExitCode : int { kOk = 0, kInvalid = 1, kNoConvergence = 2 };

/// Arguments after the program name, e.g. {"lemma1", "--n", "24"}. Throws UsageError.
JobConfig parse(const std::vector<std::string>& args);
/// Inverse of parse: parse(render(c)) == c.
std::vector<std::string> render(const JobConfig& cfg);

struct Result {
    int code = kOk;
    std::string output;   // complete output; empty unless code == kOk (verify also reports on failure)
    std::string message;  // diagnostic for stderr
};

/// Reads the input, validates it, computes the whole output in memory.
Result execute(const JobConfig& cfg);

/// execute() then writes the output to cfg.output (or `out`) only on success.
int run(const JobConfig& cfg, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

std::string usage();

}  // namespace rank1kit::cli
