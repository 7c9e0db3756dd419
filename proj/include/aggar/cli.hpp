#pragma once

#include <exception>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace aggar::cli {

/// Environment variable holding the default seed.
inline constexpr const char* kSeedEnvVar = "AGGAR_SEED";

struct Environment {
    /// Value of AGGAR_SEED, if set.
    std::optional<std::string> seed;

    static Environment from_process();
};

/// 2 for NumericalIntegrityError and its subclasses, 1 for everything else.
[[nodiscard]] int exit_code_for(const std::exception& e);

/// Runs one invocation; `args` excludes the program name. Returns the exit
/// code: 0 success, 1 usage or domain error, 2 numerical-integrity failure.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace aggar::cli
