#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace vvef {

enum class OutputFormat { json, plain };

struct Config {
    long prec = 10;
    std::int64_t nmax = 3;
    OutputFormat format = OutputFormat::plain;
    int parallel = 1;
    std::string cache_dir;  // empty disables caching
};

// defaults overridden by VVEF_PREC, VVEF_NMAX, VVEF_FORMAT, VVEF_PARALLEL, VVEF_CACHE_DIR
Config config_from_env();

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_precondition = 2;
constexpr int exit_usage = 64;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vvef
