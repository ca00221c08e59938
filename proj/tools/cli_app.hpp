#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "calogero/extensions.hpp"
#include "calogero/spectral.hpp"

namespace calogero::cli {

enum class Format { Json, Csv };

struct RunConfig {
    std::string command;
    double alpha = 0.0;
    std::string extension = "none";  // none, lambda, theta, mu
    std::string lambda_text;         // as given: number, inf or -inf
    std::string theta_text;          // number, optionally with suffix pi
    double mu = 0.0;
    std::string sign;  // plus or minus, R2 only
    double k0 = 1.0;
    std::optional<LevelWindow> window;
    int x_nodes = 4000;
    int e_nodes = 2000;
    double X = 0.0;      // 0: default extent
    double E_max = 0.0;  // 0: default
    double density_lo = 0.01, density_hi = 100.0;  // in units of k0^2
    int density_points = 41;
    std::optional<double> threshold_override;
    std::uint64_t seed = 1;
    Format format = Format::Json;
    std::string output_dir;
    std::string input_file;
    std::string expression;
};

// CALOGERO_OUTPUT_DIR supplies output_dir when --output-dir is absent
inline constexpr const char* kOutputDirEnv = "CALOGERO_OUTPUT_DIR";
inline constexpr const char* kBuiltinFunction = "x^(3/2)*exp(-x)";

enum ExitCode { Ok = 0, ChecksFailed = 1, Usage = 2, BadInput = 3, Numerical = 4 };

// parses args (without the program name); UsageError on bad flags
RunConfig parse_args(const std::vector<std::string>& args);
ExtensionSpec resolve_spec(const RunConfig& c);

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// two-column "x value" file; blank lines and # comments are skipped
struct Samples {
    std::vector<double> x, y;
};
Samples read_samples(std::istream& in);

}  // namespace calogero::cli
