#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dwbc/correlators.hpp"

namespace dwbc {

// Deterministic parameter generation. Uniform doubles are built directly
// from mt19937_64 output bits ((word >> 11) * 2^-53) so the stream is
// identical across standard libraries.
class ParamSampler {
 public:
  explicit ParamSampler(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi);

  // n values in [lo, hi] with pairwise separation >= min_sep, drawn by
  // rejection. Throws ValidationError if the constraint cannot be met.
  std::vector<Complex> rapidities(int n, double lo = 0.05, double hi = 0.95,
                                  double min_sep = 0.02);

  Complex lambda(double lo = 0.3, double hi = 1.5);

 private:
  std::mt19937_64 eng_;
};

// Derive independent stream seeds from a base seed and a few tags.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag1,
                       std::uint64_t tag2 = 0, std::uint64_t tag3 = 0);

struct RunConfig {
  std::optional<Complex> lambda;  // pinned when set, otherwise drawn
  std::vector<Complex> x, y;      // explicit values win over generation
  std::uint64_t seed = 1;
  int n = 3;
  double tolerance = 1e-9;
  int enumeration_cap = kDefaultEnumerationCap;
  bool oracle = false;
  bool json_output = false;
  bool all_rows = false;
  int case_id = 0;
  int r = 0;
  int r2 = 0;
  int col = 0;
  long trials = 1000;
};

// JSON config file: keys lambda, x, y, seed, n, tolerance,
// enumeration_cap, trials. Complex numbers are [re, im] or plain numbers.
// Unknown keys are a ValidationError, malformed JSON a ParseError.
RunConfig parse_config(const std::string& path);

// Explicit x/y/lambda from the config win; anything missing is drawn
// deterministically from the seed (order: x, then y, then lambda).
ModelParams resolve_params(const RunConfig& cfg, int n);

// One computed quantity: name, value, optional oracle value + relative
// deviation, status OK / SKIPPED / FAIL.
struct ResultRecord {
  std::string name;
  Complex value{0.0, 0.0};
  std::optional<Complex> oracle_value;
  std::optional<double> deviation;
  std::string status = "OK";
};

// cmd is one of: partition, onepoint, twopoint, ybe-check, count, verify.
// Human-readable or JSON report on `out`; wall-clock timing goes to `err`
// only, so `out` is byte-identical across runs with the same inputs.
// Returns the process exit code: 0 ok, 1 verification failure, 2 usage,
// 3 degenerate parameters.
int run_command(const std::string& cmd, const RunConfig& cfg,
                std::ostream& out, std::ostream& err);

struct VerifySummary {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
};

// Run the full acceptance battery (criteria C1..C9) at pinned tolerances,
// one PASS/FAIL line per criterion on `out`.
VerifySummary verify_suite(const RunConfig& cfg, std::ostream& out,
                           std::ostream& err);

// %.15g-based stable formatting used for all numeric output.
std::string format_double(double v);
std::string format_complex(const Complex& z);

// FNV-1a 64 digest of the canonical input encoding (command, lambda, x, y,
// flags); hex string, used to tag result records.
std::string input_digest(const std::string& cmd, const RunConfig& cfg,
                         const ModelParams& params);

}  // namespace dwbc
