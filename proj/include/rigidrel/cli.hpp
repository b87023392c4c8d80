#ifndef RIGIDREL_CLI_HPP
#define RIGIDREL_CLI_HPP

// Command-line front end. Exit codes are uniform: 0 the property holds,
// 1 it fails, 2 usage, input or capacity error. Standard output carries
// machine-readable data only; diagnostics go to standard error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rigidrel/io.hpp"
#include "rigidrel/kernel.hpp"

namespace rigidrel
{

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitError = 2;

/// Exhaustive classification needs k^h <= 16.
inline constexpr Rank kClassifyMaxTuples = 16;

struct ClassificationRecord
{
    int k = 0;
    int h = 0;
    int ell = 0;
    std::uint64_t relation_rank = 0;
    bool verdict = false;
    std::optional<PartialUnaryFn> failing_function;
    std::optional<std::int64_t> elapsed_micros;
};

Json record_to_json(const ClassificationRecord & r);

struct ClassifyOptions
{
    int k = 2;
    int h = 2;
    int ell = 2;
    unsigned jobs = 1;
    std::uint64_t resume_from = 1;
    bool timing = false;
};

/// One record per nonempty relation with rank >= resume_from, in rank order.
std::vector<ClassificationRecord> classify(const ClassifyOptions & opts);

void write_jsonl(std::ostream & out, const std::vector<ClassificationRecord> & records);
std::string summary_csv(const ClassifyOptions & opts, const std::vector<ClassificationRecord> & records);

/// Parses `args` (without the program name) and runs one subcommand.
int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace rigidrel

#endif
