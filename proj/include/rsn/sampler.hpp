// Exactly uniform sorting networks: a uniform staircase tableau from the hook
// walk, mapped through the inverse Edelman-Greene bijection.

#ifndef RSN_SAMPLER_HPP
#define RSN_SAMPLER_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rsn/core.hpp"
#include "rsn/rng.hpp"

namespace rsn {

SortingNetwork sample_uniform(int n, Stream& rng);

/// Network number `index` of the batch keyed by `seed`; uses Stream(seed, index).
SortingNetwork sample_indexed(int n, std::uint64_t seed, std::uint64_t index);

struct BatchItem {
    std::int64_t index = 0;
    std::optional<SortingNetwork> network;
    std::string error;  ///< set when generation failed (e.g. out of memory)
};

/// Generates networks 0..count-1 and hands them to `sink` in index order.
/// At most `workers` networks are held in memory at once.
void for_each_sample(int n, std::int64_t count, std::uint64_t seed, int workers,
                     const std::function<void(BatchItem&&)>& sink);

/// Whole batch in memory. Throws std::runtime_error if any item failed.
std::vector<SortingNetwork> sample_batch(int n, std::int64_t count, std::uint64_t seed,
                                         int workers = 0);

struct BatchManifest {
    int n = 0;
    std::int64_t count = 0;
    std::uint64_t seed = 0;
    int format_version = 1;
    std::vector<std::string> files;
    std::vector<std::string> errors;
};

/// File name of network `index` inside a batch directory.
std::string batch_file_name(std::int64_t index);

/// Streams a batch to `out_dir` (one network file per sample) and writes
/// manifest.json. Throws std::filesystem::filesystem_error on IO failure.
BatchManifest write_batch(const std::filesystem::path& out_dir, int n, std::int64_t count,
                          std::uint64_t seed, int workers);

std::string manifest_json(const BatchManifest& manifest);

}  // namespace rsn

#endif  // RSN_SAMPLER_HPP
