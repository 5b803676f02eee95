#include "rsn/sampler.hpp"

#include <cstdio>
#include <fstream>
#include <new>
#include <stdexcept>
#include <system_error>

#include <nlohmann/json.hpp>

#include "rsn/eg.hpp"
#include "rsn/parallel.hpp"
#include "rsn/tableau.hpp"

namespace rsn {

SortingNetwork sample_uniform(int n, Stream& rng) {
    return eg_inverse(hook_walk_sample(StaircaseShape{n}, rng));
}

SortingNetwork sample_indexed(int n, std::uint64_t seed, std::uint64_t index) {
    Stream rng{seed, index};
    return sample_uniform(n, rng);
}

void for_each_sample(int n, std::int64_t count, std::uint64_t seed, int workers,
                     const std::function<void(BatchItem&&)>& sink) {
    if (count < 1) throw std::invalid_argument("batch count must be >= 1");
    if (workers <= 0) workers = default_workers();
    const std::int64_t chunk = workers;
    std::vector<BatchItem> slots(static_cast<std::size_t>(chunk));
    for (std::int64_t base = 0; base < count; base += chunk) {
        const std::int64_t end = std::min(count, base + chunk);
        parallel_for(base, end, workers, [&](std::int64_t i) {
            auto& slot = slots[static_cast<std::size_t>(i - base)];
            slot = BatchItem{i, std::nullopt, {}};
            try {
                slot.network = sample_indexed(n, seed, static_cast<std::uint64_t>(i));
            } catch (const std::bad_alloc&) {
                slot.error = "out of memory";
            }
        });
        for (std::int64_t i = base; i < end; ++i) sink(std::move(slots[static_cast<std::size_t>(i - base)]));
    }
}

std::vector<SortingNetwork> sample_batch(int n, std::int64_t count, std::uint64_t seed, int workers) {
    std::vector<SortingNetwork> out;
    out.reserve(static_cast<std::size_t>(count));
    for_each_sample(n, count, seed, workers, [&](BatchItem&& item) {
        if (!item.network) {
            throw std::runtime_error("sample " + std::to_string(item.index) + " failed: " + item.error);
        }
        out.push_back(std::move(*item.network));
    });
    return out;
}

std::string batch_file_name(std::int64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "net_%06lld.sortnet", static_cast<long long>(index));
    return buf;
}

std::string manifest_json(const BatchManifest& m) {
    nlohmann::ordered_json j;
    j["format_version"] = m.format_version;
    j["generator"] = std::string{"rsn "} + RSN_VERSION;
    j["n"] = m.n;
    j["count"] = m.count;
    j["seed"] = m.seed;
    j["rng"] = "xoshiro256** per index, key mix64(seed) ^ mix64(index ^ 0xD1B54A32D192ED03)";
    j["files"] = m.files;
    if (!m.errors.empty()) j["errors"] = m.errors;
    return j.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os{path, std::ios::binary};
    if (!os) {
        throw std::filesystem::filesystem_error("cannot open for writing", path,
                                                std::make_error_code(std::errc::io_error));
    }
    os << text;
    if (!os) {
        throw std::filesystem::filesystem_error("write failed", path,
                                                std::make_error_code(std::errc::io_error));
    }
}

}  // namespace

BatchManifest write_batch(const std::filesystem::path& out_dir, int n, std::int64_t count,
                          std::uint64_t seed, int workers) {
    std::filesystem::create_directories(out_dir);
    BatchManifest manifest;
    manifest.n = n;
    manifest.count = count;
    manifest.seed = seed;
    for_each_sample(n, count, seed, workers, [&](BatchItem&& item) {
        const std::string name = batch_file_name(item.index);
        if (!item.network) {
            manifest.errors.push_back(name + ": " + item.error);
            return;
        }
        std::ofstream os{out_dir / name, std::ios::binary};
        write_network(os, *item.network);
        if (!os) {
            throw std::filesystem::filesystem_error("write failed", out_dir / name,
                                                    std::make_error_code(std::errc::io_error));
        }
        manifest.files.push_back(name);
    });
    write_file(out_dir / "manifest.json", manifest_json(manifest));
    return manifest;
}

}  // namespace rsn
