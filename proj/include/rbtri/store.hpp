#pragma once

#include <rbtri/triangulation.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rbtri
{
    /// Explicit directory, else $RBTRI_CACHE, else ./.rbtri-cache.
    auto resolve_cache_dir(const std::optional<std::string> & explicit_dir) -> std::filesystem::path;

    /// Writes one graph6 line per triangulation to `file` and the sidecar
    /// <stem>.meta.json with {n, count, generator_version}.
    void write_class_file(const std::filesystem::path & file, int n, std::span<const Triangulation> ts);

    auto meta_path_for(const std::filesystem::path & file) -> std::filesystem::path;

    /// Reads a class file back. Returns nothing when either file is missing
    /// or the sidecar was written by a different generator version; throws
    /// ParseError when the contents are inconsistent.
    auto read_class_file(const std::filesystem::path & file, int n) -> std::optional<std::vector<Triangulation>>;

    /// Cache of T_n as <dir>/Tn.g6.
    class TriangulationCache
    {
    public:
        explicit TriangulationCache(std::filesystem::path dir) :
            _dir(std::move(dir))
        {
        }

        auto dir() const -> const std::filesystem::path & { return _dir; }
        auto file_for(int n) const -> std::filesystem::path;

        /// Cached class if valid, otherwise generates and (best effort) stores it.
        auto load_or_generate(int n, const GenerateOptions & options = {}) -> std::vector<Triangulation>;

        /// Whether the last load_or_generate call was served from disk.
        auto last_hit() const -> bool { return _last_hit; }

    private:
        std::filesystem::path _dir;
        bool _last_hit = false;
    };

    auto fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL) -> std::uint64_t;
    auto hex64(std::uint64_t x) -> std::string;

    /// One ledger line. No timestamps, so equal runs give equal records.
    struct ResultRecord
    {
        std::string command;
        std::vector<std::string> arguments;
        std::string inputs_hash;
        std::string outputs;
        int exit_code = 0;
        std::string generator_version;
        std::string engine_version;
        std::uint64_t budget_nodes = 0;

        auto to_json_line() const -> std::string;
        static auto from_json_line(std::string_view line) -> ResultRecord;
    };

    void append_record(const std::filesystem::path & ledger, const ResultRecord & record);
    auto read_records(const std::filesystem::path & ledger) -> std::vector<ResultRecord>;

    inline constexpr const char * engine_version = "rbtri-engine-1";
}
