#include <rbtri/errors.hpp>
#include <rbtri/graph6.hpp>
#include <rbtri/store.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace rbtri
{
    auto resolve_cache_dir(const std::optional<std::string> & explicit_dir) -> fs::path
    {
        if (explicit_dir && ! explicit_dir->empty())
            return *explicit_dir;
        if (const char * env = std::getenv("RBTRI_CACHE"); env && *env)
            return env;
        return ".rbtri-cache";
    }

    auto meta_path_for(const fs::path & file) -> fs::path
    {
        auto p = file;
        p.replace_extension(".meta.json");
        return p;
    }

    void write_class_file(const fs::path & file, int n, std::span<const Triangulation> ts)
    {
        if (file.has_parent_path())
            fs::create_directories(file.parent_path());
        // write to temporaries first so a reader never sees half a class
        auto tmp = file;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            if (! out)
                throw Error("cannot write " + file.string());
            for (auto & t : ts)
                out << to_graph6(t.graph()) << '\n';
            if (! out)
                throw Error("cannot write " + file.string());
        }
        auto meta = meta_path_for(file);
        auto meta_tmp = meta;
        meta_tmp += ".tmp";
        {
            nlohmann::ordered_json j;
            j["n"] = n;
            j["count"] = ts.size();
            j["generator_version"] = generator_version;
            std::ofstream out(meta_tmp);
            out << j.dump() << '\n';
            if (! out)
                throw Error("cannot write " + meta.string());
        }
        fs::rename(tmp, file);
        fs::rename(meta_tmp, meta);
    }

    auto read_class_file(const fs::path & file, int n) -> std::optional<std::vector<Triangulation>>
    {
        auto meta = meta_path_for(file);
        if (! fs::exists(file) || ! fs::exists(meta))
            return std::nullopt;
        nlohmann::json j;
        try {
            std::ifstream in(meta);
            j = nlohmann::json::parse(in);
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError(meta.string() + ": " + e.what());
        }
        if (j.value("generator_version", std::string{}) != generator_version)
            return std::nullopt;
        if (j.value("n", -1) != n)
            throw ParseError(meta.string() + ": n does not match");
        std::size_t count = j.value("count", std::size_t{0});

        std::vector<Triangulation> ts;
        std::ifstream in(file);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            auto g = from_graph6(line);
            if (g.order() != n)
                throw ParseError(file.string() + ": graph of order " + std::to_string(g.order()));
            ts.push_back(Triangulation::from_graph(g));
        }
        if (ts.size() != count)
            throw ParseError(file.string() + ": expected " + std::to_string(count) + " graphs, found "
                + std::to_string(ts.size()));
        return ts;
    }

    auto TriangulationCache::file_for(int n) const -> fs::path
    {
        return _dir / ("T" + std::to_string(n) + ".g6");
    }

    auto TriangulationCache::load_or_generate(int n, const GenerateOptions & options) -> std::vector<Triangulation>
    {
        _last_hit = false;
        try {
            if (auto ts = read_class_file(file_for(n), n)) {
                _last_hit = true;
                return std::move(*ts);
            }
        }
        catch (const ParseError &) {
            // a damaged cache entry is regenerated
        }
        auto ts = generate(n, options);
        try {
            write_class_file(file_for(n), n, ts);
        }
        catch (const std::exception &) {
        }
        return ts;
    }

    auto fnv1a64(std::string_view data, std::uint64_t seed) -> std::uint64_t
    {
        std::uint64_t h = seed;
        for (unsigned char c : data) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    auto hex64(std::uint64_t x) -> std::string
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
        return buf;
    }

    auto ResultRecord::to_json_line() const -> std::string
    {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["arguments"] = arguments;
        j["inputs_hash"] = inputs_hash;
        j["outputs"] = outputs;
        j["exit_code"] = exit_code;
        j["generator_version"] = generator_version;
        j["engine_version"] = engine_version;
        j["budget_nodes"] = budget_nodes;
        return j.dump();
    }

    auto ResultRecord::from_json_line(std::string_view line) -> ResultRecord
    {
        try {
            auto j = nlohmann::json::parse(line);
            ResultRecord r;
            r.command = j.at("command").get<std::string>();
            r.arguments = j.at("arguments").get<std::vector<std::string>>();
            r.inputs_hash = j.at("inputs_hash").get<std::string>();
            r.outputs = j.at("outputs").get<std::string>();
            r.exit_code = j.at("exit_code").get<int>();
            r.generator_version = j.at("generator_version").get<std::string>();
            r.engine_version = j.at("engine_version").get<std::string>();
            r.budget_nodes = j.at("budget_nodes").get<std::uint64_t>();
            return r;
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError(std::string("ledger record: ") + e.what());
        }
    }

    void append_record(const fs::path & ledger, const ResultRecord & record)
    {
        if (ledger.has_parent_path())
            fs::create_directories(ledger.parent_path());
        std::ofstream out(ledger, std::ios::app);
        out << record.to_json_line() << '\n';
        if (! out)
            throw Error("cannot append to " + ledger.string());
    }

    auto read_records(const fs::path & ledger) -> std::vector<ResultRecord>
    {
        std::ifstream in(ledger);
        if (! in)
            throw Error("cannot read " + ledger.string());
        std::vector<ResultRecord> out;
        std::string line;
        while (std::getline(in, line))
            if (! line.empty())
                out.push_back(ResultRecord::from_json_line(line));
        return out;
    }
}
