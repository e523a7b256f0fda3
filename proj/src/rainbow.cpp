#include <rbtri/graph6.hpp>
#include <rbtri/rainbow.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace rbtri
{
    EdgeColoring::EdgeColoring(Graph host, std::vector<int> colors) :
        _host(std::move(host)), _colors(std::move(colors))
    {
        if (static_cast<int>(_colors.size()) != _host.size())
            throw InvalidArgument("coloring must assign a colour to every edge ("
                    + std::to_string(_host.size()) + " edges, " + std::to_string(_colors.size()) + " colours)");
        int c = 0;
        for (int x : _colors) {
            if (x < 1)
                throw InvalidArgument("colors must be 1-based contiguous");
            c = std::max(c, x);
        }
        std::vector<bool> used(c + 1, false);
        for (int x : _colors)
            used[x] = true;
        for (int x = 1; x <= c; ++x)
            if (! used[x])
                throw InvalidArgument("colors must be 1-based contiguous (colour " + std::to_string(x) + " unused)");
        _num_colors = c;
    }

    auto EdgeColoring::all_distinct(const Graph & host) -> EdgeColoring
    {
        std::vector<int> cs(host.size());
        for (int i = 0; i < host.size(); ++i)
            cs[i] = i + 1;
        return EdgeColoring(host, cs);
    }

    auto EdgeColoring::monochromatic(const Graph & host) -> EdgeColoring
    {
        return EdgeColoring(host, std::vector<int>(host.size(), 1));
    }

    auto EdgeColoring::classes() const -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> result(_num_colors);
        for (int i = 0; i < static_cast<int>(_colors.size()); ++i)
            result[_colors[i] - 1].push_back(i);
        return result;
    }

    auto EdgeColoring::canonical() const -> EdgeColoring
    {
        std::vector<int> rename(_num_colors + 1, 0), cs(_colors.size());
        int next = 0;
        for (std::size_t i = 0; i < _colors.size(); ++i) {
            if (! rename[_colors[i]])
                rename[_colors[i]] = ++next;
            cs[i] = rename[_colors[i]];
        }
        return EdgeColoring(_host, cs);
    }

    auto EdgeColoring::merge(int a, int b) const -> EdgeColoring
    {
        if (a < 1 || b < 1 || a > _num_colors || b > _num_colors || a == b)
            throw InvalidArgument("merge needs two distinct existing colours");
        std::vector<int> cs(_colors);
        for (auto & x : cs) {
            if (x == b)
                x = a;
            if (x > b)
                --x;
        }
        return EdgeColoring(_host, cs);
    }

    namespace
    {
        struct RainbowSearch
        {
            const EdgeColoring & col;
            int target;
            std::vector<char> color_used;
            std::vector<Edge> current, best;
            bool stop_at_target;

            void search(int from, VertexSet used, int colors_left)
            {
                if (static_cast<int>(current.size()) > static_cast<int>(best.size()))
                    best = current;
                if (stop_at_target && static_cast<int>(best.size()) >= target)
                    return;
                int size = static_cast<int>(current.size());
                int free_vertices = col.host().order() - popcount(used);
                if (size + std::min(colors_left, free_vertices / 2) <= static_cast<int>(best.size()))
                    return;
                auto & g = col.host();
                for (int i = from; i < g.size(); ++i) {
                    auto e = g.edge(i);
                    int c = col.color_of(i);
                    if ((used & e.mask()) || color_used[c])
                        continue;
                    color_used[c] = 1;
                    current.push_back(e);
                    search(i + 1, used | e.mask(), colors_left - 1);
                    current.pop_back();
                    color_used[c] = 0;
                    if (stop_at_target && static_cast<int>(best.size()) >= target)
                        return;
                }
            }
        };

        void check_witness(const EdgeColoring & col, const std::vector<Edge> & m)
        {
            VertexSet used = 0;
            std::vector<bool> seen(col.num_colors() + 1, false);
            for (auto e : m) {
                int idx = col.host().edge_index(e.u, e.v);
                int c = idx < 0 ? 0 : col.color_of(idx);
                if (idx < 0 || (used & e.mask()) || seen[c])
                    throw Error("internal error: rainbow matching witness failed re-verification");
                used |= e.mask();
                seen[c] = true;
            }
        }
    }

    auto max_rainbow_matching(const EdgeColoring & col) -> RainbowMatching
    {
        RainbowSearch s{col, 0, std::vector<char>(col.num_colors() + 1, 0), {}, {}, false};
        s.search(0, 0, col.num_colors());
        check_witness(col, s.best);
        return {static_cast<int>(s.best.size()), s.best};
    }

    auto find_rainbow_matching(const EdgeColoring & col, int k) -> std::optional<std::vector<Edge>>
    {
        if (k < 1)
            throw InvalidArgument("k must be at least 1");
        RainbowSearch s{col, k, std::vector<char>(col.num_colors() + 1, 0), {}, {}, true};
        s.search(0, 0, col.num_colors());
        if (static_cast<int>(s.best.size()) < k)
            return std::nullopt;
        s.best.resize(k);
        check_witness(col, s.best);
        return s.best;
    }

    auto has_rainbow_matching(const EdgeColoring & col, int k) -> bool
    {
        return find_rainbow_matching(col, k).has_value();
    }

    auto smallest_edge_picker() -> Picker
    {
        return [](int, std::span<const int> class_edges) { return class_edges.front(); };
    }

    auto representative_subgraph(const EdgeColoring & col, const Picker & picker) -> Graph
    {
        std::vector<Edge> picked;
        auto classes = col.classes();
        for (int c = 0; c < col.num_colors(); ++c) {
            int idx = picker(c + 1, classes[c]);
            if (std::find(classes[c].begin(), classes[c].end(), idx) == classes[c].end())
                throw InvalidArgument("picker returned an edge outside colour class " + std::to_string(c + 1));
            picked.push_back(col.host().edge(idx));
        }
        return Graph(col.host().order(), picked);
    }

    auto verify_no_rainbow(const RainbowCertificate & cert) -> bool
    {
        if (cert.k < 1)
            throw InvalidCertificate("k must be at least 1");
        if (! (cert.coloring.host() == cert.graph))
            throw InvalidCertificate("coloring is not on the stated graph");
        // independent of any search: plain enumeration of k-matchings
        return ! find_rainbow_matching(cert.coloring, cert.k).has_value();
    }

    auto write_coloring(const EdgeColoring & col) -> std::string
    {
        std::ostringstream out;
        out << "c " << col.num_colors() << "\n";
        for (int i = 0; i < col.host().size(); ++i)
            out << col.host().edge(i).u << " " << col.host().edge(i).v << " " << col.color_of(i) << "\n";
        return out.str();
    }

    auto parse_coloring(const Graph & host, std::string_view text) -> EdgeColoring
    {
        std::istringstream in{std::string(text)};
        std::string tag;
        int c;
        if (! (in >> tag >> c) || tag != "c")
            throw ParseError("coloring: expected header 'c <num_colors>'");
        std::vector<int> colors(host.size(), 0);
        int u, v, x, lines = 0;
        while (in >> u) {
            if (! (in >> v >> x))
                throw ParseError("coloring: truncated line");
            if (u < 0 || v < 0 || u >= host.order() || v >= host.order() || u == v)
                throw ParseError("coloring: vertex out of range in line " + std::to_string(lines + 1));
            int idx = host.edge_index(u, v);
            if (idx < 0)
                throw ParseError("coloring: " + std::to_string(u) + " " + std::to_string(v) + " is not an edge");
            if (colors[idx])
                throw ParseError("coloring: edge " + std::to_string(u) + " " + std::to_string(v) + " coloured twice");
            if (x < 1 || x > c)
                throw ParseError("colors must be 1-based contiguous");
            colors[idx] = x;
            ++lines;
        }
        if (! in.eof())
            throw ParseError("coloring: unexpected token");
        if (lines != host.size())
            throw ParseError("coloring: " + std::to_string(host.size() - lines) + " edges left uncoloured");
        try {
            EdgeColoring col(host, colors);
            if (col.num_colors() != c)
                throw ParseError("colors must be 1-based contiguous (header says " + std::to_string(c) + ")");
            return col;
        }
        catch (const InvalidArgument & e) {
            throw ParseError(e.what());
        }
    }

    auto certificate_to_json(const RainbowCertificate & cert) -> std::string
    {
        nlohmann::ordered_json j;
        j["graph6"] = to_graph6(cert.graph);
        j["coloring"] = write_coloring(cert.coloring);
        j["k"] = cert.k;
        j["colors"] = cert.colors();
        j["verdict"] = RainbowCertificate::verdict;
        return j.dump();
    }

    auto certificate_from_json(std::string_view json, const std::string & base_dir) -> RainbowCertificate
    {
        try {
            auto j = nlohmann::json::parse(json);
            auto graph = from_graph6(j.at("graph6").get<std::string>());
            std::string coloring_text;
            if (j.contains("coloring"))
                coloring_text = j.at("coloring").get<std::string>();
            else {
                auto path = j.at("coloring_path").get<std::string>();
                if (! path.starts_with("/"))
                    path = base_dir + "/" + path;
                std::ifstream in(path);
                if (! in)
                    throw InvalidCertificate("cannot open coloring file " + path);
                coloring_text.assign(std::istreambuf_iterator<char>(in), {});
            }
            auto coloring = parse_coloring(graph, coloring_text);
            int k = j.at("k").get<int>();
            if (j.contains("colors") && j.at("colors").get<int>() != coloring.num_colors())
                throw InvalidCertificate("stated colour count does not match the coloring");
            if (j.contains("verdict") && j.at("verdict").get<std::string>() != RainbowCertificate::verdict)
                throw InvalidCertificate("unknown verdict");
            if (k < 1)
                throw InvalidCertificate("k must be at least 1");
            return RainbowCertificate{graph, coloring, k};
        }
        catch (const InvalidCertificate &) {
            throw;
        }
        catch (const std::exception & e) {
            throw InvalidCertificate(e.what());
        }
    }
}
