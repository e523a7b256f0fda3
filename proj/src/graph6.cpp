#include <rbtri/graph6.hpp>

#include <cctype>
#include <sstream>

namespace rbtri
{
    namespace
    {
        constexpr int bias = 63;

        auto trim(std::string_view s) -> std::string_view
        {
            while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.remove_prefix(1);
            while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.remove_suffix(1);
            return s;
        }
    }

    auto to_graph6(const Graph & g) -> std::string
    {
        int n = g.order();
        std::string out;
        if (n <= 62)
            out.push_back(static_cast<char>(n + bias));
        else {
            out.push_back(126);
            for (int shift = 12; shift >= 0; shift -= 6)
                out.push_back(static_cast<char>(((n >> shift) & 63) + bias));
        }

        int acc = 0, filled = 0;
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
                if (++filled == 6) {
                    out.push_back(static_cast<char>(acc + bias));
                    acc = filled = 0;
                }
            }
        if (filled > 0)
            out.push_back(static_cast<char>((acc << (6 - filled)) + bias));
        return out;
    }

    auto from_graph6(std::string_view line) -> Graph
    {
        line = trim(line);
        if (line.starts_with(">>graph6<<"))
            line.remove_prefix(10);
        if (line.empty())
            throw ParseError("graph6: empty input");
        for (char c : line)
            if (c < 63 || c > 126)
                throw ParseError("graph6: byte out of range");

        std::size_t pos = 0;
        int n;
        if (line[0] != 126)
            n = line[pos++] - bias;
        else {
            if (line.size() < 4 || line[1] == 126)
                throw ParseError("graph6: unsupported order encoding");
            n = 0;
            for (pos = 1; pos < 4; ++pos)
                n = (n << 6) | (line[pos] - bias);
        }
        if (n > max_order)
            throw ParseError("graph6: order " + std::to_string(n) + " exceeds " + std::to_string(max_order));

        std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
        std::size_t expected = (bits + 5) / 6;
        if (line.size() - pos != expected)
            throw ParseError("graph6: expected " + std::to_string(expected) + " data bytes, got " + std::to_string(line.size() - pos));

        std::vector<Edge> es;
        std::size_t k = 0;
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i, ++k) {
                int byte = line[pos + k / 6] - bias;
                if (byte >> (5 - k % 6) & 1)
                    es.push_back({i, j});
            }
        for (; k < expected * 6; ++k)
            if ((line[pos + k / 6] - bias) >> (5 - k % 6) & 1)
                throw ParseError("graph6: nonzero padding bits");
        return Graph(n, es);
    }

    auto to_edge_list_text(const Graph & g) -> std::string
    {
        std::ostringstream out;
        out << g.order() << "\n";
        for (auto e : g.edges())
            out << e.u << " " << e.v << "\n";
        return out.str();
    }

    auto from_edge_list_text(std::string_view text) -> Graph
    {
        std::istringstream in{std::string(text)};
        int n;
        if (! (in >> n))
            throw ParseError("edge list: missing vertex count");
        if (n < 0 || n > max_order)
            throw ParseError("edge list: vertex count out of range");
        std::vector<Edge> es;
        int u, v;
        while (in >> u) {
            if (! (in >> v))
                throw ParseError("edge list: dangling endpoint");
            if (u < 0 || v < 0 || u >= n || v >= n || u == v)
                throw ParseError("edge list: bad edge " + std::to_string(u) + " " + std::to_string(v));
            es.push_back(make_edge(u, v));
        }
        if (! in.eof())
            throw ParseError("edge list: unexpected token");
        return Graph(n, es);
    }

    auto parse_graph(std::string_view text) -> Graph
    {
        auto t = trim(text);
        if (! t.empty() && std::isdigit(static_cast<unsigned char>(t.front())))
            return from_edge_list_text(t);
        return from_graph6(t);
    }
}
