#include <rbtri/planarity.hpp>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

#include <map>

namespace rbtri
{
    namespace
    {
        using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
              boost::property<boost::vertex_index_t, int>, boost::property<boost::edge_index_t, int>>;
        using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;
    }

    auto planar_embedding(const Graph & g) -> std::optional<RotationSystem>
    {
        BoostGraph bg(g.order());
        for (auto e : g.edges())
            boost::add_edge(e.u, e.v, bg);

        auto edge_index = boost::get(boost::edge_index, bg);
        int count = 0;
        for (auto [it, end] = boost::edges(bg); it != end; ++it)
            boost::put(edge_index, *it, count++);

        using EmbeddingStorage = std::vector<std::vector<BoostEdge>>;
        EmbeddingStorage storage(boost::num_vertices(bg));
        auto embedding = boost::make_iterator_property_map(storage.begin(), boost::get(boost::vertex_index, bg));

        if (! boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                    boost::boyer_myrvold_params::embedding = embedding))
            return std::nullopt;

        RotationSystem rot;
        rot.order.resize(g.order());
        for (int v = 0; v < g.order(); ++v)
            for (auto & e : storage[v]) {
                int s = static_cast<int>(boost::source(e, bg)), t = static_cast<int>(boost::target(e, bg));
                rot.order[v].push_back(s == v ? t : s);
            }
        return rot;
    }

    auto is_planar(const Graph & g) -> bool
    {
        // Euler shortcut; the embedding call handles everything else
        if (g.order() >= 3 && g.size() > 3 * g.order() - 6)
            return false;
        return planar_embedding(g).has_value();
    }

    auto is_maximal_planar(const Graph & g) -> bool
    {
        if (g.order() < 3)
            throw InvalidArgument("maximal planarity needs n >= 3");
        return g.size() == 3 * g.order() - 6 && is_connected(g) && is_planar(g);
    }

    auto faces_of(const RotationSystem & rot) -> std::vector<std::vector<int>>
    {
        int n = static_cast<int>(rot.order.size());
        // successor of u in v's rotation
        std::vector<std::map<int, int>> next(n);
        for (int v = 0; v < n; ++v) {
            auto & r = rot.order[v];
            for (std::size_t i = 0; i < r.size(); ++i)
                next[v][r[i]] = r[(i + 1) % r.size()];
        }

        std::map<std::pair<int, int>, bool> used;
        std::vector<std::vector<int>> result;
        for (int u = 0; u < n; ++u)
            for (int v : rot.order[u]) {
                if (used[{u, v}])
                    continue;
                std::vector<int> face;
                int a = u, b = v;
                while (! used[{a, b}]) {
                    used[{a, b}] = true;
                    face.push_back(a);
                    int c = next[b].at(a);
                    a = b;
                    b = c;
                }
                result.push_back(std::move(face));
            }
        return result;
    }
}
