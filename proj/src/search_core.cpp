#include "search_core.hpp"

#include <algorithm>

namespace rbtri::detail
{
    namespace
    {
        struct SmallBlossom
        {
            int n;
            std::array<VertexSet, 64> adj{};
            std::array<int, 64> & mate;
            std::array<int, 64> parent{}, base{}, queue{};
            VertexSet in_queue = 0, in_blossom = 0;

            auto lca(int a, int b) -> int
            {
                VertexSet used = 0;
                while (true) {
                    a = base[a];
                    used |= bit(a);
                    if (mate[a] == -1)
                        break;
                    a = parent[mate[a]];
                }
                while (true) {
                    b = base[b];
                    if (used & bit(b))
                        return b;
                    b = parent[mate[b]];
                }
            }

            void mark_path(int v, int b, int child)
            {
                while (base[v] != b) {
                    in_blossom |= bit(base[v]) | bit(base[mate[v]]);
                    parent[v] = child;
                    child = mate[v];
                    v = parent[mate[v]];
                }
            }

            auto find_path(int root) -> int
            {
                for (int i = 0; i < n; ++i) {
                    parent[i] = -1;
                    base[i] = i;
                }
                int head = 0, tail = 0;
                queue[tail++] = root;
                in_queue = bit(root);
                while (head < tail) {
                    int v = queue[head++];
                    for (VertexSet nb = adj[v]; nb; nb &= nb - 1) {
                        int to = lowest(nb);
                        if (base[v] == base[to] || mate[v] == to)
                            continue;
                        if (to == root || (mate[to] != -1 && parent[mate[to]] != -1)) {
                            int cur = lca(v, to);
                            in_blossom = 0;
                            mark_path(v, cur, to);
                            mark_path(to, cur, v);
                            for (int i = 0; i < n; ++i)
                                if (in_blossom & bit(base[i])) {
                                    base[i] = cur;
                                    if (! (in_queue & bit(i))) {
                                        in_queue |= bit(i);
                                        queue[tail++] = i;
                                    }
                                }
                        }
                        else if (parent[to] == -1) {
                            parent[to] = v;
                            if (mate[to] == -1)
                                return to;
                            in_queue |= bit(mate[to]);
                            queue[tail++] = mate[to];
                        }
                    }
                }
                return -1;
            }
        };
    }

    auto small_matching(int n, std::span<const VertexSet> edges, EdgeMask subset, std::array<int, 64> & mate) -> int
    {
        SmallBlossom b{n, {}, mate};
        for (int i = 0; i < n; ++i)
            mate[i] = -1;
        int size = 0;
        for (EdgeMask s = subset; s; s &= s - 1) {
            VertexSet m = edges[lowest(s)];
            int u = lowest(m), v = lowest(m & (m - 1));
            b.adj[u] |= bit(v);
            b.adj[v] |= bit(u);
            if (mate[u] == -1 && mate[v] == -1) {
                mate[u] = v;
                mate[v] = u;
                ++size;
            }
        }
        for (int root = 0; root < n; ++root)
            if (mate[root] == -1 && b.adj[root]) {
                int v = b.find_path(root);
                if (v == -1)
                    continue;
                ++size;
                while (v != -1) {
                    int pv = b.parent[v], ppv = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = ppv;
                }
            }
        return size;
    }

    auto small_matching_number(int n, std::span<const VertexSet> edges, EdgeMask subset) -> int
    {
        std::array<int, 64> mate;
        return small_matching(n, edges, subset, mate);
    }

    auto rainbow_extends(const VertexSet * masks, const int * classes, int count, int need,
            VertexSet blocked, std::uint64_t blocked_classes) -> bool
    {
        if (need <= 0)
            return true;
        for (int i = 0; i + need <= count; ++i) {
            if ((masks[i] & blocked) || (blocked_classes >> classes[i] & 1))
                continue;
            if (need == 1)
                return true;
            if (rainbow_extends(masks + i + 1, classes + i + 1, count - i - 1, need - 1,
                        blocked | masks[i], blocked_classes | (std::uint64_t{1} << classes[i])))
                return true;
        }
        return false;
    }
}
