#include <rbtri/triangulation.hpp>

#include <algorithm>
#include <map>
#include <thread>
#include <unordered_map>

namespace rbtri
{
    namespace
    {
        auto dart_key(int n, int a, int b) -> int
        {
            return a * n + b;
        }
    }

    auto Triangulation::from_faces(int n, std::vector<Face> faces) -> Triangulation
    {
        if (n < 4 || n > max_order)
            throw InvalidArgument("triangulations need 4 <= n <= 64, got " + std::to_string(n));
        if (static_cast<int>(faces.size()) != 2 * n - 4)
            throw InvalidArgument("a triangulation on " + std::to_string(n) + " vertices has " + std::to_string(2 * n - 4) + " faces");

        std::vector<int> succ(static_cast<std::size_t>(n) * n, -1);
        std::vector<Edge> es;
        for (auto & f : faces) {
            for (int i = 0; i < 3; ++i) {
                int a = f[i], b = f[(i + 1) % 3], c = f[(i + 2) % 3];
                if (a < 0 || a >= n)
                    throw InvalidVertex("face vertex " + std::to_string(a) + " out of range");
                if (a == b || a == c)
                    throw InvalidArgument("degenerate face");
                // face (a, b, c): at b, c follows a
                auto & slot = succ[dart_key(n, b, a)];
                if (slot != -1)
                    throw InvalidArgument("dart " + std::to_string(a) + "->" + std::to_string(b) + " used by two faces");
                slot = c;
                if (a < b)
                    es.push_back({a, b});
            }
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if ((succ[dart_key(n, b, a)] == -1) != (succ[dart_key(n, a, b)] == -1))
                    throw InvalidArgument("faces do not close up along edge " + std::to_string(a) + "-" + std::to_string(b));

        Triangulation t;
        t._graph = Graph(n, es);
        if (t._graph.size() != 3 * n - 6)
            throw InvalidArgument("edge count is not 3n-6");
        if (! is_connected(t._graph))
            throw InvalidArgument("faces do not form a connected surface");

        t._rotation.order.resize(n);
        t._position.assign(static_cast<std::size_t>(n) * n, -1);
        for (int v = 0; v < n; ++v) {
            auto & r = t._rotation.order[v];
            int start = lowest(t._graph.neighbours(v)), u = start;
            do {
                t._position[dart_key(n, v, u)] = static_cast<std::int8_t>(r.size());
                r.push_back(u);
                u = succ[dart_key(n, v, u)];
            } while (u != start && static_cast<int>(r.size()) <= n);
            if (static_cast<int>(r.size()) != t._graph.degree(v))
                throw InvalidArgument("link of vertex " + std::to_string(v) + " is not a single cycle");
        }
        t._faces = std::move(faces);
        return t;
    }

    auto Triangulation::from_graph(const Graph & g) -> Triangulation
    {
        if (g.order() < 4 || ! is_maximal_planar(g))
            throw InvalidArgument("graph is not a plane triangulation on n >= 4 vertices");
        auto rot = planar_embedding(g);
        std::vector<Face> faces;
        for (auto & f : faces_of(*rot)) {
            if (f.size() != 3)
                throw Error("internal error: maximal planar embedding has a non-triangular face");
            faces.push_back({f[0], f[1], f[2]});
        }
        return from_faces(g.order(), std::move(faces));
    }

    auto Triangulation::successor(int v, int u) const -> int
    {
        auto & r = _rotation.order[v];
        int p = _position[dart_key(order(), v, u)];
        return r[(p + 1) % r.size()];
    }

    auto Triangulation::predecessor(int v, int u) const -> int
    {
        auto & r = _rotation.order[v];
        int p = _position[dart_key(order(), v, u)];
        return r[(p + r.size() - 1) % r.size()];
    }

    auto CanonicalCode::hex() const -> std::string
    {
        static const char digits[] = "0123456789abcdef";
        std::string out;
        for (unsigned char c : bytes) {
            out.push_back(digits[c >> 4]);
            out.push_back(digits[c & 15]);
        }
        return out;
    }

    auto CanonicalCode::from_hex(std::string_view hex) -> CanonicalCode
    {
        auto value = [](char c) -> int {
            if (c >= '0' && c <= '9')
                return c - '0';
            if (c >= 'a' && c <= 'f')
                return c - 'a' + 10;
            throw ParseError("bad hex digit in canonical code");
        };
        if (hex.size() % 2)
            throw ParseError("odd-length canonical code");
        CanonicalCode code;
        for (std::size_t i = 0; i < hex.size(); i += 2)
            code.bytes.push_back(static_cast<char>(value(hex[i]) * 16 + value(hex[i + 1])));
        return code;
    }

    auto canonical_form(const Triangulation & t) -> CanonicalCode
    {
        int n = t.order();
        std::string best, current;
        std::vector<int> number(n), from(n), queue;
        queue.reserve(n);

        for (int u = 0; u < n; ++u)
            for (int v : t.rotation().order[u])
                for (int forward = 0; forward < 2; ++forward) {
                    std::fill(number.begin(), number.end(), 0);
                    queue.clear();
                    current.clear();
                    current.push_back(static_cast<char>(n));
                    number[u] = 1;
                    from[u] = v;
                    queue.push_back(u);
                    int next = 2;
                    // 0 = tied with best so far, 1 = already larger
                    bool larger = false;
                    for (std::size_t qi = 0; qi < queue.size() && ! larger; ++qi) {
                        int w = queue[qi];
                        int y = from[w];
                        int deg = static_cast<int>(t.rotation().order[w].size());
                        for (int step = 0; step < deg + 1; ++step) {
                            char symbol;
                            if (step == deg)
                                symbol = 0;
                            else {
                                if (! number[y]) {
                                    number[y] = next++;
                                    from[y] = w;
                                    queue.push_back(y);
                                }
                                symbol = static_cast<char>(number[y]);
                                y = forward ? t.successor(w, y) : t.predecessor(w, y);
                            }
                            std::size_t at = current.size();
                            current.push_back(symbol);
                            if (! best.empty() && current.compare(0, at + 1, best, 0, at + 1) > 0) {
                                larger = true;
                                break;
                            }
                        }
                    }
                    if (! larger && (best.empty() || current < best))
                        best = current;
                }
        return CanonicalCode{best};
    }

    namespace
    {
        /// Removes the given faces (a disk with a simple boundary cycle and no
        /// interior vertex) and cones the boundary from a new vertex n.
        auto star_insert(const Triangulation & t, const std::vector<int> & removed, std::size_t expected) -> Triangulation
        {
            int n = t.order();
            auto & faces = t.faces();
            std::vector<std::pair<int, int>> darts;
            for (int fi : removed)
                for (int i = 0; i < 3; ++i)
                    darts.emplace_back(faces[fi][i], faces[fi][(i + 1) % 3]);
            std::vector<Face> result;
            for (std::size_t fi = 0; fi < faces.size(); ++fi)
                if (std::find(removed.begin(), removed.end(), static_cast<int>(fi)) == removed.end())
                    result.push_back(faces[fi]);
            std::size_t boundary = 0;
            for (auto [a, b] : darts)
                if (std::find(darts.begin(), darts.end(), std::pair{b, a}) == darts.end()) {
                    result.push_back({a, b, n});
                    ++boundary;
                }
            if (boundary != expected)
                throw Error("internal error: expansion site is not a disk");
            return Triangulation::from_faces(n + 1, std::move(result));
        }

        auto face_of_dart(const Triangulation & t, int a, int b) -> int
        {
            auto & faces = t.faces();
            for (std::size_t fi = 0; fi < faces.size(); ++fi)
                for (int i = 0; i < 3; ++i)
                    if (faces[fi][i] == a && faces[fi][(i + 1) % 3] == b)
                        return static_cast<int>(fi);
            throw Error("internal error: dart without face");
        }
    }

    auto expansions(const Triangulation & t) -> std::vector<Triangulation>
    {
        std::vector<Triangulation> result;
        int n = t.order();
        if (n + 1 > max_order)
            throw InvalidArgument("expansion would exceed the maximum order");

        for (std::size_t fi = 0; fi < t.faces().size(); ++fi)
            result.push_back(star_insert(t, {static_cast<int>(fi)}, 3));

        for (auto e : t.graph().edges())
            result.push_back(star_insert(t, {face_of_dart(t, e.u, e.v), face_of_dart(t, e.v, e.u)}, 4));

        for (int a = 0; a < n; ++a) {
            if (t.graph().degree(a) < 4)
                continue;
            for (int b : t.rotation().order[a]) {
                int c = t.successor(a, b), d = t.successor(a, c);
                result.push_back(star_insert(t, {face_of_dart(t, a, b), face_of_dart(t, a, c), face_of_dart(t, a, d)}, 5));
            }
        }
        return result;
    }

    auto reductions(const Triangulation & t, int v) -> std::vector<Triangulation>
    {
        int n = t.order();
        int d = t.graph().degree(v);
        std::vector<Triangulation> result;
        if (n - 1 < 4 || d < 3 || d > 5)
            return result;

        // link cycle in face orientation: face (v, x, y) contributes dart x->y
        std::vector<int> link;
        {
            std::map<int, int> next;
            std::vector<Face> kept;
            for (auto & f : t.faces()) {
                int at = std::find(f.begin(), f.end(), v) - f.begin();
                if (at < 3)
                    next[f[(at + 1) % 3]] = f[(at + 2) % 3];
            }
            int start = next.begin()->first, x = start;
            do {
                link.push_back(x);
                x = next.at(x);
            } while (x != start);
        }

        std::vector<Face> base;
        for (auto & f : t.faces())
            if (std::find(f.begin(), f.end(), v) == f.end())
                base.push_back(f);

        auto relabel = [v](int x) { return x > v ? x - 1 : x; };
        auto emit = [&](const std::vector<Face> & patch) {
            std::vector<Face> faces = base;
            faces.insert(faces.end(), patch.begin(), patch.end());
            for (auto & f : faces)
                for (auto & x : f)
                    x = relabel(x);
            result.push_back(Triangulation::from_faces(n - 1, std::move(faces)));
        };

        auto c = [&](int i) { return link[i % d]; };
        if (d == 3)
            emit({{c(0), c(1), c(2)}});
        else if (d == 4) {
            for (int i = 0; i < 2; ++i)
                if (! t.graph().adjacent(c(i), c(i + 2)))
                    emit({{c(i), c(i + 1), c(i + 2)}, {c(i), c(i + 2), c(i + 3)}});
        }
        else {
            for (int i = 0; i < 5; ++i)
                if (! t.graph().adjacent(c(i), c(i + 2)) && ! t.graph().adjacent(c(i), c(i + 3)))
                    emit({{c(i), c(i + 1), c(i + 2)}, {c(i), c(i + 2), c(i + 3)}, {c(i), c(i + 3), c(i + 4)}});
        }
        return result;
    }

    namespace
    {
        auto k4() -> Triangulation
        {
            return Triangulation::from_faces(4, {{{0, 1, 2}}, {{0, 2, 3}}, {{0, 3, 1}}, {{1, 3, 2}}});
        }

        auto sorted_by_code(std::map<CanonicalCode, Triangulation> && classes) -> std::vector<Triangulation>
        {
            std::vector<Triangulation> result;
            result.reserve(classes.size());
            for (auto & [code, t] : classes)
                result.push_back(std::move(t));
            return result;
        }
    }

    auto generate(int n, const GenerateOptions & options) -> std::vector<Triangulation>
    {
        if (n < 4)
            throw InvalidArgument("generate needs n >= 4, got " + std::to_string(n));
        if (n > options.max_order)
            throw BudgetExhausted("generate: n = " + std::to_string(n) + " exceeds the configured limit "
                    + std::to_string(options.max_order), 0, 0, 0);

        std::vector<Triangulation> level{k4()};
        for (int m = 4; m < n; ++m) {
            // per-parent child lists keep the merge order independent of jobs
            std::vector<std::vector<std::pair<CanonicalCode, Triangulation>>> children(level.size());
            auto work = [&](std::size_t offset, std::size_t stride) {
                for (std::size_t i = offset; i < level.size(); i += stride)
                    for (auto & child : expansions(level[i]))
                        children[i].emplace_back(canonical_form(child), std::move(child));
            };
            unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(level.size())));
            if (jobs == 1)
                work(0, 1);
            else {
                std::vector<std::jthread> pool;
                for (unsigned j = 0; j < jobs; ++j)
                    pool.emplace_back(work, j, jobs);
            }

            std::map<CanonicalCode, Triangulation> classes;
            for (auto & list : children)
                for (auto & [code, child] : list)
                    classes.try_emplace(std::move(code), std::move(child));
            level = sorted_by_code(std::move(classes));
        }
        return level;
    }

    namespace
    {
        struct OracleSearch
        {
            int n;
            int target;
            std::vector<Edge> all;
            std::vector<Edge> chosen;
            std::vector<int> degree;
            std::map<CanonicalCode, Triangulation> classes;

            // index of the first edge of row u in `all`
            auto row_end(int u) const -> std::size_t
            {
                std::size_t idx = 0;
                for (int r = 0; r <= u; ++r)
                    idx += n - 1 - r;
                return idx;
            }

            void leaf()
            {
                Graph g(n, chosen);
                // in a triangulation on n >= 4 vertices every edge lies on two triangles
                for (auto e : g.edges())
                    if (popcount(g.neighbours(e.u) & g.neighbours(e.v)) < 2)
                        return;
                if (! is_maximal_planar(g))
                    return;
                auto t = Triangulation::from_graph(g);
                auto code = canonical_form(t);
                classes.try_emplace(std::move(code), std::move(t));
            }

            void search(std::size_t i)
            {
                int have = static_cast<int>(chosen.size());
                if (have == target) {
                    for (int v = 0; v < n; ++v)
                        if (degree[v] < 3)
                            return;
                    // labelled representatives with non-increasing degrees suffice
                    for (int v = 1; v < n; ++v)
                        if (degree[v] > degree[v - 1])
                            return;
                    leaf();
                    return;
                }
                if (i == all.size() || have + static_cast<int>(all.size() - i) < target)
                    return;

                auto e = all[i];
                // after the last edge of row u, the degree of u is final
                auto row_done = [&](std::size_t next) {
                    int u = e.u;
                    if (next != row_end(u))
                        return true;
                    if (degree[u] < 3)
                        return false;
                    return u == 0 || degree[u] <= degree[u - 1];
                };

                chosen.push_back(e);
                ++degree[e.u];
                ++degree[e.v];
                if (row_done(i + 1))
                    search(i + 1);
                --degree[e.u];
                --degree[e.v];
                chosen.pop_back();

                if (row_done(i + 1))
                    search(i + 1);
            }
        };
    }

    auto oracle_generate(int n) -> std::vector<Triangulation>
    {
        if (n < 4 || n > 8)
            throw InvalidArgument("oracle_generate supports 4 <= n <= 8, got " + std::to_string(n));
        OracleSearch search{n, 3 * n - 6, complete_graph(n).edges(), {}, std::vector<int>(n, 0), {}};
        search.search(0);
        return sorted_by_code(std::move(search.classes));
    }
}
