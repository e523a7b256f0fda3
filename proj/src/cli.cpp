#include <rbtri/anti_ramsey.hpp>
#include <rbtri/cli.hpp>
#include <rbtri/errors.hpp>
#include <rbtri/graph6.hpp>
#include <rbtri/matching.hpp>
#include <rbtri/proof_check.hpp>
#include <rbtri/store.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace rbtri
{
    namespace
    {
        struct Globals
        {
            std::uint64_t budget_nodes = 1'000'000'000ULL;
            unsigned jobs = 1;
            std::string cache_dir;
            std::string format = "json";
            std::string ledger;
        };

        struct Context
        {
            Globals globals;
            std::ostream & out;
            std::ostream & err;
            /// everything read from disk, folded into the ledger's inputs hash
            std::string inputs;

            auto cache() const -> TriangulationCache
            {
                return TriangulationCache(resolve_cache_dir(
                        globals.cache_dir.empty() ? std::nullopt : std::optional<std::string>(globals.cache_dir)));
            }

            auto budget() const -> Budget { return Budget{globals.budget_nodes}; }

            auto read_file(const fs::path & p) -> std::string
            {
                std::ifstream in(p, std::ios::binary);
                if (! in)
                    throw Error("cannot read " + p.string());
                std::stringstream ss;
                ss << in.rdbuf();
                inputs += p.string();
                inputs += '\0';
                inputs += ss.str();
                inputs += '\0';
                return ss.str();
            }

            /// A file path, or a literal graph6 string / edge list.
            auto read_graph(const std::string & arg) -> Graph
            {
                if (fs::is_regular_file(arg))
                    return parse_graph(read_file(arg));
                return parse_graph(arg);
            }

            auto triangulations(int n) -> std::vector<Triangulation>
            {
                auto c = cache();
                return c.load_or_generate(n, GenerateOptions{.max_order = 14, .jobs = globals.jobs});
            }

            void emit(const std::vector<ojson> & rows)
            {
                if (globals.format == "table") {
                    emit_table(rows);
                    return;
                }
                for (auto & r : rows)
                    out << r.dump() << '\n';
            }

            void emit(const ojson & row) { emit(std::vector<ojson>{row}); }

            void emit_table(const std::vector<ojson> & rows)
            {
                if (rows.empty())
                    return;
                std::vector<std::string> keys;
                for (auto & [key, _] : rows.front().items())
                    keys.push_back(key);
                auto cell = [](const ojson & v) {
                    return v.is_string() ? v.get<std::string>() : v.dump();
                };
                std::vector<std::size_t> width(keys.size());
                for (std::size_t i = 0; i < keys.size(); ++i) {
                    width[i] = keys[i].size();
                    for (auto & r : rows)
                        if (r.contains(keys[i]))
                            width[i] = std::max(width[i], cell(r[keys[i]]).size());
                }
                for (std::size_t i = 0; i < keys.size(); ++i)
                    out << std::left << std::setw(static_cast<int>(width[i]) + 2) << keys[i];
                out << '\n';
                for (auto & r : rows) {
                    for (std::size_t i = 0; i < keys.size(); ++i)
                        out << std::left << std::setw(static_cast<int>(width[i]) + 2)
                            << (r.contains(keys[i]) ? cell(r[keys[i]]) : "");
                    out << '\n';
                }
            }
        };

        auto parse_range(const std::string & text) -> std::pair<int, int>
        {
            auto dots = text.find("..");
            try {
                if (dots == std::string::npos) {
                    int a = std::stoi(text);
                    return {a, a};
                }
                int a = std::stoi(text.substr(0, dots));
                int b = std::stoi(text.substr(dots + 2));
                if (b < a)
                    throw InvalidArgument("empty range " + text);
                return {a, b};
            }
            catch (const std::logic_error &) {
                throw InvalidArgument("expected N or A..B, got '" + text + "'");
            }
        }

        auto certificate_file_name(const std::string & graph_id, int k) -> std::string
        {
            bool hex = ! graph_id.empty()
                && std::all_of(graph_id.begin(), graph_id.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); });
            return (hex ? graph_id : "g" + hex64(fnv1a64(graph_id))) + "_k" + std::to_string(k) + ".json";
        }

        auto write_certificate(const fs::path & dir, const std::string & graph_id, const RainbowCertificate & cert) -> std::string
        {
            if (! verify_no_rainbow(cert))
                throw Error("internal error: refusing to write a certificate that fails verification");
            fs::create_directories(dir);
            auto path = dir / certificate_file_name(graph_id, cert.k);
            std::ofstream out(path);
            out << certificate_to_json(cert) << '\n';
            if (! out)
                throw Error("cannot write " + path.string());
            return path.string();
        }

        auto cert_dir_or_default(Context & ctx, const std::string & dir) -> fs::path
        {
            return dir.empty() ? ctx.cache().dir() / "certs" : fs::path(dir);
        }

        // ---- gen ----

        struct GenArgs
        {
            int n = 0;
            bool oracle = false;
            std::string out;
        };

        auto cmd_gen(Context & ctx, const GenArgs & a) -> int
        {
            if (a.oracle && (a.n < 4 || a.n > 8))
                throw InvalidArgument("gen --oracle needs 4 <= n <= 8");
            if (a.n < 4 || a.n > 14)
                throw InvalidArgument("gen needs 4 <= n <= 14");
            auto ts = a.oracle ? oracle_generate(a.n) : generate(a.n, GenerateOptions{.max_order = 14, .jobs = ctx.globals.jobs});
            fs::path file = a.out.empty() ? ctx.cache().file_for(a.n) : fs::path(a.out);
            write_class_file(file, a.n, ts);
            ojson row;
            row["n"] = a.n;
            row["count"] = ts.size();
            row["source"] = a.oracle ? "oracle" : "generator";
            row["path"] = file.string();
            ctx.emit(row);
            return exit_ok;
        }

        // ---- ar ----

        struct ArArgs
        {
            std::string graph;
            int n = 0;
            int k = 0;
            std::string engine = "completion";
            std::string cert_dir;
        };

        auto cmd_ar(Context & ctx, const ArArgs & a) -> int
        {
            Engine engine = parse_engine(a.engine);
            std::vector<Graph> graphs;
            if (! a.graph.empty())
                graphs.push_back(ctx.read_graph(a.graph));
            else if (a.n > 0)
                for (auto & t : ctx.triangulations(a.n))
                    graphs.push_back(t.graph());
            else
                throw InvalidArgument("ar needs --graph or --n");

            auto dir = cert_dir_or_default(ctx, a.cert_dir);
            int code = exit_ok;
            for (auto & g : graphs) {
                ojson row;
                try {
                    auto r = compute_ar(g, a.k, engine, ctx.budget());
                    row["code"] = r.graph_id;
                    row["n"] = g.order();
                    row["k"] = a.k;
                    row["ar"] = r.ar;
                    row["engine"] = engine_name(r.engine);
                    row["nodes_explored"] = r.nodes;
                    row["certificate_path"] = r.certificate ? ojson(write_certificate(dir, r.graph_id, *r.certificate)) : ojson(nullptr);
                    if (r.vacuous)
                        row["vacuous"] = true;
                }
                catch (const BudgetExhausted & e) {
                    row["code"] = to_graph6(g);
                    row["n"] = g.order();
                    row["k"] = a.k;
                    row["ar"] = nullptr;
                    row["ar_lower"] = e.lower;
                    row["ar_upper"] = e.upper;
                    row["engine"] = engine_name(engine);
                    row["nodes_explored"] = e.nodes;
                    row["certificate_path"] = nullptr;
                    row["status"] = "inconclusive";
                    code = exit_inconclusive;
                }
                ctx.emit(row);
            }
            return code;
        }

        // ---- rb ----

        struct RbArgs
        {
            int n = 0;
            int k = 0;
            std::string engine = "completion";
            bool exact = false;
            std::string cert_dir;
        };

        auto run_rb(Context & ctx, int n, int k, Engine engine, bool exact) -> RbClassResult
        {
            auto ts = ctx.triangulations(n);
            RbOptions options;
            options.engine = engine;
            options.budget = ctx.budget();
            options.jobs = ctx.globals.jobs;
            options.exact_per_graph = exact;
            return rb_class(n, k, options, ts);
        }

        auto rb_summary(const RbClassResult & r, Engine engine, const std::string & cert_path) -> ojson
        {
            ojson s;
            s["summary"] = "rb";
            s["n"] = r.n;
            s["k"] = r.k;
            s["rb"] = r.inconclusive ? ojson(nullptr) : ojson(r.rb);
            s["rb_lower"] = r.rb_lower;
            s["rb_upper"] = r.rb_upper;
            s["inconclusive"] = r.inconclusive;
            s["engine"] = engine_name(engine);
            s["extremal_graph"] = r.extremal_certificate ? ojson(r.extremal_graph.hex()) : ojson(nullptr);
            s["certificate_path"] = cert_path.empty() ? ojson(nullptr) : ojson(cert_path);
            s["nodes_explored"] = r.nodes;
            return s;
        }

        auto cmd_rb(Context & ctx, const RbArgs & a) -> int
        {
            Engine engine = parse_engine(a.engine);
            auto r = run_rb(ctx, a.n, a.k, engine, a.exact);
            auto dir = cert_dir_or_default(ctx, a.cert_dir);
            std::string extremal_path;
            if (r.extremal_certificate)
                extremal_path = write_certificate(dir, r.extremal_graph.hex(), *r.extremal_certificate);

            std::vector<ojson> rows;
            for (auto & pg : r.per_graph) {
                ojson row;
                row["code"] = pg.code.hex();
                row["n"] = a.n;
                row["k"] = a.k;
                bool exact = ! pg.skipped && ! pg.inconclusive && pg.lower == pg.upper;
                row["ar"] = exact ? ojson(pg.lower) : ojson(nullptr);
                row["ar_lower"] = pg.lower;
                row["ar_upper"] = pg.upper;
                row["skipped"] = pg.skipped;
                row["engine"] = engine_name(engine);
                row["nodes_explored"] = pg.nodes;
                row["certificate_path"] = r.extremal_certificate && pg.code == r.extremal_graph ? ojson(extremal_path) : ojson(nullptr);
                rows.push_back(std::move(row));
            }
            ctx.emit(rows);
            ctx.emit(rb_summary(r, engine, extremal_path));
            return r.inconclusive ? exit_inconclusive : exit_ok;
        }

        // ---- verify ----

        struct VerifyArgs
        {
            std::string suite;
            std::string range;
            std::string cert_dir;
        };

        struct SuiteState
        {
            std::vector<ojson> rows;
            bool failed = false;
            bool inconclusive = false;
            std::vector<std::string> counterexamples;
        };

        auto expected_small_k(int n, int k) -> int
        {
            if (k == 2)
                return n == 4 ? 4 : 2;
            if (k == 3)
                return n == 6 ? 8 : n + 1;
            return 2 * n - 1;
        }

        void verify_rb(Context & ctx, SuiteState & st, const fs::path & cert_dir, const std::string & check, int n, int k,
                Engine engine, std::optional<int> expected)
        {
            ojson row;
            row["check"] = check;
            row["n"] = n;
            row["k"] = k;
            row["engine"] = engine_name(engine);
            row["expected"] = expected ? ojson(*expected) : ojson(nullptr);
            auto r = run_rb(ctx, n, k, engine, false);
            std::string path;
            if (r.extremal_certificate)
                path = write_certificate(cert_dir, r.extremal_graph.hex(), *r.extremal_certificate);
            row["got"] = r.inconclusive ? ojson(nullptr) : ojson(r.rb);
            row["rb_lower"] = r.rb_lower;
            row["rb_upper"] = r.rb_upper;
            row["nodes_explored"] = r.nodes;
            row["certificate_path"] = path.empty() ? ojson(nullptr) : ojson(path);

            std::string status = "pass";
            if (r.inconclusive) {
                bool contradicted = expected && (*expected < r.rb_lower || *expected > r.rb_upper);
                status = contradicted ? "fail" : "inconclusive";
            }
            else if (expected && r.rb != *expected)
                status = "fail";
            // known bounds for k >= 5 and n >= 2k
            if (k >= 5 && status != "fail") {
                int lo = 2 * n + 2 * k - 9;
                int hi = std::min(2 * n + 6 * k - 16, 3 * n - 5);
                row["bounds"] = {lo, hi};
                if (r.rb_upper < lo || r.rb_lower > hi)
                    status = "fail";
            }
            row["status"] = status;
            if (status == "fail") {
                st.failed = true;
                std::string msg = check + " n=" + std::to_string(n) + " k=" + std::to_string(k) + ": computed ["
                    + std::to_string(r.rb_lower) + ", " + std::to_string(r.rb_upper) + "]";
                if (expected)
                    msg += ", expected " + std::to_string(*expected);
                if (r.extremal_certificate)
                    msg += "\n" + certificate_to_json(*r.extremal_certificate);
                st.counterexamples.push_back(msg);
            }
            else if (status == "inconclusive")
                st.inconclusive = true;
            st.rows.push_back(std::move(row));
        }

        void add_audit(SuiteState & st, const AuditReport & rep, int n, std::optional<int> k)
        {
            ojson row;
            row["check"] = rep.claim;
            row["n"] = n;
            row["k"] = k ? ojson(*k) : ojson(nullptr);
            row["universe_size"] = rep.universe_size;
            row["instances_checked"] = rep.instances_checked;
            row["failures"] = rep.failures.size();
            std::string status = rep.passed() ? "pass" : "fail";
            if (rep.exploration)
                status = "exploration-" + status;
            row["status"] = status;
            if (! rep.passed() && ! rep.exploration) {
                st.failed = true;
                st.counterexamples.push_back(rep.to_json());
            }
            st.rows.push_back(std::move(row));
        }

        auto cmd_verify(Context & ctx, const VerifyArgs & a) -> int
        {
            auto [lo, hi] = parse_range(a.range);
            auto cert_dir = cert_dir_or_default(ctx, a.cert_dir);
            SuiteState st;
            if (a.suite == "th2") {
                if (lo < 4)
                    throw InvalidArgument("verify --suite th2 needs n >= 4");
                for (int n = lo; n <= hi; ++n)
                    for (int k = 2; k <= 4; ++k) {
                        if (n < 2 * k)
                            continue;
                        verify_rb(ctx, st, cert_dir, "th2", n, k, Engine::representative_completion, expected_small_k(n, k));
                        // cross-check the partition engine where it is cheap
                        if (3 * n - 6 <= 12)
                            verify_rb(ctx, st, cert_dir, "th2", n, k, Engine::partition_dfs, expected_small_k(n, k));
                    }
            }
            else if (a.suite == "them1") {
                if (lo < 10)
                    throw InvalidArgument("verify --suite them1 needs n >= 10");
                for (int n = lo; n <= hi; ++n)
                    verify_rb(ctx, st, cert_dir, "them1", n, 5, Engine::representative_completion,
                            n >= 11 ? std::optional<int>(2 * n + 1) : std::nullopt);
            }
            else if (a.suite == "lemmas") {
                if (lo < 4)
                    throw InvalidArgument("verify --suite lemmas needs n >= 4");
                for (int n = lo; n <= hi; ++n) {
                    auto ts = ctx.triangulations(n);
                    if (n >= 5)
                        add_audit(st, check_hypohamiltonian(n, ts), n, std::nullopt);
                    add_audit(st, check_three_connected(n, ts), n, std::nullopt);
                    if (n <= 8)
                        for (auto & t : ts) {
                            int nu = matching_number(t.graph());
                            for (int k = 2; k <= nu + 1; ++k)
                                add_audit(st, check_counting_bounds(t, k), n, k);
                        }
                }
            }
            else
                throw InvalidArgument("unknown suite '" + a.suite + "' (th2, them1, lemmas)");

            ctx.emit(st.rows);
            if (st.failed) {
                ctx.out << "COUNTEREXAMPLE\n";
                for (auto & c : st.counterexamples)
                    ctx.out << c << '\n';
                return exit_error;
            }
            return st.inconclusive ? exit_inconclusive : exit_ok;
        }

        // ---- decomp ----

        auto vertex_list(VertexSet s) -> std::vector<int>
        {
            return vertices_of(s);
        }

        auto cmd_decomp(Context & ctx, const std::string & graph) -> int
        {
            auto g = ctx.read_graph(graph);
            auto d = berge_tutte_witness(g);
            ojson row;
            row["S"] = vertex_list(d.s);
            std::vector<int> sizes;
            for (auto c : d.odd_components)
                sizes.push_back(popcount(c));
            row["component_sizes"] = sizes;
            row["B"] = vertex_list(d.even_vertices);
            row["q"] = d.q;
            row["d"] = d.matching_size;
            row["deficiency"] = d.deficiency;
            ctx.emit(row);
            return exit_ok;
        }

        // ---- cert check ----

        struct CertArgs
        {
            std::string graph;
            std::string coloring;
            int k = 0;
        };

        auto cmd_cert_check(Context & ctx, const CertArgs & a) -> int
        {
            auto g = ctx.read_graph(a.graph);
            auto col = parse_coloring(g, ctx.read_file(a.coloring));
            if (a.k < 1)
                throw InvalidArgument("k must be at least 1");
            RainbowCertificate cert{g, col, a.k};
            ojson row;
            row["k"] = a.k;
            row["colors"] = col.num_colors();
            if (verify_no_rainbow(cert)) {
                row["verdict"] = RainbowCertificate::verdict;
                ctx.emit(row);
                return exit_ok;
            }
            auto witness = find_rainbow_matching(col, a.k);
            row["verdict"] = "rainbow_found";
            ojson w = ojson::array();
            if (witness)
                for (auto & e : *witness)
                    w.push_back({e.u, e.v, col.color_of(g.edge_index(e.u, e.v))});
            row["rainbow_matching"] = w;
            ctx.emit(row);
            return exit_error;
        }

        // ---- lemma ----

        struct LemmaArgs
        {
            std::string name;
            int n = 0;
            int k = 0;
            int samples = 200;
            std::uint64_t seed = 0;
        };

        auto cmd_lemma(Context & ctx, const LemmaArgs & a) -> int
        {
            auto ts = ctx.triangulations(a.n);
            std::vector<AuditReport> reports;
            if (a.name == "hypohamiltonian")
                reports.push_back(check_hypohamiltonian(a.n, ts));
            else if (a.name == "three_connected")
                reports.push_back(check_three_connected(a.n, ts));
            else if (a.name == "counting" || a.name == "matching_claim") {
                if (a.k < 1)
                    throw InvalidArgument("lemma " + a.name + " needs --k");
                for (auto & t : ts) {
                    if (a.name == "counting") {
                        if (matching_number(t.graph()) < a.k - 1)
                            continue;
                        reports.push_back(check_counting_bounds(t, a.k, CountingOptions{8, a.samples, a.seed}));
                    }
                    else
                        reports.push_back(check_matching_claim(t, a.k, a.samples, a.seed));
                }
            }
            else
                throw InvalidArgument("unknown lemma '" + a.name + "' (hypohamiltonian, three_connected, counting, matching_claim)");

            bool failed = false;
            for (auto & r : reports) {
                ctx.out << r.to_json() << '\n';
                failed |= ! r.passed() && ! r.exploration;
            }
            return failed ? exit_error : exit_ok;
        }

        // ---- replay ----

        auto run_parsed(const std::vector<std::string> & args, std::ostream & out, std::ostream & err, bool allow_ledger) -> int;

        auto inputs_hash(const std::vector<std::string> & args, const std::string & inputs) -> std::string
        {
            std::string blob;
            for (auto & a : args) {
                blob += a;
                blob += '\0';
            }
            blob += inputs;
            blob += generator_version;
            blob += engine_version;
            return hex64(fnv1a64(blob));
        }

        struct ReplayArgs
        {
            std::string ledger;
            int count = 20;
            std::uint64_t seed = 0;
        };

        auto cmd_replay(Context & ctx, const ReplayArgs & a) -> int
        {
            auto records = read_records(a.ledger);
            std::vector<std::size_t> chosen(records.size());
            std::iota(chosen.begin(), chosen.end(), std::size_t{0});
            if (static_cast<int>(chosen.size()) > a.count) {
                std::mt19937_64 rng(a.seed);
                std::shuffle(chosen.begin(), chosen.end(), rng);
                chosen.resize(a.count);
                std::sort(chosen.begin(), chosen.end());
            }
            bool all_ok = true;
            std::vector<ojson> rows;
            for (auto i : chosen) {
                auto & rec = records[i];
                std::ostringstream out, err;
                int code = run_parsed(rec.arguments, out, err, false);
                ojson row;
                row["record"] = i;
                row["command"] = rec.command;
                bool same = out.str() == rec.outputs && code == rec.exit_code;
                bool versions = rec.generator_version == generator_version && rec.engine_version == engine_version;
                row["status"] = ! versions ? "version-mismatch" : same ? "reproduced" : "differs";
                all_ok &= same && versions;
                rows.push_back(std::move(row));
            }
            ctx.emit(rows);
            return all_ok ? exit_ok : exit_error;
        }

        auto run_parsed(const std::vector<std::string> & args, std::ostream & out, std::ostream & err, bool allow_ledger) -> int
        {
            CLI::App app{"Rainbow matchings in plane triangulations", "rbtri"};
            app.require_subcommand(1);
            app.fallthrough();
            Globals globals;
            app.add_option("--budget-nodes", globals.budget_nodes, "node budget per search")->capture_default_str();
            app.add_option("--jobs", globals.jobs, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
            app.add_option("--cache-dir", globals.cache_dir, "triangulation cache (default $RBTRI_CACHE or .rbtri-cache)");
            app.add_option("--format", globals.format, "output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
            app.add_option("--ledger", globals.ledger, "append a result record to this JSONL file");

            GenArgs gen_args;
            auto gen = app.add_subcommand("gen", "generate T_n and write graph6 + meta sidecar");
            gen->add_option("--n", gen_args.n, "order")->required();
            gen->add_flag("--oracle", gen_args.oracle, "use the brute-force oracle (n <= 8)");
            gen->add_option("--out", gen_args.out, "output .g6 file (default: cache)");

            ArArgs ar_args;
            auto ar = app.add_subcommand("ar", "anti-Ramsey number ar(G, kK2) of one graph or of every T in T_n");
            auto ar_graph = ar->add_option("--graph", ar_args.graph, "graph file or literal graph6");
            ar->add_option("--n", ar_args.n, "all triangulations of this order")->excludes(ar_graph);
            ar->add_option("--k", ar_args.k, "matching size")->required();
            ar->add_option("--engine", ar_args.engine, "partition|completion")->capture_default_str();
            ar->add_option("--cert-dir", ar_args.cert_dir, "certificate directory (default <cache>/certs)");

            RbArgs rb_args;
            auto rb = app.add_subcommand("rb", "rainbow number rb(T_n, kK2)");
            rb->add_option("--n", rb_args.n, "order")->required();
            rb->add_option("--k", rb_args.k, "matching size")->required();
            rb->add_option("--engine", rb_args.engine, "partition|completion")->capture_default_str();
            rb->add_flag("--exact", rb_args.exact, "compute ar exactly for every triangulation");
            rb->add_option("--cert-dir", rb_args.cert_dir, "certificate directory (default <cache>/certs)");

            VerifyArgs verify_args;
            auto verify = app.add_subcommand("verify", "compare computed values with the known formulas");
            verify->add_option("--suite", verify_args.suite, "th2|them1|lemmas")->required()->check(CLI::IsMember({"th2", "them1", "lemmas"}));
            verify->add_option("--n", verify_args.range, "N or A..B")->required();
            verify->add_option("--cert-dir", verify_args.cert_dir, "certificate directory (default <cache>/certs)");

            std::string decomp_graph;
            auto decomp = app.add_subcommand("decomp", "Gallai-Edmonds / Berge-Tutte decomposition");
            decomp->add_option("--graph", decomp_graph, "graph file or literal graph6")->required();

            CertArgs cert_args;
            auto cert = app.add_subcommand("cert", "certificate tools");
            cert->require_subcommand(1);
            auto check = cert->add_subcommand("check", "verify a no-rainbow certificate");
            check->add_option("--graph", cert_args.graph, "graph file")->required();
            check->add_option("--coloring", cert_args.coloring, "coloring file")->required();
            check->add_option("--k", cert_args.k, "matching size")->required();

            LemmaArgs lemma_args;
            auto lemma = app.add_subcommand("lemma", "run one structural audit");
            lemma->add_option("--name", lemma_args.name, "hypohamiltonian|three_connected|counting|matching_claim")->required();
            lemma->add_option("--n", lemma_args.n, "order")->required();
            lemma->add_option("--k", lemma_args.k, "matching size");
            lemma->add_option("--samples", lemma_args.samples, "random samples")->capture_default_str();
            lemma->add_option("--seed", lemma_args.seed, "random seed")->capture_default_str();

            ReplayArgs replay_args;
            auto replay = app.add_subcommand("replay", "re-run ledger records and compare outputs");
            replay->add_option("--ledger-file", replay_args.ledger, "ledger to replay")->required();
            replay->add_option("--count", replay_args.count, "records to sample")->capture_default_str();
            replay->add_option("--seed", replay_args.seed, "sampling seed")->capture_default_str();

            try {
                std::vector<std::string> reversed(args.rbegin(), args.rend());
                app.parse(reversed);
            }
            catch (const CLI::ParseError & e) {
                int code = app.exit(e, out, err);
                return code == 0 ? exit_ok : exit_error;
            }

            bool record = allow_ledger && ! globals.ledger.empty() && ! replay->parsed();
            std::ostringstream buffer;
            Context ctx{globals, record ? static_cast<std::ostream &>(buffer) : out, err, {}};

            int code = exit_error;
            std::string command;
            try {
                if (gen->parsed())
                    command = "gen", code = cmd_gen(ctx, gen_args);
                else if (ar->parsed())
                    command = "ar", code = cmd_ar(ctx, ar_args);
                else if (rb->parsed())
                    command = "rb", code = cmd_rb(ctx, rb_args);
                else if (verify->parsed())
                    command = "verify", code = cmd_verify(ctx, verify_args);
                else if (decomp->parsed())
                    command = "decomp", code = cmd_decomp(ctx, decomp_graph);
                else if (check->parsed())
                    command = "cert check", code = cmd_cert_check(ctx, cert_args);
                else if (lemma->parsed())
                    command = "lemma", code = cmd_lemma(ctx, lemma_args);
                else if (replay->parsed())
                    command = "replay", code = cmd_replay(ctx, replay_args);
            }
            catch (const BudgetExhausted & e) {
                ctx.out << "INCONCLUSIVE: " << e.what() << " (bounds [" << e.lower << ", " << e.upper << "], "
                        << e.nodes << " nodes)\n";
                code = exit_inconclusive;
            }
            catch (const std::exception & e) {
                err << "error: " << e.what() << '\n';
                code = exit_error;
            }

            if (record) {
                out << buffer.str();
                // the recorded arguments drop --ledger so replays do not append
                std::vector<std::string> replay_args_list;
                for (std::size_t i = 0; i < args.size(); ++i) {
                    if (args[i] == "--ledger") {
                        ++i;
                        continue;
                    }
                    if (args[i].rfind("--ledger=", 0) == 0)
                        continue;
                    replay_args_list.push_back(args[i]);
                }
                ResultRecord rec;
                rec.command = command;
                rec.arguments = replay_args_list;
                rec.inputs_hash = inputs_hash(replay_args_list, ctx.inputs);
                rec.outputs = buffer.str();
                rec.exit_code = code;
                rec.generator_version = generator_version;
                rec.engine_version = engine_version;
                rec.budget_nodes = globals.budget_nodes;
                try {
                    append_record(globals.ledger, rec);
                }
                catch (const std::exception & e) {
                    err << "error: " << e.what() << '\n';
                    code = exit_error;
                }
            }
            return code;
        }
    }

    auto run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
    {
        return run_parsed(args, out, err, true);
    }
}
