#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "arbormax/exact.hpp"
#include "arbormax/generator.hpp"
#include "arbormax/greedy_radius.hpp"
#include "arbormax/instance.hpp"
#include "arbormax/rec_approx.hpp"
#include "arbormax/reductions.hpp"
#include "arbormax/tree_partition.hpp"

namespace {

using namespace arbormax;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << bytes;
}

void write_or_print(const std::string& out_path, const std::string& bytes) {
    if (out_path.empty())
        std::cout << bytes;
    else
        spill(out_path, bytes);
}

// Accepts "a/b" fractions or decimal literals; fractions stay exact.
Rational parse_delta(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long long num = std::stoll(text.substr(0, slash));
        long long den = std::stoll(text.substr(slash + 1));
        return Rational(num, den);
    }
    return Rational::from_double(std::stod(text));
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

struct SolveArgs {
    std::string instance_path;
    std::string algo;
    int d = 1;
    double epsilon = 0;  // 0 means not set
    std::string delta;
    int root = -1;
    int radius = -1;
    std::string subroutine = "recapprox-d";
    bool faithful = false;
    bool lazy = false;
    bool with_exact = false;
    std::string out;
};

Vertex resolve_root(const SolveArgs& args, const Instance& inst) {
    if (args.root >= 0) return args.root;
    if (inst.root) return *inst.root;
    throw std::invalid_argument("algorithm '" + args.algo +
                                "' needs a root (instance field or --root)");
}

void attach_exact(SolveReport& rep, const Instance& inst, const Digraph& g,
                  const ValueOracle& o, std::optional<Vertex> root) {
    ExactOptions opts;
    opts.memoize = true;
    ExactResult ex = root ? exact_drcsm(g, o, inst.k, *root, std::nullopt, opts)
                     : inst.directed ? exact_dcsm(g, o, inst.k, opts)
                                     : exact_csm(inst.n, inst.edges, o, inst.k, opts);
    rep.opt = ex.value;
    rep.r_star = inst.directed || root ? ex.height : ex.undirected_radius.value_or(ex.height);
    rep.ratio = ex.value > 0 ? rep.value / ex.value : 1.0;
}

int cmd_solve(const SolveArgs& args) {
    Instance inst = parse_instance(slurp(args.instance_path));
    auto oracle = inst.make_oracle();
    Digraph g = inst.graph();
    Timer timer;

    SolveReport rep;
    rep.algorithm = args.algo;
    rep.k = inst.k;
    rep.faithful = args.faithful;

    SolveParams params;
    params.d = args.d;
    params.faithful = args.faithful;
    params.subroutine = args.subroutine == "exact" ? SolveParams::Sub::Exact
                                                   : SolveParams::Sub::RecApproxD;
    if (args.root >= 0) params.fixed_root = args.root;
    if (args.radius >= 0) params.fixed_radius = args.radius;

    auto fill_solution = [&](const OutTree& tree, double value) {
        rep.solution_root = tree.root();
        rep.vertices = tree.vertices();
        for (const auto& [child, parent] : tree.parent_map())
            rep.tree_edges.push_back({parent, child});
        std::sort(rep.tree_edges.begin(), rep.tree_edges.end());
        rep.value = value;
        rep.m = tree.edge_count();
        rep.within_k = rep.m <= inst.k;
    };

    std::optional<Vertex> exact_root;
    if (args.algo == "greedy-radius") {
        Vertex v = resolve_root(args, inst);
        if (args.radius < 1)
            throw std::invalid_argument("greedy-radius needs --radius in [1, k]");
        Subroutine sub = args.subroutine == "exact" ? exact_subroutine()
                                                    : recapprox_subroutine(args.d);
        rep.root = v;
        rep.radius = args.radius;
        rep.d = args.d;
        rep.subroutine = sub.name;
        GreedyOptions gopts;
        gopts.faithful = args.faithful;
        gopts.lazy = args.lazy;
        GreedyResult res = greedy_radius(g, *oracle, inst.k, v, args.radius, sub, gopts);
        fill_solution(res.tree, oracle->value(res.tree.vertices()));
        rep.total_queries = res.trace.queries;
        rep.trace = std::move(res.trace);
        exact_root = v;
    } else if (args.algo == "recapprox-d") {
        Vertex v = resolve_root(args, inst);
        rep.root = v;
        rep.d = args.d;
        rep.q = inst.k > 1 ? SizeDivisor::root_of(inst.k, args.d).to_double() : 1.0;
        RecResult res = rec_approx_d(g, *oracle, inst.k, v, args.d, {args.faithful});
        fill_solution(res.tree, oracle->value(res.tree.vertices()));
        rep.total_queries = res.trace.queries;
        rep.trace = std::move(res.trace);
        exact_root = v;
    } else if (args.algo == "dcsm" || args.algo == "csm") {
        if (args.algo == "dcsm" && !inst.directed)
            throw CLI::ValidationError("--algo dcsm needs a directed instance");
        if (args.algo == "csm" && inst.directed)
            throw CLI::ValidationError("--algo csm needs an undirected instance");
        if (args.epsilon > 0) {
            params.d = depth_for_epsilon(args.epsilon);
            params.subroutine = SolveParams::Sub::RecApproxD;
            rep.epsilon = args.epsilon;
        }
        rep.d = params.d;
        ReductionResult res = args.algo == "dcsm"
                                  ? solve_dcsm(g, *oracle, inst.k, params)
                                  : solve_csm(inst.n, inst.edges, *oracle, inst.k, params);
        rep.subroutine = params.subroutine == SolveParams::Sub::Exact ? "exact" : "recapprox-d";
        fill_solution(res.tree, res.value);
        rep.total_queries = res.total_queries;
        rep.per_guess = std::move(res.guesses);
        rep.radius = res.guess_radius;
        rep.root = res.guess_root;
    } else if (args.algo == "drcsm") {
        Vertex v = resolve_root(args, inst);
        if (args.delta.empty()) throw std::invalid_argument("drcsm needs --delta");
        Rational delta = parse_delta(args.delta);
        rep.root = v;
        rep.d = args.d;
        rep.delta = delta.str();
        rep.subroutine = args.subroutine;
        ReductionResult res = solve_drcsm_bicriteria(g, *oracle, inst.k, v, delta, params);
        fill_solution(res.tree, res.value);
        rep.total_queries = res.total_queries;
        rep.per_guess = std::move(res.guesses);
        rep.radius = res.guess_radius;
        Rational budget = (Rational(1) + delta) * Rational(inst.k);
        rep.within_delta = budget.cmp(rep.m) >= 0;
        exact_root = v;
    } else {
        throw CLI::ValidationError("unknown --algo " + args.algo);
    }

    if (args.with_exact) {
        attach_exact(rep, inst, g, *oracle, exact_root);
        if ((args.algo == "dcsm" || args.algo == "csm") && rep.r_star) {
            rep.sharp_bound = sharp_factor(*rep.d, *rep.r_star);
            if (rep.epsilon) rep.epsilon_bound = epsilon_factor(*rep.epsilon, *rep.r_star);
        }
    }
    rep.wall_time_ms = timer.ms();
    write_or_print(args.out, emit_report(rep));
    return 0;
}

int cmd_exact(const std::string& instance_path, int height_cap, const std::string& out) {
    Instance inst = parse_instance(slurp(instance_path));
    auto oracle = inst.make_oracle();
    Digraph g = inst.graph();
    Timer timer;
    ExactOptions opts;
    opts.memoize = true;
    std::optional<int> cap;
    if (height_cap >= 0) cap = height_cap;

    if (!inst.root && height_cap >= 0)
        throw std::invalid_argument("--height-cap needs a rooted instance");
    ExactResult res = inst.root ? exact_drcsm(g, *oracle, inst.k, *inst.root, cap, opts)
                      : inst.directed
                          ? exact_dcsm(g, *oracle, inst.k, opts)
                          : exact_csm(inst.n, inst.edges, *oracle, inst.k, opts);

    SolveReport rep;
    rep.algorithm = "exact";
    rep.k = inst.k;
    if (inst.root) rep.root = *inst.root;
    if (height_cap >= 0) rep.radius = height_cap;
    rep.solution_root = res.tree.root();
    rep.vertices = res.tree.vertices();
    for (const auto& [child, parent] : res.tree.parent_map())
        rep.tree_edges.push_back({parent, child});
    std::sort(rep.tree_edges.begin(), rep.tree_edges.end());
    rep.value = res.value;
    rep.m = res.tree.edge_count();
    rep.within_k = rep.m <= inst.k;
    rep.total_queries = oracle->queries();
    rep.opt = res.value;
    rep.r_star = inst.directed ? res.height : res.undirected_radius.value_or(res.height);
    rep.ratio = 1.0;
    rep.wall_time_ms = timer.ms();
    write_or_print(out, emit_report(rep));
    return 0;
}

int cmd_check(const std::string& instance_path) {
    Instance inst = parse_instance(slurp(instance_path));
    inst.graph();  // structural validation
    std::cout << "instance ok: n=" << inst.n << " edges=" << inst.edges.size()
              << " k=" << inst.k << "\n";
    if (inst.n > 12) {
        std::cout << "oracle verification skipped (n > 12)\n";
        return 0;
    }
    auto oracle = inst.make_oracle();
    VerifyReport rep = verify_oracle(*oracle, inst.n);
    if (rep.ok()) {
        std::cout << "oracle ok: nonnegative, monotone, submodular\n";
        return 0;
    }
    if (!rep.nonnegative) {
        std::cout << "oracle FAILED nonnegativity";
        if (rep.nonnegative_witness) {
            std::cout << " at {";
            for (size_t i = 0; i < rep.nonnegative_witness->size(); ++i)
                std::cout << (i ? "," : "") << (*rep.nonnegative_witness)[i];
            std::cout << "}";
        }
        std::cout << "\n";
    }
    if (!rep.monotone)
        std::cout << "oracle FAILED monotonicity: " << rep.monotone_witness->describe() << "\n";
    if (!rep.submodular)
        std::cout << "oracle FAILED submodularity: " << rep.submodular_witness->describe()
                  << "\n";
    return 1;
}

struct GenArgs {
    GenSpec spec;
    bool undirected = false;
    int root = -1;
    std::string out;
};

int cmd_gen(GenArgs& args) {
    args.spec.directed = !args.undirected;
    if (args.root >= 0) args.spec.root = args.root;
    write_or_print(args.out, emit_instance(gen_random(args.spec)));
    return 0;
}

int cmd_bench(const std::string& dir, const std::string& out, int d,
              const std::string& delta_text) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::ostringstream csv;
    csv << "file,algo,n,edges,k,d,delta,value,opt,ratio,bound,r_star,m,size_over_k,"
           "queries_solve,queries_exact,wall_ms\n";
    for (const auto& file : files) {
        Instance inst = parse_instance(slurp(file.string()));
        auto oracle = inst.make_oracle();
        Digraph g = inst.graph();
        Timer timer;
        SolveParams params;
        params.d = d;

        std::string algo;
        std::optional<OutTree> tree;
        double value = 0;
        long long queries_solve = 0;
        Rational delta = parse_delta(delta_text);
        if (delta.cmp(Rational(1, inst.k)) < 0) delta = Rational(1, inst.k);
        if (delta.cmp(1) > 0) delta = Rational(1);
        if (inst.root) {
            algo = "drcsm";
            auto res = solve_drcsm_bicriteria(g, *oracle, inst.k, *inst.root, delta, params);
            tree = std::move(res.tree);
            value = res.value;
            queries_solve = res.total_queries;
        } else if (inst.directed) {
            algo = "dcsm";
            auto res = solve_dcsm(g, *oracle, inst.k, params);
            tree = std::move(res.tree);
            value = res.value;
            queries_solve = res.total_queries;
        } else {
            algo = "csm";
            auto res = solve_csm(inst.n, inst.edges, *oracle, inst.k, params);
            tree = std::move(res.tree);
            value = res.value;
            queries_solve = res.total_queries;
        }

        long long q0 = oracle->queries();
        ExactOptions eopts;
        eopts.memoize = true;
        ExactResult ex = inst.root
                             ? exact_drcsm(g, *oracle, inst.k, *inst.root, std::nullopt, eopts)
                         : inst.directed ? exact_dcsm(g, *oracle, inst.k, eopts)
                                         : exact_csm(inst.n, inst.edges, *oracle, inst.k, eopts);
        long long queries_exact = oracle->queries() - q0;
        int r_star = inst.directed || inst.root ? ex.height
                                                : ex.undirected_radius.value_or(ex.height);
        double bound = sharp_factor(d, r_star);
        if (inst.root) bound *= delta.to_double();
        double ratio = ex.value > 0 ? value / ex.value : 1.0;

        char row[512];
        std::snprintf(row, sizeof(row), "%s,%s,%d,%zu,%d,%d,%s,%.12g,%.12g,%.12g,%.12g,%d,%d,%.12g,%lld,%lld,%.3f\n",
                      file.filename().string().c_str(), algo.c_str(), inst.n,
                      inst.edges.size(), inst.k, d, delta.str().c_str(), value, ex.value,
                      ratio, bound, r_star, tree->edge_count(),
                      static_cast<double>(tree->edge_count()) / inst.k, queries_solve,
                      queries_exact, timer.ms());
        csv << row;
    }
    write_or_print(out, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Connected submodular maximization solvers"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "run an approximation algorithm");
    solve->add_option("--instance", solve_args.instance_path, "instance JSON")->required();
    solve->add_option("--algo", solve_args.algo, "greedy-radius|recapprox-d|csm|dcsm|drcsm")
        ->required();
    solve->add_option("--d", solve_args.d, "recursion depth for recapprox-d");
    solve->add_option("--epsilon", solve_args.epsilon,
                      "derive d = ceil(1/epsilon) for csm/dcsm");
    solve->add_option("--delta", solve_args.delta, "size violation budget, e.g. 1/2");
    solve->add_option("--root", solve_args.root, "root vertex override");
    solve->add_option("--radius", solve_args.radius, "fixed radius guess");
    solve->add_option("--subroutine", solve_args.subroutine, "recapprox-d|exact");
    solve->add_flag("--faithful", solve_args.faithful, "disable the zero-gain early stop");
    solve->add_flag("--lazy", solve_args.lazy,
                    "stale-gain cache for greedy-radius (changes query accounting)");
    solve->add_flag("--with-exact", solve_args.with_exact, "also run the exact solver");
    solve->add_option("--out", solve_args.out, "report path (stdout if omitted)");

    std::string exact_instance, exact_out;
    int exact_height_cap = -1;
    auto* exact = app.add_subcommand("exact", "run the brute-force exact solver");
    exact->add_option("--instance", exact_instance, "instance JSON")->required();
    exact->add_option("--height-cap", exact_height_cap, "restrict solution height");
    exact->add_option("--out", exact_out, "report path (stdout if omitted)");

    std::string check_instance;
    auto* check = app.add_subcommand("check", "validate an instance and its oracle");
    check->add_option("--instance", check_instance, "instance JSON")->required();

    GenArgs gen_args;
    unsigned long long seed = 0;
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("--model", gen_args.spec.model, "erdos|path|star|grid|random-out-tree");
    gen->add_option("--n", gen_args.spec.n, "vertex count")->required();
    gen->add_option("--k", gen_args.spec.k, "size constraint")->required();
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--p", gen_args.spec.p, "erdos edge probability");
    gen->add_flag("--undirected", gen_args.undirected, "emit an undirected instance");
    gen->add_option("--objective", gen_args.spec.objective, "coverage|additive");
    gen->add_option("--universe", gen_args.spec.universe_size, "coverage universe size");
    gen->add_option("--elements", gen_args.spec.elements_per_vertex,
                    "coverage elements per vertex");
    gen->add_option("--max-weight", gen_args.spec.max_weight, "additive max weight");
    gen->add_option("--root", gen_args.root, "record a root vertex");
    gen->add_option("--out", gen_args.out, "instance path (stdout if omitted)");

    std::string bench_dir, bench_out = "bench.csv", bench_delta = "1";
    int bench_d = 1;
    auto* bench = app.add_subcommand("bench", "solve + exact over a directory");
    bench->add_option("--dir", bench_dir, "directory of instance JSON files")->required();
    bench->add_option("--out", bench_out, "CSV output path");
    bench->add_option("--d", bench_d, "recursion depth");
    bench->add_option("--delta", bench_delta, "delta for rooted instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_args);
        if (exact->parsed()) return cmd_exact(exact_instance, exact_height_cap, exact_out);
        if (check->parsed()) return cmd_check(check_instance);
        if (gen->parsed()) {
            gen_args.spec.seed = seed;
            return cmd_gen(gen_args);
        }
        if (bench->parsed()) return cmd_bench(bench_dir, bench_out, bench_d, bench_delta);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
