// ncwaring: command-line front end.
//
// Machine-readable JSON goes to stdout, diagnostics to stderr.
//
// Exit codes:
//   0  success / compatible
//   1  input or usage error
//   2  incompatible
//   3  heuristic failure (decompose)
//   4  certified nonexistence (decompose)

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncwaring/ncwaring.hpp"

namespace
{

using namespace ncwaring;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitIncompatible = 2;
constexpr int kExitHeuristicFailure = 3;
constexpr int kExitNonexistence = 4;

std::string read_file(const std::string& path)
{
    if (path == "-")
    {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path);
    if (!in)
    {
        throw Error("cannot open '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json read_json(const std::string& path)
{
    try
    {
        return json::parse(read_file(path));
    }
    catch (const json::parse_error& e)
    {
        throw Error("'" + path + "' is not valid JSON: " + e.what());
    }
}

struct PolyInput
{
    std::string path;
    std::optional<int> g;
    bool real = false;

    NCPolynomial load() const
    {
        const std::string text = read_file(path);
        return parse_ncpoly(text, g.value_or(infer_arity(text)), ParseOptions{real});
    }
};

std::uint64_t default_seed()
{
    if (const char* env = std::getenv("NCWARING_SEED"))
    {
        try
        {
            return std::stoull(env);
        }
        catch (const std::exception&)
        {
            throw Error(std::string("NCWARING_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<int> parse_sizes(const std::string& csv)
{
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        const int n = std::stoi(item);
        if (n < 1)
        {
            throw Error("matrix sizes must be positive");
        }
        out.push_back(n);
    }
    if (out.empty())
    {
        throw Error("--sizes must list at least one size");
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Waring decompositions of noncommutative polynomials"};
    app.require_subcommand(1);

    // check
    PolyInput check_in;
    int check_delta = 1;
    double check_tol = 0.0;
    auto* check = app.add_subcommand("check", "Test delta-compatibility; prints a compatibility report");
    check->add_option("poly", check_in.path, "Polynomial file ('-' for stdin)")->required();
    check->add_option("--g", check_in.g, "Number of variables (default: largest index used)")->check(CLI::PositiveNumber);
    check->add_option("--delta", check_delta, "Block size")->check(CLI::PositiveNumber);
    check->add_option("--tol", check_tol, "Absolute tolerance for coefficient equality (default exact)")
        ->check(CLI::NonNegativeNumber);

    // collapse
    PolyInput collapse_in;
    auto* collapse_cmd = app.add_subcommand("collapse", "Commutative collapse and symmetric tensor");
    collapse_cmd->add_option("poly", collapse_in.path, "Polynomial file")->required();
    collapse_cmd->add_option("--g", collapse_in.g, "Number of variables")->check(CLI::PositiveNumber);

    // reduce
    PolyInput reduce_in;
    int reduce_delta = 1;
    auto* reduce = app.add_subcommand("reduce", "Substitute z_beta for each length-delta block");
    reduce->add_option("poly", reduce_in.path, "Polynomial file")->required();
    reduce->add_option("--g", reduce_in.g, "Number of variables")->check(CLI::PositiveNumber);
    reduce->add_option("--delta", reduce_delta, "Block size")->required()->check(CLI::PositiveNumber);

    // decompose
    PolyInput dec_in;
    DecompositionConfig cfg;
    int dec_delta = 1;
    std::optional<int> max_rank;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    auto* decompose = app.add_subcommand("decompose", "Compute a (delta, d) Waring decomposition");
    decompose->add_option("poly", dec_in.path, "Polynomial file")->required();
    decompose->add_option("--g", dec_in.g, "Number of variables")->check(CLI::PositiveNumber);
    decompose->add_option("--delta", dec_delta, "Block size")->check(CLI::PositiveNumber);
    decompose->add_option("--max-rank", max_rank, "Largest number of terms to try")->check(CLI::PositiveNumber);
    decompose->add_option("--restarts", cfg.restarts, "Random restarts per rank")->check(CLI::PositiveNumber);
    decompose->add_option("--max-iters", cfg.max_iters, "Iterations per restart")->check(CLI::PositiveNumber);
    decompose->add_option("--tol", cfg.success_tol, "Relative residual required for success")
        ->check(CLI::PositiveNumber);
    decompose->add_option("--conv-tol", cfg.conv_tol, "Relative-change stopping threshold")
        ->check(CLI::PositiveNumber);
    decompose->add_option("--seed", seed, "RNG seed (default $NCWARING_SEED or 0)");
    decompose->add_option("--compat-tol", cfg.compat_tol, "Absolute tolerance for the compatibility check (default exact)")
        ->check(CLI::NonNegativeNumber);
    decompose->add_flag("--real", dec_in.real, "Real coefficients only");
    decompose->add_option("--out", out_path, "Write the decomposition JSON here on success");

    // eval
    std::string eval_poly;
    std::optional<int> eval_g;
    std::string eval_decomp;
    std::string eval_matrices;
    std::string eval_method;
    auto* eval = app.add_subcommand("eval", "Evaluate on a matrix tuple with operation counts");
    eval->add_option("--poly", eval_poly, "Polynomial file");
    eval->add_option("--g", eval_g, "Number of variables")->check(CLI::PositiveNumber);
    eval->add_option("--decomp", eval_decomp, "Decomposition JSON file");
    eval->add_option("--matrices", eval_matrices, "Matrix tuple JSON file")->required();
    eval->add_option("--method", eval_method, "naive | waring")->check(CLI::IsMember({"naive", "waring"}));

    // bench
    PolyInput bench_in;
    std::string bench_decomp;
    std::string bench_sizes = "8,32,128";
    int bench_trials = 10;
    std::optional<std::uint64_t> bench_seed;
    auto* bench_cmd = app.add_subcommand("bench", "Time naive vs decomposition evaluation; CSV on stdout");
    bench_cmd->add_option("poly", bench_in.path, "Polynomial file")->required();
    bench_cmd->add_option("--g", bench_in.g, "Number of variables")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--decomp", bench_decomp, "Decomposition JSON (computed with defaults if absent)");
    bench_cmd->add_option("--sizes", bench_sizes, "Comma-separated matrix sizes");
    bench_cmd->add_option("--trials", bench_trials, "Trials per size")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench_seed, "RNG seed (default $NCWARING_SEED or 0)");

    // rank-bound
    int rb_g = 1;
    int rb_d = 1;
    std::optional<int> rb_t;
    auto* rank_bound = app.add_subcommand("rank-bound", "Generic Waring rank and evaluation cost model");
    rank_bound->add_option("g", rb_g, "Number of variables")->required()->check(CLI::PositiveNumber);
    rank_bound->add_option("d", rb_d, "Degree")->required()->check(CLI::PositiveNumber);
    rank_bound->add_option("--t", rb_t, "Number of terms for the cost model (default: generic rank)")
        ->check(CLI::PositiveNumber);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        // --help and --version exit 0; everything else is a usage error
        return app.exit(e) == 0 ? kExitOk : kExitInputError;
    }

    try
    {
        if (*check)
        {
            const NCPolynomial p = check_in.load();
            const CompatibilityReport r = check_compatibility(p, check_delta, {check_tol});
            print(r);
            return r.compatible ? kExitOk : kExitIncompatible;
        }
        if (*collapse_cmd)
        {
            const NCPolynomial p = collapse_in.load();
            const CPolynomial pc = collapse(p);
            json j = {{"collapse", pc}, {"text", to_string(pc)}, {"tensor", nullptr}};
            if (auto d = p.homogeneous_degree())
            {
                j["tensor"] = tensor_from_cpoly(pc, *d);
            }
            print(j);
            return kExitOk;
        }
        if (*reduce)
        {
            const NCPolynomial p = reduce_in.load();
            const PhiReduction r = phi_reduce(p, reduce_delta);
            json bij = json::array();
            for (const auto& b : r.bijection.blocks())
            {
                bij.push_back(b.raw());
            }
            print({{"delta", reduce_delta}, {"bijection", bij}, {"poly", r.poly}, {"text", to_string(r.poly)}});
            return kExitOk;
        }
        if (*decompose)
        {
            cfg.max_rank = max_rank;
            cfg.seed = seed.value_or(default_seed());
            cfg.mode = dec_in.real ? FieldMode::Real : FieldMode::Complex;
            const NCPolynomial p = dec_in.load();
            const DecompositionResult r = waring_decompose(p, dec_delta, cfg);
            print(r);
            switch (r.status())
            {
            case DecompositionStatus::Success:
                if (!out_path.empty())
                {
                    std::ofstream out(out_path);
                    if (!out)
                    {
                        throw Error("cannot write '" + out_path + "'");
                    }
                    out << json(r.success()->decomposition).dump(2) << '\n';
                }
                return kExitOk;
            case DecompositionStatus::Incompatible:
                std::cerr << "polynomial is not " << dec_delta << "-compatible\n";
                return kExitIncompatible;
            case DecompositionStatus::HeuristicFailure:
                std::cerr << "no decomposition found up to the rank cap\n";
                return kExitHeuristicFailure;
            case DecompositionStatus::CertifiedNonexistence:
                std::cerr << "no decomposition exists within the rank cap\n";
                return kExitNonexistence;
            }
        }
        if (*eval)
        {
            if (eval_poly.empty() && eval_decomp.empty())
            {
                throw Error("eval needs --poly and/or --decomp");
            }
            const std::string method = !eval_method.empty() ? eval_method : (eval_poly.empty() ? "waring" : "naive");
            const MatrixTuple x = matrix_tuple_from_json(read_json(eval_matrices));
            std::optional<std::pair<Matrix, OpCount>> naive;
            std::optional<std::pair<Matrix, OpCount>> fast;
            if (!eval_poly.empty())
            {
                naive = evaluate_naive(PolyInput{eval_poly, eval_g.value_or(x.arity()), false}.load(), x);
            }
            if (!eval_decomp.empty())
            {
                fast = evaluate_waring(decomposition_from_json(read_json(eval_decomp)), x);
            }
            const auto& chosen = method == "naive" ? naive : fast;
            if (!chosen)
            {
                throw Error("--method " + method + " needs " + (method == "naive" ? "--poly" : "--decomp"));
            }
            json j = {{"method", method}, {"result", matrix_to_json(chosen->first)}, {"ops", chosen->second}};
            if (naive && fast)
            {
                j["cross_check"] = {{"naive_ops", naive->second},
                                    {"waring_ops", fast->second},
                                    {"max_rel_err", relative_error(naive->first, fast->first)}};
            }
            print(j);
            return kExitOk;
        }
        if (*bench_cmd)
        {
            const NCPolynomial p = bench_in.load();
            std::optional<WaringDecomposition> w;
            if (!bench_decomp.empty())
            {
                w = decomposition_from_json(read_json(bench_decomp));
            }
            else
            {
                DecompositionConfig bc;
                bc.seed = bench_seed.value_or(default_seed());
                const DecompositionResult r = waring_decompose(p, 1, bc);
                if (!r.success())
                {
                    throw Error(std::string("cannot decompose polynomial for bench: ") + to_string(r.status()));
                }
                w = r.success()->decomposition;
            }
            const VerificationResult v = verify_decomposition(p, *w, 1e-6);
            if (!v.ok)
            {
                throw Error("decomposition does not reproduce the polynomial (max coefficient error " +
                            std::to_string(v.max_abs_error) + ")");
            }
            write_bench_csv(std::cout,
                            bench(p, *w, parse_sizes(bench_sizes), bench_trials, bench_seed.value_or(default_seed())));
            return kExitOk;
        }
        if (*rank_bound)
        {
            const int r = generic_rank(rb_g, rb_d);
            print({{"g", rb_g}, {"d", rb_d}, {"generic_rank", r}, {"cost", cost_compare(rb_g, rb_d, rb_t.value_or(r))}});
            return kExitOk;
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
