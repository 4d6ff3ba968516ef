#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "genrank/constructions.hpp"
#include "genrank/dsl.hpp"
#include "genrank/generation.hpp"
#include "genrank/json_io.hpp"
#include "genrank/matrix_field.hpp"
#include "genrank/rank_calculus.hpp"
#include "genrank/stratification.hpp"

#ifndef GENRANK_CLI_VERSION
#define GENRANK_CLI_VERSION "0.0.0"
#endif

namespace {

using json = nlohmann::json;
using namespace genrank;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Options {
    bool as_json = false;
    std::uint64_t seed = 0;
    double eps = 0.01;
    double tol = 1e-7;
    int samples = 1000;
};

// Wraps command payloads in a reproducible run report. wall_ms is the
// only non-deterministic part and lives outside result.
void emit(const Options& opt, const std::string& command, const std::string& digest,
          const json& result, const std::vector<std::string>& human,
          const std::string& raw_payload,
          std::chrono::steady_clock::time_point t0) {
    if (opt.as_json) {
        json report;
        report["command"] = command;
        report["input_digest"] = digest;
        report["seed"] = opt.seed;
        report["version"] = GENRANK_CLI_VERSION;
        report["wall_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        report["result"] = result;
        std::cout << report.dump(2) << "\n";
        return;
    }
    if (!raw_payload.empty()) {
        std::cout << raw_payload << "\n";
        for (const auto& line : human) std::cerr << line << "\n";
        return;
    }
    for (const auto& line : human) std::cout << line << "\n";
}

std::string omega_string(const OrbitType& om) {
    std::ostringstream os;
    for (std::size_t i = 0; i < om.summands.size(); ++i) {
        if (i) os << " + ";
        os << om.summands[i].first << "x" << om.summands[i].second;
    }
    return os.str();
}

json omega_json(const OrbitType& om) {
    json a = json::array();
    for (auto [d, m] : om.summands) a.push_back(json::array({d, m}));
    return a;
}

BlockAlgebra parse_blocks(const std::string& spec) {
    BlockAlgebra a;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int v = 0;
        try {
            v = std::stoi(item);
        } catch (...) {
            throw MalformedInput("malformed --blocks value '" + item + "'");
        }
        if (v < 1) throw MalformedInput("--blocks entries must be >= 1");
        a.blocks.push_back(v);
    }
    if (a.blocks.empty()) throw MalformedInput("--blocks must list at least one block");
    return a;
}

json bounds_json(const RankBounds& b) {
    json j;
    j["lo"] = to_string(b.lo);
    j["hi"] = to_string(b.hi);
    j["conjectural"] = b.conjectural;
    json trace = json::array();
    for (const auto& s : b.trace) {
        json st;
        st["rule"] = s.rule;
        st["anchor"] = s.anchor;
        st["lo"] = to_string(s.lo);
        st["hi"] = to_string(s.hi);
        st["conjectural"] = s.conjectural;
        trace.push_back(std::move(st));
    }
    j["trace"] = std::move(trace);
    return j;
}

std::string bounds_string(const RankBounds& b) {
    std::string s = "[" + to_string(b.lo) + ", " + to_string(b.hi) + "]";
    if (b.conjectural) s += " (conjectural)";
    return s;
}

int run(int argc, char** argv) {
    CLI::App app{"generator ranks of matrix tuples and C*-algebra descriptions"};
    app.set_version_flag("--version", GENRANK_CLI_VERSION);
    app.require_subcommand(1);
    app.fallthrough();  // accept the shared flags after a subcommand name

    Options opt;
    app.add_flag("--json", opt.as_json, "emit a machine-readable run report");
    app.add_option("--seed", opt.seed, "seed for randomized commands");
    app.add_option("--eps", opt.eps, "perturbation budget");
    app.add_option("--tol", opt.tol, "closure rank tolerance base");
    app.add_option("--samples", opt.samples, "Monte Carlo sample count");

    std::string input = "-", input_b, blocks_spec, expr;
    int n = 2, k = 2, dmax = 12, nmax = 6, tensor_n = 2;

    auto* c_check = app.add_subcommand("check", "closure dimension and type of a tuple");
    c_check->add_option("input", input, "tuple JSON file, - for stdin");

    auto* c_perturb = app.add_subcommand("perturb", "perturb a tuple to generate its block algebra");
    c_perturb->add_option("input", input, "tuple JSON file, - for stdin");
    c_perturb->add_option("--blocks", blocks_spec, "block sizes, e.g. 2,1")->required();

    auto* c_combine = app.add_subcommand("combine", "combine two generating tuples into one for the direct sum");
    c_combine->add_option("first", input, "first tuple JSON file")->required();
    c_combine->add_option("second", input_b, "second tuple JSON file")->required();

    auto* c_compress = app.add_subcommand("compress", "compress a tuple over blocks (x) M_n to a generating one");
    c_compress->add_option("input", input, "tuple JSON file, - for stdin");
    c_compress->add_option("--blocks", blocks_spec, "block sizes of the base algebra")->required();
    c_compress->add_option("--n", tensor_n, "matrix tensor factor size")->check(CLI::Range(2, 64));

    auto* c_strata = app.add_subcommand("strata", "orbit types and dimension bounds");
    c_strata->add_option("--n", n, "matrix size")->check(CLI::Range(2, 16));
    c_strata->add_option("--k", k, "tuple length")->check(CLI::Range(2, 64));

    auto* c_mc = app.add_subcommand("mc", "Monte Carlo generation rate of random tuples");
    c_mc->add_option("--n", n, "matrix size")->check(CLI::Range(1, 32));
    c_mc->add_option("--k", k, "tuple length")->check(CLI::Range(1, 64));

    auto* c_rank = app.add_subcommand("rank", "rank bounds for an algebra description");
    c_rank->add_option("expr", expr, "description, e.g. sum(matrix(2), af)")->required();

    auto* c_field = app.add_subcommand("field", "check whether a matrix field generates");
    c_field->add_option("input", input, "field JSON file, - for stdin");

    auto* c_table = app.add_subcommand("table", "rank table for matrix functions on cubes");
    c_table->add_option("--dmax", dmax, "largest cube dimension")->check(CLI::Range(1, 64));
    c_table->add_option("--nmax", nmax, "largest matrix size")->check(CLI::Range(2, 32));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad invocation maps onto the parse-error exit
    }
    auto t0 = std::chrono::steady_clock::now();

    if (c_check->parsed()) {
        std::string text = read_input(input);
        HermitianTuple t = tuple_from_json(text);
        SubalgebraSpan s = generated_algebra(t, opt.tol);
        OrbitType om = classify_subalgebra(s, opt.seed + 1);
        bool gen = s.dimension() == t.n * t.n;
        json res;
        res["n"] = t.n;
        res["k"] = t.k();
        res["closure_dimension"] = s.dimension();
        res["generating"] = gen;
        res["left_generating"] = is_left_generating(t);
        res["orbit_type"] = omega_json(om);
        res["pointwise_stabilizer_dim"] = pointwise_stabilizer_lie_dimension(s);
        res["setwise_stabilizer_dim"] = stabilizer_lie_dimension(s);
        emit(opt, "check", fnv1a_digest(text), res,
             {"closure dimension: " + std::to_string(s.dimension()) + " of " +
                  std::to_string(t.n * t.n),
              std::string("generating: ") + (gen ? "yes" : "no"),
              "orbit type: " + omega_string(om),
              "pointwise stabilizer dim: " +
                  std::to_string(pointwise_stabilizer_lie_dimension(s)),
              "setwise stabilizer dim: " + std::to_string(stabilizer_lie_dimension(s))},
             "", t0);
        return 0;
    }

    if (c_perturb->parsed()) {
        std::string text = read_input(input);
        HermitianTuple t = tuple_from_json(text);
        BlockAlgebra A = parse_blocks(blocks_spec);
        HermitianTuple out = perturb_to_generating_tuple(A, t, opt.eps);
        double moved = tuple_distance(t, out);
        json res;
        res["tuple"] = json::parse(tuple_to_json(out));
        res["moved"] = moved;
        emit(opt, "perturb", fnv1a_digest(text), res,
             {"moved: " + std::to_string(moved) + " (budget " + std::to_string(opt.eps) + ")"},
             tuple_to_json(out, 1), t0);
        return 0;
    }

    if (c_combine->parsed()) {
        std::string ta = read_input(input), tb = read_input(input_b);
        HermitianTuple a = tuple_from_json(ta), b = tuple_from_json(tb);
        HermitianTuple out = combine_direct_sum_generators(a, b, opt.eps);
        SubalgebraSpan s = generated_algebra(out, opt.tol);
        json res;
        res["tuple"] = json::parse(tuple_to_json(out));
        res["closure_dimension"] = s.dimension();
        emit(opt, "combine", fnv1a_digest(ta + "\n" + tb), res,
             {"closure dimension: " + std::to_string(s.dimension())},
             tuple_to_json(out, 1), t0);
        return 0;
    }

    if (c_compress->parsed()) {
        std::string text = read_input(input);
        HermitianTuple t = tuple_from_json(text);
        BlockAlgebra A = parse_blocks(blocks_spec);
        CompressResult r = tensor_compress(A, tensor_n, t, opt.eps);
        json res;
        res["tuple"] = json::parse(tuple_to_json(r.output));
        res["distance"] = r.distance;
        res["delta0"] = r.delta0;
        res["closure_dimension"] = r.closure_dimension;
        emit(opt, "compress", fnv1a_digest(text), res,
             {"distance: " + std::to_string(r.distance),
              "closure dimension: " + std::to_string(r.closure_dimension)},
             tuple_to_json(r.output, 1), t0);
        return 0;
    }

    if (c_strata->parsed()) {
        json res;
        res["n"] = n;
        res["k"] = k;
        res["complement_dimension"] = complement_dimension(n, k);
        res["density_threshold"] = density_threshold(n, k);
        json list = json::array();
        std::vector<std::string> human;
        for (const auto& om : enumerate_orbit_types(n)) {
            StratumReport r = stratum_dimensions(n, k, om);
            json item;
            item["omega"] = omega_json(om);
            item["preimage_dim_bound"] = r.preimage_dim_bound;
            item["orbit_dim_bound"] = r.orbit_dim_bound;
            item["full"] = r.is_full;
            list.push_back(std::move(item));
            std::ostringstream os;
            os << omega_string(om) << ": preimage <= " << r.preimage_dim_bound
               << ", orbit <= " << r.orbit_dim_bound << (r.is_full ? " (full)" : "");
            human.push_back(os.str());
        }
        res["strata"] = std::move(list);
        human.push_back("complement dimension: " +
                        std::to_string(complement_dimension(n, k)) + " of " +
                        std::to_string(static_cast<long>(k) * n * n));
        human.push_back("density threshold: " + std::to_string(density_threshold(n, k)));
        emit(opt, "strata", fnv1a_digest(std::to_string(n) + "," + std::to_string(k)), res,
             human, "", t0);
        return 0;
    }

    if (c_mc->parsed()) {
        McReport r = mc_generation_rate(n, k, opt.samples, opt.seed);
        json res;
        res["n"] = n;
        res["k"] = k;
        res["samples"] = r.samples;
        res["generating"] = r.generating;
        res["ambiguous"] = r.ambiguous;
        res["rate"] = r.rate;
        std::ostringstream os;
        os << "rate: " << r.rate;
        emit(opt, "mc",
             fnv1a_digest(std::to_string(n) + "," + std::to_string(k) + "," +
                          std::to_string(opt.samples) + "," + std::to_string(opt.seed)),
             res,
             {"samples: " + std::to_string(r.samples),
              "generating: " + std::to_string(r.generating),
              "ambiguous: " + std::to_string(r.ambiguous), os.str()},
             "", t0);
        return 0;
    }

    if (c_rank->parsed()) {
        AlgDesc a = parse_algebra(expr);
        RankBounds gr = generator_rank_bounds(a);
        RankBounds rr = real_rank_bounds(a);
        json res;
        res["expr"] = format_algebra(a);
        res["generator_rank"] = bounds_json(gr);
        res["real_rank"] = bounds_json(rr);
        res["general_generators_hi"] = to_string(general_generator_count(gr.hi));
        std::vector<std::string> human;
        human.push_back("expression: " + format_algebra(a));
        human.push_back("generator rank: " + bounds_string(gr));
        human.push_back("real rank: " + bounds_string(rr));
        human.push_back("general generators (upper): " +
                        to_string(general_generator_count(gr.hi)));
        for (const auto& s : gr.trace)
            human.push_back("  " + s.rule + ": " + s.anchor + " -> [" + to_string(s.lo) +
                            ", " + to_string(s.hi) + "]" +
                            (s.conjectural ? " (conjectural)" : ""));
        emit(opt, "rank", fnv1a_digest(expr), res, human, "", t0);
        return 0;
    }

    if (c_field->parsed()) {
        std::string text = read_input(input);
        MatrixField f = field_from_json(text);
        FieldCheck r = is_generating_field(f);
        json res;
        res["generating"] = r.generating;
        res["used_trace_criterion"] = r.used_trace_criterion;
        std::vector<std::string> human;
        human.push_back(std::string("generating: ") + (r.generating ? "yes" : "no"));
        if (r.first_non_generating_point >= 0) {
            res["non_generating_point"] = f.points[static_cast<std::size_t>(
                r.first_non_generating_point)];
            human.push_back("fiber fails to generate at point '" +
                            f.points[static_cast<std::size_t>(r.first_non_generating_point)] +
                            "'");
        }
        if (r.first_merged_pair_a >= 0) {
            res["merged_pair"] = json::array(
                {f.points[static_cast<std::size_t>(r.first_merged_pair_a)],
                 f.points[static_cast<std::size_t>(r.first_merged_pair_b)]});
            human.push_back("points '" +
                            f.points[static_cast<std::size_t>(r.first_merged_pair_a)] +
                            "' and '" +
                            f.points[static_cast<std::size_t>(r.first_merged_pair_b)] +
                            "' lie on the same unitary orbit");
        }
        emit(opt, "field", fnv1a_digest(text), res, human, "", t0);
        return 0;
    }

    if (c_table->parsed()) {
        auto rows = cube_table(dmax, nmax);
        json res;
        json list = json::array();
        for (const auto& r : rows)
            list.push_back(json{{"d", r.d},
                                {"n", r.n},
                                {"generators", r.generator_count},
                                {"real_rank", r.real_rank},
                                {"generator_rank", r.generator_rank}});
        res["rows"] = std::move(list);
        emit(opt, "table", fnv1a_digest(std::to_string(dmax) + "," + std::to_string(nmax)),
             res, {format_cube_table(rows)}, "", t0);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const genrank::MalformedDescription& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const genrank::MalformedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const genrank::NonHermitianInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const genrank::LengthMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const genrank::NeedTwoEntries& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const genrank::InvalidSize& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const genrank::ToleranceAmbiguity& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "hint: rescale the input or raise --tol\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
