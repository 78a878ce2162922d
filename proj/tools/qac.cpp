#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qac/bounds.hpp"
#include "qac/code.hpp"
#include "qac/harness.hpp"
#include "qac/serialize.hpp"

using namespace qac;

namespace {

// exit-code contract: 0 success, 1 verification/validation failure,
// 2 usage error, 3 budget refusal

std::vector<std::uint32_t> parse_group(const std::string& text) {
    std::vector<std::uint32_t> factors;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("group: empty factor in \"" + text + "\"");
        u128 v = parse_u128(tok);
        if (v < 2 || v > UINT32_MAX)
            throw std::invalid_argument("group: factor " + tok + " out of range");
        factors.push_back(static_cast<std::uint32_t>(v));
    }
    if (factors.empty()) throw std::invalid_argument("group: no factors given");
    return factors;
}

std::vector<u128> parse_choice(const std::string& text) {
    std::vector<u128> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_u128(tok));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const std::string& payload, const std::string& out) {
    if (out.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << payload;
    if (!payload.empty() && payload.back() != '\n') f << '\n';
}

std::string fmt12(long double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12Lg", x);
    return buf;
}

CodeSystem system_for(const std::string& q_text, const std::string& group_text) {
    FieldSpec F = field_from_order(parse_u128(q_text));
    AbelianGroup G = group_make(parse_group(group_text));
    return code_system_make(F, G);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-dual and self-orthogonal 2-quasi-abelian codes over F_q"};
    app.require_subcommand(1);

    std::string q_text, group_text, out_path, code_path, choice_text, config_path;
    std::uint64_t seed = 0, n_value = 0, n_max = 0, q_small = 0;
    std::string cap_text = "1000000";
    double delta = 0;
    bool dagger = false, with_matrix = false;
    bool seed_given = false, choice_given = false;
    unsigned workers = 0;

    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "write the payload to FILE instead of stdout");
    };

    CLI::App* cmd_decompose = app.add_subcommand(
        "decompose", "orbit and component structure of FG");
    cmd_decompose->add_option("--q", q_text, "field order (prime power)")->required();
    cmd_decompose->add_option("--group", group_text, "cyclic factor sizes, comma-separated")
        ->required();
    add_out(cmd_decompose);

    CLI::App* cmd_count = app.add_subcommand(
        "count", "exact number of self-dual (or self-orthogonal) codes");
    cmd_count->add_option("--q", q_text)->required();
    cmd_count->add_option("--group", group_text)->required();
    cmd_count->add_flag("--dagger", dagger, "count the type I-dagger family");
    add_out(cmd_count);

    CLI::App* cmd_construct = app.add_subcommand("construct", "build one code as a JSON envelope");
    cmd_construct->add_option("--q", q_text)->required();
    cmd_construct->add_option("--group", group_text)->required();
    cmd_construct->add_flag("--dagger", dagger);
    cmd_construct->add_option("--seed", seed, "seeded uniform draw");
    cmd_construct->add_option("--choice", choice_text,
                              "one solution index per component, comma-separated");
    cmd_construct->add_flag("--with-matrix", with_matrix, "embed the generator matrix");
    add_out(cmd_construct);

    CLI::App* cmd_verify = app.add_subcommand("verify", "check a code envelope");
    cmd_verify->add_option("--code", code_path, "envelope file")->required();
    add_out(cmd_verify);

    CLI::App* cmd_mindist = app.add_subcommand(
        "mindist", "exact minimum weight and relative distance");
    cmd_mindist->add_option("--code", code_path)->required();
    cmd_mindist->add_option("--cap", cap_text, "refuse beyond this enumeration budget");
    add_out(cmd_mindist);

    CLI::App* cmd_bounds = app.add_subcommand(
        "bounds", "counting bound for codes of relative distance at most delta");
    cmd_bounds->add_option("--q", q_small)->required();
    cmd_bounds->add_option("--n", n_value)->required();
    cmd_bounds->add_option("--delta", delta)->required();
    cmd_bounds->add_flag("--dagger", dagger);
    add_out(cmd_bounds);

    CLI::App* cmd_scan = app.add_subcommand(
        "scan", "rank candidate lengths by log_q(n) / mu_q(n)");
    cmd_scan->add_option("--q", q_small)->required();
    cmd_scan->add_option("--max", n_max, "largest length to consider")->required();
    add_out(cmd_scan);

    CLI::App* cmd_experiment = app.add_subcommand("experiment", "run a harness config");
    cmd_experiment->add_option("--config", config_path, "JSON config file")->required();
    cmd_experiment->add_option("--workers", workers, "thread count (0 = hardware)");
    add_out(cmd_experiment);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_decompose->parsed()) {
            auto ctx = algebra_make(field_from_order(parse_u128(q_text)),
                                    group_make(parse_group(group_text)));
            emit(decomposition_to_json(*ctx), out_path);
            return 0;
        }
        if (cmd_count->parsed()) {
            CodeSystem sys = system_for(q_text, group_text);
            u128 c = dagger ? count_dagger(*sys.ctx) : count_selfdual(*sys.ctx);
            emit(to_decimal(c), out_path);
            return 0;
        }
        if (cmd_construct->parsed()) {
            seed_given = cmd_construct->count("--seed") > 0;
            choice_given = cmd_construct->count("--choice") > 0;
            if (seed_given == choice_given) {
                std::cerr << "construct: give exactly one of --seed or --choice\n";
                return 2;
            }
            CodeSystem sys = system_for(q_text, group_text);
            AlgebraElement b;
            if (seed_given) {
                b = dagger ? sample_b_dagger(sys, seed) : sample_b(sys, seed);
            } else {
                std::vector<u128> choice = parse_choice(choice_text);
                b = dagger ? build_b_dagger(sys, choice) : build_b(sys, choice);
            }
            emit(code_to_json(b, dagger, with_matrix), out_path);
            return 0;
        }
        if (cmd_verify->parsed()) {
            LoadedCode lc = code_from_json(read_file(code_path));
            VerifyReport rep =
                lc.dagger ? verify_selforthogonal({lc.b}) : verify_selfdual({lc.b});
            nlohmann::ordered_json j;
            j["dagger"] = lc.dagger;
            j["algebraic"] = rep.algebraic;
            if (lc.dagger) j["annihilator"] = rep.annihilator;
            j["orthogonal"] = rep.orthogonal;
            j["rank"] = rep.rank;
            j["pass"] = rep.pass();
            emit(j.dump(), out_path);
            return rep.pass() ? 0 : 1;
        }
        if (cmd_mindist->parsed()) {
            LoadedCode lc = code_from_json(read_file(code_path));
            u128 cap = parse_u128(cap_text);
            std::uint64_t n = lc.ctx->group.n;
            std::uint64_t w = lc.dagger ? minimum_weight(TypeIDaggerCode{lc.b}, cap)
                                        : minimum_weight(TypeICode{lc.b}, cap);
            nlohmann::ordered_json j;
            j["length"] = 2 * n;
            j["dimension"] = lc.dagger ? n - 1 : n;
            j["weight"] = w;
            j["relative"] = static_cast<double>(w) / (2.0 * static_cast<double>(n));
            emit(j.dump(), out_path);
            return 0;
        }
        if (cmd_bounds->parsed()) {
            BoundReport r = ratio_bound(q_small, n_value, static_cast<long double>(delta), dagger);
            emit(bound_json(r), out_path);
            return 0;
        }
        if (cmd_scan->parsed()) {
            std::string table = "n,mu,ratio\n";
            for (const ScanEntry& e : good_sequence_scan(q_small, n_max))
                table += std::to_string(e.n) + ',' + std::to_string(e.mu) + ',' +
                         fmt12(e.ratio) + '\n';
            emit(table, out_path);
            return 0;
        }
        if (cmd_experiment->parsed()) {
            ExperimentConfig cfg = config_from_json(read_file(config_path));
            ExperimentResult r = run_experiment(cfg, workers);
            if (!cfg.out.empty())
                for (const std::string& path : export_files(r))
                    std::cerr << "wrote " << path << '\n';
            emit(export_json(r), out_path);
            std::cerr << (r.pass ? "pass" : "FAIL") << " in " << fmt12(r.wall_seconds) << "s\n";
            return r.pass ? 0 : 1;
        }
    } catch (const BudgetError& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
