#include "qac/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qac/bounds.hpp"
#include "qac/code.hpp"
#include "qac/rng.hpp"

namespace qac {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json json_u128(u128 v) {
    if (v <= static_cast<u128>(UINT64_MAX)) return static_cast<std::uint64_t>(v);
    return to_decimal(v);
}

u128 u128_field(const json& j, const char* what) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
        return static_cast<u128>(j.get<std::int64_t>());
    if (j.is_string()) return parse_u128(j.get<std::string>());
    throw std::invalid_argument(std::string("config: ") + what + " must be a non-negative integer");
}

// fixed 12-significant-digit decimals in every export
double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string fmt12(double x) {
    if (std::isnan(x)) return "na";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string group_label(const std::vector<std::uint32_t>& factors) {
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(factors[i]);
    }
    return s;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (workers > 64) workers = 64;
    if (count < 2 || workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned launch = workers;
    if (static_cast<std::size_t>(launch) > count) launch = static_cast<unsigned>(count);
    for (unsigned w = 0; w < launch; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

bool pow_exceeds(u128 base, std::uint64_t e, u128 limit) {
    u128 r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (r > limit / base) return true;
        r *= base;
    }
    return false;
}

std::string kind_name(ComponentKind k) {
    switch (k) {
        case ComponentKind::trivial: return "trivial";
        case ComponentKind::bar_fixed: return "bar_fixed";
        case ComponentKind::paired: return "paired";
    }
    return "?";
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    ExperimentConfig c;
    c.mode = j.value("mode", "");
    if (c.mode != "count-validate" && c.mode != "distance-sample")
        throw std::invalid_argument("config: mode must be count-validate or distance-sample");
    if (!j.contains("grid") || !j["grid"].is_array() || j["grid"].empty())
        throw std::invalid_argument("config: grid must be a non-empty array");
    for (const auto& g : j["grid"]) {
        GridPoint p;
        u128 q = u128_field(g.at("q"), "grid q");
        if (q < 2 || q > UINT64_MAX) throw std::invalid_argument("config: grid q out of range");
        p.q = static_cast<std::uint64_t>(q);
        if (!g.contains("factors") || !g["factors"].is_array() || g["factors"].empty())
            throw std::invalid_argument("config: each grid point needs factors");
        for (const auto& f : g["factors"]) {
            u128 v = u128_field(f, "group factor");
            if (v < 2 || v > UINT32_MAX)
                throw std::invalid_argument("config: group factors must be at least 2");
            p.factors.push_back(static_cast<std::uint32_t>(v));
        }
        c.grid.push_back(std::move(p));
    }
    if (j.contains("deltas")) {
        if (!j["deltas"].is_array()) throw std::invalid_argument("config: deltas must be an array");
        for (const auto& d : j["deltas"]) {
            double v = d.get<double>();
            if (!(v >= 0.0) || v > 1.0)
                throw std::invalid_argument("config: deltas must lie in [0, 1]");
            c.deltas.push_back(v);
        }
    }
    c.samples = j.value("samples", std::uint64_t(0));
    c.seed = j.value("seed", std::uint64_t(0));
    if (!j.contains("caps") || !j["caps"].is_object())
        throw std::invalid_argument("config: caps:{brute, weight} required");
    c.cap_brute = u128_field(j["caps"].at("brute"), "caps.brute");
    c.cap_weight = u128_field(j["caps"].at("weight"), "caps.weight");
    if (c.cap_brute == 0 || c.cap_weight == 0)
        throw std::invalid_argument("config: budgets must be positive");
    c.out = j.value("out", "");
    c.dagger = j.value("dagger", false);
    if (c.mode == "distance-sample") {
        if (c.deltas.empty()) throw std::invalid_argument("config: distance-sample needs deltas");
        if (c.samples == 0)
            throw std::invalid_argument("config: distance-sample needs a positive sample count");
    }
    return c;
}

ExperimentResult validate_counts(const ExperimentConfig& c, unsigned workers) {
    for (const GridPoint& g : c.grid) {
        AbelianGroup G = group_make(g.factors);
        if (pow_exceeds(g.q, G.n, c.cap_brute))
            throw std::invalid_argument("validate_counts: q^n exceeds caps.brute at q=" +
                                        std::to_string(g.q) + ", group " +
                                        group_label(g.factors));
    }
    ExperimentResult result;
    result.config = c;
    result.counts.resize(c.grid.size());
    parallel_for(c.grid.size(), workers, [&](std::size_t gi) {
        const GridPoint& g = c.grid[gi];
        CountRecord rec;
        rec.q = g.q;
        rec.factors = g.factors;
        FieldSpec F = field_from_order(g.q);
        AbelianGroup G = group_make(g.factors);
        rec.n = G.n;
        CodeSystem sys = code_system_make(F, G);
        const AlgebraContext& ctx = *sys.ctx;

        rec.status = "ok";
        rec.selfdual_formula = to_decimal(count_selfdual(ctx));
        rec.selfdual_oracle = to_decimal(brute_force_selfdual_set(ctx, c.cap_brute).size());
        if (rec.selfdual_formula != rec.selfdual_oracle) {
            rec.status = "mismatch";
            rec.detail = "selfdual count";
        }
        rec.dagger_formula = to_decimal(count_dagger(ctx));
        rec.dagger_oracle = to_decimal(brute_force_dagger_set(ctx, c.cap_brute).size());
        if (rec.status == "ok" && rec.dagger_formula != rec.dagger_oracle) {
            rec.status = "mismatch";
            rec.detail = "dagger count";
        }
        for (std::size_t k = 0; k < sys.dec.components.size(); ++k) {
            ComponentCheck chk;
            chk.index = k;
            chk.kind = kind_name(sys.dec.components[k].kind);
            chk.n_e = sys.dec.components[k].n_e;
            chk.formula = to_decimal(sys.solutions[k].count);
            chk.oracle =
                to_decimal(brute_force_component_solutions(ctx, sys.dec, k, c.cap_brute).size());
            chk.ok = chk.formula == chk.oracle;
            if (!chk.ok && rec.status == "ok") {
                rec.status = "mismatch";
                rec.detail = "component " + std::to_string(k);
            }
            rec.components.push_back(std::move(chk));
        }
        result.counts[gi] = std::move(rec);
    });
    for (const CountRecord& r : result.counts)
        if (r.status != "ok") result.pass = false;
    return result;
}

namespace {

struct Wilson {
    double low, high, radius;
};

Wilson wilson_interval(std::uint64_t hits, std::uint64_t n) {
    const double z = 1.959963984540054;  // 95%
    double nn = static_cast<double>(n);
    double phat = n ? static_cast<double>(hits) / nn : 0.0;
    double z2 = z * z;
    double denom = 1.0 + z2 / nn;
    double center = (phat + z2 / (2.0 * nn)) / denom;
    double rad = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
    double low = center - rad, high = center + rad;
    if (low < 0) low = 0;
    if (high > 1) high = 1;
    return {low, high, rad};
}

}  // namespace

ExperimentResult distance_experiment(const ExperimentConfig& c, unsigned workers) {
    ExperimentResult result;
    result.config = c;

    struct PointPlan {
        std::unique_ptr<CodeSystem> sys;
        u128 population = 0;
        std::string mode;  // exhaustive | sampled | refused
        std::string refusal;
        std::uint64_t jobs = 0;  // codes to weigh
        std::vector<std::uint64_t> weights;
        std::uint64_t base_seed = 0;  // sampled mode
    };
    std::vector<PointPlan> plans(c.grid.size());

    for (std::size_t gi = 0; gi < c.grid.size(); ++gi) {
        PointPlan& pl = plans[gi];
        const GridPoint& g = c.grid[gi];
        FieldSpec F = field_from_order(g.q);
        AbelianGroup G = group_make(g.factors);
        pl.sys = std::make_unique<CodeSystem>(code_system_make(F, G));
        const AlgebraContext& ctx = *pl.sys->ctx;
        pl.population = c.dagger ? count_dagger(ctx) : count_selfdual(ctx);
        std::uint64_t dim = c.dagger ? G.n - 1 : G.n;
        if (pow_exceeds(g.q, dim, c.cap_weight)) {
            pl.mode = "refused";
            pl.refusal = "per-code weight enumeration q^" + std::to_string(dim) +
                         " exceeds caps.weight";
            continue;
        }
        u128 per_code = 1;
        for (std::uint64_t i = 0; i < dim; ++i) per_code *= g.q;
        bool exhaustible = pl.population <= c.cap_weight / per_code &&
                           pl.population <= static_cast<u128>(UINT64_MAX);
        if (pl.population == 0 || exhaustible) {
            pl.mode = "exhaustive";
            pl.jobs = static_cast<std::uint64_t>(pl.population);
        } else {
            pl.mode = "sampled";
            pl.jobs = c.samples;
            SplitMix64 boot = SplitMix64::substream(c.seed, gi);
            pl.base_seed = boot.next();
        }
        pl.weights.resize(pl.jobs);
    }

    // flat task list over every code whose weight is needed
    std::vector<std::pair<std::size_t, std::uint64_t>> tasks;
    for (std::size_t gi = 0; gi < plans.size(); ++gi)
        for (std::uint64_t j = 0; j < plans[gi].jobs; ++j) tasks.emplace_back(gi, j);

    parallel_for(tasks.size(), workers, [&](std::size_t ti) {
        auto [gi, j] = tasks[ti];
        PointPlan& pl = plans[gi];
        const CodeSystem& sys = *pl.sys;
        AlgebraElement b = [&] {
            if (pl.mode == "exhaustive") {
                // decode j into one solution index per component
                std::size_t first = c.dagger ? 1 : 0;
                std::vector<u128> choice(sys.solutions.size() - first);
                u128 t = j;
                for (std::size_t k = 0; k < choice.size(); ++k) {
                    u128 cnt = sys.solutions[k + first].count;
                    choice[k] = t % cnt;
                    t /= cnt;
                }
                return c.dagger ? build_b_dagger(sys, choice) : build_b(sys, choice);
            }
            std::uint64_t s = SplitMix64::substream(pl.base_seed, j).next();
            return c.dagger ? sample_b_dagger(sys, s) : sample_b(sys, s);
        }();
        if (c.dagger) {
            TypeIDaggerCode code{b};
            if (!verify_selforthogonal(code).pass())
                throw std::logic_error("distance_experiment: constructed code failed verification");
            pl.weights[j] = minimum_weight(code, c.cap_weight);
        } else {
            TypeICode code{b};
            if (!verify_selfdual(code).pass())
                throw std::logic_error("distance_experiment: constructed code failed verification");
            pl.weights[j] = minimum_weight(code, c.cap_weight);
        }
    });

    for (std::size_t gi = 0; gi < plans.size(); ++gi) {
        PointPlan& pl = plans[gi];
        const GridPoint& g = c.grid[gi];
        std::uint64_t n = group_make(g.factors).n;
        std::map<std::uint64_t, std::uint64_t> histogram;
        for (std::uint64_t w : pl.weights) ++histogram[w];
        for (double delta : c.deltas) {
            DistanceRecord rec;
            rec.q = g.q;
            rec.factors = g.factors;
            rec.n = n;
            rec.dagger = c.dagger;
            rec.delta = delta;
            rec.population = to_decimal(pl.population);
            rec.mode = pl.mode;
            if (pl.mode == "refused") {
                rec.refusal = pl.refusal;
                rec.bound_ok = true;
                result.distances.push_back(std::move(rec));
                continue;
            }
            rec.examined = pl.jobs;
            // w/(2n) <= delta, with a hair of slack so delta = w/(2n) given
            // as a rounded decimal still counts the boundary
            double cut = delta * 2.0 * static_cast<double>(n) + 1e-9;
            for (std::uint64_t w : pl.weights)
                if (static_cast<double>(w) <= cut) ++rec.at_most;
            rec.fraction =
                rec.examined ? static_cast<double>(rec.at_most) / static_cast<double>(rec.examined)
                             : 0.0;
            double slack = 0.0;
            if (pl.mode == "sampled") {
                Wilson wi = wilson_interval(rec.at_most, rec.examined);
                rec.wilson_low = wi.low;
                rec.wilson_high = wi.high;
                slack = wi.radius;
            } else {
                rec.wilson_low = rec.wilson_high = rec.fraction;
            }
            rec.weight_histogram = histogram;
            BoundReport br;
            bool have_bound = true;
            try {
                br = ratio_bound(g.q, n, static_cast<long double>(delta), c.dagger);
            } catch (const std::exception&) {
                have_bound = false;  // delta outside [0, 1-1/q]
            }
            rec.applicable = have_bound && br.applicable;
            if (rec.applicable) {
                rec.ratio_exponent = static_cast<double>(br.ratio_exponent);
                double bound = std::pow(static_cast<double>(g.q), rec.ratio_exponent);
                rec.bound_ok = rec.fraction <= bound + slack + 1e-12;
                if (!rec.bound_ok) result.pass = false;
            } else {
                rec.ratio_exponent = std::numeric_limits<double>::quiet_NaN();
                rec.bound_ok = true;
            }
            result.distances.push_back(std::move(rec));
        }
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& c, unsigned workers) {
    auto start = std::chrono::steady_clock::now();
    ExperimentResult r =
        c.mode == "count-validate" ? validate_counts(c, workers) : distance_experiment(c, workers);
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace {

ordered_json config_json(const ExperimentConfig& c) {
    ordered_json j;
    j["mode"] = c.mode;
    ordered_json grid = ordered_json::array();
    for (const GridPoint& g : c.grid) {
        ordered_json gj;
        gj["q"] = g.q;
        gj["factors"] = g.factors;
        grid.push_back(std::move(gj));
    }
    j["grid"] = std::move(grid);
    ordered_json deltas = ordered_json::array();
    for (double d : c.deltas) deltas.push_back(round12(d));
    j["deltas"] = std::move(deltas);
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["caps"] = {{"brute", json_u128(c.cap_brute)}, {"weight", json_u128(c.cap_weight)}};
    j["out"] = c.out;
    j["dagger"] = c.dagger;
    return j;
}

ordered_json count_record_json(const CountRecord& r) {
    ordered_json j;
    j["q"] = r.q;
    j["group"] = r.factors;
    j["n"] = r.n;
    j["selfdual_formula"] = r.selfdual_formula;
    j["selfdual_oracle"] = r.selfdual_oracle;
    j["dagger_formula"] = r.dagger_formula;
    j["dagger_oracle"] = r.dagger_oracle;
    ordered_json comps = ordered_json::array();
    for (const ComponentCheck& ck : r.components) {
        ordered_json cj;
        cj["index"] = ck.index;
        cj["kind"] = ck.kind;
        cj["n_e"] = ck.n_e;
        cj["formula"] = ck.formula;
        cj["oracle"] = ck.oracle;
        cj["ok"] = ck.ok;
        comps.push_back(std::move(cj));
    }
    j["components"] = std::move(comps);
    j["status"] = r.status;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

ordered_json distance_record_json(const DistanceRecord& r) {
    ordered_json j;
    j["q"] = r.q;
    j["group"] = r.factors;
    j["n"] = r.n;
    j["dagger"] = r.dagger;
    j["delta"] = round12(r.delta);
    j["population"] = r.population;
    j["mode"] = r.mode;
    if (r.mode == "refused") {
        j["refusal"] = r.refusal;
        return j;
    }
    j["examined"] = r.examined;
    j["at_most"] = r.at_most;
    j["fraction"] = round12(r.fraction);
    j["wilson_low"] = round12(r.wilson_low);
    j["wilson_high"] = round12(r.wilson_high);
    j["applicable"] = r.applicable;
    if (r.applicable)
        j["ratio_exponent"] = round12(r.ratio_exponent);
    else
        j["ratio_exponent"] = nullptr;
    j["bound_ok"] = r.bound_ok;
    ordered_json hist = ordered_json::object();
    for (const auto& [w, cnt] : r.weight_histogram) hist[std::to_string(w)] = cnt;
    j["weights"] = std::move(hist);
    return j;
}

}  // namespace

std::string export_json(const ExperimentResult& r) {
    ordered_json j;
    j["config"] = config_json(r.config);
    if (r.config.mode == "count-validate") {
        ordered_json arr = ordered_json::array();
        for (const CountRecord& rec : r.counts) arr.push_back(count_record_json(rec));
        j["counts"] = std::move(arr);
    } else {
        ordered_json arr = ordered_json::array();
        for (const DistanceRecord& rec : r.distances) arr.push_back(distance_record_json(rec));
        j["distances"] = std::move(arr);
    }
    j["pass"] = r.pass;
    return j.dump(2) + "\n";
}

std::string export_csv(const ExperimentResult& r) {
    std::string out;
    if (r.config.mode == "count-validate") {
        out =
            "q,group,n,selfdual_formula,selfdual_oracle,dagger_formula,dagger_oracle,"
            "components,components_ok,status\n";
        for (const CountRecord& rec : r.counts) {
            std::size_t ok = 0;
            for (const ComponentCheck& ck : rec.components) ok += ck.ok;
            out += std::to_string(rec.q) + ',' + group_label(rec.factors) + ',' +
                   std::to_string(rec.n) + ',' + rec.selfdual_formula + ',' +
                   rec.selfdual_oracle + ',' + rec.dagger_formula + ',' + rec.dagger_oracle +
                   ',' + std::to_string(rec.components.size()) + ',' + std::to_string(ok) + ',' +
                   rec.status + '\n';
        }
        return out;
    }
    out =
        "q,group,n,dagger,delta,population,mode,examined,at_most,fraction,"
        "wilson_low,wilson_high,applicable,ratio_exponent,bound_ok\n";
    for (const DistanceRecord& rec : r.distances) {
        out += std::to_string(rec.q) + ',' + group_label(rec.factors) + ',' +
               std::to_string(rec.n) + ',' + (rec.dagger ? "true" : "false") + ',' +
               fmt12(rec.delta) + ',' + rec.population + ',' + rec.mode + ',';
        if (rec.mode == "refused") {
            out += "na,na,na,na,na,na,na,na\n";
            continue;
        }
        out += std::to_string(rec.examined) + ',' + std::to_string(rec.at_most) + ',' +
               fmt12(rec.fraction) + ',' + fmt12(rec.wilson_low) + ',' + fmt12(rec.wilson_high) +
               ',' + (rec.applicable ? "true" : "false") + ',' +
               (rec.applicable ? fmt12(rec.ratio_exponent) : std::string("na")) + ',' +
               (rec.bound_ok ? "true" : "false") + '\n';
    }
    return out;
}

std::vector<std::string> export_files(const ExperimentResult& r) {
    const std::string& out = r.config.out;
    if (out.empty()) throw std::invalid_argument("export: config.out is empty");
    auto ends_with = [&](const char* suf) {
        std::string s(suf);
        return out.size() >= s.size() && out.compare(out.size() - s.size(), s.size(), s) == 0;
    };
    auto write = [](const std::string& path, const std::string& bytes) {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("export: cannot open " + path);
        f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!f) throw std::runtime_error("export: write failed for " + path);
    };
    std::vector<std::string> written;
    if (ends_with(".json")) {
        write(out, export_json(r));
        written.push_back(out);
    } else if (ends_with(".csv")) {
        write(out, export_csv(r));
        written.push_back(out);
    } else {
        write(out + ".json", export_json(r));
        write(out + ".csv", export_csv(r));
        written.push_back(out + ".json");
        written.push_back(out + ".csv");
    }
    return written;
}

}  // namespace qac
