#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "conics/counting.hpp"
#include "conics/densities.hpp"
#include "conics/harness.hpp"
#include "conics/unimodular.hpp"
#include "conics/zeros.hpp"

using namespace conics;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --config file.json: top-level keys are global options, nested objects hold
// the options of the subcommand with that name.
class ConfigJson : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override
    {
        nlohmann::json j;
        try {
            input >> j;
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("config JSON must be an object");
        std::vector<CLI::ConfigItem> out;
        walk(j, {}, out);
        return out;
    }

private:
    static std::string scalar(const nlohmann::json& v)
    {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
    }

    static void walk(const nlohmann::json& j, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out)
    {
        for (const auto& [key, v] : j.items()) {
            if (v.is_object()) {
                auto p = parents;
                p.push_back(key);
                walk(v, p, out);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (v.is_array()) {
                for (const auto& e : v) item.inputs.push_back(scalar(e));
            } else {
                item.inputs.push_back(scalar(v));
            }
            out.push_back(std::move(item));
        }
    }
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// A path to a JSON file, or inline JSON when the argument starts with '{' or '['.
Json load_json(const std::string& arg)
{
    const auto first = arg.find_first_not_of(" \t\n");
    const std::string text = (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) ? arg : read_file(arg);
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw InputError("invalid JSON in '" + arg + "': " + e.what());
    }
}

IsometricNorm load_norm(const std::string& arg) { return arg.empty() ? IsometricNorm::sup() : norm_from_json(load_json(arg)); }

SpecialConic load_special(const std::string& arg)
{
    auto s = special_from_json(load_json(arg));
    if (!s) throw InputError("form has a nonzero y^2 coefficient; this command needs the special shape");
    return *s;
}

std::vector<i64> parse_list(const std::string& text)
{
    std::vector<i64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        i64 v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            throw InputError("bad integer '" + item + "' in list '" + text + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw InputError("bad integer '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<CorpusForm> corpus_from_json(const Json& j)
{
    const Json& list = j.is_object() && j.contains("forms") ? j.at("forms") : j;
    if (!list.is_array()) throw InputError("corpus JSON must be an array or {\"forms\": [...]}");
    std::vector<CorpusForm> out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Json& e = list[i];
        CorpusForm f{e.value("id", "f" + std::to_string(i)), form_from_json(e), std::nullopt, std::nullopt, std::nullopt};
        f.special = as_special(f.form);
        out.push_back(std::move(f));
    }
    return out;
}

struct Globals {
    std::string out;
    int threads = 1;
};

void emit(const Globals& g, const std::string& text)
{
    if (g.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw InputError("cannot write '" + g.out + "'");
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact point counts, identity batteries and leading constants for ternary conics"};
    app.require_subcommand(1);
    app.fallthrough();
    app.config_formatter(std::make_shared<ConfigJson>());
    app.set_config("--config", "", "JSON file with option values");

    Globals g;
    app.add_option("--out", g.out, "Write the result here instead of stdout");
    app.add_option("--threads", g.threads, "Worker threads (results do not depend on it)")->check(CLI::Range(1, 256));

    int rc = kExitOk;
    std::string out_text;

    // corpus
    auto* corpus = app.add_subcommand("corpus", "Generate a reproducible corpus of isotropic forms");
    CorpusSpec cspec;
    std::string shape = "special";
    corpus->add_option("--count", cspec.count)->required()->check(CLI::PositiveNumber);
    corpus->add_option("--height", cspec.height_bound)->required()->check(CLI::PositiveNumber);
    corpus->add_option("--shape", shape)->check(CLI::IsMember({"special", "general"}));
    corpus->add_option("--seed", cspec.seed);
    corpus->callback([&] {
        cspec.shape = shape == "general" ? Shape::general : Shape::special;
        Json forms = Json::array();
        for (const auto& f : generate_corpus(cspec)) forms.push_back(to_json(f));
        out_text = dump(Json{{"spec_version", kSpecVersion},
                             {"count", cspec.count},
                             {"height_bound", cspec.height_bound},
                             {"shape", shape},
                             {"seed", cspec.seed},
                             {"forms", forms}});
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Run the identity batteries on a corpus");
    std::string corpus_path;
    VerifyOptions vopt;
    verify->add_option("--corpus", corpus_path, "Corpus JSON as written by 'corpus'")->required();
    verify->add_option("--bmax", vopt.b_max)->check(CLI::Range(1, 100));
    verify->add_option("--seed", vopt.seed);
    verify->add_option("--adj-samples", vopt.adj_samples)->check(CLI::NonNegativeNumber);
    verify->add_option("--pairs", vopt.multiplicativity_pairs)->check(CLI::NonNegativeNumber);
    verify->add_option("--rho-limit", vopt.rho_support_limit)->check(CLI::PositiveNumber);
    verify->add_option("--radius", vopt.round_trip_radius)->check(CLI::PositiveNumber);
    verify->callback([&] {
        vopt.threads = g.threads;
        const auto rep = verify_identities(corpus_from_json(load_json(corpus_path)), vopt);
        out_text = dump(to_json(rep));
        if (!rep.passed()) rc = kExitFailed;
    });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "N(Q,B) against c_Q B over a list of B, as CSV");
    std::vector<std::string> sweep_forms;
    std::string sweep_corpus, sweep_norm, sweep_bs;
    double sweep_tol = 1e-3;
    bool no_timings = false;
    sweep->add_option("--form", sweep_forms, "Form JSON (repeatable)");
    sweep->add_option("--corpus", sweep_corpus, "Corpus JSON; every form is swept");
    sweep->add_option("--norm", sweep_norm);
    sweep->add_option("--B", sweep_bs, "Comma-separated B values")->required();
    sweep->add_option("--tol", sweep_tol)->check(CLI::Range(1e-12, 0.05));
    sweep->add_flag("--no-timings", no_timings, "Write 0 in elapsed_ms so output is byte-reproducible");
    sweep->callback([&] {
        std::vector<std::pair<std::string, TernaryQuadraticForm>> forms;
        for (const auto& f : sweep_forms) forms.emplace_back(f, form_from_json(load_json(f)));
        if (!sweep_corpus.empty())
            for (const auto& f : corpus_from_json(load_json(sweep_corpus))) forms.emplace_back(f.id, f.form);
        if (forms.empty()) throw InputError("sweep needs --form or --corpus");
        const auto bs = parse_list(sweep_bs);
        const auto norm = load_norm(sweep_norm);
        std::vector<std::vector<SweepRow>> rows(forms.size());
        parallel_for(forms.size(), g.threads, [&](std::size_t i) {
            rows[i] = run_sweep(forms[i].first, forms[i].second, norm, bs, std::nullopt, sweep_tol);
        });
        std::vector<SweepRow> all;
        for (auto& r : rows)
            for (auto& row : r) {
                if (no_timings) row.elapsed_ms = 0;
                all.push_back(row);
            }
        out_text = sweep_csv(all);
    });

    // count
    auto* count = app.add_subcommand("count", "Count primitive zeros with ||x|| <= B");
    std::string count_form, count_norm, count_bs, method = "both";
    bool count_csv = false;
    std::optional<i64> zero_cap;
    count->add_option("--form", count_form)->required();
    count->add_option("--B", count_bs, "B, or a comma-separated list with --csv")->required();
    count->add_option("--method", method)->check(CLI::IsMember({"brute", "param", "both"}));
    count->add_option("--norm", count_norm);
    count->add_option("--cap", zero_cap, "Zero-search cap");
    count->add_flag("--csv", count_csv, "One CSV row per B");
    count->add_flag("--no-timings", no_timings, "Write 0 for elapsed times");
    count->callback([&] {
        const auto q = form_from_json(load_json(count_form));
        const auto norm = load_norm(count_norm);
        const auto bs = parse_list(count_bs);
        if (bs.empty()) throw InputError("--B is empty");
        if (!count_csv && bs.size() != 1) throw InputError("several B values need --csv");
        std::vector<CountReport> reports(bs.size());
        parallel_for(bs.size(), g.threads, [&](std::size_t i) {
            CountReport r;
            if (method != "brute") r = count_N_param(q, norm, bs[i], zero_cap);
            r.b = bs[i];
            if (method != "param") {
                const auto start = std::chrono::steady_clock::now();
                r.n_brute = count_N_brute(q, norm, bs[i]);
                r.elapsed_ms_brute =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            }
            if (no_timings) r.elapsed_ms_brute = r.elapsed_ms_param = 0;
            reports[i] = std::move(r);
        });
        for (const auto& r : reports)
            if (r.n_brute && r.n_param && *r.n_brute != *r.n_param) rc = kExitFailed;
        if (!count_csv) {
            out_text = dump(to_json(reports.front()));
            return;
        }
        std::ostringstream os;
        os << "B,n_brute,n_param,script_n,elapsed_ms_brute,elapsed_ms_param\n";
        auto opt = [](const std::optional<i64>& v) { return v ? std::to_string(*v) : std::string(); };
        for (const auto& r : reports) {
            char times[64];
            std::snprintf(times, sizeof times, "%.3f,%.3f", r.elapsed_ms_brute, r.elapsed_ms_param);
            os << r.b << ',' << opt(r.n_brute) << ',' << opt(r.n_param) << ',' << opt(r.script_n) << ',' << times << '\n';
        }
        out_text = os.str();
    });

    // constant
    auto* constant = app.add_subcommand("constant", "Leading constants c_Q and c'_Q");
    std::string const_form, const_norm;
    double const_tol = 1e-3;
    bool compare = false;
    constant->add_option("--form", const_form)->required();
    constant->add_option("--norm", const_norm);
    constant->add_option("--tol", const_tol)->check(CLI::Range(1e-12, 0.05));
    constant->add_flag("--compare-cprime", compare, "Also compute c'_Q and the ratio c_Q/c'_Q");
    constant->callback([&] {
        const Json j = load_json(const_form);
        const auto q = form_from_json(j);
        auto norm = load_norm(const_norm);
        DensityReport rep = peyre_constant(q, norm, const_tol);
        if (compare) {
            // c'_Q lives on the special form, under the transported norm
            const auto red = reduce_to_special(q, norm);
            const DensityReport cp = c_prime(red.special, red.norm, const_tol);
            rep.volume_v = cp.volume_v;
            rep.sigma_p_prime_list = cp.sigma_p_prime_list;
            rep.euler = cp.euler;
            rep.c_prime_q = cp.c_prime_q;
            if (rep.c_q && rep.c_prime_q && rep.c_prime_q->value != 0) rep.ratio = rep.c_q->value / rep.c_prime_q->value;
            if (!cp.diagnostic.empty())
                rep.diagnostic += (rep.diagnostic.empty() ? "" : "; ") + cp.diagnostic;
        }
        out_text = dump(to_json(rep));
    });

    // zeros
    auto* zeros = app.add_subcommand("zeros", "Smallest primitive zero");
    std::string zeros_form;
    std::optional<i64> cap;
    zeros->add_option("--form", zeros_form)->required();
    zeros->add_option("--cap", cap)->check(CLI::PositiveNumber);
    zeros->callback([&] {
        const auto q = form_from_json(load_json(zeros_form));
        const auto res = cap ? find_primitive_zero(q, *cap) : find_primitive_zero(q);
        Json j{{"spec_version", kSpecVersion}, {"cap", res.cap}, {"conclusive", res.conclusive}};
        if (res.zero) {
            j["xi"] = Json(res.zero->xi);
            j["search_radius_used"] = res.zero->search_radius_used;
        } else {
            j["xi"] = nullptr;
        }
        j["message"] = res.message();
        out_text = dump(j);
    });

    // complete
    auto* complete = app.add_subcommand("complete", "SL3(Z) matrix with a given second column");
    std::string vec;
    complete->add_option("--vector", vec, "e.g. \"2,3,5\"")->required();
    complete->callback([&] {
        const auto v = parse_list(vec);
        if (v.size() != 3) throw InputError("--vector needs three integers");
        const IVec3 a{v[0], v[1], v[2]};
        const auto m = complete_to_sl3(a);
        out_text = dump(Json{{"spec_version", kSpecVersion},
                             {"vector", Json(a)},
                             {"matrix", to_json(m.matrix())},
                             {"contract_ok", satisfies_completion_contract(m, a)}});
    });

    // rho
    auto* rho = app.add_subcommand("rho", "rho*(n) for a special conic");
    std::string rho_form;
    i64 rho_n = 1;
    rho->add_option("--form", rho_form)->required();
    rho->add_option("--n", rho_n)->required()->check(CLI::PositiveNumber);
    rho->callback([&] {
        const auto s = load_special(rho_form);
        Json j{{"spec_version", kSpecVersion}, {"n", rho_n}, {"rho_star", rho_star(s, rho_n)}};
        if (rho_n <= kRhoDirectCap) j["rho_star_direct"] = rho_star_direct(s, rho_n);
        j["lambda_max"] = ParamSystem(s).lambda_max();
        out_text = dump(j);
    });

    // param
    auto* param = app.add_subcommand("param", "Point of a special conic from a parameter (s,t)");
    std::string param_form;
    i64 ps = 0, pt = 0;
    param->add_option("--form", param_form)->required();
    param->add_option("--s", ps)->required();
    param->add_option("--t", pt)->required();
    param->callback([&] {
        const ParamSystem sys(load_special(param_form));
        const auto p = point_from_parameter(sys, ps, pt);
        const auto q = sys.q(ps, pt);
        out_text = dump(Json{{"spec_version", kSpecVersion},
                             {"s", ps},
                             {"t", pt},
                             {"q", Json{to_string(q[0]), to_string(q[1]), to_string(q[2])}},
                             {"lambda", p.lambda},
                             {"point", Json(p.point)},
                             {"exceptional", p.exceptional},
                             {"tangent_parameter", Json{sys.tangent_parameter().first, sys.tangent_parameter().second}}});
    });

    try {
        app.parse(argc, argv);
        emit(g, out_text);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const std::exception& e) {
        // bad input, unreadable files, and computations refusing their arguments
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return rc;
}
