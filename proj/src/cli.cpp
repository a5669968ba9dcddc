#include "nblab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nblab/arith.hpp"
#include "nblab/bd.hpp"
#include "nblab/errors.hpp"
#include "nblab/extremal.hpp"
#include "nblab/kappa.hpp"
#include "nblab/lfun.hpp"
#include "nblab/ortho.hpp"

namespace nblab {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string fmt_cplx(cplx z) {
    std::string s = fmt17(z.real());
    s += z.imag() < 0 ? "-" : "+";
    s += fmt17(std::abs(z.imag()));
    s += "i";
    return s;
}

cplx parse_cplx(const std::string& tok) {
    // forms: "a", "a+bi", "a-bi"
    std::string s = tok;
    if (!s.empty() && (s.back() == 'i' || s.back() == 'j')) {
        s.pop_back();
        std::size_t split = std::string::npos;
        for (std::size_t i = 1; i < s.size(); ++i) {
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
                split = i;
        }
        if (split == std::string::npos)
            throw UsageError("coeffs: cannot parse complex token '" + tok + "'");
        double re = std::stod(s.substr(0, split));
        double im = std::stod(s.substr(split));
        return {re, im};
    }
    return {std::stod(s), 0.0};
}

std::vector<cplx> parse_coeff_list(const std::string& text) {
    std::vector<cplx> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(parse_cplx(tok));
    }
    if (out.empty()) throw UsageError("coeffs: empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw UsageError(key + ": cannot parse '" + tok + "'");
        }
    }
    if (out.empty()) throw UsageError(key + ": empty list");
    return out;
}

std::vector<double> parse_grid(const std::string& spec) {
    double a, b;
    long steps;
    char c1, c2;
    std::stringstream ss(spec);
    if (!(ss >> a >> c1 >> b >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1)
        throw UsageError("grid: expected a:b:steps, got '" + spec + "'");
    std::vector<double> g(steps);
    for (long i = 0; i < steps; ++i)
        g[i] = steps == 1 ? a : a + (b - a) * static_cast<double>(i) / (steps - 1);
    return g;
}

std::pair<std::size_t, std::size_t> parse_zero_range(const std::string& spec) {
    auto dots = spec.find("..");
    if (dots == std::string::npos) {
        std::size_t k = std::stoull(spec);
        return {k, k};
    }
    return {std::stoull(spec.substr(0, dots)), std::stoull(spec.substr(dots + 2))};
}

const CharacterTable& select_char(std::vector<CharacterTable>& chars, std::uint64_t idx) {
    if (idx >= chars.size())
        throw UsageError("char-index: out of range (q has " + std::to_string(chars.size()) +
                         " characters)");
    return chars[idx];
}

// option spec shared by parse_config and to_flat
struct Schema {
    // keys present per command, in emission order
    static std::vector<std::string> keys(const std::string& cmd) {
        if (cmd == "chars") return {"q"};
        if (cmd == "lfun") return {"q", "char-index", "sigma", "t", "grid"};
        if (cmd == "kappa") return {"q", "char-index", "p", "x", "scan"};
        if (cmd == "bd-distance") return {"q", "char-index", "p", "n", "eps"};
        if (cmd == "plancherel-check") return {"q", "char-index", "p", "T", "coeffs"};
        if (cmd == "kernel") return {"p", "n", "u", "v"};
        if (cmd == "kernel-scan") return {"p", "u", "n-list"};
        if (cmd == "extremal") return {"p", "n", "nodes"};
        if (cmd == "extremal-sweep") return {"p", "n-list", "nodes"};
        if (cmd == "compare") return {"n", "zeros", "grid"};
        return {};
    }
};

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += fmt17(v[i]);
    }
    return s;
}

std::string join_u64(const std::vector<std::uint64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

std::string join_coeffs(const std::vector<cplx>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += fmt_cplx(v[i]);
    }
    return s;
}

std::string value_for_key(const RunConfig& c, const std::string& key) {
    if (key == "q") return std::to_string(c.q);
    if (key == "char-index") return std::to_string(c.char_index);
    if (key == "p") return fmt17(c.p);
    if (key == "n") return std::to_string(c.n);
    if (key == "nodes") return join_doubles(c.nodes);
    if (key == "n-list") return join_u64(c.n_list);
    if (key == "coeffs") return join_coeffs(c.coeffs);
    if (key == "sigma") return fmt17(c.sigma);
    if (key == "t") return fmt17(c.t);
    if (key == "x") return fmt17(c.x);
    if (key == "u") return fmt17(c.u);
    if (key == "v") return fmt17(c.v);
    if (key == "T") return fmt17(c.T);
    if (key == "eps") return fmt17(c.eps);
    if (key == "scan") return fmt17(c.scan);
    if (key == "grid") return c.grid;
    if (key == "zeros") return c.zeros;
    return "";
}

}  // namespace

std::string RunConfig::to_flat() const {
    std::string s = "command=" + command + "\n";
    for (const std::string& key : Schema::keys(command))
        s += key + "=" + value_for_key(*this, key) + "\n";
    if (json) s += "json=true\n";
    if (csv) s += "csv=true\n";
    if (profile) s += "profile=true\n";
    return s;
}

RunConfig parse_config(const std::vector<std::string>& args_in) {
    // Extract --config FILE first; its key=value lines become defaults that
    // explicit flags override (they are injected before the argv flags).
    std::vector<std::string> args;
    std::string config_file;
    for (std::size_t i = 0; i < args_in.size(); ++i) {
        if (args_in[i] == "--config") {
            if (i + 1 >= args_in.size()) throw UsageError("--config: missing file name");
            config_file = args_in[++i];
        } else {
            args.push_back(args_in[i]);
        }
    }
    std::vector<std::string> injected;
    if (!config_file.empty()) {
        std::ifstream in(config_file);
        if (!in) throw UsageError("--config: cannot open '" + config_file + "'");
        std::string line, file_command;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw UsageError("--config: expected key=value, got '" + line + "'");
            std::string key = line.substr(0, eq), value = line.substr(eq + 1);
            if (key == "command") {
                file_command = value;
            } else if (key == "json" || key == "csv" || key == "profile") {
                if (value == "true") injected.push_back("--" + key);
            } else {
                injected.push_back("--" + key);
                injected.push_back(value);
            }
        }
        const bool has_command = !args.empty() && args.front()[0] != '-';
        if (!has_command) {
            if (file_command.empty())
                throw UsageError("--config: no command given on the command line or in the file");
            args.insert(args.begin(), file_command);
        }
        args.insert(args.begin() + 1, injected.begin(), injected.end());
    }

    RunConfig cfg;
    CLI::App app{"computable objects of the Nyman-Beurling / Baez-Duarte theory"};
    app.require_subcommand(1);

    std::string coeff_text, n_list_text, nodes_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", cfg.json, "emit JSON (schema_version + config + result)");
        sub->add_flag("--csv", cfg.csv, "emit CSV");
        sub->add_flag("--print-config", cfg.print_config,
                      "echo the fully resolved flat config and exit");
        sub->add_option("--out", cfg.out_path, "write the artifact to a file")
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };
    auto opt = [&](CLI::App* sub, const std::string& name, auto& target,
                   const std::string& desc) {
        return sub->add_option(name, target, desc)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };
    auto p_opt = [&](CLI::App* sub) {
        opt(sub, "--p", cfg.p, "exponent p in (1, 2]")->check([](const std::string& s) {
            double v = std::stod(s);
            return (v > 1.0 && v <= 2.0) ? std::string{}
                                         : std::string("p must lie in (1, 2]");
        });
    };

    CLI::App* chars = app.add_subcommand("chars", "list Dirichlet characters mod q");
    opt(chars, "--q", cfg.q, "modulus")->required();
    add_common(chars);

    CLI::App* lfun = app.add_subcommand("lfun", "evaluate L(s, chi)");
    opt(lfun, "--q", cfg.q, "modulus");
    opt(lfun, "--char-index", cfg.char_index, "character index from `chars`");
    opt(lfun, "--sigma", cfg.sigma, "real part of s")->required();
    opt(lfun, "--t", cfg.t, "imaginary part of s");
    opt(lfun, "--grid", cfg.grid, "t0:t1:steps CSV sweep over t");
    add_common(lfun);

    CLI::App* kappa = app.add_subcommand("kappa", "evaluate kappa or scan its sup");
    opt(kappa, "--q", cfg.q, "modulus");
    opt(kappa, "--char-index", cfg.char_index, "character index");
    p_opt(kappa);
    opt(kappa, "--x", cfg.x, "evaluation point");
    opt(kappa, "--scan", cfg.scan, "emit running sup CSV up to this X");
    add_common(kappa);

    CLI::App* bd = app.add_subcommand("bd-distance", "Baez-Duarte distance d_n^2");
    opt(bd, "--q", cfg.q, "modulus");
    opt(bd, "--char-index", cfg.char_index, "character index");
    p_opt(bd);
    opt(bd, "--n", cfg.n, "number of frequencies")->required();
    opt(bd, "--eps", cfg.eps, "integration cutoff override (0: per-frequency default)");
    bd->add_flag("--profile", cfg.profile, "emit one row per n' = 1..n");
    add_common(bd);

    CLI::App* pl = app.add_subcommand("plancherel-check",
                                      "time vs frequency norm cross-check");
    opt(pl, "--q", cfg.q, "modulus");
    opt(pl, "--char-index", cfg.char_index, "character index");
    p_opt(pl);
    opt(pl, "--T", cfg.T, "frequency truncation");
    opt(pl, "--coeffs", coeff_text, "comma list: a or a+bi")->required();
    add_common(pl);

    CLI::App* kernel = app.add_subcommand("kernel", "kernel K_n(u, v)");
    p_opt(kernel);
    opt(kernel, "--n", cfg.n, "degree")->required();
    opt(kernel, "--u", cfg.u, "first argument")->required();
    opt(kernel, "--v", cfg.v, "second argument")->required();
    add_common(kernel);

    CLI::App* kscan = app.add_subcommand("kernel-scan", "K_n(u,u) along an n ladder");
    p_opt(kscan);
    opt(kscan, "--u", cfg.u, "diagonal argument")->required();
    opt(kscan, "--n-list", n_list_text, "comma list of n (1e3,1e4,... accepted)")->required();
    add_common(kscan);

    CLI::App* ext = app.add_subcommand("extremal", "minimum-norm interpolant");
    p_opt(ext);
    opt(ext, "--n", cfg.n, "degree")->required();
    opt(ext, "--nodes", nodes_text, "comma list of interpolation ordinates")->required();
    add_common(ext);

    CLI::App* sweep = app.add_subcommand("extremal-sweep", "d^2 along an n ladder");
    p_opt(sweep);
    opt(sweep, "--n-list", n_list_text, "comma list of n")->required();
    opt(sweep, "--nodes", nodes_text, "comma list of interpolation ordinates")->required();
    add_common(sweep);

    CLI::App* cmp = app.add_subcommand("compare",
                                       "mollifier vs minimum-norm interpolant on a grid");
    opt(cmp, "--n", cfg.n, "degree")->required();
    opt(cmp, "--zeros", cfg.zeros, "zeta-zero ordinate range k1..k2")->required();
    opt(cmp, "--grid", cfg.grid, "a:b:steps evaluation grid")->required();
    add_common(cmp);

    std::vector<const char*> argv;
    argv.push_back("nblab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw;  // handled by run_cli
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (!coeff_text.empty()) cfg.coeffs = parse_coeff_list(coeff_text);
    if (!nodes_text.empty()) cfg.nodes = parse_double_list(nodes_text, "nodes");
    if (!n_list_text.empty()) {
        std::stringstream ss(n_list_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            double v = std::stod(tok);
            if (!(v >= 1.0 && v <= 1e12) || std::floor(v) != v)
                throw UsageError("n-list: entries must be integers >= 1 (got '" + tok + "')");
            cfg.n_list.push_back(static_cast<std::uint64_t>(v));
        }
        if (cfg.n_list.empty()) throw UsageError("n-list: empty list");
    }
    return cfg;
}

namespace {

json config_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    for (const std::string& key : Schema::keys(c.command))
        j[key] = value_for_key(c, key);
    return j;
}

void emit_json(const RunConfig& c, const json& result, std::ostream& out) {
    json j;
    j["schema_version"] = 1;
    j["config"] = config_json(c);
    j["result"] = result;
    out << j.dump(2) << "\n";
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

void run_chars(const RunConfig& c, std::ostream& out) {
    auto chars = characters_mod(c.q);
    if (c.json) {
        json rows = json::array();
        for (std::size_t i = 0; i < chars.size(); ++i) {
            json row;
            row["index"] = i;
            row["principal"] = chars[i].is_principal();
            json vals = json::array();
            for (cplx z : chars[i].values()) vals.push_back(cplx_json(z));
            row["values"] = vals;
            rows.push_back(row);
        }
        emit_json(c, rows, out);
        return;
    }
    out << "index,principal,values\n";
    for (std::size_t i = 0; i < chars.size(); ++i) {
        out << i << "," << (chars[i].is_principal() ? 1 : 0) << ",";
        auto vals = chars[i].values();
        for (std::size_t k = 0; k < vals.size(); ++k)
            out << (k ? " " : "") << fmt_cplx(vals[k]);
        out << "\n";
    }
}

void run_lfun(const RunConfig& c, std::ostream& out) {
    auto chars = characters_mod(c.q);
    const CharacterTable& chi = select_char(chars, c.char_index);
    if (!c.grid.empty()) {
        out << "t,re,im\n";
        for (double t : parse_grid(c.grid)) {
            EvalResult r = l_eval_full(chi, {c.sigma, t});
            out << fmt17(t) << "," << fmt17(r.value.real()) << "," << fmt17(r.value.imag())
                << "\n";
        }
        return;
    }
    EvalResult r = l_eval_full(chi, {c.sigma, c.t});
    if (c.json) {
        json res;
        res["re"] = r.value.real();
        res["im"] = r.value.imag();
        res["err_bound"] = r.err_bound;
        emit_json(c, res, out);
        return;
    }
    out << "re=" << fmt17(r.value.real()) << " im=" << fmt17(r.value.imag())
        << " err_bound=" << fmt17(r.err_bound) << "\n";
}

void run_kappa(const RunConfig& c, std::ostream& out) {
    auto chars = characters_mod(c.q);
    KappaSpec spec(select_char(chars, c.char_index), c.p);
    if (c.scan > 0.0) {
        out << "x,running_sup\n";
        const auto xmax = static_cast<std::uint64_t>(c.scan);
        const std::uint64_t stride = std::max<std::uint64_t>(1, xmax / 1000);
        const cplx* S = spec.prefix_data(xmax + 1);
        double sup = spec.beta();
        for (std::uint64_t m = 1; m <= xmax; ++m) {
            double left = std::abs(
                cplx{spec.beta() * std::pow(static_cast<double>(m), spec.alpha()), 0.0} - S[m]);
            double right = std::abs(
                cplx{spec.beta() * std::pow(static_cast<double>(m + 1), spec.alpha()), 0.0} -
                S[m]);
            sup = std::max({sup, left, right});
            if (m % stride == 0 || m == xmax) out << m << "," << fmt17(sup) << "\n";
        }
        return;
    }
    cplx v = spec.kappa(c.x);
    if (c.json) {
        json res;
        res["re"] = v.real();
        res["im"] = v.imag();
        res["alpha"] = spec.alpha();
        res["beta"] = spec.beta();
        emit_json(c, res, out);
        return;
    }
    out << "re=" << fmt17(v.real()) << " im=" << fmt17(v.imag()) << "\n";
}

void run_bd(const RunConfig& c, std::ostream& out) {
    auto chars = characters_mod(c.q);
    KappaSpec spec(select_char(chars, c.char_index), c.p);
    BdOptions opts;
    if (c.eps > 0.0) opts.eps.eps_override = c.eps;
    if (c.json) {
        BdResult r = bd_distance(spec, c.n, opts);
        json res;
        res["n"] = c.n;
        res["d2"] = r.d2;
        res["cond"] = r.cond_estimate;
        res["tail"] = r.tail_bound;
        emit_json(c, res, out);
        return;
    }
    out << "n,d2,cond,tail\n";
    if (c.profile) {
        auto rows = bd_distance_profile(spec, c.n, opts);
        for (std::size_t i = 0; i < rows.size(); ++i)
            out << (i + 1) << "," << fmt17(rows[i].d2) << "," << fmt17(rows[i].cond_estimate)
                << "," << fmt17(rows[i].tail_bound) << "\n";
    } else {
        BdResult r = bd_distance(spec, c.n, opts);
        out << c.n << "," << fmt17(r.d2) << "," << fmt17(r.cond_estimate) << ","
            << fmt17(r.tail_bound) << "\n";
    }
}

void run_plancherel(const RunConfig& c, std::ostream& out) {
    auto chars = characters_mod(c.q);
    PlancherelResult r =
        plancherel_check(select_char(chars, c.char_index), c.p, c.coeffs, c.T);
    if (c.json) {
        json res;
        res["time_value"] = r.time_value;
        res["freq_value"] = r.freq_value;
        res["discrepancy"] = r.discrepancy;
        res["time_tail_bound"] = r.time_tail_bound;
        res["freq_tail_report"] = r.freq_tail_report;
        emit_json(c, res, out);
        return;
    }
    out << "time_value,freq_value,discrepancy,time_tail_bound,freq_tail_report\n";
    out << fmt17(r.time_value) << "," << fmt17(r.freq_value) << "," << fmt17(r.discrepancy)
        << "," << fmt17(r.time_tail_bound) << "," << fmt17(r.freq_tail_report) << "\n";
}

void run_kernel(const RunConfig& c, std::ostream& out) {
    cplx k = kernel_eval(c.p, c.n, c.u, c.v);
    if (c.json) {
        json res;
        res["re"] = k.real();
        res["im"] = k.imag();
        emit_json(c, res, out);
        return;
    }
    out << "re=" << fmt17(k.real()) << " im=" << fmt17(k.imag()) << "\n";
}

void run_kernel_scan(const RunConfig& c, std::ostream& out) {
    out << "n,kernel,ratio\n";
    const double norm2 = 1.0 / (c.p * c.p) + c.u * c.u;
    kernel_stream(c.p, c.u, c.u, c.n_list, [&](std::size_t i, cplx val) {
        double logn = std::log(static_cast<double>(c.n_list[i]));
        double pred = 0.5 * c.p * norm2 * logn;
        out << c.n_list[i] << "," << fmt17(val.real()) << ","
            << fmt17(pred > 0 ? val.real() / pred : 0.0) << "\n";
    });
}

void run_extremal(const RunConfig& c, std::ostream& out) {
    ExtremalSolution sol = solve_problem2(c.p, c.n, c.nodes);
    double resid_max = *std::max_element(sol.residuals.begin(), sol.residuals.end());
    double ratio = sol.predicted > 0.0 ? sol.d2 / sol.predicted : 0.0;
    if (c.csv) {
        out << "# d2=" << fmt17(sol.d2) << "\n# predicted=" << fmt17(sol.predicted)
            << "\n# ratio=" << fmt17(ratio) << "\n# residual_max=" << fmt17(resid_max)
            << "\n# cond=" << fmt17(sol.cond_estimate) << "\n";
        out << "k,psi_re,psi_im,mono_re,mono_im\n";
        for (std::size_t k = 1; k <= sol.psi_coeffs.size(); ++k)
            out << k << "," << fmt17(sol.psi_coeffs[k - 1].real()) << ","
                << fmt17(sol.psi_coeffs[k - 1].imag()) << ","
                << fmt17(sol.mono_coeffs[k - 1].real()) << ","
                << fmt17(sol.mono_coeffs[k - 1].imag()) << "\n";
        return;
    }
    json res;
    res["d2"] = sol.d2;
    res["predicted"] = sol.predicted;
    res["ratio"] = ratio;
    res["residual_max"] = resid_max;
    res["cond"] = sol.cond_estimate;
    json bc = json::array(), mc = json::array();
    for (cplx z : sol.psi_coeffs) bc.push_back(cplx_json(z));
    for (cplx z : sol.mono_coeffs) mc.push_back(cplx_json(z));
    res["psi_coeffs"] = bc;
    res["mono_coeffs"] = mc;
    if (c.json) {
        emit_json(c, res, out);
    } else {
        out << "d2=" << fmt17(sol.d2) << " predicted=" << fmt17(sol.predicted)
            << " ratio=" << fmt17(ratio) << " residual_max=" << fmt17(resid_max)
            << " cond=" << fmt17(sol.cond_estimate) << "\n";
    }
}

void run_sweep(const RunConfig& c, std::ostream& out) {
    AsymptoticTable t = asymptotic_table(c.p, c.nodes, c.n_list);
    if (c.json) {
        json res;
        res["target_sum"] = t.target_sum;
        res["fit_slope"] = t.fit_slope;
        res["fit_intercept"] = t.fit_intercept;
        json rows = json::array();
        for (const auto& r : t.rows) {
            json row;
            row["n"] = r.n;
            row["d2"] = r.d2;
            row["d2_logn"] = r.d2_logn;
            row["ratio"] = r.ratio;
            rows.push_back(row);
        }
        res["rows"] = rows;
        emit_json(c, res, out);
        return;
    }
    out << "# target_sum=" << fmt17(t.target_sum) << "\n# fit_slope=" << fmt17(t.fit_slope)
        << "\n# fit_intercept=" << fmt17(t.fit_intercept) << "\n";
    out << "n,d2,d2_logn,ratio\n";
    for (const auto& r : t.rows)
        out << r.n << "," << fmt17(r.d2) << "," << fmt17(r.d2_logn) << "," << fmt17(r.ratio)
            << "\n";
}

void run_compare(const RunConfig& c, std::ostream& out) {
    auto [k1, k2] = parse_zero_range(c.zeros);
    std::vector<double> nodes = zeta_zeros(k1, k2);
    std::vector<double> grid = parse_grid(c.grid);
    CompareResult r = compare_mollifier(c.n, nodes, grid);
    if (c.json) {
        json res;
        res["correlation"] = r.correlation;
        json rows = json::array();
        for (const auto& row : r.rows)
            rows.push_back(json::array(
                {row.t, row.one_minus_zeta_vn_abs, row.b_tilde_abs}));
        res["rows"] = rows;
        emit_json(c, res, out);
        return;
    }
    out << "# correlation=" << fmt17(r.correlation) << "\n";
    out << "t,one_minus_zeta_vn_abs,b_tilde_abs\n";
    for (const auto& row : r.rows)
        out << fmt17(row.t) << "," << fmt17(row.one_minus_zeta_vn_abs) << ","
            << fmt17(row.b_tilde_abs) << "\n";
}

}  // namespace

void run(const RunConfig& c, std::ostream& out) {
    if (c.print_config) {
        out << c.to_flat();
        return;
    }
    if (c.command == "chars") return run_chars(c, out);
    if (c.command == "lfun") return run_lfun(c, out);
    if (c.command == "kappa") return run_kappa(c, out);
    if (c.command == "bd-distance") return run_bd(c, out);
    if (c.command == "plancherel-check") return run_plancherel(c, out);
    if (c.command == "kernel") return run_kernel(c, out);
    if (c.command == "kernel-scan") return run_kernel_scan(c, out);
    if (c.command == "extremal") return run_extremal(c, out);
    if (c.command == "extremal-sweep") return run_sweep(c, out);
    if (c.command == "compare") return run_compare(c, out);
    throw UsageError("unknown command '" + c.command + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        RunConfig cfg = parse_config(args);
        if (!cfg.out_path.empty()) {
            std::ofstream file(cfg.out_path);
            if (!file) throw UsageError("--out: cannot open '" + cfg.out_path + "'");
            run(cfg, file);
        } else {
            run(cfg, out);
        }
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << "usage: nblab <command> [flags]; commands: chars lfun kappa bd-distance "
               "plancherel-check kernel kernel-scan extremal extremal-sweep compare\n";
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        err << "precision failure: " << e.what()
            << " (achieved bound " << fmt17(e.achieved_bound) << ")\n";
        return 4;
    } catch (const ConditioningError& e) {
        err << "conditioning error: " << e.what() << " (cond " << fmt17(e.cond_estimate)
            << ")\n";
        return 3;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace nblab
