#include "aggar/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "aggar/complexfn.hpp"
#include "aggar/csv_io.hpp"
#include "aggar/diagnostics.hpp"
#include "aggar/errors.hpp"
#include "aggar/json_io.hpp"
#include "aggar/moments.hpp"
#include "aggar/panel.hpp"
#include "aggar/tolerances.hpp"
#include "aggar/wold.hpp"

namespace aggar::cli {
namespace {

using io::format_number;
using io::json;

struct Options {
    std::vector<double> beta;
    bool uniform = false;
    std::string poly;
    std::optional<double> dirac;
    std::string spec_file;

    std::size_t K = 200;
    std::optional<std::uint64_t> seed;
    std::size_t N = 1000;
    std::size_t T = 1000;
    double sigma_eps = 1.0;
    double sigma_eta = 1.0;
    std::size_t burn_in = kDefaultBurnIn;
    unsigned threads = 1;
    std::string format;
    std::string out_path;

    std::string from_moments;
    double re = 0.0;
    double im = 0.0;
    std::string method = "auto";
    bool grid = false;
    std::string n_list = "100,1000,10000";
    std::string seeds = "1,2,3";
};

struct SeedChoice {
    std::uint64_t value = 0;
    std::string source = "default";
};

std::vector<double> split_numbers(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw ValidationError(std::string(what) + ": empty entry in '" + text + "'");
        out.push_back(io::parse_number(item));
    }
    if (out.empty()) throw ValidationError(std::string(what) + ": no values");
    return out;
}

std::uint64_t parse_seed(const std::string& text, const char* what) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ValidationError(std::string(what) + ": not an unsigned 64-bit seed: '" + text + "'");
    }
    return v;
}

SeedChoice resolve_seed(const Options& o, const Environment& env) {
    if (o.seed) return {*o.seed, "flag"};
    if (env.seed) return {parse_seed(*env.seed, kSeedEnvVar), std::string("env:") + kSeedEnvVar};
    return {};
}

DistributionSpec resolve_spec(const Options& o) {
    const int chosen = static_cast<int>(!o.beta.empty()) + static_cast<int>(o.uniform) +
                       static_cast<int>(!o.poly.empty()) + static_cast<int>(o.dirac.has_value()) +
                       static_cast<int>(!o.spec_file.empty());
    if (chosen != 1) {
        throw ValidationError("exactly one of --beta, --uniform, --poly, --dirac, --spec is required");
    }
    if (!o.beta.empty()) return DistributionSpec::beta(o.beta.at(0), o.beta.at(1));
    if (o.uniform) return DistributionSpec::uniform();
    if (!o.poly.empty()) return DistributionSpec::polynomial(split_numbers(o.poly, "--poly"));
    if (o.dirac) return DistributionSpec::dirac(*o.dirac);
    std::ifstream f(o.spec_file);
    if (!f) throw ValidationError("cannot open spec file '" + o.spec_file + "'");
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ValidationError("spec file '" + o.spec_file + "' is not valid JSON: " + e.what());
    }
    return io::spec_from_json(j);
}

json header_json(const std::string& command, const json& spec, std::size_t K, const SeedChoice& seed) {
    return json{{"command", command}, {"spec", spec}, {"K", K}, {"seed", seed.value}, {"seed_source", seed.source}};
}

void write_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

void emit_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
}

// Returns the output format, falling back to the subcommand's default.
std::string format_or(const Options& o, const char* fallback) { return o.format.empty() ? fallback : o.format; }

void cmd_moments(const Options& o, const SeedChoice& seed, std::ostream& out, std::ostream& err) {
    const DistributionSpec spec = resolve_spec(o);
    emit_warnings(err, spec.warnings());
    const MomentSequence u = moments(spec, o.K);
    const json hdr = header_json("moments", io::spec_to_json(spec), o.K, seed);
    if (format_or(o, "csv") == "json") {
        std::vector<double> tail(u.u.begin() + 1, u.u.end());
        write_json(out, {{"config", hdr}, {"u_k", tail}, {"exactness", std::string(to_string(u.exactness))},
                         {"quadrature_error", u.quadrature_error}});
        return;
    }
    io::write_header_comment(out, hdr.dump());
    io::write_moments_csv(out, u);
}

void cmd_ar_coeffs(const Options& o, const SeedChoice& seed, std::istream& in, std::ostream& out,
                   std::ostream& err) {
    json spec_j;
    std::size_t K = o.K;
    SeedChoice used = seed;
    MomentSequence u;
    if (!o.from_moments.empty()) {
        io::MomentsFile file;
        if (o.from_moments == "-") {
            file = io::read_moments_csv(in);
        } else {
            std::ifstream f(o.from_moments);
            if (!f) throw ValidationError("cannot open moments file '" + o.from_moments + "'");
            file = io::read_moments_csv(f);
        }
        u = std::move(file.moments);
        K = u.order();
        spec_j = nullptr;
        if (file.header_json) {
            const json h = json::parse(*file.header_json, nullptr, false);
            if (!h.is_discarded() && h.is_object()) {
                if (h.contains("spec")) spec_j = h.at("spec");
                if (!o.seed && h.contains("seed") && h.at("seed").is_number_unsigned()) {
                    used.value = h.at("seed").get<std::uint64_t>();
                    used.source = h.value("seed_source", std::string("input"));
                }
            }
        }
    } else {
        const DistributionSpec spec = resolve_spec(o);
        emit_warnings(err, spec.warnings());
        u = moments(spec, K);
        spec_j = io::spec_to_json(spec);
    }
    const ARCoefficients a = ar_from_ma(u);
    const json hdr = header_json("ar-coeffs", spec_j, K, used);
    if (format_or(o, "csv") == "json") {
        std::vector<double> ak(a.a.begin() + 1, a.a.end());
        std::vector<double> sk(a.partial_sums.begin() + 1, a.partial_sums.end());
        write_json(out, {{"config", hdr}, {"a_k", ak}, {"S_k", sk}});
        return;
    }
    io::write_header_comment(out, hdr.dump());
    io::write_ar_csv(out, a);
}

void cmd_persistence(const Options& o, const SeedChoice& seed, std::ostream& out, std::ostream& err) {
    const DistributionSpec spec = resolve_spec(o);
    emit_warnings(err, spec.warnings());
    json rep = io::persistence_json(spec);
    const json hdr = header_json("persistence", rep["spec"], o.K, seed);
    if (format_or(o, "json") == "json") {
        rep["config"] = hdr;
        write_json(out, rep);
        return;
    }
    io::write_header_comment(out, hdr.dump());
    out << "a1_limit " << format_number(rep["a1_limit"].get<double>()) << '\n'
        << "memory_class " << rep["memory_class"].get<std::string>() << '\n'
        << "method " << rep["method"].get<std::string>() << '\n';
}

void cmd_gf_eval(const Options& o, const SeedChoice& seed, std::ostream& out, std::ostream& err) {
    const DistributionSpec spec = resolve_spec(o);
    emit_warnings(err, spec.warnings());
    json hdr = header_json("gf-eval", io::spec_to_json(spec), o.K, seed);
    if (o.grid) {
        const auto samples = grid_sweep(spec, DiscGrid::standard());
        io::write_header_comment(out, hdr.dump());
        io::write_grid_csv(out, samples);
        return;
    }
    const DiscPoint z(o.re, o.im);
    SeriesValue m;
    if (o.method == "series") {
        m = m_series(moments(spec, o.K), z);
    } else {
        m = m_integral(spec, z);
    }
    const cplx a = m.value / (1.0 + m.value);
    hdr["z"] = {o.re, o.im};
    const json rep{{"config", hdr},
                   {"z", {o.re, o.im}},
                   {"m", {m.value.real(), m.value.imag()}},
                   {"a", {a.real(), a.imag()}},
                   {"method", std::string(to_string(m.method))},
                   {"remainder_bound", m.remainder_bound}};
    if (format_or(o, "json") == "json") {
        write_json(out, rep);
        return;
    }
    io::write_header_comment(out, hdr.dump());
    out << "re_z,im_z,re_m,im_m,re_a,im_a\n"
        << format_number(o.re) << ',' << format_number(o.im) << ',' << format_number(m.value.real()) << ','
        << format_number(m.value.imag()) << ',' << format_number(a.real()) << ',' << format_number(a.imag()) << '\n';
}

void cmd_abel(const Options& o, const SeedChoice& seed, std::ostream& out, std::ostream& err) {
    const DistributionSpec spec = resolve_spec(o);
    emit_warnings(err, spec.warnings());
    const AbelResult r = abel_limit(spec);
    const json hdr = header_json("abel", io::spec_to_json(spec), o.K, seed);
    if (format_or(o, "csv") == "json") {
        json rep = io::abel_json(r);
        rep["config"] = hdr;
        write_json(out, rep);
        return;
    }
    io::write_header_comment(out, hdr.dump());
    io::write_abel_csv(out, r.table);
    out << "# " << json{{"estimate", r.estimate}, {"accelerated", r.accelerated}}.dump() << '\n';
}

struct CheckRow {
    std::string name;
    bool passed;
    std::string detail;
};

std::vector<CheckRow> verify_battery(const DistributionSpec& spec, std::size_t K) {
    std::vector<CheckRow> rows;
    auto guarded = [&](const std::string& name, auto&& body) {
        try {
            rows.push_back(body());
        } catch (const UnsupportedEvaluationError& e) {
            rows.push_back({name, true, std::string("skipped: ") + e.what()});
        } catch (const Error& e) {
            rows.push_back({name, false, e.what()});
        }
    };
    const MomentSequence u = moments(spec, std::max<std::size_t>(K, 20));

    guarded("hausdorff", [&] {
        const auto h = hausdorff_check(u, tol::kHausdorffDepth, tol::kHausdorffMaxIndex);
        return CheckRow{"hausdorff", h.passed,
                        "worst " + format_number(h.worst_value) + " at j=" + std::to_string(h.worst_j) +
                            ", k=" + std::to_string(h.worst_k)};
    });
    guarded("round_trip", [&] {
        const auto a = ar_from_ma(u);
        const auto back = ma_from_ar(a);
        double worst = 0.0;
        for (std::size_t k = 0; k <= u.order(); ++k) worst = std::max(worst, std::abs(back[k] - u[k]));
        double top = 0.0;
        for (double s : a.partial_sums) top = std::max(top, s);
        return CheckRow{"round_trip", worst <= 1e-10 && top <= 1.0 + tol::kPartialSumCeiling,
                        "max |u - ma(ar(u))| = " + format_number(worst) + ", max S_K = " + format_number(top)};
    });
    guarded("re_positivity", [&] {
        const auto p = re_positivity_check(spec, DiscGrid::standard());
        return CheckRow{"re_positivity", p.passed(),
                        "min Re(1+m) = " + format_number(p.min_value) + " over " + std::to_string(p.n_points) +
                            " points"};
    });
    for (double r : {0.5, 0.9, 0.99}) {
        const std::string name = "injectivity_r" + format_number(r);
        guarded(name, [&] {
            const auto rep = circle_injectivity_check(spec, r);
            std::string detail = rep.vacuous ? "vacuous (m = 0)" : "max antisymmetry error " +
                                                                       format_number(rep.max_antisymmetry_error);
            if (!rep.violations.empty()) {
                detail += "; first violation " + rep.violations.front().check + " at t=" +
                          format_number(rep.violations.front().t);
            }
            return CheckRow{name, rep.passed(), detail};
        });
    }
    guarded("memory_report", [&] {
        const auto rep = memory_report(spec);
        std::string detail(to_string(rep.verdict));
        for (const auto& c : rep.channels) {
            if (c.available && !c.agrees) detail += "; " + c.name + ": " + c.detail;
        }
        return CheckRow{"memory_report", rep.verdict != Verdict::inconsistent, detail};
    });
    return rows;
}

int cmd_verify(const Options& o, const SeedChoice& seed, std::ostream& out, std::ostream& err) {
    const DistributionSpec spec = resolve_spec(o);
    emit_warnings(err, spec.warnings());
    const auto rows = verify_battery(spec, o.K);
    bool all = true;
    for (const auto& r : rows) all = all && r.passed;
    const json hdr = header_json("verify", io::spec_to_json(spec), o.K, seed);
    if (format_or(o, "text") == "json") {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back({{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        write_json(out, {{"config", hdr}, {"checks", arr}, {"all_passed", all}});
    } else {
        io::write_header_comment(out, hdr.dump());
        for (const auto& r : rows) {
            out << std::left << std::setw(20) << r.name << ' ' << std::setw(4) << (r.passed ? "PASS" : "FAIL") << ' '
                << r.detail << '\n';
        }
        out << (all ? "all checks passed" : "some checks FAILED") << '\n';
    }
    return all ? 0 : 2;
}

void cmd_simulate(const Options& o, const SeedChoice& seed, std::ostream& out, std::ostream& err) {
    PanelConfig cfg;
    cfg.spec = resolve_spec(o);
    emit_warnings(err, cfg.spec.warnings());
    cfg.N = o.N;
    cfg.T = o.T;
    cfg.burn_in = o.burn_in;
    cfg.sigma_eps = o.sigma_eps;
    cfg.sigma_eta = o.sigma_eta;
    cfg.seed = seed.value;
    cfg.threads = o.threads;
    const PanelRun run = simulate_panel(cfg);
    emit_warnings(err, run.warnings);
    json hdr = header_json("simulate", io::spec_to_json(cfg.spec), o.K, seed);
    hdr["N"] = cfg.N;
    hdr["T"] = cfg.T;
    hdr["burn_in"] = cfg.burn_in;
    hdr["burn_in_used"] = run.burn_in_used;
    hdr["sigma_eps"] = cfg.sigma_eps;
    hdr["sigma_eta"] = cfg.sigma_eta;
    if (format_or(o, "csv") == "json") {
        write_json(out, {{"config", hdr}, {"X", run.aggregate}, {"warnings", run.warnings}});
        return;
    }
    io::write_header_comment(out, hdr.dump());
    io::write_path_csv(out, run.aggregate);
}

void cmd_study(const Options& o, const SeedChoice& seed, std::ostream& out, std::ostream& err) {
    const DistributionSpec spec = resolve_spec(o);
    emit_warnings(err, spec.warnings());
    std::vector<std::size_t> ns;
    for (double v : split_numbers(o.n_list, "--n-list")) {
        if (!(v >= 1.0) || v != std::floor(v)) throw ValidationError("--n-list: entries must be positive integers");
        ns.push_back(static_cast<std::size_t>(v));
    }
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(o.seeds);
    std::string item;
    while (std::getline(ss, item, ',')) seeds.push_back(parse_seed(item, "--seeds"));
    const StudyReport rep = aggregation_convergence_study(spec, ns, o.T, seeds, o.sigma_eps, o.sigma_eta, o.threads);
    json hdr = header_json("study", io::spec_to_json(spec), o.K, seed);
    hdr["T"] = o.T;
    hdr["sigma_eps"] = o.sigma_eps;
    hdr["sigma_eta"] = o.sigma_eta;
    json body = io::study_json(rep);
    body["config"] = hdr;
    write_json(out, body);
}

void cmd_report(const Options& o, const SeedChoice& seed, std::ostream& out, std::ostream& err) {
    const DistributionSpec spec = resolve_spec(o);
    emit_warnings(err, spec.warnings());
    const MemoryReport rep = memory_report(spec, o.K);
    const json hdr = header_json("report", io::spec_to_json(spec), std::max(o.K, tol::kReportMinOrder), seed);
    if (format_or(o, "json") == "json") {
        json body = io::memory_report_json(rep);
        body["config"] = hdr;
        write_json(out, body);
        return;
    }
    io::write_header_comment(out, hdr.dump());
    out << "spec          " << rep.spec << '\n';
    out << "memory class  " << (rep.memory ? std::string(to_string(*rep.memory)) : "unresolved") << '\n';
    out << "a(1)          " << (rep.persistence ? format_number(*rep.persistence) : "unresolved") << '\n';
    for (const auto& g : rep.partial_sums) {
        out << "S_" << g.K << std::string(g.K < 100 ? 10 : (g.K < 1000 ? 9 : 8), ' ') << format_number(g.partial_sum)
            << "   a(1-1/K) " << format_number(g.abel_at_matched_r) << '\n';
    }
    for (const auto& c : rep.cesaro) out << "cesaro n=" << c.n << "  " << format_number(c.value) << '\n';
    for (const auto& c : rep.channels) {
        out << "  " << std::left << std::setw(20) << c.name << ' '
            << (!c.available ? "n/a " : (c.agrees ? "ok  " : "FAIL")) << ' ' << c.detail << '\n';
    }
    out << "verdict       " << to_string(rep.verdict) << '\n';
}

void add_spec_options(CLI::App* sc, Options& o) {
    sc->add_option("--beta", o.beta, "Beta(P, Q) mixing law")->expected(2)->type_name("P Q");
    sc->add_flag("--uniform", o.uniform, "Uniform mixing law on [0,1)");
    sc->add_option("--poly", o.poly, "polynomial density coefficients c0,c1,...");
    sc->add_option("--dirac", o.dirac, "point mass at PHI0");
    sc->add_option("--spec", o.spec_file, "JSON spec file");
    sc->add_option("-K", o.K, "truncation order")->check(CLI::PositiveNumber);
    sc->add_option("--seed", o.seed, "RNG seed (default: $AGGAR_SEED, else 0)");
    sc->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json", "text"}));
    sc->add_option("--out", o.out_path, "output file (default stdout)");
}

void add_panel_options(CLI::App* sc, Options& o) {
    sc->add_option("-N", o.N, "number of units")->check(CLI::PositiveNumber);
    sc->add_option("-T", o.T, "path length")->check(CLI::PositiveNumber);
    sc->add_option("--sigma-eps", o.sigma_eps, "common shock std dev")->check(CLI::NonNegativeNumber);
    sc->add_option("--sigma-eta", o.sigma_eta, "idiosyncratic shock std dev")->check(CLI::NonNegativeNumber);
    sc->add_option("--burn-in", o.burn_in, "burn-in steps for the common part");
    sc->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int exit_code_for(const std::exception& e) {
    return dynamic_cast<const NumericalIntegrityError*>(&e) != nullptr ? 2 : 1;
}

Environment Environment::from_process() {
    Environment env;
    if (const char* s = std::getenv(kSeedEnvVar)) env.seed = std::string(s);
    return env;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const Environment& env) {
    CLI::App app{"aggar: aggregation of random-coefficient AR(1) processes"};
    app.name("aggar");
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "INI/TOML file; options go under a [subcommand] section, e.g. [simulate] N=1000");
    Options o;

    auto* moments_cmd = app.add_subcommand("moments", "moment sequence u_k (CSV k,u_k)");
    add_spec_options(moments_cmd, o);
    auto* ar_cmd = app.add_subcommand("ar-coeffs", "AR coefficients a_k and partial sums (CSV k,a_k,S_k)");
    add_spec_options(ar_cmd, o);
    ar_cmd->add_option("--from-moments", o.from_moments, "read u_k from a moments CSV ('-' for stdin)");
    auto* pers_cmd = app.add_subcommand("persistence", "a(1) and the memory class");
    add_spec_options(pers_cmd, o);
    auto* gf_cmd = app.add_subcommand("gf-eval", "m(z) and a(z) at one point or over the standard grid");
    add_spec_options(gf_cmd, o);
    gf_cmd->add_option("--re", o.re, "real part of z");
    gf_cmd->add_option("--im", o.im, "imaginary part of z");
    gf_cmd->add_option("--method", o.method, "evaluation route")->check(CLI::IsMember({"auto", "series", "integral"}));
    gf_cmd->add_flag("--grid", o.grid, "sweep the standard disc grid (CSV)");
    auto* abel_cmd = app.add_subcommand("abel", "Abel table a(1 - 2^-j) and limit");
    add_spec_options(abel_cmd, o);
    auto* verify_cmd = app.add_subcommand("verify", "run the property-check battery");
    add_spec_options(verify_cmd, o);
    auto* sim_cmd = app.add_subcommand("simulate", "simulate a panel and print the aggregate path (CSV t,X)");
    add_spec_options(sim_cmd, o);
    add_panel_options(sim_cmd, o);
    auto* study_cmd = app.add_subcommand("study", "variance of the aggregate across N (JSON)");
    add_spec_options(study_cmd, o);
    add_panel_options(study_cmd, o);
    study_cmd->add_option("--n-list", o.n_list, "increasing unit counts, comma separated");
    study_cmd->add_option("--seeds", o.seeds, "seeds, comma separated");
    auto* report_cmd = app.add_subcommand("report", "memory report with all evidence channels");
    add_spec_options(report_cmd, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        const SeedChoice seed = resolve_seed(o, env);
        std::ofstream file;
        std::ostream* sink = &out;
        if (!o.out_path.empty()) {
            file.open(o.out_path);
            if (!file) throw ValidationError("cannot open output file '" + o.out_path + "'");
            sink = &file;
        }
        int code = 0;
        if (moments_cmd->parsed()) cmd_moments(o, seed, *sink, err);
        if (ar_cmd->parsed()) cmd_ar_coeffs(o, seed, in, *sink, err);
        if (pers_cmd->parsed()) cmd_persistence(o, seed, *sink, err);
        if (gf_cmd->parsed()) cmd_gf_eval(o, seed, *sink, err);
        if (abel_cmd->parsed()) cmd_abel(o, seed, *sink, err);
        if (verify_cmd->parsed()) code = cmd_verify(o, seed, *sink, err);
        if (sim_cmd->parsed()) cmd_simulate(o, seed, *sink, err);
        if (study_cmd->parsed()) cmd_study(o, seed, *sink, err);
        if (report_cmd->parsed()) cmd_report(o, seed, *sink, err);
        sink->flush();
        return code;
    } catch (const std::exception& e) {
        const int code = exit_code_for(e);
        err << (code == 2 ? "numerical integrity error: " : "error: ") << e.what() << '\n';
        return code;
    }
}

}  // namespace aggar::cli
