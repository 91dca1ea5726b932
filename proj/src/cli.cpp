#include "cyclewalk/cli.hpp"

#include "cyclewalk/analysis.hpp"
#include "cyclewalk/output.hpp"
#include "cyclewalk/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <tuple>

namespace cyclewalk::cli {

namespace {

struct WalkFlags {
    int nodes = 0;
    double decoherence = 0.0;
    std::string coin = "up";
};

struct IoFlags {
    std::string output;
    std::string manifest;
    std::string config;
};

// Sink for command output: the --output file when given, else `fallback`.
class OutputSink {
public:
    OutputSink(const std::string& path, std::ostream& fallback) : path_(path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
            if (!*file_) throw DomainError("cannot open output file '" + path + "'");
        }
        stream_ = file_ ? file_.get() : &fallback;
    }
    std::ostream& stream() { return *stream_; }

private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json coin_json(const Vec2& c) {
    return Json::array({c(0).real(), c(0).imag(), c(1).real(), c(1).imag()});
}

void write_manifest(const std::string& path, const std::string& command, const std::vector<std::string>& args,
                    const Json& config, const std::vector<std::string>& outputs) {
    if (path.empty()) return;
    Json m;
    m["command"] = command;
    m["arguments"] = args;
    m["config"] = config;
    m["deterministic"] = true;
    m["seed"] = nullptr;
    m["tool_version"] = kToolVersion;
    m["timestamp"] = utc_timestamp();
    m["outputs"] = outputs;
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw DomainError("cannot open manifest file '" + path + "'");
    os << to_json_text(m);
}

WalkConfig config_from(const WalkFlags& flags, std::ostream& err) {
    const CoinParse coin = parse_initial_coin(flags.coin);
    if (std::abs(coin.input_norm - 1.0) > 1e-6) {
        err << "warning: initial coin renormalized (input norm " << format_double(coin.input_norm) << ")\n";
    }
    return WalkConfig::make(flags.nodes, flags.decoherence, coin.state);
}

Json config_json(const WalkConfig& cfg) {
    Json c;
    c["nodes"] = cfg.n_nodes;
    c["decoherence"] = cfg.decoherence_rate;
    c["initial_coin"] = coin_json(cfg.initial_coin);
    return c;
}

void add_walk_flags(CLI::App* cmd, WalkFlags& flags, bool need_coin) {
    cmd->add_option("--nodes", flags.nodes, "cycle length N (>= 2)")->required();
    cmd->add_option("--decoherence", flags.decoherence, "decoherence rate p in [0,1]")->required();
    if (need_coin) {
        cmd->add_option("--initial-coin", flags.coin, "up | down | balanced | re,im,re,im")->capture_default_str();
    }
}

void add_io_flags(CLI::App* cmd, IoFlags& io) {
    cmd->add_option("--output", io.output, "output file (default: stdout)");
    cmd->add_option("--manifest", io.manifest, "write a run manifest (JSON) to this path");
    cmd->add_option("--config", io.config, "flat key=value file; command-line flags take precedence");
}

// Appends `--key=value` for config-file keys the command line does not set.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::vector<std::string> merged = args;
    for (const auto& [key, value] : read_config_file(path)) {
        const std::string flag = "--" + key;
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (!given) merged.push_back(flag + "=" + value);
    }
    return merged;
}

int thread_cap() {
    const char* env = std::getenv("CYCLEWALK_THREADS");
    if (!env || !*env) return 1;
    try {
        return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
        return 1;
    }
}

int cmd_simulate(const WalkFlags& flags, const IoFlags& io, long long steps, const std::string& method,
                 const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const WalkConfig cfg = config_from(flags, err);
    if (steps < 0) throw DomainError("--steps must be non-negative");

    std::ostringstream body;
    write_distribution_header(body);
    auto emit = [&](const PositionDistribution& d) {
        if (!d.is_normalized()) {
            throw NumericalError("distribution at t = " + std::to_string(d.time) + " is not normalized (sum " +
                                 format_double(d.total()) + ")");
        }
        write_distribution_rows(body, d, method);
    };
    if (method == "fourier") {
        FourierWalk walk(cfg);
        for (long long t = 0; t <= steps; ++t) {
            emit(walk.distribution());
            if (t < steps) walk.step();
        }
    } else if (method == "direct") {
        DirectWalk walk(cfg);
        for (long long t = 0; t <= steps; ++t) {
            emit(walk.distribution());
            if (t < steps) walk.step();
        }
    } else {
        for (long long t = 0; t <= steps; ++t) emit(classical_reference(cfg.n_nodes, t));
    }

    OutputSink sink(io.output, out);
    sink.stream() << body.str();
    Json c = config_json(cfg);
    c["steps"] = steps;
    c["method"] = method;
    write_manifest(io.manifest, "simulate", args, c, io.output.empty() ? std::vector<std::string>{} : std::vector{io.output});
    return kExitOk;
}

int cmd_spectrum(const WalkFlags& flags, const IoFlags& io, const std::string& construction,
                 const std::string& summary_path, const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
    WalkConfig cfg = config_from(flags, err);
    const int n = cfg.n_nodes;
    const double p = cfg.decoherence_rate;
    const Construction how = construction == "closed-form" ? Construction::closed_form : Construction::definitional;

    std::ostringstream body;
    body << "k,k_prime,classification,spectral_radius";
    for (int i = 0; i < 4; ++i) body << ",lambda" << i << "_re,lambda" << i << "_im";
    body << '\n';

    long long counts[3] = {0, 0, 0};
    double max_generic = 0.0;
    bool prop2 = true;
    for (int k = 0; k < n; ++k) {
        for (int kp = 0; kp < n; ++kp) {
            const SuperOp op = how == Construction::definitional ? superop_definitional(k, kp, n, p)
                                                                 : superop_closed_form(k, kp, n, p);
            SpectrumReport r = eigenvalues(op);
            // Keys on a 1e-9 grid so conjugate pairs and the two constructions order alike.
            auto key = [](Complex l) {
                auto q = [](double v) { return std::llround(v * 1e9); };
                return std::make_tuple(-q(std::abs(l)), -q(l.real()), -q(l.imag()));
            };
            std::sort(r.eigenvalues.begin(), r.eigenvalues.end(),
                      [&](Complex a, Complex b) { return key(a) < key(b); });
            counts[static_cast<int>(r.classification)]++;
            if (r.classification == PairClass::generic) max_generic = std::max(max_generic, r.spectral_radius);
            prop2 = prop2 && r.spectral_radius <= 1.0 + 1e-10;
            for (const Complex l : r.unit_modulus) prop2 = prop2 && std::min(std::abs(l - 1.0), std::abs(l + 1.0)) <= 1e-8;
            prop2 = prop2 && r.has_unit_eigenvalue == (r.classification == PairClass::diagonal_pair);
            prop2 = prop2 && r.has_minus_one == (r.classification == PairClass::antipodal_pair);

            body << k << ',' << kp << ',' << to_string(r.classification) << ',' << format_double(r.spectral_radius);
            for (const Complex l : r.eigenvalues) body << ',' << format_double(l.real()) << ',' << format_double(l.imag());
            body << '\n';
        }
    }
    const bool applicable = p > 0.0 && p < 1.0;

    Json summary;
    summary["nodes"] = n;
    summary["decoherence"] = p;
    summary["construction"] = construction;
    summary["pairs"] = static_cast<long long>(n) * n;
    summary["diagonal_pairs"] = counts[static_cast<int>(PairClass::diagonal_pair)];
    summary["antipodal_pairs"] = counts[static_cast<int>(PairClass::antipodal_pair)];
    summary["generic_pairs"] = counts[static_cast<int>(PairClass::generic)];
    if (counts[static_cast<int>(PairClass::generic)] > 0) {
        summary["max_generic_radius"] = max_generic;
    } else {
        summary["max_generic_radius"] = nullptr;
    }
    summary["prop2_applicable"] = applicable;
    summary["prop2_holds"] = applicable ? Json(prop2 && max_generic < 1.0) : Json(nullptr);

    OutputSink sink(io.output, out);
    sink.stream() << body.str();
    if (!summary_path.empty()) {
        OutputSink s(summary_path, err);
        s.stream() << to_json_text(summary);
    } else {
        err << to_json_text(summary);
    }
    Json c = config_json(cfg);
    c["construction"] = construction;
    std::vector<std::string> outputs;
    if (!io.output.empty()) outputs.push_back(io.output);
    if (!summary_path.empty()) outputs.push_back(summary_path);
    write_manifest(io.manifest, "spectrum", args, c, outputs);
    return (applicable && !(prop2 && max_generic < 1.0)) ? kExitVerifyFailed : kExitOk;
}

int cmd_mixing(const WalkFlags& flags, const IoFlags& io, double epsilon, const std::string& target,
               long long horizon, bool bound, long long trace_every, const std::vector<std::string>& args,
               std::ostream& out, std::ostream& err) {
    const WalkConfig cfg = config_from(flags, err);
    if (!(epsilon > 0.0)) throw DomainError("--epsilon must be positive");
    const long long h = horizon > 0 ? horizon : default_horizon(cfg.n_nodes, epsilon);
    MixingOptions opts;
    opts.with_bound = bound;
    opts.trace_every = trace_every;
    const MixingReport r = target == "instantaneous" ? mixing_time_instantaneous(cfg, epsilon, h, opts)
                                                     : mixing_time_averaged(cfg, epsilon, h, opts);
    Json doc;
    doc["epsilon"] = r.epsilon;
    doc["horizon"] = r.horizon;
    doc["converged"] = r.converged;
    doc["mixing_time"] = r.mixing_time ? Json(*r.mixing_time) : Json(nullptr);
    if (r.bound) {
        Json b;
        b["tau"] = r.bound->tau;
        b["value"] = r.bound->value;
        doc["bound"] = b;
    } else {
        doc["bound"] = nullptr;
    }
    Json trace = Json::array();
    for (const auto& [t, tv] : r.tv_trace) trace.push_back(Json::array({t, tv}));
    doc["tv_trace"] = std::move(trace);

    OutputSink sink(io.output, out);
    sink.stream() << to_json_text(doc);
    Json c = config_json(cfg);
    c["epsilon"] = epsilon;
    c["target"] = target;
    c["horizon"] = h;
    write_manifest(io.manifest, "mixing", args, c, io.output.empty() ? std::vector<std::string>{} : std::vector{io.output});
    return kExitOk;
}

int cmd_verify(const IoFlags& io, bool quick, const std::vector<std::string>& checks,
               const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    VerifyOptions opts;
    opts.quick = quick;
    opts.checks = checks;
    opts.threads = thread_cap();
    const auto results = run_verification(opts);
    for (const auto& r : results) {
        err << (r.passed ? "PASS " : "FAIL ") << r.name << "  measured=" << format_double(r.measured)
            << "  tolerance=" << format_double(r.tolerance) << '\n';
    }
    const Json report = verification_report(results, opts);
    OutputSink sink(io.output, out);
    sink.stream() << to_json_text(report);
    Json c;
    c["quick"] = quick;
    c["checks"] = checks;
    write_manifest(io.manifest, "verify", args, c, io.output.empty() ? std::vector<std::string>{} : std::vector{io.output});
    return report["passed"].get<bool>() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

CoinParse parse_initial_coin(const std::string& text) {
    if (text == "up") return {coin_up(), 1.0};
    if (text == "down") return {coin_down(), 1.0};
    if (text == "balanced") return {coin_balanced(), 1.0};
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError("initial coin must be up, down, balanced or re,im,re,im; got '" + text + "'");
        }
    }
    if (parts.size() != 4) {
        throw DomainError("initial coin quadruple needs 4 numbers, got " + std::to_string(parts.size()));
    }
    Vec2 v(Complex(parts[0], parts[1]), Complex(parts[2], parts[3]));
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("initial coin must be a nonzero finite vector");
    return {v / norm, norm};
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read config file '" + path + "'");
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DomainError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        if (key.rfind("--", 0) == 0) key.erase(0, 2);
        if (key.empty() || key == "config") {
            throw DomainError(path + ":" + std::to_string(lineno) + ": invalid key");
        }
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decohered Hadamard walks on the N-cycle: simulation, spectra, mixing and verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    WalkFlags walk;
    IoFlags io;

    auto* simulate = app.add_subcommand("simulate", "write P(x,t) rows as CSV");
    long long steps = 0;
    std::string method = "fourier";
    add_walk_flags(simulate, walk, true);
    simulate->add_option("--steps", steps, "number of steps T (rows for t = 0..T)")->required();
    simulate->add_option("--method", method, "fourier | direct | classical")
        ->check(CLI::IsMember({"fourier", "direct", "classical"}))
        ->capture_default_str();
    add_io_flags(simulate, io);

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of every L_{k,k'} block as CSV");
    std::string construction = "definitional";
    std::string summary_path;
    add_walk_flags(spectrum, walk, false);
    spectrum->add_option("--construction", construction, "definitional | closed-form")
        ->check(CLI::IsMember({"definitional", "closed-form"}))
        ->capture_default_str();
    spectrum->add_option("--summary", summary_path, "write the summary JSON here (default: stderr)");
    add_io_flags(spectrum, io);

    auto* mixing = app.add_subcommand("mixing", "mixing-time scan as JSON");
    double epsilon = 0.0;
    std::string target = "averaged";
    long long horizon = 0;
    bool bound = false;
    long long trace_every = 0;
    add_walk_flags(mixing, walk, true);
    mixing->add_option("--epsilon", epsilon, "total-variation threshold")->required();
    mixing->add_option("--target", target, "averaged | instantaneous")
        ->check(CLI::IsMember({"averaged", "instantaneous"}))
        ->capture_default_str();
    mixing->add_option("--horizon", horizon, "scan length (default ceil(20 N^2 / eps), capped at 1e6)");
    mixing->add_flag("--bound", bound, "attach the O(N/tau) bound at the reported tau (odd N, coin up)");
    mixing->add_option("--trace-every", trace_every, "record every k-th TV value (default: log-spaced)");
    add_io_flags(mixing, io);

    auto* verify = app.add_subcommand("verify", "run the verification suite; JSON report");
    bool quick = false;
    std::vector<std::string> checks;
    verify->add_flag("--quick", quick, "reduced sizes (N <= 7, t <= 50)");
    verify->add_option("--check", checks, "run only the named check (repeatable)")
        ->check(CLI::IsMember(available_checks()));
    add_io_flags(verify, io);

    try {
        std::vector<std::string> args = merge_config(raw_args);
        std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
        std::reverse(reversed.begin(), reversed.end());
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(walk, io, steps, method, raw_args, out, err);
        if (*spectrum) return cmd_spectrum(walk, io, construction, summary_path, raw_args, out, err);
        if (*mixing) {
            return cmd_mixing(walk, io, epsilon, target, horizon, bound, trace_every, raw_args, out, err);
        }
        if (*verify) return cmd_verify(io, quick, checks, raw_args, out, err);
    } catch (const NumericalError& e) {
        err << "numerical assertion failed: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace cyclewalk::cli
