#pragma once

#include "lrfc/bounds.hpp"
#include "lrfc/codes.hpp"
#include "lrfc/decoder.hpp"
#include "lrfc/sim.hpp"
#include "lrfc/wef.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace lrfc::cli {

// "a..b" inclusive range, "x,y,z" list, or a single value
inline std::vector<int> parse_int_list(const std::string& s) {
    const auto dots = s.find("..");
    if (dots != std::string::npos) {
        const int a = std::stoi(s.substr(0, dots));
        const int b = std::stoi(s.substr(dots + 2));
        if (a > b) throw std::invalid_argument("range start exceeds end: " + s);
        std::vector<int> out;
        for (int v = a; v <= b; ++v) out.push_back(v);
        return out;
    }
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw std::invalid_argument("empty list: " + s);
    return out;
}

inline std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw std::invalid_argument("empty list: " + s);
    return out;
}

// Flat key=value config support: '#' starts a comment, unknown keys surface
// as unknown flags, and anything already on the command line wins. Applied
// before CLI11 sees the arguments.
inline std::vector<std::string> apply_config_file(std::vector<std::string> args) {
    std::string path;
    for (size_t i = 0; i < args.size();) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
        } else {
            ++i;
        }
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    const auto trim = [](std::string s) {
        const auto notspace = [](unsigned char c) { return std::isspace(c) == 0; };
        s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
        s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
        return s;
    };
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("malformed config line: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("malformed config line: " + line);
        const std::string flag = "--" + key;
        bool on_cli = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                on_cli = true;
                break;
            }
        if (on_cli) continue;
        args.push_back(flag);
        if (value != "true") args.push_back(value);
    }
    return args;
}

// exact decimal expansion; works whenever the denominator is 2^a 5^b, which
// covers every spectrum value (denominators are powers of q = 2^m)
inline std::string exact_decimal(const BigRat& v) {
    BigInt num = boost::multiprecision::numerator(v);
    BigInt den = boost::multiprecision::denominator(v);
    const bool neg = num < 0;
    if (neg) num = -num;
    int twos = 0, fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1) {
        std::ostringstream os;
        os << std::setprecision(25) << v.convert_to<long double>();
        return os.str();
    }
    const int e = std::max(twos, fives);
    num *= boost::multiprecision::pow(BigInt(2), e - twos);
    num *= boost::multiprecision::pow(BigInt(5), e - fives);
    const BigInt scale = boost::multiprecision::pow(BigInt(10), e);
    const BigInt head_i = num / scale, frac_i = num % scale;
    std::string head = head_i.str();
    std::string frac = frac_i.str();
    if (e == 0) return (neg ? "-" : "") + head;
    frac.insert(0, e - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    std::string out = (neg ? "-" : "") + head;
    if (!frac.empty()) out += "." + frac;
    return out;
}

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// output target: "-" is the caller's stdout stream
class CsvSink {
  public:
    CsvSink(const std::string& path, std::ostream& fallback) {
        if (path == "-" || path.empty()) {
            os_ = &fallback;
        } else {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
            os_ = &file_;
        }
    }
    std::ostream& os() { return *os_; }
    bool is_file() const { return file_.is_open(); }

  private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

inline const Field& field_for_q(int q) {
    int m = 0;
    while ((1 << m) < q && m <= 8) ++m;
    if ((1 << m) != q) throw std::invalid_argument("field size must be a supported power of two");
    return Field::get(m);
}

inline CodeSpec make_spec(const std::string& family, int q, int n, int k, int t) {
    if (family == "grs") return CodeSpec::grs(field_for_q(q), n, k);
    if (family == "spc") return CodeSpec::spc(k);
    if (family == "hamming") return CodeSpec::hamming(t);
    if (family == "none") return CodeSpec::none(field_for_q(q), k);
    throw std::invalid_argument("unknown family: " + family);
}

inline std::string scheme_name(const CodeSpec& spec) {
    if (spec.family == Family::NONE) return "lrfc";
    return std::string(family_name(spec.family)) + "+lrfc";
}

namespace detail {

struct CodeOpts {
    std::string family = "none";
    int q = 2;
    int n = 0;
    int k = 0;
    int t = 3;

    void attach(CLI::App* sub) {
        sub->add_option("--family", family, "code family: grs, spc, hamming, none")
            ->check(CLI::IsMember({"grs", "spc", "hamming", "none"}));
        sub->add_option("--q", q, "field size 2^m, m in {1,2,3,4,8}");
        sub->add_option("--n", n, "block length of the prefix code");
        sub->add_option("--k", k, "source block length");
        sub->add_option("--hamming-t", t, "Hamming parameter t (n = 2^t - 1)");
    }

    CodeSpec build() const { return make_spec(family, q, n, k, t); }

    std::string echo() const {
        std::ostringstream os;
        os << "--family " << family;
        if (family == "hamming")
            os << " --hamming-t " << t;
        else if (family == "spc")
            os << " --k " << k;
        else if (family == "grs")
            os << " --q " << q << " --n " << n << " --k " << k;
        else
            os << " --q " << q << " --k " << k;
        return os.str();
    }
};

inline void emit_bounds(std::ostream& os, const std::string& scheme, const CodeSpec* spec, int q, int k,
                        const std::vector<double>& eps_list, const std::vector<int>& deltas) {
    for (double eps : eps_list)
        for (int d : deltas) {
            BoundPair b = spec ? concat_bounds(*spec, d, eps) : lrfc_bounds(q, d);
            const int n = spec ? spec->n : 0;
            const int kk = spec ? spec->k : k;
            const int qq = spec ? spec->field->q() : q;
            os << scheme << "," << qq << "," << n << "," << kk << "," << fmt(eps) << "," << d << ","
               << fmt(b.lower) << "," << fmt(b.upper) << "\n";
        }
}

inline void emit_sim_row(std::ostream& os, const CodeSpec& spec, double eps, int delta, const SimResult& r) {
    os << scheme_name(spec) << "," << spec.field->q() << "," << spec.n << "," << spec.k << "," << fmt(eps) << ","
       << delta << "," << r.trials << "," << r.failures << "," << fmt(r.p_hat) << "," << fmt(r.ci_lo) << ","
       << fmt(r.ci_hi) << "\n";
}

inline const char* model_flag(FountainModel m) { return model_name(m); }

inline FountainModel parse_model(const std::string& s) {
    if (s == "lrfc") return FountainModel::LRFC;
    if (s == "concat-upper") return FountainModel::CONCAT_UPPER;
    if (s == "concat-lower") return FountainModel::CONCAT_LOWER;
    if (s == "ideal") return FountainModel::IDEAL;
    throw std::invalid_argument("unknown model: " + s);
}

inline void emit_system_rows(std::ostream& os, const CodeSpec& spec, FountainModel model, long receivers,
                             double eps, const std::vector<int>& deltas) {
    for (int d : deltas) {
        const double pe = receiver_failure(spec, d, eps, model);
        const double pE = system_failure(pe, receivers);
        os << model_flag(model) << "," << spec.field->q() << "," << spec.n << "," << spec.k << "," << receivers
           << "," << fmt(eps) << "," << d << "," << fmt(pe) << "," << fmt(pE) << "\n";
    }
}

inline void emit_spectrum_rows(std::ostream& os, int t, double rate, int l) {
    const auto table = hamming_cowef(t);
    const int n = (1 << t) - 1, k = n - t;
    const auto ws = concat_avg_wef(table, k, l, 2);
    for (int w = 0; w <= l; ++w)
        os << t << ",2," << n << "," << k << "," << l << "," << fmt(rate) << "," << w << ","
           << exact_decimal(ws.coeffs[w]) << "\n";
}

inline void emit_finite_rate_rows(std::ostream& os, const CodeSpec& spec, int l,
                                  const std::vector<double>& eps_list, int realizations, long trials,
                                  std::uint64_t seed) {
    const auto ws = concat_avg_wef(hamming_cowef(spec.hamming_t), spec.k, l, 2);
    for (double eps : eps_list) {
        FiniteRatePlan plan{spec, l, eps, realizations, trials, seed};
        const SimResult r = estimate_finite_rate_pb(plan);
        os << scheme_name(spec) << ",2," << spec.n << "," << spec.k << "," << l << "," << fmt(eps) << ","
           << r.trials << "," << r.failures << "," << fmt(r.p_hat) << "," << fmt(r.ci_lo) << "," << fmt(r.ci_hi)
           << "," << fmt(union_bound_pb(ws, eps)) << "," << fmt(singleton_bound_pb(l, spec.k, eps)) << ","
           << fmt(berlekamp_bound_pb(l, spec.k, eps)) << "\n";
    }
}

struct ReceivedFile {
    std::vector<std::pair<long, int>> symbols;  // (stream index, value)
};

inline ReceivedFile read_received(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read symbol file: " + path);
    ReceivedFile rf;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("malformed symbol line: " + line);
        const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
        if (a == "index") continue;  // header row
        rf.symbols.emplace_back(std::stol(a), std::stoi(b));
    }
    if (rf.symbols.empty()) throw std::runtime_error("no symbols in " + path);
    return rf;
}

}  // namespace detail

// Full front end. Streams are injected so tests can run commands in-process.
// Exit codes: 0 success, 2 usage error, 3 runtime error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"MDS + random fountain coding toolkit"};
    app.require_subcommand(0, 1);

    std::string preset, out_path = "-";
    long trials_override = 0;
    std::uint64_t seed = 1;
    int workers = 1;
    app.add_option("--preset", preset,
                   "bundled figure run: fig-gf2, fig-gf16, fig-gf2-sim, fig-gf16-sim, fig-system, "
                   "fig-spectrum, fig-hamming-pb")
        ->check(CLI::IsMember({"fig-gf2", "fig-gf16", "fig-gf2-sim", "fig-gf16-sim", "fig-system",
                               "fig-spectrum", "fig-hamming-pb"}));
    app.add_option("--out", out_path, "output path for CSV, - for stdout");
    app.add_option("--trials", trials_override, "override trial count of preset simulations");
    app.add_option("--seed", seed, "base RNG seed");
    app.add_option("--workers", workers, "reserved; results never depend on it")->check(CLI::PositiveNumber);

    std::string config_sink;
    const auto plumb = [&config_sink](CLI::App* sub) {
        sub->fallthrough();
        sub->add_option("--config", config_sink, "flat key=value file, # comments; command-line flags win");
    };

    // bounds
    auto* cb = app.add_subcommand("bounds", "closed-form failure bands vs overhead");
    plumb(cb);
    detail::CodeOpts bounds_code;
    bounds_code.attach(cb);
    std::string bounds_scheme = "lrfc", bounds_eps = "0", bounds_delta = "0..10";
    cb->add_option("--scheme", bounds_scheme, "lrfc or concat")->check(CLI::IsMember({"lrfc", "concat"}));
    cb->add_option("--eps", bounds_eps, "erasure rate(s), comma separated");
    cb->add_option("--delta", bounds_delta, "overhead grid, a..b or list");

    // simulate
    auto* cs = app.add_subcommand("simulate", "Monte Carlo receiver failure rate vs reception overhead");
    plumb(cs);
    detail::CodeOpts sim_code;
    sim_code.attach(cs);
    std::string sim_eps = "0.1", sim_delta = "0..4", sim_decoder = "hybrid";
    long sim_trials = 100000;
    cs->add_option("--eps", sim_eps, "erasure rate(s)");
    cs->add_option("--delta", sim_delta, "reception overhead grid");
    cs->add_option("--trials", sim_trials, "trials per grid point")->check(CLI::PositiveNumber);
    cs->add_option("--decoder", sim_decoder, "hybrid or ge")->check(CLI::IsMember({"hybrid", "ge"}));

    // system
    auto* cy = app.add_subcommand("system", "multicast model: system failure vs transmission overhead");
    plumb(cy);
    detail::CodeOpts sys_code;
    sys_code.attach(cy);
    std::string sys_model = "concat-upper", sys_delta = "0..40";
    long receivers = 10000;
    double sys_eps = 0.01, sys_target = 0;
    cy->add_option("--model", sys_model, "lrfc, concat-upper, concat-lower, ideal")
        ->check(CLI::IsMember({"lrfc", "concat-upper", "concat-lower", "ideal"}));
    cy->add_option("--N", receivers, "number of receivers")->check(CLI::PositiveNumber);
    cy->add_option("--eps", sys_eps, "erasure rate");
    cy->add_option("--delta", sys_delta, "transmission overhead grid");
    cy->add_option("--target", sys_target, "report the smallest overhead with system failure <= target");

    // spectrum
    auto* cp = app.add_subcommand("spectrum", "exact average weight spectrum of the extended code");
    plumb(cp);
    int sp_t = 6, sp_l = 0;
    double sp_rate = 0.5;
    cp->add_option("--hamming-t", sp_t, "Hamming parameter t");
    cp->add_option("--rate", sp_rate, "overall rate k / l");
    cp->add_option("--l", sp_l, "total length; overrides --rate");

    // finite-rate
    auto* cf = app.add_subcommand("finite-rate", "fixed-length ensemble: Monte Carlo vs analytic bounds");
    plumb(cf);
    int fr_t = 6, fr_l = 0, fr_realizations = 100;
    double fr_rate = 0.5;
    std::string fr_eps = "0.05,0.1,0.2";
    long fr_trials = 1000;
    cf->add_option("--hamming-t", fr_t, "Hamming parameter t");
    cf->add_option("--rate", fr_rate, "overall rate k / l");
    cf->add_option("--l", fr_l, "total length; overrides --rate");
    cf->add_option("--eps", fr_eps, "erasure rate(s)");
    cf->add_option("--realizations", fr_realizations, "independent random tails")->check(CLI::PositiveNumber);
    cf->add_option("--trials", fr_trials, "trials per realization")->check(CLI::PositiveNumber);

    // encode
    auto* ce = app.add_subcommand("encode", "emit the symbol stream for a source block");
    plumb(ce);
    detail::CodeOpts enc_code;
    enc_code.attach(ce);
    std::string enc_message;
    long enc_count = 0;
    bool enc_zero = false;
    ce->add_option("--message", enc_message, "source symbols, comma separated");
    ce->add_flag("--zero", enc_zero, "use the all-zero source block");
    ce->add_option("--count", enc_count, "number of stream symbols to emit")->required()->check(CLI::PositiveNumber);

    // decode
    auto* cd = app.add_subcommand("decode", "recover the source block from received symbols");
    plumb(cd);
    detail::CodeOpts dec_code;
    dec_code.attach(cd);
    std::string dec_in, dec_decoder = "hybrid";
    cd->add_option("--in", dec_in, "CSV of received (index,symbol) rows")->required();
    cd->add_option("--decoder", dec_decoder, "hybrid or ge")->check(CLI::IsMember({"hybrid", "ge"}));

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = apply_config_file(std::move(args));
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    std::vector<const char*> cargv{argc > 0 ? argv[0] : "lrfc"};
    for (const auto& a : args) cargv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (!preset.empty()) {
            if (app.get_subcommands().size() > 0) throw std::invalid_argument("preset and subcommand are exclusive");
            CsvSink sink(out_path == "-" ? preset + ".csv" : out_path, out);
            std::ostream& os = sink.os();
            const auto& f16 = Field::get(4);
            const auto& f2 = Field::get(1);

            if (preset == "fig-gf2" || preset == "fig-gf16") {
                const bool gf2 = preset == "fig-gf2";
                const CodeSpec spec = gf2 ? CodeSpec::spc(10) : CodeSpec::grs(f16, 15, 10);
                os << "# lrfc --preset " << preset << " --seed " << seed << "\n";
                os << "scheme,q,n,k,eps,delta,lower,upper\n";
                const std::vector<double> eps{0.05, 0.1, 0.2};
                std::vector<int> deltas;
                for (int d = 0; d <= 10; ++d) deltas.push_back(d);
                detail::emit_bounds(os, "lrfc", nullptr, spec.field->q(), 10, eps, deltas);
                detail::emit_bounds(os, "concat", &spec, 0, 0, eps, deltas);
            } else if (preset == "fig-gf2-sim" || preset == "fig-gf16-sim") {
                const bool gf2 = preset == "fig-gf2-sim";
                const CodeSpec concat = gf2 ? CodeSpec::spc(10) : CodeSpec::grs(f16, 15, 10);
                const CodeSpec plain = gf2 ? CodeSpec::none(f2, 10) : CodeSpec::none(f16, 10);
                const long trials = trials_override > 0 ? trials_override : (gf2 ? 1000000 : 10000000);
                const int dmax = gf2 ? 8 : 4;
                os << "# lrfc --preset " << preset << " --trials " << trials << " --seed " << seed << "\n";
                os << "scheme,q,n,k,eps,delta,trials,failures,p_hat,ci_lo,ci_hi\n";
                for (const CodeSpec& spec : {concat, plain})
                    for (int d = 0; d <= dmax; ++d) {
                        TrialPlan plan{spec, 0.1, d, trials, seed};
                        detail::emit_sim_row(os, spec, 0.1, d, estimate_pf(plan));
                    }
            } else if (preset == "fig-system") {
                const CodeSpec spc = CodeSpec::spc(10);
                const CodeSpec plain = CodeSpec::none(f2, 10);
                os << "# lrfc --preset fig-system --seed " << seed << "\n";
                os << "model,q,n,k,receivers,eps,delta,p_receiver,p_system\n";
                std::vector<int> deltas;
                for (int d = 0; d <= 40; ++d) deltas.push_back(d);
                detail::emit_system_rows(os, plain, FountainModel::LRFC, 10000, 0.01, deltas);
                detail::emit_system_rows(os, spc, FountainModel::CONCAT_UPPER, 10000, 0.01, deltas);
                detail::emit_system_rows(os, spc, FountainModel::CONCAT_LOWER, 10000, 0.01, deltas);
                detail::emit_system_rows(os, spc, FountainModel::IDEAL, 10000, 0.01, deltas);
                os << "# delta_star lrfc=" << min_overhead(plain, 10000, 0.01, FountainModel::LRFC, 1e-4)
                   << " concat-upper=" << min_overhead(spc, 10000, 0.01, FountainModel::CONCAT_UPPER, 1e-4)
                   << " ideal=" << min_overhead(spc, 10000, 0.01, FountainModel::IDEAL, 1e-4) << "\n";
            } else if (preset == "fig-spectrum") {
                os << "# lrfc --preset fig-spectrum\n";
                os << "t,q,n,k,l,rate,w,a_w\n";
                detail::emit_spectrum_rows(os, 6, 0.5, 114);
                detail::emit_spectrum_rows(os, 6, 0.25, 228);
            } else if (preset == "fig-hamming-pb") {
                const CodeSpec spec = CodeSpec::hamming(6);
                const long trials = trials_override > 0 ? trials_override : 1000;
                os << "# lrfc --preset fig-hamming-pb --trials " << trials << " --seed " << seed << "\n";
                os << "scheme,q,n,k,l,eps,trials,failures,p_hat,ci_lo,ci_hi,union_bound,singleton_bound,"
                      "berlekamp_bound\n";
                const std::vector<double> eps{0.01, 0.02, 0.03, 0.05, 0.075, 0.1, 0.15, 0.2, 0.25, 0.3};
                for (int l : {63, 71, 114}) detail::emit_finite_rate_rows(os, spec, l, eps, 100, trials, seed);
            }
            if (sink.is_file()) out << "wrote " << (out_path == "-" ? preset + ".csv" : out_path) << "\n";
            return 0;
        }

        if (cb->parsed()) {
            const auto eps = parse_double_list(bounds_eps);
            const auto deltas = parse_int_list(bounds_delta);
            CsvSink sink(out_path, out);
            std::ostream& os = sink.os();
            os << "# lrfc bounds --scheme " << bounds_scheme << " " << bounds_code.echo() << " --eps " << bounds_eps
               << " --delta " << bounds_delta << "\n";
            os << "scheme,q,n,k,eps,delta,lower,upper\n";
            if (bounds_scheme == "lrfc") {
                detail::emit_bounds(os, "lrfc", nullptr, bounds_code.q, bounds_code.k, eps, deltas);
            } else {
                const CodeSpec spec = bounds_code.build();
                detail::emit_bounds(os, "concat", &spec, 0, 0, eps, deltas);
            }
            return 0;
        }

        if (cs->parsed()) {
            const CodeSpec spec = sim_code.build();
            const auto eps = parse_double_list(sim_eps);
            const auto deltas = parse_int_list(sim_delta);
            CsvSink sink(out_path, out);
            std::ostream& os = sink.os();
            os << "# lrfc simulate " << sim_code.echo() << " --eps " << sim_eps << " --delta " << sim_delta
               << " --trials " << sim_trials << " --decoder " << sim_decoder << " --seed " << seed << "\n";
            os << "scheme,q,n,k,eps,delta,trials,failures,p_hat,ci_lo,ci_hi\n";
            for (double e : eps)
                for (int d : deltas) {
                    TrialPlan plan{spec, e, d, sim_trials, seed, sim_decoder == "ge"};
                    detail::emit_sim_row(os, spec, e, d, estimate_pf(plan));
                }
            return 0;
        }

        if (cy->parsed()) {
            const CodeSpec spec = sys_code.build();
            const FountainModel model = detail::parse_model(sys_model);
            const auto deltas = parse_int_list(sys_delta);
            CsvSink sink(out_path, out);
            std::ostream& os = sink.os();
            os << "# lrfc system --model " << sys_model << " " << sys_code.echo() << " --N " << receivers
               << " --eps " << fmt(sys_eps) << " --delta " << sys_delta;
            if (sys_target > 0) os << " --target " << fmt(sys_target);
            os << "\n";
            os << "model,q,n,k,receivers,eps,delta,p_receiver,p_system\n";
            detail::emit_system_rows(os, spec, model, receivers, sys_eps, deltas);
            if (sys_target > 0) {
                const int dstar = min_overhead(spec, receivers, sys_eps, model, sys_target);
                os << "# delta_star=" << dstar << "\n";
                if (sink.is_file()) out << "delta_star=" << dstar << "\n";
            }
            return 0;
        }

        if (cp->parsed()) {
            const int n = (1 << sp_t) - 1, k = n - sp_t;
            const int l = sp_l > 0 ? sp_l : static_cast<int>(std::lround(k / sp_rate));
            const double rate = double(k) / l;
            CsvSink sink(out_path, out);
            std::ostream& os = sink.os();
            os << "# lrfc spectrum --hamming-t " << sp_t << " --l " << l << "\n";
            os << "t,q,n,k,l,rate,w,a_w\n";
            detail::emit_spectrum_rows(os, sp_t, rate, l);
            return 0;
        }

        if (cf->parsed()) {
            const CodeSpec spec = CodeSpec::hamming(fr_t);
            const int l = fr_l > 0 ? fr_l : static_cast<int>(std::lround(spec.k / fr_rate));
            const auto eps = parse_double_list(fr_eps);
            CsvSink sink(out_path, out);
            std::ostream& os = sink.os();
            os << "# lrfc finite-rate --hamming-t " << fr_t << " --l " << l << " --eps " << fr_eps
               << " --realizations " << fr_realizations << " --trials " << fr_trials << " --seed " << seed << "\n";
            os << "scheme,q,n,k,l,eps,trials,failures,p_hat,ci_lo,ci_hi,union_bound,singleton_bound,"
                  "berlekamp_bound\n";
            detail::emit_finite_rate_rows(os, spec, l, eps, fr_realizations, fr_trials, seed);
            return 0;
        }

        if (ce->parsed()) {
            const CodeSpec spec = enc_code.build();
            std::vector<std::uint8_t> u(spec.k, 0);
            if (!enc_zero) {
                if (enc_message.empty()) throw std::invalid_argument("need --message or --zero");
                const auto vals = parse_int_list(enc_message);
                if (static_cast<int>(vals.size()) != spec.k)
                    throw std::invalid_argument("message must hold exactly k symbols");
                for (int i = 0; i < spec.k; ++i) {
                    if (vals[i] < 0 || vals[i] >= spec.field->q())
                        throw std::invalid_argument("message symbol out of field range");
                    u[i] = static_cast<std::uint8_t>(vals[i]);
                }
            }
            CsvSink sink(out_path, out);
            std::ostream& os = sink.os();
            os << "# lrfc encode " << enc_code.echo() << " --count " << enc_count << " --seed " << seed << "\n";
            os << "index,symbol\n";
            EncodedStream stream(u, spec, seed);
            for (long i = 1; i <= enc_count; ++i) os << i << "," << int(stream.symbol_at(i)) << "\n";
            return 0;
        }

        if (cd->parsed()) {
            const CodeSpec spec = dec_code.build();
            const auto rf = detail::read_received(dec_in);
            ReceivedSet rs;
            rs.spec = spec;
            rs.lrfc_seed = seed;
            std::vector<std::pair<long, int>> mds, tail;
            for (auto& [idx, val] : rf.symbols) (idx <= spec.n ? mds : tail).emplace_back(idx, val);
            std::sort(mds.begin(), mds.end());
            std::sort(tail.begin(), tail.end());
            for (auto& [idx, val] : mds) {
                rs.mds_indices.push_back(static_cast<int>(idx));
                rs.values.push_back(static_cast<std::uint8_t>(val));
            }
            for (auto& [idx, val] : tail) {
                rs.lrfc_indices.push_back(idx);
                rs.values.push_back(static_cast<std::uint8_t>(val));
            }
            const DecodeReport rep = dec_decoder == "ge" ? decode_ge(rs) : decode_hybrid(rs);
            if (!rep.success) throw std::runtime_error("decoding failed: rank deficit " + std::to_string(rep.rank_deficit));
            for (int i = 0; i < spec.k; ++i) out << (i ? "," : "") << int(rep.u[i]);
            out << "\n";
            return 0;
        }

        err << "error: no command given; see --help\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace lrfc::cli
