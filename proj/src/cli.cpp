#include "fbrate/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "fbrate/channel.hpp"
#include "fbrate/effective_rate.hpp"
#include "fbrate/errors.hpp"
#include "fbrate/mgf.hpp"
#include "fbrate/monte_carlo.hpp"
#include "fbrate/poles.hpp"
#include "fbrate/validation.hpp"

namespace fbrate::cli {

namespace {

constexpr std::size_t kMaxGridPoints = 100000;

double parse_double(std::string_view text) {
    const std::string s(text);
    if (s == "inf" || s == "infinity" || s == "+inf") return kUnboundedShadowing;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv(kSeedEnv)) {
        std::uint64_t seed = 0;
        const char* end = env + std::char_traits<char>::length(env);
        auto [ptr, ec] = std::from_chars(env, end, seed);
        if (ec == std::errc() && ptr == end) return seed;
    }
    return kDefaultSeed;
}

enum class Format { csv, jsonl };

// Channel flags shared by er, mgf, pdf and mc-validate.
struct ChannelFlags {
    std::string preset;
    std::optional<double> mu, kappa, eta, rho2;
    std::string m;
    double large_m = kDefaultLargeM;

    void attach(CLI::App* app) {
        app->add_option("--preset", preset,
                        "rayleigh, nakagami-m, rician, kappa-mu, eta-mu, kappa-mu-shadowed, beckmann");
        app->add_option("--mu", mu, "multipath clusters");
        app->add_option("--m", m, "shadowing severity (number or inf)");
        app->add_option("--kappa", kappa, "LoS to scattered power ratio");
        app->add_option("--eta", eta, "in-phase/quadrature scatter power ratio");
        app->add_option("--rho2", rho2, "in-phase/quadrature LoS power ratio");
        app->add_option("--large-m", large_m, "finite stand-in for m = inf")->capture_default_str();
    }

    ChannelParams build(double gamma_bar) const {
        ParamOverrides o;
        o.mu = mu;
        if (!m.empty()) o.m = parse_double(m);
        o.kappa = kappa;
        o.eta = eta;
        o.rho2 = rho2;
        o.gamma_bar = gamma_bar;
        if (!preset.empty()) return fbrate::preset(preset, o);
        ChannelParams p;
        p.mu = o.mu.value_or(p.mu);
        p.m = o.m.value_or(p.m);
        p.kappa = o.kappa.value_or(p.kappa);
        p.eta = o.eta.value_or(p.eta);
        p.rho2 = o.rho2.value_or(p.rho2);
        p.gamma_bar = gamma_bar;
        validate(p);
        return p;
    }
};

struct McFlags {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = default_seed();
    unsigned threads = 0;
    std::uint64_t chunk_size = std::uint64_t{1} << 16;

    void attach(CLI::App* app, std::uint64_t default_samples) {
        samples = default_samples;
        app->add_option("--samples", samples, "Monte-Carlo sample count")->capture_default_str();
        app->add_option("--seed", seed, std::string("Monte-Carlo seed (default from ") + kSeedEnv + " or 42)");
        app->add_option("--threads", threads, "worker threads, 0 = all cores (result is thread-count independent)");
        app->add_option("--chunk-size", chunk_size, "samples per RNG substream")->capture_default_str();
    }

    McConfig config() const { return {samples, seed, chunk_size, threads}; }
};

double single_snr(const std::string& text) {
    const auto values = parse_range(text).values();
    if (values.size() != 1) throw std::invalid_argument("--snr-db must name a single value here");
    return values.front();
}

void write_header(std::ostream& out, Format f, const std::string& csv_header) {
    if (f == Format::csv) out << csv_header << '\n';
}

// er ---------------------------------------------------------------------

struct ErCommand {
    ChannelFlags channel;
    McFlags mc;
    std::optional<double> a_exponent;
    std::optional<double> theta, block_duration, bandwidth;
    std::string snr_db = "0";
    std::string vary;
    std::string method = "auto";
    double rel_tol = 1e-8;
    Format format = Format::csv;

    int run(std::ostream& out) const {
        const auto parsed_method = parse_method(method);
        if (!parsed_method) throw std::invalid_argument("unknown --method '" + method + "'");

        std::optional<LinkParameters> link;
        const int triple = int(theta.has_value()) + int(block_duration.has_value()) + int(bandwidth.has_value());
        if (triple != 0 && triple != 3) throw std::invalid_argument("--theta, --T and --B go together");
        if (triple == 3) link = LinkParameters{*theta, *block_duration, *bandwidth};
        if (link && a_exponent) throw std::invalid_argument("give either --A or --theta/--T/--B");
        if (!link && !a_exponent) throw std::invalid_argument("--A (or --theta/--T/--B) is required");
        const double a = link ? qos_exponent(*link) : *a_exponent;

        std::string vary_name;
        std::vector<double> vary_values;
        if (!vary.empty()) {
            const auto eq = vary.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("--vary expects name=v1,v2,...");
            vary_name = vary.substr(0, eq);
            if (vary_name != "mu" && vary_name != "m") throw std::invalid_argument("--vary axis must be mu or m");
            vary_values = parse_list(vary.substr(eq + 1));
            if (vary_values.empty()) throw std::invalid_argument("--vary needs at least one value");
            std::sort(vary_values.begin(), vary_values.end());
        }
        const auto snrs = parse_range(snr_db).values();
        if (snrs.size() * std::max<std::size_t>(vary_values.size(), 1) > kMaxGridPoints) {
            throw std::invalid_argument("sweep exceeds 1e5 points");
        }

        if (format == Format::csv && link) {
            out << "# A=" << format_number(a) << " theta=" << format_number(link->theta)
                << " T=" << format_number(link->block_duration) << " B=" << format_number(link->bandwidth) << '\n';
        }
        write_header(out, format, "snr_db,vary,rate,j,method,err");
        for (double db : snrs) {
            const std::size_t n_vary = std::max<std::size_t>(vary_values.size(), 1);
            for (std::size_t v = 0; v < n_vary; ++v) {
                ChannelFlags flags = channel;
                std::optional<double> vary_value;
                if (!vary_values.empty()) {
                    vary_value = vary_values[v];
                    if (vary_name == "mu") {
                        flags.mu = *vary_value;
                    } else {
                        char buf[32];
                        std::snprintf(buf, sizeof buf, "%.17g", *vary_value);
                        flags.m = buf;
                    }
                }
                ErRequest req;
                req.params = flags.build(db_to_linear(db));
                req.a_exponent = a;
                req.method = *parsed_method;
                req.rel_tol = rel_tol;
                req.large_m = channel.large_m;
                req.mc = mc.config();
                req.link = link;
                const ErResult r = er_auto(req);
                emit(out, db, vary_value, r);
            }
        }
        return kOk;
    }

    void emit(std::ostream& out, double db, std::optional<double> vary_value, const ErResult& r) const {
        const std::string name(method_name(r.method_used));
        if (format == Format::csv) {
            out << format_number(db) << ',' << (vary_value ? format_number(*vary_value) : "") << ','
                << format_number(r.rate) << ',' << format_number(r.expectation_j) << ',' << name << ','
                << format_number(r.error_estimate) << '\n';
        } else {
            nlohmann::ordered_json row;
            row["snr_db"] = db;
            row["vary"] = vary_value ? nlohmann::ordered_json(*vary_value) : nlohmann::ordered_json(nullptr);
            row["rate"] = r.rate;
            row["j"] = r.expectation_j;
            row["method"] = name;
            row["err"] = r.error_estimate;
            out << row.dump() << '\n';
        }
    }
};

// mgf / pdf ----------------------------------------------------------------

struct GridCommand {
    ChannelFlags channel;
    std::string snr_db = "0";
    std::string grid;
    Format format = Format::csv;

    template <class Fn>
    int emit(std::ostream& out, const char* x_name, const char* y_name, Fn&& fn) const {
        const auto xs = parse_range(grid).values();
        write_header(out, format, std::string(x_name) + "," + y_name);
        for (double x : xs) {
            const double y = fn(x);
            if (format == Format::csv) {
                out << format_number(x) << ',' << format_number(y) << '\n';
            } else {
                nlohmann::ordered_json row;
                row[x_name] = x;
                row[y_name] = y;
                out << row.dump() << '\n';
            }
        }
        return kOk;
    }

    ChannelParams params() const {
        return resolve_shadowing(channel.build(db_to_linear(single_snr(snr_db))), channel.large_m);
    }
};

// validate -------------------------------------------------------------------

struct ValidateCommand {
    std::string m_list = "1,2,3", mu_list = "2,4,6", kappa_list = "0.5,1,2", eta_list = "0.1,0.5,1",
                rho2_list = "0.1,1", snr_list = "-10,0,10,20,30", a_list = "0.5,1,2,5";
    double tolerance = 1e-6;
    double z_limit = 4.0;
    bool skip_mc = false;
    McFlags mc;

    int run(std::ostream& out, std::ostream& err) const {
        GridAxes axes;
        axes.m = parse_list(m_list);
        axes.mu = parse_list(mu_list);
        axes.kappa = parse_list(kappa_list);
        axes.eta = parse_list(eta_list);
        axes.rho2 = parse_list(rho2_list);
        axes.snr_db = parse_list(snr_list);
        axes.a_exponent = parse_list(a_list);
        if (axes.empty()) {
            err << "error: validation grid is empty\n";
            return kUsage;
        }
        bool ok = true;

        double worst = 0.0;
        std::string worst_label;
        const auto grid = expand(axes);
        for (const auto& g : grid) {
            const ChannelParams p = g.params;
            const DerivedParams d = derive(p);
            const double q = expectation_quadrature(p, d, g.a_exponent).value;
            const double c = expectation_closed_form(p, d, g.a_exponent).value;
            const double rel = std::abs(q - c) / std::abs(q);
            if (rel > worst) {
                worst = rel;
                std::ostringstream label;
                label << "mu=" << p.mu << " m=" << p.m << " kappa=" << p.kappa << " eta=" << p.eta
                      << " rho2=" << p.rho2 << " snr_db=" << g.snr_db << " A=" << g.a_exponent;
                worst_label = label.str();
            }
        }
        const bool cross_ok = worst <= tolerance;
        ok = ok && cross_ok;
        out << "cross-method: " << grid.size() << " configurations, max quad/closed rel diff = "
            << format_number(worst) << " (limit " << format_number(tolerance) << ") "
            << (cross_ok ? "PASS" : "FAIL") << '\n';
        if (!worst_label.empty()) out << "  worst: " << worst_label << '\n';

        if (!skip_mc) {
            double max_z = 0.0;
            const auto mc_grid = monte_carlo_grid();
            for (const auto& g : mc_grid) {
                const ChannelParams p = resolve_shadowing(g.params);
                const double q = expectation_quadrature(p, derive(p), g.a_exponent, 1e-10).value;
                const McEstimate e = estimate_er(p, g.a_exponent, mc.config());
                max_z = std::max(max_z, std::abs(e.j_hat - q) / e.j_stderr);
            }
            const bool mc_ok = max_z <= z_limit;
            ok = ok && mc_ok;
            out << "monte-carlo: " << mc_grid.size() << " configurations, " << mc.samples << " samples, seed "
                << mc.seed << ", max |z| = " << format_number(max_z) << " (limit " << format_number(z_limit)
                << ") " << (mc_ok ? "PASS" : "FAIL") << '\n';
        }
        return ok ? kOk : kCheckFailed;
    }
};

// mc-validate ------------------------------------------------------------------

struct McValidateCommand {
    ChannelFlags channel;
    McFlags mc;
    double a_exponent = 2.0;
    std::string snr_db = "0";
    double z_limit = 4.0;
    Format format = Format::csv;

    int run(std::ostream& out) const {
        bool ok = true;
        write_header(out, format, "snr_db,j_mc,stderr,j_quad,z");
        for (double db : parse_range(snr_db).values()) {
            const ChannelParams p = resolve_shadowing(channel.build(db_to_linear(db)), channel.large_m);
            const double q = expectation_quadrature(p, derive(p), a_exponent, 1e-10).value;
            const McEstimate e = estimate_er(p, a_exponent, mc.config());
            const double z = (e.j_hat - q) / e.j_stderr;
            ok = ok && std::abs(z) <= z_limit;
            if (format == Format::csv) {
                out << format_number(db) << ',' << format_number(e.j_hat) << ',' << format_number(e.j_stderr)
                    << ',' << format_number(q) << ',' << format_number(z) << '\n';
            } else {
                nlohmann::ordered_json row;
                row["snr_db"] = db;
                row["j_mc"] = e.j_hat;
                row["stderr"] = e.j_stderr;
                row["j_quad"] = q;
                row["z"] = z;
                out << row.dump() << '\n';
            }
        }
        return ok ? kOk : kCheckFailed;
    }
};

void add_format(CLI::App* app, Format& format) {
    app->add_option_function<std::string>(
           "--format", [&format](const std::string& v) { format = v == "jsonl" ? Format::jsonl : Format::csv; },
           "csv (default) or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
}

}  // namespace

std::vector<double> Range::values() const {
    std::vector<double> out;
    const double span = (stop - start) / step;
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
    return out;
}

Range parse_range(std::string_view text) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    parts.push_back(current);
    Range r;
    if (parts.size() == 1) {
        r.start = r.stop = parse_double(parts[0]);
        r.step = 1.0;
    } else if (parts.size() == 3) {
        r.start = parse_double(parts[0]);
        r.stop = parse_double(parts[1]);
        r.step = parse_double(parts[2]);
    } else {
        throw std::invalid_argument("range must be start:stop:step or a single value");
    }
    if (!std::isfinite(r.start) || !std::isfinite(r.stop) || !std::isfinite(r.step)) {
        throw std::invalid_argument("range bounds must be finite");
    }
    if (!(r.step > 0.0)) throw std::invalid_argument("range step must be > 0");
    if (r.start > r.stop) throw std::invalid_argument("range start must be <= stop");
    if ((r.stop - r.start) / r.step + 1.0 > static_cast<double>(kMaxGridPoints)) {
        throw std::invalid_argument("range exceeds 1e5 points");
    }
    return r;
}

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) out.push_back(parse_double(item));
    return out;
}

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Effective rate of Fluctuating Beckmann fading channels"};
    app.name("fbrate");
    app.require_subcommand(1);

    ErCommand er;
    auto* er_cmd = app.add_subcommand("er", "effective rate rows over an SNR sweep");
    er.channel.attach(er_cmd);
    er.mc.attach(er_cmd, 1'000'000);
    er_cmd->add_option("--A", er.a_exponent, "delay-QoS exponent A = theta T B / ln 2");
    er_cmd->add_option("--theta", er.theta, "delay exponent [1/bit]");
    er_cmd->add_option("--T", er.block_duration, "block duration [s]");
    er_cmd->add_option("--B", er.bandwidth, "bandwidth [Hz]");
    er_cmd->add_option("--snr-db", er.snr_db, "average SNR in dB, start:stop:step")->capture_default_str();
    er_cmd->add_option("--vary", er.vary, "second axis, e.g. mu=1,2,4 or m=0.5,1,3");
    er_cmd->add_option("--method", er.method, "auto, quadrature, closed, mc")->capture_default_str();
    er_cmd->add_option("--rel-tol", er.rel_tol, "target relative accuracy of J")->capture_default_str();
    add_format(er_cmd, er.format);

    GridCommand mgf_args;
    auto* mgf_cmd = app.add_subcommand("mgf", "moment generating function rows");
    mgf_args.channel.attach(mgf_cmd);
    mgf_args.grid = "0:10:0.5";
    mgf_cmd->add_option("--snr-db", mgf_args.snr_db, "average SNR in dB (single value)")->capture_default_str();
    mgf_cmd->add_option("--s", mgf_args.grid, "transform argument grid start:stop:step")->capture_default_str();
    add_format(mgf_cmd, mgf_args.format);

    GridCommand pdf_args;
    auto* pdf_cmd = app.add_subcommand("pdf", "SNR density rows (integer m, even mu)");
    pdf_args.channel.attach(pdf_cmd);
    pdf_args.grid = "0:10:0.01";
    pdf_cmd->add_option("--snr-db", pdf_args.snr_db, "average SNR in dB (single value)")->capture_default_str();
    pdf_cmd->add_option("--gamma", pdf_args.grid, "SNR grid start:stop:step")->capture_default_str();
    add_format(pdf_cmd, pdf_args.format);

    ValidateCommand val;
    auto* val_cmd = app.add_subcommand("validate", "cross-method and Monte-Carlo self check");
    val_cmd->add_option("--m-list", val.m_list)->capture_default_str();
    val_cmd->add_option("--mu-list", val.mu_list)->capture_default_str();
    val_cmd->add_option("--kappa-list", val.kappa_list)->capture_default_str();
    val_cmd->add_option("--eta-list", val.eta_list)->capture_default_str();
    val_cmd->add_option("--rho2-list", val.rho2_list)->capture_default_str();
    val_cmd->add_option("--snr-db-list", val.snr_list)->capture_default_str();
    val_cmd->add_option("--A-list", val.a_list)->capture_default_str();
    val_cmd->add_option("--tol", val.tolerance, "max quad/closed relative difference")->capture_default_str();
    val_cmd->add_option("--z-limit", val.z_limit, "max Monte-Carlo |z|")->capture_default_str();
    val_cmd->add_flag("--skip-mc", val.skip_mc, "only run the cross-method grid");
    val.mc.attach(val_cmd, 200'000);

    McValidateCommand mcv;
    auto* mcv_cmd = app.add_subcommand("mc-validate", "Monte-Carlo estimate against quadrature per SNR");
    mcv.channel.attach(mcv_cmd);
    mcv.mc.attach(mcv_cmd, 1'000'000);
    mcv_cmd->add_option("--A", mcv.a_exponent, "delay-QoS exponent")->capture_default_str();
    mcv_cmd->add_option("--snr-db", mcv.snr_db, "average SNR in dB, start:stop:step")->capture_default_str();
    mcv_cmd->add_option("--z-limit", mcv.z_limit)->capture_default_str();
    add_format(mcv_cmd, mcv.format);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*er_cmd) return er.run(out);
        if (*mgf_cmd) {
            const ChannelParams p = mgf_args.params();
            const DerivedParams d = derive(p);
            return mgf_args.emit(out, "s", "mgf", [&](double s) { return mgf(p, d, s).value; });
        }
        if (*pdf_cmd) {
            const ChannelParams p = pdf_args.params();
            const DerivedParams d = derive(p);
            const auto expansion = residues<double>(build_pole_set(p, d));
            return pdf_args.emit(out, "gamma", "pdf", [&](double g) { return pdf(p, expansion, g); });
        }
        if (*val_cmd) return val.run(out, err);
        if (*mcv_cmd) return mcv.run(out);
    } catch (const ClosedFormUnavailable& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << " (estimate " << format_number(e.estimate()) << ", error "
            << format_number(e.error()) << ")\n";
        return kNumerical;
    } catch (const std::invalid_argument& e) {  // includes ValidationError
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}

}  // namespace fbrate::cli
