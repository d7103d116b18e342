#include "genusbounds/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>

#include "genusbounds/classgroup.hpp"
#include "genusbounds/discriminant.hpp"
#include "genusbounds/errors.hpp"

namespace genusbounds::cli {

using nlohmann::json;

namespace {

class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::uint64_t parse_count(std::string const & text, char const * what)
{
    std::uint64_t v = 0;
    auto const * end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec == std::errc{} && ptr == end)
        return v;
    // Accept scientific notation such as 1e6 when it names an exact integer.
    double d = 0.0;
    auto [dptr, dec] = std::from_chars(text.data(), end, d);
    if (dec == std::errc{} && dptr == end && d >= 0.0 && d < 9.2e18 && std::floor(d) == d)
        return static_cast<std::uint64_t>(d);
    throw domain_error(std::string(what) + " must be a nonnegative integer, got '" + text + "'");
}

double parse_real(std::string const & text, char const * what)
{
    double d = 0.0;
    auto const * end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, d);
    if (ec != std::errc{} || ptr != end)
        throw domain_error(std::string(what) + " must be a number, got '" + text + "'");
    return d;
}

// "auto" -> nullopt (eps = 1/ln D).
std::optional<double> parse_epsilon(std::string const & text)
{
    if (text == "auto")
        return std::nullopt;
    return parse_real(text, "--eps");
}

json form_json(form const & f)
{
    return json::array({f.a, f.b, f.c});
}

std::string form_text(form const & f)
{
    return "(" + std::to_string(f.a) + "," + std::to_string(f.b) + "," + std::to_string(f.c) +
           ")";
}

json nullable(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

std::ofstream open_output(std::string const & path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw io_error("cannot open '" + path + "' for writing");
    return os;
}

void finish_output(std::ofstream & os, std::string const & path)
{
    os.flush();
    if (!os)
        throw io_error("failed writing '" + path + "'");
}

struct lazy_table {
    std::unique_ptr<prime_table> table;
    prime_table const & get()
    {
        if (!table)
            table = std::make_unique<prime_table>(sieve_limit_from_env());
        return *table;
    }
};

// ---- classgroup ---------------------------------------------------------

int cmd_classgroup(std::string const & d_text, bool as_json, std::ostream & out)
{
    std::uint64_t const D = parse_count(d_text, "--D");
    if (D < 3 || !is_fundamental_negative(D))
        throw domain_error("-" + std::to_string(D) + " is not fundamental");

    auto const s = principal_genus(D);
    auto const parts = primary_decomposition(D);
    bool const partition_ok = genus_partition_check(s);

    if (as_json) {
        json j;
        j["d"] = D;
        j["h"] = s.h;
        j["g"] = s.g;
        j["p"] = s.p;
        j["primary_parts"] = parts;
        j["genus_count"] = s.genus_cosets.size();
        j["genus_partition_ok"] = partition_ok;
        j["reduced_forms"] = json::array();
        for (auto const & f : s.reduced_forms)
            j["reduced_forms"].push_back(form_json(f));
        j["principal_genus"] = json::array();
        for (auto const & f : s.principal_genus)
            j["principal_genus"].push_back(form_json(f));
        j["genus_cosets"] = json::array();
        for (auto const & block : s.genus_cosets) {
            json b = json::array();
            for (auto const & f : block)
                b.push_back(form_json(f));
            j["genus_cosets"].push_back(b);
        }
        out << j.dump(2) << "\n";
        return exit_ok;
    }

    out << "D = " << D << "\n";
    out << "h = " << s.h << "\n";
    out << "g = " << s.g << "\n";
    out << "p = " << s.p << "\n";
    out << "primary parts:";
    for (auto q : parts)
        out << " " << q;
    out << "\n";
    out << "genera: " << s.genus_cosets.size() << " of size " << s.p
        << (partition_ok ? "" : " (partition check FAILED)") << "\n";
    for (std::size_t i = 0; i < s.genus_cosets.size(); ++i) {
        out << "  genus " << i << ":";
        for (auto const & f : s.genus_cosets[i])
            out << " " << form_text(f);
        out << "\n";
    }
    return exit_ok;
}

// ---- bound --------------------------------------------------------------

struct bound_args {
    std::string theorem;
    std::string D;
    std::string eps = "auto";
    std::optional<int> n;
    std::optional<double> clears;
    bool as_json = false;
};

int cmd_bound(bound_args const & a, lazy_table & tables, std::ostream & out)
{
    if (a.theorem == "t1" && !a.n)
        throw domain_error("bound t1 needs --n");
    double const D = parse_real(a.D, "--D");
    if (!(D > 1.0))
        throw domain_error("--D must be > 1");
    auto const eps_fixed = parse_epsilon(a.eps);
    double const eps = eps_fixed.value_or(1.0 / std::log(D));

    bound_query q{D, eps, std::nullopt};
    bound_result r;
    if (a.theorem == "t1") {
        q.n = a.n;
        r = bound_theorem1(q, tables.get());
    } else {
        r = bound_theorem2(q);
    }

    std::optional<double> clearing;
    if (a.clears) {
        auto const n = a.theorem == "t1" ? a.n : std::nullopt;
        double const lo = std::log(D);
        if (auto L = clearing_log_D(tables.get(), *a.clears, n, eps_fixed, lo, lo + 200.0))
            clearing = std::exp(*L);
    }

    if (a.as_json) {
        json j;
        j["theorem"] = theorem_tag(r.which);
        j["d"] = D;
        j["epsilon"] = eps;
        j["eps_mode"] = eps_fixed ? "fixed" : "auto";
        j["eps_log_base"] = "e";
        if (q.n)
            j["n"] = *q.n;
        j["value"] = nullable(r.value);
        j["log_value"] = r.log_value;
        j["applicable"] = r.applicable;
        j["applicability_threshold"] = nullable(r.applicability_threshold);
        j["caveat"] = bound_result::caveat;
        if (a.clears) {
            j["clears_target"] = *a.clears;
            j["clearing_d"] = clearing ? json(*clearing) : json(nullptr);
        }
        out << j.dump(2) << "\n";
        return exit_ok;
    }

    out << "theorem: " << theorem_tag(r.which) << "\n";
    out << "D: " << format_double(D) << "\n";
    out << "epsilon: " << format_double(eps)
        << (eps_fixed ? "" : " (auto: 1/ln D, natural log)") << "\n";
    if (q.n)
        out << "n: " << *q.n << "\n";
    out << "value: " << format_double(r.value) << "\n";
    out << "applicable: " << (r.applicable ? "true" : "false") << "\n";
    out << "threshold: " << format_double(r.applicability_threshold) << "\n";
    out << "note: " << bound_result::caveat << "\n";
    if (a.clears) {
        out << "bound exceeds " << format_double(*a.clears) << " from D = "
            << (clearing ? format_double(*clearing) : std::string("(not within bracket)"))
            << "\n";
    }
    return exit_ok;
}

// ---- scan ---------------------------------------------------------------

struct scan_args {
    std::string d_min = "162755";
    std::string d_max = "1000000";
    std::string eps = "0.08333333333333333";
    std::vector<int> ns{4};
    unsigned workers = 1;
    std::string out = "scan.csv";
    std::string format = "csv";
};

json scan_report_json(scan_report const & r, scan_config const & cfg)
{
    json j;
    j["d_min"] = cfg.d_min;
    j["d_max"] = cfg.d_max;
    j["epsilon"] = cfg.epsilon ? json(*cfg.epsilon) : json("auto");
    j["eps_log_base"] = "e";
    j["n_values"] = cfg.n_values;
    j["scanned_count"] = r.scanned_count;
    j["fundamental_count"] = r.fundamental_count;
    j["applicable_count"] = r.applicable_count;
    j["lemma1_violations"] = r.lemma1_violations;
    j["key_inequality_violations"] = r.key_inequality_violations;
    j["w_chain_violations"] = r.w_chain_violations;
    j["genus_identity_violations"] = r.genus_identity_violations;
    j["bound_violations"] = json::array();
    for (auto const & v : r.bound_violations)
        j["bound_violations"].push_back(
            {{"d", v.D}, {"p", v.p}, {"bound", v.bound}, {"theorem", v.theorem}});
    if (r.min_margin)
        j["min_margin"] = {{"d", r.min_margin->first}, {"ratio", r.min_margin->second}};
    else
        j["min_margin"] = nullptr;
    j["min_p_by_dyadic_range"] = json::array();
    for (auto const & m : r.min_p_by_dyadic_range)
        j["min_p_by_dyadic_range"].push_back({{"k", m.k}, {"d", m.D}, {"min_p", m.min_p}});
    j["caveat"] = bound_result::caveat;
    j["passed"] = r.passed();
    return j;
}

int cmd_scan(scan_args const & a, lazy_table & tables, std::ostream & out)
{
    scan_config cfg;
    cfg.d_min = parse_count(a.d_min, "--d-min");
    cfg.d_max = parse_count(a.d_max, "--d-max");
    cfg.epsilon = parse_epsilon(a.eps);
    cfg.n_values = a.ns;
    cfg.workers = a.workers;
    cfg.output_path = a.out;
    if (a.format == "csv")
        cfg.format = output_format::csv;
    else if (a.format == "json")
        cfg.format = output_format::json;
    else
        throw domain_error("--format must be csv or json");
    cfg.validate();

    // Open before the scan so an unwritable path fails fast.
    auto os = open_output(cfg.output_path);

    std::vector<scan_row> rows;
    auto const report = run_scan(cfg, tables.get(), &rows);

    if (cfg.format == output_format::csv)
        write_scan_csv(os, rows, cfg.n_values);
    else
        write_scan_json(os, report, rows, cfg);
    finish_output(os, cfg.output_path);

    if (report.fundamental_count > 0 && report.applicable_count == 0)
        out << "notice: no D in range exceeds the applicability threshold; bound checks "
               "skipped\n";
    out << scan_report_json(report, cfg).dump(2) << "\n";
    return report.passed() ? exit_ok : exit_check_failed;
}

// ---- verify -------------------------------------------------------------

int cmd_verify(std::string const & target_name, std::string const & limit_text,
               std::vector<int> const & ns, unsigned workers, lazy_table & tables,
               std::ostream & out)
{
    auto const target = parse_verify_target(target_name);
    if (!target)
        throw domain_error("unknown verify target '" + target_name +
                           "' (expected lemma1, keyineq, wchain, rs, genus)");
    std::uint64_t const limit = parse_count(limit_text, "--limit");
    if (limit < 3)
        throw domain_error("--limit must be >= 3");

    auto const r = target == verify_target::rs
                       ? run_verify(*target, limit, ns, prime_table(2), workers)
                       : run_verify(*target, limit, ns, tables.get(), workers);

    out << "target: " << to_string(r.target) << "\n";
    out << "limit: " << r.limit << "\n";
    if (r.target == verify_target::keyineq) {
        out << "n:";
        for (int n : ns)
            out << " " << n;
        out << "\n";
        out << "branches: D/2 (8 | D) " << r.mod8_branch << ", D " << r.plain_branch << "\n";
    }
    out << "checked: " << r.checked << "\n";
    out << "violations: " << r.violations << "\n";
    for (auto const & d : r.details)
        out << "  " << d << "\n";
    return r.violations == 0 ? exit_ok : exit_check_failed;
}

// ---- crossover ----------------------------------------------------------

int cmd_crossover(std::vector<int> const & ns, bool as_json, lazy_table & tables,
                  std::ostream & out)
{
    json all = json::array();
    for (int n : ns) {
        if (n < 4)
            throw domain_error("crossover needs n >= 4");
        auto const r = crossover_interval(tables.get(), n);
        if (as_json) {
            json j;
            j["n"] = r.n;
            j["x_max"] = r.x_max;
            j["g_at_max"] = r.g_at_max;
            j["log_f_n"] = r.log_f_n;
            if (r.interval_logD) {
                j["interval_logd"] = {r.interval_logD->first, r.interval_logD->second};
                j["interval_d"] = {nullable(r.interval_D->first),
                                   nullable(r.interval_D->second)};
                j["residuals"] = {
                    r.interval_logD->first > 0.0
                        ? json(g_func(n, r.interval_logD->first) - r.log_f_n)
                        : json(nullptr),
                    g_func(n, r.interval_logD->second) - r.log_f_n};
            } else {
                j["interval_logd"] = nullptr;
                j["interval_d"] = nullptr;
            }
            all.push_back(j);
            continue;
        }
        out << "n = " << r.n << "\n";
        out << "  x_max = " << format_double(r.x_max) << "\n";
        out << "  g(n, x_max) = " << format_double(r.g_at_max) << "\n";
        out << "  log f(n) = " << format_double(r.log_f_n) << "\n";
        if (!r.interval_logD) {
            out << "  interval: empty\n";
            continue;
        }
        auto const [lo, hi] = *r.interval_logD;
        out << "  interval log D: [" << format_double(lo) << ", " << format_double(hi)
            << "]\n";
        out << "  interval D: [" << format_double(r.interval_D->first) << ", "
            << format_double(r.interval_D->second) << "]\n";
        out << "  residuals: "
            << (lo > 0.0 ? format_double(g_func(n, lo) - r.log_f_n) : std::string("n/a"))
            << ", " << format_double(g_func(n, hi) - r.log_f_n) << "\n";
    }
    if (as_json)
        out << all.dump(2) << "\n";
    return exit_ok;
}

// ---- figure -------------------------------------------------------------

int cmd_figure(double lo, double hi, int steps, std::vector<int> const & ns,
               std::string const & path, lazy_table & tables, std::ostream & out)
{
    for (int n : ns)
        if (n < 4)
            throw domain_error("figure needs n >= 4");
    auto const table = figure_data(tables.get(), lo, hi, steps, ns);
    auto os = open_output(path);
    write_figure_csv(os, table);
    finish_output(os, path);
    out << "wrote " << table.rows.size() << " rows to " << path << "\n";
    return exit_ok;
}

}  // namespace

std::uint64_t sieve_limit_from_env()
{
    char const * env = std::getenv("GENUSBOUNDS_SIEVE_LIMIT");
    if (!env || !*env)
        return default_sieve_limit;
    try {
        return parse_count(env, "GENUSBOUNDS_SIEVE_LIMIT");
    } catch (domain_error const & e) {
        throw config_error(e.what());
    }
}

std::string format_double(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

void write_scan_csv(std::ostream & os, std::vector<scan_row> const & rows,
                    std::vector<int> const & ns)
{
    os << "D,g,h,p,epsilon,applicable,bound_t2,margin_t2";
    for (int n : ns)
        os << ",bound_t1_n" << n << ",margin_t1_n" << n;
    os << "\n";
    for (auto const & r : rows) {
        os << r.D << ',' << r.g << ',' << r.h << ',' << r.p << ',' << format_double(r.epsilon)
           << ',' << (r.applicable ? 1 : 0) << ',' << format_double(r.bound_t2) << ','
           << format_double(r.margin_t2);
        for (std::size_t i = 0; i < r.bound_t1.size(); ++i)
            os << ',' << format_double(r.bound_t1[i]) << ',' << format_double(r.margin_t1[i]);
        os << "\n";
    }
}

void write_scan_json(std::ostream & os, scan_report const & report,
                     std::vector<scan_row> const & rows, scan_config const & config)
{
    json j;
    j["report"] = scan_report_json(report, config);
    j["rows"] = json::array();
    for (auto const & r : rows) {
        json row{{"d", r.D},         {"g", r.g},
                 {"h", r.h},         {"p", r.p},
                 {"epsilon", r.epsilon}, {"applicable", r.applicable},
                 {"bound_t2", r.bound_t2}, {"margin_t2", r.margin_t2}};
        for (std::size_t i = 0; i < r.bound_t1.size(); ++i) {
            auto const n = std::to_string(config.n_values[i]);
            row["bound_t1_n" + n] = r.bound_t1[i];
            row["margin_t1_n" + n] = r.margin_t1[i];
        }
        j["rows"].push_back(row);
    }
    os << j.dump() << "\n";
}

void write_figure_csv(std::ostream & os, figure_table const & table)
{
    os << "logD,t2";
    for (int n : table.ns)
        os << ",t1_n" << n;
    os << "\n";
    for (auto const & row : table.rows) {
        os << format_double(row.logD) << ',' << format_double(row.t2);
        for (double v : row.t1)
            os << ',' << format_double(v);
        os << "\n";
    }
}

int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Lower bounds for the principal genus of definite binary quadratic forms",
                 "genusbounds"};
    app.require_subcommand(1);

    std::string d_text;
    bool json_flag = false;
    auto * classgroup = app.add_subcommand("classgroup", "class group and genus structure of -D");
    classgroup->add_option("--D", d_text, "discriminant magnitude D (for -D)")->required();
    classgroup->add_flag("--json", json_flag, "print JSON");

    bound_args ba;
    auto * bound = app.add_subcommand("bound", "evaluate a lower bound on p(-D)");
    bound->add_option("theorem", ba.theorem, "t1 (elementary, needs --n) or t2 (Lambert W)")
        ->required()
        ->check(CLI::IsMember({"t1", "t2"}));
    bound->add_option("--D", ba.D, "D, may be real-valued such as 5.6e10")->required();
    bound->add_option("--eps", ba.eps, "epsilon in (0, 1/2) or 'auto' for 1/ln D");
    bound->add_option("--n", ba.n, "n >= 4 for t1");
    bound->add_option("--clears", ba.clears, "also report the smallest D >= --D where the bound exceeds this value");
    bound->add_flag("--json", ba.as_json, "print JSON");

    scan_args sa;
    auto * scan = app.add_subcommand("scan", "scan fundamental discriminants and check all bounds");
    scan->add_option("--d-min", sa.d_min, "smallest D");
    scan->add_option("--d-max", sa.d_max, "largest D");
    scan->add_option("--eps", sa.eps, "epsilon or 'auto'");
    scan->add_option("--n", sa.ns, "n values for the elementary bound");
    scan->add_option("--workers", sa.workers, "worker threads");
    scan->add_option("--out", sa.out, "per-D output file");
    scan->add_option("--format", sa.format, "csv or json");

    std::string target;
    std::string limit_text = "1000000";
    std::vector<int> verify_ns{4};
    unsigned verify_workers = 1;
    auto * verify = app.add_subcommand("verify", "check one unconditional inequality suite");
    verify->add_option("target", target, "lemma1, keyineq, wchain, rs, or genus")->required();
    verify->add_option("--limit", limit_text, "largest D (or prime bound for rs)");
    verify->add_option("--n", verify_ns, "n values for keyineq");
    verify->add_option("--workers", verify_workers, "worker threads");

    std::vector<int> crossover_ns;
    bool crossover_json = false;
    auto * crossover = app.add_subcommand("crossover", "interval where the elementary bound wins");
    crossover->add_option("--n", crossover_ns, "n >= 4 (repeatable)")->required();
    crossover->add_flag("--json", crossover_json, "print JSON");

    double fig_lo = 10.0, fig_hi = 60.0;
    int fig_steps = 500;
    std::vector<int> fig_ns{4, 5, 6};
    std::string fig_out;
    auto * figure = app.add_subcommand("figure", "CSV data for the log-log comparison plot");
    figure->add_option("--logd-min", fig_lo, "smallest ln D");
    figure->add_option("--logd-max", fig_hi, "largest ln D");
    figure->add_option("--steps", fig_steps, "number of rows");
    figure->add_option("--n", fig_ns, "n values");
    figure->add_option("--out", fig_out, "CSV path")->required();

    std::vector<char const *> argv;
    for (auto const & a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::ParseError const & e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    lazy_table tables;
    try {
        if (*classgroup)
            return cmd_classgroup(d_text, json_flag, out);
        if (*bound)
            return cmd_bound(ba, tables, out);
        if (*scan)
            return cmd_scan(sa, tables, out);
        if (*verify)
            return cmd_verify(target, limit_text, verify_ns, verify_workers, tables, out);
        if (*crossover)
            return cmd_crossover(crossover_ns, crossover_json, tables, out);
        if (*figure)
            return cmd_figure(fig_lo, fig_hi, fig_steps, fig_ns, fig_out, tables, out);
    } catch (io_error const & e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (domain_error const & e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (config_error const & e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (out_of_table_error const & e) {
        err << "error: " << e.what() << " (raise GENUSBOUNDS_SIEVE_LIMIT)\n";
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace genusbounds::cli
