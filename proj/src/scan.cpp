#include "genusbounds/scan.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

#include "genusbounds/bounds.hpp"
#include "genusbounds/classgroup.hpp"
#include "genusbounds/discriminant.hpp"
#include "genusbounds/errors.hpp"

namespace genusbounds {

namespace {

// Splits [lo, hi] into `workers` contiguous chunks and runs fn(chunk_lo, chunk_hi, i).
template <class Fn>
void for_each_chunk(std::uint64_t lo, std::uint64_t hi, unsigned workers, Fn && fn)
{
    if (lo > hi)
        return;
    std::uint64_t const span = hi - lo + 1;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(workers, 1u), span));
    if (workers == 1) {
        fn(lo, hi, 0u);
        return;
    }
    std::vector<std::jthread> threads;
    std::uint64_t const step = span / workers;
    for (unsigned i = 0; i < workers; ++i) {
        std::uint64_t const a = lo + i * step;
        std::uint64_t const b = i + 1 == workers ? hi : a + step - 1;
        threads.emplace_back([&fn, a, b, i] { fn(a, b, i); });
    }
}

bool maybe_fundamental(std::uint64_t D)
{
    return D >= 3 && (D % 4 == 3 || D % 4 == 0);
}

struct scan_context {
    scan_config const & config;
    std::vector<f_constant> f;
    std::vector<key_inequality_constant> key;
};

void scan_range(scan_context const & ctx, std::uint64_t lo, std::uint64_t hi,
                scan_report & rep, std::vector<scan_row> & rows)
{
    auto const & cfg = ctx.config;
    for (std::uint64_t D = lo; D <= hi; ++D) {
        ++rep.scanned_count;
        if (!maybe_fundamental(D))
            continue;
        auto const profile = make_profile(D);
        if (!profile.is_fundamental)
            continue;
        ++rep.fundamental_count;

        auto const forms = reduced_forms(D);
        scan_row row;
        row.D = D;
        row.g = profile.g;
        row.h = forms.size();
        row.p = squares_of(forms).size();

        if ((row.p << (row.g - 1)) != row.h)
            ++rep.genus_identity_violations;
        if (profile.g >= 2) {
            if (!check_lemma1(profile))
                ++rep.lemma1_violations;
            if (!w_chain_check(profile))
                ++rep.w_chain_violations;
        }
        for (auto const & k : ctx.key)
            if (!key_inequality_check(profile, k))
                ++rep.key_inequality_violations;

        double const Dd = static_cast<double>(D);
        row.epsilon = cfg.epsilon.value_or(1.0 / std::log(Dd));
        bound_query q{Dd, row.epsilon, std::nullopt};
        auto const t2 = bound_theorem2(q);
        row.applicable = t2.applicable;
        row.bound_t2 = t2.value;
        row.margin_t2 = static_cast<double>(row.p) / t2.value;

        auto record = [&](double bound, double margin, std::string tag) {
            if (!row.applicable)
                return;
            if (static_cast<double>(row.p) <= bound)
                rep.bound_violations.push_back({D, row.p, bound, std::move(tag)});
            if (!rep.min_margin || margin < rep.min_margin->second)
                rep.min_margin = std::pair{D, margin};
        };
        record(row.bound_t2, row.margin_t2, "T2");
        for (auto const & f : ctx.f) {
            q.n = f.n;
            double const v = bound_theorem1(q, f).value;
            row.bound_t1.push_back(v);
            row.margin_t1.push_back(static_cast<double>(row.p) / v);
            record(v, row.margin_t1.back(), "T1_n" + std::to_string(f.n));
        }
        if (row.applicable)
            ++rep.applicable_count;

        unsigned const k = static_cast<unsigned>(std::bit_width(D) - 1);
        auto it = std::find_if(rep.min_p_by_dyadic_range.begin(),
                               rep.min_p_by_dyadic_range.end(),
                               [k](dyadic_min const & m) { return m.k == k; });
        if (it == rep.min_p_by_dyadic_range.end())
            rep.min_p_by_dyadic_range.push_back({k, D, row.p});
        else if (row.p < it->min_p)
            *it = {k, D, row.p};

        rows.push_back(std::move(row));
    }
}

void merge_into(scan_report & total, scan_report const & part)
{
    total.scanned_count += part.scanned_count;
    total.fundamental_count += part.fundamental_count;
    total.applicable_count += part.applicable_count;
    total.lemma1_violations += part.lemma1_violations;
    total.key_inequality_violations += part.key_inequality_violations;
    total.w_chain_violations += part.w_chain_violations;
    total.genus_identity_violations += part.genus_identity_violations;
    total.bound_violations.insert(total.bound_violations.end(), part.bound_violations.begin(),
                                  part.bound_violations.end());
    if (part.min_margin &&
        (!total.min_margin || part.min_margin->second < total.min_margin->second ||
         (part.min_margin->second == total.min_margin->second &&
          part.min_margin->first < total.min_margin->first)))
        total.min_margin = part.min_margin;
    for (auto const & m : part.min_p_by_dyadic_range) {
        auto it = std::find_if(total.min_p_by_dyadic_range.begin(),
                               total.min_p_by_dyadic_range.end(),
                               [&](dyadic_min const & t) { return t.k == m.k; });
        if (it == total.min_p_by_dyadic_range.end())
            total.min_p_by_dyadic_range.push_back(m);
        else if (m.min_p < it->min_p || (m.min_p == it->min_p && m.D < it->D))
            *it = m;
    }
}

}  // namespace

void scan_config::validate() const
{
    if (d_min > d_max)
        throw config_error("scan needs d_min <= d_max");
    if (epsilon && !(*epsilon > 0.0 && *epsilon < 0.5))
        throw config_error("scan epsilon must lie in (0, 1/2)");
    if (!epsilon && d_min < 8)
        throw config_error("eps auto (1/ln D) needs d_min >= 8 so that eps < 1/2");
    for (int n : n_values)
        if (n < 4)
            throw config_error("scan n values must be >= 4");
    if (workers == 0)
        throw config_error("scan needs at least one worker");
}

bool scan_report::passed() const
{
    return lemma1_violations == 0 && key_inequality_violations == 0 &&
           w_chain_violations == 0 && genus_identity_violations == 0 &&
           bound_violations.size() <= 1;
}

scan_report run_scan(scan_config const & config, prime_table const & table,
                     std::vector<scan_row> * rows)
{
    config.validate();
    scan_context ctx{config, {}, {}};
    for (int n : config.n_values) {
        ctx.f.push_back(make_f_constant(table, n));
        ctx.key.push_back(make_key_inequality_constant(table, n));
    }

    std::uint64_t const lo = std::max<std::uint64_t>(config.d_min, 1);
    std::uint64_t const hi = config.d_max;
    unsigned const workers = config.workers;
    std::vector<scan_report> parts(workers);
    std::vector<std::vector<scan_row>> part_rows(workers);
    for_each_chunk(lo, hi, workers, [&](std::uint64_t a, std::uint64_t b, unsigned i) {
        scan_range(ctx, a, b, parts[i], part_rows[i]);
    });

    scan_report total;
    for (auto const & part : parts)
        merge_into(total, part);
    std::sort(total.bound_violations.begin(), total.bound_violations.end(),
              [](bound_violation const & x, bound_violation const & y) {
                  return x.D != y.D ? x.D < y.D : x.theorem < y.theorem;
              });
    std::sort(total.min_p_by_dyadic_range.begin(), total.min_p_by_dyadic_range.end(),
              [](dyadic_min const & x, dyadic_min const & y) { return x.k < y.k; });
    if (rows) {
        rows->clear();
        for (auto & r : part_rows)
            rows->insert(rows->end(), std::make_move_iterator(r.begin()),
                         std::make_move_iterator(r.end()));
        std::sort(rows->begin(), rows->end(),
                  [](scan_row const & x, scan_row const & y) { return x.D < y.D; });
    }
    return total;
}

std::optional<verify_target> parse_verify_target(std::string const & name)
{
    if (name == "lemma1")
        return verify_target::lemma1;
    if (name == "keyineq")
        return verify_target::keyineq;
    if (name == "wchain")
        return verify_target::wchain;
    if (name == "rs")
        return verify_target::rs;
    if (name == "genus")
        return verify_target::genus;
    return std::nullopt;
}

std::string to_string(verify_target t)
{
    switch (t) {
    case verify_target::lemma1: return "lemma1";
    case verify_target::keyineq: return "keyineq";
    case verify_target::wchain: return "wchain";
    case verify_target::rs: return "rs";
    case verify_target::genus: return "genus";
    }
    return "?";
}

verify_report run_verify(verify_target target, std::uint64_t limit, std::vector<int> const & ns,
                         prime_table const & table, unsigned workers)
{
    if (limit < 3)
        throw config_error("verify needs limit >= 3");

    verify_report rep;
    rep.target = target;
    rep.limit = limit;

    if (target == verify_target::rs) {
        prime_table const own(limit);
        auto const r = verify_rs_inequalities(own);
        rs_report::entry const * entries[] = {&r.theta_lower, &r.nth_prime_lower,
                                              &r.nth_prime_upper, &r.pi_upper,
                                              &r.theta_lower_fine};
        char const * names[] = {"theta_lower", "nth_prime_lower", "nth_prime_upper",
                                "pi_upper", "theta_lower_fine"};
        for (int i = 0; i < 5; ++i) {
            rep.checked += entries[i]->checked;
            rep.violations += entries[i]->violations;
            rep.details.push_back(std::string(names[i]) + ": " +
                                  std::to_string(entries[i]->violations) + " violations in " +
                                  std::to_string(entries[i]->checked) + " checks");
        }
        return rep;
    }

    std::vector<key_inequality_constant> keys;
    if (target == verify_target::keyineq) {
        if (ns.empty())
            throw config_error("verify keyineq needs at least one --n");
        for (int n : ns)
            keys.push_back(make_key_inequality_constant(table, n));
    }

    std::vector<verify_report> parts(std::max(workers, 1u));
    for_each_chunk(3, limit, workers, [&](std::uint64_t a, std::uint64_t b, unsigned i) {
        auto & part = parts[i];
        auto fail = [&](std::uint64_t D, std::string const & what) {
            ++part.violations;
            if (part.details.size() < 10)
                part.details.push_back("D=" + std::to_string(D) + ": " + what);
        };
        for (std::uint64_t D = a; D <= b; ++D) {
            if (!maybe_fundamental(D))
                continue;
            auto const profile = make_profile(D);
            if (!profile.is_fundamental)
                continue;
            switch (target) {
            case verify_target::lemma1:
                if (profile.g < 2)
                    break;
                ++part.checked;
                if (!check_lemma1(profile))
                    fail(D, "ln D <= g ln g");
                break;
            case verify_target::wchain:
                if (profile.g < 2)
                    break;
                ++part.checked;
                if (!w_chain_check(profile))
                    fail(D, "exp(W(ln D)) <= g");
                break;
            case verify_target::keyineq:
                for (auto const & k : keys) {
                    ++part.checked;
                    ++(D % 8 == 0 ? part.mod8_branch : part.plain_branch);
                    if (!key_inequality_check(profile, k))
                        fail(D, "2^(gn) > f(n)^n D' for n=" + std::to_string(k.n));
                }
                break;
            case verify_target::genus: {
                auto const forms = reduced_forms(D);
                std::uint64_t const p = squares_of(forms).size();
                ++part.checked;
                if ((p << (profile.g - 1)) != forms.size())
                    fail(D, "p * 2^(g-1) != h");
                break;
            }
            case verify_target::rs:
                break;
            }
        }
    });

    for (auto const & part : parts) {
        rep.checked += part.checked;
        rep.violations += part.violations;
        rep.mod8_branch += part.mod8_branch;
        rep.plain_branch += part.plain_branch;
        for (auto const & d : part.details)
            if (rep.details.size() < 10)
                rep.details.push_back(d);
    }
    return rep;
}

}  // namespace genusbounds
