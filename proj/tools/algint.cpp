// algint: desk-scale distribution of real algebraic integers.
//
// Subcommands: census, density, profile, idiff, thresholds, gaps, reducible,
// verify. Data goes to stdout or --output; diagnostics to stderr. Exit codes:
// 0 success, 1 validation error, 2 budget/tolerance failure.

#include "CLI11.hpp"
#include "json.hpp"

#include "algint/census.hpp"
#include "algint/density.hpp"
#include "algint/errors.hpp"
#include "algint/interval.hpp"
#include "algint/io_format.hpp"
#include "algint/limits.hpp"
#include "algint/verify.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace algint;
using nlohmann::json;

namespace {

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw validation_error("cannot open output file: " + path);
        os = &file;
    }
};

std::vector<RationalInterval> parse_bins(const std::string& spec, long long Q) {
    Rat lo(-Q - 1), hi(Q + 1);
    if (spec == "whole") return {RationalInterval(lo, hi)};
    if (spec.rfind("width:", 0) == 0)
        return uniform_bins(lo, hi, parse_rational(spec.substr(6)));
    if (spec.rfind("list:", 0) == 0) {
        std::vector<RationalInterval> bins;
        std::stringstream ss(spec.substr(5));
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto colon = item.find(':');
            if (colon == std::string::npos)
                throw validation_error("bin item must be LO:HI, got '" + item + "'");
            bins.emplace_back(parse_rational(item.substr(0, colon)),
                              parse_rational(item.substr(colon + 1)));
        }
        if (bins.empty()) throw validation_error("empty bin list");
        return bins;
    }
    throw validation_error("bins spec must be whole, width:<r>, or list:lo:hi[,lo:hi...]");
}

std::vector<Rat> parse_grid(const std::string& spec) {
    std::stringstream ss(spec);
    std::string lo_s, hi_s, n_s;
    if (!std::getline(ss, lo_s, ':') || !std::getline(ss, hi_s, ':') || !std::getline(ss, n_s))
        throw validation_error("grid spec must be LO:HI:COUNT");
    Rat lo = parse_rational(lo_s), hi = parse_rational(hi_s);
    long count = std::stol(n_s);
    if (count < 2 || !(lo < hi)) throw validation_error("grid needs LO < HI and COUNT >= 2");
    std::vector<Rat> grid;
    Rat step = (hi - lo) / (count - 1);
    for (long i = 0; i < count; ++i) grid.push_back(i + 1 == count ? hi : lo + step * i);
    return grid;
}

json rows_json(json rows) { return json{{"rows", std::move(rows)}}; }

void emit(Output& out, const std::string& fmt, const std::string& csv, const json& j) {
    if (fmt == "json")
        *out.os << j.dump(2) << "\n";
    else
        *out.os << csv;
}

// --- census ---

int cmd_census(int n, long long Q, const std::string& bins_spec, long long budget, int jobs,
               const std::string& fmt, const std::string& output,
               const std::string& residuals_output, double tol) {
    auto bins = parse_bins(bins_spec, Q);
    CensusTable table = run_census(n, Q, bins, budget, jobs);

    std::vector<ResidualRow> residuals;
    if (!residuals_output.empty()) {
        std::vector<double> integrals;
        std::vector<Rat> kinks;
        if (n == 2 && Q >= 4) {
            Omega2Thresholds th = omega2_thresholds(1.0 / static_cast<double>(Q));
            for (double t : {th.t1, th.t2, th.t3, th.t4, th.t5}) {
                kinks.push_back(limits_detail::snap_up(t));
                kinks.push_back(-limits_detail::snap_up(t));
            }
        }
        for (const RationalInterval& bin : bins)
            integrals.push_back(
                integrate_omega_over(n, Rat(1, Q), bin, tol, kinks).value);
        residuals = compare_census_to_integral(table, integrals);
    }

    Output out;
    out.open(output);
    std::ostringstream csv;
    write_census_csv(csv, table);
    json rows = json::array();
    for (size_t j = 0; j < table.bins.size(); ++j) {
        json row{{"n", table.n},
                 {"Q", table.Q},
                 {"bin_lo", rat_to_string(table.bins[j].lo)},
                 {"bin_hi", rat_to_string(table.bins[j].hi)},
                 {"omega_count", table.omega[j].convert_to<long long>()}};
        for (int k = 1; k <= table.n; ++k)
            row["N" + std::to_string(k)] =
                table.nk[j][static_cast<size_t>(k - 1)].convert_to<long long>();
        rows.push_back(std::move(row));
    }
    json j = rows_json(std::move(rows));
    j["summary"] = {{"reducible_count", table.reducible_count.convert_to<long long>()},
                    {"irreducible_count", table.irreducible_count.convert_to<long long>()}};
    emit(out, fmt, csv.str(), j);

    if (!residuals_output.empty()) {
        Output res_out;
        res_out.open(residuals_output);
        std::ostringstream res_csv;
        write_residuals_csv(res_csv, n, Q, residuals);
        json res_rows = json::array();
        for (const ResidualRow& r : residuals) {
            json row{{"n", n},
                     {"Q", Q},
                     {"bin_lo", rat_to_string(r.bin.lo)},
                     {"bin_hi", rat_to_string(r.bin.hi)},
                     {"omega_count", r.omega.convert_to<long long>()},
                     {"integral", r.integral},
                     {"residual", r.residual},
                     {"normalized", r.normalized}};
            if (r.has_refined) {
                row["refined"] = r.refined;
                row["refined_over_q"] = r.refined_over_q;
            }
            res_rows.push_back(std::move(row));
        }
        emit(res_out, fmt, res_csv.str(), rows_json(std::move(res_rows)));
    }
    return 0;
}

// --- density ---

int cmd_density(int n, const std::string& xi_s, const std::vector<Rat>& ts,
                const std::string& method_s, long samples, std::optional<uint64_t> seed,
                const std::string& fmt, const std::string& output) {
    Rat xi = parse_rational(xi_s);
    Method method = method_s == "mc" ? Method::mc : Method::exact;
    if (method == Method::mc && !seed)
        throw validation_error("--seed is required with --method mc");
    std::ostringstream csv;
    csv << "n,xi,t,omega,phi,method,err\n";
    json rows = json::array();
    for (const Rat& t : ts) {
        DensityPoint om = method == Method::exact
                              ? omega(n, xi, t)
                              : omega_mc(n, xi, t, samples, *seed);
        DensityPoint ph = method == Method::exact
                              ? phi(n - 1, t)
                              : phi_mc(n - 1, t, samples, *seed * 0x9E3779B97F4A7C15ull + 1);
        double err = om.err + ph.err;
        csv << n << ',' << rat_to_string(xi) << ',' << rat_to_string(t) << ','
            << format_double(om.value) << ',' << format_double(ph.value) << ','
            << method_name(method) << ',' << format_double(err) << "\n";
        rows.push_back(json{{"n", n},
                            {"xi", rat_to_string(xi)},
                            {"t", rat_to_string(t)},
                            {"omega", om.value},
                            {"phi", ph.value},
                            {"method", method_name(method)},
                            {"err", err}});
    }
    Output out;
    out.open(output);
    emit(out, fmt, csv.str(), rows_json(std::move(rows)));
    return 0;
}

// --- profile ---

int cmd_profile(int n, const std::string& xi_s, const std::vector<Rat>& grid, double k1,
                double k2, const std::string& fmt, const std::string& output) {
    Rat xi = parse_rational(xi_s);
    RegimeConstants kappa{k1, k2};
    auto rows = convergence_profile(n, xi, grid, kappa);
    std::ostringstream csv;
    csv << "n,xi,t,omega,phi,absdiff,regime,bound\n";
    json jrows = json::array();
    for (const ProfileRow& r : rows) {
        csv << n << ',' << rat_to_string(xi) << ',' << rat_to_string(r.t) << ','
            << format_double(r.omega) << ',' << format_double(r.phi) << ','
            << format_double(r.absdiff) << ',' << r.regime << ',' << format_double(r.bound)
            << "\n";
        jrows.push_back(json{{"n", n},
                             {"xi", rat_to_string(xi)},
                             {"t", rat_to_string(r.t)},
                             {"omega", r.omega},
                             {"phi", r.phi},
                             {"absdiff", r.absdiff},
                             {"regime", r.regime},
                             {"bound", r.bound}});
    }
    Output out;
    out.open(output);
    emit(out, fmt, csv.str(), rows_json(std::move(jrows)));
    return 0;
}

// --- idiff ---

int cmd_idiff(int n, const std::string& xi_s, double tol, const std::string& fmt,
              const std::string& output) {
    Rat xi = parse_rational(xi_s);
    TailedIntegral r = idiff(n, xi, tol);
    std::ostringstream csv;
    csv << "n,xi,value,err\n"
        << n << ',' << rat_to_string(xi) << ',' << format_double(r.value) << ','
        << format_double(r.err) << "\n";
    json rows = json::array(
        {json{{"n", n}, {"xi", rat_to_string(xi)}, {"value", r.value}, {"err", r.err}}});
    Output out;
    out.open(output);
    emit(out, fmt, csv.str(), rows_json(std::move(rows)));
    return 0;
}

// --- thresholds ---

int cmd_thresholds(int n, const std::string& xi_s, const std::string& fmt,
                   const std::string& output) {
    double xi = to_double(parse_rational(xi_s));
    ThresholdSet th = thresholds(n, xi);
    const char* kind = th.kind == ThresholdKind::quadratic ? "quadratic" : "general";
    std::vector<std::pair<std::string, double>> vals = {{"t1", th.t1}, {"t2", th.t2},
                                                        {"t3", th.t3}};
    if (th.kind == ThresholdKind::quadratic) {
        vals.emplace_back("t4", th.t4);
        vals.emplace_back("t5", th.t5);
    }
    std::ostringstream csv;
    csv << "n,xi,kind,name,value\n";
    json rows = json::array();
    for (const auto& [name, value] : vals) {
        csv << n << ',' << xi_s << ',' << kind << ',' << name << ',' << format_double(value)
            << "\n";
        rows.push_back(
            json{{"n", n}, {"xi", xi_s}, {"kind", kind}, {"name", name}, {"value", value}});
    }
    Output out;
    out.open(output);
    emit(out, fmt, csv.str(), rows_json(std::move(rows)));
    return 0;
}

// --- gaps ---

int cmd_gaps(int n, long long Q, const std::vector<std::string>& x0_s, long long budget,
             int jobs, const std::string& fmt, const std::string& output) {
    std::vector<Rat> x0s;
    for (const std::string& s : x0_s) x0s.push_back(parse_rational(s));
    std::vector<Rat> dist = nearest_to_rationals(n, Q, x0s, budget, jobs);
    std::ostringstream csv;
    csv << "n,Q,x0,distance,approx\n";
    json rows = json::array();
    for (size_t i = 0; i < x0s.size(); ++i) {
        csv << n << ',' << Q << ',' << rat_to_string(x0s[i]) << ',' << rat_to_string(dist[i])
            << ',' << format_double(to_double(dist[i])) << "\n";
        rows.push_back(json{{"n", n},
                            {"Q", Q},
                            {"x0", rat_to_string(x0s[i])},
                            {"distance", rat_to_string(dist[i])},
                            {"approx", to_double(dist[i])}});
    }
    Output out;
    out.open(output);
    emit(out, fmt, csv.str(), rows_json(std::move(rows)));
    return 0;
}

// --- reducible ---

int cmd_reducible(int n, long long Q, long long budget, int jobs, const std::string& fmt,
                  const std::string& output) {
    Int count = count_reducible(n, Q, budget, jobs);
    Int total = int_pow(Int(2 * Q + 1), static_cast<unsigned>(n));
    double lnq = Q >= 2 ? std::log(static_cast<double>(Q)) : 1.0;
    double normalizer =
        n == 2 ? 2.0 * static_cast<double>(Q) * lnq : std::pow(static_cast<double>(Q), n - 1);
    double ratio = count.convert_to<double>() / normalizer;
    std::ostringstream csv;
    csv << "n,Q,reducible_count,total_count,normalizer,ratio\n"
        << n << ',' << Q << ',' << count.str() << ',' << total.str() << ','
        << format_double(normalizer) << ',' << format_double(ratio) << "\n";
    json rows = json::array({json{{"n", n},
                                  {"Q", Q},
                                  {"reducible_count", count.convert_to<long long>()},
                                  {"total_count", total.convert_to<long long>()},
                                  {"normalizer", normalizer},
                                  {"ratio", ratio}}});
    Output out;
    out.open(output);
    emit(out, fmt, csv.str(), rows_json(std::move(rows)));
    return 0;
}

// --- verify ---

struct VerifyRow {
    std::string check, params;
    double measured, reference;
    bool pass;
};

void verify_jacobian(uint64_t seed, std::vector<VerifyRow>& rows) {
    polytope_detail::SplitMix64 rng(seed);
    auto unit = [&rng] { return (rng.next() >> 11) * 0x1.0p-53; };
    int done = 0;
    while (done < 100) {
        int n = 2 + static_cast<int>(rng.next() % 3);
        FactorizationPoint fp;
        fp.n = n;
        fp.xi = 0.2 + unit();
        for (int i = 0; i < n - 2; ++i) fp.b.push_back(2 * unit() - 1);
        fp.alpha = 2 * unit() - 1;
        fp.beta = 2 * unit() - 1;
        JacobianReport r = jacobian_check(fp);
        if (r.singular || std::abs(r.formula) < 1e-2) continue;
        ++done;
        rows.push_back({"jacobian",
                        "n=" + std::to_string(n) + ";case=" + std::to_string(done),
                        r.rel_error, 1e-5, r.rel_error <= 1e-5});
    }
}

void verify_difflemma(uint64_t seed, std::vector<VerifyRow>& rows) {
    polytope_detail::SplitMix64 rng(seed);
    for (int trial = 0; trial < 100; ++trial) {
        int d = 1 + static_cast<int>(rng.next() % 3);
        RatVec v(static_cast<size_t>(d));
        bool nonzero = false;
        for (int i = 0; i < d; ++i) {
            v[static_cast<size_t>(i)] = Rat(static_cast<long long>(rng.next() % 17) - 8, 4);
            if (v[static_cast<size_t>(i)] != 0) nonzero = true;
        }
        if (!nonzero) v[0] = 1;
        Rat eps(1 + static_cast<long long>(rng.next() % 24), 4);
        Rat lambda(1 + static_cast<long long>(rng.next() % 7), 8);
        DiffLemmaReport r = diff_lemma_check(d, v, eps, lambda);
        bool pass = r.lower_ok && r.upper_ok && r.equality_ok;
        rows.push_back({"difflemma",
                        "d=" + std::to_string(d) + ";case=" + std::to_string(trial),
                        to_double(r.integral_shifted - r.integral_plain), to_double(r.upper),
                        pass});
    }
}

void verify_section(std::vector<VerifyRow>& rows) {
    struct Cfg {
        std::vector<double> a, b;
        double H1, H2;
        const char* name;
    };
    std::vector<Cfg> cfgs = {{{1, 0}, {0, 1}, 1, 1, "unit-square"},
                             {{1, 0, 0}, {0, 2, 0}, 1, 1, "strips-3d"},
                             {{1, 1}, {1, -1}, 1, 1, "rotated-square"},
                             {{2, 1}, {-1, 3}, 0.5, 2, "skew"},
                             {{1, 2, 2}, {3, 0, -1}, 1.5, 0.75, "skew-3d"}};
    for (const Cfg& c : cfgs) {
        SectionReport r = section_check(c.a, c.b, c.H1, c.H2);
        rows.push_back({"section", std::string("cfg=") + c.name, r.area_measured,
                        r.area_formula, r.area_ok && r.adjusted_bounds_bracket});
    }
}

void verify_tworoot(uint64_t seed, long samples, int jobs, std::vector<VerifyRow>& rows) {
    int idx = 0;
    for (long long center : {0, 1, 5}) {
        for (long long den : {20, 10, 5}) {
            for (const char* xi_s : {"1", "1/2", "1/10"}) {
                TwoRootQuery q{3, parse_rational(xi_s),
                               RationalInterval(Rat(center), Rat(center) + Rat(1, den)),
                               samples, seed + static_cast<uint64_t>(idx)};
                TwoRootEstimate e = two_root_measure(q, jobs);
                rows.push_back({"tworoot",
                                "center=" + std::to_string(center) + ";len=1/" +
                                    std::to_string(den) + ";xi=" + xi_s,
                                e.ratio, 1.0, e.ratio <= 1.0});
                ++idx;
            }
        }
    }
}

int cmd_verify(const std::string& check, uint64_t seed, long samples, int jobs,
               const std::string& fmt, const std::string& output) {
    std::vector<VerifyRow> rows;
    if (check == "all" || check == "jacobian") verify_jacobian(seed, rows);
    if (check == "all" || check == "difflemma") verify_difflemma(seed + 1, rows);
    if (check == "all" || check == "section") verify_section(rows);
    if (check == "all" || check == "tworoot") verify_tworoot(seed + 2, samples, jobs, rows);
    if (rows.empty()) throw validation_error("unknown check: " + check);
    std::ostringstream csv;
    csv << "check,params,measured,reference,pass\n";
    json jrows = json::array();
    bool all_pass = true;
    for (const VerifyRow& r : rows) {
        csv << r.check << ',' << r.params << ',' << format_double(r.measured) << ','
            << format_double(r.reference) << ',' << (r.pass ? "true" : "false") << "\n";
        jrows.push_back(json{{"check", r.check},
                             {"params", r.params},
                             {"measured", r.measured},
                             {"reference", r.reference},
                             {"pass", r.pass}});
        all_pass = all_pass && r.pass;
    }
    Output out;
    out.open(output);
    emit(out, fmt, csv.str(), rows_json(std::move(jrows)));
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distribution of real algebraic integers at desk scale"};
    app.require_subcommand(1);

    std::string fmt = "csv", output, bins_spec = "width:1/2", residuals_output;
    std::string xi_s, method_s = "exact", t_s, grid_s, check = "all";
    std::vector<std::string> x0_s;
    int n = 2, jobs = 0;
    long long Q = 1, budget = census_detail::kDefaultBudget;
    long samples = 1000000;
    double tol = 1e-6, k1 = 0, k2 = 0;
    std::optional<uint64_t> seed;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", fmt)->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--output", output);
        cmd->add_option("--jobs", jobs);
    };

    CLI::App* census_cmd = app.add_subcommand("census", "exact per-bin root counts");
    census_cmd->add_option("--degree", n)->required();
    census_cmd->add_option("--qmax", Q)->required();
    census_cmd->add_option("--bins", bins_spec);
    census_cmd->add_option("--budget", budget);
    census_cmd->add_option("--residuals-output", residuals_output);
    census_cmd->add_option("--tol", tol);
    add_common(census_cmd);

    CLI::App* density_cmd = app.add_subcommand("density", "omega/phi point or grid");
    density_cmd->add_option("--degree", n)->required();
    density_cmd->add_option("--xi", xi_s)->required();
    density_cmd->add_option("--t", t_s);
    density_cmd->add_option("--t-grid", grid_s);
    density_cmd->add_option("--method", method_s)->check(CLI::IsMember({"exact", "mc"}));
    density_cmd->add_option("--samples", samples);
    density_cmd->add_option("--seed", seed);
    add_common(density_cmd);

    CLI::App* profile_cmd = app.add_subcommand("profile", "omega vs phi convergence profile");
    profile_cmd->add_option("--degree", n)->required();
    profile_cmd->add_option("--xi", xi_s)->required();
    profile_cmd->add_option("--t-grid", grid_s)->required();
    profile_cmd->add_option("--kappa1", k1);
    profile_cmd->add_option("--kappa2", k2);
    add_common(profile_cmd);

    CLI::App* idiff_cmd = app.add_subcommand("idiff", "integral of omega - phi over R");
    idiff_cmd->add_option("--degree", n)->required();
    idiff_cmd->add_option("--xi", xi_s)->required();
    idiff_cmd->add_option("--tol", tol);
    add_common(idiff_cmd);

    CLI::App* thr_cmd = app.add_subcommand("thresholds", "density thresholds");
    thr_cmd->add_option("--degree", n)->required();
    thr_cmd->add_option("--xi", xi_s)->required();
    add_common(thr_cmd);

    CLI::App* gaps_cmd = app.add_subcommand("gaps", "nearest algebraic integer to a rational");
    gaps_cmd->add_option("--degree", n)->required();
    gaps_cmd->add_option("--qmax", Q)->required();
    gaps_cmd->add_option("--x0", x0_s)->required();
    gaps_cmd->add_option("--budget", budget);
    add_common(gaps_cmd);

    CLI::App* red_cmd = app.add_subcommand("reducible", "count reducible monic polynomials");
    red_cmd->add_option("--degree", n)->required();
    red_cmd->add_option("--qmax", Q)->required();
    red_cmd->add_option("--budget", budget);
    add_common(red_cmd);

    CLI::App* verify_cmd = app.add_subcommand("verify", "lemma property checks");
    verify_cmd->add_option("--check", check)
        ->check(CLI::IsMember({"all", "jacobian", "difflemma", "section", "tworoot"}));
    verify_cmd->add_option("--seed", seed);
    verify_cmd->add_option("--samples", samples);
    add_common(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // option/validation errors map to exit 1
    }

    try {
        if (census_cmd->parsed())
            return cmd_census(n, Q, bins_spec, budget, jobs, fmt, output, residuals_output, tol);
        if (density_cmd->parsed()) {
            std::vector<Rat> ts;
            if (!t_s.empty())
                ts.push_back(parse_rational(t_s));
            else if (!grid_s.empty())
                ts = parse_grid(grid_s);
            else
                throw validation_error("density needs --t or --t-grid");
            return cmd_density(n, xi_s, ts, method_s, samples, seed, fmt, output);
        }
        if (profile_cmd->parsed())
            return cmd_profile(n, xi_s, parse_grid(grid_s), k1, k2, fmt, output);
        if (idiff_cmd->parsed()) return cmd_idiff(n, xi_s, tol, fmt, output);
        if (thr_cmd->parsed()) return cmd_thresholds(n, xi_s, fmt, output);
        if (gaps_cmd->parsed()) return cmd_gaps(n, Q, x0_s, budget, jobs, fmt, output);
        if (red_cmd->parsed()) return cmd_reducible(n, Q, budget, jobs, fmt, output);
        if (verify_cmd->parsed())
            return cmd_verify(check, seed.value_or(20240601), samples, jobs, fmt, output);
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tolerance_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
