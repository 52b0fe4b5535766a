#include "bks/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "bks/csv.hpp"
#include "bks/functions.hpp"
#include "bks/moments.hpp"
#include "bks/operators.hpp"
#include "bks/smoothness.hpp"
#include "bks/svg.hpp"

namespace bks {

namespace fs = std::filesystem;

void ExperimentConfig::validate() const {
    if (command != "eval" && command != "verify-moments" && command != "check-bounds" &&
        command != "converge")
        throw ConfigError("unknown command: " + command);
    if (n_list.empty() || a_list.empty() || alpha_list.empty() || beta_list.empty())
        throw ConfigError("parameter grids must be non-empty");
    for (int n : n_list)
        if (n < 1) throw ConfigError("n must be >= 1");
    for (double v : a_list)
        if (v < 0) throw ConfigError("a must be >= 0");
    for (double v : alpha_list)
        if (v < 0) throw ConfigError("alpha must be >= 0");
    for (double v : beta_list)
        if (v < 0) throw ConfigError("beta must be >= 0");
    if (x_step <= 0.0 || x_stop < x_start) throw ConfigError("bad x grid");
    if (!(tail_eps > 0.0 && tail_eps < 1.0)) throw ConfigError("tail-eps must be in (0,1)");
    if (k_max < 1) throw ConfigError("k-max must be >= 1");
    if (command == "check-bounds" && theorem != "3.1" && theorem != "3.2" && theorem != "4.3")
        throw ConfigError("check-bounds needs --theorem 3.1|3.2|4.3");
    try {
        find_function(function);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (command == "eval" && op != "T") baseline_from_name(op);  // throws on bad name
    if (x_grid().empty()) throw ConfigError("empty x grid");
}

std::vector<double> ExperimentConfig::x_grid() const {
    std::vector<double> xs;
    long count = std::lround(std::floor((x_stop - x_start) / x_step + 1e-9));
    for (long i = 0; i <= count; ++i) xs.push_back(x_start + static_cast<double>(i) * x_step);
    return xs;
}

namespace {

struct ParamCombo {
    OperatorParams p;
};

std::vector<OperatorParams> param_grid(const ExperimentConfig& cfg) {
    std::vector<OperatorParams> out;
    for (int n : cfg.n_list)
        for (double a : cfg.a_list)
            for (double al : cfg.alpha_list)
                for (double be : cfg.beta_list) out.emplace_back(n, a, al, be, true);
    return out;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& file) {
    return (fs::path(cfg.out_dir) / file).string();
}

}  // namespace

int run_eval(const ExperimentConfig& cfg, std::string& msg) {
    const TestFunction& f = find_function(cfg.function);
    SeriesPolicy policy = cfg.policy();
    std::vector<std::string> rows;
    for (const auto& p : param_grid(cfg)) {
        for (double x : cfg.x_grid()) {
            double v;
            try {
                if (cfg.op == "T")
                    v = eval_T(p, f, x, policy, auto_quadrature(f, policy.tail_epsilon));
                else
                    v = eval_baseline(baseline_from_name(cfg.op), p, f, x, policy,
                                      auto_quadrature(f, policy.tail_epsilon));
            } catch (const TailNotAbsorbed& e) {
                msg = std::string("numerical failure: ") + e.what();
                return 3;
            } catch (const QuadratureFailure& e) {
                msg = "numerical failure at " + p.label() + " x=" + fmt_g17(x) + ": " + e.what();
                return 3;
            }
            rows.push_back(fmt_g17(x) + "," + std::to_string(p.n) + "," + fmt_g17(p.a) + "," +
                           fmt_g17(p.alpha) + "," + fmt_g17(p.beta) + "," + fmt_g17(v));
        }
    }
    if (cfg.fmt_csv) write_csv(out_path(cfg, "eval.csv"), "x,n,a,alpha,beta,value", rows);
    msg = "eval: " + std::to_string(rows.size()) + " cells";
    return 0;
}

int run_verify_moments(const ExperimentConfig& cfg, std::string& msg) {
    std::vector<std::string> rows;
    long lit_match = 0, lit_mismatch = 0, rec_match = 0, rec_mismatch = 0;
    // quantify the order-2 raw_T constant-term question on alpha > 0 cells
    double const_term_ratio_sum = 0.0;
    long const_term_cells = 0;
    std::vector<MomentReport> all;
    for (const auto& p : param_grid(cfg)) {
        auto reports = verify_moments(p, cfg.x_grid());
        for (const auto& r : reports) {
            rows.push_back(moment_report_csv_row(r));
            if (r.form == FormKind::Literal)
                (r.match ? lit_match : lit_mismatch)++;
            else
                (r.match ? rec_match : rec_mismatch)++;
            if (r.form == FormKind::Literal && r.kind == MomentKind::RawT && r.order == 2 &&
                p.alpha > 0.0) {
                const_term_ratio_sum += (r.oracle - r.closed_form) * p.q() * p.q() / p.alpha;
                const_term_cells++;
            }
        }
        all.insert(all.end(), reports.begin(), reports.end());
    }
    if (cfg.fmt_csv) write_csv(out_path(cfg, "moments.csv"), moment_report_csv_header(), rows);

    std::ostringstream rep;
    rep << "moment verification summary\n";
    rep << "  literal:       " << lit_match << " match, " << lit_mismatch << " mismatch\n";
    rep << "  reconstructed: " << rec_match << " match, " << rec_mismatch << " mismatch\n";
    rep << "\nfindings (literal printed forms vs brute-force oracle)\n";
    std::map<std::string, std::pair<long, double>> grouped;  // label -> {count, max rel}
    for (const auto& r : all) {
        if (r.form != FormKind::Literal || r.match) continue;
        std::string label = to_string(r.kind) + " order " + std::to_string(r.order);
        auto& g = grouped[label];
        g.first++;
        g.second = std::max(g.second, r.rel_diff);
    }
    if (grouped.empty()) rep << "  none: every literal expression matches the oracle\n";
    for (const auto& [label, g] : grouped)
        rep << "  " << label << ": " << g.first << " mismatching cells, max rel diff "
            << fmt_g17(g.second) << "\n";
    if (const_term_cells > 0) {
        double ratio = const_term_ratio_sum / static_cast<double>(const_term_cells);
        rep << "\nLemma-2.2(iii) constant-term question resolved by oracle:\n";
        rep << "  printed constant (3*alpha^2+1)/(3*(n+beta)^2) is low by alpha/(n+beta)^2;\n";
        rep << "  exact integration gives (3*alpha^2+3*alpha+1)/(3*(n+beta)^2), which the\n";
        rep << "  oracle confirms: measured (oracle - literal)*(n+beta)^2/alpha = "
            << fmt_g17(ratio) << " (predicted 1).\n";
    }
    rep << "\nnormalizations applied to the literal transcriptions\n";
    for (const auto& s : literal_normalizations()) rep << "  " << s << "\n";
    rep << "\nbaseline-operator note\n";
    rep << "  The Stancu and Kantorovich-Stancu baselines are implemented in their\n";
    rep << "  standard forms, with binomial coefficients C(n,k) and nodes/intervals at\n";
    rep << "  (k+alpha)/(n+beta); the printed displays lack the binomial coefficient and\n";
    rep << "  carry a stray (n+beta+1) prefactor on the point-evaluation form. The\n";
    rep << "  alpha=beta=0 reduction to the Bernstein/Kantorovich operators is the\n";
    rep << "  acceptance test of this substitution.\n";
    if (cfg.fmt_report) write_text(out_path(cfg, "moments_report.txt"), rep.str());
    msg = rep.str();
    return rec_mismatch == 0 ? 0 : 1;
}

int run_check_bounds(const ExperimentConfig& cfg, std::string& msg) {
    const TestFunction& f = find_function(cfg.function);
    std::vector<std::string> rows;
    std::ostringstream rep;
    bool all_hold = true;
    std::vector<SvgSeries> err_series, bound_series;
    try {
        for (double a : cfg.a_list)
            for (double al : cfg.alpha_list)
                for (double be : cfg.beta_list) {
                    OperatorParams base(cfg.n_list.front(), a, al, be, true);
                    std::vector<BoundCheckRecord> recs;
                    std::map<int, double> per_n;
                    bool stable = false;
                    if (cfg.theorem == "3.1") {
                        auto r = check_theorem_3_1(base, cfg.n_list, f, cfg.x_grid());
                        recs = r.records;
                        per_n = r.fitted_K_per_n;
                        stable = r.n_stable;
                        all_hold = all_hold && r.all_hold;
                        rep << "T3.1 " << base.label() << ": fitted K = " << fmt_g17(r.fitted_K)
                            << ", n-stable = " << (stable ? "yes" : "no") << "\n";
                        rep << "  omega-argument variants at n_max: statement form bound = "
                            << fmt_g17(r.variant_A_bound_at_nmax)
                            << ", proof-display form bound = "
                            << fmt_g17(r.variant_B_bound_at_nmax)
                            << (r.variant_A_bound_at_nmax <= r.variant_B_bound_at_nmax
                                    ? " (sweep supports the statement form)\n"
                                    : " (sweep supports the proof-display form)\n");
                    } else if (cfg.theorem == "3.2") {
                        auto r = check_theorem_3_2(base, cfg.n_list, f, cfg.x_grid());
                        recs = r.records;
                        all_hold = all_hold && r.all_hold;
                        rep << "T3.2 " << base.label() << ": certificate M = "
                            << fmt_g17(f.lip_star ? f.lip_star->M : 0.0) << ", all hold = "
                            << (r.all_hold ? "yes" : "no") << "\n";
                    } else {
                        auto r = check_theorem_4_3(base, cfg.n_list, f, cfg.x_grid());
                        recs = r.records;
                        per_n = r.fitted_M_per_n;
                        stable = r.n_stable;
                        all_hold = all_hold && r.all_hold;
                        rep << "T4.3 " << base.label() << ": fitted M = " << fmt_g17(r.fitted_M)
                            << ", n-stable = " << (stable ? "yes" : "no") << "\n";
                    }
                    for (const auto& rc : recs) rows.push_back(bound_check_csv_row(rc));
                    for (const auto& [n, v] : per_n)
                        rep << "    n=" << n << " fitted constant " << fmt_g17(v) << "\n";
                    // per-n maxima for the overlay plot
                    std::map<int, double> emax, bmax;
                    for (const auto& rc : recs) {
                        emax[rc.params.n] = std::max(emax[rc.params.n], rc.empirical_error);
                        bmax[rc.params.n] = std::max(bmax[rc.params.n], rc.theoretical_bound);
                    }
                    SvgSeries es{"error " + base.label(), {}}, bs{"bound " + base.label(), {}};
                    for (const auto& [n, v] : emax) es.points.push_back({double(n), v});
                    for (const auto& [n, v] : bmax) bs.points.push_back({double(n), v});
                    err_series.push_back(es);
                    bound_series.push_back(bs);
                }
    } catch (const std::invalid_argument& e) {
        msg = std::string("config error: ") + e.what();
        return 2;
    } catch (const CertificateViolation& e) {
        msg = std::string("config error: ") + e.what();
        return 2;
    } catch (const TailNotAbsorbed& e) {
        msg = std::string("numerical failure: ") + e.what();
        return 3;
    }
    if (cfg.fmt_csv) write_csv(out_path(cfg, "bounds.csv"), bound_check_csv_header(), rows);
    if (cfg.fmt_svg) {
        std::vector<SvgSeries> series = err_series;
        series.insert(series.end(), bound_series.begin(), bound_series.end());
        write_loglog_svg(out_path(cfg, "bounds.svg"),
                         "theorem " + cfg.theorem + " bound vs error (" + cfg.function + ")", "n",
                         "max over x", series);
    }
    if (cfg.fmt_report) write_text(out_path(cfg, "bounds_report.txt"), rep.str());
    msg = rep.str();
    return all_hold ? 0 : 1;
}

int run_converge(const ExperimentConfig& cfg, std::string& msg) {
    std::vector<std::string> rows;
    std::ostringstream rep;
    std::vector<SvgSeries> series;
    for (double a : cfg.a_list)
        for (double al : cfg.alpha_list)
            for (double be : cfg.beta_list) {
                OperatorParams base(cfg.n_list.front(), a, al, be, true);
                auto r = check_theorem_4_1(base, cfg.n_list);
                for (int i = 0; i <= 2; ++i) {
                    SvgSeries s{"i=" + std::to_string(i) + " " + base.label(), {}};
                    for (std::size_t j = 0; j < r.ns.size(); ++j) {
                        rows.push_back(std::to_string(i) + "," + std::to_string(r.ns[j]) + "," +
                                       fmt_g17(a) + "," + fmt_g17(al) + "," + fmt_g17(be) + "," +
                                       fmt_g17(r.norms[static_cast<std::size_t>(i)][j]));
                        s.points.push_back({double(r.ns[j]),
                                            r.norms[static_cast<std::size_t>(i)][j]});
                    }
                    double slope = loglog_slope(r.ns, r.norms[static_cast<std::size_t>(i)]);
                    if (i == 0 || std::isnan(slope))
                        rep << "i=" << i << " " << base.label() << ": norm identically 0 "
                            << "(slope: exact-zero)\n";
                    else
                        rep << "i=" << i << " " << base.label() << ": slope " << fmt_g17(slope)
                            << "\n";
                    series.push_back(s);
                }
            }
    if (cfg.fmt_csv) write_csv(out_path(cfg, "converge.csv"), "i,n,a,alpha,beta,norm", rows);
    if (cfg.fmt_svg)
        write_loglog_svg(out_path(cfg, "converge.svg"), "weighted-norm decay of T(t^i)-x^i", "n",
                         "||T(t^i)-x^i||_rho", series);
    if (cfg.fmt_report) write_text(out_path(cfg, "converge_report.txt"), rep.str());
    msg = rep.str();
    return 0;
}

int run_experiment(const ExperimentConfig& cfg, std::string& msg) {
    try {
        cfg.validate();
        if (cfg.command == "eval") return run_eval(cfg, msg);
        if (cfg.command == "verify-moments") return run_verify_moments(cfg, msg);
        if (cfg.command == "check-bounds") return run_check_bounds(cfg, msg);
        return run_converge(cfg, msg);
    } catch (const ConfigError& e) {
        msg = std::string("config error: ") + e.what();
        return 2;
    } catch (const std::invalid_argument& e) {
        msg = std::string("config error: ") + e.what();
        return 2;
    } catch (const TailNotAbsorbed& e) {
        msg = std::string("numerical failure: ") + e.what();
        return 3;
    }
}

}  // namespace bks
