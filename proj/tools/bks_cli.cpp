#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bks/experiment.hpp"

namespace {

void add_common_options(CLI::App* sub, bks::ExperimentConfig& cfg, std::string& formats) {
    sub->add_option("--n-list", cfg.n_list, "series parameters n")->delimiter(',');
    sub->add_option("--a", cfg.a_list, "Baskakov parameters a")->delimiter(',');
    sub->add_option("--alpha", cfg.alpha_list, "Stancu shifts alpha")->delimiter(',');
    sub->add_option("--beta", cfg.beta_list, "Stancu shifts beta")->delimiter(',');
    sub->add_option("--x-start", cfg.x_start, "x grid start");
    sub->add_option("--x-stop", cfg.x_stop, "x grid stop");
    sub->add_option("--x-step", cfg.x_step, "x grid step");
    sub->add_option("--function", cfg.function, "catalog function name");
    sub->add_option("--tail-eps", cfg.tail_eps, "series tail mass tolerance");
    sub->add_option("--k-max", cfg.k_max, "hard cap on the summation index");
    sub->add_option("--out-dir", cfg.out_dir, "output directory");
    sub->add_option("--format", formats, "comma list of csv,svg,report");
    sub->set_config("--config", "", "key=value config file (flags win)");
}

void apply_formats(const std::string& formats, bks::ExperimentConfig& cfg) {
    if (formats.empty()) return;
    cfg.fmt_csv = formats.find("csv") != std::string::npos;
    cfg.fmt_svg = formats.find("svg") != std::string::npos;
    cfg.fmt_report = formats.find("report") != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Baskakov-Kantorovich-Stancu operator toolbox"};
    app.require_subcommand(1);

    bks::ExperimentConfig cfg;
    std::string formats;

    auto* ev = app.add_subcommand("eval", "evaluate an operator on a grid");
    add_common_options(ev, cfg, formats);
    ev->add_option("--operator", cfg.op,
                   "T | bernstein | kantorovich | stancu | kantorovich_stancu | "
                   "baskakov_kantorovich");

    auto* vm = app.add_subcommand("verify-moments",
                                  "closed-form moments vs brute-force oracle");
    add_common_options(vm, cfg, formats);

    auto* cb = app.add_subcommand("check-bounds", "empirical error vs theorem bounds");
    add_common_options(cb, cfg, formats);
    cb->add_option("--theorem", cfg.theorem, "3.1 | 3.2 | 4.3");

    auto* cv = app.add_subcommand("converge", "weighted-Korovkin decay rates");
    add_common_options(cv, cfg, formats);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (ev->parsed()) cfg.command = "eval";
    if (vm->parsed()) cfg.command = "verify-moments";
    if (cb->parsed()) cfg.command = "check-bounds";
    if (cv->parsed()) cfg.command = "converge";
    apply_formats(formats, cfg);

    std::string msg;
    int rc = bks::run_experiment(cfg, msg);
    if (rc == 0)
        std::cout << msg << "\n";
    else
        std::cerr << msg << "\n";
    return rc;
}
