#pragma once

#include <string>
#include <vector>

#include "bks/params.hpp"

namespace bks {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// One CLI invocation: command plus grids, function, policy overrides
/// and output selection.
struct ExperimentConfig {
    std::string command;  // eval | verify-moments | check-bounds | converge

    std::vector<int> n_list{10};
    std::vector<double> a_list{0.0};
    std::vector<double> alpha_list{0.0};
    std::vector<double> beta_list{0.0};

    double x_start = 0.0;
    double x_stop = 10.0;
    double x_step = 0.1;

    std::string function = "one";
    std::string op = "T";       // eval: T or a baseline name
    std::string theorem;        // check-bounds: 3.1 | 3.2 | 4.3

    double tail_eps = 1e-12;
    int k_max = 20000;

    std::string out_dir = "out";
    bool fmt_csv = true;
    bool fmt_svg = false;
    bool fmt_report = false;

    void validate() const;
    std::vector<double> x_grid() const;
    SeriesPolicy policy() const { return SeriesPolicy(tail_eps, k_max); }
};

/// Exit codes shared by the runners: 0 ok, 2 config error, 3 numerical
/// failure (tail not absorbed / quadrature), 1 reconstructed-form or
/// bound failure. Messages go to the given streams.
int run_experiment(const ExperimentConfig& cfg, std::string& out_message);

int run_eval(const ExperimentConfig& cfg, std::string& out_message);
int run_verify_moments(const ExperimentConfig& cfg, std::string& out_message);
int run_check_bounds(const ExperimentConfig& cfg, std::string& out_message);
int run_converge(const ExperimentConfig& cfg, std::string& out_message);

}  // namespace bks
