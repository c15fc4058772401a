#include <CLI11.hpp>

#include <iostream>

#include "infeq/cli.hpp"
#include "infeq/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Certified computations with infinite systems of equations"};
  app.require_subcommand(1);

  infeq::cli::RunConfig config;
  double M = 0.0;
  std::size_t r_max = 0;
  std::size_t N = 0;
  int iterations = 0;

  std::vector<CLI::App*> subs;
  for (const char* name : {"solve", "trace", "certify", "helly", "dirichlet", "eval-poly", "riesz"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--input", config.input, "input JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--output", config.output, "output path")->required();
    sub->add_option("--tol", config.tol, "certified tolerance")->capture_default_str();
    sub->add_option("--M", M, "norm bound to certify against")->check(CLI::PositiveNumber);
    sub->add_option("--r-max", r_max, "number of prefixes")->check(CLI::PositiveNumber);
    sub->add_option("--N", N, "truncation length for q != 2")->check(CLI::PositiveNumber);
    sub->add_option("--iterations", iterations, "ratio evaluations for the sup search")->check(CLI::PositiveNumber);
    sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : infeq::cli::kInvalidInput;
  }

  for (auto* sub : subs) {
    if (!sub->parsed()) continue;
    config.command = infeq::cli::parse_command(sub->get_name());
    if (sub->count("--M")) config.M = M;
    if (sub->count("--r-max")) config.r_max = r_max;
    if (sub->count("--N")) config.N = N;
    if (sub->count("--iterations")) config.iterations = iterations;
  }
  return infeq::cli::run(config, std::cout, std::cerr);
}
