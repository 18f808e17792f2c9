// Slide dimension of a few point processes: 1/rho_1, the order-2 estimate
// and the tangibility verdict from the mean slide numbers.

#include <cstdio>
#include <string>
#include <vector>

#include "slide/slide.hpp"

int main() {
  const std::vector<std::string> processes = {"uniform_cube:m=1", "uniform_cube:m=2", "uniform_cube:m=3",
                                              "cantor", "sierpinski", "normal"};
  std::printf("%-18s %10s %10s %10s %10s  %s\n", "process", "rho_1", "rho_2", "d(1)", "d(2)", "verdict");
  for (const auto& text : processes) {
    slide::ExperimentConfig config;
    config.process = slide::parse_process(text);
    config.sample_size = 10000;
    config.replicates = 20;
    config.master_seed = 7;
    config.workers = 4;
    config.statistics = {{slide::StatisticKind::slide, {1, 2}}};
    const auto report = slide::run_experiment(config);
    const auto& est = report.dimension_estimates;
    std::printf("%-18s %10.4f %10.4f %10.4f %10.4f  %s\n", text.c_str(),
                report.mean(slide::StatisticKind::slide, 1), report.mean(slide::StatisticKind::slide, 2),
                est.contains(1) ? est.at(1) : 0.0, est.contains(2) ? est.at(2) : 0.0,
                report.tangibility && report.tangibility->tangible ? "tangible" : "intangible");
  }
}
