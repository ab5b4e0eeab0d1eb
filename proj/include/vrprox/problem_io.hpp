#pragma once

#include <filesystem>

#include "vrprox/problem.hpp"

#include "json.hpp"

namespace vrprox {

// Problem directory layout: design.csv (n x d), labels.csv (n x 1), both
// comma-separated with 17-significant-digit C-locale numbers, plus meta.json
// holding loss_kind, n, d and any generator parameters passed through.
void save_problem(const FiniteSumProblem& problem,
                  const std::filesystem::path& dir,
                  const nlohmann::json& generator_meta = {});

struct LoadedProblem {
  FiniteSumProblem problem;
  nlohmann::json meta;
};

LoadedProblem load_problem(const std::filesystem::path& dir);

}  // namespace vrprox
