#include "vrprox/problem_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vrprox/csv.hpp"

namespace vrprox {

namespace {

std::string loss_name(LossKind kind) {
  return kind == LossKind::SquaredResidual ? "squared_residual" : "logistic";
}

LossKind loss_from_name(const std::string& name) {
  if (name == "squared_residual") return LossKind::SquaredResidual;
  if (name == "logistic") return LossKind::Logistic;
  throw std::invalid_argument("load_problem: unknown loss_kind '" + name + "'");
}

}  // namespace

void save_problem(const FiniteSumProblem& problem,
                  const std::filesystem::path& dir,
                  const nlohmann::json& generator_meta) {
  std::filesystem::create_directories(dir);

  std::ofstream design(dir / "design.csv");
  if (!design) throw std::runtime_error("save_problem: cannot write design.csv");
  for (Index i = 0; i < problem.num_components(); ++i) {
    for (Index j = 0; j < problem.dimension(); ++j) {
      if (j > 0) design << ',';
      design << format_double(problem.design()(i, j));
    }
    design << '\n';
  }

  std::ofstream labels(dir / "labels.csv");
  if (!labels) throw std::runtime_error("save_problem: cannot write labels.csv");
  for (Index i = 0; i < problem.num_components(); ++i)
    labels << format_double(problem.labels()[i]) << '\n';

  nlohmann::json meta;
  meta["loss_kind"] = loss_name(problem.loss());
  meta["n"] = problem.num_components();
  meta["d"] = problem.dimension();
  if (!generator_meta.is_null() && !generator_meta.empty())
    meta["generator"] = generator_meta;
  std::ofstream meta_out(dir / "meta.json");
  if (!meta_out) throw std::runtime_error("save_problem: cannot write meta.json");
  meta_out << meta.dump(2) << '\n';
}

LoadedProblem load_problem(const std::filesystem::path& dir) {
  std::ifstream meta_in(dir / "meta.json");
  if (!meta_in) throw std::runtime_error("load_problem: missing meta.json");
  nlohmann::json meta = nlohmann::json::parse(meta_in);
  const Index n = meta.at("n").get<Index>();
  const Index d = meta.at("d").get<Index>();
  const LossKind loss = loss_from_name(meta.at("loss_kind").get<std::string>());

  RowMatrix design(n, d);
  std::ifstream design_in(dir / "design.csv");
  if (!design_in) throw std::runtime_error("load_problem: missing design.csv");
  std::string line;
  for (Index i = 0; i < n; ++i) {
    if (!std::getline(design_in, line))
      throw std::runtime_error("load_problem: design.csv truncated");
    std::stringstream row(line);
    std::string cell;
    for (Index j = 0; j < d; ++j) {
      if (!std::getline(row, cell, ','))
        throw std::runtime_error("load_problem: design.csv row too short");
      design(i, j) = parse_double(cell);
    }
  }

  Vector labels(n);
  std::ifstream labels_in(dir / "labels.csv");
  if (!labels_in) throw std::runtime_error("load_problem: missing labels.csv");
  for (Index i = 0; i < n; ++i) {
    if (!std::getline(labels_in, line))
      throw std::runtime_error("load_problem: labels.csv truncated");
    labels[i] = parse_double(line);
  }

  return {FiniteSumProblem(std::move(design), std::move(labels), loss),
          std::move(meta)};
}

}  // namespace vrprox
