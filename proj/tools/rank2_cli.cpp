#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rank2/generators.hpp"
#include "rank2/optimize.hpp"
#include "rank2/sampling.hpp"
#include "rank2/serialize.hpp"

namespace {

using namespace rank2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RANK2_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

ChartId parse_chart(const std::string& spec) {
  int j1 = 0, j2 = 0;
  char comma = 0;
  std::istringstream ss(spec);
  if (!(ss >> j1 >> comma >> j2) || comma != ',' || j1 < 1 || j1 >= j2)
    throw Error(errc::ParseError, "--chart expects j1,j2 with j1 < j2");
  return ChartId{j1, j2};
}

// --point and --rep accept a file path or an inline JSON literal.
std::string read_json_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  std::ifstream in(arg);
  if (!in) throw Error(errc::ParseError, "cannot open file: " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_check(int cases, std::uint64_t seed) {
  rng::SplitMix gen(seed);
  int failures = 0;
  const auto report = [&](const std::string& name, int failed, int total) {
    std::cout << (failed ? "FAIL " : "PASS ") << name << " (" << total - failed
              << "/" << total << " cases)\n";
    failures += failed;
  };

  const Shape shapes[] = {{2, 2}, {2, 3}, {3, 3}, {3, 5}, {4, 4}};

  {  // validate_probability invariants on random grids
    int failed = 0;
    for (int c = 0; c < cases; ++c) {
      const Shape sh = shapes[c % 5];
      Eigen::MatrixXd raw(sh.rows, sh.cols);
      for (int i = 0; i < sh.rows; ++i)
        for (int j = 0; j < sh.cols; ++j) raw(i, j) = gen.uniform();
      raw /= raw.sum();
      const auto P = validate_probability(raw);
      if (P.entries().minCoeff() < 0.0 ||
          std::abs(P.entries().sum() - 1.0) > 1e-15)
        ++failed;
    }
    report("probability-invariants", failed, cases);
  }

  {  // chart round trip on interior points
    int failed = 0;
    for (int c = 0; c < cases; ++c) {
      const Shape sh = shapes[c % 5];
      const ChartPoint p = random_interior_point(sh, gen);
      const ChartId id{1, 2};
      try {
        const ChartPoint q = chart_inverse(id, chart_forward(id, p));
        if ((q.to_vector() - p.to_vector()).lpNorm<Eigen::Infinity>() > 1e-10)
          ++failed;
      } catch (const Error&) {
        ++failed;
      }
    }
    report("chart-round-trip", failed, cases);
  }

  {  // coverage and exact factorization of random rank-2 matrices
    int failed = 0;
    for (int c = 0; c < cases; ++c) {
      const Shape sh = shapes[c % 5];
      const auto P = mixture_to_matrix(random_mixture(sh, 2, gen));
      try {
        if (select_charts(P).empty()) ++failed;
        const auto rep = factorize_rank2(P);
        const auto Q = mixture_to_matrix(rep);
        if ((Q.entries() - P.entries()).lpNorm<Eigen::Infinity>() > 1e-10)
          ++failed;
      } catch (const Error&) {
        ++failed;
      }
    }
    report("coverage-and-factorization", failed, cases);
  }

  return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank-2 probability matrix toolkit"};
  app.require_subcommand(1);

  std::string csv_path, chart_spec, point_arg, rep_arg, model = "mixture2";
  double tol = 1e-9;
  std::int64_t n = 0;
  std::uint64_t seed = default_seed();
  int multistarts = 16, max_iters = 500, cases = 200;

  auto* cmd_rank = app.add_subcommand("rank", "numerical rank of a CSV matrix");
  cmd_rank->add_option("csv", csv_path)->required();
  cmd_rank->add_option("--tol", tol);

  auto* cmd_fact = app.add_subcommand(
      "factorize", "nonnegative rank-2 factorization of a CSV matrix");
  cmd_fact->add_option("csv", csv_path)->required();
  cmd_fact->add_option("--tol", tol);

  auto* cmd_fwd =
      app.add_subcommand("chart-forward", "evaluate a chart at a point");
  cmd_fwd->add_option("--chart", chart_spec)->required();
  cmd_fwd->add_option("--point", point_arg, "ChartPoint JSON (file or inline)")
      ->required();

  auto* cmd_inv =
      app.add_subcommand("chart-inverse", "invert a chart on a CSV matrix");
  cmd_inv->add_option("csv", csv_path)->required();
  cmd_inv->add_option("--chart", chart_spec)->required();
  cmd_inv->add_option("--tol", tol);

  auto* cmd_charts =
      app.add_subcommand("charts", "list invertible charts for a CSV matrix");
  cmd_charts->add_option("csv", csv_path)->required();
  cmd_charts->add_option("--tol", tol);

  auto* cmd_fit = app.add_subcommand("fit", "maximum likelihood fit");
  cmd_fit->add_option("csv", csv_path)->required();
  cmd_fit->add_option("--model", model)
      ->check(CLI::IsMember({"rank1", "mixture2"}));
  cmd_fit->add_option("--seed", seed);
  cmd_fit->add_option("--multistarts", multistarts);
  cmd_fit->add_option("--max-iters", max_iters);

  auto* cmd_sample =
      app.add_subcommand("sample", "sample a contingency table from a mixture");
  cmd_sample->add_option("--rep", rep_arg, "mixture JSON (file or inline)")
      ->required();
  cmd_sample->add_option("--n", n)->required();
  cmd_sample->add_option("--seed", seed);

  auto* cmd_check = app.add_subcommand("check", "run the invariant fuzz suites");
  cmd_check->add_option("--cases", cases);
  cmd_check->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_rank) {
      const auto P = validate_probability(read_csv_file(csv_path));
      std::cout << numerical_rank(P, tol) << "\n";
    } else if (*cmd_fact) {
      const auto P = validate_probability(read_csv_file(csv_path));
      std::cout << mixture_to_json(factorize_rank2(P, tol)) << "\n";
    } else if (*cmd_fwd) {
      const ChartId want = parse_chart(chart_spec);
      auto [id, point] = chart_point_from_json(read_json_arg(point_arg));
      if (!(id == want))
        throw Error(errc::DimensionMismatch,
                    "--chart disagrees with the point's chart id");
      write_csv(std::cout, chart_forward(id, point).entries());
    } else if (*cmd_inv) {
      const ChartId id = parse_chart(chart_spec);
      const auto P = validate_probability(read_csv_file(csv_path));
      std::cout << chart_point_to_json(id, chart_inverse(id, P, tol)) << "\n";
    } else if (*cmd_charts) {
      const auto P = validate_probability(read_csv_file(csv_path));
      for (const ChartId id : select_charts(P, tol))
        std::cout << id.j1 << "," << id.j2 << "\n";
    } else if (*cmd_fit) {
      const auto table = table_from_reals(read_csv_file(csv_path));
      if (model == "rank1") {
        FitResult r{mle_rank1(table), 0.0, FitSource{FitSource::Kind::Rank1, {}},
                    std::nullopt, ClassifyFlags{}, 0};
        r.value = loglikelihood(table, r.matrix);
        r.flags.rank_one = true;
        std::cout << fit_result_to_json(r) << "\n";
      } else {
        OptimizerSettings settings;
        settings.seed = seed;
        settings.multistarts = multistarts;
        settings.max_iters = max_iters;
        std::cout << fit_result_to_json(maximize_over_model(table, settings))
                  << "\n";
      }
    } else if (*cmd_sample) {
      const auto rep = mixture_from_json(read_json_arg(rep_arg));
      const auto table = sample_table(rep, SampleSpec{n, seed});
      write_csv(std::cout, table.counts().cast<double>());
    } else if (*cmd_check) {
      return run_check(cases, seed);
    }
  } catch (const Error& e) {
    std::cerr << error_to_json(e) << "\n";
    return 1;
  }
  return 0;
}
