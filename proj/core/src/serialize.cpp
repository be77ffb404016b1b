#include "rank2/serialize.hpp"

#include <algorithm>

#include <json.hpp>

namespace rank2 {

namespace {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Eigen::VectorXd vector_from_json(const json& a) {
  Eigen::VectorXd v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i];
  return v;
}

json indexed_block(const Eigen::VectorXd& v, const std::vector<int>& cols) {
  json a = json::array();
  for (size_t i = 0; i < cols.size(); ++i)
    a.push_back({{"col", cols[i]}, {"value", v(static_cast<Eigen::Index>(i))}});
  return a;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(errc::ParseError, e.what());
  }
}

}  // namespace

std::string mixture_to_json(const MixtureRepresentation& rep) {
  json j;
  j["k"] = rep.k();
  j["weights"] = vector_to_json(rep.weights);
  j["col_factors"] = json::array();
  j["row_factors"] = json::array();
  for (const auto& c : rep.col_factors)
    j["col_factors"].push_back(vector_to_json(c));
  for (const auto& r : rep.row_factors)
    j["row_factors"].push_back(vector_to_json(r));
  return j.dump();
}

MixtureRepresentation mixture_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    std::vector<Eigen::VectorXd> cols, rows;
    for (const auto& c : j.at("col_factors")) cols.push_back(vector_from_json(c));
    for (const auto& r : j.at("row_factors")) rows.push_back(vector_from_json(r));
    return MixtureRepresentation::create(vector_from_json(j.at("weights")),
                                         std::move(cols), std::move(rows));
  } catch (const json::exception& e) {
    throw Error(errc::ParseError, e.what());
  }
}

std::string chart_point_to_json(ChartId id, const ChartPoint& p) {
  const auto others = other_columns(p.cols, id);
  json j;
  j["j1"] = id.j1;
  j["j2"] = id.j2;
  j["rows"] = p.rows;
  j["cols"] = p.cols;
  j["a"] = vector_to_json(p.a);
  j["b"] = indexed_block(p.b, others);
  j["c"] = vector_to_json(p.c);
  j["d"] = indexed_block(p.d, others);
  j["alpha"] = p.alpha;
  return j.dump();
}

std::pair<ChartId, ChartPoint> chart_point_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    const ChartId id{j.at("j1"), j.at("j2")};
    ChartPoint p;
    p.rows = j.at("rows");
    p.cols = j.at("cols");
    p.a = vector_from_json(j.at("a"));
    p.c = vector_from_json(j.at("c"));
    p.alpha = j.at("alpha");
    const auto others = other_columns(p.cols, id);
    p.b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(others.size()));
    p.d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(others.size()));
    const auto fill = [&](const json& arr, Eigen::VectorXd& block) {
      for (const auto& entry : arr) {
        const int col = entry.at("col");
        const auto it = std::find(others.begin(), others.end(), col);
        if (it == others.end())
          throw Error(errc::ParseError,
                      "column " + std::to_string(col) +
                          " is not outside the chart pair");
        block(it - others.begin()) = entry.at("value");
      }
    };
    fill(j.at("b"), p.b);
    fill(j.at("d"), p.d);
    return {id, std::move(p)};
  } catch (const json::exception& e) {
    throw Error(errc::ParseError, e.what());
  }
}

std::string fit_result_to_json(const FitResult& r) {
  json j;
  j["value"] = r.value;
  if (r.source.kind == FitSource::Kind::Rank1) {
    j["source"] = {{"type", "rank1"}};
  } else {
    j["source"] = {{"type", "chart"},
                   {"j1", r.source.id.j1},
                   {"j2", r.source.id.j2}};
  }
  j["flags"] = r.flags.names();
  j["matrix"] = matrix_to_json(r.matrix.entries());
  if (r.point)
    j["point"] = nlohmann::json::parse(
        chart_point_to_json(r.source.id, *r.point));
  j["iterations"] = r.iterations;
  return j.dump();
}

std::string error_to_json(const Error& e) {
  json j;
  j["error"] = e.code();
  j["message"] = e.what();
  return j.dump();
}

}  // namespace rank2
