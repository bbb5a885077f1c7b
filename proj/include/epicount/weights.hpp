#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "epicount/csv.hpp"
#include "epicount/errors.hpp"
#include "epicount/graph.hpp"

namespace epicount {

enum class WeightKind { FirstOrder, PowerLaw, OrderFactor, Uniform, Fixed };

inline std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::FirstOrder: return "first_order";
    case WeightKind::PowerLaw: return "power_law";
    case WeightKind::OrderFactor: return "order_factor";
    case WeightKind::Uniform: return "uniform";
    case WeightKind::Fixed: return "fixed";
  }
  return "?";
}

// Transmission-weight law acting on neighbourhood orders. order_cap is the
// aggregation bound M of the order-factor law: orders >= M share one weight.
struct WeightSpec {
  WeightKind kind = WeightKind::FirstOrder;
  bool normalized = true;
  int order_cap = 0;
  Eigen::MatrixXd fixed;
};

// PowerLaw estimates log d; OrderFactor estimates log omega_2..log omega_M
// (omega_1 = 1 is fixed for identifiability). The other laws have no
// parameters.
inline int weight_param_count(const WeightSpec& spec) {
  switch (spec.kind) {
    case WeightKind::PowerLaw: return 1;
    case WeightKind::OrderFactor: return spec.order_cap - 1;
    default: return 0;
  }
}

inline void validate_weight_spec(const WeightSpec& spec,
                                 const RegionGraph& graph) {
  const int n = graph.size();
  if (spec.kind == WeightKind::OrderFactor) {
    const int max_order = max_finite_order(graph);
    if (spec.order_cap < 2 || spec.order_cap > std::max(2, max_order))
      throw input_error("order-factor bound M must satisfy 2 <= M <= " +
                        std::to_string(std::max(2, max_order)) +
                        " (largest finite order), got " +
                        std::to_string(spec.order_cap));
  }
  if (spec.kind == WeightKind::Fixed) {
    if (spec.fixed.rows() != n || spec.fixed.cols() != n)
      throw input_error("fixed weight matrix must be " + std::to_string(n) +
                        "x" + std::to_string(n));
    for (int j = 0; j < n; ++j) {
      if (spec.fixed(j, j) != 0.0)
        throw input_error("fixed weight matrix must have a zero diagonal, "
                          "violated for region '" + graph.region_ids[j] + "'");
      for (int i = 0; i < n; ++i)
        if (spec.fixed(j, i) < 0.0)
          throw input_error("fixed weight matrix must be nonnegative, entry (" +
                            graph.region_ids[j] + "," + graph.region_ids[i] +
                            ") = " + std::to_string(spec.fixed(j, i)));
    }
  }
}

// Weight matrix plus derivatives with respect to the transformed (log-scale)
// weight parameters, up to the requested order.
struct WeightDerivs {
  Eigen::MatrixXd value;
  std::vector<Eigen::MatrixXd> grad;
  std::vector<std::vector<Eigen::MatrixXd>> hess;  // hess[p][q], p <= q mirrored
};

namespace detail {

// Row-normalizes w (and derivatives by the quotient rule) in place.
// Rows sum over reachable partners only; a region without any positive
// entry cannot be normalized.
inline void normalize_rows(WeightDerivs& d, const RegionGraph& graph) {
  const int n = graph.size();
  const int np = static_cast<int>(d.grad.size());
  for (int j = 0; j < n; ++j) {
    const double s = d.value.row(j).sum();
    if (s <= 0.0)
      throw input_error(
          "cannot normalize weights: region '" + graph.region_ids[j] +
          "' has no reachable neighbour");
    Eigen::VectorXd sp(np);
    for (int p = 0; p < np; ++p) sp[p] = d.grad[p].row(j).sum();
    const Eigen::RowVectorXd w = d.value.row(j);
    for (int p = 0; p < np; ++p) {
      const Eigen::RowVectorXd wp = d.grad[p].row(j);
      if (!d.hess.empty()) {
        for (int q = p; q < np; ++q) {
          const Eigen::RowVectorXd wq = d.grad[q].row(j);
          const double spq = d.hess[p][q].row(j).sum();
          d.hess[p][q].row(j) =
              d.hess[p][q].row(j) / s - wp * (sp[q] / (s * s)) -
              wq * (sp[p] / (s * s)) - w * (spq / (s * s)) +
              w * (2.0 * sp[p] * sp[q] / (s * s * s));
        }
      }
      d.grad[p].row(j) = wp / s - w * (sp[p] / (s * s));
    }
    d.value.row(j) /= s;
  }
  if (!d.hess.empty())
    for (int p = 0; p < np; ++p)
      for (int q = 0; q < p; ++q) d.hess[p][q] = d.hess[q][p];
}

}  // namespace detail

// Weight matrix (w_ji) and its analytic derivatives with respect to the
// transformed parameters; deriv_order selects value only (0), value+gradient
// (1), or value+gradient+hessian (2). Unreachable pairs always get weight 0
// and never enter normalization sums.
inline WeightDerivs weight_matrix_derivs(const WeightSpec& spec,
                                         const Eigen::VectorXd& params,
                                         const RegionGraph& graph,
                                         int deriv_order) {
  validate_weight_spec(spec, graph);
  const int n = graph.size();
  const int np = weight_param_count(spec);
  if (params.size() != np)
    throw input_error("weight law '" + to_string(spec.kind) + "' expects " +
                      std::to_string(np) + " parameter(s), got " +
                      std::to_string(params.size()));

  WeightDerivs d;
  d.value = Eigen::MatrixXd::Zero(n, n);
  if (deriv_order >= 1)
    d.grad.assign(np, Eigen::MatrixXd::Zero(n, n));
  if (deriv_order >= 2)
    d.hess.assign(np, std::vector<Eigen::MatrixXd>(
                          np, Eigen::MatrixXd::Zero(n, n)));

  switch (spec.kind) {
    case WeightKind::FirstOrder:
      d.value = graph.adjacency.cast<double>();
      break;
    case WeightKind::Uniform:
      d.value.setOnes();
      d.value.diagonal().setZero();
      break;
    case WeightKind::Fixed:
      d.value = spec.fixed;
      break;
    case WeightKind::PowerLaw: {
      const double decay = std::exp(params[0]);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const int o = graph.orders(j, i);
          if (i == j || o == kUnreachable) continue;
          const double log_o = std::log(static_cast<double>(o));
          const double w = std::exp(-decay * log_o);
          d.value(j, i) = w;
          // w = exp(-d*log o), d = exp(u):  dw/du = -d log(o) w
          const double a = decay * log_o;
          if (deriv_order >= 1) d.grad[0](j, i) = -a * w;
          if (deriv_order >= 2) d.hess[0][0](j, i) = a * (a - 1.0) * w;
        }
      break;
    }
    case WeightKind::OrderFactor: {
      // omega_1 = 1 fixed; params are log omega_2 .. log omega_M and the
      // bucket M aggregates all orders >= M.
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const int o = graph.orders(j, i);
          if (i == j || o == kUnreachable) continue;
          const int bucket = std::min(o, spec.order_cap);
          const double w = bucket == 1 ? 1.0 : std::exp(params[bucket - 2]);
          d.value(j, i) = w;
          if (bucket >= 2) {
            const int p = bucket - 2;
            if (deriv_order >= 1) d.grad[p](j, i) = w;
            if (deriv_order >= 2) d.hess[p][p](j, i) = w;
          }
        }
      break;
    }
  }

  if (spec.normalized) detail::normalize_rows(d, graph);
  return d;
}

inline Eigen::MatrixXd weight_matrix(const WeightSpec& spec,
                                     const Eigen::VectorXd& params,
                                     const RegionGraph& graph) {
  return weight_matrix_derivs(spec, params, graph, 0).value;
}

inline std::vector<Eigen::MatrixXd> weight_matrix_gradient(
    const WeightSpec& spec, const Eigen::VectorXd& params,
    const RegionGraph& graph) {
  return weight_matrix_derivs(spec, params, graph, 1).grad;
}

// --- file formats -----------------------------------------------------

inline Eigen::MatrixXd read_weight_matrix_csv(const std::string& path,
                                              const RegionGraph& graph) {
  csv::Table table = csv::read_file(path);
  const int n = graph.size();
  if (static_cast<int>(table.header.size()) != n + 1 ||
      static_cast<int>(table.rows.size()) != n)
    throw input_error(path + ": expected a " + std::to_string(n) + "x" +
                      std::to_string(n) + " matrix with region headers");
  for (int j = 0; j < n; ++j)
    if (table.header[j + 1] != graph.region_ids[j])
      throw input_error(path + ": column " + std::to_string(j + 2) +
                        " is '" + table.header[j + 1] + "', expected '" +
                        graph.region_ids[j] + "'");
  Eigen::MatrixXd w(n, n);
  for (int j = 0; j < n; ++j) {
    csv::require_fields(table, j, static_cast<std::size_t>(n) + 1);
    if (table.rows[j][0] != graph.region_ids[j])
      throw input_error(path + ":" + std::to_string(table.line_numbers[j]) +
                        ": row id '" + table.rows[j][0] + "', expected '" +
                        graph.region_ids[j] + "'");
    for (int i = 0; i < n; ++i) w(j, i) = csv::parse_double(table, j, i + 1);
  }
  return w;
}

inline void write_weight_matrix_csv(const Eigen::MatrixXd& w,
                                    const RegionGraph& graph,
                                    const std::string& path) {
  csv::Writer out(path);
  std::vector<std::string> header{"region"};
  header.insert(header.end(), graph.region_ids.begin(),
                graph.region_ids.end());
  out.row(header);
  for (int j = 0; j < graph.size(); ++j) {
    std::vector<std::string> row{graph.region_ids[j]};
    for (int i = 0; i < graph.size(); ++i)
      row.push_back(csv::format_double(w(j, i)));
    out.row(row);
  }
}

}  // namespace epicount
