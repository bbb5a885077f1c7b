#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <deque>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "epicount/csv.hpp"
#include "epicount/errors.hpp"

namespace epicount {

// Sentinel for pairs in different connected components. Kept distinct from
// any finite order so downstream weights can map it to exactly zero.
inline constexpr int kUnreachable = -1;

// Undirected region graph together with the neighbourhood-order matrix
// (all-pairs shortest-path lengths). Immutable after construction.
struct RegionGraph {
  std::vector<std::string> region_ids;
  Eigen::MatrixXi adjacency;  // I x I, 0/1, symmetric, zero diagonal
  Eigen::MatrixXi orders;     // I x I, kUnreachable where disconnected

  int size() const { return static_cast<int>(adjacency.rows()); }
  int degree(int j) const { return adjacency.row(j).sum(); }
};

inline void validate_adjacency(const Eigen::MatrixXi& adjacency) {
  if (adjacency.rows() < 1 || adjacency.rows() != adjacency.cols())
    throw input_error("adjacency matrix must be square with I >= 1, got " +
                      std::to_string(adjacency.rows()) + "x" +
                      std::to_string(adjacency.cols()));
  const int n = static_cast<int>(adjacency.rows());
  for (int i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0)
      throw input_error("adjacency diagonal must be zero, entry (" +
                        std::to_string(i) + "," + std::to_string(i) +
                        ") is not");
    for (int j = 0; j < n; ++j) {
      if (adjacency(i, j) != 0 && adjacency(i, j) != 1)
        throw input_error("adjacency entries must be 0/1, entry (" +
                          std::to_string(i) + "," + std::to_string(j) +
                          ") = " + std::to_string(adjacency(i, j)));
      if (adjacency(i, j) != adjacency(j, i))
        throw input_error("adjacency must be symmetric, entries (" +
                          std::to_string(i) + "," + std::to_string(j) +
                          ") and (" + std::to_string(j) + "," +
                          std::to_string(i) + ") differ");
    }
  }
}

// Breadth-first search from every node. orders(i,j) is the length of the
// shortest path between i and j, kUnreachable for disconnected pairs.
inline Eigen::MatrixXi compute_orders(const Eigen::MatrixXi& adjacency) {
  validate_adjacency(adjacency);
  const int n = static_cast<int>(adjacency.rows());
  Eigen::MatrixXi orders = Eigen::MatrixXi::Constant(n, n, kUnreachable);
  std::vector<std::vector<int>> neighbours(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (adjacency(i, j)) neighbours[i].push_back(j);
  std::deque<int> queue;
  for (int src = 0; src < n; ++src) {
    orders(src, src) = 0;
    queue.clear();
    queue.push_back(src);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : neighbours[u]) {
        if (orders(src, v) == kUnreachable) {
          orders(src, v) = orders(src, u) + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return orders;
}

inline RegionGraph make_region_graph(std::vector<std::string> region_ids,
                                     Eigen::MatrixXi adjacency) {
  if (static_cast<int>(region_ids.size()) != adjacency.rows())
    throw input_error("region id count (" +
                      std::to_string(region_ids.size()) +
                      ") does not match adjacency dimension (" +
                      std::to_string(adjacency.rows()) + ")");
  RegionGraph g;
  g.orders = compute_orders(adjacency);
  g.region_ids = std::move(region_ids);
  g.adjacency = std::move(adjacency);
  return g;
}

// Largest finite neighbourhood order; 0 for a single region.
inline int max_finite_order(const RegionGraph& graph) {
  return graph.orders.maxCoeff();
}

inline int region_index(const RegionGraph& graph, const std::string& id) {
  auto it = std::find(graph.region_ids.begin(), graph.region_ids.end(), id);
  if (it == graph.region_ids.end())
    throw input_error("unknown region id: '" + id + "'");
  return static_cast<int>(it - graph.region_ids.begin());
}

// --- file formats -----------------------------------------------------

// Edge list: header "region_a,region_b", one undirected edge per row.
// A row with an empty second field declares an isolated region. Duplicate
// edges are collapsed with a warning.
inline RegionGraph read_edge_list(const csv::Table& table,
                                  std::ostream& warn = std::cerr) {
  std::vector<std::string> ids;
  std::map<std::string, int> index;
  auto intern = [&](const std::string& id) {
    auto [it, inserted] = index.try_emplace(id, static_cast<int>(ids.size()));
    if (inserted) ids.push_back(id);
    return it->second;
  };
  std::set<std::pair<int, int>> edges;
  std::size_t duplicates = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.empty() || row.size() > 2)
      throw input_error(table.path + ":" +
                        std::to_string(table.line_numbers[r]) +
                        ": expected 1 or 2 fields, got " +
                        std::to_string(row.size()));
    const int a = intern(row[0]);
    if (row.size() == 1 || row[1].empty()) continue;  // isolated declaration
    const int b = intern(row[1]);
    if (a == b)
      throw input_error(table.path + ":" +
                        std::to_string(table.line_numbers[r]) +
                        ": self-loop on region '" + row[0] + "'");
    auto edge = std::minmax(a, b);
    if (!edges.insert({edge.first, edge.second}).second) ++duplicates;
  }
  if (duplicates > 0)
    warn << "warning: " << table.path << ": " << duplicates
         << " duplicate edge row(s) ignored\n";
  const int n = static_cast<int>(ids.size());
  if (n == 0) throw input_error(table.path + ": no regions declared");
  Eigen::MatrixXi adjacency = Eigen::MatrixXi::Zero(n, n);
  for (auto [a, b] : edges) adjacency(a, b) = adjacency(b, a) = 1;
  return make_region_graph(std::move(ids), std::move(adjacency));
}

// Full 0/1 matrix with a header row and leading id column.
inline RegionGraph read_adjacency_matrix(const csv::Table& table) {
  if (table.header.size() < 2)
    throw input_error(table.path + ": matrix header needs region columns");
  std::vector<std::string> ids(table.header.begin() + 1, table.header.end());
  const int n = static_cast<int>(ids.size());
  if (static_cast<int>(table.rows.size()) != n)
    throw input_error(table.path + ": expected " + std::to_string(n) +
                      " data rows, got " + std::to_string(table.rows.size()));
  Eigen::MatrixXi adjacency(n, n);
  for (int i = 0; i < n; ++i) {
    csv::require_fields(table, i, static_cast<std::size_t>(n) + 1);
    if (table.rows[i][0] != ids[i])
      throw input_error(table.path + ":" +
                        std::to_string(table.line_numbers[i]) +
                        ": row id '" + table.rows[i][0] +
                        "' does not match column order ('" + ids[i] + "')");
    for (int j = 0; j < n; ++j)
      adjacency(i, j) = static_cast<int>(csv::parse_count(table, i, j + 1));
  }
  return make_region_graph(std::move(ids), std::move(adjacency));
}

// Dispatches on the header: "region_a,region_b" selects the edge list.
inline RegionGraph read_adjacency_csv(const std::string& path,
                                      std::ostream& warn = std::cerr) {
  csv::Table table = csv::read_file(path);
  if (table.header.size() == 2 && table.header[0] == "region_a" &&
      table.header[1] == "region_b")
    return read_edge_list(table, warn);
  return read_adjacency_matrix(table);
}

// Orders matrix with region-id headers; unreachable pairs are empty cells.
inline void write_orders_csv(const RegionGraph& graph,
                             const std::string& path) {
  csv::Writer out(path);
  std::vector<std::string> header{"region"};
  header.insert(header.end(), graph.region_ids.begin(),
                graph.region_ids.end());
  out.row(header);
  for (int i = 0; i < graph.size(); ++i) {
    std::vector<std::string> row{graph.region_ids[i]};
    for (int j = 0; j < graph.size(); ++j)
      row.push_back(graph.orders(i, j) == kUnreachable
                        ? std::string()
                        : std::to_string(graph.orders(i, j)));
    out.row(row);
  }
}

}  // namespace epicount
