#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "epicount/graph.hpp"
#include "test_util.hpp"

using namespace epicount;

namespace {

Eigen::MatrixXi path_adjacency(int n) {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = 1;
  return a;
}

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("orders on the 4-node path match the oracle") {
  auto adjacency = path_adjacency(4);
  auto orders = compute_orders(adjacency);
  REQUIRE(orders == testutil::floyd_warshall(adjacency));
  Eigen::RowVector4i expected{0, 1, 2, 3};
  REQUIRE(orders.row(0) == expected);
}

TEST_CASE("single region has a zero orders matrix") {
  auto orders = compute_orders(Eigen::MatrixXi::Zero(1, 1));
  REQUIRE(orders.rows() == 1);
  REQUIRE(orders(0, 0) == 0);
}

TEST_CASE("disconnected pairs are unreachable") {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(3, 3);
  a(0, 1) = a(1, 0) = 1;  // components {A,B} and {C}
  auto orders = compute_orders(a);
  REQUIRE(orders(0, 1) == 1);
  REQUIRE(orders(0, 2) == kUnreachable);
  REQUIRE(orders(2, 0) == kUnreachable);
  REQUIRE(orders(2, 2) == 0);
}

TEST_CASE("orders equal Floyd-Warshall on random graphs") {
  std::mt19937_64 rng(20240811);
  std::uniform_int_distribution<int> size(1, 12);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    auto a = testutil::random_adjacency(size(rng), prob(rng), rng);
    auto orders = compute_orders(a);
    REQUIRE(orders == testutil::floyd_warshall(a));
    // unreachable iff different components, via symmetry of the oracle
    REQUIRE(orders == orders.transpose().eval());
  }
}

TEST_CASE("adjacency validation names the offending entry") {
  Eigen::MatrixXi bad = Eigen::MatrixXi::Zero(2, 2);
  bad(0, 1) = 1;  // not symmetric
  REQUIRE_THROWS_MATCHES(compute_orders(bad), input_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("(0,1)")));
  Eigen::MatrixXi diag = Eigen::MatrixXi::Zero(2, 2);
  diag(1, 1) = 1;
  REQUIRE_THROWS_MATCHES(compute_orders(diag), input_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("(1,1)")));
}

TEST_CASE("max_finite_order") {
  auto path = make_region_graph(testutil::region_names(4), path_adjacency(4));
  REQUIRE(max_finite_order(path) == 3);

  Eigen::MatrixXi complete = Eigen::MatrixXi::Ones(3, 3);
  complete.diagonal().setZero();
  auto k3 = make_region_graph(testutil::region_names(3), complete);
  REQUIRE(max_finite_order(k3) == 1);

  auto single =
      make_region_graph({"only"}, Eigen::MatrixXi::Zero(1, 1));
  REQUIRE(max_finite_order(single) == 0);
}

TEST_CASE("edge list ingestion") {
  auto p = write_temp("epicount_edges.csv",
                      "region_a,region_b\nA,B\nB,C\nC,D\nA,B\n");
  std::ostringstream warnings;
  auto table = csv::read_file(p.string());
  auto graph = read_edge_list(table, warnings);
  REQUIRE(graph.region_ids == std::vector<std::string>{"A", "B", "C", "D"});
  REQUIRE(graph.orders(0, 3) == 3);
  REQUIRE_THAT(warnings.str(),
               Catch::Matchers::ContainsSubstring("duplicate edge"));
}

TEST_CASE("edge list supports isolated regions") {
  auto p = write_temp("epicount_isolated.csv", "region_a,region_b\nA,\nB,\n");
  auto graph = read_adjacency_csv(p.string());
  REQUIRE(graph.size() == 2);
  REQUIRE(graph.orders(0, 1) == kUnreachable);
}

TEST_CASE("matrix csv round-trips through orders output") {
  auto p = write_temp("epicount_adj.csv",
                      "region,A,B,C\nA,0,1,0\nB,1,0,1\nC,0,1,0\n");
  auto graph = read_adjacency_csv(p.string());
  REQUIRE(graph.orders(0, 2) == 2);

  auto out = std::filesystem::temp_directory_path() / "epicount_orders.csv";
  write_orders_csv(graph, out.string());
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "region,A,B,C");
  std::getline(in, line);
  REQUIRE(line == "A,0,1,2");
}

TEST_CASE("matrix csv with mismatched row id is rejected") {
  auto p = write_temp("epicount_adj_bad.csv",
                      "region,A,B\nB,0,1\nA,1,0\n");
  REQUIRE_THROWS_AS(read_adjacency_csv(p.string()), input_error);
}
