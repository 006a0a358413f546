#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "oracles.hpp"
#include "swsync/error.hpp"
#include "swsync/graph.hpp"

using namespace swsync;

TEST_CASE("ring lattice structure") {
    const Graph ring = ring_lattice(6, 1);
    CHECK(ring.node_count() == 6);
    CHECK(ring.edge_count() == 6);
    CHECK(degree_sequence(ring) == std::vector<int>(6, 2));
    CHECK(count_triangles(ring) == 0);

    const Graph big = ring_lattice(512, 3);
    for (int i = 0; i < 512; ++i) {
        REQUIRE(big.degree(i) == 6);
        for (int m = 1; m <= 3; ++m) {
            CHECK(big.has_edge(i, (i + m) % 512));
            CHECK(big.has_edge(i, (i - m + 512) % 512));
        }
    }
    CHECK(count_triangles(big) == 1536);
    CHECK(oracle::brute_force_triangles(big) == 1536);
}

TEST_CASE("ring lattice rejects N <= 2k") {
    CHECK_THROWS_AS(ring_lattice(6, 3), InvalidArgument);
    CHECK_THROWS_AS(ring_lattice(4, 2), InvalidArgument);
    CHECK_THROWS_AS(ring_lattice(10, 0), InvalidArgument);
}

TEST_CASE("ring triangle count is N k (k - 1) / 2") {
    for (int n : {10, 50}) {
        for (int k : {1, 2, 3}) {
            const Graph g = ring_lattice(n, k);
            const auto brute = oracle::brute_force_triangles(g);
            CAPTURE(n);
            CAPTURE(k);
            CHECK(brute == n * k * (k - 1) / 2);
            CHECK(count_triangles(g) == brute);
        }
    }
}

TEST_CASE("triangle count on small named graphs") {
    CHECK(count_triangles(complete_graph(4)) == 4);
    CHECK(count_triangles(complete_graph(7)) == 35);
    const std::vector<Edge> bowtie{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}};
    CHECK(count_triangles(Graph(5, bowtie)) == 2);
}

TEST_CASE("triangle count agrees with tr(A^3)/6 on the corpus") {
    for (const Graph& g : oracle::graph_corpus(40, 64, 11)) {
        CHECK(static_cast<double>(count_triangles(g)) == doctest::Approx(oracle::trace_cube_triangles(g)));
    }
}

TEST_CASE("laplacian") {
    const Graph edge(2, std::vector<Edge>{{0, 1}});
    Eigen::Matrix2d expected;
    expected << 1, -1, -1, 1;
    CHECK(laplacian(edge).isApprox(expected));

    const Eigen::MatrixXd cyc = laplacian(ring_lattice(6, 1));
    for (int i = 0; i < 6; ++i) {
        CHECK(cyc(i, i) == 2.0);
        CHECK(cyc(i, (i + 1) % 6) == -1.0);
        CHECK(cyc(i, (i + 3) % 6) == 0.0);
    }
    const Eigen::MatrixXd sw = laplacian(generate_small_world({128, 3, 4.0, 5}));
    CHECK(sw.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    CHECK((sw - sw.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("small-world with r = 0 is the ring") {
    CHECK(generate_small_world({512, 3, 0.0, 99}) == ring_lattice(512, 3));
}

TEST_CASE("small-world generation is deterministic and simple") {
    const SmallWorldParams p{512, 3, 4.0, 7};
    const Graph a = generate_small_world(p);
    const Graph b = generate_small_world(p);
    CHECK(a == b);
    auto other = p;
    other.seed = 8;
    CHECK_FALSE(generate_small_world(other) == a);

    const auto degrees = degree_sequence(a);
    CHECK(std::accumulate(degrees.begin(), degrees.end(), 0L) == 2 * static_cast<long>(a.edge_count()));
    const double mean = std::accumulate(degrees.begin(), degrees.end(), 0.0) / 512;
    CHECK(mean == doctest::Approx(10.0).epsilon(0.10));
}

TEST_CASE("small-world invariants over many seeds") {
    const Graph ring = ring_lattice(200, 2);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Graph g = generate_small_world({200, 2, 3.0, seed});
        for (auto [i, j] : ring.edges()) {
            REQUIRE(g.has_edge(i, j));
        }
        for (int i = 0; i < g.node_count(); ++i) {
            REQUIRE(g.degree(i) >= 4);
            const auto nb = g.neighbors(i);
            REQUIRE(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
            REQUIRE_FALSE(g.has_edge(i, i));
        }
    }
}

TEST_CASE("full shortcut probability yields the complete graph") {
    CHECK(generate_small_world({12, 1, 12.0, 3}) == complete_graph(12));
    CHECK_THROWS_AS(generate_small_world({12, 1, 12.5, 3}), InvalidArgument);
}

TEST_CASE("shortcut degrees follow a shifted Poisson law") {
    constexpr int n = 512;
    constexpr int k = 3;
    constexpr double r = 4.0;
    constexpr int bins = 11;  // 0..9 and a pooled tail
    std::vector<double> observed(bins, 0.0);
    double total_degree = 0.0;
    double samples = 0.0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const Graph g = generate_small_world({n, k, r, seed});
        for (int d : degree_sequence(g)) {
            observed[static_cast<std::size_t>(std::min(d - 2 * k, bins - 1))] += 1.0;
            total_degree += d;
            samples += 1.0;
        }
    }
    CHECK(total_degree / samples == doctest::Approx(r + 2 * k).epsilon(0.02));

    // shortcuts are drawn only among the N - 1 - 2k non-ring partners
    const double rate = r / n * (n - 1 - 2 * k);
    const boost::math::poisson_distribution<> poisson(rate);
    double chi2 = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double prob = b < bins - 1 ? boost::math::pdf(poisson, b) : boost::math::cdf(complement(poisson, b - 1));
        const double expected = prob * samples;
        chi2 += (observed[static_cast<std::size_t>(b)] - expected) * (observed[static_cast<std::size_t>(b)] - expected) /
                expected;
    }
    const double p_value = boost::math::cdf(complement(boost::math::chi_squared(bins - 1), chi2));
    CAPTURE(chi2);
    CHECK(p_value > 0.01);
}

TEST_CASE("connected components") {
    CHECK(connected_components(ring_lattice(10, 1)) == 1);
    const std::vector<Edge> two{{0, 1}, {2, 3}};
    CHECK(connected_components(Graph(5, two)) == 3);
}

TEST_CASE("graph construction rejects malformed edges") {
    CHECK_THROWS_AS(Graph(3, std::vector<Edge>{{0, 0}}), InvalidArgument);
    CHECK_THROWS_AS(Graph(3, std::vector<Edge>{{0, 3}}), InvalidArgument);
    CHECK_THROWS_AS(Graph(3, std::vector<Edge>{{0, 1}, {1, 0}}), InvalidArgument);
}

TEST_CASE("edge list round trip") {
    std::ostringstream out;
    write_edge_list(ring_lattice(6, 1), out);
    CHECK(out.str() == "6\n0 1\n0 5\n1 2\n2 3\n3 4\n4 5\n");

    std::istringstream in("6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
    CHECK(read_edge_list(in) == ring_lattice(6, 1));

    for (const Graph& g : oracle::graph_corpus(12, 80, 3)) {
        std::stringstream buf;
        write_edge_list(g, buf);
        CHECK(read_edge_list(buf) == g);
    }
}

TEST_CASE("edge list comments and blank lines") {
    std::istringstream in("# a triangle\n\n3\n# edges\n0 1\n\n1 2\n2 0\n");
    const Graph g = read_edge_list(in);
    CHECK(g.edge_count() == 3);
    CHECK(count_triangles(g) == 1);
}

namespace {

std::size_t parse_error_line(const std::string& text) {
    std::istringstream in(text);
    try {
        read_edge_list(in);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("edge list parse errors name the offending line") {
    CHECK(parse_error_line("6\n0 1\n0 0\n") == 3);       // self-loop
    CHECK(parse_error_line("6\n0 1\n2 6\n") == 3);       // out of range
    CHECK(parse_error_line("6\n0 1\n1 2\n1 0\n") == 4);  // duplicate
    CHECK(parse_error_line("six\n0 1\n") == 1);          // bad header
    CHECK(parse_error_line("6 7\n0 1\n") == 1);          // header with two fields
    CHECK(parse_error_line("6\n0 1 2\n") == 2);
    CHECK(parse_error_line("6\n0 x\n") == 2);
    CHECK(parse_error_line("# nothing\n") == 2);  // missing header
}

TEST_CASE("edge list file IO") {
    const auto path = std::filesystem::temp_directory_path() / "swsync_edge_list_test.txt";
    const Graph g = generate_small_world({64, 2, 3.0, 21});
    save_edge_list(g, path);
    CHECK(load_edge_list(path) == g);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_edge_list(path), Error);
}
