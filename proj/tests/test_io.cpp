#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "tdanet/io.hpp"
#include "tdanet/synthetic.hpp"
#include "test_helpers.hpp"

using namespace tdanet;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("ingest_prices reads wide CSV panels", "[cli-io]") {
    SECTION("well-formed 3 dates x 2 tickers") {
        std::istringstream in(
            "date,AXP,BA\n"
            "2004-01-02,48.5,41.2\n"
            "2004-01-05,48.9,41.0\n"
            "2004-01-06,49.1,41.5\n");
        const PricePanel panel = ingest_prices(in, nullptr);
        REQUIRE(panel.tickers == std::vector<std::string>{"AXP", "BA"});
        REQUIRE(panel.dates.size() == 3);
        REQUIRE(panel.prices.size() == 2);
        REQUIRE(panel.prices[0].size() == 3);
        REQUIRE(panel.prices[1][2] == 41.5);
    }
    SECTION("blank cell is named by row and column") {
        std::istringstream in(
            "date,AXP,BA\n"
            "2004-01-02,48.5,41.2\n"
            "2004-01-05,48.9,41.0\n"
            "2004-01-06,,41.5\n");
        REQUIRE_THROWS_WITH(ingest_prices(in, nullptr),
                            ContainsSubstring("row 4") &&
                                ContainsSubstring("column \"AXP\"") &&
                                ContainsSubstring("empty cell"));
    }
    SECTION("unsorted dates are accepted, sorted, and warned about") {
        std::istringstream in(
            "date,AXP\n"
            "2004-01-06,49.1\n"
            "2004-01-02,48.5\n"
            "2004-01-05,48.9\n");
        std::ostringstream warnings;
        const PricePanel panel = ingest_prices(in, &warnings);
        REQUIRE(panel.dates ==
                std::vector<std::string>{"2004-01-02", "2004-01-05", "2004-01-06"});
        REQUIRE(panel.prices[0] == std::vector<double>{48.5, 48.9, 49.1});
        REQUIRE_THAT(warnings.str(), ContainsSubstring("not sorted"));
    }
    SECTION("duplicate dates are rejected") {
        std::istringstream in(
            "date,AXP\n"
            "2004-01-02,48.5\n"
            "2004-01-02,48.9\n");
        REQUIRE_THROWS_WITH(ingest_prices(in, nullptr), ContainsSubstring("duplicate date"));
    }
    SECTION("unparseable and nonpositive prices carry coordinates") {
        std::istringstream bad_number(
            "date,AXP\n"
            "2004-01-02,fortyeight\n");
        REQUIRE_THROWS_WITH(ingest_prices(bad_number, nullptr),
                            ContainsSubstring("row 2") && ContainsSubstring("unparseable"));
        std::istringstream negative(
            "date,AXP\n"
            "2004-01-02,-48.5\n");
        REQUIRE_THROWS_WITH(ingest_prices(negative, nullptr),
                            ContainsSubstring("nonpositive price"));
    }
    SECTION("malformed dates and headers are rejected") {
        std::istringstream bad_date(
            "date,AXP\n"
            "Jan 2 2004,48.5\n");
        REQUIRE_THROWS_WITH(ingest_prices(bad_date, nullptr), ContainsSubstring("ISO-8601"));
        std::istringstream bad_header("time,AXP\n2004-01-02,48.5\n");
        REQUIRE_THROWS_AS(ingest_prices(bad_header, nullptr), std::runtime_error);
        std::istringstream short_row(
            "date,AXP,BA\n"
            "2004-01-02,48.5\n");
        REQUIRE_THROWS_WITH(ingest_prices(short_row, nullptr),
                            ContainsSubstring("expected 3 fields"));
    }
}

TEST_CASE("distance matrix and point cloud ingestion", "[cli-io]") {
    SECTION("distance matrix round shape") {
        std::istringstream in(
            "A,B,C\n"
            "0,1,2\n"
            "1,0,3\n"
            "2,3,0\n");
        const DistanceMatrixInput dm = ingest_distance_matrix(in);
        REQUIRE(dm.labels == std::vector<std::string>{"A", "B", "C"});
        REQUIRE(dm.matrix[1][2] == 3.0);
        const WeightedGraph g = from_distance_matrix(dm.matrix, dm.labels);
        REQUIRE(g.edges.size() == 3);
    }
    SECTION("row count must match the label count") {
        std::istringstream in(
            "A,B\n"
            "0,1\n");
        REQUIRE_THROWS_WITH(ingest_distance_matrix(in), ContainsSubstring("1 rows"));
    }
    SECTION("point cloud rows") {
        std::istringstream in("0,0\n0,1\n1,0\n1,1\n");
        const PointCloud pc = ingest_point_cloud(in);
        REQUIRE(pc.points.size() == 4);
        REQUIRE(pc.points[3] == std::vector<double>{1.0, 1.0});
    }
    SECTION("ragged point cloud is rejected") {
        std::istringstream in("0,0\n0,1,9\n");
        REQUIRE_THROWS_WITH(ingest_point_cloud(in), ContainsSubstring("dimension"));
    }
}

TEST_CASE("diagram JSON serialization", "[cli-io]") {
    SECTION("single essential class") {
        PersistenceDiagram d;
        d.max_homology_dim = 1;
        d.points = {PersistencePoint{0, 0.0, kInfiniteDeath}};
        std::ostringstream out;
        emit_diagram(d, out, 2.0);
        REQUIRE(out.str() == "{\"dims\":{\"0\":[[0,\"inf\"]]},\"inf_cap_hint\":2}\n");
    }
    SECTION("empty diagram") {
        std::ostringstream out;
        emit_diagram(PersistenceDiagram{}, out, 2.0);
        REQUIRE(out.str() == "{\"dims\":{},\"inf_cap_hint\":2}\n");
    }
    SECTION("points are sorted by (birth, death) within each dimension") {
        PersistenceDiagram d;
        d.max_homology_dim = 1;
        d.points = {PersistencePoint{1, 1.0, 3.0}, PersistencePoint{1, 0.5, 0.75},
                    PersistencePoint{1, 0.5, kInfiniteDeath}, PersistencePoint{0, 0.0, 1.0}};
        std::ostringstream out;
        emit_diagram(d, out, 2.0);
        REQUIRE(out.str() ==
                "{\"dims\":{\"0\":[[0,1]],"
                "\"1\":[[0.5,0.75],[0.5,\"inf\"],[1,3]]},\"inf_cap_hint\":2}\n");
    }
    SECTION("round-trip preserves the multiset at printed precision") {
        std::mt19937 rng(4321);
        for (int trial = 0; trial < 20; ++trial) {
            PersistenceDiagram d = testing::random_diagram(rng, 6, 0);
            const PersistenceDiagram extra = testing::random_diagram(rng, 6, 1);
            d.points.insert(d.points.end(), extra.points.begin(), extra.points.end());
            d.max_homology_dim = 1;
            std::sort(d.points.begin(), d.points.end());

            std::ostringstream first;
            emit_diagram(d, first, 2.0);
            std::istringstream back(first.str());
            const PersistenceDiagram round = ingest_diagram(back);

            REQUIRE(round.points.size() == d.points.size());
            for (std::size_t k = 0; k < d.points.size(); ++k) {
                REQUIRE(round.points[k].dim == d.points[k].dim);
                REQUIRE_THAT(round.points[k].birth,
                             Catch::Matchers::WithinRel(d.points[k].birth, 1e-11));
                if (d.points[k].essential())
                    REQUIRE(round.points[k].essential());
                else
                    REQUIRE_THAT(round.points[k].death,
                                 Catch::Matchers::WithinRel(d.points[k].death, 1e-11));
            }

            // a second pass is byte-identical: printing is a fixpoint
            std::ostringstream second;
            emit_diagram(round, second, 2.0);
            REQUIRE(second.str() == first.str());
        }
    }
    SECTION("ingest validates structure") {
        std::istringstream not_json("not json at all");
        REQUIRE_THROWS_WITH(ingest_diagram(not_json), ContainsSubstring("parse error"));
        std::istringstream no_dims("{\"points\":[]}");
        REQUIRE_THROWS_WITH(ingest_diagram(no_dims), ContainsSubstring("dims"));
        std::istringstream bad_death("{\"dims\":{\"0\":[[0,\"never\"]]}}");
        REQUIRE_THROWS_WITH(ingest_diagram(bad_death), ContainsSubstring("inf"));
        std::istringstream bad_key("{\"dims\":{\"x\":[]}}");
        REQUIRE_THROWS_AS(ingest_diagram(bad_key), std::runtime_error);
    }
}

TEST_CASE("series CSV serialization", "[cli-io]") {
    DiagramDistanceSeries s;
    s.sample_dates = {"2004-01-23", "2004-02-06"};
    s.distances = {{0.0, 0.25}, {0.0, 0.125}};

    SECTION("header, row count, and reference row") {
        std::ostringstream out;
        emit_series(s, out);
        REQUIRE(out.str() ==
                "date,dist_dim0,dist_dim1\n"
                "2004-01-23,0,0\n"
                "2004-02-06,0.25,0.125\n");
    }
    SECTION("column count is 1 + max_dim") {
        std::ostringstream out;
        emit_series(s, out);
        std::istringstream lines(out.str());
        std::string header;
        std::getline(lines, header);
        REQUIRE(std::count(header.begin(), header.end(), ',') == 2);
    }
    SECTION("round-trip equals the printed values exactly") {
        std::mt19937 rng(8642);
        std::uniform_real_distribution<double> unit(0.0, 2.0);
        DiagramDistanceSeries random;
        for (int k = 0; k < 12; ++k)
            random.sample_dates.push_back(detail::iso_date_after("2004-01-02", 10 * k));
        random.distances.assign(2, {});
        for (auto& series : random.distances)
            for (int k = 0; k < 12; ++k) series.push_back(unit(rng));

        std::ostringstream first;
        emit_series(random, first);
        std::istringstream back(first.str());
        const DiagramDistanceSeries round = ingest_series(back);
        REQUIRE(round.sample_dates == random.sample_dates);

        std::ostringstream second;
        emit_series(round, second);
        REQUIRE(second.str() == first.str());
    }
}

TEST_CASE("number formatting is 12 significant digits", "[cli-io]") {
    REQUIRE(format_number(0.0) == "0");
    REQUIRE(format_number(2.0) == "2");
    REQUIRE(format_number(1.0 / 3.0) == "0.333333333333");
    REQUIRE(format_number(1.4142135623730951) == "1.41421356237");
}
