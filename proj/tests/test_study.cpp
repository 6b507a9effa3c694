#include "doctest.h"

#include "glps/study.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace glps;

namespace
{
    std::string read_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::size_t count_lines(const std::string &s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }
}

TEST_CASE("CSV table layout")
{
    RunConfig config;
    config.levels = {2, 4};
    const auto report = run_convergence(config);
    REQUIRE(report.complete);
    REQUIRE(report.rows.size() == 2);
    const auto csv = format_table(report);
    CHECK(count_lines(csv) == 3);
    CHECK(csv.rfind("level,h,ndof,err_l2,eoc_l2,err_h1,eoc_h1,err_lpsd,eoc_lpsd\n", 0) == 0);
    std::istringstream in(csv);
    std::string header, first, second;
    std::getline(in, header);
    std::getline(in, first);
    std::getline(in, second);
    CHECK(first.rfind("0,0.5,13,", 0) == 0);
    // Undefined rates on the first row are empty cells.
    CHECK(first.find(",,") != std::string::npos);
    CHECK(second.find(",,") == std::string::npos);

    const auto parsed = parse_table(csv);
    REQUIRE(parsed.rows.size() == 2);
    CHECK(parsed.rows[1].ndof == report.rows[1].ndof);
    CHECK(parsed.rows[1].errL2 == doctest::Approx(report.rows[1].errL2).epsilon(1e-5));
    CHECK_FALSE(parsed.rows[0].eocLpsd.has_value());
    CHECK(*parsed.rows[1].eocH1 == doctest::Approx(*report.rows[1].eocH1).epsilon(1e-5));
    CHECK(format_table(parsed) == csv);
    CHECK_THROWS_AS(parse_table("a,b\n"), Error);
}

TEST_CASE("repeated runs write byte-identical CSV")
{
    for(auto space : {SpaceKind::ConformingP1, SpaceKind::CrouzeixRaviart})
    {
        RunConfig config;
        config.example = 3;
        config.space = space;
        config.levels = {4, 8, 16};
        config.out = "study_repeat_a.csv";
        run_convergence(config);
        config.out = "study_repeat_b.csv";
        run_convergence(config);
        const auto a = read_file("study_repeat_a.csv");
        CHECK(!a.empty());
        CHECK(a == read_file("study_repeat_b.csv"));
    }
    std::remove("study_repeat_a.csv");
    std::remove("study_repeat_b.csv");
}

TEST_CASE("run configuration validation")
{
    RunConfig config;
    config.levels = {};
    CHECK_THROWS_AS(config.validate(), Error);
    config.levels = {4, 4};
    CHECK_THROWS_AS(config.validate(), Error);
    config.levels = {8, 4};
    CHECK_THROWS_AS(config.validate(), Error);
    config.levels = {0, 4};
    CHECK_THROWS_AS(config.validate(), Error);
    config.levels = {4, 8};
    config.beta = 0.0;
    CHECK_THROWS_AS(config.validate(), Error);
    config.beta = 0.2;
    CHECK_NOTHROW(config.validate());
    config.example = 5;
    CHECK_THROWS_AS(config.validate(), Error);
}

TEST_CASE("stabilization defaults per space")
{
    RunConfig config;
    config.example = 2;
    const auto spec = resolve_problem(config);
    CHECK(resolve_stabilization(config, spec).beta == 0.1);
    CHECK(resolve_stabilization(config, spec).mode == PatchKind::Vertex);
    config.space = SpaceKind::CrouzeixRaviart;
    CHECK(resolve_stabilization(config, spec).beta == 0.2);
    CHECK(resolve_stabilization(config, spec).mode == PatchKind::Edge);
    config.beta = 0.5;
    config.betaAuto = true;
    const auto p = resolve_stabilization(config, spec);
    CHECK(p.beta == 0.5);
    CHECK(p.autoScale);
}

TEST_CASE("robustness diagnostics")
{
    RunConfig config;
    config.example = 4;
    config.levels = {8, 16};
    config.out = "robustness_test.csv";
    const auto report = run_robustness(config);
    REQUIRE(report.complete);
    REQUIRE(report.rows.size() == 2);
    for(const auto &r : report.rows)
    {
        CHECK(r.minimum >= -0.5);
        CHECK(r.maximum <= 1.5);
        CHECK(r.overshoot == doctest::Approx(r.maximum - 1.0));
        CHECK(r.undershoot == doctest::Approx(-r.minimum));
        CHECK(r.layerOffset <= r.h);
    }
    CHECK(read_file("robustness_test.csv") == format_robustness(report));
    std::remove("robustness_test.csv");
}

TEST_CASE("exports")
{
    RunConfig config;
    config.levels = {2};
    config.exportPrefix = "export_test";
    config.exportVtk = true;
    config.exportMatrix = true;
    run_convergence(config);
    const auto vtk = read_file("export_test_level0.vtk");
    CHECK(vtk.rfind("# vtk DataFile Version", 0) == 0);
    CHECK(vtk.find("POINT_DATA 13") != std::string::npos);
    const auto a = read_matrix_market("export_test_level0_matrix.mtx");
    const auto b = read_vector_market("export_test_level0_rhs.mtx");
    CHECK(a.rows() == 13);
    CHECK(b.size() == 13);
    for(const char *f : {"export_test_level0.vtk", "export_test_level0_matrix.mtx", "export_test_level0_rhs.mtx"})
        std::remove(f);

    config.space = SpaceKind::CrouzeixRaviart;
    config.exportMatrix = false;
    run_convergence(config);
    CHECK(read_file("export_test_level0.vtk").find("CELL_DATA 16") != std::string::npos);
    std::remove("export_test_level0.vtk");
}
