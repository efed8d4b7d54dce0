#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fqcircle/serialization.hpp"

namespace {

using namespace fqcircle;

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

TEST(FormatDouble, RoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, 2.2214414690791831, -1e-300, 6.02214076e23}) {
        EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(LatticeJson, Fields) {
    const auto lat = build_lattice(4, DeformationParameter(1.0));
    const auto j = lattice_to_json(lat);
    EXPECT_EQ(j.at("d").get<int>(), 4);
    EXPECT_EQ(j.at("alpha").get<double>(), 1.0);
    EXPECT_EQ(j.at("sigma").get<double>(), lat.sigma());
    ASSERT_EQ(j.at("angles").size(), 4u);
    EXPECT_EQ(j.at("angles")[3].get<double>(), lat.angle(3));
}

TEST(LatticeCsv, MatchesJsonBitForBit) {
    const auto lat = build_lattice(7, DeformationParameter(2.0));
    const auto j = lattice_to_json(lat);
    std::stringstream csv(lattice_to_csv(lat));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "n,theta");
    std::size_t n = 0;
    while (std::getline(csv, line)) {
        const auto cols = split(line, ',');
        ASSERT_EQ(cols.size(), 2u);
        EXPECT_EQ(std::strtod(cols[1].c_str(), nullptr), j.at("angles")[n].get<double>());
        ++n;
    }
    EXPECT_EQ(n, 7u);
}

TEST(MatrixJson, RoundTrip) {
    const auto lat = build_lattice(5, DeformationParameter(0.5));
    for (const auto& m : {v_operator(lat), l_plus(lat, PhysicalParams(1.1, 0.9, 1.7)), translation_u(5)}) {
        const auto j = matrix_to_json(m);
        EXPECT_EQ(j.at("dim").get<int>(), 5);
        const auto back = matrix_from_json(nlohmann::json::parse(j.dump()));
        EXPECT_EQ(back.role(), m.role());
        EXPECT_EQ(max_abs_difference(back, m), 0.0);
    }
}

TEST(LevelRecords, JsonAndCsvAgree) {
    const auto lat = build_lattice(6, DeformationParameter(3.0));
    const PhysicalParams params(2.0, 0.5, 1.5);
    const auto levels = case_levels(CaseKind::QuarterPeriod, lat, params);
    const auto header = split(levels_csv_header(), ',');
    ASSERT_FALSE(header.empty());
    for (const auto& level : levels) {
        const auto j = nlohmann::json::parse(level_to_json(level, lat, params).dump());
        auto row = level_to_csv_row(level, lat, params);
        if (!row.empty() && row.back() == '\n') row.pop_back();
        const auto cols = split(row, ',');
        ASSERT_EQ(cols.size(), header.size());
        for (std::size_t c = 0; c < header.size(); ++c) {
            const auto& key = header[c];
            std::string cleaned = key;
            if (!cleaned.empty() && cleaned.back() == '\n') cleaned.pop_back();
            if (!j.contains(cleaned) || !j.at(cleaned).is_number_float()) continue;
            EXPECT_EQ(std::strtod(cols[c].c_str(), nullptr), j.at(cleaned).get<double>()) << cleaned;
        }
        EXPECT_EQ(j.at("case"), "quarter");
        EXPECT_EQ(j.at("provenance"), "closed_form");
        EXPECT_NEAR(j.at("energy").get<double>() * params.energy_unit(), j.at("energy_raw").get<double>(),
                    1e-15 * j.at("energy_raw").get<double>() + 1e-300);
    }
}

TEST(ReportSerialization, JsonCsvAndTable) {
    const std::vector<GridPoint> grid = {{3, 1.0}};
    const auto report = run_all_checks(grid, PhysicalParams());
    const auto j = nlohmann::json::parse(report_to_json(report).dump());
    EXPECT_EQ(j.at("overall"), "pass");
    EXPECT_EQ(j.at("checks").size(), check_catalogue().size());
    EXPECT_EQ(j.at("grid")[0].at("d").get<int>(), 3);
    for (const auto& c : j.at("checks")) {
        EXPECT_TRUE(c.contains("relation"));
        EXPECT_TRUE(c.contains("max_residual"));
        EXPECT_TRUE(c.contains("tolerance"));
    }
    const auto csv = report_to_csv(report);
    std::size_t lines = 0;
    for (char ch : csv) lines += ch == '\n';
    EXPECT_EQ(lines, check_catalogue().size() + 1);
    const auto table = report_to_table(report);
    EXPECT_NE(table.find("overall: pass"), std::string::npos);
    EXPECT_NE(table.find("spectral.free_spectrum"), std::string::npos);
}

}  // namespace
