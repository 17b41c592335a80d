#include <doctest.h>

#include <sstream>

#include "predreg/predreg.hpp"
#include "support.hpp"

using namespace predreg;

TEST_SUITE("report") {
  TEST_CASE("fixed-point formatting") {
    CHECK(format_fixed(0.1234567) == "0.123457");
    CHECK(format_fixed(-1e-9) == "0.000000");
    CHECK(format_fixed(std::nan("")) == "NA");
    CHECK(format_optional(std::nullopt) == "NA");
    CHECK(format_fixed(2.5, 2) == "2.50");
  }

  TEST_CASE("cells parse back") {
    CHECK(*parse_cell("0.123457") == 0.123457);
    CHECK_FALSE(parse_cell("NA"));
    CHECK(predreg::testing::error_code_of([] { parse_cell("1.2.3"); }) == ErrorCode::parse);
  }

  TEST_CASE("delimited round trip") {
    DelimitedTable t;
    t.header = {"a", "b", "c"};
    t.rows = {{"x", "1.000000", ""}, {"y", "NA", "-2.5"}};
    std::ostringstream out;
    write_delimited(out, t);
    std::istringstream in(out.str());
    const DelimitedTable back = read_delimited(in);
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK(back.column("c") == 2);
    CHECK(predreg::testing::error_code_of([&] { back.column("d"); }) == ErrorCode::schema);
  }

  TEST_CASE("rmse table flags the minimum per column") {
    RmseReport report;
    report.horizon = 2;
    RmseRow a{"a", {{1, 0.2}, {2, 0.1}}, {{1, 3}, {2, 3}}, 0.15, 6};
    RmseRow b{"b", {{1, 0.1}, {2, 0.3}}, {{1, 3}, {2, 3}}, 0.2, 6};
    report.rows = {a, b};
    report.best_per_horizon = {{1, 1}, {2, 0}};
    report.best_pooled = 0;
    const DelimitedTable t = rmse_table(report);
    CHECK(t.header == std::vector<std::string>{"model", "j1", "j2", "pooled", "records"});
    CHECK(t.rows.back() == std::vector<std::string>{"minimum", "b", "a", "a", ""});
  }

  TEST_CASE("forecast grid round trip") {
    ForecastRun run;
    run.model = "model-1-2";
    run.insample_size = 10;
    run.horizon = 2;
    run.windows = 3;
    for (int r = 1; r <= 3; ++r) {
      for (int j = 1; j <= 2; ++j) {
        run.records.push_back({r, j, static_cast<std::size_t>(10 + r - 1 + j), 0.01 * r + 0.001 * j, 0.02 * j});
      }
    }
    std::ostringstream out;
    write_delimited(out, forecast_grid_table({run}));
    std::istringstream in(out.str());
    const auto back = read_forecast_grid(read_delimited(in), Frequency::quarterly);
    REQUIRE(back.size() == 1);
    CHECK(back[0].insample_size == 10);
    CHECK(back[0].windows == 3);
    CHECK(back[0].horizon == 2);
    CHECK(rmse_pooled(back[0]) == doctest::Approx(rmse_pooled(run)).epsilon(1e-12));
  }
}
