#include <catch2/catch_amalgamated.hpp>

#include "kpiforge/data/dataset.hpp"
#include "kpiforge/error.hpp"
#include "kpiforge/olap/cube.hpp"
#include "kpiforge/olap/json_io.hpp"
#include "kpiforge/storage.hpp"
#include "../support/paths.hpp"
#include "../support/properties.hpp"

using namespace kpiforge;
using namespace kpiforge::olap;
using Catch::Approx;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::io;
}

std::shared_ptr<const data::Dataset> fixture() {
  return std::make_shared<const data::Dataset>(data::load_csv(
      read_file(testing::data_path("fixtures/academic_synthetic.csv")), "academic"));
}

}  // namespace

TEST_CASE("build_cube validation") {
  const auto ds = fixture();
  const auto cube = build_cube(ds, {"Course", "State", "No_of_Sem"}, {"CGPA", "Projects"});
  CHECK(cube.facts().size() == 50);
  REQUIRE(cube.dimensions().size() == 3);
  CHECK(cube.dimensions()[0].levels == std::vector<std::string>{"M.Tech", "MCA", "B.Tech"});
  CHECK(cube.find_dimension("State") != nullptr);
  CHECK(cube.find_dimension("CGPA") == nullptr);

  CHECK(code_of([&] { build_cube(ds, {}, {"CGPA"}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { build_cube(ds, {"Course"}, {}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { build_cube(ds, {"Course", "Course"}, {"CGPA"}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { build_cube(ds, {"Course"}, {"CGPA", "CGPA"}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { build_cube(ds, {"Course", "Projects"}, {"Projects"}); }) == ErrorCode::overlap);
  CHECK(code_of([&] { build_cube(ds, {"Nope"}, {"CGPA"}); }) == ErrorCode::unknown_column);
  CHECK(code_of([&] { build_cube(ds, {"Course"}, {"Nope"}); }) == ErrorCode::unknown_column);
  CHECK(code_of([&] { build_cube(ds, {"CGPA"}, {"Projects"}); }) == ErrorCode::too_many_levels);
  CHECK(code_of([&] { build_cube(ds, {"Course"}, {"State"}); }) == ErrorCode::kind_mismatch);
}

TEST_CASE("slice on the fixture matches the published M.Tech figures") {
  const auto ds = fixture();
  const auto cube = build_cube(ds, {"Course"}, {"CGPA"});
  const auto mtech = slice(cube, Filter{"Course", "M.Tech"});
  CHECK(mtech.facts().size() == 16);
  const auto agg = aggregate(mtech, "CGPA");
  REQUIRE(agg.rows.size() == 1);
  CHECK_FALSE(agg.rows[0].group.has_value());
  CHECK(agg.rows[0].count == 16);
  CHECK(*agg.rows[0].sum == Approx(119.07).epsilon(1e-12));
  CHECK(*agg.rows[0].mean == Approx(7.441875).epsilon(1e-12));
  CHECK(*agg.rows[0].min == 4.87);
  CHECK(*agg.rows[0].max == 10.0);
  CHECK(cube.facts().size() == 50);  // parent untouched

  CHECK(code_of([&] { slice(cube, Filter{"State", "Delhi"}); }) == ErrorCode::unknown_dimension);
  CHECK(code_of([&] { slice(cube, Filter{"Course", "PhD"}); }) == ErrorCode::unknown_level);
  CHECK(code_of([&] { slice(cube, SliceSpec{}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] {
          dice(cube, SliceSpec{{{"Course", "MCA"}, {"Course", "M.Tech"}}});
        }) == ErrorCode::invalid_argument);
}

TEST_CASE("grouped aggregate lists every level, including empty ones") {
  const auto ds = fixture();
  const auto cube = build_cube(ds, {"Course", "State"}, {"CGPA"});
  const auto view = slice(cube, Filter{"Course", "MCA"});
  const auto by_course = aggregate(view, "CGPA", "Course");
  REQUIRE(by_course.rows.size() == 3);
  CHECK(by_course.rows[0].group == "M.Tech");
  CHECK(by_course.rows[0].count == 0);
  CHECK_FALSE(by_course.rows[0].sum.has_value());
  CHECK(by_course.rows[1].group == "MCA");
  CHECK(by_course.rows[1].count == 10);

  const auto json = aggregate_to_json(by_course);
  CHECK(json.at("group_by") == "Course");
  CHECK(json.at("rows")[0].at("sum").is_null());
  CHECK(json.at("rows")[1].at("count") == 10);

  CHECK(code_of([&] { aggregate(cube, "Nope"); }) == ErrorCode::unknown_column);
  CHECK(code_of([&] { aggregate(cube, "CGPA", "Projects"); }) == ErrorCode::unknown_dimension);
}

TEST_CASE("missing dimension cells: excluded from slices, kept in totals") {
  const auto ds = std::make_shared<const data::Dataset>(
      data::load_csv("d,m\na,1\n,2\nb,3\na,\n", "t"));
  const auto cube = build_cube(ds, {"d"}, {"m"});
  const auto all = aggregate(cube, "m");
  CHECK(all.rows[0].count == 3);
  CHECK(*all.rows[0].sum == 6.0);
  const auto grouped = aggregate(cube, "m", "d");
  REQUIRE(grouped.rows.size() == 3);
  CHECK(grouped.rows[0].group == "a");
  CHECK(grouped.rows[0].count == 1);
  CHECK(grouped.rows[1].group == "b");
  CHECK_FALSE(grouped.rows[2].group.has_value());
  CHECK(grouped.rows[2].count == 1);
  CHECK(*grouped.rows[2].sum == 2.0);
  CHECK(slice(cube, Filter{"d", "a"}).facts() == std::vector<std::size_t>{0, 3});
}

TEST_CASE("roll_up and empty cubes") {
  const auto ds = fixture();
  const auto cube = build_cube(ds, {"Course", "State"}, {"CGPA"});
  const auto rolled = roll_up(cube, "State");
  CHECK(rolled.dimensions().size() == 1);
  CHECK(rolled.facts() == cube.facts());
  CHECK(aggregate(rolled, "CGPA").rows[0].sum == aggregate(cube, "CGPA").rows[0].sum);
  const auto none = roll_up(rolled, "Course");
  CHECK(none.dimensions().empty());
  CHECK(aggregate(none, "CGPA").rows[0].count == 50);
  CHECK(code_of([&] { roll_up(cube, "Nope"); }) == ErrorCode::unknown_dimension);

  CHECK(dice(cube, SliceSpec{{{"Course", "MCA"}, {"State", "Delhi"}}}).facts().size() == 2);
  // A level with no facts after dicing still slices cleanly to nothing.
  const auto mtech = slice(cube, Filter{"Course", "M.Tech"});
  const auto nothing = slice(mtech, Filter{"Course", "MCA"});
  CHECK(nothing.facts().empty());
  CHECK(aggregate(nothing, "CGPA").rows.empty());
  CHECK(aggregate(nothing, "CGPA", "Course").rows.empty());
}

TEST_CASE("slice/dice oracle on the fixture") {
  const auto r = testing::slice_dice_oracle(*fixture(), {"Course", "State", "No_of_Sem", "Regularity"},
                                            {"CGPA", "Projects", "Research_Work"});
  INFO(r.first_failure);
  CHECK(r.cases > 100);
  CHECK(r.ok());
}

TEST_CASE("slice/dice oracle on random fixtures up to 200 rows") {
  for (std::size_t rows : {0u, 1u, 7u, 60u, 200u}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto ds = testing::random_cube_fixture(rows, seed * 1000 + rows);
      const auto r =
          testing::slice_dice_oracle(ds, {"Course", "State", "Semester"}, {"Score", "Credits"});
      INFO("rows " << rows << " seed " << seed << ": " << r.first_failure);
      CHECK(r.ok());
    }
  }
}

TEST_CASE("cube json lists dimensions and levels") {
  const auto cube = build_cube(fixture(), {"Course"}, {"CGPA"});
  const auto j = cube_to_json(cube);
  CHECK(j.at("fact_count") == 50);
  CHECK(j.at("dimensions")[0].at("name") == "Course");
  CHECK(j.at("dimensions")[0].at("levels").size() == 3);
  CHECK(j.at("measures")[0] == "CGPA");
}
