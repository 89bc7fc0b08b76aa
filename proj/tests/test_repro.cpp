#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pcgrad/repro.hpp"

using namespace pcgrad;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("run table") {
  const auto runs = paper_runs();
  CHECK(runs.size() == 16);
  CHECK(runs[6].p.is_infinite());
  CHECK(runs[6].h == 0.1);
  CHECK(runs[6].reported_entries == std::vector<double>{2.517, 19.904, 3.696, 1.398, 1.0, 0.150});
  CHECK(runs[12].iter_exact);
  CHECK(runs[12].reported_iter == 280);
  for (const auto& r : runs) CHECK(r.reported_entries.size() == upper_size(r.order));
  CHECK(runs[14].file_stem() == "4x4-harmonic_pm1_h0.002_l0.1");
}

TEST_CASE("reference matrices") {
  auto m = reference_matrix_4x4();
  CHECK(m.upper()[1] == std::exp(3.0));
  CHECK(m.upper()[5] == 1.0);
  CHECK(to_additive(reference_matrix_3x3()).upper()[0] == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("parallel runs keep table order and are bit-identical") {
  ReproSettings serial;
  ReproSettings parallel;
  parallel.jobs = 4;
  const auto a = run_repro(serial);
  const auto b = run_repro(parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].run.table == b[i].run.table);
    CHECK(a[i].result.best_iter == b[i].result.best_iter);
    REQUIRE(a[i].result.trace.records.size() == b[i].result.trace.records.size());
    for (std::size_t k = 0; k < a[i].result.trace.records.size(); ++k)
      CHECK(a[i].result.trace.records[k].upper == b[i].result.trace.records[k].upper);
    for (double d : a[i].deviations) CHECK(d >= 0.0);
  }

  const auto dir = std::filesystem::temp_directory_path() / "pcgrad_repro_test";
  std::filesystem::remove_all(dir);
  write_repro_outputs(dir / "one", a);
  write_repro_outputs(dir / "two", b);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir / "one")) {
    ++files;
    CHECK(slurp(entry.path()) == slurp(dir / "two" / entry.path().filename()));
  }
  CHECK(files == 17);
  CHECK(std::filesystem::exists(dir / "one" / "08_4x4-max_pinf_h0.01_l0.001.csv"));

  std::ostringstream table;
  print_repro_table(table, a);
  CHECK(table.str().find("2.517 19.904 3.696 1.398 1.000 0.150") != std::string::npos);
  CHECK(table.str().find("(=280)") != std::string::npos);
  std::filesystem::remove_all(dir);
}
