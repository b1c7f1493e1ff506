#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nanograting/errors.hpp"
#include "nanograting/io.hpp"

using namespace nanograting;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "nanograting_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("trace CSV round trip") {
  Trace t;
  for (int i = 0; i < 11; ++i) {
    t.positions.push_back(-5e-6 + 1e-6 * i);
    t.intensities.push_back(0.1 * i * i / 100.0 + 1e-17);
  }
  std::stringstream s;
  io::write_trace_csv(s, t, {{"grating", "sinx"}, {"velocity_m_s", "220"}});
  const std::string text = s.str();
  CHECK(text.rfind("# grating = sinx\n", 0) == 0);
  CHECK(text.find("position_m,intensity\n") != std::string::npos);

  const Trace back = io::read_trace_csv(s);
  REQUIRE(back.size() == t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(back.positions[i] == doctest::Approx(t.positions[i]).epsilon(1e-11));
    CHECK(back.intensities[i] == doctest::Approx(t.intensities[i]).epsilon(1e-11));
  }

  const auto path = scratch("trace.csv");
  io::write_trace_csv(path, t);
  CHECK(io::read_trace_csv(path).size() == t.size());
}

TEST_CASE("malformed trace CSV is a configuration error") {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return io::read_trace_csv(in);
  };
  CHECK_THROWS_AS(parse("x,y\n0,1\n1,2\n"), ConfigError);
  CHECK_THROWS_AS(parse("position_m,intensity\n0,1\n"), ConfigError);
  CHECK_THROWS_AS(parse("position_m,intensity\n0,1\n1\n"), ConfigError);
  CHECK_THROWS_AS(parse("position_m,intensity\n0,1\n1,abc\n"), ConfigError);
  CHECK_THROWS_AS(parse("position_m,intensity\n0,1\n1,1\n3,1\n"), ConfigError);
  CHECK_THROWS_AS(parse("position_m,intensity\n1,1\n0,1\n"), ConfigError);
  CHECK_THROWS_AS(parse("position_m,intensity\n0,1\n1,-1\n"), ConfigError);
  CHECK_THROWS_AS(io::read_trace_csv(scratch("missing.csv")), ConfigError);
  CHECK(parse("# c = 1\nposition_m,intensity\n0,1\n1,2\n").size() == 2);
}

TEST_CASE("interferogram binary and sidecar round trip") {
  Interferogram img(4, 3, -2e-6, -500e-6, 1e-6, 2e-6);
  for (std::size_t iy = 0; iy < 3; ++iy)
    for (std::size_t ix = 0; ix < 4; ++ix) img.at(ix, iy) = 0.1 * static_cast<double>(ix) + static_cast<double>(iy);

  const auto sidecar = io::write_interferogram(scratch("img"), img, {{"seed", "7"}});
  CHECK(sidecar.extension() == ".json");
  CHECK(fs::file_size(scratch("img.bin")) == 12 * sizeof(double));

  const auto back = io::read_interferogram(sidecar);
  CHECK(back.same_shape(img));
  CHECK(back.x_min() == img.x_min());
  CHECK(back.y_min() == img.y_min());
  CHECK(back.pitch_y() == img.pitch_y());
  CHECK(back.data() == img.data());

  std::ofstream(scratch("bad.json")) << "{not json";
  CHECK_THROWS_AS(io::read_interferogram(scratch("bad.json")), ConfigError);
  CHECK_THROWS_AS(io::read_interferogram(scratch("nothing.json")), ConfigError);
}

TEST_CASE("interferogram CSV lists the bottom row first") {
  Interferogram img(2, 2, 0.0, 0.0, 1.0, 1.0, {1.0, 2.0, 3.0, 4.0});
  std::ostringstream s;
  io::write_interferogram_csv(s, img);
  const std::string text = s.str();
  CHECK(text.find('1') < text.find('3'));
}

TEST_CASE("report lines are aligned") {
  std::ostringstream s;
  io::write_report(s, {{"a", "1"}, {"long_key", "2"}});
  CHECK(s.str() == "a        = 1\nlong_key = 2\n");
}
