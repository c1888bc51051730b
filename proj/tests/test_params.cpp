#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "mirrorsim/params.hpp"
#include "test_support.hpp"

using namespace mirrorsim;

TEST_SUITE("params") {

TEST_CASE("a fully specified atom passes validation unchanged") {
  const AtomParams p = validate(testutil::reference_atom());
  CHECK(p.omega1 == 10.0);
  CHECK(p.omega2 == 5.0);
  CHECK(p.delta1 == 2.0);
  CHECK(p.delta2 == 0.0);
  CHECK(p.gamma1 == 15.1);
  CHECK(p.gamma2 == 5.4);
}

TEST_CASE("zero Rabi frequencies and zero detunings are legal") {
  AtomParams p;  // all drives off, unit rates
  CHECK_NOTHROW(validate(p));
}

TEST_CASE("non-positive decay rates are rejected") {
  AtomParams p = testutil::reference_atom();
  p.gamma1 = 0.0;
  CHECK_SIM_ERROR(validate(p), Errc::NonPositiveRate);
  p.gamma1 = -3.0;
  CHECK_SIM_ERROR(validate(p), Errc::NonPositiveRate);
  p = testutil::reference_atom();
  p.gamma2 = 0.0;
  CHECK_SIM_ERROR(validate(p), Errc::NonPositiveRate);
}

TEST_CASE("negative Rabi frequencies are rejected") {
  AtomParams p = testutil::reference_atom();
  p.omega1 = -1e-9;
  CHECK_SIM_ERROR(validate(p), Errc::NegativeRabi);
  p = testutil::reference_atom();
  p.omega2 = -5.0;
  CHECK_SIM_ERROR(validate(p), Errc::NegativeRabi);
}

TEST_CASE("non-finite parameters are rejected before any range check") {
  AtomParams p = testutil::reference_atom();
  p.delta1 = std::numeric_limits<double>::quiet_NaN();
  CHECK_SIM_ERROR(validate(p), Errc::NonFinite);
  p = testutil::reference_atom();
  p.omega1 = std::numeric_limits<double>::infinity();
  CHECK_SIM_ERROR(validate(p), Errc::NonFinite);
  p = testutil::reference_atom();
  p.gamma1 = -std::numeric_limits<double>::infinity();
  CHECK_SIM_ERROR(validate(p), Errc::NonFinite);  // finiteness wins over sign
}

TEST_CASE("mirror geometry validation") {
  MirrorConfig cfg;  // defaults: r = 5 wavelengths, k31 = 2*pi
  CHECK_NOTHROW(validate(cfg));
  CHECK(cfg.k31r() == doctest::Approx(10.0 * std::numbers::pi).epsilon(1e-15));

  cfg.r = 0.0;
  CHECK_SIM_ERROR(validate(cfg), Errc::NonPositiveDistance);
  cfg.r = -2.0;
  CHECK_SIM_ERROR(validate(cfg), Errc::NonPositiveDistance);

  cfg = MirrorConfig{};
  cfg.k31 = 0.0;
  CHECK_SIM_ERROR(validate(cfg), Errc::NonPositiveDistance);

  cfg = MirrorConfig{};
  cfg.r = std::numeric_limits<double>::quiet_NaN();
  CHECK_SIM_ERROR(validate(cfg), Errc::NonFinite);

  cfg = MirrorConfig{};
  cfg.dipole_parallel = false;
  CHECK_SIM_ERROR(validate(cfg), Errc::InvalidConfig);
}

TEST_CASE("quarter-wavelength mirror distance gives k31*r = pi/2") {
  const MirrorConfig cfg{.r = 0.25};
  CHECK(cfg.k31r() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
}

TEST_CASE("lens projection distance f^2/R") {
  // 12.5 mm focal length at 250 mm from the mirror: image 625 um past focus.
  CHECK(effective_image_distance_um({12.5, 250.0}) == 625.0);
  CHECK(effective_image_distance_um({20.0, 400.0}) == 1000.0);
  CHECK(effective_image_distance_um({12.5, 500.0}) == 312.5);

  // Quadratic in f: doubling the focal length quadruples the offset.
  const double base = effective_image_distance_um({7.0, 300.0});
  CHECK(effective_image_distance_um({14.0, 300.0}) == doctest::Approx(4.0 * base).epsilon(1e-15));

  // Inverse in R.
  CHECK(effective_image_distance_um({12.5, 500.0}) ==
        doctest::Approx(effective_image_distance_um({12.5, 250.0}) / 2.0).epsilon(1e-15));
}

TEST_CASE("lens geometry invariants") {
  CHECK_SIM_ERROR(effective_image_distance_um({0.0, 250.0}), Errc::NonPositiveDistance);
  CHECK_SIM_ERROR(effective_image_distance_um({-1.0, 250.0}), Errc::NonPositiveDistance);
  CHECK_SIM_ERROR(effective_image_distance_um({12.5, 0.0}), Errc::NonPositiveDistance);
  CHECK_SIM_ERROR(effective_image_distance_um({12.5, 12.5}), Errc::InvalidLens);
  CHECK_SIM_ERROR(effective_image_distance_um({250.0, 12.5}), Errc::InvalidLens);
  CHECK_SIM_ERROR(effective_image_distance_um(
                      {std::numeric_limits<double>::quiet_NaN(), 250.0}),
                  Errc::NonFinite);
}

TEST_CASE("key=value files: comments, blanks, overrides") {
  const auto path = std::filesystem::temp_directory_path() / "mirrorsim_params_ok.cfg";
  {
    std::ofstream out(path);
    out << "# laser powers\n"
        << "omega1 = 10.0\n"
        << "  omega2=5\n"
        << "\n"
        << "delta1 = 2.0  # MHz\n"
        << "r = 4.75\n"
        << "omega1 = 12.5\n";  // later line wins
  }
  const auto values = read_key_value_file(path);
  REQUIRE(values.size() == 4);
  CHECK(values.at("omega1") == 12.5);
  CHECK(values.at("omega2") == 5.0);
  CHECK(values.at("delta1") == 2.0);
  CHECK(values.at("r") == 4.75);
  std::filesystem::remove(path);
}

TEST_CASE("key=value files: malformed input") {
  const auto path = std::filesystem::temp_directory_path() / "mirrorsim_params_bad.cfg";

  auto write = [&](const char* text) {
    std::ofstream out(path);
    out << text;
  };

  write("omega1 10.0\n");  // missing '='
  CHECK_SIM_ERROR(read_key_value_file(path), Errc::InvalidConfig);

  write("omega1 = ten\n");
  CHECK_SIM_ERROR(read_key_value_file(path), Errc::InvalidConfig);

  write("omega1 = 10.0 extra\n");
  CHECK_SIM_ERROR(read_key_value_file(path), Errc::InvalidConfig);

  write("= 10.0\n");
  CHECK_SIM_ERROR(read_key_value_file(path), Errc::InvalidConfig);

  write("omega1 =\n");
  CHECK_SIM_ERROR(read_key_value_file(path), Errc::InvalidConfig);

  std::filesystem::remove(path);
  CHECK_SIM_ERROR(read_key_value_file(path), Errc::IoFailure);  // gone now
}

}  // TEST_SUITE
