#include <gtest/gtest.h>

#include <cstring>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "hexnet/params.hpp"
#include "support.hpp"

using namespace hexnet;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string shipped_config() { return read_file(std::string(HEXNET_SOURCE_DIR) + "/configs/table3.conf"); }

// Replaces the value of one key line in a config document.
std::string with_line(const std::string& doc, const std::string& key, const std::string& line) {
  std::regex re("(^|\\n)" + key + " *=[^\\n]*");
  return std::regex_replace(doc, re, "$1" + line);
}

ConfigError::Kind load_error(const std::string& doc) {
  try {
    load_config(doc);
  } catch (const ConfigError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "document loaded without error";
  return ConfigError::Kind::Malformed;
}

}  // namespace

TEST(Params, ShippedConfigMatchesReferenceScenario) {
  const auto cfg = load_config(shipped_config());
  EXPECT_EQ(cfg.geometry.r_d, 80.0);
  EXPECT_EQ(cfg.geometry.N_A, 20);
  EXPECT_EQ(cfg.geometry.delta_T, 0.8);
  EXPECT_EQ(cfg.radio.k_a, 0.07512);
  EXPECT_EQ(cfg.geometry.n_thz(), 16);
  EXPECT_EQ(cfg, table3_config());
}

TEST(Params, UnitSuffixesConvertToSi) {
  const auto cfg = load_config(shipped_config());
  EXPECT_NEAR(cfg.radio.P_T, 3.1622776601683795e-3, 1e-18);
  EXPECT_NEAR(cfg.antenna.g_T_max, 316.22776601683796, 1e-12);
  EXPECT_NEAR(cfg.antenna.phi_T, 0.17453292519943295, 1e-16);
  EXPECT_EQ(cfg.radio.theta, 1.0);
}

TEST(Params, NonIntegerThzCountRejected) {
  EXPECT_EQ(load_error(with_line(shipped_config(), "delta_T", "delta_T = 0.33")), ConfigError::Kind::NonIntegerThzCount);
  EXPECT_NO_THROW(load_config(with_line(shipped_config(), "delta_T", "delta_T = 0.35")));
}

TEST(Params, OffsetBeyondDiskRejected) {
  EXPECT_EQ(load_error(with_line(shipped_config(), "v_0", "v_0 = 81")), ConfigError::Kind::OutOfRange);
}

TEST(Params, MalformedDocuments) {
  const auto doc = shipped_config();
  EXPECT_EQ(load_error(with_line(doc, "k_a", "# removed")), ConfigError::Kind::MissingKey);
  EXPECT_EQ(load_error(doc + "\n[radio]\nbogus = 1\n"), ConfigError::Kind::UnknownKey);
  EXPECT_EQ(load_error(doc + "\n[radio]\nk_a = 0.1\n"), ConfigError::Kind::Malformed);
  EXPECT_EQ(load_error(with_line(doc, "k_a", "k_a = fast")), ConfigError::Kind::Malformed);
  EXPECT_EQ(load_error(with_line(doc, "m_L", "m_L = 1.5")), ConfigError::Kind::Malformed);
  EXPECT_EQ(load_error(with_line(doc, "m_L", "m_L = 11")), ConfigError::Kind::OutOfRange);
  EXPECT_EQ(load_error(with_line(doc, "alpha_N", "alpha_N = 1.5")), ConfigError::Kind::OutOfRange);
  EXPECT_EQ(load_error(with_line(doc, "h_A", "h_A = 1.0")), ConfigError::Kind::OutOfRange);
}

TEST(Params, ErrorNamesOffendingKey) {
  try {
    load_config(with_line(shipped_config(), "v_0", "v_0 = 81"));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "v_0");
  }
}

TEST(Params, DerivedConstants) {
  const auto dc = derived_constants(table3_config());
  const double pi = 3.14159265358979323846;
  const double r = 3e8 / (4 * pi * 2.1e9);
  EXPECT_NEAR(dc.gamma_R, r * r, 1e-18);
  EXPECT_NEAR(dc.gamma_R, 1.29236e-4, 1e-9);
  EXPECT_NEAR(dc.beta, 0.012774, 1e-6);
  EXPECT_NEAR(dc.beta, 2 * 0.3 * 0.22 * 0.3 / 3.1, 1e-15);
  EXPECT_NEAR(dc.delta_h, 3.1, 1e-15);

  auto c = table3_config();
  c.blockage.h_B = c.geometry.h_U;
  EXPECT_EQ(derived_constants(c).beta, 0.0);
}

TEST(Params, DerivedConstantsArePure) {
  const auto a = derived_constants(table3_config());
  const auto b = derived_constants(table3_config());
  EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
}

TEST(Params, DecibelRoundTrip) {
  for (double x : {-120.0, -3.7, 0.0, 0.5, 42.0, 300.0}) EXPECT_NEAR(to_db(from_db(x)), x, 1e-12 * std::abs(x) + 1e-15);
  for (double x : {1e-9, 0.25, 1.0, 1e6}) EXPECT_NEAR(from_db(to_db(x)), x, 1e-12 * x);
}

TEST(Params, SerializeRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto cfg = support::random_config(rng);
    EXPECT_EQ(load_config(serialize_config(cfg)), cfg);
  }
  const auto reloaded = load_config(shipped_config());
  EXPECT_EQ(load_config(serialize_config(reloaded)), reloaded);
}
