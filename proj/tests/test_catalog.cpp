#include "wittkit/catalog.hpp"
#include "wittkit/json_io.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

using namespace wittkit;
using json_io::Json;

namespace {

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void expect_signal(const std::function<void()>& f, Signal s) {
  try {
    f();
    ADD_FAILURE() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.signal(), s) << e.what();
  }
}

}  // namespace

TEST(Catalog, NamesAreUniqueAndCanonical) {
  auto names = catalog::catalog_list();
  std::set<std::string> seen(names.begin(), names.end());
  EXPECT_EQ(seen.size(), names.size());
  for (const auto& n : names) {
    auto e = catalog::catalog_get(n);
    EXPECT_EQ(e.name, n);
    EXPECT_FALSE(e.summary.empty());
    EXPECT_FALSE(e.provenance.empty());
  }
  EXPECT_EQ(catalog::catalog_all().size(), names.size());
}

TEST(Catalog, ParametricEntries) {
  EXPECT_EQ(std::get<spaces::CurveDescriptor>(catalog::catalog_get("curve?g=5").descriptor).genus, 5u);
  auto a = std::get<spaces::CurveDescriptor>(catalog::catalog_get("affine_curve?g=4&n=7").descriptor);
  EXPECT_EQ(a.punctures, 7u);
  EXPECT_FALSE(a.projective);
  EXPECT_EQ(std::get<spaces::SurfaceDescriptor>(catalog::catalog_get("k3?rho=13").descriptor).rho, 13u);
  EXPECT_EQ(std::get<spaces::SurfaceDescriptor>(catalog::catalog_get("ruled?g=3&b1=6").descriptor).b1, 6u);
  EXPECT_EQ(catalog::catalog_get("p1").descriptor, catalog::catalog_get("curve?g=0").descriptor);
}

TEST(Catalog, UnknownNames) {
  for (const char* bad : {"quintic", "k3?rho=21", "k3", "curve?g=9", "curve?g=1&h=2", "curve?g=x",
                          "affine_curve?g=1&n=0", "curve?g=1&g=1", "curve?=1"})
    expect_signal([&] { catalog::catalog_get(bad); }, Signal::UnknownName);
}

TEST(Catalog, DescriptorsRoundTripThroughJson) {
  for (const auto& e : catalog::catalog_all()) {
    const std::string text = json_io::to_json(e.descriptor).dump();
    auto back = json_io::space_from_text(text);
    EXPECT_EQ(back, e.descriptor) << e.name;
    EXPECT_EQ(json_io::to_json(back).dump(), text);
  }
}

TEST(Catalog, SampleFilesMatchTheCatalog) {
  const std::string dir = std::string(WITTKIT_SOURCE_DIR) + "/data/";
  const std::pair<const char*, const char*> files[] = {
      {"point.json", "point"},        {"p1.json", "p1"},
      {"curve_g_2.json", "curve?g=2"}, {"affine_curve_g_1_n_2.json", "affine_curve?g=1&n=2"},
      {"p2.json", "p2"},              {"blowup_p2.json", "blowup_p2"},
      {"enriques.json", "enriques"},  {"k3_rho_20.json", "k3?rho=20"}};
  for (const auto& [file, name] : files)
    EXPECT_EQ(json_io::space_from_text(read(dir + file)), catalog::catalog_get(name).descriptor) << file;
}

TEST(Catalog, MalformedDescriptors) {
  expect_signal([] { json_io::space_from_text("{"); }, Signal::ParseError);
  expect_signal([] { json_io::space_from_text("[]"); }, Signal::ParseError);
  expect_signal([] { json_io::space_from_text(R"({"kind":"threefold"})"); }, Signal::ParseError);
  expect_signal([] { json_io::space_from_text(R"({"kind":"curve","projective":true,"genus":-1,"punctures":0})"); },
                Signal::ParseError);
  expect_signal([] { json_io::space_from_text(R"({"kind":"curve","projective":"yes","genus":1,"punctures":0})"); },
                Signal::ParseError);
  expect_signal([] { json_io::space_from_text(R"({"kind":"curve","projective":true,"genus":1,"punctures":2})"); },
                Signal::InconsistentDescriptor);

  Json p2 = json_io::to_json(catalog::catalog_get("p2").descriptor);
  Json bad = p2;
  bad["sq2"] = Json::array({Json::array({2})});
  expect_signal([&] { json_io::space_from_json(bad); }, Signal::ParseError);
  bad = p2;
  bad["h_int"][2] = "Z^";
  expect_signal([&] { json_io::space_from_json(bad); }, Signal::ParseError);
  bad = p2;
  bad["rho"] = 4;
  expect_signal([&] { json_io::space_from_json(bad); }, Signal::InconsistentDescriptor);
  bad = p2;
  bad.erase("pi2");
  expect_signal([&] { json_io::space_from_json(bad); }, Signal::ParseError);
}

TEST(Catalog, SuppliedSquaringSurvivesRoundTrip) {
  Json k3 = json_io::to_json(catalog::catalog_get("k3?rho=2").descriptor);
  ASSERT_TRUE(k3.contains("s1"));
  EXPECT_EQ(k3["s1"].dump(), "[[0,0]]");
  Json p2 = json_io::to_json(catalog::catalog_get("p2").descriptor);
  EXPECT_FALSE(p2.contains("s1"));
}
