#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <thread>

#include "fixtures.hpp"
#include "httplib.h"
#include "json.hpp"
#include "simulatar/error.hpp"
#include "simulatar/image.hpp"
#include "simulatar/pipeline.hpp"
#include "simulatar/service.hpp"

namespace simulatar {
namespace {

using nlohmann::json;
using ::testing::HasSubstr;
namespace fs = std::filesystem;

std::string png_bytes(const RgbaImage& image) {
  const auto bytes = encode_png(image);
  return {bytes.begin(), bytes.end()};
}

// Two 10-frame 64x36 clips on a small camera; service on an ephemeral port.
class ServiceTest : public ::testing::Test {
 protected:
  testing::TempDir dir;
  std::unique_ptr<Service> service;
  std::unique_ptr<httplib::Client> client;

  void SetUp() override {
    ::unsetenv("SIMULATAR_TRANSCODER");
    testing::write_asset_library(
        dir / "assets", {{.id = "office", .frames = 10, .lux = 250.0, .camera = "test-cam"},
                         {.id = "street",
                          .frames = 10,
                          .lux = 10000.0,
                          .camera = "test-cam",
                          .location = "outdoor",
                          .mobility = "walking"}});
    testing::write_text(dir / "profiles.json", testing::camera_config_json("test-cam", 64, 36));
    start();
  }

  ServiceConfig config() const {
    ServiceConfig c;
    c.assets_dir = dir / "assets";
    c.data_dir = dir / "data";
    c.config_path = dir / "profiles.json";
    c.workers = 2;
    return c;
  }

  void start(std::optional<ServiceConfig> c = std::nullopt) {
    client.reset();
    service.reset();
    service = std::make_unique<Service>(c ? *c : config());
    const int port = service->start_background();
    client = std::make_unique<httplib::Client>("127.0.0.1", port);
    client->set_read_timeout(30, 0);
    client->set_write_timeout(30, 0);
  }

  static json body_of(const httplib::Result& r) { return json::parse(r->body); }

  std::string upload_design(const RgbaImage& image) {
    const httplib::MultipartFormDataItems items = {
        {"file", png_bytes(image), "d.png", "image/png"}};
    const auto r = client->Post("/api/designs", items);
    EXPECT_TRUE(r);
    EXPECT_EQ(r->status, 201) << r->body;
    return body_of(r)["id"].get<std::string>();
  }

  std::string upload_card() {
    return upload_design(testing::solid_design(1440, 936, 240, 240, 240, 220));
  }

  httplib::Result post_json(const std::string& path, const json& body) {
    return client->Post(path, body.dump(), "application/json");
  }

  std::string submit(const json& body) {
    const auto r = post_json("/api/jobs", body);
    EXPECT_TRUE(r);
    EXPECT_EQ(r->status, 201) << r->body;
    return body_of(r)["id"].get<std::string>();
  }

  json wait_for(const std::string& job_id) {
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(60);
    while (std::chrono::steady_clock::now() < deadline) {
      const auto r = client->Get("/api/jobs/" + job_id);
      if (!r || r->status != 200) return {};
      const json doc = body_of(r);
      if (doc["state"] == "done" || doc["state"] == "failed") return doc;
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    return {};
  }
};

TEST_F(ServiceTest, ListsContexts) {
  const auto r = client->Get("/api/contexts");
  ASSERT_TRUE(r);
  ASSERT_EQ(r->status, 200);
  EXPECT_THAT(r->get_header_value("Content-Type"), HasSubstr("application/json"));
  const json list = body_of(r);
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[0]["id"], "office");
  EXPECT_EQ(list[0]["frame_count"], 10);
  EXPECT_EQ(list[0]["lighting_class"], "low");
  EXPECT_EQ(list[1]["id"], "street");
  EXPECT_EQ(list[1]["location"], "outdoor");
  EXPECT_EQ(list[1]["lighting_class"], "high");

  const auto thumb = client->Get(list[1]["thumbnail"].get<std::string>());
  ASSERT_TRUE(thumb);
  EXPECT_EQ(thumb->status, 200);
  EXPECT_EQ(thumb->get_header_value("Content-Type"), "image/png");
  EXPECT_EQ(client->Get("/api/contexts/nowhere/thumbnail.png")->status, 404);
}

TEST_F(ServiceTest, EmptyAssetLibrary) {
  ServiceConfig c = config();
  c.assets_dir = dir / "empty";
  fs::create_directories(c.assets_dir);
  start(c);
  const auto r = client->Get("/api/contexts");
  ASSERT_TRUE(r);
  EXPECT_EQ(body_of(r), json::array());
}

TEST_F(ServiceTest, ListsProfiles) {
  const json doc = body_of(client->Get("/api/profiles"));
  std::vector<std::string> ids;
  for (const auto& p : doc["hmd_profiles"]) ids.push_back(p["id"]);
  EXPECT_THAT(ids, ::testing::IsSupersetOf({"hl2", "nreal-light"}));
  std::vector<std::string> cams;
  for (const auto& p : doc["camera_profiles"]) cams.push_back(p["id"]);
  EXPECT_THAT(cams, ::testing::Contains("test-cam"));
}

TEST_F(ServiceTest, ProfileOverridesAreServed) {
  testing::write_text(dir / "profiles.json",
                      R"({"hmd_profiles": {"hl2": {"transmittance": 0.55}},
                          "camera_profiles": {"test-cam": {"frame_resolution": [64, 36],
                            "diagonal_fov_deg": 95, "aspect": [16, 9], "fps": 50}}})");
  start();
  for (const auto& p : body_of(client->Get("/api/profiles"))["hmd_profiles"])
    if (p["id"] == "hl2") {
      EXPECT_DOUBLE_EQ(p["transmittance"].get<double>(), 0.55);
    }
}

TEST_F(ServiceTest, MalformedConfigPreventsStartup) {
  testing::write_text(dir / "profiles.json", "{\"hmd_profiles\": {");
  ServiceConfig c = config();
  EXPECT_THROW(Service{c}, ConfigError);
}

TEST_F(ServiceTest, SchemaDescribesEndpoints) {
  const json doc = body_of(client->Get("/api/schema"));
  EXPECT_GE(doc["endpoints"].size(), 8u);
}

TEST_F(ServiceTest, DesignUploads) {
  const auto ok = client->Post(
      "/api/designs", httplib::MultipartFormDataItems{
                          {"file", png_bytes(testing::solid_design(1440, 936, 1, 2, 3, 255)),
                           "card.png", "image/png"}});
  ASSERT_TRUE(ok);
  ASSERT_EQ(ok->status, 201) << ok->body;
  EXPECT_EQ(body_of(ok)["width"], 1440);
  EXPECT_EQ(body_of(ok)["height"], 936);
  EXPECT_EQ(body_of(ok)["has_mask"], false);

  const auto text = client->Post(
      "/api/designs",
      httplib::MultipartFormDataItems{{"file", "hello, world", "a.txt", "text/plain"}});
  ASSERT_TRUE(text);
  EXPECT_EQ(text->status, 415);
  EXPECT_EQ(body_of(text)["error"], "unsupported_media_type");

  const auto bad_mask = client->Post(
      "/api/designs",
      httplib::MultipartFormDataItems{
          {"file", png_bytes(testing::solid_design(1440, 936, 1, 2, 3, 255)), "card.png",
           "image/png"},
          {"mask", png_bytes(testing::solid_design(10, 10, 0, 0, 0, 255)), "m.png", "image/png"}});
  ASSERT_TRUE(bad_mask);
  EXPECT_EQ(bad_mask->status, 422);
}

TEST_F(ServiceTest, OversizeUploadIsRejected) {
  const std::string big(50u << 20, 'x');
  const auto r = client->Post(
      "/api/designs", httplib::MultipartFormDataItems{{"file", big, "big.png", "image/png"}});
  ASSERT_TRUE(r) << httplib::to_string(r.error());
  EXPECT_EQ(r->status, 413);
}

TEST_F(ServiceTest, JobRunsToCompletion) {
  const std::string design = upload_card();
  const auto created = post_json(
      "/api/jobs",
      {{"context_id", "office"}, {"profile_id", "hl2"}, {"design_id", design}, {"lux", 400}});
  ASSERT_TRUE(created);
  ASSERT_EQ(created->status, 201) << created->body;
  const std::string id = body_of(created)["id"];
  EXPECT_EQ(created->get_header_value("Location"), "/api/jobs/" + id);

  const json done = wait_for(id);
  ASSERT_EQ(done["state"], "done") << done.dump();
  EXPECT_EQ(done["progress"]["done"], 10);
  EXPECT_EQ(done["progress"]["total"], 10);
  const auto frame = client->Get("/api/jobs/" + id + "/frames/10.png");
  ASSERT_TRUE(frame);
  EXPECT_EQ(frame->status, 200);
  EXPECT_EQ(frame->get_header_value("Content-Type"), "image/png");
  EXPECT_EQ(decode_png_rgb(std::vector<std::uint8_t>(frame->body.begin(), frame->body.end())).width,
            64);
  EXPECT_EQ(client->Get("/api/jobs/" + id + "/frames/11.png")->status, 404);
  // No transcoder configured: frames only.
  EXPECT_EQ(client->Get("/api/jobs/" + id + "/video")->status, 404);
  EXPECT_TRUE(fs::exists(dir / "data/jobs" / id / "frames" / kSidecarName));
}

TEST_F(ServiceTest, JobRequestValidation) {
  const std::string design = upload_card();
  const json base = {{"context_id", "office"}, {"profile_id", "hl2"}, {"design_id", design}};
  auto with = [&](const char* key, json value) {
    json b = base;
    b[key] = std::move(value);
    return post_json("/api/jobs", b)->status;
  };
  EXPECT_EQ(with("design_id", "missing"), 404);
  EXPECT_EQ(with("context_id", "mars"), 404);
  EXPECT_EQ(with("profile_id", "vision-pro"), 404);
  EXPECT_EQ(with("lux", -5), 422);
  EXPECT_EQ(with("lux", "bright"), 422);
  EXPECT_EQ(with("mode", "multiply"), 422);
  EXPECT_EQ(client->Post("/api/jobs", "{not json", "application/json")->status, 400);
  EXPECT_EQ(client->Get("/api/jobs/doesnotexist")->status, 404);
}

TEST_F(ServiceTest, ConcurrentJobsAreIsolated) {
  const std::string design = upload_card();
  const std::string a =
      submit({{"context_id", "office"}, {"profile_id", "hl2"}, {"design_id", design}});
  const std::string wide = upload_design(testing::solid_design(1920, 1080, 20, 200, 90, 255));
  const std::string b = submit({{"context_id", "street"},
                                {"profile_id", "nreal-light"},
                                {"design_id", wide},
                                {"mode", "alpha-over"}});
  ASSERT_NE(a, b);
  ASSERT_EQ(wait_for(a)["state"], "done");
  ASSERT_EQ(wait_for(b)["state"], "done");
  const auto fa = client->Get("/api/jobs/" + a + "/frames/1.png");
  const auto fb = client->Get("/api/jobs/" + b + "/frames/1.png");
  EXPECT_NE(fa->body, fb->body);
  const json sa = json::parse(testing::read_text(dir / "data/jobs" / a / "frames" / kSidecarName));
  const json sb = json::parse(testing::read_text(dir / "data/jobs" / b / "frames" / kSidecarName));
  EXPECT_EQ(sa["context_id"], "office");
  EXPECT_EQ(sb["context_id"], "street");
  EXPECT_EQ(sb["mode"], "alpha-over");
}

TEST_F(ServiceTest, JobsAndDesignsSurviveRestart) {
  const std::string design = upload_card();
  const std::string id =
      submit({{"context_id", "office"}, {"profile_id", "hl2"}, {"design_id", design}});
  ASSERT_EQ(wait_for(id)["state"], "done");
  start();
  const auto r = client->Get("/api/jobs/" + id);
  ASSERT_TRUE(r);
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body_of(r)["state"], "done");
  EXPECT_EQ(client->Get("/api/jobs/" + id + "/frames/3.png")->status, 200);
  const std::string again =
      submit({{"context_id", "street"}, {"profile_id", "hl2"}, {"design_id", design}});
  EXPECT_EQ(wait_for(again)["state"], "done");
}

TEST_F(ServiceTest, PreviewMatchesBatchFrame) {
  const std::string design = upload_card();
  const json spec = {
      {"context_id", "office"}, {"profile_id", "hl2"}, {"design_id", design}, {"lux", 700}};
  const std::string id = submit(spec);
  ASSERT_EQ(wait_for(id)["state"], "done");

  json preview = spec;
  preview["frame_index"] = 4;
  const auto p = post_json("/api/preview", preview);
  ASSERT_TRUE(p);
  ASSERT_EQ(p->status, 200) << p->body;
  EXPECT_EQ(p->get_header_value("Content-Type"), "image/png");
  EXPECT_EQ(p->body, client->Get("/api/jobs/" + id + "/frames/4.png")->body);
}

TEST_F(ServiceTest, PreviewFollowsLux) {
  const std::string design = upload_card();
  json spec = {
      {"context_id", "office"}, {"profile_id", "hl2"}, {"design_id", design}, {"frame_index", 1}};
  spec["lux"] = 100;
  const auto dim = post_json("/api/preview", spec);
  spec["lux"] = 10000;
  const auto bright = post_json("/api/preview", spec);
  ASSERT_EQ(dim->status, 200);
  ASSERT_EQ(bright->status, 200);
  EXPECT_NE(dim->body, bright->body);

  spec["frame_index"] = 11;
  EXPECT_EQ(post_json("/api/preview", spec)->status, 404);
  spec["frame_index"] = 1;
  spec["lux"] = 0;
  EXPECT_EQ(post_json("/api/preview", spec)->status, 422);
}

}  // namespace
}  // namespace simulatar
