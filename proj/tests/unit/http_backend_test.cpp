/* Copyright 2026 The Trizone Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "trizone/http_backend.hpp"

#include <gtest/gtest.h>

#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "httplib.h"
#include "test_util.hpp"
#include "trizone/error.hpp"
#include "trizone/mock_world.hpp"

namespace trizone {
namespace {

using nlohmann::json;

struct Seen {
  std::string path;
  std::string body;
  std::string key;
  std::string auth;
};

// Local server whose handler is supplied per test; records every request.
class TestServer {
 public:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&, int attempt)>;

  explicit TestServer(Handler handler) : handler_(std::move(handler)) {
    server_.Post(R"(/.*)", [this](const httplib::Request& req, httplib::Response& res) {
      int attempt;
      {
        std::lock_guard lock(mu_);
        seen_.push_back({req.path, req.body, req.get_header_value("Idempotency-Key"),
                         req.get_header_value("Authorization")});
        attempt = static_cast<int>(seen_.size());
      }
      handler_(req, res, attempt);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~TestServer() {
    server_.stop();
    thread_.join();
  }

  BackendEndpoint Endpoint(int retries = 2) const {
    BackendEndpoint e;
    e.base_url = "http://127.0.0.1:" + std::to_string(port_);
    e.timeout_seconds = 5;
    e.retry_limit = retries;
    e.backoff_seconds = 0.0;
    return e;
  }
  std::vector<Seen> seen() {
    std::lock_guard lock(mu_);
    return seen_;
  }

 private:
  Handler handler_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::mutex mu_;
  std::vector<Seen> seen_;
};

void Reply(httplib::Response& res, const json& body) {
  res.set_content(body.dump(), "application/json");
}

const ImageGrid kGrid{8, 6};

TEST(HttpBackend, EndpointValidation) {
  BackendEndpoint e;
  e.base_url = "http://localhost:1";
  EXPECT_NO_THROW(ValidateEndpoint(e));
  e.timeout_seconds = 0;
  EXPECT_THROW(ValidateEndpoint(e), Error);
  e.timeout_seconds = 1;
  e.retry_limit = -1;
  EXPECT_THROW(ValidateEndpoint(e), Error);
  e.retry_limit = 0;
  e.base_url = "ftp://x";
  EXPECT_THROW(ValidateEndpoint(e), Error);
}

TEST(HttpBackend, RetriesServerErrorsWithSameBodyAndKey) {
  std::mt19937_64 rng(5);
  const RgbImage image = testing::RandomImage(kGrid, rng);
  TestServer server([&](const httplib::Request&, httplib::Response& res, int attempt) {
    if (attempt < 3) {
      res.status = 503;
      return;
    }
    Reply(res, wire::ImageReply(image));
  });
  RemoteBackend client(server.Endpoint(2));
  Provenance prov;
  const RgbImage out = client.Inpaint(image, BinaryMask(kGrid), CallContext{"rec-1/inpaint/0", &prov});
  EXPECT_EQ(out, image);
  const auto seen = server.seen();
  ASSERT_EQ(seen.size(), 3u);
  for (const Seen& s : seen) {
    EXPECT_EQ(s.path, "/inpaint");
    EXPECT_EQ(s.key, "rec-1/inpaint/0");
    EXPECT_EQ(s.body, seen[0].body);
    EXPECT_TRUE(s.auth.empty());
  }
  EXPECT_EQ(prov.source, "remote");
  EXPECT_EQ(prov.attempts, 3);
  EXPECT_EQ(client.attempts(), 3);
}

TEST(HttpBackend, ServerErrorsExhaustRetries) {
  TestServer server([](const httplib::Request&, httplib::Response& res, int) { res.status = 500; });
  RemoteBackend client(server.Endpoint(1));
  try {
    client.ParseHuman(RgbImage(kGrid), CallContext{"k"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRemoteFailure);
  }
  EXPECT_EQ(server.seen().size(), 2u);
}

TEST(HttpBackend, ClientErrorFailsFast) {
  TestServer server([](const httplib::Request&, httplib::Response& res, int) {
    res.status = 422;
    res.set_content("bad mask", "text/plain");
  });
  RemoteBackend client(server.Endpoint(3));
  try {
    client.Densepose(RgbImage(kGrid), CallContext{"k"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRemoteFailure);
  }
  EXPECT_EQ(server.seen().size(), 1u);
  EXPECT_EQ(server.seen()[0].path, "/densepose");
}

TEST(HttpBackend, UnreachableEndpointTimesOut) {
  int port;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }  // closed again: nothing listens there now
  BackendEndpoint e;
  e.base_url = "http://127.0.0.1:" + std::to_string(port);
  e.timeout_seconds = 1;
  e.retry_limit = 2;
  e.backoff_seconds = 0.0;
  RemoteBackend client(e);
  try {
    client.TryOn({RgbImage(kGrid), RgbImage(kGrid), {}}, CallContext{"k"});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kTimeout);
  }
  EXPECT_EQ(client.attempts(), 3);
}

TEST(HttpBackend, MalformedReplyIsProtocolError) {
  TestServer server([](const httplib::Request& req, httplib::Response& res, int) {
    if (req.path == "/judge") {
      Reply(res, json{{"verdict", 1}});
    } else {
      res.set_content("{not json", "application/json");
    }
  });
  RemoteBackend client(server.Endpoint(0));
  for (int which = 0; which < 2; ++which) {
    try {
      if (which == 0) {
        client.ParseHuman(RgbImage(kGrid), CallContext{"k"});
      } else {
        client.Judge(RgbImage(kGrid), "prompt", CallContext{"k"});
      }
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kProtocol);
    }
  }
}

TEST(HttpBackend, WrongGridIsProtocolError) {
  TestServer server([](const httplib::Request&, httplib::Response& res, int) {
    Reply(res, wire::ImageReply(RgbImage(ImageGrid{3, 3})));
  });
  RemoteBackend client(server.Endpoint(0));
  try {
    client.TryOn({RgbImage(kGrid), RgbImage(kGrid), {}}, CallContext{"k"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProtocol);
  }
}

TEST(HttpBackend, GridMismatchBeforeNetwork) {
  TestServer server([](const httplib::Request&, httplib::Response& res, int) { res.status = 500; });
  RemoteBackend client(server.Endpoint(0));
  EXPECT_THROW(client.TryOn({RgbImage(kGrid), RgbImage(ImageGrid{2, 2}), {}}, CallContext{}), Error);
  EXPECT_THROW(client.Inpaint(RgbImage(kGrid), BinaryMask(ImageGrid{2, 2}), CallContext{}), Error);
  EXPECT_TRUE(server.seen().empty());
}

TEST(HttpBackend, AuthHeaderAndPathPrefix) {
  TestServer server([](const httplib::Request&, httplib::Response& res, int) {
    Reply(res, wire::JudgeReply("Reasonable."));
  });
  BackendEndpoint e = server.Endpoint(0);
  e.base_url += "/v1/";
  e.auth_token = "s3cret";
  RemoteBackend client(e);
  const JudgeVerdict v = client.Judge(RgbImage(kGrid), "prompt", CallContext{"id-7"});
  EXPECT_EQ(v.verdict, Verdict::kReasonable);
  ASSERT_EQ(server.seen().size(), 1u);
  EXPECT_EQ(server.seen()[0].path, "/v1/judge");
  EXPECT_EQ(server.seen()[0].auth, "Bearer s3cret");
  EXPECT_EQ(json::parse(server.seen()[0].body).at("prompt"), "prompt");
}

TEST(HttpBackend, MockServedRoundTrip) {
  // A server backed by the mocks must give the same answers as the mocks.
  mock::TryOnMock tryon;
  mock::ParsingMock parsing;
  mock::TriZoneMock trizone;
  TestServer server([&](const httplib::Request& req, httplib::Response& res, int) {
    const json body = json::parse(req.body);
    if (req.path == "/tryon") {
      Reply(res, wire::ImageReply(tryon.TryOn(wire::ReadTryOnBody(body), CallContext{})));
    } else if (req.path == "/parse") {
      Reply(res, wire::LabelReply(parsing.ParseHuman(wire::ReadImage(body, "image"), CallContext{})));
    } else if (req.path == "/trizone") {
      Reply(res, wire::TriZoneReply(trizone.Predict(wire::ReadImage(body, "model_image"),
                                                    wire::ReadImage(body, "garment_image"),
                                                    CallContext{})));
    } else {
      res.status = 404;
    }
  });
  RemoteBackend client(server.Endpoint(0));
  const ImageGrid grid{24, 32};
  const mock::Figure fig = mock::RenderFigure(grid, mock::RandomStyle({Category::kDress, Length::kLong}, 1), 2);
  const RgbImage garment = mock::RenderGarment(grid, mock::RandomStyle({Category::kUpper, Length::kShort}, 3));
  std::mt19937_64 rng(9);

  const LabelMap parsed = client.ParseHuman(fig.image, CallContext{"p"});
  EXPECT_TRUE(std::ranges::equal(parsed.labels(), fig.parsing.labels()));
  EXPECT_EQ(parsed.palette().entries(), fig.parsing.palette().entries());

  const TriZoneMask zones = client.Predict(fig.image, garment, CallContext{"z"});
  EXPECT_EQ(zones, trizone.Predict(fig.image, garment, CallContext{}));

  for (const TryOnRequest& req :
       {TryOnRequest{fig.image, garment, {}},
        TryOnRequest{fig.image, garment, testing::RandomMask(grid, rng)},
        TryOnRequest{fig.image, garment, zones}}) {
    EXPECT_EQ(client.TryOn(req, CallContext{"t"}), tryon.TryOn(req, CallContext{}));
  }
}

TEST(Wire, RoundTrips) {
  std::mt19937_64 rng(13);
  const RgbImage img = testing::RandomImage(kGrid, rng);
  const BinaryMask mask = testing::RandomMask(kGrid, rng);
  EXPECT_EQ(wire::ReadImage(wire::ImageReply(img), "image"), img);
  EXPECT_EQ(wire::ReadMask(wire::InpaintBody(img, mask), "region"), mask);
  const TryOnRequest back = wire::ReadTryOnBody(wire::TryOnBody({img, img, mask}));
  EXPECT_EQ(back.kind(), MaskKind::kBinary);
  EXPECT_EQ(std::get<BinaryMask>(back.mask), mask);
  EXPECT_EQ(wire::ReadTryOnBody(wire::TryOnBody({img, img, {}})).kind(), MaskKind::kNone);
  EXPECT_THROW(wire::ReadImage(json{{"image", "!!notbase64"}}, "image"), Error);
  EXPECT_THROW(wire::ReadImage(json::object(), "image"), Error);
}

}  // namespace
}  // namespace trizone
