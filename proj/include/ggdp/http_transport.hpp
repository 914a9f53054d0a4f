#pragma once

// Network-backed HttpGet. Kept apart from fetch.hpp so that only the CLI
// pulls in cpp-httplib (and OpenSSL for https).

#include <string>

// Eigen must be parsed before httplib: <resolv.h> defines a `_res` macro
// that collides with Eigen parameter names.
#include <Eigen/Dense>
#include <httplib.h>

#include "ggdp/error.hpp"
#include "ggdp/fetch.hpp"

namespace ggdp {

inline HttpGet make_http_transport(int timeout_seconds = 30) {
  return [timeout_seconds](const std::string& url) -> HttpResponse {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw InputError("panel_store", "bad URL " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    const auto origin = url.substr(0, path_start);
    const auto path = path_start == std::string::npos ? std::string("/") : url.substr(path_start);

    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(timeout_seconds, 0);
    client.set_read_timeout(timeout_seconds, 0);
    auto res = client.Get(path);
    if (!res) return {0, httplib::to_string(res.error())};
    return {res->status, res->body};
  };
}

}  // namespace ggdp
